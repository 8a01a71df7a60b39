#include "hiertie/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <optional>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "hiertie/error.hpp"

namespace hiertie {

std::string_view to_string(EdgeFormat f) noexcept {
  return f == EdgeFormat::DirectedCounts ? "directed" : "undirected";
}

std::optional<EdgeFormat> parse_edge_format(std::string_view text) {
  if (text == "directed") return EdgeFormat::DirectedCounts;
  if (text == "undirected") return EdgeFormat::UndirectedCoauthor;
  return std::nullopt;
}

EdgeFileSchema EdgeFileSchema::directed_counts() {
  return {EdgeFormat::DirectedCounts,
          {"sender", "src", "source", "from"},
          {"receiver", "dst", "target", "to"},
          {"date", "week", "timestamp"},
          {"count", "emails", "weight"}};
}

EdgeFileSchema EdgeFileSchema::undirected_coauthor() {
  return {EdgeFormat::UndirectedCoauthor,
          {"author1", "src", "source"},
          {"author2", "dst", "target"},
          {"date", "year", "timestamp"},
          {"count", "papers", "weight"}};
}

EdgeFileSchema EdgeFileSchema::for_format(EdgeFormat kind) {
  return kind == EdgeFormat::DirectedCounts ? directed_counts() : undirected_coauthor();
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

// Splits one CSV record; double-quoted fields may contain commas and "" escapes.
std::optional<std::vector<std::string>> split_csv(std::string_view line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"' && trim(field).empty()) {
      field.clear();
      quoted = true;
      was_quoted = true;
    } else if (c == ',') {
      fields.emplace_back(was_quoted ? field : std::string(trim(field)));
      field.clear();
      was_quoted = false;
    } else {
      field.push_back(c);
    }
  }
  if (quoted) return std::nullopt;
  fields.emplace_back(was_quoted ? field : std::string(trim(field)));
  return fields;
}

std::optional<std::size_t> find_column(const std::vector<std::string>& header,
                                       const std::vector<std::string>& names) {
  for (const std::string& name : names) {
    auto it = std::find(header.begin(), header.end(), name);
    if (it != header.end()) return static_cast<std::size_t>(it - header.begin());
  }
  return std::nullopt;
}

[[noreturn]] void row_error(std::string_view source, std::size_t line, const std::string& what) {
  throw Error(ErrorCode::MalformedRow, fmt::format("{}:{}: {}", source, line, what));
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, fmt::format("cannot open '{}'", path.string()));
  return in;
}

// Reads the header row, skipping blank lines. Returns false at end of input.
bool read_header(std::istream& in, std::size_t& line_no, std::vector<std::string>& header,
                 std::string_view source) {
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (trim(line).empty()) continue;
    auto fields = split_csv(line);
    if (!fields) row_error(source, line_no, "unterminated quote in header");
    header = std::move(*fields);
    for (auto& h : header) {
      std::transform(h.begin(), h.end(), h.begin(), [](unsigned char c) { return std::tolower(c); });
    }
    return true;
  }
  return false;
}

}  // namespace

TemporalEdgeList parse_edges(std::istream& in, const EdgeFileSchema& schema, std::string_view source) {
  std::size_t line_no = 0;
  std::vector<std::string> header;
  if (!read_header(in, line_no, header, source)) {
    throw Error(ErrorCode::EmptyInput, fmt::format("{}: no header row", source));
  }
  const auto src_col = find_column(header, schema.src_columns);
  const auto dst_col = find_column(header, schema.dst_columns);
  const auto date_col = find_column(header, schema.date_columns);
  const auto count_col = find_column(header, schema.count_columns);
  if (!src_col || !dst_col || !date_col) {
    row_error(source, line_no,
              fmt::format("header must name source ({}), target ({}) and date ({}) columns",
                          fmt::join(schema.src_columns, "|"), fmt::join(schema.dst_columns, "|"),
                          fmt::join(schema.date_columns, "|")));
  }
  const std::size_t width = header.size();

  TemporalEdgeListBuilder builder(schema.directed());
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split_csv(line);
    if (!fields) row_error(source, line_no, "unterminated quote");
    if (fields->size() != width) {
      row_error(source, line_no, fmt::format("expected {} fields, found {}", width, fields->size()));
    }
    const std::string& src = (*fields)[*src_col];
    const std::string& dst = (*fields)[*dst_col];
    if (src.empty() || dst.empty()) row_error(source, line_no, "empty actor label");
    const auto date = parse_date((*fields)[*date_col]);
    if (!date) row_error(source, line_no, fmt::format("bad date '{}'", (*fields)[*date_col]));

    std::uint64_t count = 1;
    if (count_col) {
      const std::string& text = (*fields)[*count_col];
      long long value = 0;
      auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
      if (ec != std::errc{} || ptr != text.data() + text.size()) {
        row_error(source, line_no, fmt::format("bad count '{}'", text));
      }
      if (value < 1) row_error(source, line_no, fmt::format("rejected row: count {} < 1", value));
      count = static_cast<std::uint64_t>(value);
    }
    builder.add(src, dst, *date, count);
  }
  if (builder.pending() == 0) throw Error(ErrorCode::EmptyInput, fmt::format("{}: no data rows", source));
  return std::move(builder).build();
}

TemporalEdgeList parse_edges(const std::filesystem::path& path, const EdgeFileSchema& schema) {
  auto in = open_input(path);
  return parse_edges(in, schema, path.string());
}

GroundTruth parse_ground_truth(std::istream& in, const NodeTable& nodes, std::string_view source) {
  std::size_t line_no = 0;
  std::vector<std::string> header;
  if (!read_header(in, line_no, header, source)) {
    throw Error(ErrorCode::EmptyInput, fmt::format("{}: no header row", source));
  }
  const auto sub_col = find_column(header, {"subordinate"});
  const auto sup_col = find_column(header, {"superior"});
  if (!sub_col || !sup_col) row_error(source, line_no, "header must contain subordinate,superior");

  std::map<NodeId, NodeId> ties;
  std::vector<std::string> unknown;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split_csv(line);
    if (!fields || fields->size() != header.size()) row_error(source, line_no, "wrong number of fields");
    const std::string& sub = (*fields)[*sub_col];
    const std::string& sup = (*fields)[*sup_col];
    if (sub == sup) row_error(source, line_no, fmt::format("rejected row: '{}' is its own superior", sub));
    const auto sub_id = nodes.find(sub);
    const auto sup_id = nodes.find(sup);
    if (!sub_id) unknown.push_back(sub);
    if (!sup_id) unknown.push_back(sup);
    if (!sub_id || !sup_id) continue;
    auto [it, inserted] = ties.emplace(*sub_id, *sup_id);
    if (!inserted && it->second != *sup_id) {
      row_error(source, line_no, fmt::format("conflicting superior for '{}'", sub));
    }
  }
  if (!unknown.empty()) {
    std::sort(unknown.begin(), unknown.end());
    unknown.erase(std::unique(unknown.begin(), unknown.end()), unknown.end());
    throw Error(ErrorCode::UnknownActor,
                fmt::format("{}: actors absent from edge data: {}", source, fmt::join(unknown, ",")));
  }
  return GroundTruth(std::move(ties), nodes);
}

GroundTruth parse_ground_truth(const std::filesystem::path& path, const NodeTable& nodes) {
  auto in = open_input(path);
  return parse_ground_truth(in, nodes, path.string());
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string edges_csv(const TemporalEdgeList& edges) {
  std::string out = edges.directed() ? "sender,receiver,date,count\n" : "author1,author2,date,count\n";
  const NodeTable& nodes = edges.nodes();
  for (const TemporalEdge& e : edges.edges()) {
    out += fmt::format("{},{},{},{}\n", csv_field(nodes.label(e.src)), csv_field(nodes.label(e.dst)),
                       e.timestamp.iso(), e.count);
  }
  return out;
}

std::string truth_csv(const GroundTruth& truth, const NodeTable& nodes) {
  std::string out = "subordinate,superior\n";
  for (const auto& [sub, sup] : truth.ties()) {
    out += fmt::format("{},{}\n", csv_field(nodes.label(sub)), csv_field(nodes.label(sup)));
  }
  return out;
}

}  // namespace hiertie
