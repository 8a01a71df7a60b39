#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "hiertie/eval.hpp"
#include "hiertie/graph.hpp"

namespace hiertie {

enum class EdgeFormat { DirectedCounts, UndirectedCoauthor };

std::string_view to_string(EdgeFormat f) noexcept;
/// "directed" / "undirected".
std::optional<EdgeFormat> parse_edge_format(std::string_view text);

/**
 * Column mapping for edge CSV files. Each role lists accepted header names;
 * the first one present in the header is used. The count column is optional
 * and defaults to 1 per row when absent.
 */
struct EdgeFileSchema {
  EdgeFormat kind = EdgeFormat::DirectedCounts;
  std::vector<std::string> src_columns;
  std::vector<std::string> dst_columns;
  std::vector<std::string> date_columns;
  std::vector<std::string> count_columns;

  bool directed() const noexcept { return kind == EdgeFormat::DirectedCounts; }

  static EdgeFileSchema directed_counts();
  static EdgeFileSchema undirected_coauthor();
  static EdgeFileSchema for_format(EdgeFormat kind);
};

/**
 * Parses an edge CSV with a header row. Rows with identical (src, dst, date)
 * are merged by summing counts, undirected rows are canonicalized, and the
 * span is inferred from the min/max dates. Dates are `YYYY-MM-DD` or `YYYY`.
 *
 * Errors: Io, MalformedRow (message carries the line number; also covers
 * counts < 1), EmptyInput when no data rows are present.
 */
TemporalEdgeList parse_edges(const std::filesystem::path& path, const EdgeFileSchema& schema);
TemporalEdgeList parse_edges(std::istream& in, const EdgeFileSchema& schema, std::string_view source = "<stream>");

/// CSV `subordinate,superior`. Errors: Io, MalformedRow (self tie, conflicting rows), UnknownActor.
GroundTruth parse_ground_truth(const std::filesystem::path& path, const NodeTable& nodes);
GroundTruth parse_ground_truth(std::istream& in, const NodeTable& nodes, std::string_view source = "<stream>");

/// Header `sender,receiver,date,count` (directed) or `author1,author2,date,count`.
std::string edges_csv(const TemporalEdgeList& edges);
std::string truth_csv(const GroundTruth& truth, const NodeTable& nodes);

struct SynthParams {
  std::uint64_t seed = 42;
  int managers = 10;
  int reports_per_manager = 5;
  /// One slot per calendar month starting January 2000.
  int slots = 12;
  /// Per slot, probability that a report interacts with its manager.
  double hierarchy_rate = 0.9;
  /// Per slot, probability that a report interacts with one random peer.
  double noise_rate = 0.2;
  /// Interaction counts are drawn uniformly from [1, max].
  int hierarchy_max_count = 1;
  int noise_max_count = 1;
  bool directed = true;

  /// Throws InvalidArgument.
  void validate() const;
};

struct SyntheticOrg {
  TemporalEdgeList edges;
  GroundTruth truth;
};

/**
 * Two-level organization: each report interacts with its manager at
 * `hierarchy_rate` and with a uniformly drawn peer (any node other than itself
 * and its manager) at `noise_rate`, once per slot. An interaction is an
 * exchange: one message in each direction, each with its own count. Pure
 * function of the parameters.
 *
 * Errors: InvalidArgument, DegenerateConfig when no edge is produced.
 */
SyntheticOrg generate_synthetic(const SynthParams& params);

}  // namespace hiertie
