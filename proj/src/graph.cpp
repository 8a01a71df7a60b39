#include "hiertie/graph.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <tuple>

#include <fmt/format.h>

#include "hiertie/error.hpp"

namespace hiertie {

NodeTable::NodeTable(std::vector<std::string> labels) : labels_(std::move(labels)) {
  index_.reserve(labels_.size());
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    auto [it, inserted] = index_.emplace(labels_[i], node_at(i));
    if (!inserted) {
      throw Error(ErrorCode::InvalidArgument, fmt::format("duplicate node label '{}'", labels_[i]));
    }
  }
}

std::optional<NodeId> NodeTable::find(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

DateRange TemporalEdgeList::span() const {
  if (!span_) throw Error(ErrorCode::EmptySpan, "edge list is empty");
  return *span_;
}

std::uint64_t TemporalEdgeList::total_count() const {
  return std::accumulate(edges_.begin(), edges_.end(), std::uint64_t{0},
                         [](std::uint64_t acc, const TemporalEdge& e) { return acc + e.count; });
}

std::uint32_t TemporalEdgeListBuilder::intern(std::string_view label) {
  auto it = index_.find(std::string(label));
  if (it != index_.end()) return it->second;
  const auto id = static_cast<std::uint32_t>(labels_.size());
  labels_.emplace_back(label);
  index_.emplace(labels_.back(), id);
  return id;
}

void TemporalEdgeListBuilder::add(std::string_view src, std::string_view dst, Date timestamp,
                                  std::uint64_t count) {
  if (count == 0) throw Error(ErrorCode::InvalidArgument, "interaction count must be >= 1");
  if (src.empty() || dst.empty()) throw Error(ErrorCode::InvalidArgument, "empty node label");
  rows_.push_back({intern(src), intern(dst), timestamp, count});
}

void TemporalEdgeListBuilder::declare_span(DateRange span) {
  if (span.last < span.first) throw Error(ErrorCode::InvalidArgument, "span ends before it begins");
  declared_ = span;
}

TemporalEdgeList TemporalEdgeListBuilder::build() && {
  // Relabel so that ids follow lexicographic label order.
  std::vector<std::uint32_t> order(labels_.size());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(),
            [&](std::uint32_t a, std::uint32_t b) { return labels_[a] < labels_[b]; });
  std::vector<std::uint32_t> remap(labels_.size());
  std::vector<std::string> sorted_labels;
  sorted_labels.reserve(labels_.size());
  for (std::uint32_t rank = 0; rank < order.size(); ++rank) {
    remap[order[rank]] = rank;
    sorted_labels.push_back(std::move(labels_[order[rank]]));
  }

  std::vector<TemporalEdge> edges;
  edges.reserve(rows_.size());
  for (const Row& r : rows_) {
    std::uint32_t s = remap[r.src];
    std::uint32_t d = remap[r.dst];
    if (!directed_ && d < s) std::swap(s, d);
    edges.push_back({node_at(s), node_at(d), r.timestamp, r.count});
  }
  std::sort(edges.begin(), edges.end(), [](const TemporalEdge& a, const TemporalEdge& b) {
    return std::tie(a.timestamp, a.src, a.dst) < std::tie(b.timestamp, b.src, b.dst);
  });
  std::vector<TemporalEdge> merged;
  merged.reserve(edges.size());
  for (const TemporalEdge& e : edges) {
    if (!merged.empty() && merged.back().timestamp == e.timestamp && merged.back().src == e.src &&
        merged.back().dst == e.dst) {
      merged.back().count += e.count;
    } else {
      merged.push_back(e);
    }
  }

  TemporalEdgeList out;
  out.nodes_ = NodeTable(std::move(sorted_labels));
  out.directed_ = directed_;
  if (!merged.empty()) {
    DateRange span{merged.front().timestamp, merged.back().timestamp};
    if (declared_) {
      span.first = std::min(span.first, declared_->first);
      span.last = std::max(span.last, declared_->last);
    }
    out.span_ = span;
  }
  out.edges_ = std::move(merged);
  rows_.clear();
  return out;
}

std::string Granularity::to_string() const {
  switch (kind) {
    case Kind::Week: return "week";
    case Kind::Month: return "month";
    case Kind::Year: return "year";
    case Kind::FixedCount: return fmt::format("fixed:{}", count);
  }
  return "?";
}

std::optional<Granularity> Granularity::parse(std::string_view text) {
  if (text == "week") return week();
  if (text == "month") return month();
  if (text == "year") return year();
  constexpr std::string_view prefix = "fixed:";
  if (text.substr(0, prefix.size()) == prefix) {
    auto digits = text.substr(prefix.size());
    std::size_t m = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), m);
    if (ec != std::errc{} || ptr != digits.data() + digits.size() || m == 0) return std::nullopt;
    return fixed(m);
  }
  return std::nullopt;
}

std::string_view to_string(Weighting w) noexcept {
  return w == Weighting::Weighted ? "weighted" : "unweighted";
}

std::optional<Weighting> parse_weighting(std::string_view text) {
  if (text == "weighted") return Weighting::Weighted;
  if (text == "unweighted") return Weighting::Unweighted;
  return std::nullopt;
}

namespace {

Date next_boundary(Date d, Granularity::Kind kind) {
  namespace chr = std::chrono;
  switch (kind) {
    case Granularity::Kind::Week: return d.week_start().plus_days(7);
    case Granularity::Kind::Month: {
      const auto ym = d.ymd().year() / d.ymd().month() + chr::months{1};
      return Date{chr::sys_days{ym / chr::day{1}}};
    }
    case Granularity::Kind::Year: {
      const auto y = d.ymd().year() + chr::years{1};
      return Date{chr::sys_days{y / chr::January / chr::day{1}}};
    }
    case Granularity::Kind::FixedCount: break;
  }
  throw Error(ErrorCode::InvalidArgument, "fixed-count slicing has no calendar boundary");
}

}  // namespace

std::vector<TimeSlot> slice_span(DateRange span, Granularity granularity) {
  if (span.last < span.first) throw Error(ErrorCode::EmptySpan, "span ends before it begins");
  const Date stop = span.last.plus_days(1);
  std::vector<TimeSlot> slots;

  if (granularity.kind == Granularity::Kind::FixedCount) {
    const std::size_t m = granularity.count;
    if (m == 0) throw Error(ErrorCode::InvalidArgument, "fixed slot count must be >= 1");
    const long total = span.days();
    if (static_cast<long>(m) > total) {
      throw Error(ErrorCode::TooManySlots,
                  fmt::format("{} slots requested for a span of {} days", m, total));
    }
    const long width = total / static_cast<long>(m);
    for (std::size_t k = 0; k < m; ++k) {
      const Date begin = span.first.plus_days(static_cast<long>(k) * width);
      const Date end = (k + 1 == m) ? stop : begin.plus_days(width);
      slots.push_back({k, begin, end});
    }
    return slots;
  }

  Date begin = span.first;
  while (begin < stop) {
    const Date end = std::min(next_boundary(begin, granularity.kind), stop);
    slots.push_back({slots.size(), begin, end});
    begin = end;
  }
  return slots;
}

std::vector<TimeSlot> slice_timeline(const TemporalEdgeList& edges, Granularity granularity) {
  if (edges.empty()) throw Error(ErrorCode::EmptySpan, "cannot slice an empty edge list");
  return slice_span(edges.span(), granularity);
}

TimeSlot full_span_slot(const TemporalEdgeList& edges) {
  const DateRange span = edges.span();
  return {TimeSlot::kFullSpan, span.first, span.last.plus_days(1)};
}

std::span<const NodeId> Snapshot::neighbors(NodeId u) const {
  const std::size_t i = to_index(u);
  return std::span<const NodeId>(targets_).subspan(offsets_.at(i), offsets_.at(i + 1) - offsets_[i]);
}

std::span<const double> Snapshot::weights(NodeId u) const {
  const std::size_t i = to_index(u);
  return std::span<const double>(weights_).subspan(offsets_.at(i), offsets_.at(i + 1) - offsets_[i]);
}

double Snapshot::weight(NodeId u, NodeId v) const {
  if (to_index(u) >= node_count()) return 0.0;
  const auto nbrs = neighbors(u);
  auto it = std::lower_bound(nbrs.begin(), nbrs.end(), v);
  if (it == nbrs.end() || *it != v) return 0.0;
  return weights(u)[static_cast<std::size_t>(it - nbrs.begin())];
}

double Snapshot::total_weight() const {
  return std::accumulate(weights_.begin(), weights_.end(), 0.0);
}

Snapshot build_snapshot(const TemporalEdgeList& edges, const TimeSlot& slot, Weighting weighting) {
  struct Entry {
    std::uint32_t src;
    std::uint32_t dst;
    std::uint64_t count;
  };

  const auto all = edges.edges();
  auto first = std::lower_bound(all.begin(), all.end(), slot.begin,
                                [](const TemporalEdge& e, Date d) { return e.timestamp < d; });
  auto last = std::lower_bound(first, all.end(), slot.end,
                               [](const TemporalEdge& e, Date d) { return e.timestamp < d; });

  std::vector<Entry> entries;
  for (auto it = first; it != last; ++it) {
    if (it->src == it->dst) continue;
    const auto s = static_cast<std::uint32_t>(it->src);
    const auto d = static_cast<std::uint32_t>(it->dst);
    entries.push_back({s, d, it->count});
    if (!edges.directed()) entries.push_back({d, s, it->count});
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return std::tie(a.src, a.dst) < std::tie(b.src, b.dst);
  });

  const std::size_t n = edges.node_count();
  Snapshot snap;
  snap.slot_ = slot;
  snap.directed_ = edges.directed();
  snap.weighting_ = weighting;
  snap.offsets_.assign(n + 1, 0);
  snap.out_weight_.assign(n, 0.0);
  snap.active_mask_.assign(n, 0);

  for (std::size_t i = 0; i < entries.size();) {
    const Entry& head = entries[i];
    std::uint64_t total = 0;
    std::size_t j = i;
    for (; j < entries.size() && entries[j].src == head.src && entries[j].dst == head.dst; ++j) {
      total += entries[j].count;
    }
    const double w = weighting == Weighting::Weighted ? static_cast<double>(total) : 1.0;
    snap.targets_.push_back(node_at(head.dst));
    snap.weights_.push_back(w);
    snap.offsets_[head.src + 1] += 1;
    snap.out_weight_[head.src] += w;
    snap.active_mask_[head.src] = 1;
    snap.active_mask_[head.dst] = 1;
    i = j;
  }
  std::partial_sum(snap.offsets_.begin(), snap.offsets_.end(), snap.offsets_.begin());
  for (std::size_t i = 0; i < n; ++i) {
    if (snap.active_mask_[i]) snap.active_.push_back(node_at(i));
  }
  return snap;
}

std::vector<Snapshot> build_snapshots(const TemporalEdgeList& edges, std::span<const TimeSlot> slots,
                                      Weighting weighting) {
  std::vector<Snapshot> out(slots.size());
  for (std::size_t k = 0; k < slots.size(); ++k) out[k] = build_snapshot(edges, slots[k], weighting);
  return out;
}

}  // namespace hiertie
