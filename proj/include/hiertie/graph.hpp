#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hiertie/date.hpp"

namespace hiertie {

/// Dense node index, contiguous 0..n-1 within one TemporalEdgeList.
enum class NodeId : std::uint32_t {};

constexpr std::size_t to_index(NodeId id) noexcept { return static_cast<std::size_t>(id); }
constexpr NodeId node_at(std::size_t index) noexcept {
  return static_cast<NodeId>(static_cast<std::uint32_t>(index));
}

/// Bijection between external labels and NodeIds.
class NodeTable {
 public:
  NodeTable() = default;
  explicit NodeTable(std::vector<std::string> labels);

  std::size_t size() const noexcept { return labels_.size(); }
  const std::string& label(NodeId id) const { return labels_.at(to_index(id)); }
  std::optional<NodeId> find(std::string_view label) const;
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  friend bool operator==(const NodeTable& a, const NodeTable& b) { return a.labels_ == b.labels_; }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeId> index_;
};

struct TemporalEdge {
  NodeId src{};
  NodeId dst{};
  Date timestamp{};
  std::uint64_t count = 1;

  friend bool operator==(const TemporalEdge&, const TemporalEdge&) = default;
};

/// Inclusive date range [first, last].
struct DateRange {
  Date first;
  Date last;

  long days() const { return first.days_until(last) + 1; }
  friend bool operator==(const DateRange&, const DateRange&) = default;
};

/**
 * Immutable interaction log. Edges are sorted by (timestamp, src, dst) with
 * duplicate (src, dst, timestamp) rows merged by summing counts. Undirected
 * lists store every edge with src <= dst. Build through
 * TemporalEdgeListBuilder.
 */
class TemporalEdgeList {
 public:
  const NodeTable& nodes() const noexcept { return nodes_; }
  std::span<const TemporalEdge> edges() const noexcept { return edges_; }
  bool directed() const noexcept { return directed_; }
  bool empty() const noexcept { return edges_.empty(); }
  std::size_t node_count() const noexcept { return nodes_.size(); }

  /// Throws Error(EmptySpan) for an empty list.
  DateRange span() const;

  std::uint64_t total_count() const;

  friend bool operator==(const TemporalEdgeList&, const TemporalEdgeList&) = default;

 private:
  friend class TemporalEdgeListBuilder;

  NodeTable nodes_;
  std::vector<TemporalEdge> edges_;
  bool directed_ = true;
  std::optional<DateRange> span_;
};

class TemporalEdgeListBuilder {
 public:
  explicit TemporalEdgeListBuilder(bool directed) : directed_(directed) {}

  /// count must be >= 1.
  void add(std::string_view src, std::string_view dst, Date timestamp, std::uint64_t count = 1);

  /// Widens the declared span beyond the edge timestamps.
  void declare_span(DateRange span);

  std::size_t pending() const noexcept { return rows_.size(); }

  /// NodeIds are assigned in lexicographic label order.
  TemporalEdgeList build() &&;

 private:
  struct Row {
    std::uint32_t src;
    std::uint32_t dst;
    Date timestamp;
    std::uint64_t count;
  };

  std::uint32_t intern(std::string_view label);

  bool directed_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::uint32_t> index_;
  std::vector<Row> rows_;
  std::optional<DateRange> declared_;
};

/// Half-open slot [begin, end).
struct TimeSlot {
  static constexpr std::size_t kFullSpan = std::numeric_limits<std::size_t>::max();

  std::size_t index = 0;
  Date begin;
  Date end;

  bool contains(Date d) const { return begin <= d && d < end; }
  bool is_full_span() const { return index == kFullSpan; }
  friend bool operator==(const TimeSlot&, const TimeSlot&) = default;
};

struct Granularity {
  enum class Kind { Week, Month, Year, FixedCount };

  Kind kind = Kind::Month;
  std::size_t count = 0;  // only for FixedCount

  static Granularity week() { return {Kind::Week, 0}; }
  static Granularity month() { return {Kind::Month, 0}; }
  static Granularity year() { return {Kind::Year, 0}; }
  static Granularity fixed(std::size_t m) { return {Kind::FixedCount, m}; }

  /// "week", "month", "year", "fixed:N".
  std::string to_string() const;
  static std::optional<Granularity> parse(std::string_view text);

  friend bool operator==(const Granularity&, const Granularity&) = default;
};

enum class Weighting { Unweighted, Weighted };

std::string_view to_string(Weighting w) noexcept;
std::optional<Weighting> parse_weighting(std::string_view text);

/// Slots for an explicit span. Errors: TooManySlots, InvalidArgument (m = 0).
std::vector<TimeSlot> slice_span(DateRange span, Granularity granularity);

/// Errors: EmptySpan for an empty edge list, TooManySlots.
std::vector<TimeSlot> slice_timeline(const TemporalEdgeList& edges, Granularity granularity);

/// The single slot covering the whole span (baseline, no time dimension).
TimeSlot full_span_slot(const TemporalEdgeList& edges);

/**
 * One per-slot graph in compressed sparse row form. Rows are indexed by
 * global NodeId so ScoreVectors from different slots share an index space;
 * only active nodes have edges. Weights are strictly positive, neighbors of
 * each row are sorted by NodeId, and undirected snapshots store both
 * directions of every edge.
 */
class Snapshot {
 public:
  Snapshot() = default;

  const TimeSlot& slot() const noexcept { return slot_; }
  bool directed() const noexcept { return directed_; }
  Weighting weighting() const noexcept { return weighting_; }

  std::size_t node_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  /// Number of stored adjacency entries (undirected edges count twice).
  std::size_t entry_count() const noexcept { return targets_.size(); }
  bool empty() const noexcept { return targets_.empty(); }

  std::span<const NodeId> active_nodes() const noexcept { return active_; }
  bool is_active(NodeId id) const {
    return to_index(id) < active_mask_.size() && active_mask_[to_index(id)] != 0;
  }

  std::span<const NodeId> neighbors(NodeId u) const;
  std::span<const double> weights(NodeId u) const;
  double out_weight(NodeId u) const { return out_weight_.at(to_index(u)); }
  /// 0 when there is no edge u -> v.
  double weight(NodeId u, NodeId v) const;
  double total_weight() const;

 private:
  friend Snapshot build_snapshot(const TemporalEdgeList&, const TimeSlot&, Weighting);

  TimeSlot slot_{};
  bool directed_ = true;
  Weighting weighting_ = Weighting::Weighted;
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> targets_;
  std::vector<double> weights_;
  std::vector<double> out_weight_;
  std::vector<NodeId> active_;
  std::vector<char> active_mask_;
};

/// Edges with timestamp in [slot.begin, slot.end); self-loops dropped.
Snapshot build_snapshot(const TemporalEdgeList& edges, const TimeSlot& slot, Weighting weighting);

std::vector<Snapshot> build_snapshots(const TemporalEdgeList& edges, std::span<const TimeSlot> slots,
                                      Weighting weighting);

}  // namespace hiertie
