#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hiertie/graph.hpp"
#include "hiertie/rpr.hpp"

namespace hiertie {

enum class Method { Baseline, TimeVoting, TimeModalPosition };

/// "baseline", "time-voting", "modal-position".
std::string_view to_string(Method m) noexcept;
std::optional<Method> parse_method(std::string_view text);

/// Nodes whose direct superior is to be inferred. Unique, all in the node table.
class QuerySet {
 public:
  QuerySet() = default;
  /// Throws DuplicateQuery or UnknownActor.
  QuerySet(std::vector<NodeId> queries, const NodeTable& nodes);

  std::span<const NodeId> queries() const noexcept { return queries_; }
  std::size_t size() const noexcept { return queries_.size(); }

 private:
  std::vector<NodeId> queries_;
};

struct CandidateTally {
  NodeId node{};
  std::size_t votes = 0;
  /// Slots in which the candidate appears in the query's ranked list at all.
  std::size_t appearances = 0;
  /// Sum of 1-based positions over those appearances.
  std::size_t position_sum = 0;

  double mean_position() const {
    return appearances == 0 ? 0.0 : static_cast<double>(position_sum) / static_cast<double>(appearances);
  }
};

/// Top-p votes for one query over the slots in which the query was active.
struct VotingTally {
  NodeId query{};
  std::size_t p = 0;
  std::size_t slots_participated = 0;
  /// Ascending by NodeId.
  std::vector<CandidateTally> candidates;

  std::size_t votes(NodeId candidate) const;
};

/// `lists` holds one ranked list per slot in which `query` is active.
/// Throws InvalidThreshold when p < 1.
VotingTally tally_votes(NodeId query, std::span<const RankedList> lists, std::size_t p);

struct CandidateMode {
  NodeId node{};
  /// Most frequent 1-based position; the smallest one wins among equally frequent positions.
  std::size_t modal_position = 0;
  std::size_t modal_frequency = 0;
  std::size_t appearances = 0;
};

/// Ascending by NodeId.
std::vector<CandidateMode> modal_positions(std::span<const RankedList> lists);

struct InferenceCandidate {
  NodeId node{};
  /// Baseline: Rooted-PageRank score. TimeVoting: votes. TimeModalPosition: modal position.
  double score = 0.0;
  /// TimeVoting: mean position. TimeModalPosition: frequency of the modal position.
  double tiebreak = 0.0;

  friend bool operator==(const InferenceCandidate&, const InferenceCandidate&) = default;
};

struct InferenceResult {
  NodeId query{};
  Method method = Method::Baseline;
  Weighting weighting = Weighting::Weighted;
  std::string granularity;
  std::size_t p = 0;
  std::vector<InferenceCandidate> ranking;
  std::size_t slots_participated = 0;
  std::size_t slots_total = 0;
  /// Set by the batch runners when the query has no edge in any slot.
  bool isolated = false;

  /// 1-based position of `node`, 0 when absent.
  std::size_t position_of(NodeId node) const;

  friend bool operator==(const InferenceResult&, const InferenceResult&) = default;
};

/// Slots and their snapshots for one (granularity, weighting) pair, built once and shared.
class SnapshotSeries {
 public:
  SnapshotSeries(const TemporalEdgeList& edges, Granularity granularity, Weighting weighting);

  Granularity granularity() const noexcept { return granularity_; }
  Weighting weighting() const noexcept { return weighting_; }
  std::span<const TimeSlot> slots() const noexcept { return slots_; }
  std::span<const Snapshot> snapshots() const noexcept { return snapshots_; }
  std::size_t size() const noexcept { return slots_.size(); }

 private:
  Granularity granularity_;
  Weighting weighting_;
  std::vector<TimeSlot> slots_;
  std::vector<Snapshot> snapshots_;
};

/// L^k(query) for every slot where the query is active, in slot order.
std::vector<RankedList> slot_rankings(const SnapshotSeries& series, NodeId query, const RprParams& params);

InferenceResult baseline_rank(const Snapshot& full_span, NodeId query, const RprParams& params);
InferenceResult timeslice_rank(const SnapshotSeries& series, NodeId query, std::size_t p,
                               const RprParams& params);
InferenceResult modal_position_rank(const SnapshotSeries& series, NodeId query, const RprParams& params);

/// Ranks by Rooted-PageRank on the single full-span snapshot. Throws QueryIsolated.
InferenceResult baseline_rank(const TemporalEdgeList& edges, NodeId query, Weighting weighting,
                              const RprParams& params = {});

/// Top-p voting over per-slot rankings. Throws QueryIsolated or InvalidThreshold.
InferenceResult timeslice_rank(const TemporalEdgeList& edges, NodeId query, Granularity granularity,
                               Weighting weighting, std::size_t p, const RprParams& params = {});

/// Ranks candidates by their most frequent per-slot position. Throws QueryIsolated.
InferenceResult modal_position_rank(const TemporalEdgeList& edges, NodeId query, Granularity granularity,
                                    Weighting weighting, const RprParams& params = {});

struct MethodSpec {
  static constexpr std::size_t kDefaultThreshold = 3;

  Method method = Method::TimeVoting;
  Weighting weighting = Weighting::Weighted;
  Granularity granularity = Granularity::month();
  std::size_t p = kDefaultThreshold;
  RprParams params;

  /// e.g. "time-voting/weighted".
  std::string tag() const;
};

/**
 * Runs one method for every query. Queries are processed concurrently with
 * OpenMP (at most `jobs` threads, 0 = runtime default); results come back in
 * query order and are bit-identical to infer_all_serial. Isolated queries
 * yield an empty ranking with `isolated` set instead of an error.
 */
std::vector<InferenceResult> infer_all(const TemporalEdgeList& edges, const QuerySet& queries,
                                       const MethodSpec& spec, int jobs = 0);

/// Single-threaded reference for infer_all.
std::vector<InferenceResult> infer_all_serial(const TemporalEdgeList& edges, const QuerySet& queries,
                                              const MethodSpec& spec);

}  // namespace hiertie
