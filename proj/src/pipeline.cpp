#include "hiertie/pipeline.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

#include <fmt/format.h>

#include "hiertie/error.hpp"

namespace hiertie {

std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::Baseline: return "baseline";
    case Method::TimeVoting: return "time-voting";
    case Method::TimeModalPosition: return "modal-position";
  }
  return "?";
}

std::optional<Method> parse_method(std::string_view text) {
  if (text == "baseline") return Method::Baseline;
  if (text == "time-voting") return Method::TimeVoting;
  if (text == "modal-position") return Method::TimeModalPosition;
  return std::nullopt;
}

QuerySet::QuerySet(std::vector<NodeId> queries, const NodeTable& nodes) : queries_(std::move(queries)) {
  std::unordered_set<std::uint32_t> seen;
  for (NodeId q : queries_) {
    if (to_index(q) >= nodes.size()) {
      throw Error(ErrorCode::UnknownActor, fmt::format("query node {} is not in the node table", to_index(q)));
    }
    if (!seen.insert(static_cast<std::uint32_t>(q)).second) {
      throw Error(ErrorCode::DuplicateQuery, fmt::format("duplicate query '{}'", nodes.label(q)));
    }
  }
}

std::size_t VotingTally::votes(NodeId candidate) const {
  auto it = std::lower_bound(candidates.begin(), candidates.end(), candidate,
                             [](const CandidateTally& c, NodeId id) { return c.node < id; });
  return (it != candidates.end() && it->node == candidate) ? it->votes : 0;
}

VotingTally tally_votes(NodeId query, std::span<const RankedList> lists, std::size_t p) {
  if (p < 1) throw Error(ErrorCode::InvalidThreshold, "vote threshold p must be >= 1");
  std::map<NodeId, CandidateTally> acc;
  for (const RankedList& list : lists) {
    for (std::size_t i = 0; i < list.entries.size(); ++i) {
      const NodeId node = list.entries[i].node;
      if (node == query) continue;
      CandidateTally& t = acc[node];
      t.node = node;
      t.appearances += 1;
      t.position_sum += i + 1;
      if (i < p) t.votes += 1;
    }
  }
  VotingTally tally;
  tally.query = query;
  tally.p = p;
  tally.slots_participated = lists.size();
  tally.candidates.reserve(acc.size());
  for (auto& [_, t] : acc) tally.candidates.push_back(t);
  return tally;
}

std::vector<CandidateMode> modal_positions(std::span<const RankedList> lists) {
  // candidate -> (position -> frequency)
  std::map<NodeId, std::map<std::size_t, std::size_t>> histogram;
  for (const RankedList& list : lists) {
    for (std::size_t i = 0; i < list.entries.size(); ++i) histogram[list.entries[i].node][i + 1] += 1;
  }
  std::vector<CandidateMode> out;
  out.reserve(histogram.size());
  for (const auto& [node, positions] : histogram) {
    CandidateMode mode;
    mode.node = node;
    for (const auto& [position, freq] : positions) {
      mode.appearances += freq;
      if (freq > mode.modal_frequency) {  // ascending positions: strict '>' keeps the smallest
        mode.modal_frequency = freq;
        mode.modal_position = position;
      }
    }
    out.push_back(mode);
  }
  return out;
}

std::size_t InferenceResult::position_of(NodeId node) const {
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    if (ranking[i].node == node) return i + 1;
  }
  return 0;
}

SnapshotSeries::SnapshotSeries(const TemporalEdgeList& edges, Granularity granularity, Weighting weighting)
    : granularity_(granularity),
      weighting_(weighting),
      slots_(slice_timeline(edges, granularity)),
      snapshots_(build_snapshots(edges, slots_, weighting)) {}

std::vector<RankedList> slot_rankings(const SnapshotSeries& series, NodeId query, const RprParams& params) {
  std::vector<RankedList> lists;
  for (const Snapshot& snap : series.snapshots()) {
    if (!snap.is_active(query)) continue;
    lists.push_back(rank_scores(rooted_pagerank(snap, query, params)));
  }
  return lists;
}

namespace {

InferenceResult make_result(NodeId query, Method method, Weighting weighting, std::string granularity) {
  InferenceResult r;
  r.query = query;
  r.method = method;
  r.weighting = weighting;
  r.granularity = std::move(granularity);
  return r;
}

[[noreturn]] void throw_isolated(NodeId query) {
  throw Error(ErrorCode::QueryIsolated,
              fmt::format("query {} has no interaction in any slot", to_index(query)));
}

}  // namespace

InferenceResult baseline_rank(const Snapshot& full_span, NodeId query, const RprParams& params) {
  if (!full_span.is_active(query)) throw_isolated(query);
  const RankedList list = rank_scores(rooted_pagerank(full_span, query, params));
  InferenceResult r = make_result(query, Method::Baseline, full_span.weighting(), "full-span");
  r.slots_participated = 1;
  r.slots_total = 1;
  r.ranking.reserve(list.entries.size());
  for (const RankedEntry& e : list.entries) r.ranking.push_back({e.node, e.score, 0.0});
  return r;
}

InferenceResult timeslice_rank(const SnapshotSeries& series, NodeId query, std::size_t p,
                               const RprParams& params) {
  if (p < 1) throw Error(ErrorCode::InvalidThreshold, "vote threshold p must be >= 1");
  const std::vector<RankedList> lists = slot_rankings(series, query, params);
  if (lists.empty()) throw_isolated(query);
  VotingTally tally = tally_votes(query, lists, p);

  std::sort(tally.candidates.begin(), tally.candidates.end(),
            [](const CandidateTally& a, const CandidateTally& b) {
              if (a.votes != b.votes) return a.votes > b.votes;
              // mean position compared exactly: a.sum / a.n < b.sum / b.n
              const auto lhs = a.position_sum * b.appearances;
              const auto rhs = b.position_sum * a.appearances;
              if (lhs != rhs) return lhs < rhs;
              return a.node < b.node;
            });

  InferenceResult r = make_result(query, Method::TimeVoting, series.weighting(),
                                  series.granularity().to_string());
  r.p = p;
  r.slots_participated = tally.slots_participated;
  r.slots_total = series.size();
  r.ranking.reserve(tally.candidates.size());
  for (const CandidateTally& c : tally.candidates) {
    r.ranking.push_back({c.node, static_cast<double>(c.votes), c.mean_position()});
  }
  return r;
}

InferenceResult modal_position_rank(const SnapshotSeries& series, NodeId query, const RprParams& params) {
  const std::vector<RankedList> lists = slot_rankings(series, query, params);
  if (lists.empty()) throw_isolated(query);
  std::vector<CandidateMode> modes = modal_positions(lists);
  std::sort(modes.begin(), modes.end(), [](const CandidateMode& a, const CandidateMode& b) {
    if (a.modal_position != b.modal_position) return a.modal_position < b.modal_position;
    if (a.modal_frequency != b.modal_frequency) return a.modal_frequency > b.modal_frequency;
    return a.node < b.node;
  });

  InferenceResult r = make_result(query, Method::TimeModalPosition, series.weighting(),
                                  series.granularity().to_string());
  r.slots_participated = lists.size();
  r.slots_total = series.size();
  r.ranking.reserve(modes.size());
  for (const CandidateMode& m : modes) {
    r.ranking.push_back({m.node, static_cast<double>(m.modal_position), static_cast<double>(m.modal_frequency)});
  }
  return r;
}

InferenceResult baseline_rank(const TemporalEdgeList& edges, NodeId query, Weighting weighting,
                              const RprParams& params) {
  if (edges.empty()) throw_isolated(query);
  return baseline_rank(build_snapshot(edges, full_span_slot(edges), weighting), query, params);
}

InferenceResult timeslice_rank(const TemporalEdgeList& edges, NodeId query, Granularity granularity,
                               Weighting weighting, std::size_t p, const RprParams& params) {
  if (p < 1) throw Error(ErrorCode::InvalidThreshold, "vote threshold p must be >= 1");
  if (edges.empty()) throw_isolated(query);
  return timeslice_rank(SnapshotSeries(edges, granularity, weighting), query, p, params);
}

InferenceResult modal_position_rank(const TemporalEdgeList& edges, NodeId query, Granularity granularity,
                                    Weighting weighting, const RprParams& params) {
  if (edges.empty()) throw_isolated(query);
  return modal_position_rank(SnapshotSeries(edges, granularity, weighting), query, params);
}

std::string MethodSpec::tag() const {
  return fmt::format("{}/{}", to_string(method), to_string(weighting));
}

}  // namespace hiertie
