#include "hiertie/rpr.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "hiertie/error.hpp"

namespace hiertie {

void RprParams::validate() const {
  if (!(damping > 0.0 && damping < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, fmt::format("damping must lie in (0,1), got {}", damping));
  }
  if (!(tolerance > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, fmt::format("tolerance must be > 0, got {}", tolerance));
  }
  if (max_iterations < 1) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("max_iterations must be >= 1, got {}", max_iterations));
  }
}

double ScoreVector::total() const {
  double sum = 0.0;
  for (NodeId v : members) sum += scores[to_index(v)];
  return sum;
}

std::size_t RankedList::position_of(NodeId node) const {
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].node == node) return i + 1;
  }
  return 0;
}

ScoreVector rooted_pagerank(const Snapshot& snapshot, NodeId root, const RprParams& params) {
  params.validate();
  if (snapshot.empty()) throw Error(ErrorCode::EmptyGraph, "snapshot has no edges");
  if (!snapshot.is_active(root)) {
    throw Error(ErrorCode::RootInactive,
                fmt::format("root {} is not active in this snapshot", to_index(root)));
  }

  const auto active = snapshot.active_nodes();
  const std::size_t r = to_index(root);
  const double d = params.damping;

  ScoreVector out;
  out.root = root;
  out.members.assign(active.begin(), active.end());

  std::vector<double> current(snapshot.node_count(), 0.0);
  std::vector<double> next(snapshot.node_count(), 0.0);
  current[r] = 1.0;

  for (int iter = 1; iter <= params.max_iterations; ++iter) {
    double dangling = 0.0;
    for (NodeId u : active) next[to_index(u)] = 0.0;

    for (NodeId u : active) {
      const double mass = current[to_index(u)];
      if (mass == 0.0) continue;
      const double out_w = snapshot.out_weight(u);
      if (out_w == 0.0) {
        dangling += mass;
        continue;
      }
      const double share = d * mass / out_w;
      const auto nbrs = snapshot.neighbors(u);
      const auto ws = snapshot.weights(u);
      for (std::size_t j = 0; j < nbrs.size(); ++j) next[to_index(nbrs[j])] += share * ws[j];
    }
    next[r] += (1.0 - d) + d * dangling;

    double change = 0.0;
    for (NodeId u : active) change += std::abs(next[to_index(u)] - current[to_index(u)]);
    current.swap(next);
    out.iterations_used = iter;
    if (change < params.tolerance) {
      out.converged = true;
      break;
    }
  }

  out.scores = std::move(current);
  return out;
}

RankedList rank_scores(const ScoreVector& scores) {
  RankedList list;
  list.root = scores.root;
  list.entries.reserve(scores.members.size());
  for (NodeId v : scores.members) {
    if (v == scores.root) continue;
    list.entries.push_back({v, scores.scores[to_index(v)]});
  }
  std::sort(list.entries.begin(), list.entries.end(), [](const RankedEntry& a, const RankedEntry& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.node < b.node;
  });
  return list;
}

}  // namespace hiertie
