#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hiertie/graph.hpp"

namespace hiertie {

struct RprParams {
  static constexpr double kDefaultDamping = 0.85;
  static constexpr double kDefaultTolerance = 1e-9;
  static constexpr int kDefaultMaxIterations = 200;

  /// Probability of following an edge instead of restarting at the root.
  double damping = kDefaultDamping;
  /// Stop once the L1 change between successive iterates drops below this.
  double tolerance = kDefaultTolerance;
  int max_iterations = kDefaultMaxIterations;

  /// Throws Error(InvalidArgument) unless 0 < damping < 1, tolerance > 0, max_iterations >= 1.
  void validate() const;
};

/// Rooted-PageRank scores over the active nodes of one snapshot.
struct ScoreVector {
  NodeId root{};
  /// Active nodes of the snapshot, ascending.
  std::vector<NodeId> members;
  /// Dense by global NodeId; inactive nodes hold 0.
  std::vector<double> scores;
  bool converged = false;
  int iterations_used = 0;

  double score(NodeId id) const { return scores.at(to_index(id)); }
  /// Sum over members (root included).
  double total() const;
};

struct RankedEntry {
  NodeId node{};
  double score = 0.0;

  friend bool operator==(const RankedEntry&, const RankedEntry&) = default;
};

/// Candidates for one root, root excluded, by (score desc, NodeId asc).
struct RankedList {
  NodeId root{};
  std::vector<RankedEntry> entries;

  /// 1-based position of `node`, 0 when absent.
  std::size_t position_of(NodeId node) const;

  friend bool operator==(const RankedList&, const RankedList&) = default;
};

/**
 * Power iteration for the walk that restarts at `root` with probability
 * 1 - damping and otherwise follows an out-edge chosen proportionally to its
 * weight. Mass on nodes without out-edges goes back to the root.
 *
 * Errors: EmptyGraph when the snapshot has no edges, RootInactive when the
 * root has no edge in the snapshot.
 */
ScoreVector rooted_pagerank(const Snapshot& snapshot, NodeId root, const RprParams& params = {});

RankedList rank_scores(const ScoreVector& scores);

}  // namespace hiertie
