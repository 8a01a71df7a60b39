#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hiertie/graph.hpp"
#include "hiertie/pipeline.hpp"

namespace hiertie {

/// Direct superior of each subordinate.
class GroundTruth {
 public:
  GroundTruth() = default;
  /// Throws InvalidArgument on a self tie, UnknownActor for ids outside the table.
  GroundTruth(std::map<NodeId, NodeId> ties, const NodeTable& nodes);

  std::optional<NodeId> superior_of(NodeId subordinate) const;
  const std::map<NodeId, NodeId>& ties() const noexcept { return ties_; }
  std::size_t size() const noexcept { return ties_.size(); }
  /// Ascending.
  std::vector<NodeId> subordinates() const;

  friend bool operator==(const GroundTruth&, const GroundTruth&) = default;

 private:
  std::map<NodeId, NodeId> ties_;
};

struct RecallPoint {
  std::size_t rank = 0;
  double recall = 0.0;

  friend bool operator==(const RecallPoint&, const RecallPoint&) = default;
};

struct RecallCurve {
  std::string method;
  /// rank = 1..max_rank
  std::vector<RecallPoint> points;
  std::size_t n_queries = 0;
  /// Ascending; used to check comparability.
  std::vector<NodeId> queries;

  std::size_t max_rank() const noexcept { return points.size(); }
  double at(std::size_t rank) const { return points.at(rank - 1).recall; }
  /// Mean recall over ranks 1..max_rank, i.e. area under the step curve normalized to [0,1].
  double aurc() const;
};

/**
 * recall(i) = fraction of queries whose true superior sits at position <= i.
 * A superior that never appears in a ranking is a miss at every rank.
 * Errors: MissingTruth (lists offenders), InvalidArgument for max_rank = 0 or no results.
 */
RecallCurve recall_curve(std::span<const InferenceResult> results, const GroundTruth& truth,
                         std::size_t max_rank, std::string method_tag = {});

struct ComparisonTable {
  std::vector<std::string> methods;
  std::size_t max_rank = 0;
  /// recall[m][i] is method m at rank i + 1.
  std::vector<std::vector<double>> recall;
  /// delta[m][i] = recall[m][i] - recall[0][i].
  std::vector<std::vector<double>> delta;
  std::vector<double> aurc;
};

/// Side-by-side recall and AURC. Throws IncomparableCurves for differing query sets or max_rank.
ComparisonTable compare_methods(std::span<const RecallCurve> curves);

/// `rank,recall` with 6 decimal places.
std::string curve_csv(const RecallCurve& curve);
/// {"<method>": [[rank, recall], ...], ...} with recall at 6 decimal places, keys in input order.
std::string curves_json(std::span<const RecallCurve> curves);
/// Header `rank,<methods...>,delta:<methods 2..>`, one row per rank, then an `AURC` row.
std::string comparison_csv(const ComparisonTable& table);

}  // namespace hiertie
