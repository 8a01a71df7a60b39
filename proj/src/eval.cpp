#include "hiertie/eval.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>
#include <fmt/ranges.h>
#include <json.hpp>

#include "hiertie/error.hpp"

namespace hiertie {

GroundTruth::GroundTruth(std::map<NodeId, NodeId> ties, const NodeTable& nodes) : ties_(std::move(ties)) {
  for (const auto& [sub, sup] : ties_) {
    if (to_index(sub) >= nodes.size() || to_index(sup) >= nodes.size()) {
      throw Error(ErrorCode::UnknownActor, "ground-truth tie references a node outside the table");
    }
    if (sub == sup) {
      throw Error(ErrorCode::InvalidArgument,
                  fmt::format("'{}' cannot be its own superior", nodes.label(sub)));
    }
  }
}

std::optional<NodeId> GroundTruth::superior_of(NodeId subordinate) const {
  auto it = ties_.find(subordinate);
  if (it == ties_.end()) return std::nullopt;
  return it->second;
}

std::vector<NodeId> GroundTruth::subordinates() const {
  std::vector<NodeId> out;
  out.reserve(ties_.size());
  for (const auto& [sub, _] : ties_) out.push_back(sub);
  return out;
}

double RecallCurve::aurc() const {
  if (points.empty()) return 0.0;
  double sum = 0.0;
  for (const RecallPoint& p : points) sum += p.recall;
  return sum / static_cast<double>(points.size());
}

RecallCurve recall_curve(std::span<const InferenceResult> results, const GroundTruth& truth,
                         std::size_t max_rank, std::string method_tag) {
  if (max_rank < 1) throw Error(ErrorCode::InvalidArgument, "max_rank must be >= 1");
  if (results.empty()) throw Error(ErrorCode::InvalidArgument, "no inference results to evaluate");

  std::vector<std::size_t> missing;
  for (const InferenceResult& r : results) {
    if (!truth.superior_of(r.query)) missing.push_back(to_index(r.query));
  }
  if (!missing.empty()) {
    throw Error(ErrorCode::MissingTruth,
                fmt::format("no ground truth for queries [{}]", fmt::join(missing, ",")));
  }

  // hits[i] = queries whose superior sits exactly at position i + 1
  std::vector<std::size_t> hits(max_rank, 0);
  RecallCurve curve;
  curve.method = method_tag.empty()
                     ? fmt::format("{}/{}", to_string(results.front().method), to_string(results.front().weighting))
                     : std::move(method_tag);
  curve.n_queries = results.size();
  curve.queries.reserve(results.size());
  for (const InferenceResult& r : results) {
    curve.queries.push_back(r.query);
    const std::size_t pos = r.position_of(*truth.superior_of(r.query));
    if (pos >= 1 && pos <= max_rank) hits[pos - 1] += 1;
  }
  std::sort(curve.queries.begin(), curve.queries.end());

  std::size_t cumulative = 0;
  curve.points.reserve(max_rank);
  for (std::size_t i = 0; i < max_rank; ++i) {
    cumulative += hits[i];
    curve.points.push_back({i + 1, static_cast<double>(cumulative) / static_cast<double>(curve.n_queries)});
  }
  return curve;
}

ComparisonTable compare_methods(std::span<const RecallCurve> curves) {
  ComparisonTable table;
  if (curves.empty()) return table;
  const RecallCurve& ref = curves.front();
  for (const RecallCurve& c : curves) {
    if (c.queries != ref.queries || c.max_rank() != ref.max_rank()) {
      throw Error(ErrorCode::IncomparableCurves,
                  fmt::format("curve '{}' does not share the query set and max_rank of '{}'", c.method,
                              ref.method));
    }
  }
  table.max_rank = ref.max_rank();
  for (const RecallCurve& c : curves) {
    table.methods.push_back(c.method);
    std::vector<double> values;
    std::vector<double> deltas;
    for (std::size_t i = 0; i < table.max_rank; ++i) {
      values.push_back(c.points[i].recall);
      deltas.push_back(c.points[i].recall - ref.points[i].recall);
    }
    table.recall.push_back(std::move(values));
    table.delta.push_back(std::move(deltas));
    table.aurc.push_back(c.aurc());
  }
  return table;
}

std::string curve_csv(const RecallCurve& curve) {
  std::string out = "rank,recall\n";
  for (const RecallPoint& p : curve.points) out += fmt::format("{},{:.6f}\n", p.rank, p.recall);
  return out;
}

std::string curves_json(std::span<const RecallCurve> curves) {
  std::string out = "{";
  for (std::size_t m = 0; m < curves.size(); ++m) {
    if (m > 0) out += ",";
    out += fmt::format("\n  {}: [", nlohmann::json(curves[m].method).dump());
    for (std::size_t i = 0; i < curves[m].points.size(); ++i) {
      const RecallPoint& p = curves[m].points[i];
      out += fmt::format("{}[{}, {:.6f}]", i > 0 ? ", " : "", p.rank, p.recall);
    }
    out += "]";
  }
  out += curves.empty() ? "}\n" : "\n}\n";
  return out;
}

std::string comparison_csv(const ComparisonTable& table) {
  std::string out = "rank";
  for (const auto& m : table.methods) out += "," + m;
  for (std::size_t m = 1; m < table.methods.size(); ++m) out += ",delta:" + table.methods[m];
  out += "\n";
  for (std::size_t i = 0; i < table.max_rank; ++i) {
    out += fmt::format("{}", i + 1);
    for (const auto& col : table.recall) out += fmt::format(",{:.6f}", col[i]);
    for (std::size_t m = 1; m < table.delta.size(); ++m) out += fmt::format(",{:.6f}", table.delta[m][i]);
    out += "\n";
  }
  out += "AURC";
  for (double a : table.aurc) out += fmt::format(",{:.6f}", a);
  for (std::size_t m = 1; m < table.aurc.size(); ++m) out += fmt::format(",{:.6f}", table.aurc[m] - table.aurc[0]);
  out += "\n";
  return out;
}

}  // namespace hiertie
