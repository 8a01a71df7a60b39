#include <exception>
#include <optional>
#include <variant>

#include "hiertie/error.hpp"
#include "hiertie/pipeline.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hiertie {

namespace {

// Shared, immutable inputs for one batch: either the full-span snapshot or the slot series.
struct Prepared {
  const MethodSpec* spec;
  std::variant<Snapshot, SnapshotSeries> data;
};

Prepared prepare(const TemporalEdgeList& edges, const MethodSpec& spec) {
  spec.params.validate();
  if (spec.method == Method::TimeVoting && spec.p < 1) {
    throw Error(ErrorCode::InvalidThreshold, "vote threshold p must be >= 1");
  }
  if (edges.empty()) throw Error(ErrorCode::EmptyInput, "edge list is empty");
  if (spec.method == Method::Baseline) {
    return {&spec, build_snapshot(edges, full_span_slot(edges), spec.weighting)};
  }
  return {&spec, SnapshotSeries(edges, spec.granularity, spec.weighting)};
}

InferenceResult infer_one(const Prepared& prep, NodeId query) {
  const MethodSpec& spec = *prep.spec;
  try {
    switch (spec.method) {
      case Method::Baseline:
        return baseline_rank(std::get<Snapshot>(prep.data), query, spec.params);
      case Method::TimeVoting:
        return timeslice_rank(std::get<SnapshotSeries>(prep.data), query, spec.p, spec.params);
      case Method::TimeModalPosition:
        return modal_position_rank(std::get<SnapshotSeries>(prep.data), query, spec.params);
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::QueryIsolated) throw;
  }
  InferenceResult r;
  r.query = query;
  r.method = spec.method;
  r.weighting = spec.weighting;
  r.granularity = spec.method == Method::Baseline ? "full-span" : spec.granularity.to_string();
  r.p = spec.method == Method::TimeVoting ? spec.p : 0;
  r.slots_total = spec.method == Method::Baseline ? 1 : std::get<SnapshotSeries>(prep.data).size();
  r.isolated = true;
  return r;
}

}  // namespace

std::vector<InferenceResult> infer_all_serial(const TemporalEdgeList& edges, const QuerySet& queries,
                                              const MethodSpec& spec) {
  const Prepared prep = prepare(edges, spec);
  std::vector<InferenceResult> out;
  out.reserve(queries.size());
  for (NodeId q : queries.queries()) out.push_back(infer_one(prep, q));
  return out;
}

std::vector<InferenceResult> infer_all(const TemporalEdgeList& edges, const QuerySet& queries,
                                       const MethodSpec& spec, int jobs) {
  const Prepared prep = prepare(edges, spec);
  const auto qs = queries.queries();
  const auto n = static_cast<std::ptrdiff_t>(qs.size());
  std::vector<InferenceResult> out(qs.size());
  // Errors are recorded per query and the first one in query order is rethrown.
  std::vector<std::exception_ptr> errors(qs.size());

#ifdef _OPENMP
  const int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
#else
  (void)jobs;
#endif
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = infer_one(prep, qs[static_cast<std::size_t>(i)]);
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }

  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace hiertie
