#include <random>

#include <fmt/format.h>

#include "hiertie/error.hpp"
#include "hiertie/ingest.hpp"

namespace hiertie {

void SynthParams::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::InvalidArgument, what); };
  if (managers < 1) fail("managers must be >= 1");
  if (reports_per_manager < 1) fail("reports_per_manager must be >= 1");
  if (slots < 1) fail("slots must be >= 1");
  if (!(hierarchy_rate > 0.0 && hierarchy_rate <= 1.0)) fail("hierarchy_rate must lie in (0,1]");
  if (!(noise_rate >= 0.0 && noise_rate < 1.0)) fail("noise_rate must lie in [0,1)");
  if (hierarchy_max_count < 1 || noise_max_count < 1) fail("max interaction counts must be >= 1");
}

namespace {

// Draws are built from raw mt19937_64 output so the stream is identical on every platform.
class Draws {
 public:
  explicit Draws(std::uint64_t seed) : engine_(seed) {}

  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  std::uint64_t below(std::uint64_t n) { return engine_() % n; }
  std::uint64_t count(int max) { return 1 + below(static_cast<std::uint64_t>(max)); }

 private:
  std::mt19937_64 engine_;
};

std::string manager_label(int m) { return fmt::format("m{:03d}", m); }
std::string report_label(int m, int r) { return fmt::format("r{:03d}_{:03d}", m, r); }

}  // namespace

SyntheticOrg generate_synthetic(const SynthParams& params) {
  params.validate();
  namespace chr = std::chrono;

  std::vector<std::string> labels;
  for (int m = 0; m < params.managers; ++m) labels.push_back(manager_label(m));
  for (int m = 0; m < params.managers; ++m) {
    for (int r = 0; r < params.reports_per_manager; ++r) labels.push_back(report_label(m, r));
  }
  const auto n = static_cast<std::uint64_t>(labels.size());

  Draws draws(params.seed);
  TemporalEdgeListBuilder builder(params.directed);
  const chr::year_month first_month = chr::year{2000} / chr::January;

  auto exchange = [&](const std::string& a, const std::string& b, Date when, int max_count) {
    builder.add(a, b, when, draws.count(max_count));
    if (params.directed) builder.add(b, a, when, draws.count(max_count));
  };

  for (int k = 0; k < params.slots; ++k) {
    const chr::year_month ym = first_month + chr::months{k};
    const Date month_begin{chr::sys_days{ym / chr::day{1}}};
    const auto month_days = static_cast<std::uint64_t>(
        static_cast<unsigned>(chr::year_month_day_last{ym / chr::last}.day()));
    auto some_day = [&] { return month_begin.plus_days(static_cast<long>(draws.below(month_days))); };

    for (int m = 0; m < params.managers; ++m) {
      const std::string& boss = labels[static_cast<std::size_t>(m)];
      for (int r = 0; r < params.reports_per_manager; ++r) {
        const std::size_t self = static_cast<std::size_t>(params.managers + m * params.reports_per_manager + r);
        if (draws.unit() < params.hierarchy_rate) {
          exchange(labels[self], boss, some_day(), params.hierarchy_max_count);
        }
        if (n > 2 && draws.unit() < params.noise_rate) {
          // uniform over the n - 2 nodes that are neither self nor own manager
          std::uint64_t pick = draws.below(n - 2);
          const auto lo = std::min<std::uint64_t>(static_cast<std::uint64_t>(m), self);
          const auto hi = std::max<std::uint64_t>(static_cast<std::uint64_t>(m), self);
          if (pick >= lo) ++pick;
          if (pick >= hi) ++pick;
          exchange(labels[self], labels[static_cast<std::size_t>(pick)], some_day(), params.noise_max_count);
        }
      }
    }
  }

  if (builder.pending() == 0) {
    throw Error(ErrorCode::DegenerateConfig, "synthetic parameters produced no interactions");
  }
  SyntheticOrg org{std::move(builder).build(), {}};
  const NodeTable& nodes = org.edges.nodes();
  std::map<NodeId, NodeId> ties;
  for (int m = 0; m < params.managers; ++m) {
    const auto boss = nodes.find(manager_label(m));
    if (!boss) continue;
    for (int r = 0; r < params.reports_per_manager; ++r) {
      if (const auto report = nodes.find(report_label(m, r))) ties.emplace(*report, *boss);
    }
  }
  org.truth = GroundTruth(std::move(ties), nodes);
  return org;
}

}  // namespace hiertie
