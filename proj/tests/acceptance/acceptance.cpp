// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
//
//   hiertie_acceptance [--workdir DIR] [--enron-edges FILE --enron-truth FILE]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <json.hpp>

#include "hiertie/cli.hpp"
#include "hiertie/error.hpp"
#include "hiertie/eval.hpp"
#include "hiertie/ingest.hpp"
#include "hiertie/pipeline.hpp"
#include "oracle/dense_oracle.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using namespace hiertie;

namespace {

constexpr double kOracleTolerance = 1e-7;
constexpr double kNormTolerance = 1e-8;
constexpr double kSolverBudgetSeconds = 10.0;
constexpr double kSyntheticBudgetSeconds = 30.0;
constexpr double kRecallAtOneThreshold = 0.9;
constexpr std::size_t kMaxRank = 10;
constexpr std::size_t kEnronQueries = 146;

struct Verdict {
  bool pass;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Normalization bookkeeping shared by every criterion that produces ScoreVectors.
struct NormStats {
  std::size_t vectors = 0;
  double worst_sum_error = 0.0;
  double most_negative = 0.0;

  void record(const ScoreVector& sv) {
    ++vectors;
    worst_sum_error = std::max(worst_sum_error, std::abs(sv.total() - 1.0));
    for (double s : sv.scores) most_negative = std::min(most_negative, s);
  }
};

NormStats g_norm;

std::vector<NodeId> order_of(const InferenceResult& r) {
  std::vector<NodeId> out;
  for (const auto& c : r.ranking) out.push_back(c.node);
  return out;
}

Verdict solver_oracle() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  std::size_t solves = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::size_t n = 5 + seed % 46;  // 5..50 nodes
    const double density = 0.03 + 0.01 * static_cast<double>(seed % 10);
    const auto g = testsupport::random_graph(1000 + seed, n, density, true);
    const Snapshot snap = build_snapshot(g.list, full_span_slot(g.list), Weighting::Weighted);
    for (std::size_t root : {std::size_t{0}, n / 2, n - 1}) {
      const ScoreVector sv = rooted_pagerank(snap, node_at(root));
      g_norm.record(sv);
      const auto expect = oracle::rooted_pagerank_dense(n, g.edges, true, root, RprParams::kDefaultDamping);
      for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(sv.scores[i] - expect[i]));
      ++solves;
    }
  }
  const double elapsed = seconds_since(t0);
  return {worst <= kOracleTolerance && elapsed < kSolverBudgetSeconds,
          fmt::format("{} solves on 100 graphs, max |iterative - dense| = {:.3e} (tol {:.0e}), {:.2f} s (budget {} s)",
                      solves, worst, kOracleTolerance, elapsed, kSolverBudgetSeconds)};
}

Verdict degeneracy() {
  std::size_t compared = 0;
  std::size_t mismatches = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const std::size_t n = 8 + seed % 23;
    const auto g = testsupport::random_graph(5000 + seed, n, 0.12, seed % 2 == 0);
    const Snapshot full = build_snapshot(g.list, full_span_slot(g.list), Weighting::Weighted);
    const SnapshotSeries single(g.list, Granularity::fixed(1), Weighting::Weighted);
    for (std::size_t root = 0; root < n; ++root) {
      const NodeId q = node_at(root);
      g_norm.record(rooted_pagerank(full, q));
      const auto base = order_of(baseline_rank(full, q, {}));
      const auto voted = order_of(timeslice_rank(single, q, n, {}));
      const auto modal = order_of(modal_position_rank(single, q, {}));
      ++compared;
      if (base != voted || base != modal) ++mismatches;
    }
  }
  return {mismatches == 0, fmt::format("{} roots on 50 single-slot graphs with p = |V|, {} ordering mismatches",
                                       compared, mismatches)};
}

int month_slot(Date d) {
  const auto ymd = d.ymd();
  return (static_cast<int>(ymd.year()) - 2000) * 12 + static_cast<int>(static_cast<unsigned>(ymd.month())) - 1;
}

RecallCurve run_curve(const SyntheticOrg& org, Method method, Weighting weighting) {
  const QuerySet qs(org.truth.subordinates(), org.edges.nodes());
  const MethodSpec spec{method, weighting, Granularity::month(), MethodSpec::kDefaultThreshold, {}};
  return recall_curve(infer_all(org.edges, qs, spec), org.truth, kMaxRank, spec.tag());
}

void record_all_score_vectors(const SyntheticOrg& org) {
  for (auto weighting : {Weighting::Weighted, Weighting::Unweighted}) {
    for (auto gran : {Granularity::week(), Granularity::month()}) {
      const SnapshotSeries series(org.edges, gran, weighting);
      for (const Snapshot& snap : series.snapshots()) {
        for (NodeId v : snap.active_nodes()) g_norm.record(rooted_pagerank(snap, v));
      }
    }
    const Snapshot full = build_snapshot(org.edges, full_span_slot(org.edges), weighting);
    for (NodeId v : full.active_nodes()) g_norm.record(rooted_pagerank(full, v));
  }
}

Verdict time_beats_baseline() {
  const auto t0 = Clock::now();
  SynthParams sp;
  sp.managers = 10;
  sp.reports_per_manager = 5;
  sp.slots = 12;
  sp.hierarchy_rate = 0.9;
  sp.noise_rate = 0.2;
  sp.seed = 42;
  const SyntheticOrg org = generate_synthetic(sp);

  const RecallCurve base = run_curve(org, Method::Baseline, Weighting::Weighted);
  const RecallCurve voted = run_curve(org, Method::TimeVoting, Weighting::Weighted);

  // independent brute-force tally on the raw records
  std::vector<oracle::SlotEdge> raw;
  for (const auto& e : org.edges.edges()) {
    raw.push_back({to_index(e.src), to_index(e.dst), static_cast<double>(e.count), month_slot(e.timestamp)});
  }
  std::size_t oracle_hits = 0;
  for (const auto& [sub, sup] : org.truth.ties()) {
    const auto order = oracle::brute_force_vote(org.edges.node_count(), raw, sp.slots, sp.directed, to_index(sub),
                                                MethodSpec::kDefaultThreshold, RprParams::kDefaultDamping);
    oracle_hits += !order.empty() && order.front() == to_index(sup);
  }
  const double oracle_recall = static_cast<double>(oracle_hits) / static_cast<double>(org.truth.size());
  const double elapsed = seconds_since(t0);

  record_all_score_vectors(org);

  const bool pass = voted.aurc() >= base.aurc() && voted.at(1) >= kRecallAtOneThreshold &&
                    oracle_recall >= kRecallAtOneThreshold && voted.at(1) == oracle_recall &&
                    elapsed < kSyntheticBudgetSeconds;
  return {pass, fmt::format("AURC time-voting {:.6f} >= baseline {:.6f}; recall@1 {:.3f} (oracle tally {:.3f}, "
                            "threshold {}); {:.2f} s (budget {} s)",
                            voted.aurc(), base.aurc(), voted.at(1), oracle_recall, kRecallAtOneThreshold, elapsed,
                            kSyntheticBudgetSeconds)};
}

Verdict weighted_beats_unweighted() {
  SynthParams sp;  // seed 42 organization, manager exchanges carry 1..6 interactions, noise exactly 1
  sp.hierarchy_max_count = 6;
  sp.noise_max_count = 1;
  const SyntheticOrg org = generate_synthetic(sp);
  std::string detail;
  bool pass = true;
  for (Method m : {Method::Baseline, Method::TimeVoting}) {
    const double w = run_curve(org, m, Weighting::Weighted).aurc();
    const double u = run_curve(org, m, Weighting::Unweighted).aurc();
    pass = pass && w >= u;
    detail += fmt::format("{}{}: weighted {:.6f} vs unweighted {:.6f}", detail.empty() ? "" : "; ", to_string(m), w, u);
  }
  return {pass, detail};
}

Verdict recall_properties() {
  std::mt19937_64 rng(99);
  std::size_t violations = 0;
  std::size_t trials = 0;
  for (int trial = 0; trial < 300; ++trial, ++trials) {
    const std::size_t n = 10 + rng() % 60;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(fmt::format("n{:03d}", i));
    const NodeTable nodes(labels);
    const std::size_t nq = 1 + rng() % (n / 2);
    std::map<NodeId, NodeId> ties;
    std::vector<InferenceResult> results;
    for (std::size_t q = 0; q < nq; ++q) {
      const NodeId sup = node_at(n / 2 + rng() % (n - n / 2));
      ties.emplace(node_at(q), sup);
      InferenceResult r;
      r.query = node_at(q);
      for (std::size_t c = 0; c < n; ++c) {
        if (c != q && rng() % 4 != 0) r.ranking.push_back({node_at(c), 0.0, 0.0});
      }
      std::shuffle(r.ranking.begin(), r.ranking.end(), rng);
      results.push_back(std::move(r));
    }
    const GroundTruth truth(ties, nodes);
    const std::size_t max_rank = 1 + rng() % n;
    const RecallCurve curve = recall_curve(results, truth, max_rank, "x");
    for (std::size_t i = 0; i < curve.points.size(); ++i) {
      const double r = curve.points[i].recall;
      if (r < 0.0 || r > 1.0 || (i > 0 && r < curve.points[i - 1].recall)) ++violations;
    }
    std::shuffle(results.begin(), results.end(), rng);
    if (recall_curve(results, truth, max_rank, "x").points != curve.points) ++violations;
  }
  return {violations == 0, fmt::format("{} randomized ranking sets, {} monotonicity/bound/permutation violations",
                                       trials, violations)};
}

std::map<std::string, std::string> snapshot_dir(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    std::ifstream in(entry.path(), std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    files[entry.path().filename().string()] = ss.str();
  }
  return files;
}

int cli_run(std::vector<std::string> args) {
  args.insert(args.begin(), "hiertie");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  if (code != 0) std::cerr << err.str();
  return code;
}

Verdict determinism(const fs::path& work) {
  const fs::path dir = work / "determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const fs::path config = dir / "config.json";
  std::ofstream(config) << nlohmann::json{{"synthetic", {{"seed", 42}}},
                                          {"methods", {"baseline", "time-voting", "modal-position"}},
                                          {"weightings", {"weighted", "unweighted"}},
                                          {"out", (dir / "out").string()},
                                          {"jobs", 4}}
                               .dump();
  if (cli_run({"evaluate", "--config", config.string()}) != 0) return {false, "first evaluate run failed"};
  const auto first = snapshot_dir(dir / "out");
  fs::remove_all(dir / "out");
  if (cli_run({"evaluate", "--config", config.string()}) != 0) return {false, "second evaluate run failed"};
  const auto second = snapshot_dir(dir / "out");
  std::size_t bytes = 0;
  for (const auto& [_, content] : first) bytes += content.size();
  return {first == second && first.size() >= 9,
          fmt::format("{} output files ({} bytes) compared across two runs: {}", first.size(), bytes,
                      first == second ? "identical" : "DIFFERENT")};
}

// Enron-format stand-in: 155 addresses, 146 with a known superior, weekly
// counts from January 2000 through November 2001.
void write_enron_standin(const fs::path& edges_path, const fs::path& truth_path) {
  std::mt19937_64 rng(2001);
  auto addr = [](std::size_t i) { return fmt::format("employee{:03d}@enron.com", i); };
  auto boss = [](std::size_t i) { return i < 9 ? i : (i - 9) % 9; };
  std::ofstream edges(edges_path);
  std::ofstream truth(truth_path);
  edges << "sender,receiver,date,count\n";
  truth << "subordinate,superior\n";
  for (std::size_t i = 9; i < 155; ++i) truth << addr(i) << "," << addr(boss(i)) << "\n";
  for (Date week = Date{2000, 1, 3}; week <= Date{2001, 11, 26}; week = week.plus_days(7)) {
    for (std::size_t i = 9; i < 155; ++i) {
      if (rng() % 100 < 35) edges << fmt::format("{},{},{},{}\n", addr(i), addr(boss(i)), week.iso(), 1 + rng() % 4);
      if (rng() % 100 < 30) edges << fmt::format("{},{},{},{}\n", addr(boss(i)), addr(i), week.iso(), 1 + rng() % 3);
      if (rng() % 100 < 15) {
        const std::size_t peer = rng() % 155;
        if (peer != i) edges << fmt::format("{},{},{},{}\n", addr(i), addr(peer), week.iso(), 1 + rng() % 2);
      }
    }
  }
}

bool well_formed_curve_file(const fs::path& path) {
  std::ifstream in(path);
  std::string line;
  if (!std::getline(in, line) || line != "rank,recall") return false;
  std::size_t expected_rank = 1;
  double previous = 0.0;
  while (std::getline(in, line)) {
    std::size_t rank = 0;
    double recall = -1.0;
    if (std::sscanf(line.c_str(), "%zu,%lf", &rank, &recall) != 2) return false;
    if (rank != expected_rank++ || recall < previous || recall < 0.0 || recall > 1.0) return false;
    previous = recall;
  }
  return expected_rank == kMaxRank + 1;
}

Verdict real_data_smoke(const fs::path& work, const std::string& edges_arg, const std::string& truth_arg) {
  const fs::path dir = work / "enron";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const bool supplied = !edges_arg.empty() && !truth_arg.empty();
  fs::path edges = edges_arg;
  fs::path truth = truth_arg;
  if (!supplied) {
    edges = dir / "enron_standin_edges.csv";
    truth = dir / "enron_standin_truth.csv";
    write_enron_standin(edges, truth);
  }
  std::size_t curves = 0;
  for (const char* gran : {"week", "month"}) {
    const fs::path out = dir / gran;
    if (cli_run({"evaluate", "--edges", edges.string(), "--truth", truth.string(), "--schema", "directed",
                 "--granularity", gran, "--methods", "baseline,time-voting,modal-position", "--weightings",
                 "weighted,unweighted", "--max-rank", std::to_string(kMaxRank), "--out", out.string()}) != 0) {
      return {false, fmt::format("evaluate failed at granularity {}", gran)};
    }
    for (const auto& entry : fs::directory_iterator(out)) {
      const auto name = entry.path().filename().string();
      if (name.rfind("recall_", 0) != 0) continue;
      if (!well_formed_curve_file(entry.path())) return {false, fmt::format("malformed curve {}", name)};
      ++curves;
    }
    if (cli_run({"rank", "--edges", edges.string(), "--truth", truth.string(), "--granularity", gran, "--method",
                 "time-voting", "--out", (dir / (std::string(gran) + "_rank")).string()}) != 0) {
      return {false, fmt::format("rank failed at granularity {}", gran)};
    }
    const auto rankings = nlohmann::json::parse(
        std::ifstream(dir / (std::string(gran) + "_rank") / "rankings_time-voting_weighted.json"));
    if (rankings["queries"].size() != kEnronQueries) {
      return {false, fmt::format("{} queries ranked, expected {}", rankings["queries"].size(), kEnronQueries)};
    }
  }
  return {curves == 12, fmt::format("{} data: week+month x weighted+unweighted x 3 methods -> {} well-formed curves, "
                                    "{} queries each{}",
                                    supplied ? "supplied" : "Enron-format stand-in", curves, kEnronQueries,
                                    supplied ? "" : " (pass --enron-edges/--enron-truth for the real corpus)")};
}

Verdict normalization() {
  return {g_norm.vectors > 0 && g_norm.worst_sum_error <= kNormTolerance && g_norm.most_negative >= 0.0,
          fmt::format("{} score vectors, max |sum - 1| = {:.3e} (tol {:.0e}), min entry {:.3e}", g_norm.vectors,
                      g_norm.worst_sum_error, kNormTolerance, g_norm.most_negative)};
}

}  // namespace

int main(int argc, char** argv) {
  fs::path work = fs::temp_directory_path() / "hiertie_acceptance";
  std::string enron_edges;
  std::string enron_truth;
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string flag = argv[i];
    if (flag == "--workdir") work = argv[i + 1];
    else if (flag == "--enron-edges") enron_edges = argv[i + 1];
    else if (flag == "--enron-truth") enron_truth = argv[i + 1];
    else {
      std::cerr << "unknown argument " << flag << "\n";
      return 2;
    }
  }
  fs::create_directories(work);

  struct Criterion {
    int id;
    const char* name;
    std::function<Verdict()> check;
  };
  // Normalization (2) runs last: it audits the score vectors produced by the others.
  const std::vector<Criterion> criteria = {
      {1, "solver oracle", solver_oracle},
      {3, "single-slot degeneracy", degeneracy},
      {4, "time-based beats baseline", time_beats_baseline},
      {5, "weighted beats unweighted", weighted_beats_unweighted},
      {6, "recall-curve properties", recall_properties},
      {7, "evaluate determinism", [&] { return determinism(work); }},
      {8, "real-data smoke", [&] { return real_data_smoke(work, enron_edges, enron_truth); }},
      {2, "score normalization", normalization},
  };

  std::map<int, std::string> lines;
  int failures = 0;
  for (const auto& c : criteria) {
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, fmt::format("exception: {}", e.what())};
    }
    failures += !v.pass;
    lines[c.id] = fmt::format("[{}] criterion {}: {} -- {}", v.pass ? "PASS" : "FAIL", c.id, c.name, v.detail);
  }
  for (const auto& [_, line] : lines) std::cout << line << "\n";
  std::cout << fmt::format("{} of {} criteria passed\n", lines.size() - static_cast<std::size_t>(failures),
                           lines.size());
  return failures == 0 ? 0 : 1;
}
