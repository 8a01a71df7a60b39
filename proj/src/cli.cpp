#include "hiertie/cli.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "hiertie/error.hpp"
#include "hiertie/eval.hpp"

namespace hiertie::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

/// Configuration problem detected before any data is touched; exits with kValidationError.
struct ValidationError : std::runtime_error {
  std::string code;
  ValidationError(std::string c, const std::string& message) : std::runtime_error(message), code(std::move(c)) {}
};

[[noreturn]] void invalid(const std::string& message) { throw ValidationError("InvalidConfig", message); }

// Flag values as given on the command line; unset flags leave the config untouched.
struct FlagValues {
  std::optional<std::string> config;
  std::optional<std::string> edges;
  std::optional<std::string> schema;
  std::optional<std::string> truth;
  bool synthetic = false;
  std::optional<std::vector<std::string>> methods;
  std::optional<std::vector<std::string>> weightings;
  std::optional<std::string> granularity;
  std::optional<std::size_t> p;
  std::optional<double> damping;
  std::optional<double> tolerance;
  std::optional<int> max_iterations;
  std::optional<std::size_t> max_rank;
  std::optional<std::string> out;
  std::optional<int> jobs;

  std::optional<std::uint64_t> seed;
  std::optional<int> managers;
  std::optional<int> reports_per_manager;
  std::optional<int> slots;
  std::optional<double> hierarchy_rate;
  std::optional<double> noise_rate;
  std::optional<int> hierarchy_max_count;
  std::optional<int> noise_max_count;
  bool synth_undirected = false;

  bool any_synth_param() const {
    return seed || managers || reports_per_manager || slots || hierarchy_rate || noise_rate ||
           hierarchy_max_count || noise_max_count || synth_undirected;
  }
};

Method to_method(const std::string& text) {
  if (auto m = parse_method(text)) return *m;
  invalid(fmt::format("unknown method '{}' (baseline|time-voting|modal-position)", text));
}

Weighting to_weighting(const std::string& text) {
  if (auto w = parse_weighting(text)) return *w;
  invalid(fmt::format("unknown weighting '{}' (weighted|unweighted)", text));
}

Granularity to_granularity(const std::string& text) {
  if (auto g = Granularity::parse(text)) return *g;
  invalid(fmt::format("unknown granularity '{}' (week|month|year|fixed:N)", text));
}

EdgeFormat to_schema(const std::string& text) {
  if (auto f = parse_edge_format(text)) return *f;
  invalid(fmt::format("unknown schema '{}' (directed|undirected)", text));
}

// Accepts "a,b" as well as repeated flags.
std::vector<std::string> split_list(const std::vector<std::string>& items) {
  std::vector<std::string> out;
  for (const auto& item : items) {
    std::stringstream ss(item);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (!part.empty()) out.push_back(part);
    }
  }
  return out;
}

std::vector<std::string> json_list(const json& value) {
  if (value.is_string()) return split_list({value.get<std::string>()});
  return value.get<std::vector<std::string>>();
}

template <typename T>
void take(const json& obj, const char* key, T& target) {
  if (obj.contains(key)) target = obj.at(key).get<T>();
}

void apply_synth_json(const json& j, SynthParams& s) {
  take(j, "seed", s.seed);
  take(j, "managers", s.managers);
  take(j, "reports_per_manager", s.reports_per_manager);
  take(j, "slots", s.slots);
  take(j, "hierarchy_rate", s.hierarchy_rate);
  take(j, "noise_rate", s.noise_rate);
  take(j, "hierarchy_max_count", s.hierarchy_max_count);
  take(j, "noise_max_count", s.noise_max_count);
  take(j, "directed", s.directed);
}

void apply_config_file(const fs::path& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw ValidationError("MissingFile", fmt::format("config file '{}' does not exist", path.string()));
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    invalid(fmt::format("config file '{}': {}", path.string(), e.what()));
  }
  if (!j.is_object()) invalid(fmt::format("config file '{}' must hold a JSON object", path.string()));
  try {
    if (j.contains("edges")) cfg.edges = j.at("edges").get<std::string>();
    if (j.contains("schema")) cfg.schema = to_schema(j.at("schema").get<std::string>());
    if (j.contains("truth")) cfg.truth = j.at("truth").get<std::string>();
    for (const char* key : {"method", "methods"}) {
      if (j.contains(key)) {
        cfg.methods.clear();
        for (const auto& m : json_list(j.at(key))) cfg.methods.push_back(to_method(m));
      }
    }
    for (const char* key : {"weighting", "weightings"}) {
      if (j.contains(key)) {
        cfg.weightings.clear();
        for (const auto& w : json_list(j.at(key))) cfg.weightings.push_back(to_weighting(w));
      }
    }
    if (j.contains("granularity")) cfg.granularity = to_granularity(j.at("granularity").get<std::string>());
    take(j, "p", cfg.p);
    take(j, "damping", cfg.params.damping);
    take(j, "tolerance", cfg.params.tolerance);
    take(j, "max_iterations", cfg.params.max_iterations);
    take(j, "max_rank", cfg.max_rank);
    if (j.contains("out")) cfg.out = j.at("out").get<std::string>();
    take(j, "jobs", cfg.jobs);
    if (j.contains("synthetic")) {
      const json& s = j.at("synthetic");
      if (s.is_boolean()) {
        if (s.get<bool>()) cfg.synthetic = SynthParams{};
      } else {
        SynthParams params;
        apply_synth_json(s, params);
        cfg.synthetic = params;
      }
    }
  } catch (const json::exception& e) {
    invalid(fmt::format("config file '{}': {}", path.string(), e.what()));
  }
}

void apply_flags(const FlagValues& f, RunConfig& cfg) {
  if (f.edges) cfg.edges = *f.edges;
  if (f.schema) cfg.schema = to_schema(*f.schema);
  if (f.truth) cfg.truth = *f.truth;
  if (f.methods) {
    cfg.methods.clear();
    for (const auto& m : split_list(*f.methods)) cfg.methods.push_back(to_method(m));
  }
  if (f.weightings) {
    cfg.weightings.clear();
    for (const auto& w : split_list(*f.weightings)) cfg.weightings.push_back(to_weighting(w));
  }
  if (f.granularity) cfg.granularity = to_granularity(*f.granularity);
  if (f.p) cfg.p = *f.p;
  if (f.damping) cfg.params.damping = *f.damping;
  if (f.tolerance) cfg.params.tolerance = *f.tolerance;
  if (f.max_iterations) cfg.params.max_iterations = *f.max_iterations;
  if (f.max_rank) cfg.max_rank = *f.max_rank;
  if (f.out) cfg.out = *f.out;
  if (f.jobs) cfg.jobs = *f.jobs;

  if (f.synthetic || f.any_synth_param()) {
    SynthParams s = cfg.synthetic.value_or(SynthParams{});
    if (f.seed) s.seed = *f.seed;
    if (f.managers) s.managers = *f.managers;
    if (f.reports_per_manager) s.reports_per_manager = *f.reports_per_manager;
    if (f.slots) s.slots = *f.slots;
    if (f.hierarchy_rate) s.hierarchy_rate = *f.hierarchy_rate;
    if (f.noise_rate) s.noise_rate = *f.noise_rate;
    if (f.hierarchy_max_count) s.hierarchy_max_count = *f.hierarchy_max_count;
    if (f.noise_max_count) s.noise_max_count = *f.noise_max_count;
    if (f.synth_undirected) s.directed = false;
    cfg.synthetic = s;
  }
}

void require_file(const std::optional<fs::path>& path, const char* what) {
  if (!path) invalid(fmt::format("--{} is required when not using --synthetic", what));
  if (!fs::is_regular_file(*path)) {
    throw ValidationError("MissingFile", fmt::format("{} file '{}' does not exist", what, path->string()));
  }
}

enum class Needs { EdgesOnly, EdgesAndTruth };

void validate(const RunConfig& cfg, Needs needs) {
  if (cfg.synthetic && (cfg.edges || cfg.truth)) {
    invalid("choose one data source: --synthetic or --edges/--truth");
  }
  if (cfg.synthetic) {
    try {
      cfg.synthetic->validate();
    } catch (const Error& e) {
      invalid(e.what());
    }
  } else {
    require_file(cfg.edges, "edges");
    if (needs == Needs::EdgesAndTruth) require_file(cfg.truth, "truth");
  }
  if (cfg.methods.empty()) invalid("at least one method is required");
  if (cfg.weightings.empty()) invalid("at least one weighting is required");
  if (cfg.p < 1) invalid("p must be >= 1");
  if (cfg.max_rank < 1) invalid("max_rank must be >= 1");
  if (cfg.jobs < 0) invalid("jobs must be >= 0");
  try {
    cfg.params.validate();
  } catch (const Error& e) {
    invalid(e.what());
  }
}

json synth_json(const SynthParams& s) {
  return {{"seed", s.seed},
          {"managers", s.managers},
          {"reports_per_manager", s.reports_per_manager},
          {"slots", s.slots},
          {"hierarchy_rate", s.hierarchy_rate},
          {"noise_rate", s.noise_rate},
          {"hierarchy_max_count", s.hierarchy_max_count},
          {"noise_max_count", s.noise_max_count},
          {"directed", s.directed}};
}

json manifest(const std::string& command, const RunConfig& cfg, const std::vector<std::string>& outputs) {
  json methods = json::array();
  for (Method m : cfg.methods) methods.push_back(std::string(to_string(m)));
  json weightings = json::array();
  for (Weighting w : cfg.weightings) weightings.push_back(std::string(to_string(w)));
  json j = {{"command", command},
            {"edges", cfg.edges ? json(cfg.edges->string()) : json(nullptr)},
            {"schema", std::string(to_string(cfg.schema))},
            {"truth", cfg.truth ? json(cfg.truth->string()) : json(nullptr)},
            {"synthetic", cfg.synthetic ? synth_json(*cfg.synthetic) : json(nullptr)},
            {"methods", methods},
            {"weightings", weightings},
            {"granularity", cfg.granularity.to_string()},
            {"p", cfg.p},
            {"damping", cfg.params.damping},
            {"tolerance", cfg.params.tolerance},
            {"max_iterations", cfg.params.max_iterations},
            {"max_rank", cfg.max_rank},
            {"out", cfg.out.string()},
            {"jobs", cfg.jobs},
            {"outputs", outputs}};
  return j;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorCode::Io, fmt::format("cannot write '{}'", path.string()));
  file << content;
  if (!file.flush()) throw Error(ErrorCode::Io, fmt::format("cannot write '{}'", path.string()));
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw Error(ErrorCode::Io, fmt::format("cannot create output directory '{}'", dir.string()));
  }
}

struct Dataset {
  TemporalEdgeList edges;
  GroundTruth truth;
  bool has_truth = false;
};

Dataset load(const RunConfig& cfg, Needs needs) {
  if (cfg.synthetic) {
    SyntheticOrg org = generate_synthetic(*cfg.synthetic);
    return {std::move(org.edges), std::move(org.truth), true};
  }
  Dataset data{parse_edges(*cfg.edges, EdgeFileSchema::for_format(cfg.schema)), {}, false};
  if (needs == Needs::EdgesAndTruth) {
    data.truth = parse_ground_truth(*cfg.truth, data.edges.nodes());
    data.has_truth = true;
  }
  return data;
}

std::vector<MethodSpec> method_specs(const RunConfig& cfg) {
  std::vector<MethodSpec> specs;
  for (Method m : cfg.methods) {
    for (Weighting w : cfg.weightings) specs.push_back({m, w, cfg.granularity, cfg.p, cfg.params});
  }
  return specs;
}

std::string file_stem(const MethodSpec& spec) {
  return fmt::format("{}_{}", to_string(spec.method), to_string(spec.weighting));
}

std::string rankings_csv(const std::vector<InferenceResult>& results, const NodeTable& nodes,
                         std::size_t max_rank) {
  std::string out = "query,rank,candidate,score,tiebreak\n";
  for (const InferenceResult& r : results) {
    const std::size_t n = std::min(max_rank, r.ranking.size());
    for (std::size_t i = 0; i < n; ++i) {
      const InferenceCandidate& c = r.ranking[i];
      out += fmt::format("{},{},{},{:.9g},{:.9g}\n", nodes.label(r.query), i + 1, nodes.label(c.node), c.score,
                         c.tiebreak);
    }
  }
  return out;
}

json rankings_json(const MethodSpec& spec, const std::vector<InferenceResult>& results, const NodeTable& nodes,
                   std::size_t max_rank) {
  json queries = json::array();
  for (const InferenceResult& r : results) {
    json candidates = json::array();
    const std::size_t n = std::min(max_rank, r.ranking.size());
    for (std::size_t i = 0; i < n; ++i) {
      const InferenceCandidate& c = r.ranking[i];
      candidates.push_back({{"rank", i + 1}, {"node", nodes.label(c.node)}, {"score", c.score},
                            {"tiebreak", c.tiebreak}});
    }
    queries.push_back({{"query", nodes.label(r.query)},
                       {"isolated", r.isolated},
                       {"slots_participated", r.slots_participated},
                       {"slots_total", r.slots_total},
                       {"candidates", std::move(candidates)}});
  }
  return {{"method", std::string(to_string(spec.method))},
          {"weighting", std::string(to_string(spec.weighting))},
          {"granularity", spec.method == Method::Baseline ? "full-span" : spec.granularity.to_string()},
          {"p", spec.method == Method::TimeVoting ? spec.p : 0},
          {"queries", std::move(queries)}};
}

QuerySet default_queries(const Dataset& data) { return QuerySet(data.truth.subordinates(), data.edges.nodes()); }

int cmd_rank(const RunConfig& cfg, std::ostream& out) {
  const Dataset data = load(cfg, Needs::EdgesAndTruth);
  const QuerySet queries = default_queries(data);
  ensure_dir(cfg.out);
  std::vector<std::string> outputs;
  for (const MethodSpec& spec : method_specs(cfg)) {
    const auto results = infer_all(data.edges, queries, spec, cfg.jobs);
    const std::string stem = "rankings_" + file_stem(spec);
    write_file(cfg.out / (stem + ".csv"), rankings_csv(results, data.edges.nodes(), cfg.max_rank));
    write_file(cfg.out / (stem + ".json"),
               rankings_json(spec, results, data.edges.nodes(), cfg.max_rank).dump(2) + "\n");
    outputs.push_back(stem + ".csv");
    outputs.push_back(stem + ".json");
    out << fmt::format("{}: ranked {} queries\n", spec.tag(), results.size());
  }
  outputs.push_back("run_manifest.json");
  write_file(cfg.out / "run_manifest.json", manifest("rank", cfg, outputs).dump(2) + "\n");
  return kSuccess;
}

int cmd_evaluate(const RunConfig& cfg, std::ostream& out) {
  const Dataset data = load(cfg, Needs::EdgesAndTruth);
  const QuerySet queries = default_queries(data);
  ensure_dir(cfg.out);
  std::vector<std::string> outputs;
  std::vector<RecallCurve> curves;
  for (const MethodSpec& spec : method_specs(cfg)) {
    const auto results = infer_all(data.edges, queries, spec, cfg.jobs);
    curves.push_back(recall_curve(results, data.truth, cfg.max_rank, spec.tag()));
    const std::string name = "recall_" + file_stem(spec) + ".csv";
    write_file(cfg.out / name, curve_csv(curves.back()));
    outputs.push_back(name);
  }
  write_file(cfg.out / "recall.json", curves_json(curves));
  const ComparisonTable table = compare_methods(curves);
  write_file(cfg.out / "comparison.csv", comparison_csv(table));
  outputs.insert(outputs.end(), {"recall.json", "comparison.csv", "run_manifest.json"});
  write_file(cfg.out / "run_manifest.json", manifest("evaluate", cfg, outputs).dump(2) + "\n");
  for (std::size_t m = 0; m < table.methods.size(); ++m) {
    out << fmt::format("{}: recall@1={:.6f} AURC={:.6f}\n", table.methods[m], table.recall[m][0], table.aurc[m]);
  }
  return kSuccess;
}

int cmd_synth(const RunConfig& cfg, std::ostream& out) {
  const SynthParams params = cfg.synthetic.value_or(SynthParams{});
  const SyntheticOrg org = generate_synthetic(params);
  ensure_dir(cfg.out);
  write_file(cfg.out / "edges.csv", edges_csv(org.edges));
  write_file(cfg.out / "truth.csv", truth_csv(org.truth, org.edges.nodes()));
  RunConfig echoed = cfg;
  echoed.synthetic = params;
  write_file(cfg.out / "run_manifest.json",
             manifest("synth", echoed, {"edges.csv", "truth.csv", "run_manifest.json"}).dump(2) + "\n");
  out << fmt::format("wrote {} edges over {} nodes and {} ties to {}\n", org.edges.edges().size(),
                     org.edges.node_count(), org.truth.size(), cfg.out.string());
  return kSuccess;
}

int cmd_slice_info(const RunConfig& cfg, bool write_output, std::ostream& out) {
  const Dataset data = load(cfg, Needs::EdgesOnly);
  const auto slots = slice_timeline(data.edges, cfg.granularity);
  const auto snaps = build_snapshots(data.edges, slots, Weighting::Weighted);
  std::string table = "slot,begin,end,active_nodes,edges,interactions\n";
  for (std::size_t k = 0; k < slots.size(); ++k) {
    const Snapshot& s = snaps[k];
    const std::size_t factor = s.directed() ? 1 : 2;
    table += fmt::format("{},{},{},{},{},{:.0f}\n", slots[k].index, slots[k].begin.iso(),
                         slots[k].end.plus_days(-1).iso(), s.active_nodes().size(), s.entry_count() / factor,
                         s.total_weight() / static_cast<double>(factor));
  }
  out << table;
  if (write_output) {
    ensure_dir(cfg.out);
    write_file(cfg.out / "slices.csv", table);
    write_file(cfg.out / "run_manifest.json",
               manifest("slice-info", cfg, {"slices.csv", "run_manifest.json"}).dump(2) + "\n");
  }
  return kSuccess;
}

void report(std::ostream& err, std::string_view code, std::string_view message) {
  err << json{{"error", std::string(code)}, {"message", std::string(message)}}.dump() << "\n";
}

void add_common_options(CLI::App& app, FlagValues& f, bool with_methods) {
  app.add_option("--config", f.config, "JSON config file; flags override its values");
  app.add_option("--edges", f.edges, "edge CSV file");
  app.add_option("--schema", f.schema, "edge file schema: directed|undirected");
  app.add_option("--truth", f.truth, "ground-truth CSV (subordinate,superior)");
  app.add_flag("--synthetic", f.synthetic, "use the seeded synthetic organization as data source");
  app.add_option("--granularity", f.granularity, "week|month|year|fixed:N");
  app.add_option("--out", f.out, "output directory");
  if (with_methods) {
    app.add_option("--method,--methods", f.methods, "baseline|time-voting|modal-position (comma list)");
    app.add_option("--weighting,--weightings", f.weightings, "weighted|unweighted (comma list)");
    app.add_option("-p,--p", f.p, "top-p vote threshold");
    app.add_option("--damping", f.damping, "Rooted-PageRank damping factor");
    app.add_option("--tolerance", f.tolerance, "L1 convergence tolerance");
    app.add_option("--max-iterations", f.max_iterations, "power-iteration cap");
    app.add_option("--max-rank", f.max_rank, "deepest rank written / evaluated");
    app.add_option("--jobs", f.jobs, "maximum worker threads (0 = all)");
  }
}

void add_synth_options(CLI::App& app, FlagValues& f) {
  app.add_option("--seed", f.seed, "generator seed");
  app.add_option("--managers", f.managers, "number of managers");
  app.add_option("--reports-per-manager", f.reports_per_manager, "reports per manager");
  app.add_option("--slots", f.slots, "number of monthly slots");
  app.add_option("--hierarchy-rate", f.hierarchy_rate, "per-slot report/manager interaction probability");
  app.add_option("--noise-rate", f.noise_rate, "per-slot random peer interaction probability");
  app.add_option("--hierarchy-max-count", f.hierarchy_max_count, "max interactions per manager exchange");
  app.add_option("--noise-max-count", f.noise_max_count, "max interactions per noise exchange");
  app.add_flag("--synth-undirected", f.synth_undirected, "generate an undirected (co-author style) network");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hierarchical tie inference with time-sliced Rooted-PageRank", "hiertie"};
  app.require_subcommand(1);
  FlagValues flags;

  auto* rank = app.add_subcommand("rank", "rank candidate superiors for every ground-truth subordinate");
  auto* evaluate = app.add_subcommand("evaluate", "recall-at-rank curves and method comparison");
  auto* synth = app.add_subcommand("synth", "write a seeded synthetic organization as CSV");
  auto* slice_info = app.add_subcommand("slice-info", "print slot boundaries and per-slot sizes");
  for (auto* sub : {rank, evaluate}) {
    add_common_options(*sub, flags, true);
    add_synth_options(*sub, flags);
  }
  synth->add_option("--config", flags.config, "JSON config file; flags override its values");
  synth->add_option("--out", flags.out, "output directory");
  add_synth_options(*synth, flags);
  add_common_options(*slice_info, flags, false);
  add_synth_options(*slice_info, flags);

  RunConfig cfg;
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    report(err, "UsageError", e.what());
    return kValidationError;
  }

  try {
    if (flags.config) apply_config_file(*flags.config, cfg);
    apply_flags(flags, cfg);
    if (synth->parsed()) {
      if (!cfg.synthetic) cfg.synthetic = SynthParams{};
      try {
        cfg.synthetic->validate();
      } catch (const Error& e) {
        invalid(e.what());
      }
    } else {
      validate(cfg, slice_info->parsed() ? Needs::EdgesOnly : Needs::EdgesAndTruth);
    }
  } catch (const ValidationError& e) {
    report(err, e.code, e.what());
    return kValidationError;
  }

  try {
    if (rank->parsed()) return cmd_rank(cfg, out);
    if (evaluate->parsed()) return cmd_evaluate(cfg, out);
    if (synth->parsed()) return cmd_synth(cfg, out);
    return cmd_slice_info(cfg, flags.out.has_value(), out);
  } catch (const Error& e) {
    report(err, to_string(e.code()), e.what());
  } catch (const std::exception& e) {
    report(err, "Internal", e.what());
  }
  return kRuntimeError;
}

}  // namespace hiertie::cli
