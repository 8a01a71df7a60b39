#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hiertie/graph.hpp"
#include "hiertie/ingest.hpp"
#include "hiertie/pipeline.hpp"
#include "hiertie/rpr.hpp"

namespace hiertie::cli {

enum ExitCode : int { kSuccess = 0, kValidationError = 1, kRuntimeError = 2 };

/// Every effective parameter of one CLI run.
struct RunConfig {
  std::optional<std::filesystem::path> edges;
  EdgeFormat schema = EdgeFormat::DirectedCounts;
  std::optional<std::filesystem::path> truth;
  std::optional<SynthParams> synthetic;

  std::vector<Method> methods{Method::TimeVoting};
  std::vector<Weighting> weightings{Weighting::Weighted};
  Granularity granularity = Granularity::month();
  std::size_t p = MethodSpec::kDefaultThreshold;
  RprParams params;
  std::size_t max_rank = 10;
  std::filesystem::path out = "out";
  int jobs = 0;
};

/// Entry point shared by the executable and the tests. Never throws.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hiertie::cli
