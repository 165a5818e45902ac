#pragma once

#include <cstdint>
#include <string>

#include "splitpack/exact.hpp"

namespace splitpack::cli {

struct ExperimentConfig {
  std::string suite;  // nf-ratio, a75-ratio, reduction-check, normalize-check
  std::size_t trials = 200;
  std::uint64_t seed = 1;
  int k = 2;
  std::size_t max_n = 6;
  std::string dist = "mixed";
  std::int64_t m = 2;
  SearchOptions search;
};

struct ExperimentResult {
  std::string csv;
  std::size_t ok = 0;
  std::size_t skipped = 0;
  std::size_t violations = 0;
};

/// Rows come out in trial order; the same config always gives the same bytes.
ExperimentResult run_experiment(const ExperimentConfig& config);

}  // namespace splitpack::cli
