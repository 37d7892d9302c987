#ifndef EHC_HARNESS_HPP
#define EHC_HARNESS_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ehc/core.hpp"
#include "ehc/tournament.hpp"

namespace ehc {

// Flat key-value config: sizes, samples, optional family files, seed,
// budgets, output path. Unknown keys are rejected.
struct ExperimentConfig {
  std::vector<int> sizes;
  int samples = 1;
  std::vector<std::string> family_files;
  std::uint64_t seed = 0;
  long long reject_budget = 1'000'000;
  int tr_exact_max = 24;
  std::string output_path;  // empty = stdout

  static ExperimentConfig parse(const std::string& text);
};

struct ExperimentRecord {
  int n = 0;
  int sample = 0;
  bool is_free = true;
  bool rejected = false;  // reject budget exhausted before a free sample
  int tr = 0;
  std::vector<int> tr_witness;
};

struct ExperimentSummary {
  int total = 0;
  int rejections = 0;
  double epsilon_estimate = 0.0;
};

// One fair coin per unordered pair, drawn from the seeded generator.
Tournament sample_tournament(int n, std::mt19937_64& rng);

// Rejection sampling until the draw avoids every family member.
std::optional<Tournament> sample_free(int n, const std::vector<Tournament>& family,
                                      std::mt19937_64& rng, long long max_rejects);

// min over records of log(tr)/log(n): the largest exponent consistent with
// every observation. Exactly 1.0 when every record is fully transitive.
double estimate_epsilon(const std::vector<ExperimentRecord>& records);

// Runs the configured sweep, writing one JSON record per line followed by a
// summary object, to config.output_path (EHC_EXPERIMENT_OUT overrides) or
// stdout. Returns the records.
std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& config,
                                             ExperimentSummary* summary = nullptr);

std::string record_to_json(const ExperimentRecord& r);

}  // namespace ehc

#endif
