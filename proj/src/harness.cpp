#include "ehc/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "ehc/io.hpp"

namespace ehc {

ExperimentConfig ExperimentConfig::parse(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::replace(line.begin(), line.end(), '=', ' ');
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key) || key[0] == '#') continue;
    if (key == "sizes") {
      int n;
      while (ls >> n) cfg.sizes.push_back(n);
    } else if (key == "samples") {
      ls >> cfg.samples;
    } else if (key == "family") {
      std::string path;
      while (ls >> path) cfg.family_files.push_back(path);
    } else if (key == "seed") {
      ls >> cfg.seed;
    } else if (key == "reject_budget") {
      ls >> cfg.reject_budget;
    } else if (key == "tr_exact_max") {
      ls >> cfg.tr_exact_max;
    } else if (key == "output") {
      ls >> cfg.output_path;
    } else {
      throw std::invalid_argument("config: unknown key '" + key + "'");
    }
  }
  if (cfg.sizes.empty()) throw std::invalid_argument("config: sizes missing");
  for (int n : cfg.sizes)
    if (n < 1) throw std::invalid_argument("config: sizes must be >= 1");
  if (cfg.samples < 1) throw std::invalid_argument("config: samples must be >= 1");
  if (cfg.reject_budget < 1 || cfg.tr_exact_max < 1)
    throw std::invalid_argument("config: budgets must be positive");
  return cfg;
}

Tournament sample_tournament(int n, std::mt19937_64& rng) {
  if (n < 1) throw std::invalid_argument("sample: n must be >= 1");
  Tournament t(n);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      if (coin(rng))
        t.set_arc(u, v);
      else
        t.set_arc(v, u);
    }
  return t;
}

std::optional<Tournament> sample_free(int n, const std::vector<Tournament>& family,
                                      std::mt19937_64& rng, long long max_rejects) {
  for (long long tries = 0; tries <= max_rejects; ++tries) {
    Tournament t = sample_tournament(n, rng);
    if (is_family_free(t, family)) return t;
  }
  return std::nullopt;
}

double estimate_epsilon(const std::vector<ExperimentRecord>& records) {
  if (records.empty()) throw std::invalid_argument("estimate: no records");
  bool all_transitive = true;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& r : records) {
    if (r.n < 2) throw std::invalid_argument("estimate: records need n >= 2");
    all_transitive &= (r.tr == r.n);
    best = std::min(best, std::log(static_cast<double>(r.tr)) / std::log(static_cast<double>(r.n)));
  }
  return all_transitive ? 1.0 : best;
}

std::string record_to_json(const ExperimentRecord& r) {
  nlohmann::ordered_json j;
  j["n"] = r.n;
  j["sample"] = r.sample;
  j["is_free"] = r.is_free;
  j["rejected"] = r.rejected;
  j["tr"] = r.tr;
  nlohmann::ordered_json w = nlohmann::ordered_json::array();
  for (int v : r.tr_witness) w.push_back(v + 1);
  j["tr_witness"] = w;
  return j.dump();
}

std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& config,
                                             ExperimentSummary* summary) {
  std::vector<Tournament> family;
  for (const std::string& path : config.family_files)
    family.push_back(tournament_from_text(read_file(path)));

  CoreLimits limits;
  limits.tr_exact_max = config.tr_exact_max;

  std::vector<ExperimentRecord> records;
  for (int n : config.sizes)
    for (int s = 0; s < config.samples; ++s) {
      // Per-sample seed so the stream is identical however samples are
      // scheduled.
      std::mt19937_64 rng(config.seed ^ (static_cast<std::uint64_t>(n) * 0x9e3779b97f4a7c15ULL) ^
                          static_cast<std::uint64_t>(s));
      ExperimentRecord rec;
      rec.n = n;
      rec.sample = s;
      auto t = sample_free(n, family, rng, config.reject_budget);
      if (!t) {
        rec.is_free = false;
        rec.rejected = true;
        records.push_back(rec);
        continue;
      }
      VertexMask witness =
          n <= limits.tr_exact_max ? tr_exact(*t, limits).witness : ramsey_transitive(*t);
      rec.tr = popcount(witness);
      rec.tr_witness = mask_to_vector(witness);
      records.push_back(rec);
    }

  ExperimentSummary sum;
  sum.total = static_cast<int>(records.size());
  std::vector<ExperimentRecord> usable;
  for (const auto& r : records) {
    if (r.rejected)
      ++sum.rejections;
    else if (r.n >= 2)
      usable.push_back(r);
  }
  sum.epsilon_estimate = usable.empty() ? 0.0 : estimate_epsilon(usable);
  if (summary) *summary = sum;

  std::ostringstream out;
  for (const auto& r : records) out << record_to_json(r) << "\n";
  nlohmann::ordered_json js;
  js["summary"] = true;
  js["total"] = sum.total;
  js["rejections"] = sum.rejections;
  js["epsilon_estimate"] = sum.epsilon_estimate;
  out << js.dump() << "\n";

  std::string path = config.output_path;
  if (const char* env = std::getenv("EHC_EXPERIMENT_OUT")) path = env;
  if (path.empty())
    std::cout << out.str();
  else
    write_file(path, out.str());
  return records;
}

}  // namespace ehc
