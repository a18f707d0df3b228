// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Experiment runner: Monte-Carlo trials over (order, tape, coin) seeds,
// competitive-ratio statistics, greedy prefix curves, lemma batches over a
// corpus and oracle-call scaling. Every result is a deterministic function
// of the configuration; trial i always uses the seeds derived from index i,
// whatever the number of worker threads.

#ifndef OMI_HARNESS_H_
#define OMI_HARNESS_H_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "omi/exact_opt.h"
#include "omi/instances.h"
#include "omi/online.h"
#include "omi/rational.h"
#include "omi/sampling.h"

namespace omi {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Algorithm {
  kGreedy,
  kMarkingBipartite,
  kMarkingOmi,
  kMarkingK,
  kMarkingGeneral,
  kCombined,
  kOffline,
};

// "greedy", "marking_bipartite", "marking_omi", "marking_k",
// "marking_general", "combined", "offline".
std::string to_string(Algorithm a);
Algorithm parse_algorithm(const std::string& name);

struct ExperimentConfig {
  std::string family = "balanced_thick_z";
  std::map<std::string, std::string> instance_params;
  std::uint64_t instance_seed = 0;
  Algorithm algorithm = Algorithm::kGreedy;
  AlgoParams params;
  std::size_t trials = 1;
  std::uint64_t order_seed = 1;
  std::uint64_t tape_seed = 2;
  std::uint64_t coin_seed = 3;
  std::string out;
  std::size_t threads = 1;
};

// Config files are `key = value` lines; '#' starts a comment. Keys:
//   family, instance.<name> (generator parameter), instance_seed,
//   algorithm, f, p, r, epsilon, gamma, trials, order_seed, tape_seed,
//   coin_seed, out, threads.
// ConfigError (with the line number) on unknown keys or bad values.
void apply_setting(ExperimentConfig& cfg, const std::string& key,
                   const std::string& value);
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig parse_config_file(const std::string& path);
void write_config(std::ostream& out, const ExperimentConfig& cfg);

// Runs fn(0), ..., fn(n - 1) on up to `threads` workers. Rethrows the
// exception of the lowest failing index.
void parallel_for(std::size_t n, std::size_t threads,
                  const std::function<void(std::size_t)>& fn);

// Offline optimum: Hopcroft-Karp for bipartite graphs, max-flow for
// partition pairs, the exchange-graph algorithm for other pairs, the
// construction's value for general graphs and k >= 3 families with a known
// optimum, brute force for small k-matroid instances. std::invalid_argument
// otherwise.
OptResult compute_opt(const Instance& inst);

struct TrialRecord {
  std::size_t trial = 0;
  std::uint64_t order_seed = 0;
  std::uint64_t tape_seed = 0;
  std::uint64_t coin_seed = 0;
  std::size_t picked = 0;
  std::size_t opt = 0;
  double ratio = 0;
  std::vector<std::uint64_t> calls;
  std::size_t t_f = 0;
  std::size_t s = 0;
  std::vector<std::size_t> n_sizes;
  bool marking_branch = false;
  // Picked set re-checked against the instance's own oracles (and the graph
  // when there is one).
  bool valid = false;
  // Not written to CSV unless asked for; it would break reproducibility.
  double wall_seconds = 0;
};

struct Aggregate {
  std::size_t trials = 0;
  double mean_ratio = 0;
  double std_ratio = 0;
  double ci_low = 0;
  double ci_high = 0;
  double min_ratio = 0;
  double max_ratio = 0;
  double mean_calls = 0;
  double calls_per_element = 0;
  double marking_fraction = 0;
  std::size_t invalid = 0;
};

// Normal-approximation 95% interval, sample standard deviation.
Aggregate aggregate(const std::vector<TrialRecord>& records,
                    std::size_t ground_size);

struct TrialSet {
  ExperimentConfig config;
  std::size_t ground_size = 0;
  std::size_t opt = 0;
  std::vector<TrialRecord> records;
  Aggregate summary;
};

// Builds the instance, computes OPT once and runs the trials. Seeds of trial
// i: derive_seed(order_seed, i), derive_seed(tape_seed, i),
// derive_seed(coin_seed, i).
TrialSet run_trials(const ExperimentConfig& cfg);
TrialSet run_trials(const ExperimentConfig& cfg, const Instance& inst,
                    std::size_t opt);

// Versioned CSV: a header comment with the configuration, one row per trial,
// then `# aggregate` and one `# key=value` line per statistic.
void write_trials_csv(std::ostream& out, const TrialSet& set,
                      bool with_time = false);

struct GfPoint {
  double f = 0;
  std::size_t prefix = 0;
  double g = 0;
  double g_stderr = 0;
  // Phi_i = span_i(T_f) & OPT; only for two-matroid instances.
  double phi_inter = 0;
  double phi_inter_stderr = 0;
  double phi_union = 0;
  double phi_union_stderr = 0;
};

struct GfCurve {
  std::size_t ground_size = 0;
  std::size_t opt = 0;
  std::size_t trials = 0;
  bool has_phi = false;
  std::vector<GfPoint> points;
  // Trials in which |T_f| decreased along the grid.
  std::size_t monotone_violations = 0;
};

// One greedy pass per trial (orders from cfg.order_seed), recording |T_f|
// after floor(f m) arrivals for every f in `grid` (ascending, in (0, 1]).
GfCurve estimate_gf_curve(const ExperimentConfig& cfg,
                          const std::vector<double>& grid);

struct HastinessCheck {
  double f = 0;
  double bound = 0;
  bool g_holds = false;
  double inter_bound = 0;
  bool inter_holds = false;
  double union_bound = 0;
  bool union_holds = false;
};

struct HastinessReport {
  // G(1) - 1/2 plus three standard errors, floored at 0.
  double epsilon = 0;
  std::vector<HastinessCheck> checks;
  bool all_hold = false;
};

// Needs a grid point at f = 1. Checks G(f) >= 1/2 - (1/f - 2) eps - 3 se,
// E|Phi_1 & Phi_2| <= 2 eps |OPT| + 3 se and
// E|Phi_1 | Phi_2| >= (1 - 2 eps / f + 2 eps) |OPT| - 3 se.
HastinessReport check_hastiness(const GfCurve& curve);

void write_gf_csv(std::ostream& out, const GfCurve& curve);

struct LemmaRow {
  std::string file;
  std::string family;
  std::size_t order = 0;
  LemmaReport report;
};

struct LemmaBatch {
  std::size_t instances = 0;
  std::vector<LemmaRow> rows;
  std::size_t violations = 0;
};

// Corpus layout: `manifest.txt` lists instance files (relative paths, one
// per line, '#' comments). Without a manifest every *.lemma file in the
// directory is used. Exact enumeration when |T| <= kExactTapeLimit; when
// mc_trials > 0 a Monte-Carlo check runs as well for every (order, p).
// std::runtime_error on load failures.
LemmaBatch verify_lemmas(const std::string& corpus_dir,
                         const std::vector<Rational>& ps,
                         std::size_t mc_trials, std::uint64_t seed,
                         std::size_t threads);
void write_lemma_csv(std::ostream& out, const LemmaBatch& batch);

// Writes `count` instances from random_lemma_instance(base_seed + i) and a
// manifest into `dir` (created if missing).
void write_lemma_corpus(const std::string& dir, std::size_t count,
                        std::uint64_t base_seed);

struct ScalingRow {
  std::size_t m = 0;
  double mean_calls = 0;
  double calls_per_element = 0;
  std::uint64_t max_calls = 0;
};

struct ScalingReport {
  Algorithm algorithm = Algorithm::kGreedy;
  std::string family;
  std::vector<ScalingRow> rows;
  // Least-squares fit calls = C m through the origin.
  double c = 0;
  double r_squared = 0;
  // Per-element calls at the largest m over those at the smallest.
  double growth = 0;
  bool superlinear = false;
};

// Instance of about m elements for the scaling families:
// random_partition_pair (m/4 classes), random_graphic_pair (m/2 vertices),
// regular_bipartite (d = 4), balanced_thick_z (n = floor(sqrt(m + 1)) - 1).
Instance scaled_instance(const std::string& family, std::size_t m,
                         std::uint64_t seed);

inline constexpr double kSuperlinearGrowth = 1.25;

ScalingReport bench_linear_calls(Algorithm algorithm, const std::string& family,
                                 const std::vector<std::size_t>& sizes,
                                 std::size_t trials, std::uint64_t seed,
                                 std::size_t threads,
                                 const AlgoParams& params = {});
void write_scaling_csv(std::ostream& out, const ScalingReport& report);

}  // namespace omi

#endif  // OMI_HARNESS_H_
