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

#include "omi/harness.h"

#include <algorithm>
#include <atomic>
#include <bit>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <istream>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

#include "omi/graph.h"
#include "omi/random.h"

namespace omi {
namespace {

constexpr double kZ95 = 1.959963984540054;

std::string num(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc()) return "nan";
  return std::string(buf, end);
}

template <typename T>
std::string join(const std::vector<T>& xs, char sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(xs[i]);
  }
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
  std::uint64_t x = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ConfigError("bad integer for " + key + ": '" + v + "'");
  }
  return x;
}

double to_real(const std::string& key, const std::string& v) {
  double x = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(x)) {
    throw ConfigError("bad number for " + key + ": '" + v + "'");
  }
  return x;
}

double mean_of(const std::vector<double>& xs) {
  if (xs.empty()) return 0;
  return std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
}

// Sample standard deviation; 0 for fewer than two values.
double std_of(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0;
  const double mu = mean_of(xs);
  double ss = 0;
  for (double x : xs) ss += (x - mu) * (x - mu);
  return std::sqrt(ss / (xs.size() - 1));
}

double stderr_of(const std::vector<double>& xs) {
  return xs.empty() ? 0 : std_of(xs) / std::sqrt(static_cast<double>(xs.size()));
}

std::size_t matroid_count(Algorithm a, const Instance& inst) {
  return a == Algorithm::kMarkingBipartite || a == Algorithm::kMarkingGeneral ||
                 (a == Algorithm::kGreedy && inst.matroids.empty())
             ? 0
             : inst.matroids.size();
}

void check_compatible(Algorithm a, const Instance& inst) {
  const std::string name = to_string(a);
  switch (a) {
    case Algorithm::kGreedy:
      if (inst.matroids.empty() && !inst.graph) {
        throw ConfigError("greedy needs matroids or a graph");
      }
      return;
    case Algorithm::kMarkingBipartite:
      if (!inst.graph || !bipartition(*inst.graph)) {
        throw ConfigError(name + " needs a bipartite graph instance");
      }
      return;
    case Algorithm::kMarkingGeneral:
      if (!inst.graph) throw ConfigError(name + " needs a graph instance");
      return;
    case Algorithm::kMarkingK:
      if (inst.matroids.size() < 2) throw ConfigError(name + " needs k >= 2 matroids");
      return;
    case Algorithm::kMarkingOmi:
    case Algorithm::kCombined:
    case Algorithm::kOffline:
      if (inst.matroids.size() != 2) throw ConfigError(name + " needs two matroids");
      return;
  }
}

RunResult run_algorithm(Algorithm a, const Instance& inst,
                        const AlgoParams& params, std::uint64_t order_seed,
                        std::uint64_t tape_seed, std::uint64_t coin_seed) {
  ArrivalStream stream(inst.ground_size, order_seed);
  const RandomnessTape tape(params.p, tape_seed);
  const auto ptrs = inst.matroid_ptrs();
  switch (a) {
    case Algorithm::kGreedy:
      return ptrs.empty() ? greedy_matching(*inst.graph, stream) : greedy(ptrs, stream);
    case Algorithm::kMarkingBipartite:
      return marking_greedy_bipartite(*inst.graph, stream, params, tape);
    case Algorithm::kMarkingOmi:
      return marking_greedy_omi(*ptrs[0], *ptrs[1], stream, params, tape);
    case Algorithm::kMarkingK:
      return marking_greedy_k(ptrs, stream, params, tape);
    case Algorithm::kMarkingGeneral:
      return marking_greedy_general(*inst.graph, stream, params, tape);
    case Algorithm::kCombined:
      return combined_algorithm(*ptrs[0], *ptrs[1], stream, params, tape, coin_seed);
    case Algorithm::kOffline:
      return offline_half_plus_delta(*ptrs[0], *ptrs[1], stream.order(), params, tape);
  }
  throw std::logic_error("unknown algorithm");
}

bool revalidate(const Instance& inst, const std::vector<Element>& picked) {
  try {
    const ElementSet set(inst.ground_size, picked);
    if (set.size() != picked.size()) return false;
    for (const auto& m : inst.matroids) {
      if (!m->is_independent(set)) return false;
    }
    if (inst.graph && !is_matching(*inst.graph, set)) return false;
  } catch (const std::exception&) {
    return false;
  }
  return true;
}

TrialRecord run_trial(const ExperimentConfig& cfg, const Instance& inst,
                      std::size_t opt, std::size_t i) {
  TrialRecord rec;
  rec.trial = i;
  rec.order_seed = derive_seed(cfg.order_seed, i);
  rec.tape_seed = derive_seed(cfg.tape_seed, i);
  rec.coin_seed = derive_seed(cfg.coin_seed, i);
  const auto start = std::chrono::steady_clock::now();
  const RunResult r = run_algorithm(cfg.algorithm, inst, cfg.params,
                                    rec.order_seed, rec.tape_seed, rec.coin_seed);
  rec.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  rec.picked = r.picked.size();
  rec.opt = opt;
  rec.ratio = opt == 0 ? 1.0 : static_cast<double>(rec.picked) / opt;
  rec.calls = r.oracle_calls;
  rec.t_f = r.t_f.size();
  rec.s = r.s_size;
  rec.n_sizes = r.n_sizes;
  rec.marking_branch = r.marking_branch;
  // opt == 0 means the optimum was not computed (scaling runs).
  rec.valid = revalidate(inst, r.picked) && (opt == 0 || rec.picked <= opt);
  return rec;
}

std::uint64_t total(const std::vector<std::uint64_t>& calls) {
  return std::accumulate(calls.begin(), calls.end(), std::uint64_t{0});
}

Instance build_instance(const ExperimentConfig& cfg) {
  try {
    return make_instance(cfg.family, cfg.instance_params, cfg.instance_seed);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Configuration

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::kGreedy: return "greedy";
    case Algorithm::kMarkingBipartite: return "marking_bipartite";
    case Algorithm::kMarkingOmi: return "marking_omi";
    case Algorithm::kMarkingK: return "marking_k";
    case Algorithm::kMarkingGeneral: return "marking_general";
    case Algorithm::kCombined: return "combined";
    case Algorithm::kOffline: return "offline";
  }
  return "?";
}

Algorithm parse_algorithm(const std::string& name) {
  for (Algorithm a : {Algorithm::kGreedy, Algorithm::kMarkingBipartite,
                      Algorithm::kMarkingOmi, Algorithm::kMarkingK,
                      Algorithm::kMarkingGeneral, Algorithm::kCombined,
                      Algorithm::kOffline}) {
    if (to_string(a) == name) return a;
  }
  throw ConfigError("unknown algorithm '" + name + "'");
}

void apply_setting(ExperimentConfig& cfg, const std::string& key,
                   const std::string& value) {
  if (key.rfind("instance.", 0) == 0 && key.size() > 9) {
    cfg.instance_params[key.substr(9)] = value;
  } else if (key == "family") {
    cfg.family = value;
  } else if (key == "instance_seed") {
    cfg.instance_seed = to_u64(key, value);
  } else if (key == "algorithm") {
    cfg.algorithm = parse_algorithm(value);
  } else if (key == "f" || key == "p" || key == "r") {
    const double x = to_real(key, value);
    if (x < 0 || x > 1) throw ConfigError(key + " must lie in [0, 1]");
    (key == "f" ? cfg.params.f : key == "p" ? cfg.params.p : cfg.params.r) = x;
  } else if (key == "epsilon") {
    cfg.params.epsilon = to_real(key, value);
  } else if (key == "gamma") {
    cfg.params.gamma = to_real(key, value);
  } else if (key == "trials") {
    cfg.trials = to_u64(key, value);
    if (cfg.trials == 0) throw ConfigError("trials must be at least 1");
  } else if (key == "order_seed") {
    cfg.order_seed = to_u64(key, value);
  } else if (key == "tape_seed") {
    cfg.tape_seed = to_u64(key, value);
  } else if (key == "coin_seed") {
    cfg.coin_seed = to_u64(key, value);
  } else if (key == "out") {
    cfg.out = value;
  } else if (key == "threads") {
    cfg.threads = std::max<std::uint64_t>(1, to_u64(key, value));
  } else {
    throw ConfigError("unknown key '" + key + "'");
  }
}

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig cfg;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    }
    try {
      apply_setting(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  return parse_config(in);
}

void write_config(std::ostream& out, const ExperimentConfig& cfg) {
  out << "family = " << cfg.family << '\n';
  for (const auto& [k, v] : cfg.instance_params) {
    out << "instance." << k << " = " << v << '\n';
  }
  out << "instance_seed = " << cfg.instance_seed << '\n'
      << "algorithm = " << to_string(cfg.algorithm) << '\n'
      << "f = " << num(cfg.params.f) << '\n'
      << "p = " << num(cfg.params.p) << '\n'
      << "r = " << num(cfg.params.r) << '\n'
      << "epsilon = " << num(cfg.params.epsilon) << '\n'
      << "gamma = " << num(cfg.params.gamma) << '\n'
      << "trials = " << cfg.trials << '\n'
      << "order_seed = " << cfg.order_seed << '\n'
      << "tape_seed = " << cfg.tape_seed << '\n'
      << "coin_seed = " << cfg.coin_seed << '\n';
}

void parallel_for(std::size_t n, std::size_t threads,
                  const std::function<void(std::size_t)>& fn) {
  threads = std::max<std::size_t>(1, std::min(threads, n));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::size_t failed_at = n;
  std::exception_ptr failure;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (i < failed_at) {
          failed_at = i;
          failure = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

// ---------------------------------------------------------------------------
// Optimum

OptResult compute_opt(const Instance& inst) {
  const std::size_t m = inst.ground_size;
  if (inst.graph && bipartition(*inst.graph)) return max_bipartite_matching(*inst.graph);
  if (inst.matroids.size() == 2) {
    const auto* p1 = dynamic_cast<const PartitionMatroid*>(inst.matroids[0].get());
    const auto* p2 = dynamic_cast<const PartitionMatroid*>(inst.matroids[1].get());
    if (p1 && p2) return partition_pair_optimum(*p1, *p2);
    std::vector<Element> ground(m);
    std::iota(ground.begin(), ground.end(), 0);
    return exact_intersection(*inst.matroids[0], *inst.matroids[1], ground);
  }
  if (inst.known_opt) {
    OptResult r;
    r.opt_size = *inst.known_opt;
    return r;
  }
  if (inst.matroids.size() > 2 && m <= kBruteForceLimit) {
    OptResult best;
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
      const auto size = static_cast<std::size_t>(std::popcount(mask));
      if (size <= best.opt_size) continue;
      std::vector<Element> xs;
      for (Element e = 0; e < m; ++e) {
        if (mask >> e & 1u) xs.push_back(e);
      }
      bool ok = true;
      for (const auto& mt : inst.matroids) {
        ++best.oracle_calls;
        if (!mt->is_independent(xs)) {
          ok = false;
          break;
        }
      }
      if (ok) {
        best.opt_size = size;
        best.opt_set = ElementSet(m, xs);
      }
    }
    return best;
  }
  throw std::invalid_argument("no exact optimum available for family " + inst.family);
}

// ---------------------------------------------------------------------------
// Trials

Aggregate aggregate(const std::vector<TrialRecord>& records,
                    std::size_t ground_size) {
  Aggregate a;
  a.trials = records.size();
  if (records.empty()) return a;
  std::vector<double> ratios, calls;
  std::size_t marking = 0;
  for (const auto& r : records) {
    ratios.push_back(r.ratio);
    calls.push_back(static_cast<double>(total(r.calls)));
    marking += r.marking_branch;
    a.invalid += !r.valid;
  }
  a.mean_ratio = mean_of(ratios);
  a.std_ratio = std_of(ratios);
  const double half = kZ95 * stderr_of(ratios);
  a.ci_low = a.mean_ratio - half;
  a.ci_high = a.mean_ratio + half;
  a.min_ratio = *std::min_element(ratios.begin(), ratios.end());
  a.max_ratio = *std::max_element(ratios.begin(), ratios.end());
  a.mean_calls = mean_of(calls);
  a.calls_per_element = ground_size == 0 ? 0 : a.mean_calls / ground_size;
  a.marking_fraction = static_cast<double>(marking) / records.size();
  return a;
}

TrialSet run_trials(const ExperimentConfig& cfg) {
  const Instance inst = build_instance(cfg);
  check_compatible(cfg.algorithm, inst);
  return run_trials(cfg, inst, compute_opt(inst).opt_size);
}

TrialSet run_trials(const ExperimentConfig& cfg, const Instance& inst,
                    std::size_t opt) {
  check_compatible(cfg.algorithm, inst);
  if (cfg.trials == 0) throw ConfigError("trials must be at least 1");
  TrialSet set;
  set.config = cfg;
  set.ground_size = inst.ground_size;
  set.opt = opt;
  set.records.resize(cfg.trials);
  parallel_for(cfg.trials, cfg.threads, [&](std::size_t i) {
    set.records[i] = run_trial(cfg, inst, opt, i);
  });
  set.summary = aggregate(set.records, inst.ground_size);
  return set;
}

void write_trials_csv(std::ostream& out, const TrialSet& set, bool with_time) {
  const auto& cfg = set.config;
  out << "# omi-trials v1\n";
  std::ostringstream conf;
  write_config(conf, cfg);
  std::istringstream lines(conf.str());
  for (std::string line; std::getline(lines, line);) out << "# " << line << '\n';
  out << "# ground_size = " << set.ground_size << '\n'
      << "# opt = " << set.opt << '\n';
  out << "trial,order_seed,tape_seed,coin_seed,picked,opt,ratio,calls,t_f,s,"
         "n_sizes,marking_branch,valid";
  if (with_time) out << ",wall_seconds";
  out << '\n';
  for (const auto& r : set.records) {
    out << r.trial << ',' << r.order_seed << ',' << r.tape_seed << ','
        << r.coin_seed << ',' << r.picked << ',' << r.opt << ',' << num(r.ratio)
        << ',' << join(r.calls, ';') << ',' << r.t_f << ',' << r.s << ','
        << join(r.n_sizes, ';') << ',' << r.marking_branch << ',' << r.valid;
    if (with_time) out << ',' << num(r.wall_seconds);
    out << '\n';
  }
  const Aggregate& a = set.summary;
  out << "# aggregate\n"
      << "# trials=" << a.trials << '\n'
      << "# mean_ratio=" << num(a.mean_ratio) << '\n'
      << "# std_ratio=" << num(a.std_ratio) << '\n'
      << "# ci95_low=" << num(a.ci_low) << '\n'
      << "# ci95_high=" << num(a.ci_high) << '\n'
      << "# min_ratio=" << num(a.min_ratio) << '\n'
      << "# max_ratio=" << num(a.max_ratio) << '\n'
      << "# mean_calls=" << num(a.mean_calls) << '\n'
      << "# calls_per_element=" << num(a.calls_per_element) << '\n'
      << "# marking_fraction=" << num(a.marking_fraction) << '\n'
      << "# invalid=" << a.invalid << '\n';
}

// ---------------------------------------------------------------------------
// Greedy prefix curve

GfCurve estimate_gf_curve(const ExperimentConfig& cfg,
                          const std::vector<double>& grid) {
  if (grid.empty()) throw ConfigError("empty f grid");
  for (std::size_t j = 0; j < grid.size(); ++j) {
    if (!(grid[j] > 0 && grid[j] <= 1) || (j && grid[j] <= grid[j - 1])) {
      throw ConfigError("f grid must be ascending inside (0, 1]");
    }
  }
  const Instance inst = build_instance(cfg);
  if (inst.matroids.empty() && !inst.graph) throw ConfigError("instance has no structure");
  const OptResult opt = compute_opt(inst);
  const std::size_t m = inst.ground_size;
  const std::size_t points = grid.size();

  GfCurve curve;
  curve.ground_size = m;
  curve.opt = opt.opt_size;
  curve.trials = cfg.trials;
  curve.has_phi = inst.matroids.size() == 2 && opt.opt_set.size() == opt.opt_size;
  const auto opt_elems = opt.opt_set.sorted();
  std::vector<std::size_t> prefix(points);
  for (std::size_t j = 0; j < points; ++j) {
    AlgoParams a;
    a.f = grid[j];
    prefix[j] = a.boundary(m);
  }

  // sizes[i * points + j] etc.; folded in trial order afterwards.
  std::vector<std::size_t> sizes(cfg.trials * points), inter(sizes.size()),
      uni(sizes.size());
  std::vector<char> bad(cfg.trials, 0);
  parallel_for(cfg.trials, cfg.threads, [&](std::size_t i) {
    const auto order = random_permutation(m, derive_seed(cfg.order_seed, i));
    std::vector<std::unique_ptr<IndependenceState>> states;
    for (const auto& mt : inst.matroids) states.push_back(mt->new_state());
    std::vector<char> in_t(m, 0), used(inst.graph ? inst.graph->vertex_count : 0, 0);
    std::size_t t = 0, pos = 0;
    for (std::size_t j = 0; j < points; ++j) {
      for (; pos < prefix[j]; ++pos) {
        const Element e = order[pos];
        bool ok;
        if (!states.empty()) {
          ok = std::all_of(states.begin(), states.end(),
                           [&](auto& s) { return s->can_add(e); });
          if (ok) for (auto& s : states) s->add(e);
        } else {
          const Edge& ed = inst.graph->edges[e];
          ok = ed.u != ed.v && !used[ed.u] && !used[ed.v];
          if (ok) used[ed.u] = used[ed.v] = 1;
        }
        if (ok) {
          in_t[e] = 1;
          ++t;
        }
      }
      sizes[i * points + j] = t;
      if (j && t < sizes[i * points + j - 1]) bad[i] = 1;
      if (!curve.has_phi) continue;
      std::size_t both = 0, either = 0;
      for (Element o : opt_elems) {
        const bool in1 = in_t[o] || !states[0]->can_add(o);
        const bool in2 = in_t[o] || !states[1]->can_add(o);
        both += in1 && in2;
        either += in1 || in2;
      }
      inter[i * points + j] = both;
      uni[i * points + j] = either;
    }
  });

  for (std::size_t j = 0; j < points; ++j) {
    std::vector<double> g, pi, pu;
    for (std::size_t i = 0; i < cfg.trials; ++i) {
      g.push_back(opt.opt_size == 0 ? 1.0
                                    : static_cast<double>(sizes[i * points + j]) / opt.opt_size);
      pi.push_back(static_cast<double>(inter[i * points + j]));
      pu.push_back(static_cast<double>(uni[i * points + j]));
    }
    GfPoint pt;
    pt.f = grid[j];
    pt.prefix = prefix[j];
    pt.g = mean_of(g);
    pt.g_stderr = stderr_of(g);
    if (curve.has_phi) {
      pt.phi_inter = mean_of(pi);
      pt.phi_inter_stderr = stderr_of(pi);
      pt.phi_union = mean_of(pu);
      pt.phi_union_stderr = stderr_of(pu);
    }
    curve.points.push_back(pt);
  }
  curve.monotone_violations = std::count(bad.begin(), bad.end(), 1);
  return curve;
}

HastinessReport check_hastiness(const GfCurve& curve) {
  if (curve.points.empty() || curve.points.back().f != 1.0) {
    throw std::invalid_argument("hastiness check needs the point f = 1");
  }
  HastinessReport rep;
  const GfPoint& one = curve.points.back();
  rep.epsilon = std::max(0.0, one.g + 3 * one.g_stderr - 0.5);
  const double eps = rep.epsilon;
  const double opt = static_cast<double>(curve.opt);
  rep.all_hold = true;
  for (const GfPoint& pt : curve.points) {
    // The bound is stated for prefixes up to one half.
    if (pt.f > 0.5) continue;
    HastinessCheck c;
    c.f = pt.f;
    c.bound = 0.5 - (1 / pt.f - 2) * eps;
    c.g_holds = pt.g + 3 * pt.g_stderr >= c.bound;
    if (curve.has_phi) {
      c.inter_bound = 2 * eps * opt;
      c.inter_holds = pt.phi_inter - 3 * pt.phi_inter_stderr <= c.inter_bound;
      c.union_bound = (1 - 2 * eps / pt.f + 2 * eps) * opt;
      c.union_holds = pt.phi_union + 3 * pt.phi_union_stderr >= c.union_bound;
    } else {
      c.inter_holds = c.union_holds = true;
    }
    rep.all_hold = rep.all_hold && c.g_holds && c.inter_holds && c.union_holds;
    rep.checks.push_back(c);
  }
  return rep;
}

void write_gf_csv(std::ostream& out, const GfCurve& curve) {
  out << "# omi-gf-curve v1\n"
      << "# ground_size = " << curve.ground_size << '\n'
      << "# opt = " << curve.opt << '\n'
      << "# trials = " << curve.trials << '\n'
      << "f,prefix,g,g_stderr";
  if (curve.has_phi) out << ",phi_inter,phi_inter_stderr,phi_union,phi_union_stderr";
  out << '\n';
  for (const auto& p : curve.points) {
    out << num(p.f) << ',' << p.prefix << ',' << num(p.g) << ',' << num(p.g_stderr);
    if (curve.has_phi) {
      out << ',' << num(p.phi_inter) << ',' << num(p.phi_inter_stderr) << ','
          << num(p.phi_union) << ',' << num(p.phi_union_stderr);
    }
    out << '\n';
  }
  out << "# monotone_violations=" << curve.monotone_violations << '\n';
  if (!curve.points.empty() && curve.points.back().f == 1.0) {
    const auto rep = check_hastiness(curve);
    out << "# hastiness epsilon=" << num(rep.epsilon) << '\n';
    for (const auto& c : rep.checks) {
      out << "# hastiness f=" << num(c.f) << " bound=" << num(c.bound)
          << " holds=" << c.g_holds;
      if (curve.has_phi) {
        out << " inter_bound=" << num(c.inter_bound) << " inter_holds=" << c.inter_holds
            << " union_bound=" << num(c.union_bound) << " union_holds=" << c.union_holds;
      }
      out << '\n';
    }
  }
}

// ---------------------------------------------------------------------------
// Lemma batches

namespace {

std::vector<std::string> corpus_files(const std::string& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw std::runtime_error("no corpus directory " + dir);
  std::vector<std::string> files;
  const fs::path manifest = fs::path(dir) / "manifest.txt";
  if (fs::exists(manifest)) {
    std::ifstream in(manifest);
    if (!in) throw std::runtime_error("cannot read " + manifest.string());
    for (std::string line; std::getline(in, line);) {
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.resize(hash);
      line = trim(line);
      if (!line.empty()) files.push_back((fs::path(dir) / line).string());
    }
    return files;
  }
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".lemma") {
      files.push_back(entry.path().string());
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace

LemmaBatch verify_lemmas(const std::string& corpus_dir,
                         const std::vector<Rational>& ps,
                         std::size_t mc_trials, std::uint64_t seed,
                         std::size_t threads) {
  const auto files = corpus_files(corpus_dir);
  std::vector<std::vector<LemmaRow>> per_file(files.size());
  parallel_for(files.size(), threads, [&](std::size_t fi) {
    LemmaInstance inst;
    try {
      inst = read_lemma_instance_file(files[fi]);
    } catch (const std::exception& e) {
      throw std::runtime_error(files[fi] + ": " + e.what());
    }
    const std::string name = std::filesystem::path(files[fi]).filename().string();
    for (std::size_t o = 0; o < inst.orders.size(); ++o) {
      auto add = [&](const LemmaReport& r) {
        per_file[fi].push_back(LemmaRow{name, inst.family, o, r});
      };
      if (inst.t.size() <= kExactTapeLimit) {
        for (const auto& r : verify_sampling_lemma_exact(
                 inst.matroids, inst.side, inst.t, inst.orders[o], inst.i_tilde, ps)) {
          add(r);
        }
      }
      if (mc_trials == 0 && inst.t.size() <= kExactTapeLimit) continue;
      const std::size_t trials = mc_trials == 0 ? 20000 : mc_trials;
      for (std::size_t pi = 0; pi < ps.size(); ++pi) {
        const std::uint64_t s = derive_seed(derive_seed(derive_seed(seed, fi), o), pi);
        add(verify_sampling_lemma_mc(inst.matroids, inst.side, inst.t, inst.orders[o],
                                     inst.i_tilde, ps[pi], trials, s));
      }
    }
  });
  LemmaBatch batch;
  batch.instances = files.size();
  for (auto& rows : per_file) {
    for (auto& r : rows) {
      batch.violations += !r.report.holds;
      batch.rows.push_back(std::move(r));
    }
  }
  return batch;
}

void write_lemma_csv(std::ostream& out, const LemmaBatch& batch) {
  out << "# omi-lemmas v1\n"
      << "file,family,order,method,p,k,i_size,lhs,lhs_stderr,lhs_exact,rhs,holds,tapes\n";
  for (const auto& row : batch.rows) {
    const LemmaReport& r = row.report;
    out << row.file << ',' << row.family << ',' << row.order << ','
        << to_string(r.method) << ',' << to_string(r.p) << ',' << r.k << ','
        << r.i_size << ',' << num(r.lhs) << ',' << num(r.lhs_stderr) << ','
        << (r.method == LemmaMethod::kExact ? to_string(r.lhs_exact) : "") << ','
        << to_string(r.rhs) << ',' << r.holds << ',' << r.tapes << '\n';
  }
  out << "# instances=" << batch.instances << '\n'
      << "# checks=" << batch.rows.size() << '\n'
      << "# violations=" << batch.violations << '\n';
}

void write_lemma_corpus(const std::string& dir, std::size_t count,
                        std::uint64_t base_seed) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::ofstream manifest(fs::path(dir) / "manifest.txt");
  manifest << "# sampling-lemma corpus: " << count << " instances, seeds "
           << base_seed << ".." << base_seed + count - (count > 0) << '\n';
  for (std::size_t i = 0; i < count; ++i) {
    std::string name = std::to_string(i);
    name = "lemma_" + std::string(name.size() < 3 ? 3 - name.size() : 0, '0') + name + ".lemma";
    std::ofstream out(fs::path(dir) / name);
    write_lemma_instance(out, random_lemma_instance(base_seed + i));
    if (!out) throw std::runtime_error("cannot write " + name);
    manifest << name << '\n';
  }
  if (!manifest) throw std::runtime_error("cannot write manifest");
}

// ---------------------------------------------------------------------------
// Oracle-call scaling

Instance scaled_instance(const std::string& family, std::size_t m,
                         std::uint64_t seed) {
  if (m < 4) throw std::invalid_argument("scaled instances need m >= 4");
  if (family == "random_partition_pair") {
    return gen_random_partition_pair(m, m / 4, seed);
  }
  if (family == "random_graphic_pair") {
    return gen_random_graphic_pair(m, m / 2, seed);
  }
  if (family == "regular_bipartite") return gen_regular_bipartite(m / 4, 4, seed);
  if (family == "balanced_thick_z") {
    const auto n = static_cast<std::size_t>(std::sqrt(static_cast<double>(m + 1))) - 1;
    return gen_thick_z(std::max<std::size_t>(1, n), std::max<std::size_t>(1, n));
  }
  throw std::invalid_argument("no scaled version of family " + family);
}

ScalingReport bench_linear_calls(Algorithm algorithm, const std::string& family,
                                 const std::vector<std::size_t>& sizes,
                                 std::size_t trials, std::uint64_t seed,
                                 std::size_t threads, const AlgoParams& params) {
  if (sizes.empty() || trials == 0) throw ConfigError("need sizes and trials");
  if (!std::is_sorted(sizes.begin(), sizes.end())) throw ConfigError("sizes must ascend");
  ScalingReport rep;
  rep.algorithm = algorithm;
  rep.family = family;
  for (std::size_t si = 0; si < sizes.size(); ++si) {
    const Instance inst = scaled_instance(family, sizes[si], derive_seed(seed, si));
    check_compatible(algorithm, inst);
    if (matroid_count(algorithm, inst) == 0) {
      throw ConfigError(to_string(algorithm) + " makes no oracle calls");
    }
    ExperimentConfig cfg;
    cfg.algorithm = algorithm;
    cfg.params = params;
    cfg.order_seed = derive_seed(seed, 1000 + si);
    cfg.tape_seed = derive_seed(seed, 2000 + si);
    cfg.coin_seed = derive_seed(seed, 3000 + si);
    std::vector<std::uint64_t> calls(trials);
    parallel_for(trials, threads, [&](std::size_t i) {
      calls[i] = total(run_trial(cfg, inst, 0, i).calls);
    });
    ScalingRow row;
    row.m = inst.ground_size;
    row.mean_calls = std::accumulate(calls.begin(), calls.end(), 0.0) / trials;
    row.calls_per_element = row.mean_calls / row.m;
    row.max_calls = *std::max_element(calls.begin(), calls.end());
    rep.rows.push_back(row);
  }
  double mm = 0, mc = 0, mean_c = 0;
  for (const auto& r : rep.rows) {
    mm += static_cast<double>(r.m) * r.m;
    mc += r.m * r.mean_calls;
    mean_c += r.mean_calls / rep.rows.size();
  }
  rep.c = mc / mm;
  double ss_res = 0, ss_tot = 0;
  for (const auto& r : rep.rows) {
    ss_res += std::pow(r.mean_calls - rep.c * r.m, 2);
    ss_tot += std::pow(r.mean_calls - mean_c, 2);
  }
  rep.r_squared = ss_tot == 0 ? 1.0 : 1 - ss_res / ss_tot;
  rep.growth = rep.rows.back().calls_per_element / rep.rows.front().calls_per_element;
  rep.superlinear = rep.growth > kSuperlinearGrowth;
  return rep;
}

void write_scaling_csv(std::ostream& out, const ScalingReport& rep) {
  out << "# omi-bench v1\n"
      << "# algorithm = " << to_string(rep.algorithm) << '\n'
      << "# family = " << rep.family << '\n'
      << "m,mean_calls,calls_per_element,max_calls\n";
  for (const auto& r : rep.rows) {
    out << r.m << ',' << num(r.mean_calls) << ',' << num(r.calls_per_element) << ','
        << r.max_calls << '\n';
  }
  out << "# c=" << num(rep.c) << '\n'
      << "# r_squared=" << num(rep.r_squared) << '\n'
      << "# growth=" << num(rep.growth) << '\n'
      << "# superlinear=" << rep.superlinear << '\n';
}

}  // namespace omi
