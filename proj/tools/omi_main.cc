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

// omi: experiment runner.
//
//   omi run --config exp.cfg [--set key=value]... [--out file] [--threads n]
//   omi gf-curve --config exp.cfg [--grid 0.05,0.1,1]
//   omi verify-lemmas --corpus dir [--p 0.1,0.5] [--mc-trials n]
//   omi bench --family random_partition_pair --sizes 1000,10000,100000
//   omi gen --family thick_z --param n1=3 --param n2=3 --out file
//   omi gen --family lemma_corpus --count 200 --out dir
//
// Exit status: 0 on success, 1 when a run produced an invalid set or a lemma
// check fails, 2 on bad input.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "omi/harness.h"
#include "omi/io.h"

namespace {

using omi::ConfigError;

std::ostream& open_out(const std::string& path, std::unique_ptr<std::ofstream>& file) {
  if (path.empty()) return std::cout;
  file = std::make_unique<std::ofstream>(path);
  if (!*file) throw ConfigError("cannot open " + path);
  return *file;
}

omi::ExperimentConfig load(const std::string& path,
                           const std::vector<std::string>& sets) {
  omi::ExperimentConfig cfg = path.empty() ? omi::ExperimentConfig{}
                                           : omi::parse_config_file(path);
  for (const auto& kv : sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError("--set expects key=value: " + kv);
    omi::apply_setting(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  return cfg;
}

void write_instance(std::ostream& out, const omi::Instance& inst,
                    std::uint64_t seed) {
  if (inst.graph) {
    omi::write_graph(out, *inst.graph);
    return;
  }
  omi::MatroidDocument doc;
  doc.matroids = inst.matroids;
  doc.attrs["family"] = inst.family;
  doc.attrs["seed"] = std::to_string(seed);
  omi::write_matroid_document(out, doc);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online matroid intersection experiments"};
  app.require_subcommand(1);

  std::string config, out;
  std::vector<std::string> sets;
  std::size_t threads = 0;
  bool with_time = false;

  auto* run = app.add_subcommand("run", "Monte-Carlo trials of one algorithm");
  run->add_option("--config", config, "key = value experiment file");
  run->add_option("--set", sets, "override one key (key=value)");
  run->add_option("--out", out, "CSV path (default stdout)");
  run->add_option("--threads", threads, "worker threads");
  run->add_flag("--time", with_time, "add a wall-time column");

  std::vector<double> grid{0.05, 0.07, 0.1, 0.25, 0.5, 1.0};
  auto* gf = app.add_subcommand("gf-curve", "greedy prefix sizes G(f)");
  gf->add_option("--config", config, "key = value experiment file");
  gf->add_option("--set", sets, "override one key (key=value)");
  gf->add_option("--grid", grid, "ascending f values in (0, 1]")->delimiter(',');
  gf->add_option("--out", out, "CSV path (default stdout)");
  gf->add_option("--threads", threads, "worker threads");

  std::string corpus;
  std::vector<std::string> ps{"1/10", "33/100", "9/25", "1/2", "9/10"};
  std::size_t mc_trials = 0;
  std::uint64_t seed = 0;
  auto* lemmas = app.add_subcommand("verify-lemmas", "sampling-lemma checks over a corpus");
  lemmas->add_option("--corpus", corpus, "corpus directory")->required();
  lemmas->add_option("--p", ps, "probabilities (decimal or a/b)")->delimiter(',');
  lemmas->add_option("--mc-trials", mc_trials, "also run Monte-Carlo with this many tapes");
  lemmas->add_option("--seed", seed, "Monte-Carlo seed");
  lemmas->add_option("--out", out, "CSV path (default stdout)");
  lemmas->add_option("--threads", threads, "worker threads");

  std::string family, algorithm = "marking_omi";
  std::vector<std::size_t> sizes{1000, 10000, 100000};
  std::size_t trials = 5;
  auto* bench = app.add_subcommand("bench", "oracle calls against instance size");
  bench->add_option("--family", family, "scaling family")->required();
  bench->add_option("--sizes", sizes, "ascending element counts")->delimiter(',');
  bench->add_option("--algorithm", algorithm, "algorithm id");
  bench->add_option("--trials", trials, "runs per size");
  bench->add_option("--seed", seed, "base seed");
  bench->add_option("--out", out, "CSV path (default stdout)");
  bench->add_option("--threads", threads, "worker threads");

  std::vector<std::string> params;
  std::size_t count = 200;
  auto* gen = app.add_subcommand("gen", "write an instance file (or a lemma corpus)");
  gen->add_option("--family", family, "family name or lemma_corpus")->required();
  gen->add_option("--param", params, "generator parameter (key=value)");
  gen->add_option("--seed", seed, "generator seed");
  gen->add_option("--count", count, "lemma_corpus size");
  gen->add_option("--out", out, "file (directory for lemma_corpus)")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    std::unique_ptr<std::ofstream> file;
    if (*run) {
      auto cfg = load(config, sets);
      if (threads) cfg.threads = threads;
      if (!out.empty()) cfg.out = out;
      const auto set = omi::run_trials(cfg);
      omi::write_trials_csv(open_out(cfg.out, file), set, with_time);
      return set.summary.invalid == 0 ? 0 : 1;
    }
    if (*gf) {
      auto cfg = load(config, sets);
      if (threads) cfg.threads = threads;
      if (!out.empty()) cfg.out = out;
      omi::write_gf_csv(open_out(cfg.out, file), omi::estimate_gf_curve(cfg, grid));
      return 0;
    }
    if (*lemmas) {
      std::vector<omi::Rational> qs;
      for (const auto& p : ps) qs.push_back(omi::parse_rational(p));
      const auto batch = omi::verify_lemmas(corpus, qs, mc_trials, seed,
                                            threads ? threads : 1);
      omi::write_lemma_csv(open_out(out, file), batch);
      return batch.violations == 0 ? 0 : 1;
    }
    if (*bench) {
      const auto rep = omi::bench_linear_calls(omi::parse_algorithm(algorithm), family,
                                               sizes, trials, seed, threads ? threads : 1);
      omi::write_scaling_csv(open_out(out, file), rep);
      return 0;
    }
    if (*gen) {
      if (family == "lemma_corpus") {
        omi::write_lemma_corpus(out, count, seed);
        return 0;
      }
      std::map<std::string, std::string> kv;
      for (const auto& p : params) {
        const auto eq = p.find('=');
        if (eq == std::string::npos) throw ConfigError("--param expects key=value: " + p);
        kv[p.substr(0, eq)] = p.substr(eq + 1);
      }
      write_instance(open_out(out, file), omi::make_instance(family, kv, seed), seed);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "omi: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
