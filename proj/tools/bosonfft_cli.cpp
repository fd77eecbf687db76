// Copyright 2026 The bosonfft Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: matrix generation, probability queries, full
// distributions, spectra, MCMC sampling, verification and cost tables.
//
// Exit codes: 0 success, 2 I/O, 3 validation, 4 capacity, 5 initialization.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bosonfft/bosonfft.hpp"
#include "bosonfft/io.hpp"

namespace {

using namespace bosonfft;
using nlohmann::json;

enum ExitCode : int { kOk = 0, kIo = 2, kValidation = 3, kCapacity = 4, kInitialization = 5 };

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::io:
      return kIo;
    case ErrorKind::capacity:
      return kCapacity;
    case ErrorKind::initialization:
      return kInitialization;
    default:
      return kValidation;
  }
}

/// Everything one invocation needs, parsed and validated before any
/// computation starts.
struct RunManifest {
  std::string command;
  std::string unitary_path;
  std::optional<std::size_t> haar_modes;
  std::string input_text;
  std::string output_text;
  int method = 2;
  std::string fs_mode = "reduced";
  std::uint64_t seed = 1;
  double tol = 1e-8;
  double unitary_tol = kDefaultUnitaryTolerance;
  std::string format = "json";
  std::string out;

  Frequency max_stored = kDefaultMaxStoredSamples;
  Frequency max_streamed = kDefaultMaxStreamedSamples;
  unsigned threads = detail::default_threads();

  // resolved
  UnitaryMatrix unitary;
  FockState input;
  std::optional<FockState> output;

  EngineOptions engine() const {
    EngineOptions o;
    o.max_stored_samples = max_stored;
    o.max_streamed_samples = max_streamed;
    o.threads = threads;
    return o;
  }
  SampleRate rate() const { return fs_mode == "nyquist" ? SampleRate::nyquist : SampleRate::reduced; }
};

void add_common(CLI::App* cmd, RunManifest& m) {
  cmd->add_option("--seed", m.seed, "Seed for every random draw")->capture_default_str();
  cmd->add_option("--tol", m.tol, "Comparison tolerance")->capture_default_str();
  cmd->add_option("--format", m.format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  cmd->add_option("--out", m.out, "Output path (stdout when omitted)");
  cmd->add_option("--threads", m.threads, "Worker threads for sampling g")->capture_default_str();
  cmd->add_option("--max-stored-samples", m.max_stored, "Largest stored spectrum")->capture_default_str();
  cmd->add_option("--max-streamed-samples", m.max_streamed, "Largest streamed projection")->capture_default_str();
}

void add_system(CLI::App* cmd, RunManifest& m, bool needs_output) {
  auto* file = cmd->add_option("--unitary", m.unitary_path, "Unitary JSON file");
  auto* haar = cmd->add_option("--haar", m.haar_modes, "Use a Haar-random N x N unitary seeded by --seed");
  file->excludes(haar);
  cmd->add_option("--unitary-tol", m.unitary_tol, "Unitarity tolerance for ingested matrices")->capture_default_str();
  cmd->add_option("--input", m.input_text, "Input Fock state, e.g. 1,1,0")->required();
  auto* out = cmd->add_option("--output", m.output_text, "Output Fock state");
  if (needs_output) out->required();
}

void resolve_system(RunManifest& m) {
  if (!m.unitary_path.empty()) {
    if (!std::filesystem::exists(m.unitary_path)) throw IoError("unitary file '" + m.unitary_path + "' does not exist");
    m.unitary = io::read_unitary(m.unitary_path);
  } else if (m.haar_modes) {
    m.unitary = haar_random_unitary(*m.haar_modes, m.seed);
  } else {
    throw ValidationError("one of --unitary or --haar is required");
  }
  if (!validate_unitary(m.unitary, m.unitary_tol))
    throw ValidationError("matrix is not unitary within " + io::format_double(m.unitary_tol) + " (deviation " +
                          io::format_double(unitarity_deviation(m.unitary)) + ")");
  m.input = io::parse_fock_state(m.input_text);
  if (m.input.modes() != m.unitary.size())
    throw DimensionError("input state has " + std::to_string(m.input.modes()) + " modes, unitary has " +
                         std::to_string(m.unitary.size()));
  if (m.input.photons() < 1) throw ValidationError("input state must hold at least one photon");
  if (!m.output_text.empty()) {
    m.output = io::parse_fock_state(m.output_text);
    if (m.output->modes() != m.unitary.size()) throw DimensionError("output state length does not match unitary");
  }
  if (m.method == 2 && !m.output && (m.command == "prob" || m.command == "oracle"))
    throw ValidationError("method 2 needs --output");
}

void emit(const RunManifest& m, const std::string& text) {
  if (m.out.empty()) {
    std::cout << text;
    return;
  }
  io::write_text(m.out, text);
}

std::string fixed12(double p) {
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(12) << p;
  return ss.str();
}

// ---- subcommands ---------------------------------------------------------

int cmd_haar(const RunManifest& m, std::size_t n) {
  const UnitaryMatrix u = haar_random_unitary(n, m.seed);
  const std::string text = io::unitary_to_json(u).dump(2) + "\n";
  emit(m, text);
  if (!m.out.empty()) std::cerr << "wrote " << n << "x" << n << " unitary to " << m.out << "\n";
  return kOk;
}

int cmd_prob(RunManifest& m) {
  resolve_system(m);
  const FockState& out = *m.output;
  if (out.photons() != m.input.photons())
    throw MismatchError("input carries " + std::to_string(m.input.photons()) + " photons but output carries " +
                        std::to_string(out.photons()));
  double p;
  Frequency samples;
  if (m.method == 1) {
    const FrequencyPlan plan = q_method1(m.input.photons(), static_cast<int>(m.unitary.size()), m.rate());
    samples = plan.samples;
    p = probability_from_plan(m.unitary, m.input, out, plan, m.engine());
  } else {
    const FrequencyPlan plan = q_method2(out, m.rate());
    samples = plan.samples;
    p = probability_from_plan(m.unitary, m.input, out, plan, m.engine());
  }
  std::cout << fixed12(p) << "\n";
  if (!m.out.empty()) {
    const json j{{"input", io::state_to_json(m.input)}, {"output", io::state_to_json(out)},
                 {"method", m.method},                    {"fs_mode", m.fs_mode},
                 {"samples", samples},                    {"probability", p}};
    io::write_text(m.out, j.dump(2) + "\n");
  }
  return kOk;
}

int cmd_oracle(RunManifest& m) {
  resolve_system(m);
  const double p = probability_via_permanent(m.unitary, m.input, *m.output);
  std::cout << fixed12(p) << "\n";
  if (!m.out.empty()) {
    const json j{{"input", io::state_to_json(m.input)}, {"output", io::state_to_json(*m.output)}, {"probability", p}};
    io::write_text(m.out, j.dump(2) + "\n");
  }
  return kOk;
}

int cmd_dist(RunManifest& m) {
  if (m.format != "json") throw ValidationError("dist writes JSON; use the spectrum command for CSV");
  resolve_system(m);
  const OutcomeDistribution d = full_distribution(m.unitary, m.input, m.rate(), m.engine());
  emit(m, io::distribution_file_json(d, m.input).dump(2) + "\n");
  std::cerr << d.size() << " states, total mass " << io::format_double(d.total_mass()) << "\n";
  return kOk;
}

int cmd_spectrum(RunManifest& m) {
  resolve_system(m);
  const FrequencyPlan plan = m.method == 1 || !m.output
                                 ? q_method1(m.input.photons(), static_cast<int>(m.unitary.size()), m.rate())
                                 : q_method2(*m.output, m.rate());
  emit(m, io::spectrum_to_csv(full_spectrum(m.unitary, m.input, plan, m.engine())));
  return kOk;
}

struct SampleArgs {
  std::uint64_t steps = 200000;
  std::optional<std::uint64_t> burn_in;
  std::vector<std::uint64_t> checkpoints;
  std::uint64_t max_exact_states = 20000;
};

int cmd_sample(RunManifest& m, const SampleArgs& a) {
  resolve_system(m);
  ChainConfig cfg = ChainConfig::with_default_burn_in(a.steps, m.seed);
  if (a.burn_in) cfg.burn_in = *a.burn_in;
  if (m.output) cfg.initial_state = m.output;
  cfg.checkpoints = a.checkpoints;
  if (cfg.checkpoints.empty()) {
    for (std::uint64_t c : {1000ull, 10000ull, 100000ull})
      if (c < a.steps) cfg.checkpoints.push_back(c);
    cfg.checkpoints.push_back(a.steps);
  }

  const int n = static_cast<int>(m.unitary.size());
  const int photons = m.input.photons();
  std::optional<OutcomeDistribution> exact;
  if (outcome_count(n, photons) <= a.max_exact_states) {
    try {
      exact = full_distribution(m.unitary, m.input, SampleRate::reduced, m.engine());
    } catch (const CapacityError&) {
      exact.reset();
    }
  }
  if (!exact) cfg.checkpoints.clear();

  const ChainStats stats = run_chain(m.unitary, m.input, cfg, exact ? &*exact : nullptr, m.engine());
  json report = io::chain_report_json(cfg, stats);
  report["exact_available"] = exact.has_value();
  emit(m, report.dump(2) + "\n");
  if (!stats.checkpoints.empty())
    std::cerr << "final cosine distance " << io::format_double(stats.checkpoints.back().cosine_distance) << "\n";
  return kOk;
}

// ---- verify --------------------------------------------------------------

struct VerifyArgs {
  int max_n = 5;
  int max_m = 5;
  int trials = 2;
};

struct SuiteResult {
  std::string name;
  bool pass = true;
  std::string counterexample;
};

void fail_once(SuiteResult& s, const std::string& why) {
  if (s.pass) s.counterexample = why;
  s.pass = false;
}

std::string describe(int n, int m, const FockState& in, const FockState& out, double got, double want) {
  std::ostringstream ss;
  ss << std::setprecision(17) << "N=" << n << " M=" << m << " input=" << in << " output=" << out << " got=" << got
     << " expected=" << want << " diff=" << std::abs(got - want);
  return ss.str();
}

int cmd_verify(RunManifest& m, const VerifyArgs& a) {
  if (a.max_n < 1 || a.max_m < 1 || a.trials < 1) throw ValidationError("verify bounds must be positive");
  if (a.max_n > 6 || a.max_m > 6) throw ValidationError("verify is exhaustive; keep max_n and max_m <= 6");
  std::mt19937_64 rng(m.seed);
  auto random_state = [&](int n, int photons) {
    std::vector<int> occ(static_cast<std::size_t>(n), 0);
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int i = 0; i < photons; ++i) ++occ[static_cast<std::size_t>(pick(rng))];
    return FockState(std::move(occ));
  };

  SuiteResult oracle{"oracle-equivalence", true, {}}, theorems{"theorem-exhaustion", true, {}},
      norm{"normalization", true, {}}, reduced{"reduced-rate-equivalence", true, {}};
  const EngineOptions opts = m.engine();

  for (int n = 1; n <= a.max_n; ++n)
    for (int photons = 1; photons <= a.max_m; ++photons) {
      const auto states = enumerate_output_states(n, photons);
      for (const auto& l : states) {
        const FrequencyPlan plan = q_method2(l);
        if (!check_collision_free(states, plan))
          fail_once(theorems, "target " + l.str() + " collides (N=" + std::to_string(n) + ")");
        if (!check_collision_free(states, plan, plan.f_target + 1))
          fail_once(theorems, "target " + l.str() + " collides modulo f+1 (N=" + std::to_string(n) + ")");
      }
      if (!check_collision_free(states, q_method1(photons, n)))
        fail_once(theorems, "method-1 collision at N=" + std::to_string(n) + " M=" + std::to_string(photons));

      for (int t = 0; t < a.trials; ++t) {
        const UnitaryMatrix u = haar_random_unitary(static_cast<std::size_t>(n), rng());
        const FockState in = random_state(n, photons);
        const OutcomeDistribution d = full_distribution(u, in, SampleRate::reduced, opts);
        if (std::abs(d.total_mass() - 1.0) > 1e-6)
          fail_once(norm, describe(n, photons, in, in, d.total_mass(), 1.0));
        for (const auto& [l, p] : d.entries) {
          const double ref = probability_via_permanent(u, in, l);
          if (!(std::abs(p - ref) <= m.tol)) fail_once(oracle, describe(n, photons, in, l, p, ref));
          if (n <= kExpansionModeLimit && photons <= kExpansionPhotonLimit) {
            const double ex = probability_via_expansion(u, in, l);
            if (!(std::abs(ex - ref) <= m.tol)) fail_once(oracle, "expansion " + describe(n, photons, in, l, ex, ref));
          }
        }
        const FockState out = random_state(n, photons);
        const double r = single_state_probability(u, in, out, SampleRate::reduced, opts);
        const double q = single_state_probability(u, in, out, SampleRate::nyquist, opts);
        if (!(std::abs(r - q) <= m.tol)) fail_once(reduced, describe(n, photons, in, out, r, q));
      }
    }

  bool all = true;
  for (const auto* s : {&oracle, &theorems, &norm, &reduced}) {
    std::cout << (s->pass ? "PASS " : "FAIL ") << s->name;
    if (!s->pass) std::cout << ": " << s->counterexample;
    std::cout << "\n";
    all = all && s->pass;
  }
  return all ? kOk : 1;
}

// ---- bench ---------------------------------------------------------------

struct BenchArgs {
  int n_min = 2;
  int n_max = 7;
  int matrices = 1;
  std::string speedup_out;
};

int cmd_bench(RunManifest& m, const BenchArgs& a) {
  if (a.n_min < 1 || a.n_max < a.n_min) throw ValidationError("bench needs 1 <= n-min <= n-max");
  const auto ratio = ratio_curve(a.n_min, a.n_max, m.seed, a.matrices, m.engine());
  std::vector<int> ns;
  for (int n = a.n_min; n <= a.n_max; ++n) ns.push_back(n);
  const auto speed = speedup_table(ns);

  const std::string ratio_csv = io::ratio_curve_to_csv(ratio);
  const std::string speed_csv = io::speedup_to_csv(speed);
  if (m.out.empty()) {
    std::cout << ratio_csv << "\n" << speed_csv;
  } else {
    io::write_text(m.out, ratio_csv);
    std::filesystem::path sp = a.speedup_out;
    if (sp.empty()) {
      sp = m.out;
      sp.replace_filename(sp.stem().string() + "_speedup.csv");
    }
    io::write_text(sp, speed_csv);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fourier-harmonic boson sampling probability engine"};
  app.require_subcommand(1);

  RunManifest m;
  std::size_t haar_n = 0;
  SampleArgs sample_args;
  VerifyArgs verify_args;
  BenchArgs bench_args;

  auto* haar = app.add_subcommand("haar", "Write a Haar-random unitary as JSON");
  add_common(haar, m);
  haar->add_option("--n", haar_n, "Matrix dimension")->required()->check(CLI::PositiveNumber);

  auto* prob = app.add_subcommand("prob", "Probability of one output state via the Fourier engine");
  add_common(prob, m);
  add_system(prob, m, true);
  prob->add_option("--method", m.method, "Frequency plan: 1 or 2")->check(CLI::IsMember({1, 2}))->capture_default_str();
  prob->add_option("--fs-mode", m.fs_mode, "Sample rate")->check(CLI::IsMember({"nyquist", "reduced"}))->capture_default_str();

  auto* oracle = app.add_subcommand("oracle", "Probability of one output state via the permanent");
  add_common(oracle, m);
  add_system(oracle, m, true);

  auto* dist = app.add_subcommand("dist", "Exact distribution over every output state");
  add_common(dist, m);
  add_system(dist, m, false);
  dist->add_option("--fs-mode", m.fs_mode, "Sample rate")->check(CLI::IsMember({"nyquist", "reduced"}))->capture_default_str();

  auto* spectrum = app.add_subcommand("spectrum", "Spectrum of g as CSV (bin,re,im,abs)");
  add_common(spectrum, m);
  add_system(spectrum, m, false);
  spectrum->add_option("--method", m.method, "Frequency plan: 1 or 2 (2 needs --output)")->check(CLI::IsMember({1, 2}));
  spectrum->add_option("--fs-mode", m.fs_mode, "Sample rate")->check(CLI::IsMember({"nyquist", "reduced"}));

  auto* sample = app.add_subcommand("sample", "Metropolis-Hastings approximation of the distribution");
  add_common(sample, m);
  add_system(sample, m, false);
  sample->add_option("--steps", sample_args.steps, "Chain length")->check(CLI::PositiveNumber)->capture_default_str();
  sample->add_option("--burn-in", sample_args.burn_in, "Discarded steps (default steps/10)");
  sample->add_option("--checkpoints", sample_args.checkpoints, "Steps at which to record cosine distance");
  sample->add_option("--max-exact-states", sample_args.max_exact_states,
                     "Compare against the exact distribution only up to this many states")
      ->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Run oracle, theorem, normalization and reduced-rate suites");
  add_common(verify, m);
  verify->add_option("--max-n", verify_args.max_n)->capture_default_str();
  verify->add_option("--max-m", verify_args.max_m)->capture_default_str();
  verify->add_option("--trials", verify_args.trials, "Haar matrices per (N, M)")->capture_default_str();

  auto* bench = app.add_subcommand("bench", "Weighted-average cost ratio and speedup tables as CSV");
  add_common(bench, m);
  bench->add_option("--n-min", bench_args.n_min)->capture_default_str();
  bench->add_option("--n-max", bench_args.n_max)->capture_default_str();
  bench->add_option("--matrices", bench_args.matrices, "Haar matrices averaged per N")->capture_default_str();
  bench->add_option("--speedup-out", bench_args.speedup_out, "Speedup CSV path (default <out>_speedup.csv)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kValidation;
  }

  try {
    if (*haar) {
      m.command = "haar";
      return cmd_haar(m, haar_n);
    }
    if (*prob) {
      m.command = "prob";
      return cmd_prob(m);
    }
    if (*oracle) {
      m.command = "oracle";
      return cmd_oracle(m);
    }
    if (*dist) {
      m.command = "dist";
      return cmd_dist(m);
    }
    if (*spectrum) {
      m.command = "spectrum";
      return cmd_spectrum(m);
    }
    if (*sample) {
      m.command = "sample";
      return cmd_sample(m, sample_args);
    }
    if (*verify) {
      m.command = "verify";
      return cmd_verify(m, verify_args);
    }
    if (*bench) {
      m.command = "bench";
      return cmd_bench(m, bench_args);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  }
  return kOk;
}
