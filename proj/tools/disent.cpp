// Copyright 2026 The disent authors
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

// Command-line front end. Every run is deterministic: identical
// (command, flags, seed) triples produce byte-identical output, so all
// randomness flows from one resolved seed and nothing timestamps itself.
//
// Exit codes: 0 success/pass, 1 semantic failure (not separable, mismatches
// found, reproduction check failed), 2 usage error, 3 invariant violation,
// 4 protocol premise violation.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "disent/channels.hpp"
#include "disent/disentangle.hpp"
#include "disent/errors.hpp"
#include "disent/io.hpp"
#include "disent/qstate.hpp"
#include "disent/random.hpp"
#include "disent/teleport.hpp"

namespace {

using namespace disent;

// Flag-level problems detected after CLI11 parsing; mapped to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Format { pretty, json, csv };

Format parse_format(const std::string& name) {
  if (name == "pretty") return Format::pretty;
  if (name == "json") return Format::json;
  if (name == "csv") return Format::csv;
  throw UsageError("unknown --format '" + name + "' (pretty|json|csv)");
}

std::vector<double> parse_doubles(const std::string& text, std::size_t count,
                                  const std::string& flag) {
  std::vector<double> values;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t next = text.find(',', pos);
    const std::string token =
        text.substr(pos, next == std::string::npos ? next : next - pos);
    if (token.empty()) throw UsageError(flag + ": empty component");
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (end == token.c_str() || *end != '\0') {
      throw UsageError(flag + ": '" + token + "' is not a number");
    }
    values.push_back(v);
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  if (values.size() != count) {
    throw UsageError(flag + ": expected " + std::to_string(count) +
                     " comma-separated numbers, got " +
                     std::to_string(values.size()));
  }
  return values;
}

uint64_t resolve_seed(const std::optional<uint64_t>& flag_seed) {
  if (flag_seed.has_value()) return *flag_seed;
  const char* env = std::getenv("DISENT_SEED");
  if (env == nullptr) return 42;
  if (*env == '\0' || *env == '-') {
    throw UsageError(std::string("invalid DISENT_SEED '") + env + "'");
  }
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0') {
    throw UsageError(std::string("invalid DISENT_SEED '") + env + "'");
  }
  return static_cast<uint64_t>(v);
}

void emit(const std::string& text) { std::fputs(text.c_str(), stdout); }

std::string fmt17(double v) { return io::format_double17(v); }

std::string bloch_pretty(const BlochVector& v) {
  return "(" + fmt17(v.x) + ", " + fmt17(v.y) + ", " + fmt17(v.z) + ")";
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

// ---------------------------------------------------------------------------
// teleport

struct TeleportArgs {
  std::string weights;
  std::string bloch;
  std::string state_path;
  int shots = 0;
};

int run_teleport(const TeleportArgs& args, Format format, uint64_t seed) {
  if (args.bloch.empty() == args.state_path.empty()) {
    throw UsageError("teleport needs exactly one of --bloch or --state");
  }
  const std::vector<double> w = parse_doubles(args.weights, 4, "--weights");
  const double sum = w[0] + w[1] + w[2] + w[3];
  if (std::abs(sum - 1.0) > 1e-9) {
    throw InvariantViolation("--weights must sum to 1 within 1e-9, got " +
                             fmt17(sum));
  }
  const BellMixture channel(w[0] / sum, w[1] / sum, w[2] / sum, w[3] / sum);
  const PauliDiagonalMap lambdas = channel_to_map(channel);

  DensityMatrix input = DensityMatrix::maximally_mixed(1);
  if (!args.bloch.empty()) {
    const std::vector<double> b = parse_doubles(args.bloch, 3, "--bloch");
    input = bloch_to_density({b[0], b[1], b[2]});
  } else {
    input = io::state_from_json(io::read_text_file(args.state_path));
    if (input.n_qubits() > 2) {
      throw UsageError("teleport expects a 1- or 2-qubit state file");
    }
  }

  DensityMatrix output = input;
  std::vector<ProtocolTrace> traces;
  if (input.n_qubits() == 1) {
    TeleportResult r = bell_protocol_output(input, channel);
    output = r.output;
    traces = std::move(r.traces);
  } else {
    output = teleport_party_of_bipartite(input, 2, channel);
  }

  std::vector<long> counts(traces.size(), 0);
  if (args.shots > 0 && !traces.empty()) {
    Rng rng(seed);
    for (int s = 0; s < args.shots; ++s) {
      double u = rng.uniform();
      std::size_t idx = 0;
      while (idx + 1 < traces.size() && u >= traces[idx].probability) {
        u -= traces[idx].probability;
        ++idx;
      }
      ++counts[idx];
    }
  }

  const std::array<double, 4> wc = channel.weights();
  if (format == Format::json) {
    std::string out = "{\"channel\":{\"w\":[";
    for (int i = 0; i < 4; ++i) {
      if (i > 0) out += ',';
      out += fmt17(wc[i]);
    }
    out += "],\"lambda\":[" + fmt17(lambdas.lambda1) + ',' +
           fmt17(lambdas.lambda2) + ',' + fmt17(lambdas.lambda3) + "]}";
    out += ",\"input\":" + io::state_to_json(input);
    out += ",\"output\":" + io::state_to_json(output);
    if (input.n_qubits() == 1) {
      out += ",\"input_bloch\":" + io::bloch_to_json(density_to_bloch(input));
      out += ",\"output_bloch\":" + io::bloch_to_json(density_to_bloch(output));
    }
    out += ",\"traces\":" + io::traces_to_json(traces);
    if (args.shots > 0 && !traces.empty()) {
      out += ",\"shots\":{\"n\":" + std::to_string(args.shots) + ",\"counts\":{";
      for (std::size_t i = 0; i < traces.size(); ++i) {
        if (i > 0) out += ',';
        out += '"' + traces[i].outcome_label + "\":" + std::to_string(counts[i]);
      }
      out += "}}";
    }
    out += "}\n";
    emit(out);
  } else if (format == Format::csv) {
    std::string out = "key,value\n";
    for (int i = 0; i < 4; ++i) {
      out += "w" + std::to_string(i + 1) + ',' + fmt17(wc[i]) + '\n';
    }
    out += "lambda1," + fmt17(lambdas.lambda1) + '\n';
    out += "lambda2," + fmt17(lambdas.lambda2) + '\n';
    out += "lambda3," + fmt17(lambdas.lambda3) + '\n';
    if (input.n_qubits() == 1) {
      const BlochVector in = density_to_bloch(input);
      const BlochVector outb = density_to_bloch(output);
      out += "input_x," + fmt17(in.x) + "\ninput_y," + fmt17(in.y) +
             "\ninput_z," + fmt17(in.z) + '\n';
      out += "output_x," + fmt17(outb.x) + "\noutput_y," + fmt17(outb.y) +
             "\noutput_z," + fmt17(outb.z) + '\n';
    }
    for (const ProtocolTrace& t : traces) {
      out += "prob_" + t.outcome_label + ',' + fmt17(t.probability) + '\n';
      out += "correction_" + t.outcome_label + ',' + t.correction + '\n';
    }
    for (std::size_t i = 0; i < counts.size() && args.shots > 0; ++i) {
      out += "shots_" + traces[i].outcome_label + ',' +
             std::to_string(counts[i]) + '\n';
    }
    emit(out);
  } else {
    std::string out = "channel weights: (" + fmt17(wc[0]) + ", " +
                      fmt17(wc[1]) + ", " + fmt17(wc[2]) + ", " +
                      fmt17(wc[3]) + ")\n";
    out += "channel lambdas: (" + fmt17(lambdas.lambda1) + ", " +
           fmt17(lambdas.lambda2) + ", " + fmt17(lambdas.lambda3) + ")\n";
    if (input.n_qubits() == 1) {
      out += "input Bloch:  " + bloch_pretty(density_to_bloch(input)) + '\n';
      out += "output Bloch: " + bloch_pretty(density_to_bloch(output)) + '\n';
    } else {
      out += "input marginal Bloch, party 1:  " +
             bloch_pretty(density_to_bloch(partial_trace(input, {0}))) + '\n';
      out += "input marginal Bloch, party 2:  " +
             bloch_pretty(density_to_bloch(partial_trace(input, {1}))) + '\n';
      out += "output marginal Bloch, party 1: " +
             bloch_pretty(density_to_bloch(partial_trace(output, {0}))) + '\n';
      out += "output marginal Bloch, party 2: " +
             bloch_pretty(density_to_bloch(partial_trace(output, {1}))) + '\n';
      out += "output state: " + io::state_to_json(output) + '\n';
    }
    for (const ProtocolTrace& t : traces) {
      out += "outcome " + t.outcome_label + ": p = " + fmt17(t.probability) +
             ", correction " + t.correction + '\n';
    }
    if (args.shots > 0 && !traces.empty()) {
      out += "shots " + std::to_string(args.shots) + ":";
      for (std::size_t i = 0; i < traces.size(); ++i) {
        out += ' ' + traces[i].outcome_label + '=' + std::to_string(counts[i]);
      }
      out += '\n';
    }
    emit(out);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// disentangle

struct DisentangleArgs {
  std::string scenario;
  std::string lambdas;
  std::string state_path;
};

int run_disentangle(const DisentangleArgs& args, Format format) {
  const DensityMatrix input =
      io::state_from_json(io::read_text_file(args.state_path));

  DisentanglementReport report = [&] {
    if (args.scenario == "universal") {
      return run_scenario(Scenario::universal, input);
    }
    if (args.scenario == "equatorial") {
      return run_scenario(Scenario::equatorial, input);
    }
    if (args.scenario == "commuting") {
      return run_scenario(Scenario::commuting, input);
    }
    if (args.scenario == "custom") {
      if (args.lambdas.empty()) {
        throw UsageError("--scenario custom requires --lambdas l1,l2,l3");
      }
      const std::vector<double> l = parse_doubles(args.lambdas, 3, "--lambdas");
      return run_custom_scenario(PauliDiagonalMap(l[0], l[1], l[2]), input);
    }
    throw UsageError("unknown --scenario '" + args.scenario +
                     "' (universal|equatorial|commuting|custom)");
  }();

  if (format == Format::json) {
    emit(io::disentanglement_report_to_json(report) + "\n");
  } else if (format == Format::csv) {
    std::string out = "key,value\n";
    out += "scenario," + std::string(scenario_name(report.scenario)) + '\n';
    out += "separable," + std::string(report.separable ? "1" : "0") + '\n';
    out += "min_pt_eigenvalue," + fmt17(report.min_pt_eigenvalue) + '\n';
    out += "eta1," + (report.eta1 ? fmt17(*report.eta1) : "NA") + '\n';
    out += "eta2," + (report.eta2 ? fmt17(*report.eta2) : "NA") + '\n';
    out += "marginal_fidelity1," + fmt17(report.marginal_fidelity1) + '\n';
    out += "marginal_fidelity2," + fmt17(report.marginal_fidelity2) + '\n';
    out += "map_physical," + std::string(report.map_physical ? "1" : "0") + '\n';
    emit(out);
  } else {
    std::string out = "scenario: " + std::string(scenario_name(report.scenario)) + '\n';
    out += "separable: " + yes_no(report.separable) + '\n';
    out += "min PT eigenvalue: " + fmt17(report.min_pt_eigenvalue) + '\n';
    out += "eta1: " + (report.eta1 ? fmt17(*report.eta1) : "undefined (zero marginal)") + '\n';
    out += "eta2: " + (report.eta2 ? fmt17(*report.eta2) : "undefined (zero marginal)") + '\n';
    out += "marginal fidelity party 1: " + fmt17(report.marginal_fidelity1) + '\n';
    out += "marginal fidelity party 2: " + fmt17(report.marginal_fidelity2) + '\n';
    out += "map physical: " + yes_no(report.map_physical) + '\n';
    out += "output state: " + io::state_to_json(report.output_state) + '\n';
    emit(out);
  }
  return report.separable ? 0 : 1;
}

// ---------------------------------------------------------------------------
// optimize

struct OptimizeArgs {
  double grid_step = 0.05;
  double refine_tol = 1e-4;
  bool skip_a15 = false;
  std::string sweep_out;
};

int run_optimize(const OptimizeArgs& args, Format format) {
  if (!(1e-6 <= args.refine_tol && args.refine_tol <= args.grid_step &&
        args.grid_step <= 0.1)) {
    throw UsageError("need 1e-6 <= --refine-tol <= --grid-step <= 0.1");
  }
  const ConstraintSet cs =
      args.skip_a15 ? ConstraintSet::physical_only : ConstraintSet::both;
  std::vector<OptimizerProbe> sweep;
  const OptimizationResult r = optimize_equatorial(
      args.grid_step, args.refine_tol, cs,
      args.sweep_out.empty() ? nullptr : &sweep);
  if (!args.sweep_out.empty()) {
    io::write_text_file(args.sweep_out, io::sweep_to_csv(sweep));
  }

  if (format == Format::json) {
    emit(io::optimization_result_to_json(r) + "\n");
  } else if (format == Format::csv) {
    std::string out = "key,value\n";
    out += "lambda_max," + fmt17(r.lambda_max) + '\n';
    out += "l," + fmt17(r.l) + '\n';
    out += "m," + fmt17(r.m) + '\n';
    out += "n," + fmt17(r.n) + '\n';
    out += "iterations," + std::to_string(r.iterations) + '\n';
    out += "probe_infeasible," + std::string(r.probe_infeasible ? "1" : "0") + '\n';
    for (int k = 0; k < 3; ++k) {
      out += "a14_" + std::to_string(k + 1) + ',' +
             fmt17(r.certificate.physical[k]) + '\n';
    }
    for (int k = 0; k < 3; ++k) {
      out += "a15_" + std::to_string(k + 1) + ',' +
             fmt17(r.certificate.disentangling[k]) + '\n';
    }
    emit(out);
  } else {
    std::string out = "lambda_max: " + fmt17(r.lambda_max) + '\n';
    out += "witness (l, m, n): (" + fmt17(r.l) + ", " + fmt17(r.m) + ", " +
           fmt17(r.n) + ")\n";
    out += "certificate a14: [" + fmt17(r.certificate.physical[0]) + ", " +
           fmt17(r.certificate.physical[1]) + ", " +
           fmt17(r.certificate.physical[2]) + "]\n";
    out += "certificate a15: [" + fmt17(r.certificate.disentangling[0]) + ", " +
           fmt17(r.certificate.disentangling[1]) + ", " +
           fmt17(r.certificate.disentangling[2]) + "]\n";
    out += "constraints: " + std::string(args.skip_a15 ? "physicality only"
                                                       : "physicality + disentanglement") + '\n';
    out += "probe just above lambda_max infeasible: " + yes_no(r.probe_infeasible) + '\n';
    out += "probed lambdas: " + std::to_string(r.iterations) + '\n';
    if (!args.sweep_out.empty()) {
      out += "sweep written to: " + args.sweep_out + '\n';
    }
    emit(out);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// verify

struct SuiteOutcome {
  int samples = 0;
  int mismatches = 0;
  double max_error = 0.0;
};

// Channel -> map -> channel round trip plus Choi spectrum against weights.
SuiteOutcome run_lemma_round_trip(int samples, uint64_t seed) {
  SuiteOutcome outcome;
  outcome.samples = samples;
  const Rng base(seed);
  for (int i = 0; i < samples; ++i) {
    Rng rng = base.fork(static_cast<uint64_t>(i));
    const BellMixture ch = random_bell_mixture(rng);
    const PauliDiagonalMap m = channel_to_map(ch);
    const BellMixture back = map_to_channel(m);
    double err = 0.0;
    for (int k = 0; k < 4; ++k) {
      err = std::max(err, std::abs(back.weights()[k] - ch.weights()[k]));
    }
    std::array<double, 4> sorted_w = ch.weights();
    std::sort(sorted_w.begin(), sorted_w.end());
    const ComplexMatrix choi = choi_matrix(pauli_map(m));
    const std::vector<double> eigs = hermitian_eigenvalues(choi);
    for (int k = 0; k < 4; ++k) {
      err = std::max(err, std::abs(eigs[static_cast<std::size_t>(k)] - sorted_w[static_cast<std::size_t>(k)]));
    }
    outcome.max_error = std::max(outcome.max_error, err);
    if (err > 1e-10) ++outcome.mismatches;
  }
  return outcome;
}

// Four-qubit protocol simulation against the one-sided closed-form map.
SuiteOutcome run_protocol_equivalence(int samples, uint64_t seed) {
  SuiteOutcome outcome;
  outcome.samples = samples;
  const Rng base(seed);
  for (int i = 0; i < samples; ++i) {
    Rng rng = base.fork(static_cast<uint64_t>(i));
    const DensityMatrix rho = i % 2 == 0 ? random_entangled_pure_state(rng)
                                         : random_mixed_state(rng, 2);
    const BellMixture ch = random_bell_mixture(rng);
    const int party = 1 + i % 2;
    const DensityMatrix simulated = teleport_party_of_bipartite(rho, party, ch);
    const DensityMatrix closed =
        apply_one_side(pauli_map(channel_to_map(ch)), rho, party);
    const double err = trace_distance(simulated, closed);
    outcome.max_error = std::max(outcome.max_error, err);
    if (err > 1e-10) ++outcome.mismatches;
  }
  return outcome;
}

struct VerifyArgs {
  int samples = 1000;
  int threads = 1;
  bool inject_fault = false;
};

int run_verify(const VerifyArgs& args, Format format, uint64_t seed) {
  TheoremReport theorem = verify_theorem(args.samples, seed, args.threads);
  const SuiteOutcome lemma = run_lemma_round_trip(args.samples, seed);
  const SuiteOutcome protocol = run_protocol_equivalence(args.samples, seed);
  if (args.inject_fault) ++theorem.mismatches;
  const bool pass =
      theorem.pass() && lemma.mismatches == 0 && protocol.mismatches == 0;

  if (format == Format::json) {
    std::string out = "{\"theorem\":" + io::theorem_report_to_json(theorem);
    out += ",\"lemma_round_trip\":{\"samples\":" + std::to_string(lemma.samples) +
           ",\"mismatches\":" + std::to_string(lemma.mismatches) +
           ",\"max_error\":" + fmt17(lemma.max_error) + '}';
    out += ",\"protocol_equivalence\":{\"samples\":" + std::to_string(protocol.samples) +
           ",\"mismatches\":" + std::to_string(protocol.mismatches) +
           ",\"max_error\":" + fmt17(protocol.max_error) + '}';
    out += ",\"pass\":";
    out += pass ? "true" : "false";
    out += "}\n";
    emit(out);
  } else if (format == Format::csv) {
    std::string out = "suite,samples,mismatches\n";
    out += "theorem," + std::to_string(theorem.samples) + ',' +
           std::to_string(theorem.mismatches + theorem.state_mismatches) + '\n';
    out += "lemma_round_trip," + std::to_string(lemma.samples) + ',' +
           std::to_string(lemma.mismatches) + '\n';
    out += "protocol_equivalence," + std::to_string(protocol.samples) + ',' +
           std::to_string(protocol.mismatches) + '\n';
    emit(out);
  } else {
    std::string out =
        "theorem suite: " + std::to_string(theorem.samples) + " samples, " +
        std::to_string(theorem.mismatches) + " verdict mismatches, " +
        std::to_string(theorem.state_mismatches) + " state mismatches (" +
        std::to_string(theorem.boundary_cases) + " boundary cases skipped)\n";
    out += "lemma round-trip suite: " + std::to_string(lemma.samples) +
           " samples, " + std::to_string(lemma.mismatches) +
           " mismatches, max error " + fmt17(lemma.max_error) + '\n';
    out += "protocol equivalence suite: " + std::to_string(protocol.samples) +
           " samples, " + std::to_string(protocol.mismatches) +
           " mismatches, max error " + fmt17(protocol.max_error) + '\n';
    out += pass ? "all suites clean\n" : "MISMATCHES FOUND\n";
    emit(out);
  }
  return pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// reproduce

int run_reproduce(Format format, uint64_t seed) {
  std::vector<io::ReproduceRow> rows;

  {
    const TeleportResult r = bell_protocol_output(
        bloch_to_density({1, 0, 0}),
        BellMixture(0.5, 1.0 / 6, 1.0 / 6, 1.0 / 6));
    const double x = density_to_bloch(r.output).x;
    rows.push_back({"werner_teleport_shrink", fmt17(1.0 / 3), fmt17(x),
                    std::abs(x - 1.0 / 3) <= 1e-12});
  }
  {
    const OptimizationResult r = optimize_equatorial();
    rows.push_back({"equatorial_lambda_max", "0.5", fmt17(r.lambda_max),
                    std::abs(r.lambda_max - 0.5) <= 1e-3 &&
                        r.certificate.feasible() && r.probe_infeasible});
  }
  {
    const Rng base(seed);
    const AffineBlochMap dephase = pauli_map(0, 0, 1);
    double worst = 0.0;
    bool all_separable = true;
    for (int i = 0; i < 100; ++i) {
      Rng rng = base.fork(static_cast<uint64_t>(i));
      const DensityMatrix rho =
          apply_one_side(dephase, random_mixed_state(rng, 2), 2);
      const ClassicalProtocolResult r = run_classical_protocol(rho, 2);
      for (int party : {0, 1}) {
        worst = std::max(worst,
                         trace_distance(partial_trace(rho, {party}),
                                        partial_trace(r.output, {party})));
      }
      all_separable = all_separable && is_separable_2x2(r.output).separable;
      for (const ProtocolTrace& t : r.traces) {
        worst = std::max(worst, std::abs(t.probability - 0.5));
      }
    }
    rows.push_back({"classical_protocol_marginals", "<=1e-12", fmt17(worst),
                    worst <= 1e-12 && all_separable});
  }
  {
    const TheoremReport r = verify_theorem(1000, seed);
    rows.push_back({"theorem_1000_samples", "0",
                    std::to_string(r.mismatches + r.state_mismatches),
                    r.pass()});
  }
  {
    const BothSidesReport r =
        check_both_sides_claim({0.0, 0.01, 0.1, 0.25, 0.5});
    rows.push_back({"both_sides_claim", "pass", r.pass ? "pass" : "fail",
                    r.pass});
  }

  bool all = true;
  for (const io::ReproduceRow& row : rows) all = all && row.pass;
  if (format == Format::json) {
    emit(io::reproduce_to_json(rows) + "\n");
  } else if (format == Format::csv) {
    emit(io::reproduce_to_csv(rows));
  } else {
    emit(io::reproduce_to_pretty(rows));
  }
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Teleportation through separable Bell-mixture channels: "
               "simulation, feasibility analysis, and reproduction suite"};
  app.require_subcommand(1);

  std::string format_name = "pretty";
  std::optional<uint64_t> seed_flag;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format_name, "Output format: pretty|json|csv")
        ->capture_default_str();
    sub->add_option("--seed", seed_flag,
                    "RNG seed (overrides DISENT_SEED; default 42)");
  };

  TeleportArgs tele;
  CLI::App* tele_cmd = app.add_subcommand(
      "teleport", "Send a state through a Bell-mixture channel");
  tele_cmd->add_option("--weights", tele.weights,
                       "Channel Bell weights w1,w2,w3,w4 (sum 1)")
      ->required();
  tele_cmd->add_option("--bloch", tele.bloch, "Input Bloch vector x,y,z");
  tele_cmd->add_option("--state", tele.state_path, "Input state JSON file")
      ->check(CLI::ExistingFile);
  tele_cmd->add_option("--shots", tele.shots,
                       "Also sample this many Bell outcomes")
      ->check(CLI::NonNegativeNumber);
  add_common(tele_cmd);

  DisentangleArgs dis;
  CLI::App* dis_cmd = app.add_subcommand(
      "disentangle", "Run a disentanglement scenario on a two-qubit state");
  dis_cmd->add_option("--scenario", dis.scenario,
                      "universal|equatorial|commuting|custom")
      ->required();
  dis_cmd->add_option("--lambdas", dis.lambdas,
                      "Custom map diagonal l1,l2,l3 (custom scenario only)");
  dis_cmd->add_option("--state", dis.state_path, "Two-qubit state JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  add_common(dis_cmd);

  OptimizeArgs opt;
  CLI::App* opt_cmd = app.add_subcommand(
      "optimize", "Maximize the equatorial shrink factor under the "
                  "feasibility conditions");
  opt_cmd->add_option("--grid-step", opt.grid_step, "Inner grid resolution")
      ->capture_default_str();
  opt_cmd->add_option("--refine-tol", opt.refine_tol,
                      "Bisection and descent tolerance")
      ->capture_default_str();
  opt_cmd->add_flag("--skip-a15", opt.skip_a15,
                    "Impose physicality only, not disentanglement");
  opt_cmd->add_option("--sweep-out", opt.sweep_out,
                      "Write the probed points to this CSV file");
  add_common(opt_cmd);

  VerifyArgs ver;
  CLI::App* ver_cmd = app.add_subcommand(
      "verify", "Cross-check closed forms against simulation oracles");
  ver_cmd->add_option("--samples", ver.samples, "Samples per suite")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  ver_cmd->add_option("--threads", ver.threads, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  ver_cmd->add_flag("--inject-fault", ver.inject_fault)->group("");
  add_common(ver_cmd);

  CLI::App* rep_cmd = app.add_subcommand(
      "reproduce", "Run the one-shot reproduction summary");
  add_common(rep_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const Format format = parse_format(format_name);
    const uint64_t seed = resolve_seed(seed_flag);
    if (tele_cmd->parsed()) return run_teleport(tele, format, seed);
    if (dis_cmd->parsed()) return run_disentangle(dis, format);
    if (opt_cmd->parsed()) return run_optimize(opt, format);
    if (ver_cmd->parsed()) return run_verify(ver, format, seed);
    if (rep_cmd->parsed()) return run_reproduce(format, seed);
    std::fputs("error: no subcommand\n", stderr);
    return 2;
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const FileError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const PremiseViolation& e) {
    std::fprintf(stderr, "premise violation: %s\n", e.what());
    return 4;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 3;
  }
}
