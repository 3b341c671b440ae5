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

#ifndef DISENT_DISENTANGLE_HPP_
#define DISENT_DISENTANGLE_HPP_

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "disent/channels.hpp"
#include "disent/errors.hpp"
#include "disent/qstate.hpp"
#include "disent/random.hpp"
#include "disent/teleport.hpp"
#include "disent/tolerances.hpp"

// Feasibility analysis of the one-parameter map family
// sigma_1 -> lambda sigma_1, sigma_3 -> lambda sigma_3,
// sigma_2 -> m sigma_1 + l sigma_2 + n sigma_3:
// closed-form conditions for the map to be physical and to disentangle every
// Schmidt-form pure state, a simulation oracle that cross-checks them, the
// constrained maximization of lambda, the separability theorem verifier for
// Pauli-diagonal channels, and the packaged disentanglement scenarios.

namespace disent {

// Physicality conditions: nonnegative exactly when the map output is
// positive semidefinite for every Schmidt input.
inline std::array<double, 3> a14_physical_conditions(double lambda, double l,
                                                     double m, double n) {
  const double q = 1.0 - l * l - m * m - n * n;
  return {1.0 - lambda * lambda - n * n,
          q - lambda * (1.0 + l * l + m * m - 2.0 * l - n * n) -
              2.0 * lambda * lambda * (1.0 - l),
          q * q - 4.0 * lambda * lambda * (1.0 - l) * (1.0 - l)};
}

// Disentanglement conditions: nonnegative exactly when the map output stays
// PPT for every Schmidt input. Mirrors the physicality set under l -> -l
// (partially transposing the output flips the sign of the sigma_2 column).
inline std::array<double, 3> a15_disentangling_conditions(double lambda, double l,
                                                          double m, double n) {
  const double q = 1.0 - l * l - m * m - n * n;
  return {1.0 - lambda * lambda - n * n,
          q - lambda * (1.0 + l * l + m * m + 2.0 * l - n * n) -
              2.0 * lambda * lambda * (1.0 + l),
          q * q - 4.0 * lambda * lambda * (1.0 + l) * (1.0 + l)};
}

enum class ConstraintSet { both, physical_only };

struct FeasibilityConditions {
  std::array<double, 3> physical{};
  std::array<double, 3> disentangling{};

  double margin(ConstraintSet cs = ConstraintSet::both) const {
    double lo = physical[0];
    for (double v : physical) lo = std::min(lo, v);
    if (cs == ConstraintSet::both) {
      for (double v : disentangling) lo = std::min(lo, v);
    }
    return lo;
  }

  bool feasible(ConstraintSet cs = ConstraintSet::both) const {
    return margin(cs) >= tol::kPsdFloor;
  }
};

inline FeasibilityConditions evaluate_conditions(double lambda, double l,
                                                 double m, double n) {
  return {a14_physical_conditions(lambda, l, m, n),
          a15_disentangling_conditions(lambda, l, m, n)};
}

struct OracleAgreementReport {
  FeasibilityConditions conditions;
  int samples = 0;
  bool closed_form_physical = false;
  bool closed_form_disentangling = false;
  bool oracle_physical = true;
  bool oracle_disentangling = true;
  // Smallest closed-form condition value of each set, for boundary banding.
  double physical_margin = 0.0;
  double disentangling_margin = 0.0;
  std::optional<double> physical_disagreement_a;
  std::optional<double> disentangling_disagreement_a;

  bool physical_agrees() const {
    return closed_form_physical == oracle_physical ||
           std::abs(physical_margin) <= tol::kTheoremBand;
  }
  bool disentangling_agrees() const {
    return closed_form_disentangling == oracle_disentangling ||
           std::abs(disentangling_margin) <= tol::kTheoremBand;
  }
  bool agrees() const { return physical_agrees() && disentangling_agrees(); }
};

// Cross-check the closed forms against a direct simulation: sample Schmidt
// coefficients, push the state through the map on side 1, and test positivity
// and PPT of the result. The closed forms quantify over all Schmidt inputs,
// so one failing sample refutes feasibility while agreement over many samples
// corroborates it.
inline OracleAgreementReport conditions_vs_oracle(double lambda, double l,
                                                  double m, double n,
                                                  int samples, uint64_t seed) {
  if (samples < 1) throw InvariantViolation("conditions_vs_oracle needs samples >= 1");
  OracleAgreementReport report;
  report.samples = samples;
  report.conditions = evaluate_conditions(lambda, l, m, n);
  report.physical_margin = report.conditions.margin(ConstraintSet::physical_only);
  {
    double lo = report.conditions.disentangling[0];
    for (double v : report.conditions.disentangling) lo = std::min(lo, v);
    report.disentangling_margin = lo;
  }
  report.closed_form_physical = report.physical_margin >= tol::kPsdFloor;
  report.closed_form_disentangling = report.disentangling_margin >= tol::kPsdFloor;

  const AffineBlochMap map = general_map_lmn(lambda, l, m, n);
  Rng rng(seed);
  for (int k = 0; k < samples; ++k) {
    const double a = rng.uniform();
    const double b = std::sqrt(1.0 - a * a);
    const DensityMatrix psi = DensityMatrix::pure({a, 0.0, 0.0, b});
    const DensityMatrix out = apply_one_side(map, psi, 1);
    if (out.min_eigenvalue() < tol::kPsdFloor) {
      report.oracle_physical = false;
      if (!report.physical_disagreement_a && report.closed_form_physical) {
        report.physical_disagreement_a = a;
      }
    }
    if (min_hermitian_eigenvalue(partial_transpose(out, 2)) < tol::kPsdFloor) {
      report.oracle_disentangling = false;
      if (!report.disentangling_disagreement_a &&
          report.closed_form_disentangling) {
        report.disentangling_disagreement_a = a;
      }
    }
  }
  return report;
}

struct OptimizerProbe {
  double lambda = 0.0;
  double l = 0.0;
  double m = 0.0;
  double n = 0.0;
  std::array<double, 3> a14{};
  std::array<double, 3> a15{};
  bool feasible = false;
};

struct OptimizationResult {
  double lambda_max = 0.0;
  double l = 0.0;
  double m = 0.0;
  double n = 0.0;
  int iterations = 0;
  FeasibilityConditions certificate;
  bool probe_infeasible = false;  // no feasible point at lambda_max + 1e-6
};

namespace detail {

struct InnerSearchResult {
  double l = 0.0, m = 0.0, n = 0.0;
  double margin = -1e30;
};

// Best-margin point over (l,m,n) in [-1,1]^3: coarse grid, then coordinate
// descent with a shrinking step. Maximizing the margin (not just finding any
// feasible point) keeps the witness at the strict interior optimum when the
// feasible set collapses toward a single point.
inline InnerSearchResult best_lmn(double lambda, double grid_step,
                                  double refine_tol, ConstraintSet cs) {
  const int count = static_cast<int>(std::lround(2.0 / grid_step));
  auto coord = [count](int i) { return -1.0 + (2.0 * i) / count; };
  auto margin_at = [lambda, cs](double l, double m, double n) {
    return evaluate_conditions(lambda, l, m, n).margin(cs);
  };

  InnerSearchResult best;
  for (int i = 0; i <= count; ++i) {
    for (int j = 0; j <= count; ++j) {
      for (int k = 0; k <= count; ++k) {
        const double value = margin_at(coord(i), coord(j), coord(k));
        if (value > best.margin) {
          best = {coord(i), coord(j), coord(k), value};
        }
      }
    }
  }

  double step = grid_step / 2.0;
  int passes = 0;
  while (step >= refine_tol / 4.0 && ++passes <= 20000) {
    bool improved = false;
    for (double* c : {&best.l, &best.m, &best.n}) {
      for (double delta : {step, -step}) {
        const double saved = *c;
        *c = std::min(1.0, std::max(-1.0, saved + delta));
        const double value = margin_at(best.l, best.m, best.n);
        if (value > best.margin) {
          best.margin = value;
          improved = true;
        } else {
          *c = saved;
        }
      }
    }
    if (!improved) step /= 2.0;
  }
  return best;
}

}  // namespace detail

// Maximize lambda subject to the closed-form feasibility conditions, by
// bisection over lambda with a full inner search per probe. The optional
// sweep log records the best point examined at every probed lambda.
inline OptimizationResult optimize_equatorial(
    double grid_step = 0.05, double refine_tol = 1e-4,
    ConstraintSet constraints = ConstraintSet::both,
    std::vector<OptimizerProbe>* sweep = nullptr) {
  if (!(1e-6 <= refine_tol && refine_tol <= grid_step && grid_step <= 0.1)) {
    throw InvariantViolation(
        "optimizer needs 1e-6 <= refine_tol <= grid_step <= 0.1");
  }

  int iterations = 0;
  auto probe = [&](double lambda) {
    ++iterations;
    const detail::InnerSearchResult r =
        detail::best_lmn(lambda, grid_step, refine_tol, constraints);
    if (sweep != nullptr) {
      OptimizerProbe row;
      row.lambda = lambda;
      row.l = r.l;
      row.m = r.m;
      row.n = r.n;
      row.a14 = a14_physical_conditions(lambda, r.l, r.m, r.n);
      row.a15 = a15_disentangling_conditions(lambda, r.l, r.m, r.n);
      row.feasible = r.margin >= tol::kPsdFloor;
      sweep->push_back(row);
    }
    return r;
  };

  detail::InnerSearchResult at_lo = probe(0.0);
  if (at_lo.margin < tol::kPsdFloor) {
    throw NoFeasiblePoint("no feasible (l,m,n) even at lambda = 0");
  }
  double lo = 0.0;
  double hi = 1.0;
  const detail::InnerSearchResult at_hi = probe(1.0);
  if (at_hi.margin >= tol::kPsdFloor) {
    lo = 1.0;
    at_lo = at_hi;
  } else {
    while (hi - lo > refine_tol) {
      const double mid = 0.5 * (lo + hi);
      const detail::InnerSearchResult at_mid = probe(mid);
      if (at_mid.margin >= tol::kPsdFloor) {
        lo = mid;
        at_lo = at_mid;
      } else {
        hi = mid;
      }
    }
  }

  OptimizationResult result;
  result.lambda_max = lo;
  result.l = at_lo.l;
  result.m = at_lo.m;
  result.n = at_lo.n;
  result.iterations = iterations;
  result.certificate = evaluate_conditions(lo, at_lo.l, at_lo.m, at_lo.n);
  result.probe_infeasible =
      detail::best_lmn(lo + 1e-6, grid_step, refine_tol, constraints).margin <
      tol::kPsdFloor;
  return result;
}

struct TheoremReport {
  int samples = 0;
  int boundary_cases = 0;   // |sum of lambdas - 1| within the exclusion band
  int mismatches = 0;       // closed-form vs PPT-oracle verdict conflicts
  int state_mismatches = 0; // separable-channel outputs that failed PPT
  bool pass() const { return mismatches == 0 && state_mismatches == 0; }
};

// Exercise the channel-separability criterion: for random lambda-triples in
// [0,1]^3 the closed-form verdict (sum <= 1) must match the PPT oracle on the
// map's output at the maximally entangled input, and triples below the
// threshold must disentangle a batch of random states as well. Samples are
// independently seeded, so any thread partition yields identical reports.
inline TheoremReport verify_theorem(int samples, uint64_t seed, int threads = 1) {
  if (samples < 1) throw InvariantViolation("verify_theorem needs samples >= 1");
  if (threads < 1) throw InvariantViolation("verify_theorem needs threads >= 1");

  enum : uint8_t { kOk = 0, kBoundary = 1, kMismatch = 2, kStateMismatch = 4 };
  std::vector<uint8_t> flags(samples, kOk);
  const Rng base(seed);
  const DensityMatrix phi(bell_projector(Bell::phi_plus), StateCheck::structural);

  auto run_range = [&](int begin, int end) {
    for (int i = begin; i < end; ++i) {
      Rng rng = base.fork(static_cast<uint64_t>(i));
      const double l1 = rng.uniform(), l2 = rng.uniform(), l3 = rng.uniform();
      const double sum = l1 + l2 + l3;
      const AffineBlochMap map = pauli_map(l1, l2, l3);
      const bool closed_separable = sum <= 1.0;
      const bool oracle_separable =
          is_separable_2x2(apply_one_side(map, phi, 2)).separable;
      if (std::abs(sum - 1.0) <= tol::kTheoremBand) {
        flags[i] |= kBoundary;
        continue;
      }
      if (closed_separable != oracle_separable) flags[i] |= kMismatch;
      if (closed_separable) {
        for (int s = 0; s < 20; ++s) {
          const DensityMatrix rho = s % 2 == 0
                                        ? random_entangled_pure_state(rng)
                                        : random_mixed_state(rng, 2);
          if (!is_separable_2x2(apply_one_side(map, rho, 2)).separable) {
            flags[i] |= kStateMismatch;
          }
        }
      }
    }
  };

  const int workers = std::min(threads, samples);
  if (workers <= 1) {
    run_range(0, samples);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (samples + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const int begin = w * chunk;
      const int end = std::min(samples, begin + chunk);
      if (begin < end) pool.emplace_back(run_range, begin, end);
    }
    for (std::thread& t : pool) t.join();
  }

  TheoremReport report;
  report.samples = samples;
  for (uint8_t f : flags) {
    if (f & kBoundary) ++report.boundary_cases;
    if (f & kMismatch) ++report.mismatches;
    if (f & kStateMismatch) ++report.state_mismatches;
  }
  return report;
}

enum class Scenario { universal, equatorial, commuting, custom };

inline std::string_view scenario_name(Scenario s) {
  switch (s) {
    case Scenario::universal: return "universal";
    case Scenario::equatorial: return "equatorial";
    case Scenario::commuting: return "commuting";
    case Scenario::custom: return "custom";
  }
  throw Error("unreachable scenario label");
}

inline PauliDiagonalMap scenario_map(Scenario s) {
  switch (s) {
    case Scenario::universal:
      return PauliDiagonalMap(1.0 / 3, 1.0 / 3, 1.0 / 3);
    case Scenario::equatorial:
      return PauliDiagonalMap(0.5, 0.0, 0.5);
    case Scenario::commuting:
      return PauliDiagonalMap(0.0, 0.0, 1.0);
    case Scenario::custom:
      throw InvariantViolation("custom scenario requires explicit lambdas");
  }
  throw Error("unreachable scenario label");
}

struct DisentanglementReport {
  Scenario scenario;
  DensityMatrix input_state;
  DensityMatrix output_state;
  bool separable;
  double min_pt_eigenvalue;
  // Bloch-norm shrink ratios per party; absent for zero-norm marginals.
  std::optional<double> eta1;
  std::optional<double> eta2;
  // 1 - trace distance between input and output marginals.
  double marginal_fidelity1;
  double marginal_fidelity2;
  bool map_physical;
};

namespace detail {

inline void check_scenario_premise(Scenario s, const BlochVector& party2) {
  const bool need_y = s == Scenario::equatorial || s == Scenario::commuting;
  const bool need_x = s == Scenario::commuting;
  if (need_y && std::abs(party2.y) > tol::kPremise) {
    throw PremiseViolation(
        std::string(scenario_name(s)) +
        " scenario needs a great-disc party-2 marginal; its Bloch y component is " +
        std::to_string(party2.y));
  }
  if (need_x && std::abs(party2.x) > tol::kPremise) {
    throw PremiseViolation(
        "commuting scenario needs a diagonal party-2 marginal; its Bloch x component is " +
        std::to_string(party2.x));
  }
}

inline DisentanglementReport run_with_map(Scenario label,
                                          const PauliDiagonalMap& m,
                                          const DensityMatrix& rho12) {
  if (rho12.n_qubits() != 2) {
    throw WrongDimension("scenario input must be a two-qubit state");
  }
  const BlochVector s_in = density_to_bloch(partial_trace(rho12, {1}));
  check_scenario_premise(label, s_in);

  const BellMixture channel = map_to_channel(m);
  const DensityMatrix output = teleport_party_of_bipartite(rho12, 2, channel);
  const SeparabilityVerdict verdict = is_separable_2x2(output);

  const BlochVector r_in = density_to_bloch(partial_trace(rho12, {0}));
  const BlochVector r_out = density_to_bloch(partial_trace(output, {0}));
  const BlochVector s_out = density_to_bloch(partial_trace(output, {1}));

  std::optional<double> eta1, eta2;
  if (r_in.norm() >= 1e-12) eta1 = r_out.norm() / r_in.norm();
  if (s_in.norm() >= 1e-12) eta2 = s_out.norm() / s_in.norm();

  return DisentanglementReport{
      label,
      rho12,
      output,
      verdict.separable,
      verdict.min_pt_eigenvalue,
      eta1,
      eta2,
      1.0 - trace_distance(partial_trace(rho12, {0}), partial_trace(output, {0})),
      1.0 - trace_distance(partial_trace(rho12, {1}), partial_trace(output, {1})),
      is_physical(pauli_map(m))};
}

}  // namespace detail

inline DisentanglementReport run_scenario(Scenario s, const DensityMatrix& rho12) {
  return detail::run_with_map(s, scenario_map(s), rho12);
}

inline DisentanglementReport run_custom_scenario(const PauliDiagonalMap& m,
                                                 const DensityMatrix& rho12) {
  return detail::run_with_map(Scenario::custom, m, rho12);
}

struct BothSidesCheck {
  double epsilon;
  bool physical;
  double choi_min_eigenvalue;
  bool matches_expectation;  // physical exactly when epsilon == 0
};

struct BothSidesReport {
  std::vector<BothSidesCheck> checks;
  bool pass = true;
};

// Probe the claim that pushing the equatorial shrink factor past 1/2 on both
// great-disc axes breaks complete positivity: lambda = 1/2 + epsilon must be
// unphysical for every positive epsilon and physical exactly at the boundary.
inline BothSidesReport check_both_sides_claim(const std::vector<double>& epsilons) {
  BothSidesReport report;
  for (double eps : epsilons) {
    if (eps < 0.0 || eps > 0.5) {
      throw InvariantViolation("epsilon must lie in [0, 1/2]");
    }
    BothSidesCheck check{};
    check.epsilon = eps;
    const AffineBlochMap map = pauli_map(0.5 + eps, 0.0, 0.5 + eps);
    check.choi_min_eigenvalue = choi_min_eigenvalue(map);
    check.physical = check.choi_min_eigenvalue >= tol::kPsdFloor;
    check.matches_expectation = check.physical == (eps == 0.0);
    report.pass = report.pass && check.matches_expectation;
    report.checks.push_back(check);
  }
  return report;
}

}  // namespace disent

#endif  // DISENT_DISENTANGLE_HPP_
