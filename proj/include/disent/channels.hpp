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

#ifndef DISENT_CHANNELS_HPP_
#define DISENT_CHANNELS_HPP_

#include <array>
#include <cmath>
#include <string>

#include "disent/errors.hpp"
#include "disent/qstate.hpp"
#include "disent/random.hpp"
#include "disent/tolerances.hpp"

// Unital qubit maps in the Bloch picture, their complete-positivity
// certificate (the Choi matrix), one-sided application to two-qubit states,
// and the two-way translation between Pauli-diagonal maps and Bell mixtures.

namespace disent {

// Linear action on Bloch vectors; column j is the image of sigma_{j+1}.
// All maps here are unital (the identity component is untouched), so the
// matrix alone determines the channel candidate.
struct AffineBlochMap {
  std::array<double, 9> matrix{};
  bool unital = true;

  static AffineBlochMap identity() {
    AffineBlochMap m;
    m.matrix = {1, 0, 0, 0, 1, 0, 0, 0, 1};
    return m;
  }

  double& at(int r, int c) { return matrix[3 * r + c]; }
  double at(int r, int c) const { return matrix[3 * r + c]; }

  BlochVector apply(const BlochVector& v) const {
    return {at(0, 0) * v.x + at(0, 1) * v.y + at(0, 2) * v.z,
            at(1, 0) * v.x + at(1, 1) * v.y + at(1, 2) * v.z,
            at(2, 0) * v.x + at(2, 1) * v.y + at(2, 2) * v.z};
  }
};

// sigma_j -> lambda_j sigma_j. Allows the non-completely-positive region;
// only the |lambda_j| <= 1 box is enforced here.
struct PauliDiagonalMap {
  double lambda1;
  double lambda2;
  double lambda3;

  PauliDiagonalMap(double l1, double l2, double l3)
      : lambda1(l1), lambda2(l2), lambda3(l3) {
    for (double l : {l1, l2, l3}) {
      if (!(std::abs(l) <= 1.0 + tol::kWeight)) {
        throw LambdaOutOfRange("pauli map coefficient " + std::to_string(l) +
                               " outside [-1, 1]");
      }
    }
  }
};

// Probability weights over the Bell states, ordered (psi+, psi-, phi+, phi-).
struct BellMixture {
  double w1;
  double w2;
  double w3;
  double w4;

  BellMixture(double a, double b, double c, double d) : w1(a), w2(b), w3(c), w4(d) {
    double sum = 0.0;
    for (double* w : {&w1, &w2, &w3, &w4}) {
      if (*w < -tol::kWeight || *w > 1.0 + tol::kWeight) {
        throw InvariantViolation("Bell weight " + std::to_string(*w) +
                                 " outside [0, 1]");
      }
      sum += *w;
    }
    if (std::abs(sum - 1.0) > tol::kWeight) {
      throw InvariantViolation("Bell weights sum to " + std::to_string(sum));
    }
    // Clamp roundoff spill so downstream probabilities stay in range.
    for (double* w : {&w1, &w2, &w3, &w4}) {
      *w = std::min(1.0, std::max(0.0, *w));
    }
    const double clamped = w1 + w2 + w3 + w4;
    w1 /= clamped;
    w2 /= clamped;
    w3 /= clamped;
    w4 /= clamped;
  }

  std::array<double, 4> weights() const { return {w1, w2, w3, w4}; }
};

// Parameters of the equatorial machine's map. The machine-state overlaps here
// ("cos theta" etc.) are components of complex inner products, so they are
// bounded by 1 in modulus but need not come from a single real angle; the
// factory below covers the plain-angle case.
struct EquatorialMachineParams {
  double lambda;
  double cos_theta;
  double sin_theta;
  double sin_phi;

  static EquatorialMachineParams from_angles(double lambda, double theta,
                                             double phi) {
    return {lambda, std::cos(theta), std::sin(theta), std::sin(phi)};
  }
};

// Machine amplitudes realizing a Pauli-diagonal map as a Bell mixture.
struct DilationParams {
  double a0;
  double b0;
  double theta;
  double phi;

  std::array<double, 4> weights() const {
    const double ct = std::cos(theta), st = std::sin(theta);
    const double cf = std::cos(phi), sf = std::sin(phi);
    return {a0 * a0 * ct * ct, a0 * a0 * st * st, b0 * b0 * cf * cf,
            b0 * b0 * sf * sf};
  }
};

inline AffineBlochMap pauli_map(double l1, double l2, double l3) {
  const PauliDiagonalMap checked(l1, l2, l3);
  AffineBlochMap m;
  m.at(0, 0) = checked.lambda1;
  m.at(1, 1) = checked.lambda2;
  m.at(2, 2) = checked.lambda3;
  return m;
}

inline AffineBlochMap pauli_map(const PauliDiagonalMap& p) {
  return pauli_map(p.lambda1, p.lambda2, p.lambda3);
}

inline AffineBlochMap equatorial_map(const EquatorialMachineParams& p) {
  if (!(std::abs(p.lambda) < 1.0)) {
    throw LambdaOutOfRange("equatorial shrink factor must satisfy |lambda| < 1");
  }
  if (p.cos_theta * p.cos_theta + p.sin_theta * p.sin_theta >
          1.0 + tol::kWeight ||
      std::abs(p.sin_phi) > 1.0 + tol::kWeight) {
    throw InvariantViolation("equatorial machine overlaps exceed unit modulus");
  }
  AffineBlochMap m;
  m.at(0, 0) = p.lambda;
  m.at(2, 2) = p.lambda;
  m.at(0, 1) = (1.0 + p.lambda) * p.sin_theta;
  m.at(1, 1) = (1.0 + p.lambda) * p.cos_theta - p.lambda;
  m.at(2, 1) = -std::sqrt(1.0 - p.lambda * p.lambda) * p.sin_phi;
  return m;
}

// sigma_1 -> lambda sigma_1, sigma_3 -> lambda sigma_3,
// sigma_2 -> m sigma_1 + l sigma_2 + n sigma_3. No range policing: the
// feasibility analysis deliberately evaluates unphysical corners.
inline AffineBlochMap general_map_lmn(double lambda, double l, double m, double n) {
  AffineBlochMap out;
  out.at(0, 0) = lambda;
  out.at(2, 2) = lambda;
  out.at(0, 1) = m;
  out.at(1, 1) = l;
  out.at(2, 1) = n;
  return out;
}

// Transform one party of a two-qubit state: the marginal vector of the chosen
// side and the matching index of the correlation matrix pass through the
// Bloch matrix. Output is Hermitian and unit-trace by construction but is
// checked only structurally, since unphysical maps produce indefinite
// matrices on purpose.
inline DensityMatrix apply_one_side(const AffineBlochMap& map,
                                    const DensityMatrix& rho12, int side) {
  if (rho12.n_qubits() != 2) {
    throw WrongDimension("apply_one_side needs a two-qubit state");
  }
  if (side != 1 && side != 2) {
    throw BadSubsystemIndex("apply_one_side side must be 1 or 2");
  }
  CorrelationDecomposition d = decompose_correlations(rho12);
  CorrelationDecomposition out = d;
  if (side == 1) {
    out.r = map.apply(d.r);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double acc = 0.0;
        for (int k = 0; k < 3; ++k) acc += map.at(i, k) * d.t[k][j];
        out.t[i][j] = acc;
      }
  } else {
    out.s = map.apply(d.s);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double acc = 0.0;
        for (int k = 0; k < 3; ++k) acc += d.t[i][k] * map.at(j, k);
        out.t[i][j] = acc;
      }
  }
  return compose_correlations(out);
}

// Choi matrix (map (x) identity) applied to the phi+ projector. Positive
// semidefinite exactly when the map is completely positive.
inline ComplexMatrix choi_matrix(const AffineBlochMap& map) {
  const DensityMatrix phi(bell_projector(Bell::phi_plus), StateCheck::structural);
  return apply_one_side(map, phi, 1).matrix();
}

inline double choi_min_eigenvalue(const AffineBlochMap& map) {
  return min_hermitian_eigenvalue(choi_matrix(map));
}

inline bool is_physical(const AffineBlochMap& map) {
  return choi_min_eigenvalue(map) >= tol::kPsdFloor;
}

inline PauliDiagonalMap channel_to_map(const BellMixture& ch) {
  return PauliDiagonalMap(ch.w1 - ch.w2 + ch.w3 - ch.w4,
                          ch.w1 - ch.w2 - ch.w3 + ch.w4,
                          ch.w1 + ch.w2 - ch.w3 - ch.w4);
}

inline BellMixture map_to_channel(const PauliDiagonalMap& m) {
  const double w1 = (1.0 + m.lambda1 + m.lambda2 + m.lambda3) / 4.0;
  const double w2 = (1.0 - m.lambda1 - m.lambda2 + m.lambda3) / 4.0;
  const double w3 = (1.0 + m.lambda1 - m.lambda2 - m.lambda3) / 4.0;
  const double w4 = (1.0 - m.lambda1 + m.lambda2 - m.lambda3) / 4.0;
  for (double w : {w1, w2, w3, w4}) {
    if (w < -tol::kWeight) {
      throw NotCompletelyPositive("map has negative Bell weight " +
                                  std::to_string(w));
    }
  }
  return BellMixture(w1, w2, w3, w4);
}

// Machine amplitudes (a0, b0) and mixing angles reproducing the map's Bell
// weights. theta (resp. phi) is unconstrained when a0 (resp. b0) vanishes and
// is pinned to 0 for determinism.
inline DilationParams dilation_params(const PauliDiagonalMap& m) {
  DilationParams p{};
  p.a0 = std::sqrt(std::max(0.0, (1.0 + m.lambda3) / 2.0));
  p.b0 = std::sqrt(std::max(0.0, (1.0 - m.lambda3) / 2.0));
  auto half_acos = [](double c, const char* which) {
    if (std::abs(c) > 1.0 + tol::kCosineSlack) {
      throw NotCompletelyPositive(std::string(which) +
                                  " cosine outside [-1, 1]: " +
                                  std::to_string(c));
    }
    return 0.5 * std::acos(std::min(1.0, std::max(-1.0, c)));
  };
  // When an amplitude vanishes its angle multiplies nothing, but the matching
  // lambda combination must vanish too; otherwise no dilation exists.
  if (p.a0 > 1e-9) {
    p.theta = half_acos((m.lambda1 + m.lambda2) / (2.0 * p.a0 * p.a0), "theta");
  } else if (std::abs(m.lambda1 + m.lambda2) > tol::kCosineSlack) {
    throw NotCompletelyPositive("lambda1 + lambda2 must vanish when a0 = 0");
  }
  if (p.b0 > 1e-9) {
    p.phi = half_acos((m.lambda1 - m.lambda2) / (2.0 * p.b0 * p.b0), "phi");
  } else if (std::abs(m.lambda1 - m.lambda2) > tol::kCosineSlack) {
    throw NotCompletelyPositive("lambda1 - lambda2 must vanish when b0 = 0");
  }
  return p;
}

// Uniform sample on the weight simplex (gaps between sorted uniforms).
inline BellMixture random_bell_mixture(Rng& rng) {
  std::array<double, 3> cuts = {rng.uniform(), rng.uniform(), rng.uniform()};
  if (cuts[0] > cuts[1]) std::swap(cuts[0], cuts[1]);
  if (cuts[1] > cuts[2]) std::swap(cuts[1], cuts[2]);
  if (cuts[0] > cuts[1]) std::swap(cuts[0], cuts[1]);
  return BellMixture(cuts[0], cuts[1] - cuts[0], cuts[2] - cuts[1],
                     1.0 - cuts[2]);
}

}  // namespace disent

#endif  // DISENT_CHANNELS_HPP_
