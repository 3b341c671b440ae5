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

#ifndef DISENT_QSTATE_HPP_
#define DISENT_QSTATE_HPP_

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "disent/complex_matrix.hpp"
#include "disent/errors.hpp"
#include "disent/random.hpp"
#include "disent/tolerances.hpp"

// Dense density-matrix algebra for up to four qubits.
//
// Qubit ordering is big-endian: qubit 0 is the leftmost tensor factor, so the
// two-qubit computational basis is ordered |00>, |01>, |10>, |11> and qubit q
// owns bit (n-1-q) of a basis index.

namespace disent {

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

// Pauli basis: pauli(0) = I, pauli(1..3) = sigma_1..sigma_3.
inline const ComplexMatrix& pauli(int j) {
  static const std::array<ComplexMatrix, 4> basis = [] {
    std::array<ComplexMatrix, 4> b{ComplexMatrix(2), ComplexMatrix(2),
                                   ComplexMatrix(2), ComplexMatrix(2)};
    b[0] = ComplexMatrix::identity(2);
    b[1].at(0, 1) = 1.0;
    b[1].at(1, 0) = 1.0;
    b[2].at(0, 1) = Complex(0.0, -1.0);
    b[2].at(1, 0) = Complex(0.0, 1.0);
    b[3].at(0, 0) = 1.0;
    b[3].at(1, 1) = -1.0;
    return b;
  }();
  if (j < 0 || j > 3) throw BadSubsystemIndex("pauli index must be 0..3");
  return basis[j];
}

enum class Bell { psi_plus, psi_minus, phi_plus, phi_minus };

inline constexpr std::array<Bell, 4> kBellOrder = {
    Bell::psi_plus, Bell::psi_minus, Bell::phi_plus, Bell::phi_minus};

inline std::string_view bell_name(Bell b) {
  switch (b) {
    case Bell::psi_plus: return "psi+";
    case Bell::psi_minus: return "psi-";
    case Bell::phi_plus: return "phi+";
    case Bell::phi_minus: return "phi-";
  }
  throw Error("unreachable Bell label");
}

// psi+- = (|01> +- |10>)/sqrt2, phi+- = (|00> +- |11>)/sqrt2.
inline std::array<Complex, 4> bell_amplitudes(Bell b) {
  const double h = 1.0 / std::sqrt(2.0);
  switch (b) {
    case Bell::psi_plus: return {0.0, h, h, 0.0};
    case Bell::psi_minus: return {0.0, h, -h, 0.0};
    case Bell::phi_plus: return {h, 0.0, 0.0, h};
    case Bell::phi_minus: return {h, 0.0, 0.0, -h};
  }
  throw Error("unreachable Bell label");
}

inline const ComplexMatrix& bell_projector(Bell b) {
  static const std::array<ComplexMatrix, 4> projectors = [] {
    std::array<ComplexMatrix, 4> ps{ComplexMatrix(4), ComplexMatrix(4),
                                    ComplexMatrix(4), ComplexMatrix(4)};
    for (int k = 0; k < 4; ++k) {
      const auto amp = bell_amplitudes(kBellOrder[k]);
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) ps[k].at(r, c) = amp[r] * std::conj(amp[c]);
    }
    return ps;
  }();
  return projectors[static_cast<int>(b)];
}

// How much validation a DensityMatrix constructor performs.
//
// `full` additionally checks the eigenvalue floor and is the default for any
// matrix of unknown provenance (file input, hand-built matrices). Library
// operations that preserve positivity construct with `structural` (Hermiticity
// and unit trace only); one-sided channel application also uses `structural`
// because unphysical maps legitimately produce indefinite output that callers
// then inspect.
enum class StateCheck { full, structural };

class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix m, StateCheck check = StateCheck::full)
      : mat_(std::move(m)) {
    switch (mat_.dim()) {
      case 2: n_qubits_ = 1; break;
      case 4: n_qubits_ = 2; break;
      case 8: n_qubits_ = 3; break;
      case 16: n_qubits_ = 4; break;
      default:
        throw WrongDimension("DensityMatrix dimension must be 2, 4, 8 or 16");
    }
    const double defect = mat_.hermiticity_defect();
    if (defect > tol::kHermitian) {
      throw NotHermitian("density matrix Hermiticity defect " +
                         std::to_string(defect));
    }
    const Complex tr = mat_.trace();
    if (std::abs(tr - Complex(1.0, 0.0)) > tol::kTrace) {
      throw InvariantViolation("density matrix trace is not 1");
    }
    if (check == StateCheck::full) {
      const double lo = min_eigenvalue();
      if (lo < tol::kPsdFloor) {
        throw InvariantViolation("density matrix eigenvalue " +
                                 std::to_string(lo) + " below the PSD floor");
      }
    }
  }

  // Projector onto the given amplitudes (normalized first).
  static DensityMatrix pure(const std::vector<Complex>& amplitudes) {
    const int dim = static_cast<int>(amplitudes.size());
    double norm2 = 0.0;
    for (const Complex& z : amplitudes) norm2 += std::norm(z);
    if (norm2 < 1e-15) throw InvariantViolation("pure state has zero norm");
    const double inv = 1.0 / norm2;
    ComplexMatrix m(dim);
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c)
        m.at(r, c) = amplitudes[r] * std::conj(amplitudes[c]) * inv;
    return DensityMatrix(std::move(m), StateCheck::structural);
  }

  static DensityMatrix maximally_mixed(int n_qubits) {
    const int dim = 1 << n_qubits;
    ComplexMatrix m = ComplexMatrix::identity(dim);
    return DensityMatrix((1.0 / dim) * m, StateCheck::structural);
  }

  int n_qubits() const { return n_qubits_; }
  int dim() const { return mat_.dim(); }
  const ComplexMatrix& matrix() const { return mat_; }

  double min_eigenvalue() const { return hermitian_eigenvalues(mat_).front(); }

 private:
  ComplexMatrix mat_;
  int n_qubits_;
};

// rho = (I + x sigma_1 + y sigma_2 + z sigma_3) / 2
inline DensityMatrix bloch_to_density(const BlochVector& r) {
  if (r.norm() > 1.0 + tol::kBlochNorm) {
    throw BlochNormExceeded("Bloch norm " + std::to_string(r.norm()) +
                            " exceeds 1");
  }
  ComplexMatrix m(2);
  m.at(0, 0) = 0.5 * (1.0 + r.z);
  m.at(0, 1) = 0.5 * Complex(r.x, -r.y);
  m.at(1, 0) = 0.5 * Complex(r.x, r.y);
  m.at(1, 1) = 0.5 * (1.0 - r.z);
  return DensityMatrix(std::move(m), StateCheck::structural);
}

inline BlochVector density_to_bloch(const DensityMatrix& rho) {
  if (rho.dim() != 2) throw WrongDimension("density_to_bloch needs one qubit");
  const ComplexMatrix& m = rho.matrix();
  BlochVector r;
  r.x = (m.at(0, 1) + m.at(1, 0)).real();
  r.y = (Complex(0.0, 1.0) * (m.at(0, 1) - m.at(1, 0))).real();
  r.z = (m.at(0, 0) - m.at(1, 1)).real();
  return r;
}

inline DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.n_qubits() + b.n_qubits() > 4) {
    throw DimensionOverflow("tensor product exceeds four qubits");
  }
  return DensityMatrix(kron(a.matrix(), b.matrix()), StateCheck::structural);
}

namespace detail {

inline void check_subsystems(int n_qubits, const std::vector<int>& subs,
                             const char* what) {
  if (subs.empty()) throw BadSubsystemIndex(std::string(what) + ": empty index list");
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (subs[i] < 0 || subs[i] >= n_qubits) {
      throw BadSubsystemIndex(std::string(what) + ": qubit " +
                              std::to_string(subs[i]) + " out of range");
    }
    for (std::size_t j = i + 1; j < subs.size(); ++j) {
      if (subs[i] == subs[j]) {
        throw BadSubsystemIndex(std::string(what) + ": duplicate qubit index");
      }
    }
  }
}

// Scatter a value's bits onto the listed qubits of an n-qubit basis index.
// Bit a (big-endian) of `value` goes to qubit subs[a].
inline int scatter_bits(int value, const std::vector<int>& subs, int n_qubits) {
  const int k = static_cast<int>(subs.size());
  int index = 0;
  for (int a = 0; a < k; ++a) {
    if ((value >> (k - 1 - a)) & 1) index |= 1 << (n_qubits - 1 - subs[a]);
  }
  return index;
}

inline std::vector<int> complement(int n_qubits, const std::vector<int>& subs) {
  std::vector<int> rest;
  for (int q = 0; q < n_qubits; ++q) {
    bool found = false;
    for (int s : subs) found = found || (s == q);
    if (!found) rest.push_back(q);
  }
  return rest;
}

// Embed a 2^k-dimensional operator acting on the listed qubits into the full
// 2^n-dimensional space (identity elsewhere).
inline ComplexMatrix embed(const ComplexMatrix& op, const std::vector<int>& targets,
                           int n_qubits) {
  const int dim = 1 << n_qubits;
  const int k = static_cast<int>(targets.size());
  const std::vector<int> rest = complement(n_qubits, targets);
  const int rest_count = n_qubits - k;
  ComplexMatrix full(dim);
  for (int x = 0; x < (1 << k); ++x) {
    for (int y = 0; y < (1 << k); ++y) {
      const Complex v = op.at(x, y);
      if (v == Complex(0.0, 0.0)) continue;
      for (int m = 0; m < (1 << rest_count); ++m) {
        const int fixed = scatter_bits(m, rest, n_qubits);
        full.at(scatter_bits(x, targets, n_qubits) | fixed,
                scatter_bits(y, targets, n_qubits) | fixed) = v;
      }
    }
  }
  return full;
}

}  // namespace detail

// Reduced state on the kept qubits, in the order listed (so keeping all qubits
// in a permuted order relabels them).
inline DensityMatrix partial_trace(const DensityMatrix& rho,
                                   const std::vector<int>& keep) {
  detail::check_subsystems(rho.n_qubits(), keep, "partial_trace");
  const int n = rho.n_qubits();
  const int k = static_cast<int>(keep.size());
  const std::vector<int> traced = detail::complement(n, keep);
  const int t = n - k;
  ComplexMatrix out(1 << k);
  for (int i = 0; i < (1 << k); ++i) {
    for (int j = 0; j < (1 << k); ++j) {
      Complex acc = 0.0;
      for (int m = 0; m < (1 << t); ++m) {
        const int fixed = detail::scatter_bits(m, traced, n);
        acc += rho.matrix().at(detail::scatter_bits(i, keep, n) | fixed,
                               detail::scatter_bits(j, keep, n) | fixed);
      }
      out.at(i, j) = acc;
    }
  }
  return DensityMatrix(std::move(out), StateCheck::structural);
}

// U rho U^dagger with U acting on the listed target qubits.
inline DensityMatrix apply_unitary(const DensityMatrix& rho, const ComplexMatrix& u,
                                   const std::vector<int>& targets) {
  detail::check_subsystems(rho.n_qubits(), targets, "apply_unitary");
  const int k = static_cast<int>(targets.size());
  if (u.dim() != (1 << k)) {
    throw WrongDimension("apply_unitary: operator dimension does not match targets");
  }
  const ComplexMatrix gram = u.adjoint() * u;
  if (gram.max_abs_diff(ComplexMatrix::identity(u.dim())) > tol::kUnitary) {
    throw NotUnitary("apply_unitary: U^dagger U deviates from identity");
  }
  const ComplexMatrix full = detail::embed(u, targets, rho.n_qubits());
  return DensityMatrix(full * rho.matrix() * full.adjoint(), StateCheck::structural);
}

struct MeasurementBranch {
  double probability = 0.0;
  // Absent when probability <= tol::kDeadBranch (no normalized post-state).
  std::optional<DensityMatrix> state;
};

// Projective measurement on the listed target qubits. The projector list must
// be Hermitian, idempotent, and complete on the targets' space.
inline std::vector<MeasurementBranch> measure_projective(
    const DensityMatrix& rho, const std::vector<ComplexMatrix>& projectors,
    const std::vector<int>& targets) {
  detail::check_subsystems(rho.n_qubits(), targets, "measure_projective");
  const int k = static_cast<int>(targets.size());
  const int pdim = 1 << k;
  if (projectors.empty()) throw NotAProjectorSet("empty projector list");
  ComplexMatrix sum(pdim);
  for (const ComplexMatrix& p : projectors) {
    if (p.dim() != pdim) {
      throw NotAProjectorSet("projector dimension does not match targets");
    }
    if (p.hermiticity_defect() > tol::kProjector) {
      throw NotAProjectorSet("projector is not Hermitian");
    }
    if ((p * p).max_abs_diff(p) > tol::kProjector) {
      throw NotAProjectorSet("projector is not idempotent");
    }
    sum = sum + p;
  }
  if (sum.max_abs_diff(ComplexMatrix::identity(pdim)) > tol::kProjector) {
    throw NotAProjectorSet("projectors do not sum to the identity");
  }

  std::vector<MeasurementBranch> branches;
  branches.reserve(projectors.size());
  for (const ComplexMatrix& p : projectors) {
    const ComplexMatrix full = detail::embed(p, targets, rho.n_qubits());
    const ComplexMatrix updated = full * rho.matrix() * full;
    const double prob = updated.trace().real();
    MeasurementBranch branch;
    branch.probability = prob;
    if (prob > tol::kDeadBranch) {
      branch.state =
          DensityMatrix((1.0 / prob) * updated, StateCheck::structural);
    }
    branches.push_back(std::move(branch));
  }
  return branches;
}

// Partial transpose of a two-qubit state over party 1 or party 2. Returned as
// a raw matrix: it is Hermitian and unit-trace but may be indefinite.
inline ComplexMatrix partial_transpose(const DensityMatrix& rho, int party) {
  if (rho.n_qubits() != 2) throw WrongDimension("partial_transpose needs two qubits");
  if (party != 1 && party != 2) {
    throw BadSubsystemIndex("partial_transpose party must be 1 or 2");
  }
  ComplexMatrix out(4);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) {
          const Complex v = rho.matrix().at(2 * a + b, 2 * c + d);
          if (party == 1) {
            out.at(2 * c + b, 2 * a + d) = v;
          } else {
            out.at(2 * a + d, 2 * c + b) = v;
          }
        }
  return out;
}

struct SeparabilityVerdict {
  bool separable = false;
  double min_pt_eigenvalue = 0.0;
};

// Peres-Horodecki test; for two qubits PPT is necessary and sufficient, so the
// verdict is exact up to the eigenvalue floor.
inline SeparabilityVerdict is_separable_2x2(const DensityMatrix& rho) {
  const double lo = min_hermitian_eigenvalue(partial_transpose(rho, 2));
  return {lo >= tol::kPsdFloor, lo};
}

// Convex mixture of states of equal dimension.
inline DensityMatrix mix(const std::vector<std::pair<double, DensityMatrix>>& parts) {
  if (parts.empty()) throw InvariantViolation("mix of nothing");
  double total = 0.0;
  ComplexMatrix acc(parts.front().second.dim());
  for (const auto& [w, state] : parts) {
    if (w < -tol::kWeight) throw InvariantViolation("negative mixture weight");
    if (state.dim() != acc.dim()) throw WrongDimension("mix of unequal dimensions");
    acc = acc + w * state.matrix();
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw InvariantViolation("mixture weights sum to " + std::to_string(total));
  }
  return DensityMatrix((1.0 / total) * acc, StateCheck::structural);
}

// (1/2) tr |a - b|
inline double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) throw WrongDimension("trace_distance of unequal dimensions");
  double sum = 0.0;
  for (double e : hermitian_eigenvalues(a.matrix() - b.matrix())) sum += std::abs(e);
  return 0.5 * sum;
}

// rho12 = (1/4)[I(x)I + r.sigma(x)I + I(x)s.sigma + sum_ij t_ij sigma_i(x)sigma_j]
struct CorrelationDecomposition {
  BlochVector r;                            // party 1 marginal
  BlochVector s;                            // party 2 marginal
  std::array<std::array<double, 3>, 3> t{};  // correlation matrix t_ij
};

inline CorrelationDecomposition decompose_correlations(const DensityMatrix& rho12) {
  if (rho12.n_qubits() != 2) {
    throw WrongDimension("decompose_correlations needs two qubits");
  }
  auto expect = [&rho12](const ComplexMatrix& op) {
    return (rho12.matrix() * op).trace().real();
  };
  CorrelationDecomposition d;
  d.r.x = expect(kron(pauli(1), pauli(0)));
  d.r.y = expect(kron(pauli(2), pauli(0)));
  d.r.z = expect(kron(pauli(3), pauli(0)));
  d.s.x = expect(kron(pauli(0), pauli(1)));
  d.s.y = expect(kron(pauli(0), pauli(2)));
  d.s.z = expect(kron(pauli(0), pauli(3)));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      d.t[i][j] = expect(kron(pauli(i + 1), pauli(j + 1)));
  return d;
}

// Reassembly; indefinite coefficient sets are the caller's concern, so the
// result is checked structurally only.
inline DensityMatrix compose_correlations(const CorrelationDecomposition& d) {
  const double r[3] = {d.r.x, d.r.y, d.r.z};
  const double s[3] = {d.s.x, d.s.y, d.s.z};
  ComplexMatrix acc = kron(pauli(0), pauli(0));
  for (int i = 0; i < 3; ++i) {
    acc = acc + r[i] * kron(pauli(i + 1), pauli(0));
    acc = acc + s[i] * kron(pauli(0), pauli(i + 1));
    for (int j = 0; j < 3; ++j)
      acc = acc + d.t[i][j] * kron(pauli(i + 1), pauli(j + 1));
  }
  return DensityMatrix(0.25 * acc, StateCheck::structural);
}

// ---- Seeded sampling helpers (deterministic; see random.hpp) ----

inline BlochVector random_bloch_vector(Rng& rng) {
  for (;;) {
    BlochVector r{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0),
                  rng.uniform(-1.0, 1.0)};
    if (r.norm() <= 1.0) return r;
  }
}

inline DensityMatrix random_single_qubit_state(Rng& rng) {
  return bloch_to_density(random_bloch_vector(rng));
}

// Pure state with independent complex-Gaussian amplitudes, normalized.
inline DensityMatrix random_pure_state(Rng& rng, int n_qubits) {
  const int dim = 1 << n_qubits;
  std::vector<Complex> amps(dim);
  for (Complex& z : amps) z = Complex(rng.gaussian(), rng.gaussian());
  return DensityMatrix::pure(amps);
}

// Full-rank mixed state G G^dagger / tr(G G^dagger), G complex Gaussian.
inline DensityMatrix random_mixed_state(Rng& rng, int n_qubits) {
  const int dim = 1 << n_qubits;
  ComplexMatrix g(dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) g.at(r, c) = Complex(rng.gaussian(), rng.gaussian());
  ComplexMatrix m = g * g.adjoint();
  return DensityMatrix((1.0 / m.trace().real()) * m, StateCheck::structural);
}

inline DensityMatrix random_product_state(Rng& rng) {
  const DensityMatrix a = random_single_qubit_state(rng);
  const DensityMatrix b = random_single_qubit_state(rng);
  return tensor(a, b);
}

// Haar-ish 2x2 unitary from Gram-Schmidt on Gaussian columns.
inline ComplexMatrix random_unitary_2x2(Rng& rng) {
  for (;;) {
    Complex v0(rng.gaussian(), rng.gaussian()), v1(rng.gaussian(), rng.gaussian());
    double n0 = std::sqrt(std::norm(v0) + std::norm(v1));
    if (n0 < 1e-6) continue;
    v0 /= n0;
    v1 /= n0;
    Complex w0(rng.gaussian(), rng.gaussian()), w1(rng.gaussian(), rng.gaussian());
    const Complex overlap = std::conj(v0) * w0 + std::conj(v1) * w1;
    w0 -= overlap * v0;
    w1 -= overlap * v1;
    const double n1 = std::sqrt(std::norm(w0) + std::norm(w1));
    if (n1 < 1e-6) continue;
    ComplexMatrix u(2);
    u.at(0, 0) = v0;
    u.at(1, 0) = v1;
    u.at(0, 1) = w0 / n1;
    u.at(1, 1) = w1 / n1;
    return u;
  }
}

// Entangled pure two-qubit state: Schmidt form a|00> + b|11> (a kept away from
// the product-state endpoints) dressed with independent local unitaries.
inline DensityMatrix random_entangled_pure_state(Rng& rng) {
  double a = rng.uniform();
  while (a < 1e-3 || a > 1.0 - 1e-3) a = rng.uniform();
  const double b = std::sqrt(1.0 - a * a);
  DensityMatrix psi = DensityMatrix::pure({a, 0.0, 0.0, b});
  psi = apply_unitary(psi, random_unitary_2x2(rng), {0});
  psi = apply_unitary(psi, random_unitary_2x2(rng), {1});
  return psi;
}

}  // namespace disent

#endif  // DISENT_QSTATE_HPP_
