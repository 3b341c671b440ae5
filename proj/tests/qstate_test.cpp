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

#include "disent/qstate.hpp"

#include <cmath>
#include <vector>

#include "gtest/gtest.h"

namespace disent {
namespace {

// LU determinant with partial pivoting. Used as an eigensolver oracle that
// shares no code with the Jacobi sweep: each reported eigenvalue must be a
// root of the characteristic polynomial.
Complex determinant(ComplexMatrix m) {
  const int n = m.dim();
  Complex det = 1.0;
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::abs(m.at(r, col)) > std::abs(m.at(pivot, col))) pivot = r;
    }
    if (std::abs(m.at(pivot, col)) == 0.0) return 0.0;
    if (pivot != col) {
      for (int c = 0; c < n; ++c) std::swap(m.at(pivot, c), m.at(col, c));
      det = -det;
    }
    det *= m.at(col, col);
    for (int r = col + 1; r < n; ++r) {
      const Complex factor = m.at(r, col) / m.at(col, col);
      for (int c = col; c < n; ++c) m.at(r, c) -= factor * m.at(col, c);
    }
  }
  return det;
}

ComplexMatrix random_hermitian(Rng& rng, int dim) {
  ComplexMatrix m(dim);
  for (int r = 0; r < dim; ++r) {
    m.at(r, r) = rng.gaussian();
    for (int c = r + 1; c < dim; ++c) {
      const Complex z(rng.gaussian(), rng.gaussian());
      m.at(r, c) = z;
      m.at(c, r) = std::conj(z);
    }
  }
  return m;
}

TEST(Eigensolver, DiagonalMatrixSortsAscending) {
  ComplexMatrix m(3);
  m.at(0, 0) = 3.0;
  m.at(1, 1) = 1.0;
  m.at(2, 2) = 2.0;
  const std::vector<double> eigs = hermitian_eigenvalues(m);
  ASSERT_EQ(eigs.size(), 3u);
  EXPECT_NEAR(eigs[0], 1.0, 1e-14);
  EXPECT_NEAR(eigs[1], 2.0, 1e-14);
  EXPECT_NEAR(eigs[2], 3.0, 1e-14);
}

TEST(Eigensolver, PauliXHasPlusMinusOne) {
  const std::vector<double> eigs = hermitian_eigenvalues(pauli(1));
  ASSERT_EQ(eigs.size(), 2u);
  EXPECT_NEAR(eigs[0], -1.0, 1e-14);
  EXPECT_NEAR(eigs[1], 1.0, 1e-14);
}

TEST(Eigensolver, RejectsNonHermitianInput) {
  ComplexMatrix m(2);
  m.at(0, 1) = 1.0;  // upper-triangular, clearly not Hermitian
  EXPECT_THROW(hermitian_eigenvalues(m), NotHermitian);
}

TEST(Eigensolver, CharacteristicResidualVanishesOnRandomHermitian) {
  Rng rng(12345);
  for (int dim : {2, 3, 4, 8}) {
    for (int rep = 0; rep < 20; ++rep) {
      const ComplexMatrix m = random_hermitian(rng, dim);
      const std::vector<double> eigs = hermitian_eigenvalues(m);
      // Loose absolute bound: the product of the remaining (eig - lambda)
      // factors is at most (2 * dim * max|entry|)^(dim-1), and the root
      // itself is accurate to ~1e-13.
      const double bound =
          1e-9 * std::pow(2.0 * dim * std::max(1.0, m.max_abs()), dim - 1);
      for (double lambda : eigs) {
        const ComplexMatrix shifted =
            m - lambda * ComplexMatrix::identity(dim);
        EXPECT_LT(std::abs(determinant(shifted)), bound)
            << "dim=" << dim << " lambda=" << lambda;
      }
    }
  }
}

TEST(Eigensolver, SumAndProductMatchTraceAndDeterminant) {
  Rng rng(777);
  for (int rep = 0; rep < 25; ++rep) {
    const ComplexMatrix m = random_hermitian(rng, 4);
    const std::vector<double> eigs = hermitian_eigenvalues(m);
    double sum = 0.0, prod = 1.0;
    for (double e : eigs) {
      sum += e;
      prod *= e;
    }
    EXPECT_NEAR(sum, m.trace().real(), 1e-11);
    const Complex det = determinant(m);
    EXPECT_NEAR(det.imag(), 0.0, 1e-9 * std::max(1.0, std::abs(det)));
    EXPECT_NEAR(prod, det.real(), 1e-8 * std::max(1.0, std::abs(det)));
  }
}

TEST(Pauli, MultiplicationTable) {
  const Complex i(0.0, 1.0);
  EXPECT_LT((pauli(1) * pauli(2) - i * pauli(3)).max_abs(), 1e-15);
  EXPECT_LT((pauli(2) * pauli(3) - i * pauli(1)).max_abs(), 1e-15);
  EXPECT_LT((pauli(3) * pauli(1) - i * pauli(2)).max_abs(), 1e-15);
  for (int j = 1; j <= 3; ++j) {
    EXPECT_LT((pauli(j) * pauli(j) - pauli(0)).max_abs(), 1e-15);
  }
}

TEST(Bell, AmplitudesAreOrthonormal) {
  for (Bell a : kBellOrder) {
    for (Bell b : kBellOrder) {
      const auto va = bell_amplitudes(a);
      const auto vb = bell_amplitudes(b);
      Complex dot = 0.0;
      for (int k = 0; k < 4; ++k) dot += std::conj(va[k]) * vb[k];
      EXPECT_NEAR(std::abs(dot), a == b ? 1.0 : 0.0, 1e-15);
    }
  }
}

TEST(Bell, ProjectorsResolveTheIdentity) {
  ComplexMatrix sum(4);
  for (Bell b : kBellOrder) sum = sum + bell_projector(b);
  EXPECT_LT(sum.max_abs_diff(ComplexMatrix::identity(4)), 1e-15);
}

TEST(DensityMatrix, RejectsBadTrace) {
  EXPECT_THROW(DensityMatrix(ComplexMatrix::identity(2)), InvariantViolation);
}

TEST(DensityMatrix, RejectsNonHermitian) {
  ComplexMatrix m(2);
  m.at(0, 0) = 1.0;
  m.at(0, 1) = 0.5;
  EXPECT_THROW(DensityMatrix{m}, NotHermitian);
}

TEST(DensityMatrix, RejectsNegativeEigenvalue) {
  ComplexMatrix m(2);
  m.at(0, 0) = 1.5;
  m.at(1, 1) = -0.5;
  EXPECT_THROW(DensityMatrix{m}, InvariantViolation);
}

TEST(DensityMatrix, RejectsNonQubitDimension) {
  ComplexMatrix m = ComplexMatrix::identity(3);
  EXPECT_THROW(DensityMatrix((1.0 / 3.0) * m), WrongDimension);
}

TEST(DensityMatrix, PureNormalizesItsInput) {
  const DensityMatrix rho = DensityMatrix::pure({2.0, 0.0});
  EXPECT_NEAR(rho.matrix().at(0, 0).real(), 1.0, 1e-15);
  EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-15);
}

TEST(Bloch, RoundTripIsTight) {
  Rng rng(42);
  for (int rep = 0; rep < 100; ++rep) {
    const BlochVector r = random_bloch_vector(rng);
    const BlochVector back = density_to_bloch(bloch_to_density(r));
    EXPECT_NEAR(back.x, r.x, 1e-15);
    EXPECT_NEAR(back.y, r.y, 1e-15);
    EXPECT_NEAR(back.z, r.z, 1e-15);
  }
}

TEST(Bloch, RejectsVectorOutsideTheBall) {
  EXPECT_THROW(bloch_to_density({1.0, 1.0, 0.0}), BlochNormExceeded);
}

TEST(PartialTrace, ProductStateMarginals) {
  Rng rng(7);
  for (int rep = 0; rep < 50; ++rep) {
    const DensityMatrix a = random_single_qubit_state(rng);
    const DensityMatrix b = random_single_qubit_state(rng);
    const DensityMatrix ab = tensor(a, b);
    EXPECT_LT(partial_trace(ab, {0}).matrix().max_abs_diff(a.matrix()), 1e-14);
    EXPECT_LT(partial_trace(ab, {1}).matrix().max_abs_diff(b.matrix()), 1e-14);
  }
}

TEST(PartialTrace, KeepOrderRelabelsParties) {
  Rng rng(8);
  const DensityMatrix a = random_single_qubit_state(rng);
  const DensityMatrix b = random_single_qubit_state(rng);
  const DensityMatrix swapped = partial_trace(tensor(a, b), {1, 0});
  EXPECT_LT(swapped.matrix().max_abs_diff(tensor(b, a).matrix()), 1e-14);
}

TEST(PartialTrace, KeepingEverythingInOrderIsIdentity) {
  Rng rng(9);
  const DensityMatrix rho = random_mixed_state(rng, 2);
  EXPECT_LT(partial_trace(rho, {0, 1}).matrix().max_abs_diff(rho.matrix()),
            1e-15);
}

TEST(PartialTrace, RejectsBadIndices) {
  Rng rng(10);
  const DensityMatrix rho = random_mixed_state(rng, 2);
  EXPECT_THROW(partial_trace(rho, {2}), BadSubsystemIndex);
  EXPECT_THROW(partial_trace(rho, {0, 0}), BadSubsystemIndex);
}

TEST(ApplyUnitary, BitFlipOnLeftQubit) {
  const DensityMatrix rho = DensityMatrix::pure({1.0, 0.0, 0.0, 0.0});
  const DensityMatrix flipped = apply_unitary(rho, pauli(1), {0});
  // |00> -> |10>, i.e. all weight on basis index 2.
  EXPECT_NEAR(flipped.matrix().at(2, 2).real(), 1.0, 1e-15);
}

TEST(ApplyUnitary, RejectsNonUnitaryOperator) {
  const DensityMatrix rho = DensityMatrix::maximally_mixed(1);
  ComplexMatrix m(2);
  m.at(0, 0) = 2.0;
  m.at(1, 1) = 1.0;
  EXPECT_THROW(apply_unitary(rho, m, {0}), NotUnitary);
}

TEST(Measurement, ComputationalBasisProbabilities) {
  const BlochVector r{0.3, -0.2, 0.6};
  const DensityMatrix rho = bloch_to_density(r);
  std::vector<ComplexMatrix> projectors(2, ComplexMatrix(2));
  projectors[0].at(0, 0) = 1.0;
  projectors[1].at(1, 1) = 1.0;
  const auto branches = measure_projective(rho, projectors, {0});
  ASSERT_EQ(branches.size(), 2u);
  EXPECT_NEAR(branches[0].probability, 0.5 * (1.0 + r.z), 1e-15);
  EXPECT_NEAR(branches[1].probability, 0.5 * (1.0 - r.z), 1e-15);
  ASSERT_TRUE(branches[0].state.has_value());
  EXPECT_NEAR(branches[0].state->matrix().at(0, 0).real(), 1.0, 1e-13);
}

TEST(Measurement, DeadBranchCarriesNoState) {
  const DensityMatrix rho = DensityMatrix::pure({1.0, 0.0});
  std::vector<ComplexMatrix> projectors(2, ComplexMatrix(2));
  projectors[0].at(0, 0) = 1.0;
  projectors[1].at(1, 1) = 1.0;
  const auto branches = measure_projective(rho, projectors, {0});
  EXPECT_NEAR(branches[1].probability, 0.0, 1e-15);
  EXPECT_FALSE(branches[1].state.has_value());
}

TEST(Measurement, RejectsIncompleteProjectorSet) {
  const DensityMatrix rho = DensityMatrix::maximally_mixed(1);
  std::vector<ComplexMatrix> projectors(1, ComplexMatrix(2));
  projectors[0].at(0, 0) = 1.0;
  EXPECT_THROW(measure_projective(rho, projectors, {0}), NotAProjectorSet);
}

TEST(Measurement, RejectsNonIdempotentOperator) {
  const DensityMatrix rho = DensityMatrix::maximally_mixed(1);
  std::vector<ComplexMatrix> projectors(1, ComplexMatrix(2));
  projectors[0].at(0, 0) = 0.5;
  projectors[0].at(1, 1) = 0.5;
  EXPECT_THROW(measure_projective(rho, projectors, {0}), NotAProjectorSet);
}

TEST(Measurement, BranchMixtureEqualsDecoheredState) {
  Rng rng(11);
  const DensityMatrix rho = random_mixed_state(rng, 2);
  std::vector<ComplexMatrix> projectors(2, ComplexMatrix(2));
  projectors[0].at(0, 0) = 1.0;
  projectors[1].at(1, 1) = 1.0;
  const auto branches = measure_projective(rho, projectors, {0});
  std::vector<std::pair<double, DensityMatrix>> parts;
  for (const auto& br : branches) parts.emplace_back(br.probability, *br.state);
  const DensityMatrix averaged = mix(parts);
  // Off-diagonal blocks between qubit-0 sectors must vanish; diagonal blocks
  // must survive untouched.
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      const Complex expected =
          (r / 2 == c / 2) ? rho.matrix().at(r, c) : Complex(0.0, 0.0);
      EXPECT_LT(std::abs(averaged.matrix().at(r, c) - expected), 1e-13);
    }
  }
}

TEST(PartialTranspose, BellPhiPlusSpectrum) {
  const DensityMatrix rho(bell_projector(Bell::phi_plus));
  const std::vector<double> eigs =
      hermitian_eigenvalues(partial_transpose(rho, 2));
  ASSERT_EQ(eigs.size(), 4u);
  EXPECT_NEAR(eigs[0], -0.5, 1e-14);
  EXPECT_NEAR(eigs[1], 0.5, 1e-14);
  EXPECT_NEAR(eigs[2], 0.5, 1e-14);
  EXPECT_NEAR(eigs[3], 0.5, 1e-14);
}

TEST(PartialTranspose, SpectrumIsPartyIndependent) {
  Rng rng(13);
  for (int rep = 0; rep < 30; ++rep) {
    const DensityMatrix rho = random_mixed_state(rng, 2);
    const auto e1 = hermitian_eigenvalues(partial_transpose(rho, 1));
    const auto e2 = hermitian_eigenvalues(partial_transpose(rho, 2));
    for (int k = 0; k < 4; ++k) EXPECT_NEAR(e1[k], e2[k], 1e-11);
  }
}

TEST(PartialTranspose, IsAnInvolution) {
  Rng rng(14);
  const DensityMatrix rho = random_mixed_state(rng, 2);
  const ComplexMatrix once = partial_transpose(rho, 1);
  const DensityMatrix wrapped(once, StateCheck::structural);
  EXPECT_LT(
      partial_transpose(wrapped, 1).max_abs_diff(rho.matrix()), 1e-15);
}

TEST(Separability, ProductStatesPassThePptTest) {
  Rng rng(1001);
  for (int rep = 0; rep < 200; ++rep) {
    const auto verdict = is_separable_2x2(random_product_state(rng));
    EXPECT_TRUE(verdict.separable);
    EXPECT_GT(verdict.min_pt_eigenvalue, -1e-12);
  }
}

TEST(Separability, EntangledPureStatesFailThePptTest) {
  Rng rng(1002);
  for (int rep = 0; rep < 200; ++rep) {
    const auto verdict = is_separable_2x2(random_entangled_pure_state(rng));
    EXPECT_FALSE(verdict.separable);
    EXPECT_LT(verdict.min_pt_eigenvalue, -1e-5);
  }
}

TEST(Separability, MixturesOfProductStatesStaySeparable) {
  Rng rng(1003);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<std::pair<double, DensityMatrix>> parts;
    const double w = rng.uniform();
    parts.emplace_back(w, random_product_state(rng));
    parts.emplace_back(1.0 - w, random_product_state(rng));
    EXPECT_TRUE(is_separable_2x2(mix(parts)).separable);
  }
}

TEST(TraceDistance, KnownValues) {
  const DensityMatrix zero = DensityMatrix::pure({1.0, 0.0});
  const DensityMatrix one = DensityMatrix::pure({0.0, 1.0});
  EXPECT_NEAR(trace_distance(zero, one), 1.0, 1e-15);
  EXPECT_NEAR(trace_distance(zero, zero), 0.0, 1e-15);
  EXPECT_NEAR(trace_distance(zero, DensityMatrix::maximally_mixed(1)), 0.5,
              1e-13);
}

TEST(Correlations, BellPhiPlusCoefficients) {
  const DensityMatrix rho(bell_projector(Bell::phi_plus));
  const CorrelationDecomposition d = decompose_correlations(rho);
  EXPECT_NEAR(d.r.norm(), 0.0, 1e-15);
  EXPECT_NEAR(d.s.norm(), 0.0, 1e-15);
  const double expected[3][3] = {{1, 0, 0}, {0, -1, 0}, {0, 0, 1}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(d.t[i][j], expected[i][j], 1e-15);
}

TEST(Correlations, RoundTripOnRandomStates) {
  Rng rng(2024);
  for (int rep = 0; rep < 50; ++rep) {
    const DensityMatrix rho = random_mixed_state(rng, 2);
    const DensityMatrix back = compose_correlations(decompose_correlations(rho));
    EXPECT_LT(back.matrix().max_abs_diff(rho.matrix()), 1e-13);
  }
}

TEST(Mix, RejectsUnnormalizedWeights) {
  const DensityMatrix rho = DensityMatrix::maximally_mixed(1);
  EXPECT_THROW(mix({{0.4, rho}, {0.4, rho}}), InvariantViolation);
  EXPECT_THROW(mix({{-0.1, rho}, {1.1, rho}}), InvariantViolation);
}

TEST(Random, Unitary2x2IsUnitary) {
  Rng rng(31);
  for (int rep = 0; rep < 100; ++rep) {
    const ComplexMatrix u = random_unitary_2x2(rng);
    EXPECT_LT((u.adjoint() * u).max_abs_diff(ComplexMatrix::identity(2)),
              1e-13);
  }
}

TEST(Random, EntangledPureStateIsPureWithMatchedMarginals) {
  Rng rng(32);
  for (int rep = 0; rep < 50; ++rep) {
    const DensityMatrix psi = random_entangled_pure_state(rng);
    const ComplexMatrix sq = psi.matrix() * psi.matrix();
    EXPECT_NEAR(sq.trace().real(), 1.0, 1e-12);  // purity
    const auto ma = hermitian_eigenvalues(partial_trace(psi, {0}).matrix());
    const auto mb = hermitian_eigenvalues(partial_trace(psi, {1}).matrix());
    EXPECT_NEAR(ma[0], mb[0], 1e-12);  // equal Schmidt spectra
    EXPECT_NEAR(ma[1], mb[1], 1e-12);
  }
}

TEST(Random, MixedStatesAreValidFullStates) {
  Rng rng(33);
  for (int rep = 0; rep < 50; ++rep) {
    const DensityMatrix rho = random_mixed_state(rng, 2);
    EXPECT_GT(rho.min_eigenvalue(), 0.0);
    EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-14);
  }
}

TEST(Random, SamplersAreDeterministicPerSeed) {
  Rng a(99), b(99), c(100);
  const DensityMatrix ra = random_mixed_state(a, 2);
  const DensityMatrix rb = random_mixed_state(b, 2);
  const DensityMatrix rc = random_mixed_state(c, 2);
  EXPECT_EQ(ra.matrix().max_abs_diff(rb.matrix()), 0.0);
  EXPECT_GT(rc.matrix().max_abs_diff(ra.matrix()), 0.0);
}

}  // namespace
}  // namespace disent
