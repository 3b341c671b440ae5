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

#ifndef DISENT_TOLERANCES_HPP_
#define DISENT_TOLERANCES_HPP_

// The single tolerance policy for the whole library. Every verdict (Hermiticity,
// positivity, separability, premise checks) reads its threshold from here, so a
// verdict never depends on which code path computed it.

namespace disent::tol {

// Structural checks on state matrices.
inline constexpr double kHermitian = 1e-12;   // max |m - m^dagger| entry
inline constexpr double kTrace = 1e-12;       // |Tr(rho) - 1|
inline constexpr double kEigGate = 1e-9;      // Hermiticity gate of the eigensolver

// Positivity floor: an operator counts as PSD when every eigenvalue is >= this.
// Shared by density-matrix validation, the PPT separability verdict, complete
// positivity of maps, and the A14/A15 feasibility verdicts.
inline constexpr double kPsdFloor = -1e-9;

// Protocol premise checks (marginal structure), same scale as the PSD floor.
inline constexpr double kPremise = 1e-9;

// Operator checks.
inline constexpr double kUnitary = 1e-12;     // max |U^dagger U - I| entry
inline constexpr double kProjector = 1e-12;   // max |P^2 - P| entry, completeness

// Simplex slack for Bell-mixture weights.
inline constexpr double kWeight = 1e-12;

// Bloch vectors may exceed unit norm by at most this.
inline constexpr double kBlochNorm = 1e-12;

// Jacobi sweeps stop when the off-diagonal Frobenius norm falls below this.
inline constexpr double kJacobiOff = 1e-13;

// Measurement branches below this probability carry no normalized post-state.
inline constexpr double kDeadBranch = 1e-12;

// Slack when clamping a computed cosine into [-1, 1].
inline constexpr double kCosineSlack = 1e-12;

// Theorem boundary band: |sum(lambda) - 1| below this is not scored.
inline constexpr double kTheoremBand = 1e-9;

}  // namespace disent::tol

#endif  // DISENT_TOLERANCES_HPP_
