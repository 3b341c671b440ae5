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

#ifndef DISENT_TELEPORT_HPP_
#define DISENT_TELEPORT_HPP_

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "disent/channels.hpp"
#include "disent/errors.hpp"
#include "disent/qstate.hpp"
#include "disent/tolerances.hpp"

// Step-by-step simulators of two teleportation protocols: the standard
// Bell-measurement protocol calibrated to the psi+ channel but run through an
// arbitrary Bell mixture, and the exact protocol through a classically
// correlated channel for inputs with computational-diagonal marginals.
//
// Register layout for the bipartite simulations, fixed so traces are
// bit-for-bit reproducible:
//   qubit 0 = kept party, qubit 1 = teleported party,
//   qubit 2 = channel half A (measured), qubit 3 = channel half B (output).
// Outputs are reported in the original party order: the channel's B half
// takes over the slot of the teleported party.

namespace disent {

struct ProtocolTrace {
  std::string outcome_label;
  double probability;
  std::string correction;
  DensityMatrix post_state;
};

struct TeleportResult {
  DensityMatrix output;
  std::vector<ProtocolTrace> traces;
};

inline DensityMatrix bell_mixture_state(const BellMixture& ch) {
  std::vector<std::pair<double, DensityMatrix>> parts;
  const auto ws = ch.weights();
  for (int k = 0; k < 4; ++k) {
    parts.emplace_back(
        ws[k], DensityMatrix(bell_projector(kBellOrder[k]), StateCheck::structural));
  }
  return mix(parts);
}

// Correction applied to the receiving qubit per Bell outcome, for a protocol
// that teleports exactly across a pure psi+ channel.
inline const ComplexMatrix& bell_correction(Bell outcome) {
  static const std::array<ComplexMatrix, 4> table = [] {
    std::array<ComplexMatrix, 4> t{ComplexMatrix(2), ComplexMatrix(2),
                                   ComplexMatrix(2), ComplexMatrix(2)};
    t[0] = pauli(0);
    t[1] = pauli(3);
    t[2] = pauli(1);
    t[3] = pauli(1) * pauli(3);
    return t;
  }();
  return table[static_cast<int>(outcome)];
}

inline std::string_view bell_correction_name(Bell outcome) {
  switch (outcome) {
    case Bell::psi_plus: return "I";
    case Bell::psi_minus: return "sigma_3";
    case Bell::phi_plus: return "sigma_1";
    case Bell::phi_minus: return "sigma_1_sigma_3";
  }
  throw Error("unreachable Bell label");
}

// Teleport a single qubit through a Bell mixture: form input (x) channel,
// measure the input-plus-A pair in the Bell basis, correct B, and average the
// corrected branches by outcome probability. Every outcome occurs with
// probability 1/4 regardless of input or channel.
inline TeleportResult bell_protocol_output(const DensityMatrix& input,
                                           const BellMixture& channel) {
  if (input.n_qubits() != 1) {
    throw WrongDimension("bell_protocol_output teleports a single qubit");
  }
  const DensityMatrix joint = tensor(input, bell_mixture_state(channel));
  std::vector<ComplexMatrix> projectors;
  for (Bell b : kBellOrder) projectors.push_back(bell_projector(b));
  const auto branches = measure_projective(joint, projectors, {0, 1});

  std::vector<ProtocolTrace> traces;
  std::vector<std::pair<double, DensityMatrix>> parts;
  for (int k = 0; k < 4; ++k) {
    const Bell outcome = kBellOrder[k];
    if (!branches[k].state.has_value()) {
      throw Error("Bell outcome branch unexpectedly has zero probability");
    }
    const DensityMatrix corrected =
        apply_unitary(*branches[k].state, bell_correction(outcome), {2});
    DensityMatrix out = partial_trace(corrected, {2});
    traces.push_back(ProtocolTrace{std::string(bell_name(outcome)),
                                   branches[k].probability,
                                   std::string(bell_correction_name(outcome)),
                                   out});
    parts.emplace_back(branches[k].probability, std::move(out));
  }
  return TeleportResult{mix(parts), std::move(traces)};
}

namespace detail {

// Reorder a two-qubit state so the teleported party sits at qubit 1.
inline DensityMatrix to_register_order(const DensityMatrix& rho12, int party) {
  if (rho12.n_qubits() != 2) {
    throw WrongDimension("bipartite teleportation needs a two-qubit state");
  }
  if (party != 1 && party != 2) {
    throw BadSubsystemIndex("teleported party must be 1 or 2");
  }
  return party == 2 ? rho12 : partial_trace(rho12, {1, 0});
}

// Undo to_register_order on a (kept, B) result.
inline DensityMatrix to_original_order(const DensityMatrix& kept_b, int party) {
  return party == 2 ? kept_b : partial_trace(kept_b, {1, 0});
}

}  // namespace detail

// Teleport one party of a two-qubit state through a Bell mixture. The result
// keeps the original party order, with the channel's B half in the teleported
// slot; it matches the one-sided Bloch-map action of the channel.
inline DensityMatrix teleport_party_of_bipartite(const DensityMatrix& rho12,
                                                 int party,
                                                 const BellMixture& channel) {
  const DensityMatrix arranged = detail::to_register_order(rho12, party);
  const DensityMatrix joint = tensor(arranged, bell_mixture_state(channel));
  std::vector<ComplexMatrix> projectors;
  for (Bell b : kBellOrder) projectors.push_back(bell_projector(b));
  const auto branches = measure_projective(joint, projectors, {1, 2});

  std::vector<std::pair<double, DensityMatrix>> parts;
  for (int k = 0; k < 4; ++k) {
    if (!branches[k].state.has_value()) {
      throw Error("Bell outcome branch unexpectedly has zero probability");
    }
    const DensityMatrix corrected = apply_unitary(
        *branches[k].state, bell_correction(kBellOrder[k]), {3});
    parts.emplace_back(branches[k].probability,
                       partial_trace(corrected, {0, 3}));
  }
  return detail::to_original_order(mix(parts), party);
}

struct ClassicalProtocolResult {
  DensityMatrix output;
  std::vector<ProtocolTrace> traces;
};

// Exact protocol through the classically correlated channel
// (P[|00>] + P[|11>]) / 2. Requires the teleported party's marginal to be
// diagonal in the computational basis; the two coarse outcomes each occur
// with probability 1/2 and the sigma_x correction repairs the second.
inline ClassicalProtocolResult run_classical_protocol(const DensityMatrix& rho12,
                                                      int party) {
  const DensityMatrix arranged = detail::to_register_order(rho12, party);
  const DensityMatrix marginal = partial_trace(arranged, {1});
  const double offdiag = std::abs(marginal.matrix().at(0, 1));
  if (offdiag > tol::kPremise) {
    throw NotCommutingPremise(
        "teleported party's marginal has off-diagonal magnitude " +
        std::to_string(offdiag));
  }

  const DensityMatrix channel =
      mix({{0.5, DensityMatrix::pure({1.0, 0.0, 0.0, 0.0})},
           {0.5, DensityMatrix::pure({0.0, 0.0, 0.0, 1.0})}});
  const DensityMatrix joint = tensor(arranged, channel);

  ComplexMatrix p1(4), p2(4);
  p1.at(0, 0) = 1.0;
  p1.at(3, 3) = 1.0;
  p2.at(1, 1) = 1.0;
  p2.at(2, 2) = 1.0;
  const auto branches = measure_projective(joint, {p1, p2}, {1, 2});

  std::vector<ProtocolTrace> traces;
  std::vector<std::pair<double, DensityMatrix>> parts;
  const char* labels[2] = {"P1", "P2"};
  const char* corrections[2] = {"I", "sigma_x"};
  for (int k = 0; k < 2; ++k) {
    if (!branches[k].state.has_value()) {
      throw Error("classical protocol branch unexpectedly has zero probability");
    }
    DensityMatrix post = *branches[k].state;
    if (k == 1) post = apply_unitary(post, pauli(1), {3});
    DensityMatrix out =
        detail::to_original_order(partial_trace(post, {0, 3}), party);
    traces.push_back(ProtocolTrace{labels[k], branches[k].probability,
                                   corrections[k], out});
    parts.emplace_back(branches[k].probability, std::move(out));
  }
  return ClassicalProtocolResult{mix(parts), std::move(traces)};
}

}  // namespace disent

#endif  // DISENT_TELEPORT_HPP_
