// Copyright 2026 The qmcreach Authors
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

/**
 * @file
 * Circuit families used by the benchmark and tests, plus seeded random
 * chain instances.
 *
 * Multi-controlled gates are lowered to the native gate set without
 * ancillas: a k-qubit controlled-Z is the phase polynomial
 *   pi * x_1 ... x_k = sum_{S != {}} pi (-1)^{|S|-1} / 2^{k-1} * parity_S(x),
 * emitted as CX ladders in Gray-code order with u3(0,0,theta) phases.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qmcreach/numerics.hpp"
#include "qmcreach/qasm.hpp"
#include "qmcreach/qmc.hpp"

namespace qmcreach {

/// Phase -1 on the all-ones assignment of `qubits`.
void append_mcz(Circuit &circuit, const std::vector<int> &qubits);
/// X on `target` when every control qubit is 1.
void append_mcx(Circuit &circuit, const std::vector<int> &controls, int target);

/**
 * Coined walk on a cycle of 2^position_qubits sites. Qubit 0 is the coin,
 * qubits 1..m the position (qubit 1 most significant). One step is the
 * coin Hadamard followed by the shift: increment when the coin is 0,
 * decrement when it is 1.
 */
Circuit qrw_circuit(int position_qubits);

/// One Grover iterate (phase oracle for `marked`, then diffusion).
Circuit grover_circuit(int num_qubits, std::uint64_t marked);

/**
 * Repeat-until-success circuit for (I + 2iZ)/sqrt(5). Qubits 0 and 1 are
 * |+> ancillas, qubit 2 the target. The body runs the Toffoli/S/Toffoli
 * core, H on both ancillas and Z on the target; the channel sites measure
 * and reset the ancillas; two trailing H gates re-prepare |+>|+> for the
 * next round.
 */
Circuit rus_v3_circuit();
std::vector<ChannelSite> rus_v3_sites();

/// Product state from one character per qubit: '0', '1', '+', '-'.
/// Throws ParseError on other characters.
StateVector product_state(std::string_view spec);

/// Normalized state with i.i.d. Gaussian amplitudes.
StateVector random_state(int num_qubits, std::uint64_t seed);

struct ChainInstance {
    std::string name;
    /// "Unitary", "Noise" or "Measure".
    std::string operation;
    QuantumMarkovChain qmc;
    std::vector<StateVector> init;
    /// Set when the reachable dimension is known in advance.
    std::optional<std::size_t> expected_dim;
};

struct RandomInstanceOptions {
    int min_qubits = 1;
    int max_qubits = 3;
    int max_gates = 10;
    int max_sites = 2;
    /// Include measure_z and reset sites (projective, trace preserving).
    bool projective_sites = true;
};

/// Random body, random built-in channel sites, random pure or rank-2 init.
ChainInstance random_instance(std::uint64_t seed, const RandomInstanceOptions &opts = {});

/// Grover, walk and repeat-until-success rows of the benchmark table.
/// `include_stretch` adds the 9-qubit walk row.
std::vector<ChainInstance> bench_instances(bool include_stretch = true);

} // namespace qmcreach
