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
 * OpenQASM 2.0 subset front end. Produces the unitary body of one Markov
 * chain step; non-unitary events (measure, reset) are rejected here and
 * belong in the channel specification instead.
 */
#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace qmcreach {

enum class GateKind { X, Y, Z, H, S, SDG, T, TDG, U3, CX, CZ, CCX, SWAP };

/// Number of qubit operands a gate kind takes.
int arity(GateKind kind);
/// Lower-case QASM mnemonic ("x", "u3", "ccx", ...).
std::string_view mnemonic(GateKind kind);

struct GateOp {
    GateKind kind = GateKind::X;
    /// Operands in QASM order; for controlled gates the target comes last.
    std::vector<int> qubits;
    /// U3 (theta, phi, lambda) in radians; zero for other kinds.
    std::array<double, 3> params{0.0, 0.0, 0.0};

    bool operator==(const GateOp &) const = default;
};

GateOp make_gate(GateKind kind, std::vector<int> qubits);
GateOp make_u3(int qubit, double theta, double phi, double lambda);

struct Circuit {
    int num_qubits = 0;
    std::vector<GateOp> ops;

    bool operator==(const Circuit &) const = default;

    /// Throws UsageError unless every op has valid arity and distinct,
    /// in-range operands.
    void validate() const;
};

/**
 * Parses the supported OpenQASM 2.0 subset. Multiple qregs are flattened in
 * declaration order. Throws ParseError (with line number) on any problem.
 *
 * Gates: x y z h s sdg t tdg u3 u U cx CX cz ccx swap, plus u1 u2 p rx ry rz
 * which are lowered to u3 (rz up to a global phase) and id, which is dropped.
 */
Circuit parse_qasm(std::string_view source);

/// Emits a single-register program that parse_qasm maps back to `circuit`.
std::string to_qasm(const Circuit &circuit);

} // namespace qmcreach
