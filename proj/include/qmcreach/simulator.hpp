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
 * Pure-state execution of one chain step. Gates and 2x2 Kraus factors are
 * applied to vectors in sequence; branch operators are never materialized.
 */
#pragma once

#include <cstddef>
#include <vector>

#include "qmcreach/numerics.hpp"
#include "qmcreach/qasm.hpp"
#include "qmcreach/qmc.hpp"

namespace qmcreach {

/// Unnormalized successor vectors of one step, in branch-index order.
struct BranchSet {
    std::vector<StateVector> branches;
    /// Kraus index chosen at each site (in firing order), per branch.
    std::vector<std::vector<int>> provenance;

    std::size_t size() const { return branches.size(); }
    bool empty() const { return branches.empty(); }
};

/// 2x2 matrix of a single-qubit gate kind (U3 uses op.params).
DenseMatrix single_qubit_matrix(const GateOp &op);

void apply_gate_inplace(const GateOp &op, StateVector &v);
StateVector apply_gate(const GateOp &op, StateVector v);
StateVector apply_circuit(const Circuit &circuit, StateVector v);

/**
 * Image of |v> under one step: for every Kraus choice, the body gates
 * interleaved with the chosen site factors. Branches with norm below
 * tol.branch_drop are dropped.
 */
BranchSet step_image(const QuantumMarkovChain &qmc, const StateVector &v,
                     const Tolerances &tol = {});

/**
 * Partial trace of one qubit as a pure-state decomposition: {P0 v, X P1 v}.
 * The traced qubit is left in |0>; sum_b |b><b| equals
 * |0><0| (x) tr_q(|v><v|) with the other qubits in place.
 */
BranchSet partial_trace_branches(const StateVector &v, int traced_qubit,
                                 const Tolerances &tol = {});

/// (1/sqrt(d)) sum_i |i>|i> on 2n qubits, pairing qubit k with qubit n+k.
StateVector max_entangled(int n, int qubit_cap = kDefaultQubitCap);

/// Branches of (E (x) I)|Phi>; sum_b |b><b| is the Choi matrix of E over d.
BranchSet choi_branches(const QuantumMarkovChain &qmc, const Tolerances &tol = {},
                        int qubit_cap = kDefaultQubitCap);

} // namespace qmcreach
