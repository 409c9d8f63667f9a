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
 * Brute-force reference for reachability: the reachable subspace equals
 * supp(sum_{i<d} E^i(rho)). Everything here works on dense d x d matrices
 * and is meant for small registers only.
 */
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qmcreach/numerics.hpp"
#include "qmcreach/qasm.hpp"
#include "qmcreach/qmc.hpp"
#include "qmcreach/reach.hpp"

namespace qmcreach {

inline constexpr int kOracleQubitCap = 6;

class DensityMatrix {
  public:
    /// Wraps `entries` (must be square with power-of-two size).
    explicit DensityMatrix(DenseMatrix entries);

    /// Uniform mixture of the normalized input vectors.
    static DensityMatrix mixture(std::span<const StateVector> states);

    int num_qubits() const { return num_qubits_; }
    std::size_t dim() const { return entries_.rows(); }
    const DenseMatrix &matrix() const { return entries_; }
    double trace() const { return entries_.trace().real(); }

    /// Throws InvariantViolation unless Hermitian (1e-10), positive
    /// semidefinite (pivots >= -1e-10) and 0 < trace <= 1 + 1e-8.
    void validate() const;

  private:
    DenseMatrix entries_;
    int num_qubits_ = 0;
};

/// Full 2^n x 2^n matrix of a gate, assembled from Kronecker products.
DenseMatrix embed_gate(const GateOp &op, int num_qubits);
/// Full matrix of a 2x2 factor acting on one qubit.
DenseMatrix embed_single(const DenseMatrix &m, int qubit, int num_qubits);

/// Every branch operator of one step as a dense matrix, in branch order.
std::vector<DenseMatrix> branch_operators(const QuantumMarkovChain &qmc,
                                          int qubit_cap = kOracleQubitCap);

/// sum_i E_i rho E_i^dagger.
DensityMatrix evolve_density(const QuantumMarkovChain &qmc, const DensityMatrix &rho,
                             int qubit_cap = kOracleQubitCap);

/// Orthonormal basis of the column space of rho by column-pivoted
/// Gram-Schmidt; pivots at or below tol.null_threshold are treated as zero.
SubspaceBasis support_basis(const DensityMatrix &rho, const Tolerances &tol = {});

/// sum_{i<=steps} E^i(rho) with every term rescaled to unit trace, then the
/// whole sum to unit trace. Its support is Y_steps of the saturation chain.
DensityMatrix power_sum(const QuantumMarkovChain &qmc, const DensityMatrix &rho,
                        std::size_t steps, int qubit_cap = kOracleQubitCap);

/**
 * Reachable subspace as the fixed point of Y_0 = supp(rho),
 * Y_{n+1} = supp(rho + E(P_n)) with P_n the projector onto Y_n; the chain
 * stabilizes within d steps at supp(sum_{i<d} E^i(rho)).
 *
 * supp(rho + E(P_n)) is computed in factored form as the column space of
 * supp(rho) together with E_i y for every branch operator E_i and basis
 * vector y of Y_n. Candidate columns are normalized before pivoting, so
 * thresholds apply to residual norms rather than their squares.
 */
SubspaceBasis oracle_reachable(const QuantumMarkovChain &qmc, const DensityMatrix &rho,
                               const Tolerances &tol = {},
                               int qubit_cap = kOracleQubitCap);

/// span(a u b).
SubspaceBasis join(const SubspaceBasis &a, const SubspaceBasis &b,
                   const Tolerances &tol = {});

} // namespace qmcreach
