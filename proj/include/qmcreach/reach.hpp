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
 * Reachable-subspace computation for quantum Markov chains.
 *
 * The engine runs a breadth-first search over subspace dimensions: every
 * basis vector found so far is pushed through one chain step, and only the
 * component of each successor orthogonal to the explored span is kept
 * (frontier simplification). Each accepted vector adds one dimension, so the
 * loop runs at most d = 2^n times and its output spans
 *   R(rho) = join_{i<d} supp(E^i(rho)).
 */
#pragma once

#include <chrono>
#include <cstddef>
#include <span>
#include <vector>

#include "qmcreach/numerics.hpp"
#include "qmcreach/qmc.hpp"

namespace qmcreach {

/// Orthonormal basis of a subspace.
struct SubspaceBasis {
    std::vector<StateVector> basis;

    std::size_t dim() const { return basis.size(); }
};

struct ReachReport {
    SubspaceBasis subspace;
    /// Number of queue pops (while-loop executions).
    std::size_t iterations = 0;
    /// Total successor vectors produced by step_image.
    std::size_t branch_evals = 0;
    /// True when the search stopped because the whole space was reached.
    bool saturated = false;
    std::chrono::duration<double> wall_time{0.0};
};

/**
 * Orthonormal basis of the subspace reachable from span(init).
 *
 * Throws UsageError for an empty or all-zero init or mismatched widths,
 * CapExceeded above `qubit_cap`, InvariantViolation if the loop bound or
 * the dimension bound is ever exceeded.
 */
ReachReport reachable_subspace(const QuantumMarkovChain &qmc,
                               std::span<const StateVector> init,
                               const Tolerances &tol = {},
                               int qubit_cap = kDefaultQubitCap);

/// |v - P v| / max(1, |v|) where P projects onto the subspace.
double containment_residual(const SubspaceBasis &subspace, const StateVector &v);

/// |v - P v| <= tol.null_threshold * max(1, |v|).
bool contains(const SubspaceBasis &subspace, const StateVector &v,
              const Tolerances &tol = {});

/// Largest containment residual of any one-step successor of any basis
/// vector; zero exactly when the subspace is closed under the step.
double closure_residual(const QuantumMarkovChain &qmc,
                        const SubspaceBasis &subspace,
                        const Tolerances &tol = {});

/// Max residual of a's vectors in b and b's vectors in a (requires equal
/// dims to be meaningful; returns +inf when dims differ).
double span_distance(const SubspaceBasis &a, const SubspaceBasis &b);

} // namespace qmcreach
