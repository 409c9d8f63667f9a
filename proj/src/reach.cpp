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

#include "qmcreach/reach.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "qmcreach/errors.hpp"
#include "qmcreach/simulator.hpp"

namespace qmcreach {

ReachReport reachable_subspace(const QuantumMarkovChain &qmc,
                               std::span<const StateVector> init,
                               const Tolerances &tol, int qubit_cap) {
    const auto start = std::chrono::steady_clock::now();
    tol.validate();
    check_qubit_cap(qmc.num_qubits(), qubit_cap);
    if (init.empty()) {
        throw UsageError("reachable_subspace: initial state list is empty");
    }
    for (const auto &v : init) {
        if (v.num_qubits() != qmc.num_qubits()) {
            throw UsageError("reachable_subspace: initial state has " +
                             std::to_string(v.num_qubits()) + " qubits, chain has " +
                             std::to_string(qmc.num_qubits()));
        }
    }

    ReachReport report;
    auto &basis = report.subspace.basis;
    basis = gram_schmidt(init, tol);
    if (basis.empty()) {
        throw UsageError("reachable_subspace: every initial vector is (numerically) zero");
    }
    const std::size_t d = std::size_t{1} << qmc.num_qubits();

    // Queue of indices into basis; every queued vector is also in the basis.
    std::deque<std::size_t> queue;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        queue.push_back(i);
    }
    while (!queue.empty() && basis.size() < d) {
        const std::size_t current = queue.front();
        queue.pop_front();
        ++report.iterations;
        if (report.iterations > d) {
            throw InvariantViolation("reachable_subspace: loop exceeded d = " +
                                     std::to_string(d) + " iterations");
        }
        // Copy: extend_orthonormal may reallocate the basis storage.
        const StateVector source = basis[current];
        BranchSet image = step_image(qmc, source, tol);
        report.branch_evals += image.size();
        for (const auto &branch : image.branches) {
            if (basis.size() >= d) {
                break;
            }
            if (extend_orthonormal(basis, branch, tol)) {
                queue.push_back(basis.size() - 1);
            }
        }
    }
    report.saturated = basis.size() == d;
    if (basis.size() > d) {
        throw InvariantViolation("reachable_subspace: dimension exceeds d");
    }
    report.wall_time = std::chrono::steady_clock::now() - start;
    return report;
}

double containment_residual(const SubspaceBasis &subspace, const StateVector &v) {
    StateVector residual = v;
    residual -= project_onto(subspace.basis, v);
    return residual.norm() / std::max(1.0, v.norm());
}

bool contains(const SubspaceBasis &subspace, const StateVector &v,
              const Tolerances &tol) {
    return containment_residual(subspace, v) <= tol.null_threshold;
}

double closure_residual(const QuantumMarkovChain &qmc,
                        const SubspaceBasis &subspace, const Tolerances &tol) {
    double worst = 0.0;
    for (const auto &b : subspace.basis) {
        for (const auto &succ : step_image(qmc, b, tol).branches) {
            worst = std::max(worst, containment_residual(subspace, succ));
        }
    }
    return worst;
}

double span_distance(const SubspaceBasis &a, const SubspaceBasis &b) {
    if (a.dim() != b.dim()) {
        return std::numeric_limits<double>::infinity();
    }
    double worst = 0.0;
    for (const auto &v : a.basis) {
        worst = std::max(worst, containment_residual(b, v));
    }
    for (const auto &v : b.basis) {
        worst = std::max(worst, containment_residual(a, v));
    }
    return worst;
}

} // namespace qmcreach
