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

#include "qmcreach/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>

#include "qmcreach/errors.hpp"
#include "qmcreach/simulator.hpp"

namespace qmcreach {

namespace {

const DenseMatrix &pauli(char which) {
    using namespace std::complex_literals;
    static const DenseMatrix i2 = DenseMatrix::identity(2);
    static const DenseMatrix x(2, 2, {0, 1, 1, 0});
    static const DenseMatrix y(2, 2, {0, -1i, 1i, 0});
    static const DenseMatrix z(2, 2, {1, 0, 0, -1});
    switch (which) {
    case 'X': return x;
    case 'Y': return y;
    case 'Z': return z;
    default: return i2;
    }
}

const DenseMatrix &proj(int bit) {
    static const DenseMatrix p0(2, 2, {1, 0, 0, 0});
    static const DenseMatrix p1(2, 2, {0, 0, 0, 1});
    return bit == 0 ? p0 : p1;
}

// Kronecker product over all qubits, identity where no factor is given.
DenseMatrix tensor_factors(const std::map<int, DenseMatrix> &factors, int n) {
    DenseMatrix m = DenseMatrix::identity(1);
    for (int q = 0; q < n; ++q) {
        auto it = factors.find(q);
        m = kron(m, it == factors.end() ? DenseMatrix::identity(2) : it->second);
    }
    return m;
}

void check_oracle_width(int n, int cap) {
    if (n > cap) {
        throw CapExceeded(n, cap);
    }
}

} // namespace

DensityMatrix::DensityMatrix(DenseMatrix entries) : entries_(std::move(entries)) {
    const std::size_t d = entries_.rows();
    if (d != entries_.cols() || d < 2 || !std::has_single_bit(d)) {
        throw UsageError("DensityMatrix: matrix must be square with size 2^n, n >= 1");
    }
    num_qubits_ = std::countr_zero(d);
}

DensityMatrix DensityMatrix::mixture(std::span<const StateVector> states) {
    if (states.empty()) {
        throw UsageError("DensityMatrix::mixture: no states");
    }
    const std::size_t d = states.front().dim();
    DenseMatrix rho(d, d);
    std::size_t used = 0;
    for (const auto &s : states) {
        const double n2 = s.norm_squared();
        if (n2 == 0.0) {
            continue;
        }
        rho += (1.0 / n2) * outer(s, s);
        ++used;
    }
    if (used == 0) {
        throw UsageError("DensityMatrix::mixture: all states are zero");
    }
    rho *= 1.0 / static_cast<double>(used);
    return DensityMatrix(std::move(rho));
}

void DensityMatrix::validate() const {
    const std::size_t d = dim();
    if (entries_.max_abs_diff(entries_.adjoint()) > 1e-10) {
        throw InvariantViolation("density matrix is not Hermitian");
    }
    const double tr = trace();
    if (!(tr > 0.0 && tr <= 1.0 + 1e-8)) {
        throw InvariantViolation("density matrix trace " + std::to_string(tr) +
                                 " outside (0, 1]");
    }
    // Pivoted LDL^dagger: a Hermitian matrix is PSD iff no pivot is negative
    // and zero pivots come with zero rows.
    DenseMatrix a = entries_;
    std::vector<bool> done(d, false);
    for (std::size_t step = 0; step < d; ++step) {
        std::size_t p = d;
        double best = -1e300;
        for (std::size_t k = 0; k < d; ++k) {
            if (!done[k] && a(k, k).real() > best) {
                best = a(k, k).real();
                p = k;
            }
        }
        if (best < -1e-10) {
            throw InvariantViolation("density matrix is not positive semidefinite");
        }
        if (best <= 1e-14) {
            for (std::size_t i = 0; i < d; ++i) {
                for (std::size_t j = 0; j < d; ++j) {
                    if (!done[i] && !done[j] && std::abs(a(i, j)) > 1e-7) {
                        throw InvariantViolation(
                            "density matrix is not positive semidefinite");
                    }
                }
            }
            return;
        }
        done[p] = true;
        for (std::size_t i = 0; i < d; ++i) {
            if (done[i]) {
                continue;
            }
            const Complex l = a(i, p) / best;
            for (std::size_t j = 0; j < d; ++j) {
                if (!done[j]) {
                    a(i, j) -= l * a(p, j);
                }
            }
        }
    }
}

DenseMatrix embed_single(const DenseMatrix &m, int qubit, int num_qubits) {
    return tensor_factors({{qubit, m}}, num_qubits);
}

DenseMatrix embed_gate(const GateOp &op, int n) {
    const auto &q = op.qubits;
    switch (op.kind) {
    case GateKind::CX:
        return tensor_factors({{q[0], proj(0)}}, n) +
               tensor_factors({{q[0], proj(1)}, {q[1], pauli('X')}}, n);
    case GateKind::CZ:
        return tensor_factors({{q[0], proj(0)}}, n) +
               tensor_factors({{q[0], proj(1)}, {q[1], pauli('Z')}}, n);
    case GateKind::CCX: {
        // I - P1 P1 (x) I + P1 P1 (x) X
        DenseMatrix m = DenseMatrix::identity(std::size_t{1} << n);
        m += Complex{-1.0} * tensor_factors({{q[0], proj(1)}, {q[1], proj(1)}}, n);
        m += tensor_factors({{q[0], proj(1)}, {q[1], proj(1)}, {q[2], pauli('X')}}, n);
        return m;
    }
    case GateKind::SWAP: {
        // (II + XX + YY + ZZ) / 2
        DenseMatrix m = DenseMatrix::identity(std::size_t{1} << n);
        for (char p : {'X', 'Y', 'Z'}) {
            m += tensor_factors({{q[0], pauli(p)}, {q[1], pauli(p)}}, n);
        }
        m *= 0.5;
        return m;
    }
    default:
        return embed_single(single_qubit_matrix(op), q[0], n);
    }
}

std::vector<DenseMatrix> branch_operators(const QuantumMarkovChain &qmc, int qubit_cap) {
    const int n = qmc.num_qubits();
    check_oracle_width(n, qubit_cap);
    const std::size_t d = std::size_t{1} << n;
    const auto &ops = qmc.body().ops;
    const auto &sites = qmc.sites();

    // segments[k] = product of the gates between site k-1 and site k.
    std::vector<DenseMatrix> segments;
    std::size_t gate = 0;
    for (std::size_t s = 0; s <= sites.size(); ++s) {
        const std::size_t stop = s < sites.size() ? sites[s].position : ops.size();
        DenseMatrix seg = DenseMatrix::identity(d);
        for (; gate < stop; ++gate) {
            seg = embed_gate(ops[gate], n) * seg;
        }
        segments.push_back(std::move(seg));
    }

    std::vector<DenseMatrix> result;
    for (const auto &choice : qmc.plan().enumerate()) {
        DenseMatrix m = segments[0];
        for (std::size_t s = 0; s < sites.size(); ++s) {
            const auto &k = qmc.plan().site_kraus[s][static_cast<std::size_t>(choice[s])];
            m = segments[s + 1] * (embed_single(k, sites[s].qubit, n) * m);
        }
        result.push_back(std::move(m));
    }
    return result;
}

DensityMatrix evolve_density(const QuantumMarkovChain &qmc, const DensityMatrix &rho,
                             int qubit_cap) {
    check_oracle_width(qmc.num_qubits(), qubit_cap);
    if (rho.num_qubits() != qmc.num_qubits()) {
        throw UsageError("evolve_density: density matrix width does not match chain");
    }
    DenseMatrix out(rho.dim(), rho.dim());
    for (const auto &e : branch_operators(qmc, qubit_cap)) {
        out += e * rho.matrix() * e.adjoint();
    }
    // Symmetrize away rounding so Hermiticity holds to working precision.
    DenseMatrix herm = out.adjoint();
    herm += out;
    herm *= 0.5;
    return DensityMatrix(std::move(herm));
}

namespace {

// Column-pivoted Gram-Schmidt: repeatedly takes the candidate with the
// largest residual until every residual is at or below the threshold.
SubspaceBasis pivoted_column_space(std::vector<StateVector> residuals, double threshold) {
    SubspaceBasis out;
    if (residuals.empty()) {
        return out;
    }
    const std::size_t d = residuals.front().dim();
    std::vector<bool> used(residuals.size(), false);
    while (out.dim() < d) {
        std::size_t pivot = residuals.size();
        double best = threshold;
        for (std::size_t c = 0; c < residuals.size(); ++c) {
            const double r = residuals[c].norm();
            if (!used[c] && r > best) {
                best = r;
                pivot = c;
            }
        }
        if (pivot == residuals.size()) {
            break;
        }
        used[pivot] = true;
        StateVector q = residuals[pivot];
        q *= 1.0 / best;
        for (int pass = 0; pass < 2; ++pass) {
            q -= project_onto(out.basis, q);
        }
        q *= 1.0 / q.norm();
        for (std::size_t c = 0; c < residuals.size(); ++c) {
            if (!used[c]) {
                const Complex coef = inner_product(q, residuals[c]);
                residuals[c] -= coef * q;
            }
        }
        out.basis.push_back(std::move(q));
    }
    return out;
}

} // namespace

SubspaceBasis support_basis(const DensityMatrix &rho, const Tolerances &tol) {
    const std::size_t d = rho.dim();
    std::vector<StateVector> columns;
    columns.reserve(d);
    for (std::size_t c = 0; c < d; ++c) {
        std::vector<Complex> col(d);
        for (std::size_t r = 0; r < d; ++r) {
            col[r] = rho.matrix()(r, c);
        }
        columns.emplace_back(rho.num_qubits(), std::move(col));
    }
    return pivoted_column_space(std::move(columns), tol.null_threshold);
}

DensityMatrix power_sum(const QuantumMarkovChain &qmc, const DensityMatrix &rho,
                        std::size_t steps, int qubit_cap) {
    check_oracle_width(qmc.num_qubits(), qubit_cap);
    DenseMatrix term = rho.matrix();
    term *= 1.0 / rho.trace();
    DenseMatrix sum = term;
    for (std::size_t i = 1; i <= steps; ++i) {
        DensityMatrix next = evolve_density(qmc, DensityMatrix(term), qubit_cap);
        const double tr = next.trace();
        if (!(tr > 0.0)) {
            break;
        }
        term = next.matrix();
        term *= 1.0 / tr;
        sum += term;
    }
    sum *= 1.0 / sum.trace().real();
    return DensityMatrix(std::move(sum));
}

SubspaceBasis oracle_reachable(const QuantumMarkovChain &qmc, const DensityMatrix &rho,
                               const Tolerances &tol, int qubit_cap) {
    check_oracle_width(qmc.num_qubits(), qubit_cap);
    if (rho.num_qubits() != qmc.num_qubits()) {
        throw UsageError("oracle_reachable: density matrix width does not match chain");
    }
    const std::vector<DenseMatrix> ops = branch_operators(qmc, qubit_cap);
    const SubspaceBasis initial = support_basis(rho, tol);
    SubspaceBasis current = initial;
    for (std::size_t step = 0; step < rho.dim(); ++step) {
        std::vector<StateVector> candidates = initial.basis;
        for (const auto &e : ops) {
            for (const auto &y : current.basis) {
                StateVector image = e * y;
                const double n = image.norm();
                if (n >= tol.branch_drop) {
                    image *= 1.0 / n;
                    candidates.push_back(std::move(image));
                }
            }
        }
        SubspaceBasis next = pivoted_column_space(std::move(candidates), tol.null_threshold);
        // The chain is nested, so equal dimension means Y_{n+1} = Y_n.
        if (next.dim() <= current.dim()) {
            return current;
        }
        current = std::move(next);
    }
    return current;
}

SubspaceBasis join(const SubspaceBasis &a, const SubspaceBasis &b, const Tolerances &tol) {
    std::vector<StateVector> all = a.basis;
    all.insert(all.end(), b.basis.begin(), b.basis.end());
    return SubspaceBasis{gram_schmidt(all, tol)};
}

} // namespace qmcreach
