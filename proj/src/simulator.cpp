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

#include "qmcreach/simulator.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "qmcreach/errors.hpp"

namespace qmcreach {

namespace {

std::size_t bit_of(int num_qubits, int qubit) {
    return std::size_t{1} << (num_qubits - 1 - qubit);
}

void check_operands(const GateOp &op, const StateVector &v) {
    if (static_cast<int>(op.qubits.size()) != arity(op.kind)) {
        throw UsageError("gate " + std::string(mnemonic(op.kind)) +
                         ": wrong number of operands");
    }
    for (int q : op.qubits) {
        if (q < 0 || q >= v.num_qubits()) {
            throw UsageError("gate " + std::string(mnemonic(op.kind)) +
                             ": qubit " + std::to_string(q) + " out of range");
        }
    }
    for (std::size_t i = 1; i < op.qubits.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (op.qubits[i] == op.qubits[j]) {
                throw UsageError("gate " + std::string(mnemonic(op.kind)) +
                                 ": repeated qubit operand");
            }
        }
    }
}

// Walks the step's gate/site interleaving depth-first so that shared
// prefixes are simulated once per Kraus choice.
class BranchWalker {
  public:
    BranchWalker(const QuantumMarkovChain &qmc, const Tolerances &tol,
                 BranchSet &out)
        : qmc_(qmc), tol_(tol), out_(out), choice_(qmc.sites().size(), 0) {}

    void run(StateVector v) { descend(0, 0, std::move(v)); }

  private:
    void descend(std::size_t site, std::size_t gate, StateVector v) {
        const auto &ops = qmc_.body().ops;
        const auto &sites = qmc_.sites();
        const std::size_t stop = site < sites.size() ? sites[site].position : ops.size();
        for (; gate < stop; ++gate) {
            apply_gate_inplace(ops[gate], v);
        }
        if (site == sites.size()) {
            if (v.norm() >= tol_.branch_drop) {
                out_.branches.push_back(std::move(v));
                out_.provenance.push_back(choice_);
            }
            return;
        }
        const auto &kraus = qmc_.plan().site_kraus[site];
        for (std::size_t k = 0; k < kraus.size(); ++k) {
            choice_[site] = static_cast<int>(k);
            StateVector next = k + 1 == kraus.size() ? std::move(v) : v;
            matvec_2level_inplace(kraus[k], sites[site].qubit, next);
            // Complete Kraus factors and unitaries never grow the norm, so a
            // negligible partial branch stays negligible.
            if (qmc_.trace_preserving() && next.norm() < tol_.branch_drop) {
                continue;
            }
            descend(site + 1, gate, std::move(next));
        }
    }

    const QuantumMarkovChain &qmc_;
    const Tolerances &tol_;
    BranchSet &out_;
    std::vector<int> choice_;
};

} // namespace

namespace {

Matrix2 gate_2x2(const GateOp &op) {
    using namespace std::complex_literals;
    const double r = 1.0 / std::numbers::sqrt2;
    switch (op.kind) {
    case GateKind::X: return {0, 1, 1, 0};
    case GateKind::Y: return {0, -1i, 1i, 0};
    case GateKind::Z: return {1, 0, 0, -1};
    case GateKind::H: return {r, r, r, -r};
    case GateKind::S: return {1, 0, 0, 1i};
    case GateKind::SDG: return {1, 0, 0, -1i};
    case GateKind::T: return {1, 0, 0, std::polar(1.0, std::numbers::pi / 4)};
    case GateKind::TDG: return {1, 0, 0, std::polar(1.0, -std::numbers::pi / 4)};
    case GateKind::U3: {
        const auto [theta, phi, lambda] = op.params;
        if (theta == 0.0) {
            return {1, 0, 0, std::polar(1.0, phi + lambda)};
        }
        const double c = std::cos(theta / 2), s = std::sin(theta / 2);
        return {c, -std::polar(s, lambda), std::polar(s, phi), std::polar(c, phi + lambda)};
    }
    default:
        throw UsageError("single_qubit_matrix: " + std::string(mnemonic(op.kind)) +
                         " is not a single-qubit gate");
    }
}

} // namespace

DenseMatrix single_qubit_matrix(const GateOp &op) {
    const Matrix2 m = gate_2x2(op);
    return DenseMatrix(2, 2, {m[0], m[1], m[2], m[3]});
}

void apply_gate_inplace(const GateOp &op, StateVector &v) {
    check_operands(op, v);
    const int n = v.num_qubits();
    auto amps = v.amplitudes();
    switch (op.kind) {
    case GateKind::CX: {
        const std::size_t c = bit_of(n, op.qubits[0]), t = bit_of(n, op.qubits[1]);
        for (std::size_t i = 0; i < amps.size(); ++i) {
            if ((i & c) && !(i & t)) {
                std::swap(amps[i], amps[i | t]);
            }
        }
        return;
    }
    case GateKind::CZ: {
        const std::size_t mask = bit_of(n, op.qubits[0]) | bit_of(n, op.qubits[1]);
        for (std::size_t i = 0; i < amps.size(); ++i) {
            if ((i & mask) == mask) {
                amps[i] = -amps[i];
            }
        }
        return;
    }
    case GateKind::CCX: {
        const std::size_t c = bit_of(n, op.qubits[0]) | bit_of(n, op.qubits[1]);
        const std::size_t t = bit_of(n, op.qubits[2]);
        for (std::size_t i = 0; i < amps.size(); ++i) {
            if ((i & c) == c && !(i & t)) {
                std::swap(amps[i], amps[i | t]);
            }
        }
        return;
    }
    case GateKind::SWAP: {
        const std::size_t a = bit_of(n, op.qubits[0]), b = bit_of(n, op.qubits[1]);
        for (std::size_t i = 0; i < amps.size(); ++i) {
            if ((i & a) && !(i & b)) {
                std::swap(amps[i], amps[(i & ~a) | b]);
            }
        }
        return;
    }
    default:
        apply_2x2_inplace(gate_2x2(op), op.qubits[0], v);
        return;
    }
}

StateVector apply_gate(const GateOp &op, StateVector v) {
    apply_gate_inplace(op, v);
    return v;
}

StateVector apply_circuit(const Circuit &circuit, StateVector v) {
    if (v.num_qubits() != circuit.num_qubits) {
        throw UsageError("apply_circuit: state has " + std::to_string(v.num_qubits()) +
                         " qubits, circuit has " + std::to_string(circuit.num_qubits));
    }
    for (const auto &op : circuit.ops) {
        apply_gate_inplace(op, v);
    }
    return v;
}

BranchSet step_image(const QuantumMarkovChain &qmc, const StateVector &v,
                     const Tolerances &tol) {
    if (v.num_qubits() != qmc.num_qubits()) {
        throw UsageError("step_image: state has " + std::to_string(v.num_qubits()) +
                         " qubits, chain has " + std::to_string(qmc.num_qubits()));
    }
    BranchSet out;
    BranchWalker(qmc, tol, out).run(v);
    return out;
}

BranchSet partial_trace_branches(const StateVector &v, int traced_qubit,
                                 const Tolerances &tol) {
    if (traced_qubit < 0 || traced_qubit >= v.num_qubits()) {
        throw UsageError("partial_trace_branches: qubit " + std::to_string(traced_qubit) +
                         " out of range");
    }
    const auto kraus = kraus_for(Reset{});
    BranchSet out;
    for (std::size_t k = 0; k < kraus.size(); ++k) {
        StateVector b = matvec_2level(kraus[k], traced_qubit, v);
        if (b.norm() >= tol.branch_drop) {
            out.branches.push_back(std::move(b));
            out.provenance.push_back({static_cast<int>(k)});
        }
    }
    return out;
}

StateVector max_entangled(int n, int qubit_cap) {
    if (n < 1) {
        throw UsageError("max_entangled: need at least one qubit per half");
    }
    check_qubit_cap(2 * n, qubit_cap);
    StateVector phi = StateVector::zero(2 * n);
    const std::size_t d = std::size_t{1} << n;
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::size_t i = 0; i < d; ++i) {
        phi[i * d + i] = amp;
    }
    return phi;
}

BranchSet choi_branches(const QuantumMarkovChain &qmc, const Tolerances &tol,
                        int qubit_cap) {
    const int n = qmc.num_qubits();
    check_qubit_cap(2 * n, qubit_cap);
    // The channel acts on the first half; reuse the chain on a wider register.
    Circuit wide = qmc.body();
    wide.num_qubits = 2 * n;
    const QuantumMarkovChain lifted = build_qmc(std::move(wide), qmc.sites(),
                                                BuildOptions{qmc.branch_count()});
    return step_image(lifted, max_entangled(n, qubit_cap), tol);
}

} // namespace qmcreach
