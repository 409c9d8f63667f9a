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

#include "qmcreach/families.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <random>

#include "qmcreach/errors.hpp"

namespace qmcreach {

namespace {

void push(Circuit &c, GateKind kind, std::vector<int> qubits) {
    c.ops.push_back(make_gate(kind, std::move(qubits)));
}

// Ancilla-free controlled-Z on k >= 4 qubits.
void append_phase_polynomial_mcz(Circuit &circuit, const std::vector<int> &qubits) {
    const int k = static_cast<int>(qubits.size());
    const double unit = std::numbers::pi / std::ldexp(1.0, k - 1);
    // Parities whose highest member is qubits[t]; the Gray code walks the
    // subsets of qubits[0..t-1] changing one CX at a time.
    for (int t = k - 1; t >= 0; --t) {
        const int target = qubits[static_cast<std::size_t>(t)];
        std::uint64_t prev = 0;
        for (std::uint64_t j = 0; j < (std::uint64_t{1} << t); ++j) {
            const std::uint64_t gray = j ^ (j >> 1);
            if (const std::uint64_t diff = gray ^ prev; diff != 0) {
                push(circuit, GateKind::CX,
                     {qubits[static_cast<std::size_t>(std::countr_zero(diff))], target});
            }
            prev = gray;
            const int size = std::popcount(gray) + 1;
            const double theta = (size % 2 == 1 ? unit : -unit);
            circuit.ops.push_back(make_u3(target, 0.0, 0.0, theta));
        }
        for (std::uint64_t rest = prev; rest != 0; rest &= rest - 1) {
            push(circuit, GateKind::CX,
                 {qubits[static_cast<std::size_t>(std::countr_zero(rest))], target});
        }
    }
}

std::vector<int> range(int first, int last) {
    std::vector<int> out;
    for (int q = first; q < last; ++q) {
        out.push_back(q);
    }
    return out;
}

// For every position bit from most to least significant: flip it when the
// coin and all lower bits are 1. Adds one to the position when coin = 1.
void append_controlled_increment(Circuit &c, int m) {
    for (int j = 1; j <= m; ++j) {
        std::vector<int> controls{0};
        for (int lower = j + 1; lower <= m; ++lower) {
            controls.push_back(lower);
        }
        append_mcx(c, controls, j);
    }
}

} // namespace

void append_mcz(Circuit &circuit, const std::vector<int> &qubits) {
    switch (qubits.size()) {
    case 0:
        throw UsageError("append_mcz: no qubits");
    case 1:
        push(circuit, GateKind::Z, {qubits[0]});
        return;
    case 2:
        push(circuit, GateKind::CZ, {qubits[0], qubits[1]});
        return;
    case 3:
        push(circuit, GateKind::H, {qubits[2]});
        push(circuit, GateKind::CCX, {qubits[0], qubits[1], qubits[2]});
        push(circuit, GateKind::H, {qubits[2]});
        return;
    default:
        append_phase_polynomial_mcz(circuit, qubits);
    }
}

void append_mcx(Circuit &circuit, const std::vector<int> &controls, int target) {
    switch (controls.size()) {
    case 0:
        push(circuit, GateKind::X, {target});
        return;
    case 1:
        push(circuit, GateKind::CX, {controls[0], target});
        return;
    case 2:
        push(circuit, GateKind::CCX, {controls[0], controls[1], target});
        return;
    default: {
        std::vector<int> all = controls;
        all.push_back(target);
        push(circuit, GateKind::H, {target});
        append_mcz(circuit, all);
        push(circuit, GateKind::H, {target});
    }
    }
}

Circuit qrw_circuit(int position_qubits) {
    const int m = position_qubits;
    if (m < 1 || m + 1 > kMaxQubits) {
        throw UsageError("qrw_circuit: position qubit count out of range");
    }
    Circuit c;
    c.num_qubits = m + 1;
    push(c, GateKind::H, {0});
    // coin = 0: increment
    push(c, GateKind::X, {0});
    append_controlled_increment(c, m);
    push(c, GateKind::X, {0});
    // coin = 1: decrement, as complement-increment-complement
    for (int q = 1; q <= m; ++q) {
        push(c, GateKind::X, {q});
    }
    append_controlled_increment(c, m);
    for (int q = 1; q <= m; ++q) {
        push(c, GateKind::X, {q});
    }
    return c;
}

Circuit grover_circuit(int num_qubits, std::uint64_t marked) {
    const int n = num_qubits;
    if (n < 2 || n > kMaxQubits) {
        throw UsageError("grover_circuit: need 2..30 qubits");
    }
    if (marked >= (std::uint64_t{1} << n)) {
        throw UsageError("grover_circuit: marked item out of range");
    }
    Circuit c;
    c.num_qubits = n;
    const auto all = range(0, n);
    std::vector<int> zeros;
    for (int q = 0; q < n; ++q) {
        if (((marked >> (n - 1 - q)) & 1U) == 0) {
            zeros.push_back(q);
        }
    }
    for (int q : zeros) push(c, GateKind::X, {q});
    append_mcz(c, all);
    for (int q : zeros) push(c, GateKind::X, {q});

    for (int q : all) push(c, GateKind::H, {q});
    for (int q : all) push(c, GateKind::X, {q});
    append_mcz(c, all);
    for (int q : all) push(c, GateKind::X, {q});
    for (int q : all) push(c, GateKind::H, {q});
    return c;
}

Circuit rus_v3_circuit() {
    Circuit c;
    c.num_qubits = 3;
    push(c, GateKind::CCX, {0, 1, 2});
    push(c, GateKind::S, {2});
    push(c, GateKind::CCX, {0, 1, 2});
    push(c, GateKind::H, {0});
    push(c, GateKind::H, {1});
    push(c, GateKind::Z, {2});
    push(c, GateKind::H, {0});
    push(c, GateKind::H, {1});
    return c;
}

std::vector<ChannelSite> rus_v3_sites() {
    constexpr std::size_t after_core = 6;
    return {ChannelSite{after_core, 0, MeasureZ{}}, ChannelSite{after_core, 1, MeasureZ{}},
            ChannelSite{after_core, 0, Reset{}}, ChannelSite{after_core, 1, Reset{}}};
}

StateVector product_state(std::string_view spec) {
    if (spec.empty() || static_cast<int>(spec.size()) > kMaxQubits) {
        throw ParseError(0, "product state spec must have 1.." +
                                std::to_string(kMaxQubits) + " characters");
    }
    const double r = 1.0 / std::numbers::sqrt2;
    std::vector<Complex> amps{1.0};
    for (char ch : spec) {
        Complex a0, a1;
        switch (ch) {
        case '0': a0 = 1.0; a1 = 0.0; break;
        case '1': a0 = 0.0; a1 = 1.0; break;
        case '+': a0 = r; a1 = r; break;
        case '-': a0 = r; a1 = -r; break;
        default:
            throw ParseError(0, std::string("invalid character '") + ch +
                                    "' in state spec \"" + std::string(spec) +
                                    "\" (expected 0, 1, + or -)");
        }
        std::vector<Complex> next;
        next.reserve(amps.size() * 2);
        for (const auto &a : amps) {
            next.push_back(a * a0);
            next.push_back(a * a1);
        }
        amps = std::move(next);
    }
    return StateVector(static_cast<int>(spec.size()), std::move(amps));
}

StateVector random_state(int num_qubits, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    StateVector v = StateVector::zero(num_qubits);
    for (auto &a : v.amplitudes()) {
        a = {normal(rng), normal(rng)};
    }
    v *= 1.0 / v.norm();
    return v;
}

ChainInstance random_instance(std::uint64_t seed, const RandomInstanceOptions &opts) {
    std::mt19937_64 rng(seed);
    auto uniform_int = [&](int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    };
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);

    const int n = uniform_int(opts.min_qubits, opts.max_qubits);
    Circuit body;
    body.num_qubits = n;
    static constexpr GateKind kKinds[] = {
        GateKind::X,  GateKind::Y,   GateKind::Z,  GateKind::H,  GateKind::S,
        GateKind::SDG, GateKind::T,  GateKind::TDG, GateKind::U3, GateKind::CX,
        GateKind::CZ, GateKind::CCX, GateKind::SWAP};
    const int gates = uniform_int(0, opts.max_gates);
    while (static_cast<int>(body.ops.size()) < gates) {
        const GateKind kind = kKinds[uniform_int(0, 12)];
        if (arity(kind) > n) {
            continue;
        }
        std::vector<int> qubits = range(0, n);
        std::shuffle(qubits.begin(), qubits.end(), rng);
        qubits.resize(static_cast<std::size_t>(arity(kind)));
        if (kind == GateKind::U3) {
            body.ops.push_back(make_u3(qubits[0], angle(rng), angle(rng), angle(rng)));
        } else {
            body.ops.push_back(make_gate(kind, std::move(qubits)));
        }
    }

    std::vector<ChannelSite> sites;
    const int num_sites = uniform_int(0, opts.max_sites);
    const int kinds = opts.projective_sites ? 5 : 3;
    for (int s = 0; s < num_sites; ++s) {
        ChannelSite site;
        site.position = static_cast<std::size_t>(uniform_int(0, gates));
        site.qubit = uniform_int(0, n - 1);
        switch (uniform_int(0, kinds - 1)) {
        case 0: site.kind = BitFlip{unit(rng)}; break;
        case 1: site.kind = PhaseFlip{unit(rng)}; break;
        case 2: site.kind = AmplitudeDamping{unit(rng)}; break;
        case 3: site.kind = MeasureZ{}; break;
        default: site.kind = Reset{}; break;
        }
        sites.push_back(std::move(site));
    }

    ChainInstance inst{"random-" + std::to_string(seed),
                       sites.empty() ? "Unitary" : "Noise",
                       build_qmc(std::move(body), std::move(sites)),
                       {},
                       std::nullopt};
    const int rank = uniform_int(1, 2);
    for (int r = 0; r < rank; ++r) {
        inst.init.push_back(random_state(n, rng()));
    }
    return inst;
}

std::vector<ChainInstance> bench_instances(bool include_stretch) {
    std::vector<ChainInstance> rows;
    auto basis_pair = [](int n) {
        std::string zero(static_cast<std::size_t>(n), '0');
        std::string one = zero;
        one[0] = '1';
        return std::vector<StateVector>{product_state(zero), product_state(one)};
    };
    auto walk = [](int m, std::vector<ChannelSite> sites) {
        return build_qmc(qrw_circuit(m), std::move(sites));
    };
    for (int n : {5, 7}) {
        // Marked item: alternating bits, away from the uniform-state symmetries.
        std::uint64_t marked = 0;
        for (int q = 0; q < n; ++q) {
            marked = (marked << 1) | static_cast<std::uint64_t>(q % 2);
        }
        rows.push_back({"grover-" + std::to_string(n), "Unitary",
                        build_qmc(grover_circuit(n, marked), {}),
                        {product_state(std::string(static_cast<std::size_t>(n), '+'))},
                        2});
    }
    rows.push_back({"qrw-3", "Unitary", walk(2, {}), {product_state("000")}, 6});
    rows.push_back({"qrw-4", "Unitary", walk(3, {}), {product_state("0000")}, std::nullopt});
    rows.push_back({"qrw-6", "Unitary", walk(5, {}), {product_state("000000")}, std::nullopt});
    if (include_stretch) {
        rows.push_back({"qrw-9", "Unitary", walk(8, {}), basis_pair(9), std::nullopt});
    }
    for (int m : {3, 5}) {
        std::vector<ChannelSite> noise{ChannelSite{0, 0, AmplitudeDamping{0.5}}};
        rows.push_back({"qrw-" + std::to_string(m + 1) + "-noise", "Noise",
                        walk(m, std::move(noise)), basis_pair(m + 1), std::nullopt});
    }
    rows.push_back({"rus-v3", "Measure", build_qmc(rus_v3_circuit(), rus_v3_sites()),
                    {tensor(product_state("++"), random_state(1, 5))}, 2});
    return rows;
}

} // namespace qmcreach
