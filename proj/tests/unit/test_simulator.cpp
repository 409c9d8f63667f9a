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


#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "qmcreach/errors.hpp"
#include "qmcreach/families.hpp"
#include "qmcreach/simulator.hpp"
#include "support/dense_oracle.hpp"

namespace qmcreach {
namespace {

using testing::gaussian_state;
using testing::ket;
using testing::Mat;

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

double dist(const StateVector &a, const StateVector &b) { return (a - b).norm(); }

Circuit body_of(int n, std::vector<GateOp> ops = {}) {
    Circuit c;
    c.num_qubits = n;
    c.ops = std::move(ops);
    return c;
}

TEST(ApplyGate, HadamardIsAnInvolution) {
    const auto h = make_gate(GateKind::H, {0});
    EXPECT_LT(dist(apply_gate(h, apply_gate(h, StateVector(1))), StateVector(1)), 1e-12);
}

TEST(ApplyGate, ToffoliOn110) {
    const auto v = apply_gate(make_gate(GateKind::CCX, {0, 1, 2}), StateVector::basis_state(3, 6));
    EXPECT_EQ(v, StateVector::basis_state(3, 7));
}

TEST(ApplyGate, U3OnZero) {
    const double th = 1.1, ph = -0.4, la = 2.5;
    const auto v = apply_gate(make_u3(0, th, ph, la), StateVector(1));
    const Mat u = testing::u3(th, ph, la);
    EXPECT_LT(std::abs(v[0] - u[0][0]), 1e-15);
    EXPECT_LT(std::abs(v[1] - u[1][0]), 1e-15);
    EXPECT_LT(std::abs(v[0] - std::cos(th / 2)), 1e-15);
    EXPECT_LT(std::abs(v[1] - std::exp(Complex(0, ph)) * std::sin(th / 2)), 1e-15);
    const auto m = single_qubit_matrix(make_u3(0, th, ph, la));
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            EXPECT_LT(std::abs(m(r, c) - u[r][c]), 1e-15);
}

TEST(ApplyGate, EveryKindMatchesDenseDefinition) {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> ang(-3.2, 3.2);
    const GateKind kinds[] = {GateKind::X,   GateKind::Y,  GateKind::Z,   GateKind::H,
                              GateKind::S,   GateKind::SDG, GateKind::T,  GateKind::TDG,
                              GateKind::U3,  GateKind::CX, GateKind::CZ,  GateKind::CCX,
                              GateKind::SWAP};
    for (int n = 1; n <= 4; ++n) {
        for (GateKind kind : kinds) {
            if (arity(kind) > n) {
                continue;
            }
            for (int trial = 0; trial < 6; ++trial) {
                std::vector<int> qs(static_cast<std::size_t>(n));
                for (int q = 0; q < n; ++q) qs[static_cast<std::size_t>(q)] = q;
                std::shuffle(qs.begin(), qs.end(), rng);
                qs.resize(static_cast<std::size_t>(arity(kind)));
                const GateOp op = kind == GateKind::U3
                                      ? make_u3(qs[0], ang(rng), ang(rng), ang(rng))
                                      : make_gate(kind, qs);
                const auto v = gaussian_state(n, rng);
                const auto got = apply_gate(op, v);
                const auto want = testing::apply(testing::gate_matrix(op, n), v.amplitudes());
                for (std::size_t k = 0; k < v.dim(); ++k) {
                    EXPECT_LT(std::abs(got[k] - want[k]), 1e-12)
                        << mnemonic(kind) << " n=" << n;
                }
                EXPECT_NEAR(got.norm(), 1.0, 1e-10);
            }
        }
    }
}

TEST(ApplyGate, RejectsBadOperands) {
    EXPECT_THROW(apply_gate(make_gate(GateKind::X, {2}), StateVector(2)), UsageError);
    EXPECT_THROW(apply_gate(make_gate(GateKind::CX, {0, 0}), StateVector(2)), UsageError);
}

TEST(StepImage, UnitaryWalkFromOrigin) {
    const auto qmc = build_qmc(qrw_circuit(2), {});
    const auto img = step_image(qmc, StateVector(3));
    ASSERT_EQ(img.size(), 1u);
    EXPECT_LT(dist(img.branches[0], ket(3, {{1, kInvSqrt2}, {7, kInvSqrt2}})), 1e-12);
    EXPECT_TRUE(img.provenance[0].empty());
}

TEST(StepImage, MeasurementSplitsSuperposition) {
    const auto qmc = build_qmc(body_of(2), {ChannelSite{0, 0, MeasureZ{}}});
    const auto img = step_image(qmc, ket(2, {{0, kInvSqrt2}, {2, kInvSqrt2}}));
    ASSERT_EQ(img.size(), 2u);
    EXPECT_LT(dist(img.branches[0], ket(2, {{0, kInvSqrt2}})), 1e-15);
    EXPECT_LT(dist(img.branches[1], ket(2, {{2, kInvSqrt2}})), 1e-15);
    EXPECT_EQ(img.provenance[0], std::vector<int>{0});
    EXPECT_EQ(img.provenance[1], std::vector<int>{1});
}

TEST(StepImage, FaultyWalkBranchesSumToOne) {
    const auto qmc = build_qmc(qrw_circuit(2), {ChannelSite{0, 0, BitFlip{0.5}}});
    const auto img = step_image(qmc, StateVector(3));
    ASSERT_EQ(img.size(), 2u);
    EXPECT_NEAR(img.branches[0].norm_squared() + img.branches[1].norm_squared(), 1.0, 1e-12);
}

TEST(StepImage, DropsZeroBranches) {
    const auto qmc = build_qmc(body_of(1), {ChannelSite{0, 0, BitFlip{0.0}}});
    const auto img = step_image(qmc, StateVector(1));
    ASSERT_EQ(img.size(), 1u);
    EXPECT_EQ(img.provenance[0], std::vector<int>{0});
}

TEST(StepImage, WidthMismatch) {
    const auto qmc = build_qmc(body_of(2), {});
    EXPECT_THROW(step_image(qmc, StateVector(3)), UsageError);
}

TEST(StepImage, MatchesDenseEvolution) {
    std::mt19937_64 rng(37);
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        RandomInstanceOptions opts;
        opts.max_sites = 3;
        const auto inst = random_instance(seed, opts);
        const int n = inst.qmc.num_qubits();
        const std::size_t d = std::size_t{1} << n;
        const auto v = gaussian_state(n, rng);
        const auto img = step_image(inst.qmc, v);
        Mat want = testing::zeros(d);
        const Mat rho = testing::projector(v.amplitudes());
        for (const auto &e : testing::dense_branch_operators(inst.qmc)) {
            const Mat term = testing::matmul(testing::matmul(e, rho), testing::dagger(e));
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j)
                    want[i][j] += term[i][j];
        }
        EXPECT_LT(testing::max_diff(testing::branch_sum(img.branches, d), want), 1e-9)
            << "seed " << seed;
        double total = 0.0;
        for (const auto &b : img.branches) {
            total += b.norm_squared();
        }
        EXPECT_NEAR(total, 1.0, 1e-8) << "seed " << seed;
    }
}

TEST(StepImage, ProvenanceFollowsLexicographicOrder) {
    const auto qmc = build_qmc(body_of(2, {make_gate(GateKind::H, {0}), make_gate(GateKind::H, {1})}),
                               {ChannelSite{1, 0, MeasureZ{}}, ChannelSite{2, 1, MeasureZ{}}});
    const auto img = step_image(qmc, StateVector(2));
    ASSERT_EQ(img.size(), 4u);
    EXPECT_EQ(img.provenance[0], (std::vector<int>{0, 0}));
    EXPECT_EQ(img.provenance[1], (std::vector<int>{0, 1}));
    EXPECT_EQ(img.provenance[2], (std::vector<int>{1, 0}));
    EXPECT_EQ(img.provenance[3], (std::vector<int>{1, 1}));
    for (std::size_t k = 0; k < 4; ++k) {
        EXPECT_NEAR(std::abs(img.branches[k][k]), 0.5, 1e-15);
    }
}

TEST(PartialTrace, SymbolicExampleWithRandomHalves) {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 10; ++trial) {
        const int m = 1 + trial % 3;
        const auto lambda = gaussian_state(m, rng);
        const auto mu = gaussian_state(m, rng);
        const auto psi = tensor(StateVector::basis_state(1, 0), lambda) +
                         tensor(StateVector::basis_state(1, 1), mu);
        const auto out = partial_trace_branches(psi, 0);
        ASSERT_EQ(out.size(), 2u);
        EXPECT_LT(dist(out.branches[0], tensor(StateVector::basis_state(1, 0), lambda)), 1e-14);
        EXPECT_LT(dist(out.branches[1], tensor(StateVector::basis_state(1, 0), mu)), 1e-14);
    }
}

TEST(PartialTrace, ProductStateKeepsOneBranch) {
    const auto phi = ket(1, {{0, 0.6}, {1, 0.8}});
    const auto v = tensor(StateVector::basis_state(1, 0), phi);
    const auto out = partial_trace_branches(v, 0);
    ASSERT_EQ(out.size(), 1u);
    EXPECT_LT(dist(out.branches[0], v), 1e-15);
}

TEST(PartialTrace, BellStateGivesMaximallyMixedHalf) {
    const auto bell = ket(2, {{0, kInvSqrt2}, {3, kInvSqrt2}});
    const auto out = partial_trace_branches(bell, 0);
    const Mat sum = testing::branch_sum(out.branches, 4);
    const Mat want = {{0.5, 0, 0, 0}, {0, 0.5, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}};
    EXPECT_LT(testing::max_diff(sum, want), 1e-15);
}

TEST(PartialTrace, MatchesBruteForceDensity) {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 2 + trial % 3;
        const int q = static_cast<int>(rng() % static_cast<unsigned>(n));
        const auto v = gaussian_state(n, rng);
        const auto out = partial_trace_branches(v, q);
        EXPECT_LT(testing::max_diff(testing::branch_sum(out.branches, v.dim()),
                                    testing::traced_with_zero(v.amplitudes(), n, q)),
                  1e-10);
    }
    EXPECT_THROW(partial_trace_branches(StateVector(2), 2), UsageError);
}

TEST(MaxEntangled, SmallCases) {
    EXPECT_LT(dist(max_entangled(1), ket(2, {{0, kInvSqrt2}, {3, kInvSqrt2}})), 1e-15);
    EXPECT_LT(dist(max_entangled(2), ket(4, {{0, 0.5}, {5, 0.5}, {10, 0.5}, {15, 0.5}})), 1e-15);
    for (int n = 1; n <= kDefaultQubitCap / 2; ++n) {
        EXPECT_NEAR(max_entangled(n).norm(), 1.0, 1e-12);
    }
    EXPECT_THROW(max_entangled(kDefaultQubitCap / 2 + 1), CapExceeded);
}

TEST(ChoiBranches, IdentityAndUnitaryChannels) {
    const auto id = choi_branches(build_qmc(body_of(1), {}));
    ASSERT_EQ(id.size(), 1u);
    EXPECT_LT(dist(id.branches[0], max_entangled(1)), 1e-15);

    const auto body = body_of(2, {make_gate(GateKind::H, {0}), make_gate(GateKind::CX, {0, 1})});
    const auto u = choi_branches(build_qmc(body, {}));
    ASSERT_EQ(u.size(), 1u);
    Circuit lifted = body;
    lifted.num_qubits = 4;
    EXPECT_LT(dist(u.branches[0], apply_circuit(lifted, max_entangled(2))), 1e-14);
}

TEST(ChoiBranches, BitFlipMatchesDirectConstruction) {
    const auto out = choi_branches(build_qmc(body_of(1), {ChannelSite{0, 0, BitFlip{0.5}}}));
    ASSERT_EQ(out.size(), 2u);
    // J(E)/d with J(E) = sum_ij E(|i><j|) (x) |i><j| and E(M) = (M + XMX)/2.
    const Mat x = {{0.0, 1.0}, {1.0, 0.0}};
    Mat want = testing::zeros(4);
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            Mat eij = testing::zeros(2);
            eij[i][j] = 1.0;
            const Mat flipped = testing::matmul(testing::matmul(x, eij), x);
            Mat img = testing::zeros(2);
            for (std::size_t r = 0; r < 2; ++r)
                for (std::size_t c = 0; c < 2; ++c)
                    img[r][c] = 0.5 * (eij[r][c] + flipped[r][c]);
            const Mat block = testing::kron2(img, eij);
            for (std::size_t r = 0; r < 4; ++r)
                for (std::size_t c = 0; c < 4; ++c)
                    want[r][c] += 0.5 * block[r][c];
        }
    }
    EXPECT_LT(testing::max_diff(testing::branch_sum(out.branches, 4), want), 1e-15);
}

TEST(ChoiBranches, CapApplies) {
    EXPECT_THROW(choi_branches(build_qmc(body_of(4), {}), {}, 7), CapExceeded);
}

} // namespace
} // namespace qmcreach
