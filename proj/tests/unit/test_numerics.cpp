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


#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "qmcreach/errors.hpp"
#include "qmcreach/numerics.hpp"
#include "support/dense_oracle.hpp"

namespace qmcreach {
namespace {

using testing::gaussian_state;
using testing::ket;

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

StateVector plus() { return ket(1, {{0, kInvSqrt2}, {1, kInvSqrt2}}); }

TEST(Tolerances, DefaultsSatisfyOrdering) {
    Tolerances tol;
    EXPECT_NO_THROW(tol.validate());
    EXPECT_LT(tol.branch_drop, tol.null_threshold);
    EXPECT_LT(tol.null_threshold, tol.ortho_check);
}

TEST(Tolerances, RejectsBrokenOrdering) {
    Tolerances tol;
    tol.branch_drop = 1e-6;
    EXPECT_THROW(tol.validate(), UsageError);
    tol = Tolerances{};
    tol.ortho_check = 2.0;
    EXPECT_THROW(tol.validate(), UsageError);
    tol = Tolerances{};
    tol.branch_drop = 0.0;
    EXPECT_THROW(tol.validate(), UsageError);
}

TEST(StateVector, ConstructionChecks) {
    EXPECT_THROW(StateVector(0), UsageError);
    EXPECT_THROW(StateVector(kMaxQubits + 1), UsageError);
    EXPECT_THROW(StateVector(2, std::vector<Complex>(3)), UsageError);
    EXPECT_THROW(StateVector(1, {Complex(NAN, 0), 0.0}), UsageError);
    StateVector v(2);
    EXPECT_EQ(v.dim(), 4u);
    EXPECT_EQ(v[0], Complex(1.0));
    EXPECT_TRUE(v.is_normalized());
    EXPECT_FALSE(StateVector::zero(2).is_normalized());
    EXPECT_THROW(StateVector::basis_state(2, 4), UsageError);
}

TEST(StateVector, CapCheck) {
    EXPECT_NO_THROW(check_qubit_cap(12, 12));
    EXPECT_THROW(check_qubit_cap(13, 12), CapExceeded);
}

TEST(InnerProduct, Examples) {
    const auto zero = StateVector::basis_state(1, 0);
    const auto one = StateVector::basis_state(1, 1);
    EXPECT_EQ(inner_product(zero, zero), Complex(1.0, 0.0));
    EXPECT_EQ(inner_product(zero, one), Complex(0.0, 0.0));
    EXPECT_NEAR(inner_product(plus(), zero).real(), 0.70710678, 1e-8);
    EXPECT_NEAR(inner_product(plus(), zero).imag(), 0.0, 1e-15);
    EXPECT_THROW(inner_product(StateVector(1), StateVector(2)), UsageError);
}

TEST(InnerProduct, ConjugateLinearity) {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + trial % 4;
        const auto a = gaussian_state(n, rng);
        const auto b = gaussian_state(n, rng);
        const Complex alpha(g(rng), g(rng));
        const Complex ab = inner_product(a, b);
        EXPECT_LT(std::abs(inner_product(a, alpha * b) - alpha * ab), 1e-12);
        EXPECT_LT(std::abs(inner_product(alpha * a, b) - std::conj(alpha) * ab), 1e-12);
    }
}

TEST(Normalize, Examples) {
    const auto scaled = normalize(ket(2, {{0, 2.0}}));
    ASSERT_TRUE(scaled.has_value());
    EXPECT_EQ(*scaled, StateVector::basis_state(2, 0));
    EXPECT_FALSE(normalize(StateVector::zero(2)).has_value());
    EXPECT_FALSE(normalize(ket(1, {{0, 1e-9}})).has_value());
}

TEST(Normalize, ResultHasUnitNorm) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        StateVector v = gaussian_state(3, rng);
        v *= Complex(1e-5 + trial * 7.0, 0.0);
        const auto n = normalize(v);
        ASSERT_TRUE(n.has_value());
        EXPECT_NEAR(n->norm(), 1.0, 1e-12);
    }
}

TEST(GramSchmidt, Examples) {
    const auto zero = StateVector::basis_state(1, 0);
    const auto one = StateVector::basis_state(1, 1);
    {
        const std::vector<StateVector> in{zero, one};
        const auto out = gram_schmidt(in);
        ASSERT_EQ(out.size(), 2u);
        EXPECT_LT(std::abs(out[0][0] - 1.0), 1e-12);
        EXPECT_LT(std::abs(out[1][1] - 1.0), 1e-12);
    }
    {
        const std::vector<StateVector> in{zero, zero};
        EXPECT_EQ(gram_schmidt(in).size(), 1u);
    }
    {
        const std::vector<StateVector> in{zero, plus()};
        const auto out = gram_schmidt(in);
        ASSERT_EQ(out.size(), 2u);
        EXPECT_LT(std::abs(inner_product(out[0], out[1])), 1e-7);
        EXPECT_LT(testing::worst_residual(out, in), 1e-7);
    }
    EXPECT_TRUE(gram_schmidt(std::vector<StateVector>{}).empty());
}

TEST(GramSchmidt, OrthonormalAndSpanning) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 1 + trial % 3;
        const std::size_t d = std::size_t{1} << n;
        std::vector<StateVector> in;
        const int count = 1 + trial % 7;
        for (int k = 0; k < count; ++k) {
            in.push_back(gaussian_state(n, rng));
        }
        // A linear combination adds no new direction.
        in.push_back(Complex(0.3, -1.0) * in[0] + in.back());
        const auto out = gram_schmidt(in);
        EXPECT_LE(out.size(), std::min(in.size(), d));
        EXPECT_EQ(out.size(), std::min<std::size_t>(count, d));
        for (std::size_t i = 0; i < out.size(); ++i) {
            EXPECT_NEAR(out[i].norm(), 1.0, 1e-10);
            for (std::size_t j = 0; j < i; ++j) {
                EXPECT_LE(std::abs(inner_product(out[i], out[j])), 1e-7);
            }
        }
        EXPECT_LE(testing::worst_residual(out, in), 1e-7);
        const auto again = gram_schmidt(out);
        EXPECT_EQ(again.size(), out.size());
        EXPECT_LE(testing::worst_residual(again, out), 1e-7);
    }
}

TEST(GramSchmidt, NearlyParallelInputsStayOrthogonal) {
    // Classical Gram-Schmidt loses orthogonality on this family.
    const double eps = 1e-7;
    std::vector<StateVector> in{ket(2, {{0, 1}, {1, eps}}), ket(2, {{0, 1}, {2, eps}}),
                                ket(2, {{0, 1}, {3, eps}})};
    const auto out = gram_schmidt(in);
    ASSERT_EQ(out.size(), 3u);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            EXPECT_LT(std::abs(inner_product(out[i], out[j])), 1e-12);
        }
    }
}

TEST(ExtendOrthonormal, RefusesBeyondDimension) {
    std::vector<StateVector> basis;
    EXPECT_TRUE(extend_orthonormal(basis, StateVector::basis_state(1, 0)));
    EXPECT_FALSE(extend_orthonormal(basis, StateVector::basis_state(1, 0)));
    EXPECT_TRUE(extend_orthonormal(basis, plus()));
    EXPECT_FALSE(extend_orthonormal(basis, StateVector::basis_state(1, 1)));
    EXPECT_EQ(basis.size(), 2u);
}

TEST(ProjectOnto, Examples) {
    const std::vector<StateVector> basis{StateVector::basis_state(1, 0)};
    const auto p = project_onto(basis, plus());
    EXPECT_NEAR(p[0].real(), kInvSqrt2, 1e-15);
    EXPECT_EQ(p[1], Complex(0.0));
    const auto s = ket(1, {{0, 0.25}});
    EXPECT_LT((project_onto(basis, s) - s).norm(), 1e-10);
    EXPECT_EQ(project_onto({}, plus()), StateVector::zero(1));
}

TEST(ProjectOnto, LinearIdempotentContractive) {
    std::mt19937_64 rng(17);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + trial % 2;
        std::vector<StateVector> raw;
        for (int k = 0; k < 1 + trial % 3; ++k) {
            raw.push_back(gaussian_state(n, rng));
        }
        const auto basis = gram_schmidt(raw);
        const auto s = gaussian_state(n, rng);
        const auto t = gaussian_state(n, rng);
        const Complex a(g(rng), g(rng));
        const auto ps = project_onto(basis, s);
        EXPECT_LT((project_onto(basis, ps) - ps).norm(), 1e-10);
        EXPECT_LE(ps.norm(), s.norm() + 1e-10);
        const auto lhs = project_onto(basis, a * s + t);
        const auto rhs = a * ps + project_onto(basis, t);
        EXPECT_LT((lhs - rhs).norm(), 1e-10);
    }
}

TEST(Matvec2Level, Examples) {
    const DenseMatrix x(2, 2, {0.0, 1.0, 1.0, 0.0});
    EXPECT_EQ(matvec_2level(x, 0, StateVector(2)), StateVector::basis_state(2, 2));

    const DenseMatrix h(2, 2, {kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2});
    const auto hv = matvec_2level(h, 0, StateVector(1));
    EXPECT_NEAR(hv[0].real(), kInvSqrt2, 1e-15);
    EXPECT_NEAR(hv[1].real(), kInvSqrt2, 1e-15);
    EXPECT_NEAR(h(0, 1).real(), kInvSqrt2, 0.0);

    const DenseMatrix e1(2, 2, {0.0, 1.0, 0.0, 0.0});
    EXPECT_EQ(matvec_2level(e1, 0, StateVector::basis_state(1, 1)),
              StateVector::basis_state(1, 0));

    EXPECT_THROW(matvec_2level(x, 2, StateVector(2)), UsageError);
    EXPECT_THROW(matvec_2level(DenseMatrix::identity(4), 0, StateVector(2)), UsageError);
}

TEST(Matvec2Level, MatchesKroneckerEmbedding) {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> ang(-3.0, 3.0);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 1 + trial % 4;
        const int target = trial % n;
        const auto m = testing::u3(ang(rng), ang(rng), ang(rng));
        testing::Mat full = testing::eye(1);
        for (int q = 0; q < n; ++q) {
            full = testing::kron2(full, q == target ? m : testing::eye(2));
        }
        const auto v = gaussian_state(n, rng);
        const DenseMatrix dm(2, 2, {m[0][0], m[0][1], m[1][0], m[1][1]});
        const auto got = matvec_2level(dm, target, v);
        const auto want = testing::apply(full, v.amplitudes());
        for (std::size_t k = 0; k < v.dim(); ++k) {
            EXPECT_LT(std::abs(got[k] - want[k]), 1e-12);
        }
        EXPECT_NEAR(got.norm(), 1.0, 1e-10);
        EXPECT_EQ(matvec_2level(DenseMatrix::identity(2), target, v), v);
    }
}

TEST(DenseMatrix, BasicAlgebra) {
    const DenseMatrix a(2, 2, {1.0, Complex(0, 2), 3.0, 4.0});
    const auto ad = a.adjoint();
    EXPECT_EQ(ad(0, 1), Complex(3.0));
    EXPECT_EQ(ad(1, 0), Complex(0, -2));
    EXPECT_EQ(a.trace(), Complex(5.0));
    EXPECT_EQ((a * DenseMatrix::identity(2)), a);
    const auto k = kron(DenseMatrix::identity(2), a);
    EXPECT_EQ(k.rows(), 4u);
    EXPECT_EQ(k(3, 2), Complex(3.0));
    EXPECT_EQ(k(0, 2), Complex(0.0));
    EXPECT_THROW(DenseMatrix(2, 2, {1.0}), UsageError);
    const auto o = outer(StateVector::basis_state(1, 1), StateVector::basis_state(1, 0));
    EXPECT_EQ(o(1, 0), Complex(1.0));
    EXPECT_EQ(o(0, 1), Complex(0.0));
}

TEST(Tensor, BigEndianOrder) {
    // |1> (x) |0> is index 2 with qubit 0 most significant.
    const auto v = tensor(StateVector::basis_state(1, 1), StateVector::basis_state(1, 0));
    EXPECT_EQ(v, StateVector::basis_state(2, 2));
}

} // namespace
} // namespace qmcreach
