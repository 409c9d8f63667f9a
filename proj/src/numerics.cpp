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

#include "qmcreach/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qmcreach/errors.hpp"

namespace qmcreach {

namespace {

bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require_same_width(const StateVector &a, const StateVector &b,
                        const char *op) {
    if (a.num_qubits() != b.num_qubits()) {
        throw UsageError(std::string(op) + ": dimension mismatch (" +
                         std::to_string(a.num_qubits()) + " vs " +
                         std::to_string(b.num_qubits()) + " qubits)");
    }
}

// Removes the components of v along every basis vector, in place.
void mgs_sweep(std::span<const StateVector> basis, StateVector &v) {
    for (const auto &b : basis) {
        const Complex c = inner_product(b, v);
        auto out = v.amplitudes();
        auto in = b.amplitudes();
        for (std::size_t k = 0; k < out.size(); ++k) {
            out[k] -= c * in[k];
        }
    }
}

} // namespace

void check_qubit_cap(int num_qubits, int cap) {
    if (num_qubits > cap) {
        throw CapExceeded(num_qubits, cap);
    }
}

void Tolerances::validate() const {
    if (!(0.0 < branch_drop && branch_drop < null_threshold &&
          null_threshold < ortho_check && ortho_check < 1.0)) {
        throw UsageError("tolerances must satisfy 0 < branch_drop < "
                         "null_threshold < ortho_check < 1");
    }
}

// ---------------------------------------------------------------------------
// StateVector
// ---------------------------------------------------------------------------

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw UsageError("StateVector: qubit count must be in [1, " +
                         std::to_string(kMaxQubits) + "], got " +
                         std::to_string(num_qubits));
    }
    amplitudes_.assign(std::size_t{1} << num_qubits, Complex{0.0, 0.0});
    amplitudes_[0] = 1.0;
}

StateVector::StateVector(int num_qubits, std::vector<Complex> amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw UsageError("StateVector: qubit count must be in [1, " +
                         std::to_string(kMaxQubits) + "], got " +
                         std::to_string(num_qubits));
    }
    if (amplitudes_.size() != (std::size_t{1} << num_qubits)) {
        throw UsageError("StateVector: expected " +
                         std::to_string(std::size_t{1} << num_qubits) +
                         " amplitudes, got " +
                         std::to_string(amplitudes_.size()));
    }
    if (!std::all_of(amplitudes_.begin(), amplitudes_.end(), is_finite)) {
        throw UsageError("StateVector: non-finite amplitude");
    }
}

StateVector StateVector::basis_state(int num_qubits, std::size_t index) {
    StateVector v = zero(num_qubits);
    if (index >= v.dim()) {
        throw UsageError("basis_state: index out of range");
    }
    v[index] = 1.0;
    return v;
}

StateVector StateVector::zero(int num_qubits) {
    StateVector v(num_qubits);
    v.amplitudes_[0] = 0.0;
    return v;
}

double StateVector::norm_squared() const {
    double s = 0.0;
    for (const auto &a : amplitudes_) {
        s += std::norm(a);
    }
    return s;
}

double StateVector::norm() const { return std::sqrt(norm_squared()); }

bool StateVector::is_normalized() const {
    const double n = norm();
    return n >= 1.0 - 1e-10 && n <= 1.0 + 1e-10;
}

StateVector &StateVector::operator+=(const StateVector &other) {
    require_same_width(*this, other, "operator+=");
    for (std::size_t k = 0; k < amplitudes_.size(); ++k) {
        amplitudes_[k] += other.amplitudes_[k];
    }
    return *this;
}

StateVector &StateVector::operator-=(const StateVector &other) {
    require_same_width(*this, other, "operator-=");
    for (std::size_t k = 0; k < amplitudes_.size(); ++k) {
        amplitudes_[k] -= other.amplitudes_[k];
    }
    return *this;
}

StateVector &StateVector::operator*=(Complex scale) {
    for (auto &a : amplitudes_) {
        a *= scale;
    }
    return *this;
}

StateVector tensor(const StateVector &a, const StateVector &b) {
    std::vector<Complex> amps(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < b.dim(); ++j) {
            amps[i * b.dim() + j] = a[i] * b[j];
        }
    }
    return StateVector(a.num_qubits() + b.num_qubits(), std::move(amps));
}

// ---------------------------------------------------------------------------
// DenseMatrix
// ---------------------------------------------------------------------------

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Complex{0.0, 0.0}) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols,
                         std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows * cols) {
        throw UsageError("DenseMatrix: entry count does not match shape");
    }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

DenseMatrix DenseMatrix::adjoint() const {
    DenseMatrix m(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            m(c, r) = std::conj((*this)(r, c));
        }
    }
    return m;
}

Complex DenseMatrix::trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) {
        t += (*this)(i, i);
    }
    return t;
}

double DenseMatrix::max_abs_diff(const DenseMatrix &other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        throw UsageError("max_abs_diff: shape mismatch");
    }
    double worst = 0.0;
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        worst = std::max(worst, std::abs(entries_[k] - other.entries_[k]));
    }
    return worst;
}

DenseMatrix &DenseMatrix::operator+=(const DenseMatrix &other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        throw UsageError("DenseMatrix +=: shape mismatch");
    }
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        entries_[k] += other.entries_[k];
    }
    return *this;
}

DenseMatrix &DenseMatrix::operator*=(Complex scale) {
    for (auto &e : entries_) {
        e *= scale;
    }
    return *this;
}

DenseMatrix operator*(const DenseMatrix &a, const DenseMatrix &b) {
    if (a.cols() != b.rows()) {
        throw UsageError("matrix product: inner dimensions differ");
    }
    DenseMatrix m(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{0.0, 0.0}) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols(); ++j) {
                m(i, j) += aik * b(k, j);
            }
        }
    }
    return m;
}

DenseMatrix kron(const DenseMatrix &a, const DenseMatrix &b) {
    DenseMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ar = 0; ar < a.rows(); ++ar) {
        for (std::size_t ac = 0; ac < a.cols(); ++ac) {
            const Complex s = a(ar, ac);
            for (std::size_t br = 0; br < b.rows(); ++br) {
                for (std::size_t bc = 0; bc < b.cols(); ++bc) {
                    m(ar * b.rows() + br, ac * b.cols() + bc) = s * b(br, bc);
                }
            }
        }
    }
    return m;
}

StateVector operator*(const DenseMatrix &m, const StateVector &v) {
    if (m.rows() != v.dim() || m.cols() != v.dim()) {
        throw UsageError("matrix-vector product: shape mismatch");
    }
    StateVector out = StateVector::zero(v.num_qubits());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Complex acc = 0.0;
        for (std::size_t c = 0; c < m.cols(); ++c) {
            acc += m(r, c) * v[c];
        }
        out[r] = acc;
    }
    return out;
}

DenseMatrix outer(const StateVector &a, const StateVector &b) {
    DenseMatrix m(a.dim(), b.dim());
    for (std::size_t r = 0; r < a.dim(); ++r) {
        for (std::size_t c = 0; c < b.dim(); ++c) {
            m(r, c) = a[r] * std::conj(b[c]);
        }
    }
    return m;
}

// ---------------------------------------------------------------------------
// Vector algorithms
// ---------------------------------------------------------------------------

Complex inner_product(const StateVector &a, const StateVector &b) {
    require_same_width(a, b, "inner_product");
    Complex acc = 0.0;
    auto x = a.amplitudes();
    auto y = b.amplitudes();
    for (std::size_t k = 0; k < x.size(); ++k) {
        acc += std::conj(x[k]) * y[k];
    }
    return acc;
}

std::optional<StateVector> normalize(const StateVector &v,
                                     const Tolerances &tol) {
    const double n = v.norm();
    if (!(n > tol.null_threshold)) {
        return std::nullopt;
    }
    StateVector out = v;
    out *= 1.0 / n;
    return out;
}

StateVector project_onto(std::span<const StateVector> basis,
                         const StateVector &s) {
    StateVector out = StateVector::zero(s.num_qubits());
    for (const auto &b : basis) {
        const Complex c = inner_product(b, s);
        auto dst = out.amplitudes();
        auto src = b.amplitudes();
        for (std::size_t k = 0; k < dst.size(); ++k) {
            dst[k] += c * src[k];
        }
    }
    return out;
}

bool extend_orthonormal(std::vector<StateVector> &basis, const StateVector &v,
                        const Tolerances &tol) {
    if (!basis.empty()) {
        require_same_width(basis.front(), v, "extend_orthonormal");
    }
    if (basis.size() >= v.dim()) {
        return false;
    }
    auto unit = normalize(v, tol);
    if (!unit) {
        return false;
    }
    // Twice is enough: the second sweep restores orthogonality lost to
    // cancellation in the first.
    mgs_sweep(basis, *unit);
    mgs_sweep(basis, *unit);
    auto residual = normalize(*unit, tol);
    if (!residual) {
        return false;
    }
    basis.push_back(std::move(*residual));
    return true;
}

std::vector<StateVector> gram_schmidt(std::span<const StateVector> vs,
                                      const Tolerances &tol) {
    std::vector<StateVector> basis;
    for (const auto &v : vs) {
        extend_orthonormal(basis, v, tol);
    }
    return basis;
}

void matvec_2level_inplace(const DenseMatrix &m, int target, StateVector &v) {
    if (m.rows() != 2 || m.cols() != 2) {
        throw UsageError("matvec_2level: matrix must be 2x2");
    }
    apply_2x2_inplace({m(0, 0), m(0, 1), m(1, 0), m(1, 1)}, target, v);
}

void apply_2x2_inplace(const Matrix2 &m, int target, StateVector &v) {
    if (target < 0 || target >= v.num_qubits()) {
        throw UsageError("matvec_2level: target qubit " +
                         std::to_string(target) + " out of range for " +
                         std::to_string(v.num_qubits()) + " qubits");
    }
    const auto [m00, m01, m10, m11] = m;
    const std::size_t stride = std::size_t{1} << (v.num_qubits() - 1 - target);
    auto amps = v.amplitudes();
    const Complex zero{0.0, 0.0};
    if (m01 == zero && m10 == zero) {
        const bool upper_identity = m00 == Complex{1.0, 0.0};
        for (std::size_t base = 0; base < amps.size(); base += 2 * stride) {
            if (!upper_identity) {
                for (std::size_t k = base; k < base + stride; ++k) {
                    amps[k] *= m00;
                }
            }
            for (std::size_t k = base + stride; k < base + 2 * stride; ++k) {
                amps[k] *= m11;
            }
        }
        return;
    }
    for (std::size_t base = 0; base < amps.size(); base += 2 * stride) {
        for (std::size_t k = base; k < base + stride; ++k) {
            const Complex a0 = amps[k];
            const Complex a1 = amps[k + stride];
            amps[k] = m00 * a0 + m01 * a1;
            amps[k + stride] = m10 * a0 + m11 * a1;
        }
    }
}

StateVector matvec_2level(const DenseMatrix &m, int target, StateVector v) {
    matvec_2level_inplace(m, target, v);
    return v;
}

} // namespace qmcreach
