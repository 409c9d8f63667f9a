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
 * Dense complex linear algebra used throughout the reachability engine:
 * state vectors, small matrices, inner products, Gram-Schmidt and projection.
 *
 * Qubit ordering is big-endian everywhere: qubit 0 is the most significant
 * bit of a computational-basis index, so |c p1 p2> has index 4c + 2p1 + p2.
 */
#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace qmcreach {

using Complex = std::complex<double>;

/// Default upper bound on register width for dense simulation.
inline constexpr int kDefaultQubitCap = 12;
/// Absolute ceiling for any StateVector, independent of configured caps.
inline constexpr int kMaxQubits = 30;

/// Throws CapExceeded when num_qubits > cap.
void check_qubit_cap(int num_qubits, int cap);

/**
 * Numerical thresholds. All thresholds apply to normalized vectors.
 *
 * Ordering invariant: 0 < branch_drop < null_threshold < ortho_check < 1.
 */
struct Tolerances {
    /// Residual norm below which a (normalized) vector counts as zero.
    double null_threshold = 1e-8;
    /// Branch norm below which a Kraus branch is discarded.
    double branch_drop = 1e-12;
    /// Allowed deviation in orthonormality assertions.
    double ortho_check = 1e-7;

    /// Throws UsageError if the ordering invariant is violated.
    void validate() const;
};

/// Dense amplitude vector over num_qubits qubits (length 2^num_qubits).
/// Unnormalized vectors are legal.
class StateVector {
  public:
    /// |0...0>.
    explicit StateVector(int num_qubits);
    StateVector(int num_qubits, std::vector<Complex> amplitudes);

    static StateVector basis_state(int num_qubits, std::size_t index);
    static StateVector zero(int num_qubits);

    int num_qubits() const { return num_qubits_; }
    std::size_t dim() const { return amplitudes_.size(); }

    std::span<const Complex> amplitudes() const { return amplitudes_; }
    std::span<Complex> amplitudes() { return amplitudes_; }

    const Complex &operator[](std::size_t i) const { return amplitudes_[i]; }
    Complex &operator[](std::size_t i) { return amplitudes_[i]; }

    double norm() const;
    double norm_squared() const;
    bool is_normalized() const;

    StateVector &operator+=(const StateVector &other);
    StateVector &operator-=(const StateVector &other);
    StateVector &operator*=(Complex scale);

    friend StateVector operator+(StateVector a, const StateVector &b) {
        return a += b;
    }
    friend StateVector operator-(StateVector a, const StateVector &b) {
        return a -= b;
    }
    friend StateVector operator*(Complex s, StateVector v) { return v *= s; }

    bool operator==(const StateVector &) const = default;

  private:
    int num_qubits_;
    std::vector<Complex> amplitudes_;
};

/// Tensor product |a>|b>; a occupies the most significant qubits.
StateVector tensor(const StateVector &a, const StateVector &b);

/// Row-major dense complex matrix.
class DenseMatrix {
  public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols);
    DenseMatrix(std::size_t rows, std::size_t cols,
                std::vector<Complex> entries);

    static DenseMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::span<const Complex> entries() const { return entries_; }

    const Complex &operator()(std::size_t r, std::size_t c) const {
        return entries_[r * cols_ + c];
    }
    Complex &operator()(std::size_t r, std::size_t c) {
        return entries_[r * cols_ + c];
    }

    DenseMatrix adjoint() const;
    Complex trace() const;
    double max_abs_diff(const DenseMatrix &other) const;

    DenseMatrix &operator+=(const DenseMatrix &other);
    DenseMatrix &operator*=(Complex scale);
    friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix &b) {
        return a += b;
    }
    friend DenseMatrix operator*(Complex s, DenseMatrix m) { return m *= s; }

    bool operator==(const DenseMatrix &) const = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> entries_;
};

DenseMatrix operator*(const DenseMatrix &a, const DenseMatrix &b);
DenseMatrix kron(const DenseMatrix &a, const DenseMatrix &b);
/// Dense matrix-vector product; m must be dim x dim.
StateVector operator*(const DenseMatrix &m, const StateVector &v);
/// |a><b|.
DenseMatrix outer(const StateVector &a, const StateVector &b);

/// <a|b> = sum conj(a_k) b_k.
Complex inner_product(const StateVector &a, const StateVector &b);

/// v/|v|, or nullopt when |v| <= tol.null_threshold.
std::optional<StateVector> normalize(const StateVector &v,
                                     const Tolerances &tol = {});

/// Sum_i <i|s> |i> for an orthonormal basis; zero vector for an empty basis.
StateVector project_onto(std::span<const StateVector> basis,
                         const StateVector &s);

/**
 * Orthonormalizes v against basis with two modified Gram-Schmidt sweeps and
 * appends the result when the residual of v/|v| exceeds null_threshold.
 * Returns true if the basis grew.
 */
bool extend_orthonormal(std::vector<StateVector> &basis, const StateVector &v,
                        const Tolerances &tol = {});

/// Maximal orthonormal subset spanning span(vs), in input order.
std::vector<StateVector> gram_schmidt(std::span<const StateVector> vs,
                                      const Tolerances &tol = {});

/// Applies a 2x2 matrix (not necessarily unitary) to one qubit.
StateVector matvec_2level(const DenseMatrix &m, int target, StateVector v);
void matvec_2level_inplace(const DenseMatrix &m, int target, StateVector &v);

/// Row-major 2x2 matrix without heap storage.
using Matrix2 = std::array<Complex, 4>;

/// Same as matvec_2level_inplace; diagonal matrices only touch phases.
void apply_2x2_inplace(const Matrix2 &m, int target, StateVector &v);

} // namespace qmcreach
