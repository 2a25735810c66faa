// Copyright 2026 The Probgate Authors
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

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <utility>
#include <vector>

#include "probgate/error.hpp"

namespace probgate {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kDefaultPsdTol = 1e-9;

/*
 * DENSE COMPLEX MATRIX
 *
 * Row-major storage sized for the gate-synthesis workloads here: Gram
 * matrices are 2x2, the dilated unitary is 6x6.
 */

class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static Matrix from_rows(std::initializer_list<std::initializer_list<cplx>> rows) {
        Matrix m(rows.size(), rows.begin()->size());
        std::size_t i = 0;
        for (const auto& row : rows) {
            if (row.size() != m.cols_) throw Error(Errc::DimensionMismatch, "ragged row list");
            std::size_t j = 0;
            for (const auto& v : row) m(i, j++) = v;
            ++i;
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Matrix adjoint() const {
        Matrix m(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
        return m;
    }

    double frobenius_norm() const {
        double s = 0;
        for (const auto& v : data_) s += std::norm(v);
        return std::sqrt(s);
    }

    bool is_hermitian(double tol = kHermitianTol) const {
        if (rows_ != cols_) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j <= i; ++j)
                if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
        return true;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        Matrix m = a;
        for (std::size_t k = 0; k < m.data_.size(); ++k) m.data_[k] += b.data_[k];
        return m;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        Matrix m = a;
        for (std::size_t k = 0; k < m.data_.size(); ++k) m.data_[k] -= b.data_[k];
        return m;
    }
    friend Matrix operator*(const cplx& s, const Matrix& a) {
        Matrix m = a;
        for (auto& v : m.data_) v *= s;
        return m;
    }
    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw Error(Errc::DimensionMismatch, "matrix product shapes");
        Matrix m(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const cplx aik = a(i, k);
                for (std::size_t j = 0; j < b.cols_; ++j) m(i, j) += aik * b(k, j);
            }
        return m;
    }
    friend CVector operator*(const Matrix& a, const CVector& x) {
        if (a.cols_ != x.size()) throw Error(Errc::DimensionMismatch, "matrix-vector shapes");
        CVector y(a.rows_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            cplx s = 0;
            for (std::size_t j = 0; j < a.cols_; ++j) s += a(i, j) * x[j];
            y[i] = s;
        }
        return y;
    }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    CVector data_;
};

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw Error(Errc::DimensionMismatch, "matrix comparison shapes");
    double m = 0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

// Entrywise (Schur) product.
inline Matrix schur(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw Error(Errc::DimensionMismatch, "schur product shapes");
    Matrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) * b(i, j);
    return out;
}

/*
 * VECTOR HELPERS  (physics convention: inner(a, b) = a† b)
 */

inline cplx inner(const CVector& a, const CVector& b) {
    if (a.size() != b.size()) throw Error(Errc::DimensionMismatch, "inner product lengths");
    cplx s = 0;
    for (std::size_t k = 0; k < a.size(); ++k) s += std::conj(a[k]) * b[k];
    return s;
}

inline double vec_norm(const CVector& a) { return std::sqrt(std::abs(inner(a, a).real())); }

inline Matrix gram_of(const std::vector<CVector>& vectors) {
    Matrix g(vectors.size(), vectors.size());
    for (std::size_t i = 0; i < vectors.size(); ++i)
        for (std::size_t j = 0; j < vectors.size(); ++j) g(i, j) = inner(vectors[i], vectors[j]);
    return g;
}

/*
 * HERMITIAN EIGENDECOMPOSITION
 *
 * Cyclic Jacobi with complex rotations. Deterministic: fixed (p, q) sweep
 * order, ascending eigenvalue sort (stable), and each eigenvector scaled so
 * its largest-modulus component (lowest index on ties) is real positive.
 */

struct EigenDecomposition {
    std::vector<double> eigenvalues;  // ascending
    Matrix basis;                     // unitary, columns are eigenvectors
};

namespace detail {

inline void require_hermitian(const Matrix& m, const char* who) {
    if (m.rows() != m.cols())
        throw Error(Errc::NonHermitianInput, std::string(who) + ": matrix not square");
    if (!m.is_hermitian())
        throw Error(Errc::NonHermitianInput, std::string(who) + ": matrix not Hermitian");
}

inline double offdiag_norm(const Matrix& m) {
    double s = 0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (i != j) s += std::norm(m(i, j));
    return std::sqrt(s);
}

// Rotate column phase so the largest-modulus entry (first on ties) is real positive.
inline void fix_column_phase(Matrix& v, std::size_t col) {
    std::size_t pivot = 0;
    double best = -1;
    for (std::size_t i = 0; i < v.rows(); ++i) {
        const double a = std::abs(v(i, col));
        if (a > best) {
            best = a;
            pivot = i;
        }
    }
    if (best <= 0) return;
    const cplx phase = std::conj(v(pivot, col)) / best;
    for (std::size_t i = 0; i < v.rows(); ++i) v(i, col) *= phase;
}

}  // namespace detail

inline EigenDecomposition hermitian_eig(const Matrix& input) {
    detail::require_hermitian(input, "hermitian_eig");
    const std::size_t n = input.rows();

    // Symmetrize away sub-tolerance asymmetry before sweeping.
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m(i, j) = 0.5 * (input(i, j) + std::conj(input(j, i)));

    Matrix v = Matrix::identity(n);
    constexpr double kOffTol = 1e-14;
    constexpr int kMaxSweeps = 100;

    for (int sweep = 0; sweep < kMaxSweeps && detail::offdiag_norm(m) >= kOffTol; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx mpq = m(p, q);
                const double a = std::abs(mpq);
                if (a == 0.0) continue;

                // Phase out m(p,q), then apply the real Jacobi rotation that
                // annihilates it. Combined plane transform J:
                //   J(p,p) = c, J(p,q) = s, J(q,p) = -s*conj(phase), J(q,q) = c*conj(phase)
                const cplx phase = mpq / a;  // m(p,q) = a * phase
                const double app = m(p, p).real();
                const double aqq = m(q, q).real();
                const double tau = (aqq - app) / (2 * a);
                const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1 + tau * tau));
                const double c = 1.0 / std::sqrt(1 + t * t);
                const double s = t * c;

                const cplx jpp = c, jpq = s;
                const cplx jqp = -s * std::conj(phase), jqq = c * std::conj(phase);

                // m <- J† m J, touching only rows/cols p and q.
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx mkp = m(k, p), mkq = m(k, q);
                    m(k, p) = mkp * jpp + mkq * jqp;
                    m(k, q) = mkp * jpq + mkq * jqq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx mpk = m(p, k), mqk = m(q, k);
                    m(p, k) = std::conj(jpp) * mpk + std::conj(jqp) * mqk;
                    m(q, k) = std::conj(jpq) * mpk + std::conj(jqq) * mqk;
                }
                m(p, q) = 0.0;
                m(q, p) = 0.0;
                m(p, p) = cplx(m(p, p).real(), 0.0);
                m(q, q) = cplx(m(q, q).real(), 0.0);

                for (std::size_t k = 0; k < n; ++k) {
                    const cplx vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp * jpp + vkq * jqp;
                    v(k, q) = vkp * jpq + vkq * jqq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return m(i, i).real() < m(j, j).real(); });

    EigenDecomposition out;
    out.eigenvalues.resize(n);
    out.basis = Matrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        out.eigenvalues[j] = m(order[j], order[j]).real();
        for (std::size_t i = 0; i < n; ++i) out.basis(i, j) = v(i, order[j]);
        detail::fix_column_phase(out.basis, j);
    }
    return out;
}

/*
 * PSD CLASSIFICATION AND PRINCIPAL SQUARE ROOT
 */

enum class PsdTag { PositiveDefinite, PositiveSemidefinite, Indefinite };

struct PsdClass {
    PsdTag tag;
    double min_eigenvalue;
};

// `tol` is relative to max(1, ||M||_F); Gram matrices here are O(1).
inline PsdClass psd_classify(const Matrix& m, double tol = kDefaultPsdTol) {
    detail::require_hermitian(m, "psd_classify");
    if (tol < 0) throw Error(Errc::EffOutOfRange, "psd_classify: negative tolerance");
    const double scale = std::max(1.0, m.frobenius_norm());
    const double eps = tol * scale;
    const auto eig = hermitian_eig(m);
    const double min_eig = eig.eigenvalues.front();
    PsdTag tag = PsdTag::Indefinite;
    if (min_eig > eps)
        tag = PsdTag::PositiveDefinite;
    else if (min_eig >= -eps)
        tag = PsdTag::PositiveSemidefinite;
    return PsdClass{tag, min_eig};
}

// Hermitian PSD square root via spectral decomposition; eigenvalues within
// tolerance below zero are clamped to zero.
inline Matrix principal_sqrt_psd(const Matrix& m, double tol = kDefaultPsdTol) {
    if (psd_classify(m, tol).tag == PsdTag::Indefinite)
        throw Error(Errc::NotPsd, "principal_sqrt_psd: matrix is indefinite");
    const auto eig = hermitian_eig(m);
    const std::size_t n = m.rows();
    Matrix root(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            cplx s = 0;
            for (std::size_t k = 0; k < n; ++k) {
                const double lam = std::max(0.0, eig.eigenvalues[k]);
                s += eig.basis(i, k) * std::sqrt(lam) * std::conj(eig.basis(j, k));
            }
            root(i, j) = s;
        }
    // Exact Hermitian symmetry despite rounding in the triple product.
    for (std::size_t i = 0; i < n; ++i) {
        root(i, i) = cplx(root(i, i).real(), 0.0);
        for (std::size_t j = i + 1; j < n; ++j) {
            const cplx avg = 0.5 * (root(i, j) + std::conj(root(j, i)));
            root(i, j) = avg;
            root(j, i) = std::conj(avg);
        }
    }
    return root;
}

/*
 * GRAM FACTORIZATION
 *
 * Realizes an n x n PSD Gram matrix as n concrete vectors in a chosen
 * ambient dimension: row i of sqrt(diag) V† (conjugated) padded with zeros.
 */

inline std::vector<CVector> gram_factor(const Matrix& g, std::size_t ambient_dim,
                                        double tol = kDefaultPsdTol) {
    if (psd_classify(g, tol).tag == PsdTag::Indefinite)
        throw Error(Errc::NotPsd, "gram_factor: matrix is indefinite");
    const auto eig = hermitian_eig(g);
    const std::size_t n = g.rows();
    const double eps = tol * std::max(1.0, g.frobenius_norm());

    std::size_t rank = 0;
    for (double lam : eig.eigenvalues)
        if (lam > eps) ++rank;
    if (ambient_dim < rank)
        throw Error(Errc::AmbientTooSmall, "gram_factor: ambient dimension below numerical rank");

    // One ambient coordinate per eigen-direction, largest eigenvalues first,
    // so every direction above the rank cutoff always gets a slot.
    std::vector<std::size_t> slot_for(n, ambient_dim);
    std::size_t next_slot = 0;
    for (std::size_t k = n; k-- > 0;) {  // eigenvalues ascending -> walk down
        if (eig.eigenvalues[k] <= 0.0) break;
        if (next_slot >= ambient_dim) break;  // only sub-cutoff directions can be left over
        slot_for[k] = next_slot++;
    }

    std::vector<CVector> vectors(n, CVector(ambient_dim, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (slot_for[k] >= ambient_dim) continue;
            const double lam = std::max(0.0, eig.eigenvalues[k]);
            vectors[i][slot_for[k]] = std::sqrt(lam) * std::conj(eig.basis(i, k));
        }
    return vectors;
}

/*
 * UNITARY COMPLETION
 *
 * Input and output lists with matching Gram matrices determine a unitary on
 * their span; the orthogonal complement is filled with canonical basis
 * vectors orthonormalized in index order.
 */

namespace detail {

// Two-pass Gram-Schmidt of `x` against an orthonormal list; returns the
// residual (not normalized).
inline CVector project_out(const std::vector<CVector>& basis, CVector x) {
    for (int pass = 0; pass < 2; ++pass)
        for (const auto& u : basis) {
            const cplx c = inner(u, x);
            for (std::size_t k = 0; k < x.size(); ++k) x[k] -= c * u[k];
        }
    return x;
}

inline void append_completion(std::vector<CVector>& basis, std::size_t dim) {
    for (std::size_t j = 0; j < dim && basis.size() < dim; ++j) {
        CVector e(dim, 0.0);
        e[j] = 1.0;
        CVector r = detail::project_out(basis, std::move(e));
        const double nrm = vec_norm(r);
        if (nrm < 1e-8) continue;  // canonical vector already in span
        for (auto& v : r) v /= nrm;
        basis.push_back(std::move(r));
    }
    if (basis.size() != dim)
        throw Error(Errc::DependentInputs, "unitary completion could not span the full space");
}

}  // namespace detail

inline Matrix unitary_completion(const std::vector<std::pair<CVector, CVector>>& partial_map,
                                 std::size_t dim) {
    std::vector<CVector> ins, outs;
    for (const auto& [in, out] : partial_map) {
        if (in.size() != dim || out.size() != dim)
            throw Error(Errc::DimensionMismatch, "unitary_completion: vector length vs dim");
        ins.push_back(in);
        outs.push_back(out);
    }

    const Matrix gram_in = gram_of(ins);
    const Matrix gram_out = gram_of(outs);
    const double dev = max_abs_diff(gram_in, gram_out);
    if (dev > 1e-8)
        throw Error(Errc::GramMismatch,
                    "input/output Gram matrices differ by " + std::to_string(dev));

    // Orthonormalize both sides with the same elimination order. Matching
    // Grams make the two triangular coefficient sets agree, so mapping
    // u_k -> w_k reproduces every required pair.
    std::vector<CVector> u, w;
    for (std::size_t i = 0; i < ins.size(); ++i) {
        CVector ru = detail::project_out(u, ins[i]);
        CVector rw = detail::project_out(w, outs[i]);
        const double nu = vec_norm(ru);
        if (nu < 1e-9 * std::max(1.0, vec_norm(ins[i])))
            throw Error(Errc::DependentInputs, "unitary_completion: inputs linearly dependent");
        const double nw = vec_norm(rw);
        for (auto& x : ru) x /= nu;
        for (auto& x : rw) x /= nw;
        u.push_back(std::move(ru));
        w.push_back(std::move(rw));
    }

    detail::append_completion(u, dim);
    detail::append_completion(w, dim);

    // U = sum_k |w_k><u_k|
    Matrix umat(dim, dim);
    for (std::size_t k = 0; k < dim; ++k)
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j) umat(i, j) += w[k][i] * std::conj(u[k][j]);
    return umat;
}

inline double unitarity_residual(const Matrix& u) {
    return (u.adjoint() * u - Matrix::identity(u.rows())).frobenius_norm();
}

}  // namespace probgate
