#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>
#include <vector>

#include "qgs/matrix.hpp"
#include "qgs/tolerance.hpp"

namespace qgs {

// Partially pivoted LU factorization of a square complex matrix.
// Factors once, solves many right-hand sides.
class LuDecomposition {
public:
    explicit LuDecomposition(ComplexMatrix a)
        : lu_(std::move(a)), n_(lu_.rows()), perm_(n_), sign_(1) {
        if (lu_.rows() != lu_.cols()) throw InputError("factorization needs a square matrix");
        scale_ = norm_inf(lu_);
        std::iota(perm_.begin(), perm_.end(), std::size_t{0});
        min_pivot_ = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < n_; ++k) {
            std::size_t p = k;
            double best = std::abs(lu_(k, k));
            for (std::size_t i = k + 1; i < n_; ++i) {
                const double v = std::abs(lu_(i, k));
                if (v > best) { best = v; p = i; }
            }
            if (p != k) {
                for (std::size_t j = 0; j < n_; ++j) std::swap(lu_(k, j), lu_(p, j));
                std::swap(perm_[k], perm_[p]);
                sign_ = -sign_;
            }
            min_pivot_ = std::min(min_pivot_, best);
            if (best == 0.0) continue;
            const Complex pivot = lu_(k, k);
            for (std::size_t i = k + 1; i < n_; ++i) {
                const Complex f = lu_(i, k) / pivot;
                lu_(i, k) = f;
                for (std::size_t j = k + 1; j < n_; ++j) lu_(i, j) -= f * lu_(k, j);
            }
        }
        if (n_ == 0) min_pivot_ = std::numeric_limits<double>::infinity();
    }

    double min_pivot() const { return min_pivot_; }
    double scale() const { return scale_; }

    bool is_singular(double rel_tol) const {
        if (n_ == 0) return false;
        return min_pivot_ <= rel_tol * std::max(scale_, std::numeric_limits<double>::min());
    }

    ComplexVector solve(const ComplexVector& b) const {
        ComplexVector x(n_);
        for (std::size_t i = 0; i < n_; ++i) x[i] = b[perm_[i]];
        for (std::size_t i = 1; i < n_; ++i)
            for (std::size_t j = 0; j < i; ++j) x[i] -= lu_(i, j) * x[j];
        for (std::size_t ii = n_; ii-- > 0;) {
            for (std::size_t j = ii + 1; j < n_; ++j) x[ii] -= lu_(ii, j) * x[j];
            x[ii] /= lu_(ii, ii);
        }
        return x;
    }

    ComplexMatrix solve_matrix(const ComplexMatrix& b) const {
        ComplexMatrix x(n_, b.cols());
        for (std::size_t j = 0; j < b.cols(); ++j) x.set_col(j, solve(b.col(j)));
        return x;
    }

    Complex determinant() const {
        Complex d(static_cast<double>(sign_), 0.0);
        for (std::size_t i = 0; i < n_; ++i) d *= lu_(i, i);
        return d;
    }

private:
    ComplexMatrix lu_;
    std::size_t n_;
    std::vector<std::size_t> perm_;
    int sign_;
    double scale_ = 0.0;
    double min_pivot_ = 0.0;
};

// Solves M x = b, rejecting numerically singular systems.
inline ComplexVector solve_linear(const ComplexMatrix& m, const ComplexVector& b,
                                  const ToleranceConfig& tol = {}) {
    if (b.size() != m.rows()) throw InputError("right-hand side dimension mismatch");
    LuDecomposition lu(m);
    if (lu.is_singular(tol.rank_tol))
        throw SingularMatrixError("matrix numerically singular", lu.min_pivot());
    ComplexVector x = lu.solve(b);
    ComplexVector r = m * x;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    const double bnorm = std::max(max_abs(b), std::numeric_limits<double>::min());
    if (max_abs(r) > tol.residual_tol * bnorm)
        throw NumericError("linear solve residual above tolerance");
    return x;
}

struct Svd {
    RealVector singular_values; // descending
    ComplexMatrix right_vectors; // columns, orthonormal
};

// One-sided Jacobi SVD: orthogonalizes column pairs of a working copy while
// accumulating the right transform.  Small singular values come out with
// high relative accuracy, which the rank decisions below depend on.
inline Svd jacobi_svd(const ComplexMatrix& m) {
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    ComplexMatrix a = m;
    ComplexMatrix v = ComplexMatrix::identity(cols);
    const double eps = std::numeric_limits<double>::epsilon();

    for (int sweep = 0; sweep < 60 && cols > 1; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < cols; ++p) {
            for (std::size_t q = p + 1; q < cols; ++q) {
                double alpha = 0.0, beta = 0.0;
                Complex gamma{};
                for (std::size_t i = 0; i < rows; ++i) {
                    alpha += std::norm(a(i, p));
                    beta += std::norm(a(i, q));
                    gamma += std::conj(a(i, p)) * a(i, q);
                }
                const double mag = std::abs(gamma);
                if (mag <= 4.0 * eps * std::sqrt(alpha * beta) || mag == 0.0) continue;
                rotated = true;
                const Complex phase = gamma / mag;
                const double theta = (beta - alpha) / (2.0 * mag);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                const Complex sp = s * std::conj(phase);
                const Complex cp = c * std::conj(phase);
                for (std::size_t i = 0; i < rows; ++i) {
                    const Complex ap = a(i, p), aq = a(i, q);
                    a(i, p) = c * ap - sp * aq;
                    a(i, q) = s * ap + cp * aq;
                }
                for (std::size_t i = 0; i < cols; ++i) {
                    const Complex vp = v(i, p), vq = v(i, q);
                    v(i, p) = c * vp - sp * vq;
                    v(i, q) = s * vp + cp * vq;
                }
            }
        }
        if (!rotated) break;
    }

    std::vector<std::size_t> order(cols);
    std::iota(order.begin(), order.end(), std::size_t{0});
    RealVector sigma(cols);
    for (std::size_t j = 0; j < cols; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < rows; ++i) s += std::norm(a(i, j));
        sigma[j] = std::sqrt(s);
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

    Svd out;
    out.singular_values.resize(cols);
    out.right_vectors = ComplexMatrix(cols, cols);
    for (std::size_t j = 0; j < cols; ++j) {
        out.singular_values[j] = sigma[order[j]];
        out.right_vectors.set_col(j, v.col(order[j]));
    }
    return out;
}

// Orthonormal basis of the right null space: singular vectors whose singular
// value is at most rank_tol times the largest.
inline std::vector<ComplexVector> kernel_basis(const ComplexMatrix& m,
                                               const ToleranceConfig& tol = {}) {
    if (m.empty()) return {};
    const Svd svd = jacobi_svd(m);
    const double smax = svd.singular_values.front();
    std::vector<ComplexVector> basis;
    for (std::size_t j = 0; j < svd.singular_values.size(); ++j)
        if (svd.singular_values[j] <= tol.rank_tol * smax)
            basis.push_back(svd.right_vectors.col(j));
    return basis;
}

struct EighResult {
    RealVector values;  // ascending
    RealMatrix vectors; // columns, orthonormal
};

// Cyclic Jacobi eigensolver for real symmetric matrices.
inline EighResult symmetric_eigh(const RealSymmetricMatrix& m) {
    const std::size_t n = m.rows();
    RealMatrix a = m;
    RealMatrix v = RealMatrix::identity(n);
    const double scale = std::max(max_abs(m), std::numeric_limits<double>::min());

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
        if (off <= 1e-15 * scale) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::abs(apq) <= 1e-18 * scale) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                const double app = a(p, p), aqq = a(q, q);
                a(p, p) = app - t * apq;
                a(q, q) = aqq + t * apq;
                a(p, q) = a(q, p) = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    if (i != p && i != q) {
                        const double aip = a(i, p), aiq = a(i, q);
                        a(i, p) = a(p, i) = c * aip - s * aiq;
                        a(i, q) = a(q, i) = s * aip + c * aiq;
                    }
                    const double vip = v(i, p), viq = v(i, q);
                    v(i, p) = c * vip - s * viq;
                    v(i, q) = s * vip + c * viq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });

    EighResult out;
    out.values.resize(n);
    out.vectors = RealMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = a(order[j], order[j]);
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
    }
    return out;
}

} // namespace qgs
