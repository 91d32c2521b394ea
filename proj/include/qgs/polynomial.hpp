#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "qgs/linalg.hpp"
#include "qgs/matrix.hpp"
#include "qgs/tolerance.hpp"

namespace qgs {

// Real-coefficient polynomial, coefficients stored low power first.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(RealVector coeffs) : c_(std::move(coeffs)) {}

    const RealVector& coeffs() const { return c_; }

    // Degree after trimming numerically-zero leading coefficients.
    int degree() const {
        const double tol = 1e-12 * max_abs_coeff();
        for (std::size_t i = c_.size(); i-- > 0;)
            if (std::abs(c_[i]) > tol) return static_cast<int>(i);
        return -1;
    }

    double max_abs_coeff() const {
        double m = 0.0;
        for (double x : c_) m = std::max(m, std::abs(x));
        return m;
    }

    double operator()(double x) const {
        double v = 0.0;
        for (std::size_t i = c_.size(); i-- > 0;) v = v * x + c_[i];
        return v;
    }

    // Horner value together with a running magnitude bound; |p(x)| below a
    // small multiple of eps * scale is numerically zero.
    std::pair<double, double> value_and_scale(double x) const {
        double v = 0.0, s = 0.0;
        const double ax = std::abs(x);
        for (std::size_t i = c_.size(); i-- > 0;) {
            v = v * x + c_[i];
            s = s * ax + std::abs(c_[i]);
        }
        return {v, s};
    }

    Polynomial derivative() const {
        if (c_.size() <= 1) return Polynomial{{0.0}};
        RealVector d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = static_cast<double>(i) * c_[i];
        return Polynomial(std::move(d));
    }

    Polynomial trimmed() const {
        const int deg = degree();
        if (deg < 0) return Polynomial{{0.0}};
        return Polynomial(RealVector(c_.begin(), c_.begin() + deg + 1));
    }

private:
    RealVector c_;
};

// Same function family expressed in the Chebyshev basis on [-1, 1].  The
// sample-to-coefficient map is orthogonal, so unlike the monomial form it
// stays well conditioned at high degree.
class ChebyshevSeries {
public:
    ChebyshevSeries() = default;
    explicit ChebyshevSeries(RealVector coeffs) : c_(std::move(coeffs)) {}

    static ChebyshevSeries from_samples(const std::function<double(double)>& f, int degree) {
        const int m = degree + 1;
        RealVector values(static_cast<std::size_t>(m));
        for (int k = 0; k < m; ++k)
            values[static_cast<std::size_t>(k)] = f(std::cos(M_PI * (k + 0.5) / m));
        RealVector c(static_cast<std::size_t>(m));
        for (int j = 0; j < m; ++j) {
            double sum = 0.0;
            for (int k = 0; k < m; ++k)
                sum += values[static_cast<std::size_t>(k)] * std::cos(M_PI * j * (k + 0.5) / m);
            c[static_cast<std::size_t>(j)] = (j == 0 ? 1.0 : 2.0) * sum / m;
        }
        return ChebyshevSeries(std::move(c));
    }

    const RealVector& coeffs() const { return c_; }

    double max_abs_coeff() const {
        double m = 0.0;
        for (double x : c_) m = std::max(m, std::abs(x));
        return m;
    }

    int degree() const {
        const double tol = 1e-12 * max_abs_coeff();
        for (std::size_t i = c_.size(); i-- > 0;)
            if (std::abs(c_[i]) > tol) return static_cast<int>(i);
        return -1;
    }

    double operator()(double x) const { return value_and_scale(x).first; }

    // Clenshaw value plus the coefficient-sum bound (|T_j| <= 1 on [-1, 1]).
    std::pair<double, double> value_and_scale(double x) const {
        double b1 = 0.0, b2 = 0.0, scale = 0.0;
        for (std::size_t i = c_.size(); i-- > 1;) {
            const double b0 = c_[i] + 2.0 * x * b1 - b2;
            b2 = b1;
            b1 = b0;
            scale += std::abs(c_[i]);
        }
        const double v = (c_.empty() ? 0.0 : c_[0]) + x * b1 - b2;
        scale += c_.empty() ? 0.0 : std::abs(c_[0]);
        return {v, scale};
    }

    ChebyshevSeries derivative() const {
        const int n = static_cast<int>(c_.size()) - 1;
        if (n <= 0) return ChebyshevSeries{{0.0}};
        RealVector d(static_cast<std::size_t>(n) + 1, 0.0);
        for (int j = n; j >= 1; --j)
            d[static_cast<std::size_t>(j - 1)] =
                (j + 1 <= n ? d[static_cast<std::size_t>(j + 1)] : 0.0) + 2.0 * j * c_[static_cast<std::size_t>(j)];
        d[0] *= 0.5;
        d.resize(static_cast<std::size_t>(n));
        return ChebyshevSeries(std::move(d));
    }

    ChebyshevSeries trimmed() const {
        const int deg = degree();
        if (deg < 0) return ChebyshevSeries{{0.0}};
        return ChebyshevSeries(RealVector(c_.begin(), c_.begin() + deg + 1));
    }

private:
    RealVector c_;
};

struct PolyRoot {
    double x;
    int multiplicity;
};

namespace detail {

template <class Series>
bool series_is_zero_at(const Series& p, double x) {
    const auto [v, s] = p.value_and_scale(x);
    return std::abs(v) <= 1e-11 * (s + 1e-300);
}

// Bisection with Newton acceleration on a sign-changing bracket.
template <class Series>
double refine_root(const Series& p, const Series& dp, double lo, double hi, double flo,
                   double root_tol) {
    double a = lo, b = hi, fa = flo;
    double x = 0.5 * (a + b);
    for (int it = 0; it < 200; ++it) {
        const double fx = p(x);
        if (fx == 0.0) return x;
        if ((fx > 0.0) == (fa > 0.0)) { a = x; fa = fx; }
        else b = x;
        double next = x;
        const double d = dp(x);
        if (d != 0.0) next = x - fx / d;
        if (!(next > a && next < b)) next = 0.5 * (a + b);
        if (std::abs(next - x) <= root_tol && it > 2) {
            x = next;
            // two Newton polish steps; quadratic convergence tightens the root
            for (int j = 0; j < 2; ++j) {
                const double dd = dp(x);
                if (dd == 0.0) break;
                x -= p(x) / dd;
            }
            return x;
        }
        x = next;
    }
    return x;
}

template <class Series>
std::vector<double> isolate_roots(const Series& p, double a, double b, double root_tol) {
    const Series q = p.trimmed();
    const int deg = q.degree();
    if (deg <= 0) return {};
    std::vector<double> pts{a};
    if (deg > 1) {
        const std::vector<double> crit = isolate_roots(q.derivative(), a, b, root_tol);
        pts.insert(pts.end(), crit.begin(), crit.end());
    }
    pts.push_back(b);

    const Series dq = q.derivative();
    std::vector<double> roots;
    // critical points where p itself vanishes are multiple roots
    for (std::size_t i = 1; i + 1 < pts.size(); ++i)
        if (series_is_zero_at(q, pts[i])) roots.push_back(pts[i]);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double lo = pts[i], hi = pts[i + 1];
        if (!(hi > lo)) continue;
        const double flo = q(lo), fhi = q(hi);
        if ((flo > 0.0 && fhi < 0.0) || (flo < 0.0 && fhi > 0.0))
            roots.push_back(refine_root(q, dq, lo, hi, flo, root_tol));
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

template <class Series>
int root_multiplicity(const Series& p, double x) {
    Series d = p.trimmed();
    const int deg = d.degree();
    int m = 0;
    while (m <= deg) {
        if (!series_is_zero_at(d, x)) break;
        ++m;
        d = d.derivative();
    }
    return std::max(m, 1);
}

} // namespace detail

// All real roots in the open interval (a, b), refined to root_tol.  Roots
// closer than 10 * root_tol collapse to one cluster; the reported
// multiplicity comes from derivative vanishing at the cluster center, which
// also covers a root detected by more than one isolation path.  Works for
// any series type exposing evaluation, derivative and degree (monomial or
// Chebyshev basis).
template <class Series>
std::vector<PolyRoot> real_roots_in_interval(const Series& p, double a, double b,
                                             const ToleranceConfig& tol = {}) {
    std::vector<double> raw = detail::isolate_roots(p, a, b, tol.root_tol);
    const double merge = 10.0 * tol.root_tol;
    std::vector<PolyRoot> out;
    std::size_t i = 0;
    while (i < raw.size()) {
        std::size_t j = i + 1;
        double sum = raw[i];
        while (j < raw.size() && std::abs(raw[j] - raw[j - 1]) < merge) sum += raw[j++];
        const double center = sum / static_cast<double>(j - i);
        if (center > a + merge && center < b - merge) // open interval
            out.push_back({center, detail::root_multiplicity(p, center)});
        i = j;
    }
    return out;
}

inline std::vector<PolyRoot> real_roots_in_interval(const RealVector& coeffs, double a, double b,
                                                    const ToleranceConfig& tol = {}) {
    return real_roots_in_interval(Polynomial(coeffs), a, b, tol);
}

// Recovers the coefficients of det(pencil(z)) by sampling the determinant at
// degree_bound + 1 Chebyshev nodes and solving the interpolation system.
// The determinant of the pencils used here has real coefficients; imaginary
// residue above 1e-8 means the caller passed an unsuitable pencil.  The
// monomial-basis system is reliable to roughly degree 24; beyond that use
// ChebyshevSeries::from_samples, which has no such cap.
inline RealVector det_poly_coeffs(const std::function<ComplexMatrix(Complex)>& pencil,
                                  int degree_bound) {
    if (degree_bound < 0) throw InputError("degree bound must be nonnegative");
    const int m = degree_bound + 1;
    std::vector<double> nodes(m);
    for (int j = 0; j < m; ++j)
        nodes[j] = (m == 1) ? 0.0 : std::cos(M_PI * (2.0 * j + 1.0) / (2.0 * m));

    ComplexMatrix vand(m, m);
    ComplexVector rhs(m);
    for (int j = 0; j < m; ++j) {
        Complex pw(1.0, 0.0);
        for (int pp = 0; pp < m; ++pp) {
            vand(j, pp) = pw;
            pw *= nodes[j];
        }
        rhs[j] = LuDecomposition(pencil(Complex(nodes[j], 0.0))).determinant();
    }

    LuDecomposition lu(std::move(vand));
    if (lu.is_singular(1e-14))
        throw NumericError("interpolation system ill-conditioned");
    const ComplexVector c = lu.solve(rhs);

    RealVector coeffs(m);
    for (int i = 0; i < m; ++i) {
        if (std::abs(c[i].imag()) >= 1e-8)
            throw NumericError("interpolated determinant has non-real coefficients");
        coeffs[i] = c[i].real();
    }
    return coeffs;
}

} // namespace qgs
