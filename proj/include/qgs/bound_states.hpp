#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "qgs/graph.hpp"
#include "qgs/linalg.hpp"
#include "qgs/polynomial.hpp"
#include "qgs/scattering.hpp"
#include "qgs/tolerance.hpp"

namespace qgs {

enum class BoundKind {
    First,  // decays exponentially along at least one tail; |E| > 2
    Second, // vanishes at every attachment vertex, zero on all tails
};

struct BoundState {
    BoundKind kind;
    double z_b = 0.0;  // decay parameter, first kind only; state ~ z_b^n on tails
    double energy = 0.0;
    RealVector graph_part; // unit norm, largest-magnitude component positive
    RealVector alpha;      // per-tail amplitude at the attachment vertex
    double norm_factor = 0.0; // |N|^2 such that N * (graph part + tails) has norm 1
};

namespace detail {

// Makes the largest-magnitude component real and positive, drops the
// (numerically zero) imaginary part, renormalizes.
inline RealVector fix_phase(const ComplexVector& v) {
    std::size_t imax = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (std::abs(v[i]) > std::abs(v[imax])) imax = i;
    const double mag = std::abs(v[imax]);
    const Complex phase = mag > 0.0 ? v[imax] / mag : Complex(1.0, 0.0);
    RealVector out(v.size());
    double nrm = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out[i] = (v[i] * std::conj(phase)).real();
        nrm += out[i] * out[i];
    }
    nrm = std::sqrt(nrm);
    if (nrm > 0.0)
        for (auto& x : out) x /= nrm;
    return out;
}

inline RealVector attachment_amplitudes(const TailedGraph& g, const RealVector& psi) {
    RealVector alpha(g.tail_labels().size());
    for (std::size_t i = 0; i < alpha.size(); ++i)
        alpha[i] = psi[static_cast<std::size_t>(g.tail_labels()[i].vertex)];
    return alpha;
}

// Newton refinement of a pencil root against the pencil itself: at real z
// the pencil is real symmetric, so the eigenvalue branch through zero is
// analytic with derivative v^T (H + 2zQ) v.  Scalar determinant roots carry
// the determinant's dynamic range; this polish does not.
inline double polish_pencil_root(const RealSymmetricMatrix& h, const RealSymmetricMatrix& q,
                                 double z) {
    const std::size_t n = h.rows();
    for (int it = 0; it < 12; ++it) {
        RealSymmetricMatrix a(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) a(i, j) = z * h(i, j);
            a(i, i) += 1.0 + z * z * q(i, i);
        }
        const EighResult eig = symmetric_eigh(a);
        std::size_t jmin = 0;
        for (std::size_t j = 1; j < n; ++j)
            if (std::abs(eig.values[j]) < std::abs(eig.values[jmin])) jmin = j;
        const RealVector v = eig.vectors.col(jmin);
        double slope = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double hv = 2.0 * z * q(i, i) * v[i];
            for (std::size_t j = 0; j < n; ++j) hv += h(i, j) * v[j];
            slope += v[i] * hv;
        }
        if (std::abs(slope) < 1e-8) break; // even-order touching; keep z
        const double step = eig.values[jmin] / slope;
        z -= step;
        if (std::abs(step) < 1e-15) break;
    }
    return z;
}

} // namespace detail

// Bound states that decay as z_b^n along the tails: kernel vectors of the
// pencil at real roots of det A(z) inside (-1, 1).  Kernel directions with
// no amplitude at any attachment vertex are bound states of the second kind
// caught at a real root and are excluded here.
inline std::vector<BoundState> find_first_kind(const TailedGraph& g,
                                               const ToleranceConfig& tol = {}) {
    if (g.tail_count() < 1) throw InputError("graph has no tails");
    const int degree_bound = 2 * g.n_vertices();
    std::vector<PolyRoot> roots;
    if (degree_bound <= 24) {
        const RealVector coeffs =
            det_poly_coeffs([&](Complex z) { return pencil_matrix(g, z); }, degree_bound);
        roots = real_roots_in_interval(Polynomial(coeffs), -1.0, 1.0, tol);
    } else {
        // the monomial interpolation system degrades past degree ~24; the
        // Chebyshev-basis representation of the same determinant does not
        const auto series = ChebyshevSeries::from_samples(
            [&](double x) {
                return LuDecomposition(pencil_matrix(g, Complex(x, 0.0))).determinant().real();
            },
            degree_bound);
        roots = real_roots_in_interval(series, -1.0, 1.0, tol);
    }

    const RealSymmetricMatrix h = build_hamiltonian(g);
    const TailOperators ops = build_tail_operators(g);
    const auto tailed = g.tailed_vertices();
    std::vector<BoundState> out;
    double previous_zb = -2.0;
    for (const auto& root : roots) {
        const double zb = detail::polish_pencil_root(h, ops.complement, root.x);
        if (std::abs(zb - previous_zb) < 10.0 * tol.root_tol) continue; // polished duplicate
        previous_zb = zb;
        if (std::abs(zb) <= 1e3 * tol.root_tol) continue;        // z_b = 0 is unphysical
        if (std::abs(zb) >= 1.0 - tol.rank_tol) continue;        // must decay
        const ComplexMatrix a = pencil_matrix(g, Complex(zb, 0.0));
        const auto kernel = detail::pencil_kernel(g, Complex(zb, 0.0), a, tol);
        if (kernel.empty()) continue;

        // split the kernel by the attachment-amplitude map: directions with
        // nonzero image are first-kind, the rest belong to find_second_kind
        ComplexMatrix amap(tailed.size(), kernel.size());
        for (std::size_t r = 0; r < tailed.size(); ++r)
            for (std::size_t c = 0; c < kernel.size(); ++c)
                amap(r, c) = kernel[c][static_cast<std::size_t>(tailed[r])];
        const Svd split = jacobi_svd(amap);
        for (std::size_t j = 0; j < split.singular_values.size(); ++j) {
            if (split.singular_values[j] <= tol.residual_tol) continue;
            ComplexVector combo(kernel[0].size());
            for (std::size_t c = 0; c < kernel.size(); ++c)
                for (std::size_t i = 0; i < combo.size(); ++i)
                    combo[i] += split.right_vectors(c, j) * kernel[c][i];
            BoundState b;
            b.kind = BoundKind::First;
            b.z_b = zb;
            b.energy = -(zb + 1.0 / zb);
            b.graph_part = detail::fix_phase(combo);
            b.alpha = detail::attachment_amplitudes(g, b.graph_part);
            if (max_abs(b.alpha) <= tol.residual_tol) continue;
            double quad = 0.0; // <psi| I - z_b^2 Q |psi>
            for (std::size_t i = 0; i < b.graph_part.size(); ++i)
                quad += b.graph_part[i] * (1.0 - zb * zb * ops.complement(i, i)) * b.graph_part[i];
            b.norm_factor = (1.0 - zb * zb) / quad;
            out.push_back(std::move(b));
        }
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const BoundState& a, const BoundState& b) { return a.energy < b.energy; });
    return out;
}

// Eigenvectors of the finite-graph Hamiltonian with zero amplitude at every
// attachment vertex; they vanish identically on the tails.
inline std::vector<BoundState> find_second_kind(const TailedGraph& g,
                                                const ToleranceConfig& tol = {}) {
    const EighResult eig = symmetric_eigh(build_hamiltonian(g));
    const auto tailed = g.tailed_vertices();
    const std::size_t n = eig.values.size();

    std::vector<BoundState> out;
    std::size_t lo = 0;
    while (lo < n) {
        std::size_t hi = lo + 1;
        while (hi < n && std::abs(eig.values[hi] - eig.values[hi - 1]) < 1e-8) ++hi;
        const std::size_t dim = hi - lo;
        double energy = 0.0;
        for (std::size_t j = lo; j < hi; ++j) energy += eig.values[j];
        energy /= static_cast<double>(dim);

        // coefficient-space kernel of the eigenspace -> attachment map
        std::vector<ComplexVector> combos;
        if (tailed.empty()) {
            for (std::size_t j = 0; j < dim; ++j) {
                ComplexVector e(dim);
                e[j] = 1.0;
                combos.push_back(std::move(e));
            }
        } else {
            ComplexMatrix amap(tailed.size(), dim);
            for (std::size_t r = 0; r < tailed.size(); ++r)
                for (std::size_t c = 0; c < dim; ++c)
                    amap(r, c) = eig.vectors(static_cast<std::size_t>(tailed[r]), lo + c);
            const Svd svd = jacobi_svd(amap);
            for (std::size_t j = 0; j < svd.singular_values.size(); ++j)
                if (svd.singular_values[j] <= tol.rank_tol) combos.push_back(svd.right_vectors.col(j));
        }

        for (const auto& w : combos) {
            ComplexVector psi(n);
            for (std::size_t c = 0; c < dim; ++c)
                for (std::size_t i = 0; i < n; ++i)
                    psi[i] += w[c] * eig.vectors(i, lo + c);
            BoundState b;
            b.kind = BoundKind::Second;
            b.energy = energy;
            b.graph_part = detail::fix_phase(psi);
            b.alpha.assign(g.tail_labels().size(), 0.0);
            out.push_back(std::move(b));
        }
        lo = hi;
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const BoundState& a, const BoundState& b) { return a.energy < b.energy; });
    return out;
}

struct SpectrumLine {
    double energy;
    BoundKind kind;
    int degeneracy;
};

inline std::vector<SpectrumLine> bound_spectrum(const TailedGraph& g,
                                                const ToleranceConfig& tol = {}) {
    std::vector<SpectrumLine> lines;
    auto fold = [&lines](const std::vector<BoundState>& states) {
        for (const auto& b : states) {
            if (!lines.empty() && lines.back().kind == b.kind &&
                std::abs(lines.back().energy - b.energy) < 1e-8) {
                ++lines.back().degeneracy;
            } else {
                lines.push_back({b.energy, b.kind, 1});
            }
        }
    };
    if (g.tail_count() >= 1) fold(find_first_kind(g, tol));
    fold(find_second_kind(g, tol));
    std::stable_sort(lines.begin(), lines.end(),
                     [](const SpectrumLine& a, const SpectrumLine& b) { return a.energy < b.energy; });
    return lines;
}

} // namespace qgs
