#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "qgs/bound_states.hpp"
#include "qgs/graph.hpp"
#include "qgs/momentum.hpp"
#include "qgs/scattering.hpp"
#include "qgs/tolerance.hpp"

namespace qgs {

// Composite Gauss-Legendre discretization of the momentum integral over
// (0, pi).  Panel boundaries are placed at detected singular momenta (and at
// the interval ends) shrunk inward by `margin`, so no node ever lands on a
// point where the pencil is singular; the integrand itself extends
// continuously across those points.
struct QuadratureConfig {
    int node_count = 2048;
    double margin = 1e-9;
    int panel_order = 16;

    void validate() const {
        if (node_count < 64) throw InputError("quadrature needs at least 64 nodes");
        if (!(margin > 0.0)) throw InputError("margin must be positive");
        if (panel_order < 2) throw InputError("panel order must be at least 2");
    }
};

struct GaussLegendreRule {
    RealVector nodes;   // in (-1, 1)
    RealVector weights; // sum to 2
};

inline GaussLegendreRule gauss_legendre(int n) {
    if (n < 1) throw InputError("rule order must be positive");
    GaussLegendreRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        // Newton iteration from the Chebyshev estimate
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            if (n == 1) { p1 = x; }
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            const double pn = (n == 1) ? x : p1;
            const double pm = (n == 1) ? 1.0 : p0;
            dp = n * (x * pn - pm) / (x * x - 1.0);
            const double dx = pn / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[static_cast<std::size_t>(i)] = x;
        rule.weights[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

// A place where a wavefunction component can be read: either a vertex of the
// finite graph or site n >= 1 of one tail (site 0 is the attachment vertex
// and is canonicalized to it).
class Site {
public:
    static Site vertex(int v) { return Site(-1, v, 0); }

    static Site tail(const TailedGraph& g, int tail_index, long long n) {
        if (tail_index < 0 || tail_index >= g.tail_count())
            throw InputError("tail label out of range");
        if (n < 0) throw InputError("tail site index must be nonnegative");
        if (n == 0) return vertex(g.attachment_vertex(tail_index));
        return Site(tail_index, -1, n);
    }

    bool on_tail() const { return tail_ >= 0; }
    int tail_index() const { return tail_; }
    int vertex_index() const { return vertex_; }
    long long site() const { return n_; }

    bool operator==(const Site&) const = default;

private:
    Site(int tail, int vertex, long long n) : tail_(tail), vertex_(vertex), n_(n) {}
    int tail_;
    int vertex_;
    long long n_;
};

namespace detail {

inline Complex state_value(const PropagatingState& st, const Site& site) {
    if (site.on_tail()) return st.tail_amplitude(site.tail_index(), site.site());
    return st.value_at_vertex(site.vertex_index());
}

inline double bound_value(const BoundState& b, const Site& site) {
    if (b.kind == BoundKind::Second) {
        if (site.on_tail()) return 0.0;
        return b.graph_part[static_cast<std::size_t>(site.vertex_index())];
    }
    const double n = std::sqrt(b.norm_factor);
    if (site.on_tail())
        return n * b.alpha[static_cast<std::size_t>(site.tail_index())] *
               std::pow(b.z_b, static_cast<double>(site.site()));
    return n * b.graph_part[static_cast<std::size_t>(site.vertex_index())];
}

// Momenta in (0, pi) at which the pencil is singular; these come from bound
// states of the second kind with |E| < 2 via E = -2 cos k.
inline RealVector singular_momenta(const TailedGraph& g, const ToleranceConfig& tol) {
    RealVector ks;
    for (const auto& b : find_second_kind(g, tol)) {
        if (std::abs(b.energy) >= 2.0) continue;
        const double k = std::acos(-b.energy / 2.0);
        bool dup = false;
        for (double k0 : ks) dup = dup || std::abs(k0 - k) < 1e-9;
        if (!dup) ks.push_back(k);
    }
    std::sort(ks.begin(), ks.end());
    return ks;
}

struct QuadNode {
    double k;
    double weight;
};

inline std::vector<QuadNode> momentum_nodes(const TailedGraph& g, const QuadratureConfig& cfg,
                                            const ToleranceConfig& tol) {
    cfg.validate();
    RealVector cuts{0.0};
    for (double k : singular_momenta(g, tol)) cuts.push_back(k);
    cuts.push_back(M_PI);

    struct Panel {
        double a, b;
    };
    std::vector<Panel> panels;
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double a = cuts[i] + cfg.margin;
        const double b = cuts[i + 1] - cfg.margin;
        if (b > a) {
            panels.push_back({a, b});
            total += b - a;
        }
    }

    const GaussLegendreRule rule = gauss_legendre(cfg.panel_order);
    std::vector<QuadNode> nodes;
    for (const auto& panel : panels) {
        const double len = panel.b - panel.a;
        const int want = std::max(cfg.panel_order,
                                  static_cast<int>(std::lround(cfg.node_count * len / total)));
        const int subpanels = std::max(1, (want + cfg.panel_order - 1) / cfg.panel_order);
        const double h = len / subpanels;
        for (int sp = 0; sp < subpanels; ++sp) {
            const double lo = panel.a + sp * h;
            for (int i = 0; i < cfg.panel_order; ++i) {
                const double x = rule.nodes[static_cast<std::size_t>(i)];
                nodes.push_back({lo + 0.5 * h * (x + 1.0),
                                 0.5 * h * rule.weights[static_cast<std::size_t>(i)]});
            }
        }
    }
    return nodes;
}

} // namespace detail

struct CompletenessBreakdown {
    Complex total;            // sum of all spectral contributions minus delta_ab
    Complex first_kind_term;  // contribution of the exponentially decaying states
    Complex second_kind_term;
    Complex propagating_term; // quadrature of the momentum integral
};

// Resolution of the identity evaluated between two sites: bound-state sums
// plus (1/2pi) * integral over k in (0, pi) of the propagating dyad, minus
// delta_ab.  The magnitude of the result is the completeness error.
inline CompletenessBreakdown completeness_breakdown(const TailedGraph& g, const Site& a,
                                                    const Site& b, const QuadratureConfig& cfg = {},
                                                    const ToleranceConfig& tol = {}) {
    CompletenessBreakdown res{};
    for (const auto& st : find_first_kind(g, tol))
        res.first_kind_term += detail::bound_value(st, a) * detail::bound_value(st, b);
    for (const auto& st : find_second_kind(g, tol))
        res.second_kind_term += detail::bound_value(st, a) * detail::bound_value(st, b);

    const auto& labels = g.tail_labels();
    Complex integral{};
    for (const auto& node : detail::momentum_nodes(g, cfg, tol)) {
        const Momentum z = Momentum::from_k(node.k);
        Complex sum{};
        for (std::size_t t = 0; t < labels.size(); ++t) {
            const PropagatingState st = propagating_state(g, z, static_cast<int>(t), tol);
            sum += detail::state_value(st, a) * std::conj(detail::state_value(st, b));
        }
        integral += node.weight * sum;
    }
    res.propagating_term = integral / (2.0 * M_PI);

    res.total = res.first_kind_term + res.second_kind_term + res.propagating_term;
    if (a == b) res.total -= 1.0;
    return res;
}

inline Complex completeness_residual(const TailedGraph& g, const Site& a, const Site& b,
                                     const QuadratureConfig& cfg = {},
                                     const ToleranceConfig& tol = {}) {
    return completeness_breakdown(g, a, b, cfg, tol).total;
}

// Residual of the incoming-basis identity sum_nu s_{nu,t}(z) |z*,nu> = |z,t>,
// checked on the graph part and at tail sites n = 1, 2.
inline double scattering_identity_residual(const TailedGraph& g, const Momentum& z,
                                           const ToleranceConfig& tol = {}) {
    const SMatrix s = s_matrix(g, z, tol);
    const int m = static_cast<int>(s.dim());
    std::vector<PropagatingState> conj_states;
    for (int nu = 0; nu < m; ++nu)
        conj_states.push_back(propagating_state(g, z.conjugate(), nu, tol));

    double worst = 0.0;
    for (int t = 0; t < m; ++t) {
        const PropagatingState target = propagating_state(g, z, t, tol);
        ComplexVector combo(static_cast<std::size_t>(g.n_vertices()));
        for (int nu = 0; nu < m; ++nu)
            for (std::size_t i = 0; i < combo.size(); ++i)
                combo[i] += s(static_cast<std::size_t>(nu), static_cast<std::size_t>(t)) *
                            conj_states[static_cast<std::size_t>(nu)].graph_part()[i];
        for (std::size_t i = 0; i < combo.size(); ++i)
            worst = std::max(worst, std::abs(combo[i] - target.graph_part()[i]));

        for (int tp = 0; tp < m; ++tp) {
            for (long long n = 1; n <= 2; ++n) {
                Complex amp{};
                for (int nu = 0; nu < m; ++nu)
                    amp += s(static_cast<std::size_t>(nu), static_cast<std::size_t>(t)) *
                           conj_states[static_cast<std::size_t>(nu)].tail_amplitude(tp, n);
                worst = std::max(worst, std::abs(amp - target.tail_amplitude(tp, n)));
            }
        }
    }
    return worst;
}

// Full-graph inner product between a first-kind bound state and a
// propagating state; the tail sums are geometric series evaluated in closed
// form.  Orthogonality makes this vanish.
inline Complex overlap_bound_propagating(const TailedGraph& g, const BoundState& b,
                                         const Momentum& z, int tail_index,
                                         const ToleranceConfig& tol = {}) {
    if (b.kind != BoundKind::First) throw InputError("overlap defined for first-kind states");
    const PropagatingState st = propagating_state(g, z, tail_index, tol);
    const double n = std::sqrt(b.norm_factor);
    Complex overlap{};
    for (std::size_t i = 0; i < b.graph_part.size(); ++i)
        overlap += n * b.graph_part[i] * st.graph_part()[i];
    // sum over n >= 1 of z_b^n w^n = z_b w / (1 - z_b w), |z_b| < 1 = |w|
    auto geom = [&](Complex w) {
        const Complex den = 1.0 - b.z_b * w;
        if (std::abs(den) <= 1e-12) throw NumericError("tail overlap series diverges");
        return b.z_b * w / den;
    };
    for (std::size_t tp = 0; tp < st.s_column().size(); ++tp) {
        Complex tail_sum = st.s_column()[tp] * geom(z.z());
        if (static_cast<int>(tp) == tail_index) tail_sum += geom(1.0 / z.z());
        overlap += n * b.alpha[tp] * tail_sum;
    }
    return overlap;
}

} // namespace qgs
