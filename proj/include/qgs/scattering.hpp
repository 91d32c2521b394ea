#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "qgs/graph.hpp"
#include "qgs/linalg.hpp"
#include "qgs/matrix.hpp"
#include "qgs/momentum.hpp"
#include "qgs/tolerance.hpp"

namespace qgs {

// The quadratic matrix pencil I + z H + z^2 Q over the vertex basis.  Its
// linear solves define the propagating states; its kernel at real z inside
// the unit disk defines the exponentially decaying bound states.
inline ComplexMatrix pencil_matrix(const TailedGraph& g, Complex z) {
    const auto n = static_cast<std::size_t>(g.n_vertices());
    const RealSymmetricMatrix h = build_hamiltonian(g);
    const TailOperators ops = build_tail_operators(g);
    ComplexMatrix a(n, n);
    const Complex z2 = z * z;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a(i, j) = z * h(i, j);
        a(i, i) += 1.0 + z2 * ops.complement(i, i);
    }
    return a;
}

namespace detail {

// Singularity decisions for the pencil compare singular values against the
// pencil coefficient scale, not only sigma_max: at a bound-state momentum of
// a one-vertex component the evaluated matrix deflates entirely and a purely
// relative test would never fire.
inline double pencil_scale(const TailedGraph& g, Complex z) {
    const double az = std::abs(z);
    return 1.0 + az * norm_inf(build_hamiltonian(g)) +
           az * az * norm_inf(build_tail_operators(g).complement);
}

inline std::vector<ComplexVector> pencil_kernel(const TailedGraph& g, Complex z,
                                                const ComplexMatrix& a,
                                                const ToleranceConfig& tol) {
    if (a.empty()) return {};
    const Svd svd = jacobi_svd(a);
    const double scale = std::max(svd.singular_values.front(), pencil_scale(g, z));
    std::vector<ComplexVector> basis;
    for (std::size_t j = 0; j < svd.singular_values.size(); ++j)
        if (svd.singular_values[j] <= tol.rank_tol * scale)
            basis.push_back(svd.right_vectors.col(j));
    return basis;
}

} // namespace detail

// Orthogonal projector onto ker A(z0); the zero matrix when A(z0) is
// nonsingular.  For |z0| = 1, z0 != +-1 the kernel consists of bound states
// of the second kind, so the projector annihilates every tailed vertex.
inline ComplexMatrix kernel_projector(const TailedGraph& g, const Momentum& z0,
                                      const ToleranceConfig& tol = {}) {
    const ComplexMatrix a = pencil_matrix(g, z0.z());
    const auto basis = detail::pencil_kernel(g, z0.z(), a, tol);
    const auto n = a.rows();
    ComplexMatrix k(n, n);
    for (const auto& u : basis)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) k(i, j) += u[i] * std::conj(u[j]);
    return k;
}

// Tail-indexed scattering matrix at a fixed unit-circle momentum.
class SMatrix {
public:
    SMatrix(Momentum z, std::vector<TailLabel> labels, ComplexMatrix entries)
        : z_(z), labels_(std::move(labels)), s_(std::move(entries)) {}

    const Momentum& momentum() const { return z_; }
    const std::vector<TailLabel>& labels() const { return labels_; }
    const ComplexMatrix& entries() const { return s_; }
    std::size_t dim() const { return labels_.size(); }

    Complex operator()(std::size_t i, std::size_t j) const { return s_(i, j); }

    // Diagonal: reflection amplitudes.
    Complex reflection(std::size_t i) const { return s_(i, i); }

private:
    Momentum z_;
    std::vector<TailLabel> labels_;
    ComplexMatrix s_;
};

namespace detail {

struct PencilSolver {
    ComplexMatrix a;
    std::vector<ComplexVector> kernel;
    LuDecomposition lu; // of A, or of A + K on the singular branch

    PencilSolver(const TailedGraph& g, Complex z, const ToleranceConfig& tol)
        : a(pencil_matrix(g, z)), kernel(), lu(make_lu(g, z, tol)) {}

    bool singular() const { return !kernel.empty(); }

private:
    LuDecomposition make_lu(const TailedGraph& g, Complex z, const ToleranceConfig& tol) {
        kernel = pencil_kernel(g, z, a, tol);
        if (kernel.empty()) return LuDecomposition(a);
        // pseudo-inverse branch: (A + K)^-1 acts as A^-1 on the image of A
        ComplexMatrix ak = a;
        for (const auto& u : kernel)
            for (std::size_t i = 0; i < ak.rows(); ++i)
                for (std::size_t j = 0; j < ak.cols(); ++j)
                    ak(i, j) += u[i] * std::conj(u[j]);
        return LuDecomposition(ak);
    }
};

inline void require_admissible(const TailedGraph& g, const Momentum& z) {
    if (z.is_edge())
        throw EdgeMomentumError(
            "reflection/transmission undefined at k = 0 or pi; use edge_states");
    if (g.tail_count() == 0)
        throw InputError("graph has no tails; scattering matrix is empty");
}

} // namespace detail

// S-matrix elements s_{tt'} = (1 - z^2) <t| A(z)^-1 |t'> - delta_{tt'},
// with the pseudo-inverse (A + K)^-1 - K replacing A^-1 at singular momenta.
inline SMatrix s_matrix(const TailedGraph& g, const Momentum& z,
                        const ToleranceConfig& tol = {}) {
    detail::require_admissible(g, z);
    detail::PencilSolver solver(g, z.z(), tol);
    const auto& labels = g.tail_labels();
    const auto m = labels.size();
    const Complex w = 1.0 - z.z() * z.z();
    ComplexMatrix s(m, m);
    for (std::size_t jc = 0; jc < m; ++jc) {
        ComplexVector rhs(static_cast<std::size_t>(g.n_vertices()));
        rhs[static_cast<std::size_t>(labels[jc].vertex)] = 1.0;
        const ComplexVector x = solver.lu.solve(rhs);
        for (std::size_t ir = 0; ir < m; ++ir) {
            s(ir, jc) = w * x[static_cast<std::size_t>(labels[ir].vertex)];
            if (ir == jc) s(ir, jc) -= 1.0;
        }
    }
    return SMatrix(z, labels, std::move(s));
}

// Energy eigenstate with the incoming wave on one tail.  The graph part is
// stored explicitly; tail amplitudes are a closed-form rule in the site
// index, never a truncated array.
class PropagatingState {
public:
    PropagatingState(Momentum z, int incoming, std::vector<TailLabel> labels,
                     ComplexVector graph_part, ComplexVector s_column)
        : z_(z), incoming_(incoming), labels_(std::move(labels)),
          graph_part_(std::move(graph_part)), s_column_(std::move(s_column)) {}

    const Momentum& momentum() const { return z_; }
    int incoming_tail() const { return incoming_; }
    const std::vector<TailLabel>& labels() const { return labels_; }
    const ComplexVector& graph_part() const { return graph_part_; }

    // Column tau of the S-matrix: s_{t, incoming}.
    const ComplexVector& s_column() const { return s_column_; }

    Complex value_at_vertex(int v) const { return graph_part_[static_cast<std::size_t>(v)]; }

    // Amplitude at site n >= 0 of a tail; n = 0 is the attachment vertex.
    Complex tail_amplitude(int tail_index, long long n) const {
        const Complex zn = std::pow(z_.z(), static_cast<double>(n));
        Complex amp = s_column_[static_cast<std::size_t>(tail_index)] * zn;
        if (tail_index == incoming_) amp += Complex(1.0, 0.0) / zn;
        return amp;
    }

private:
    Momentum z_;
    int incoming_;
    std::vector<TailLabel> labels_;
    ComplexVector graph_part_;
    ComplexVector s_column_;
};

inline PropagatingState propagating_state(const TailedGraph& g, const Momentum& z,
                                          int tail_index, const ToleranceConfig& tol = {}) {
    detail::require_admissible(g, z);
    if (tail_index < 0 || tail_index >= g.tail_count())
        throw InputError("tail label out of range");
    detail::PencilSolver solver(g, z.z(), tol);
    const auto& labels = g.tail_labels();
    const Complex w = 1.0 - z.z() * z.z();
    ComplexVector rhs(static_cast<std::size_t>(g.n_vertices()));
    rhs[static_cast<std::size_t>(labels[static_cast<std::size_t>(tail_index)].vertex)] = w;
    ComplexVector psi = solver.lu.solve(rhs);
    ComplexVector s_col(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        s_col[i] = psi[static_cast<std::size_t>(labels[i].vertex)];
        if (static_cast<int>(i) == tail_index) s_col[i] -= 1.0;
    }
    return PropagatingState(z, tail_index, labels, std::move(psi), std::move(s_col));
}

// Solution classes at k = 0 (epsilon = +1) or k = pi (epsilon = -1), i.e.
// the kernel of I + epsilon H + Q.  A solution that Q annihilates vanishes
// on every tail and is really a bound state of the second kind.
struct EdgeState {
    int epsilon;
    ComplexVector vector;
    bool extended; // nonzero on some tail
};

inline std::vector<EdgeState> edge_states(const TailedGraph& g, int epsilon,
                                          const ToleranceConfig& tol = {}) {
    if (epsilon != 1 && epsilon != -1) throw InputError("epsilon must be +1 or -1");
    const Complex ez(static_cast<double>(epsilon), 0.0);
    const ComplexMatrix op = pencil_matrix(g, ez);
    const TailOperators ops = build_tail_operators(g);
    std::vector<EdgeState> out;
    for (auto& u : detail::pencil_kernel(g, ez, op, tol)) {
        double qnorm = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i)
            qnorm = std::max(qnorm, std::abs(ops.complement(i, i) * u[i]));
        out.push_back({epsilon, std::move(u), qnorm > tol.residual_tol});
    }
    return out;
}

// Probability current from v1 to v2 for a pair of graph-restricted states;
// the two vertices must share an edge.
inline Complex probability_current(const TailedGraph& g, const ComplexVector& psi,
                                   const ComplexVector& phi, int v1, int v2) {
    if (!g.has_edge(v1, v2)) throw InputError("vertices are not adjacent");
    const auto a = static_cast<std::size_t>(v1), b = static_cast<std::size_t>(v2);
    return Complex(0.0, 1.0) * (std::conj(psi[b]) * phi[a] - std::conj(psi[a]) * phi[b]);
}

// Current across the first tail link (site 0 -> site 1) of one tail.
inline Complex tail_root_current(const PropagatingState& psi, const PropagatingState& phi,
                                 int tail_index) {
    const Complex p0 = psi.tail_amplitude(tail_index, 0);
    const Complex p1 = psi.tail_amplitude(tail_index, 1);
    const Complex f0 = phi.tail_amplitude(tail_index, 0);
    const Complex f1 = phi.tail_amplitude(tail_index, 1);
    return Complex(0.0, 1.0) * (std::conj(p1) * f0 - std::conj(p0) * f1);
}

inline double check_unitarity(const SMatrix& s) { return unitarity_residual(s.entries()); }

// || S(z*) - S(z)^dagger ||_max; vanishes by time-reversal symmetry.
inline double check_time_reversal(const TailedGraph& g, const Momentum& z,
                                  const ToleranceConfig& tol = {}) {
    const SMatrix s = s_matrix(g, z, tol);
    const SMatrix sc = s_matrix(g, z.conjugate(), tol);
    return max_abs(sc.entries() - adjoint(s.entries()));
}

} // namespace qgs
