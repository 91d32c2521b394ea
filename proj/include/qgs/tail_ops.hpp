#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "qgs/linalg.hpp"
#include "qgs/matrix.hpp"
#include "qgs/scattering.hpp"
#include "qgs/tolerance.hpp"

namespace qgs {

// Blocks of an S-matrix under a kept/removed split of its tail labels,
// permuted so the removed labels sit last:
//   S ~ [ T U ; V W ],  T: kept x kept, W: removed x removed.
struct BlockPartition {
    std::vector<int> kept;
    std::vector<int> removed;
    ComplexMatrix T, U, V, W;
};

inline BlockPartition partition_blocks(const SMatrix& s, const std::vector<int>& removed) {
    const int m = static_cast<int>(s.dim());
    std::vector<bool> is_removed(static_cast<std::size_t>(m), false);
    for (int r : removed) {
        if (r < 0 || r >= m) throw InputError("tail label out of range");
        if (is_removed[static_cast<std::size_t>(r)]) throw InputError("duplicate tail label");
        is_removed[static_cast<std::size_t>(r)] = true;
    }
    BlockPartition p;
    p.removed = removed;
    for (int i = 0; i < m; ++i)
        if (!is_removed[static_cast<std::size_t>(i)]) p.kept.push_back(i);

    auto idx = [](const std::vector<int>& v) {
        std::vector<std::size_t> u(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) u[i] = static_cast<std::size_t>(v[i]);
        return u;
    };
    const auto k = idx(p.kept), r = idx(p.removed);
    p.T = s.entries().submatrix(k, k);
    p.U = s.entries().submatrix(k, r);
    p.V = s.entries().submatrix(r, k);
    p.W = s.entries().submatrix(r, r);
    return p;
}

// S~ = T - U (G + W)^-1 V.  For unitary S and G this is unitary again; the
// cut and connect updates below are the specializations G = I/z^2 and
// G = -X/z.
inline ComplexMatrix unitary_update(const BlockPartition& p, const ComplexMatrix& g) {
    ComplexMatrix gw = g + p.W;
    LuDecomposition lu(std::move(gw));
    if (lu.is_singular(1e-12))
        throw ResonantDenominatorError("G + W numerically singular", lu.min_pivot());
    if (p.kept.empty()) return ComplexMatrix(0, 0);
    return p.T - p.U * lu.solve_matrix(p.V);
}

namespace detail {

inline std::vector<TailLabel> keep_labels(const SMatrix& s, const std::vector<int>& kept) {
    std::vector<TailLabel> out;
    for (int i : kept) out.push_back(s.labels()[static_cast<std::size_t>(i)]);
    return out;
}

} // namespace detail

// Removing one tail, leaving a stump of stump_len extra path vertices:
//   s'_{tt'} = s_{tt'} - z^(2L+2) s_{tc} s_{ct'} / (1 + z^(2L+2) s_{cc}).
inline SMatrix cut_tail_stump(const SMatrix& s, int cut_index, int stump_len) {
    const int m = static_cast<int>(s.dim());
    if (cut_index < 0 || cut_index >= m) throw InputError("tail label out of range");
    if (stump_len < 0) throw InputError("stump length must be nonnegative");
    const Complex z = s.momentum().z();
    const Complex zf = std::pow(z, 2.0 * (stump_len + 1));
    const auto c = static_cast<std::size_t>(cut_index);
    const Complex den = 1.0 + zf * s(c, c);
    if (std::abs(den) <= 1e-12)
        throw ResonantDenominatorError("resonant cut: 1 + z^(2L+2) s_cc vanishes", std::abs(den));

    std::vector<int> kept;
    for (int i = 0; i < m; ++i)
        if (i != cut_index) kept.push_back(i);
    ComplexMatrix out(kept.size(), kept.size());
    for (std::size_t i = 0; i < kept.size(); ++i)
        for (std::size_t j = 0; j < kept.size(); ++j) {
            const auto a = static_cast<std::size_t>(kept[i]);
            const auto b = static_cast<std::size_t>(kept[j]);
            out(i, j) = s(a, b) - zf * s(a, c) * s(c, b) / den;
        }
    return SMatrix(s.momentum(), detail::keep_labels(s, kept), std::move(out));
}

inline SMatrix cut_tail(const SMatrix& s, int cut_index) {
    return cut_tail_stump(s, cut_index, 0);
}

// Block form of cutting several tails at once: S^c = T - z^2 U (I + z^2 W)^-1 V.
inline SMatrix cut_tails_block(const SMatrix& s, const std::vector<int>& removed) {
    const BlockPartition p = partition_blocks(s, removed);
    const Complex z = s.momentum().z();
    const Complex z2 = z * z;
    const auto k = p.removed.size();
    ComplexMatrix g(k, k);
    for (std::size_t i = 0; i < k; ++i) g(i, i) = 1.0 / z2;
    return SMatrix(s.momentum(), detail::keep_labels(s, p.kept), unitary_update(p, g));
}

// Attaching one more tail to a vertex that already carries the tail
// `anchor_index`.  The new label is appended.
inline SMatrix attach_tail(const SMatrix& s, int anchor_index) {
    const int m = static_cast<int>(s.dim());
    if (anchor_index < 0 || anchor_index >= m) throw InputError("tail label out of range");
    const Complex z = s.momentum().z();
    const Complex z2 = z * z;
    const auto t = static_cast<std::size_t>(anchor_index);
    const Complex stt = s(t, t);
    const Complex den = 1.0 - z2 * (2.0 + stt);
    if (std::abs(den) <= 1e-12)
        throw ResonantDenominatorError("resonant attach: 1 - z^2 (2 + s_tt) vanishes",
                                       std::abs(den));
    const Complex w = 1.0 - z2;
    const auto ma = static_cast<std::size_t>(m);
    ComplexMatrix out(ma + 1, ma + 1);
    for (std::size_t i = 0; i < ma; ++i)
        for (std::size_t j = 0; j < ma; ++j) {
            if (i == t || j == t) continue;
            out(i, j) = s(i, j) + z2 * s(i, t) * s(t, j) / den;
        }
    for (std::size_t i = 0; i < ma; ++i) {
        if (i == t) continue;
        out(i, t) = out(i, ma) = w * s(i, t) / den;
        out(t, i) = out(ma, i) = w * s(t, i) / den;
    }
    out(t, ma) = out(ma, t) = w * (1.0 + stt) / den;
    out(t, t) = out(ma, ma) = (z2 + stt) / den;

    auto labels = s.labels();
    const int v = labels[t].vertex;
    int next_ordinal = 0;
    for (const auto& l : labels)
        if (l.vertex == v) next_ordinal = std::max(next_ordinal, l.ordinal);
    labels.push_back({v, next_ordinal + 1});
    return SMatrix(s.momentum(), std::move(labels), std::move(out));
}

// Looks up a tail anchored at `vertex`; attaching to a vertex with no tail
// cannot be expressed through the existing S-matrix and needs a direct
// recomputation from the modified graph.
inline SMatrix attach_tail_at_vertex(const SMatrix& s, int vertex) {
    for (std::size_t i = 0; i < s.dim(); ++i)
        if (s.labels()[i].vertex == vertex) return attach_tail(s, static_cast<int>(i));
    throw InputError("vertex has no tail; rebuild the graph and recompute instead");
}

// Connects pairs of tails into edges; removed labels are ordered
// [first-of-pair..., second-of-pair...] so the exchange matrix takes the
// block form [0 I; I 0]:  S~ = T - z U (z W - X)^-1 V.
inline SMatrix connect_tail_pairs(const SMatrix& s,
                                  const std::vector<std::pair<int, int>>& pairs) {
    std::vector<int> removed;
    for (const auto& pr : pairs) removed.push_back(pr.first);
    for (const auto& pr : pairs) removed.push_back(pr.second);
    const BlockPartition p = partition_blocks(s, removed);
    const Complex z = s.momentum().z();
    const std::size_t np = pairs.size();
    ComplexMatrix g(2 * np, 2 * np);
    for (std::size_t i = 0; i < np; ++i) {
        g(i, np + i) = -1.0 / z;
        g(np + i, i) = -1.0 / z;
    }
    return SMatrix(s.momentum(), detail::keep_labels(s, p.kept), unitary_update(p, g));
}

inline SMatrix connect_tails(const SMatrix& s, int label_a, int label_b) {
    if (label_a == label_b) throw InputError("cannot connect a tail to itself");
    return connect_tail_pairs(s, {{label_a, label_b}});
}

// Elementwise form of the two-tail connection; kept as an independent route
// for cross-checking the block formula.
inline ComplexMatrix connect_tails_elementwise(const SMatrix& s, int label_a, int label_b) {
    const Complex z = s.momentum().z();
    const auto t1 = static_cast<std::size_t>(label_a);
    const auto t2 = static_cast<std::size_t>(label_b);
    const Complex s11 = s(t1, t1), s12 = s(t1, t2), s21 = s(t2, t1), s22 = s(t2, t2);
    const Complex den = 1.0 - (s12 + s21) * z - (s11 * s22 - s12 * s21) * z * z;
    if (std::abs(den) <= 1e-12)
        throw ResonantDenominatorError("elementwise connect denominator vanishes",
                                       std::abs(den));
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < s.dim(); ++i)
        if (i != t1 && i != t2) kept.push_back(i);
    ComplexMatrix out(kept.size(), kept.size());
    for (std::size_t i = 0; i < kept.size(); ++i)
        for (std::size_t j = 0; j < kept.size(); ++j) {
            const auto a = kept[i], b = kept[j];
            Complex val = s(a, b);
            val += z * (s(a, t1) * s(t2, b) + s(a, t2) * s(t1, b)) / den;
            val -= z * z * (s12 * s(a, t1) * s(t2, b) + s21 * s(a, t2) * s(t1, b)) / den;
            val += z * z * (s22 * s(a, t1) * s(t1, b) + s11 * s(a, t2) * s(t2, b)) / den;
            out(i, j) = val;
        }
    return out;
}

// Block-diagonal direct sum; the second operand's labels are shifted so the
// combined label set mirrors the disjoint union of the underlying graphs.
inline SMatrix direct_sum(const SMatrix& a, const SMatrix& b, int vertex_offset = -1) {
    if (std::abs(a.momentum().z() - b.momentum().z()) > 1e-12)
        throw InputError("direct sum requires equal momenta");
    if (vertex_offset < 0) {
        vertex_offset = 0;
        for (const auto& l : a.labels()) vertex_offset = std::max(vertex_offset, l.vertex + 1);
    }
    const auto na = a.dim(), nb = b.dim();
    ComplexMatrix s(na + nb, na + nb);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j) s(i, j) = a(i, j);
    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < nb; ++j) s(na + i, na + j) = b(i, j);
    auto labels = a.labels();
    for (const auto& l : b.labels()) labels.push_back({l.vertex + vertex_offset, l.ordinal});
    return SMatrix(a.momentum(), std::move(labels), std::move(s));
}

// Composition of two scattering gates.  Each operand must be block
// anti-diagonal with equally sized incoming (first half) and outgoing
// (second half) bundles; outgoing tails of the first gate are joined to the
// incoming tails of the second.  The result implements z * S2_oi * S1_oi.
inline SMatrix compose_gates(const SMatrix& s1, const SMatrix& s2,
                             const ToleranceConfig& tol = {}) {
    if (s1.dim() % 2 != 0 || s2.dim() % 2 != 0)
        throw InputError("gate S-matrix must have an even number of tails");
    const std::size_t d1 = s1.dim() / 2, d2 = s2.dim() / 2;
    if (d1 != d2) throw InputError("gate wire counts do not match");
    auto gate_form_residual = [](const SMatrix& s, std::size_t d) {
        double r = 0.0;
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                r = std::max(r, std::abs(s(i, j)));
                r = std::max(r, std::abs(s(d + i, d + j)));
            }
        return r;
    };
    if (gate_form_residual(s1, d1) > tol.residual_tol ||
        gate_form_residual(s2, d2) > tol.residual_tol)
        throw GateFormError("S-matrix is not in block anti-diagonal gate form");

    const SMatrix sum = direct_sum(s1, s2);
    std::vector<std::pair<int, int>> pairs;
    const int d = static_cast<int>(d1);
    for (int i = 0; i < d; ++i) pairs.push_back({d + i, 2 * d + i});
    return connect_tail_pairs(sum, pairs);
}

} // namespace qgs
