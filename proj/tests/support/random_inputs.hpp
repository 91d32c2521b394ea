#pragma once

#include <random>
#include <utility>
#include <vector>

#include <qgs/graph.hpp>
#include <qgs/linalg.hpp>
#include <qgs/matrix.hpp>
#include <qgs/momentum.hpp>

// Deterministic generators for the randomized suites.
namespace testing_support {

inline qgs::TailedGraph random_graph(std::mt19937& rng, int max_vertices = 8,
                                     int max_tails = 5) {
    std::uniform_int_distribution<int> nv(1, max_vertices);
    const int n = nv(rng);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u) {
        for (int v = u; v < n; ++v) {
            const double p = unit(rng);
            if (u == v) {
                if (p < 0.08) edges.emplace_back(u, v); // occasional self-loop
            } else if (p < 0.45) {
                edges.emplace_back(u, v);
                if (unit(rng) < 0.1) edges.emplace_back(u, v); // multi-edge
            }
        }
    }
    std::uniform_int_distribution<int> nt(1, max_tails);
    const int total = nt(rng);
    std::uniform_int_distribution<int> pick(0, n - 1);
    std::vector<qgs::TailAttachment> tails;
    for (int i = 0; i < total; ++i) tails.push_back({pick(rng), 1});
    return qgs::TailedGraph(n, std::move(edges), std::move(tails));
}

// k uniform in (margin, pi - margin); both edge momenta avoided.
inline qgs::Momentum random_momentum(std::mt19937& rng, double margin = 1e-3) {
    std::uniform_real_distribution<double> dist(margin, M_PI - margin);
    return qgs::Momentum::from_k(dist(rng));
}

inline qgs::ComplexMatrix random_unitary(std::mt19937& rng, std::size_t n) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    qgs::ComplexMatrix a(n, n);
    for (auto& x : a.data()) x = qgs::Complex(gauss(rng), gauss(rng));
    // modified Gram-Schmidt with one re-orthogonalization pass
    for (std::size_t j = 0; j < n; ++j) {
        qgs::ComplexVector col = a.col(j);
        for (int pass = 0; pass < 2; ++pass)
            for (std::size_t p = 0; p < j; ++p) {
                const qgs::ComplexVector prev = a.col(p);
                const qgs::Complex proj = qgs::dot(prev, col);
                for (std::size_t i = 0; i < n; ++i) col[i] -= proj * prev[i];
            }
        const double nrm = qgs::norm2(col);
        for (auto& x : col) x /= nrm;
        a.set_col(j, col);
    }
    return a;
}

} // namespace testing_support
