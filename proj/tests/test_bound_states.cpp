#include <doctest.h>

#include <random>

#include <qgs/bound_states.hpp>
#include <qgs/polynomial.hpp>
#include <qgs/scattering.hpp>

#include "support/brute_force.hpp"
#include "support/fixtures.hpp"
#include "support/random_inputs.hpp"

using namespace qgs;

TEST_CASE("g7 carries one decaying bound state at the golden ratio") {
    const auto states = find_first_kind(fixtures::g7());
    REQUIRE(states.size() == 1);
    const auto& b = states[0];
    CHECK(b.z_b == doctest::Approx((std::sqrt(5.0) - 1.0) / 2.0).epsilon(1e-11));
    CHECK(b.energy == doctest::Approx(-std::sqrt(5.0)).epsilon(1e-11));
    CHECK(std::abs(b.energy) > 2.0 + 1e-12);
    REQUIRE(b.alpha.size() == 1);
    CHECK(std::abs(b.alpha[0]) > 1e-3);

    // kernel equation and full normalization including the tail sums
    const auto a = pencil_matrix(fixtures::g7(), Complex(b.z_b, 0.0));
    CHECK(max_abs(a * to_complex(b.graph_part)) < 1e-9);
    double norm = 0.0;
    for (double x : b.graph_part) norm += x * x;
    for (double al : b.alpha) norm += al * al * b.z_b * b.z_b / (1.0 - b.z_b * b.z_b);
    CHECK(b.norm_factor * norm == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("graphs without pencil roots have no first-kind states") {
    CHECK(find_first_kind(fixtures::g5()).empty());
    CHECK(find_first_kind(fixtures::g2()).empty());
    CHECK(find_first_kind(fixtures::g1()).empty());
}

TEST_CASE("star3 has symmetric decaying states, one with negative z_b") {
    const auto states = find_first_kind(fixtures::star3());
    REQUIRE(states.size() == 2);
    CHECK(states[0].energy == doctest::Approx(-3.0 / std::sqrt(2.0)).epsilon(1e-11));
    CHECK(states[0].z_b == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-11));
    CHECK(states[1].energy == doctest::Approx(3.0 / std::sqrt(2.0)).epsilon(1e-11));
    CHECK(states[1].z_b == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-11));
    for (const auto& b : states) {
        double norm = 0.0;
        for (double x : b.graph_part) norm += x * x;
        for (double al : b.alpha) norm += al * al * b.z_b * b.z_b / (1.0 - b.z_b * b.z_b);
        CHECK(b.norm_factor * norm == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("second-kind states vanish at every attachment vertex") {
    SUBCASE("g6: pendant-antisymmetric zero mode") {
        const auto states = find_second_kind(fixtures::g6());
        REQUIRE(states.size() == 1);
        CHECK(std::abs(states[0].energy) < 1e-10);
        CHECK(std::abs(states[0].graph_part[0]) < 1e-10);
        CHECK(states[0].graph_part[1] == doctest::Approx(M_SQRT1_2).epsilon(1e-10));
        CHECK(states[0].graph_part[2] == doctest::Approx(-M_SQRT1_2).epsilon(1e-10));
    }
    SUBCASE("g7: E = 1 survivor of the degenerate pair") {
        const auto states = find_second_kind(fixtures::g7());
        REQUIRE(states.size() == 1);
        CHECK(states[0].energy == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(std::abs(states[0].graph_part[0]) < 1e-10);
        CHECK(std::abs(states[0].graph_part[1] + states[0].graph_part[2]) < 1e-10);
    }
    SUBCASE("g4: both vertices tailed, none survive") {
        CHECK(find_second_kind(fixtures::g4()).empty());
    }
    SUBCASE("eigen-equation residual") {
        for (const auto& g : {fixtures::g6(), fixtures::g7()}) {
            const auto h = build_hamiltonian(g);
            for (const auto& b : find_second_kind(g)) {
                RealVector r = h * b.graph_part;
                for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b.energy * b.graph_part[i];
                CHECK(max_abs(r) < 1e-9);
                for (int v : g.tailed_vertices())
                    CHECK(std::abs(b.graph_part[static_cast<std::size_t>(v)]) < 1e-10);
            }
        }
    }
}

TEST_CASE("a tailless component contributes its spectrum as second-kind states") {
    // K4 ground state: E = -3, uniform on the K4, zero on the tailed part.
    const auto g = fixtures::g1_plus_k4();
    const auto second = find_second_kind(g);
    REQUIRE(second.size() == 4);
    CHECK(second.front().energy == doctest::Approx(-3.0).epsilon(1e-10));
    CHECK(std::abs(second.front().graph_part[0]) < 1e-10);

    // its pencil root at z = (3 - sqrt(5))/2 must NOT appear as first-kind
    const auto roots = real_roots_in_interval(
        Polynomial(det_poly_coeffs([&](Complex z) { return pencil_matrix(g, z); },
                                   2 * g.n_vertices())),
        -1.0, 1.0);
    bool found = false;
    for (const auto& r : roots) found = found || std::abs(r.x - (3.0 - std::sqrt(5.0)) / 2.0) < 1e-9;
    CHECK(found);
    CHECK(find_first_kind(g).empty());
}

TEST_CASE("bound spectrum aggregates both kinds sorted by energy") {
    const auto s7 = bound_spectrum(fixtures::g7());
    REQUIRE(s7.size() == 2);
    CHECK(s7[0].energy == doctest::Approx(-std::sqrt(5.0)).epsilon(1e-10));
    CHECK(s7[0].kind == BoundKind::First);
    CHECK(s7[0].degeneracy == 1);
    CHECK(s7[1].energy == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(s7[1].kind == BoundKind::Second);
    CHECK(s7[1].degeneracy == 1);

    CHECK(bound_spectrum(fixtures::g2()).empty());

    const auto s6 = bound_spectrum(fixtures::g6());
    REQUIRE(s6.size() == 1);
    CHECK(std::abs(s6[0].energy) < 1e-10);
    CHECK(s6[0].kind == BoundKind::Second);
}

TEST_CASE("second-kind states with |E| < 2 pin singular unit-circle momenta") {
    // E = -(z0 + 1/z0) on the unit circle
    for (const auto& [g, k0] : {std::pair{fixtures::g6(), M_PI / 2},
                                std::pair{fixtures::g7(), 2.0 * M_PI / 3.0}}) {
        const auto k = kernel_projector(g, Momentum::from_k(k0));
        double trace = 0.0;
        for (std::size_t i = 0; i < k.rows(); ++i) trace += k(i, i).real();
        CHECK(trace > 0.9); // rank at least one
    }
}

TEST_CASE("interpolation route agrees with a dense determinant scan") {
    std::mt19937 rng(6060);
    int checked = 0;
    for (int trial = 0; trial < 25; ++trial) {
        const auto g = testing_support::random_graph(rng, 6, 3);
        const auto coeffs = det_poly_coeffs(
            [&](Complex z) { return pencil_matrix(g, z); }, 2 * g.n_vertices());
        const auto mine = real_roots_in_interval(Polynomial(coeffs), -1.0, 1.0);
        const auto oracle = testing_support::scan_pencil_roots(g);
        for (double r : oracle) {
            if (std::abs(r) > 1.0 - 1e-6) continue; // oracle grid ends at the boundary
            bool matched = false;
            for (const auto& m : mine) matched = matched || std::abs(m.x - r) < 1e-8;
            CHECK(matched);
            ++checked;
        }
        // every odd-multiplicity interior root must be visible to the scan
        for (const auto& m : mine) {
            if (m.multiplicity % 2 == 0) continue;
            if (std::abs(m.x) > 1.0 - 1e-6) continue;
            bool matched = false;
            for (double r : oracle) matched = matched || std::abs(m.x - r) < 1e-8;
            CHECK(matched);
        }
    }
    CHECK(checked > 0); // the corpus exercised the comparison
}

TEST_CASE("large stars use the high-degree root path") {
    // 29 pendants around a tailed hub: det = (1+z^2)^28 (1 - 28 z^2), so the
    // decay parameters are +-1/sqrt(28) and the hub-vanishing pendant
    // differences give a 28-fold zero mode.
    const int pendants = 29;
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i <= pendants; ++i) edges.emplace_back(0, i);
    const TailedGraph g(pendants + 1, std::move(edges), {{0, 1}});

    const auto first = find_first_kind(g);
    REQUIRE(first.size() == 2);
    const double zb = 1.0 / std::sqrt(28.0);
    const double energy = 29.0 / std::sqrt(28.0);
    CHECK(first[0].z_b == doctest::Approx(zb).epsilon(1e-10));
    CHECK(first[0].energy == doctest::Approx(-energy).epsilon(1e-10));
    CHECK(first[1].z_b == doctest::Approx(-zb).epsilon(1e-10));
    CHECK(first[1].energy == doctest::Approx(energy).epsilon(1e-10));
    for (const auto& b : first) {
        double norm = 0.0;
        for (double x : b.graph_part) norm += x * x;
        for (double al : b.alpha) norm += al * al * b.z_b * b.z_b / (1.0 - b.z_b * b.z_b);
        CHECK(b.norm_factor * norm == doctest::Approx(1.0).epsilon(1e-9));
    }

    const auto spectrum = bound_spectrum(g);
    REQUIRE(spectrum.size() == 3);
    CHECK(spectrum[0].kind == BoundKind::First);
    CHECK(spectrum[1].kind == BoundKind::Second);
    CHECK(std::abs(spectrum[1].energy) < 1e-9);
    CHECK(spectrum[1].degeneracy == 28);
    CHECK(spectrum[2].kind == BoundKind::First);
}

TEST_CASE("first-kind invariants on random graphs") {
    std::mt19937 rng(515);
    for (int trial = 0; trial < 25; ++trial) {
        const auto g = testing_support::random_graph(rng, 6, 3);
        for (const auto& b : find_first_kind(g)) {
            CHECK(std::abs(b.energy) > 2.0 + 1e-12);
            CHECK(std::abs(b.z_b) < 1.0 - 1e-10);
            CHECK(std::abs(b.z_b) > 0.0);
            CHECK(max_abs(b.alpha) > 1e-9);
            const auto a = pencil_matrix(g, Complex(b.z_b, 0.0));
            CHECK(max_abs(a * to_complex(b.graph_part)) < 1e-9);
            double norm = 0.0;
            for (double x : b.graph_part) norm += x * x;
            for (double al : b.alpha) norm += al * al * b.z_b * b.z_b / (1.0 - b.z_b * b.z_b);
            CHECK(b.norm_factor * norm == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
}
