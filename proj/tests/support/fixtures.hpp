#pragma once

#include <qgs/graph.hpp>

// Canonical small graphs used across the suite:
//   g1: one vertex, one tail            g5: one edge, tail at vertex 0 only
//   g2: one vertex, two tails           g6: star, center tailed, two pendants
//   g3: one vertex, three tails         g7: triangle, tail at vertex 0
//   g4: one edge, one tail at each end
namespace fixtures {

inline qgs::TailedGraph g1() { return {1, {}, {{0, 1}}}; }
inline qgs::TailedGraph g2() { return {1, {}, {{0, 2}}}; }
inline qgs::TailedGraph g3() { return {1, {}, {{0, 3}}}; }
inline qgs::TailedGraph g4() { return {2, {{0, 1}}, {{0, 1}, {1, 1}}}; }
inline qgs::TailedGraph g5() { return {2, {{0, 1}}, {{0, 1}}}; }
inline qgs::TailedGraph g6() { return {3, {{0, 1}, {0, 2}}, {{0, 1}}}; }
inline qgs::TailedGraph g7() { return {3, {{0, 1}, {0, 2}, {1, 2}}, {{0, 1}}}; }

inline std::vector<qgs::TailedGraph> all() {
    return {g1(), g2(), g3(), g4(), g5(), g6(), g7()};
}

// Star with three pendants, tail at the center: det factorizes so that the
// pencil kernel appears at z = +-1/sqrt(2), giving a negative decay
// parameter alongside the positive one.
inline qgs::TailedGraph star3() { return {4, {{0, 1}, {0, 2}, {0, 3}}, {{0, 1}}}; }

// Disjoint union of g1 with a tailless K4: the K4 ground state has |E| > 2
// and zero amplitude on the tailed component, so the pencil determinant
// gains a real root inside (-1, 1) that is not a first-kind state.
inline qgs::TailedGraph g1_plus_k4() {
    return {5, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}, {{0, 1}}};
}

} // namespace fixtures
