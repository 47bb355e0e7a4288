/**
 * Built-in polytopes: the three non-symmetric Kaehler-Einstein examples in
 * dimensions 7 and 8, the 5-dimensional facet-criterion counterexample, and
 * a handful of classical smooth Fano polytopes.
 *
 * The published matrices list vertices as columns. They are transposed here
 * once, one row per vertex, in the original column order.
 */
#pragma once

#include <string>
#include <vector>

#include "reflex/exact.hpp"
#include "reflex/io.hpp"
#include "reflex/polytope.hpp"

namespace reflex::fixtures {

namespace detail {

inline std::vector<IntVector> rows(std::initializer_list<std::initializer_list<int>> data)
{
    std::vector<IntVector> out;
    for (const auto& r : data) {
        IntVector v;
        for (int x : r)
            v.emplace_back(x);
        out.push_back(std::move(v));
    }
    return out;
}

} // namespace detail

/** 7-dimensional, 12 vertices; a P^1-bundle over (P^1)^3 x P^3. */
inline std::vector<IntVector> q1_vertices()
{
    return detail::rows({
        {1, 0, 0, 0, 0, 0, 0},
        {0, 1, 0, 0, 0, 0, 0},
        {0, 0, 1, 0, 0, 0, 0},
        {0, 0, -1, 0, 0, 0, -1},
        {0, -1, 0, 0, 0, 0, -1},
        {-1, 0, 0, 0, 0, 0, -1},
        {0, 0, 0, 1, 0, 0, 0},
        {0, 0, 0, 0, 1, 0, 0},
        {0, 0, 0, 0, 0, 1, 0},
        {0, 0, 0, -1, -1, -1, 2},
        {0, 0, 0, 0, 0, 0, 1},
        {0, 0, 0, 0, 0, 0, -1},
    });
}

/** 8-dimensional, 16 vertices; an S_6-bundle over (P^1)^3 x P^3. */
inline std::vector<IntVector> q3_vertices()
{
    return detail::rows({
        {1, 0, 0, 0, 0, 0, 0, 0},
        {0, 1, 0, 0, 0, 0, 0, 0},
        {0, 0, 1, 0, 0, 0, 0, 0},
        {0, 0, -1, 0, 0, 0, 0, -1},
        {0, -1, 0, 0, 0, 0, 0, -1},
        {-1, 0, 0, 0, 0, 0, 0, -1},
        {0, 0, 0, 1, 0, 0, 0, 0},
        {0, 0, 0, 0, 1, 0, 0, 0},
        {0, 0, 0, 0, 0, 1, 0, 0},
        {0, 0, 0, -1, -1, -1, 0, 2},
        {0, 0, 0, 0, 0, 0, 0, 1},
        {0, 0, 0, 0, 0, 0, 1, 0},
        {0, 0, 0, 0, 0, 0, -1, 1},
        {0, 0, 0, 0, 0, 0, 1, -1},
        {0, 0, 0, 0, 0, 0, -1, 0},
        {0, 0, 0, 0, 0, 0, 0, -1},
    });
}

/**
 * 5-dimensional, 8 vertices. The facets of the dual dual to the 4th and 5th
 * vertices (0,0,0,-1,0) and (0,0,0,1,0) admit no point of their affine hull
 * at height <= 1/2 over all neighbouring facets.
 */
inline std::vector<IntVector> facet_counterexample_vertices()
{
    return detail::rows({
        {-1, 0, 0, 0, 0},
        {0, -1, 0, 0, 0},
        {0, 0, -1, 0, 0},
        {0, 0, 0, -1, 0},
        {0, 0, 0, 1, 0},
        {0, 0, 0, 0, -1},
        {1, 0, 1, 2, 0},
        {0, 1, 0, -2, 1},
    });
}

/** The two exceptional vertices of facet_counterexample_vertices(). */
inline std::vector<IntVector> facet_counterexample_exceptional()
{
    return detail::rows({{0, 0, 0, -1, 0}, {0, 0, 0, 1, 0}});
}

/** conv{e_1, ..., e_n, -(e_1 + ... + e_n)}, the fan polytope of P^n. */
inline std::vector<IntVector> projective_space(std::size_t n)
{
    std::vector<IntVector> out;
    for (std::size_t i = 0; i < n; ++i) {
        IntVector e(n, BigInt(0));
        e[i] = 1;
        out.push_back(std::move(e));
    }
    out.push_back(IntVector(n, BigInt(-1)));
    return out;
}

/** conv{+-e_i}, the fan polytope of (P^1)^n; its dual is the cube [-1,1]^n. */
inline std::vector<IntVector> cross_polytope(std::size_t n)
{
    std::vector<IntVector> out;
    for (std::size_t i = 0; i < n; ++i)
        for (int s : {1, -1}) {
            IntVector e(n, BigInt(0));
            e[i] = s;
            out.push_back(std::move(e));
        }
    return out;
}

/** +-e_1, +-e_2, +-(e_1 + e_2): the del Pezzo surface of degree 6. */
inline std::vector<IntVector> hexagon()
{
    return detail::rows({{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {-1, -1}});
}

/** P^2 blown up in one torus-fixed point; not Kaehler-Einstein. */
inline std::vector<IntVector> blown_up_plane()
{
    return detail::rows({{1, 0}, {0, 1}, {-1, -1}, {1, 1}});
}

/** A triangle with a non-unimodular cone; fails the smoothness check. */
inline std::vector<IntVector> singular_triangle()
{
    return detail::rows({{1, 0}, {0, 1}, {-2, -1}});
}

inline FanoPolytope q1() { return FanoPolytope::from_vertices(q1_vertices()); }

/** Bipyramid over Q1, the fan polytope of X_1 x P^1. */
inline FanoPolytope q2() { return free_sum(q1(), segment()); }

inline FanoPolytope q3() { return FanoPolytope::from_vertices(q3_vertices()); }

/** (P^1)^k x X_1. */
inline FanoPolytope q1_times_lines(std::size_t k)
{
    FanoPolytope q = q1();
    for (std::size_t i = 0; i < k; ++i)
        q = free_sum(q, segment());
    return q;
}

struct NamedVertices
{
    std::string name;
    std::size_t dim;
    std::vector<IntVector> vertices;
};

/**
 * The mixed scan corpus, in a fixed order. Q2 is generated as a bipyramid
 * rather than transcribed.
 */
inline std::vector<NamedVertices> corpus()
{
    std::vector<NamedVertices> out;
    for (std::size_t n = 1; n <= 4; ++n)
        out.push_back({"P" + std::to_string(n), n, projective_space(n)});
    for (std::size_t n = 2; n <= 4; ++n)
        out.push_back({"cross" + std::to_string(n), n, cross_polytope(n)});
    out.push_back({"hexagon", 2, hexagon()});
    out.push_back({"blown_up_plane", 2, blown_up_plane()});
    out.push_back({"singular_triangle", 2, singular_triangle()});
    out.push_back({"facet_counterexample", 5, facet_counterexample_vertices()});
    out.push_back({"Q1", 7, q1_vertices()});
    out.push_back({"Q2", 8, q2().vertices()});
    out.push_back({"Q3", 8, q3_vertices()});
    return out;
}

/** corpus() as a parsed polytope file. */
inline PolytopeFile corpus_file()
{
    PolytopeFile f;
    for (auto& c : corpus())
        f.entries.push_back({c.name, c.dim, std::move(c.vertices), 0});
    return f;
}

} // namespace reflex::fixtures
