#include <random>

#include <gtest/gtest.h>

#include "reflex/fixtures.hpp"
#include "reflex/symmetry.hpp"

using namespace reflex;
namespace fx = reflex::fixtures;

namespace {

DualPair pair_of(const std::vector<IntVector>& q) { return dual(FanoPolytope::from_vertices(q)); }

std::vector<DualPair> smooth_corpus(std::size_t max_dim)
{
    std::vector<DualPair> out;
    for (const auto& c : fx::corpus())
        if (c.dim <= max_dim && is_smooth_fano(hull(c.vertices)).smooth)
            out.push_back(pair_of(c.vertices));
    return out;
}

bool parallel(const IntVector& a, const IntVector& b)
{
    return rank_of_rows(std::vector<IntVector>{a, b}, a.size()) == 1;
}

// All integer matrices permuting the vertices, by sending a fixed vertex basis to every tuple of vertices.
std::vector<IntMatrix> brute_force_automorphisms(const LatticePolytope& p)
{
    const std::size_t n = p.dim();
    std::vector<IntVector> basis;
    for (const auto& v : p.vertices()) {
        auto trial = basis;
        trial.push_back(v);
        if (rank_of_rows(trial, n) == trial.size())
            basis = trial;
    }
    RatMatrix binv = inverse(to_rational(IntMatrix::from_columns(basis)));
    std::vector<IntMatrix> out;
    std::vector<std::size_t> pick(n, 0);
    while (true) {
        std::vector<IntVector> images;
        for (auto i : pick)
            images.push_back(p.vertices()[i]);
        RatMatrix a = to_rational(IntMatrix::from_columns(images)) * binv;
        bool integral = std::all_of(a.data().begin(), a.data().end(), [](const BigRational& x) { return is_integral(x); });
        if (integral && preserves(p, to_integer(a)))
            out.push_back(to_integer(a));
        std::size_t k = 0;
        while (k < n && ++pick[k] == p.num_vertices())
            pick[k++] = 0;
        if (k == n)
            break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t factorial_of(std::size_t n) { return n <= 1 ? 1 : n * factorial_of(n - 1); }

} // namespace

TEST(Automorphisms, SmallOrders)
{
    EXPECT_EQ(automorphism_group(pair_of(fx::cross_polytope(2))).q_side.order(), 8u);
    EXPECT_EQ(automorphism_group(pair_of(fx::projective_space(2))).q_side.order(), 6u);
    EXPECT_EQ(automorphism_group(pair_of(fx::hexagon())).q_side.order(), 12u);
    EXPECT_EQ(automorphism_group(pair_of(fx::blown_up_plane())).q_side.order(), 2u);
    for (std::size_t n = 1; n <= 4; ++n) {
        EXPECT_EQ(automorphism_group(pair_of(fx::projective_space(n))).q_side.order(), factorial_of(n + 1));
        EXPECT_EQ(automorphism_group(pair_of(fx::cross_polytope(n))).q_side.order(),
                  (std::size_t(1) << n) * factorial_of(n));
    }
}

TEST(Automorphisms, Q1FixedSpaceIsTheVertexSumLine)
{
    auto dp = dual(fx::q1());
    auto g = automorphism_group(dp);
    auto v = vertex_sum(dp.q.polytope());
    EXPECT_FALSE(is_zero(v));
    auto fq = fixed_space(g.q_side);
    ASSERT_EQ(fq.dim(), 1u);
    EXPECT_TRUE(parallel(fq.basis[0], v));
    // the M-side line is a different one; only its dimension is pinned
    auto fp = fixed_space(g.p_side);
    ASSERT_EQ(fp.dim(), 1u);
    EXPECT_TRUE(is_zero(vertex_sum(dp.p)));
    EXPECT_FALSE(is_symmetric(g));
}

TEST(Automorphisms, StackedOverAllElementsGivesTheSameKernel)
{
    auto dp = dual(fx::q1());
    auto g = automorphism_group(dp).q_side;
    const std::size_t n = g.dim;
    IntMatrix stacked(g.order() * n, n);
    for (std::size_t k = 0; k < g.order(); ++k) {
        IntMatrix d = g.elements[k] - IntMatrix::identity(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                stacked(k * n + i, j) = d(i, j);
    }
    auto k = kernel_basis(stacked);
    ASSERT_EQ(k.size(), 1u);
    EXPECT_TRUE(parallel(k[0], vertex_sum(dp.q.polytope())));
    EXPECT_EQ(k, fixed_space(g).basis);
}

TEST(FixedSpace, Examples)
{
    EXPECT_EQ(fixed_space(automorphism_group(pair_of(fx::cross_polytope(2))).p_side).dim(), 0u);
    for (std::size_t n = 1; n <= 5; ++n) {
        auto fs = fixed_space(trivial_group(n));
        EXPECT_EQ(fs.dim(), n);
    }
    auto fs = fixed_space(automorphism_group(pair_of(fx::blown_up_plane())).p_side);
    EXPECT_EQ(fs.dim(), 1u);
}

TEST(Symmetric, Examples)
{
    for (std::size_t n = 1; n <= 4; ++n) {
        EXPECT_TRUE(is_symmetric(pair_of(fx::cross_polytope(n))));
        EXPECT_TRUE(is_symmetric(pair_of(fx::projective_space(n))));
    }
    EXPECT_TRUE(is_symmetric(pair_of(fx::hexagon())));
    EXPECT_FALSE(is_symmetric(pair_of(fx::blown_up_plane())));
    EXPECT_FALSE(is_symmetric(dual(fx::q1())));
}

TEST(VertexSum, Examples)
{
    EXPECT_TRUE(is_zero(vertex_sum(hull(fx::cross_polytope(3)))));
    EXPECT_TRUE(is_zero(vertex_sum(hull(fx::projective_space(2)))));
    EXPECT_EQ(vertex_sum(hull(fx::blown_up_plane())), (IntVector{1, 1}));
    EXPECT_FALSE(is_zero(vertex_sum(hull(fx::q1_vertices()))));
}

TEST(Automorphisms, PrunedSearchMatchesExhaustiveOracle)
{
    for (const auto& dp : smooth_corpus(4)) {
        auto pruned = lattice_automorphisms(dp.q.polytope());
        auto full = lattice_automorphisms(dp.q.polytope(), SearchOptions{false});
        EXPECT_EQ(pruned.elements, full.elements);
    }
    auto dp = pair_of(fx::facet_counterexample_vertices());
    EXPECT_EQ(lattice_automorphisms(dp.q.polytope()).elements,
              lattice_automorphisms(dp.q.polytope(), SearchOptions{false}).elements);
}

TEST(Automorphisms, GroupAxiomsProperty)
{
    for (const auto& dp : smooth_corpus(5)) {
        auto g = automorphism_group(dp);
        const auto& q = g.q_side;
        const std::size_t n = q.dim;
        EXPECT_TRUE(q.contains(IntMatrix::identity(n)));
        for (const auto& a : q.elements) {
            EXPECT_TRUE(preserves(dp.q.polytope(), a));
            EXPECT_EQ(abs_value(det(a)), 1);
            EXPECT_TRUE(q.contains(inverse_unimodular(a)));
        }
        if (q.order() <= 400) {
            for (const auto& a : q.elements)
                for (const auto& b : q.elements)
                    ASSERT_TRUE(q.contains(a * b));
        }
        EXPECT_EQ(generated_group(q.generators, n).elements, q.elements);
        for (const auto& a : g.p_side.elements)
            EXPECT_TRUE(preserves(dp.p, a));
    }
}

TEST(Automorphisms, TransportIsInverseTranspose)
{
    for (const auto& dp : smooth_corpus(4)) {
        auto g = automorphism_group(dp);
        ASSERT_EQ(g.p_side.order(), g.q_side.order());
        for (const auto& a : g.q_side.elements)
            EXPECT_TRUE(g.p_side.contains(inverse_unimodular(a).transpose()));
        if (dp.dim() <= 3) {
            EXPECT_EQ(brute_force_automorphisms(dp.q.polytope()), g.q_side.elements);
            EXPECT_EQ(brute_force_automorphisms(dp.p), g.p_side.elements);
        }
    }
}

TEST(Automorphisms, DualFixedSpacesHaveEqualDimension)
{
    for (const auto& dp : smooth_corpus(8)) {
        auto g = automorphism_group(dp);
        EXPECT_EQ(g.q_side.order(), g.p_side.order());
        EXPECT_EQ(fixed_space(g.q_side).dim(), fixed_space(g.p_side).dim());
    }
}

TEST(Automorphisms, ConjugationInvarianceProperty)
{
    std::mt19937 rng(41);
    std::uniform_int_distribution<int> d(-1, 1);
    for (const auto& dp : smooth_corpus(5)) {
        const std::size_t n = dp.dim();
        IntMatrix a = IntMatrix::identity(n);
        for (std::size_t i = 0; i + 1 < n; ++i)
            a(i, i + 1) = d(rng);
        auto moved = apply_unimodular(dp, a);
        auto g0 = automorphism_group(dp), g1 = automorphism_group(moved);
        EXPECT_EQ(g0.q_side.order(), g1.q_side.order());
        EXPECT_EQ(fixed_space(g0.p_side).dim(), fixed_space(g1.p_side).dim());
        IntMatrix ainv = inverse_unimodular(a);
        for (const auto& x : g0.q_side.generators)
            EXPECT_TRUE(g1.q_side.contains(a * x * ainv));
    }
}

TEST(Groups, Generated)
{
    IntMatrix r(2, 2);   // rotation by 90 degrees
    r(0, 1) = -1;
    r(1, 0) = 1;
    auto g = generated_group({r}, 2);
    EXPECT_EQ(g.order(), 4u);
    EXPECT_EQ(fixed_space(g).dim(), 0u);
    EXPECT_EQ(trivial_group(3).order(), 1u);
    EXPECT_FALSE(preserves(hull(fx::cross_polytope(2)), IntMatrix::identity(3)));
}
