#include <gtest/gtest.h>

#include "reflex/criteria.hpp"
#include "reflex/fixtures.hpp"

using namespace reflex;
namespace fx = reflex::fixtures;

namespace {

DualPair pair_of(const std::vector<IntVector>& q) { return dual(FanoPolytope::from_vertices(q)); }

std::vector<std::pair<std::string, DualPair>> smooth_corpus(std::size_t max_dim)
{
    std::vector<std::pair<std::string, DualPair>> out;
    for (const auto& c : fx::corpus())
        if (c.dim <= max_dim && is_smooth_fano(hull(c.vertices)).smooth)
            out.emplace_back(c.name, pair_of(c.vertices));
    return out;
}

// 1 / (1 + max <w, v>) over every vertex pair of P and Q.
BigRational vertex_pair_lct(const DualPair& dp)
{
    BigInt best = dot(dp.p.vertices()[0], dp.q.vertices()[0]);
    for (const auto& w : dp.p.vertices())
        for (const auto& v : dp.q.vertices())
            best = std::max(best, dot(w, v));
    return BigRational(1) / BigRational(1 + best);
}

} // namespace

TEST(KeTest, Examples)
{
    for (std::size_t n = 1; n <= 4; ++n)
        EXPECT_TRUE(ke_test(pair_of(fx::projective_space(n))).is_ke);
    auto q1 = evaluate(dual(fx::q1()));
    EXPECT_TRUE(q1.is_ke);
    EXPECT_FALSE(q1.is_symmetric);
    auto blown = ke_test(pair_of(fx::blown_up_plane()));
    EXPECT_FALSE(blown.is_ke);
    EXPECT_FALSE(is_zero(blown.barycenter));
}

TEST(Alpha, SymmetricPairsGiveOne)
{
    for (std::size_t n = 1; n <= 4; ++n) {
        EXPECT_EQ(alpha_invariant(pair_of(fx::cross_polytope(n))), 1);
        EXPECT_EQ(alpha_invariant(pair_of(fx::projective_space(n))), 1);
    }
    EXPECT_EQ(alpha_invariant(pair_of(fx::hexagon())), 1);
}

TEST(Alpha, NonSymmetricKaehlerEinsteinExamplesGiveOneHalf)
{
    for (const auto& q : {fx::q1(), fx::q2(), fx::q3()}) {
        auto dp = dual(q);
        auto groups = automorphism_group(dp);
        EXPECT_EQ(alpha_invariant(dp, groups), BigRational(1, 2));
        EXPECT_EQ(lct(dp, groups.p_side), BigRational(1, 2));
        auto slice = fixed_slice(dp, groups.p_side);
        EXPECT_EQ(slice.polytope.dim(), 1u);
        EXPECT_EQ(coefficient_of_asymmetry(slice.polytope), 1);
    }
}

TEST(Alpha, BlownUpPlane)
{
    auto dp = pair_of(fx::blown_up_plane());
    EXPECT_EQ(alpha_invariant(dp), BigRational(1, 2));
    EXPECT_EQ(lct(dp, automorphism_group(dp).p_side), BigRational(1, 2));
}

TEST(Lct, ProjectivePlaneTrivialGroup)
{
    auto dp = pair_of(fx::projective_space(2));
    EXPECT_EQ(lct(dp, trivial_group(2)), BigRational(1, 3));
    EXPECT_EQ(vertex_pair_lct(dp), BigRational(1, 3));
}

TEST(Lct, TrivialGroupMatchesVertexPairOracle)
{
    for (const auto& [name, dp] : smooth_corpus(8))
        EXPECT_EQ(lct(dp, trivial_group(dp.dim())), vertex_pair_lct(dp)) << name;
}

TEST(Lct, SymmetricPairsGiveOne)
{
    for (const auto& [name, dp] : smooth_corpus(5)) {
        auto g = automorphism_group(dp);
        if (is_symmetric(g)) {
            EXPECT_EQ(lct(dp, g.p_side), 1) << name;
        }
    }
}

TEST(Lct, AgreesWithAlphaOnCorpus)
{
    for (const auto& [name, dp] : smooth_corpus(8)) {
        auto g = automorphism_group(dp);
        EXPECT_EQ(alpha_invariant(dp, g), lct(dp, g.p_side)) << name;
    }
}

TEST(Lct, MonotoneInTheSubgroupProperty)
{
    for (const auto& [name, dp] : smooth_corpus(5)) {
        auto g = automorphism_group(dp).p_side;
        const std::size_t n = dp.dim();
        BigRational full = lct(dp, g);
        BigRational none = lct(dp, trivial_group(n));
        EXPECT_LE(none, full) << name;
        // every subgroup generated by one generator sits in between
        for (const auto& a : g.generators) {
            BigRational mid = lct(dp, generated_group({a}, n));
            EXPECT_LE(none, mid) << name;
            EXPECT_LE(mid, full) << name;
        }
    }
}

TEST(Tian, Examples)
{
    for (const auto& [name, dp] : smooth_corpus(5)) {
        auto g = automorphism_group(dp);
        EXPECT_EQ(tian_condition(dp, g.p_side), is_symmetric(g)) << name;
        EXPECT_FALSE(tian_condition(dp, trivial_group(dp.dim()))) << name;
    }
    auto dp = dual(fx::q1());
    EXPECT_FALSE(tian_condition(dp, automorphism_group(dp).p_side));
}

TEST(Tian, EquivalentToLctOneProperty)
{
    for (const auto& [name, dp] : smooth_corpus(5)) {
        auto g = automorphism_group(dp).p_side;
        std::vector<SymmetryGroup> subgroups{g, trivial_group(dp.dim())};
        for (const auto& a : g.generators)
            subgroups.push_back(generated_group({a}, dp.dim()));
        for (const auto& h : subgroups)
            EXPECT_EQ(tian_condition(dp, h), lct(dp, h) == 1) << name;
    }
}

TEST(Criteria, SubgroupPreconditions)
{
    auto dp = pair_of(fx::blown_up_plane());
    IntMatrix swap(2, 2);
    swap(0, 1) = 1;
    swap(1, 0) = -1;   // rotation, not a symmetry of the blown-up plane
    EXPECT_THROW(lct(dp, generated_group({swap}, 2)), PreconditionError);
    EXPECT_THROW(lct(dp, trivial_group(3)), DimensionError);
    EXPECT_THROW(tian_condition(dp, trivial_group(3)), DimensionError);
}

TEST(Criteria, EvaluateIsConsistent)
{
    for (const auto& [name, dp] : smooth_corpus(5)) {
        auto v = evaluate(dp);
        EXPECT_EQ(v.is_symmetric, v.fixed_dim == 0) << name;
        EXPECT_EQ(v.tian_holds, v.is_symmetric) << name;
        EXPECT_EQ(v.alpha, v.lct) << name;
        if (v.is_symmetric) {
            EXPECT_TRUE(v.is_ke) << name;
            EXPECT_EQ(v.alpha, 1) << name;
        }
        EXPECT_GT(v.alpha, 0);
        EXPECT_LE(v.alpha, 1);
    }
}
