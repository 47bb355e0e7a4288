/**
 * Checkers for inequalities and conjectures about reflexive polytopes:
 *
 *  - the Ehrhart-coefficient inequality a_{n-2} <= vol(P^(2)) / 3,
 *  - the facet criterion: for every facet F some x in aff(F) has
 *    <u_G, x> <= 1/2 for all facets G adjacent to F,
 *  - the volume bound vol(P) <= (n+1)^n / n! (and the proven weaker bound),
 *  - the index-degree bound I(X) (-K_X)^n <= (n+1)^(n+1).
 *
 * Each verdict is stored next to the two exact quantities it compares.
 */
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "reflex/exact.hpp"
#include "reflex/lp.hpp"
#include "reflex/measures.hpp"
#include "reflex/polytope.hpp"

namespace reflex {

inline constexpr std::size_t default_ehrhart_max_dim = 5;

/** Raised when an Ehrhart-based check is requested above the dimension cap. */
class DimensionCapError : public std::runtime_error
{
    public:
        explicit DimensionCapError(const std::string& what) : std::runtime_error(what) {}
};

struct Eq1Record
{
    BigRational a_n_minus_2;
    BigRational codim2_volume;         // lattice-normalized
    BigRational third_of_codim2_vol;
    std::size_t skew_ridges = 0;       // ridges whose lattice has Gram determinant != 1
    bool holds = false;
    bool equality = false;

    bool operator==(const Eq1Record&) const = default;
};

struct FacetFeasibility
{
    std::size_t facet;
    IntVector normal;
    bool feasible;
    std::optional<RatVector> witness;

    bool operator==(const FacetFeasibility&) const = default;
};

struct EhrhartBoundRecord
{
    BigRational volume;
    BigRational bound;                 // (n+1)^n / n!
    bool holds = false;
    bool equality = false;
    bool simplex_shape = false;        // n+1 vertices; only meaningful with equality
    BigRational known_bound;           // (n+1)^n (1 - ((n-1)/n)^n)
    bool known_bound_holds = false;
    bool origin_unique_interior = false;

    bool operator==(const EhrhartBoundRecord&) const = default;
};

struct BishopRecord
{
    BigInt index;
    BigRational degree;
    BigRational lhs;
    BigInt bound;
    bool holds = false;
    bool sharp = false;

    bool operator==(const BishopRecord&) const = default;
};

struct ConjectureReport
{
    std::optional<Eq1Record> eq1;      // absent when skipped (n < 2 or above the cap)
    std::vector<FacetFeasibility> conj11;
    bool conj11_hypothesis = false;    // b_P = 0
    EhrhartBoundRecord ehrhart_bound;
    BishopRecord bishop;

    bool operator==(const ConjectureReport&) const = default;
};

inline Eq1Record check_eq1(const DualPair& dp, std::size_t max_dim = default_ehrhart_max_dim)
{
    const std::size_t n = dp.dim();
    if (n < 2)
        throw PreconditionError("check_eq1: needs n >= 2");
    if (n > max_dim)
        throw DimensionCapError("check_eq1: dimension " + std::to_string(n) + " exceeds the Ehrhart cap "
                                + std::to_string(max_dim) + "; raise the cap to run it anyway");
    Eq1Record r;
    r.a_n_minus_2 = ehrhart(dp.p).coefficients[n - 2];
    for (const auto& ridge : faces_codim2(dp.p)) {
        auto verts = dp.p.vertices_of(ridge.vertices);
        r.codim2_volume += relative_volume(verts);
        if (face_gram_determinant(verts) != 1)
            ++r.skew_ridges;
    }
    r.third_of_codim2_vol = r.codim2_volume / 3;
    r.holds = r.a_n_minus_2 <= r.third_of_codim2_vol;
    r.equality = r.a_n_minus_2 == r.third_of_codim2_vol;
    return r;
}

/** Facet indices of P sharing a ridge with each facet. */
inline std::vector<std::vector<std::size_t>> facet_adjacency(const LatticePolytope& p)
{
    std::vector<std::vector<std::size_t>> adj(p.num_facets());
    for (const auto& r : faces_codim2(p)) {
        adj[r.facet_a].push_back(r.facet_b);
        adj[r.facet_b].push_back(r.facet_a);
    }
    for (auto& a : adj)
        std::sort(a.begin(), a.end());
    return adj;
}

/**
 * One LP per facet F of P: <u_F, x> = -1 and <u_G, x> <= 1/2 for every
 * ridge-adjacent facet G.
 */
inline std::vector<FacetFeasibility> check_conj11(const DualPair& dp)
{
    const auto& p = dp.p;
    const std::size_t n = p.dim();
    auto adj = facet_adjacency(p);
    std::vector<FacetFeasibility> out;
    for (std::size_t f = 0; f < p.num_facets(); ++f) {
        std::vector<Constraint> ineq;
        for (auto g : adj[f])
            ineq.push_back({to_rational(p.facets()[g].normal), BigRational(1, 2)});
        std::vector<Constraint> eq{{to_rational(p.facets()[f].normal), BigRational(p.facets()[f].rhs)}};
        auto x = feasible_point(n, ineq, eq);
        out.push_back({f, p.facets()[f].normal, x.has_value(), x});
    }
    return out;
}

inline EhrhartBoundRecord check_ehrhart_bound(const DualPair& dp)
{
    const std::size_t n = dp.dim();
    EhrhartBoundRecord r;
    r.volume = volume_and_barycenter(dp.p).volume;
    BigInt np1n = power(BigInt(n + 1), n);
    r.bound = BigRational(np1n) / BigRational(factorial(n));
    r.holds = r.volume <= r.bound;
    r.equality = r.volume == r.bound;
    r.simplex_shape = dp.p.num_vertices() == n + 1;
    BigRational ratio = BigRational(BigInt(n - 1), BigInt(n));
    BigRational ratio_n = 1;
    for (std::size_t i = 0; i < n; ++i)
        ratio_n *= ratio;
    r.known_bound = BigRational(np1n) * (1 - ratio_n);
    r.known_bound_holds = r.volume <= r.known_bound;
    r.origin_unique_interior = count_interior_lattice_points(dp.p) == 1;
    return r;
}

inline BishopRecord check_bishop(const DualPair& dp)
{
    const std::size_t n = dp.dim();
    BishopRecord r;
    r.index = fano_index(dp.p);
    r.degree = volume_and_barycenter(dp.p).volume * BigRational(factorial(n));
    r.lhs = BigRational(r.index) * r.degree;
    r.bound = power(BigInt(n + 1), n + 1);
    r.holds = r.lhs <= BigRational(r.bound);
    r.sharp = r.lhs == BigRational(r.bound);
    return r;
}

inline ConjectureReport check_all(const DualPair& dp, std::size_t ehrhart_max_dim = default_ehrhart_max_dim)
{
    ConjectureReport r;
    const std::size_t n = dp.dim();
    if (n >= 2 && n <= ehrhart_max_dim)
        r.eq1 = check_eq1(dp, ehrhart_max_dim);
    r.conj11_hypothesis = is_zero(volume_and_barycenter(dp.p).barycenter);
    r.conj11 = check_conj11(dp);
    r.ehrhart_bound = check_ehrhart_bound(dp);
    r.bishop = check_bishop(dp);
    return r;
}

} // namespace reflex
