/**
 * Kaehler-Einstein and alpha-invariant verdicts for smooth toric Fano
 * varieties, read off the dual pair (Q, P).
 *
 *  - KE iff the barycenter of P is zero.
 *  - symmetric iff W(P) fixes only the origin; symmetric implies KE.
 *  - alpha = 1 when symmetric, else 1 / (1 + ca(P_W, 0)) with P_W the slice
 *    of P by the fixed space of W(P).
 *  - lct(G) = 1 / (1 + max <w, v>) over vertices w of P_G and v of Q.
 *
 * Everything is exact; there is no tolerance anywhere in this file.
 */
#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "reflex/exact.hpp"
#include "reflex/measures.hpp"
#include "reflex/polytope.hpp"
#include "reflex/symmetry.hpp"

namespace reflex {

struct KEVerdict
{
    bool is_ke = false;
    RatVector barycenter;
    bool is_symmetric = false;
    std::size_t fixed_dim = 0;
    BigRational alpha;
    BigRational lct;
    bool tian_holds = false;
};

/** Barycenter part of the verdict only. */
inline KEVerdict ke_test(const DualPair& dp)
{
    KEVerdict v;
    v.barycenter = volume_and_barycenter(dp.p).barycenter;
    v.is_ke = is_zero(v.barycenter);
    return v;
}

namespace detail {

inline std::vector<RatVector> rational_basis(const FixedSpace& fs)
{
    std::vector<RatVector> out;
    for (const auto& b : fs.basis)
        out.push_back(to_rational(b));
    return out;
}

inline void require_subgroup(const DualPair& dp, const SymmetryGroup& g)
{
    if (g.dim != dp.dim())
        throw DimensionError("group dimension does not match the polytope");
    for (const auto& a : g.generators)
        if (!preserves(dp.p, a))
            throw PreconditionError("group element does not preserve P");
}

} // namespace detail

/** P_G = P cap F_G for a subgroup G of W(P) acting on the P side. */
inline RestrictedPolytope fixed_slice(const DualPair& dp, const SymmetryGroup& g)
{
    return restrict_to_subspace(dp.p, detail::rational_basis(fixed_space(g)));
}

/** max <w, v> over vertices w of P_G (ambient coordinates) and v of Q. */
inline BigRational slice_reach(const DualPair& dp, const RestrictedPolytope& slice)
{
    BigRational best = 0;
    bool first = true;
    for (const auto& c : slice.polytope.vertices()) {
        RatVector w = slice.to_ambient(c);
        for (const auto& v : dp.q.vertices()) {
            BigRational x = dot(v, w);
            if (first || x > best) {
                best = x;
                first = false;
            }
        }
    }
    return best;
}

/** Log canonical threshold for a subgroup g of W(P) (P-side matrices). */
inline BigRational lct(const DualPair& dp, const SymmetryGroup& g)
{
    detail::require_subgroup(dp, g);
    return BigRational(1) / (1 + slice_reach(dp, fixed_slice(dp, g)));
}

inline BigRational alpha_invariant(const DualPair& dp, const AutomorphismGroups& groups)
{
    if (is_symmetric(groups))
        return 1;
    auto slice = fixed_slice(dp, groups.p_side);
    return BigRational(1) / (1 + coefficient_of_asymmetry(slice.polytope));
}

inline BigRational alpha_invariant(const DualPair& dp)
{
    return alpha_invariant(dp, automorphism_group(dp));
}

/**
 * The alpha-invariant sufficient condition alpha_G > n/(n+1). For toric
 * Fanos this happens exactly when P_G is the single point 0.
 */
inline bool tian_condition(const DualPair& dp, const SymmetryGroup& g)
{
    detail::require_subgroup(dp, g);
    return fixed_space(g).dim() == 0;
}

inline KEVerdict evaluate(const DualPair& dp, const AutomorphismGroups& groups)
{
    KEVerdict v = ke_test(dp);
    v.fixed_dim = fixed_space(groups.p_side).dim();
    v.is_symmetric = v.fixed_dim == 0;
    v.alpha = alpha_invariant(dp, groups);
    v.lct = lct(dp, groups.p_side);
    v.tian_holds = tian_condition(dp, groups.p_side);
    return v;
}

inline KEVerdict evaluate(const DualPair& dp)
{
    return evaluate(dp, automorphism_group(dp));
}

} // namespace reflex
