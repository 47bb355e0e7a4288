/**
 * Polytopes with paired vertex and facet descriptions.
 *
 * A facet is stored as an inward inequality <normal, x> >= rhs with a
 * primitive integer normal. For polytopes containing the origin in the
 * interior every rhs is negative, and a lattice polytope is reflexive
 * exactly when every rhs equals -1.
 *
 * Vertices are kept lexicographically sorted and facets sorted by normal,
 * so two polytopes are equal iff their canonical forms agree.
 */
#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "reflex/exact.hpp"

namespace reflex {

using VertexSet = boost::dynamic_bitset<>;

template <typename T>
struct Facet
{
    IntVector normal;
    T rhs;

    bool operator==(const Facet& o) const { return normal == o.normal && rhs == o.rhs; }
};

/** Thrown when a subspace restriction would not contain the origin in its interior. */
class DegenerateRestrictionError : public PreconditionError
{
    public:
        explicit DegenerateRestrictionError(const std::string& what) : PreconditionError(what) {}
};

template <typename T>
class Polytope
{
    public:
        using Point = std::vector<T>;

        Polytope() = default;

        /**
         * Builds from both descriptions, sorting them into canonical order
         * and computing incidence. Throws if some vertex violates a facet.
         */
        static Polytope from_hv(std::size_t dim, std::vector<Point> vertices, std::vector<Facet<T>> facets)
        {
            for (const auto& v : vertices)
                if (v.size() != dim)
                    throw DimensionError("polytope vertex has wrong length");
            for (const auto& f : facets)
                if (f.normal.size() != dim)
                    throw DimensionError("polytope facet normal has wrong length");
            std::sort(vertices.begin(), vertices.end());
            vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
            std::sort(facets.begin(), facets.end(), [](const Facet<T>& a, const Facet<T>& b) {
                return a.normal != b.normal ? a.normal < b.normal : a.rhs < b.rhs;
            });
            Polytope p;
            p.dim_ = dim;
            p.vertices_ = std::move(vertices);
            p.facets_ = std::move(facets);
            p.facet_vertices_.assign(p.facets_.size(), VertexSet(p.vertices_.size()));
            p.vertex_facets_.assign(p.vertices_.size(), VertexSet(p.facets_.size()));
            for (std::size_t f = 0; f < p.facets_.size(); ++f)
                for (std::size_t v = 0; v < p.vertices_.size(); ++v) {
                    T val = p.evaluate(f, p.vertices_[v]);
                    if (val < 0)
                        throw PreconditionError("vertex " + to_string(p.vertices_[v]) + " violates facet "
                                                + to_string(p.facets_[f].normal));
                    if (val == 0) {
                        p.facet_vertices_[f].set(v);
                        p.vertex_facets_[v].set(f);
                    }
                }
            return p;
        }

        std::size_t dim() const { return dim_; }
        const std::vector<Point>& vertices() const { return vertices_; }
        const std::vector<Facet<T>>& facets() const { return facets_; }
        std::size_t num_vertices() const { return vertices_.size(); }
        std::size_t num_facets() const { return facets_.size(); }

        const VertexSet& facet_vertices(std::size_t f) const { return facet_vertices_[f]; }
        const VertexSet& vertex_facets(std::size_t v) const { return vertex_facets_[v]; }
        bool incident(std::size_t f, std::size_t v) const { return facet_vertices_[f].test(v); }

        /** Slack <normal, x> - rhs of facet f at x; nonnegative inside. */
        template <typename S>
        T evaluate(std::size_t f, const std::vector<S>& x) const
        {
            T s = -facets_[f].rhs;
            for (std::size_t i = 0; i < dim_; ++i)
                s += T(facets_[f].normal[i]) * T(x[i]);
            return s;
        }

        bool contains_origin_in_interior() const
        {
            if (dim_ == 0)
                return true;
            return std::all_of(facets_.begin(), facets_.end(), [](const Facet<T>& f) { return f.rhs < 0; });
        }

        /** Lattice vertices and every facet at lattice distance one from the origin. */
        bool is_reflexive() const
        {
            for (const auto& v : vertices_)
                for (const auto& x : v)
                    if (!is_integral(x))
                        return false;
            return std::all_of(facets_.begin(), facets_.end(), [](const Facet<T>& f) { return f.rhs == -1; });
        }

        std::optional<std::size_t> find_vertex(const Point& x) const
        {
            auto it = std::lower_bound(vertices_.begin(), vertices_.end(), x);
            if (it == vertices_.end() || *it != x)
                return std::nullopt;
            return static_cast<std::size_t>(it - vertices_.begin());
        }

        std::vector<Point> vertices_of(const VertexSet& s) const
        {
            std::vector<Point> out;
            for (auto i = s.find_first(); i != VertexSet::npos; i = s.find_next(i))
                out.push_back(vertices_[i]);
            return out;
        }

        bool operator==(const Polytope& o) const { return dim_ == o.dim_ && vertices_ == o.vertices_; }

    private:
        std::size_t dim_ = 0;
        std::vector<Point> vertices_;
        std::vector<Facet<T>> facets_;
        std::vector<VertexSet> facet_vertices_;
        std::vector<VertexSet> vertex_facets_;
};

using LatticePolytope = Polytope<BigInt>;
using RationalPolytope = Polytope<BigRational>;

inline RationalPolytope to_rational(const LatticePolytope& p)
{
    std::vector<RatVector> verts;
    for (const auto& v : p.vertices())
        verts.push_back(to_rational(v));
    std::vector<Facet<BigRational>> facets;
    for (const auto& f : p.facets())
        facets.push_back({f.normal, BigRational(f.rhs)});
    return RationalPolytope::from_hv(p.dim(), std::move(verts), std::move(facets));
}

// ---------------------------------------------------------------------------
// Convex hull (double description)
// ---------------------------------------------------------------------------

namespace detail {

/** Positive integer multiple of (1, p). */
template <typename T>
IntVector homogenize(const std::vector<T>& p)
{
    RatVector h(p.size() + 1);
    h[0] = 1;
    for (std::size_t i = 0; i < p.size(); ++i)
        h[i + 1] = BigRational(p[i]);
    return clear_denominators(h);
}

template <typename T>
T rhs_from(const IntVector& normal, const std::vector<T>& on_facet)
{
    T s = 0;
    for (std::size_t i = 0; i < normal.size(); ++i)
        s += T(normal[i]) * on_facet[i];
    return s;
}

} // namespace detail

/**
 * Convex hull of finitely many points that affinely span the ambient space.
 * Redundant points are dropped; facets get primitive inward normals.
 */
template <typename T>
Polytope<T> hull(std::vector<std::vector<T>> points)
{
    if (points.empty())
        throw DimensionError("hull: no points");
    const std::size_t n = points.front().size();
    for (const auto& p : points)
        if (p.size() != n)
            throw DimensionError("hull: points of different lengths");
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    if (n == 0)
        return Polytope<T>::from_hv(0, points, {});

    const std::size_t m = points.size();
    const std::size_t d = n + 1;
    std::vector<IntVector> hom(m);
    for (std::size_t i = 0; i < m; ++i)
        hom[i] = detail::homogenize(points[i]);

    // initial simplex: greedy affinely independent selection
    std::vector<std::size_t> init;
    {
        std::vector<IntVector> chosen;
        for (std::size_t i = 0; i < m && init.size() < d; ++i) {
            chosen.push_back(hom[i]);
            if (rank_of_rows(chosen, d) == chosen.size())
                init.push_back(i);
            else
                chosen.pop_back();
        }
    }
    if (init.size() < d)
        throw DimensionError("hull: points span an affine space of dimension " + std::to_string(init.size() - 1)
                             + " < " + std::to_string(n));

    struct Ray
    {
        IntVector r;
        VertexSet zeros;
    };
    std::vector<Ray> rays;
    {
        std::vector<IntVector> rows;
        for (auto i : init)
            rows.push_back(hom[i]);
        RatMatrix minv = inverse(to_rational(IntMatrix::from_rows(rows)));
        for (std::size_t j = 0; j < d; ++j) {
            Ray ray{clear_denominators(minv.column(j)), VertexSet(m)};
            for (std::size_t k = 0; k < d; ++k)
                if (k != j)
                    ray.zeros.set(init[k]);
            rays.push_back(std::move(ray));
        }
    }

    std::vector<bool> done(m, false);
    for (auto i : init)
        done[i] = true;
    for (std::size_t p = 0; p < m; ++p) {
        if (done[p])
            continue;
        done[p] = true;
        std::vector<BigInt> val(rays.size());
        std::vector<std::size_t> pos, neg;
        std::vector<Ray> next;
        for (std::size_t r = 0; r < rays.size(); ++r) {
            val[r] = dot(rays[r].r, hom[p]);
            if (val[r] > 0)
                pos.push_back(r);
            else if (val[r] < 0)
                neg.push_back(r);
        }
        for (std::size_t r = 0; r < rays.size(); ++r)
            if (val[r] == 0)
                rays[r].zeros.set(p);
        if (neg.empty())
            continue;
        for (auto a : pos)
            for (auto b : neg) {
                VertexSet common = rays[a].zeros & rays[b].zeros;
                if (common.count() + 2 < d)
                    continue;
                bool adjacent = true;
                for (std::size_t c = 0; c < rays.size() && adjacent; ++c)
                    if (c != a && c != b && common.is_subset_of(rays[c].zeros))
                        adjacent = false;
                if (!adjacent)
                    continue;
                IntVector combo(d);
                for (std::size_t k = 0; k < d; ++k)
                    combo[k] = val[a] * rays[b].r[k] - val[b] * rays[a].r[k];
                common.set(p);
                next.push_back({primitive(combo), common});
            }
        for (std::size_t r = 0; r < rays.size(); ++r)
            if (val[r] >= 0)
                next.push_back(std::move(rays[r]));
        rays = std::move(next);
    }

    // vertices: points whose tight normals have full rank
    std::vector<std::vector<T>> vertices;
    for (std::size_t p = 0; p < m; ++p) {
        std::vector<IntVector> tight;
        for (const auto& ray : rays)
            if (ray.zeros.test(p))
                tight.emplace_back(ray.r.begin() + 1, ray.r.end());
        if (tight.size() >= n && rank_of_rows(tight, n) == n)
            vertices.push_back(points[p]);
    }
    std::vector<Facet<T>> facets;
    for (const auto& ray : rays) {
        IntVector normal = primitive(IntVector(ray.r.begin() + 1, ray.r.end()));
        auto on = ray.zeros.find_first();
        facets.push_back({normal, detail::rhs_from(normal, points[on])});
    }
    return Polytope<T>::from_hv(n, std::move(vertices), std::move(facets));
}

// ---------------------------------------------------------------------------
// Smooth Fano polytopes and duality
// ---------------------------------------------------------------------------

struct SmoothnessVerdict
{
    bool smooth = false;
    std::string certificate;              // empty when smooth
    std::optional<std::size_t> facet;     // first violating facet, if the failure is facet-local
};

/**
 * Origin interior, primitive vertices, and every facet spanned by exactly n
 * vertices that form a lattice basis.
 */
inline SmoothnessVerdict is_smooth_fano(const LatticePolytope& q)
{
    SmoothnessVerdict out;
    if (!q.contains_origin_in_interior()) {
        out.certificate = "origin is not in the interior";
        return out;
    }
    for (const auto& v : q.vertices())
        if (content(v) != 1) {
            out.certificate = "vertex " + to_string(v) + " is not primitive";
            return out;
        }
    const std::size_t n = q.dim();
    for (std::size_t f = 0; f < q.num_facets(); ++f) {
        const auto& fv = q.facet_vertices(f);
        if (fv.count() != n) {
            out.certificate = "facet " + std::to_string(f) + " with normal " + to_string(q.facets()[f].normal)
                              + " has " + std::to_string(fv.count()) + " vertices, expected " + std::to_string(n);
            out.facet = f;
            return out;
        }
        BigInt dt = det(IntMatrix::from_rows(q.vertices_of(fv), n));
        if (abs_value(dt) != 1) {
            out.certificate = "facet " + std::to_string(f) + " with normal " + to_string(q.facets()[f].normal)
                              + " has vertex determinant " + dt.str();
            out.facet = f;
            return out;
        }
    }
    out.smooth = true;
    return out;
}

/** A lattice polytope certified smooth Fano at construction. */
class FanoPolytope
{
    public:
        static FanoPolytope make(LatticePolytope q)
        {
            auto verdict = is_smooth_fano(q);
            if (!verdict.smooth)
                throw PreconditionError("not a smooth Fano polytope: " + verdict.certificate);
            FanoPolytope out;
            out.q_ = std::move(q);
            return out;
        }

        static FanoPolytope from_vertices(const std::vector<IntVector>& points)
        {
            return make(hull(points));
        }

        const LatticePolytope& polytope() const { return q_; }
        std::size_t dim() const { return q_.dim(); }
        const std::vector<IntVector>& vertices() const { return q_.vertices(); }

        bool operator==(const FanoPolytope& o) const { return q_ == o.q_; }

    private:
        LatticePolytope q_;
};

/** q and its dual p = {y : <y, x> >= -1 for all x in q}. Facet i of p has normal vertex i of q. */
struct DualPair
{
    FanoPolytope q;
    LatticePolytope p;

    std::size_t dim() const { return q.dim(); }
};

/**
 * Dualizes a smooth Fano polytope. Each dual vertex solves the facet system
 * <y, v> = -1 over the facet's n vertices.
 */
inline DualPair dual(const FanoPolytope& fq)
{
    const auto& q = fq.polytope();
    if (!q.contains_origin_in_interior())
        throw PreconditionError("dual: origin is not in the interior");
    const std::size_t n = q.dim();
    std::vector<IntVector> pverts;
    RatVector minus_one(n, BigRational(-1));
    for (std::size_t f = 0; f < q.num_facets(); ++f) {
        auto fv = q.vertices_of(q.facet_vertices(f));
        RatVector y = solve_exact(to_rational(IntMatrix::from_rows(fv, n)), minus_one);
        pverts.push_back(to_integer(y));
    }
    std::vector<Facet<BigInt>> pfacets;
    for (const auto& v : q.vertices())
        pfacets.push_back({v, BigInt(-1)});
    return DualPair{fq, LatticePolytope::from_hv(n, std::move(pverts), std::move(pfacets))};
}

/** Polar body {y : <y, x> >= -1 on p}; requires the origin in the interior. */
template <typename T>
RationalPolytope polar(const Polytope<T>& p)
{
    if (!p.contains_origin_in_interior())
        throw PreconditionError("polar: origin is not in the interior");
    const std::size_t n = p.dim();
    std::vector<RatVector> verts;
    for (const auto& f : p.facets()) {
        RatVector y(n);
        BigRational h = -BigRational(f.rhs);
        for (std::size_t i = 0; i < n; ++i)
            y[i] = BigRational(f.normal[i]) / h;
        verts.push_back(std::move(y));
    }
    std::vector<Facet<BigRational>> facets;
    for (const auto& v : p.vertices()) {
        RatVector rv = to_rational(v);
        IntVector normal = clear_denominators(rv);
        // <normal, y> >= -c where normal = c' * v with c' > 0
        BigRational ratio = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (rv[i] != 0) {
                ratio = BigRational(normal[i]) / rv[i];
                break;
            }
        facets.push_back({normal, -ratio});
    }
    return RationalPolytope::from_hv(n, std::move(verts), std::move(facets));
}

/** Dual of a reflexive lattice polytope; throws if the dual is not a lattice polytope. */
template <typename T>
LatticePolytope reflexive_dual(const Polytope<T>& p)
{
    RationalPolytope d = polar(p);
    std::vector<IntVector> verts;
    for (const auto& v : d.vertices()) {
        if (!std::all_of(v.begin(), v.end(), [](const BigRational& x) { return is_integral(x); }))
            throw PreconditionError("reflexive_dual: dual vertex " + to_string(v) + " is not a lattice point");
        verts.push_back(to_integer(v));
    }
    std::vector<Facet<BigInt>> facets;
    for (const auto& f : d.facets()) {
        if (!is_integral(f.rhs))
            throw PreconditionError("reflexive_dual: non-integral facet offset");
        facets.push_back({f.normal, numerator_of(f.rhs)});
    }
    return LatticePolytope::from_hv(p.dim(), std::move(verts), std::move(facets));
}

// ---------------------------------------------------------------------------
// Face structure
// ---------------------------------------------------------------------------

/**
 * Facets of the face with vertex set `face`: the inclusion-maximal nonempty
 * proper sets face & Z_j over all facets j.
 */
template <typename T>
std::vector<VertexSet> maximal_subfaces(const Polytope<T>& p, const VertexSet& face)
{
    std::vector<VertexSet> cand;
    for (std::size_t f = 0; f < p.num_facets(); ++f) {
        VertexSet s = face & p.facet_vertices(f);
        if (s.none() || s == face)
            continue;
        cand.push_back(std::move(s));
    }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    std::vector<VertexSet> out;
    for (std::size_t i = 0; i < cand.size(); ++i) {
        bool maximal = true;
        for (std::size_t j = 0; j < cand.size() && maximal; ++j)
            if (i != j && cand[i].is_proper_subset_of(cand[j]))
                maximal = false;
        if (maximal)
            out.push_back(cand[i]);
    }
    return out;
}

struct Ridge
{
    std::size_t facet_a;
    std::size_t facet_b;
    VertexSet vertices;
};

/** All codimension-2 faces, each with the two facets meeting in it (facet_a < facet_b). */
template <typename T>
std::vector<Ridge> faces_codim2(const Polytope<T>& p)
{
    std::vector<Ridge> out;
    for (std::size_t a = 0; a < p.num_facets(); ++a) {
        auto subs = maximal_subfaces(p, p.facet_vertices(a));
        for (std::size_t b = a + 1; b < p.num_facets(); ++b) {
            VertexSet s = p.facet_vertices(a) & p.facet_vertices(b);
            if (std::find(subs.begin(), subs.end(), s) != subs.end())
                out.push_back({a, b, s});
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Constructions
// ---------------------------------------------------------------------------

namespace detail {

template <typename T>
std::vector<T> embed(const std::vector<T>& v, std::size_t offset, std::size_t total)
{
    std::vector<T> out(total, T(0));
    std::copy(v.begin(), v.end(), out.begin() + offset);
    return out;
}

} // namespace detail

/** conv(q1 x {0} u {0} x q2); the fan of the product of the two varieties. */
inline FanoPolytope free_sum(const FanoPolytope& q1, const FanoPolytope& q2)
{
    const std::size_t n1 = q1.dim(), n2 = q2.dim();
    std::vector<IntVector> pts;
    for (const auto& v : q1.vertices())
        pts.push_back(detail::embed(v, 0, n1 + n2));
    for (const auto& v : q2.vertices())
        pts.push_back(detail::embed(v, n1, n1 + n2));
    return FanoPolytope::make(hull(pts));
}

/** The lattice segment [-1, 1], the Fano polytope of P^1. */
inline FanoPolytope segment()
{
    return FanoPolytope::from_vertices({{BigInt(-1)}, {BigInt(1)}});
}

/** Cartesian product in block coordinates. */
template <typename T>
Polytope<T> direct_product(const Polytope<T>& p1, const Polytope<T>& p2)
{
    const std::size_t n1 = p1.dim(), n2 = p2.dim(), n = n1 + n2;
    std::vector<std::vector<T>> verts;
    for (const auto& a : p1.vertices())
        for (const auto& b : p2.vertices()) {
            std::vector<T> v(a);
            v.insert(v.end(), b.begin(), b.end());
            verts.push_back(std::move(v));
        }
    std::vector<Facet<T>> facets;
    for (const auto& f : p1.facets())
        facets.push_back({detail::embed(f.normal, 0, n), f.rhs});
    for (const auto& f : p2.facets())
        facets.push_back({detail::embed(f.normal, n1, n), f.rhs});
    return Polytope<T>::from_hv(n, std::move(verts), std::move(facets));
}

/** Image under a unimodular map: vertices v -> A v, normals u -> A^{-T} u. */
template <typename T>
Polytope<T> apply_unimodular(const Polytope<T>& p, const IntMatrix& a)
{
    IntMatrix inv_t = inverse_unimodular(a).transpose();
    std::vector<std::vector<T>> verts;
    for (const auto& v : p.vertices()) {
        std::vector<T> w(p.dim(), T(0));
        for (std::size_t i = 0; i < p.dim(); ++i)
            for (std::size_t j = 0; j < p.dim(); ++j)
                w[i] += T(a(i, j)) * v[j];
        verts.push_back(std::move(w));
    }
    std::vector<Facet<T>> facets;
    for (const auto& f : p.facets())
        facets.push_back({inv_t * f.normal, f.rhs});
    return Polytope<T>::from_hv(p.dim(), std::move(verts), std::move(facets));
}

/** Transports a dual pair: q by A, p by the inverse transpose. */
inline DualPair apply_unimodular(const DualPair& dp, const IntMatrix& a)
{
    IntMatrix inv_t = inverse_unimodular(a).transpose();
    return DualPair{FanoPolytope::make(apply_unimodular(dp.q.polytope(), a)), apply_unimodular(dp.p, inv_t)};
}

// ---------------------------------------------------------------------------
// Restriction to a linear subspace
// ---------------------------------------------------------------------------

/** p intersected with span(basis), in coordinates with respect to basis. */
struct RestrictedPolytope
{
    RationalPolytope polytope;
    RatMatrix embedding;   // ambient x = embedding * c

    RatVector to_ambient(const RatVector& c) const { return embedding * c; }
};

template <typename T>
RestrictedPolytope restrict_to_subspace(const Polytope<T>& p, const std::vector<RatVector>& basis)
{
    const std::size_t n = p.dim(), k = basis.size();
    for (const auto& b : basis)
        if (b.size() != n)
            throw DimensionError("restrict_to_subspace: basis vector has wrong length");
    RestrictedPolytope out;
    out.embedding = RatMatrix(n, k);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < n; ++i)
            out.embedding(i, j) = basis[j][i];
    if (rank(out.embedding) != k)
        throw PreconditionError("restrict_to_subspace: basis is linearly dependent");
    if (!p.contains_origin_in_interior())
        throw DegenerateRestrictionError("restrict_to_subspace: origin is not an interior point of the polytope");
    if (k == 0) {
        out.polytope = RationalPolytope::from_hv(0, {RatVector{}}, {});
        return out;
    }
    // The restriction is {c : <B^T u, c> >= rhs}; its polar is the hull of B^T u / (-rhs).
    RatMatrix bt = out.embedding.transpose();
    std::vector<RatVector> polar_points;
    for (const auto& f : p.facets()) {
        RatVector a = bt * to_rational(f.normal);
        if (is_zero(a))
            continue;
        BigRational h = -BigRational(f.rhs);
        for (auto& x : a)
            x /= h;
        polar_points.push_back(std::move(a));
    }
    out.polytope = polar(hull(polar_points));
    return out;
}

} // namespace reflex
