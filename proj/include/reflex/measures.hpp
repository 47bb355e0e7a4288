/**
 * Exact volumes, barycenters, lattice point counts and Ehrhart polynomials.
 *
 * Volumes are Euclidean (unit cube = 1). Relative volumes of faces are
 * measured in the face's own affine lattice, so a primitive lattice segment
 * has length 1 and a unimodular d-simplex has volume 1/d!.
 */
#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "reflex/exact.hpp"
#include "reflex/lp.hpp"
#include "reflex/polytope.hpp"

namespace reflex {

inline BigInt factorial(std::size_t n)
{
    BigInt f = 1;
    for (std::size_t i = 2; i <= n; ++i)
        f *= i;
    return f;
}

inline BigInt power(const BigInt& b, std::size_t e)
{
    BigInt r = 1;
    for (std::size_t i = 0; i < e; ++i)
        r *= b;
    return r;
}

// ---------------------------------------------------------------------------
// Triangulation, volume, barycenter
// ---------------------------------------------------------------------------

/**
 * Pulling triangulation of a face, memoized on vertex sets. Each simplex is
 * a list of vertex indices into p.
 */
template <typename T>
class PullingTriangulator
{
    public:
        explicit PullingTriangulator(const Polytope<T>& p) : p_(p) {}

        const std::vector<std::vector<std::size_t>>& triangulate(const VertexSet& face)
        {
            auto it = memo_.find(face);
            if (it != memo_.end())
                return it->second;
            std::vector<std::vector<std::size_t>> out;
            const std::size_t apex = face.find_first();
            if (face.count() == 1) {
                out.push_back({apex});
            } else {
                for (const auto& sub : maximal_subfaces(p_, face)) {
                    if (sub.test(apex))
                        continue;
                    for (const auto& s : triangulate(sub)) {
                        std::vector<std::size_t> simplex{apex};
                        simplex.insert(simplex.end(), s.begin(), s.end());
                        out.push_back(std::move(simplex));
                    }
                }
            }
            return memo_.emplace(face, std::move(out)).first->second;
        }

    private:
        const Polytope<T>& p_;
        std::map<VertexSet, std::vector<std::vector<std::size_t>>> memo_;
};

template <typename T>
struct VolumeBarycenter
{
    BigRational volume;
    RatVector barycenter;
};

/**
 * Cones the origin over a pulling triangulation of every facet when the
 * origin is interior; otherwise pulls the first vertex of p.
 */
template <typename T>
VolumeBarycenter<T> volume_and_barycenter(const Polytope<T>& p)
{
    const std::size_t n = p.dim();
    VolumeBarycenter<T> out;
    if (n == 0) {
        out.volume = 1;
        return out;
    }
    PullingTriangulator<T> tri(p);
    const bool origin_apex = p.contains_origin_in_interior();
    std::vector<T> apex(n, T(0));
    std::size_t apex_idx = 0;
    if (!origin_apex)
        apex = p.vertices()[apex_idx];

    T total = 0;                          // sum of |det|
    std::vector<T> weighted(n, T(0));     // sum of |det| * (vertex sum of simplex)
    for (std::size_t f = 0; f < p.num_facets(); ++f) {
        if (!origin_apex && p.incident(f, apex_idx))
            continue;
        for (const auto& s : tri.triangulate(p.facet_vertices(f))) {
            Matrix<T> m(n, n);
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < n; ++c)
                    m(r, c) = p.vertices()[s[r]][c] - apex[c];
            T d = abs_value(det(m));
            total += d;
            for (std::size_t c = 0; c < n; ++c) {
                T coord = apex[c];
                for (auto i : s)
                    coord += p.vertices()[i][c];
                weighted[c] += d * coord;
            }
        }
    }
    out.volume = BigRational(total) / BigRational(factorial(n));
    out.barycenter.assign(n, BigRational(0));
    for (std::size_t c = 0; c < n; ++c)
        out.barycenter[c] = BigRational(weighted[c]) / (BigRational(total) * (n + 1));
    return out;
}

// ---------------------------------------------------------------------------
// Lattice points and Ehrhart polynomials
// ---------------------------------------------------------------------------

namespace detail {

/** Rows <a_j, x> >= b_j over the first `a_j.size()` coordinates. */
struct HalfSpaces
{
    std::vector<IntVector> a;
    std::vector<BigRational> b;
};

inline BigInt count_points(const HalfSpaces& h, std::size_t m)
{
    if (m == 0)
        return std::all_of(h.b.begin(), h.b.end(), [](const BigRational& x) { return x <= 0; }) ? 1 : 0;
    if (m == 1) {
        std::optional<BigRational> lo, hi;
        for (std::size_t j = 0; j < h.a.size(); ++j) {
            const BigInt& c = h.a[j][0];
            if (c == 0) {
                if (h.b[j] > 0)
                    return 0;
            } else if (c > 0) {
                BigRational t = h.b[j] / BigRational(c);
                if (!lo || t > *lo)
                    lo = t;
            } else {
                BigRational t = h.b[j] / BigRational(c);
                if (!hi || t < *hi)
                    hi = t;
            }
        }
        if (!lo || !hi)
            throw PreconditionError("count_lattice_points: unbounded region");
        BigInt k = floor_of(*hi) - ceil_of(*lo) + 1;
        return k > 0 ? k : BigInt(0);
    }

    // range of the last coordinate
    LinearProgram lp;
    lp.dim = m;
    for (std::size_t j = 0; j < h.a.size(); ++j) {
        RatVector neg(m);
        for (std::size_t i = 0; i < m; ++i)
            neg[i] = -BigRational(h.a[j][i]);
        lp.constraints.push_back({neg, -h.b[j]});
    }
    lp.objective.assign(m, BigRational(0));
    lp.objective[m - 1] = 1;
    lp.sense = Sense::maximize;
    auto top = solve(lp);
    if (top.status == LpStatus::infeasible)
        return 0;
    if (top.status == LpStatus::unbounded)
        throw PreconditionError("count_lattice_points: unbounded region");
    lp.sense = Sense::minimize;
    auto bottom = solve(lp);
    BigInt lo = ceil_of(bottom.value), hi = floor_of(top.value);

    BigInt total = 0;
    for (BigInt t = lo; t <= hi; ++t) {
        HalfSpaces slice;
        bool empty = false;
        for (std::size_t j = 0; j < h.a.size(); ++j) {
            IntVector row(h.a[j].begin(), h.a[j].begin() + (m - 1));
            BigRational rhs = h.b[j] - BigRational(h.a[j][m - 1] * t);
            if (is_zero(row)) {
                if (rhs > 0) {
                    empty = true;
                    break;
                }
                continue;
            }
            slice.a.push_back(std::move(row));
            slice.b.push_back(rhs);
        }
        if (!empty)
            total += count_points(slice, m - 1);
    }
    return total;
}

template <typename T>
HalfSpaces dilated_halfspaces(const Polytope<T>& p, const BigInt& k)
{
    HalfSpaces h;
    for (const auto& f : p.facets()) {
        h.a.push_back(f.normal);
        h.b.push_back(BigRational(f.rhs) * BigRational(k));
    }
    return h;
}

} // namespace detail

/** |kP cap Z^n| by slicing along the last coordinate with exact LP bounds. */
template <typename T>
BigInt count_lattice_points(const Polytope<T>& p, const BigInt& k = 1)
{
    if (k < 0)
        throw PreconditionError("count_lattice_points: negative dilation");
    return detail::count_points(detail::dilated_halfspaces(p, k), p.dim());
}

/** Lattice points strictly inside p (integral normals make <u,x> > rhs the same as >= rhs + 1 when rhs is integral). */
inline BigInt count_interior_lattice_points(const LatticePolytope& p)
{
    detail::HalfSpaces h;
    for (const auto& f : p.facets()) {
        h.a.push_back(f.normal);
        h.b.push_back(BigRational(f.rhs + 1));
    }
    return detail::count_points(h, p.dim());
}

struct EhrhartPolynomial
{
    std::vector<BigRational> coefficients;   // a_0 .. a_n

    std::size_t degree() const { return coefficients.empty() ? 0 : coefficients.size() - 1; }

    BigRational operator()(const BigRational& t) const
    {
        BigRational s = 0;
        for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it)
            s = s * t + *it;
        return s;
    }
};

/** Interpolates through (k, L(k)) for k = 0..n with L(0) = 1. */
inline EhrhartPolynomial interpolate(const std::vector<BigInt>& counts)
{
    const std::size_t n = counts.size() - 1;
    RatMatrix v(n + 1, n + 1);
    RatVector rhs(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        BigRational pw = 1;
        for (std::size_t i = 0; i <= n; ++i) {
            v(k, i) = pw;
            pw *= k;
        }
        rhs[k] = counts[k];
    }
    return EhrhartPolynomial{solve_exact(v, rhs)};
}

inline EhrhartPolynomial ehrhart(const LatticePolytope& p)
{
    std::vector<BigInt> counts{BigInt(1)};
    for (std::size_t k = 1; k <= p.dim(); ++k)
        counts.push_back(count_lattice_points(p, BigInt(k)));
    return interpolate(counts);
}

// ---------------------------------------------------------------------------
// Relative volumes of faces
// ---------------------------------------------------------------------------

/**
 * Coordinates of a lattice face in its own affine lattice: with U D V the
 * Smith form of the difference vectors, the first r entries of diff * V are
 * integral coordinates w.r.t. a saturated basis (rows of V^{-1}).
 */
struct FaceLattice
{
    std::size_t dim = 0;
    std::vector<IntVector> coordinates;   // one per input vertex, first one at the origin
    IntMatrix basis;                      // dim x n, saturated basis of the face's linear lattice
};

inline FaceLattice face_lattice(const std::vector<IntVector>& vertices)
{
    if (vertices.empty())
        throw PreconditionError("face_lattice: empty face");
    const std::size_t n = vertices.front().size();
    FaceLattice out;
    if (vertices.size() == 1) {
        out.coordinates.push_back({});
        out.basis = IntMatrix(0, n);
        return out;
    }
    std::vector<IntVector> diffs;
    for (std::size_t i = 1; i < vertices.size(); ++i)
        diffs.push_back(subtract(vertices[i], vertices[0]));
    IntMatrix m = IntMatrix::from_rows(diffs, n);
    NormalForms nf = hermite_smith(m);
    std::size_t r = 0;
    while (r < std::min(nf.smith.rows(), nf.smith.cols()) && nf.smith(r, r) != 0)
        ++r;
    out.dim = r;
    IntMatrix coords = m * nf.right;
    out.coordinates.push_back(IntVector(r, BigInt(0)));
    for (std::size_t i = 0; i < diffs.size(); ++i) {
        IntVector row = coords.row(i);
        row.resize(r);
        out.coordinates.push_back(std::move(row));
    }
    IntMatrix vinv = inverse_unimodular(nf.right);
    out.basis = IntMatrix(r, n);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out.basis(i, j) = vinv(i, j);
    return out;
}

/** Lattice-normalized volume of a lattice polytope in its affine hull; a point has volume 1. */
inline BigRational relative_volume(const std::vector<IntVector>& face_vertices)
{
    FaceLattice fl = face_lattice(face_vertices);
    if (fl.dim == 0)
        return 1;
    return volume_and_barycenter(hull(fl.coordinates)).volume;
}

/** Squared Euclidean covolume (Gram determinant) of the face's lattice; 1 when it is unimodular in R^n. */
inline BigInt face_gram_determinant(const std::vector<IntVector>& face_vertices)
{
    FaceLattice fl = face_lattice(face_vertices);
    if (fl.dim == 0)
        return 1;
    return det(fl.basis * fl.basis.transpose());
}

inline BigRational boundary_volume(const LatticePolytope& p)
{
    BigRational s = 0;
    for (std::size_t f = 0; f < p.num_facets(); ++f)
        s += relative_volume(p.vertices_of(p.facet_vertices(f)));
    return s;
}

/** Sum of relative volumes over all codimension-2 faces. */
inline BigRational codim2_volume(const LatticePolytope& p)
{
    BigRational s = 0;
    for (const auto& r : faces_codim2(p))
        s += relative_volume(p.vertices_of(r.vertices));
    return s;
}

// ---------------------------------------------------------------------------
// Asymmetry and Fano index
// ---------------------------------------------------------------------------

/**
 * max over facets <a_i, x> <= 1 and vertices w of <a_i, -w>. Equals the
 * supremum over directions of forward over backward reach from 0.
 */
template <typename T>
BigRational coefficient_of_asymmetry(const Polytope<T>& s)
{
    if (s.dim() == 0 || !s.contains_origin_in_interior())
        throw PreconditionError("coefficient_of_asymmetry: origin must be interior to a positive-dimensional polytope");
    std::optional<BigRational> best;
    for (const auto& f : s.facets()) {
        BigRational h = -BigRational(f.rhs);
        for (const auto& w : s.vertices()) {
            BigRational v = dot(f.normal, to_rational(w)) / h;
            if (!best || v > *best)
                best = v;
        }
    }
    return *best;
}

/** gcd of all coordinates of w - v over vertices w, for the base vertex v. */
inline BigInt fano_index(const LatticePolytope& p, std::size_t base = 0)
{
    if (p.num_vertices() < 2)
        throw PreconditionError("fano_index: need at least two vertices");
    const auto& v = p.vertices().at(base);
    BigInt g = 0;
    for (const auto& w : p.vertices())
        g = gcd(g, content(subtract(w, v)));
    return g;
}

struct MeasureReport
{
    BigRational volume;
    RatVector barycenter;
    BigRational degree;                          // n! * volume
    std::optional<BigRational> boundary_relvol;
    std::optional<BigRational> codim2_relvol;
    BigInt fano_index;
};

inline MeasureReport measure(const LatticePolytope& p, bool with_face_volumes)
{
    MeasureReport m;
    auto vb = volume_and_barycenter(p);
    m.volume = vb.volume;
    m.barycenter = vb.barycenter;
    m.degree = vb.volume * BigRational(factorial(p.dim()));
    if (with_face_volumes) {
        m.boundary_relvol = boundary_volume(p);
        m.codim2_relvol = codim2_volume(p);
    }
    m.fano_index = fano_index(p);
    return m;
}

} // namespace reflex
