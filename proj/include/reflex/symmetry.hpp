/**
 * Lattice automorphism groups of smooth Fano polytopes and their fixed spaces.
 *
 * The search anchors on one facet of Q. Its n vertices form a lattice basis
 * B, so an automorphism is determined by the images W of those vertices and
 * equals W B^{-1}, which is integral whenever W is. Candidate images are
 * assigned vertex by vertex and pruned with two invariants of unimodular
 * maps: the sorted multiset of facet values <u_F, v> of a vertex, and the
 * number of facets containing each partial image set.
 */
#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <vector>

#include "reflex/exact.hpp"
#include "reflex/polytope.hpp"

namespace reflex {

struct SymmetryGroup
{
    std::size_t dim = 0;
    std::vector<IntMatrix> elements;     // sorted by entries, identity included
    std::vector<IntMatrix> generators;   // subset of elements generating the group

    std::size_t order() const { return elements.size(); }
    bool contains(const IntMatrix& a) const { return std::binary_search(elements.begin(), elements.end(), a); }
};

/** Both sides of W(Q) <-> W(P); p_side[i] is the inverse transpose of some q_side element. */
struct AutomorphismGroups
{
    SymmetryGroup q_side;
    SymmetryGroup p_side;
};

struct FixedSpace
{
    std::vector<IntVector> basis;   // primitive, first nonzero entry positive

    std::size_t dim() const { return basis.size(); }
};

struct SearchOptions
{
    bool prune = true;
};

/** True iff a permutes the vertex set of p. */
template <typename T>
bool preserves(const Polytope<T>& p, const IntMatrix& a)
{
    if (a.rows() != p.dim() || a.cols() != p.dim())
        return false;
    std::vector<bool> hit(p.num_vertices(), false);
    for (const auto& v : p.vertices()) {
        std::vector<T> w(p.dim(), T(0));
        for (std::size_t i = 0; i < p.dim(); ++i)
            for (std::size_t j = 0; j < p.dim(); ++j)
                if (a(i, j) != 0)
                    w[i] += T(a(i, j)) * v[j];
        auto idx = p.find_vertex(w);
        if (!idx || hit[*idx])
            return false;
        hit[*idx] = true;
    }
    return true;
}

namespace detail {

inline std::set<IntMatrix> closure(const std::vector<IntMatrix>& gens, std::size_t n)
{
    std::set<IntMatrix> seen{IntMatrix::identity(n)};
    std::vector<IntMatrix> frontier{IntMatrix::identity(n)};
    while (!frontier.empty()) {
        std::vector<IntMatrix> next;
        for (const auto& x : frontier)
            for (const auto& g : gens) {
                IntMatrix y = g * x;
                if (seen.insert(y).second)
                    next.push_back(std::move(y));
            }
        frontier = std::move(next);
    }
    return seen;
}

/** Scans the sorted elements and keeps each one not generated by its predecessors. */
inline std::vector<IntMatrix> greedy_generators(const std::vector<IntMatrix>& elements, std::size_t n)
{
    std::vector<IntMatrix> gens;
    std::set<IntMatrix> sub{IntMatrix::identity(n)};
    for (const auto& g : elements) {
        if (sub.count(g))
            continue;
        gens.push_back(g);
        sub = closure(gens, n);
    }
    return gens;
}


class AutomorphismSearch
{
    public:
        AutomorphismSearch(const LatticePolytope& q, SearchOptions opts) : q_(q), n_(q.dim()), opts_(opts)
        {
            if (q.num_facets() == 0)
                throw PreconditionError("automorphism search: polytope has no facets");
            anchor_ = q.vertices_of(q.facet_vertices(0));
            if (anchor_.size() != n_)
                throw PreconditionError("automorphism search: anchor facet is not simplicial");
            for (std::size_t i = q.facet_vertices(0).find_first(); i != VertexSet::npos;
                 i = q.facet_vertices(0).find_next(i))
                anchor_idx_.push_back(i);
            basis_inv_ = inverse_unimodular(IntMatrix::from_columns(anchor_));

            std::map<std::vector<BigInt>, int> classes;
            for (const auto& v : q.vertices()) {
                std::vector<BigInt> prof;
                for (const auto& f : q.facets())
                    prof.push_back(dot(f.normal, v));
                std::sort(prof.begin(), prof.end());
                auto it = classes.emplace(prof, static_cast<int>(classes.size())).first;
                class_.push_back(it->second);
            }
        }

        std::vector<IntMatrix> run()
        {
            found_.clear();
            if (opts_.prune) {
                VertexSet all(q_.num_facets());
                all.set();
                std::vector<std::size_t> images;
                std::vector<bool> used(q_.num_vertices(), false);
                // reference counts along the anchor
                ref_counts_.clear();
                VertexSet acc = all;
                for (auto i : anchor_idx_) {
                    acc &= q_.vertex_facets(i);
                    ref_counts_.push_back(acc.count());
                }
                extend(images, used, all);
            } else {
                for (std::size_t f = 0; f < q_.num_facets(); ++f) {
                    std::vector<std::size_t> idx;
                    const auto& fv = q_.facet_vertices(f);
                    for (auto i = fv.find_first(); i != VertexSet::npos; i = fv.find_next(i))
                        idx.push_back(i);
                    if (idx.size() != n_)
                        continue;
                    do {
                        try_images(idx);
                    } while (std::next_permutation(idx.begin(), idx.end()));
                }
            }
            std::sort(found_.begin(), found_.end());
            found_.erase(std::unique(found_.begin(), found_.end()), found_.end());
            return found_;
        }

    private:
        void extend(std::vector<std::size_t>& images, std::vector<bool>& used, const VertexSet& common)
        {
            const std::size_t k = images.size();
            if (k == n_) {
                try_images(images);
                return;
            }
            const int want = class_[anchor_idx_[k]];
            for (std::size_t w = 0; w < q_.num_vertices(); ++w) {
                if (used[w] || class_[w] != want)
                    continue;
                VertexSet next = common & q_.vertex_facets(w);
                if (next.count() != ref_counts_[k])
                    continue;
                used[w] = true;
                images.push_back(w);
                extend(images, used, next);
                images.pop_back();
                used[w] = false;
            }
        }

        void try_images(const std::vector<std::size_t>& images)
        {
            std::vector<IntVector> cols;
            for (auto i : images)
                cols.push_back(q_.vertices()[i]);
            IntMatrix a = IntMatrix::from_columns(cols) * basis_inv_;
            if (abs_value(det(a)) != 1)
                return;
            if (preserves(q_, a))
                found_.push_back(std::move(a));
        }

        const LatticePolytope& q_;
        std::size_t n_;
        SearchOptions opts_;
        std::vector<IntVector> anchor_;
        std::vector<std::size_t> anchor_idx_;
        IntMatrix basis_inv_;
        std::vector<int> class_;
        std::vector<std::size_t> ref_counts_;
        std::vector<IntMatrix> found_;
};

} // namespace detail

/** Group with the given (complete) element list; sorts and picks generators. */
inline SymmetryGroup make_group(std::vector<IntMatrix> elements, std::size_t n)
{
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    SymmetryGroup g;
    g.dim = n;
    g.generators = detail::greedy_generators(elements, n);
    g.elements = std::move(elements);
    return g;
}

/** The subgroup generated by gens. */
inline SymmetryGroup generated_group(const std::vector<IntMatrix>& gens, std::size_t n)
{
    auto all = detail::closure(gens, n);
    return make_group(std::vector<IntMatrix>(all.begin(), all.end()), n);
}

inline SymmetryGroup trivial_group(std::size_t n)
{
    return make_group({IntMatrix::identity(n)}, n);
}

/** Lattice automorphisms of a simplicial lattice polytope whose first facet is unimodular. */
inline SymmetryGroup lattice_automorphisms(const LatticePolytope& q, SearchOptions opts = {})
{
    detail::AutomorphismSearch search(q, opts);
    return make_group(search.run(), q.dim());
}

/** The group on the P side: A -> A^{-T}. */
inline SymmetryGroup transport(const SymmetryGroup& g)
{
    SymmetryGroup out;
    out.dim = g.dim;
    for (const auto& a : g.elements)
        out.elements.push_back(inverse_unimodular(a).transpose());
    for (const auto& a : g.generators)
        out.generators.push_back(inverse_unimodular(a).transpose());
    std::sort(out.elements.begin(), out.elements.end());
    return out;
}

inline AutomorphismGroups automorphism_group(const DualPair& dp, SearchOptions opts = {})
{
    AutomorphismGroups out;
    out.q_side = lattice_automorphisms(dp.q.polytope(), opts);
    out.p_side = transport(out.q_side);
    return out;
}

/** Common fixed vectors: kernel of the stacked (A - I) over the generators. */
inline FixedSpace fixed_space(const SymmetryGroup& g)
{
    const std::size_t n = g.dim;
    IntMatrix stacked(g.generators.size() * n, n);
    IntMatrix id = IntMatrix::identity(n);
    for (std::size_t k = 0; k < g.generators.size(); ++k) {
        IntMatrix d = g.generators[k] - id;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                stacked(k * n + i, j) = d(i, j);
    }
    FixedSpace fs;
    fs.basis = kernel_basis(stacked);
    std::sort(fs.basis.begin(), fs.basis.end());
    return fs;
}

template <typename T>
std::vector<T> vertex_sum(const Polytope<T>& q)
{
    std::vector<T> s(q.dim(), T(0));
    for (const auto& v : q.vertices())
        for (std::size_t i = 0; i < q.dim(); ++i)
            s[i] += v[i];
    return s;
}

/** Symmetric iff W(P) fixes no nonzero vector of M. */
inline bool is_symmetric(const AutomorphismGroups& groups)
{
    return fixed_space(groups.p_side).dim() == 0;
}

inline bool is_symmetric(const DualPair& dp)
{
    return is_symmetric(automorphism_group(dp));
}

} // namespace reflex
