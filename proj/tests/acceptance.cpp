// Prints one PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "reflex/reflex.hpp"

using namespace reflex;
namespace fx = reflex::fixtures;

namespace {

struct Failure : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what)
{
    if (!ok)
        throw Failure(what);
}

struct Entry
{
    std::string name;
    std::size_t dim;
    DualPair dp;
    AutomorphismGroups groups;
};

// Smooth corpus entries with their dual pairs and groups, computed once.
const std::vector<Entry>& smooth_corpus()
{
    static const std::vector<Entry> entries = [] {
        std::vector<Entry> out;
        for (const auto& c : fx::corpus()) {
            if (!is_smooth_fano(hull(c.vertices)).smooth)
                continue;
            auto dp = dual(FanoPolytope::from_vertices(c.vertices));
            auto g = automorphism_group(dp);
            out.push_back({c.name, c.dim, std::move(dp), std::move(g)});
        }
        return out;
    }();
    return entries;
}

bool is_projective_space(const std::string& name) { return name.size() == 2 && name[0] == 'P'; }

bool parallel(const IntVector& a, const IntVector& b)
{
    return rank_of_rows(std::vector<IntVector>{a, b}, a.size()) == 1;
}

BigInt box_count(const LatticePolytope& p, long k)
{
    const std::size_t n = p.dim();
    std::vector<long> lo(n), hi(n);
    for (std::size_t i = 0; i < n; ++i) {
        lo[i] = hi[i] = p.vertices()[0][i].convert_to<long>() * k;
        for (const auto& v : p.vertices()) {
            lo[i] = std::min(lo[i], v[i].convert_to<long>() * k);
            hi[i] = std::max(hi[i], v[i].convert_to<long>() * k);
        }
    }
    BigInt count = 0;
    std::vector<long> x = lo;
    while (true) {
        bool inside = true;
        for (const auto& f : p.facets()) {
            BigInt s = 0;
            for (std::size_t i = 0; i < n; ++i)
                s += f.normal[i] * x[i];
            if (s < f.rhs * k) {
                inside = false;
                break;
            }
        }
        count += inside;
        std::size_t i = 0;
        while (i < n && ++x[i] > hi[i])
            x[i] = lo[i], ++i;
        if (i == n)
            break;
    }
    return count;
}

// The five verdicts shared by the three non-symmetric examples.
std::string headline(const FanoPolytope& q, std::size_t n_vertices, std::size_t dim)
{
    require(q.polytope().num_vertices() == n_vertices && q.dim() == dim, "unexpected vertex count or dimension");
    require(is_smooth_fano(q.polytope()).smooth, "not smooth Fano");
    auto dp = dual(q);   // throws unless every dual vertex is a lattice point
    require(is_zero(volume_and_barycenter(dp.p).barycenter), "barycenter(P) != 0");
    auto g = automorphism_group(dp);
    require(!is_symmetric(g), "reported symmetric");
    auto fq = fixed_space(g.q_side);
    require(fq.dim() == 1 && fixed_space(g.p_side).dim() == 1, "fixed space dimension != 1");
    require(parallel(fq.basis[0], vertex_sum(q.polytope())), "fixed space not spanned by the vertex sum");
    auto alpha = alpha_invariant(dp, g);
    require(alpha == BigRational(1, 2) && lct(dp, g.p_side) == alpha, "alpha or lct != 1/2");
    std::ostringstream s;
    s << "|W| = " << g.q_side.order() << ", fixed line " << to_string(fq.basis[0]) << ", alpha = lct = " << alpha;
    return s.str();
}

std::string criterion_q1() { return headline(fx::q1(), 12, 7); }

std::string criterion_q2() { return headline(free_sum(fx::q1(), segment()), 14, 8); }

std::string criterion_q3() { return headline(fx::q3(), 16, 8); }

std::string criterion_product()
{
    auto dp = dual(fx::q1_times_lines(2));
    require(dp.dim() == 9, "dimension != 9");
    require(is_zero(volume_and_barycenter(dp.p).barycenter), "barycenter(P) != 0");
    auto g = automorphism_group(dp);
    require(!is_symmetric(g), "reported symmetric");
    return "dim 9, |W| = " + std::to_string(g.q_side.order()) + ", fixed dim "
           + std::to_string(fixed_space(g.p_side).dim());
}

std::string criterion_counterexample()
{
    auto q = fx::facet_counterexample_vertices();
    require(q.size() == 8 && q[0].size() == 5, "fixture is not 5-dim with 8 vertices");
    auto dp = dual(FanoPolytope::from_vertices(q));
    require(is_zero(volume_and_barycenter(dp.p).barycenter), "barycenter(P) != 0");
    auto exceptional = fx::facet_counterexample_exceptional();
    require(exceptional == std::vector<IntVector>{q[3], q[4]}, "exceptional vertices are not columns four and five");
    std::size_t infeasible = 0;
    for (const auto& r : check_conj11(dp)) {
        bool special = std::find(exceptional.begin(), exceptional.end(), r.normal) != exceptional.end();
        require(r.feasible != special, "wrong verdict on facet " + to_string(r.normal));
        infeasible += !r.feasible;
    }
    require(infeasible == 2, "infeasible count != 2");
    return "infeasible exactly on the facets dual to " + to_string(q[3]) + " and " + to_string(q[4]);
}

std::string criterion_formulas()
{
    for (const auto& e : smooth_corpus())
        require(alpha_invariant(e.dp, e.groups) == lct(e.dp, e.groups.p_side), "alpha != lct on " + e.name);
    auto dp = dual(FanoPolytope::from_vertices(fx::projective_space(2)));
    BigInt best = dot(dp.p.vertices()[0], dp.q.vertices()[0]);
    for (const auto& w : dp.p.vertices())
        for (const auto& v : dp.q.vertices())
            best = std::max(best, dot(w, v));
    BigRational oracle = BigRational(1) / BigRational(1 + best);
    require(oracle == BigRational(1, 3), "vertex-pair oracle != 1/3");
    require(lct(dp, trivial_group(2)) == oracle, "lct(P2, trivial) != 1/3");
    return std::to_string(smooth_corpus().size()) + " entries agree; lct(P2, 1) = 1/3";
}

std::string criterion_fixed_dims()
{
    for (const auto& e : smooth_corpus()) {
        require(e.groups.q_side.order() == e.groups.p_side.order(), "group orders differ on " + e.name);
        require(fixed_space(e.groups.q_side).dim() == fixed_space(e.groups.p_side).dim(),
                "fixed dims differ on " + e.name);
    }
    return std::to_string(smooth_corpus().size()) + " entries";
}

std::string criterion_symmetric_balanced()
{
    std::size_t symmetric = 0;
    for (const auto& e : smooth_corpus()) {
        if (!is_symmetric(e.groups))
            continue;
        ++symmetric;
        require(is_zero(volume_and_barycenter(e.dp.p).barycenter), "off-centre symmetric entry " + e.name);
    }
    require(symmetric > 0, "no symmetric entries");
    return std::to_string(symmetric) + " symmetric entries, all balanced";
}

std::string criterion_ehrhart()
{
    std::size_t checked = 0;
    for (const auto& e : smooth_corpus()) {
        if (e.dim > 5)
            continue;
        const auto& p = e.dp.p;
        auto poly = ehrhart(p);
        const std::size_t n = e.dim;
        require(poly.degree() == n, "degree mismatch on " + e.name);
        require(poly.coefficients[0] == 1, "a_0 != 1 on " + e.name);
        require(poly.coefficients[n] == volume_and_barycenter(p).volume, "a_n != vol on " + e.name);
        require(poly.coefficients[n - 1] == boundary_volume(p) / 2, "a_(n-1) != boundary/2 on " + e.name);
        if (n <= 3)
            for (long k = 1; k <= 3; ++k)
                require(count_lattice_points(p, BigInt(k)) == box_count(p, k), "count != box count on " + e.name);
        ++checked;
    }
    return std::to_string(checked) + " polytopes";
}

std::string criterion_eq1()
{
    std::size_t checked = 0;
    bool p2_equality = false;
    for (const auto& e : smooth_corpus()) {
        // the inequality needs a codimension-two skeleton, so n starts at 2
        if (e.dim < 2 || e.dim > 5 || !is_zero(volume_and_barycenter(e.dp.p).barycenter))
            continue;
        auto r = check_eq1(e.dp);
        require(r.holds, "fails on " + e.name);
        if (e.name == "P2")
            p2_equality = r.equality;
        ++checked;
    }
    require(p2_equality, "no equality on P2");
    return std::to_string(checked) + " balanced entries with 2 <= n <= 5, equality on P2";
}

std::string criterion_bounds()
{
    std::size_t spaces = 0;
    for (const auto& e : smooth_corpus()) {
        bool pn = is_projective_space(e.name);
        auto eb = check_ehrhart_bound(e.dp);
        require(eb.holds, "volume bound fails on " + e.name);
        require(eb.equality == pn, "volume bound equality mismatch on " + e.name);
        require(eb.known_bound_holds, "known bound fails on " + e.name);
        auto b = check_bishop(e.dp);
        require(b.holds, "degree bound fails on " + e.name);
        require(b.sharp == pn, "degree bound sharpness mismatch on " + e.name);
        if (pn) {
            BigInt n1(e.dim + 1);
            require(b.lhs == BigRational(power(n1, e.dim + 1)), "I * degree != (n+1)^(n+1) on " + e.name);
            require(fano_index(e.dp.p) == n1, "fano index != n+1 on " + e.name);
            ++spaces;
        }
    }
    require(spaces == 4, "expected P1..P4 in the corpus");
    return std::to_string(smooth_corpus().size()) + " entries, sharp exactly on P1..P4";
}

std::string criterion_scan()
{
    auto f = fx::corpus_file();
    ScanOptions plain{1, false}, wide{4, false}, full1{1, true}, full4{4, true};
    auto reports = scan(f, plain);
    std::vector<std::string> flagged;
    for (const auto& r : reports)
        if (r.is_ke() && !r.is_symmetric())
            flagged.push_back(r.name);
    require(flagged == std::vector<std::string>{"Q1", "Q2", "Q3"}, "flagged set is not {Q1, Q2, Q3}");
    std::string text = emit(reports, Format::json);
    require(emit(scan(f, plain), Format::json) == text, "JSON differs between runs");
    require(emit(scan(f, wide), Format::json) == text, "JSON differs between 1 and 4 jobs");
    std::string with = emit(scan(f, full1), Format::json);
    require(emit(scan(f, full4), Format::json) == with, "JSON with conjectures differs between 1 and 4 jobs");
    return "flagged {Q1, Q2, Q3}; " + std::to_string(text.size()) + " JSON bytes stable";
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<std::string()>>> criteria{
        {"Q1 reproduction", criterion_q1},
        {"Q2 as a bipyramid over Q1", criterion_q2},
        {"Q3 reproduction", criterion_q3},
        {"Q1 + two segments (dim 9)", criterion_product},
        {"5-dim facet counterexample", criterion_counterexample},
        {"alpha = lct on the corpus", criterion_formulas},
        {"dual fixed spaces have equal dimension", criterion_fixed_dims},
        {"symmetric implies balanced", criterion_symmetric_balanced},
        {"Ehrhart identities and point counts", criterion_ehrhart},
        {"codim-2 Ehrhart inequality", criterion_eq1},
        {"volume and degree bounds", criterion_bounds},
        {"scan end to end", criterion_scan},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto t0 = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = true;
        try {
            detail = criteria[i].second();
        } catch (const std::exception& e) {
            ok = false;
            detail = e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::ostringstream line;
        line.setf(std::ios::fixed);
        line.precision(1);
        line << (ok ? "[PASS] " : "[FAIL] ") << i + 1 << ": " << criteria[i].first << " - " << detail << " (" << secs
             << " s)";
        std::cout << line.str() << std::endl;
        failed += !ok;
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failed ? 1 : 0;
}
