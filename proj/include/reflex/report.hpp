/**
 * Per-polytope analysis records, the batch scan, and JSON / CSV output.
 *
 * Rationals are written as canonical "p/q" strings ("0" for zero), big
 * integers as decimal strings, small counts as JSON numbers. Key order is
 * fixed so output is byte-stable.
 */
#pragma once

#include <atomic>
#include <chrono>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "reflex/conjectures.hpp"
#include "reflex/criteria.hpp"
#include "reflex/io.hpp"
#include "reflex/measures.hpp"
#include "reflex/polytope.hpp"
#include "reflex/symmetry.hpp"

namespace reflex {

using Json = nlohmann::ordered_json;

struct Verdicts
{
    RatVector barycenter;
    bool is_ke = false;
    bool is_symmetric = false;
    std::size_t fixed_dim = 0;
    std::vector<IntVector> fixed_generator;   // basis of the fixed space of W(Q) in N
    IntVector vertex_sum;
    std::size_t group_order = 0;
    BigRational alpha;
    BigRational lct;
    bool tian_holds = false;
    BigRational volume;
    BigRational degree;
    BigInt fano_index;

    bool operator==(const Verdicts&) const = default;
};

struct AnalysisReport
{
    std::string name;
    std::size_t dim = 0;
    std::size_t n_vertices = 0;
    bool is_smooth_fano = false;
    std::string smoothness_certificate;
    bool is_reflexive = false;
    std::optional<std::string> error;
    std::optional<Verdicts> verdicts;
    std::optional<std::vector<BigRational>> ehrhart;
    std::optional<ConjectureReport> conjectures;
    std::optional<double> timing_seconds;

    bool is_ke() const { return verdicts && verdicts->is_ke; }
    bool is_symmetric() const { return verdicts && verdicts->is_symmetric; }

    bool operator==(const AnalysisReport&) const = default;
};

struct ScanOptions
{
    std::size_t jobs = 1;
    bool conjectures = false;
    std::size_t ehrhart_max_dim = default_ehrhart_max_dim;
    bool timing = false;
};

/** Full analysis of one entry. Failures are recorded in the report, never thrown. */
inline AnalysisReport analyze(const PolytopeEntry& entry, const ScanOptions& opts = {})
{
    auto start = std::chrono::steady_clock::now();
    AnalysisReport r;
    r.name = entry.name;
    r.dim = entry.dim;
    r.n_vertices = entry.vertices.size();
    try {
        if (entry.vertices.empty())
            throw PreconditionError("no vertices");
        LatticePolytope q = hull(entry.vertices);
        r.n_vertices = q.num_vertices();
        r.is_reflexive = q.is_reflexive();
        auto smooth = is_smooth_fano(q);
        r.is_smooth_fano = smooth.smooth;
        r.smoothness_certificate = smooth.certificate;
        if (smooth.smooth) {
            DualPair dp = dual(FanoPolytope::make(std::move(q)));
            auto groups = automorphism_group(dp);
            KEVerdict ke = evaluate(dp, groups);
            Verdicts v;
            v.barycenter = ke.barycenter;
            v.is_ke = ke.is_ke;
            v.is_symmetric = ke.is_symmetric;
            v.fixed_dim = ke.fixed_dim;
            v.fixed_generator = fixed_space(groups.q_side).basis;
            v.vertex_sum = vertex_sum(dp.q.polytope());
            v.group_order = groups.p_side.order();
            v.alpha = ke.alpha;
            v.lct = ke.lct;
            v.tian_holds = ke.tian_holds;
            v.volume = volume_and_barycenter(dp.p).volume;
            v.degree = v.volume * BigRational(factorial(dp.dim()));
            v.fano_index = fano_index(dp.p);
            r.verdicts = std::move(v);
            if (opts.conjectures) {
                if (dp.dim() <= opts.ehrhart_max_dim)
                    r.ehrhart = ehrhart(dp.p).coefficients;
                r.conjectures = check_all(dp, opts.ehrhart_max_dim);
            }
        }
    } catch (const std::exception& e) {
        r.error = e.what();
    }
    if (opts.timing)
        r.timing_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

/** Analyzes every entry; output order is input order for any number of jobs. */
inline std::vector<AnalysisReport> scan(const PolytopeFile& pf, const ScanOptions& opts = {})
{
    std::vector<AnalysisReport> out(pf.entries.size());
    const std::size_t workers = std::max<std::size_t>(1, std::min(opts.jobs, pf.entries.size()));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < pf.entries.size(); i = next++)
            out[i] = analyze(pf.entries[i], opts);
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back(work);
        for (auto& t : pool)
            t.join();
    }
    return out;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

namespace detail {

template <typename T>
Json strings(const std::vector<T>& v)
{
    Json a = Json::array();
    for (const auto& x : v)
        a.push_back(to_string(x));
    return a;
}

inline Json string_rows(const std::vector<IntVector>& rows)
{
    Json a = Json::array();
    for (const auto& r : rows)
        a.push_back(strings(r));
    return a;
}

inline RatVector rationals(const Json& j)
{
    RatVector v;
    for (const auto& x : j)
        v.push_back(parse_rational(x.get<std::string>()));
    return v;
}

inline IntVector integers(const Json& j)
{
    IntVector v;
    for (const auto& x : j)
        v.emplace_back(x.get<std::string>());
    return v;
}

inline BigRational rat(const Json& j) { return parse_rational(j.get<std::string>()); }

inline Json to_json(const ConjectureReport& c)
{
    Json j;
    if (c.eq1) {
        const auto& e = *c.eq1;
        j["eq1"] = Json{{"a_n_minus_2", to_string(e.a_n_minus_2)},
                        {"codim2_volume", to_string(e.codim2_volume)},
                        {"third_of_codim2_vol", to_string(e.third_of_codim2_vol)},
                        {"skew_ridges", e.skew_ridges},
                        {"holds", e.holds},
                        {"equality", e.equality}};
    } else {
        j["eq1"] = nullptr;
    }
    j["conj11_hypothesis"] = c.conj11_hypothesis;
    Json facets = Json::array();
    for (const auto& f : c.conj11) {
        Json fj{{"facet", f.facet}, {"normal", strings(f.normal)}, {"feasible", f.feasible}};
        fj["witness"] = f.witness ? strings(*f.witness) : Json(nullptr);
        facets.push_back(std::move(fj));
    }
    j["conj11"] = std::move(facets);
    const auto& eb = c.ehrhart_bound;
    j["ehrhart_bound"] = Json{{"volume", to_string(eb.volume)},
                              {"bound", to_string(eb.bound)},
                              {"holds", eb.holds},
                              {"equality", eb.equality},
                              {"simplex_shape", eb.simplex_shape},
                              {"known_bound", to_string(eb.known_bound)},
                              {"known_bound_holds", eb.known_bound_holds},
                              {"origin_unique_interior", eb.origin_unique_interior}};
    const auto& b = c.bishop;
    j["bishop"] = Json{{"index", to_string(b.index)}, {"degree", to_string(b.degree)}, {"lhs", to_string(b.lhs)},
                       {"bound", to_string(b.bound)}, {"holds", b.holds},          {"sharp", b.sharp}};
    return j;
}

inline ConjectureReport conjectures_from_json(const Json& j)
{
    ConjectureReport c;
    if (!j.at("eq1").is_null()) {
        const auto& e = j.at("eq1");
        Eq1Record r;
        r.a_n_minus_2 = rat(e.at("a_n_minus_2"));
        r.codim2_volume = rat(e.at("codim2_volume"));
        r.third_of_codim2_vol = rat(e.at("third_of_codim2_vol"));
        r.skew_ridges = e.at("skew_ridges").get<std::size_t>();
        r.holds = e.at("holds").get<bool>();
        r.equality = e.at("equality").get<bool>();
        c.eq1 = r;
    }
    c.conj11_hypothesis = j.at("conj11_hypothesis").get<bool>();
    for (const auto& f : j.at("conj11")) {
        FacetFeasibility ff{f.at("facet").get<std::size_t>(), integers(f.at("normal")), f.at("feasible").get<bool>(),
                            std::nullopt};
        if (!f.at("witness").is_null())
            ff.witness = rationals(f.at("witness"));
        c.conj11.push_back(std::move(ff));
    }
    const auto& eb = j.at("ehrhart_bound");
    c.ehrhart_bound.volume = rat(eb.at("volume"));
    c.ehrhart_bound.bound = rat(eb.at("bound"));
    c.ehrhart_bound.holds = eb.at("holds").get<bool>();
    c.ehrhart_bound.equality = eb.at("equality").get<bool>();
    c.ehrhart_bound.simplex_shape = eb.at("simplex_shape").get<bool>();
    c.ehrhart_bound.known_bound = rat(eb.at("known_bound"));
    c.ehrhart_bound.known_bound_holds = eb.at("known_bound_holds").get<bool>();
    c.ehrhart_bound.origin_unique_interior = eb.at("origin_unique_interior").get<bool>();
    const auto& b = j.at("bishop");
    c.bishop.index = BigInt(b.at("index").get<std::string>());
    c.bishop.degree = rat(b.at("degree"));
    c.bishop.lhs = rat(b.at("lhs"));
    c.bishop.bound = BigInt(b.at("bound").get<std::string>());
    c.bishop.holds = b.at("holds").get<bool>();
    c.bishop.sharp = b.at("sharp").get<bool>();
    return c;
}

} // namespace detail

inline Json to_json(const AnalysisReport& r)
{
    Json j;
    j["name"] = r.name;
    j["dim"] = r.dim;
    j["n_vertices"] = r.n_vertices;
    j["is_smooth_fano"] = r.is_smooth_fano;
    if (!r.is_smooth_fano)
        j["smoothness_certificate"] = r.smoothness_certificate;
    j["is_reflexive"] = r.is_reflexive;
    if (r.error)
        j["error"] = *r.error;
    if (r.verdicts) {
        const auto& v = *r.verdicts;
        j["barycenter"] = detail::strings(v.barycenter);
        j["is_ke"] = v.is_ke;
        j["is_symmetric"] = v.is_symmetric;
        j["fixed_dim"] = v.fixed_dim;
        j["fixed_generator"] = detail::string_rows(v.fixed_generator);
        j["vertex_sum"] = detail::strings(v.vertex_sum);
        j["group_order"] = v.group_order;
        j["alpha"] = to_string(v.alpha);
        j["lct"] = to_string(v.lct);
        j["tian_holds"] = v.tian_holds;
        j["volume"] = to_string(v.volume);
        j["degree"] = to_string(v.degree);
        j["fano_index"] = to_string(v.fano_index);
    }
    if (r.ehrhart)
        j["ehrhart"] = detail::strings(*r.ehrhart);
    if (r.conjectures)
        j["conjectures"] = detail::to_json(*r.conjectures);
    if (r.timing_seconds)
        j["timing"] = *r.timing_seconds;
    return j;
}

inline AnalysisReport report_from_json(const Json& j)
{
    AnalysisReport r;
    r.name = j.at("name").get<std::string>();
    r.dim = j.at("dim").get<std::size_t>();
    r.n_vertices = j.at("n_vertices").get<std::size_t>();
    r.is_smooth_fano = j.at("is_smooth_fano").get<bool>();
    if (j.contains("smoothness_certificate"))
        r.smoothness_certificate = j.at("smoothness_certificate").get<std::string>();
    r.is_reflexive = j.at("is_reflexive").get<bool>();
    if (j.contains("error"))
        r.error = j.at("error").get<std::string>();
    if (j.contains("is_ke")) {
        Verdicts v;
        v.barycenter = detail::rationals(j.at("barycenter"));
        v.is_ke = j.at("is_ke").get<bool>();
        v.is_symmetric = j.at("is_symmetric").get<bool>();
        v.fixed_dim = j.at("fixed_dim").get<std::size_t>();
        for (const auto& row : j.at("fixed_generator"))
            v.fixed_generator.push_back(detail::integers(row));
        v.vertex_sum = detail::integers(j.at("vertex_sum"));
        v.group_order = j.at("group_order").get<std::size_t>();
        v.alpha = detail::rat(j.at("alpha"));
        v.lct = detail::rat(j.at("lct"));
        v.tian_holds = j.at("tian_holds").get<bool>();
        v.volume = detail::rat(j.at("volume"));
        v.degree = detail::rat(j.at("degree"));
        v.fano_index = BigInt(j.at("fano_index").get<std::string>());
        r.verdicts = std::move(v);
    }
    if (j.contains("ehrhart"))
        r.ehrhart = detail::rationals(j.at("ehrhart"));
    if (j.contains("conjectures"))
        r.conjectures = detail::conjectures_from_json(j.at("conjectures"));
    if (j.contains("timing"))
        r.timing_seconds = j.at("timing").get<double>();
    return r;
}

inline std::vector<AnalysisReport> reports_from_json(const std::string& text)
{
    std::vector<AnalysisReport> out;
    for (const auto& j : Json::parse(text))
        out.push_back(report_from_json(j));
    return out;
}

enum class Format { json, csv };

inline const char* csv_header()
{
    return "name,dim,n_vertices,is_smooth_fano,is_reflexive,is_ke,is_symmetric,fixed_dim,alpha,lct";
}

inline std::string emit(const std::vector<AnalysisReport>& reports, Format format)
{
    if (format == Format::json) {
        Json a = Json::array();
        for (const auto& r : reports)
            a.push_back(to_json(r));
        return a.dump(2) + "\n";
    }
    auto b = [](bool x) { return x ? "true" : "false"; };
    std::ostringstream os;
    os << csv_header() << "\n";
    for (const auto& r : reports) {
        os << r.name << "," << r.dim << "," << r.n_vertices << "," << b(r.is_smooth_fano) << "," << b(r.is_reflexive);
        if (r.verdicts) {
            const auto& v = *r.verdicts;
            os << "," << b(v.is_ke) << "," << b(v.is_symmetric) << "," << v.fixed_dim << "," << to_string(v.alpha)
               << "," << to_string(v.lct);
        } else {
            os << ",,,,,";
        }
        os << "\n";
    }
    return os.str();
}

} // namespace reflex
