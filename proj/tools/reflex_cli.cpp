// reflex: command-line front end for the smooth toric Fano toolkit.
//
// Exit status is 0 whenever the requested analysis ran, whatever the verdicts;
// 1 on usage errors, unreadable files and parse errors.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "reflex/reflex.hpp"

namespace {

using namespace reflex;

PolytopeFile load(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

void write_output(const std::string& text, const std::string& out)
{
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot write '" + out + "'");
    f << text;
}

const PolytopeEntry& select(const PolytopeFile& pf, const std::string& name)
{
    const PolytopeEntry* e = pf.find(name);
    if (!e)
        throw std::runtime_error("no polytope named '" + name + "'");
    return *e;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact Kaehler-Einstein, symmetry and alpha-invariant checks for smooth Fano polytopes"};
    app.require_subcommand(1);

    std::string file, name, out, format = "json";
    std::size_t jobs = 1, max_dim = default_ehrhart_max_dim;
    bool conjectures = false, timing = false;

    auto* check = app.add_subcommand("check", "analyze one polytope (or every polytope) of a file, JSON to stdout");
    check->add_option("FILE", file, "polytope file")->required();
    check->add_option("--name", name, "entry to analyze; default is all entries");
    check->add_flag("--conjectures", conjectures, "also run the conjecture checks");
    check->add_option("--ehrhart-max-dim", max_dim, "largest dimension for Ehrhart-based checks");

    auto* scan_cmd = app.add_subcommand("scan", "analyze every polytope of a file");
    scan_cmd->add_option("FILE", file, "polytope file")->required();
    scan_cmd->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    scan_cmd->add_flag("--conjectures", conjectures, "also run the conjecture checks");
    scan_cmd->add_option("--ehrhart-max-dim", max_dim, "largest dimension for Ehrhart-based checks");
    scan_cmd->add_option("--out", out, "output path; default stdout");
    scan_cmd->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    scan_cmd->add_flag("--timing", timing, "add wall-clock seconds per entry (output is then not reproducible)");

    auto* dual_cmd = app.add_subcommand("dual", "print the dual polytope in file format");
    dual_cmd->add_option("FILE", file, "polytope file")->required();
    dual_cmd->add_option("--name", name, "entry to dualize")->required();

    auto* fixtures_cmd = app.add_subcommand("fixtures", "write the built-in corpus in file format");
    fixtures_cmd->add_option("--out", out, "output path; default stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        ScanOptions opts;
        opts.jobs = jobs;
        opts.conjectures = conjectures;
        opts.ehrhart_max_dim = max_dim;
        opts.timing = timing;

        if (*check) {
            PolytopeFile pf = load(file);
            if (!name.empty())
                pf = PolytopeFile{{select(pf, name)}};
            std::cout << emit(scan(pf, opts), Format::json);
        } else if (*scan_cmd) {
            PolytopeFile pf = load(file);
            write_output(emit(scan(pf, opts), format == "csv" ? Format::csv : Format::json), out);
        } else if (*dual_cmd) {
            const PolytopeFile pf = load(file);
            const PolytopeEntry& e = select(pf, name);
            DualPair dp = dual(FanoPolytope::from_vertices(e.vertices));
            std::cout << format_entry({e.name + "_dual", e.dim, dp.p.vertices(), 0});
        } else if (*fixtures_cmd) {
            write_output(format_file(fixtures::corpus_file()), out);
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
