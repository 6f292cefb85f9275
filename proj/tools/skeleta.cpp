// skeleta: homology of the mirror skeleton attached to a reflexive lattice
// polytope with simplicial facets.
//
//   skeleta check <file>        validate an input polytope
//   skeleta strata <file>       print the strata and chart tables
//   skeleta homology <file>     build the chain complex and report homology
//   skeleta batch <files...>    one summary row per input, optional workers
//
// Exit codes: 0 success, 2 invalid input (parse/reflexivity/simpliciality),
// 3 verification mismatch under --strict, 1 internal error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "skeleta/io.hpp"
#include "skeleta/skeleton.hpp"

namespace {

using namespace skeleta;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw invalid_input("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Format resolve_format(const std::string& choice, const std::string& path,
                      const std::string& bytes) {
    if (choice == "json") return Format::json;
    if (choice == "text") return Format::text;
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") return Format::json;
    if (path.size() >= 4 && path.substr(path.size() - 4) == ".txt") return Format::text;
    return detect_format(bytes);
}

PolytopeDocument load_document(const std::string& path, const std::string& format_choice,
                               bool primal) {
    std::string bytes = read_file(path);
    PolytopeDocument doc = parse_polytope(bytes, resolve_format(format_choice, path, bytes));
    if (primal) doc.interpretation = Interpretation::primal;
    return doc;
}

std::string group_structure(int torus_rank, const std::vector<Int>& factors) {
    std::ostringstream os;
    bool first = true;
    if (torus_rank > 0) {
        os << "T^" << torus_rank;
        first = false;
    }
    for (const auto& f : factors)
        if (f > 1) {
            os << (first ? "" : " x ") << "Z/" << f;
            first = false;
        }
    if (first) os << "point";
    return os.str();
}

int run_check(const std::string& path, const std::string& format_choice, bool primal) {
    PolytopeDocument doc = load_document(path, format_choice, primal);
    LatticePolytope p = to_polytope(doc);
    bool reflexive = is_reflexive(p);
    bool fsimp = is_facet_simplicial(p);
    std::cout << "name: " << (doc.name.empty() ? "(unnamed)" : doc.name) << "\n"
              << "ambient rank: " << p.ambient_rank() << "\n"
              << "vertices: " << p.vertices().size() << "\n"
              << "facets: " << p.facets().size() << "\n"
              << "reflexive: " << (reflexive ? "yes" : "no") << "\n"
              << "facet-simplicial: " << (fsimp ? "yes" : "no") << "\n"
              << "vertex-simplicial: " << (is_vertex_simplicial(p) ? "yes" : "no") << "\n";
    if (reflexive && fsimp) {
        auto fl = enumerate_faces(p);
        std::cout << "f-vector: (" << detail::join_int(fl.f_vector()) << ")\n"
                  << "normalized volume: " << normalized_volume(p) << "\n";
        return 0;
    }
    std::cerr << "error: input is not usable (needs a reflexive, facet-simplicial polytope)\n";
    return 2;
}

int run_strata(const std::string& path, const std::string& format_choice, bool primal) {
    PolytopeDocument doc = load_document(path, format_choice, primal);
    LatticePolytope p = to_polytope(doc);
    auto st = strata(p);
    std::cout << "strata (" << st.size() << "):\n";
    std::cout << "  dim  vertices         group            components\n";
    for (const auto& [f, g] : st) {
        std::ostringstream verts;
        verts << "{" << detail::join_int(f.vertex_indices) << "}";
        std::string structure = group_structure(g.torus_rank, g.invariant_factors);
        std::cout << "  " << f.dim << "    " << verts.str();
        for (std::size_t pad = verts.str().size(); pad < 16; ++pad) std::cout << ' ';
        std::cout << " " << structure;
        for (std::size_t pad = structure.size(); pad < 16; ++pad) std::cout << ' ';
        std::cout << " " << g.component_order << "\n";
    }
    std::cout << "vertex charts:\n";
    auto fl = enumerate_faces(p);
    for (int id = 0; id < fl.face_count(); ++id) {
        const Face& f = fl.face(id);
        if (f.dim != 0) continue;
        std::cout << "  chart at vertex {" << detail::join_int(f.vertex_indices) << "}:";
        for (const auto& g : chart(p, f))
            std::cout << " {" << detail::join_int(g.vertex_indices) << "}";
        std::cout << "\n";
    }
    return 0;
}

int run_homology_cmd(const std::string& path, const std::string& format_choice, bool primal,
                     const std::string& ring, bool with_verify, bool strict, bool as_json) {
    PolytopeDocument doc = load_document(path, format_choice, primal);
    RunOptions options;
    options.ring = ring == "z" ? Ring::integral : Ring::rational;
    options.with_verify = with_verify || strict;
    ResultDocument res = run_homology(doc, options);
    if (as_json)
        std::cout << to_json(res).dump(2) << "\n";
    else
        std::cout << to_table(res);
    if (strict && res.verification && !res.verification->overall) return 3;
    return 0;
}

int run_batch_cmd(const std::vector<std::string>& paths, int jobs, bool jsonl, bool strict,
                  const std::string& ring) {
    BatchOptions options;
    options.jobs = jobs;
    options.strict = strict;
    options.output = jsonl ? BatchOptions::Output::jsonl : BatchOptions::Output::tsv;
    options.ring = ring == "z" ? Ring::integral : Ring::rational;
    BatchResult batch = run_batch(paths, options);
    std::cout << format_batch(batch, options.output);
    return batch.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"homology of mirror skeleta of reflexive polytopes"};
    app.require_subcommand(1);

    std::string file, format_choice = "auto", ring = "q";
    bool primal = false, with_verify = false, strict = false;

    auto add_input_opts = [&](CLI::App* cmd) {
        cmd->add_option("file", file, "input polytope (json or text)")->required();
        cmd->add_option("--format", format_choice, "input format")
            ->check(CLI::IsMember({"auto", "json", "text"}));
        cmd->add_flag("--primal", primal,
                      "input is the primal polytope; use its polar dual");
    };

    CLI::App* check = app.add_subcommand("check", "validate an input polytope");
    add_input_opts(check);

    CLI::App* strata_cmd = app.add_subcommand("strata", "print strata and chart tables");
    add_input_opts(strata_cmd);

    CLI::App* hom = app.add_subcommand("homology", "compute the homology report");
    add_input_opts(hom);
    hom->add_option("--ring", ring, "coefficient ring")->check(CLI::IsMember({"q", "z"}));
    hom->add_flag("--verify", with_verify, "attach independent verification");
    hom->add_flag("--strict", strict, "exit 3 when verification fails (implies --verify)");
    bool as_json = false, as_table = false;
    hom->add_flag("--json", as_json, "machine-readable output");
    hom->add_flag("--table", as_table, "human-readable output (default)");

    CLI::App* batch = app.add_subcommand("batch", "summarize many polytopes");
    std::vector<std::string> paths;
    int jobs = 1;
    bool tsv = false, jsonl = false;
    batch->add_option("paths", paths, "input files")->required();
    batch->add_option("--jobs", jobs, "worker count")->check(CLI::PositiveNumber);
    batch->add_flag("--tsv", tsv, "tab-separated output (default)");
    batch->add_flag("--jsonl", jsonl, "one json object per row");
    batch->add_flag("--strict", strict, "nonzero exit if any row fails");
    batch->add_option("--ring", ring, "coefficient ring")->check(CLI::IsMember({"q", "z"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*check) return run_check(file, format_choice, primal);
        if (*strata_cmd) return run_strata(file, format_choice, primal);
        if (*hom) return run_homology_cmd(file, format_choice, primal, ring, with_verify,
                                          strict, as_json);
        if (*batch) return run_batch_cmd(paths, jobs, jsonl, strict, ring);
    } catch (const invalid_input& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const internal_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
