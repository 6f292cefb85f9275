#pragma once

// Ingestion, reporting and the batch driver.  Two input formats: a JSON
// object {"name"?, "vertices": [[...]], "interpretation"?: "dual"|"primal"}
// and a plain text form "<d> <p>" followed by p rows of d integers.  The
// default reading of an input is the facet-simplicial side of a reflexive
// pair; "primal" inputs are dualized before the pipeline runs.  Batch
// output is one row per input in input order, byte-identical regardless of
// worker count.

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "skeleta/oracles.hpp"

namespace skeleta {

enum class Format { json, text };
enum class Interpretation { dual, primal };

struct PolytopeDocument {
    std::string name;  // may be empty
    int ambient_rank = 0;
    std::vector<std::vector<long long>> vertices;
    Interpretation interpretation = Interpretation::dual;

    bool operator==(const PolytopeDocument&) const = default;
};

namespace detail {

inline void reject_duplicates(const std::vector<std::vector<long long>>& verts,
                              const char* what) {
    for (std::size_t i = 0; i < verts.size(); ++i)
        for (std::size_t j = i + 1; j < verts.size(); ++j)
            if (verts[i] == verts[j])
                throw invalid_input(std::string(what) + ": duplicate vertex at rows " +
                                    std::to_string(i) + " and " + std::to_string(j));
}

inline PolytopeDocument parse_polytope_json(std::string_view bytes) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(bytes);
    } catch (const nlohmann::json::parse_error& e) {
        throw invalid_input(std::string("json: ") + e.what());
    }
    if (!doc.is_object()) throw invalid_input("json: top level must be an object");
    if (!doc.contains("vertices") || !doc["vertices"].is_array())
        throw invalid_input("json: missing \"vertices\" array");
    PolytopeDocument out;
    if (doc.contains("name")) {
        if (!doc["name"].is_string()) throw invalid_input("json: \"name\" must be a string");
        out.name = doc["name"].get<std::string>();
    }
    if (doc.contains("interpretation")) {
        auto s = doc["interpretation"].is_string() ? doc["interpretation"].get<std::string>()
                                                   : std::string();
        if (s == "dual")
            out.interpretation = Interpretation::dual;
        else if (s == "primal")
            out.interpretation = Interpretation::primal;
        else
            throw invalid_input("json: \"interpretation\" must be \"dual\" or \"primal\"");
    }
    const auto& rows = doc["vertices"];
    if (rows.empty()) throw invalid_input("json: \"vertices\" is empty");
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!rows[i].is_array())
            throw invalid_input("json: vertices[" + std::to_string(i) + "] is not an array");
        std::vector<long long> v;
        for (std::size_t j = 0; j < rows[i].size(); ++j) {
            if (!rows[i][j].is_number_integer())
                throw invalid_input("json: vertices[" + std::to_string(i) + "][" +
                                    std::to_string(j) + "] is not an integer");
            v.push_back(rows[i][j].get<long long>());
        }
        if (v.empty()) throw invalid_input("json: vertices[" + std::to_string(i) + "] is empty");
        if (i > 0 && v.size() != out.vertices[0].size())
            throw invalid_input("json: vertices[" + std::to_string(i) + "] has " +
                                std::to_string(v.size()) + " entries, expected " +
                                std::to_string(out.vertices[0].size()));
        out.vertices.push_back(std::move(v));
    }
    out.ambient_rank = static_cast<int>(out.vertices[0].size());
    reject_duplicates(out.vertices, "json");
    return out;
}

inline PolytopeDocument parse_polytope_text(std::string_view bytes) {
    std::istringstream in{std::string(bytes)};
    std::string line;
    int lineno = 0;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++lineno;
            if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
        }
        return false;
    };
    if (!next_line()) throw invalid_input("text: empty input");
    PolytopeDocument out;
    int count = 0;
    {
        std::istringstream hdr(line);
        std::string extra;
        if (!(hdr >> out.ambient_rank >> count) || (hdr >> extra))
            throw invalid_input("text line " + std::to_string(lineno) +
                                ": expected header \"<dimension> <vertex count>\"");
    }
    if (out.ambient_rank < 1 || count < 1)
        throw invalid_input("text line " + std::to_string(lineno) +
                            ": dimension and vertex count must be positive");
    for (int i = 0; i < count; ++i) {
        if (!next_line())
            throw invalid_input("text: expected " + std::to_string(count) +
                                " vertex rows, got " + std::to_string(i));
        std::istringstream row(line);
        std::vector<long long> v(out.ambient_rank);
        std::string extra;
        for (int j = 0; j < out.ambient_rank; ++j)
            if (!(row >> v[j]))
                throw invalid_input("text line " + std::to_string(lineno) + ": expected " +
                                    std::to_string(out.ambient_rank) + " integers");
        if (row >> extra)
            throw invalid_input("text line " + std::to_string(lineno) +
                                ": trailing data after " + std::to_string(out.ambient_rank) +
                                " integers");
        out.vertices.push_back(std::move(v));
    }
    if (next_line())
        throw invalid_input("text line " + std::to_string(lineno) + ": unexpected extra line");
    reject_duplicates(out.vertices, "text");
    return out;
}

}  // namespace detail

inline PolytopeDocument parse_polytope(std::string_view bytes, Format format) {
    return format == Format::json ? detail::parse_polytope_json(bytes)
                                  : detail::parse_polytope_text(bytes);
}

// A document whose first non-space byte is '{' is JSON.
inline Format detect_format(std::string_view bytes) {
    auto pos = bytes.find_first_not_of(" \t\r\n");
    return pos != std::string_view::npos && bytes[pos] == '{' ? Format::json : Format::text;
}

inline std::string serialize_polytope(const PolytopeDocument& doc) {
    nlohmann::json out;
    if (!doc.name.empty()) out["name"] = doc.name;
    out["interpretation"] = doc.interpretation == Interpretation::primal ? "primal" : "dual";
    out["vertices"] = doc.vertices;
    return out.dump();
}

// Realize the document as the facet-simplicial side: primal inputs are
// replaced by their polar dual before anything else happens.
inline LatticePolytope to_polytope(const PolytopeDocument& doc) {
    std::vector<std::vector<Int>> verts;
    verts.reserve(doc.vertices.size());
    for (const auto& row : doc.vertices) verts.emplace_back(row.begin(), row.end());
    LatticePolytope p(doc.ambient_rank, std::move(verts));
    if (doc.interpretation == Interpretation::primal) return polar_dual(p);
    return p;
}

struct RunOptions {
    Ring ring = Ring::rational;
    bool with_verify = false;
};

struct FaceGroupRow {
    std::vector<int> vertex_indices;
    int dim = 0;
    int torus_rank = 0;
    std::vector<long long> invariant_factors;
    long long component_order = 1;

    bool operator==(const FaceGroupRow&) const = default;
};

struct PhaseTiming {
    std::string phase;
    double milliseconds = 0;
};

struct ResultDocument {
    PolytopeDocument polytope;
    bool reflexive = false;
    bool facet_simplicial = false;
    bool vertex_simplicial = false;
    std::vector<int> f_vector;
    std::vector<FaceGroupRow> face_groups;
    HomologyReport homology;
    std::optional<VerificationReport> verification;
    std::vector<PhaseTiming> timings;
};

inline ResultDocument run_homology(const PolytopeDocument& doc, const RunOptions& options) {
    using clock = std::chrono::steady_clock;
    ResultDocument out;
    out.polytope = doc;
    auto timed = [&out](const char* phase, auto&& fn) {
        auto t0 = clock::now();
        if constexpr (std::is_void_v<decltype(fn())>) {
            fn();
            out.timings.push_back(
                {phase, std::chrono::duration<double, std::milli>(clock::now() - t0).count()});
        } else {
            auto value = fn();
            out.timings.push_back(
                {phase, std::chrono::duration<double, std::milli>(clock::now() - t0).count()});
            return value;
        }
    };

    LatticePolytope p = timed("check", [&] {
        LatticePolytope q = to_polytope(doc);
        out.reflexive = is_reflexive(q);
        out.facet_simplicial = is_facet_simplicial(q);
        out.vertex_simplicial = is_vertex_simplicial(q);
        if (!out.reflexive) throw invalid_input("polytope is not reflexive");
        if (!out.facet_simplicial) throw invalid_input("polytope is not facet-simplicial");
        return q;
    });
    FaceLattice fl = timed("faces", [&] {
        FaceLattice lattice = enumerate_faces(p);
        out.f_vector = lattice.f_vector();
        return lattice;
    });
    std::vector<FaceGroupData> groups =
        timed("groups", [&] { return detail::face_groups_of(p, fl); });
    for (const auto& g : groups) {
        FaceGroupRow row;
        row.vertex_indices = g.face.vertex_indices;
        row.dim = g.face.dim;
        row.torus_rank = g.torus_rank;
        for (const auto& f : g.invariant_factors)
            row.invariant_factors.push_back(f.convert_to<long long>());
        row.component_order = g.component_order.convert_to<long long>();
        out.face_groups.push_back(std::move(row));
    }
    BigradedComplex c = timed(
        "complex", [&] { return assemble_complex(p, std::move(fl), std::move(groups)); });

    std::optional<HomologyReport> over_q, over_z;
    timed("homology", [&] {
        if (options.ring == Ring::rational || options.with_verify) over_q = homology_q(c);
        if (options.ring == Ring::integral || options.with_verify) over_z = homology_z(c);
    });
    out.homology = options.ring == Ring::rational ? *over_q : *over_z;
    if (options.with_verify)
        timed("verify",
              [&] { out.verification = verify_with(p, c, *over_q, *over_z, doc.name); });
    return out;
}

// ---- serialization ----------------------------------------------------

inline nlohmann::json to_json(const HomologyReport& rep) {
    nlohmann::json out;
    out["ring"] = rep.ring == Ring::rational ? "q" : "z";
    out["top_dim"] = rep.top_dim;
    out["e2_dims"] = rep.e2_dims;
    out["betti"] = rep.betti;
    out["euler"] = rep.euler;
    out["degeneration_conjectured"] = rep.degeneration_conjectured;
    auto torsion = nlohmann::json::array();
    for (const auto& [key, factors] : rep.torsion) {
        nlohmann::json item;
        item["deg"] = key.first;
        item["r"] = key.second;
        std::vector<long long> fs;
        for (const auto& f : factors) fs.push_back(f.convert_to<long long>());
        item["factors"] = fs;
        torsion.push_back(item);
    }
    out["torsion"] = torsion;
    return out;
}

inline HomologyReport homology_from_json(const nlohmann::json& in) {
    HomologyReport rep;
    rep.ring = in.at("ring").get<std::string>() == "q" ? Ring::rational : Ring::integral;
    rep.top_dim = in.at("top_dim").get<int>();
    rep.e2_dims = in.at("e2_dims").get<std::vector<std::vector<long long>>>();
    rep.betti = in.at("betti").get<std::vector<long long>>();
    rep.euler = in.at("euler").get<long long>();
    rep.degeneration_conjectured = in.at("degeneration_conjectured").get<bool>();
    for (const auto& item : in.at("torsion")) {
        std::vector<Int> fs;
        for (auto f : item.at("factors").get<std::vector<long long>>()) fs.emplace_back(f);
        rep.torsion[{item.at("deg").get<int>(), item.at("r").get<int>()}] = std::move(fs);
    }
    return rep;
}

inline nlohmann::json to_json(const VerificationReport& rep) {
    nlohmann::json out;
    out["polytope"] = rep.polytope;
    out["overall"] = rep.overall ? "pass" : "fail";
    auto checks = nlohmann::json::array();
    for (const auto& ch : rep.checks)
        checks.push_back({{"name", ch.name},
                          {"expected", ch.expected},
                          {"computed", ch.computed},
                          {"pass", ch.pass}});
    out["checks"] = checks;
    return out;
}

inline VerificationReport verification_from_json(const nlohmann::json& in) {
    VerificationReport rep;
    rep.polytope = in.at("polytope").get<std::string>();
    rep.overall = in.at("overall").get<std::string>() == "pass";
    for (const auto& item : in.at("checks"))
        rep.checks.push_back({item.at("name").get<std::string>(),
                              item.at("expected").get<std::string>(),
                              item.at("computed").get<std::string>(),
                              item.at("pass").get<bool>()});
    return rep;
}

inline nlohmann::json to_json(const ResultDocument& res) {
    nlohmann::json out;
    out["polytope"] = nlohmann::json::parse(serialize_polytope(res.polytope));
    out["reflexive"] = res.reflexive;
    out["facet_simplicial"] = res.facet_simplicial;
    out["vertex_simplicial"] = res.vertex_simplicial;
    out["f_vector"] = res.f_vector;
    auto groups = nlohmann::json::array();
    for (const auto& row : res.face_groups)
        groups.push_back({{"vertices", row.vertex_indices},
                          {"dim", row.dim},
                          {"torus_rank", row.torus_rank},
                          {"invariant_factors", row.invariant_factors},
                          {"component_order", row.component_order}});
    out["face_groups"] = groups;
    out["homology"] = to_json(res.homology);
    if (res.verification) out["verification"] = to_json(*res.verification);
    auto timings = nlohmann::json::array();
    for (const auto& t : res.timings)
        timings.push_back({{"phase", t.phase}, {"ms", t.milliseconds}});
    out["timings"] = timings;
    return out;
}

inline ResultDocument result_from_json(const nlohmann::json& in) {
    ResultDocument res;
    res.polytope = detail::parse_polytope_json(in.at("polytope").dump());
    res.reflexive = in.at("reflexive").get<bool>();
    res.facet_simplicial = in.at("facet_simplicial").get<bool>();
    res.vertex_simplicial = in.at("vertex_simplicial").get<bool>();
    res.f_vector = in.at("f_vector").get<std::vector<int>>();
    for (const auto& item : in.at("face_groups")) {
        FaceGroupRow row;
        row.vertex_indices = item.at("vertices").get<std::vector<int>>();
        row.dim = item.at("dim").get<int>();
        row.torus_rank = item.at("torus_rank").get<int>();
        row.invariant_factors = item.at("invariant_factors").get<std::vector<long long>>();
        row.component_order = item.at("component_order").get<long long>();
        res.face_groups.push_back(std::move(row));
    }
    res.homology = homology_from_json(in.at("homology"));
    if (in.contains("verification"))
        res.verification = verification_from_json(in.at("verification"));
    for (const auto& item : in.at("timings"))
        res.timings.push_back(
            {item.at("phase").get<std::string>(), item.at("ms").get<double>()});
    return res;
}

namespace detail {

inline std::string join_int(const std::vector<int>& v, const char* sep = ",") {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? sep : "") << v[i];
    return os.str();
}

}  // namespace detail

inline std::string to_table(const ResultDocument& res) {
    std::ostringstream os;
    os << "polytope: " << (res.polytope.name.empty() ? "(unnamed)" : res.polytope.name)
       << "  rank " << res.polytope.ambient_rank << ", " << res.polytope.vertices.size()
       << " vertices\n";
    os << "reflexive: " << (res.reflexive ? "yes" : "no")
       << "  facet-simplicial: " << (res.facet_simplicial ? "yes" : "no")
       << "  vertex-simplicial: " << (res.vertex_simplicial ? "yes" : "no") << "\n";
    os << "f-vector: (" << detail::join_int(res.f_vector) << ")\n";
    os << "face groups:\n";
    os << "  dim  vertices        torus rank  invariant factors  components\n";
    for (const auto& row : res.face_groups) {
        std::ostringstream verts, factors;
        verts << "{" << detail::join_int(row.vertex_indices) << "}";
        for (std::size_t i = 0; i < row.invariant_factors.size(); ++i)
            factors << (i ? "," : "") << row.invariant_factors[i];
        os << "  " << row.dim << "    " << verts.str();
        for (std::size_t pad = verts.str().size(); pad < 15; ++pad) os << ' ';
        os << " " << row.torus_rank << "           (" << factors.str() << ")";
        for (std::size_t pad = factors.str().size(); pad < 12; ++pad) os << ' ';
        os << "  " << row.component_order << "\n";
    }
    os << "page dims (deg, r) -> rank:\n";
    for (int deg = 0; deg < static_cast<int>(res.homology.e2_dims.size()); ++deg)
        for (int r = 0; r < static_cast<int>(res.homology.e2_dims[deg].size()); ++r)
            os << "  (" << deg << "," << r << ") -> " << res.homology.e2_dims[deg][r] << "\n";
    os << "betti";
    if (res.homology.degeneration_conjectured) os << " (assumes rational degeneration)";
    os << ":";
    for (auto b : res.homology.betti) os << " " << b;
    os << "\n";
    if (res.homology.ring == Ring::integral) {
        os << "torsion:";
        if (res.homology.torsion.empty())
            os << " none\n";
        else {
            os << "\n";
            for (const auto& [key, fs] : res.homology.torsion) {
                os << "  (" << key.first << "," << key.second << "):";
                for (const auto& f : fs) os << " " << f;
                os << "\n";
            }
        }
    }
    os << "euler characteristic: " << res.homology.euler << "\n";
    if (res.verification) {
        os << "verification: " << (res.verification->overall ? "pass" : "FAIL") << "\n";
        for (const auto& ch : res.verification->checks)
            os << "  " << (ch.pass ? "pass" : "FAIL") << "  " << ch.name << " (expected "
               << ch.expected << ", computed " << ch.computed << ")\n";
    }
    os << "timings:";
    for (const auto& t : res.timings) os << " " << t.phase << " " << t.milliseconds << "ms";
    os << "\n";
    return os.str();
}

// ---- batch driver ------------------------------------------------------

struct BatchOptions {
    int jobs = 1;
    bool strict = false;
    enum class Output { tsv, jsonl } output = Output::tsv;
    Ring ring = Ring::rational;
};

struct BatchRow {
    std::string name;
    std::string status;  // "ok" or "error"
    std::string f_vector;
    std::string betti;
    std::string euler;
    std::string verify;  // "pass" / "fail" / "-"
    std::string detail;  // error message or "-"
};

struct BatchResult {
    std::vector<BatchRow> rows;
    int exit_code = 0;
};

inline BatchResult run_batch(const std::vector<std::string>& paths,
                             const BatchOptions& options) {
    enum class Failure { none, verify_mismatch, bad_input, internal };
    std::vector<BatchRow> rows(paths.size());
    std::vector<Failure> failures(paths.size(), Failure::none);

    auto work_on = [&](std::size_t i) {
        const std::string& path = paths[i];
        BatchRow& row = rows[i];
        row.name = std::filesystem::path(path).stem().string();
        row.f_vector = row.betti = row.euler = row.verify = row.detail = "-";
        try {
            std::ifstream in(path, std::ios::binary);
            if (!in) throw invalid_input("cannot open file");
            std::ostringstream buf;
            buf << in.rdbuf();
            const std::string bytes = buf.str();
            Format fmt = std::filesystem::path(path).extension() == ".txt"
                             ? Format::text
                             : (std::filesystem::path(path).extension() == ".json"
                                    ? Format::json
                                    : detect_format(bytes));
            PolytopeDocument doc = parse_polytope(bytes, fmt);
            if (!doc.name.empty()) row.name = doc.name;
            RunOptions run;
            run.ring = options.ring;
            run.with_verify = true;
            ResultDocument res = run_homology(doc, run);
            row.status = "ok";
            row.f_vector = detail::join_int(res.f_vector);
            row.betti = detail::join_ll(res.homology.betti);
            row.euler = std::to_string(res.homology.euler);
            row.verify = res.verification->overall ? "pass" : "fail";
            if (!res.verification->overall) failures[i] = Failure::verify_mismatch;
        } catch (const invalid_input& e) {
            row.status = "error";
            row.detail = e.what();
            failures[i] = Failure::bad_input;
        } catch (const std::exception& e) {
            row.status = "error";
            row.detail = e.what();
            failures[i] = Failure::internal;
        }
    };

    const int jobs = std::max(1, std::min<int>(options.jobs, static_cast<int>(paths.size())));
    if (jobs <= 1) {
        for (std::size_t i = 0; i < paths.size(); ++i) work_on(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (int w = 0; w < jobs; ++w)
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < paths.size();
                     i = next.fetch_add(1))
                    work_on(i);
            });
        for (auto& t : pool) t.join();
    }

    BatchResult out;
    out.rows = std::move(rows);
    out.exit_code = 0;
    if (options.strict) {
        bool any_internal = false, any_bad = false, any_mismatch = false;
        for (auto f : failures) {
            any_internal |= f == Failure::internal;
            any_bad |= f == Failure::bad_input;
            any_mismatch |= f == Failure::verify_mismatch;
        }
        if (any_internal)
            out.exit_code = 1;
        else if (any_bad)
            out.exit_code = 2;
        else if (any_mismatch)
            out.exit_code = 3;
    }
    return out;
}

inline std::string format_batch(const BatchResult& batch, BatchOptions::Output output) {
    std::ostringstream os;
    if (output == BatchOptions::Output::tsv) {
        os << "name\tstatus\tf_vector\tbetti\teuler\tverify\tdetail\n";
        for (const auto& r : batch.rows)
            os << r.name << "\t" << r.status << "\t" << r.f_vector << "\t" << r.betti << "\t"
               << r.euler << "\t" << r.verify << "\t" << r.detail << "\n";
    } else {
        for (const auto& r : batch.rows) {
            nlohmann::json row = {{"name", r.name},     {"status", r.status},
                                  {"f_vector", r.f_vector}, {"betti", r.betti},
                                  {"euler", r.euler},   {"verify", r.verify},
                                  {"detail", r.detail}};
            os << row.dump() << "\n";
        }
    }
    return os.str();
}

}  // namespace skeleta
