#include <catch2/catch_amalgamated.hpp>

#include <filesystem>

#include "skeleta/io.hpp"
#include "support/corpus.hpp"

using namespace skeleta;

namespace {

std::vector<std::string> corpus_paths(const std::string& sub) {
    std::vector<std::string> paths;
    for (const auto& e :
         std::filesystem::directory_iterator(testcorpus::data_dir() / sub))
        if (e.path().extension() == ".json") paths.push_back(e.path().string());
    std::sort(paths.begin(), paths.end());
    return paths;
}

std::string fixture(const std::string& name) {
    return (std::filesystem::path(SKELETA_FIXTURE_DIR) / name).string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("json documents parse") {
    auto doc = parse_polytope(R"({"vertices": [[2,-1],[-1,2],[-1,-1]]})", Format::json);
    REQUIRE(doc.ambient_rank == 2);
    REQUIRE(doc.vertices ==
            std::vector<std::vector<long long>>({{2, -1}, {-1, 2}, {-1, -1}}));
    REQUIRE(doc.interpretation == Interpretation::dual);
    auto named = parse_polytope(
        R"({"name": "t", "interpretation": "primal", "vertices": [[1,0],[0,1],[-1,-1]]})",
        Format::json);
    REQUIRE(named.name == "t");
    REQUIRE(named.interpretation == Interpretation::primal);
}

TEST_CASE("json documents are rejected with diagnostics") {
    auto reject = [](const std::string& body, const std::string& needle) {
        try {
            parse_polytope(body, Format::json);
            FAIL("expected rejection of " << body);
        } catch (const invalid_input& e) {
            INFO(e.what());
            REQUIRE(std::string(e.what()).find(needle) != std::string::npos);
        }
    };
    reject(R"({"vertices": [[1,0],[1,0]]})", "duplicate vertex");
    reject(R"({"vertices": [[1,0],[0,1,2]]})", "vertices[1]");
    reject(R"({"vertices": [[1,0],[0,1.5]]})", "vertices[1][1]");
    reject(R"({"vertices": "nope"})", "vertices");
    reject(R"([1,2])", "object");
    reject(R"({"vertices": [[1,0],[0,1)", "parse error");
}

TEST_CASE("text documents parse and are rejected with line numbers") {
    auto doc = parse_polytope("1 2\n-1\n1\n", Format::text);
    REQUIRE(doc.ambient_rank == 1);
    REQUIRE(doc.vertices == std::vector<std::vector<long long>>({{-1}, {1}}));

    auto reject = [](const std::string& body, const std::string& needle) {
        try {
            parse_polytope(body, Format::text);
            FAIL("expected rejection");
        } catch (const invalid_input& e) {
            INFO(e.what());
            REQUIRE(std::string(e.what()).find(needle) != std::string::npos);
        }
    };
    reject("", "empty");
    reject("2\n", "header");
    reject("2 2\n1 0\n", "expected 2 vertex rows");
    reject("2 2\n1 0\n0\n", "line 3");
    reject("2 2\n1 0\n0 1 7\n", "line 3");
    reject("2 2\n1 0\n0 1\n9 9\n", "extra line");
    reject("1 2\n1\n1\n", "duplicate");
}

TEST_CASE("parse-serialize-parse is the identity") {
    std::vector<std::string> bodies = {
        R"({"vertices": [[2,-1],[-1,2],[-1,-1]]})",
        R"({"name": "x", "vertices": [[1,0],[0,1],[-1,0],[0,-1]]})",
        R"({"interpretation": "primal", "vertices": [[1,0],[0,1],[-1,-1]]})",
    };
    for (const auto& body : bodies) {
        auto doc = parse_polytope(body, Format::json);
        auto again = parse_polytope(serialize_polytope(doc), Format::json);
        REQUIRE(doc == again);
    }
    for (const auto& path : corpus_paths("polygons")) {
        auto doc = parse_polytope(slurp(path), Format::json);
        REQUIRE(parse_polytope(serialize_polytope(doc), Format::json) == doc);
    }
}

TEST_CASE("format detection") {
    REQUIRE(detect_format(R"(  {"vertices": []})") == Format::json);
    REQUIRE(detect_format("2 3\n1 0\n") == Format::text);
}

TEST_CASE("pipeline on a document") {
    auto doc = parse_polytope(R"({"vertices": [[2,-1],[-1,2],[-1,-1]]})", Format::json);
    RunOptions options;
    options.with_verify = true;
    auto res = run_homology(doc, options);
    REQUIRE(res.reflexive);
    REQUIRE(res.facet_simplicial);
    REQUIRE(res.f_vector == std::vector<int>({3, 3}));
    REQUIRE(res.homology.betti == std::vector<long long>({1, 10}));
    REQUIRE(res.homology.euler == -9);
    REQUIRE(res.verification);
    REQUIRE(res.verification->overall);
    REQUIRE(res.timings.size() == 6);

    SECTION("primal interpretation dualizes first") {
        auto primal = parse_polytope(
            R"({"interpretation": "primal", "vertices": [[1,0],[0,1],[-1,-1]]})",
            Format::json);
        auto res2 = run_homology(primal, options);
        REQUIRE(res2.homology.betti == std::vector<long long>({1, 10}));
    }
    SECTION("integral ring carries torsion data") {
        RunOptions z;
        z.ring = Ring::integral;
        auto res3 = run_homology(doc, z);
        REQUIRE(res3.homology.ring == Ring::integral);
        REQUIRE(res3.homology.torsion.empty());
        REQUIRE_FALSE(res3.homology.degeneration_conjectured);
        REQUIRE(res3.homology.betti == std::vector<long long>({1, 10}));
    }
    SECTION("bad inputs raise invalid_input") {
        auto bad = parse_polytope(R"({"vertices": [[0,0],[1,0],[0,1]]})", Format::json);
        REQUIRE_THROWS_AS(run_homology(bad, options), invalid_input);
    }
}

TEST_CASE("result documents round-trip through json") {
    auto doc = parse_polytope(R"({"name": "t", "vertices": [[2,-1],[-1,2],[-1,-1]]})",
                              Format::json);
    for (bool with_verify : {false, true})
        for (Ring ring : {Ring::rational, Ring::integral}) {
            RunOptions options;
            options.ring = ring;
            options.with_verify = with_verify;
            auto res = run_homology(doc, options);
            auto parsed = result_from_json(to_json(res));
            REQUIRE(to_json(parsed) == to_json(res));
        }
}

TEST_CASE("batch over the polygon corpus") {
    auto paths = corpus_paths("polygons");
    REQUIRE(paths.size() == 16);
    BatchOptions options;
    options.jobs = 1;
    auto serial = run_batch(paths, options);
    REQUIRE(serial.exit_code == 0);
    REQUIRE(serial.rows.size() == 16);
    for (const auto& row : serial.rows) {
        INFO(row.name << ": " << row.detail);
        REQUIRE(row.status == "ok");
        REQUIRE(row.verify == "pass");
    }
    SECTION("output is identical regardless of worker count") {
        for (int jobs : {2, 4, 8}) {
            BatchOptions par = options;
            par.jobs = jobs;
            auto parallel = run_batch(paths, par);
            REQUIRE(format_batch(parallel, BatchOptions::Output::tsv) ==
                    format_batch(serial, BatchOptions::Output::tsv));
            REQUIRE(format_batch(parallel, BatchOptions::Output::jsonl) ==
                    format_batch(serial, BatchOptions::Output::jsonl));
        }
    }
}

TEST_CASE("text fixtures flow through the pipeline") {
    auto doc = parse_polytope(slurp(fixture("triangle.txt")), Format::text);
    RunOptions options;
    auto res = run_homology(doc, options);
    REQUIRE(res.homology.betti == std::vector<long long>({1, 10}));

    // batch resolves .txt inputs by extension
    BatchOptions batch_options;
    auto batch = run_batch({fixture("segment.txt"), fixture("triangle.txt")}, batch_options);
    REQUIRE(batch.rows[0].status == "ok");
    REQUIRE(batch.rows[0].betti == "2");
    REQUIRE(batch.rows[1].betti == "1,10");
}

TEST_CASE("batch isolates failures and reports strict exit codes") {
    std::vector<std::string> paths = {fixture("cube.json"),
                                      corpus_paths("threefolds").front(),
                                      fixture("missing-file.json")};
    BatchOptions options;
    auto lenient = run_batch(paths, options);
    REQUIRE(lenient.exit_code == 0);
    REQUIRE(lenient.rows[0].status == "error");
    REQUIRE(lenient.rows[1].status == "ok");
    REQUIRE(lenient.rows[2].status == "error");

    options.strict = true;
    REQUIRE(run_batch(paths, options).exit_code == 2);
    REQUIRE(run_batch({corpus_paths("threefolds").front()}, options).exit_code == 0);
}
