#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "skeleta/homology.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace skeleta;
using testcorpus::from_rows;

namespace {

LatticePolytope big_triangle() { return from_rows({{2, -1}, {-1, 2}, {-1, -1}}); }
LatticePolytope octahedron() {
    return from_rows({{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}});
}

LatticePolytope transformed(const LatticePolytope& p, const IntMatrix& u) {
    std::vector<std::vector<Int>> verts;
    for (const auto& v : p.vertices()) {
        std::vector<Int> w(p.ambient_rank());
        for (int i = 0; i < p.ambient_rank(); ++i)
            for (int j = 0; j < p.ambient_rank(); ++j) w[i] += u(i, j) * v[j];
        verts.push_back(std::move(w));
    }
    return LatticePolytope(p.ambient_rank(), std::move(verts));
}

}  // namespace

TEST_CASE("degree-three triangle: page dimensions, boundary, homology") {
    auto c = build_complex(big_triangle());
    REQUIRE(c.top_dim == 1);
    REQUIRE(c.dim(0, 0) == 3);
    REQUIRE(c.dim(0, 1) == 3);
    REQUIRE(c.dim(1, 0) == 9);
    REQUIRE(c.dim(1, 1) == 0);
    REQUIRE(c.boundary_square_is_zero());

    SECTION("the edge-to-vertex boundary matrix, column blocks of three") {
        IntMatrix expected(3, 9);
        long long rows[3][9] = {{-1, -1, -1, -1, -1, -1, 0, 0, 0},
                                {1, 1, 1, 0, 0, 0, -1, -1, -1},
                                {0, 0, 0, 1, 1, 1, 1, 1, 1}};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 9; ++j) expected(i, j) = rows[i][j];
        REQUIRE(c.boundary(1, 0) == expected);
        REQUIRE(rank_q(c.boundary(1, 0)) == 2);
    }

    SECTION("rational homology") {
        auto rep = homology_q(c);
        REQUIRE(rep.betti == std::vector<long long>({1, 10}));
        REQUIRE(rep.e2_dims[0] == std::vector<long long>({1, 3}));
        REQUIRE(rep.e2_dims[1] == std::vector<long long>({7}));
        REQUIRE(rep.euler == -9);
        REQUIRE(rep.degeneration_conjectured);
    }

    SECTION("integral page is torsion-free and has the same ranks") {
        auto q = homology_q(c);
        auto z = homology_z(c);
        REQUIRE(z.torsion.empty());
        REQUIRE(z.e2_dims == q.e2_dims);
        REQUIRE(z.betti == q.betti);
        REQUIRE_FALSE(z.degeneration_conjectured);
    }
}

TEST_CASE("segment: two points, no differentials") {
    auto c = build_complex(from_rows({{-1}, {1}}));
    REQUIRE(c.top_dim == 0);
    REQUIRE(c.dim(0, 0) == 2);
    REQUIRE(homology_q(c).betti == std::vector<long long>({2}));
    REQUIRE(homology_z(c).torsion.empty());
    REQUIRE(euler_characteristic(c) == 2);
}

TEST_CASE("degree-one triangle: edges carry single points") {
    auto c = build_complex(from_rows({{1, 0}, {0, 1}, {-1, -1}}));
    REQUIRE(c.dim(0, 0) == 3);
    REQUIRE(c.dim(0, 1) == 3);
    REQUIRE(c.dim(1, 0) == 3);
    REQUIRE(homology_q(c).betti == std::vector<long long>({1, 4}));
}

TEST_CASE("euler characteristics") {
    REQUIRE(euler_characteristic(build_complex(big_triangle())) == -9);
    REQUIRE(euler_characteristic(build_complex(octahedron())) == 8);
    SECTION("alternating sum equals signed normalized volume on the corpus") {
        auto check = [](const LatticePolytope& p) {
            long long sign = p.ambient_rank() % 2 == 0 ? -1 : 1;
            REQUIRE(euler_characteristic(build_complex(p)) ==
                    sign * normalized_volume(p).convert_to<long long>());
        };
        for (const auto& [name, p] : testcorpus::polygons()) check(p);
        for (const auto& [name, p] : testcorpus::threefolds()) check(p);
    }
    SECTION("alternating sum of betti numbers gives the same value") {
        for (const auto& [name, p] : testcorpus::threefolds()) {
            INFO(name);
            auto rep = homology_q(build_complex(p));
            long long chi = 0;
            for (std::size_t k = 0; k < rep.betti.size(); ++k)
                chi += (k % 2 == 0 ? 1 : -1) * rep.betti[k];
            REQUIRE(chi == rep.euler);
        }
    }
}

TEST_CASE("boundary squares to zero across the corpus") {
    for (const auto& [name, p] : testcorpus::polygons()) {
        INFO(name);
        REQUIRE(build_complex(p).boundary_square_is_zero());
    }
    for (const auto& [name, p] : testcorpus::threefolds()) {
        INFO(name);
        REQUIRE(build_complex(p).boundary_square_is_zero());
    }
}

TEST_CASE("rational and integral ranks agree across the corpus") {
    auto check = [](const LatticePolytope& p) {
        auto c = build_complex(p);
        auto q = homology_q(c);
        auto z = homology_z(c);
        REQUIRE(q.e2_dims == z.e2_dims);
        REQUIRE(q.betti == z.betti);
    };
    for (const auto& [name, p] : testcorpus::polygons()) check(p);
    for (const auto& [name, p] : testcorpus::threefolds()) check(p);
}

TEST_CASE("betti numbers are nonnegative and vanish above the skeleton dimension") {
    for (const auto& [name, p] : testcorpus::threefolds()) {
        INFO(name);
        auto rep = homology_q(build_complex(p));
        REQUIRE(static_cast<int>(rep.betti.size()) == rep.top_dim + 1);
        for (auto b : rep.betti) REQUIRE(b >= 0);
    }
}

TEST_CASE("betti numbers are invariant under vertex permutation") {
    auto check = [](const LatticePolytope& p, unsigned seed) {
        auto base = homology_q(build_complex(p)).betti;
        std::mt19937 rng(seed);
        auto verts = p.vertices();
        for (int trial = 0; trial < 10; ++trial) {
            std::shuffle(verts.begin(), verts.end(), rng);
            LatticePolytope q(p.ambient_rank(), verts);
            REQUIRE(homology_q(build_complex(q)).betti == base);
        }
    };
    check(big_triangle(), 11);
    check(octahedron(), 12);
}

TEST_CASE("betti numbers are invariant under unimodular coordinate change") {
    auto check = [](const LatticePolytope& p, unsigned seed) {
        auto base = homology_q(build_complex(p)).betti;
        std::mt19937 rng(seed);
        for (int trial = 0; trial < 20; ++trial) {
            IntMatrix u = oracle::random_unimodular(rng, p.ambient_rank());
            auto rep = homology_q(build_complex(transformed(p, u)));
            REQUIRE(rep.betti == base);
        }
    };
    check(big_triangle(), 21);
    check(octahedron(), 22);
}

TEST_CASE("betti numbers are invariant under a change of kernel basis") {
    // changing each face's M_F basis by a unimodular matrix changes the
    // boundary matrices but not the homology; simulate by transforming the
    // polytope with a unimodular map, which rewrites every kernel basis
    auto p = big_triangle();
    auto base = homology_q(build_complex(p));
    std::mt19937 rng(31);
    IntMatrix u = oracle::random_unimodular(rng, 2);
    auto rep = homology_q(build_complex(transformed(p, u)));
    REQUIRE(rep.e2_dims == base.e2_dims);
}
