#pragma once

// The bigraded chain complex of the skeleton.  A face F of dimension deg
// contributes |P_F| copies of the exterior algebra on its kernel lattice
// M_F (rank n - deg, n = dim of the skeleton); the differential lowers deg
// by one, preserves the wedge degree r, and is the signed sum over
// codimension-one subfaces of the maps induced by the group inclusions:
// component index through the component map, wedge part through the minor
// matrix of the torus map.  A generator in bidegree (deg, r) sits in total
// homological degree deg + r.
//
// Homology of each row r is computed over Q (ranks only) or over Z (ranks
// plus torsion of the page).  Over Q the reported total-degree numbers are
// conjectural homology of the skeleton: they assume the spectral sequence
// degenerates at this page, which is flagged, not proven.  Over Z only the
// page itself is asserted; no integral degeneration is claimed.

#include <map>
#include <utility>
#include <vector>

#include "skeleta/exactla.hpp"
#include "skeleta/polytope.hpp"
#include "skeleta/skeleton.hpp"

namespace skeleta {

enum class Ring { rational, integral };

struct BigradedComplex {
    int ambient_rank = 0;  // d
    int top_dim = 0;       // n = d - 1, dimension of the skeleton

    FaceLattice lattice;
    std::vector<FaceGroupData> groups;  // by face id

    // dims[deg][r] = |P| copies of binom(n-deg, r) per face of dimension deg
    std::vector<std::vector<long long>> dims;
    // boundaries[deg][r]: C_{deg,r} -> C_{deg-1,r}; deg 0 row unused
    std::vector<std::vector<IntMatrix>> boundaries;
    // component_base[deg][k] = components of earlier faces of that dimension;
    // basis order is face (lattice order), then component, then subset (lex)
    std::vector<std::vector<long long>> component_base;

    long long dim(int deg, int r) const {
        if (deg < 0 || deg > top_dim || r < 0 || r >= static_cast<int>(dims[deg].size()))
            return 0;
        return dims[deg][r];
    }

    const IntMatrix& boundary(int deg, int r) const { return boundaries[deg][r]; }

    bool boundary_square_is_zero() const {
        for (int deg = 2; deg <= top_dim; ++deg)
            for (int r = 0; r + deg <= top_dim; ++r)
                if (!(boundaries[deg - 1][r] * boundaries[deg][r]).is_zero()) return false;
        return true;
    }
};

struct HomologyReport {
    Ring ring = Ring::rational;
    int top_dim = 0;
    std::vector<std::vector<long long>> e2_dims;              // [deg][r]
    std::vector<long long> betti;                             // b_0..b_n, antidiagonal sums
    std::map<std::pair<int, int>, std::vector<Int>> torsion;  // nontrivial factors per (deg,r)
    long long euler = 0;
    // true when the betti numbers rest on the (conjectural) rational
    // degeneration of the spectral sequence at this page
    bool degeneration_conjectured = false;
};

inline long long euler_characteristic(const BigradedComplex& c) {
    long long chi = 0;
    for (int deg = 0; deg <= c.top_dim; ++deg)
        for (int r = 0; r + deg <= c.top_dim; ++r)
            chi += ((deg + r) % 2 == 0 ? 1 : -1) * c.dim(deg, r);
    return chi;
}

namespace detail {

inline std::vector<FaceGroupData> face_groups_of(const LatticePolytope& p,
                                                 const FaceLattice& fl) {
    std::vector<FaceGroupData> groups;
    groups.reserve(fl.face_count());
    for (int id = 0; id < fl.face_count(); ++id)
        groups.push_back(face_group_unchecked(p, fl.face(id)));
    return groups;
}

}  // namespace detail

inline BigradedComplex assemble_complex(const LatticePolytope& p, FaceLattice fl,
                                        std::vector<FaceGroupData> groups) {
    const int d = p.ambient_rank();
    const int n = d - 1;

    BigradedComplex c{d, n, std::move(fl), std::move(groups), {}, {}, {}};

    c.component_base.resize(n + 1);
    std::vector<long long> total_components(n + 1);
    for (int deg = 0; deg <= n; ++deg) {
        long long base = 0;
        for (int k = 0; k < c.lattice.dim_count(deg); ++k) {
            c.component_base[deg].push_back(base);
            base += static_cast<long long>(
                c.groups[c.lattice.first_id(deg) + k].component_count());
        }
        total_components[deg] = base;
    }

    c.dims.assign(n + 1, {});
    for (int deg = 0; deg <= n; ++deg)
        for (int r = 0; r + deg <= n; ++r)
            c.dims[deg].push_back(total_components[deg] * detail::binomial(n - deg, r));

    c.boundaries.assign(n + 1, {});
    for (int deg = 1; deg <= n; ++deg) {
        const int s_source = n - deg;      // torus rank of source faces
        const int s_target = s_source + 1; // torus rank of target faces
        for (int r = 0; r <= s_source; ++r)
            c.boundaries[deg].emplace_back(static_cast<int>(c.dims[deg - 1][r]),
                                           static_cast<int>(c.dims[deg][r]));
        for (int k = 0; k < c.lattice.dim_count(deg); ++k) {
            const int id = c.lattice.first_id(deg) + k;
            const FaceGroupData& source = c.groups[id];
            for (const auto& [sub_id, sign] : c.lattice.boundary(id)) {
                const FaceGroupData& target = c.groups[sub_id];
                AttachingMap am = detail::attach(target, source);
                const int sub_k = sub_id - c.lattice.first_id(deg - 1);
                for (int r = 0; r <= s_source; ++r) {
                    IntMatrix w = wedge_matrix(am.torus_map, r);
                    IntMatrix& mat = c.boundaries[deg][r];
                    const long long rows_per_comp = detail::binomial(s_target, r);
                    const long long cols_per_comp = detail::binomial(s_source, r);
                    for (std::size_t comp = 0; comp < source.component_count(); ++comp) {
                        const long long col0 =
                            (c.component_base[deg][k] + static_cast<long long>(comp)) *
                            cols_per_comp;
                        const long long row0 =
                            (c.component_base[deg - 1][sub_k] +
                             static_cast<long long>(am.component_map[comp])) *
                            rows_per_comp;
                        for (int i = 0; i < w.rows; ++i)
                            for (int j = 0; j < w.cols; ++j) {
                                if (w(i, j) == 0) continue;
                                mat(static_cast<int>(row0 + i), static_cast<int>(col0 + j)) +=
                                    sign * w(i, j);
                            }
                    }
                }
            }
        }
    }
    return c;
}

inline BigradedComplex build_complex(const LatticePolytope& p) {
    detail::require_skeleton_input(p, "build_complex");
    FaceLattice fl = enumerate_faces(p);
    std::vector<FaceGroupData> groups = detail::face_groups_of(p, fl);
    return assemble_complex(p, std::move(fl), std::move(groups));
}

namespace detail {

inline HomologyReport assemble_report(const BigradedComplex& c, Ring ring,
                                      const std::vector<std::vector<long long>>& e2,
                                      std::map<std::pair<int, int>, std::vector<Int>> torsion) {
    HomologyReport rep;
    rep.ring = ring;
    rep.top_dim = c.top_dim;
    rep.e2_dims = e2;
    rep.betti.assign(c.top_dim + 1, 0);
    for (int deg = 0; deg <= c.top_dim; ++deg)
        for (int r = 0; r + deg <= c.top_dim; ++r) rep.betti[deg + r] += e2[deg][r];
    rep.torsion = std::move(torsion);
    rep.euler = euler_characteristic(c);
    rep.degeneration_conjectured = ring == Ring::rational;
    return rep;
}

}  // namespace detail

// Ranks of the page over Q, row by row in the wedge degree r.
inline HomologyReport homology_q(const BigradedComplex& c) {
    if (!c.boundary_square_is_zero())
        throw internal_error("homology: boundary does not square to zero");
    const int n = c.top_dim;
    std::vector<std::vector<long long>> e2(n + 1);
    std::vector<std::vector<long long>> ranks(n + 2);
    for (int deg = 1; deg <= n; ++deg)
        for (int r = 0; r + deg <= n; ++r)
            ranks[deg].push_back(c.dim(deg, r) == 0 || c.dim(deg - 1, r) == 0
                                     ? 0
                                     : rank_q(c.boundaries[deg][r]));
    auto rank_at = [&](int deg, int r) -> long long {
        if (deg < 1 || deg > n || r < 0 || r >= static_cast<int>(ranks[deg].size())) return 0;
        return ranks[deg][r];
    };
    for (int deg = 0; deg <= n; ++deg)
        for (int r = 0; r + deg <= n; ++r)
            e2[deg].push_back(c.dim(deg, r) - rank_at(deg, r) - rank_at(deg + 1, r));
    return detail::assemble_report(c, Ring::rational, e2, {});
}

// The page over Z: kernel mod image computed through a saturated kernel
// basis, so the Smith normal form of the rewritten image gives both the
// free rank and the torsion invariant factors.
inline HomologyReport homology_z(const BigradedComplex& c) {
    if (!c.boundary_square_is_zero())
        throw internal_error("homology: boundary does not square to zero");
    const int n = c.top_dim;
    std::vector<std::vector<long long>> e2(n + 1);
    std::map<std::pair<int, int>, std::vector<Int>> torsion;
    for (int deg = 0; deg <= n; ++deg)
        for (int r = 0; r + deg <= n; ++r) {
            const long long dim = c.dim(deg, r);
            if (dim == 0) {
                e2[deg].push_back(0);
                continue;
            }
            IntMatrix kernel = deg == 0 ? IntMatrix::identity(static_cast<int>(dim))
                                        : integer_kernel(c.boundaries[deg][r]);
            long long image_rank = 0;
            std::vector<Int> bad;
            if (c.dim(deg + 1, r) > 0) {
                // rewrite the incoming image in kernel coordinates; integral
                // because the kernel basis is saturated and the square is zero
                IntMatrix x = solve_exact(kernel, c.boundaries[deg + 1][r]).to_int();
                auto snf = smith_normal_form(x);
                image_rank = static_cast<long long>(snf.invariant_factors.size());
                for (const auto& f : snf.invariant_factors)
                    if (f > 1) bad.push_back(f);
            }
            e2[deg].push_back(kernel.cols - image_rank);
            if (!bad.empty()) torsion[{deg, r}] = std::move(bad);
        }
    return detail::assemble_report(c, Ring::integral, e2, std::move(torsion));
}

}  // namespace skeleta
