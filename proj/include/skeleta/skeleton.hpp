#pragma once

// Per-face group data for the skeleton attached to a facet-simplicial
// reflexive polytope.  A face F with vertex matrix A (rows = vertices)
// carries the compact abelian group G_F = {m : A·m integral}/Z^d.  Writing
// S = U·A·V in Smith normal form with diagonal s_11,...,s_rr identifies
//   G_F  ~=  (R/Z)^s  x  Z/s_11 x ... x Z/s_rr,      s = d - r,
// via y = V^{-1}·m: the first r coordinates give the component tuple
// (k_i = s_ii·y_i mod s_ii) and the last s are the torus directions.  The
// identity component has H_1 = M_F = ker(A) ∩ Z^d, realized here by a
// saturated integer kernel basis.  For F ⊂ F' the inclusion G_{F'} ⊂ G_F
// is recorded as an integer matrix on the kernel bases (torus part) and an
// index map on component tuples (discrete part).

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "skeleta/exactla.hpp"
#include "skeleta/polytope.hpp"

namespace skeleta {

struct FaceGroupData {
    Face face;
    IntMatrix vertex_matrix;             // A: |J| x d, full row rank
    SmithDecomposition snf;              // S = U·A·V
    int torus_rank = 0;                  // s = d - |J|
    std::vector<Int> invariant_factors;  // s_11,...,s_rr, all positive
    Int component_order = 1;             // |P_F| = product of the factors
    IntMatrix mf_basis;                  // d x s saturated basis of M_F
    IntMatrix v_inverse;                 // V^{-1}, used to read off components

    std::size_t component_count() const {
        return static_cast<std::size_t>(component_order.convert_to<long long>());
    }

    // Component tuples (k_1,...,k_r), k_i mod s_ii, ordered lexicographically;
    // index 0 is the identity component.
    std::vector<Int> component_tuple(std::size_t index) const {
        const std::size_t r = invariant_factors.size();
        std::vector<Int> tuple(r);
        Int rest = static_cast<long long>(index);
        for (std::size_t i = r; i-- > 0;) {
            tuple[i] = rest % invariant_factors[i];
            rest /= invariant_factors[i];
        }
        return tuple;
    }

    std::size_t component_index(const std::vector<Int>& tuple) const {
        Int index = 0;
        for (std::size_t i = 0; i < tuple.size(); ++i) {
            Int k = tuple[i] % invariant_factors[i];
            if (k < 0) k += invariant_factors[i];
            index = index * invariant_factors[i] + k;
        }
        return static_cast<std::size_t>(index.convert_to<long long>());
    }

    // Canonical rational point of the given component: m = V·(k_i/s_ii, 0...).
    std::vector<Rat> component_representative(std::size_t index) const {
        const int d = snf.v.rows;
        const int r = static_cast<int>(invariant_factors.size());
        std::vector<Int> tuple = component_tuple(index);
        std::vector<Rat> m(d, Rat(0));
        for (int j = 0; j < r; ++j) {
            if (tuple[j] == 0) continue;
            Rat y(tuple[j], invariant_factors[j]);
            for (int i = 0; i < d; ++i) m[i] += Rat(snf.v(i, j)) * y;
        }
        return m;
    }

    // Component of a rational point m with A·m integral.
    std::size_t classify(const std::vector<Rat>& m) const {
        const int d = snf.v.rows;
        const int r = static_cast<int>(invariant_factors.size());
        std::vector<Int> tuple(r);
        for (int i = 0; i < r; ++i) {
            Rat y(0);
            for (int j = 0; j < d; ++j) y += Rat(v_inverse(i, j)) * m[j];
            Rat scaled = y * Rat(invariant_factors[i]);
            if (denominator(scaled) != 1)
                throw internal_error("face group: point is not in the group");
            tuple[i] = numerator(scaled);
        }
        return component_index(tuple);
    }
};

// The inclusion of the group of F' into the group of F, for F ⊂ F'.
struct AttachingMap {
    Face target;            // F
    Face source;            // F'
    IntMatrix torus_map;    // s x s' integer matrix: mf_basis(F)·t = mf_basis(F')
    std::vector<std::size_t> component_map;  // P_{F'} index -> P_F index
};

namespace detail {

inline void require_skeleton_input(const LatticePolytope& p, const char* who) {
    if (!is_reflexive(p))
        throw invalid_input(std::string(who) + ": polytope is not reflexive");
    if (!is_facet_simplicial(p))
        throw invalid_input(std::string(who) + ": polytope is not facet-simplicial");
}

inline void require_face_of(const LatticePolytope& p, const Face& f, const char* who) {
    if (f.vertex_indices.empty() ||
        f.dim != static_cast<int>(f.vertex_indices.size()) - 1)
        throw invalid_input(std::string(who) + ": malformed face");
    for (int idx : f.vertex_indices)
        if (idx < 0 || idx >= static_cast<int>(p.vertices().size()))
            throw invalid_input(std::string(who) + ": face index out of range");
    for (const auto& facet : p.facets())
        if (std::includes(facet.vertex_indices.begin(), facet.vertex_indices.end(),
                          f.vertex_indices.begin(), f.vertex_indices.end()))
            return;
    throw invalid_input(std::string(who) + ": not a face of the polytope");
}

inline FaceGroupData face_group_unchecked(const LatticePolytope& p, const Face& f) {
    FaceGroupData g;
    g.face = f;
    g.vertex_matrix = p.vertex_matrix(f.vertex_indices);
    g.snf = smith_normal_form(g.vertex_matrix);
    g.invariant_factors = g.snf.invariant_factors;
    const int r = static_cast<int>(f.vertex_indices.size());
    if (static_cast<int>(g.invariant_factors.size()) != r)
        throw internal_error("face group: face vertex matrix is rank-deficient");
    g.torus_rank = p.ambient_rank() - r;
    for (const auto& s : g.invariant_factors) g.component_order *= s;
    g.mf_basis = integer_kernel(g.vertex_matrix);
    g.v_inverse = solve_exact(g.snf.v, IntMatrix::identity(g.snf.v.rows)).to_int();
    return g;
}

// Attaching data computed from precomputed group data; target ⊂ source of
// any positive codimension (build and functoriality checks both use this).
inline AttachingMap attach(const FaceGroupData& target, const FaceGroupData& source) {
    if (!std::includes(source.face.vertex_indices.begin(), source.face.vertex_indices.end(),
                       target.face.vertex_indices.begin(), target.face.vertex_indices.end()) ||
        target.face.vertex_indices == source.face.vertex_indices)
        throw invalid_input("attaching_map: faces are not properly incident");
    AttachingMap out;
    out.target = target.face;
    out.source = source.face;
    out.torus_map = solve_exact(target.mf_basis, source.mf_basis).to_int();
    out.component_map.resize(source.component_count());
    for (std::size_t c = 0; c < out.component_map.size(); ++c)
        out.component_map[c] = target.classify(source.component_representative(c));
    return out;
}

}  // namespace detail

inline FaceGroupData face_group(const LatticePolytope& p, const Face& f) {
    detail::require_skeleton_input(p, "face_group");
    detail::require_face_of(p, f, "face_group");
    return detail::face_group_unchecked(p, f);
}

inline AttachingMap attaching_map(const LatticePolytope& p, const Face& f,
                                  const Face& f_prime) {
    detail::require_skeleton_input(p, "attaching_map");
    detail::require_face_of(p, f, "attaching_map");
    detail::require_face_of(p, f_prime, "attaching_map");
    return detail::attach(detail::face_group_unchecked(p, f),
                          detail::face_group_unchecked(p, f_prime));
}

// One stratum per proper face, in face lattice order: the combinatorial
// model of the skeleton as a union of groups over open faces.
inline std::vector<std::pair<Face, FaceGroupData>> strata(const LatticePolytope& p) {
    detail::require_skeleton_input(p, "strata");
    FaceLattice fl = enumerate_faces(p);
    std::vector<std::pair<Face, FaceGroupData>> out;
    out.reserve(fl.face_count());
    for (int id = 0; id < fl.face_count(); ++id) {
        const Face& f = fl.face(id);
        out.emplace_back(f, detail::face_group_unchecked(p, f));
    }
    return out;
}

// The faces F' ⊇ F: the strata of the open chart indexed by the cone of F.
// Charts of vertices already cover every proper face.
inline std::vector<Face> chart(const LatticePolytope& p, const Face& f) {
    detail::require_skeleton_input(p, "chart");
    detail::require_face_of(p, f, "chart");
    FaceLattice fl = enumerate_faces(p);
    std::vector<Face> out;
    for (int id = 0; id < fl.face_count(); ++id) {
        const Face& g = fl.face(id);
        if (std::includes(g.vertex_indices.begin(), g.vertex_indices.end(),
                          f.vertex_indices.begin(), f.vertex_indices.end()))
            out.push_back(g);
    }
    return out;
}

}  // namespace skeleta
