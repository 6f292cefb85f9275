#pragma once

// Independent verification of the homology pipeline.  Two cross-checks are
// computed by code paths disjoint from the chain complex: the Euler
// characteristic of a generic affine hypersurface with the given Newton
// polytope, (-1)^(d-1) times the normalized volume, and for polygons the
// curve Betti numbers (genus = interior points, cycles = punctures - 1).

#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "skeleta/homology.hpp"
#include "skeleta/polytope.hpp"

namespace skeleta {

struct Check {
    std::string name;
    std::string expected;
    std::string computed;
    bool pass = false;
};

struct VerificationReport {
    std::string polytope;
    std::vector<Check> checks;
    bool overall = false;
};

// Betti numbers (b0, b1) of a smooth affine curve in the torus whose Newton
// polygon is the given reflexive polygon: connected, genus = 1 interior
// point, one fewer independent cycle than boundary-point punctures.
inline std::pair<long long, long long> dk_curve_betti(const LatticePolytope& p) {
    if (p.ambient_rank() != 2)
        throw invalid_input("dk_curve_betti: polytope is not 2-dimensional");
    if (!is_reflexive(p)) throw invalid_input("dk_curve_betti: polygon is not reflexive");
    auto [interior, boundary] = lattice_points(p);
    return {1, 2 * interior + boundary - 1};
}

// Euler characteristic of a generic affine hypersurface with this Newton
// polytope: the signed normalized volume.
inline long long bkk_euler(const LatticePolytope& p) {
    if (!is_reflexive(p)) throw invalid_input("bkk_euler: polytope is not reflexive");
    long long sign = p.ambient_rank() % 2 == 0 ? -1 : 1;
    return sign * normalized_volume(p).convert_to<long long>();
}

namespace detail {

inline std::string join_ll(const std::vector<long long>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    return os.str();
}

template <typename T>
inline std::string str_of(const T& x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

}  // namespace detail

// Cross-checks against an already-computed complex and its homology
// reports; used by the pipeline so nothing is computed twice.
inline VerificationReport verify_with(const LatticePolytope& p, const BigradedComplex& c,
                                      const HomologyReport& over_q,
                                      const HomologyReport& over_z,
                                      const std::string& name = "") {
    VerificationReport rep;
    rep.polytope = name;
    auto add = [&rep](std::string check, std::string expected, std::string computed) {
        bool ok = expected == computed;
        rep.checks.push_back({std::move(check), std::move(expected), std::move(computed), ok});
    };

    add("boundary_squares_to_zero", "true", c.boundary_square_is_zero() ? "true" : "false");
    add("euler_matches_volume_oracle", detail::str_of(bkk_euler(p)),
        detail::str_of(euler_characteristic(c)));
    if (p.ambient_rank() == 2) {
        auto [b0, b1] = dk_curve_betti(p);
        add("betti_matches_curve_oracle", detail::join_ll({b0, b1}),
            detail::join_ll(over_q.betti));
    }
    {
        bool same = over_q.e2_dims == over_z.e2_dims;
        add("ranks_agree_over_q_and_z", "true", same ? "true" : "false");
    }
    if (p.ambient_rank() >= 2)  // connectedness expectation, not a theorem
        add("b0_equals_one_expectation", "1", detail::str_of(over_q.betti[0]));

    rep.overall = std::all_of(rep.checks.begin(), rep.checks.end(),
                              [](const Check& ch) { return ch.pass; });
    return rep;
}

inline VerificationReport verify(const LatticePolytope& p, const std::string& name = "") {
    detail::require_skeleton_input(p, "verify");
    BigradedComplex c = build_complex(p);
    HomologyReport over_q = homology_q(c);
    HomologyReport over_z = homology_z(c);
    return verify_with(p, c, over_q, over_z, name);
}

}  // namespace skeleta
