#pragma once

// Lattice polytopes with exact arithmetic: validated construction, polar
// duality, reflexivity and simpliciality predicates, the simplicial face
// lattice with orientation signs, lattice point counts, and normalized
// volume.  Facets are found by brute-force supporting-hyperplane
// enumeration over d-subsets of vertices, which is plenty at the scale
// this library targets (d <= 4, a few dozen vertices).

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "skeleta/exactla.hpp"

namespace skeleta {

namespace detail {

inline std::string vec_to_string(const std::vector<Int>& v) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ")";
    return os.str();
}

inline Int dot(const std::vector<Int>& a, const std::vector<Int>& b) {
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace detail

// A supporting hyperplane <normal, x> = offset with <normal, x> <= offset
// over the whole polytope; normal is primitive integer, outward.
struct Facet {
    std::vector<Int> normal;
    Int offset;
    std::vector<int> vertex_indices;  // sorted
};

class LatticePolytope {
  public:
    LatticePolytope(int ambient_rank, std::vector<std::vector<Int>> vertices)
        : ambient_rank_(ambient_rank), vertices_(std::move(vertices)) {
        validate_and_enumerate_facets();
    }

    int ambient_rank() const { return ambient_rank_; }
    const std::vector<std::vector<Int>>& vertices() const { return vertices_; }
    const std::vector<Facet>& facets() const { return facets_; }

    // Rows are the selected vertices, in the order given.
    IntMatrix vertex_matrix(const std::vector<int>& indices) const {
        IntMatrix m(static_cast<int>(indices.size()), ambient_rank_);
        for (std::size_t i = 0; i < indices.size(); ++i)
            for (int j = 0; j < ambient_rank_; ++j)
                m(static_cast<int>(i), j) = vertices_[indices[i]][j];
        return m;
    }

    // Equality as polytopes: same vertex set, any order.
    bool operator==(const LatticePolytope& o) const {
        if (ambient_rank_ != o.ambient_rank_) return false;
        auto a = vertices_, b = o.vertices_;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        return a == b;
    }

  private:
    int ambient_rank_;
    std::vector<std::vector<Int>> vertices_;
    std::vector<Facet> facets_;

    void validate_and_enumerate_facets() {
        const int d = ambient_rank_;
        const int p = static_cast<int>(vertices_.size());
        if (d < 1) throw invalid_input("polytope: ambient rank must be at least 1");
        if (p < d + 1)
            throw invalid_input("polytope: too few vertices to span a full-dimensional hull");
        for (int i = 0; i < p; ++i)
            if (static_cast<int>(vertices_[i].size()) != d)
                throw invalid_input("polytope: vertex " + std::to_string(i) +
                                    " has wrong dimension");
        {
            auto sorted = vertices_;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
                throw invalid_input("polytope: duplicate vertex " +
                                    detail::vec_to_string(
                                        *std::adjacent_find(sorted.begin(), sorted.end())));
        }
        {
            IntMatrix diff(p - 1, d);
            for (int i = 1; i < p; ++i)
                for (int j = 0; j < d; ++j) diff(i - 1, j) = vertices_[i][j] - vertices_[0][j];
            if (rank_q(diff) != d)
                throw invalid_input("polytope: vertex set is not full-dimensional");
        }

        // supporting hyperplanes through every affinely independent d-subset
        std::map<std::pair<std::vector<Int>, Int>, std::vector<int>> found;
        std::vector<int> subset(d);
        for (auto& sub : detail::subsets_lex(p, d)) {
            IntMatrix diff(d - 1, d);
            for (int i = 1; i < d; ++i)
                for (int j = 0; j < d; ++j)
                    diff(i - 1, j) = vertices_[sub[i]][j] - vertices_[sub[0]][j];
            IntMatrix ker = integer_kernel(diff);
            if (ker.cols != 1) continue;  // not affinely independent
            std::vector<Int> a(d);
            for (int j = 0; j < d; ++j) a[j] = ker(j, 0);
            Int b = detail::dot(a, vertices_[sub[0]]);
            bool all_le = true, all_ge = true;
            std::vector<int> on;
            for (int i = 0; i < p; ++i) {
                Int val = detail::dot(a, vertices_[i]);
                if (val < b) all_ge = false;
                if (val > b) all_le = false;
                if (val == b) on.push_back(i);
            }
            if (!all_le && !all_ge) continue;  // not supporting
            if (!all_le) {
                for (auto& x : a) x = -x;
                b = -b;
            }
            found.emplace(std::make_pair(std::move(a), b), std::move(on));
        }
        for (auto& [key, on] : found)
            facets_.push_back(Facet{key.first, key.second, std::move(on)});

        // every listed point must be a vertex: its active facet normals span
        for (int i = 0; i < p; ++i) {
            std::vector<const Facet*> active;
            for (const auto& f : facets_)
                if (std::binary_search(f.vertex_indices.begin(), f.vertex_indices.end(), i))
                    active.push_back(&f);
            IntMatrix normals(static_cast<int>(active.size()), d);
            for (std::size_t r = 0; r < active.size(); ++r)
                for (int j = 0; j < d; ++j) normals(static_cast<int>(r), j) = active[r]->normal[j];
            if (rank_q(normals) != d)
                throw invalid_input("polytope: point " + detail::vec_to_string(vertices_[i]) +
                                    " is not a vertex of the hull");
        }
    }
};

// Polar dual with the >= -1 convention: vertices are -normal/offset per
// facet.  Requires the origin strictly interior; requires the dual to be a
// lattice polytope (equivalently, the input is reflexive).
inline LatticePolytope polar_dual(const LatticePolytope& p) {
    const int d = p.ambient_rank();
    std::vector<std::vector<Int>> dual;
    for (const auto& f : p.facets()) {
        if (f.offset <= 0)
            throw invalid_input("polar_dual: origin is not strictly interior");
        std::vector<Int> v(d);
        for (int j = 0; j < d; ++j) {
            if (f.normal[j] % f.offset != 0) {
                std::ostringstream os;
                os << "polar_dual: dual is not a lattice polytope, vertex (";
                for (int k = 0; k < d; ++k) os << (k ? "," : "") << Rat(-f.normal[k], f.offset);
                os << ")";
                throw invalid_input(os.str());
            }
            v[j] = -f.normal[j] / f.offset;
        }
        dual.push_back(std::move(v));
    }
    std::sort(dual.begin(), dual.end());
    return LatticePolytope(d, std::move(dual));
}

// Reflexive: origin strictly interior and every facet at lattice distance 1,
// i.e. every primitive facet offset equals 1.
inline bool is_reflexive(const LatticePolytope& p) {
    return std::all_of(p.facets().begin(), p.facets().end(),
                       [](const Facet& f) { return f.offset == 1; });
}

inline bool is_facet_simplicial(const LatticePolytope& p) {
    return std::all_of(p.facets().begin(), p.facets().end(), [&](const Facet& f) {
        return static_cast<int>(f.vertex_indices.size()) == p.ambient_rank();
    });
}

// Every vertex figure is a simplex; for reflexive p this is equivalent to
// the polar dual being facet-simplicial, but counting facets through each
// vertex works for any polytope.
inline bool is_vertex_simplicial(const LatticePolytope& p) {
    for (std::size_t i = 0; i < p.vertices().size(); ++i) {
        int count = 0;
        for (const auto& f : p.facets())
            if (std::binary_search(f.vertex_indices.begin(), f.vertex_indices.end(),
                                   static_cast<int>(i)))
                ++count;
        if (count != p.ambient_rank()) return false;
    }
    return true;
}

// A proper face of a facet-simplicial polytope: always a simplex, so it is
// identified by its sorted vertex index tuple and dim = |tuple| - 1.
struct Face {
    std::vector<int> vertex_indices;
    int dim = 0;

    bool operator==(const Face& o) const { return vertex_indices == o.vertex_indices; }
    bool operator<(const Face& o) const { return vertex_indices < o.vertex_indices; }
};

struct FaceIncidence {
    int sub = 0;    // face id of F
    int super = 0;  // face id of F', dim F' = dim F + 1
    int sign = 1;   // (-1)^i where F omits the i-th sorted vertex of F'
};

class FaceLattice {
  public:
    FaceLattice(int ambient_rank, std::vector<std::vector<Face>> by_dim)
        : ambient_rank_(ambient_rank), by_dim_(std::move(by_dim)) {
        for (int dim = 0; dim < static_cast<int>(by_dim_.size()); ++dim)
            for (int i = 0; i < static_cast<int>(by_dim_[dim].size()); ++i) {
                index_[by_dim_[dim][i].vertex_indices] = static_cast<int>(positions_.size());
                positions_.emplace_back(dim, i);
            }
        boundaries_.resize(positions_.size());
        for (int id = 0; id < static_cast<int>(positions_.size()); ++id) {
            const Face& f = face(id);
            if (f.dim == 0) continue;
            for (std::size_t omit = 0; omit < f.vertex_indices.size(); ++omit) {
                std::vector<int> sub = f.vertex_indices;
                sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(omit));
                int sub_id = index_.at(sub);
                int sign = (omit % 2 == 0) ? 1 : -1;
                boundaries_[id].push_back({sub_id, sign});
                incidences_.push_back(FaceIncidence{sub_id, id, sign});
            }
        }
    }

    int ambient_rank() const { return ambient_rank_; }
    int face_count() const { return static_cast<int>(positions_.size()); }
    int dim_count(int dim) const {
        return dim < static_cast<int>(by_dim_.size()) ? static_cast<int>(by_dim_[dim].size())
                                                      : 0;
    }
    const Face& face(int id) const {
        return by_dim_[positions_[id].first][positions_[id].second];
    }
    int id_of(const Face& f) const {
        auto it = index_.find(f.vertex_indices);
        if (it == index_.end()) throw invalid_input("face lattice: unknown face");
        return it->second;
    }
    bool contains(const Face& f) const { return index_.count(f.vertex_indices) > 0; }
    // id of the first face of the given dimension; faces of one dimension
    // are contiguous and sorted by vertex tuple
    int first_id(int dim) const {
        int id = 0;
        for (int k = 0; k < dim; ++k) id += dim_count(k);
        return id;
    }
    const std::vector<std::pair<int, int>>& boundary(int id) const { return boundaries_[id]; }
    const std::vector<FaceIncidence>& incidences() const { return incidences_; }
    std::vector<int> f_vector() const {
        std::vector<int> f;
        for (const auto& faces : by_dim_) f.push_back(static_cast<int>(faces.size()));
        return f;
    }

  private:
    int ambient_rank_;
    std::vector<std::vector<Face>> by_dim_;
    std::vector<std::pair<int, int>> positions_;            // id -> (dim, index); dim-major
    std::map<std::vector<int>, int> index_;                 // vertex tuple -> id
    std::vector<std::vector<std::pair<int, int>>> boundaries_;  // id -> [(sub id, sign)]
    std::vector<FaceIncidence> incidences_;
};

// All proper faces of a reflexive facet-simplicial polytope: every nonempty
// subset of a facet vertex set, deduplicated by sorted index tuple.
inline FaceLattice enumerate_faces(const LatticePolytope& p) {
    if (!is_reflexive(p)) throw invalid_input("enumerate_faces: polytope is not reflexive");
    if (!is_facet_simplicial(p))
        throw invalid_input("enumerate_faces: polytope is not facet-simplicial");
    const int d = p.ambient_rank();
    std::vector<std::set<std::vector<int>>> tuples(d);
    for (const auto& facet : p.facets())
        for (int k = 1; k <= d; ++k)
            for (auto& pick : detail::subsets_lex(d, k)) {
                std::vector<int> tup;
                tup.reserve(pick.size());
                for (int idx : pick) tup.push_back(facet.vertex_indices[idx]);
                tuples[k - 1].insert(std::move(tup));
            }
    std::vector<std::vector<Face>> by_dim(d);
    for (int dim = 0; dim < d; ++dim)
        for (const auto& tup : tuples[dim]) by_dim[dim].push_back(Face{tup, dim});
    return FaceLattice(d, std::move(by_dim));
}

// Exact lattice point counts (interior, boundary) by bounding-box scan.
inline std::pair<long long, long long> lattice_points(const LatticePolytope& p) {
    const int d = p.ambient_rank();
    std::vector<Int> lo(d), hi(d);
    for (int j = 0; j < d; ++j) {
        lo[j] = hi[j] = p.vertices()[0][j];
        for (const auto& v : p.vertices()) {
            lo[j] = std::min(lo[j], v[j]);
            hi[j] = std::max(hi[j], v[j]);
        }
    }
    long long interior = 0, boundary = 0;
    std::vector<Int> q = lo;
    while (true) {
        bool inside = true, on_boundary = false;
        for (const auto& f : p.facets()) {
            Int val = detail::dot(f.normal, q);
            if (val > f.offset) {
                inside = false;
                break;
            }
            if (val == f.offset) on_boundary = true;
        }
        if (inside) (on_boundary ? boundary : interior) += 1;
        int j = 0;
        while (j < d && q[j] == hi[j]) {
            q[j] = lo[j];
            ++j;
        }
        if (j == d) break;
        q[j] += 1;
    }
    return {interior, boundary};
}

namespace detail {

// Map the vertices of a facet on <a,x> = b into Z^{d-1} by an affine
// unimodular chart of the hyperplane lattice; faithful for volume.
inline std::vector<std::vector<Int>> project_to_hyperplane(
    const std::vector<std::vector<Int>>& points, const std::vector<Int>& a, const Int& b) {
    const int d = static_cast<int>(a.size());
    IntMatrix am(1, d);
    for (int j = 0; j < d; ++j) am(0, j) = a[j];
    IntMatrix basis = integer_kernel(am);  // d x (d-1), saturated
    auto snf = smith_normal_form(am);      // s = [1 0 ... 0] since a is primitive
    std::vector<Int> x0(d);                // one integer solution of <a,x> = b
    for (int j = 0; j < d; ++j) x0[j] = snf.v(j, 0) * snf.u(0, 0) * b;
    IntMatrix rhs(d, static_cast<int>(points.size()));
    for (std::size_t c = 0; c < points.size(); ++c)
        for (int j = 0; j < d; ++j) rhs(j, static_cast<int>(c)) = points[c][j] - x0[j];
    IntMatrix coords = solve_exact(basis, rhs).to_int();  // integral by saturation
    std::vector<std::vector<Int>> out(points.size(), std::vector<Int>(d - 1));
    for (std::size_t c = 0; c < points.size(); ++c)
        for (int j = 0; j < d - 1; ++j) out[c][j] = coords(j, static_cast<int>(c));
    return out;
}

}  // namespace detail

// d! times the Euclidean volume; always an integer for lattice polytopes.
// Computed as the sum over facets of (lattice height over the centroid) x
// (normalized facet volume); simplex facets short-circuit to a single
// determinant, others recurse into a hyperplane chart.
inline Int normalized_volume(const LatticePolytope& p) {
    const int d = p.ambient_rank();
    if (d == 1) {
        Int lo = p.vertices()[0][0], hi = lo;
        for (const auto& v : p.vertices()) {
            lo = std::min(lo, v[0]);
            hi = std::max(hi, v[0]);
        }
        return hi - lo;
    }
    const Int count = static_cast<int>(p.vertices().size());
    std::vector<Int> sum(d);  // centroid = sum / count
    for (const auto& v : p.vertices())
        for (int j = 0; j < d; ++j) sum[j] += v[j];
    Rat total = 0;
    for (const auto& f : p.facets()) {
        if (static_cast<int>(f.vertex_indices.size()) == d) {
            // |det(w_i - centroid)| = |det(count*w_i - sum)| / count^d
            IntMatrix m(d, d);
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j)
                    m(i, j) = count * p.vertices()[f.vertex_indices[i]][j] - sum[j];
            Int scaled = abs(determinant(m));
            Rat denom = 1;
            for (int k = 0; k < d; ++k) denom *= Rat(count);
            total += Rat(scaled) / denom;
        } else {
            std::vector<std::vector<Int>> pts;
            for (int idx : f.vertex_indices) pts.push_back(p.vertices()[idx]);
            LatticePolytope sub(d - 1, detail::project_to_hyperplane(pts, f.normal, f.offset));
            Rat height = Rat(f.offset) - Rat(detail::dot(f.normal, sum)) / Rat(count);
            total += height * Rat(normalized_volume(sub));
        }
    }
    if (denominator(total) != 1)
        throw internal_error("normalized_volume: non-integral total");
    return numerator(total);
}

}  // namespace skeleta
