#pragma once

// Test-only oracles, kept independent of the library code paths they check:
// cofactor-expansion determinants, gcd-of-minors invariant factors, rational
// half-space polar duals, brute-force hulls, and deterministic RNG helpers.

#include <map>
#include <random>
#include <set>
#include <vector>

#include "skeleta/exactla.hpp"

namespace oracle {

using skeleta::Int;
using skeleta::IntMatrix;
using skeleta::Rat;

// Determinant by cofactor expansion along the first row.
inline Int det_cofactor(const IntMatrix& a) {
    const int n = a.rows;
    if (n == 0) return 1;
    if (n == 1) return a(0, 0);
    Int acc = 0;
    for (int j = 0; j < n; ++j) {
        if (a(0, j) == 0) continue;
        IntMatrix sub(n - 1, n - 1);
        for (int i = 1; i < n; ++i) {
            int cc = 0;
            for (int c = 0; c < n; ++c) {
                if (c == j) continue;
                sub(i - 1, cc++) = a(i, c);
            }
        }
        Int term = a(0, j) * det_cofactor(sub);
        acc += (j % 2 == 0) ? term : -term;
    }
    return acc;
}

inline void subsets_rec(int n, int k, int start, std::vector<int>& cur,
                        std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == k) {
        out.push_back(cur);
        return;
    }
    for (int i = start; i < n; ++i) {
        cur.push_back(i);
        subsets_rec(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

inline std::vector<std::vector<int>> all_subsets(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    subsets_rec(n, k, 0, cur, out);
    return out;
}

// Invariant factors via gcd of all k x k minors: f_k = d_k / d_{k-1}.
inline std::vector<Int> invariant_factors_by_minors(const IntMatrix& a) {
    std::vector<Int> factors;
    Int prev = 1;
    for (int k = 1; k <= std::min(a.rows, a.cols); ++k) {
        Int g = 0;
        for (const auto& rs : all_subsets(a.rows, k))
            for (const auto& cs : all_subsets(a.cols, k)) {
                IntMatrix minor(k, k);
                for (int i = 0; i < k; ++i)
                    for (int j = 0; j < k; ++j) minor(i, j) = a(rs[i], cs[j]);
                g = gcd(g, det_cofactor(minor));
                if (g == 1) break;
            }
        if (g == 0) break;  // all larger minors vanish too
        factors.push_back(g / prev);
        prev = g;
    }
    return factors;
}

inline IntMatrix random_matrix(std::mt19937& rng, int max_dim, int max_abs) {
    std::uniform_int_distribution<int> dim(1, max_dim);
    std::uniform_int_distribution<int> val(-max_abs, max_abs);
    IntMatrix a(dim(rng), dim(rng));
    for (auto& e : a.entries) e = val(rng);
    return a;
}

// Brute-force polar dual over exact rationals: enumerate vertex candidates
// of {y : <v, y> >= -1 for all vertices v} as solutions of d-subsets of
// active equalities, keep the feasible ones.  Independent of the facet
// machinery in the library.
inline std::vector<std::vector<Rat>> halfspace_dual_vertices(
    const std::vector<std::vector<Int>>& verts) {
    const int d = static_cast<int>(verts[0].size());
    const int n = static_cast<int>(verts.size());
    std::set<std::vector<Rat>> out;
    for (const auto& pick : all_subsets(n, d)) {
        // solve <verts[pick[i]], y> = -1 by Gauss-Jordan over Q
        std::vector<std::vector<Rat>> m(d, std::vector<Rat>(d + 1));
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) m[i][j] = Rat(verts[pick[i]][j]);
            m[i][d] = Rat(-1);
        }
        int row = 0;
        for (int col = 0; col < d && row < d; ++col) {
            int piv = -1;
            for (int i = row; i < d; ++i)
                if (m[i][col] != 0) {
                    piv = i;
                    break;
                }
            if (piv < 0) break;
            std::swap(m[row], m[piv]);
            Rat p = m[row][col];
            for (auto& x : m[row]) x /= p;
            for (int i = 0; i < d; ++i) {
                if (i == row || m[i][col] == 0) continue;
                Rat f = m[i][col];
                for (int j = 0; j <= d; ++j) m[i][j] -= f * m[row][j];
            }
            ++row;
        }
        if (row < d) continue;  // singular subset
        std::vector<Rat> y(d);
        for (int i = 0; i < d; ++i) y[i] = m[i][d];
        bool feasible = true;
        for (const auto& v : verts) {
            Rat val = 0;
            for (int j = 0; j < d; ++j) val += Rat(v[j]) * y[j];
            if (val < -1) {
                feasible = false;
                break;
            }
        }
        if (feasible) out.insert(std::move(y));
    }
    // drop non-extreme feasible points: y is a vertex iff its active
    // constraints span d dimensions
    auto rational_rank = [](std::vector<std::vector<Rat>> m) {
        int rank = 0;
        const int cols = m.empty() ? 0 : static_cast<int>(m[0].size());
        for (int col = 0; col < cols; ++col) {
            int piv = -1;
            for (int i = rank; i < static_cast<int>(m.size()); ++i)
                if (m[i][col] != 0) {
                    piv = i;
                    break;
                }
            if (piv < 0) continue;
            std::swap(m[rank], m[piv]);
            for (int i = 0; i < static_cast<int>(m.size()); ++i) {
                if (i == rank || m[i][col] == 0) continue;
                Rat f = m[i][col] / m[rank][col];
                for (int j = 0; j < cols; ++j) m[i][j] -= f * m[rank][j];
            }
            ++rank;
        }
        return rank;
    };
    std::vector<std::vector<Rat>> result;
    for (const auto& y : out) {
        std::vector<std::vector<Rat>> active;
        for (const auto& v : verts) {
            Rat val = 0;
            for (int j = 0; j < d; ++j) val += Rat(v[j]) * y[j];
            if (val == -1) active.emplace_back(v.begin(), v.end());
        }
        if (rational_rank(std::move(active)) == d) result.push_back(y);
    }
    return result;
}

// Product of random elementary operations: always unimodular.
inline IntMatrix random_unimodular(std::mt19937& rng, int n, int ops = 12) {
    IntMatrix u = IntMatrix::identity(n);
    std::uniform_int_distribution<int> idx(0, n - 1);
    std::uniform_int_distribution<int> coef(-2, 2);
    std::uniform_int_distribution<int> kind(0, 2);
    for (int step = 0; step < ops; ++step) {
        int i = idx(rng), j = idx(rng);
        switch (kind(rng)) {
            case 0:
                if (i != j) {
                    skeleta::Int f = coef(rng);
                    for (int c = 0; c < n; ++c) u(i, c) += f * u(j, c);
                }
                break;
            case 1:
                if (i != j)
                    for (int c = 0; c < n; ++c) std::swap(u(i, c), u(j, c));
                break;
            default:
                for (int c = 0; c < n; ++c) u(i, c) = -u(i, c);
        }
    }
    return u;
}

}  // namespace oracle
