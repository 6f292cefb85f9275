#pragma once

// Exact integer and rational linear algebra: Smith normal form with
// transformation matrices, saturated integer kernels, exterior-power
// (minor) matrices, fraction-free rank, and exact linear solves.
// All arithmetic is arbitrary precision; nothing here ever rounds.

#include <algorithm>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "skeleta/errors.hpp"

namespace skeleta {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

struct IntMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<Int> entries;  // row-major

    IntMatrix() = default;
    IntMatrix(int r, int c) : rows(r), cols(c), entries(static_cast<std::size_t>(r) * c) {}
    IntMatrix(int r, int c, std::vector<Int> e) : rows(r), cols(c), entries(std::move(e)) {
        if (entries.size() != static_cast<std::size_t>(rows) * cols)
            throw invalid_input("IntMatrix: entry count does not match dimensions");
    }

    static IntMatrix identity(int n) {
        IntMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    Int& operator()(int i, int j) { return entries[static_cast<std::size_t>(i) * cols + j]; }
    const Int& operator()(int i, int j) const {
        return entries[static_cast<std::size_t>(i) * cols + j];
    }

    bool operator==(const IntMatrix& o) const {
        return rows == o.rows && cols == o.cols && entries == o.entries;
    }

    bool is_zero() const {
        return std::all_of(entries.begin(), entries.end(), [](const Int& x) { return x == 0; });
    }

    IntMatrix transposed() const {
        IntMatrix t(cols, rows);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    std::string to_string() const {
        std::ostringstream os;
        os << rows << "x" << cols << " [";
        for (int i = 0; i < rows; ++i) {
            os << (i ? "; " : "");
            for (int j = 0; j < cols; ++j) os << (j ? " " : "") << (*this)(i, j);
        }
        os << "]";
        return os.str();
    }
};

inline IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols != b.rows) throw invalid_input("matrix product: inner dimensions differ");
    IntMatrix c(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int k = 0; k < a.cols; ++k) {
            const Int& aik = a(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < b.cols; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

struct RatMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<Rat> entries;

    RatMatrix() = default;
    RatMatrix(int r, int c) : rows(r), cols(c), entries(static_cast<std::size_t>(r) * c) {}

    static RatMatrix from(const IntMatrix& m) {
        RatMatrix q(m.rows, m.cols);
        for (std::size_t i = 0; i < m.entries.size(); ++i) q.entries[i] = Rat(m.entries[i]);
        return q;
    }

    Rat& operator()(int i, int j) { return entries[static_cast<std::size_t>(i) * cols + j]; }
    const Rat& operator()(int i, int j) const {
        return entries[static_cast<std::size_t>(i) * cols + j];
    }

    bool is_integral() const {
        return std::all_of(entries.begin(), entries.end(),
                           [](const Rat& x) { return denominator(x) == 1; });
    }

    // Throws internal_error when a denominator is not 1.
    IntMatrix to_int() const {
        IntMatrix m(rows, cols);
        for (std::size_t i = 0; i < entries.size(); ++i) {
            if (denominator(entries[i]) != 1)
                throw internal_error("to_int: matrix is not integral");
            m.entries[i] = numerator(entries[i]);
        }
        return m;
    }
};

namespace detail {

// Extended gcd: returns (g, x, y) with x*a + y*b = g = gcd(a, b) >= 0.
inline std::tuple<Int, Int, Int> egcd(const Int& a, const Int& b) {
    Int old_r = a, r = b;
    Int old_x = 1, x = 0;
    Int old_y = 0, y = 1;
    while (r != 0) {
        Int q = old_r / r;
        Int tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_x - q * x;
        old_x = x;
        x = tmp;
        tmp = old_y - q * y;
        old_y = y;
        y = tmp;
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_x = -old_x;
        old_y = -old_y;
    }
    return {old_r, old_x, old_y};
}

inline long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

// All k-element subsets of {0,...,n-1} in lexicographic order.
inline std::vector<std::vector<int>> subsets_lex(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(k);
    for (int i = 0; i < k; ++i) cur[i] = i;
    if (k == 0) {
        out.push_back({});
        return out;
    }
    if (k > n) return out;
    while (true) {
        out.push_back(cur);
        int i = k - 1;
        while (i >= 0 && cur[i] == n - k + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

}  // namespace detail

struct SmithDecomposition {
    IntMatrix u;  // m x m, unimodular
    IntMatrix s;  // m x n, diagonal, u·a·v = s
    IntMatrix v;  // n x n, unimodular
    std::vector<Int> invariant_factors;  // nonzero diagonal of s, each divides the next
};

// Smith normal form.  Pivot choice is the minimal-absolute-value nonzero
// entry of the trailing submatrix; each off-pivot entry is cleared with a
// single extended-gcd 2x2 transform (not repeated Euclid-by-swaps), which
// keeps entry growth polynomial.  u, v accumulate the same unimodular
// operations, so det = ±1 by construction.
inline SmithDecomposition smith_normal_form(const IntMatrix& a) {
    const int m = a.rows, n = a.cols;
    SmithDecomposition d;
    d.s = a;
    d.u = IntMatrix::identity(m);
    d.v = IntMatrix::identity(n);
    IntMatrix& s = d.s;
    IntMatrix& u = d.u;
    IntMatrix& v = d.v;

    auto swap_rows = [&](int i, int j) {
        if (i == j) return;
        for (int c = 0; c < n; ++c) std::swap(s(i, c), s(j, c));
        for (int c = 0; c < m; ++c) std::swap(u(i, c), u(j, c));
    };
    auto swap_cols = [&](int i, int j) {
        if (i == j) return;
        for (int r = 0; r < m; ++r) std::swap(s(r, i), s(r, j));
        for (int r = 0; r < n; ++r) std::swap(v(r, i), v(r, j));
    };
    auto add_row = [&](int dst, int src, const Int& f) {  // row dst += f * row src
        for (int c = 0; c < n; ++c) s(dst, c) += f * s(src, c);
        for (int c = 0; c < m; ++c) u(dst, c) += f * u(src, c);
    };
    auto add_col = [&](int dst, int src, const Int& f) {
        for (int r = 0; r < m; ++r) s(r, dst) += f * s(r, src);
        for (int r = 0; r < n; ++r) v(r, dst) += f * v(r, src);
    };
    // (row t, row i) <- (x·row t + y·row i, z·row t + w·row i), det [[x,y],[z,w]] = 1
    auto combine_rows = [&](int t, int i, const Int& x, const Int& y, const Int& z,
                            const Int& w) {
        for (int c = 0; c < n; ++c) {
            Int rt = s(t, c), ri = s(i, c);
            s(t, c) = x * rt + y * ri;
            s(i, c) = z * rt + w * ri;
        }
        for (int c = 0; c < m; ++c) {
            Int rt = u(t, c), ri = u(i, c);
            u(t, c) = x * rt + y * ri;
            u(i, c) = z * rt + w * ri;
        }
    };
    auto combine_cols = [&](int t, int j, const Int& x, const Int& y, const Int& z,
                            const Int& w) {
        for (int r = 0; r < m; ++r) {
            Int ct = s(r, t), cj = s(r, j);
            s(r, t) = x * ct + y * cj;
            s(r, j) = z * ct + w * cj;
        }
        for (int r = 0; r < n; ++r) {
            Int ct = v(r, t), cj = v(r, j);
            v(r, t) = x * ct + y * cj;
            v(r, j) = z * ct + w * cj;
        }
    };
    auto negate_row = [&](int i) {
        for (int c = 0; c < n; ++c) s(i, c) = -s(i, c);
        for (int c = 0; c < m; ++c) u(i, c) = -u(i, c);
    };

    const int steps = std::min(m, n);
    for (int t = 0; t < steps; ++t) {
        // minimal-absolute-value pivot in the trailing submatrix
        int pi = -1, pj = -1;
        for (int i = t; i < m; ++i)
            for (int j = t; j < n; ++j)
                if (s(i, j) != 0 && (pi < 0 || abs(s(i, j)) < abs(s(pi, pj)))) pi = i, pj = j;
        if (pi < 0) break;  // trailing submatrix is zero
        swap_rows(t, pi);
        swap_cols(t, pj);

        while (true) {
            for (int i = t + 1; i < m; ++i) {
                const Int& p = s(t, t);
                const Int& e = s(i, t);
                if (e == 0) continue;
                if (e % p == 0) {
                    add_row(i, t, -(e / p));
                } else {
                    auto [g, x, y] = detail::egcd(p, e);
                    combine_rows(t, i, x, y, -(e / g), p / g);
                }
            }
            for (int j = t + 1; j < n; ++j) {
                const Int& p = s(t, t);
                const Int& e = s(t, j);
                if (e == 0) continue;
                if (e % p == 0) {
                    add_col(j, t, -(e / p));
                } else {
                    auto [g, x, y] = detail::egcd(p, e);
                    combine_cols(t, j, x, y, -(e / g), p / g);
                }
            }
            // column t may have been re-dirtied by a column combine
            bool clean = true;
            for (int i = t + 1; i < m && clean; ++i) clean = s(i, t) == 0;
            for (int j = t + 1; j < n && clean; ++j) clean = s(t, j) == 0;
            if (!clean) continue;
            // pivot must divide the whole trailing submatrix
            int bad = -1;
            for (int i = t + 1; i < m && bad < 0; ++i)
                for (int j = t + 1; j < n; ++j)
                    if (s(i, j) % s(t, t) != 0) {
                        bad = i;
                        break;
                    }
            if (bad < 0) break;
            add_row(t, bad, 1);
        }
        if (s(t, t) < 0) negate_row(t);
    }

    for (int t = 0; t < steps; ++t)
        if (s(t, t) != 0) d.invariant_factors.push_back(s(t, t));
    return d;
}

// Z-basis of {x : a·x = 0}, as matrix columns.  The basis is saturated:
// columns r..n-1 of the unimodular V extend to a basis of Z^n, so every
// integer kernel vector is an integer combination of them.
inline IntMatrix integer_kernel(const IntMatrix& a) {
    SmithDecomposition d = smith_normal_form(a);
    const int rank = static_cast<int>(d.invariant_factors.size());
    IntMatrix k(a.cols, a.cols - rank);
    for (int i = 0; i < a.cols; ++i)
        for (int j = rank; j < a.cols; ++j) k(i, j - rank) = d.v(i, j);
    return k;
}

// Matrix of the induced map on r-th exterior powers: entry (I, J) is the
// r x r minor of t with row set I and column set J, subsets enumerated in
// lexicographic order.  wedge(t, 0) = [1], wedge(t, 1) = t.
inline IntMatrix wedge_matrix(const IntMatrix& t, int r);

// Fraction-free (Bareiss) determinant.
inline Int determinant(const IntMatrix& a) {
    if (a.rows != a.cols) throw invalid_input("determinant: matrix is not square");
    const int n = a.rows;
    if (n == 0) return 1;
    IntMatrix b = a;
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (b(k, k) == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (b(i, k) != 0) {
                    piv = i;
                    break;
                }
            if (piv < 0) return 0;
            for (int c = 0; c < n; ++c) std::swap(b(k, c), b(piv, c));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                b(i, j) = (b(i, j) * b(k, k) - b(i, k) * b(k, j)) / prev;  // exact
        prev = b(k, k);
    }
    return sign > 0 ? b(n - 1, n - 1) : -b(n - 1, n - 1);
}

inline IntMatrix wedge_matrix(const IntMatrix& t, int r) {
    if (r < 0 || r > std::min(t.rows, t.cols))
        throw invalid_input("wedge_matrix: degree out of range");
    auto row_sets = detail::subsets_lex(t.rows, r);
    auto col_sets = detail::subsets_lex(t.cols, r);
    IntMatrix w(static_cast<int>(row_sets.size()), static_cast<int>(col_sets.size()));
    for (std::size_t bi = 0; bi < row_sets.size(); ++bi)
        for (std::size_t bj = 0; bj < col_sets.size(); ++bj) {
            IntMatrix minor(r, r);
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < r; ++j) minor(i, j) = t(row_sets[bi][i], col_sets[bj][j]);
            w(static_cast<int>(bi), static_cast<int>(bj)) = determinant(minor);
        }
    return w;
}

// Rank over Q by fraction-free Gaussian elimination with full pivoting.
inline int rank_q(const IntMatrix& a) {
    IntMatrix b = a;
    const int m = b.rows, n = b.cols;
    Int prev = 1;
    int r = 0;
    while (r < std::min(m, n)) {
        int pi = -1, pj = -1;
        for (int i = r; i < m && pi < 0; ++i)
            for (int j = r; j < n; ++j)
                if (b(i, j) != 0) {
                    pi = i;
                    pj = j;
                    break;
                }
        if (pi < 0) break;
        for (int c = 0; c < n; ++c) std::swap(b(r, c), b(pi, c));
        for (int i = 0; i < m; ++i) std::swap(b(i, r), b(i, pj));
        for (int i = r + 1; i < m; ++i)
            for (int j = r + 1; j < n; ++j)
                b(i, j) = (b(i, j) * b(r, r) - b(i, r) * b(r, j)) / prev;
        prev = b(r, r);
        ++r;
    }
    return r;
}

// Exact solve of a·x = b over Q by Gauss-Jordan elimination.  Throws
// inconsistent_system when no solution exists and rank_deficient when the
// solution is not unique; otherwise the unique solution is returned.
inline RatMatrix solve_exact(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows != b.rows) throw invalid_input("solve_exact: row counts differ");
    const int m = a.rows, n = a.cols, k = b.cols;
    RatMatrix w(m, n + k);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) w(i, j) = Rat(a(i, j));
        for (int j = 0; j < k; ++j) w(i, n + j) = Rat(b(i, j));
    }
    std::vector<int> pivot_col;
    int row = 0;
    for (int col = 0; col < n && row < m; ++col) {
        int piv = -1;
        for (int i = row; i < m; ++i)
            if (w(i, col) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        for (int j = 0; j < n + k; ++j) std::swap(w(row, j), w(piv, j));
        Rat p = w(row, col);
        for (int j = 0; j < n + k; ++j) w(row, j) /= p;
        for (int i = 0; i < m; ++i) {
            if (i == row || w(i, col) == 0) continue;
            Rat f = w(i, col);
            for (int j = 0; j < n + k; ++j) w(i, j) -= f * w(row, j);
        }
        pivot_col.push_back(col);
        ++row;
    }
    for (int i = row; i < m; ++i)
        for (int j = 0; j < k; ++j)
            if (w(i, n + j) != 0)
                throw inconsistent_system("solve_exact: system has no solution");
    if (static_cast<int>(pivot_col.size()) < n)
        throw rank_deficient("solve_exact: matrix does not have full column rank");
    RatMatrix x(n, k);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < k; ++j) x(i, j) = w(i, n + j);
    return x;
}

}  // namespace skeleta
