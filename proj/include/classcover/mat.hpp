/*
   Copyright 2026 the classcover authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef CLASSCOVER_MAT_HPP
#define CLASSCOVER_MAT_HPP

#include <vector>

#include "classcover/int_arith.hpp"
#include "classcover/types.hpp"

namespace classcover {

/// Dense matrix of arbitrary-precision integers.
class IntMatrix {
  public:
    IntMatrix() = default;
    IntMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static IntMatrix identity(size_t n) {
        IntMatrix m(n, n);
        for (size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    Int& operator()(size_t i, size_t j) { return data_[i * cols_ + j]; }
    const Int& operator()(size_t i, size_t j) const { return data_[i * cols_ + j]; }

    bool operator==(const IntMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

    IntMatrix operator*(const IntMatrix& o) const {
        require(cols_ == o.rows_, "IntMatrix: dimension mismatch in product");
        IntMatrix r(rows_, o.cols_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t k = 0; k < cols_; ++k) {
                const Int& a = (*this)(i, k);
                if (a == 0) continue;
                for (size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
            }
        return r;
    }

    /// Rows of `other` appended below this matrix.
    IntMatrix stacked(const IntMatrix& other) const {
        require(cols_ == other.cols_, "IntMatrix: stacking needs equal widths");
        IntMatrix r(rows_ + other.rows_, cols_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j);
        for (size_t i = 0; i < other.rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) r(rows_ + i, j) = other(i, j);
        return r;
    }

    void swap_rows(size_t a, size_t b) {
        if (a == b) return;
        for (size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }

    /// row[a] += c * row[b]
    void add_multiple(size_t a, size_t b, const Int& c) {
        if (c == 0) return;
        for (size_t j = 0; j < cols_; ++j) (*this)(a, j) += c * (*this)(b, j);
    }

    Int content() const {
        Int g = 0;
        for (const Int& x : data_) {
            g = gcd(g, x);
            if (g == 1) break;
        }
        return g;
    }

    bool is_zero() const {
        for (const Int& x : data_)
            if (x != 0) return false;
        return true;
    }

  private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<Int> data_;
};

/// Row-style Hermite normal form: row echelon over Z, positive pivots, the
/// entries above each pivot reduced into [0, pivot). Zero rows are dropped, so
/// the result has rank-many rows with the same row space as the input.
inline IntMatrix hnf(IntMatrix m) {
    const size_t rows = m.rows(), cols = m.cols();
    size_t pivot_row = 0;
    std::vector<size_t> pivot_cols;
    for (size_t col = 0; col < cols && pivot_row < rows; ++col) {
        // eliminate below using a gcd cascade
        size_t nz = pivot_row;
        while (true) {
            nz = rows;  // find a nonzero entry at or below pivot_row
            for (size_t i = pivot_row; i < rows; ++i)
                if (m(i, col) != 0) { nz = i; break; }
            if (nz == rows) break;
            m.swap_rows(pivot_row, nz);
            bool eliminated = true;
            for (size_t i = pivot_row + 1; i < rows; ++i) {
                if (m(i, col) == 0) continue;
                const Int q = m(i, col) / m(pivot_row, col);  // truncated is fine, we loop
                m.add_multiple(i, pivot_row, -q);
                if (m(i, col) != 0) eliminated = false;
            }
            if (eliminated) break;
            // move the smallest nonzero magnitude up and repeat
            size_t best = pivot_row;
            for (size_t i = pivot_row; i < rows; ++i)
                if (m(i, col) != 0 && (m(best, col) == 0 || classcover::abs(m(i, col)) < classcover::abs(m(best, col))))
                    best = i;
            m.swap_rows(pivot_row, best);
        }
        if (nz == rows && m(pivot_row, col) == 0) continue;  // no pivot in this column
        if (m(pivot_row, col) < 0)
            for (size_t j = 0; j < cols; ++j) m(pivot_row, j) = -m(pivot_row, j);
        pivot_cols.push_back(col);
        ++pivot_row;
    }
    const size_t rank = pivot_row;
    // reduce entries above each pivot into [0, pivot)
    for (size_t r = 0; r < rank; ++r) {
        const size_t col = pivot_cols[r];
        const Int& p = m(r, col);
        for (size_t i = 0; i < r; ++i) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), m(i, col).get_mpz_t(), p.get_mpz_t());
            m.add_multiple(i, r, -q);
        }
    }
    IntMatrix out(rank, cols);
    for (size_t i = 0; i < rank; ++i)
        for (size_t j = 0; j < cols; ++j) out(i, j) = m(i, j);
    return out;
}

/// Invariant factors d1 | d2 | ... | dk, k = min(rows, cols), of the Smith
/// normal form. Includes leading 1s and trailing 0s.
inline std::vector<Int> snf(IntMatrix m) {
    const size_t rows = m.rows(), cols = m.cols();
    const size_t k = std::min(rows, cols);
    std::vector<Int> diag;
    size_t top = 0;
    IntMatrix w = m;
    auto col_add = [&](IntMatrix& a, size_t dst, size_t src, const Int& c) {
        if (c == 0) return;
        for (size_t i = 0; i < a.rows(); ++i) a(i, dst) += c * a(i, src);
    };
    auto col_swap = [&](IntMatrix& a, size_t x, size_t y) {
        if (x == y) return;
        for (size_t i = 0; i < a.rows(); ++i) std::swap(a(i, x), a(i, y));
    };
    while (top < k) {
        // find a nonzero entry in the remaining block
        size_t pi = rows, pj = cols;
        for (size_t i = top; i < rows && pi == rows; ++i)
            for (size_t j = top; j < cols; ++j)
                if (w(i, j) != 0) { pi = i; pj = j; break; }
        if (pi == rows) break;  // all zero
        w.swap_rows(top, pi);
        col_swap(w, top, pj);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (size_t i = top + 1; i < rows; ++i) {
                if (w(i, top) == 0) continue;
                const Int q = w(i, top) / w(top, top);
                w.add_multiple(i, top, -q);
                if (w(i, top) != 0) {
                    w.swap_rows(top, i);
                    clean = false;
                }
            }
            for (size_t j = top + 1; j < cols; ++j) {
                if (w(top, j) == 0) continue;
                const Int q = w(top, j) / w(top, top);
                col_add(w, j, top, -q);
                if (w(top, j) != 0) {
                    col_swap(w, top, j);
                    clean = false;
                }
            }
        }
        ++top;
    }
    for (size_t i = 0; i < k; ++i) diag.push_back(classcover::abs(w(i, i)));
    // enforce the divisibility chain
    for (size_t i = 0; i + 1 < k; ++i)
        for (size_t j = i + 1; j < k; ++j) {
            if (diag[i] == 0 && diag[j] != 0) std::swap(diag[i], diag[j]);
            if (diag[i] == 0 || diag[j] == 0) continue;
            if (diag[j] % diag[i] == 0) continue;
            const Int g = gcd(diag[i], diag[j]);
            diag[j] = diag[i] / g * diag[j];
            diag[i] = g;
        }
    return diag;
}

/// Fraction-free determinant (Bareiss). Exact.
inline Int bareiss_det(IntMatrix m) {
    require(m.rows() == m.cols(), "bareiss_det: square matrix required");
    const size_t n = m.rows();
    if (n == 0) return 1;
    Int sign = 1;
    Int prev = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            size_t swap = n;
            for (size_t i = k + 1; i < n; ++i)
                if (m(i, k) != 0) { swap = i; break; }
            if (swap == n) return 0;
            m.swap_rows(k, swap);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j) {
                Int t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

/// Solve c * H = v over Q for a full-rank row-HNF matrix H (pivot columns
/// strictly increasing, zeros left of each pivot). Throws if v is outside the
/// row span. Entries of v and the result are rationals.
inline std::vector<Rat> solve_against_hnf(const IntMatrix& h, std::vector<Rat> rest) {
    require(rest.size() == h.cols(), "solve_against_hnf: size mismatch");
    std::vector<Rat> c(h.rows(), Rat(0));
    for (size_t r = 0; r < h.rows(); ++r) {
        size_t pc = h.cols();
        for (size_t j = 0; j < h.cols(); ++j)
            if (h(r, j) != 0) { pc = j; break; }
        require(pc != h.cols(), "solve_against_hnf: zero row");
        const Rat coef = rest[pc] / Rat(h(r, pc));
        c[r] = coef;
        if (coef != 0)
            for (size_t j = pc; j < h.cols(); ++j) rest[j] -= coef * Rat(h(r, j));
    }
    for (const Rat& x : rest)
        if (x != 0) throw contract_violation("solve_against_hnf: vector outside row span");
    return c;
}

/// Basis of the right kernel of m over F_p (vectors of length cols).
inline std::vector<std::vector<Int>> kernel_mod_p(IntMatrix m, const Int& p) {
    const size_t rows = m.rows(), cols = m.cols();
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j) m(i, j) = mod_floor(m(i, j), p);
    std::vector<size_t> pivot_of_col(cols, rows);
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t sel = rows;
        for (size_t i = r; i < rows; ++i)
            if (m(i, c) != 0) { sel = i; break; }
        if (sel == rows) continue;
        m.swap_rows(r, sel);
        const Int inv = invmod(m(r, c), p);
        for (size_t j = c; j < cols; ++j) m(r, j) = m(r, j) * inv % p;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || m(i, c) == 0) continue;
            const Int f = m(i, c);
            for (size_t j = c; j < cols; ++j) m(i, j) = mod_floor(m(i, j) - f * m(r, j), p);
        }
        pivot_of_col[c] = r;
        ++r;
    }
    std::vector<std::vector<Int>> basis;
    for (size_t c = 0; c < cols; ++c) {
        if (pivot_of_col[c] != rows) continue;  // pivot column
        std::vector<Int> v(cols, Int(0));
        v[c] = 1;
        for (size_t cc = 0; cc < c; ++cc) {
            if (pivot_of_col[cc] == rows) continue;
            v[cc] = mod_floor(-m(pivot_of_col[cc], c), p);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace classcover

#endif
