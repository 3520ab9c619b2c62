#pragma once
#include <map>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace symp {

// Sparse matrix over Q.  Zero entries are never stored.
class SparseMatrix {
public:
    SparseMatrix() : rows_(0), cols_(0) {}
    SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    const std::map<std::pair<std::size_t, std::size_t>, Rational>& entries() const { return entries_; }

    Rational get(std::size_t r, std::size_t c) const {
        auto it = entries_.find({r, c});
        return it == entries_.end() ? Rational(0) : it->second;
    }

    void set(std::size_t r, std::size_t c, const Rational& v) {
        if (r >= rows_ || c >= cols_) throw ShapeMismatch("entry outside matrix");
        if (v == 0) entries_.erase({r, c});
        else entries_[{r, c}] = v;
    }

    void add(std::size_t r, std::size_t c, const Rational& v) { set(r, c, get(r, c) + v); }

    bool is_zero() const { return entries_.empty(); }

    SparseMatrix operator*(const SparseMatrix& o) const {
        if (cols_ != o.rows_) throw ShapeMismatch("matrix product shapes");
        SparseMatrix out(rows_, o.cols_);
        for (const auto& [rc, v] : entries_)
            for (std::size_t j = 0; j < o.cols_; ++j) {
                Rational w = o.get(rc.second, j);
                if (w != 0) out.add(rc.first, j, v * w);
            }
        return out;
    }

    SparseMatrix operator+(const SparseMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeMismatch("matrix sum shapes");
        SparseMatrix out = *this;
        for (const auto& [rc, v] : o.entries_) out.add(rc.first, rc.second, v);
        return out;
    }

    SparseMatrix operator-() const {
        SparseMatrix out(rows_, cols_);
        for (const auto& [rc, v] : entries_) out.entries_[rc] = -v;
        return out;
    }

    SparseMatrix operator*(const Rational& s) const {
        SparseMatrix out(rows_, cols_);
        if (s != 0)
            for (const auto& [rc, v] : entries_) out.entries_[rc] = v * s;
        return out;
    }

    SparseMatrix transpose() const {
        SparseMatrix out(cols_, rows_);
        for (const auto& [rc, v] : entries_) out.entries_[{rc.second, rc.first}] = v;
        return out;
    }

    std::vector<Rational> apply(const std::vector<Rational>& x) const {
        if (x.size() != cols_) throw ShapeMismatch("matrix-vector shapes");
        std::vector<Rational> y(rows_, Rational(0));
        for (const auto& [rc, v] : entries_) y[rc.first] += v * x[rc.second];
        return y;
    }

    bool operator==(const SparseMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_;
    }

private:
    std::size_t rows_, cols_;
    std::map<std::pair<std::size_t, std::size_t>, Rational> entries_;
};

struct RankKernel {
    std::size_t rank = 0;
    std::vector<std::vector<Rational>> kernel_basis; // each of length cols
};

namespace detail {

// Row-echelon data from deterministic fraction-clearing Gaussian elimination.
// Pivot rule: scan columns left to right, within a column take the smallest
// untouched row with a nonzero entry.  This is the "smallest (row, col) lex"
// rule and makes every output reproducible.
struct Echelon {
    std::vector<std::vector<Rational>> rows;   // reduced rows, dense
    std::vector<std::size_t> pivot_cols;       // pivot column of rows[i]
    std::size_t cols = 0;
};

inline Echelon echelonize(const SparseMatrix& m) {
    Echelon e;
    e.cols = m.cols();
    std::vector<std::vector<Rational>> work(m.rows(), std::vector<Rational>(m.cols(), Rational(0)));
    for (const auto& [rc, v] : m.entries()) work[rc.first][rc.second] = v;

    std::size_t next = 0; // next row slot to fill
    for (std::size_t c = 0; c < m.cols() && next < work.size(); ++c) {
        std::size_t piv = work.size();
        for (std::size_t r = next; r < work.size(); ++r)
            if (work[r][c] != 0) { piv = r; break; }
        if (piv == work.size()) continue;
        std::swap(work[next], work[piv]);
        Rational inv = 1 / work[next][c];
        for (auto& x : work[next]) x *= inv;
        for (std::size_t r = 0; r < work.size(); ++r) {
            if (r == next || work[r][c] == 0) continue;
            Rational f = work[r][c];
            for (std::size_t j = c; j < m.cols(); ++j) work[r][j] -= f * work[next][j];
        }
        e.pivot_cols.push_back(c);
        ++next;
    }
    work.resize(next);
    e.rows = std::move(work);
    return e;
}

} // namespace detail

// Exact rank and a deterministic kernel basis, one vector per free column,
// ordered by free column index, with +1 in the free slot.
inline RankKernel rank_kernel(const SparseMatrix& m) {
    detail::Echelon e = detail::echelonize(m);
    RankKernel out;
    out.rank = e.rows.size();
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : e.pivot_cols) is_pivot[c] = true;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        if (is_pivot[c]) continue;
        std::vector<Rational> v(m.cols(), Rational(0));
        v[c] = 1;
        for (std::size_t i = 0; i < e.rows.size(); ++i)
            v[e.pivot_cols[i]] = -e.rows[i][c];
        out.kernel_basis.push_back(std::move(v));
    }
    return out;
}

// Solves m x = b exactly.  Returns false when inconsistent.
inline bool solve(const SparseMatrix& m, const std::vector<Rational>& b, std::vector<Rational>& x) {
    if (b.size() != m.rows()) throw ShapeMismatch("solve rhs length");
    SparseMatrix aug(m.rows(), m.cols() + 1);
    for (const auto& [rc, v] : m.entries()) aug.set(rc.first, rc.second, v);
    for (std::size_t r = 0; r < b.size(); ++r)
        if (b[r] != 0) aug.set(r, m.cols(), b[r]);
    detail::Echelon e = detail::echelonize(aug);
    x.assign(m.cols(), Rational(0));
    for (std::size_t i = 0; i < e.rows.size(); ++i) {
        if (e.pivot_cols[i] == m.cols()) return false; // pivot in rhs column
        x[e.pivot_cols[i]] = e.rows[i][m.cols()];
    }
    return true;
}

// Exact inverse of a square matrix; empty optional-style flag via bool return.
inline bool inverse(const SparseMatrix& m, SparseMatrix& inv) {
    if (m.rows() != m.cols()) return false;
    std::size_t n = m.rows();
    SparseMatrix aug(n, 2 * n);
    for (const auto& [rc, v] : m.entries()) aug.set(rc.first, rc.second, v);
    for (std::size_t i = 0; i < n; ++i) aug.set(i, n + i, Rational(1));
    detail::Echelon e = detail::echelonize(aug);
    if (e.rows.size() < n) return false;
    for (std::size_t i = 0; i < n; ++i)
        if (e.pivot_cols[i] != i) return false;
    inv = SparseMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (e.rows[i][n + j] != 0) inv.set(i, j, e.rows[i][n + j]);
    return true;
}

} // namespace symp
