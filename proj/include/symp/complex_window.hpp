#pragma once
#include <map>
#include <string>
#include <vector>

#include "errors.hpp"
#include "sparse_matrix.hpp"

namespace symp {

// A finite window [lo, hi] of a cochain complex, with per-degree labelled
// bases and the differentials d^m : C^m -> C^{m+1} for lo <= m < hi.
// Degrees outside the window are treated as unknown, not zero; that is why
// boundary cohomology is only reported "uncertified".
struct ComplexWindow {
    int lo = 0, hi = -1; // empty when hi < lo
    std::map<int, std::vector<std::string>> labels;   // basis labels per degree
    std::map<int, SparseMatrix> diff;                 // diff[m] : C^m -> C^{m+1}

    std::size_t dim(int m) const {
        auto it = labels.find(m);
        return it == labels.end() ? 0 : it->second.size();
    }

    void validate() const {
        for (int m = lo; m < hi; ++m) {
            const SparseMatrix& d = diff_at(m);
            if (d.cols() != dim(m) || d.rows() != dim(m + 1))
                throw ShapeMismatch("differential shape at degree " + std::to_string(m));
            if (m + 1 < hi) {
                SparseMatrix sq = diff_at(m + 1) * d;
                if (!sq.is_zero())
                    throw DSquaredNonzero("window differential squares to nonzero at degree " + std::to_string(m));
            }
        }
    }

    const SparseMatrix& diff_at(int m) const {
        static const SparseMatrix empty;
        auto it = diff.find(m);
        if (it == diff.end()) {
            if (dim(m) != 0 || dim(m + 1) != 0)
                throw ShapeMismatch("missing differential at degree " + std::to_string(m));
            return empty;
        }
        return it->second;
    }
};

struct DegreeReport {
    std::size_t dimension = 0;
    std::vector<std::vector<Rational>> representatives; // cocycle vectors in the degree's basis
    bool certified = false;
};

struct CohomologyReport {
    std::map<int, DegreeReport> by_degree;

    std::size_t dim(int m) const {
        auto it = by_degree.find(m);
        return it == by_degree.end() ? 0 : it->second.dimension;
    }
    bool certified(int m) const {
        auto it = by_degree.find(m);
        return it != by_degree.end() && it->second.certified;
    }
};

// Exact cohomology of a window.  Interior degrees are certified; the two
// boundary degrees are computed with the clipped maps and flagged.
inline CohomologyReport cohomology(const ComplexWindow& w) {
    w.validate();
    CohomologyReport rep;
    if (w.hi < w.lo) return rep;
    for (int m = w.lo; m <= w.hi; ++m) {
        DegreeReport dr;
        std::size_t n = w.dim(m);
        SparseMatrix out = (m < w.hi) ? w.diff_at(m) : SparseMatrix(0, n);
        RankKernel ker = rank_kernel(out);
        std::size_t rank_in = 0;
        std::vector<std::vector<Rational>> img; // image vectors of incoming d
        if (m > w.lo) {
            const SparseMatrix& din = w.diff_at(m - 1);
            rank_in = rank_kernel(din).rank;
            for (std::size_t c = 0; c < din.cols(); ++c) {
                std::vector<Rational> col(n, Rational(0));
                for (std::size_t r = 0; r < n; ++r) col[r] = din.get(r, c);
                img.push_back(std::move(col));
            }
        }
        dr.dimension = ker.kernel_basis.size() - rank_in;
        // Representatives: kernel vectors independent modulo the image.
        // A growing echelon span (pivot-sorted, pivots normalized to 1)
        // makes the selection deterministic.
        {
            std::map<std::size_t, std::vector<Rational>> span; // pivot -> row
            auto insert_into_span = [&span, n](std::vector<Rational> v) {
                for (auto& [p, row] : span)
                    if (v[p] != 0) {
                        Rational f = v[p];
                        for (std::size_t i = p; i < n; ++i) v[i] -= f * row[i];
                    }
                std::size_t lead = n;
                for (std::size_t i = 0; i < n; ++i)
                    if (v[i] != 0) { lead = i; break; }
                if (lead == n) return false;
                Rational inv = 1 / v[lead];
                for (std::size_t i = lead; i < n; ++i) v[i] *= inv;
                span.emplace(lead, std::move(v));
                return true;
            };
            for (const auto& v : img) insert_into_span(v);
            for (const auto& k : ker.kernel_basis) {
                if (dr.representatives.size() == dr.dimension) break;
                if (insert_into_span(k)) dr.representatives.push_back(k);
            }
        }
        dr.certified = (m > w.lo && m < w.hi);
        rep.by_degree[m] = dr;
    }
    return rep;
}

} // namespace symp
