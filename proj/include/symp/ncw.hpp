#pragma once
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "complex_window.hpp"
#include "derham.hpp"
#include "errors.hpp"

namespace symp {

// Weight-graded mixed complex with finite pieces.  d has bidegree (+1, 0),
// eps has bidegree (-1, +1).  Pieces with weight outside
// [weight_min, weight_max] are empty; that window is what makes the
// infinite product below a finite enumeration.
struct GradedMixed {
    int weight_min = 0, weight_max = 0;
    std::function<std::vector<std::string>(int m, int q)> basis;
    std::function<SparseMatrix(int m, int q)> d;    // piece(m,q) -> piece(m+1,q)
    std::function<SparseMatrix(int m, int q)> eps;  // piece(m,q) -> piece(m-1,q+1)

    std::size_t dim(int m, int q) const {
        if (q < weight_min || q > weight_max) return 0;
        return basis(m, q).size();
    }
};

// Small mixed complex given by explicit cells; used for random instances,
// invariant models, and the cofibrant-generator oracle.
struct ExplicitMixed {
    struct Cell {
        std::string label;
        int degree = 0;
        int weight = 0;
    };
    std::vector<Cell> cells;
    SparseMatrix d, eps; // total matrices on the cell space

    void validate() const {
        std::size_t n = cells.size();
        if (d.rows() != n || d.cols() != n || eps.rows() != n || eps.cols() != n)
            throw ShapeMismatch("explicit mixed complex matrix sizes");
        for (const auto& [rc, v] : d.entries()) {
            const Cell &to = cells[rc.first], &from = cells[rc.second];
            if (to.degree != from.degree + 1 || to.weight != from.weight)
                throw ShapeMismatch("d entry violates bidegree (+1, 0)");
        }
        for (const auto& [rc, v] : eps.entries()) {
            const Cell &to = cells[rc.first], &from = cells[rc.second];
            if (to.degree != from.degree - 1 || to.weight != from.weight + 1)
                throw ShapeMismatch("eps entry violates bidegree (-1, +1)");
        }
        if (!(d * d).is_zero()) throw DSquaredNonzero("explicit mixed: d^2");
        if (!(eps * eps).is_zero()) throw DSquaredNonzero("explicit mixed: eps^2");
        if (!(d * eps + eps * d).is_zero()) throw DSquaredNonzero("explicit mixed: d eps + eps d");
    }

    std::vector<std::size_t> piece(int m, int q) const {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < cells.size(); ++i)
            if (cells[i].degree == m && cells[i].weight == q) idx.push_back(i);
        return idx;
    }

    GradedMixed view() const {
        int lo = 0, hi = 0;
        bool first = true;
        for (const auto& c : cells) {
            if (first || c.weight < lo) lo = c.weight;
            if (first || c.weight > hi) hi = c.weight;
            first = false;
        }
        GradedMixed E;
        E.weight_min = lo;
        E.weight_max = hi;
        const ExplicitMixed* self = this;
        E.basis = [self](int m, int q) {
            std::vector<std::string> out;
            for (std::size_t i : self->piece(m, q)) out.push_back(self->cells[i].label);
            return out;
        };
        auto restrict_mat = [self](const SparseMatrix& M, int m, int q, int m2, int q2) {
            auto src = self->piece(m, q);
            auto dst = self->piece(m2, q2);
            SparseMatrix out(dst.size(), src.size());
            for (std::size_t j = 0; j < src.size(); ++j)
                for (std::size_t i = 0; i < dst.size(); ++i) {
                    Rational v = M.get(dst[i], src[j]);
                    if (v != 0) out.set(i, j, v);
                }
            return out;
        };
        E.d = [self, restrict_mat](int m, int q) { return restrict_mat(self->d, m, q, m + 1, q); };
        E.eps = [self, restrict_mat](int m, int q) { return restrict_mat(self->eps, m, q, m - 1, q + 1); };
        return E;
    }
};

// Packaging of the de Rham algebra at one internal weight:
// piece(m, q) = basis of (Omega^q)^{m+q}, eps = de Rham differential,
// d = internal differential, pure relabeling so all identities carry over.
inline GradedMixed mixed_from_dr(const DeRhamAlgebra& D, int internal_weight) {
    // shared_ptr keeps the captured algebra alive inside the closures
    auto Dp = std::make_shared<DeRhamAlgebra>(D);
    GradedMixed E;
    E.weight_min = 0;
    E.weight_max = internal_weight; // q delta-factors need internal weight >= q
    E.basis = [Dp, internal_weight](int m, int q) {
        std::vector<std::string> out;
        for (const auto& mono : trigraded_basis(*Dp, m + q, q, internal_weight)) {
            std::string s;
            for (auto [g, e] : mono.factors) {
                if (!s.empty()) s += "*";
                s += Dp->gens[g].name;
                if (e > 1) s += "^" + std::to_string(e);
            }
            out.push_back(s.empty() ? "1" : s);
        }
        return out;
    };
    auto matrix_of = [Dp, internal_weight](int m, int q, int m2, int q2, auto&& op) {
        auto src = trigraded_basis(*Dp, m + q, q, internal_weight);
        auto dst = trigraded_basis(*Dp, m2 + q2, q2, internal_weight);
        std::map<Monomial, std::size_t> pos;
        for (std::size_t i = 0; i < dst.size(); ++i) pos[dst[i]] = i;
        SparseMatrix M(dst.size(), src.size());
        for (std::size_t j = 0; j < src.size(); ++j) {
            Polynomial im = op(poly_mono(src[j], Rational(1)));
            for (const auto& [mono, c] : im.terms) {
                auto it = pos.find(mono);
                if (it == pos.end()) throw ShapeMismatch("image leaves the expected piece");
                M.set(it->second, j, c);
            }
        }
        return M;
    };
    E.d = [Dp, matrix_of](int m, int q) {
        return matrix_of(m, q, m + 1, q, [Dp](const Polynomial& p) { return d_internal(*Dp, p); });
    };
    E.eps = [Dp, matrix_of](int m, int q) {
        return matrix_of(m, q, m - 1, q + 1, [Dp](const Polynomial& p) { return d_de_rham(*Dp, p); });
    };
    return E;
}

// One degree window of NC^w(E)(p): degree-n basis is the disjoint union over
// i >= i_min of piece(n - 2i, p + i), with differential
// D({m_i})_j = eps m_{j-1} + d m_j.
struct NcwWindow {
    int p = 0;
    int i_min = 0;
    std::map<int, std::vector<std::pair<int, std::string>>> labels; // degree -> (i, piece label)
    ComplexWindow window;
};

inline NcwWindow ncw_window(const GradedMixed& E, int p, int lo, int hi, int i_min = 0) {
    if (E.weight_max - E.weight_min > 100000) throw InfinitePiece("unbounded weight range");
    NcwWindow W;
    W.p = p;
    W.i_min = i_min;
    W.window.lo = lo;
    W.window.hi = hi;
    auto contributions = [&](int n) {
        // pairs (i, offset, size)
        std::vector<std::pair<int, std::size_t>> out; // (i, piece size)
        for (int i = i_min; p + i <= E.weight_max; ++i) {
            if (p + i < E.weight_min) continue;
            out.push_back({i, E.dim(n - 2 * i, p + i)});
        }
        return out;
    };
    for (int n = lo; n <= hi; ++n) {
        std::vector<std::pair<int, std::string>> lab;
        for (auto [i, sz] : contributions(n)) {
            if (sz == 0) continue;
            for (const auto& s : E.basis(n - 2 * i, p + i)) lab.push_back({i, s});
        }
        std::vector<std::string> flat;
        for (auto& [i, s] : lab) flat.push_back("[" + std::to_string(i) + "] " + s);
        W.labels[n] = lab;
        W.window.labels[n] = flat;
    }
    for (int n = lo; n < hi; ++n) {
        // offsets of each i-block in source and target degree
        std::map<int, std::size_t> src_off, dst_off;
        std::size_t acc = 0;
        for (auto [i, sz] : contributions(n)) {
            src_off[i] = acc;
            acc += sz;
        }
        std::size_t src_dim = acc;
        acc = 0;
        for (auto [i, sz] : contributions(n + 1)) {
            dst_off[i] = acc;
            acc += sz;
        }
        SparseMatrix Dm(acc, src_dim);
        for (auto [i, off] : src_off) {
            std::size_t sz = E.dim(n - 2 * i, p + i);
            if (sz == 0) continue;
            // d part: block i -> i
            if (dst_off.count(i)) {
                SparseMatrix db = E.d(n - 2 * i, p + i);
                for (const auto& [rc, v] : db.entries())
                    Dm.set(dst_off[i] + rc.first, off + rc.second, v);
            }
            // eps part: block i -> i + 1 in the next degree
            if (dst_off.count(i + 1)) {
                SparseMatrix eb = E.eps(n - 2 * i, p + i);
                for (const auto& [rc, v] : eb.entries())
                    Dm.set(dst_off[i + 1] + rc.first, off + rc.second, v);
            }
        }
        W.window.diff[n] = Dm;
    }
    W.window.validate();
    return W;
}

struct HodgeCell {
    std::size_t dimension = 0;
    bool certified = false;
};

struct HodgeTable {
    std::map<std::pair<int, int>, HodgeCell> cells; // (cohomological degree n, weight p)

    std::size_t dim(int n, int p) const {
        auto it = cells.find({n, p});
        return it == cells.end() ? 0 : it->second.dimension;
    }
    bool certified(int n, int p) const {
        auto it = cells.find({n, p});
        return it != cells.end() && it->second.certified;
    }
};

inline HodgeTable ncw_cohomology(const GradedMixed& E, int p, int lo, int hi) {
    NcwWindow W = ncw_window(E, p, lo - 1, hi + 1);
    CohomologyReport rep = cohomology(W.window);
    HodgeTable T;
    for (int n = lo; n <= hi; ++n)
        T.cells[{n, p}] = {rep.dim(n), rep.certified(n)};
    return T;
}

// Independent route: the morphism complex from the truncated cofibrant
// generator (cells a_j of degree -2j weight p+j, b_j of degree -2j-1 weight
// p+j+1, with d a_j = -b_{j-1}, eps a_j = b_j) into E.  Degree-n maps are
// weight-preserving; eps-equivariance phi eps_Q = (-1)^{|phi|} eps_E phi is
// imposed as a linear condition; the differential is
// D(phi) = d_E phi - (-1)^{|phi|} phi d_Q.  Cohomology must match
// ncw_cohomology even though no product formula appears anywhere here.
inline HodgeTable qp_oracle(const ExplicitMixed& E, int p, int lo, int hi) {
    if (E.cells.size() > 64) throw TooLarge("qp_oracle is for small instances");
    int wmax = 0;
    for (const auto& c : E.cells) wmax = std::max(wmax, c.weight);
    // truncated Q(p)
    struct QCell {
        int degree, weight;
        bool is_b;
        int j;
    };
    std::vector<QCell> q;
    for (int j = 0; p + j <= wmax + 1; ++j) {
        q.push_back({-2 * j, p + j, false, j});
        q.push_back({-2 * j - 1, p + j + 1, true, j});
    }
    auto hom_basis = [&](int n) {
        // pairs (q cell index, E cell index) with matching weight and degree shift n
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for (std::size_t a = 0; a < q.size(); ++a)
            for (std::size_t b = 0; b < E.cells.size(); ++b)
                if (E.cells[b].weight == q[a].weight && E.cells[b].degree == q[a].degree + n)
                    out.push_back({a, b});
        return out;
    };
    // eps_Q and d_Q as cell maps with coefficients: d a_j = -b_{j-1}; eps a_j = b_j
    auto q_index = [&](bool is_b, int j) -> int {
        for (std::size_t i = 0; i < q.size(); ++i)
            if (q[i].is_b == is_b && q[i].j == j) return (int)i;
        return -1;
    };
    // Assemble, per degree n, the equivariant subspace and the differential,
    // then take cohomology of the resulting window.
    int win_lo = lo - 1, win_hi = hi + 1;
    std::map<int, std::vector<std::vector<Rational>>> equiv_basis; // per degree: vectors in hom basis
    std::map<int, std::vector<std::pair<std::size_t, std::size_t>>> hom;
    for (int n = win_lo; n <= win_hi; ++n) {
        hom[n] = hom_basis(n);
        auto& hb = hom[n];
        // equivariance: for each a_j and each E cell r:
        //   phi(b_j) = (-1)^n eps_E(phi(a_j)) restricted appropriately.
        // Build the linear operator L(phi) = eps_E . phi - (-1)^n phi . eps_Q
        // on the full hom space, evaluated against all (Q cell, E cell) pairs.
        std::map<std::pair<std::size_t, std::size_t>, std::size_t> pos;
        for (std::size_t i = 0; i < hb.size(); ++i) pos[hb[i]] = i;
        std::vector<std::map<std::size_t, Rational>> rows_map;
        auto row_for = [&](std::size_t qa, std::size_t er) {
            // coefficient of the condition at (Q cell qa, E cell er):
            // sum_b eps_E[er, b] phi[qa, b] - (-1)^n sum_{qc} phi[qc, er] <eps_Q qa, qc>
            std::map<std::size_t, Rational> row;
            for (std::size_t b = 0; b < E.cells.size(); ++b) {
                Rational v = E.eps.get(er, b);
                if (v == 0) continue;
                auto it = pos.find({qa, b});
                if (it != pos.end()) row[it->second] += v;
            }
            if (!q[qa].is_b) { // eps_Q(a_j) = b_j
                int bj = q_index(true, q[qa].j);
                if (bj >= 0) {
                    auto it = pos.find({(std::size_t)bj, er});
                    if (it != pos.end()) row[it->second] -= Rational(mod2(n) ? -1 : 1);
                }
            }
            return row;
        };
        for (std::size_t qa = 0; qa < q.size(); ++qa)
            for (std::size_t er = 0; er < E.cells.size(); ++er) {
                auto row = row_for(qa, er);
                if (!row.empty()) rows_map.push_back(std::move(row));
            }
        SparseMatrix L(rows_map.size(), hb.size());
        for (std::size_t r = 0; r < rows_map.size(); ++r)
            for (const auto& [cidx, v] : rows_map[r])
                if (v != 0) L.set(r, cidx, v);
        equiv_basis[n] = rank_kernel(L).kernel_basis;
    }
    // window over the equivariant subcomplex
    ComplexWindow W;
    W.lo = win_lo;
    W.hi = win_hi;
    for (int n = win_lo; n <= win_hi; ++n) {
        std::vector<std::string> lbl;
        for (std::size_t i = 0; i < equiv_basis[n].size(); ++i) lbl.push_back("phi" + std::to_string(i));
        W.labels[n] = lbl;
    }
    for (int n = win_lo; n < win_hi; ++n) {
        auto& hb_src = hom[n];
        auto& hb_dst = hom[n + 1];
        std::map<std::pair<std::size_t, std::size_t>, std::size_t> pos_dst;
        for (std::size_t i = 0; i < hb_dst.size(); ++i) pos_dst[hb_dst[i]] = i;
        // differential on raw hom coordinates
        auto apply_D = [&](const std::vector<Rational>& phi) {
            std::vector<Rational> out(hb_dst.size(), Rational(0));
            for (std::size_t i = 0; i < hb_src.size(); ++i) {
                if (phi[i] == 0) continue;
                auto [qa, eb] = hb_src[i];
                // d_E . phi
                for (std::size_t r = 0; r < E.cells.size(); ++r) {
                    Rational v = E.d.get(r, eb);
                    if (v == 0) continue;
                    auto it = pos_dst.find({qa, r});
                    if (it != pos_dst.end()) out[it->second] += v * phi[i];
                }
            }
            // -(-1)^n phi . d_Q, assembled from the target side: d_Q a_j = -b_{j-1},
            // so (phi d_Q)(a_j) = -phi(b_{j-1})
            for (std::size_t t = 0; t < hb_dst.size(); ++t) {
                auto [qa, er] = hb_dst[t];
                if (!q[qa].is_b && q[qa].j >= 1) {
                    int bprev = q_index(true, q[qa].j - 1);
                    if (bprev >= 0) {
                        // find phi(b_{j-1} -> er)
                        for (std::size_t i = 0; i < hb_src.size(); ++i)
                            if (hb_src[i].first == (std::size_t)bprev && hb_src[i].second == er)
                                out[t] += Rational(mod2(n) ? -1 : 1) * phi[i]; // -(-1)^n * (-1)
                    }
                }
            }
            return out;
        };
        SparseMatrix Dm(equiv_basis[n + 1].size(), equiv_basis[n].size());
        // express D(phi_k) in the equivariant basis of degree n+1 by solving
        std::size_t dst_dim = hb_dst.size();
        SparseMatrix B(dst_dim, equiv_basis[n + 1].size());
        for (std::size_t k = 0; k < equiv_basis[n + 1].size(); ++k)
            for (std::size_t r = 0; r < dst_dim; ++r)
                if (equiv_basis[n + 1][k][r] != 0) B.set(r, k, equiv_basis[n + 1][k][r]);
        for (std::size_t k = 0; k < equiv_basis[n].size(); ++k) {
            std::vector<Rational> img = apply_D(equiv_basis[n][k]);
            std::vector<Rational> coords;
            if (!solve(B, img, coords))
                throw ShapeMismatch("qp_oracle: differential leaves the equivariant subcomplex");
            for (std::size_t r = 0; r < coords.size(); ++r)
                if (coords[r] != 0) Dm.set(r, k, coords[r]);
        }
        W.diff[n] = Dm;
    }
    CohomologyReport rep = cohomology(W);
    HodgeTable T;
    for (int n = lo; n <= hi; ++n)
        T.cells[{n, p}] = {rep.dim(n), rep.certified(n)};
    return T;
}

// i = 0 component of an NC cocycle vector, as coefficients in piece(n, p).
inline std::vector<Rational> underlying_projection(const NcwWindow& W, int n, const std::vector<Rational>& v) {
    const auto& lab = W.labels.at(n);
    std::vector<Rational> out;
    for (std::size_t k = 0; k < lab.size(); ++k)
        if (lab[k].first == 0) out.push_back(v[k]);
    return out;
}

} // namespace symp
