#pragma once
#include <random>

#include "symp/algebra.hpp"
#include "symp/constructions.hpp"

namespace fixtures {

using namespace symp;

inline Presentation line() { // Q[x], weight 1
    return build_presentation({{"x", 0, 1}}, {});
}

inline Presentation plane() { // Q[x, y]
    return build_presentation({{"x", 0, 1}, {"y", 0, 1}}, {});
}

inline Presentation space3() { // Q[x1, x2, x3]
    return build_presentation({{"x1", 0, 1}, {"x2", 0, 1}, {"x3", 0, 1}}, {});
}

inline Presentation odd_theta() { // free on one odd generator of degree -1
    return build_presentation({{"theta", -1, 1}}, {});
}

inline Presentation rcrit_x3() { // Koszul model of RCrit(x^3)
    std::vector<GeneratorDecl> gens{{"x", 0, 1}, {"xi", -1, 2}};
    Polynomial dxi;
    dxi.add_term(Monomial{{{0, 2}}}, Rational(3)); // 3x^2
    return build_presentation(gens, {{"xi", dxi}});
}

// random homogeneous polynomial at a given (degree, weight), possibly zero
inline Polynomial random_homogeneous(const GradedRing& R, int degree, int weight, std::mt19937& rng) {
    auto basis = bigraded_basis(R, degree, weight);
    std::uniform_int_distribution<int> coef(-3, 3);
    Polynomial p;
    for (const auto& m : basis) p.add_term(m, Rational(coef(rng)));
    return p;
}

// random homogeneous element of a random bidegree drawn from the ring's range
inline Polynomial random_element(const GradedRing& R, std::mt19937& rng, int wmax = 4) {
    std::uniform_int_distribution<int> wpick(1, wmax);
    for (int attempt = 0; attempt < 20; ++attempt) {
        int w = wpick(rng);
        // find degrees realized at this weight
        std::map<int, int> degs;
        for (const auto& m : monomials_of_weight(R, w)) degs[mono_degree(R, m)]++;
        if (degs.empty()) continue;
        std::uniform_int_distribution<int> dpick(0, (int)degs.size() - 1);
        auto it = degs.begin();
        std::advance(it, dpick(rng));
        Polynomial p = random_homogeneous(R, it->first, w, rng);
        if (!p.is_zero()) return p;
    }
    return Polynomial{};
}

// random weight-homogeneous presentation: a few generators with degrees in
// [-2, 0], weights <= 3, and a differential built to square to zero by
// construction (d only hits generators declared earlier, checked by retry)
inline Presentation random_presentation(std::mt19937& rng) {
    std::uniform_int_distribution<int> ngen(1, 4);
    std::uniform_int_distribution<int> deg(-2, 0);
    std::uniform_int_distribution<int> wt(1, 3);
    for (int attempt = 0;; ++attempt) {
        int N = ngen(rng);
        std::vector<GeneratorDecl> gens;
        for (int i = 0; i < N; ++i)
            gens.push_back({"g" + std::to_string(i), deg(rng), wt(rng)});
        // closed generators first, then try to give later generators a
        // differential valued in the subring of earlier closed ones
        std::vector<DiffAssignment> diffs;
        GradedRing R;
        std::vector<int> closed;
        for (int i = 0; i < N; ++i) {
            GeneratorDecl g = gens[i];
            g.parity = mod2(g.degree);
            R.add_gen(g);
        }
        std::uniform_int_distribution<int> coin(0, 1);
        for (int i = 0; i < N; ++i) {
            if (coin(rng) == 0 || closed.empty()) {
                closed.push_back(i);
                continue;
            }
            // candidate differential: homogeneous polynomial in closed gens
            GradedRing sub;
            std::vector<int> subidx;
            for (int j : closed) {
                GeneratorDecl g = R.gens[j];
                sub.add_gen(g);
                subidx.push_back(j);
            }
            auto basis = bigraded_basis(sub, gens[i].degree + 1, gens[i].weight);
            if (basis.empty()) {
                closed.push_back(i);
                continue;
            }
            std::uniform_int_distribution<int> coef(-2, 2);
            Polynomial dp;
            for (const auto& m : basis) {
                Monomial lifted;
                for (auto [g, e] : m.factors) lifted.factors.push_back({subidx[g], e});
                dp.add_term(lifted, Rational(coef(rng)));
            }
            if (!dp.is_zero()) diffs.push_back({gens[i].name, dp});
        }
        try {
            return build_presentation(gens, diffs);
        } catch (const Error&) {
            if (attempt > 50) throw;
        }
    }
}

// random graded mixed complex: direct sums of four atom shapes conjugated by
// a bidegree-preserving basis change; validates by construction
inline ExplicitMixed random_mixed(std::mt19937& rng) {
    std::uniform_int_distribution<int> natoms(1, 3), atom(0, 3), deg(-2, 1), wt(0, 3), coef(1, 2), sign(0, 1);
    ExplicitMixed E;
    std::vector<std::tuple<std::size_t, std::size_t, Rational, bool>> ops; // (to, from, c, is_eps)
    int N = natoms(rng);
    for (int a = 0; a < N; ++a) {
        int m = deg(rng), q = wt(rng);
        Rational c(coef(rng) * (sign(rng) ? 1 : -1));
        std::size_t base = E.cells.size();
        std::string t = std::to_string(a);
        switch (atom(rng)) {
        case 0:
            E.cells.push_back({"s" + t, m, q});
            break;
        case 1: // d-pair
            E.cells.push_back({"a" + t, m, q});
            E.cells.push_back({"b" + t, m + 1, q});
            ops.push_back({base + 1, base, c, false});
            break;
        case 2: // eps-pair
            E.cells.push_back({"a" + t, m, q});
            E.cells.push_back({"c" + t, m - 1, q + 1});
            ops.push_back({base + 1, base, c, true});
            break;
        default: // free mixed cell: a, da, eps a, eps da
            E.cells.push_back({"a" + t, m, q});
            E.cells.push_back({"da" + t, m + 1, q});
            E.cells.push_back({"ea" + t, m - 1, q + 1});
            E.cells.push_back({"eda" + t, m, q + 1});
            ops.push_back({base + 1, base, c, false});
            ops.push_back({base + 2, base, Rational(1), true});
            ops.push_back({base + 3, base + 1, Rational(1), true});
            ops.push_back({base + 3, base + 2, -c, false});
            break;
        }
    }
    std::size_t n = E.cells.size();
    E.d = SparseMatrix(n, n);
    E.eps = SparseMatrix(n, n);
    for (auto& [to, from, c, is_eps] : ops) (is_eps ? E.eps : E.d).set(to, from, c);
    std::map<std::pair<int, int>, std::vector<std::size_t>> blocks;
    for (std::size_t i = 0; i < n; ++i) blocks[{E.cells[i].degree, E.cells[i].weight}].push_back(i);
    SparseMatrix P(n, n);
    std::uniform_int_distribution<int> entry(-2, 2);
    for (auto& [key, idx] : blocks) {
        std::size_t k = idx.size();
        for (;;) {
            SparseMatrix B(k, k);
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) {
                    Rational v(entry(rng));
                    if (v != 0) B.set(i, j, v);
                }
            SparseMatrix Binv;
            if (!inverse(B, Binv)) continue;
            for (const auto& [rc, v] : B.entries()) P.set(idx[rc.first], idx[rc.second], v);
            break;
        }
    }
    SparseMatrix Pinv;
    if (!inverse(P, Pinv)) throw ShapeMismatch("basis change not invertible");
    E.d = P * E.d * Pinv;
    E.eps = P * E.eps * Pinv;
    E.validate();
    return E;
}

} // namespace fixtures
