#pragma once
#include <string>
#include <vector>

#include "algebra.hpp"
#include "complex_window.hpp"
#include "errors.hpp"

namespace symp {

// Sym over the base of one degree-shifted copy of the Kaehler 1-forms.
// Each base generator x gets a form generator d_x with the same stored
// degree and internal weight but flipped parity, so squares/symmetry come
// out right: (d_x)^2 = 0 for even x, polynomial d_xi for odd xi.
struct DeRhamAlgebra : GradedRing {
    Presentation base;
    int n_base = 0;                    // generators [0, n_base) are the base ones
    std::vector<Polynomial> d_images;  // internal differential on every generator

    int delta(int g) const { return n_base + g; }     // index of d_x for base gen g
    bool is_delta(int g) const { return g >= n_base; }
};

inline Polynomial d_internal(const DeRhamAlgebra& D, const Polynomial& p) {
    return apply_derivation(D, 1, [&D](int g) { return D.d_images[g]; }, p);
}

// The de Rham differential: x -> d_x, d_x -> 0, extended as an odd derivation.
inline Polynomial d_de_rham(const DeRhamAlgebra& D, const Polynomial& p) {
    return apply_derivation(D, 1, [&D](int g) {
        return D.is_delta(g) ? Polynomial{} : poly_gen(D.delta(g));
    }, p);
}

inline DeRhamAlgebra de_rham_algebra(const Presentation& P) {
    DeRhamAlgebra D;
    D.base = P;
    D.n_base = (int)P.gens.size();
    for (const auto& g : P.gens) D.add_gen(g);
    for (const auto& g : P.gens) {
        GeneratorDecl f;
        f.name = "d_" + g.name;
        f.degree = g.degree;
        f.weight = g.weight;
        f.parity = mod2(g.parity + 1);
        f.form_weight = 1;
        f.base = D.by_name.at(g.name);
        D.add_gen(f);
    }
    D.d_images.assign(D.gens.size(), Polynomial{});
    auto lift = [&D](const Polynomial& p) { // base polynomial, identical indices
        return p;
    };
    for (int g = 0; g < D.n_base; ++g) D.d_images[g] = lift(P.d_images[g]);
    // d(d_x) = -eps(d x): the sign that makes d eps + eps d = 0
    for (int g = 0; g < D.n_base; ++g) {
        Polynomial dg = D.d_images[g];
        D.d_images[D.delta(g)] = Polynomial{} - d_de_rham(D, dg);
    }
    return D;
}

// Left interior product along a tangent vector v = sum_j coeff_j * dual(d_{x_j}).
// Acts as a super-derivation of parity par(v): kills base generators, sends
// d_{x_j} to coeff_j.
struct TangentVector {
    std::vector<Polynomial> coeff; // per base generator, polynomials over D
    int parity = 0;
};

inline TangentVector coordinate_vector(const DeRhamAlgebra& D, int base_gen) {
    TangentVector v;
    v.coeff.assign(D.n_base, Polynomial{});
    v.coeff[base_gen] = poly_one();
    v.parity = D.gens[D.delta(base_gen)].parity;
    return v;
}

inline Polynomial contract(const DeRhamAlgebra& D, const TangentVector& v, const Polynomial& f) {
    return apply_derivation(D, v.parity, [&D, &v](int g) {
        return D.is_delta(g) ? v.coeff[g - D.n_base] : Polynomial{};
    }, f);
}

// Expands a 1-form as sum_i a_i d_{x_i} with left coefficients a_i.
inline std::vector<Polynomial> one_form_coefficients(const DeRhamAlgebra& D, const Polynomial& f) {
    std::vector<Polynomial> out(D.n_base);
    for (const auto& [m, c] : f.terms) {
        int which = -1;
        Monomial rest;
        for (auto [g, e] : m.factors) {
            if (D.is_delta(g)) {
                if (which != -1 || e != 1) throw ShapeMismatch("not a 1-form");
                which = g - D.n_base;
            } else {
                rest.factors.push_back({g, e});
            }
        }
        if (which == -1) throw ShapeMismatch("form-weight-0 term in 1-form");
        // m = rest * d_x with d_x rightmost (delta indices are the largest);
        // moving the coefficient to the left costs nothing
        out[which].add_term(rest, c);
    }
    return out;
}

struct PairingMatrix {
    int n = 0;                                      // shift
    std::vector<std::vector<Polynomial>> entries;   // [row delta-gen][col tangent-gen]
    std::vector<std::string> row_labels, col_labels;

    SparseMatrix augmentation_reduced() const {
        SparseMatrix M(entries.size(), entries.empty() ? 0 : entries[0].size());
        for (std::size_t i = 0; i < entries.size(); ++i)
            for (std::size_t j = 0; j < entries[i].size(); ++j) {
                Rational c = augmentation_reduce(entries[i][j]);
                if (c != 0) M.set(i, j, c);
            }
        return M;
    }
};

// The pairing matrix of a 2-form: column j is the contraction of the j-th
// coordinate vector, expanded in the d_x basis.  Verifies the cocycle
// condition and the chain-map identity
//   d(iota_j omega) = -(-1)^{p_j} iota_{v_j'}(omega),  v_j'(d_x_k) = iota_j(d(d_x_k)),
// which is what "Theta is a chain map T -> Omega^1[n]" unpacks to when
// d(omega) = 0.
inline PairingMatrix theta_matrix(const DeRhamAlgebra& D, const Polynomial& omega0, int n) {
    if (!omega0.is_zero() && poly_form_weight(D, omega0) != 2)
        throw ShapeMismatch("theta_matrix expects a 2-form");
    if (!d_internal(D, omega0).is_zero()) throw NotACocycle("omega0 is not a d-cocycle");
    PairingMatrix M;
    M.n = n;
    M.entries.assign(D.n_base, std::vector<Polynomial>(D.n_base));
    for (int g = 0; g < D.n_base; ++g) {
        M.row_labels.push_back(D.gens[D.delta(g)].name);
        M.col_labels.push_back("@" + D.base.gens[g].name);
    }
    for (int j = 0; j < D.n_base; ++j) {
        TangentVector vj = coordinate_vector(D, j);
        Polynomial col = contract(D, vj, omega0);
        std::vector<Polynomial> coeffs = one_form_coefficients(D, col);
        for (int i = 0; i < D.n_base; ++i) M.entries[i][j] = coeffs[i];
        // chain-map identity
        TangentVector vprime;
        vprime.coeff.assign(D.n_base, Polynomial{});
        vprime.parity = mod2(vj.parity + 1);
        for (int k = 0; k < D.n_base; ++k)
            vprime.coeff[k] = contract(D, vj, D.d_images[D.delta(k)]);
        Polynomial lhs = d_internal(D, col);
        Polynomial rhs = Polynomial{} - Rational(mod2(vj.parity) ? -1 : 1) * contract(D, vprime, omega0);
        if (!(lhs == rhs)) throw NotACocycle("pairing matrix fails the chain-map identity");
    }
    return M;
}

} // namespace symp
