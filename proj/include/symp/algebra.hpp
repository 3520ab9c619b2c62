#pragma once
#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"
#include "sparse_matrix.hpp"

namespace symp {

inline int mod2(int n) { return ((n % 2) + 2) % 2; }

struct GeneratorDecl {
    std::string name;
    int degree = 0;
    int weight = 1;       // internal auxiliary grading, always >= 1 for ring generators
    int parity = 0;       // Koszul parity; NOT always degree mod 2 (see de Rham layer)
    int form_weight = 0;  // number of delta-factors this generator carries
    int base = -1;        // for a delta-generator, index of the underlying generator
};

// A free graded-commutative ring given by its generator declarations.
// Presentations and de Rham algebras both sit on top of this.
struct GradedRing {
    std::vector<GeneratorDecl> gens;
    std::map<std::string, int> by_name;

    int add_gen(GeneratorDecl g) {
        if (by_name.count(g.name)) throw DuplicateName(g.name);
        by_name[g.name] = (int)gens.size();
        gens.push_back(std::move(g));
        return (int)gens.size() - 1;
    }
    int index(const std::string& name) const {
        auto it = by_name.find(name);
        if (it == by_name.end()) throw SemanticError("unknown generator: " + name);
        return it->second;
    }
};

// factors sorted by generator index; exponents > 0; odd generators have exponent 1.
struct Monomial {
    std::vector<std::pair<int, int>> factors;

    bool empty() const { return factors.empty(); }

    // Declaration-order lex with exponent vectors compared right-to-left.
    friend bool operator<(const Monomial& a, const Monomial& b) {
        auto ia = a.factors.rbegin(), ib = b.factors.rbegin();
        for (; ia != a.factors.rend() && ib != b.factors.rend(); ++ia, ++ib) {
            if (ia->first != ib->first) return ia->first < ib->first;
            if (ia->second != ib->second) return ia->second < ib->second;
        }
        return ia == a.factors.rend() && ib != b.factors.rend();
    }
    friend bool operator==(const Monomial& a, const Monomial& b) { return a.factors == b.factors; }
};

inline int mono_degree(const GradedRing& R, const Monomial& m) {
    int d = 0;
    for (auto [g, e] : m.factors) d += R.gens[g].degree * e;
    return d;
}
inline int mono_weight(const GradedRing& R, const Monomial& m) {
    int w = 0;
    for (auto [g, e] : m.factors) w += R.gens[g].weight * e;
    return w;
}
inline int mono_parity(const GradedRing& R, const Monomial& m) {
    int p = 0;
    for (auto [g, e] : m.factors) p += R.gens[g].parity * e;
    return mod2(p);
}
inline int mono_form_weight(const GradedRing& R, const Monomial& m) {
    int q = 0;
    for (auto [g, e] : m.factors) q += R.gens[g].form_weight * e;
    return q;
}

// Product of two monomials with the Koszul sign of interleaving.  Returns
// nullopt when an odd generator squares to zero.
inline std::optional<std::pair<int, Monomial>> mono_mul(const GradedRing& R, const Monomial& a, const Monomial& b) {
    // sign exponent: every odd occurrence of b passes every odd occurrence
    // of a that sits strictly to its right in declaration order
    int sign_exp = 0;
    for (auto [gb, eb] : b.factors) {
        if (R.gens[gb].parity == 0) continue;
        for (auto [ga, ea] : a.factors)
            if (ga > gb && R.gens[ga].parity == 1) sign_exp += ea * eb;
    }
    Monomial out;
    auto ia = a.factors.begin();
    auto ib = b.factors.begin();
    while (ia != a.factors.end() || ib != b.factors.end()) {
        if (ib == b.factors.end() || (ia != a.factors.end() && ia->first < ib->first)) {
            out.factors.push_back(*ia++);
        } else if (ia == a.factors.end() || ib->first < ia->first) {
            out.factors.push_back(*ib++);
        } else {
            int g = ia->first, e = ia->second + ib->second;
            if (R.gens[g].parity == 1 && e > 1) return std::nullopt;
            out.factors.push_back({g, e});
            ++ia;
            ++ib;
        }
    }
    return std::make_pair(mod2(sign_exp) ? -1 : 1, out);
}

struct Polynomial {
    std::map<Monomial, Rational> terms;

    bool is_zero() const { return terms.empty(); }

    void add_term(const Monomial& m, const Rational& c) {
        if (c == 0) return;
        auto [it, fresh] = terms.emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        Polynomial out = a;
        for (const auto& [m, c] : b.terms) out.add_term(m, c);
        return out;
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        Polynomial out = a;
        for (const auto& [m, c] : b.terms) out.add_term(m, -c);
        return out;
    }
    friend Polynomial operator*(const Rational& s, const Polynomial& a) {
        Polynomial out;
        if (s != 0)
            for (const auto& [m, c] : a.terms) out.terms[m] = s * c;
        return out;
    }
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms == b.terms; }
};

inline Polynomial poly_one() {
    Polynomial p;
    p.terms[Monomial{}] = 1;
    return p;
}
inline Polynomial poly_gen(int g) {
    Polynomial p;
    p.terms[Monomial{{{g, 1}}}] = 1;
    return p;
}
inline Polynomial poly_mono(const Monomial& m, const Rational& c) {
    Polynomial p;
    p.add_term(m, c);
    return p;
}

inline Polynomial mul(const GradedRing& R, const Polynomial& a, const Polynomial& b) {
    Polynomial out;
    for (const auto& [ma, ca] : a.terms)
        for (const auto& [mb, cb] : b.terms)
            if (auto s = mono_mul(R, ma, mb))
                out.add_term(s->second, ca * cb * s->first);
    return out;
}

// Homogeneity probes: nullopt for 0, throw when mixed.
inline std::optional<int> poly_degree(const GradedRing& R, const Polynomial& p) {
    std::optional<int> d;
    for (const auto& [m, c] : p.terms) {
        int dm = mono_degree(R, m);
        if (d && *d != dm) throw InhomogeneousDifferential("mixed degrees in polynomial");
        d = dm;
    }
    return d;
}
inline std::optional<int> poly_weight(const GradedRing& R, const Polynomial& p) {
    std::optional<int> w;
    for (const auto& [m, c] : p.terms) {
        int wm = mono_weight(R, m);
        if (w && *w != wm) throw InhomogeneousDifferential("mixed weights in polynomial");
        w = wm;
    }
    return w;
}
inline std::optional<int> poly_parity(const GradedRing& R, const Polynomial& p) {
    std::optional<int> pr;
    for (const auto& [m, c] : p.terms) {
        int pm = mono_parity(R, m);
        if (pr && *pr != pm) throw InhomogeneousDifferential("mixed parities in polynomial");
        pr = pm;
    }
    return pr;
}
inline std::optional<int> poly_form_weight(const GradedRing& R, const Polynomial& p) {
    std::optional<int> q;
    for (const auto& [m, c] : p.terms) {
        int qm = mono_form_weight(R, m);
        if (q && *q != qm) throw InhomogeneousDifferential("mixed form-weights in polynomial");
        q = qm;
    }
    return q;
}

// Super-derivation of the given parity with prescribed generator images,
// applied term by term: picking the occurrence of g_i in a monomial
// contributes (-1)^{parity_D * parity(prefix)} e_i * prefix * D(g_i) * suffix.
inline Polynomial apply_derivation(const GradedRing& R, int parity_D,
                                   const std::function<Polynomial(int)>& image,
                                   const Polynomial& p) {
    Polynomial out;
    for (const auto& [m, c] : p.terms) {
        for (std::size_t i = 0; i < m.factors.size(); ++i) {
            auto [g, e] = m.factors[i];
            Polynomial dg = image(g);
            if (dg.is_zero()) continue;
            Monomial prefix, suffix;
            for (std::size_t j = 0; j < i; ++j) prefix.factors.push_back(m.factors[j]);
            if (e > 1) prefix.factors.push_back({g, e - 1});
            for (std::size_t j = i + 1; j < m.factors.size(); ++j) suffix.factors.push_back(m.factors[j]);
            int sgn = mod2(parity_D * mono_parity(R, prefix)) ? -1 : 1;
            Polynomial term = mul(R, mul(R, poly_mono(prefix, Rational(1)), dg), poly_mono(suffix, Rational(1)));
            out = out + (c * Rational(e) * Rational(sgn)) * term;
        }
    }
    return out;
}

// Multiplicative extension of a generator assignment to a ring map.
inline Polynomial apply_morphism(const GradedRing& src, const GradedRing& dst,
                                 const std::function<Polynomial(int)>& image,
                                 const Polynomial& p) {
    Polynomial out;
    for (const auto& [m, c] : p.terms) {
        Polynomial acc = poly_one();
        for (auto [g, e] : m.factors)
            for (int k = 0; k < e; ++k) acc = mul(dst, acc, image(g));
        out = out + c * acc;
    }
    return out;
}

// (phi1, phi2)-derivation of the given parity along a ring map pair:
// K(ab) = K(a) phi2(b) + (-1)^{parity_K * parity(a)} phi1(a) K(b).
inline Polynomial apply_bimodule_derivation(const GradedRing& src, const GradedRing& dst, int parity_K,
                                            const std::function<Polynomial(int)>& phi1,
                                            const std::function<Polynomial(int)>& phi2,
                                            const std::function<Polynomial(int)>& K,
                                            const Polynomial& p) {
    Polynomial out;
    for (const auto& [m, c] : p.terms) {
        // flatten the monomial into its generator word
        std::vector<int> word;
        for (auto [g, e] : m.factors)
            for (int k = 0; k < e; ++k) word.push_back(g);
        for (std::size_t i = 0; i < word.size(); ++i) {
            Polynomial kg = K(word[i]);
            if (kg.is_zero()) continue;
            Polynomial acc = poly_one();
            int prefix_parity = 0;
            for (std::size_t j = 0; j < i; ++j) {
                acc = mul(dst, acc, phi1(word[j]));
                prefix_parity += src.gens[word[j]].parity;
            }
            acc = mul(dst, acc, kg);
            for (std::size_t j = i + 1; j < word.size(); ++j) acc = mul(dst, acc, phi2(word[j]));
            int sgn = mod2(parity_K * prefix_parity) ? -1 : 1;
            out = out + (c * Rational(sgn)) * acc;
        }
    }
    return out;
}

// All monomials of the given internal weight.  Positive generator weights
// make this finite: exponents are bounded by weight / wt(gen).
inline std::vector<Monomial> monomials_of_weight(const GradedRing& R, int weight) {
    std::vector<Monomial> out;
    Monomial cur;
    std::function<void(std::size_t, int)> rec = [&](std::size_t g, int rem) {
        if (rem == 0) {
            out.push_back(cur);
            return;
        }
        if (g == R.gens.size()) return;
        rec(g + 1, rem); // exponent 0
        int wt = R.gens[g].weight;
        if (wt <= 0) throw InfinitePiece("nonpositive weight generator " + R.gens[g].name);
        int emax = (R.gens[g].parity == 1) ? 1 : rem / wt;
        for (int e = 1; e <= emax && e * wt <= rem; ++e) {
            cur.factors.push_back({(int)g, e});
            rec(g + 1, rem - e * wt);
            cur.factors.pop_back();
        }
    };
    rec(0, weight);
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<Monomial> bigraded_basis(const GradedRing& R, int degree, int weight) {
    std::vector<Monomial> out;
    for (const auto& m : monomials_of_weight(R, weight))
        if (mono_degree(R, m) == degree) out.push_back(m);
    return out;
}

inline std::vector<Monomial> trigraded_basis(const GradedRing& R, int degree, int form_weight, int weight) {
    std::vector<Monomial> out;
    for (const auto& m : monomials_of_weight(R, weight))
        if (mono_degree(R, m) == degree && mono_form_weight(R, m) == form_weight) out.push_back(m);
    return out;
}

inline std::string mono_string(const GradedRing& R, const Monomial& m) {
    if (m.factors.empty()) return "1";
    std::string s;
    for (auto [g, e] : m.factors) {
        if (!s.empty()) s += "*";
        s += R.gens[g].name;
        if (e > 1) s += "^" + std::to_string(e);
    }
    return s;
}

inline std::string poly_string(const GradedRing& R, const Polynomial& p) {
    if (p.is_zero()) return "0";
    std::string s;
    for (const auto& [m, c] : p.terms) {
        std::string cs = rat_string(c);
        if (!s.empty() && cs[0] != '-') s += "+";
        if (m.factors.empty()) {
            s += cs;
        } else if (c == 1) {
            s += mono_string(R, m);
        } else if (c == -1) {
            s += "-" + mono_string(R, m);
        } else {
            s += cs + "*" + mono_string(R, m);
        }
    }
    return s;
}

inline Rational augmentation_reduce(const Polynomial& p) {
    auto it = p.terms.find(Monomial{});
    return it == p.terms.end() ? Rational(0) : it->second;
}

// ---------------------------------------------------------------------------

struct Presentation : GradedRing {
    std::vector<Polynomial> d_images; // one per generator
    bool strict_nonpositive = false;

    Polynomial d_of(int g) const { return d_images[g]; }
};

inline Polynomial apply_d(const Presentation& P, const Polynomial& p) {
    return apply_derivation(P, 1, [&P](int g) { return P.d_images[g]; }, p);
}

struct DiffAssignment {
    std::string gen;
    Polynomial value;
};

inline Presentation build_presentation(const std::vector<GeneratorDecl>& gens,
                                       const std::vector<DiffAssignment>& diffs,
                                       bool strict_nonpositive = false) {
    Presentation P;
    P.strict_nonpositive = strict_nonpositive;
    for (GeneratorDecl g : gens) {
        if (g.weight < 1) throw NonpositiveWeight(g.name);
        if (strict_nonpositive && g.degree > 0)
            throw UnsupportedShape("positive-degree generator " + g.name + " under strict mode");
        g.parity = mod2(g.degree);
        g.form_weight = 0;
        g.base = -1;
        P.add_gen(g);
    }
    P.d_images.assign(P.gens.size(), Polynomial{});
    for (const auto& a : diffs) {
        int g = P.index(a.gen);
        P.d_images[g] = a.value;
    }
    for (std::size_t g = 0; g < P.gens.size(); ++g) {
        const Polynomial& dg = P.d_images[g];
        if (dg.is_zero()) continue;
        auto deg = poly_degree(P, dg);
        auto wt = poly_weight(P, dg);
        if (*deg != P.gens[g].degree + 1)
            throw InhomogeneousDifferential("d(" + P.gens[g].name + ") has degree " + std::to_string(*deg) +
                                            ", expected " + std::to_string(P.gens[g].degree + 1));
        if (*wt != P.gens[g].weight)
            throw InhomogeneousDifferential("d(" + P.gens[g].name + ") has weight " + std::to_string(*wt) +
                                            ", expected " + std::to_string(P.gens[g].weight));
        if (poly_parity(P, dg)) {} // parity is determined by degree here; probe for mixing only
    }
    for (std::size_t g = 0; g < P.gens.size(); ++g) {
        Polynomial dd = apply_d(P, P.d_images[g]);
        if (!dd.is_zero()) throw DSquaredNonzero("d^2(" + P.gens[g].name + ") != 0");
    }
    return P;
}

// ---------------------------------------------------------------------------

struct AlgebraMorphism {
    const Presentation* source = nullptr;
    const Presentation* target = nullptr;
    std::vector<Polynomial> images; // per source generator

    Polynomial apply(const Polynomial& p) const {
        return apply_morphism(*source, *target, [this](int g) { return images[g]; }, p);
    }
};

inline AlgebraMorphism build_morphism(const Presentation& src, const Presentation& dst,
                                      std::vector<Polynomial> images) {
    AlgebraMorphism f{&src, &dst, std::move(images)};
    for (std::size_t g = 0; g < src.gens.size(); ++g) {
        const Polynomial& im = f.images[g];
        if (!im.is_zero()) {
            if (poly_degree(dst, im) != src.gens[g].degree)
                throw SemanticError("morphism does not preserve degree at " + src.gens[g].name);
            if (poly_weight(dst, im) != src.gens[g].weight)
                throw SemanticError("morphism does not preserve weight at " + src.gens[g].name);
        }
        Polynomial lhs = f.apply(src.d_images[g]);
        Polynomial rhs = apply_d(dst, im);
        if (!(lhs == rhs)) throw SemanticError("morphism does not commute with d at " + src.gens[g].name);
    }
    return f;
}

// ---------------------------------------------------------------------------
// h^0: polynomial ring on the degree-0 generators modulo d of the
// degree-(-1) generators, handled weight by weight.

struct H0Ring {
    Presentation ring;                  // degree-0 generators only, zero differential
    std::vector<Polynomial> relations;  // images of d on degree-(-1) generators
    std::map<int, std::size_t> dims_by_weight;

    std::size_t total_dim() const {
        std::size_t t = 0;
        for (auto [w, d] : dims_by_weight) t += d;
        return t;
    }
};

inline H0Ring truncation_h0(const Presentation& P, int weight_max) {
    H0Ring out;
    std::vector<int> deg0;
    for (std::size_t g = 0; g < P.gens.size(); ++g) {
        if (P.gens[g].degree == 0) {
            if (P.gens[g].parity != 0) throw UnsupportedShape("odd degree-0 generator");
            if (!P.d_images[g].is_zero()) throw UnsupportedShape("degree-0 generator with nonzero d");
            deg0.push_back((int)g);
        }
    }
    std::vector<int> remap(P.gens.size(), -1);
    for (int g : deg0) {
        GeneratorDecl gd = P.gens[g];
        remap[g] = out.ring.add_gen(gd);
    }
    out.ring.d_images.assign(out.ring.gens.size(), Polynomial{});
    auto into_ring = [&](const Polynomial& p) {
        Polynomial q;
        for (const auto& [m, c] : p.terms) {
            Monomial mm;
            for (auto [g, e] : m.factors) {
                if (remap[g] < 0) throw UnsupportedShape("relation involves non-degree-0 generator");
                mm.factors.push_back({remap[g], e});
            }
            q.add_term(mm, c);
        }
        return q;
    };
    for (std::size_t g = 0; g < P.gens.size(); ++g)
        if (P.gens[g].degree == -1 && !P.d_images[g].is_zero())
            out.relations.push_back(into_ring(P.d_images[g]));

    for (int w = 0; w <= weight_max; ++w) {
        std::vector<Monomial> basis = bigraded_basis(out.ring, 0, w);
        std::map<Monomial, std::size_t> pos;
        for (std::size_t i = 0; i < basis.size(); ++i) pos[basis[i]] = i;
        // weight-w slice of the ideal: monomial multiples of each relation
        std::vector<std::vector<Rational>> rows;
        for (const Polynomial& rel : out.relations) {
            int wrel = poly_weight(out.ring, rel).value_or(0);
            if (rel.is_zero() || wrel > w) continue;
            for (const Monomial& m : monomials_of_weight(out.ring, w - wrel)) {
                Polynomial prod = mul(out.ring, poly_mono(m, Rational(1)), rel);
                std::vector<Rational> row(basis.size(), Rational(0));
                for (const auto& [mm, c] : prod.terms) row[pos.at(mm)] = c;
                rows.push_back(std::move(row));
            }
        }
        SparseMatrix M(rows.size(), basis.size());
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (std::size_t c = 0; c < basis.size(); ++c)
                if (rows[r][c] != 0) M.set(r, c, rows[r][c]);
        std::size_t rank = rank_kernel(M).rank;
        out.dims_by_weight[w] = basis.size() - rank;
    }
    return out;
}

} // namespace symp
