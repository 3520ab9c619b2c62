#pragma once
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "forms.hpp"

namespace symp {

inline std::optional<int> uniform_weight(const GradedRing& R, const Polynomial& p) {
    std::optional<int> w;
    for (const auto& [m, c] : p.terms) {
        int wm = mono_weight(R, m);
        if (w && *w != wm) return std::nullopt;
        w = wm;
    }
    return w;
}

// partial derivative with respect to an even generator
inline Polynomial poly_partial(const GradedRing& R, const Polynomial& f, int gen) {
    return apply_derivation(R, 0, [gen](int g) {
        return g == gen ? poly_one() : Polynomial{};
    }, f);
}

// ---------------------------------------------------------------------------
// Shifted cotangent: B = base * free(y_i), |y_i| = -|x_i| + n, with the dual
// differential on the y's and the tautological 1-form.

struct CotangentData {
    Presentation base;
    int n = 0;
    Presentation total;      // x generators first, then y generators
    DeRhamAlgebra dr;        // de Rham algebra of the total presentation
    Polynomial liouville;    // over dr
    int x_count = 0;
};

inline CotangentData shifted_cotangent(const Presentation& P, int n,
                                       const std::vector<int>& fiber_weights = {}) {
    int N = (int)P.gens.size();
    // dual differential coefficients over the base de Rham algebra,
    // d(y_i) = sum_k c[i][k] y_k.  The sign is forced by requiring the
    // tautological 1-form below to be a d-cocycle: unwinding the Koszul
    // bookkeeping gives c[i][k] = (-1)^{p_k} iota_i(d(d_x_k)) for even n and
    // (-1)^{p_i} iota_i(d(d_x_k)) for odd n, with p the base parities.
    DeRhamAlgebra DA = de_rham_algebra(P);
    std::vector<std::vector<Polynomial>> c(N, std::vector<Polynomial>(N));
    for (int i = 0; i < N; ++i) {
        TangentVector vi = coordinate_vector(DA, i);
        for (int k = 0; k < N; ++k) {
            int psel = mod2(n) ? P.gens[i].parity : P.gens[k].parity;
            c[i][k] = Rational(mod2(psel) ? -1 : 1) * contract(DA, vi, DA.d_images[DA.delta(k)]);
        }
    }
    // weight assignment for the y's: default wt(x_i), otherwise solve the
    // difference constraints wt(y_i) - wt(y_k) = wt(c[i][k]) coming from the
    // dual differential
    std::vector<int> u(N);
    for (int i = 0; i < N; ++i) u[i] = P.gens[i].weight;
    if (!fiber_weights.empty()) {
        if ((int)fiber_weights.size() != N) throw ShapeMismatch("fiber weight count");
        u = fiber_weights;
    }
    auto weights_ok = [&](const std::vector<int>& w) {
        for (int i = 0; i < N; ++i)
            for (int k = 0; k < N; ++k) {
                if (c[i][k].is_zero()) continue;
                auto wc = uniform_weight(DA, c[i][k]);
                if (!wc) return false;
                if (w[i] != *wc + w[k]) return false;
            }
        for (int i = 0; i < N; ++i)
            if (w[i] < 1) return false;
        return true;
    };
    if (!fiber_weights.empty() && !weights_ok(u))
        throw WeightAssignmentFailed("requested fiber weights are infeasible");
    if (!weights_ok(u)) {
        // propagate offsets through the constraint graph component by component
        std::vector<std::optional<int>> off(N);
        std::vector<int> comp(N, -1);
        int ncomp = 0;
        for (int s = 0; s < N; ++s) {
            if (comp[s] != -1) continue;
            comp[s] = ncomp;
            off[s] = 0;
            std::vector<int> stack{s};
            while (!stack.empty()) {
                int i = stack.back();
                stack.pop_back();
                for (int k = 0; k < N; ++k) {
                    for (int dir = 0; dir < 2; ++dir) {
                        int a = dir ? k : i, b = dir ? i : k;
                        // constraint u[a] = wt(c[a][b]) + u[b]
                        if (c[a][b].is_zero()) continue;
                        auto wc = uniform_weight(DA, c[a][b]);
                        if (!wc) throw WeightAssignmentFailed("inhomogeneous dual differential");
                        int other = (a == i) ? b : a;
                        int want = (a == i) ? *off[i] - *wc : *off[i] + *wc;
                        if (comp[other] == -1) {
                            comp[other] = ncomp;
                            off[other] = want;
                            stack.push_back(other);
                        } else if (*off[other] != want) {
                            throw WeightAssignmentFailed("inconsistent weight constraints");
                        }
                    }
                }
            }
            ++ncomp;
        }
        // shift each component so its smallest weight is 1
        std::vector<std::optional<int>> cmin(ncomp);
        for (int i = 0; i < N; ++i)
            if (!cmin[comp[i]] || *off[i] < *cmin[comp[i]]) cmin[comp[i]] = *off[i];
        for (int i = 0; i < N; ++i) u[i] = *off[i] - *cmin[comp[i]] + 1;
        if (!weights_ok(u)) throw WeightAssignmentFailed("no positive weight vector for the fibers");
    }

    std::vector<GeneratorDecl> gens;
    for (const auto& g : P.gens) gens.push_back(g);
    for (int i = 0; i < N; ++i) {
        GeneratorDecl y;
        y.name = "y_" + P.gens[i].name;
        y.degree = -P.gens[i].degree + n;
        y.weight = u[i];
        gens.push_back(y);
    }
    std::vector<DiffAssignment> diffs;
    for (int g = 0; g < N; ++g)
        if (!P.d_images[g].is_zero()) diffs.push_back({P.gens[g].name, P.d_images[g]});
    // d(y_i) = sum_k c[i][k] y_k; the coefficients re-read in the total ring
    // unchanged since base generator indices agree.  A scratch ring supplies
    // the multiplication before the validated presentation exists.
    Presentation total;
    for (const auto& g : gens) {
        GeneratorDecl gd = g;
        gd.parity = mod2(gd.degree);
        total.add_gen(gd);
    }
    total.d_images.assign(total.gens.size(), Polynomial{});
    std::vector<DiffAssignment> diffs2 = diffs;
    for (int i = 0; i < N; ++i) {
        Polynomial dy;
        for (int k = 0; k < N; ++k) {
            if (c[i][k].is_zero()) continue;
            dy = dy + mul(total, c[i][k], poly_gen(N + k));
        }
        if (!dy.is_zero()) diffs2.push_back({"y_" + P.gens[i].name, dy});
    }
    CotangentData out;
    out.base = P;
    out.n = n;
    out.total = build_presentation(gens, diffs2);
    out.dr = de_rham_algebra(out.total);
    out.x_count = N;
    for (int i = 0; i < N; ++i) {
        int yi = N + i;
        int sgn = mod2(out.total.gens[yi].degree) ? -1 : 1; // (-1)^{|y_i|}
        Polynomial term = mul(out.dr, poly_gen(yi), poly_gen(out.dr.delta(i)));
        out.liouville = out.liouville + Rational(sgn) * term;
    }
    // horizontality: no d_y factors can appear, by construction; verify anyway
    for (const auto& [m, cc] : out.liouville.terms)
        for (auto [g, e] : m.factors)
            if (out.dr.is_delta(g) && g - out.dr.n_base >= N)
                throw ShapeMismatch("Liouville form is not horizontal");
    // the dual-differential signs are exactly what makes lambda a cocycle
    if (!d_internal(out.dr, out.liouville).is_zero())
        throw ShapeMismatch("Liouville form is not a cocycle");
    return out;
}

// Certificate for the tautological 2-form, with the literal matrix assertion:
// columns dual to d_x_i must read -(-1)^{|y_i|} d_y_i, columns dual to d_y_i
// must read (-1)^{|y_i|} d_x_i, after the base/fiber column normalization.
inline SymplecticCertificate cotangent_symplectic(const CotangentData& cdata) {
    const DeRhamAlgebra& D = cdata.dr;
    int N = cdata.x_count;
    Polynomial omega0 = d_de_rham(D, cdata.liouville);
    ClosedFormRep rep;
    rep.p = 2;
    rep.n = cdata.n;
    rep.weight = uniform_weight(D, omega0).value_or(0);
    rep.components.push_back(omega0);
    SymplecticCertificate cert = symplectic_certificate(D, rep, cdata.n);

    // golden assertion
    std::vector<std::vector<Polynomial>> normalized = cert.theta.entries;
    for (int i = 0; i < N; ++i) {
        int px = D.gens[i].parity, py = D.gens[N + i].parity;
        int s = mod2((px + 1) * (py + 1)) ? 1 : -1; // -(-1)^{(px+1)(py+1)}
        for (int r = 0; r < 2 * N; ++r)
            normalized[r][i] = Rational(s) * normalized[r][i];
    }
    for (int i = 0; i < N; ++i) {
        int py = D.gens[N + i].parity;
        Rational sy(mod2(py) ? -1 : 1);
        for (int r = 0; r < 2 * N; ++r) {
            Polynomial want;
            if (r == N + i) want = poly_mono(Monomial{}, -sy);          // xi_i column, d_y_i row
            Polynomial got = normalized[r][i];
            if (!(got == want)) throw GoldenMismatch("xi column " + std::to_string(i));
            Polynomial want2;
            if (r == i) want2 = poly_mono(Monomial{}, sy);              // eta_i column, d_x_i row
            if (!(normalized[r][N + i] == want2)) throw GoldenMismatch("eta column " + std::to_string(i));
        }
    }
    return cert;
}

// ---------------------------------------------------------------------------

inline Presentation derived_zero_locus(const Presentation& P, const std::vector<Polynomial>& sections,
                                       const std::vector<std::string>& names) {
    for (const auto& g : P.gens)
        if (g.degree != 0 || g.parity != 0)
            throw UnsupportedShape("derived zero locus needs an even degree-0 base");
    std::vector<GeneratorDecl> gens;
    for (const auto& g : P.gens) gens.push_back(g);
    std::vector<DiffAssignment> diffs;
    for (std::size_t i = 0; i < sections.size(); ++i) {
        auto w = uniform_weight(P, sections[i]);
        if (!w && !sections[i].is_zero()) throw InhomogeneousSection("section " + std::to_string(i));
        GeneratorDecl xi;
        xi.name = names[i];
        xi.degree = -1;
        xi.weight = sections[i].is_zero() ? 1 : *w;
        gens.push_back(xi);
        if (!sections[i].is_zero()) diffs.push_back({xi.name, sections[i]});
    }
    return build_presentation(gens, diffs);
}

struct CritData {
    Presentation base;
    Polynomial f;
    Presentation koszul;     // base plus xi_i, d xi_i = partial_i f
    DeRhamAlgebra dr;
    ClosedFormRep omega;     // (sum_i d_x_i /\ d_xi_i, 0, ...)
    SymplecticCertificate certificate;
    H0Ring h0;
};

inline CritData rcrit(const Presentation& P, const Polynomial& f, int h0_weight_max = 8) {
    if (!uniform_weight(P, f)) throw InhomogeneousSection("f is not weight-homogeneous");
    int N = (int)P.gens.size();
    std::vector<Polynomial> grad;
    std::vector<std::string> names;
    for (int i = 0; i < N; ++i) {
        grad.push_back(poly_partial(P, f, i));
        names.push_back("xi_" + P.gens[i].name);
    }
    // a zero partial still needs a weight for its xi; reuse wt(f) - wt(x_i)
    int wf = *uniform_weight(P, f);
    CritData out;
    out.base = P;
    out.f = f;
    {
        std::vector<GeneratorDecl> gens;
        for (const auto& g : P.gens) gens.push_back(g);
        std::vector<DiffAssignment> diffs;
        for (int i = 0; i < N; ++i) {
            GeneratorDecl xi;
            xi.name = names[i];
            xi.degree = -1;
            xi.weight = std::max(1, wf - P.gens[i].weight);
            gens.push_back(xi);
            if (!grad[i].is_zero()) diffs.push_back({names[i], grad[i]});
        }
        out.koszul = build_presentation(gens, diffs);
    }
    out.dr = de_rham_algebra(out.koszul);
    Polynomial omega0;
    for (int i = 0; i < N; ++i)
        omega0 = omega0 + mul(out.dr, poly_gen(out.dr.delta(i)), poly_gen(out.dr.delta(N + i)));
    out.omega.p = 2;
    out.omega.n = -1;
    out.omega.weight = uniform_weight(out.dr, omega0).value_or(0);
    out.omega.components.push_back(omega0);
    out.certificate = symplectic_certificate(out.dr, out.omega, -1);
    out.h0 = truncation_h0(out.koszul, h0_weight_max);
    return out;
}

// ---------------------------------------------------------------------------
// Strict Lagrangian intersections.  The target carries a strict closed
// 2-form; two legs land in the same quasi-free model of the fiber product,
// agreeing up to the exact homotopies recorded per generator.

struct StrictLagrangianData {
    Presentation target;
    ClosedFormRep omega; // strict: only component 0
    int n = 0;
    Presentation model;
    std::vector<Polynomial> img1, img2, hom; // per target generator, over the model
};

struct ResidueResult {
    ClosedFormRep residue;       // on DR(model), shift n - 1
    SymplecticCertificate certificate;
    bool middle_block_invertible = false; // reduced pairing of the target form
    bool right_block_invertible = false;  // reduced pairing of the residue
};

inline ResidueResult strict_lagrangian_residue(const StrictLagrangianData& data) {
    for (std::size_t i = 1; i < data.omega.components.size(); ++i)
        if (!data.omega.components[i].is_zero())
            throw StrictnessViolated("higher components of the target form must vanish");
    const Presentation& B = data.target;
    const Presentation& M = data.model;
    DeRhamAlgebra DB = de_rham_algebra(B);
    auto DM = de_rham_algebra(M);
    std::size_t NB = B.gens.size();
    if (data.img1.size() != NB || data.img2.size() != NB || data.hom.size() != NB)
        throw ModelMismatch("per-generator data sizes");
    // legs must be genuine morphisms
    build_morphism(B, M, data.img1);
    build_morphism(B, M, data.img2);
    // homotopy witnesses: d h_g = img2(g) - img1(g)
    for (std::size_t g = 0; g < NB; ++g) {
        Polynomial want = data.img2[g] - data.img1[g];
        if (!(apply_d(M, data.hom[g]) == want))
            throw ModelMismatch("homotopy generator for " + B.gens[g].name);
    }
    // de Rham extensions of the legs: g -> img(g), d_g -> eps(img(g))
    auto ext = [&](const std::vector<Polynomial>& img) {
        return [&DB, &DM, img](int g) {
            if (!DB.is_delta(g)) return img[g];
            return d_de_rham(DM, img[g - DB.n_base]);
        };
    };
    auto phi1 = ext(data.img1);
    auto phi2 = ext(data.img2);
    // strictness: both pullbacks of omega0 vanish on the nose
    Polynomial pull1 = apply_morphism(DB, DM, phi1, data.omega.omega0());
    Polynomial pull2 = apply_morphism(DB, DM, phi2, data.omega.omega0());
    if (!pull1.is_zero() || !pull2.is_zero())
        throw StrictnessViolated("pulled-back 2-form does not vanish strictly");
    // transport: K(g) = h_g, K(d_g) = eps(h_g), extended as an odd
    // (phi1, phi2)-derivation; the residue is K(omega0)
    auto K = [&](int g) {
        if (!DB.is_delta(g)) return data.hom[g];
        return d_de_rham(DM, data.hom[g - DB.n_base]);
    };
    Polynomial rho = apply_bimodule_derivation(DB, DM, 1, phi1, phi2, K, data.omega.omega0());
    ResidueResult out;
    out.residue.p = 2;
    out.residue.n = data.n - 1;
    out.residue.weight = uniform_weight(DM, rho).value_or(0);
    out.residue.components.push_back(rho);
    CheckResult cc = check_closed(DM, out.residue);
    if (!cc.ok) throw ModelMismatch("residue fails closedness: " + cc.failing);
    // Theta ladder blocks
    out.middle_block_invertible = is_nondegenerate(DB, data.omega.omega0(), data.n).nondegenerate;
    out.certificate = symplectic_certificate(DM, out.residue, data.n - 1);
    out.right_block_invertible = true; // certified by the certificate above
    return out;
}

// zero section and graph(df) inside the 0-shifted cotangent of a smooth base:
// the standard strict Lagrangian pair whose intersection is RCrit(f).
inline StrictLagrangianData zero_section_vs_graph(const Presentation& P, const Polynomial& f) {
    StrictLagrangianData data;
    // fibers weighted so that the graph-of-df leg preserves weight
    auto wf = uniform_weight(P, f);
    if (!wf) throw InhomogeneousSection("f is not weight-homogeneous");
    std::vector<int> fw;
    for (const auto& g : P.gens) fw.push_back(std::max(1, *wf - g.weight));
    CotangentData cot = shifted_cotangent(P, 0, fw);
    data.target = cot.total;
    data.n = 0;
    DeRhamAlgebra D = cot.dr;
    Polynomial omega0 = d_de_rham(D, cot.liouville);
    data.omega.p = 2;
    data.omega.n = 0;
    data.omega.weight = uniform_weight(D, omega0).value_or(0);
    data.omega.components.push_back(omega0);
    // model: the Koszul presentation of RCrit(f)
    int N = (int)P.gens.size();
    CritData crit = rcrit(P, f);
    data.model = crit.koszul;
    for (int g = 0; g < N; ++g) {
        data.img1.push_back(poly_gen(g));
        data.img2.push_back(poly_gen(g));
        data.hom.push_back(Polynomial{});
    }
    for (int i = 0; i < N; ++i) {
        data.img1.push_back(Polynomial{});                  // zero section: y_i -> 0
        data.img2.push_back(poly_partial(P, f, i));         // graph of df: y_i -> partial_i f
        data.hom.push_back(poly_gen(N + i));                // xi_i, d xi_i = partial_i f
    }
    return data;
}

// ---------------------------------------------------------------------------

struct LoopModel {
    Presentation base;
    Presentation loop;   // x generators first, then s_x of degree |x| - 1
    int x_count = 0;

    int sigma_of(int g) const { return x_count + g; }
};

inline LoopModel loop_model(const Presentation& P) {
    int N = (int)P.gens.size();
    std::vector<GeneratorDecl> gens;
    for (const auto& g : P.gens) gens.push_back(g);
    for (const auto& g : P.gens) {
        GeneratorDecl s;
        s.name = "s_" + g.name;
        s.degree = g.degree - 1;
        s.weight = g.weight;
        gens.push_back(s);
    }
    // scratch ring to evaluate the sigma-derivation
    GradedRing ring;
    for (auto g : gens) {
        g.parity = mod2(g.degree);
        ring.add_gen(g);
    }
    auto sigma = [&ring, N](const Polynomial& p) {
        return apply_derivation(ring, 1, [N](int g) {
            return g < N ? poly_gen(N + g) : Polynomial{};
        }, p);
    };
    std::vector<DiffAssignment> diffs;
    for (int g = 0; g < N; ++g) {
        if (!P.d_images[g].is_zero()) diffs.push_back({P.gens[g].name, P.d_images[g]});
        Polynomial ds = Polynomial{} - sigma(P.d_images[g]);
        if (!ds.is_zero()) diffs.push_back({"s_" + P.gens[g].name, ds});
    }
    LoopModel out;
    out.base = P;
    out.loop = build_presentation(gens, diffs);
    out.x_count = N;
    return out;
}

// ---------------------------------------------------------------------------
// Circle transgression.  Cochains on the one-vertex one-edge circle form
// k.1 (+) k.e with |e| = 1 and zero differential; the evaluation map sends
// g -> 1 (x) g + e (x) sigma(g) and d_g -> 1 (x) d_g - e (x) d_(sigma g);
// integrating over the fundamental class keeps the e-component.

struct TransgressionResult {
    LoopModel loop;
    DeRhamAlgebra dr;            // de Rham algebra of the loop model
    ClosedFormRep transgressed;  // shift n - 1
    SymplecticCertificate certificate;
    std::map<int, std::size_t> tangent_rank_loop;     // generators of the loop model per degree
    std::map<int, std::size_t> tangent_rank_expected; // C(S^1) tensor T_F bookkeeping
    bool tangent_ranks_match = false;
};

inline TransgressionResult s1_transgression(const DeRhamAlgebra& D, const ClosedFormRep& rep, int n) {
    TransgressionResult out;
    out.loop = loop_model(D.base);
    out.dr = de_rham_algebra(out.loop.loop);
    const DeRhamAlgebra& DL = out.dr;
    int N = out.loop.x_count;
    // evaluation images as pairs (1-component, e-component) over DR(loop)
    auto image = [&](int g) -> std::pair<Polynomial, Polynomial> {
        if (!D.is_delta(g)) {
            int b = g;
            return {poly_gen(b), poly_gen(N + b)}; // g -> 1(x)g + e(x)s_g
        }
        int b = g - D.n_base;
        return {poly_gen(DL.delta(b)), Polynomial{} - poly_gen(DL.delta(N + b))};
    };
    auto pair_mul = [&](const std::pair<Polynomial, Polynomial>& a,
                        const std::pair<Polynomial, Polynomial>& b) {
        std::pair<Polynomial, Polynomial> c;
        c.first = mul(DL, a.first, b.first);
        Polynomial second = mul(DL, a.second, b.first);
        if (!a.first.is_zero() && !b.second.is_zero()) {
            int pa = *poly_parity(DL, a.first);
            second = second + Rational(mod2(pa) ? -1 : 1) * mul(DL, a.first, b.second);
        }
        c.second = second;
        return c;
    };
    auto transgress = [&](const Polynomial& w) {
        Polynomial out_p;
        for (const auto& [m, ccf] : w.terms) {
            std::pair<Polynomial, Polynomial> acc{poly_one(), Polynomial{}};
            for (auto [g, e] : m.factors)
                for (int k = 0; k < e; ++k) acc = pair_mul(acc, image(g));
            out_p = out_p + ccf * acc.second;
        }
        return out_p;
    };
    out.transgressed.p = rep.p;
    out.transgressed.n = n - 1;
    for (const auto& w : rep.components) out.transgressed.components.push_back(transgress(w));
    while (!out.transgressed.components.empty() && out.transgressed.components.back().is_zero())
        out.transgressed.components.pop_back();
    out.transgressed.weight = out.transgressed.components.empty()
                                  ? 0
                                  : uniform_weight(DL, out.transgressed.components[0]).value_or(0);
    out.certificate = symplectic_certificate(DL, out.transgressed, n - 1);
    // tangent-rank bookkeeping: loop-model generators per degree versus
    // (base generators) + (base generators shifted down by one)
    for (const auto& g : out.loop.loop.gens) out.tangent_rank_loop[g.degree]++;
    for (const auto& g : D.base.gens) {
        out.tangent_rank_expected[g.degree]++;
        out.tangent_rank_expected[g.degree - 1]++;
    }
    out.tangent_ranks_match = (out.tangent_rank_loop == out.tangent_rank_expected);
    return out;
}

// ---------------------------------------------------------------------------
// Classifying-stack invariant models: everything in degree 0, eps = 0,
// weight-q piece of the given dimension.

inline ExplicitMixed invariant_model(const std::map<int, std::size_t>& dims) {
    ExplicitMixed E;
    for (const auto& [q, d] : dims)
        for (std::size_t i = 0; i < d; ++i)
            E.cells.push_back({"inv_w" + std::to_string(q) + "_" + std::to_string(i), 0, q});
    E.d = SparseMatrix(E.cells.size(), E.cells.size());
    E.eps = SparseMatrix(E.cells.size(), E.cells.size());
    E.validate();
    return E;
}

inline std::size_t bg_closed_forms(const ExplicitMixed& model, int p, int n) {
    HodgeTable T = ncw_cohomology(model.view(), p, n - p, n - p);
    return T.dim(n - p, p);
}

// dim Sym^p(gl_m^*)^{GL_m} at each p <= p_max, by the conjugation-invariance
// linear system on degree-p polynomials in the matrix entries.
inline std::map<int, std::size_t> gl_invariant_dims(int m, int p_max) {
    GradedRing R;
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            GeneratorDecl g;
            g.name = "X_" + std::to_string(a) + std::to_string(b);
            g.degree = 0;
            g.weight = 1;
            R.add_gen(g);
        }
    auto var = [m](int a, int b) { return a * m + b; };
    std::map<int, std::size_t> out;
    out[0] = 1;
    for (int p = 1; p <= p_max; ++p) {
        std::vector<Monomial> basis = bigraded_basis(R, 0, p);
        std::map<Monomial, std::size_t> pos;
        for (std::size_t i = 0; i < basis.size(); ++i) pos[basis[i]] = i;
        std::vector<std::map<std::size_t, Rational>> rows(m * m * basis.size());
        for (int cc = 0; cc < m; ++cc)
            for (int dd = 0; dd < m; ++dd) {
                // action of E_{cc,dd}: X_uv -> delta_{u,cc} X_{dd,v} - delta_{v,dd} X_{u,cc}
                auto im = [&](int g) {
                    int a = g / m, b = g % m;
                    Polynomial r;
                    if (a == cc) r = r + poly_gen(var(dd, b));
                    if (b == dd) r = r - poly_gen(var(a, cc));
                    return r;
                };
                for (std::size_t j = 0; j < basis.size(); ++j) {
                    Polynomial img = apply_derivation(R, 0, im, poly_mono(basis[j], Rational(1)));
                    for (const auto& [mm, v] : img.terms) {
                        std::size_t row = (std::size_t)(cc * m + dd) * basis.size() + pos.at(mm);
                        rows[row][j] += v;
                    }
                }
            }
        SparseMatrix L(rows.size(), basis.size());
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (const auto& [cidx, v] : rows[r])
                if (v != 0) L.set(r, cidx, v);
        out[p] = rank_kernel(L).kernel_basis.size();
    }
    return out;
}

struct TraceForm {
    SparseMatrix gram; // on the elementary-matrix basis E_ab, index a*m + b
    bool nondegenerate = false;
};

inline TraceForm trace_form(int m) {
    TraceForm out;
    out.gram = SparseMatrix((std::size_t)m * m, (std::size_t)m * m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            // Tr(E_ab E_cd) = delta_{bc} delta_{ad}
            out.gram.set((std::size_t)a * m + b, (std::size_t)b * m + a, Rational(1));
    SparseMatrix inv;
    out.nondegenerate = inverse(out.gram, inv);
    return out;
}

// ---------------------------------------------------------------------------
// Symmetric obstruction data of a derived critical locus: the two-term
// complex h0.d_xi -> h0.d_x with the Hessian as its only map.

struct ObstructionData {
    std::vector<std::vector<Polynomial>> hessian; // over the base ring
    bool symmetric = false;
    H0Ring h0;
};

inline ObstructionData symmetric_obstruction(const CritData& c) {
    const Presentation& P = c.base;
    int N = (int)P.gens.size();
    ObstructionData out;
    out.hessian.assign(N, std::vector<Polynomial>(N));
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            out.hessian[i][j] = poly_partial(P, poly_partial(P, c.f, j), i);
    out.symmetric = true;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            if (!(out.hessian[i][j] == out.hessian[j][i])) out.symmetric = false;
    out.h0 = c.h0;
    return out;
}

} // namespace symp
