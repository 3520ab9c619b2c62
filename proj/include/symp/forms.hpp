#pragma once
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "derham.hpp"
#include "ncw.hpp"

namespace symp {

struct FormClass {
    int p = 0, n = 0, weight = 0;
    Polynomial rep; // d-cocycle in (Omega^p)^n at the given internal weight
};

// A closed p-form of degree n: components omega_i in (Omega^{p+i})^{n-i},
// one internal weight throughout.  The defining equations are
// d omega_0 = 0, eps omega_{i-1} + d omega_i = 0, and eps of the last
// stored component vanishes (all later components are zero).
struct ClosedFormRep {
    int p = 0, n = 0, weight = 0;
    std::vector<Polynomial> components;

    const Polynomial& omega0() const {
        static const Polynomial zero;
        return components.empty() ? zero : components[0];
    }
};

struct CheckResult {
    bool ok = true;
    std::string failing;
};

inline CheckResult check_closed(const DeRhamAlgebra& D, const ClosedFormRep& r) {
    if (r.components.empty()) return {true, ""};
    for (std::size_t i = 0; i < r.components.size(); ++i) {
        const Polynomial& w = r.components[i];
        if (w.is_zero()) continue;
        if (poly_form_weight(D, w) != r.p + (int)i || poly_degree(D, w) != r.n - (int)i)
            return {false, "component " + std::to_string(i) + " has wrong bidegree"};
    }
    if (!d_internal(D, r.components[0]).is_zero()) return {false, "d omega_0 != 0"};
    for (std::size_t i = 1; i < r.components.size(); ++i) {
        Polynomial eq = d_de_rham(D, r.components[i - 1]) + d_internal(D, r.components[i]);
        if (!eq.is_zero()) return {false, "eps omega_" + std::to_string(i - 1) + " + d omega_" + std::to_string(i) + " != 0"};
    }
    if (!d_de_rham(D, r.components.back()).is_zero())
        return {false, "eps omega_" + std::to_string(r.components.size() - 1) + " != 0"};
    return {true, ""};
}

// Stored degree of a p-form component of a degree-n closed form: the i-th
// component lives in (Omega^{p+i})^{n-i}; its stored polynomial degree is n - i + (p + i) - p
// relative to nothing -- the polynomial's own degree must be n - i... but delta
// generators are stored unshifted, so (Omega^{q})^{m} means degree-m polynomials
// of form-weight q.  See the bidegree check above.

inline ClosedFormRep close_by_de_rham(const DeRhamAlgebra& D, const FormClass& a) {
    if (!d_internal(D, a.rep).is_zero()) throw NotACocycle("close_by_de_rham needs a d-cocycle");
    ClosedFormRep out;
    out.p = a.p + 1;
    out.n = a.n;
    out.weight = a.weight;
    out.components.push_back(d_de_rham(D, a.rep));
    CheckResult c = check_closed(D, out);
    if (!c.ok) throw NotACocycle("close_by_de_rham output fails: " + c.failing);
    return out;
}

struct FormsTable {
    std::map<int, std::size_t> dims_by_weight;
    std::map<int, std::vector<FormClass>> reps_by_weight;
};

// H^n of ((Omega^p)^*, d) per internal weight.
inline FormsTable forms_space(const DeRhamAlgebra& D, int p, int n, int weight_lo, int weight_hi) {
    FormsTable out;
    for (int w = weight_lo; w <= weight_hi; ++w) {
        ComplexWindow win;
        win.lo = n - 1;
        win.hi = n + 1;
        std::map<int, std::vector<Monomial>> bases;
        for (int m = n - 1; m <= n + 1; ++m) {
            bases[m] = trigraded_basis(D, m, p, w);
            std::vector<std::string> lbl;
            for (const auto& mm : bases[m]) lbl.push_back(mono_string(D, mm));
            win.labels[m] = lbl;
        }
        for (int m = n - 1; m < n + 1; ++m) {
            std::map<Monomial, std::size_t> pos;
            for (std::size_t i = 0; i < bases[m + 1].size(); ++i) pos[bases[m + 1][i]] = i;
            SparseMatrix M(bases[m + 1].size(), bases[m].size());
            for (std::size_t j = 0; j < bases[m].size(); ++j) {
                Polynomial im = d_internal(D, poly_mono(bases[m][j], Rational(1)));
                for (const auto& [mm, c] : im.terms) M.set(pos.at(mm), j, c);
            }
            win.diff[m] = M;
        }
        CohomologyReport rep = cohomology(win);
        out.dims_by_weight[w] = rep.dim(n);
        for (const auto& v : rep.by_degree[n].representatives) {
            FormClass fc;
            fc.p = p;
            fc.n = n;
            fc.weight = w;
            for (std::size_t i = 0; i < bases[n].size(); ++i) fc.rep.add_term(bases[n][i], v[i]);
            out.reps_by_weight[w].push_back(std::move(fc));
        }
    }
    return out;
}

struct ClosedFormsTable {
    // (i, weight) -> dimension of pi_i at that internal weight
    std::map<std::pair<int, int>, std::size_t> dims;
    std::map<std::pair<int, int>, bool> certified;
    std::map<int, std::vector<ClosedFormRep>> pi0_reps_by_weight;
};

// pi_i of the space of closed p-forms of degree n: H^{n-p-i} of NC^w(p),
// computed per internal weight slice of the de Rham mixed complex.
inline ClosedFormsTable closed_forms_space(const DeRhamAlgebra& D, int p, int n,
                                           int i_lo, int i_hi, int weight_lo, int weight_hi) {
    ClosedFormsTable out;
    for (int w = weight_lo; w <= weight_hi; ++w) {
        GradedMixed E = mixed_from_dr(D, w);
        for (int i = i_lo; i <= i_hi; ++i) {
            int m = n - p - i;
            NcwWindow W = ncw_window(E, p, m - 1, m + 1);
            CohomologyReport rep = cohomology(W.window);
            out.dims[{i, w}] = rep.dim(m);
            out.certified[{i, w}] = rep.certified(m);
            if (i == 0) {
                for (const auto& v : rep.by_degree[m].representatives) {
                    // unpack the NC vector into form components
                    ClosedFormRep r;
                    r.p = p;
                    r.n = n;
                    r.weight = w;
                    const auto& lab = W.labels.at(m);
                    int max_i = 0;
                    for (const auto& [ii, s] : lab) max_i = std::max(max_i, ii);
                    r.components.assign(max_i + 1, Polynomial{});
                    // rebuild per-piece monomial bases in the same order
                    std::map<int, std::vector<Monomial>> piece_basis;
                    std::map<int, std::size_t> cursor;
                    for (int ii = 0; ii <= max_i; ++ii)
                        piece_basis[ii] = trigraded_basis(D, m - 2 * ii + p + ii, p + ii, w);
                    for (std::size_t k = 0; k < lab.size(); ++k) {
                        int ii = lab[k].first;
                        std::size_t c = cursor[ii]++;
                        r.components[ii].add_term(piece_basis[ii][c], v[k]);
                    }
                    while (!r.components.empty() && r.components.back().is_zero()) r.components.pop_back();
                    out.pi0_reps_by_weight[w].push_back(std::move(r));
                }
            }
        }
    }
    return out;
}

struct KeysReport {
    bool liftable = false;
    std::map<int, std::size_t> tail_dims; // i -> dim pi_i of the key space
    std::map<int, bool> tail_certified;
};

// Keys of a p-form w of degree n: whether it lifts to a closed form, and the
// homotopy of the lifting space, read off from the i >= 1 tail of NC^w(p).
inline KeysReport keys_report(const DeRhamAlgebra& D, const FormClass& w0, int i_max = 4) {
    KeysReport out;
    int p = w0.p, n = w0.n, w = w0.weight;
    // joint linear solve for components omega_1, ..., omega_I
    int I = std::max(0, w - p); // form-weight p+i needs internal weight >= p+i
    std::vector<std::vector<Monomial>> bases(I + 1);
    std::vector<std::size_t> offset(I + 1, 0);
    std::size_t nvars = 0;
    for (int i = 1; i <= I; ++i) {
        bases[i] = trigraded_basis(D, n - i, p + i, w);
        offset[i] = nvars;
        nvars += bases[i].size();
    }
    // equations: eps omega_{i-1} + d omega_i = 0 for i = 1..I, and eps omega_I = 0
    std::vector<std::map<std::size_t, Rational>> rows;
    std::vector<Rational> rhs;
    auto add_equations = [&](int i) {
        // collect the equation polynomial in (Omega^{p+i})^{n-i+1 + ...}:
        // target piece: form-weight p+i, stored degree (n - (i-1)) + ... use map keyed by monomial
        std::map<Monomial, std::map<std::size_t, Rational>> lhs;
        std::map<Monomial, Rational> rhs_poly;
        if (i >= 1 && i <= I) {
            for (std::size_t j = 0; j < bases[i].size(); ++j) {
                Polynomial im = d_internal(D, poly_mono(bases[i][j], Rational(1)));
                for (const auto& [mm, c] : im.terms) lhs[mm][offset[i] + j] += c;
            }
        }
        // eps omega_{i-1}
        if (i - 1 == 0) {
            Polynomial e = d_de_rham(D, w0.rep);
            for (const auto& [mm, c] : e.terms) rhs_poly[mm] -= c; // moved to rhs
        } else if (i - 1 >= 1 && i - 1 <= I) {
            for (std::size_t j = 0; j < bases[i - 1].size(); ++j) {
                Polynomial e = d_de_rham(D, poly_mono(bases[i - 1][j], Rational(1)));
                for (const auto& [mm, c] : e.terms) lhs[mm][offset[i - 1] + j] += c;
            }
        }
        std::map<Monomial, std::size_t> all;
        for (const auto& [mm, _] : lhs) all.emplace(mm, 0);
        for (const auto& [mm, _] : rhs_poly) all.emplace(mm, 0);
        for (auto& [mm, _] : all) {
            std::map<std::size_t, Rational> row;
            auto it = lhs.find(mm);
            if (it != lhs.end()) row = it->second;
            rows.push_back(row);
            auto rit = rhs_poly.find(mm);
            rhs.push_back(rit == rhs_poly.end() ? Rational(0) : rit->second);
        }
    };
    for (int i = 1; i <= I + 1; ++i) add_equations(i);
    SparseMatrix A(rows.size(), nvars);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (const auto& [c, v] : rows[r])
            if (v != 0) A.set(r, c, v);
    std::vector<Rational> x;
    out.liftable = solve(A, rhs, x);

    // tail complex: the i >= 1 tower of NC^w(p)
    GradedMixed E = mixed_from_dr(D, w);
    for (int i = 0; i <= i_max; ++i) {
        int m = n - p - i;
        NcwWindow W = ncw_window(E, p, m - 1, m + 1, /*i_min=*/1);
        CohomologyReport rep = cohomology(W.window);
        out.tail_dims[i] = rep.dim(m);
        out.tail_certified[i] = rep.certified(m);
    }
    return out;
}

struct NondegeneracyResult {
    bool nondegenerate = false;
    PairingMatrix theta;
    SparseMatrix witness; // exact inverse of the augmentation-reduced matrix
    bool cone_checked = false;
    bool cone_acyclic = false;
};

namespace detail {

// Window of the mapping cone of Theta : T -> Omega^1[n], one weight offset
// tau at a time.  Cone^s = T^{s+1} (+) Omega^1[n]^s with differential
// (t, o) -> (-d_T t, Theta t + d_O o); acyclicity of the certified interior
// degrees confirms the quasi-isomorphism there.
inline bool cone_acyclic_window(const DeRhamAlgebra& D, const PairingMatrix& M,
                                const Polynomial& omega0, int n,
                                int s_lo, int s_hi, int tau_lo, int tau_hi) {
    int w0 = omega0.is_zero() ? 0 : *poly_weight(D, omega0);
    // tangent differential: d_T(partial_j) = sum_k dT[k][j] partial_k,
    // dT[k][j] = -(-1)^{p_j} iota_j(d(d_x_k))
    std::vector<std::vector<Polynomial>> dT(D.n_base, std::vector<Polynomial>(D.n_base));
    for (int j = 0; j < D.n_base; ++j) {
        TangentVector vj = coordinate_vector(D, j);
        int sgn = mod2(vj.parity) ? 1 : -1;
        for (int k = 0; k < D.n_base; ++k)
            dT[k][j] = Rational(sgn) * contract(D, vj, D.d_images[D.delta(k)]);
    }
    // T element = coefficient polynomial per coordinate vector (form-weight 0)
    using TElt = std::vector<Polynomial>;
    auto d_T = [&](const TElt& t) {
        TElt out(D.n_base);
        for (int j = 0; j < D.n_base; ++j) {
            if (t[j].is_zero()) continue;
            int pa = *poly_parity(D, t[j]);
            out[j] = out[j] + d_internal(D, t[j]);
            for (int k = 0; k < D.n_base; ++k)
                out[k] = out[k] + Rational(mod2(pa) ? -1 : 1) * mul(D, t[j], dT[k][j]);
        }
        return out;
    };
    auto theta_apply = [&](const TElt& t) {
        Polynomial out;
        for (int j = 0; j < D.n_base; ++j) {
            if (t[j].is_zero()) continue;
            for (int i = 0; i < D.n_base; ++i)
                out = out + mul(D, mul(D, t[j], M.entries[i][j]), poly_gen(D.delta(i)));
        }
        return out;
    };

    for (int tau = tau_lo; tau <= tau_hi; ++tau) {
        // per shifted degree s: T^{s}(tau) pairs (monomial a, j) with
        // deg a - |x_j| = s and wt a - wt x_j = tau
        auto t_basis = [&](int s) {
            std::vector<std::pair<Monomial, int>> b;
            for (int j = 0; j < D.n_base; ++j) {
                int wa = tau + D.gens[j].weight;
                if (wa < 0) continue;
                for (const auto& a : trigraded_basis(D, s + D.gens[j].degree, 0, wa))
                    b.push_back({a, j});
            }
            return b;
        };
        auto o_basis = [&](int s) { return trigraded_basis(D, s + n, 1, tau + w0); };

        ComplexWindow win;
        win.lo = s_lo;
        win.hi = s_hi;
        std::map<int, std::vector<std::pair<Monomial, int>>> tb;
        std::map<int, std::vector<Monomial>> ob;
        for (int s = s_lo; s <= s_hi + 1; ++s) {
            tb[s] = t_basis(s + 1);
            ob[s] = o_basis(s);
        }
        for (int s = s_lo; s <= s_hi; ++s)
            win.labels[s] = std::vector<std::string>(tb[s].size() + ob[s].size(), "c");
        for (int s = s_lo; s < s_hi; ++s) {
            std::map<std::pair<Monomial, int>, std::size_t> tpos;
            for (std::size_t i = 0; i < tb[s + 1].size(); ++i) tpos[tb[s + 1][i]] = i;
            std::map<Monomial, std::size_t> opos;
            for (std::size_t i = 0; i < ob[s + 1].size(); ++i) opos[ob[s + 1][i]] = i;
            std::size_t dst_t = tb[s + 1].size();
            SparseMatrix Dm(dst_t + ob[s + 1].size(), tb[s].size() + ob[s].size());
            for (std::size_t c = 0; c < tb[s].size(); ++c) {
                TElt t(D.n_base);
                t[tb[s][c].second] = poly_mono(tb[s][c].first, Rational(1));
                TElt dt = d_T(t);
                for (int j = 0; j < D.n_base; ++j)
                    for (const auto& [mm, v] : dt[j].terms)
                        Dm.add(tpos.at({mm, j}), c, -v);
                Polynomial th = theta_apply(t);
                for (const auto& [mm, v] : th.terms)
                    Dm.add(dst_t + opos.at(mm), c, v);
            }
            for (std::size_t c = 0; c < ob[s].size(); ++c) {
                Polynomial dn = d_internal(D, poly_mono(ob[s][c], Rational(1)));
                for (const auto& [mm, v] : dn.terms)
                    Dm.add(dst_t + opos.at(mm), tb[s].size() + c, v);
            }
            win.diff[s] = Dm;
        }
        CohomologyReport rep = cohomology(win);
        for (int s = s_lo + 1; s < s_hi; ++s)
            if (rep.dim(s) != 0) return false;
    }
    return true;
}

} // namespace detail

inline NondegeneracyResult is_nondegenerate(const DeRhamAlgebra& D, const Polynomial& omega0, int n,
                                            bool run_cone_check = false, int cone_radius = 2,
                                            int cone_weight_max = 3) {
    NondegeneracyResult out;
    out.theta = theta_matrix(D, omega0, n);
    SparseMatrix red = out.theta.augmentation_reduced();
    SparseMatrix inv;
    out.nondegenerate = inverse(red, inv);
    if (out.nondegenerate) out.witness = inv;
    if (run_cone_check && out.nondegenerate) {
        out.cone_checked = true;
        out.cone_acyclic = detail::cone_acyclic_window(D, out.theta, omega0, n,
                                                       -cone_radius, cone_radius, -cone_weight_max, cone_weight_max);
    }
    return out;
}

struct SymplecticCertificate {
    int n = 0;
    ClosedFormRep form;
    PairingMatrix theta;
    SparseMatrix witness;
    int amplitude_lo = 0, amplitude_hi = 0;
    bool shift_compatible = true;
    CheckResult closedness;
};

inline SymplecticCertificate symplectic_certificate(const DeRhamAlgebra& D, const ClosedFormRep& r, int n) {
    if (r.p != 2) throw DegenerateForm("certificate needs a 2-form");
    SymplecticCertificate cert;
    cert.n = n;
    cert.form = r;
    cert.closedness = check_closed(D, r);
    if (!cert.closedness.ok) throw ClosednessFailed(cert.closedness.failing);
    if (r.omega0().is_zero()) throw DegenerateForm("underlying 2-form is zero");
    if (poly_degree(D, r.omega0()) != n)
        throw DegenerateForm("degree bookkeeping: omega0 has degree " +
                             std::to_string(*poly_degree(D, r.omega0())) + ", not " + std::to_string(n));
    NondegeneracyResult nd = is_nondegenerate(D, r.omega0(), n);
    if (!nd.nondegenerate) throw DegenerateForm("reduced pairing matrix is singular");
    cert.theta = nd.theta;
    cert.witness = nd.witness;
    // perfect-amplitude report: the cotangent module has generators d_x in
    // degrees |x|; a shifted pairing can only exist at n = min + max
    bool first = true;
    for (int g = 0; g < D.n_base; ++g) {
        int dg = D.base.gens[g].degree;
        if (first || dg < cert.amplitude_lo) cert.amplitude_lo = dg;
        if (first || dg > cert.amplitude_hi) cert.amplitude_hi = dg;
        first = false;
    }
    cert.shift_compatible = (n == cert.amplitude_lo + cert.amplitude_hi);
    return cert;
}

// Re-runs every check stored in a certificate from its own data.
inline bool reverify_certificate(const DeRhamAlgebra& D, const SymplecticCertificate& c) {
    CheckResult cc = check_closed(D, c.form);
    if (!cc.ok) return false;
    SparseMatrix red = c.theta.augmentation_reduced();
    if (red.rows() != c.witness.cols() || red.cols() != c.witness.rows()) return false;
    SparseMatrix prod = red * c.witness;
    for (std::size_t i = 0; i < prod.rows(); ++i)
        for (std::size_t j = 0; j < prod.cols(); ++j)
            if (prod.get(i, j) != (i == j ? Rational(1) : Rational(0))) return false;
    return true;
}

} // namespace symp
