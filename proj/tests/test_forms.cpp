#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "symp/forms.hpp"

using namespace symp;

namespace {

Polynomial dgen(const DeRhamAlgebra& D, const std::string& name) {
    return poly_gen(D.index(name));
}

} // namespace

TEST_CASE("forms_space on the line") {
    DeRhamAlgebra D = de_rham_algebra(fixtures::line());
    FormsTable t = forms_space(D, 1, 0, 0, 4);
    CHECK(t.dims_by_weight.at(0) == 0);
    for (int w = 1; w <= 4; ++w) {
        CHECK(t.dims_by_weight.at(w) == 1); // x^{w-1} d_x
        REQUIRE(t.reps_by_weight.at(w).size() == 1);
        CHECK(poly_form_weight(D, t.reps_by_weight.at(w)[0].rep) == 1);
    }
    // no 2-forms on one even variable
    FormsTable t2 = forms_space(D, 2, 0, 0, 4);
    for (int w = 0; w <= 4; ++w) CHECK(t2.dims_by_weight.at(w) == 0);
}

TEST_CASE("forms_space sees the internal differential") {
    // on RCrit(x^3), d(d_xi) = -6x d_x kills part of the 1-forms
    DeRhamAlgebra D = de_rham_algebra(fixtures::rcrit_x3());
    FormsTable t = forms_space(D, 1, -1, 2, 2);
    // (Omega^1)^{-1} at weight 2 = {d_xi}; its class dies iff it is not a cocycle
    CHECK(t.dims_by_weight.at(2) == 0);
}

TEST_CASE("check_closed: positive and negative examples") {
    DeRhamAlgebra R = de_rham_algebra(fixtures::rcrit_x3());
    ClosedFormRep good;
    good.p = 2;
    good.n = -1;
    good.weight = 3;
    good.components = {mul(R, dgen(R, "d_x"), dgen(R, "d_xi"))};
    CHECK(check_closed(R, good).ok);

    DeRhamAlgebra P = de_rham_algebra(fixtures::plane());
    ClosedFormRep flat;
    flat.p = 2;
    flat.n = 0;
    flat.weight = 2;
    flat.components = {mul(P, dgen(P, "d_x"), dgen(P, "d_y"))};
    CHECK(check_closed(P, flat).ok);

    // y d_x is a 1-form whose eps-tail does not terminate after one component
    ClosedFormRep open1;
    open1.p = 1;
    open1.n = 0;
    open1.weight = 2;
    open1.components = {mul(P, poly_gen(P.index("y")), dgen(P, "d_x"))};
    CheckResult c = check_closed(P, open1);
    CHECK_FALSE(c.ok);
    CHECK(c.failing.find("eps") != std::string::npos);

    // wrong bidegree is reported before any differential is taken
    ClosedFormRep misplaced = flat;
    misplaced.n = 1;
    CHECK_FALSE(check_closed(P, misplaced).ok);
}

TEST_CASE("close_by_de_rham produces honest closed forms") {
    DeRhamAlgebra D = de_rham_algebra(fixtures::plane());
    FormClass f;
    f.p = 1;
    f.n = 0;
    f.weight = 2;
    f.rep = mul(D, poly_gen(D.index("y")), dgen(D, "d_x")); // y d_x, a d-cocycle
    ClosedFormRep r = close_by_de_rham(D, f);
    CHECK(r.p == 2);
    CHECK(check_closed(D, r).ok);
    CHECK(r.omega0() == mul(D, dgen(D, "d_y"), dgen(D, "d_x")));
}

TEST_CASE("closed_forms_space: smooth vanishing below degree 0") {
    DeRhamAlgebra D = de_rham_algebra(fixtures::plane());
    for (int n = -3; n < 0; ++n) {
        ClosedFormsTable t = closed_forms_space(D, 2, n, 0, 2, 1, 3);
        for (const auto& [key, dim] : t.dims) CHECK(dim == 0);
    }
}

TEST_CASE("closed_forms_space: line, p = 1, n = 0") {
    DeRhamAlgebra D = de_rham_algebra(fixtures::line());
    ClosedFormsTable t = closed_forms_space(D, 1, 0, 0, 2, 1, 4);
    for (int w = 1; w <= 4; ++w) {
        CHECK(t.dims.at({0, w}) == 1);
        CHECK(t.certified.at({0, w}));
        for (int i = 1; i <= 2; ++i) CHECK(t.dims.at({i, w}) == 0);
        for (const auto& r : t.pi0_reps_by_weight.at(w)) CHECK(check_closed(D, r).ok);
    }
}

TEST_CASE("closed_forms_space: exact functions die (Poincare direction)") {
    // p = 0, n = 1 on the line: every function is transgressed away
    DeRhamAlgebra D = de_rham_algebra(fixtures::line());
    ClosedFormsTable t = closed_forms_space(D, 0, 1, 0, 1, 1, 4);
    for (const auto& [key, dim] : t.dims) CHECK(dim == 0);
}

TEST_CASE("closed_forms_space representatives verify on RCrit(x^3)") {
    DeRhamAlgebra D = de_rham_algebra(fixtures::rcrit_x3());
    ClosedFormsTable t = closed_forms_space(D, 2, -1, 0, 1, 1, 5);
    bool found = false;
    for (const auto& [w, reps] : t.pi0_reps_by_weight)
        for (const auto& r : reps) {
            CHECK(check_closed(D, r).ok);
            if (!r.omega0().is_zero()) found = true;
        }
    CHECK(found); // d_x wedge d_xi lives here
}

TEST_CASE("keys_report: smooth case lifts with empty tail") {
    DeRhamAlgebra D = de_rham_algebra(fixtures::plane());
    FormClass f;
    f.p = 2;
    f.n = 0;
    f.weight = 2;
    f.rep = mul(D, dgen(D, "d_x"), dgen(D, "d_y"));
    KeysReport k = keys_report(D, f);
    CHECK(k.liftable);
    for (const auto& [i, dim] : k.tail_dims) CHECK(dim == 0);
}

TEST_CASE("keys_report: RCrit(x^3) 2-form lifts") {
    DeRhamAlgebra D = de_rham_algebra(fixtures::rcrit_x3());
    FormClass f;
    f.p = 2;
    f.n = -1;
    f.weight = 3;
    f.rep = mul(D, dgen(D, "d_x"), dgen(D, "d_xi"));
    KeysReport k = keys_report(D, f);
    CHECK(k.liftable);
}

TEST_CASE("keys_report tail is a torsor invariant: independent of the form") {
    DeRhamAlgebra D = de_rham_algebra(fixtures::rcrit_x3());
    FormClass a, b;
    a.p = b.p = 2;
    a.n = b.n = -1;
    a.weight = b.weight = 3;
    a.rep = mul(D, dgen(D, "d_x"), dgen(D, "d_xi"));
    b.rep = Rational(7) * a.rep;
    KeysReport ka = keys_report(D, a), kb = keys_report(D, b);
    CHECK(ka.tail_dims == kb.tail_dims);
}

TEST_CASE("is_nondegenerate: zero and augmentation-degenerate forms fail") {
    DeRhamAlgebra D = de_rham_algebra(fixtures::plane());
    CHECK_FALSE(is_nondegenerate(D, Polynomial{}, 0).nondegenerate);
    // x d_x d_y reduces to the zero pairing at the augmentation
    Polynomial w = mul(D, poly_gen(D.index("x")), mul(D, dgen(D, "d_x"), dgen(D, "d_y")));
    CHECK_FALSE(is_nondegenerate(D, w, 0).nondegenerate);
}

TEST_CASE("is_nondegenerate: flat form with cone confirmation") {
    DeRhamAlgebra D = de_rham_algebra(fixtures::plane());
    Polynomial w = mul(D, dgen(D, "d_x"), dgen(D, "d_y"));
    NondegeneracyResult r = is_nondegenerate(D, w, 0, /*run_cone_check=*/true);
    CHECK(r.nondegenerate);
    CHECK(r.cone_checked);
    CHECK(r.cone_acyclic);
    // witness really inverts the reduced matrix
    SparseMatrix red = r.theta.augmentation_reduced();
    SparseMatrix prod = red * r.witness;
    for (std::size_t i = 0; i < prod.rows(); ++i)
        for (std::size_t j = 0; j < prod.cols(); ++j)
            CHECK(prod.get(i, j) == (i == j ? Rational(1) : Rational(0)));
}

TEST_CASE("is_nondegenerate with cone check on RCrit(x^3)") {
    DeRhamAlgebra D = de_rham_algebra(fixtures::rcrit_x3());
    Polynomial w = mul(D, dgen(D, "d_x"), dgen(D, "d_xi"));
    NondegeneracyResult r = is_nondegenerate(D, w, -1, /*run_cone_check=*/true);
    CHECK(r.nondegenerate);
    CHECK(r.cone_acyclic);
}

TEST_CASE("symplectic_certificate: issue, reverify, tamper") {
    DeRhamAlgebra D = de_rham_algebra(fixtures::plane());
    ClosedFormRep r;
    r.p = 2;
    r.n = 0;
    r.weight = 2;
    r.components = {mul(D, dgen(D, "d_x"), dgen(D, "d_y"))};
    SymplecticCertificate c = symplectic_certificate(D, r, 0);
    CHECK(c.shift_compatible);
    CHECK(c.amplitude_lo == 0);
    CHECK(c.amplitude_hi == 0);
    CHECK(reverify_certificate(D, c));

    SymplecticCertificate broken = c;
    broken.witness.set(0, 0, broken.witness.get(0, 0) + 1);
    CHECK_FALSE(reverify_certificate(D, broken));
}

TEST_CASE("symplectic_certificate rejections") {
    DeRhamAlgebra D = de_rham_algebra(fixtures::plane());
    ClosedFormRep r;
    r.p = 2;
    r.n = 0;
    r.weight = 2;
    r.components = {mul(D, dgen(D, "d_x"), dgen(D, "d_y"))};
    // degree bookkeeping mismatch at n = 1
    ClosedFormRep r1 = r;
    r1.n = 1;
    CHECK_THROWS_AS(symplectic_certificate(D, r1, 1), ClosednessFailed);
    // zero underlying form
    ClosedFormRep z;
    z.p = 2;
    z.n = 0;
    z.weight = 2;
    CHECK_THROWS_AS(symplectic_certificate(D, z, 0), DegenerateForm);
    // not a 2-form
    ClosedFormRep one;
    one.p = 1;
    one.n = 0;
    one.weight = 1;
    one.components = {poly_gen(D.index("d_x"))};
    CHECK_THROWS_AS(symplectic_certificate(D, one, 0), DegenerateForm);
    // augmentation-degenerate
    ClosedFormRep dg = r;
    dg.weight = 3;
    dg.components = {mul(D, poly_gen(D.index("x")), r.components[0])};
    CHECK_THROWS_AS(symplectic_certificate(D, dg, 0), DegenerateForm);
}
