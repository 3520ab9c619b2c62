#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "symp/dsl.hpp"

using namespace symp;

TEST_CASE("parse: single generator block") {
    DslDocument d = parse_dsl("algebra A { gen x : degree 0, weight 1; }");
    CHECK(d.algebra_name == "A");
    REQUIRE(d.presentation.gens.size() == 1);
    CHECK(d.presentation.gens[0].name == "x");
    CHECK(d.presentation.gens[0].degree == 0);
    CHECK(d.presentation.gens[0].weight == 1);
    CHECK(d.presentation.d_images[0].is_zero());
}

TEST_CASE("parse: the RCrit(x^3) file round-trips") {
    DslDocument d = parse_dsl("gen x: degree 0, weight 1;\n"
                              "gen xi: degree -1, weight 2;\n"
                              "d xi = 3*x^2;\n");
    Presentation want = fixtures::rcrit_x3();
    REQUIRE(d.presentation.gens.size() == want.gens.size());
    for (std::size_t g = 0; g < want.gens.size(); ++g) {
        CHECK(d.presentation.gens[g].name == want.gens[g].name);
        CHECK(d.presentation.gens[g].degree == want.gens[g].degree);
        CHECK(d.presentation.gens[g].weight == want.gens[g].weight);
        CHECK(d.presentation.d_images[g] == want.d_images[g]);
    }
}

TEST_CASE("parse: d x = x rejected by degree bookkeeping") {
    CHECK_THROWS_AS(parse_dsl("gen x: degree 0, weight 1; d x = x;"), InhomogeneousDifferential);
}

TEST_CASE("parse: comments, rationals, parentheses, unary minus") {
    DslDocument d = parse_dsl("# a line comment\n"
                              "gen x: degree 0, weight 1; # trailing\n"
                              "gen xi: degree -1, weight 2;\n"
                              "d xi = -(1/2)*x^2 + 7/2*x*x;\n");
    Polynomial want;
    want.add_term(Monomial{{{0, 2}}}, Rational(3));
    CHECK(d.presentation.d_images[1] == want);
}

TEST_CASE("parse: form statements over the de Rham algebra") {
    DslDocument d = parse_dsl("gen x: degree 0, weight 1;\n"
                              "gen xi: degree -1, weight 2;\n"
                              "d xi = 3*x^2;\n"
                              "form omega = d_x * d_xi;\n");
    REQUIRE(d.forms.count("omega"));
    Polynomial want = mul(d.dr, poly_gen(d.dr.index("d_x")), poly_gen(d.dr.index("d_xi")));
    CHECK(d.forms.at("omega") == want);
}

TEST_CASE("parse: syntax errors carry line and column") {
    try {
        parse_dsl("gen x: degree 0, weight 1;\ngen : degree 0, weight 1;");
        FAIL("expected SyntaxError");
    } catch (const SyntaxError& e) {
        std::string msg = e.what();
        CHECK(msg.find("line 2") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_dsl("gen x degree 0, weight 1;"), SyntaxError);
    CHECK_THROWS_AS(parse_dsl("gen x: degree 0 weight 1;"), SyntaxError);
    CHECK_THROWS_AS(parse_dsl("@"), SyntaxError);
}

TEST_CASE("parse: semantic errors") {
    CHECK_THROWS_AS(parse_dsl("gen x: degree 0, weight 1; d y = x;"), SemanticError);
    CHECK_THROWS_AS(parse_dsl("gen x: degree 0, weight 1; form w = d_y;"), SemanticError);
    CHECK_THROWS_AS(parse_dsl("gen x: degree 0, weight 1; gen x: degree 0, weight 1;"), DuplicateName);
    CHECK_THROWS_AS(parse_dsl("gen x: degree 0, weight 0;"), NonpositiveWeight);
}

TEST_CASE("parse: strict mode forwards to the builder") {
    CHECK_NOTHROW(parse_dsl("gen x: degree 1, weight 1;"));
    CHECK_THROWS_AS(parse_dsl("gen x: degree 1, weight 1;", /*strict=*/true), UnsupportedShape);
}

TEST_CASE("round trip: parse of printed fixtures matches") {
    for (const Presentation& P : {fixtures::line(), fixtures::plane(), fixtures::rcrit_x3(), fixtures::odd_theta()}) {
        std::string src;
        for (const auto& g : P.gens)
            src += "gen " + g.name + ": degree " + std::to_string(g.degree) + ", weight " +
                   std::to_string(g.weight) + ";\n";
        for (std::size_t g = 0; g < P.gens.size(); ++g)
            if (!P.d_images[g].is_zero())
                src += "d " + P.gens[g].name + " = " + poly_string(P, P.d_images[g]) + ";\n";
        DslDocument d = parse_dsl(src);
        REQUIRE(d.presentation.gens.size() == P.gens.size());
        for (std::size_t g = 0; g < P.gens.size(); ++g)
            CHECK(d.presentation.d_images[g] == P.d_images[g]);
    }
}
