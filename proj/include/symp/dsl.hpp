#pragma once
#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "derham.hpp"

namespace symp {

// Presentation files.  Statements end with ';', '#' starts a line comment.
//   algebra A { gen x : degree 0, weight 1; d xi = 3*x^2; }
// Top-level gen/d statements are also accepted (anonymous algebra).
// Form statements bind names to de Rham elements; the 1-form generator of an
// algebra generator g is spelled d_g (one per generator, auto-declared):
//   form omega = d_x * d_xi;

namespace dsl {

enum class Tok { Ident, Int, Rat, Sym, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    int line = 1, col = 1;
};

inline std::vector<Token> tokenize(const std::string& src) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto bump = [&](char c) {
        if (c == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    };
    while (i < src.size()) {
        char c = src[i];
        if (c == '#') {
            while (i < src.size() && src[i] != '\n') bump(src[i++]);
            continue;
        }
        if (std::isspace((unsigned char)c)) {
            bump(c);
            ++i;
            continue;
        }
        Token t;
        t.line = line;
        t.col = col;
        if (std::isalpha((unsigned char)c)) {
            std::string s;
            while (i < src.size() && (std::isalnum((unsigned char)src[i]) || src[i] == '_')) {
                s += src[i];
                bump(src[i++]);
            }
            t.kind = Tok::Ident;
            t.text = s;
        } else if (std::isdigit((unsigned char)c)) {
            std::string s;
            while (i < src.size() && std::isdigit((unsigned char)src[i])) {
                s += src[i];
                bump(src[i++]);
            }
            if (i < src.size() && src[i] == '/') {
                // rational literal p/q
                std::size_t j = i + 1;
                if (j < src.size() && std::isdigit((unsigned char)src[j])) {
                    s += src[i];
                    bump(src[i++]);
                    while (i < src.size() && std::isdigit((unsigned char)src[i])) {
                        s += src[i];
                        bump(src[i++]);
                    }
                    t.kind = Tok::Rat;
                    t.text = s;
                    out.push_back(t);
                    continue;
                }
            }
            t.kind = Tok::Int;
            t.text = s;
        } else if (std::string("{};:,=+-*^()").find(c) != std::string::npos) {
            t.kind = Tok::Sym;
            t.text = std::string(1, c);
            bump(c);
            ++i;
        } else {
            throw SyntaxError("line " + std::to_string(line) + " col " + std::to_string(col) +
                              ": unexpected character '" + std::string(1, c) + "'");
        }
        out.push_back(t);
    }
    Token end;
    end.line = line;
    end.col = col;
    out.push_back(end);
    return out;
}

// polynomial expression tree, evaluated later against a ring
struct Expr {
    enum class Kind { Const, Var, Neg, Add, Sub, Mul, Pow } kind;
    Rational value;
    std::string name;
    int line = 1, col = 1;
    int exponent = 1;
    std::shared_ptr<Expr> a, b;
};

using ExprPtr = std::shared_ptr<Expr>;

struct GenStmt {
    std::string name;
    int degree = 0, weight = 1;
};

struct DiffStmt {
    std::string gen;
    ExprPtr value;
};

struct FormStmt {
    std::string name;
    ExprPtr value;
};

struct ParsedFile {
    std::string algebra_name;
    std::vector<GenStmt> gens;
    std::vector<DiffStmt> diffs;
    std::vector<FormStmt> forms;
};

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    ParsedFile parse() {
        ParsedFile f;
        while (!at_end()) {
            const Token& t = peek();
            if (t.kind != Tok::Ident) fail("expected a statement");
            if (t.text == "algebra") {
                advance();
                f.algebra_name = expect_ident("algebra name");
                expect_sym("{");
                while (!(peek().kind == Tok::Sym && peek().text == "}")) body_stmt(f);
                expect_sym("}");
            } else if (t.text == "gen" || t.text == "d") {
                body_stmt(f);
            } else if (t.text == "form") {
                advance();
                FormStmt s;
                s.name = expect_ident("form name");
                expect_sym("=");
                s.value = expression();
                expect_sym(";");
                f.forms.push_back(std::move(s));
            } else {
                fail("unknown statement '" + t.text + "'");
            }
        }
        return f;
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;

    const Token& peek() const { return toks_[pos_]; }
    bool at_end() const { return peek().kind == Tok::End; }
    const Token& advance() { return toks_[pos_++]; }

    [[noreturn]] void fail(const std::string& msg) const {
        throw SyntaxError("line " + std::to_string(peek().line) + " col " + std::to_string(peek().col) +
                          ": " + msg);
    }

    std::string expect_ident(const std::string& what) {
        if (peek().kind != Tok::Ident) fail("expected " + what);
        return advance().text;
    }

    void expect_sym(const std::string& s) {
        if (peek().kind != Tok::Sym || peek().text != s) fail("expected '" + s + "'");
        advance();
    }

    void expect_keyword(const std::string& k) {
        if (peek().kind != Tok::Ident || peek().text != k) fail("expected '" + k + "'");
        advance();
    }

    int integer() {
        bool neg = false;
        if (peek().kind == Tok::Sym && peek().text == "-") {
            neg = true;
            advance();
        }
        if (peek().kind != Tok::Int) fail("expected an integer");
        int v = std::stoi(advance().text);
        return neg ? -v : v;
    }

    void body_stmt(ParsedFile& f) {
        const Token& t = peek();
        if (t.kind != Tok::Ident) fail("expected 'gen' or 'd'");
        if (t.text == "gen") {
            advance();
            GenStmt g;
            g.name = expect_ident("generator name");
            expect_sym(":");
            expect_keyword("degree");
            g.degree = integer();
            expect_sym(",");
            expect_keyword("weight");
            g.weight = integer();
            expect_sym(";");
            f.gens.push_back(std::move(g));
        } else if (t.text == "d") {
            advance();
            DiffStmt s;
            s.gen = expect_ident("generator name");
            expect_sym("=");
            s.value = expression();
            expect_sym(";");
            f.diffs.push_back(std::move(s));
        } else {
            fail("unknown statement '" + t.text + "'");
        }
    }

    ExprPtr make(Expr::Kind k) {
        auto e = std::make_shared<Expr>();
        e->kind = k;
        e->line = peek().line;
        e->col = peek().col;
        return e;
    }

    ExprPtr expression() {
        bool neg = false;
        if (peek().kind == Tok::Sym && (peek().text == "-" || peek().text == "+")) {
            neg = advance().text == "-";
        }
        ExprPtr lhs = term();
        if (neg) {
            ExprPtr e = make(Expr::Kind::Neg);
            e->a = lhs;
            lhs = e;
        }
        while (peek().kind == Tok::Sym && (peek().text == "+" || peek().text == "-")) {
            bool sub = advance().text == "-";
            ExprPtr e = make(sub ? Expr::Kind::Sub : Expr::Kind::Add);
            e->a = lhs;
            e->b = term();
            lhs = e;
        }
        return lhs;
    }

    ExprPtr term() {
        ExprPtr lhs = factor();
        while (peek().kind == Tok::Sym && peek().text == "*") {
            advance();
            ExprPtr e = make(Expr::Kind::Mul);
            e->a = lhs;
            e->b = factor();
            lhs = e;
        }
        return lhs;
    }

    ExprPtr factor() {
        ExprPtr base = primary();
        if (peek().kind == Tok::Sym && peek().text == "^") {
            advance();
            if (peek().kind != Tok::Int) fail("expected an exponent");
            ExprPtr e = make(Expr::Kind::Pow);
            e->a = base;
            e->exponent = std::stoi(advance().text);
            return e;
        }
        return base;
    }

    ExprPtr primary() {
        const Token& t = peek();
        if (t.kind == Tok::Int || t.kind == Tok::Rat) {
            ExprPtr e = make(Expr::Kind::Const);
            e->value = rat_parse(advance().text);
            return e;
        }
        if (t.kind == Tok::Ident) {
            ExprPtr e = make(Expr::Kind::Var);
            e->name = advance().text;
            return e;
        }
        if (t.kind == Tok::Sym && t.text == "(") {
            advance();
            ExprPtr e = expression();
            expect_sym(")");
            return e;
        }
        fail("expected a polynomial");
    }
};

inline Polynomial eval(const GradedRing& R, const ExprPtr& e) {
    auto where = [&](const ExprPtr& x) {
        return "line " + std::to_string(x->line) + " col " + std::to_string(x->col);
    };
    switch (e->kind) {
    case Expr::Kind::Const:
        return poly_mono(Monomial{}, e->value);
    case Expr::Kind::Var: {
        auto it = R.by_name.find(e->name);
        if (it == R.by_name.end())
            throw SemanticError(where(e) + ": unknown name '" + e->name + "'");
        return poly_gen(it->second);
    }
    case Expr::Kind::Neg:
        return Rational(-1) * eval(R, e->a);
    case Expr::Kind::Add:
        return eval(R, e->a) + eval(R, e->b);
    case Expr::Kind::Sub:
        return eval(R, e->a) - eval(R, e->b);
    case Expr::Kind::Mul:
        return mul(R, eval(R, e->a), eval(R, e->b));
    case Expr::Kind::Pow: {
        Polynomial base = eval(R, e->a);
        Polynomial acc = poly_one();
        for (int k = 0; k < e->exponent; ++k) acc = mul(R, acc, base);
        return acc;
    }
    }
    throw SemanticError("unreachable");
}

} // namespace dsl

struct DslDocument {
    std::string algebra_name;
    Presentation presentation;
    DeRhamAlgebra dr;
    std::map<std::string, Polynomial> forms; // over dr
};

inline DslDocument parse_dsl(const std::string& source, bool strict_nonpositive = false) {
    dsl::ParsedFile f = dsl::Parser(dsl::tokenize(source)).parse();
    DslDocument doc;
    doc.algebra_name = f.algebra_name.empty() ? "A" : f.algebra_name;
    std::vector<GeneratorDecl> gens;
    for (const auto& g : f.gens) gens.push_back({g.name, g.degree, g.weight});
    // scratch ring for differential right-hand sides
    GradedRing scratch;
    for (auto g : gens) {
        g.parity = mod2(g.degree);
        scratch.add_gen(g);
    }
    std::vector<DiffAssignment> diffs;
    for (const auto& s : f.diffs) {
        if (!scratch.by_name.count(s.gen))
            throw SemanticError("d assigned to unknown generator '" + s.gen + "'");
        diffs.push_back({s.gen, dsl::eval(scratch, s.value)});
    }
    doc.presentation = build_presentation(gens, diffs, strict_nonpositive);
    doc.dr = de_rham_algebra(doc.presentation);
    for (const auto& s : f.forms) {
        if (doc.forms.count(s.name)) throw DuplicateName("form " + s.name);
        doc.forms[s.name] = dsl::eval(doc.dr, s.value);
    }
    return doc;
}

} // namespace symp
