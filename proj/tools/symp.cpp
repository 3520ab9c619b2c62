#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "symp/constructions.hpp"
#include "symp/dsl.hpp"
#include "symp/report.hpp"

using namespace symp;

namespace {

struct Options {
    std::string file;
    int weight_max = 6;
    int truncate_degree = 0;
    bool truncated = false;
    bool strict_nonpositive = false;
    bool golden = false;
    std::string json_path;
    int p = 2, n = 0, i_max = 4;
    std::string form_name;
    std::string function_src;
    int size = 2; // bg / trace rank
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SemanticError("cannot read input file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// a named form from the document, with its grading read off the polynomial
FormClass form_class(const DslDocument& doc, const std::string& name) {
    auto it = doc.forms.find(name);
    if (it == doc.forms.end()) throw SemanticError("no form named " + name);
    FormClass f;
    f.rep = it->second;
    auto p = poly_form_weight(doc.dr, f.rep);
    auto n = poly_degree(doc.dr, f.rep);
    auto w = poly_weight(doc.dr, f.rep);
    if (!p || !n || !w) throw SemanticError("form " + name + " is the zero polynomial");
    f.p = *p;
    f.n = *n;
    f.weight = *w;
    return f;
}

Polynomial parse_function(const Presentation& P, const std::string& src) {
    // reuse the expression machinery: wrap as a form statement
    auto toks = dsl::tokenize("form f = " + src + ";");
    dsl::ParsedFile pf = dsl::Parser(toks).parse();
    return dsl::eval(P, pf.forms.at(0).value);
}

void emit(const Options& opt, Json& report) {
    report["truncated"] = opt.truncated;
    if (opt.truncated) report["certified"] = false;
    std::cout << report.dump(2) << "\n";
    if (!opt.json_path.empty()) {
        std::ofstream out(opt.json_path);
        out << report.dump(2) << "\n";
    }
}

Json header(const std::string& command, const Options& opt, const std::string& input) {
    Json r;
    r["command"] = command;
    r["input_hash"] = fnv1a_hex(input);
    r["weight_max"] = opt.weight_max;
    return r;
}

int run(const std::string& command, const Options& opt) {
    std::string input;
    DslDocument doc;
    bool needs_file = !(command == "bg" || command == "trace");
    if (needs_file) {
        input = slurp(opt.file);
        doc = parse_dsl(input, opt.strict_nonpositive);
    }
    Json r = header(command, opt, input);

    if (command == "validate") {
        Json gens = Json::array();
        for (const auto& g : doc.presentation.gens) {
            Json j;
            j["name"] = g.name;
            j["degree"] = g.degree;
            j["weight"] = g.weight;
            gens.push_back(j);
        }
        r["algebra"] = doc.algebra_name;
        r["generators"] = gens;
        Json forms = Json::array();
        for (const auto& [name, f] : doc.forms) forms.push_back(name);
        r["forms"] = forms;
        r["valid"] = true;
        emit(opt, r);
        return 0;
    }
    if (command == "forms") {
        FormsTable t = forms_space(doc.dr, opt.p, opt.n, 0, opt.weight_max);
        Json dims;
        for (const auto& [w, d] : t.dims_by_weight) dims[std::to_string(w)] = d;
        r["p"] = opt.p;
        r["n"] = opt.n;
        r["dims_by_weight"] = dims;
        r["certified"] = !opt.truncated;
        emit(opt, r);
        return 0;
    }
    if (command == "closed-forms") {
        ClosedFormsTable t = closed_forms_space(doc.dr, opt.p, opt.n, 0, opt.i_max, 0, opt.weight_max);
        Json table = Json::array();
        for (const auto& [key, d] : t.dims) {
            Json cell;
            cell["i"] = key.first;
            cell["weight"] = key.second;
            cell["dim"] = d;
            cell["certified"] = !opt.truncated && t.certified.at(key);
            table.push_back(cell);
        }
        Json reps = Json::array();
        for (const auto& [w, list] : t.pi0_reps_by_weight)
            for (const auto& rep : list) reps.push_back(json_closed_form(doc.dr, rep));
        r["p"] = opt.p;
        r["n"] = opt.n;
        r["pi_table"] = table;
        r["pi0_representatives"] = reps;
        emit(opt, r);
        return 0;
    }
    if (command == "keys") {
        FormClass f = form_class(doc, opt.form_name);
        KeysReport k = keys_report(doc.dr, f, opt.i_max);
        r["form"] = opt.form_name;
        r["liftable"] = k.liftable;
        Json tail = Json::array();
        for (const auto& [i, d] : k.tail_dims) {
            Json cell;
            cell["i"] = i;
            cell["dim"] = d;
            cell["certified"] = !opt.truncated && k.tail_certified.at(i);
            tail.push_back(cell);
        }
        r["tail"] = tail;
        emit(opt, r);
        return k.liftable ? 0 : 1;
    }
    if (command == "symplectic") {
        FormClass f = form_class(doc, opt.form_name);
        ClosedFormRep rep;
        rep.p = f.p;
        rep.n = opt.n;
        rep.weight = f.weight;
        rep.components = {f.rep};
        SymplecticCertificate cert = symplectic_certificate(doc.dr, rep, opt.n);
        r["certificate"] = json_certificate(doc.dr, cert);
        r["reverified"] = reverify_certificate(doc.dr, cert);
        emit(opt, r);
        return 0;
    }
    if (command == "cotangent") {
        CotangentData c = shifted_cotangent(doc.presentation, opt.n);
        SymplecticCertificate cert;
        if (opt.golden) {
            cert = cotangent_symplectic(c);
            r["golden_checked"] = true;
        } else {
            ClosedFormRep rep;
            rep.p = 2;
            rep.n = opt.n;
            Polynomial omega0 = d_de_rham(c.dr, c.liouville);
            rep.weight = uniform_weight(c.dr, omega0).value_or(0);
            rep.components = {omega0};
            cert = symplectic_certificate(c.dr, rep, opt.n);
        }
        r["liouville"] = poly_string(c.dr, c.liouville);
        r["certificate"] = json_certificate(c.dr, cert);
        emit(opt, r);
        return 0;
    }
    if (command == "crit") {
        Polynomial f = parse_function(doc.presentation, opt.function_src);
        CritData c = rcrit(doc.presentation, f, opt.weight_max);
        r["function"] = opt.function_src;
        r["certificate"] = json_certificate(c.dr, c.certificate);
        Json h0;
        for (const auto& [w, d] : c.h0.dims_by_weight) h0[std::to_string(w)] = d;
        r["h0_dims_by_weight"] = h0;
        r["h0_total"] = c.h0.total_dim();
        emit(opt, r);
        return 0;
    }
    if (command == "residue") {
        Polynomial f = parse_function(doc.presentation, opt.function_src);
        StrictLagrangianData data = zero_section_vs_graph(doc.presentation, f);
        ResidueResult res = strict_lagrangian_residue(data);
        DeRhamAlgebra DM = de_rham_algebra(data.model);
        r["function"] = opt.function_src;
        r["residue"] = json_closed_form(DM, res.residue);
        r["certificate"] = json_certificate(DM, res.certificate);
        r["middle_block_invertible"] = res.middle_block_invertible;
        r["right_block_invertible"] = res.right_block_invertible;
        emit(opt, r);
        return 0;
    }
    if (command == "loop") {
        LoopModel lm = loop_model(doc.presentation);
        Json gens = Json::array();
        for (std::size_t g = 0; g < lm.loop.gens.size(); ++g) {
            Json j;
            j["name"] = lm.loop.gens[g].name;
            j["degree"] = lm.loop.gens[g].degree;
            j["weight"] = lm.loop.gens[g].weight;
            j["d"] = poly_string(lm.loop, lm.loop.d_images[g]);
            gens.push_back(j);
        }
        r["generators"] = gens;
        emit(opt, r);
        return 0;
    }
    if (command == "transgress") {
        FormClass f = form_class(doc, opt.form_name);
        ClosedFormRep rep;
        rep.p = f.p;
        rep.n = opt.n;
        rep.weight = f.weight;
        rep.components = {f.rep};
        CheckResult cc = check_closed(doc.dr, rep);
        if (!cc.ok) throw ClosednessFailed(cc.failing);
        TransgressionResult t = s1_transgression(doc.dr, rep, opt.n);
        r["transgressed"] = json_closed_form(t.dr, t.transgressed);
        r["certificate"] = json_certificate(t.dr, t.certificate);
        r["tangent_ranks_match"] = t.tangent_ranks_match;
        emit(opt, r);
        return t.tangent_ranks_match ? 0 : 1;
    }
    if (command == "bg") {
        std::map<int, std::size_t> dims = gl_invariant_dims(opt.size, std::max(opt.p, 3));
        ExplicitMixed model = invariant_model(dims);
        Json d;
        for (const auto& [q, v] : dims) d[std::to_string(q)] = v;
        r["gl_rank"] = opt.size;
        r["invariant_dims"] = d;
        r["p"] = opt.p;
        r["n"] = opt.n;
        r["pi0"] = bg_closed_forms(model, opt.p, opt.n);
        r["certified"] = !opt.truncated;
        emit(opt, r);
        return 0;
    }
    if (command == "trace") {
        TraceForm t = trace_form(opt.size);
        r["size"] = opt.size;
        r["gram"] = json_matrix(t.gram);
        r["nondegenerate"] = t.nondegenerate;
        emit(opt, r);
        return t.nondegenerate ? 0 : 1;
    }
    if (command == "obstruction") {
        Polynomial f = parse_function(doc.presentation, opt.function_src);
        CritData c = rcrit(doc.presentation, f, opt.weight_max);
        ObstructionData o = symmetric_obstruction(c);
        Json h = Json::array();
        for (const auto& row : o.hessian) {
            Json jr = Json::array();
            for (const auto& e : row) jr.push_back(poly_string(doc.presentation, e));
            h.push_back(jr);
        }
        r["function"] = opt.function_src;
        r["hessian"] = h;
        r["symmetric"] = o.symmetric;
        Json h0;
        for (const auto& [w, d] : o.h0.dims_by_weight) h0[std::to_string(w)] = d;
        r["h0_dims_by_weight"] = h0;
        emit(opt, r);
        return o.symmetric ? 0 : 1;
    }
    throw SemanticError("unknown command " + command);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"chain-level shifted symplectic computations over Q"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* cmd, bool with_file) {
        if (with_file) cmd->add_option("file", opt.file, "presentation file")->required();
        cmd->add_option("--weight-max", opt.weight_max, "weight window bound");
        cmd->add_option("--truncate-degree", opt.truncate_degree, "uncertified truncation")
            ->each([&](const std::string&) { opt.truncated = true; });
        cmd->add_flag("--strict-nonpositive", opt.strict_nonpositive, "reject positive-degree generators");
        cmd->add_option("--json", opt.json_path, "write the report here as well");
        cmd->add_flag("--golden", opt.golden, "enable golden-formula assertions");
        return cmd;
    };

    add_common(app.add_subcommand("validate", "parse and validate a presentation"), true);
    auto* forms = add_common(app.add_subcommand("forms", "p-forms of degree n"), true);
    forms->add_option("--p", opt.p);
    forms->add_option("--n", opt.n);
    auto* cf = add_common(app.add_subcommand("closed-forms", "homotopy of closed p-forms"), true);
    cf->add_option("--p", opt.p);
    cf->add_option("--n", opt.n);
    cf->add_option("--i-max", opt.i_max);
    auto* keys = add_common(app.add_subcommand("keys", "lifting space of a form"), true);
    keys->add_option("--form", opt.form_name)->required();
    keys->add_option("--i-max", opt.i_max);
    auto* sym = add_common(app.add_subcommand("symplectic", "certify a strict 2-form"), true);
    sym->add_option("--form", opt.form_name)->required();
    sym->add_option("--n", opt.n);
    auto* cot = add_common(app.add_subcommand("cotangent", "shifted cotangent certificate"), true);
    cot->add_option("--n", opt.n);
    auto* crit = add_common(app.add_subcommand("crit", "derived critical locus"), true);
    crit->add_option("--function", opt.function_src)->required();
    auto* resid = add_common(app.add_subcommand("residue", "strict Lagrangian intersection"), true);
    resid->add_option("--function", opt.function_src)->required();
    add_common(app.add_subcommand("loop", "loop-space model"), true);
    auto* trans = add_common(app.add_subcommand("transgress", "circle transgression"), true);
    trans->add_option("--form", opt.form_name)->required();
    trans->add_option("--n", opt.n);
    auto* bg = add_common(app.add_subcommand("bg", "classifying-stack invariants"), false);
    bg->add_option("--gl", opt.size);
    bg->add_option("--p", opt.p);
    bg->add_option("--n", opt.n);
    auto* tr = add_common(app.add_subcommand("trace", "trace-form Gram matrix"), false);
    tr->add_option("--n", opt.size);
    auto* obs = add_common(app.add_subcommand("obstruction", "symmetric obstruction data"), true);
    obs->add_option("--function", opt.function_src)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    std::string command = app.get_subcommands().front()->get_name();
    try {
        return run(command, opt);
    } catch (const GoldenMismatch& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const DegenerateForm& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const ClosednessFailed& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const StrictnessViolated& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const ModelMismatch& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const NotACocycle& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
