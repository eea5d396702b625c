#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "wittlift/cli.hpp"
#include "wittlift/errors.hpp"

using wl::cli::json;

namespace {

// read a JSON document from a file path, or parse the argument inline
json load_doc(const std::string& arg) {
    std::ifstream f(arg);
    if (f) return json::parse(f);
    return json::parse(arg);
}

void emit_error(const std::string& kind, const std::string& code, const std::string& msg) {
    std::cout << json{{"error", {{"kind", kind}, {"code", code}, {"message", msg}}}}.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"wittlift: Witt vectors, group cohomology, flag lifting and closures"};
    app.require_subcommand(1);

    wl::cli::JobSpec job;
    bool envelope = false, as_json = false, pretty = false;
    long long budget = 0;
    app.add_flag("--envelope", envelope, "print the full versioned report");
    app.add_flag("--pretty", pretty, "indent JSON output");
    app.add_option("--output,-o", job.output, "write the report to a file");
    app.add_option("--budget", budget, "enumeration budget (overrides WITTLIFT_BUDGET)");

    json& in = job.input;
    // option storage; copied into the input document after parsing
    long long p = 2, r = 2, f = 1, k = 1, degree = -1, levels = 1;
    std::string group, weights, x, y, chi, module, A, B, flag, E, P, op, action;
    std::vector<std::string> args;
    bool verbose = false, exhaustive = false;

    auto* witt = app.add_subcommand("witt", "Witt vector arithmetic: add sub mul neg frobenius verschiebung teichmuller ghost");
    witt->add_option("op", op, "operation")->required();
    witt->add_option("args", args, "Witt vectors such as (1,0)");
    witt->add_option("--p", p, "prime");
    witt->add_option("--r", r, "Witt length");
    witt->add_option("--f", f, "base field F_{p^f}");
    witt->add_flag("--json", as_json, "JSON report instead of the bare result");

    auto* coh = app.add_subcommand("cohomology", "H^n(G, M)");
    coh->add_option("--group", group, "group name, e.g. C4 or C2xC2")->required();
    coh->add_option("--p", p);
    coh->add_option("--k", k, "coefficients Z/p^k");
    coh->add_option("--degree,-n", degree, "cohomological degree (default 1)");
    coh->add_option("--module", module, "module JSON (inline or file); default trivial rank 1");

    auto* ext = app.add_subcommand("ext", "Ext^n_G(A, B)");
    ext->add_option("--group", group)->required();
    ext->add_option("--p", p);
    ext->add_option("--k", k);
    ext->add_option("--degree,-n", degree);
    ext->add_option("--A", A, "module JSON");
    ext->add_option("--B", B, "module JSON");

    auto* lift = app.add_subcommand("lift-flag", "lift a flag representation over F_p to Z/p^2");
    lift->add_option("--flag", flag, "flag JSON (inline or file)")->required();
    lift->add_flag("--exhaustive", exhaustive, "also run the exhaustive B_d(Z/p^2) search");

    auto* glue = app.add_subcommand("glue-obstruction", "obstruction to glueing two lifted flags");
    glue->add_option("--E", E, "rank-d flag JSON")->required();
    glue->add_option("--P", P, "rank-2 flag JSON")->required();
    glue->add_flag("--exhaustive", exhaustive, "also run the exhaustive glueing search");

    auto* heis = app.add_subcommand("heisenberg", "lift (x, y) to a U_3(Z/p^2) pair");
    heis->add_option("--group", group)->required();
    heis->add_option("--p", p);
    heis->add_option("--x", x, "images of the generators, comma separated")->required();
    heis->add_option("--y", y, "images of the generators, comma separated")->required();

    auto* fv = app.add_subcommand("flag-vanish", "decide vanishing of H^i(Fl, O(a)) by devissage");
    fv->add_option("--weights", weights, "comma separated weight")->required();
    fv->add_option("--degree", degree, "cohomological degree 0 or 1 (default 0)");
    fv->add_option("--p", p);
    fv->add_flag("--verbose", verbose, "include certificates");

    auto* h0 = app.add_subcommand("h0", "dim H^0(Fl(F_p^D), O(a)) for D <= 3");
    h0->add_option("--weights", weights)->required();
    h0->add_option("--p", p);

    auto* clo = app.add_subcommand("closure", "cyclotomic and smooth closures");
    clo->add_option("action", action, "sigma | smooth | check | verify | iterate")->required();
    clo->add_option("--group", group);
    clo->add_option("--p", p);
    clo->add_option("--chi", chi, "character values on the generators, mod p^2");
    clo->add_option("--levels", levels, "iteration depth for `iterate`");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        emit_error("parse", "cli.args", e.what());
        return 1;
    }

    auto* sub = app.get_subcommands().front();
    job.command = sub->get_name();
    try {
        job.budget = wl::cli::budget_from_env();
        if (budget > 0) job.budget.max_enumeration = budget;
        in["p"] = p;
        if (!group.empty()) in["group"] = group;
        if (degree >= 0) in["degree"] = degree;
        if (job.command == "witt") {
            in["op"] = op;
            in["r"] = r;
            in["f"] = f;
            in["args"] = args;
        } else if (job.command == "cohomology") {
            in["k"] = k;
            if (!module.empty()) in["module"] = load_doc(module);
        } else if (job.command == "ext") {
            in["k"] = k;
            if (!A.empty()) in["A"] = load_doc(A);
            if (!B.empty()) in["B"] = load_doc(B);
        } else if (job.command == "lift-flag") {
            in["flag"] = load_doc(flag);
            in["exhaustive"] = exhaustive;
        } else if (job.command == "glue-obstruction") {
            in["E"] = load_doc(E);
            in["P"] = load_doc(P);
            in["exhaustive"] = exhaustive;
        } else if (job.command == "heisenberg") {
            in["x"] = x;
            in["y"] = y;
        } else if (job.command == "flag-vanish" || job.command == "h0") {
            in["weights"] = weights;
            in["verbose"] = verbose;
        } else if (job.command == "closure") {
            in["action"] = action;
            in["levels"] = levels;
            if (!chi.empty()) in["chi"] = chi;
        }
    } catch (const wl::Error& e) {
        emit_error(wl::kind_name(e.kind()), e.code(), e.what());
        return e.kind() == wl::ErrorKind::Resource ? 2 : 1;
    } catch (const json::exception& e) {
        emit_error("parse", "cli.json", e.what());
        return 1;
    }

    wl::cli::JobResult res = wl::cli::run(job);
    std::string out;
    if (job.command == "witt" && !as_json && res.exit_code == 0 && !envelope) {
        out = res.text;
    } else {
        json doc = res.report;
        if (!envelope) doc = res.exit_code == 0 ? res.report.at("result") : json{{"error", res.report.at("error")}};
        out = pretty ? doc.dump(2) : doc.dump();
    }
    if (job.output.empty()) {
        std::cout << out << "\n";
    } else {
        std::ofstream f(job.output);
        if (!f) {
            emit_error("resource", "cli.output", "cannot write " + job.output);
            return 2;
        }
        f << out << "\n";
    }
    return res.exit_code;
}
