#include "wittlift/cli.hpp"

#include <cstdlib>
#include <sstream>

#include "wittlift/errors.hpp"
#include "wittlift/flag_calc.hpp"
#include "wittlift/witt.hpp"

namespace wl::cli {

namespace {

int to_int(const std::string& s, const std::string& what) {
    try {
        size_t used = 0;
        long v = std::stol(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return static_cast<int>(v);
    } catch (const std::exception&) {
        fail(ErrorKind::Parse, "cli.number", "bad " + what + " '" + s + "'");
    }
}

FiniteGroup parse_factor(const std::string& s) {
    if (s == "trivial" || s == "1") return FiniteGroup::trivial();
    if (s == "Q8") return FiniteGroup::quaternion();
    if (s.rfind("Z/", 0) == 0) return FiniteGroup::cyclic(to_int(s.substr(2), "group order"));
    if (s.size() >= 2 && s[0] == 'C') return FiniteGroup::cyclic(to_int(s.substr(1), "group order"));
    if (s.size() >= 2 && s[0] == 'D') return FiniteGroup::dihedral(to_int(s.substr(1), "dihedral parameter"));
    if (s.size() >= 2 && s[0] == 'S') return FiniteGroup::symmetric(to_int(s.substr(1), "symmetric degree"));
    fail(ErrorKind::Parse, "cli.group", "unknown group '" + s + "'");
}

i64 get_p(const json& in) {
    i64 p = in.value("p", 2);
    if (!is_prime(p)) fail(ErrorKind::Precondition, "cli.prime", "p must be prime");
    return p;
}

const json& need(const json& in, const char* key) {
    if (!in.contains(key)) fail(ErrorKind::Parse, "cli.missing", std::string("missing field '") + key + "'");
    return in.at(key);
}

std::vector<int> int_list(const json& j) {
    if (j.is_array()) return j.get<std::vector<int>>();
    std::vector<int> out;
    std::stringstream ss(j.get<std::string>());
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(to_int(tok, "integer"));
    return out;
}

std::vector<std::pair<int, Mat>> generator_images(const FiniteGroup& G, const json& gens) {
    const auto& g = G.generators();
    if (!gens.is_array() || gens.size() != g.size())
        fail(ErrorKind::Structural, "cli.generators",
             "expected " + std::to_string(g.size()) + " generator matrices, in the group's generator order");
    std::vector<std::pair<int, Mat>> out;
    for (size_t i = 0; i < g.size(); ++i) out.emplace_back(g[i], mat_from_json(gens[i]));
    return out;
}

// homomorphism G -> Z/p given by generator images, as a normalized cochain
Vec hom_from_images(const FiniteGroup& G, i64 p, const std::vector<int>& images) {
    const auto& gens = G.generators();
    if (images.size() != gens.size())
        fail(ErrorKind::Structural, "cli.generators", "need one image per group generator");
    for (auto& h : all_homs(G, p, 1)) {
        bool match = true;
        for (size_t i = 0; i < gens.size(); ++i)
            if (gens[i] != 0 && h[gens[i] - 1] != mod(images[i], p)) match = false;
        if (match) return h;
    }
    fail(ErrorKind::Precondition, "cli.hom", "generator images do not define a homomorphism to Z/p");
}

json vec_json(const Vec& v) { return json(v); }

json group_summary(const FiniteGroup& G) {
    json gens = json::array();
    for (int g : G.generators()) gens.push_back(G.name(g));
    return {{"order", G.order()}, {"generators", gens}};
}

json cmd_witt(const JobSpec& job, std::string& text) {
    const json& in = job.input;
    i64 p = get_p(in);
    int r = in.value("r", 2);
    if (r < 1) fail(ErrorKind::Precondition, "witt.length", "r must be >= 1");
    FiniteRing base = FiniteRing::integers_mod(p);
    if (in.contains("f") && in.at("f").get<int>() > 1) base = FiniteRing::galois_field(p, in.at("f").get<int>());
    WittRing W(base, r, p);
    std::string op = need(in, "op").get<std::string>();
    std::vector<std::string> args = in.value("args", std::vector<std::string>{});
    auto arity = [&](size_t n) {
        if (args.size() != n)
            fail(ErrorKind::Parse, "witt.arity", op + " takes " + std::to_string(n) + " argument(s)");
    };
    WittVec res;
    if (op == "add" || op == "sub" || op == "mul") {
        arity(2);
        auto x = W.parse(args[0]), y = W.parse(args[1]);
        res = op == "add" ? W.add(x, y) : op == "sub" ? W.sub(x, y) : W.mul(x, y);
    } else if (op == "neg" || op == "frobenius" || op == "verschiebung") {
        arity(1);
        auto x = W.parse(args[0]);
        res = op == "neg" ? W.neg(x) : op == "frobenius" ? W.frobenius(x) : W.verschiebung(x);
    } else if (op == "teichmuller") {
        arity(1);
        res = W.teichmuller(base.parse(args[0]));
    } else if (op == "ghost") {
        arity(1);
        auto g = W.ghost(W.parse(args[0]));
        json comps = json::array();
        for (auto& w : g.w) comps.push_back(g.lift.to_string(w));
        text = comps.dump();
        return {{"op", op}, {"p", p}, {"r", r}, {"ghost", comps}};
    } else {
        fail(ErrorKind::Parse, "witt.op", "unknown witt operation '" + op + "'");
    }
    text = W.to_string(res);
    return {{"op", op}, {"p", p}, {"r", r}, {"result", text}};
}

Rep module_or_trivial(const json& in, const FiniteGroup& G, const char* key) {
    if (in.contains(key)) {
        json m = in.at(key);
        if (!m.contains("group")) m["group"] = in.at("group");
        if (!m.contains("p")) m["p"] = in.value("p", 2);
        if (!m.contains("k")) m["k"] = in.value("k", 1);
        return rep_from_json(m);
    }
    return Rep::trivial(G, get_p(in), in.value("k", 1), 1);
}

json cohomology_json(const Cohomology& C) {
    return {{"degree", C.degree()}, {"factors", C.factors()}, {"log_size", C.log_size()},
            {"generators", C.num_generators()}};
}

json cmd_cohomology(const JobSpec& job) {
    const json& in = job.input;
    FiniteGroup G = group_from_json(need(in, "group"));
    Rep M = module_or_trivial(in, G, "module");
    int n = in.value("degree", 1);
    Cohomology C(M, n);
    json out = cohomology_json(C);
    out["group"] = group_summary(G);
    out["p"] = M.p;
    out["k"] = M.k;
    out["dim"] = M.dim;
    return out;
}

json cmd_ext(const JobSpec& job) {
    const json& in = job.input;
    FiniteGroup G = group_from_json(need(in, "group"));
    Rep A = module_or_trivial(in, G, "A"), B = module_or_trivial(in, G, "B");
    int n = in.value("degree", 1);
    json out = cohomology_json(ext_group(A, B, n));
    out["group"] = group_summary(G);
    return out;
}

json cmd_lift_flag(const JobSpec& job) {
    FlagRep rho = flag_from_json(need(job.input, "flag"));
    UpliftResult res = uplift_flag(rho);
    json stages = json::array();
    for (auto& s : res.stages) stages.push_back(obstruction_to_json(s));
    json out = {{"ok", res.ok},
                {"stages", stages},
                {"ambient_copies", res.ambient_copies},
                {"ambient_rank", res.ambient_rank},
                {"frobenius_twist", res.frobenius_twist}};
    if (res.ok) out["lift"] = flag_to_json(res.lift);
    if (job.input.value("exhaustive", false)) {
        auto ex = exhaustive_lift(rho, MatrixShape::Borel, job.budget.max_enumeration);
        out["exhaustive_ok"] = ex.has_value();
    }
    return out;
}

json cmd_glue(const JobSpec& job) {
    FlagRep E = flag_from_json(need(job.input, "E")), P = flag_from_json(need(job.input, "P"));
    GlueResult g = glue_obstruction(E, P);
    json out = {{"c2", obstruction_to_json(g.c2)}};
    if (g.witness) out["glued"] = flag_to_json(*g.witness);
    if (job.input.value("exhaustive", false)) out["exhaustive_ok"] = brute_force_glue(E, P).has_value();
    return out;
}

json cmd_heisenberg(const JobSpec& job) {
    const json& in = job.input;
    FiniteGroup G = group_from_json(need(in, "group"));
    i64 p = get_p(in);
    Vec x = hom_from_images(G, p, int_list(need(in, "x")));
    Vec y = hom_from_images(G, p, int_list(need(in, "y")));
    HeisenbergResult h = heisenberg_check(G, p, x, y);
    json out = {{"liftable", h.liftable},         {"num_lifts_x", h.num_lifts_x},
                {"num_lifts_y", h.num_lifts_y},   {"u3_liftable", h.u3_liftable},
                {"u3_glueings", h.u3_glueings},   {"u3_lifted", h.u3_lifted}};
    if (h.liftable) {
        out["X"] = vec_json(h.X);
        out["Y"] = vec_json(h.Y);
    }
    return out;
}

Weight weights_in(const JobSpec& job) {
    const json& w = need(job.input, "weights");
    Weight a = w.is_array() ? w.get<Weight>() : parse_weight(w.get<std::string>());
    for (i64 v : a)
        if (v > job.budget.max_degree || v < -job.budget.max_degree)
            fail(ErrorKind::Resource, "cli.degree", "weight entry beyond the degree budget");
    return a;
}

json cmd_flag_vanish(const JobSpec& job) {
    Weight a = weights_in(job);
    int degree = job.input.value("degree", 0);
    DevissageResult r = devissage_decide(a, degree, get_p(job.input));
    json out = {{"verdict", verdict_name(r.verdict)}};
    if (job.input.value("verbose", false)) {
        out["certificates"] = r.certificates;
        out["diagnostic"] = r.diagnostic;
    }
    return out;
}

json cmd_h0(const JobSpec& job) {
    Weight a = weights_in(job);
    return {{"weights", weight_to_string(a)}, {"h0", h0_oracle(a, get_p(job.input))}};
}

CyclotomicModule chi_in(const json& in, const FiniteGroup& G, i64 p) {
    if (!in.contains("chi")) return CyclotomicModule::trivial(G, p);
    auto imgs = int_list(in.at("chi"));
    const auto& gens = G.generators();
    if (imgs.size() != gens.size()) fail(ErrorKind::Structural, "cli.generators", "need one chi value per generator");
    std::vector<std::pair<int, i64>> pairs;
    for (size_t i = 0; i < gens.size(); ++i) pairs.emplace_back(gens[i], imgs[i]);
    return CyclotomicModule::from_generators(G, p, pairs);
}

json cmd_closure(const JobSpec& job) {
    const json& in = job.input;
    FiniteGroup G = group_from_json(in.value("group", json("trivial")));
    i64 p = get_p(in);
    std::string action = in.value("action", "sigma");
    ClosureOptions opt;
    opt.max_coordinates = static_cast<int>(std::min<i64>(job.budget.max_enumeration, 1 << 20));
    if (action == "sigma" || action == "smooth") {
        ClosureGroup S = action == "sigma" ? sigma_cyclotomic(G, chi_in(in, G, p), opt) : sigma_smooth(G, p, opt);
        json out = closure_to_json(S);
        out["kind"] = action == "sigma" ? "cyclotomic" : "smooth";
        return out;
    }
    if (action == "check") {
        CyclotomicModule chi = chi_in(in, G, p);
        CyclotomicReport rep = is_cyclotomic_at_level(G, chi);
        json table = json::array();
        for (auto& row : rep.table)
            table.push_back({{"subgroup", row.subgroup},
                             {"h1_mod_p", row.h1_mod_p},
                             {"image_rank", row.image_rank},
                             {"surjective", row.surjective}});
        return {{"holds", rep.holds}, {"subgroups", table}};
    }
    if (action == "verify") {
        CyclotomicModule chi = chi_in(in, G, p);
        ClosureGroup S = sigma_cyclotomic(G, chi, opt);
        LevelOneReport rep = verify_level_one_lifting(S, chi);
        json ws = json::array();
        for (auto& w : rep.witnesses)
            ws.push_back({{"block", w.block},
                          {"coordinate", w.coordinate},
                          {"checked", w.products_checked},
                          {"exhaustive", w.exhaustive},
                          {"lifts", w.lifts}});
        return {{"ok", rep.ok}, {"witnesses", ws}, {"order", S.order_string()}};
    }
    if (action == "iterate") {
        IteratedClosure it = sigma_iterate(G, chi_in(in, G, p), in.value("levels", 1), opt);
        return {{"orders", it.orders}, {"log_p_fibers", it.log_p_fibers}};
    }
    fail(ErrorKind::Parse, "closure.action", "unknown closure action '" + action + "'");
}

}  // namespace

Budget budget_from_env() {
    Budget b;
    const char* env = std::getenv("WITTLIFT_BUDGET");
    if (!env || !*env) return b;
    std::string s(env);
    if (s.find('=') == std::string::npos) {
        b.max_enumeration = to_int(s, "WITTLIFT_BUDGET");
    } else {
        std::stringstream ss(s);
        std::string kv;
        while (std::getline(ss, kv, ',')) {
            auto eq = kv.find('=');
            if (eq == std::string::npos) fail(ErrorKind::Parse, "cli.budget", "bad WITTLIFT_BUDGET entry '" + kv + "'");
            std::string k = kv.substr(0, eq), v = kv.substr(eq + 1);
            if (k == "enum") b.max_enumeration = to_int(v, "enumeration budget");
            else if (k == "degree") b.max_degree = to_int(v, "degree budget");
            else fail(ErrorKind::Parse, "cli.budget", "unknown budget key '" + k + "'");
        }
    }
    if (b.max_enumeration <= 0 || b.max_degree <= 0) fail(ErrorKind::Precondition, "cli.budget", "budgets must be positive");
    return b;
}

FiniteGroup parse_group(const std::string& s0) {
    std::string s;
    for (char c : s0)
        if (!isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) fail(ErrorKind::Parse, "cli.group", "empty group name");
    std::vector<FiniteGroup> parts;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, 'x')) {
        int reps = 1;
        if (auto hat = tok.find('^'); hat != std::string::npos) {
            reps = to_int(tok.substr(hat + 1), "exponent");
            tok = tok.substr(0, hat);
        }
        if (reps < 1) fail(ErrorKind::Parse, "cli.group", "exponent must be positive");
        for (int i = 0; i < reps; ++i) parts.push_back(parse_factor(tok));
    }
    FiniteGroup G = parts[0];
    for (size_t i = 1; i < parts.size(); ++i) G = FiniteGroup::direct_product(G, parts[i]);
    return G;
}

FiniteGroup group_from_json(const json& j) {
    if (j.is_string()) return parse_group(j.get<std::string>());
    if (j.is_object() && j.contains("table")) return FiniteGroup::from_table(j.at("table").get<std::vector<std::vector<int>>>());
    if (j.is_object() && j.contains("permutations"))
        return FiniteGroup::from_permutations(j.at("permutations").get<std::vector<std::vector<int>>>());
    fail(ErrorKind::Parse, "cli.group", "group must be a name, a table or permutations");
}

json group_to_json(const FiniteGroup& G) {
    json gens = json::array();
    for (int g : G.generators()) gens.push_back(G.name(g));
    // the table alone determines the generator order, so this re-parses exactly
    std::vector<std::vector<int>> table(G.order(), std::vector<int>(G.order()));
    for (int a = 0; a < G.order(); ++a)
        for (int b = 0; b < G.order(); ++b) table[a][b] = G.mul(a, b);
    return {{"order", G.order()}, {"generators", gens}, {"table", table}};
}

Mat mat_from_json(const json& j) {
    if (!j.is_array() || j.empty()) fail(ErrorKind::Parse, "cli.matrix", "matrix must be a non-empty list of rows");
    std::vector<Vec> rows;
    for (auto& r : j) {
        if (!r.is_array() || r.size() != j[0].size()) fail(ErrorKind::Parse, "cli.matrix", "ragged matrix");
        rows.push_back(r.get<Vec>());
    }
    return Mat::from_rows(rows);
}

json mat_to_json(const Mat& M) {
    json rows = json::array();
    for (int i = 0; i < M.rows; ++i) rows.push_back(M.row(i));
    return rows;
}

Rep rep_from_json(const json& j) {
    FiniteGroup G = group_from_json(need(j, "group"));
    i64 p = get_p(j);
    int k = j.value("k", 1);
    const json& gens = need(j, "generators");
    auto imgs = generator_images(G, gens);
    int dim = imgs.empty() ? j.value("dim", 1) : imgs[0].second.rows;
    if (imgs.empty()) return Rep::trivial(G, p, k, dim);
    return Rep::from_generators(G, p, k, dim, imgs);
}

FlagRep flag_from_json(const json& j) {
    FiniteGroup G = group_from_json(need(j, "group"));
    i64 p = get_p(j);
    int k = j.value("k", 1);
    auto imgs = generator_images(G, need(j, "generators"));
    int d = imgs.empty() ? j.value("d", 1) : imgs[0].second.rows;
    return FlagRep::from_generators(G, p, k, d, imgs);
}

json flag_to_json(const FlagRep& F) {
    json gens = json::array();
    for (auto& M : F.generator_images()) gens.push_back(mat_to_json(M));
    return {{"group", group_to_json(F.G)}, {"p", F.p}, {"k", F.k}, {"d", F.d}, {"generators", gens}};
}

json obstruction_to_json(const ObstructionReport& r) {
    return {{"stage", r.stage},     {"degree", r.degree},        {"vanishes", r.vanishes},
            {"group_factors", r.group_factors}, {"class", r.class_coords}, {"note", r.note}};
}

json closure_to_json(const ClosureGroup& S) {
    constexpr size_t kMaxListed = 256;
    json gens = json::array(), proj = json::array();
    auto all = S.generators();
    for (size_t i = 0; i < all.size() && i < kMaxListed; ++i) {
        gens.push_back(S.element_to_string(all[i]));
        proj.push_back(S.base().name(S.project(all[i])));
    }
    json pairs = json::array();
    for (auto& b : S.blocks()) pairs.push_back({{"subgroup", b.subgroup}, {"points", b.npoints}});
    return {{"order", S.order_string()},
            {"base_order", S.base().order()},
            {"p", S.p()},
            {"log_p_fiber", S.log_p_fiber()},
            {"pairs", pairs},
            {"generators", gens},
            {"generators_truncated", all.size() > kMaxListed},
            {"projection", proj}};
}

std::string validate_report(const json& r) {
    if (!r.is_object()) return "report must be an object";
    if (r.value("schema", "") != kSchemaVersion) return "missing or wrong schema tag";
    if (!r.contains("command") || !r.at("command").is_string()) return "missing command";
    bool has_result = r.contains("result") && r.at("result").is_object();
    bool has_error = r.contains("error") && r.at("error").is_object();
    if (has_result == has_error) return "exactly one of result/error expected";
    if (has_error) {
        const json& e = r.at("error");
        for (const char* k : {"kind", "code", "message"})
            if (!e.contains(k) || !e.at(k).is_string()) return std::string("error field '") + k + "' missing";
    }
    return "";
}

JobResult run(const JobSpec& job) {
    JobResult res;
    json report = {{"schema", kSchemaVersion}, {"command", job.command}};
    try {
        json out;
        const std::string& c = job.command;
        if (c == "witt") out = cmd_witt(job, res.text);
        else if (c == "cohomology") out = cmd_cohomology(job);
        else if (c == "ext") out = cmd_ext(job);
        else if (c == "lift-flag") out = cmd_lift_flag(job);
        else if (c == "glue-obstruction") out = cmd_glue(job);
        else if (c == "heisenberg") out = cmd_heisenberg(job);
        else if (c == "flag-vanish") out = cmd_flag_vanish(job);
        else if (c == "h0") out = cmd_h0(job);
        else if (c == "closure") out = cmd_closure(job);
        else fail(ErrorKind::Parse, "cli.command", "unknown command '" + c + "'");
        report["result"] = out;
    } catch (const Error& e) {
        res.exit_code = e.kind() == ErrorKind::Resource ? 2 : 1;
        report["error"] = {{"kind", kind_name(e.kind())}, {"code", e.code()}, {"message", e.what()}};
    } catch (const json::exception& e) {
        res.exit_code = 1;
        report["error"] = {{"kind", "parse"}, {"code", "cli.json"}, {"message", e.what()}};
    } catch (const std::bad_alloc&) {
        res.exit_code = 2;
        report["error"] = {{"kind", "resource"}, {"code", "cli.memory"}, {"message", "out of memory"}};
    } catch (const std::exception& e) {
        res.exit_code = 1;
        report["error"] = {{"kind", "structural"}, {"code", "cli.internal"}, {"message", e.what()}};
    }
    res.report = std::move(report);
    return res;
}

}  // namespace wl::cli
