#include "wittlift/errors.hpp"
#include "wittlift/lifting.hpp"
#include "search.hpp"

namespace wl {

namespace {

void check_glue_data(const FlagRep& E, const FlagRep& P) {
    for (const FlagRep* F : {&E, &P}) {
        std::string err = F->check();
        if (!err.empty()) fail(ErrorKind::Structural, "glue.invalid", err);
    }
    if (E.G.order() != P.G.order() || E.p != P.p || E.k != P.k)
        fail(ErrorKind::Structural, "glue.mismatch", "flags live over different groups or levels");
    if (P.d != 2 || E.d < 1) fail(ErrorKind::Structural, "glue.shape", "need a rank-d flag and a rank-2 extension");
    if (E.line(E.d - 1).act != P.line(0).act)
        fail(ErrorKind::Structural, "glue.mismatch", "last line of E differs from the first line of P");
}

// g.x = mu(g)^{-1} A(g) x on V_{d-1}
Rep glue_module(const FlagRep& E, const FlagRep& P) {
    int m = E.d - 1;
    i64 N = E.modulus();
    Rep M = Rep::trivial(E.G, E.p, E.k, m);
    for (int g = 0; g < E.G.order(); ++g) {
        i64 mu_inv = *invmod(P.rho[g](1, 1), N);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) M.act[g](i, j) = mulmod(E.rho[g](i, j), mu_inv, N);
    }
    return M;
}

// w(g, h) = b(g) beta(h) mu(gh)^{-1}
Vec glue_cocycle(const FlagRep& E, const FlagRep& P, const Rep& M) {
    int m = E.d - 1;
    i64 N = E.modulus();
    return make_cochain(M, 2, [&](const std::vector<int>& t) {
        int g = t[0], h = t[1];
        i64 s = mulmod(P.rho[h](0, 1), *invmod(P.rho[E.G.mul(g, h)](1, 1), N), N);
        Vec out(m);
        for (int i = 0; i < m; ++i) out[i] = mulmod(E.rho[g](i, m), s, N);
        return out;
    });
}

FlagRep glued_flag(const FlagRep& E, const FlagRep& P, const std::vector<Vec>& column) {
    int d = E.d;
    FlagRep out{E.G, E.p, E.k, d + 1, {}};
    for (int g = 0; g < E.G.order(); ++g) {
        Mat M(d + 1, d + 1);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) M(i, j) = E.rho[g](i, j);
        for (int i = 0; i + 1 < d; ++i) M(i, d) = column[g][i];
        M(d - 1, d) = P.rho[g](0, 1);
        M(d, d) = P.rho[g](1, 1);
        out.rho.push_back(M);
    }
    return out;
}

}  // namespace

GlueResult glue_obstruction(const FlagRep& E, const FlagRep& P) {
    check_glue_data(E, P);
    GlueResult out;
    int m = E.d - 1;
    i64 N = E.modulus();
    out.module = glue_module(E, P);
    out.c2.stage = E.d;
    out.c2.note = "H^2(G, V_{d-1} (x) L_{d+1}^dual)";
    if (m == 0) {
        out.witness = glued_flag(E, P, std::vector<Vec>(E.G.order()));
        return out;
    }
    Vec w = glue_cocycle(E, P, out.module);
    Cohomology H2(out.module, 2);
    if (!H2.is_cocycle(w)) fail(ErrorKind::Structural, "glue.internal", "glueing obstruction is not a cocycle");
    out.c2.group_factors = H2.factors();
    out.c2.class_coords = H2.coordinates(w);
    out.c2.cocycle = w;
    auto psi = H2.primitive(w);
    out.c2.vanishes = psi.has_value();
    if (!psi) return out;
    // c'(g) = -psi(g), c(g) = c'(g) mu(g)
    std::vector<Vec> col(E.G.order(), Vec(m, 0));
    for (int g = 1; g < E.G.order(); ++g)
        for (int i = 0; i < m; ++i)
            col[g][i] = mulmod(mod(-(*psi)[static_cast<size_t>(g - 1) * m + i], N), P.rho[g](1, 1), N);
    FlagRep F = glued_flag(E, P, col);
    std::string err = F.check();
    if (!err.empty()) fail(ErrorKind::Structural, "glue.internal", "glued flag fails: " + err);
    out.witness = F;
    return out;
}

std::optional<FlagRep> brute_force_glue(const FlagRep& E, const FlagRep& P) {
    check_glue_data(E, P);
    int m = E.d - 1, d = E.d;
    i64 N = E.modulus();
    auto gens = E.G.generators();
    i64 per = ipow(N, m);
    if (per > 1'000'000) fail(ErrorKind::Resource, "glue.budget", "too many columns to enumerate");
    std::vector<std::vector<Mat>> cands;
    for (int s : gens) {
        std::vector<Mat> c;
        for (i64 idx = 0; idx < per; ++idx) {
            Vec col(m);
            i64 r = idx;
            for (int i = 0; i < m; ++i, r /= N) col[i] = r % N;
            std::vector<Vec> cols(E.G.order(), Vec(m, 0));
            cols[s] = col;
            c.push_back(glued_flag(E, P, cols).rho[s]);
        }
        cands.push_back(c);
    }
    auto rho = search_images(E.G, gens, cands, d + 1, N, 50'000'000);
    if (!rho) return std::nullopt;
    return FlagRep{E.G, E.p, E.k, d + 1, *rho};
}

ReducedObstruction reduce_glue_obstruction(const FlagRep& E, const FlagRep& P, const FlagRep& glued1) {
    check_glue_data(E, P);
    if (E.k != 2) fail(ErrorKind::Structural, "glue.level", "reduction step expects flags over Z/p^2");
    std::string err = glued1.check();
    if (!err.empty()) fail(ErrorKind::Structural, "glue.invalid", err);
    int d = E.d, m = d - 1;
    i64 p = E.p, N = p * p;
    if (glued1.k != 1 || glued1.d != d + 1 || glued1.truncate(d).rho != E.reduce(1).rho)
        fail(ErrorKind::Precondition, "glue.mod_p", "mod-p glueing does not extend E mod p");
    for (int g = 0; g < E.G.order(); ++g)
        for (int i : {0, 1})
            for (int j : {0, 1})
                if (glued1.rho[g](d - 1 + i, d - 1 + j) != mod(P.rho[g](i, j), p))
                    fail(ErrorKind::Precondition, "glue.mod_p", "mod-p glueing has the wrong quotient");
    ReducedObstruction out;
    GlueResult full = glue_obstruction(E, P);
    out.c2 = full.c2;
    out.c1.stage = d;
    out.c1.note = "H^2(G, (V_{d-1} (x) L_{d+1}^dual) mod p)";
    if (m == 0) {
        out.pushes_to_c2 = true;
        return out;
    }
    const Rep& M2 = full.module;
    Rep M1 = reduce_rep(M2, 1);
    // u~: integer lift of c_1'(g) = c_1(g) mu_1(g)^{-1}
    Vec u = make_cochain(M2, 1, [&](const std::vector<int>& t) {
        int g = t[0];
        i64 mi = *invmod(glued1.rho[g](d, d), p);
        Vec v(m);
        for (int i = 0; i < m; ++i) v[i] = mulmod(glued1.rho[g](i, d), mi, p);
        return v;
    });
    Vec du = coboundary(M2, 1, u);
    const Vec& w = full.c2.cocycle;
    Vec c1(w.size());
    for (size_t i = 0; i < w.size(); ++i) {
        i64 s = mod(w[i] + du[i], N);
        if (s % p) fail(ErrorKind::Structural, "glue.internal", "w + du is not divisible by p");
        c1[i] = s / p;
    }
    Cohomology H1(M1, 2);
    if (!H1.is_cocycle(c1)) fail(ErrorKind::Structural, "glue.internal", "reduced obstruction is not a cocycle");
    out.c1.group_factors = H1.factors();
    out.c1.class_coords = H1.coordinates(c1);
    out.c1.cocycle = c1;
    out.c1.vanishes = H1.is_coboundary(c1);
    // j_*(c_1) = c_2
    Vec diff(w.size());
    for (size_t i = 0; i < w.size(); ++i) diff[i] = mod(p * c1[i] - w[i], N);
    out.pushes_to_c2 = Cohomology(M2, 2).is_coboundary(diff);
    if (!out.pushes_to_c2) fail(ErrorKind::Structural, "glue.jc1", "j_*(c_1) differs from c_2");
    return out;
}

}  // namespace wl
