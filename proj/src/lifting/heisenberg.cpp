#include "wittlift/errors.hpp"
#include "wittlift/lifting.hpp"
#include "search.hpp"

namespace wl {

namespace {

Vec cup11(const Rep& M, const Vec& a, const Vec& b) { return cup(M, 1, a, M, 1, b, M, scalar_pairing()); }

void check_level_hom(const FiniteGroup& G, i64 p, int k, const Vec& x, const char* name) {
    Rep T = Rep::trivial(G, p, k);
    if (static_cast<i64>(x.size()) != cochain_dim(T, 1))
        fail(ErrorKind::Structural, "heisenberg.shape", std::string(name) + " needs |G|-1 values");
    for (i64 v : coboundary(T, 1, x))
        if (mod(v, T.modulus()))
            fail(ErrorKind::Precondition, "heisenberg.not_hom", std::string(name) + " is not a homomorphism");
}

Vec reduce_vec(const Vec& x, i64 n) {
    Vec out(x.size());
    for (size_t i = 0; i < x.size(); ++i) out[i] = mod(x[i], n);
    return out;
}

}  // namespace

HeisenbergResult heisenberg_check(const FiniteGroup& G, i64 p, const Vec& x0, const Vec& y0) {
    check_level_hom(G, p, 1, x0, "x");
    check_level_hom(G, p, 1, y0, "y");
    Vec x = reduce_vec(x0, p), y = reduce_vec(y0, p);
    Rep T1 = Rep::trivial(G, p, 1), T2 = Rep::trivial(G, p, 2);
    if (!Cohomology(T1, 2).is_coboundary(cup11(T1, x, y)))
        fail(ErrorKind::Precondition, "heisenberg.cup", "x cup y is nonzero, so E_x and E_y do not glue");
    HeisenbergResult out;
    auto Xs = hom_lifts(G, p, 2, x), Ys = hom_lifts(G, p, 2, y);
    out.num_lifts_x = static_cast<int>(Xs.size());
    out.num_lifts_y = static_cast<int>(Ys.size());
    Cohomology H2(T2, 2);
    for (size_t i = 0; i < Xs.size() && !out.liftable; ++i)
        for (size_t j = 0; j < Ys.size() && !out.liftable; ++j)
            if (H2.is_coboundary(cup11(T2, Xs[i], Ys[j]))) {
                out.liftable = true;
                out.X = Xs[i];
                out.Y = Ys[j];
            }

    // U_3(F_p) homomorphisms with superdiagonal (x, y), then lifts of each
    auto gens = G.generators();
    i64 glueings = ipow(p, static_cast<int>(gens.size()));
    for (i64 idx = 0; idx < glueings; ++idx) {
        std::vector<std::vector<Mat>> cands;
        i64 r = idx;
        for (int s : gens) {
            Mat M = Mat::identity(3, p);
            M(0, 1) = x[s - 1];
            M(1, 2) = y[s - 1];
            M(0, 2) = r % p;
            r /= p;
            cands.push_back({M});
        }
        auto rho = search_images(G, gens, cands, 3, p, 1'000'000);
        if (!rho) continue;
        ++out.u3_glueings;
        FlagRep rho1{G, p, 1, 3, *rho};
        if (exhaustive_lift(rho1, MatrixShape::Unipotent)) ++out.u3_lifted;
    }
    out.u3_liftable = out.u3_lifted > 0;
    return out;
}

ExpansionCheck heisenberg_expansion(const FiniteGroup& G, i64 p, const Vec& X0, const Vec& Y0, const Vec& u,
                                    const Vec& v) {
    check_level_hom(G, p, 2, X0, "X0");
    check_level_hom(G, p, 2, Y0, "Y0");
    check_level_hom(G, p, 1, u, "u");
    check_level_hom(G, p, 1, v, "v");
    i64 N = p * p;
    Rep T1 = Rep::trivial(G, p, 1), T2 = Rep::trivial(G, p, 2);
    Vec x = reduce_vec(X0, p), y = reduce_vec(Y0, p);
    Vec X(X0.size()), Y(Y0.size());
    for (size_t i = 0; i < X.size(); ++i) {
        X[i] = mod(X0[i] - p * u[i], N);
        Y[i] = mod(Y0[i] - p * v[i], N);
    }
    Vec lhs = cup11(T2, X, Y), base = cup11(T2, X0, Y0);
    Vec a = cup11(T1, u, y), b = cup11(T1, x, v);
    Vec A(a.size());
    for (size_t i = 0; i < a.size(); ++i) A[i] = mod(a[i] + b[i], p);
    ExpansionCheck out;
    out.cochain_identity = true;
    for (size_t i = 0; i < lhs.size(); ++i)
        out.cochain_identity &= mod(lhs[i], N) == mod(base[i] - p * A[i], N);
    // same identity with [A] replaced by another representative of its class
    Cohomology H1(T1, 2);
    Vec rep = H1.cocycle_from(H1.coordinates(A));
    Vec diff(lhs.size());
    for (size_t i = 0; i < lhs.size(); ++i) diff[i] = mod(lhs[i] - base[i] + p * rep[i], N);
    out.class_identity = Cohomology(T2, 2).is_coboundary(diff);
    return out;
}

}  // namespace wl
