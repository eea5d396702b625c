#include "wittlift/errors.hpp"
#include "wittlift/lifting.hpp"

namespace wl {

namespace {

// normalized 1-cochain of a map on all elements
Vec values_to_cochain(const std::vector<i64>& h) { return Vec(h.begin() + 1, h.end()); }

void enumerate_homs(const FiniteGroup& G, i64 p, int k, const std::vector<std::vector<i64>>& choices,
                    std::vector<Vec>& out) {
    i64 N = ipow(p, k);
    auto gens = G.generators();
    std::vector<i64> img(gens.size());
    std::function<void(size_t)> go = [&](size_t t) {
        if (t == gens.size()) {
            std::vector<i64> h(G.order(), -1);
            h[0] = 0;
            std::vector<int> q{0};
            for (size_t i = 0; i < q.size(); ++i)
                for (size_t s = 0; s < gens.size(); ++s) {
                    int y = G.mul(q[i], gens[s]);
                    i64 v = mod(h[q[i]] + img[s], N);
                    if (h[y] < 0) {
                        h[y] = v;
                        q.push_back(y);
                    } else if (h[y] != v) {
                        return;
                    }
                }
            out.push_back(values_to_cochain(h));
            return;
        }
        for (i64 c : choices[t]) {
            img[t] = c;
            go(t + 1);
        }
    };
    go(0);
}

void check_hom(const FiniteGroup& G, i64 p, const Vec& x) {
    Rep T = Rep::trivial(G, p, 1);
    if (static_cast<i64>(x.size()) != cochain_dim(T, 1))
        fail(ErrorKind::Structural, "hom.shape", "homomorphism needs |G|-1 values");
    for (i64 v : coboundary(T, 1, x))
        if (mod(v, p)) fail(ErrorKind::Precondition, "hom.not_hom", "values do not define a homomorphism to Z/p");
}

}  // namespace

std::vector<Vec> all_homs(const FiniteGroup& G, i64 p, int k) {
    i64 N = ipow(p, k);
    std::vector<i64> all(N);
    for (i64 i = 0; i < N; ++i) all[i] = i;
    std::vector<Vec> out;
    enumerate_homs(G, p, k, std::vector<std::vector<i64>>(G.generators().size(), all), out);
    return out;
}

std::vector<Vec> hom_lifts(const FiniteGroup& G, i64 p, int k, const Vec& x) {
    check_hom(G, p, x);
    auto gens = G.generators();
    std::vector<std::vector<i64>> choices;
    for (int s : gens) {
        std::vector<i64> c;
        for (i64 t = 0; t < ipow(p, k - 1); ++t) c.push_back(mod(x[s - 1], p) + p * t);
        choices.push_back(c);
    }
    std::vector<Vec> out;
    enumerate_homs(G, p, k, choices, out);
    return out;
}

std::vector<Rep> character_lifts(const Rep& L1) {
    if (L1.dim != 1 || L1.k != 1) fail(ErrorKind::Structural, "line.shape", "expected a character over F_p");
    i64 p = L1.p, N = p * p;
    std::vector<Rep> out;
    for (const Vec& h : all_homs(L1.G, p, 1)) {
        Rep L = Rep::trivial(L1.G, p, 2, 1);
        for (int g = 1; g < L1.G.order(); ++g)
            L.act[g](0, 0) = mulmod(teichmuller_int(L1.act[g](0, 0), p, 2), 1 + p * h[g - 1], N);
        out.push_back(L);
    }
    return out;
}

namespace {

void check_line_data(const Rep& V1, const Vec& v1, const Rep& V2, const Rep& L2) {
    if (V1.k != 1 || V2.k != 2 || L2.k != 2 || L2.dim != 1 || V1.dim != V2.dim || V1.p != V2.p)
        fail(ErrorKind::Structural, "line.shape", "expected V_1 over F_p and V_2, L_2 over Z/p^2");
    if (reduce_rep(V2, 1).act != V1.act) fail(ErrorKind::Precondition, "line.reduction", "V_2 does not reduce to V_1");
    if (static_cast<int>(v1.size()) != V1.dim) fail(ErrorKind::Structural, "line.shape", "inclusion has wrong size");
    bool nonzero = false;
    for (i64 x : v1) nonzero |= mod(x, V1.p) != 0;
    if (!nonzero) fail(ErrorKind::Precondition, "line.zero", "inclusion vector is zero mod p");
    i64 p = V1.p;
    for (int g = 0; g < V1.G.order(); ++g) {
        Vec a = matvec(V1.act[g], v1, p);
        i64 l = mod(L2.act[g](0, 0), p);
        for (int i = 0; i < V1.dim; ++i)
            if (a[i] != mulmod(l, mod(v1[i], p), p))
                fail(ErrorKind::Precondition, "line.not_invariant", "v_1 is not an eigenvector with the character L_2 mod p");
    }
}

}  // namespace

LineLift lift_extension_prescribed(const Rep& V1, const Vec& v1, const Rep& V2, const Rep& L2) {
    check_line_data(V1, v1, V2, L2);
    i64 p = V1.p, N = p * p;
    int n = V1.dim;
    Rep L1 = reduce_rep(L2, 1);
    Rep H = hom_rep(L1, V1);  // g.w = V_1(g) w l_1(g)^{-1}
    Vec vt(n);
    for (int i = 0; i < n; ++i) vt[i] = mod(v1[i], p);
    // f(g) = l_1(g)^{-1} (V_2(g) v~ - L_2(g) v~) / p
    Vec f = make_cochain(H, 1, [&](const std::vector<int>& t) {
        int g = t[0];
        Vec a = matvec(V2.act[g], vt, N);
        i64 li = *invmod(L1.act[g](0, 0), p);
        Vec out(n);
        for (int i = 0; i < n; ++i) {
            i64 e = mod(a[i] - mulmod(L2.act[g](0, 0), vt[i], N), N);
            out[i] = mulmod(e / p, li, p);
        }
        return out;
    });
    Cohomology H1(H, 1);
    if (!H1.is_cocycle(f)) fail(ErrorKind::Structural, "line.internal", "line obstruction is not a cocycle");
    LineLift out;
    out.line = L2;
    out.obstruction = ObstructionReport{0, 1, false, H1.factors(), H1.coordinates(f), f, "H^1(G, Hom(L_1, V_1))"};
    auto psi = H1.primitive(f);
    if (!psi) return out;
    out.obstruction.vanishes = true;
    out.ok = true;
    out.inclusion.resize(n);
    for (int i = 0; i < n; ++i) out.inclusion[i] = mod(vt[i] - p * (*psi)[i], N);
    for (int g = 0; g < V2.G.order(); ++g) {
        Vec a = matvec(V2.act[g], out.inclusion, N);
        for (int i = 0; i < n; ++i)
            if (a[i] != mulmod(L2.act[g](0, 0), out.inclusion[i], N))
                fail(ErrorKind::Structural, "line.internal", "constructed line lift is not equivariant");
    }
    return out;
}

LineLift lift_extension_free(const Rep& V1, const Vec& v1, const Rep& V2) {
    if (V1.k != 1) fail(ErrorKind::Structural, "line.shape", "expected V_1 over F_p");
    Rep L1 = Rep::trivial(V1.G, V1.p, 1, 1);
    // read the character off the eigenvector
    int piv = -1;
    for (int i = 0; i < V1.dim && piv < 0; ++i)
        if (mod(v1.at(i), V1.p)) piv = i;
    if (piv < 0) fail(ErrorKind::Precondition, "line.zero", "inclusion vector is zero mod p");
    i64 inv = *invmod(mod(v1[piv], V1.p), V1.p);
    for (int g = 0; g < V1.G.order(); ++g)
        L1.act[g](0, 0) = mulmod(matvec(V1.act[g], v1, V1.p)[piv], inv, V1.p);
    LineLift first;
    bool have_first = false;
    for (const Rep& L2 : character_lifts(L1)) {
        LineLift r = lift_extension_prescribed(V1, v1, V2, L2);
        if (r.ok) {
            if (have_first) r.obstruction = first.obstruction;
            return r;
        }
        if (!have_first) {
            first = r;
            have_first = true;
        }
    }
    return first;
}

i64 count_line_lifts(const Rep& V1, const Vec& v1, const Rep& V2, const Rep& L2) {
    check_line_data(V1, v1, V2, L2);
    i64 p = V1.p, N = p * p;
    int n = V1.dim;
    if (n > 12) fail(ErrorKind::Resource, "line.budget", "too many lifts to enumerate");
    i64 total = ipow(p, n), count = 0;
    for (i64 idx = 0; idx < total; ++idx) {
        Vec v(n);
        i64 r = idx;
        for (int i = 0; i < n; ++i, r /= p) v[i] = mod(v1[i], p) + p * (r % p);
        bool ok = true;
        for (int g = 1; g < V2.G.order() && ok; ++g) {
            Vec a = matvec(V2.act[g], v, N);
            for (int i = 0; i < n && ok; ++i) ok = a[i] == mulmod(L2.act[g](0, 0), v[i], N);
        }
        count += ok;
    }
    return count;
}

}  // namespace wl
