#include <map>
#include <sstream>

#include "wittlift/errors.hpp"
#include "wittlift/flag_calc.hpp"

namespace wl {

std::string weight_to_string(const Weight& a) {
    std::string s = "(";
    for (size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + std::to_string(a[i]);
    return s + ")";
}

Weight parse_weight(const std::string& s0) {
    std::string s;
    for (char c : s0)
        if (c != '(' && c != ')' && c != ' ') s += c;
    Weight out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            size_t used = 0;
            out.push_back(std::stoll(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            fail(ErrorKind::Parse, "weight.parse", "bad weight entry '" + tok + "'");
        }
    }
    if (out.empty()) fail(ErrorKind::Parse, "weight.parse", "empty weight");
    return out;
}

i64 total_degree(const Weight& a) {
    i64 t = 0;
    for (i64 x : a) t += x;
    return t;
}

bool weakly_increasing(const Weight& a) {
    for (size_t i = 1; i < a.size(); ++i)
        if (a[i - 1] > a[i]) return false;
    return true;
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Vanishes: return "Vanishes";
        case Verdict::NoConclusion: return "NoConclusion";
        case Verdict::Unknown: return "Unknown";
    }
    return "?";
}

Verdict nonincreasing_vanishes(const Weight& a) {
    return weakly_increasing(a) ? Verdict::NoConclusion : Verdict::Vanishes;
}

P1Cohomology p1_bundle_cohomology(int n, int d) {
    if (n <= 0) fail(ErrorKind::Precondition, "p1.domain", "n must be positive; use the dual weight form");
    if (d < 2) fail(ErrorKind::Precondition, "p1.domain", "rank must be at least 2");
    P1Cohomology out;
    out.n = n;
    out.d = d;
    if (d >= 3 || n == 1) {
        out.r1 = "0";
        return out;
    }
    out.r1_zero = false;
    out.r1_rank = n - 1;
    out.r1 = "Gamma^" + std::to_string(n - 2) + "(V^dual) (x) Det(V)^dual";
    return out;
}

CechP1 cech_p1(int n, i64 p) {
    // O(-n): sections f(x) on U_0, x^{-n} g(1/x) on U_1; d(f, g) = f - x^{-n} g(1/x)
    int W = std::abs(n) + 2;
    int nf = W + 1, ng = W - n + 1;
    if (ng < 0) ng = 0;
    Mat d(2 * W + 1, nf + ng);
    for (int e = 0; e <= W; ++e) d(e + W, e) = 1;
    for (int j = 0; j < ng; ++j) {
        int e = -n - j;
        if (e >= -W && e <= W) d(e + W, nf + j) = mod(-1, p);
    }
    int rk = rank_mod_p(d, p);
    return CechP1{nf + ng - rk, 2 * W + 1 - rk};
}

namespace {

// exponent vectors of degree m in 3 variables, keyed for lookup
struct Bigraded {
    std::vector<Monomial> xs, ys;
    std::map<Monomial, int> xi, yi;
    Bigraded(int m, int n) : xs(monomial_basis(3, m)), ys(monomial_basis(3, n)) {
        for (size_t i = 0; i < xs.size(); ++i) xi[xs[i]] = static_cast<int>(i);
        for (size_t i = 0; i < ys.size(); ++i) yi[ys[i]] = static_cast<int>(i);
    }
    int size() const { return static_cast<int>(xs.size() * ys.size()); }
    int index(const Monomial& x, const Monomial& y) const {
        return xi.at(x) * static_cast<int>(ys.size()) + yi.at(y);
    }
};

// rank of multiplication by q = sum x_i y_i : S_{m-1,n-1} -> S_{m,n}, by sparse elimination
i64 rank_times_q(int m, int n, i64 p) {
    if (m == 0 || n == 0) return 0;
    Bigraded src(m - 1, n - 1), dst(m, n);
    std::map<int, std::map<int, i64>> pivots;  // leading index -> row
    i64 rank = 0;
    for (auto& x : src.xs)
        for (auto& y : src.ys) {
            std::map<int, i64> v;
            for (int i = 0; i < 3; ++i) {
                Monomial x2 = x, y2 = y;
                ++x2[i];
                ++y2[i];
                v[dst.index(x2, y2)] = 1;
            }
            while (!v.empty()) {
                auto lead = v.rbegin();
                auto it = pivots.find(lead->first);
                if (it == pivots.end()) {
                    pivots[lead->first] = v;
                    ++rank;
                    break;
                }
                i64 c = mulmod(lead->second, *invmod(it->second.at(lead->first), p), p);
                for (auto& [k, val] : it->second) {
                    i64 nv = mod(v[k] - mulmod(c, val, p), p);
                    if (nv) v[k] = nv;
                    else v.erase(k);
                }
            }
        }
    return rank;
}

}  // namespace

i64 h0_oracle(const Weight& a, i64 p) {
    int D = static_cast<int>(a.size());
    if (D < 1 || D > 3) fail(ErrorKind::Unsupported, "h0.rank", "h0_oracle handles flag rank 1, 2, 3");
    for (i64 x : a)
        if (x > 12 || x < -12) fail(ErrorKind::Resource, "h0.budget", "weight entries beyond the oracle budget");
    if (D == 1) return 1;
    if (D == 2) {
        i64 n = a[1] - a[0];
        return n < 0 ? 0 : static_cast<i64>(monomial_basis(2, static_cast<int>(n)).size());
    }
    // bidegree (a_2 - a_1, a_3 - a_2) in F_p[x_0..x_2, y_0..y_2] / (sum x_i y_i)
    i64 m = a[1] - a[0], n = a[2] - a[1];
    if (m < 0 || n < 0) return 0;
    Bigraded B(static_cast<int>(m), static_cast<int>(n));
    return B.size() - rank_times_q(static_cast<int>(m), static_cast<int>(n), p);
}

QMinus1 qminus1_dimension(int b, i64 p) {
    if (b < 0) fail(ErrorKind::Precondition, "qminus1.domain", "b must be >= 0");
    QMinus1 out;
    i64 q = 1;
    while (q < b + 1) q *= p;
    out.value = q == b + 1 ? 1 : 0;
    FreeModule V = free_module(p, 2);
    LinearMap th = theta_map(b, p, V);
    int rk = rank_mod_p(th.matrix, p);
    out.theta_bijective = rk == th.domain.rank && rk == th.codomain.rank;
    Mat G = gamma_sym_pairing(b, V, p);
    out.gram_size = G.rows;
    out.gram_rank = rank_mod_p(G, p);
    // value 1 forces theta bijective; for single-digit b theta is the identity and decides nothing
    out.theta_decisive = !out.theta_bijective || out.value == 1;
    out.consistent = out.gram_rank == b + 1 && (out.value == 0 || out.theta_bijective) && rk == th.codomain.rank;
    return out;
}

namespace {

// all b in N^k with sum t
void compositions(int k, int t, std::vector<std::vector<int>>& out, std::vector<int> cur = {}) {
    if (static_cast<int>(cur.size()) == k - 1) {
        cur.push_back(t);
        out.push_back(cur);
        return;
    }
    for (int x = 0; x <= t; ++x) {
        auto c = cur;
        c.push_back(x);
        compositions(k, t - x, out, c);
    }
}

// sums of line pieces of S^{a_1} W (x) ... (x) S^{a_k} W, W of rank w
std::vector<std::vector<int>> sym_tensor_pieces(int w, const std::vector<int>& as) {
    std::vector<std::vector<int>> acc{std::vector<int>(w, 0)};
    for (int a : as) {
        std::vector<std::vector<int>> cs, next;
        compositions(w, a, cs);
        for (auto& x : acc)
            for (auto& c : cs) {
                auto y = x;
                for (int i = 0; i < w; ++i) y[i] += c[i];
                next.push_back(y);
            }
        acc = next;
    }
    return acc;
}

}  // namespace

HomCheckReport hom_lemma_check(int D, int m, int n, int r, const std::vector<int>& partition, i64 p) {
    if (!(0 <= m && m < n - 1 && n - 1 <= D - 2))
        fail(ErrorKind::Precondition, "homcheck.indices", "need 0 <= m < n-1 <= D-2");
    if (r < 0) fail(ErrorKind::Precondition, "homcheck.indices", "r must be >= 0");
    i64 pr = ipow(p, r), sum = 0;
    for (int a : partition) {
        if (a <= 0) fail(ErrorKind::Precondition, "homcheck.partition", "parts must be positive");
        sum += a;
    }
    if (sum != pr) fail(ErrorKind::Precondition, "homcheck.partition", "parts must add up to p^r");
    HomCheckReport out;
    out.pure = partition.size() == 1;
    out.expected = out.pure ? 1 : 0;
    int w = n - m;
    auto check = [&](const std::vector<int>& loc) {
        Weight a(D, 0);
        for (int i = 0; i < w; ++i) a[m + i] = loc[i];
        ++out.pieces_checked;
        bool zero = D <= 3 ? h0_oracle(a, p) == 0 : nonincreasing_vanishes(a) == Verdict::Vanishes;
        if (!zero) out.oracle_consistent = false;
    };
    if (out.pure) {
        // cokernel of End(W)^{(r)} -> W^{(r)dual} (x) S^{p^r} W
        for (auto& b : sym_tensor_pieces(w, {static_cast<int>(pr)})) {
            bool pure_b = false;
            for (int x : b) pure_b |= x == pr;
            if (pure_b) continue;
            for (int i = 0; i < w; ++i) {
                auto c = b;
                c[i] -= static_cast<int>(pr);
                check(c);
            }
        }
        out.note = "generator: Frobenius W^(r) -> S^{p^r} W";
    } else {
        std::vector<int> head(partition.begin(), partition.end() - 1);
        // i = n: coarse piece S^{a_1} W (x) ... (x) L_n^{a_s - p^r}, decided by the engine
        std::vector<Expr> parts;
        for (int a : head) parts.push_back(sym(a, quot(n, m)));
        Weight tw(D, 0);
        tw[n - 1] = partition.back() - pr;
        parts.push_back(line(tw));
        ++out.pieces_checked;
        if (devissage_decide(tensor(parts), 0, 0, D, p).verdict != Verdict::Vanishes) out.oracle_consistent = false;
        // i < n: line pieces
        for (auto& b : sym_tensor_pieces(w, head))
            for (int i = 0; i + 1 < w; ++i) {
                auto c = b;
                c[i] -= static_cast<int>(pr);
                c[w - 1] += partition.back();
                check(c);
            }
        out.note = "composite partition";
    }
    return out;
}

namespace {

// variable layout for the splitting-coordinate model
struct TautVars {
    int m, d;
    int nv() const { return m * d + d * d + d + 1; }
    int s(int i, int j) const { return i * d + j; }
    int A(int i, int j) const { return m * d + i * d + j; }
    int u(int j) const { return m * d + d * d + j; }
    int mu() const { return m * d + d * d + d; }
    Poly var(int k) const {
        Monomial e(nv(), 0);
        e[k] = 1;
        return Poly{{e, 1}};
    }
};

Poly padd(Poly a, const Poly& b, i64 c, i64 p) {
    for (auto& [k, v] : b) {
        i64 nv = mod(a[k] + c * v, p);
        if (nv) a[k] = nv;
        else a.erase(k);
    }
    return a;
}

Poly constant(int nv, i64 c) { return c ? Poly{{Monomial(nv, 0), c}} : Poly{}; }

// substitute s_{i,j} -> sub[i][j] in a monomial over the s variables
Poly substitute(const Monomial& e, const std::vector<std::vector<Poly>>& sub, const TautVars& V, i64 p) {
    Poly out = constant(V.nv(), 1);
    for (int i = 0; i < V.m; ++i)
        for (int j = 0; j < V.d; ++j)
            if (e[V.s(i, j)]) out = poly_mul(out, poly_pow(sub[i][j], e[V.s(i, j)], V.nv(), p), p);
    return out;
}

}  // namespace

SplittingSectionsReport splitting_sections(int D, int d, int r, int m, i64 p) {
    if (!(1 <= d && d <= D - 2)) fail(ErrorKind::Precondition, "sections.indices", "need 1 <= d <= D-2");
    if (m < 1 || r < 0) fail(ErrorKind::Precondition, "sections.indices", "need m >= 1 and r >= 0");
    TautVars V{m, d};
    int nv = V.nv();
    i64 pr = ipow(p, r);
    // monomials in the m*d splitting coordinates of degree <= p^r
    std::vector<Monomial> monos;
    for (int deg = 0; deg <= pr; ++deg)
        for (auto& e : monomial_basis(m * d, deg)) {
            Monomial full(nv, 0);
            for (int k = 0; k < m * d; ++k) full[k] = e[k];
            monos.push_back(full);
        }
    if (monos.size() * (d + 1) > 4000) fail(ErrorKind::Resource, "sections.budget", "model too large");
    // unknowns: v_j coefficient of mono (j < d), then a coefficient of mono
    int nm = static_cast<int>(monos.size());
    int nu = nm * (d + 1);
    auto col = [&](int comp, int mi) { return comp * nm + mi; };

    // substitutions for the three group actions
    std::vector<std::vector<Poly>> subA(m, std::vector<Poly>(d)), subU(m, std::vector<Poly>(d)),
        subM(m, std::vector<Poly>(d));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < d; ++j) {
            for (int k = 0; k < d; ++k)
                subA[i][j] = padd(subA[i][j], poly_mul(V.var(V.A(j, k)), V.var(V.s(i, k)), p), 1, p);
            subU[i][j] = padd(V.var(V.s(i, j)), V.var(V.u(j)), 1, p);
            subM[i][j] = poly_mul(V.var(V.mu()), V.var(V.s(i, j)), p);
        }
    // each identity is a list of (unknown, polynomial) contributions that must sum to zero
    std::vector<std::map<Monomial, std::map<int, i64>>> identities;
    auto add = [&](std::map<Monomial, std::map<int, i64>>& id, int c, const Poly& P, i64 sign) {
        for (auto& [e, v] : P) {
            i64& slot = id[e][c];
            slot = mod(slot + sign * v, p);
        }
    };
    // GL_d: v_j(A s) = sum_k A_{jk}^{p^r} v_k(s), a(A s) = a(s)
    for (int j = 0; j < d; ++j) {
        std::map<Monomial, std::map<int, i64>> id;
        for (int mi = 0; mi < nm; ++mi) {
            add(id, col(j, mi), substitute(monos[mi], subA, V, p), 1);
            for (int k = 0; k < d; ++k)
                add(id, col(k, mi), poly_mul(poly_pow(V.var(V.A(j, k)), static_cast<int>(pr), nv, p),
                                             Poly{{monos[mi], 1}}, p), -1);
        }
        identities.push_back(id);
    }
    // translations: v_j(s + u) = v_j(s) + u_j^{p^r} a(s), a(s + u) = a(s)
    for (int j = 0; j <= d; ++j) {
        std::map<Monomial, std::map<int, i64>> id;
        for (int mi = 0; mi < nm; ++mi) {
            add(id, col(j, mi), substitute(monos[mi], subU, V, p), 1);
            add(id, col(j, mi), Poly{{monos[mi], 1}}, -1);
            if (j < d)
                add(id, col(d, mi), poly_mul(poly_pow(V.var(V.u(j)), static_cast<int>(pr), nv, p),
                                             Poly{{monos[mi], 1}}, p), -1);
        }
        identities.push_back(id);
    }
    // scaling by mu = 1/lambda: v(mu s) = mu^{p^r} v(s), a(mu s) = a(s)
    for (int j = 0; j <= d; ++j) {
        std::map<Monomial, std::map<int, i64>> id;
        Poly scale = j < d ? poly_pow(V.var(V.mu()), static_cast<int>(pr), nv, p) : constant(nv, 1);
        for (int mi = 0; mi < nm; ++mi) {
            add(id, col(j, mi), substitute(monos[mi], subM, V, p), 1);
            add(id, col(j, mi), poly_mul(scale, Poly{{monos[mi], 1}}, p), -1);
        }
        identities.push_back(id);
    }
    std::vector<std::map<int, i64>> rows;
    for (auto& id : identities)
        for (auto& [e, row] : id) {
            std::map<int, i64> r2;
            for (auto& [c, v] : row)
                if (v) r2[c] = v;
            if (!r2.empty()) rows.push_back(r2);
        }
    Mat M(static_cast<int>(rows.size()), nu);
    for (size_t i = 0; i < rows.size(); ++i)
        for (auto& [c, v] : rows[i]) M(static_cast<int>(i), c) = v;
    SplittingSectionsReport out;
    out.unknowns = nu;
    out.dimension = nu - rank_mod_p(M, p);
    // sigma_i^{(r)}: v_j = s_{i,j}^{p^r}, a = 1
    out.frobenius_sections_found = true;
    for (int i = 0; i < m; ++i) {
        Vec x(nu, 0);
        for (int j = 0; j < d; ++j) {
            Monomial e(nv, 0);
            e[V.s(i, j)] = static_cast<int>(pr);
            for (int mi = 0; mi < nm; ++mi)
                if (monos[mi] == e) x[col(j, mi)] = 1;
        }
        x[col(d, 0)] = 1;  // monos[0] is the constant monomial
        for (i64 v : matvec(M, x, p)) out.frobenius_sections_found &= v == 0;
    }
    return out;
}

}  // namespace wl
