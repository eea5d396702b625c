#include <algorithm>

#include "wittlift/cohomology.hpp"
#include "wittlift/errors.hpp"

namespace wl {

i64 cochain_dim(const Rep& M, int n) {
    if (n < 0) fail(ErrorKind::Structural, "cochain.degree", "negative cochain degree");
    i64 m = M.G.order() - 1, s = M.dim;
    for (int i = 0; i < n; ++i) {
        s *= m;
        if (s > kCochainBudget) fail(ErrorKind::Resource, "cochain.budget", "cochain space exceeds the dense budget");
    }
    return s;
}

i64 tuple_index(const FiniteGroup& G, const std::vector<int>& tuple) {
    i64 idx = 0, m = G.order() - 1;
    for (int g : tuple) idx = idx * m + (g - 1);
    return idx;
}

Vec cochain_value(const Rep& M, int, const Vec& phi, const std::vector<int>& tuple) {
    for (int g : tuple)
        if (g == 0) return Vec(M.dim, 0);
    i64 base = tuple_index(M.G, tuple) * M.dim;
    return Vec(phi.begin() + base, phi.begin() + base + M.dim);
}

void set_cochain_value(const Rep& M, int, Vec& phi, const std::vector<int>& tuple, const Vec& v) {
    for (int g : tuple)
        if (g == 0) fail(ErrorKind::Structural, "cochain.normalized", "normalized cochains vanish on the identity");
    i64 base = tuple_index(M.G, tuple) * M.dim;
    for (int i = 0; i < M.dim; ++i) phi[base + i] = mod(v[i], M.modulus());
}

namespace {

// calls f on every tuple of non-identity elements, in index order
template <class F>
void for_each_tuple(const FiniteGroup& G, int n, F f) {
    std::vector<int> t(n, 1);
    if (G.order() == 1 && n > 0) return;
    while (true) {
        f(t);
        int i = n - 1;
        while (i >= 0 && t[i] == G.order() - 1) t[i--] = 1;
        if (i < 0) return;
        ++t[i];
    }
}

}  // namespace

Vec make_cochain(const Rep& M, int n, const std::function<Vec(const std::vector<int>&)>& f) {
    Vec phi(cochain_dim(M, n), 0);
    for_each_tuple(M.G, n, [&](const std::vector<int>& t) { set_cochain_value(M, n, phi, t, f(t)); });
    return phi;
}

Vec coboundary(const Rep& M, int n, const Vec& phi) {
    i64 N = M.modulus();
    const FiniteGroup& G = M.G;
    if (static_cast<i64>(phi.size()) != cochain_dim(M, n))
        fail(ErrorKind::Structural, "cochain.shape", "cochain has wrong size");
    Vec out(cochain_dim(M, n + 1), 0);
    for_each_tuple(G, n + 1, [&](const std::vector<int>& t) {
        std::vector<int> sub(t.begin() + 1, t.end());
        Vec v = matvec(M.act[t[0]], cochain_value(M, n, phi, sub), N);
        for (int i = 1; i <= n; ++i) {
            std::vector<int> s;
            for (int j = 0; j <= n; ++j) {
                if (j == i) continue;
                s.push_back(j == i - 1 ? G.mul(t[i - 1], t[i]) : t[j]);
            }
            Vec w = cochain_value(M, n, phi, s);
            for (int r = 0; r < M.dim; ++r) v[r] += (i % 2 ? -w[r] : w[r]);
        }
        Vec w = cochain_value(M, n, phi, std::vector<int>(t.begin(), t.end() - 1));
        for (int r = 0; r < M.dim; ++r) v[r] += ((n + 1) % 2 ? -w[r] : w[r]);
        set_cochain_value(M, n + 1, out, t, v);
    });
    return out;
}

Mat coboundary_matrix(const Rep& M, int n) {
    i64 N = M.modulus();
    const FiniteGroup& G = M.G;
    i64 rows = cochain_dim(M, n + 1), cols = cochain_dim(M, n);
    if (rows * std::max<i64>(cols, 1) > kCochainBudget)
        fail(ErrorKind::Resource, "cochain.budget", "coboundary matrix exceeds the dense budget");
    Mat D(static_cast<int>(rows), static_cast<int>(cols));
    int d = M.dim;
    for_each_tuple(G, n + 1, [&](const std::vector<int>& t) {
        i64 r0 = tuple_index(G, t) * d;
        auto add_block = [&](const std::vector<int>& s, const Mat* A, i64 sign) {
            for (int g : s)
                if (g == 0) return;
            i64 c0 = tuple_index(G, s) * d;
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) {
                    i64 v = A ? (*A)(i, j) : (i == j);
                    if (!v) continue;
                    i64& e = D(static_cast<int>(r0 + i), static_cast<int>(c0 + j));
                    e = mod(e + sign * v, N);
                }
        };
        add_block(std::vector<int>(t.begin() + 1, t.end()), &M.act[t[0]], 1);
        for (int i = 1; i <= n; ++i) {
            std::vector<int> s;
            for (int j = 0; j <= n; ++j) {
                if (j == i) continue;
                s.push_back(j == i - 1 ? G.mul(t[i - 1], t[i]) : t[j]);
            }
            add_block(s, nullptr, i % 2 ? -1 : 1);
        }
        add_block(std::vector<int>(t.begin(), t.end() - 1), nullptr, (n + 1) % 2 ? -1 : 1);
    });
    return D;
}

Cohomology::Cohomology(const Rep& M, int n) : M_(M), n_(n) {
    if (n < 0 || n > 3) fail(ErrorKind::Unsupported, "cohomology.degree", "cohomology is computed in degrees 0..3");
    Mat d_out = coboundary_matrix(M, n);
    d_in_ = n > 0 ? coboundary_matrix(M, n - 1) : Mat(M.dim, 0);
    sq_.emplace(d_out, d_in_, M.p, M.k);
}

Vec Cohomology::coordinates(const Vec& cocycle) const {
    if (!is_cocycle(cocycle)) fail(ErrorKind::Precondition, "cohomology.not_cocycle", "cochain is not a cocycle");
    return sq_->coordinates(cocycle);
}

bool Cohomology::is_cocycle(const Vec& phi) const { return sq_->is_cycle(phi); }

bool Cohomology::is_coboundary(const Vec& phi) const { return sq_->is_boundary(phi); }

Vec Cohomology::cocycle_from(const Vec& coords) const {
    i64 N = M_.modulus();
    Vec z(cochain_dim(M_, n_), 0);
    for (size_t i = 0; i < coords.size() && i < representatives().size(); ++i)
        for (size_t x = 0; x < z.size(); ++x) z[x] = mod(z[x] + coords[i] * representatives()[i][x], N);
    return z;
}

std::optional<Vec> Cohomology::primitive(const Vec& phi) const {
    if (n_ == 0) {
        for (i64 v : phi)
            if (mod(v, M_.modulus())) return std::nullopt;
        return Vec{};
    }
    return Smith(d_in_, M_.p, M_.k).solve(phi);
}

std::vector<int> cyclic_cohomology_factors(const Rep& M, int n) {
    const FiniteGroup& G = M.G;
    i64 N = M.modulus();
    int t = -1;
    for (int g = 0; g < G.order(); ++g)
        if (G.element_order(g) == G.order()) {
            t = g;
            break;
        }
    if (t < 0) fail(ErrorKind::Unsupported, "cohomology.not_cyclic", "group is not cyclic");
    Mat T = matsub(M.act[t], Mat::identity(M.dim), N);
    Mat Nm(M.dim, M.dim);
    for (int g = 0; g < G.order(); ++g) Nm = matadd(Nm, M.act[g], N);
    if (n == 0) return Subquotient(T, Mat(M.dim, 0), M.p, M.k).factors();
    if (n % 2) return Subquotient(Nm, T, M.p, M.k).factors();
    return Subquotient(T, Nm, M.p, M.k).factors();
}

Vec cup(const Rep& M, int a_deg, const Vec& a, const Rep& N, int b_deg, const Vec& b, const Rep& Q, const Mat& P) {
    if (P.rows != Q.dim || P.cols != M.dim * N.dim)
        fail(ErrorKind::Structural, "cup.pairing_shape", "pairing has wrong shape");
    if (!is_equivariant_pairing(M, N, Q, P))
        fail(ErrorKind::Structural, "cup.pairing", "pairing is not G-equivariant");
    i64 mod_q = Q.modulus();
    const FiniteGroup& G = M.G;
    return make_cochain(Q, a_deg + b_deg, [&](const std::vector<int>& t) {
        std::vector<int> ta(t.begin(), t.begin() + a_deg), tb(t.begin() + a_deg, t.end());
        int prod = 0;
        for (int g : ta) prod = G.mul(prod, g);
        Vec x = cochain_value(M, a_deg, a, ta);
        Vec y = matvec(N.act[prod], cochain_value(N, b_deg, b, tb), N.modulus());
        Vec xy(M.dim * N.dim);
        for (int i = 0; i < M.dim; ++i)
            for (int j = 0; j < N.dim; ++j) xy[i * N.dim + j] = mulmod(x[i], y[j], mod_q);
        return matvec(P, xy, mod_q);
    });
}

bool is_equivariant_pairing(const Rep& M, const Rep& N, const Rep& Q, const Mat& P) {
    i64 q = Q.modulus();
    for (int g : M.G.generators())
        if (matmul(P, kron(M.act[g], N.act[g], q), q) != matmul(Q.act[g], P, q)) return false;
    return true;
}

Mat scalar_pairing() { return Mat::from_rows({{1}}); }

namespace {

bool full_rank_mod_p(const Mat& A, i64 p, int r) { return rank_mod_p(A, p) == r; }

}  // namespace

std::string ShortExact::check() const {
    if (A.G.order() != E.G.order() || B.G.order() != E.G.order()) return "modules over different groups";
    if (A.p != E.p || B.p != E.p) return "modules over different primes";
    if (A.k > E.k || B.k > E.k) return "middle term must have the highest level";
    if (j.rows != E.dim || j.cols != A.dim || pi.rows != B.dim || pi.cols != E.dim) return "map shapes do not match";
    i64 p = E.p, NE = E.modulus(), NB = B.modulus(), shift = ipow(p, E.k - A.k);
    Mat jr = reduce(j, NE), jp(j.rows, j.cols);
    for (int i = 0; i < j.rows; ++i)
        for (int c = 0; c < j.cols; ++c) {
            if (jr(i, c) % shift) return "inclusion is not defined on the kernel's level";
            jp(i, c) = jr(i, c) / shift;
        }
    if (!full_rank_mod_p(jp, p, A.dim)) return "inclusion is not injective";
    if (!full_rank_mod_p(pi, p, B.dim)) return "projection is not surjective";
    if (!matmul(reduce(pi, NB), jr, NB).is_zero()) return "composite is not zero";
    if (static_cast<i64>(E.k) * E.dim != static_cast<i64>(A.k) * A.dim + static_cast<i64>(B.k) * B.dim)
        return "orders do not multiply";
    for (int g : E.G.generators()) {
        if (matmul(jr, A.act[g], NE) != matmul(E.act[g], jr, NE)) return "inclusion is not equivariant";
        if (matmul(pi, E.act[g], NB) != matmul(B.act[g], pi, NB)) return "projection is not equivariant";
    }
    return "";
}

Vec connecting(const ShortExact& seq, int n, const Vec& c) {
    std::string err = seq.check();
    if (!err.empty()) fail(ErrorKind::Structural, "connecting.sequence", err);
    const Rep &A = seq.A, &E = seq.E, &B = seq.B;
    Vec dc = coboundary(B, n, c);
    if (std::any_of(dc.begin(), dc.end(), [](i64 v) { return v != 0; }))
        fail(ErrorKind::Precondition, "connecting.not_cocycle", "input is not a cocycle");
    i64 NE = E.modulus(), NA = A.modulus();
    // linear section of pi at the level of B, read at the level of E
    Smith Spi(reduce(seq.pi, B.modulus()), B.p, B.k);
    Mat S(E.dim, B.dim);
    for (int i = 0; i < B.dim; ++i) {
        Vec e(B.dim, 0);
        e[i] = 1;
        auto x = Spi.solve(e);
        if (!x) fail(ErrorKind::Structural, "connecting.section", "projection has no section");
        for (int r = 0; r < E.dim; ++r) S(r, i) = (*x)[r];
    }
    Vec lifted = make_cochain(E, n, [&](const std::vector<int>& t) { return matvec(S, cochain_value(B, n, c, t), NE); });
    Vec dl = coboundary(E, n, lifted);
    Smith Sj(reduce(seq.j, NE), E.p, E.k);
    return make_cochain(A, n + 1, [&](const std::vector<int>& t) {
        auto a = Sj.solve(cochain_value(E, n + 1, dl, t));
        if (!a) fail(ErrorKind::Structural, "connecting.pullback", "coboundary of the lift leaves the kernel");
        Vec v = *a;
        for (auto& x : v) x = mod(x, NA);
        return v;
    });
}

ShortExact bockstein_sequence(const Rep& L2) {
    if (L2.dim != 1 || L2.k != 2) fail(ErrorKind::Structural, "bockstein.module", "needs a rank-one module over Z/p^2");
    Rep L1 = reduce_rep(L2, 1);
    return ShortExact{L1, L2, L1, Mat::from_rows({{L2.p}}), Mat::from_rows({{1}})};
}

}  // namespace wl
