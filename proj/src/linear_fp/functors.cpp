#include "wittlift/functors.hpp"

#include <algorithm>
#include <sstream>

#include "wittlift/errors.hpp"

namespace wl {

Poly poly_mul(const Poly& a, const Poly& b, i64 N) {
    Poly out;
    for (auto& [ma, ca] : a)
        for (auto& [mb, cb] : b) {
            Monomial m(ma.size());
            for (size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
            i64& c = out[m];
            c = mod(c + ca * cb, N);
        }
    for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

Poly poly_pow(const Poly& a, int e, int nvars, i64 N) {
    Poly r{{Monomial(nvars, 0), 1 % N}};
    for (int i = 0; i < e; ++i) r = poly_mul(r, a, N);
    return r;
}

std::vector<Monomial> monomial_basis(int d, int n) {
    std::vector<Monomial> out;
    if (d == 0) {
        if (n == 0) out.push_back({});
        return out;
    }
    Monomial m(d, 0);
    // recursive fill, first coordinate descending
    auto rec = [&](auto&& self, int i, int left) -> void {
        if (i == d - 1) {
            m[i] = left;
            out.push_back(m);
            return;
        }
        for (int v = left; v >= 0; --v) {
            m[i] = v;
            self(self, i + 1, left - v);
        }
    };
    rec(rec, 0, n);
    return out;
}

int monomial_position(const std::vector<Monomial>& basis, const Monomial& m) {
    auto it = std::find(basis.begin(), basis.end(), m);
    return it == basis.end() ? -1 : static_cast<int>(it - basis.begin());
}

i64 SymmetricFunctor::degree(i64 p) const {
    i64 s = 0;
    for (auto [a, r] : parts) s += a * ipow(p, r);
    return s;
}

i64 SymmetricFunctor::rank(int d) const {
    i64 s = 1;
    for (auto [a, r] : parts) s *= binomial(a + d - 1, d - 1);
    return s;
}

std::string SymmetricFunctor::to_string() const {
    std::ostringstream os;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) os << "⊗";
        os << "S^" << parts[i].first << "(V";
        if (parts[i].second) os << "^(" << parts[i].second << ")";
        os << ")";
    }
    return os.str();
}

FreeModule free_module(i64 modulus, int rank, const std::string& name) {
    FreeModule V{modulus, rank, {}};
    for (int i = 0; i < rank; ++i) V.labels.push_back(name + std::to_string(i + 1));
    return V;
}

namespace {

std::string monomial_label(const Monomial& m, int twist) {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < m.size(); ++i) {
        if (!m[i]) continue;
        if (!first) os << '*';
        first = false;
        os << 'e' << i + 1;
        if (twist) os << "^(" << twist << ")";
        if (m[i] > 1) os << '^' << m[i];
    }
    return first ? "1" : os.str();
}

}  // namespace

FreeModule apply_functor(const SymmetricFunctor& phi, const FreeModule& V) {
    bool twisted = std::any_of(phi.parts.begin(), phi.parts.end(), [](auto pr) { return pr.second > 0; });
    if (twisted && !is_prime(V.modulus))
        fail(ErrorKind::Unsupported, "functor.twist", "Frobenius twists need characteristic p");
    for (auto [a, r] : phi.parts)
        if (a < 0 || r < 0) fail(ErrorKind::Structural, "functor.part", "negative exponent or twist");
    std::vector<std::string> labels{""};
    for (auto [a, r] : phi.parts) {
        std::vector<std::string> next;
        for (auto& l : labels)
            for (auto& m : monomial_basis(V.rank, a))
                next.push_back(l.empty() ? monomial_label(m, r) : l + "⊗" + monomial_label(m, r));
        labels = next;
    }
    return FreeModule{V.modulus, static_cast<int>(labels.size()), labels};
}

Mat sym_power_map(const Mat& f, int n, i64 N) {
    auto src = monomial_basis(f.cols, n), dst = monomial_basis(f.rows, n);
    std::vector<Poly> images(f.cols);
    for (int j = 0; j < f.cols; ++j)
        for (int i = 0; i < f.rows; ++i) {
            if (mod(f(i, j), N) == 0) continue;
            Monomial m(f.rows, 0);
            m[i] = 1;
            images[j][m] = mod(f(i, j), N);
        }
    Mat S(static_cast<int>(dst.size()), static_cast<int>(src.size()));
    for (size_t c = 0; c < src.size(); ++c) {
        Poly prod{{Monomial(f.rows, 0), 1 % N}};
        for (int j = 0; j < f.cols; ++j) prod = poly_mul(prod, poly_pow(images[j], src[c][j], f.rows, N), N);
        for (auto& [m, v] : prod) S(monomial_position(dst, m), static_cast<int>(c)) = v;
    }
    return S;
}

LinearMap frobenius_arrow(const FreeModule& V, i64 p) {
    if (V.modulus != p || !is_prime(p)) fail(ErrorKind::Unsupported, "functor.frobenius", "needs characteristic p");
    auto basis = monomial_basis(V.rank, static_cast<int>(p));
    FreeModule src = apply_functor({{{1, 1}}}, V), dst = apply_functor({{{static_cast<int>(p), 0}}}, V);
    Mat M(dst.rank, src.rank);
    for (int i = 0; i < V.rank; ++i) {
        Monomial m(V.rank, 0);
        m[i] = static_cast<int>(p);
        M(monomial_position(basis, m), i) = 1;
    }
    return {src, dst, M};
}

LinearMap verschiebung_arrow(const FreeModule& V, i64 p) {
    // Gamma^p(V) = S^p(V^dual)^dual; the arrow is the transpose of Frob_{V^dual}.
    LinearMap F = frobenius_arrow(V, p);
    FreeModule src{V.modulus, F.codomain.rank, {}};
    for (auto& l : F.codomain.labels) src.labels.push_back("[" + l + "]");
    return {src, F.domain, transpose(F.matrix)};
}

Mat gamma_sym_pairing(int b, const FreeModule& V, i64 p) {
    if (V.rank != 2) fail(ErrorKind::Unsupported, "functor.pairing", "pairing is defined for rank 2");
    if (b < 0) fail(ErrorKind::Precondition, "functor.pairing", "b must be >= 0");
    // v = x e1 + y e2 ; v ^ e1 = -y, v ^ e2 = x (in units of e1 ^ e2).
    // <[v]_b, e1^j e2^{b-j}> = (-y)^j x^{b-j}; the coefficient of x^i y^{b-i}
    // is the Gram entry at divided monomial e1^[i] e2^[b-i].
    Poly wedge1{{{0, 1}, mod(-1, p)}}, wedge2{{{1, 0}, 1}};
    auto gam = monomial_basis(2, b), sym = monomial_basis(2, b);
    Mat G(static_cast<int>(gam.size()), static_cast<int>(sym.size()));
    for (size_t c = 0; c < sym.size(); ++c) {
        Poly prod = poly_mul(poly_pow(wedge1, sym[c][0], 2, p), poly_pow(wedge2, sym[c][1], 2, p), p);
        for (auto& [m, v] : prod) G(monomial_position(gam, m), static_cast<int>(c)) = v;
    }
    return G;
}

LinearMap theta_map(int b, i64 p, const FreeModule& V) {
    if (V.rank != 2) fail(ErrorKind::Unsupported, "functor.theta", "theta is defined for rank 2");
    auto a = digits(b, p);
    auto src = monomial_basis(2, b);
    // target basis: tuples of divided monomials, one per digit
    std::vector<std::vector<Monomial>> tgt{{}};
    for (int ai : a) {
        std::vector<std::vector<Monomial>> next;
        for (auto& t : tgt)
            for (auto& m : monomial_basis(2, ai)) {
                auto u = t;
                u.push_back(m);
                next.push_back(u);
            }
        tgt = next;
    }
    FreeModule S{V.modulus, static_cast<int>(src.size()), {}}, T{V.modulus, static_cast<int>(tgt.size()), {}};
    for (auto& m : src) S.labels.push_back("[" + monomial_label(m, 0) + "]");
    for (auto& t : tgt) {
        std::string l;
        for (size_t s = 0; s < t.size(); ++s) l += (s ? "⊗[" : "[") + monomial_label(t[s], static_cast<int>(s)) + "]";
        T.labels.push_back(l);
    }
    // [v]_b = sum x^i y^{b-i} e^[i,b-i] maps to prod_s sum x^{p^s i_s} y^{p^s (a_s - i_s)} e^[i_s, a_s - i_s];
    // matching coefficients of x^i y^{b-i} gives the matrix.
    Mat M(T.rank, S.rank);
    for (size_t t = 0; t < tgt.size(); ++t) {
        i64 xdeg = 0;
        for (size_t s = 0; s < tgt[t].size(); ++s) xdeg += ipow(p, static_cast<int>(s)) * tgt[t][s][0];
        int col = monomial_position(src, {static_cast<int>(xdeg), b - static_cast<int>(xdeg)});
        if (col >= 0) M(static_cast<int>(t), col) = 1;
    }
    return {S, T, M};
}

}  // namespace wl
