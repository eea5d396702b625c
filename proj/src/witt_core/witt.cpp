#include "wittlift/witt.hpp"

#include <limits>
#include <sstream>

#include "wittlift/errors.hpp"

namespace wl {

WittRing::WittRing(FiniteRing base, int r, i64 p) : base_(std::move(base)), r_(r), p_(p) {
    if (r < 1) fail(ErrorKind::Structural, "witt.length", "Witt length must be >= 1");
    if (!is_prime(p)) fail(ErrorKind::Structural, "witt.prime", "p must be prime");
    auto pp = prime_power(base_.characteristic());
    if (!pp || pp->first != p)
        fail(ErrorKind::Structural, "witt.base", "base characteristic must be a power of p");
    lift_ = base_.lift(base_.characteristic() * ipow(p, r + 2));
}

WittRing::WittRing(FiniteRing base, int r) : WittRing(base, r, base.prime() ? base.prime() : 2) {}

std::uint64_t WittRing::size() const {
    std::uint64_t s = 1, b = base_.size();
    for (int i = 0; i < r_; ++i) {
        if (s > std::numeric_limits<std::uint64_t>::max() / b) return std::numeric_limits<std::uint64_t>::max();
        s *= b;
    }
    return s;
}

void WittRing::check(const WittVec& x) const {
    if (static_cast<int>(x.c.size()) != r_)
        fail(ErrorKind::Structural, "witt.length_mismatch", "Witt vector has wrong length");
    for (auto& a : x.c)
        if (static_cast<int>(a.size()) != base_.dim())
            fail(ErrorKind::Structural, "witt.base_mismatch", "coordinate not in the base ring");
}

WittVec WittRing::make(std::vector<Elem> coords) const {
    WittVec x{std::move(coords)};
    check(x);
    for (auto& a : x.c)
        for (auto& v : a) v = mod(v, base_.characteristic());
    return x;
}

WittVec WittRing::zero() const { return WittVec{std::vector<Elem>(r_, base_.zero())}; }

WittVec WittRing::one() const { return teichmuller(base_.one()); }

WittVec WittRing::teichmuller(const Elem& a) const {
    WittVec x = zero();
    x.c[0] = a;
    return x;
}

GhostVector WittRing::ghost_of_lift(const std::vector<Elem>& coords) const {
    GhostVector g{lift_, {}};
    std::vector<Elem> lifted;
    for (auto& a : coords) {
        Elem e(lift_.dim());
        for (int i = 0; i < lift_.dim(); ++i) e[i] = a[i];
        lifted.push_back(e);
    }
    for (int n = 0; n < r_; ++n) {
        Elem w = lift_.zero();
        for (int i = 0; i <= n; ++i) {
            Elem t = lift_.pow(lifted[i], static_cast<std::uint64_t>(ipow(p_, n - i)));
            w = lift_.add(w, lift_.scale(t, ipow(p_, i)));
        }
        g.w.push_back(w);
    }
    return g;
}

GhostVector WittRing::ghost(const WittVec& x) const {
    check(x);
    return ghost_of_lift(x.c);
}

WittVec WittRing::from_ghost(const GhostVector& g) const {
    WittVec out = zero();
    std::vector<Elem> lifted;
    for (int n = 0; n < r_; ++n) {
        Elem v = g.w[n];
        for (int i = 0; i < n; ++i) {
            Elem t = lift_.pow(lifted[i], static_cast<std::uint64_t>(ipow(p_, n - i)));
            v = lift_.sub(v, lift_.scale(t, ipow(p_, i)));
        }
        i64 pn = ipow(p_, n);
        for (auto c : v)
            if (c % pn != 0) fail(ErrorKind::Precondition, "witt.ghost", "ghost vector is not in the image");
        Elem c = lift_.divide_exact(v, pn);
        Elem red = lift_.reduce_to(c, base_);
        out.c[n] = red;
        Elem back(lift_.dim());
        for (int i = 0; i < lift_.dim(); ++i) back[i] = red[i];
        lifted.push_back(back);
    }
    return out;
}

WittVec WittRing::from_int(i64 n) const {
    GhostVector g{lift_, std::vector<Elem>(r_, lift_.from_int(n))};
    return from_ghost(g);
}

WittVec WittRing::add(const WittVec& x, const WittVec& y) const {
    check(x);
    check(y);
    if (r_ == 1) return WittVec{{base_.add(x.c[0], y.c[0])}};
    if (r_ == 2) {
        const auto &a0 = x.c[0], &a1 = x.c[1], &b0 = y.c[0], &b1 = y.c[1];
        Elem s1 = base_.add(a1, b1);
        for (int i = 1; i < p_; ++i) {
            Elem t = base_.mul(base_.pow(a0, i), base_.pow(b0, p_ - i));
            s1 = base_.sub(s1, base_.scale(t, binomial(static_cast<int>(p_), i) / p_));
        }
        return WittVec{{base_.add(a0, b0), s1}};
    }
    GhostVector gx = ghost(x), gy = ghost(y);
    for (int n = 0; n < r_; ++n) gx.w[n] = lift_.add(gx.w[n], gy.w[n]);
    return from_ghost(gx);
}

WittVec WittRing::mul(const WittVec& x, const WittVec& y) const {
    check(x);
    check(y);
    if (r_ == 1) return WittVec{{base_.mul(x.c[0], y.c[0])}};
    if (r_ == 2) {
        const auto &a0 = x.c[0], &a1 = x.c[1], &b0 = y.c[0], &b1 = y.c[1];
        Elem s1 = base_.add(base_.mul(base_.pow(a0, p_), b1), base_.mul(base_.pow(b0, p_), a1));
        s1 = base_.add(s1, base_.scale(base_.mul(a1, b1), p_));
        return WittVec{{base_.mul(a0, b0), s1}};
    }
    GhostVector gx = ghost(x), gy = ghost(y);
    for (int n = 0; n < r_; ++n) gx.w[n] = lift_.mul(gx.w[n], gy.w[n]);
    return from_ghost(gx);
}

WittVec WittRing::neg(const WittVec& x) const {
    check(x);
    // The n-th sum coordinate is a_n + b_n + (terms in lower coordinates),
    // so the negative is found one coordinate at a time.
    WittVec y = zero();
    for (int n = 0; n < r_; ++n) {
        WittVec s = add(x, y);
        y.c[n] = base_.neg(s.c[n]);
    }
    return y;
}

WittVec WittRing::sub(const WittVec& x, const WittVec& y) const { return add(x, neg(y)); }

WittVec WittRing::frobenius(const WittVec& x) const {
    check(x);
    if (base_.characteristic() != p_)
        fail(ErrorKind::Unsupported, "witt.frobenius", "Frobenius needs a base of characteristic p");
    WittVec y = x;
    for (auto& a : y.c) a = base_.frobenius(a);
    return y;
}

WittVec WittRing::verschiebung(const WittVec& x) const {
    check(x);
    WittVec y = zero();
    for (int i = 1; i < r_; ++i) y.c[i] = x.c[i - 1];
    return y;
}

WittVec WittRing::truncate(const WittVec& x, int s) const {
    check(x);
    if (s < 1 || s > r_) fail(ErrorKind::Structural, "witt.truncate", "truncation length out of range");
    return WittVec{std::vector<Elem>(x.c.begin(), x.c.begin() + s)};
}

std::uint64_t WittRing::index(const WittVec& x) const {
    std::uint64_t idx = 0, b = base_.size();
    for (int i = r_ - 1; i >= 0; --i) idx = idx * b + base_.index(x.c[i]);
    return idx;
}

WittVec WittRing::element(std::uint64_t idx) const {
    WittVec x = zero();
    std::uint64_t b = base_.size();
    for (int i = 0; i < r_; ++i) {
        x.c[i] = base_.element(idx % b);
        idx /= b;
    }
    return x;
}

std::vector<WittVec> WittRing::elements() const {
    std::uint64_t s = size();
    if (s > (1u << 20)) fail(ErrorKind::Resource, "witt.too_large", "Witt ring too large to enumerate");
    std::vector<WittVec> out;
    for (std::uint64_t i = 0; i < s; ++i) out.push_back(element(i));
    return out;
}

std::string WittRing::to_string(const WittVec& x) const {
    std::ostringstream os;
    os << '(';
    for (int i = 0; i < r_; ++i) os << (i ? "," : "") << base_.to_string(x.c[i]);
    os << ')';
    return os.str();
}

WittVec WittRing::parse(const std::string& s) const {
    std::string t;
    for (char c : s)
        if (!isspace(static_cast<unsigned char>(c))) t += c;
    if (t.size() < 2 || t.front() != '(' || t.back() != ')')
        fail(ErrorKind::Parse, "witt.parse", "Witt vector must look like (a0,a1,...): " + s);
    std::vector<Elem> coords;
    std::string cur;
    int depth = 0;
    for (size_t i = 1; i + 1 < t.size(); ++i) {
        char c = t[i];
        if (c == '[') ++depth;
        if (c == ']') --depth;
        if (c == ',' && depth == 0) {
            coords.push_back(base_.parse(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    coords.push_back(base_.parse(cur));
    if (static_cast<int>(coords.size()) != r_)
        fail(ErrorKind::Parse, "witt.parse", "expected " + std::to_string(r_) + " coordinates: " + s);
    return WittVec{coords};
}

i64 witt_to_integer(const WittRing& W, const WittVec& x) {
    const auto& A = W.base();
    if (A.dim() != 1 || A.characteristic() != W.p())
        fail(ErrorKind::Unsupported, "witt.to_integer", "only defined over F_p");
    i64 n = ipow(W.p(), W.length()), v = 0;
    for (int i = 0; i < W.length(); ++i)
        v = mod(v + ipow(W.p(), i) * teichmuller_int(x.c[i][0], W.p(), W.length()), n);
    return v;
}

}  // namespace wl
