#include "wittlift/ring.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "wittlift/errors.hpp"

namespace wl {

namespace {

// Remainder of a modulo monic b over Z/n (both lowest degree first).
std::vector<i64> poly_rem(std::vector<i64> a, const std::vector<i64>& b, i64 n) {
    int db = static_cast<int>(b.size()) - 1;
    for (int i = static_cast<int>(a.size()) - 1; i >= db; --i) {
        i64 c = mod(a[i], n);
        if (c == 0) continue;
        for (int j = 0; j <= db; ++j) a[i - db + j] = mod(a[i - db + j] - c * b[j], n);
    }
    a.resize(std::max(db, 0));
    return a;
}

bool irreducible_mod_p(const std::vector<i64>& f, i64 p) {
    int deg = static_cast<int>(f.size()) - 1;
    for (int d = 1; d <= deg / 2; ++d) {
        // all monic polynomials of degree d
        i64 count = ipow(p, d);
        for (i64 c = 0; c < count; ++c) {
            std::vector<i64> g(d + 1, 0);
            i64 x = c;
            for (int i = 0; i < d; ++i) {
                g[i] = x % p;
                x /= p;
            }
            g[d] = 1;
            auto r = poly_rem(f, g, p);
            if (std::all_of(r.begin(), r.end(), [](i64 v) { return v == 0; })) return false;
        }
    }
    return true;
}

}  // namespace

FiniteRing FiniteRing::integers_mod(i64 n) {
    if (n < 2) fail(ErrorKind::Structural, "ring.modulus", "Z/n needs n >= 2");
    FiniteRing R;
    R.kind_ = Kind::Integers;
    R.n_ = n;
    R.dim_ = 1;
    if (auto pp = prime_power(n)) {
        R.p_ = pp->first;
        R.k_ = pp->second;
    }
    R.monos_ = {{}};
    R.build_table();
    return R;
}

FiniteRing FiniteRing::univariate(i64 n, std::vector<i64> modulus) {
    if (n < 2) fail(ErrorKind::Structural, "ring.modulus", "coefficient modulus must be >= 2");
    if (modulus.size() < 2 || mod(modulus.back(), n) != 1)
        fail(ErrorKind::Structural, "ring.poly", "modulus polynomial must be monic of degree >= 1");
    FiniteRing R;
    R.kind_ = Kind::Univariate;
    R.n_ = n;
    for (auto& c : modulus) c = mod(c, n);
    R.poly_ = modulus;
    R.dim_ = static_cast<int>(modulus.size()) - 1;
    R.nvars_ = 1;
    if (auto pp = prime_power(n)) {
        R.p_ = pp->first;
        R.k_ = pp->second;
    }
    for (int i = 0; i < R.dim_; ++i) R.monos_.push_back({i});
    R.build_table();
    return R;
}

FiniteRing FiniteRing::galois_field(i64 p, int f) {
    if (!is_prime(p)) fail(ErrorKind::Structural, "ring.prime", "galois_field needs a prime");
    if (f < 1) fail(ErrorKind::Structural, "ring.degree", "galois_field degree must be >= 1");
    if (f == 1) return integers_mod(p);
    i64 count = ipow(p, f);
    for (i64 c = 0; c < count; ++c) {
        std::vector<i64> g(f + 1, 0);
        i64 x = c;
        for (int i = 0; i < f; ++i) {
            g[i] = x % p;
            x /= p;
        }
        g[f] = 1;
        if (g[0] != 0 && irreducible_mod_p(g, p)) return univariate(p, g);
    }
    fail(ErrorKind::Structural, "ring.irreducible", "no irreducible polynomial found");
}

FiniteRing FiniteRing::monomial_quotient(i64 n, int nvars, std::vector<std::vector<int>> ideal) {
    if (nvars < 1) fail(ErrorKind::Structural, "ring.vars", "need at least one variable");
    std::vector<int> bound(nvars, -1);
    for (auto& m : ideal) {
        if (static_cast<int>(m.size()) != nvars)
            fail(ErrorKind::Structural, "ring.monomial", "monomial has wrong number of variables");
        int nz = 0, at = -1;
        for (int i = 0; i < nvars; ++i)
            if (m[i] > 0) {
                ++nz;
                at = i;
            }
        if (nz == 1 && (bound[at] < 0 || m[at] < bound[at])) bound[at] = m[at];
    }
    for (int b : bound)
        if (b < 0) fail(ErrorKind::Structural, "ring.infinite", "monomial quotient is not finite");
    FiniteRing R;
    R.kind_ = Kind::Monomial;
    R.n_ = n;
    R.nvars_ = nvars;
    R.ideal_ = ideal;
    if (auto pp = prime_power(n)) {
        R.p_ = pp->first;
        R.k_ = pp->second;
    }
    // standard monomials: exponent vectors below the pure-power bounds not in the ideal
    std::vector<int> e(nvars, 0);
    while (true) {
        bool in_ideal = false;
        for (auto& m : ideal) {
            bool div = true;
            for (int i = 0; i < nvars; ++i)
                if (e[i] < m[i]) div = false;
            if (div) in_ideal = true;
        }
        if (!in_ideal) R.monos_.push_back(e);
        int i = 0;
        while (i < nvars && ++e[i] >= bound[i]) e[i++] = 0;
        if (i == nvars) break;
    }
    std::sort(R.monos_.begin(), R.monos_.end(), [](const auto& a, const auto& b) {
        int da = 0, db = 0;
        for (int x : a) da += x;
        for (int x : b) db += x;
        if (da != db) return da < db;
        return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
    });
    R.dim_ = static_cast<int>(R.monos_.size());
    R.build_table();
    return R;
}

void FiniteRing::build_table() {
    table_.assign(static_cast<size_t>(dim_) * dim_, Elem(dim_, 0));
    if (kind_ == Kind::Integers) {
        table_[0][0] = 1 % n_;
        return;
    }
    if (kind_ == Kind::Univariate) {
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j) {
                std::vector<i64> m(i + j + 1, 0);
                m[i + j] = 1;
                auto r = poly_rem(m, poly_, n_);
                r.resize(dim_, 0);
                table_[i * dim_ + j] = r;
            }
        return;
    }
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) {
            std::vector<int> e(nvars_);
            for (int v = 0; v < nvars_; ++v) e[v] = monos_[i][v] + monos_[j][v];
            auto it = std::find(monos_.begin(), monos_.end(), e);
            if (it != monos_.end()) table_[i * dim_ + j][it - monos_.begin()] = 1 % n_;
        }
}

FiniteRing FiniteRing::lift(i64 modulus) const {
    switch (kind_) {
        case Kind::Integers: return integers_mod(modulus);
        case Kind::Univariate: return univariate(modulus, poly_);
        case Kind::Monomial: return monomial_quotient(modulus, nvars_, ideal_);
    }
    return *this;
}

std::uint64_t FiniteRing::size() const {
    std::uint64_t s = 1;
    for (int i = 0; i < dim_; ++i) {
        if (s > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(n_))
            return std::numeric_limits<std::uint64_t>::max();
        s *= static_cast<std::uint64_t>(n_);
    }
    return s;
}

bool FiniteRing::is_field() const {
    if (!is_prime(n_)) return false;
    if (kind_ == Kind::Integers) return true;
    if (kind_ == Kind::Univariate) return irreducible_mod_p(poly_, n_);
    return dim_ == 1;
}

Elem FiniteRing::one() const { return from_int(1); }

Elem FiniteRing::from_int(i64 x) const {
    Elem e(dim_, 0);
    e[0] = mod(x, n_);
    return e;
}

Elem FiniteRing::basis(int i) const {
    Elem e(dim_, 0);
    e[i] = 1 % n_;
    return e;
}

Elem FiniteRing::add(const Elem& a, const Elem& b) const {
    Elem r(dim_);
    for (int i = 0; i < dim_; ++i) r[i] = mod(a[i] + b[i], n_);
    return r;
}

Elem FiniteRing::sub(const Elem& a, const Elem& b) const {
    Elem r(dim_);
    for (int i = 0; i < dim_; ++i) r[i] = mod(a[i] - b[i], n_);
    return r;
}

Elem FiniteRing::neg(const Elem& a) const {
    Elem r(dim_);
    for (int i = 0; i < dim_; ++i) r[i] = mod(-a[i], n_);
    return r;
}

Elem FiniteRing::scale(const Elem& a, i64 c) const {
    Elem r(dim_);
    for (int i = 0; i < dim_; ++i) r[i] = mulmod(a[i], mod(c, n_), n_);
    return r;
}

Elem FiniteRing::mul(const Elem& a, const Elem& b) const {
    if (dim_ == 1) return Elem{mulmod(a[0], b[0], n_)};
    Elem r(dim_, 0);
    for (int i = 0; i < dim_; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < dim_; ++j) {
            if (b[j] == 0) continue;
            i64 c = mulmod(a[i], b[j], n_);
            const Elem& t = table_[i * dim_ + j];
            for (int k = 0; k < dim_; ++k)
                if (t[k]) r[k] = mod(r[k] + mulmod(c, t[k], n_), n_);
        }
    }
    return r;
}

Elem FiniteRing::pow(Elem a, std::uint64_t e) const {
    Elem r = one();
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

Elem FiniteRing::frobenius(const Elem& a, int times) const {
    Elem r = a;
    for (int i = 0; i < times; ++i) r = pow(r, static_cast<std::uint64_t>(p_));
    return r;
}

Elem FiniteRing::frobenius_inverse(const Elem& a, int times) const {
    if (!is_field()) fail(ErrorKind::Unsupported, "ring.frobenius_inverse", "Frobenius inverse needs a finite field");
    // Frobenius has order dim on F_{p^dim}
    int t = ((-times) % dim_ + dim_) % dim_;
    return frobenius(a, t);
}

bool FiniteRing::is_zero(const Elem& a) const {
    return std::all_of(a.begin(), a.end(), [](i64 v) { return v == 0; });
}

bool FiniteRing::is_unit(const Elem& a) const {
    if (dim_ == 1) return invmod(a[0], n_).has_value();
    if (is_field()) return !is_zero(a);
    // a unit iff its powers return to 1 before hitting a repeat
    Elem x = a;
    for (std::uint64_t i = 0; i <= size(); ++i) {
        if (x == one()) return true;
        if (is_zero(x)) return false;
        x = mul(x, a);
    }
    return false;
}

Elem FiniteRing::inverse(const Elem& a) const {
    if (dim_ == 1) {
        auto inv = invmod(a[0], n_);
        if (!inv) fail(ErrorKind::Precondition, "ring.not_unit", "element is not a unit");
        return Elem{*inv};
    }
    if (is_field()) {
        if (is_zero(a)) fail(ErrorKind::Precondition, "ring.not_unit", "zero has no inverse");
        return pow(a, size() - 2);
    }
    Elem prev = one(), x = a;
    for (std::uint64_t i = 0; i <= size(); ++i) {
        if (x == one()) return prev;
        prev = x;
        x = mul(x, a);
    }
    fail(ErrorKind::Precondition, "ring.not_unit", "element is not a unit");
}

Elem FiniteRing::divide_exact(const Elem& a, i64 d) const {
    Elem r(dim_);
    for (int i = 0; i < dim_; ++i) r[i] = a[i] / d;
    return r;
}

Elem FiniteRing::reduce_to(const Elem& a, const FiniteRing& target) const {
    Elem r(target.dim_);
    for (int i = 0; i < target.dim_; ++i) r[i] = mod(a[i], target.n_);
    return r;
}

std::uint64_t FiniteRing::index(const Elem& a) const {
    std::uint64_t idx = 0;
    for (int i = dim_ - 1; i >= 0; --i) idx = idx * static_cast<std::uint64_t>(n_) + static_cast<std::uint64_t>(a[i]);
    return idx;
}

Elem FiniteRing::element(std::uint64_t idx) const {
    Elem e(dim_);
    for (int i = 0; i < dim_; ++i) {
        e[i] = static_cast<i64>(idx % static_cast<std::uint64_t>(n_));
        idx /= static_cast<std::uint64_t>(n_);
    }
    return e;
}

std::vector<Elem> FiniteRing::elements() const {
    std::uint64_t s = size();
    if (s > (1u << 22)) fail(ErrorKind::Resource, "ring.too_large", "ring too large to enumerate");
    std::vector<Elem> out;
    out.reserve(s);
    for (std::uint64_t i = 0; i < s; ++i) out.push_back(element(i));
    return out;
}

std::string FiniteRing::to_string(const Elem& a) const {
    if (dim_ == 1) return std::to_string(a[0]);
    std::ostringstream os;
    os << '[';
    for (int i = 0; i < dim_; ++i) os << (i ? "," : "") << a[i];
    os << ']';
    return os.str();
}

Elem FiniteRing::parse(const std::string& s) const {
    std::string t;
    for (char c : s)
        if (!isspace(static_cast<unsigned char>(c))) t += c;
    try {
        if (!t.empty() && t.front() == '[') {
            if (t.back() != ']') fail(ErrorKind::Parse, "ring.parse", "unterminated element list: " + s);
            Elem e;
            std::string body = t.substr(1, t.size() - 2);
            std::stringstream ss(body);
            std::string item;
            while (std::getline(ss, item, ',')) e.push_back(mod(std::stoll(item), n_));
            if (static_cast<int>(e.size()) != dim_)
                fail(ErrorKind::Parse, "ring.parse", "element has wrong number of coordinates: " + s);
            return e;
        }
        return from_int(std::stoll(t));
    } catch (const std::logic_error&) {
        fail(ErrorKind::Parse, "ring.parse", "cannot parse ring element: " + s);
    }
}

std::string FiniteRing::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::Integers: os << "Z/" << n_; break;
        case Kind::Univariate:
            os << "Z/" << n_ << "[t]/(";
            for (int i = static_cast<int>(poly_.size()) - 1; i >= 0; --i) {
                if (poly_[i] == 0) continue;
                os << (i == static_cast<int>(poly_.size()) - 1 ? "" : "+");
                if (poly_[i] != 1 || i == 0) os << poly_[i];
                if (i > 0) os << "t";
                if (i > 1) os << "^" << i;
            }
            os << ")";
            break;
        case Kind::Monomial:
            os << "Z/" << n_ << "[x" << nvars_ << "]/(" << ideal_.size() << " monomials)";
            break;
    }
    return os.str();
}

bool FiniteRing::operator==(const FiniteRing& o) const {
    return kind_ == o.kind_ && n_ == o.n_ && dim_ == o.dim_ && poly_ == o.poly_ && ideal_ == o.ideal_ &&
           nvars_ == o.nvars_;
}

std::string FiniteRing::check_axioms(std::uint64_t max_size) const {
    if (size() > max_size) return "ring too large for exhaustive check";
    auto el = elements();
    Elem z = zero(), u = one();
    for (auto& a : el) {
        if (add(a, z) != a) return "additive identity fails at " + to_string(a);
        if (mul(a, u) != a) return "multiplicative identity fails at " + to_string(a);
        if (!is_zero(add(a, neg(a)))) return "additive inverse fails at " + to_string(a);
        for (auto& b : el) {
            if (add(a, b) != add(b, a)) return "addition not commutative";
            if (mul(a, b) != mul(b, a)) return "multiplication not commutative";
            for (auto& c : el) {
                if (mul(mul(a, b), c) != mul(a, mul(b, c))) return "multiplication not associative";
                if (mul(a, add(b, c)) != add(mul(a, b), mul(a, c))) return "distributivity fails";
            }
        }
    }
    return {};
}

}  // namespace wl
