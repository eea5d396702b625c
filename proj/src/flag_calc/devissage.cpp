#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <tuple>

#include "wittlift/errors.hpp"
#include "wittlift/flag_calc.hpp"

namespace wl {

namespace {

// S^deg or Gamma^deg of (V_n/V_m)^{(frob)}, or of its dual
struct Factor {
    bool gamma = false, dual = false;
    int deg = 0, frob = 0, n = 0, m = 0;
    auto tie() const { return std::tie(gamma, dual, deg, frob, n, m); }
    bool operator<(const Factor& o) const { return tie() < o.tie(); }
    bool operator==(const Factor& o) const { return tie() == o.tie(); }
};

struct Piece {
    std::vector<Factor> f;
    Weight a;
};

std::string key(const Piece& P) {
    std::string s = weight_to_string(P.a);
    for (auto& x : P.f)
        s += (x.gamma ? "G" : "S") + std::to_string(x.deg) + (x.dual ? "d" : "") + std::to_string(x.n) + "/" +
             std::to_string(x.m) + "^" + std::to_string(x.frob) + ";";
    return s;
}

std::string describe(const Piece& P) {
    std::string s;
    for (auto& x : P.f) {
        std::string W = "V_" + std::to_string(x.n) + (x.m ? "/V_" + std::to_string(x.m) : "");
        if (x.frob) W += "^(" + std::to_string(x.frob) + ")";
        if (x.dual) W += "^dual";
        s += (x.gamma ? "Gamma^" : "S^") + std::to_string(x.deg) + "(" + W + ") (x) ";
    }
    return s + "O" + weight_to_string(P.a);
}

void normalize(Piece& P, i64 p) {
    std::vector<Factor> keep;
    for (auto& x : P.f) {
        if (x.deg == 0) continue;
        if (x.n - x.m == 1) {
            P.a[x.n - 1] += (x.dual ? -1 : 1) * x.deg * ipow(p, x.frob);
            continue;
        }
        keep.push_back(x);
    }
    std::sort(keep.begin(), keep.end());
    P.f = keep;
}

Piece tensor_pieces(const Piece& A, const Piece& B) {
    Piece C = A;
    C.f.insert(C.f.end(), B.f.begin(), B.f.end());
    for (size_t i = 0; i < C.a.size(); ++i) C.a[i] += B.a[i];
    return C;
}

std::vector<Piece> coarse_expand(const Expr& e, int D, i64 p) {
    using K = FiltExpr::Kind;
    std::vector<Piece> out;
    switch (e->kind) {
        case K::Line: out.push_back({{}, e->weight.empty() ? Weight(D, 0) : e->weight}); break;
        case K::Quot: out.push_back({{Factor{false, false, 1, 0, e->n, e->m}}, Weight(D, 0)}); break;
        case K::Dual:
            for (Piece P : coarse_expand(e->args[0], D, p)) {
                for (auto& x : P.a) x = -x;
                for (auto& f : P.f) {
                    f.gamma = !f.gamma;
                    f.dual = !f.dual;
                }
                out.push_back(P);
            }
            break;
        case K::Tensor: {
            out.push_back({{}, Weight(D, 0)});
            for (auto& arg : e->args) {
                std::vector<Piece> next;
                auto ps = coarse_expand(arg, D, p);
                for (auto& A : out)
                    for (auto& B : ps) next.push_back(tensor_pieces(A, B));
                if (next.size() > 2'000'000) fail(ErrorKind::Resource, "devissage.budget", "too many pieces");
                out = next;
            }
            break;
        }
        case K::Frob:
            for (Piece P : coarse_expand(e->args[0], D, p)) {
                for (auto& x : P.a) x *= ipow(p, e->r);
                for (auto& f : P.f) f.frob += e->r;
                out.push_back(P);
            }
            break;
        case K::Sym:
        case K::Gamma: {
            auto ps = coarse_expand(e->args[0], D, p);
            bool coarse = ps.size() == 1 && ps[0].f.size() <= 1 && (ps[0].f.empty() || ps[0].f[0].deg == 1);
            if (!coarse) {
                for (auto& w : graded_weights(e, D, p, 0)) out.push_back({{}, w});
                break;
            }
            std::vector<std::pair<int, int>> parts = e->kind == K::Sym
                                                         ? e->functor.parts
                                                         : std::vector<std::pair<int, int>>{{e->degree, 0}};
            Piece P{{}, Weight(D, 0)};
            for (auto [a, r] : parts) {
                i64 s = a * ipow(p, r);
                for (int i = 0; i < D; ++i) P.a[i] += s * ps[0].a[i];
                if (!ps[0].f.empty()) {
                    Factor f = ps[0].f[0];
                    f.deg = a;
                    f.frob += r;
                    if (e->kind == K::Gamma) f.gamma = true;
                    else f.gamma = false;
                    P.f.push_back(f);
                }
            }
            out.push_back(P);
            break;
        }
        case K::Split: fail(ErrorKind::Unsupported, "devissage.split", "splitting algebras only at the top level");
    }
    for (auto& P : out) normalize(P, p);
    return out;
}

// multisets of size deg from the lines of a factor
std::vector<Weight> factor_lines(const Factor& x, int D, i64 p) {
    std::vector<Weight> lines;
    for (int i = x.m; i < x.n; ++i) {
        Weight w(D, 0);
        w[i] = (x.dual ? -1 : 1) * ipow(p, x.frob);
        lines.push_back(w);
    }
    std::vector<Weight> out;
    Weight acc(D, 0);
    std::function<void(size_t, int)> go = [&](size_t i, int left) {
        if (i + 1 == lines.size()) {
            Weight w = acc;
            for (int k = 0; k < D; ++k) w[k] += left * lines[i][k];
            out.push_back(w);
            return;
        }
        for (int c = 0; c <= left; ++c) {
            for (int k = 0; k < D; ++k) acc[k] += c * lines[i][k];
            go(i + 1, left - c);
            for (int k = 0; k < D; ++k) acc[k] -= c * lines[i][k];
        }
    };
    go(0, x.deg);
    return out;
}

bool dominant(const Weight& a, int lo, int hi) {
    for (int i = lo + 1; i < hi; ++i)
        if (a[i - 1] > a[i]) return false;
    return true;
}

// H^0 = H^1 = 0 on the flag variety of a block
bool acyclic(const Weight& a, int lo, int hi) {
    int k = hi - lo;
    if (k == 2) return a[lo] - a[lo + 1] == 1;
    if (k < 3) return false;
    bool tail = a[hi - 1] < a[hi - 2], head = a[lo] > a[lo + 1];
    for (int i = lo; i + 1 < hi - 1; ++i) tail &= a[i] == a[i + 1];
    for (int i = lo + 1; i + 1 < hi; ++i) head &= a[i] == a[i + 1];
    return tail || head;
}

class Engine {
public:
    Engine(int D, i64 p) : D_(D), p_(p) {}

    bool decide(const Piece& P, int deg) {
        std::string k = key(P) + "#" + std::to_string(deg);
        auto it = memo_.find(k);
        if (it != memo_.end()) return it->second;
        if (++steps_ > kMaxSteps) {
            exhausted_ = true;
            return false;
        }
        memo_[k] = false;  // guards cycles
        bool r = rule(P, deg) || reduce(P, deg);
        memo_[k] = r;
        return r;
    }

    bool exhausted() const { return exhausted_; }
    const std::map<std::string, i64>& usage() const { return usage_; }

private:
    static constexpr i64 kMaxSteps = 3'000'000;
    int D_;
    i64 p_;
    i64 steps_ = 0;
    bool exhausted_ = false;
    std::map<std::string, bool> memo_;
    std::map<std::string, i64> usage_;

    bool hit(const char* name) {
        ++usage_[name];
        return true;
    }

    std::vector<int> cuts(const Piece& P) const {
        std::set<int> J{D_};
        for (auto& x : P.f) {
            J.insert(x.n);
            if (x.m) J.insert(x.m);
        }
        return {J.begin(), J.end()};
    }

    bool rule(const Piece& P, int deg) {
        auto J = cuts(P);
        std::vector<std::pair<int, int>> blocks;
        int prev = 0;
        for (int j : J) {
            blocks.emplace_back(prev, j);
            prev = j;
        }
        int bad = 0;
        for (auto [lo, hi] : blocks) bad += !dominant(P.a, lo, hi);
        if (deg == 0) return bad > 0 && hit("nonincreasing block");
        for (auto [lo, hi] : blocks)
            if (acyclic(P.a, lo, hi)) return hit("acyclic block");
        if (bad >= 2) return hit("two nonincreasing blocks");
        // forget V_{i+1}: a P^1-bundle with relative degree a_{i+1} - a_i
        for (int i = 0; i + 1 < D_; ++i) {
            if (std::binary_search(J.begin(), J.end(), i + 1)) continue;
            i64 n = P.a[i] - P.a[i + 1];
            if (n == 1) return hit("P^1 fibre acyclic");
            if (n < 2) continue;
            Piece Q = P;
            Q.a[i] = Q.a[i + 1] = P.a[i] - 1;
            if (n > 2) Q.f.push_back(Factor{true, true, static_cast<int>(n - 2), 0, i + 2, i});
            normalize(Q, p_);
            if (decide(Q, 0)) return hit("R^1 along a P^1 fibre");
        }
        return false;
    }

    bool reduce(const Piece& P, int deg) {
        for (size_t k = 0; k < P.f.size(); ++k) {
            const Factor& x = P.f[k];
            if (x.gamma) {
                bool all = true;
                for (auto& w : factor_lines(x, D_, p_)) {
                    Piece Q = P;
                    Q.f.erase(Q.f.begin() + static_cast<long>(k));
                    for (int i = 0; i < D_; ++i) Q.a[i] += w[i];
                    normalize(Q, p_);
                    if (!(all = decide(Q, deg))) break;
                }
                if (all) return hit("divided power expansion");
                continue;
            }
            // sub line L_{m+1} of V_n/V_m, or L_n^dual of the dual
            Piece sub = P, quo = P;
            i64 s = ipow(p_, x.frob);
            sub.f[k].deg -= 1;
            if (x.dual) {
                sub.a[x.n - 1] -= s;
                quo.f[k].n -= 1;
            } else {
                sub.a[x.m] += s;
                quo.f[k].m += 1;
            }
            normalize(sub, p_);
            normalize(quo, p_);
            if (decide(sub, deg) && decide(quo, deg)) return hit("peel a line");
        }
        return false;
    }

public:
    bool line_vanishes(const Weight& a, int deg) { return decide(Piece{{}, a}, deg); }
};

// functionals phi with phi(a) <= 0 whenever a is weakly increasing on [lo, hi)
struct Functional {
    Weight c;
    int lo, hi;
};

std::vector<Functional> functionals(int D, int lo, int hi) {
    std::vector<Functional> out;
    int k = hi - lo;
    if (k < 2) return out;
    for (int i = lo; i + 1 < hi; ++i) {
        Weight c(D, 0);
        c[i] = 1;
        c[i + 1] = -1;
        out.push_back({c, lo, hi});
    }
    if (k > 2) {
        Weight f(D, 0), l(D, 0);
        for (int i = lo; i < hi; ++i) f[i] = -1, l[i] = 1;
        f[lo] += k;
        l[hi - 1] -= k;
        out.push_back({f, lo, hi});
        out.push_back({l, lo, hi});
    }
    return out;
}

i64 dot(const Weight& c, const Weight& a) {
    i64 s = 0;
    for (size_t i = 0; i < c.size(); ++i) s += c[i] * a[i];
    return s;
}

struct Tail {
    bool ok = false;
    std::string text;
};

// Every line weight base + sum c_u u (c in N^U) with either any count (zero directions present)
// or count > bound must vanish.
Tail certify_tail(Engine& E, const std::vector<Weight>& bases, const std::vector<Weight>& dirs0, int bound,
                  int deg, int D) {
    std::vector<Weight> dirs;
    bool zero_dir = false;
    for (auto& u : dirs0) {
        bool z = std::all_of(u.begin(), u.end(), [](i64 x) { return x == 0; });
        zero_dir |= z;
        if (!z && std::find(dirs.begin(), dirs.end(), u) == dirs.end()) dirs.push_back(u);
    }
    if (dirs.empty() && !zero_dir) return {true, "no tail"};
    std::vector<std::vector<Functional>> options;
    if (deg == 0) {
        for (auto& f : functionals(D, 0, D)) options.push_back({f});
    } else {
        for (int c = 1; c < D; ++c)
            for (auto& f : functionals(D, 0, c))
                for (auto& g : functionals(D, c, D)) options.push_back({f, g});
    }
    for (auto& opt : options) {
        bool good = true;
        i64 T0 = 0;
        for (auto& f : opt) {
            i64 md = INT64_MAX, mb = INT64_MAX;
            for (auto& u : dirs) md = std::min(md, dot(f.c, u));
            for (auto& b : bases) mb = std::min(mb, dot(f.c, b));
            if (dirs.empty()) md = 0;
            if (md < 0) {
                good = false;
                break;
            }
            if (mb >= 1) continue;
            if (md < 1) {
                good = false;
                break;
            }
            T0 = std::max(T0, 1 - mb);
        }
        if (!good) continue;
        // counts <= T0 not covered by the functional: check those lines directly
        i64 lo = zero_dir ? 0 : bound + 1;
        bool all = true;
        i64 checked = 0;
        if (lo <= T0) {
            std::function<void(size_t, i64, Weight&)> go = [&](size_t i, i64 cnt, Weight& w) {
                if (!all) return;
                if (i == dirs.size()) {
                    if (cnt < lo) return;
                    if (++checked > 200'000) {
                        all = false;
                        return;
                    }
                    for (auto& b : bases) {
                        Weight x = b;
                        for (int k = 0; k < D; ++k) x[k] += w[k];
                        if (!E.line_vanishes(x, deg)) {
                            all = false;
                            return;
                        }
                    }
                    return;
                }
                for (i64 c = 0; cnt + c <= T0; ++c) {
                    go(i + 1, cnt + c, w);
                    for (int k = 0; k < D; ++k) w[k] += dirs[i][k];
                }
                for (i64 c = 0; cnt + c <= T0; ++c)
                    for (int k = 0; k < D; ++k) w[k] -= dirs[i][k];
            };
            Weight w(D, 0);
            go(0, 0, w);
        }
        if (!all) continue;
        std::string t = "tail: ";
        for (size_t i = 0; i < opt.size(); ++i)
            t += (i ? " and " : "") + weight_to_string(opt[i].c) + ".a > 0";
        t += " beyond " + std::to_string(T0) + " steps";
        if (checked) t += ", " + std::to_string(checked) + " short index vectors checked line by line";
        return {true, t};
    }
    return {false, ""};
}

}  // namespace

DevissageResult devissage_decide(const Expr& e, int degree, int bound, int D, i64 p) {
    if (degree != 0 && degree != 1) fail(ErrorKind::Unsupported, "devissage.degree", "sheaf degree must be 0 or 1");
    if (bound < 0) fail(ErrorKind::Precondition, "devissage.bound", "truncation bound must be >= 0");
    if (D < 1) fail(ErrorKind::Precondition, "devissage.rank", "flag rank must be positive");
    check_expr(e, D);
    DevissageResult out;
    try {
        out.expanded = graded_weights(e, D, p, bound);
        std::sort(out.expanded.begin(), out.expanded.end());
    } catch (const Error& err) {
        if (err.kind() != ErrorKind::Resource) throw;
        out.diagnostic = "weight listing skipped: too many pieces; ";
    }

    std::vector<Expr> finite, families;
    std::vector<Expr> args = e->kind == FiltExpr::Kind::Tensor ? e->args : std::vector<Expr>{e};
    for (auto& a : args) (a->kind == FiltExpr::Kind::Split ? families : finite).push_back(a);
    Expr fin = finite.empty() ? line({}) : tensor(finite);
    auto fin_pieces = coarse_expand(fin, D, p);
    Engine E(D, p);
    auto finish = [&](bool ok, const std::string& why) {
        for (auto& [name, n] : E.usage()) out.certificates.push_back(name + ": " + std::to_string(n));
        if (E.exhausted()) out.diagnostic += "search budget exhausted; ";
        out.verdict = ok ? Verdict::Vanishes : Verdict::Unknown;
        if (!ok) out.diagnostic += why;
        return out;
    };
    auto all_vanish = [&](const std::vector<Piece>& ps, std::string& why) {
        for (auto& P : ps)
            if (!E.decide(P, degree)) {
                why = "no rule covers " + describe(P);
                return false;
            }
        return true;
    };
    std::string why;
    if (families.empty()) return finish(all_vanish(fin_pieces, why), why);

    // prefix: every step up to the bound
    bool prefix = false;
    if (degree == 0 && families.size() == 1 && families[0]->args.size() == 2) {
        // degree <= bound step is S^bound(E^dual); it contains all smaller steps
        auto M = coarse_expand(tensor({sym(bound, dual(families[0]->args[1])), fin}), D, p);
        std::string w2;
        prefix = all_vanish(M, w2);
        if (prefix) out.certificates.push_back("step M_" + std::to_string(bound) + " vanishes");
    }
    if (!prefix) {
        // graded pieces, index vectors across all Witt slots of all families
        std::vector<std::pair<Expr, int>> slots;
        for (auto& F : families)
            for (int i = 0; i < F->r; ++i) slots.emplace_back(F->args[0], i);
        std::vector<int> idx(slots.size(), 0);
        bool ok = true;
        std::function<void(size_t, int)> go = [&](size_t s, int left) {
            if (!ok) return;
            if (s == slots.size()) {
                std::vector<Expr> parts{fin};
                for (size_t t = 0; t < slots.size(); ++t)
                    if (idx[t]) parts.push_back(sym(SymmetricFunctor{{{idx[t], slots[t].second}}}, dual(slots[t].first)));
                ok = all_vanish(coarse_expand(tensor(parts), D, p), why);
                return;
            }
            for (int a = 0; a <= left && ok; ++a) {
                idx[s] = a;
                go(s + 1, left - a);
            }
            idx[s] = 0;
        };
        go(0, bound);
        if (!ok) return finish(false, why);
        out.certificates.push_back("graded pieces up to total index " + std::to_string(bound) + " vanish");
    }
    std::vector<Weight> dirs;
    for (auto& F : families)
        for (int i = 0; i < F->r; ++i)
            for (auto& u : graded_weights(frob(i, dual(F->args[0])), D, p, 0)) dirs.push_back(u);
    auto bases = graded_weights(fin, D, p, 0);
    Tail t = certify_tail(E, bases, dirs, bound, degree, D);
    if (!t.ok) return finish(false, "truncation " + std::to_string(bound) + " does not certify the tail");
    out.certificates.push_back(t.text);
    return finish(true, "");
}

DevissageResult devissage_decide(const Weight& a, int degree, i64 p) {
    return devissage_decide(line(a), degree, 0, static_cast<int>(a.size()), p);
}

}  // namespace wl
