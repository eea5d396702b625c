#include <functional>

#include "wittlift/errors.hpp"
#include "wittlift/flag_calc.hpp"

namespace wl {

namespace {

Expr make(FiltExpr e) { return std::make_shared<const FiltExpr>(std::move(e)); }

void need(const Expr& e) {
    if (!e) fail(ErrorKind::Structural, "expr.null", "missing subexpression");
}

}  // namespace

Expr line(const Weight& a) {
    FiltExpr e;
    e.kind = FiltExpr::Kind::Line;
    e.weight = a;
    return make(e);
}

Expr sub(int n) { return quot(n, 0); }

Expr quot(int n, int m) {
    FiltExpr e;
    e.kind = FiltExpr::Kind::Quot;
    e.n = n;
    e.m = m;
    return make(e);
}

Expr dual(Expr x) {
    need(x);
    FiltExpr e;
    e.kind = FiltExpr::Kind::Dual;
    e.args = {x};
    return make(e);
}

Expr tensor(std::vector<Expr> es) {
    for (auto& x : es) need(x);
    if (es.size() == 1) return es[0];
    FiltExpr e;
    e.kind = FiltExpr::Kind::Tensor;
    e.args = std::move(es);
    return make(e);
}

Expr sym(const SymmetricFunctor& phi, Expr x) {
    need(x);
    for (auto [a, r] : phi.parts)
        if (a < 0 || r < 0) fail(ErrorKind::Precondition, "expr.functor", "functor parts must be >= 0");
    FiltExpr e;
    e.kind = FiltExpr::Kind::Sym;
    e.functor = phi;
    e.args = {x};
    return make(e);
}

Expr sym(int a, Expr x) { return sym(SymmetricFunctor{{{a, 0}}}, x); }

Expr gamma(int a, Expr x) {
    need(x);
    if (a < 0) fail(ErrorKind::Precondition, "expr.functor", "divided power degree must be >= 0");
    FiltExpr e;
    e.kind = FiltExpr::Kind::Gamma;
    e.degree = a;
    e.args = {x};
    return make(e);
}

Expr frob(int r, Expr x) {
    need(x);
    if (r < 0) fail(ErrorKind::Precondition, "expr.frob", "twist count must be >= 0");
    if (r == 0) return x;
    FiltExpr e;
    e.kind = FiltExpr::Kind::Frob;
    e.r = r;
    e.args = {x};
    return make(e);
}

Expr split(Expr kernel, int r, Expr middle) {
    need(kernel);
    if (r < 1) fail(ErrorKind::Precondition, "expr.split", "Witt length must be >= 1");
    if (middle && r != 1) fail(ErrorKind::Unsupported, "expr.split", "coarse steps are only known for r = 1");
    FiltExpr e;
    e.kind = FiltExpr::Kind::Split;
    e.r = r;
    e.args = {kernel};
    if (middle) e.args.push_back(middle);
    return make(e);
}

std::string to_string(const Expr& e) {
    using K = FiltExpr::Kind;
    switch (e->kind) {
        case K::Line: return e->weight.empty() ? "O" : "O" + weight_to_string(e->weight);
        case K::Quot:
            return e->m == 0 ? "V_" + std::to_string(e->n)
                             : "(V_" + std::to_string(e->n) + "/V_" + std::to_string(e->m) + ")";
        case K::Dual: return to_string(e->args[0]) + "^dual";
        case K::Tensor: {
            std::string s;
            for (size_t i = 0; i < e->args.size(); ++i) s += (i ? " (x) " : "") + to_string(e->args[i]);
            return "[" + s + "]";
        }
        case K::Sym: return e->functor.to_string() + "(" + to_string(e->args[0]) + ")";
        case K::Gamma: return "Gamma^" + std::to_string(e->degree) + "(" + to_string(e->args[0]) + ")";
        case K::Frob: return to_string(e->args[0]) + "^(" + std::to_string(e->r) + ")";
        case K::Split: return "Split_" + std::to_string(e->r) + "(" + to_string(e->args[0]) + ")";
    }
    return "?";
}

void check_expr(const Expr& e, int D) {
    need(e);
    using K = FiltExpr::Kind;
    switch (e->kind) {
        case K::Line:
            if (!e->weight.empty() && static_cast<int>(e->weight.size()) != D)
                fail(ErrorKind::Structural, "expr.weight", "weight " + weight_to_string(e->weight) +
                                                               " has length != " + std::to_string(D));
            break;
        case K::Quot:
            if (!(0 <= e->m && e->m < e->n && e->n <= D))
                fail(ErrorKind::Structural, "expr.index", "need 0 <= m < n <= D in " + to_string(e));
            break;
        default:
            for (auto& a : e->args) check_expr(a, D);
    }
    if (e->kind == K::Split) {
        std::function<bool(const Expr&)> has_split = [&](const Expr& x) {
            if (x->kind == K::Split) return true;
            for (auto& a : x->args)
                if (has_split(a)) return true;
            return false;
        };
        for (auto& a : e->args)
            if (has_split(a)) fail(ErrorKind::Unsupported, "expr.split", "nested splitting algebras");
    }
}

namespace {

std::vector<Weight> mult_sets(const std::vector<Weight>& pieces, int a, i64 scale, int D) {
    // all multisets of size a drawn from pieces, summed and scaled
    std::vector<Weight> out;
    Weight acc(D, 0);
    std::function<void(size_t, int)> go = [&](size_t i, int left) {
        if (left == 0) {
            out.push_back(acc);
            return;
        }
        if (i == pieces.size()) return;
        for (int c = left; c >= 0; --c) {
            for (int k = 0; k < D; ++k) acc[k] += c * scale * pieces[i][k];
            go(i + 1, left - c);
            for (int k = 0; k < D; ++k) acc[k] -= c * scale * pieces[i][k];
        }
    };
    go(0, a);
    return out;
}

std::vector<Weight> sum_all(const std::vector<Weight>& A, const std::vector<Weight>& B) {
    std::vector<Weight> out;
    out.reserve(A.size() * B.size());
    for (auto& a : A)
        for (auto& b : B) {
            Weight c = a;
            for (size_t k = 0; k < c.size(); ++k) c[k] += b[k];
            out.push_back(c);
        }
    return out;
}

constexpr size_t kMaxPieces = 2'000'000;

void guard(const std::vector<Weight>& v) {
    if (v.size() > kMaxPieces) fail(ErrorKind::Resource, "expr.budget", "too many graded pieces");
}

}  // namespace

std::vector<Weight> graded_weights(const Expr& e, int D, i64 p, int bound) {
    using K = FiltExpr::Kind;
    switch (e->kind) {
        case K::Line: return {e->weight.empty() ? Weight(D, 0) : e->weight};
        case K::Quot: {
            std::vector<Weight> out;
            for (int i = e->m; i < e->n; ++i) {
                Weight w(D, 0);
                w[i] = 1;
                out.push_back(w);
            }
            return out;
        }
        case K::Dual: {
            auto out = graded_weights(e->args[0], D, p, bound);
            for (auto& w : out)
                for (auto& x : w) x = -x;
            return out;
        }
        case K::Tensor: {
            std::vector<Weight> acc{Weight(D, 0)};
            for (auto& a : e->args) {
                acc = sum_all(acc, graded_weights(a, D, p, bound));
                guard(acc);
            }
            return acc;
        }
        case K::Sym: {
            auto base = graded_weights(e->args[0], D, p, bound);
            std::vector<Weight> acc{Weight(D, 0)};
            for (auto [a, r] : e->functor.parts) {
                acc = sum_all(acc, mult_sets(base, a, ipow(p, r), D));
                guard(acc);
            }
            return acc;
        }
        case K::Gamma: return mult_sets(graded_weights(e->args[0], D, p, bound), e->degree, 1, D);
        case K::Frob: {
            auto out = graded_weights(e->args[0], D, p, bound);
            i64 s = ipow(p, e->r);
            for (auto& w : out)
                for (auto& x : w) x *= s;
            return out;
        }
        case K::Split: {
            auto kd = graded_weights(dual(e->args[0]), D, p, bound);
            // index vectors with total <= bound, slot i uses the i-th Frobenius twist
            std::vector<Weight> out;
            std::function<void(int, int, const std::vector<Weight>&)> go = [&](int slot, int left,
                                                                             const std::vector<Weight>& acc) {
                if (slot == e->r) {
                    out.insert(out.end(), acc.begin(), acc.end());
                    guard(out);
                    return;
                }
                for (int a = 0; a <= left; ++a) go(slot + 1, left - a, sum_all(acc, mult_sets(kd, a, ipow(p, slot), D)));
            };
            go(0, bound, {Weight(D, 0)});
            return out;
        }
    }
    return {};
}

std::string GoodFiltration::check() const {
    if (index.size() != pieces.size()) return "index and piece counts differ";
    for (size_t i = 0; i < index.size(); ++i) {
        if (!pieces[i]) return "missing piece";
        if (i && index[i].size() != index[0].size()) return "index tuples of different length";
        if (i && !(index[i - 1] < index[i])) return "index set is not lexicographically increasing";
    }
    return "";
}

GoodFiltration singleton_filtration(Expr e) {
    need(e);
    return GoodFiltration{{{0}}, {e}, false};
}

namespace {

bool is_unit(const Expr& e) {
    if (e->kind != FiltExpr::Kind::Line) return false;
    for (i64 x : e->weight)
        if (x) return false;
    return true;
}

Expr tensor2(const Expr& a, const Expr& b) {
    if (is_unit(a)) return b;
    if (is_unit(b)) return a;
    return tensor({a, b});
}

void check_or_throw(const GoodFiltration& F) {
    std::string err = F.check();
    if (!err.empty()) fail(ErrorKind::Structural, "filtration.invalid", err);
}

}  // namespace

GoodFiltration filtration_tensor(const GoodFiltration& F, const GoodFiltration& G) {
    check_or_throw(F);
    check_or_throw(G);
    GoodFiltration out;
    out.truncated = F.truncated || G.truncated;
    for (size_t i = 0; i < F.size(); ++i)
        for (size_t j = 0; j < G.size(); ++j) {
            auto idx = F.index[i];
            idx.insert(idx.end(), G.index[j].begin(), G.index[j].end());
            out.index.push_back(idx);
            out.pieces.push_back(tensor2(F.pieces[i], G.pieces[j]));
        }
    return out;
}

GoodFiltration filtration_compose(const GoodFiltration& F1, const GoodFiltration& F2,
                                  const std::vector<Expr>& descent) {
    check_or_throw(F1);
    check_or_throw(F2);
    if (descent.size() != F2.size())
        fail(ErrorKind::Structural, "filtration.descent", "need one descent datum per piece of the upper filtration");
    for (size_t j = 0; j < descent.size(); ++j)
        if (!descent[j])
            fail(ErrorKind::Structural, "filtration.descent", "missing descent datum for piece " + std::to_string(j));
    GoodFiltration out;
    out.truncated = F1.truncated || F2.truncated;
    for (size_t j2 = 0; j2 < F2.size(); ++j2)
        for (size_t j1 = 0; j1 < F1.size(); ++j1) {
            auto idx = F2.index[j2];
            idx.insert(idx.end(), F1.index[j1].begin(), F1.index[j1].end());
            out.index.push_back(idx);
            out.pieces.push_back(tensor2(descent[j2], F1.pieces[j1]));
        }
    return out;
}

GoodFiltration splitting_filtration(Expr kernel, int r, int bound) {
    need(kernel);
    if (r < 1) fail(ErrorKind::Precondition, "filtration.split", "Witt length must be >= 1");
    if (bound < 0) fail(ErrorKind::Precondition, "filtration.split", "bound must be >= 0");
    GoodFiltration out;
    out.truncated = true;
    // (a_r, ..., a_1) lexicographic with total <= bound
    std::vector<int> idx(r, 0);
    std::function<void(int, int)> go = [&](int pos, int left) {
        if (pos == r) {
            Expr piece = line({});
            // idx[pos] holds a_{r-pos}; slot i (1-based) carries the (i-1)-th twist
            for (int i = 1; i <= r; ++i) {
                int a = idx[r - i];
                if (a) piece = tensor2(piece, sym(a, frob(i - 1, dual(kernel))));
            }
            out.index.push_back(idx);
            out.pieces.push_back(piece);
            return;
        }
        for (int a = 0; a <= left; ++a) {
            idx[pos] = a;
            go(pos + 1, left - a);
        }
        idx[pos] = 0;
    };
    go(0, bound);
    return out;
}

}  // namespace wl
