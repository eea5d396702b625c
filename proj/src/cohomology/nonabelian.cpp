#include <algorithm>
#include <exception>
#include <thread>
#include <unordered_map>

#include "wittlift/cohomology.hpp"
#include "wittlift/errors.hpp"

namespace wl {

std::string shape_name(MatrixShape s) {
    switch (s) {
        case MatrixShape::Borel: return "B";
        case MatrixShape::Unipotent: return "U";
        case MatrixShape::General: return "GL";
    }
    return "?";
}

MatrixShape parse_shape(const std::string& s) {
    if (s == "B" || s == "borel") return MatrixShape::Borel;
    if (s == "U" || s == "unipotent") return MatrixShape::Unipotent;
    if (s == "GL" || s == "general") return MatrixShape::General;
    fail(ErrorKind::Parse, "shape.unknown", "matrix shape must be B, U or GL: " + s);
}

namespace {

struct KeyHash {
    size_t operator()(const std::vector<i64>& v) const {
        size_t h = 1469598103934665603ull;
        for (i64 x : v) h = (h ^ static_cast<size_t>(x)) * 1099511628211ull;
        return h;
    }
};

Elem determinant(const FiniteRing& R, const RingMatrix& M) {
    int d = M.n;
    std::vector<int> perm(d);
    for (int i = 0; i < d; ++i) perm[i] = i;
    Elem det = R.zero();
    do {
        int inv = 0;
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j)
                if (perm[i] > perm[j]) ++inv;
        Elem t = R.one();
        for (int i = 0; i < d; ++i) t = R.mul(t, M.at(i, perm[i]));
        det = inv % 2 ? R.sub(det, t) : R.add(det, t);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

std::vector<i64> flatten(const RingMatrix& M) {
    std::vector<i64> v;
    for (auto& e : M.e) v.insert(v.end(), e.begin(), e.end());
    return v;
}

// All matrices of the given shape, indexed, with products and the ring action.
class MatrixGroup {
public:
    MatrixGroup(const FiniteRing& R, int d, MatrixShape shape, const FiniteGroup& G, const RingAction& act,
                i64 budget)
        : R_(R), d_(d) {
        auto ring_elems = R.elements();
        std::vector<Elem> units;
        for (auto& e : ring_elems)
            if (R.is_unit(e)) units.push_back(e);
        // candidate entries per position
        std::vector<const std::vector<Elem>*> choices;
        std::vector<Elem> one{R.one()}, zero{R.zero()};
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                if (shape == MatrixShape::General)
                    choices.push_back(&ring_elems);
                else if (i > j)
                    choices.push_back(&zero);
                else if (i == j)
                    choices.push_back(shape == MatrixShape::Unipotent ? &one : &units);
                else
                    choices.push_back(&ring_elems);
            }
        double total = 1;
        for (auto* c : choices) total *= static_cast<double>(c->size());
        if (total > static_cast<double>(budget))
            fail(ErrorKind::Resource, "nonabelian.budget", "matrix group too large to enumerate");
        std::vector<size_t> pos(choices.size(), 0);
        while (true) {
            RingMatrix M{d, {}};
            for (size_t t = 0; t < choices.size(); ++t) M.e.push_back((*choices[t])[pos[t]]);
            if (shape != MatrixShape::General || R.is_unit(determinant(R, M))) add(M);
            size_t t = choices.size();
            while (t > 0 && pos[t - 1] + 1 == choices[t - 1]->size()) pos[--t] = 0;
            if (t == 0) break;
            ++pos[t - 1];
        }
        identity_ = index_.at(flatten(ring_identity(R, d)));
        int n = size();
        if (static_cast<i64>(n) * n <= 4'000'000) {
            table_.resize(static_cast<size_t>(n) * n);
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) table_[static_cast<size_t>(a) * n + b] = compute_mul(a, b);
        }
        action_.assign(G.order(), std::vector<int>(n));
        for (int g = 0; g < G.order(); ++g)
            for (int a = 0; a < n; ++a) {
                RingMatrix M = elems_[a];
                for (auto& e : M.e) e = act.apply(g, e);
                action_[g][a] = lookup(M);
            }
        inv_.assign(n, -1);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n && inv_[a] < 0; ++b)
                if (mul(a, b) == identity_) inv_[a] = b;
    }

    int size() const { return static_cast<int>(elems_.size()); }
    int identity() const { return identity_; }
    int mul(int a, int b) const {
        return table_.empty() ? compute_mul(a, b) : table_[static_cast<size_t>(a) * size() + b];
    }
    int inv(int a) const { return inv_[a]; }
    int act(int g, int a) const { return action_[g][a]; }
    const RingMatrix& element(int a) const { return elems_[a]; }
    int lookup(const RingMatrix& M) const {
        auto it = index_.find(flatten(M));
        if (it == index_.end()) fail(ErrorKind::Structural, "nonabelian.closure", "matrix left the group");
        return it->second;
    }

private:
    void add(const RingMatrix& M) {
        index_.emplace(flatten(M), size());
        elems_.push_back(M);
    }
    int compute_mul(int a, int b) const { return lookup(ring_matmul(R_, elems_[a], elems_[b])); }

    FiniteRing R_;
    int d_;
    std::vector<RingMatrix> elems_;
    std::unordered_map<std::vector<i64>, int, KeyHash> index_;
    std::vector<int> table_, inv_;
    std::vector<std::vector<int>> action_;
    int identity_ = 0;
};

// c(x s) = c(x) x(c(s)); returns false if the generator images violate a relation
bool extend_cocycle(const FiniteGroup& G, const MatrixGroup& X, const std::vector<int>& gens,
                    const std::vector<int>& imgs, std::vector<int>& c) {
    c.assign(G.order(), -1);
    c[0] = X.identity();
    std::vector<int> q{0};
    for (size_t i = 0; i < q.size(); ++i) {
        int x = q[i];
        for (size_t t = 0; t < gens.size(); ++t) {
            int y = G.mul(x, gens[t]);
            int v = X.mul(c[x], X.act(x, imgs[t]));
            if (c[y] < 0) {
                c[y] = v;
                q.push_back(y);
            } else if (c[y] != v) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace

NonabelianH1 nonabelian_h1(const FiniteGroup& G, const RingAction& act, int d, MatrixShape shape, i64 budget) {
    if (d < 1) fail(ErrorKind::Structural, "nonabelian.dim", "dimension must be >= 1");
    std::string err = act.check(G);
    if (!err.empty()) fail(ErrorKind::Structural, "nonabelian.action", err);
    const FiniteRing& R = act.ring;
    MatrixGroup X(R, d, shape, G, act, budget);
    NonabelianH1 out{shape, d, R, G.generators(), {}, {}, 0, {}};
    const auto& gens = out.generators;
    int ng = static_cast<int>(gens.size());
    double total = 1;
    for (int i = 0; i < ng; ++i) total *= X.size();
    if (total * G.order() > static_cast<double>(budget) * 8)
        fail(ErrorKind::Resource, "nonabelian.budget", "too many generator assignments to enumerate");
    i64 count = static_cast<i64>(total);

    // enumerate generator assignments in deterministic chunks
    unsigned workers = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
    std::vector<std::vector<std::vector<int>>> found(workers);
    std::vector<std::exception_ptr> errors(workers);
    auto work = [&](unsigned w) {
        try {
        i64 lo = count * w / workers, hi = count * (w + 1) / workers;
        std::vector<int> imgs(ng), c;
        for (i64 idx = lo; idx < hi; ++idx) {
            i64 r = idx;
            for (int t = ng - 1; t >= 0; --t) {
                imgs[t] = static_cast<int>(r % X.size());
                r /= X.size();
            }
            if (extend_cocycle(G, X, gens, imgs, c)) found[w].push_back(imgs);
        }
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    std::vector<std::vector<int>> cocycles;
    for (auto& f : found) cocycles.insert(cocycles.end(), f.begin(), f.end());
    out.num_cocycles = static_cast<i64>(cocycles.size());

    std::map<std::vector<int>, int> id;
    for (size_t i = 0; i < cocycles.size(); ++i) id[cocycles[i]] = static_cast<int>(i);
    std::vector<int> cls(cocycles.size(), -1);
    for (size_t i = 0; i < cocycles.size(); ++i) {
        if (cls[i] >= 0) continue;
        int c = static_cast<int>(out.classes.size());
        int orbit = 0;
        // twisted conjugation: c'(s) = b^{-1} c(s) s(b)
        for (int b = 0; b < X.size(); ++b) {
            std::vector<int> img(ng);
            for (int t = 0; t < ng; ++t) img[t] = X.mul(X.mul(X.inv(b), cocycles[i][t]), X.act(gens[t], b));
            int j = id.at(img);
            if (cls[j] < 0) {
                cls[j] = c;
                ++orbit;
            }
        }
        std::vector<RingMatrix> rep;
        for (int t = 0; t < ng; ++t) rep.push_back(X.element(cocycles[i][t]));
        out.classes.push_back(rep);
        out.orbit_sizes.push_back(orbit);
    }
    for (size_t i = 0; i < cocycles.size(); ++i) {
        std::vector<i64> key;
        for (int t = 0; t < ng; ++t) {
            auto f = flatten(X.element(cocycles[i][t]));
            key.insert(key.end(), f.begin(), f.end());
        }
        out.class_of[key] = cls[i];
    }
    return out;
}

std::vector<int> reduction_map(const NonabelianH1& source, const NonabelianH1& target) {
    if (source.d != target.d || source.generators != target.generators)
        fail(ErrorKind::Structural, "nonabelian.reduction", "class sets over different groups or dimensions");
    std::vector<int> out;
    for (auto& cls : source.classes) {
        std::vector<i64> key;
        for (auto& M : cls)
            for (auto& e : M.e) {
                auto r = source.ring.reduce_to(e, target.ring);
                key.insert(key.end(), r.begin(), r.end());
            }
        auto it = target.class_of.find(key);
        if (it == target.class_of.end())
            fail(ErrorKind::Structural, "nonabelian.reduction", "reduced cocycle is not a cocycle of the target");
        out.push_back(it->second);
    }
    return out;
}

}  // namespace wl
