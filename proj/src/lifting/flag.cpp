#include "wittlift/errors.hpp"
#include "wittlift/lifting.hpp"
#include "search.hpp"

namespace wl {

namespace {

void require_upper(const std::vector<Mat>& rho) {
    for (auto& M : rho)
        if (!is_upper_triangular(M))
            fail(ErrorKind::Structural, "flag.not_triangular", "flag representation is not upper triangular");
}

}  // namespace

FlagRep FlagRep::from_generators(const FiniteGroup& G, i64 p, int k, int d,
                                 const std::vector<std::pair<int, Mat>>& images) {
    return from_rep(Rep::from_generators(G, p, k, d, images));
}

FlagRep FlagRep::from_rep(const Rep& R) {
    require_upper(R.act);
    return FlagRep{R.G, R.p, R.k, R.dim, R.act};
}

Rep FlagRep::rep() const { return Rep{G, p, k, d, rho}; }

Rep FlagRep::line(int i) const {
    if (i < 0 || i >= d) fail(ErrorKind::Structural, "flag.index", "line index out of range");
    Rep L = Rep::trivial(G, p, k, 1);
    for (int g = 0; g < G.order(); ++g) L.act[g](0, 0) = rho[g](i, i);
    return L;
}

FlagRep FlagRep::truncate(int s) const {
    if (s < 0 || s > d) fail(ErrorKind::Structural, "flag.index", "truncation out of range");
    FlagRep out{G, p, k, s, {}};
    for (auto& M : rho) {
        Mat T(s, s);
        for (int i = 0; i < s; ++i)
            for (int j = 0; j < s; ++j) T(i, j) = M(i, j);
        out.rho.push_back(T);
    }
    return out;
}

FlagRep FlagRep::reduce(int k2) const {
    if (k2 > k || k2 < 1) fail(ErrorKind::Structural, "flag.level", "can only reduce to a lower level");
    FlagRep out{G, p, k2, d, {}};
    for (auto& M : rho) out.rho.push_back(wl::reduce(M, ipow(p, k2)));
    return out;
}

FlagRep FlagRep::twist(const Rep& chi) const {
    if (chi.dim != 1 || chi.k != k || chi.G.order() != G.order())
        fail(ErrorKind::Structural, "flag.twist", "twist needs a character at the same level");
    FlagRep out = *this;
    for (int g = 0; g < G.order(); ++g) out.rho[g] = matscale(rho[g], chi.act[g](0, 0), modulus());
    return out;
}

std::vector<Mat> FlagRep::generator_images() const {
    std::vector<Mat> out;
    for (int s : G.generators()) out.push_back(rho[s]);
    return out;
}

std::string FlagRep::check() const {
    if (static_cast<int>(rho.size()) != G.order()) return "wrong number of matrices";
    for (auto& M : rho)
        if (!is_upper_triangular(M)) return "not upper triangular";
    return rep().check();
}

bool extend_images(const FiniteGroup& G, const std::vector<int>& gens, const std::vector<Mat>& imgs, int upto,
                   int d, i64 N, std::vector<Mat>& out) {
    out.assign(G.order(), Mat());
    std::vector<char> seen(G.order(), 0);
    out[0] = Mat::identity(d, N);
    seen[0] = 1;
    std::vector<int> q{0};
    for (size_t i = 0; i < q.size(); ++i) {
        int x = q[i];
        for (int t = 0; t < upto; ++t) {
            int y = G.mul(x, gens[t]);
            Mat v = matmul(out[x], imgs[t], N);
            if (!seen[y]) {
                seen[y] = 1;
                out[y] = std::move(v);
                q.push_back(y);
            } else if (out[y] != v) {
                return false;
            }
        }
    }
    return true;
}

std::optional<std::vector<Mat>> search_images(const FiniteGroup& G, const std::vector<int>& gens,
                                              const std::vector<std::vector<Mat>>& cands, int d, i64 N,
                                              i64 budget) {
    std::vector<Mat> imgs(gens.size());
    std::vector<Mat> scratch;
    i64 visits = 0;
    std::function<bool(size_t)> go = [&](size_t t) -> bool {
        if (t == gens.size()) return true;
        for (auto& M : cands[t]) {
            if (++visits > budget) fail(ErrorKind::Resource, "lift.budget", "exhaustive search exceeds its budget");
            imgs[t] = M;
            if (extend_images(G, gens, imgs, static_cast<int>(t + 1), d, N, scratch) && go(t + 1)) return true;
        }
        return false;
    };
    if (!go(0)) return std::nullopt;
    std::vector<Mat> out;
    extend_images(G, gens, imgs, static_cast<int>(gens.size()), d, N, out);
    return out;
}

}  // namespace wl
