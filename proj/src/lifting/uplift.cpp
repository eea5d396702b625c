#include "wittlift/errors.hpp"
#include "wittlift/lifting.hpp"
#include "search.hpp"

namespace wl {

namespace {

// upper triangular s x s matrices over F_p with g acting by conjugation through A_1(g)
Rep adjoint_borel(const FlagRep& A1) {
    int s = A1.d;
    i64 p = A1.p;
    std::vector<std::pair<int, int>> basis;
    for (int i = 0; i < s; ++i)
        for (int j = i; j < s; ++j) basis.emplace_back(i, j);
    int n = static_cast<int>(basis.size());
    Rep Ad = Rep::trivial(A1.G, p, 1, n);
    for (int g = 1; g < A1.G.order(); ++g) {
        const Mat& A = A1.rho[g];
        Mat Ai = *inverse(A, p, 1);
        for (int c = 0; c < n; ++c) {
            Mat E(s, s);
            E(basis[c].first, basis[c].second) = 1;
            Mat C = matmul(matmul(A, E, p), Ai, p);
            for (int r = 0; r < n; ++r) Ad.act[g](r, c) = C(basis[r].first, basis[r].second);
        }
    }
    return Ad;
}

Mat unpack_upper(const Vec& x, i64 off, int s) {
    Mat M(s, s);
    for (int i = 0; i < s; ++i)
        for (int j = i; j < s; ++j) M(i, j) = x[off++];
    return M;
}

// every class of a cohomology group over F_p, zero class first
std::vector<Vec> all_classes(const Cohomology& H, i64 limit) {
    int n = H.num_generators();
    i64 p = H.module().p;
    for (int e : H.factors())
        if (e != 1) fail(ErrorKind::Structural, "uplift.internal", "expected an F_p-vector space");
    if (ipow(p, n) > limit) fail(ErrorKind::Resource, "uplift.budget", "too many lift classes to search");
    std::vector<Vec> out;
    for (i64 idx = 0; idx < ipow(p, n); ++idx) {
        Vec c(n);
        i64 r = idx;
        for (int i = 0; i < n; ++i, r /= p) c[i] = r % p;
        out.push_back(H.cocycle_from(c));
    }
    return out;
}

// Try to extend A' (a lift of the first s lines) by the column of rho1 with quotient line L.
std::optional<FlagRep> extend_column(const FlagRep& rho1, const FlagRep& A, const Rep& L, ObstructionReport* rep) {
    int s = A.d;
    i64 p = rho1.p, N = p * p;
    const FiniteGroup& G = rho1.G;
    Rep M2 = Rep::trivial(G, p, 2, s);
    for (int g = 0; g < G.order(); ++g)
        M2.act[g] = matscale(A.rho[g], *invmod(L.act[g](0, 0), N), N);
    Rep M1 = reduce_rep(M2, 1);
    Vec u = make_cochain(M2, 1, [&](const std::vector<int>& t) {
        int g = t[0];
        i64 li = *invmod(rho1.rho[g](s, s), p);
        Vec v(s);
        for (int i = 0; i < s; ++i) v[i] = mulmod(rho1.rho[g](i, s), li, p);
        return v;
    });
    Vec du = coboundary(M2, 1, u);
    Vec delta(du.size());
    for (size_t i = 0; i < du.size(); ++i) {
        i64 x = mod(du[i], N);
        if (x % p) fail(ErrorKind::Structural, "uplift.internal", "mod-p column is not a cocycle");
        delta[i] = x / p;
    }
    Cohomology H2(M1, 2);
    if (rep) {
        rep->group_factors = H2.factors();
        rep->class_coords = H2.coordinates(delta);
        rep->cocycle = delta;
    }
    auto z = H2.primitive(delta);
    if (!z) return std::nullopt;
    FlagRep out{G, p, 2, s + 1, {}};
    for (int g = 0; g < G.order(); ++g) {
        Mat M(s + 1, s + 1);
        for (int i = 0; i < s; ++i)
            for (int j = 0; j < s; ++j) M(i, j) = A.rho[g](i, j);
        M(s, s) = L.act[g](0, 0);
        for (int i = 0; i < s && g > 0; ++i) {
            i64 c = mod(u[static_cast<size_t>(g - 1) * s + i] - p * (*z)[static_cast<size_t>(g - 1) * s + i], N);
            M(i, s) = mulmod(c, L.act[g](0, 0), N);
        }
        out.rho.push_back(M);
    }
    std::string err = out.check();
    if (!err.empty()) fail(ErrorKind::Structural, "uplift.internal", "extended flag fails: " + err);
    return out;
}

}  // namespace

std::optional<FlagRep> uplift_step(const FlagRep& rho1, const FlagRep& lift_d, ObstructionReport* report) {
    int s = lift_d.d;
    i64 p = rho1.p, N = p * p;
    if (rho1.k != 1 || lift_d.k != 2 || s >= rho1.d)
        fail(ErrorKind::Structural, "uplift.shape", "uplift_step needs a partial lift over Z/p^2");
    if (lift_d.reduce(1).rho != rho1.truncate(s).rho)
        fail(ErrorKind::Precondition, "uplift.reduction", "partial lift does not reduce to rho1");
    auto lines = character_lifts(rho1.line(s));
    if (report) {
        *report = ObstructionReport{};
        report->stage = s + 1;
    }
    if (s == 0) {
        FlagRep out{rho1.G, p, 2, 1, {}};
        for (int g = 0; g < rho1.G.order(); ++g) out.rho.push_back(lines[0].act[g]);
        if (report) report->note = "first line: Teichmuller lift";
        return out;
    }
    // lifts of the first s lines up to kernel conjugation: (I + p X) A, X in H^1(G, Ad b_s)
    Rep Ad = adjoint_borel(rho1.truncate(s));
    Cohomology H1(Ad, 1);
    auto classes = all_classes(H1, 100'000);
    int n = Ad.dim;
    int tried = 0;
    for (size_t ci = 0; ci < classes.size(); ++ci) {
        FlagRep A = lift_d;
        for (int g = 1; g < rho1.G.order(); ++g) {
            Mat X = unpack_upper(classes[ci], static_cast<i64>(g - 1) * n, s);
            Mat T = matadd(Mat::identity(s, N), matscale(X, p, N), N);
            A.rho[g] = matmul(T, lift_d.rho[g], N);
        }
        std::string err = A.check();
        if (!err.empty()) fail(ErrorKind::Structural, "uplift.internal", "twisted partial lift fails: " + err);
        for (size_t li = 0; li < lines.size(); ++li) {
            ++tried;
            bool first = ci == 0 && li == 0;
            auto out = extend_column(rho1, A, lines[li], first ? report : nullptr);
            if (out) {
                if (report) {
                    report->vanishes = true;
                    report->note = "searched " + std::to_string(tried) + " lift choices";
                }
                return out;
            }
        }
    }
    if (report) {
        report->vanishes = false;
        report->note = "all " + std::to_string(tried) + " lift choices obstructed";
    }
    return std::nullopt;
}

UpliftResult uplift_flag(const FlagRep& rho1) {
    std::string err = rho1.check();
    if (!err.empty()) fail(ErrorKind::Structural, "uplift.invalid", err);
    if (rho1.k != 1) fail(ErrorKind::Structural, "uplift.level", "uplift_flag expects a flag over F_p");
    UpliftResult out;
    int order = rho1.G.order();
    out.ambient_copies = (rho1.d + 2 + order - 1) / order;
    out.ambient_rank = out.ambient_copies * order;
    FlagRep cur{rho1.G, rho1.p, 2, 0, std::vector<Mat>(order, Mat(0, 0))};
    for (int s = 0; s < rho1.d; ++s) {
        ObstructionReport rep;
        auto next = uplift_step(rho1, cur, &rep);
        out.stages.push_back(rep);
        if (!next) return out;
        cur = *next;
    }
    if (cur.reduce(1).rho != rho1.rho) fail(ErrorKind::Structural, "uplift.internal", "lift does not reduce to rho1");
    out.ok = true;
    out.lift = cur;
    return out;
}

std::optional<FlagRep> exhaustive_lift(const FlagRep& rho1, MatrixShape shape, i64 budget) {
    std::string err = rho1.check();
    if (!err.empty()) fail(ErrorKind::Structural, "uplift.invalid", err);
    if (rho1.k != 1) fail(ErrorKind::Structural, "uplift.level", "exhaustive_lift expects a flag over F_p");
    int d = rho1.d;
    i64 p = rho1.p, N = p * p;
    auto gens = rho1.G.generators();
    std::vector<std::vector<Mat>> cands;
    for (int s : gens) {
        const Mat& B = rho1.rho[s];
        std::vector<std::pair<int, int>> free;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                bool zero_below = shape != MatrixShape::General && i > j;
                bool fixed_diag = shape == MatrixShape::Unipotent && i == j;
                if (fixed_diag && B(i, j) != 1)
                    fail(ErrorKind::Precondition, "uplift.shape", "flag is not unipotent");
                if (!zero_below && !fixed_diag) free.emplace_back(i, j);
            }
        i64 count = ipow(p, static_cast<int>(free.size()));
        if (count > budget) fail(ErrorKind::Resource, "lift.budget", "too many lifts per generator");
        std::vector<Mat> c;
        for (i64 idx = 0; idx < count; ++idx) {
            Mat M = B;
            i64 r = idx;
            for (auto [i, j] : free) {
                M(i, j) = B(i, j) + p * (r % p);
                r /= p;
            }
            c.push_back(M);
        }
        cands.push_back(c);
    }
    auto rho = search_images(rho1.G, gens, cands, d, N, budget);
    if (!rho) return std::nullopt;
    return FlagRep{rho1.G, p, 2, d, *rho};
}

}  // namespace wl
