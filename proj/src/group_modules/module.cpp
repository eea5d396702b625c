#include "wittlift/module.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "wittlift/errors.hpp"

namespace wl {

namespace {

// BFS over the Cayley graph: value(x s) = combine(value(x), s).
template <class T, class Combine, class Eq>
std::vector<T> extend_from_generators(const FiniteGroup& G, const T& id, const std::vector<std::pair<int, T>>& gens,
                                      Combine combine, Eq eq, const std::string& code) {
    int n = G.order();
    std::vector<T> val(n);
    std::vector<char> set(n, 0);
    val[0] = id;
    set[0] = 1;
    std::vector<int> q{0};
    for (size_t i = 0; i < q.size(); ++i) {
        int x = q[i];
        for (auto& [s, img] : gens) {
            if (s < 0 || s >= n) fail(ErrorKind::Structural, code, "generator index out of range");
            int y = G.mul(x, s);
            T v = combine(val[x], x, img);
            if (!set[y]) {
                val[y] = std::move(v);
                set[y] = 1;
                q.push_back(y);
            } else if (!eq(val[y], v)) {
                fail(ErrorKind::Structural, code, "generator images violate a group relation");
            }
        }
    }
    if (static_cast<int>(q.size()) != n) fail(ErrorKind::Structural, code, "given elements do not generate the group");
    return val;
}

Mat mult_matrix(const FiniteRing& A, const Elem& a) {
    Mat M(A.dim(), A.dim());
    for (int j = 0; j < A.dim(); ++j) {
        Elem c = A.mul(a, A.basis(j));
        for (int i = 0; i < A.dim(); ++i) M(i, j) = c[i];
    }
    return M;
}

}  // namespace

Rep Rep::from_generators(const FiniteGroup& G, i64 p, int k, int dim, const std::vector<std::pair<int, Mat>>& images) {
    if (!is_prime(p) || k < 1) fail(ErrorKind::Structural, "rep.modulus", "coefficients must be Z/p^k");
    i64 N = ipow(p, k);
    std::vector<std::pair<int, Mat>> gens;
    for (auto& [s, M] : images) {
        if (M.rows != dim || M.cols != dim) fail(ErrorKind::Structural, "rep.shape", "generator matrix has wrong size");
        gens.push_back({s, reduce(M, N)});
    }
    Rep R;
    R.G = G;
    R.p = p;
    R.k = k;
    R.dim = dim;
    R.act = extend_from_generators<Mat>(
        G, Mat::identity(dim), gens, [&](const Mat& a, int, const Mat& s) { return matmul(a, s, N); },
        [](const Mat& a, const Mat& b) { return a == b; }, "rep.relations");
    return R;
}

Rep Rep::trivial(const FiniteGroup& G, i64 p, int k, int dim) {
    Rep R;
    R.G = G;
    R.p = p;
    R.k = k;
    R.dim = dim;
    R.act.assign(G.order(), Mat::identity(dim));
    return R;
}

Rep Rep::regular(const FiniteGroup& G, i64 p, int k) {
    Rep R = trivial(G, p, k, G.order());
    for (int g = 0; g < G.order(); ++g) {
        Mat M(G.order(), G.order());
        for (int x = 0; x < G.order(); ++x) M(G.mul(g, x), x) = 1;
        R.act[g] = M;
    }
    return R;
}

std::string Rep::check() const {
    i64 N = modulus();
    if (static_cast<int>(act.size()) != G.order()) return "wrong number of matrices";
    if (act[0] != Mat::identity(dim)) return "identity does not act trivially";
    for (int g = 0; g < G.order(); ++g)
        for (int h = 0; h < G.order(); ++h)
            if (matmul(act[g], act[h], N) != act[G.mul(g, h)])
                return "not a homomorphism at (" + G.name(g) + "," + G.name(h) + ")";
    return "";
}

namespace {

void same_setting(const Rep& A, const Rep& B, const char* what) {
    if (A.G.order() != B.G.order() || A.p != B.p || A.k != B.k)
        fail(ErrorKind::Structural, "rep.mismatch", std::string(what) + ": modules over different groups or rings");
}

Rep map_rep(const Rep& A, int dim, const std::function<Mat(int)>& f) {
    Rep R = Rep::trivial(A.G, A.p, A.k, dim);
    for (int g = 0; g < A.G.order(); ++g) R.act[g] = f(g);
    return R;
}

}  // namespace

Rep direct_sum(const Rep& A, const Rep& B) {
    same_setting(A, B, "direct_sum");
    return map_rep(A, A.dim + B.dim, [&](int g) { return block_diag(A.act[g], B.act[g]); });
}

Rep tensor(const Rep& A, const Rep& B) {
    same_setting(A, B, "tensor");
    i64 N = A.modulus();
    return map_rep(A, A.dim * B.dim, [&](int g) { return kron(A.act[g], B.act[g], N); });
}

Rep dual(const Rep& A) {
    return map_rep(A, A.dim, [&](int g) { return transpose(A.act[A.G.inv(g)]); });
}

Rep hom_rep(const Rep& A, const Rep& B) {
    same_setting(A, B, "hom");
    i64 N = A.modulus();
    // vec(X f Y) = (X kron Y^T) vec(f) for row-major vec
    return map_rep(A, A.dim * B.dim,
                   [&](int g) { return kron(B.act[g], transpose(A.act[A.G.inv(g)]), N); });
}

Rep restrict_rep(const Rep& M, const Subgroup& H) {
    Rep R = Rep::trivial(H.group, M.p, M.k, M.dim);
    for (int h = 0; h < H.group.order(); ++h) R.act[h] = M.act[H.embedding[h]];
    return R;
}

Rep induce(const Rep& M, const FiniteGroup& G, const Subgroup& H) {
    if (M.G.order() != H.group.order()) fail(ErrorKind::Structural, "rep.induce", "module is not over the subgroup");
    if (!G.is_subgroup(H.embedding)) fail(ErrorKind::Structural, "group.not_subgroup", "H is not a subgroup of G");
    std::vector<int> pos(G.order(), -1);
    for (int i = 0; i < H.group.order(); ++i) pos[H.embedding[i]] = i;
    auto reps = right_coset_reps(G, H.embedding);
    int m = static_cast<int>(reps.size()), d = M.dim;
    // coset index of each element
    std::vector<int> coset(G.order());
    for (int i = 0; i < m; ++i)
        for (int h : H.embedding) coset[G.mul(h, reps[i])] = i;
    // functions f with f(h x) = h f(x); (g f)(x) = f(x g); f(t_i g) = h f(t_j)
    Rep R = Rep::trivial(G, M.p, M.k, m * d);
    for (int g = 0; g < G.order(); ++g) {
        Mat A(m * d, m * d);
        for (int i = 0; i < m; ++i) {
            int x = G.mul(reps[i], g);
            int j = coset[x];
            int h = pos[G.mul(x, G.inv(reps[j]))];
            const Mat& Mh = M.act[h];
            for (int r = 0; r < d; ++r)
                for (int c = 0; c < d; ++c) A(i * d + r, j * d + c) = Mh(r, c);
        }
        R.act[g] = A;
    }
    return R;
}

Rep reduce_rep(const Rep& M, int k2) {
    if (k2 < 1 || k2 > M.k) fail(ErrorKind::Structural, "rep.reduce", "can only reduce to a lower level");
    Rep R = M;
    R.k = k2;
    for (auto& A : R.act) A = reduce(A, R.modulus());
    return R;
}

Rep relevel(const Rep& M, int k2) {
    Rep R = M;
    R.k = k2;
    for (auto& A : R.act) A = reduce(A, R.modulus());
    return R;
}

bool is_equivariant(const Mat& f, const Rep& A, const Rep& B) {
    same_setting(A, B, "equivariance");
    if (f.rows != B.dim || f.cols != A.dim) return false;
    i64 N = A.modulus();
    for (int g : A.G.generators())
        if (matmul(f, A.act[g], N) != matmul(B.act[g], f, N)) return false;
    return true;
}

int hom_log_size(const Rep& A, const Rep& B) {
    Rep H = hom_rep(A, B);
    auto& gens = H.G.generators();
    int n = H.dim;
    if (gens.empty()) return n * H.k;
    Mat S(static_cast<int>(gens.size()) * n, n);
    for (size_t t = 0; t < gens.size(); ++t) {
        Mat D = matsub(H.act[gens[t]], Mat::identity(n), H.modulus());
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) S(static_cast<int>(t) * n + i, j) = D(i, j);
    }
    return Smith(S, H.p, H.k).kernel_log_size();
}

Mat ring_frobenius_matrix(const FiniteRing& A, int times) {
    i64 p = A.prime();
    int d = A.dim();
    if (p == 0) fail(ErrorKind::Unsupported, "ring.frobenius", "characteristic is not a prime power");
    if (A.kind() == FiniteRing::Kind::Integers) return Mat::identity(d);
    Mat F(d, d);
    if (A.characteristic() == p) {
        for (int j = 0; j < d; ++j) {
            Elem y = A.frobenius(A.basis(j), times);
            for (int i = 0; i < d; ++i) F(i, j) = y[i];
        }
        return F;
    }
    if (A.kind() != FiniteRing::Kind::Univariate || !FiniteRing::univariate(p, A.modulus_poly()).is_field())
        fail(ErrorKind::Unsupported, "ring.frobenius", "Frobenius lift needs an unramified extension");
    const auto& f = A.modulus_poly();
    auto eval = [&](const std::vector<i64>& coeffs, const Elem& y) {
        Elem r = A.zero();
        for (size_t i = coeffs.size(); i-- > 0;) r = A.add(A.mul(r, y), A.from_int(coeffs[i]));
        return r;
    };
    std::vector<i64> df;
    for (size_t i = 1; i < f.size(); ++i) df.push_back(static_cast<i64>(i) * f[i]);
    Elem x = A.basis(1);
    Elem y = A.pow(x, static_cast<std::uint64_t>(p));
    // Newton iteration converges p-adically from the mod p root x^p
    for (int it = 0; it < 64; ++it) {
        Elem fy = eval(f, y);
        if (A.is_zero(fy)) break;
        y = A.sub(y, A.mul(fy, A.inverse(eval(df, y))));
    }
    Mat one(d, d);
    for (int j = 0; j < d; ++j) {
        Elem c = A.pow(y, static_cast<std::uint64_t>(j));
        for (int i = 0; i < d; ++i) one(i, j) = c[i];
    }
    Mat R = Mat::identity(d);
    for (int t = 0; t < times; ++t) R = matmul(one, R, A.characteristic());
    return R;
}

RingAction RingAction::trivial(const FiniteGroup& G, const FiniteRing& A) {
    return RingAction{A, std::vector<Mat>(G.order(), Mat::identity(A.dim()))};
}

RingAction RingAction::frobenius_powers(const FiniteGroup& G, const FiniteRing& A, const std::vector<int>& e) {
    if (static_cast<int>(e.size()) != G.order())
        fail(ErrorKind::Structural, "action.shape", "one Frobenius exponent per group element");
    RingAction R{A, {}};
    for (int g = 0; g < G.order(); ++g) R.aut.push_back(ring_frobenius_matrix(A, e[g]));
    std::string err = R.check(G);
    if (!err.empty()) fail(ErrorKind::Structural, "action.invalid", err);
    return R;
}

Elem RingAction::apply(int g, const Elem& a) const { return matvec(aut[g], a, ring.characteristic()); }

std::string RingAction::check(const FiniteGroup& G) const {
    i64 N = ring.characteristic();
    if (static_cast<int>(aut.size()) != G.order()) return "wrong number of automorphisms";
    for (int g = 0; g < G.order(); ++g) {
        if (apply(g, ring.one()) != ring.one()) return "automorphism does not fix 1";
        for (int i = 0; i < ring.dim(); ++i)
            for (int j = 0; j < ring.dim(); ++j) {
                Elem lhs = apply(g, ring.mul(ring.basis(i), ring.basis(j)));
                Elem rhs = ring.mul(apply(g, ring.basis(i)), apply(g, ring.basis(j)));
                if (lhs != rhs) return "automorphism of " + G.name(g) + " is not multiplicative";
            }
        for (int h = 0; h < G.order(); ++h)
            if (matmul(aut[g], aut[h], N) != aut[G.mul(g, h)]) return "action is not a homomorphism";
    }
    return "";
}

RingMatrix ring_identity(const FiniteRing& A, int n) {
    RingMatrix I{n, std::vector<Elem>(static_cast<size_t>(n) * n, A.zero())};
    for (int i = 0; i < n; ++i) I.at(i, i) = A.one();
    return I;
}

RingMatrix ring_matmul(const FiniteRing& A, const RingMatrix& X, const RingMatrix& Y) {
    RingMatrix Z{X.n, std::vector<Elem>(static_cast<size_t>(X.n) * X.n, A.zero())};
    for (int i = 0; i < X.n; ++i)
        for (int l = 0; l < X.n; ++l) {
            if (A.is_zero(X.at(i, l))) continue;
            for (int j = 0; j < X.n; ++j) Z.at(i, j) = A.add(Z.at(i, j), A.mul(X.at(i, l), Y.at(l, j)));
        }
    return Z;
}

SemilinearModule::SemilinearModule(const FiniteGroup& G, RingAction action, int rank,
                                   const std::vector<std::pair<int, RingMatrix>>& generator_matrices)
    : action_(std::move(action)), rank_(rank) {
    const FiniteRing& A = action_.ring;
    std::string err = action_.check(G);
    if (!err.empty()) fail(ErrorKind::Structural, "module.action", err);
    for (auto& [s, M] : generator_matrices) {
        if (M.n != rank || static_cast<int>(M.e.size()) != rank * rank)
            fail(ErrorKind::Structural, "module.shape", "generator matrix has wrong size");
        for (auto& x : M.e)
            if (static_cast<int>(x.size()) != A.dim()) fail(ErrorKind::Structural, "module.entry", "entry not in the ring");
    }
    auto sigma = [&](int g, const RingMatrix& M) {
        RingMatrix out = M;
        for (auto& x : out.e) x = action_.apply(g, x);
        return out;
    };
    auto eq = [](const RingMatrix& a, const RingMatrix& b) { return a.e == b.e; };
    mats_ = extend_from_generators<RingMatrix>(
        G, ring_identity(A, rank), generator_matrices,
        [&](const RingMatrix& Mx, int x, const RingMatrix& Ms) { return ring_matmul(A, Mx, sigma(x, Ms)); }, eq,
        "module.relations");
    // restriction of scalars: g acts by Mult(M_g) . blockdiag(sigma_g)
    int d = A.dim();
    rep_ = Rep::trivial(G, A.prime(), prime_power(A.characteristic())->second, rank * d);
    for (int g = 0; g < G.order(); ++g) {
        Mat Mult(rank * d, rank * d), S(rank * d, rank * d);
        for (int i = 0; i < rank; ++i)
            for (int j = 0; j < rank; ++j) {
                Mat B = mult_matrix(A, mats_[g].at(i, j));
                for (int r = 0; r < d; ++r)
                    for (int c = 0; c < d; ++c) Mult(i * d + r, j * d + c) = B(r, c);
            }
        for (int i = 0; i < rank; ++i)
            for (int r = 0; r < d; ++r)
                for (int c = 0; c < d; ++c) S(i * d + r, i * d + c) = action_.aut[g](r, c);
        rep_.act[g] = matmul(Mult, S, A.characteristic());
    }
}

std::vector<std::pair<int, RingMatrix>> SemilinearModule::generator_matrices() const {
    std::vector<std::pair<int, RingMatrix>> out;
    for (int s : group().generators()) out.push_back({s, mats_[s]});
    return out;
}

SemilinearModule frobenius_twist(const SemilinearModule& M, int m) {
    const FiniteRing& A = M.ring();
    if (!is_prime(A.characteristic()))
        fail(ErrorKind::Unsupported, "module.twist", "Frobenius twist needs a base of characteristic p");
    if (m < 0) fail(ErrorKind::Structural, "module.twist", "twist exponent must be >= 0");
    auto gens = M.generator_matrices();
    for (auto& [s, X] : gens)
        for (auto& x : X.e) x = A.frobenius(x, m);
    return SemilinearModule(M.group(), M.action(), M.rank(), gens);
}

std::pair<Elem, int> skew_product(const RingAction& act, const FiniteGroup& G, const Elem& a, int g, const Elem& b,
                                  int h) {
    return {act.ring.mul(a, act.apply(g, b)), G.mul(g, h)};
}

SkewElement skew_multiply(const RingAction& act, const FiniteGroup& G, const SkewElement& x, const SkewElement& y) {
    std::map<int, Elem> acc;
    for (auto& [a, g] : x)
        for (auto& [b, h] : y) {
            auto [c, gh] = skew_product(act, G, a, g, b, h);
            auto it = acc.find(gh);
            if (it == acc.end())
                acc.emplace(gh, c);
            else
                it->second = act.ring.add(it->second, c);
        }
    SkewElement out;
    for (auto& [g, c] : acc)
        if (!act.ring.is_zero(c)) out.push_back({c, g});
    return out;
}

Rep PermutationModule::rep() const {
    Rep R = Rep::trivial(G, p, k, size());
    i64 N = ipow(p, k);
    for (int g = 0; g < G.order(); ++g) {
        Mat A(size(), size());
        for (int x = 0; x < size(); ++x) A(perm[g][x], x) = mod(phi[g][x], N);
        R.act[g] = A;
    }
    return R;
}

std::string PermutationModule::check() const {
    i64 N = ipow(p, k);
    int n = size();
    if (static_cast<int>(perm.size()) != G.order() || static_cast<int>(phi.size()) != G.order())
        return "one permutation and cocycle per group element";
    for (int g = 0; g < G.order(); ++g)
        for (int x = 0; x < n; ++x)
            if (mod(phi[g][x], p) == 0) return "cocycle value is not a unit";
    for (int g = 0; g < G.order(); ++g)
        for (int h = 0; h < G.order(); ++h)
            for (int x = 0; x < n; ++x) {
                int gh = G.mul(g, h);
                if (perm[gh][x] != perm[g][perm[h][x]]) return "not a G-set";
                if (mod(phi[gh][x], N) != mulmod(phi[g][perm[h][x]], phi[h][x], N))
                    return "cocycle condition fails";
            }
    return "";
}

PermutationModule PermutationModule::from_generators(const FiniteGroup& G, i64 p, int k, int nx,
                                                     const std::vector<std::pair<int, std::vector<int>>>& perms,
                                                     const std::vector<std::pair<int, std::vector<i64>>>& scalars) {
    using Cell = std::pair<std::vector<int>, std::vector<i64>>;
    i64 N = ipow(p, k);
    std::vector<std::pair<int, Cell>> gens;
    for (auto& [s, pi] : perms) {
        if (static_cast<int>(pi.size()) != nx) fail(ErrorKind::Structural, "perm.shape", "permutation has wrong size");
        std::vector<i64> ph(nx, 1);
        for (auto& [t, sc] : scalars)
            if (t == s) ph = sc;
        if (static_cast<int>(ph.size()) != nx) fail(ErrorKind::Structural, "perm.shape", "cocycle has wrong size");
        gens.push_back({s, {pi, ph}});
    }
    std::vector<int> id(nx);
    for (int x = 0; x < nx; ++x) id[x] = x;
    auto vals = extend_from_generators<Cell>(
        G, Cell{id, std::vector<i64>(nx, 1)}, gens,
        [&](const Cell& a, int, const Cell& s) {
            Cell c{std::vector<int>(nx), std::vector<i64>(nx)};
            for (int x = 0; x < nx; ++x) {
                c.first[x] = a.first[s.first[x]];
                c.second[x] = mulmod(a.second[s.first[x]], mod(s.second[x], N), N);
            }
            return c;
        },
        [](const Cell& a, const Cell& b) { return a == b; }, "perm.relations");
    PermutationModule P{G, p, k, {}, {}};
    for (auto& c : vals) {
        P.perm.push_back(c.first);
        P.phi.push_back(c.second);
    }
    std::string err = P.check();
    if (!err.empty()) fail(ErrorKind::Structural, "perm.invalid", err);
    return P;
}

PermutationModule PermutationModule::teichmuller_lift(int k2) const {
    if (k != 1 || k2 < 1) fail(ErrorKind::Precondition, "perm.lift", "Teichmuller lift starts from Z/p");
    PermutationModule L = *this;
    L.k = k2;
    for (auto& row : L.phi)
        for (auto& v : row) v = teichmuller_int(mod(v, p), p, k2);
    return L;
}

Mat lift_permutation_morphism(const Mat& f, const PermutationModule& src, const PermutationModule& dst, int k2) {
    if (src.k != 1 || dst.k != 1) fail(ErrorKind::Precondition, "perm.lift", "morphism must be over Z/p");
    if (!is_equivariant(f, src.rep(), dst.rep()))
        fail(ErrorKind::Precondition, "perm.not_equivariant", "morphism is not G-equivariant");
    // each matrix entry is a monomial component; Teichmuller is multiplicative so
    // every component relation phi_dst f = f phi_src survives the lift
    Mat F(f.rows, f.cols);
    for (int i = 0; i < f.rows; ++i)
        for (int j = 0; j < f.cols; ++j) F(i, j) = teichmuller_int(mod(f(i, j), src.p), src.p, k2);
    if (!is_equivariant(F, src.teichmuller_lift(k2).rep(), dst.teichmuller_lift(k2).rep()))
        fail(ErrorKind::Structural, "perm.lift_failed", "lifted morphism is not equivariant");
    return F;
}

}  // namespace wl
