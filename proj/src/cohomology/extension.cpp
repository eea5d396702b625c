#include "wittlift/cohomology.hpp"
#include "wittlift/errors.hpp"

namespace wl {

namespace {

void same_module(const Rep& X, const Rep& Y, const char* what) {
    if (X.G.order() != Y.G.order() || X.p != Y.p || X.k != Y.k || X.dim != Y.dim || X.act != Y.act)
        fail(ErrorKind::Structural, "extension.mismatch", std::string(what) + " modules differ");
}

Mat unvec(const Vec& v, i64 off, int rows, int cols) {
    Mat M(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) M(i, j) = v[off + static_cast<i64>(i) * cols + j];
    return M;
}

Vec vec(const Mat& M) { return M.a; }

// apply an entrywise map to the matrices of a Hom-valued 1-cocycle
Vec map_cocycle(const Rep& H, const Vec& c, int rows, int cols, const std::function<Mat(const Mat&)>& f) {
    Vec out;
    for (int g = 1; g < H.G.order(); ++g) {
        Mat m = f(unvec(c, static_cast<i64>(g - 1) * rows * cols, rows, cols));
        out.insert(out.end(), m.a.begin(), m.a.end());
    }
    return out;
}

}  // namespace

std::string ExtensionData::check() const {
    if (A.k != E.k || B.k != E.k) return "extension terms must share a level";
    ShortExact s{A, E, B, inc, proj};
    std::string err = s.check();
    if (!err.empty()) return err;
    // split injectivity: all elementary divisors of inc are units
    Smith S(inc, E.p, E.k);
    if (S.rank() != A.dim) return "inclusion is not split";
    for (int v : S.vals())
        if (v) return "inclusion is not split";
    return "";
}

Vec extension_cocycle(const ExtensionData& X) {
    std::string err = X.check();
    if (!err.empty()) fail(ErrorKind::Structural, "extension.invalid", err);
    const Rep &A = X.A, &E = X.E, &B = X.B;
    i64 N = E.modulus();
    Smith Sp(X.proj, E.p, E.k), Si(transpose(X.inc), E.p, E.k);
    Mat S(E.dim, B.dim), R(A.dim, E.dim);
    for (int i = 0; i < B.dim; ++i) {
        Vec e(B.dim, 0);
        e[i] = 1;
        Vec x = *Sp.solve(e);
        for (int r = 0; r < E.dim; ++r) S(r, i) = x[r];
    }
    for (int i = 0; i < A.dim; ++i) {
        Vec e(A.dim, 0);
        e[i] = 1;
        Vec x = *Si.solve(e);  // row i of R
        for (int c = 0; c < E.dim; ++c) R(i, c) = x[c];
    }
    Rep H = hom_rep(B, A);
    return make_cochain(H, 1, [&](const std::vector<int>& t) {
        int g = t[0];
        Mat s = matsub(matmul(matmul(E.act[g], S, N), B.act[B.G.inv(g)], N), S, N);
        return vec(matmul(R, s, N));
    });
}

ExtensionData extension_from_cocycle(const Rep& A, const Rep& B, const Vec& c) {
    Rep H = hom_rep(B, A);
    if (static_cast<i64>(c.size()) != cochain_dim(H, 1))
        fail(ErrorKind::Structural, "extension.cocycle_shape", "cocycle has wrong size");
    Vec dc = coboundary(H, 1, c);
    for (i64 v : dc)
        if (v) fail(ErrorKind::Precondition, "extension.not_cocycle", "cochain is not a cocycle");
    i64 N = A.modulus();
    int a = A.dim, b = B.dim;
    Rep E = Rep::trivial(A.G, A.p, A.k, a + b);
    for (int g = 1; g < A.G.order(); ++g) {
        Mat cg = matmul(unvec(c, static_cast<i64>(g - 1) * a * b, a, b), B.act[g], N);
        Mat M = block_diag(A.act[g], B.act[g]);
        for (int i = 0; i < a; ++i)
            for (int j = 0; j < b; ++j) M(i, a + j) = cg(i, j);
        E.act[g] = M;
    }
    Mat inc(a + b, a), proj(b, a + b);
    for (int i = 0; i < a; ++i) inc(i, i) = 1;
    for (int j = 0; j < b; ++j) proj(j, a + j) = 1;
    return ExtensionData{A, E, B, inc, proj};
}

ExtensionData split_extension(const Rep& A, const Rep& B) {
    return extension_from_cocycle(A, B, Vec(cochain_dim(hom_rep(B, A), 1), 0));
}

ExtensionData baer_sum(const ExtensionData& E1, const ExtensionData& E2) {
    same_module(E1.A, E2.A, "kernel");
    same_module(E1.B, E2.B, "quotient");
    Vec c1 = extension_cocycle(E1), c2 = extension_cocycle(E2);
    i64 N = E1.A.modulus();
    for (size_t i = 0; i < c1.size(); ++i) c1[i] = mod(c1[i] + c2[i], N);
    return extension_from_cocycle(E1.A, E1.B, c1);
}

ExtensionData pushforward(const Mat& f, const Rep& A2, const ExtensionData& X) {
    if (!is_equivariant(f, X.A, A2)) fail(ErrorKind::Structural, "extension.map", "pushforward map is not equivariant");
    Vec c = extension_cocycle(X);
    i64 N = A2.modulus();
    Vec c2 = map_cocycle(hom_rep(X.B, X.A), c, X.A.dim, X.B.dim, [&](const Mat& m) { return matmul(f, m, N); });
    return extension_from_cocycle(A2, X.B, c2);
}

ExtensionData pullback(const Mat& g, const Rep& B2, const ExtensionData& X) {
    if (!is_equivariant(g, B2, X.B)) fail(ErrorKind::Structural, "extension.map", "pullback map is not equivariant");
    Vec c = extension_cocycle(X);
    i64 N = B2.modulus();
    Vec c2 = map_cocycle(hom_rep(X.B, X.A), c, X.A.dim, X.B.dim, [&](const Mat& m) { return matmul(m, g, N); });
    return extension_from_cocycle(X.A, B2, c2);
}

bool same_extension_class(const ExtensionData& E1, const ExtensionData& E2) {
    same_module(E1.A, E2.A, "kernel");
    same_module(E1.B, E2.B, "quotient");
    Vec c1 = extension_cocycle(E1), c2 = extension_cocycle(E2);
    i64 N = E1.A.modulus();
    for (size_t i = 0; i < c1.size(); ++i) c1[i] = mod(c1[i] - c2[i], N);
    return Cohomology(hom_rep(E1.B, E1.A), 1).is_coboundary(c1);
}

Cohomology ext_group(const Rep& A, const Rep& B, int n) { return Cohomology(hom_rep(A, B), n); }

}  // namespace wl
