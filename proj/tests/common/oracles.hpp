#pragma once

// Oracles shared by unit and acceptance tests. They avoid the bar resolution.

#include "wittlift/module.hpp"

namespace wl::oracle {

inline int log_kernel(const Mat& A, i64 p, int k) { return Smith(A, p, k).kernel_log_size(); }
inline int log_image(const Mat& A, i64 p, int k) { return k * A.cols - log_kernel(A, p, k); }

// log_p |H^n(Z/m, M)| from the periodic resolution (s - 1, N, s - 1, N, ...).
inline int cyclic_log_size(const Rep& M, int n) {
    const FiniteGroup& G = M.G;
    i64 q = M.modulus();
    int s = G.generators().empty() ? 0 : G.generators()[0];
    Mat T = matsub(M.act[s], Mat::identity(M.dim, q), q);
    Mat N(M.dim, M.dim);
    int g = 0;
    for (int i = 0; i < G.order(); ++i, g = G.mul(g, s)) N = matadd(N, M.act[g], q);
    if (n == 0) return log_kernel(T, M.p, M.k);
    if (n % 2 == 1) return log_kernel(N, M.p, M.k) - log_image(T, M.p, M.k);
    return log_kernel(T, M.p, M.k) - log_image(N, M.p, M.k);
}

// every dim x dim matrix over Z/q with A^m = 1, as a module for Z/m
inline std::vector<Mat> cyclic_actions(int m, i64 q, int dim) {
    std::vector<Mat> out;
    int cells = dim * dim;
    i64 total = 1;
    for (int i = 0; i < cells; ++i) total *= q;
    for (i64 code = 0; code < total; ++code) {
        Mat A(dim, dim);
        i64 c = code;
        for (auto& x : A.a) {
            x = c % q;
            c /= q;
        }
        Mat P = Mat::identity(dim, q);
        for (int i = 0; i < m; ++i) P = matmul(P, A, q);
        if (P == Mat::identity(dim, q)) out.push_back(A);
    }
    return out;
}

}  // namespace wl::oracle
