#include <doctest.h>

#include <random>

#include "wittlift/errors.hpp"
#include "wittlift/functors.hpp"

using namespace wl;

namespace {

Mat random_mat(int r, int c, i64 p, std::mt19937_64& rng) {
    Mat M(r, c);
    for (auto& x : M.a) x = static_cast<i64>(rng() % p);
    return M;
}

// dimension of Gamma^{a}(V) for V of rank 2
int gamma_dim2(int a) { return a + 1; }

}  // namespace

TEST_SUITE("linear_fp") {
    TEST_CASE("functor ranks") {
        FreeModule V = free_module(3, 2);
        CHECK(apply_functor(SymmetricFunctor{{{2, 0}}}, V).rank == 3);
        CHECK(apply_functor(SymmetricFunctor{{{1, 1}}}, V).rank == 2);
        SymmetricFunctor phi{{{2, 0}, {1, 1}}};
        CHECK(apply_functor(phi, V).rank == 6);
        CHECK(phi.degree(3) == 5);
        CHECK_FALSE(phi.pure());
        for (int d = 1; d <= 4; ++d)
            for (int n = 0; n <= 6; ++n) {
                CHECK(static_cast<i64>(monomial_basis(d, n).size()) == binomial(n + d - 1, d - 1));
                CHECK(SymmetricFunctor{{{n, 0}}}.rank(d) == binomial(n + d - 1, d - 1));
            }
        CHECK_THROWS_AS(apply_functor(SymmetricFunctor{{{1, 1}}}, free_module(4, 2)), Error);
    }

    TEST_CASE("frobenius arrow") {
        FreeModule L = free_module(5, 1);
        auto F1 = frobenius_arrow(L, 5);
        CHECK(rank_mod_p(F1.matrix, 5) == 1);
        CHECK(F1.matrix.rows == 1);

        auto F = frobenius_arrow(free_module(2, 2), 2);
        auto basis = monomial_basis(2, 2);
        CHECK(F.matrix(monomial_position(basis, {2, 0}), 0) == 1);
        CHECK(F.matrix(monomial_position(basis, {1, 1}), 0) == 0);

        auto F3 = frobenius_arrow(free_module(3, 2), 3);
        CHECK(rank_mod_p(F3.matrix, 3) == 2);
        CHECK(F3.matrix.rows == 4);
    }

    TEST_CASE("frobenius arrow is natural") {
        std::mt19937_64 rng(3);
        for (i64 p : {2, 3})
            for (int t = 0; t < 20; ++t) {
                int dv = 1 + static_cast<int>(rng() % 3), dw = 1 + static_cast<int>(rng() % 3);
                Mat f = random_mat(dw, dv, p, rng);
                auto FV = frobenius_arrow(free_module(p, dv), p);
                auto FW = frobenius_arrow(free_module(p, dw), p);
                // over F_p the twist f^{(1)} has the same entries
                CHECK(matmul(sym_power_map(f, static_cast<int>(p), p), FV.matrix, p) == matmul(FW.matrix, f, p));
            }
    }

    TEST_CASE("verschiebung arrow") {
        auto V2 = verschiebung_arrow(free_module(2, 2), 2);
        auto basis = monomial_basis(2, 2);
        CHECK(V2.matrix(0, monomial_position(basis, {2, 0})) == 1);
        CHECK(V2.matrix == transpose(frobenius_arrow(free_module(2, 2), 2).matrix));
        CHECK(rank_mod_p(verschiebung_arrow(free_module(3, 2), 3).matrix, 3) == 2);
    }

    TEST_CASE("gamma-sym pairing") {
        FreeModule V = free_module(2, 2);
        CHECK(rank_mod_p(gamma_sym_pairing(1, V, 2), 2) == 2);
        CHECK(rank_mod_p(gamma_sym_pairing(2, free_module(3, 2), 3), 3) == 3);
        CHECK(rank_mod_p(gamma_sym_pairing(2, V, 2), 2) == 3);
        for (i64 p : {2, 3})
            for (int b = 0; b <= 8; ++b) CHECK(rank_mod_p(gamma_sym_pairing(b, free_module(p, 2), p), p) == b + 1);
    }

    TEST_CASE("theta map") {
        for (i64 p : {2, 3}) {
            FreeModule V = free_module(p, 2);
            auto th = theta_map(static_cast<int>(p - 1), p, V);
            CHECK(th.matrix == Mat::identity(static_cast<int>(p), p));
        }
        auto t3 = theta_map(3, 2, free_module(2, 2));
        CHECK(t3.domain.rank == 4);
        CHECK(t3.codomain.rank == 4);
        CHECK(rank_mod_p(t3.matrix, 2) == 4);
        auto t2 = theta_map(2, 2, free_module(2, 2));
        CHECK(t2.domain.rank == 3);
        CHECK(t2.codomain.rank == 2);

        // theta is onto, so bijectivity is the dimension count b+1 = prod (a_i + 1)
        for (i64 p : {2, 3})
            for (int b = 0; b <= 9; ++b) {
                auto th = theta_map(b, p, free_module(p, 2));
                int target = 1;
                for (int a : digits(b, p)) target *= gamma_dim2(a);
                int rk = rank_mod_p(th.matrix, p);
                CHECK(rk == th.codomain.rank);
                bool bij = rk == th.domain.rank && rk == th.codomain.rank;
                CHECK(bij == (b + 1 == target));
                if (p == 2) {
                    bool power = ((b + 1) & b) == 0;
                    CHECK(bij == power);
                }
            }
        // p = 3: single-digit b and b = 5 are bijective as well as b = 3^s - 1
        std::vector<int> bij3;
        for (int b = 0; b <= 9; ++b) {
            auto th = theta_map(b, 3, free_module(3, 2));
            int rk = rank_mod_p(th.matrix, 3);
            if (rk == th.domain.rank && rk == th.codomain.rank) bij3.push_back(b);
        }
        CHECK(bij3 == std::vector<int>{0, 1, 2, 5, 8});
    }

    TEST_CASE("smith normal form over Z/p^k") {
        std::mt19937_64 rng(9);
        for (int t = 0; t < 30; ++t) {
            Mat A = random_mat(3, 4, 9, rng);
            Smith S(A, 3, 2);
            // log |ker| + log |im| = log |domain|
            int im = 0;
            for (int v : S.vals()) im += 2 - v;
            CHECK(S.kernel_log_size() + im == 2 * 4);
        }
    }

    TEST_CASE("kernel and inverse") {
        std::mt19937_64 rng(2);
        for (int t = 0; t < 30; ++t) {
            Mat A = random_mat(3, 5, 5, rng);
            Mat K = kernel_mod_p(A, 5);
            CHECK(K.cols == 5 - rank_mod_p(A, 5));
            CHECK(matmul(A, K, 5).is_zero());
            Mat B = random_mat(3, 3, 4, rng);
            if (auto Bi = inverse(B, 2, 2)) CHECK(matmul(B, *Bi, 4) == Mat::identity(3, 4));
        }
    }
}
