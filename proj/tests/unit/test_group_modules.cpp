#include <doctest.h>

#include <random>

#include "wittlift/errors.hpp"
#include "wittlift/module.hpp"

using namespace wl;

namespace {

i64 trace(const Mat& A, i64 N) {
    i64 t = 0;
    for (int i = 0; i < A.rows; ++i) t = mod(t + A(i, i), N);
    return t;
}

std::vector<int> subgroup_of_order(const FiniteGroup& G, int n) {
    for (auto& H : G.subgroups())
        if (static_cast<int>(H.size()) == n) return H;
    return {};
}

// regular, trivial, or their sum: relations hold by construction
Rep random_rep(const FiniteGroup& G, i64 p, std::mt19937_64& rng) {
    switch (rng() % 3) {
        case 0: return Rep::trivial(G, p, 1, 1);
        case 1: return Rep::regular(G, p, 1);
        default: return direct_sum(Rep::regular(G, p, 1), Rep::trivial(G, p, 1, 1));
    }
}

}  // namespace

TEST_SUITE("group_modules") {
    TEST_CASE("group axioms") {
        for (auto G : {FiniteGroup::cyclic(6), FiniteGroup::dihedral(4), FiniteGroup::quaternion(), FiniteGroup::symmetric(3),
                       FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(4))})
            CHECK(G.check_axioms().empty());
        CHECK(FiniteGroup::dihedral(4).order() == 8);
        CHECK(FiniteGroup::symmetric(4).order() == 24);
        CHECK(FiniteGroup::from_permutations({{1, 2, 0}, {1, 0, 2}}).order() == 6);
        CHECK_THROWS_AS(FiniteGroup::from_table({{0, 1}, {1, 1}}), Error);
        // subgroup lattice of S3: 1, three of order 2, A3, S3
        CHECK(FiniteGroup::symmetric(3).subgroups().size() == 6);
        CHECK_THROWS_AS(make_subgroup(FiniteGroup::cyclic(4), {0, 1}), Error);
    }

    TEST_CASE("skew group algebra") {
        FiniteGroup G = FiniteGroup::cyclic(3);
        FiniteRing A = FiniteRing::integers_mod(5);
        RingAction triv = RingAction::trivial(G, A);
        for (int g = 0; g < 3; ++g)
            for (int h = 0; h < 3; ++h) {
                auto [c, k] = skew_product(triv, G, {2}, g, {4}, h);
                CHECK(c == Elem{3});
                CHECK(k == G.mul(g, h));
            }
        SkewElement x{{{1}, 1}, {{3}, 2}};
        SkewElement one{{{1}, 0}};
        auto y = skew_multiply(triv, G, one, x);
        std::sort(y.begin(), y.end(), [](auto& a, auto& b) { return a.second < b.second; });
        CHECK(y == x);

        FiniteRing F4 = FiniteRing::galois_field(2, 2);
        FiniteGroup C2 = FiniteGroup::cyclic(2);
        RingAction sq = RingAction::frobenius_powers(C2, F4, {0, 1});
        Elem alpha = F4.basis(1);
        auto [c, k] = skew_product(sq, C2, alpha, 1, alpha, 1);
        CHECK(c == F4.mul(alpha, F4.mul(alpha, alpha)));
        CHECK(c == F4.one());
        CHECK(k == 0);
    }

    TEST_CASE("semilinear modules validate relations") {
        FiniteRing F4 = FiniteRing::galois_field(2, 2);
        FiniteGroup C2 = FiniteGroup::cyclic(2);
        Elem alpha = F4.basis(1);
        RingMatrix m{1, {alpha}};
        SemilinearModule M(C2, RingAction::frobenius_powers(C2, F4, {0, 1}), 1, {{1, m}});
        CHECK(M.rank() == 1);
        CHECK_THROWS_AS(SemilinearModule(C2, RingAction::trivial(C2, F4), 1, {{1, m}}), Error);
    }

    TEST_CASE("induction") {
        FiniteGroup G = FiniteGroup::symmetric(3);
        Subgroup one = make_subgroup(G, {0});
        Rep ind = induce(Rep::trivial(one.group, 3, 1), G, one);
        CHECK(ind.dim == 6);
        CHECK(ind.check().empty());
        // over Z/7 the regular character is |G| at 1 and 0 elsewhere
        Rep ind7 = induce(Rep::trivial(one.group, 7, 1), G, one);
        for (int g = 0; g < 6; ++g) CHECK(trace(ind7.act[g], 7) == (g == 0 ? 6 : 0));
        CHECK(ind7.check().empty());

        Subgroup all = make_subgroup(G, subgroup_of_order(G, 6));
        Rep R = Rep::regular(G, 3, 1);
        Rep same = induce(restrict_rep(R, all), G, all);
        for (int g = 0; g < 6; ++g) CHECK(same.act[g] == R.act[g]);

        Subgroup H = make_subgroup(G, subgroup_of_order(G, 2));
        Rep M2 = Rep::trivial(H.group, 3, 1, 2);
        CHECK(induce(M2, G, H).dim == 6);
    }

    TEST_CASE("induction and restriction are adjoint") {
        std::mt19937_64 rng(4);
        for (auto G : {FiniteGroup::cyclic(4), FiniteGroup::symmetric(3), FiniteGroup::dihedral(3),
                       FiniteGroup::cyclic(6)}) {
            for (auto& Hel : G.subgroups()) {
                Subgroup H = make_subgroup(G, Hel);
                for (i64 p : {2, 3}) {
                    Rep N = random_rep(G, p, rng);
                    Rep M = Rep::regular(H.group, p, 1);
                    CHECK(hom_log_size(N, induce(M, G, H)) == hom_log_size(restrict_rep(N, H), M));
                }
            }
        }
    }

    TEST_CASE("permutation modules") {
        FiniteGroup C2 = FiniteGroup::cyclic(2);
        auto P = PermutationModule::from_generators(C2, 3, 1, 2, {{1, {1, 0}}}, {});
        CHECK(P.check().empty());
        Mat id = Mat::identity(2);
        CHECK(lift_permutation_morphism(id, P, P, 2) == Mat::identity(2));
        CHECK(lift_permutation_morphism(Mat(2, 2), P, P, 2).is_zero());
        Mat swap = Mat::from_rows({{0, 1}, {1, 0}});
        Mat lifted = lift_permutation_morphism(swap, P, P, 2);
        CHECK(lifted == swap);
        CHECK(reduce(lifted, 3) == swap);
        CHECK(is_equivariant(lifted, P.teichmuller_lift(2).rep(), P.teichmuller_lift(2).rep()));
        Mat bad = Mat::from_rows({{1, 0}, {0, 0}});
        CHECK_THROWS_AS(lift_permutation_morphism(bad, P, P, 2), Error);

        // a line with the sign character; its Teichmuller lift is a permutation module on one point
        auto L = PermutationModule::from_generators(C2, 3, 1, 1, {{1, {0}}}, {{1, {2}}});
        auto L2 = L.teichmuller_lift(2);
        CHECK(L2.size() == 1);
        CHECK(L2.phi[1][0] == 8);
        CHECK(L2.check().empty());
    }

    TEST_CASE("frobenius twist") {
        FiniteGroup C2 = FiniteGroup::cyclic(2);
        FiniteRing F3 = FiniteRing::integers_mod(3);
        RingMatrix m{2, {{0}, {1}, {1}, {0}}};
        SemilinearModule M(C2, RingAction::trivial(C2, F3), 2, {{1, m}});
        CHECK(frobenius_twist(M, 1).matrix(1).e == M.matrix(1).e);

        FiniteRing F4 = FiniteRing::galois_field(2, 2);
        Elem a = F4.basis(1);
        FiniteGroup C3 = FiniteGroup::cyclic(3);
        // alpha has order 3 in F4^x, so diag(alpha, 1) defines a C3 action
        RingMatrix d{2, {a, F4.zero(), F4.zero(), F4.one()}};
        SemilinearModule D(C3, RingAction::trivial(C3, F4), 2, {{1, d}});
        auto T = frobenius_twist(D, 1);
        CHECK(T.matrix(1).at(0, 0) == F4.mul(a, a));
        CHECK(T.matrix(1).at(1, 1) == F4.one());
        CHECK(frobenius_twist(frobenius_twist(D, 1), 1).matrix(1).e == frobenius_twist(D, 2).matrix(1).e);
    }
}
