#include <doctest.h>

#include <random>

#include "../common/instances.hpp"
#include "wittlift/errors.hpp"

using namespace wl;

namespace {

// projective points of F_p^n (first nonzero entry 1)
std::vector<Vec> projective_points(i64 p, int n) {
    std::vector<Vec> out;
    i64 total = ipow(p, n);
    for (i64 idx = 1; idx < total; ++idx) {
        Vec v(n);
        i64 r = idx;
        for (int i = 0; i < n; ++i, r /= p) v[i] = r % p;
        int lead = 0;
        while (v[lead] == 0) ++lead;
        if (v[lead] == 1) out.push_back(v);
    }
    return out;
}

// the character on <v> if v spans an invariant line of V1
std::optional<Rep> eigen_character(const Rep& V1, const Vec& v) {
    int piv = 0;
    while (v[piv] == 0) ++piv;
    Rep L = Rep::trivial(V1.G, V1.p, 1, 1);
    for (int g = 0; g < V1.G.order(); ++g) {
        Vec a = matvec(V1.act[g], v, V1.p);
        i64 l = a[piv];
        for (int i = 0; i < V1.dim; ++i)
            if (a[i] != mulmod(l, v[i], V1.p)) return std::nullopt;
        L.act[g](0, 0) = l;
    }
    return L;
}

// any w = v mod p with V2(g) w = L2(g) w for all g
bool line_lift_exists(const Rep& V2, const Vec& v, const Rep& L2) {
    i64 p = V2.p, N = p * p;
    int n = V2.dim;
    for (i64 idx = 0; idx < ipow(p, n); ++idx) {
        Vec w(n);
        i64 r = idx;
        for (int i = 0; i < n; ++i, r /= p) w[i] = v[i] + p * (r % p);
        bool ok = true;
        for (int g = 0; g < V2.G.order() && ok; ++g) {
            Vec a = matvec(V2.act[g], w, N);
            for (int i = 0; i < n && ok; ++i) ok = a[i] == mulmod(L2.act[g](0, 0), w[i], N);
        }
        if (ok) return true;
    }
    return false;
}

bool is_lift_of(const FlagRep& lift, const FlagRep& base) {
    if (lift.k != 2 || lift.d != base.d || !lift.check().empty()) return false;
    return lift.reduce(1).rho == base.rho;
}

}  // namespace

TEST_SUITE("lifting") {
    TEST_CASE("prescribed line lifts agree with enumeration") {
        int with_lift = 0, without = 0;
        for (auto [G, p] : {std::pair{FiniteGroup::cyclic(2), i64(2)}, {FiniteGroup::cyclic(3), i64(3)},
                            {FiniteGroup::cyclic(4), i64(2)}, {FiniteGroup::cyclic(2), i64(3)}}) {
            for (auto& rho : inst::hom_classes(G, p, 2, 2, MatrixShape::General)) {
                Rep V2{G, p, 2, 2, rho};
                Rep V1 = reduce_rep(V2, 1);
                for (const Vec& v : projective_points(p, 2)) {
                    auto L1 = eigen_character(V1, v);
                    if (!L1) continue;
                    for (const Rep& L2 : character_lifts(*L1)) {
                        LineLift r = lift_extension_prescribed(V1, v, V2, L2);
                        bool expect = line_lift_exists(V2, v, L2);
                        CHECK(r.ok == expect);
                        CHECK(r.obstruction.vanishes == expect);
                        (expect ? with_lift : without)++;
                        if (r.ok) { Vec w = r.inclusion; for (auto& c : w) c = mod(c, p); CHECK(w == v); };
                    }
                    LineLift fr = lift_extension_free(V1, v, V2);
                    bool any = false;
                    for (const Rep& L2 : character_lifts(*L1)) any |= line_lift_exists(V2, v, L2);
                    CHECK(fr.ok == any);
                    if (fr.ok) CHECK(reduce_rep(fr.line, 1).act == L1->act);
                }
            }
        }
        CHECK(with_lift > 0);
        CHECK(without > 0);
    }

    TEST_CASE("trivial group: every line lifts") {
        FiniteGroup G = FiniteGroup::trivial();
        Rep V2 = Rep::trivial(G, 3, 2, 3), V1 = reduce_rep(V2, 1);
        for (const Vec& v : projective_points(3, 3)) {
            CHECK(lift_extension_prescribed(V1, v, V2, Rep::trivial(G, 3, 2, 1)).ok);
            CHECK(lift_extension_free(V1, v, V2).ok);
        }
    }

    TEST_CASE("split extension: Teichmuller inclusion") {
        FiniteGroup G = FiniteGroup::cyclic(2);
        int s = G.generators()[0];
        Rep V2 = Rep::from_generators(G, 3, 2, 2, {{s, Mat::from_rows({{8, 0}, {0, 1}})}});
        Rep V1 = reduce_rep(V2, 1);
        Rep L2 = Rep::from_generators(G, 3, 2, 1, {{s, Mat::from_rows({{8}})}});
        LineLift r = lift_extension_prescribed(V1, {1, 0}, V2, L2);
        REQUIRE(r.ok);
        CHECK(r.inclusion == Vec{1, 0});
    }

    TEST_CASE("prescribed fails where a free kernel lift succeeds") {
        // V_2 = the non-Teichmuller character 1 + 2 on Z/4, kernel line = everything
        FiniteGroup G = FiniteGroup::cyclic(2);
        int s = G.generators()[0];
        Rep V2 = Rep::from_generators(G, 2, 2, 1, {{s, Mat::from_rows({{3}})}});
        Rep V1 = reduce_rep(V2, 1);
        CHECK_FALSE(lift_extension_prescribed(V1, {1}, V2, Rep::trivial(G, 2, 2, 1)).ok);
        LineLift fr = lift_extension_free(V1, {1}, V2);
        REQUIRE(fr.ok);
        CHECK(fr.line.act[s](0, 0) == 3);
    }

    TEST_CASE("line lift preconditions") {
        FiniteGroup G = FiniteGroup::cyclic(2);
        Rep V2 = Rep::trivial(G, 2, 2, 2), V1 = reduce_rep(V2, 1);
        CHECK_THROWS_AS(lift_extension_prescribed(V1, {0, 0}, V2, Rep::trivial(G, 2, 2, 1)), Error);
        Rep wrong = Rep::trivial(G, 2, 1, 2);
        wrong.act[1] = Mat::from_rows({{1, 1}, {0, 1}});
        CHECK_THROWS_AS(lift_extension_prescribed(wrong, {1, 0}, V2, Rep::trivial(G, 2, 2, 1)), Error);
    }

    TEST_CASE("glue obstruction vs brute force, reduction pushes to c2") {
        int nonzero = 0, total = 0, reduced = 0;
        for (auto [G, p] : {std::pair{FiniteGroup::cyclic(2), i64(2)}, {FiniteGroup::cyclic(4), i64(2)},
                            {FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)), i64(2)},
                            {FiniteGroup::cyclic(3), i64(3)}, {FiniteGroup::cyclic(2), i64(3)}}) {
            for (int d : {1, 2}) {
                for (auto& [E, P] : inst::glue_pairs(G, p, d)) {
                    ++total;
                    GlueResult r = glue_obstruction(E, P);
                    auto brute = brute_force_glue(E, P);
                    CHECK(r.c2.vanishes == brute.has_value());
                    if (!r.c2.vanishes) ++nonzero;
                    if (r.witness) {
                        CHECK(r.witness->check().empty());
                        CHECK(r.witness->truncate(d).rho == E.rho);
                    }
                    bool split_E = true, split_P = true;
                    for (int g = 0; g < G.order(); ++g) {
                        for (int i = 0; i + 1 < d; ++i) split_E &= E.rho[g](i, d - 1) == 0;
                        split_P &= P.rho[g](0, 1) == 0;
                    }
                    if ((d > 1 && split_E) || split_P) CHECK(r.c2.vanishes);
                    auto g1 = brute_force_glue(E.reduce(1), P.reduce(1));
                    if (g1) {
                        ReducedObstruction red = reduce_glue_obstruction(E, P, *g1);
                        CHECK(red.pushes_to_c2);
                        CHECK(red.c2.vanishes == r.c2.vanishes);
                        ++reduced;
                    }
                }
            }
        }
        CHECK(total > 50);
        CHECK(reduced > 0);
        MESSAGE("glue instances: " << total << ", nonzero c2: " << nonzero);
    }

    TEST_CASE("glue shape errors") {
        FiniteGroup G = FiniteGroup::cyclic(2);
        auto Es = inst::flag_classes(G, 2, 2, 2);
        auto Ps = inst::flag_classes(G, 2, 2, 2);
        REQUIRE(!Es.empty());
        CHECK_THROWS_AS(glue_obstruction(Es[0], inst::flag_classes(G, 2, 2, 3)[0]), Error);
        CHECK_THROWS_AS(glue_obstruction(Es[0], Ps[0].reduce(1)), Error);
    }

    TEST_CASE("uplift agrees with exhaustive search") {
        for (auto [G, p] : {std::pair{FiniteGroup::cyclic(2), i64(2)}, {FiniteGroup::cyclic(3), i64(2)},
                            {FiniteGroup::cyclic(4), i64(2)}, {FiniteGroup::cyclic(3), i64(3)},
                            {FiniteGroup::cyclic(2), i64(3)}}) {
            for (int d = 1; d <= 3; ++d) {
                for (const FlagRep& f : inst::flag_classes(G, p, 1, d)) {
                    UpliftResult u = uplift_flag(f);
                    auto e = exhaustive_lift(f);
                    CHECK(u.ok == e.has_value());
                    if (u.ok) CHECK(is_lift_of(u.lift, f));
                    if (e) CHECK(is_lift_of(*e, f));
                    CHECK(u.ambient_rank >= d + 2);
                    CHECK(u.ambient_rank == u.ambient_copies * G.order());
                }
            }
        }
    }

    TEST_CASE("uplift base cases") {
        FiniteGroup G = FiniteGroup::cyclic(2);
        int s = G.generators()[0];
        // rank 1 and diagonal: Teichmuller lift
        FlagRep f = FlagRep::from_generators(G, 3, 1, 2, {{s, Mat::from_rows({{2, 0}, {0, 1}})}});
        UpliftResult u = uplift_flag(f);
        REQUIRE(u.ok);
        CHECK(u.lift.rho[s] == Mat::from_rows({{teichmuller_int(2, 3, 2), 0}, {0, 1}}));
        UpliftResult u1 = uplift_flag(f.truncate(1));
        REQUIRE(u1.ok);
        CHECK(u1.lift.rho[s](0, 0) == 8);
        UpliftResult u0 = uplift_flag(FlagRep{G, 3, 1, 0, std::vector<Mat>(2, Mat(0, 0))});
        CHECK(u0.ok);
        CHECK(u0.lift.d == 0);
    }

    TEST_CASE("uplift_step extends a given truncation") {
        FiniteGroup G = FiniteGroup::cyclic(4);
        for (const FlagRep& f : inst::flag_classes(G, 2, 1, 3)) {
            auto e2 = exhaustive_lift(f.truncate(2));
            REQUIRE(e2);
            ObstructionReport rep;
            auto step = uplift_step(f, *e2, &rep);
            if (step) {
                CHECK(is_lift_of(*step, f));
                CHECK(step->truncate(2).rho == e2->rho);
            }
        }
        FlagRep f = inst::flag_classes(G, 2, 1, 2).back();
        FlagRep bad = FlagRep::from_generators(G, 2, 2, 1, {{G.generators()[0], Mat::from_rows({{3}})}});
        if (f.truncate(1).rho != bad.reduce(1).rho) CHECK_THROWS_AS(uplift_step(f, bad), Error);
    }

    TEST_CASE("heisenberg: x = 0 lifts, cup precondition") {
        FiniteGroup G = FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
        auto homs = all_homs(G, 2, 1);
        FiniteGroup C4 = FiniteGroup::cyclic(4);
        for (const Vec& y : all_homs(C4, 2, 1)) CHECK(heisenberg_check(C4, 2, Vec(3, 0), y).liftable);
        Vec zero(G.order() - 1, 0);
        for (const Vec& y : homs) {
            HeisenbergResult r = heisenberg_check(G, 2, zero, y);
            // X = 0 works once y itself lifts to Z/4
            CHECK(r.liftable == !hom_lifts(G, 2, 2, y).empty());
            CHECK(r.liftable == r.u3_liftable);
        }
        // two independent characters of (Z/2)^2 have nonzero cup product
        Vec a, b;
        for (const Vec& h : homs) {
            if (h == zero) continue;
            if (a.empty()) a = h;
            else if (b.empty() && h != a) b = h;
        }
        CHECK_THROWS_AS(heisenberg_check(G, 2, a, b), Error);
    }

    TEST_CASE("heisenberg expansion and U3 agreement") {
        std::mt19937_64 rng(7);
        std::vector<std::pair<FiniteGroup, i64>> cases = {
            {FiniteGroup::cyclic(4), 2}, {FiniteGroup::cyclic(9), 3},
            {FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(4)), 2},
            {FiniteGroup::direct_product(FiniteGroup::cyclic(3), FiniteGroup::cyclic(3)), 3}};
        int checked = 0;
        for (auto& [G, p] : cases) {
            auto H2 = all_homs(G, p, 2), H1 = all_homs(G, p, 1);
            for (int t = 0; t < 8; ++t) {
                const Vec& X0 = H2[rng() % H2.size()];
                const Vec& Y0 = H2[rng() % H2.size()];
                const Vec& u = H1[rng() % H1.size()];
                const Vec& v = H1[rng() % H1.size()];
                ExpansionCheck e = heisenberg_expansion(G, p, X0, Y0, u, v);
                CHECK(e.cochain_identity);
                CHECK(e.class_identity);
                ++checked;
            }
            for (const Vec& x : H1)
                for (const Vec& y : H1) {
                    HeisenbergResult r;
                    try {
                        r = heisenberg_check(G, p, x, y);
                    } catch (const Error& e) {
                        CHECK(e.kind() == ErrorKind::Precondition);
                        continue;
                    }
                    CHECK(r.liftable == r.u3_liftable);
                    CHECK(r.u3_glueings > 0);
                }
        }
        CHECK(checked == 32);
    }
}
