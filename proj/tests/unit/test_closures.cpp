#include <doctest.h>

#include <random>
#include <set>

#include "wittlift/closures.hpp"
#include "wittlift/errors.hpp"

using namespace wl;

namespace {

// |Z^1(H, Z/p(chi))| by brute force over all functions H -> Z/p
i64 count_cocycles(const FiniteGroup& G, const std::vector<int>& H, const CyclotomicModule& chi) {
    i64 p = chi.p;
    int n = static_cast<int>(H.size());
    i64 total = ipow(p, n), count = 0;
    std::vector<int> pos(G.order(), -1);
    for (int i = 0; i < n; ++i) pos[H[i]] = i;
    for (i64 idx = 0; idx < total; ++idx) {
        std::vector<i64> c(n);
        i64 r = idx;
        for (int i = 0; i < n; ++i, r /= p) c[i] = r % p;
        bool ok = true;
        for (int a = 0; a < n && ok; ++a)
            for (int b = 0; b < n && ok; ++b) {
                int g = H[a], h = H[b];
                ok = c[pos[G.mul(g, h)]] == mod(c[a] + mod(chi.chi[g], p) * c[b], p);
            }
        count += ok;
    }
    return count;
}

// sum over the pair catalog of [G:H]
i64 expected_coordinates(const FiniteGroup& G, const CyclotomicModule& chi) {
    i64 s = 0;
    for (const auto& H : G.subgroups()) s += count_cocycles(G, H, chi) * (G.order() / static_cast<i64>(H.size()));
    return s;
}

bool projection_surjective(const ClosureGroup& S) {
    for (int g = 0; g < S.base().order(); ++g) {
        ClosureElement e = S.section(g);
        if (!S.contains(e) || S.project(e) != g) return false;
    }
    return true;
}

}  // namespace

TEST_SUITE("closures") {
    TEST_CASE("trivial group gives Z/p") {
        for (i64 p : {2, 3, 5}) {
            FiniteGroup T = FiniteGroup::trivial();
            ClosureGroup S = sigma_cyclotomic(T, CyclotomicModule::trivial(T, p));
            CHECK(S.order() == p);
            FiniteGroup A = closure_as_group(S);
            CHECK(A.order() == p);
            // cyclic: some element has order p
            bool cyclic = false;
            for (int g = 0; g < A.order(); ++g) cyclic |= A.element_order(g) == p;
            CHECK(cyclic);
        }
    }

    TEST_CASE("order formula against cocycle counting") {
        for (auto [G, p] : {std::pair{FiniteGroup::cyclic(2), i64(2)}, {FiniteGroup::cyclic(3), i64(2)},
                            {FiniteGroup::cyclic(2), i64(3)}, {FiniteGroup::cyclic(3), i64(3)}}) {
            CyclotomicModule chi = CyclotomicModule::trivial(G, p);
            ClosureGroup S = sigma_cyclotomic(G, chi);
            i64 e = expected_coordinates(G, chi);
            CHECK(S.log_p_fiber() == e);
            CHECK(S.order() == G.order() * ipow(p, static_cast<int>(e)));
            CHECK(projection_surjective(S));
        }
        CHECK(sigma_cyclotomic(FiniteGroup::cyclic(2), CyclotomicModule::trivial(FiniteGroup::cyclic(2), 2)).order() == 32);
        CHECK(sigma_cyclotomic(FiniteGroup::cyclic(3), CyclotomicModule::trivial(FiniteGroup::cyclic(3), 2)).order() == 48);
    }

    TEST_CASE("nontrivial character") {
        FiniteGroup G = FiniteGroup::cyclic(2);
        CyclotomicModule chi = CyclotomicModule::from_generators(G, 3, {{G.generators()[0], 8}});
        CHECK(chi.check(G).empty());
        ClosureGroup S = sigma_cyclotomic(G, chi);
        CHECK(S.log_p_fiber() == expected_coordinates(G, chi));
        CHECK(S.check_axioms().ok);
        CHECK(verify_level_one_lifting(S, chi).ok);
        CHECK_THROWS_AS(CyclotomicModule::from_generators(G, 3, {{G.generators()[0], 4}}), Error);
    }

    TEST_CASE("group law") {
        for (auto [G, p] : {std::pair{FiniteGroup::cyclic(2), i64(2)}, {FiniteGroup::cyclic(3), i64(2)}}) {
            ClosureGroup S = sigma_cyclotomic(G, CyclotomicModule::trivial(G, p));
            auto rep = S.check_axioms();
            CHECK(rep.ok);
            CHECK(rep.exhaustive_pairs);
            CHECK(rep.exhaustive_triples);
            CHECK(S.kernel_is_elementary());
            std::mt19937_64 rng(3);
            auto els = S.elements();
            std::set<ClosureElement> distinct(els.begin(), els.end());
            CHECK(static_cast<i64>(distinct.size()) == *S.order());
            for (int t = 0; t < 200; ++t) {
                const auto& a = els[rng() % els.size()];
                CHECK(S.mul(a, S.inv(a)) == S.identity());
                CHECK(S.mul(S.identity(), a) == a);
            }
        }
    }

    TEST_CASE("level one lifting") {
        for (auto [G, p] : {std::pair{FiniteGroup::cyclic(2), i64(2)}, {FiniteGroup::cyclic(3), i64(2)},
                            {FiniteGroup::trivial(), i64(3)}}) {
            CyclotomicModule chi = CyclotomicModule::trivial(G, p);
            LevelOneReport r = verify_level_one_lifting(sigma_cyclotomic(G, chi), chi);
            CHECK(r.ok);
            CHECK_FALSE(r.witnesses.empty());
            for (const auto& w : r.witnesses) CHECK(w.lifts);
        }
    }

    TEST_CASE("cyclotomic at level one") {
        auto holds = [](const FiniteGroup& G, i64 p) {
            return is_cyclotomic_at_level(G, CyclotomicModule::trivial(G, p)).holds;
        };
        CHECK(holds(FiniteGroup::trivial(), 2));
        CHECK(holds(FiniteGroup::cyclic(3), 2));
        CHECK(holds(FiniteGroup::cyclic(2), 3));
        CHECK_FALSE(holds(FiniteGroup::cyclic(2), 2));
        CHECK_FALSE(holds(FiniteGroup::cyclic(3), 3));
        CyclotomicReport r = is_cyclotomic_at_level(FiniteGroup::cyclic(2), CyclotomicModule::trivial(FiniteGroup::cyclic(2), 2));
        bool found = false;
        for (const auto& row : r.table)
            if (row.subgroup.size() == 2) {
                found = true;
                CHECK(row.h1_mod_p == 1);
                CHECK(row.image_rank == 0);
            }
        CHECK(found);
    }

    TEST_CASE("smooth closure") {
        FiniteGroup T = FiniteGroup::trivial();
        CHECK(sigma_smooth(T, 3).order() == 9);
        CHECK(sigma_smooth(T, 2).order() == 4);
        FiniteGroup C2 = FiniteGroup::cyclic(2);
        ClosureGroup S = sigma_smooth(C2, 2);
        CHECK(S.smooth());
        auto rep = S.check_axioms(1 << 24, 10'000'000, 50'000);
        CHECK(rep.ok);
        CHECK(rep.exhaustive_pairs);
        CHECK(projection_surjective(S));
        CHECK_THROWS_AS(verify_level_one_lifting(S, CyclotomicModule::trivial(C2, 2)), Error);
    }

    TEST_CASE("iteration and budgets") {
        FiniteGroup T = FiniteGroup::trivial();
        IteratedClosure it = sigma_iterate(T, CyclotomicModule::trivial(T, 2), 2);
        CHECK(it.orders == std::vector<std::string>{"1", "2", "32"});
        CHECK_THROWS_AS(sigma_iterate(T, CyclotomicModule::trivial(T, 2), 3), Error);
        ClosureOptions tight;
        tight.max_coordinates = 3;
        try {
            sigma_cyclotomic(FiniteGroup::cyclic(2), CyclotomicModule::trivial(FiniteGroup::cyclic(2), 2), tight);
            FAIL("expected a resource error");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::Resource);
        }
        CHECK_THROWS_AS(sigma_cyclotomic(T, CyclotomicModule::trivial(T, 4)), Error);
    }
}
