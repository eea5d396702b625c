#pragma once

// Small-instance generators for lifting tests: every conjugacy class of
// homomorphisms into B_d / GL_d over Z/p^k, as explicit matrices.

#include <string>
#include <utility>
#include <vector>

#include "../../src/lifting/search.hpp"
#include "wittlift/lifting.hpp"

namespace wl::inst {

struct NamedGroup {
    std::string name;
    FiniteGroup G;
};

inline std::vector<NamedGroup> groups_up_to_8() {
    auto C = [](int n) { return FiniteGroup::cyclic(n); };
    auto x = [](const FiniteGroup& a, const FiniteGroup& b) { return FiniteGroup::direct_product(a, b); };
    return {{"C2", C(2)},
            {"C3", C(3)},
            {"C4", C(4)},
            {"C2xC2", x(C(2), C(2))},
            {"C6", C(6)},
            {"S3", FiniteGroup::symmetric(3)},
            {"C8", C(8)},
            {"D4", FiniteGroup::dihedral(4)},
            {"Q8", FiniteGroup::quaternion()},
            {"C2xC2xC2", x(C(2), x(C(2), C(2)))},
            {"C2xC4", x(C(2), C(4))}};
}

// one representative per class; each as the full list of element matrices
inline std::vector<std::vector<Mat>> hom_classes(const FiniteGroup& G, i64 p, int k, int d, MatrixShape shape,
                                                 i64 budget = 4'000'000) {
    FiniteRing R = FiniteRing::integers_mod(ipow(p, k));
    NonabelianH1 H = nonabelian_h1(G, RingAction::trivial(G, R), d, shape, budget);
    std::vector<std::vector<Mat>> out;
    for (const auto& cls : H.classes) {
        std::vector<std::vector<Mat>> cands;
        for (const auto& M : cls) {
            Mat X(d, d);
            for (int i = 0; i < d * d; ++i) X.a[i] = M.e[i][0];
            cands.push_back({X});
        }
        auto rho = search_images(G, G.generators(), cands, d, ipow(p, k), 100);
        if (rho) out.push_back(*rho);
    }
    return out;
}

inline std::vector<FlagRep> flag_classes(const FiniteGroup& G, i64 p, int k, int d, i64 budget = 4'000'000) {
    std::vector<FlagRep> out;
    for (auto& rho : hom_classes(G, p, k, d, MatrixShape::Borel, budget)) out.push_back(FlagRep{G, p, k, d, rho});
    return out;
}

// (E, P) over Z/p^2 with P's first line equal to E's last line
inline std::vector<std::pair<FlagRep, FlagRep>> glue_pairs(const FiniteGroup& G, i64 p, int d, i64 budget = 4'000'000) {
    std::vector<FlagRep> Es = flag_classes(G, p, 2, d, budget), Ps = flag_classes(G, p, 2, 2, budget);
    std::vector<std::pair<FlagRep, FlagRep>> out;
    for (const auto& E : Es)
        for (const auto& P : Ps)
            if (E.line(d - 1).act == P.line(0).act) out.emplace_back(E, P);
    return out;
}

}  // namespace wl::inst
