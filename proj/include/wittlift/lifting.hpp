#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wittlift/cohomology.hpp"

namespace wl {

// A complete flag of free Z/p^k-modules with trivial action on scalars,
// i.e. a homomorphism G -> B_d(Z/p^k) for the standard flag.
struct FlagRep {
    FiniteGroup G = FiniteGroup::trivial();
    i64 p = 2;
    int k = 1;
    int d = 0;
    std::vector<Mat> rho;  // one matrix per group element

    static FlagRep from_generators(const FiniteGroup& G, i64 p, int k, int d,
                                   const std::vector<std::pair<int, Mat>>& images);
    static FlagRep from_rep(const Rep& R);
    i64 modulus() const { return ipow(p, k); }
    Rep rep() const;
    // character on the i-th graded line (0-based)
    Rep line(int i) const;
    // the sub-flag V_1 c ... c V_s
    FlagRep truncate(int s) const;
    FlagRep reduce(int k2) const;
    // the same flag tensored with a character
    FlagRep twist(const Rep& chi) const;
    std::vector<Mat> generator_images() const;
    // empty if upper triangular and a homomorphism
    std::string check() const;
};

struct ObstructionReport {
    int stage = 0;
    int degree = 2;
    bool vanishes = true;
    std::vector<int> group_factors;  // invariant factors of the cohomology group
    Vec class_coords;
    Vec cocycle;
    std::string note;
};

// Lifting an invariant line L_1 = <v1> c V_1 to given Z/p^2 lifts.
struct LineLift {
    bool ok = false;
    Vec inclusion;  // v over Z/p^2 with V_2(g) v = L_2(g) v
    Rep line;
    ObstructionReport obstruction;  // in H^1(G, Hom(L_1, V_1))
};

LineLift lift_extension_prescribed(const Rep& V1, const Vec& v1, const Rep& V2, const Rep& L2);
// searches all lifts of the kernel line; the obstruction reported is the one for the Teichmuller line
LineLift lift_extension_free(const Rep& V1, const Vec& v1, const Rep& V2);
// number of v = v1 mod p with V_2(g) v = L_2(g) v, by enumeration
i64 count_line_lifts(const Rep& V1, const Vec& v1, const Rep& V2, const Rep& L2);

// all lifts to Z/p^2 of a character with values in F_p^*, Teichmuller lift first
std::vector<Rep> character_lifts(const Rep& L1);

struct GlueResult {
    Rep module;  // V_{d-1} (x) L_{d+1}^dual over Z/p^2
    ObstructionReport c2;
    std::optional<FlagRep> witness;  // glued flag when c2 = 0
};

// E is a rank-d flag, P a rank-2 flag with P's first line equal to E's last line.
GlueResult glue_obstruction(const FlagRep& E, const FlagRep& P);
std::optional<FlagRep> brute_force_glue(const FlagRep& E, const FlagRep& P);

struct ReducedObstruction {
    ObstructionReport c1;  // in H^2(G, (V_{d-1} (x) L_{d+1}^dual) mod p)
    ObstructionReport c2;
    bool pushes_to_c2 = false;
};

// glued1 is a rank-(d+1) flag over Z/p extending E mod p and P mod p.
ReducedObstruction reduce_glue_obstruction(const FlagRep& E, const FlagRep& P, const FlagRep& glued1);

struct UpliftResult {
    bool ok = false;
    FlagRep lift;                             // over Z/p^2 when ok
    std::vector<ObstructionReport> stages;    // one per stage
    int ambient_copies = 0;                   // n with D = n |G| >= d + 2
    int ambient_rank = 0;
    int frobenius_twist = 0;
};

// extends a lift of the first d lines of rho1 by one line, searching over lift classes
std::optional<FlagRep> uplift_step(const FlagRep& rho1, const FlagRep& lift_d, ObstructionReport* report = nullptr);
UpliftResult uplift_flag(const FlagRep& rho1);

// Exhaustive: some homomorphism into B_d (or U_d) over Z/p^2 reducing to rho1.
std::optional<FlagRep> exhaustive_lift(const FlagRep& rho1, MatrixShape shape = MatrixShape::Borel,
                                       i64 budget = 50'000'000);

struct HeisenbergResult {
    bool liftable = false;
    Vec X, Y;  // witnesses: lifts with X cup Y = 0
    int num_lifts_x = 0, num_lifts_y = 0;
    bool u3_liftable = false;  // some U_3(F_p) homomorphism with superdiagonal (x, y) lifts
    int u3_glueings = 0;       // number of U_3(F_p) homomorphisms with that superdiagonal
    int u3_lifted = 0;         // how many of them lift
};

// x, y: normalized 1-cocycles of G with values in Z/p (trivial action)
HeisenbergResult heisenberg_check(const FiniteGroup& G, i64 p, const Vec& x, const Vec& y);

// With X = X0 - p u and Y = Y0 - p v: X cup Y = X0 cup Y0 - p (u cup y + x cup v),
// checked on cochains and on classes in H^2(G, Z/p^2).
struct ExpansionCheck {
    bool cochain_identity = false;
    bool class_identity = false;
};
ExpansionCheck heisenberg_expansion(const FiniteGroup& G, i64 p, const Vec& X0, const Vec& Y0, const Vec& u,
                                    const Vec& v);

// homomorphisms G -> Z/p^k lifting a homomorphism into Z/p (as normalized 1-cochains)
std::vector<Vec> hom_lifts(const FiniteGroup& G, i64 p, int k, const Vec& x);
std::vector<Vec> all_homs(const FiniteGroup& G, i64 p, int k);

}  // namespace wl
