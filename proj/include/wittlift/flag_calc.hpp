#pragma once

#include <memory>
#include <string>
#include <vector>

#include "wittlift/functors.hpp"

namespace wl {

// O(a) = L_1^{a_1} (x) ... (x) L_D^{a_D}, with L_i = V_i / V_{i-1}.
using Weight = std::vector<i64>;

std::string weight_to_string(const Weight& a);
Weight parse_weight(const std::string& s);  // "1,0,-1"
i64 total_degree(const Weight& a);
bool weakly_increasing(const Weight& a);

enum class Verdict { Vanishes, NoConclusion, Unknown };
const char* verdict_name(Verdict v);

Verdict nonincreasing_vanishes(const Weight& a);

struct P1Cohomology {
    int n = 0, d = 0;
    bool direct_image_zero = true;
    bool r1_zero = true;
    i64 r1_rank = 0;
    std::string r1;  // "0" or the divided-power expression
};
P1Cohomology p1_bundle_cohomology(int n, int d);

// h^0 and h^1 of O(-n) on P^1 over F_p from the two-chart Cech complex.
struct CechP1 {
    i64 h0 = 0, h1 = 0;
};
CechP1 cech_p1(int n, i64 p);

// Formal bundle expressions on the complete flag variety of a rank-D bundle.
struct FiltExpr;
using Expr = std::shared_ptr<const FiltExpr>;

struct FiltExpr {
    enum class Kind { Line, Quot, Dual, Tensor, Sym, Gamma, Frob, Split };
    Kind kind = Kind::Line;
    Weight weight;            // Line
    int n = 0, m = 0;         // Quot: V_n / V_m
    int r = 0;                // Frob: twist count; Split: Witt length
    int degree = 0;           // Gamma
    SymmetricFunctor functor; // Sym
    std::vector<Expr> args;   // Split: args[0] = kernel V, optional args[1] = middle E
};

Expr line(const Weight& a);
Expr sub(int n);  // V_n
Expr quot(int n, int m);
Expr dual(Expr e);
Expr tensor(std::vector<Expr> es);
Expr sym(const SymmetricFunctor& phi, Expr e);
Expr sym(int a, Expr e);
Expr gamma(int a, Expr e);
Expr frob(int r, Expr e);
// g_*(O) of the splitting scheme of 0 -> V -> E -> O -> 0, Witt length r.
// With the middle term given, the degree <= a step is S^a(E^dual) (r = 1 only).
Expr split(Expr kernel, int r = 1, Expr middle = nullptr);

std::string to_string(const Expr& e);
void check_expr(const Expr& e, int D);
// Graded line pieces of a finite expression (Split pieces up to total index `bound`).
std::vector<Weight> graded_weights(const Expr& e, int D, i64 p, int bound);

struct GoodFiltration {
    std::vector<std::vector<int>> index;  // lexicographically increasing
    std::vector<Expr> pieces;
    bool truncated = false;

    size_t size() const { return pieces.size(); }
    std::string check() const;
};

GoodFiltration singleton_filtration(Expr e);
GoodFiltration filtration_tensor(const GoodFiltration& F, const GoodFiltration& G);
// Pieces descent[j2] (x) F1[j1], indexed by (j2, j1).
GoodFiltration filtration_compose(const GoodFiltration& F1, const GoodFiltration& F2,
                                  const std::vector<Expr>& descent);
GoodFiltration splitting_filtration(Expr kernel, int r, int bound);

struct DevissageResult {
    Verdict verdict = Verdict::Unknown;
    std::vector<Weight> expanded;  // line pieces inside the bound
    std::vector<std::string> certificates;
    std::string diagnostic;
};

DevissageResult devissage_decide(const Expr& e, int degree, int bound, int D, i64 p);
DevissageResult devissage_decide(const Weight& a, int degree, i64 p);

// dim H^0(Fl(F_p^D), O(a)) for D <= 3.
i64 h0_oracle(const Weight& a, i64 p);

struct QMinus1 {
    int value = 0;
    bool theta_bijective = false;
    int gram_rank = 0, gram_size = 0;
    bool theta_decisive = false;  // theta alone rules out value 1
    bool consistent = false;
};
QMinus1 qminus1_dimension(int b, i64 p);

struct HomCheckReport {
    int expected = 0;
    bool pure = false;
    int pieces_checked = 0;
    bool oracle_consistent = true;  // every piece the argument needs to vanish has h0 = 0
    std::string note;
};
// W = V_n / V_m in a flag of rank D; Hom(W^{(r)}, S^{a_1} W (x) ... (x) S^{a_s} W).
HomCheckReport hom_lemma_check(int D, int m, int n, int r, const std::vector<int>& partition, i64 p);

// Equivariant polynomial sections of Hom(L_{d+1}^{(r)}, V_{d+1}^{(r)}) in the coordinates
// of m splittings of 0 -> V_d -> V_{d+1} -> L_{d+1} -> 0; degree <= p^r.
struct SplittingSectionsReport {
    int dimension = 0;
    int unknowns = 0;
    bool frobenius_sections_found = false;
};
SplittingSectionsReport splitting_sections(int D, int d, int r, int m, i64 p);

}  // namespace wl
