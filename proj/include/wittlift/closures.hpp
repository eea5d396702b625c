#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wittlift/group.hpp"
#include "wittlift/module.hpp"

namespace wl {

// Z/p^2(1) given by a character chi: G -> (Z/p^2)^x; Z/p(1) is its reduction.
struct CyclotomicModule {
    i64 p = 2;
    std::vector<i64> chi;  // chi[g] mod p^2

    static CyclotomicModule trivial(const FiniteGroup& G, i64 p);
    // generator images extended along the Cayley graph
    static CyclotomicModule from_generators(const FiniteGroup& G, i64 p, const std::vector<std::pair<int, i64>>& images);
    std::string check(const FiniteGroup& G) const;
    Rep rep(const FiniteGroup& G, int k) const;  // k = 1 or 2
};

// One factor of the fibered product. Points carry Z/p^2 coordinates; g moves
// them monomially: (g.x)_i = coef[g][i] * x_{src[g][i]}. Smooth blocks append a
// G_m coordinate lambda and multiply as (t, l)(t', l') = (t + l t', l l').
struct ClosureBlock {
    std::vector<int> subgroup;       // H, or the stabiliser of the base point of X = G/H
    std::vector<i64> cocycle;        // values on G (smooth) or on H (cyclotomic), flattened per element
    int npoints = 0;
    bool smooth = false;
    std::vector<std::vector<int>> src;
    std::vector<std::vector<i64>> coef;
    int offset = 0;                  // first coordinate
    int width() const { return npoints + (smooth ? 1 : 0); }
};

struct ClosureElement {
    int g = 0;
    std::vector<i64> x;  // mod p^2
    bool operator==(const ClosureElement& o) const { return g == o.g && x == o.x; }
    bool operator<(const ClosureElement& o) const { return g != o.g ? g < o.g : x < o.x; }
};

class ClosureGroup {
public:
    ClosureGroup(FiniteGroup G, i64 p, bool smooth, std::vector<ClosureBlock> blocks);

    const FiniteGroup& base() const { return G_; }
    i64 p() const { return p_; }
    bool smooth() const { return smooth_; }
    const std::vector<ClosureBlock>& blocks() const { return blocks_; }
    int coordinates() const { return ncoords_; }
    // |sigma| = |G| p^coordinates
    int log_p_fiber() const { return ncoords_; }
    std::optional<i64> order() const;
    std::string order_string() const;

    // tautological cocycle C_G(g), mod p
    const std::vector<i64>& cocycle(int g) const { return C_[g]; }
    bool contains(const ClosureElement& e) const;
    ClosureElement identity() const;
    ClosureElement mul(const ClosureElement& a, const ClosureElement& b) const;
    ClosureElement inv(const ClosureElement& a) const;
    int project(const ClosureElement& e) const { return e.g; }
    // the lift of g whose coordinates are the least residues of C_G(g)
    ClosureElement section(int g) const;
    // (identity, p e_i) for ordinary coordinates, (identity, 1 + p) on a lambda slot
    ClosureElement kernel_generator(int i) const;
    std::vector<ClosureElement> generators() const;
    // all elements; Resource error above `limit`
    std::vector<ClosureElement> elements(i64 limit = 1 << 16) const;
    std::string element_to_string(const ClosureElement& e) const;

    // Group axioms: closure and inverses on all pairs, associativity on all
    // triples up to `exhaustive_triples`, else on a fixed pseudorandom sample.
    struct AxiomReport {
        bool ok = true;
        bool exhaustive_pairs = false, exhaustive_triples = false;
        i64 pairs = 0, triples = 0;
        std::string failure;
    };
    AxiomReport check_axioms(i64 pair_limit = 1 << 24, i64 exhaustive_triples = 10'000'000,
                             i64 sampled_triples = 200'000) const;
    // elements over the identity form an abelian p-group of the predicted order
    bool kernel_is_elementary() const;

private:
    FiniteGroup G_;
    i64 p_;
    bool smooth_;
    std::vector<ClosureBlock> blocks_;
    int ncoords_ = 0;
    std::vector<std::vector<i64>> C_;
    void act(int g, const std::vector<i64>& x, std::vector<i64>& out, i64 N) const;
};

struct ClosureOptions {
    // subgroups to index; empty means every subgroup of G
    std::vector<std::vector<int>> subgroups;
    int max_coordinates = 1 << 16;
};

ClosureGroup sigma_cyclotomic(const FiniteGroup& G, const CyclotomicModule& chi, const ClosureOptions& opt = {});
ClosureGroup sigma_smooth(const FiniteGroup& G, i64 p, const ClosureOptions& opt = {});

// Multiplication table of a small closure (order <= FiniteGroup::kMaxOrder).
FiniteGroup closure_as_group(const ClosureGroup& S, std::vector<ClosureElement>* elements = nullptr);

struct LiftWitness {
    int block = 0;
    int coordinate = 0;   // the witness is (h, x) -> x[coordinate]
    i64 products_checked = 0;
    bool exhaustive = false;
    bool lifts = false;
};
struct LevelOneReport {
    bool ok = true;
    std::vector<LiftWitness> witnesses;
};
LevelOneReport verify_level_one_lifting(const ClosureGroup& S, const CyclotomicModule& chi, i64 samples = 4000);

struct SubgroupLifting {
    std::vector<int> subgroup;
    int h1_mod_p = 0;      // dim H^1(H, Z/p(1))
    int image_rank = 0;    // rank of the image of H^1(H, Z/p^2(1))
    bool surjective = false;
};
struct CyclotomicReport {
    bool holds = true;
    std::vector<SubgroupLifting> table;
};
CyclotomicReport is_cyclotomic_at_level(const FiniteGroup& G, const CyclotomicModule& chi);

// sigma^i for i <= 2; the second step needs |sigma| <= FiniteGroup::kMaxOrder
struct IteratedClosure {
    std::vector<std::string> orders;  // |G|, |sigma(G)|, ...
    std::vector<int> log_p_fibers;
};
IteratedClosure sigma_iterate(const FiniteGroup& G, const CyclotomicModule& chi, int levels,
                              const ClosureOptions& opt = {});

}  // namespace wl
