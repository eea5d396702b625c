#pragma once

#include <string>
#include <utility>
#include <vector>

#include "wittlift/group.hpp"
#include "wittlift/matrix.hpp"
#include "wittlift/ring.hpp"

namespace wl {

// Free Z/p^k-module with a left G-action, matrices for every group element.
struct Rep {
    FiniteGroup G = FiniteGroup::trivial();
    i64 p = 2;
    int k = 1;
    int dim = 0;
    std::vector<Mat> act;

    i64 modulus() const { return ipow(p, k); }
    const Mat& operator()(int g) const { return act[g]; }

    // Extends generator images to all of G by walking the Cayley graph and
    // rejects assignments that violate a relation.
    static Rep from_generators(const FiniteGroup& G, i64 p, int k, int dim,
                               const std::vector<std::pair<int, Mat>>& images);
    static Rep trivial(const FiniteGroup& G, i64 p, int k, int dim = 1);
    static Rep regular(const FiniteGroup& G, i64 p, int k);
    // empty string if act is a homomorphism into GL_dim(Z/p^k)
    std::string check() const;
};

Rep direct_sum(const Rep& A, const Rep& B);
Rep tensor(const Rep& A, const Rep& B);
Rep dual(const Rep& A);
// Hom(A,B) with (g f) = g_B f g_A^{-1}; coordinates are row-major in f.
Rep hom_rep(const Rep& A, const Rep& B);
Rep restrict_rep(const Rep& M, const Subgroup& H);
// M is a representation of H.group; right coset representatives define the basis
Rep induce(const Rep& M, const FiniteGroup& G, const Subgroup& H);
// reduce coefficients mod p^k2 (k2 <= k)
Rep reduce_rep(const Rep& M, int k2);
// Same matrices read modulo p^k2 for k2 >= k; the caller vouches for the relations.
Rep relevel(const Rep& M, int k2);
bool is_equivariant(const Mat& f, const Rep& A, const Rep& B);
// log_p |Hom_G(A,B)|
int hom_log_size(const Rep& A, const Rep& B);

// Ring automorphisms sigma_g of A given as Z/N-matrices on the monomial basis.
struct RingAction {
    FiniteRing ring = FiniteRing::integers_mod(2);
    std::vector<Mat> aut;

    static RingAction trivial(const FiniteGroup& G, const FiniteRing& A);
    // g acts by Frob^{e(g)} (lifted to the unique Frobenius lift in the unramified case)
    static RingAction frobenius_powers(const FiniteGroup& G, const FiniteRing& A, const std::vector<int>& e);
    Elem apply(int g, const Elem& a) const;
    std::string check(const FiniteGroup& G) const;
};

// Matrix of x -> x^{p^times}, or of its Hensel lift when A is an unramified
// extension of Z/p^k presented by a monic polynomial.
Mat ring_frobenius_matrix(const FiniteRing& A, int times);

// Square matrix over a FiniteRing, row-major.
struct RingMatrix {
    int n = 0;
    std::vector<Elem> e;
    const Elem& at(int i, int j) const { return e[static_cast<size_t>(i) * n + j]; }
    Elem& at(int i, int j) { return e[static_cast<size_t>(i) * n + j]; }
};

RingMatrix ring_identity(const FiniteRing& A, int n);
RingMatrix ring_matmul(const FiniteRing& A, const RingMatrix& X, const RingMatrix& Y);

// Free A-module of rank n with g(a m) = sigma_g(a) g(m); g acts as m -> M_g sigma_g(m).
class SemilinearModule {
public:
    SemilinearModule(const FiniteGroup& G, RingAction action, int rank,
                     const std::vector<std::pair<int, RingMatrix>>& generator_matrices);

    const FiniteGroup& group() const { return rep_.G; }
    const FiniteRing& ring() const { return action_.ring; }
    const RingAction& action() const { return action_; }
    int rank() const { return rank_; }
    const RingMatrix& matrix(int g) const { return mats_[g]; }
    // restriction of scalars to Z/char(A)
    const Rep& rep() const { return rep_; }
    std::vector<std::pair<int, RingMatrix>> generator_matrices() const;

private:
    RingAction action_;
    int rank_;
    std::vector<RingMatrix> mats_;
    Rep rep_;
};

// Pullback along Frob^m: entries of every matrix raised to the p^m-th power.
SemilinearModule frobenius_twist(const SemilinearModule& M, int m);

// Product in the skew group algebra A[G]: (a e_g)(b e_h) = a g(b) e_{gh}.
using SkewElement = std::vector<std::pair<Elem, int>>;
std::pair<Elem, int> skew_product(const RingAction& act, const FiniteGroup& G, const Elem& a, int g,
                                  const Elem& b, int h);
SkewElement skew_multiply(const RingAction& act, const FiniteGroup& G, const SkewElement& x, const SkewElement& y);

// Permutation module over Z/p^k with basis lines e_x, x in a G-set X:
// g e_x = phi(x,g) e_{g(x)}, with phi a unit cocycle.
struct PermutationModule {
    FiniteGroup G = FiniteGroup::trivial();
    i64 p = 2;
    int k = 1;
    std::vector<std::vector<int>> perm;  // perm[g][x] = g(x)
    std::vector<std::vector<i64>> phi;   // phi[g][x] unit scalar

    int size() const { return perm.empty() ? 0 : static_cast<int>(perm[0].size()); }
    Rep rep() const;
    // empty string if perm is an action and phi satisfies phi(x,gh) = phi(h(x),g) phi(x,h)
    std::string check() const;
    static PermutationModule from_generators(const FiniteGroup& G, i64 p, int k, int nx,
                                             const std::vector<std::pair<int, std::vector<int>>>& perms,
                                             const std::vector<std::pair<int, std::vector<i64>>>& scalars);
    // Teichmuller lift of the cocycle to Z/p^k2, k2 >= k, with k == 1
    PermutationModule teichmuller_lift(int k2) const;
};

// Lift an equivariant map between permutation modules over Z/p to Z/p^k2 by
// Teichmuller-lifting the entries of each monomial component.
Mat lift_permutation_morphism(const Mat& f, const PermutationModule& src, const PermutationModule& dst, int k2);

}  // namespace wl
