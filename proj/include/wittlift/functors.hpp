#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "wittlift/matrix.hpp"

namespace wl {

using Monomial = std::vector<int>;
// Sparse polynomial with coefficients in Z/N.
using Poly = std::map<Monomial, i64>;

Poly poly_mul(const Poly& a, const Poly& b, i64 N);
Poly poly_pow(const Poly& a, int e, int nvars, i64 N);

// Exponent vectors of length d summing to n, in lexicographic order (e_1^n first).
std::vector<Monomial> monomial_basis(int d, int n);
int monomial_position(const std::vector<Monomial>& basis, const Monomial& m);

struct FreeModule {
    i64 modulus = 2;
    int rank = 0;
    std::vector<std::string> labels;
};

struct LinearMap {
    FreeModule domain, codomain;
    Mat matrix;  // codomain.rank x domain.rank
};

// Tensor product of Frobenius-twisted symmetric powers S^{a_i}(V^{(r_i)}).
struct SymmetricFunctor {
    std::vector<std::pair<int, int>> parts;  // (a_i, r_i)

    i64 degree(i64 p) const;
    bool pure() const { return parts.size() == 1; }
    i64 rank(int d) const;
    std::string to_string() const;
};

FreeModule free_module(i64 modulus, int rank, const std::string& name = "e");

// Phi(V) with its monomial basis; twists need the modulus to be prime.
FreeModule apply_functor(const SymmetricFunctor& phi, const FreeModule& V);

// S^n(f) for a matrix f : V -> W over Z/N.
Mat sym_power_map(const Mat& f, int n, i64 N);

// V^{(1)} -> S^p(V), v (x) 1 -> v^p.
LinearMap frobenius_arrow(const FreeModule& V, i64 p);
// Gamma^p(V) -> V^{(1)}, on the divided-power basis dual to the monomials of V^dual.
LinearMap verschiebung_arrow(const FreeModule& V, i64 p);
// Gram matrix of Gamma^b(V) x S^b(V) -> Det^b(V), rows indexed by divided monomials.
Mat gamma_sym_pairing(int b, const FreeModule& V, i64 p);
// Gamma^b(V) -> tensor_i Gamma^{a_i}(V^{(i)}), a_i the base-p digits of b.
LinearMap theta_map(int b, i64 p, const FreeModule& V);

}  // namespace wl
