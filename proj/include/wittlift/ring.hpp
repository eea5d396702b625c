#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "wittlift/arith.hpp"

namespace wl {

// Ring element: coordinates in the standard monomial basis of the ring.
using Elem = std::vector<i64>;

// A finite commutative ring presented as a free Z/N-algebra with a monomial
// basis. Three presentations are supported: Z/N itself, Z/N[t]/(f) with f
// monic, and Z/N[x_1..x_m]/(monomials). All of them lift to any modulus by
// reinterpreting the integer structure constants.
class FiniteRing {
public:
    enum class Kind { Integers, Univariate, Monomial };

    static FiniteRing integers_mod(i64 n);
    // coefficients of a monic f, lowest degree first; f need not be irreducible.
    static FiniteRing univariate(i64 n, std::vector<i64> modulus);
    // F_{p^f} using the lexicographically first irreducible monic of degree f.
    static FiniteRing galois_field(i64 p, int f);
    // each entry of ideal is an exponent vector of a monomial generator;
    // every variable needs a pure power among the generators.
    static FiniteRing monomial_quotient(i64 n, int nvars, std::vector<std::vector<int>> ideal);

    // Same presentation over Z/modulus.
    FiniteRing lift(i64 modulus) const;

    Kind kind() const { return kind_; }
    i64 characteristic() const { return n_; }
    int dim() const { return dim_; }
    // Number of elements; saturates at UINT64_MAX.
    std::uint64_t size() const;
    // The prime dividing the characteristic (0 when N is not a prime power).
    i64 prime() const { return p_; }
    int char_exponent() const { return k_; }
    bool is_field() const;
    const std::vector<i64>& modulus_poly() const { return poly_; }
    const std::vector<std::vector<int>>& monomials() const { return monos_; }
    const std::vector<std::vector<int>>& ideal() const { return ideal_; }

    Elem zero() const { return Elem(dim_, 0); }
    Elem one() const;
    Elem from_int(i64 x) const;
    Elem basis(int i) const;

    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem neg(const Elem& a) const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem scale(const Elem& a, i64 c) const;
    Elem pow(Elem a, std::uint64_t e) const;
    // x -> x^p; a ring endomorphism only in characteristic p.
    Elem frobenius(const Elem& a, int times = 1) const;
    // Inverse of the Frobenius on a finite field (x -> x^{p^{f-1}}).
    Elem frobenius_inverse(const Elem& a, int times = 1) const;
    bool is_zero(const Elem& a) const;
    bool is_unit(const Elem& a) const;
    Elem inverse(const Elem& a) const;
    // Exact division of every coordinate by d (caller guarantees divisibility).
    Elem divide_exact(const Elem& a, i64 d) const;
    // Reduce coordinates modulo m (m | N) viewing the result in `target`.
    Elem reduce_to(const Elem& a, const FiniteRing& target) const;

    std::uint64_t index(const Elem& a) const;
    Elem element(std::uint64_t idx) const;
    std::vector<Elem> elements() const;

    std::string to_string(const Elem& a) const;
    // Accepts an integer, or a coordinate list "[c0,c1,...]".
    Elem parse(const std::string& s) const;
    std::string describe() const;

    bool operator==(const FiniteRing& o) const;
    bool operator!=(const FiniteRing& o) const { return !(*this == o); }

    // Exhaustive ring-axiom check; returns an empty string on success.
    std::string check_axioms(std::uint64_t max_size = 512) const;

private:
    void build_table();

    Kind kind_ = Kind::Integers;
    i64 n_ = 2;
    i64 p_ = 0;
    int k_ = 0;
    int dim_ = 1;
    int nvars_ = 0;
    std::vector<i64> poly_;
    std::vector<std::vector<int>> ideal_;
    std::vector<std::vector<int>> monos_;
    // table_[i*dim+j] = basis_i * basis_j
    std::vector<Elem> table_;
};

}  // namespace wl
