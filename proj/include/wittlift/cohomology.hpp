#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wittlift/module.hpp"

namespace wl {

// Normalized bar cochains: functions (G \ {1})^n -> M. Coordinates are
// index(g_1..g_n) * dim + i with the first argument most significant.
inline constexpr i64 kCochainBudget = 40'000'000;

i64 cochain_dim(const Rep& M, int n);
i64 tuple_index(const FiniteGroup& G, const std::vector<int>& tuple);
// value of a normalized cochain at any tuple (zero if some entry is the identity)
Vec cochain_value(const Rep& M, int n, const Vec& phi, const std::vector<int>& tuple);
void set_cochain_value(const Rep& M, int n, Vec& phi, const std::vector<int>& tuple, const Vec& v);
// builds a normalized cochain from a function on tuples
Vec make_cochain(const Rep& M, int n, const std::function<Vec(const std::vector<int>&)>& f);

Vec coboundary(const Rep& M, int n, const Vec& phi);
Mat coboundary_matrix(const Rep& M, int n);

// H^n(G, M) for n in 0..3 computed as ker d_n / im d_{n-1} over Z/p^k.
class Cohomology {
public:
    Cohomology(const Rep& M, int n);

    const Rep& module() const { return M_; }
    int degree() const { return n_; }
    // exponents e of the cyclic factors Z/p^e
    const std::vector<int>& factors() const { return sq_->factors(); }
    int num_generators() const { return sq_->num_generators(); }
    int log_size() const { return sq_->log_size(); }
    const std::vector<Vec>& representatives() const { return sq_->representatives(); }
    Vec coordinates(const Vec& cocycle) const;
    bool is_cocycle(const Vec& phi) const;
    bool is_coboundary(const Vec& phi) const;
    // cocycle sum_i c_i rep_i
    Vec cocycle_from(const Vec& coords) const;
    // psi with d psi = phi, if phi is a coboundary
    std::optional<Vec> primitive(const Vec& phi) const;

private:
    Rep M_;
    int n_;
    Mat d_in_;
    std::optional<Subquotient> sq_;
};

// Independent computation for cyclic G via the periodic resolution.
std::vector<int> cyclic_cohomology_factors(const Rep& M, int n);

// Cup product of normalized cochains with pairing P : M (x) N -> Q, a dimQ x (dimM*dimN) matrix.
Vec cup(const Rep& M, int a_deg, const Vec& a, const Rep& N, int b_deg, const Vec& b, const Rep& Q, const Mat& P);
bool is_equivariant_pairing(const Rep& M, const Rep& N, const Rep& Q, const Mat& P);
// multiplication Z/p^k (x) Z/p^k -> Z/p^k for rank-one trivial or character modules
Mat scalar_pairing();

// 0 -> A -j-> E -pi-> B -> 0 with A, E, B possibly over different levels Z/p^k.
struct ShortExact {
    Rep A, E, B;
    Mat j, pi;
    // empty string if the sequence is exact and equivariant
    std::string check() const;
};

// delta : H^n(B) -> H^{n+1}(A) at the cochain level
Vec connecting(const ShortExact& seq, int n, const Vec& c);
// 0 -> Z/p -p-> Z/p^2 -> Z/p -> 0 for a rank-one module over Z/p^2
ShortExact bockstein_sequence(const Rep& L2);

// An extension of free modules at a common level.
struct ExtensionData {
    Rep A, E, B;
    Mat inc, proj;
    std::string check() const;
};

// 1-cocycle in Hom(B,A) (row-major) classifying E
Vec extension_cocycle(const ExtensionData& E);
// A (+) B with g acting by [[A(g), c(g) B(g)], [0, B(g)]]
ExtensionData extension_from_cocycle(const Rep& A, const Rep& B, const Vec& c);
ExtensionData split_extension(const Rep& A, const Rep& B);
ExtensionData baer_sum(const ExtensionData& E1, const ExtensionData& E2);
// along f : A -> A2
ExtensionData pushforward(const Mat& f, const Rep& A2, const ExtensionData& E);
// along g : B2 -> B
ExtensionData pullback(const Mat& g, const Rep& B2, const ExtensionData& E);
bool same_extension_class(const ExtensionData& E1, const ExtensionData& E2);

// Ext^n_G(A, B) for free modules is H^n(G, Hom(A, B)); the non-equivariant Ext^1 vanishes.
Cohomology ext_group(const Rep& A, const Rep& B, int n);

// Nonabelian H^1(G, X(R)) for X in {B_d, U_d, GL_d}.
enum class MatrixShape { Borel, Unipotent, General };
std::string shape_name(MatrixShape s);
MatrixShape parse_shape(const std::string& s);

struct NonabelianH1 {
    MatrixShape shape;
    int d;
    FiniteRing ring = FiniteRing::integers_mod(2);
    std::vector<int> generators;
    // each class: images of the generators, one representative per orbit
    std::vector<std::vector<RingMatrix>> classes;
    std::vector<int> orbit_sizes;
    i64 num_cocycles = 0;
    // flattened generator images of every cocycle -> class index
    std::map<std::vector<i64>, int> class_of;
};

NonabelianH1 nonabelian_h1(const FiniteGroup& G, const RingAction& act, int d, MatrixShape shape,
                           i64 budget = 4'000'000);
// class index in target for each class of source (entrywise reduction of coordinates)
std::vector<int> reduction_map(const NonabelianH1& source, const NonabelianH1& target);

}  // namespace wl
