#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "wittlift/arith.hpp"

namespace wl {

// Finite group stored as a full multiplication table; element 0 is the identity.
class FiniteGroup {
public:
    static constexpr int kMaxOrder = 512;

    static FiniteGroup from_table(std::vector<std::vector<int>> table, std::vector<std::string> names = {});
    // permutations of {0..m-1}, given as image lists
    static FiniteGroup from_permutations(const std::vector<std::vector<int>>& gens);
    static FiniteGroup trivial() { return cyclic(1); }
    static FiniteGroup cyclic(int n);
    static FiniteGroup direct_product(const FiniteGroup& A, const FiniteGroup& B);
    static FiniteGroup dihedral(int n);  // order 2n
    static FiniteGroup quaternion();
    static FiniteGroup symmetric(int n);

    int order() const { return n_; }
    int identity() const { return 0; }
    int mul(int a, int b) const { return table_[static_cast<size_t>(a) * n_ + b]; }
    int inv(int a) const { return inv_[a]; }
    int pow(int a, i64 e) const;
    int element_order(int a) const;
    const std::string& name(int a) const { return names_[a]; }
    int find(const std::string& name) const;
    const std::vector<int>& generators() const { return gens_; }
    bool is_abelian() const;

    // sorted element list of the subgroup generated by gens
    std::vector<int> closure(const std::vector<int>& gens) const;
    bool is_subgroup(const std::vector<int>& elems) const;
    // all subgroups as sorted element lists, computed once
    const std::vector<std::vector<int>>& subgroups() const;
    std::vector<std::vector<int>> table() const;

    // empty string if the axioms hold
    std::string check_axioms() const;

private:
    FiniteGroup() = default;
    void finish();

    struct Memo {
        std::once_flag once;
        std::vector<std::vector<int>> subgroups;
    };

    int n_ = 0;
    std::vector<int> table_, inv_, gens_;
    std::vector<std::string> names_;
    std::shared_ptr<Memo> memo_;
};

struct Subgroup {
    FiniteGroup group;
    std::vector<int> embedding;  // subgroup element -> parent element
};

// errors with a structural error if elems is not a subgroup
Subgroup make_subgroup(const FiniteGroup& G, std::vector<int> elems);
// representatives t of the right cosets H t, first one is the identity
std::vector<int> right_coset_reps(const FiniteGroup& G, const std::vector<int>& H);

}  // namespace wl
