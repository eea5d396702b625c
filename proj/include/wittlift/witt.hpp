#pragma once

#include <string>
#include <vector>

#include "wittlift/ring.hpp"

namespace wl {

struct WittVec {
    std::vector<Elem> c;  // (a_0, ..., a_{r-1})
    bool operator==(const WittVec& o) const { return c == o.c; }
    bool operator!=(const WittVec& o) const { return c != o.c; }
};

// Ghost components computed in a free Z/p^K-lift of the base ring.
struct GhostVector {
    FiniteRing lift;
    std::vector<Elem> w;
};

// W_r(A) for a finite ring A whose characteristic is a power of p.
class WittRing {
public:
    WittRing(FiniteRing base, int r, i64 p);
    // p defaults to the prime of the base characteristic
    WittRing(FiniteRing base, int r);

    const FiniteRing& base() const { return base_; }
    int length() const { return r_; }
    i64 p() const { return p_; }
    std::uint64_t size() const;

    WittVec make(std::vector<Elem> coords) const;
    WittVec zero() const;
    WittVec one() const;
    WittVec from_int(i64 n) const;

    WittVec add(const WittVec& x, const WittVec& y) const;
    WittVec neg(const WittVec& x) const;
    WittVec sub(const WittVec& x, const WittVec& y) const;
    WittVec mul(const WittVec& x, const WittVec& y) const;
    WittVec teichmuller(const Elem& a) const;
    WittVec frobenius(const WittVec& x) const;
    WittVec verschiebung(const WittVec& x) const;
    // coordinate truncation W_r -> W_s
    WittVec truncate(const WittVec& x, int s) const;
    GhostVector ghost(const WittVec& x) const;

    // Solve the ghost equations for coordinates: the oracle path used for r > 2.
    WittVec from_ghost(const GhostVector& g) const;
    // Lift of the base used for ghost arithmetic (guard precision r+2 above the base).
    const FiniteRing& ghost_ring() const { return lift_; }

    std::uint64_t index(const WittVec& x) const;
    WittVec element(std::uint64_t idx) const;
    std::vector<WittVec> elements() const;

    std::string to_string(const WittVec& x) const;
    // "(a0,a1,...)" with coordinates in the base ring's own syntax
    WittVec parse(const std::string& s) const;

private:
    void check(const WittVec& x) const;
    GhostVector ghost_of_lift(const std::vector<Elem>& coords) const;

    FiniteRing base_;
    FiniteRing lift_;
    int r_;
    i64 p_;
};

// Map W_r(F_p) -> Z/p^r, (a_i) -> sum p^i T(a_i) with T the Teichmuller representative.
i64 witt_to_integer(const WittRing& W, const WittVec& x);

}  // namespace wl
