#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "plfun.hpp"
#include "rat.hpp"

namespace lfp::ram {

// Combinatorial shadow of the inertia group of a finite Galois extension
// L/E inside a tower over F: a finite group with a distinguished normal
// subgroup (the inertia) and a depth function on its nontrivial elements.
//
// element 0 is the identity.  Depths of non-identity inertia elements are
// rationals >= 0 (0 for tame elements); the identity has depth +infinity.
struct RamDatum {
  std::vector<std::string> elements;
  std::vector<std::vector<int>> mul;  // mul[a][b] = a*b
  std::vector<int> inertia;           // sorted ids, a normal subgroup
  std::map<int, Rat> depth;           // non-identity inertia -> depth
  std::int64_t e = 1;                 // e(L/E) = |inertia|
  std::int64_t e_base = 1;            // e(E/F)

  int order() const { return static_cast<int>(elements.size()); }
  int inverse_of(int a) const;
  RatOrInf depth_of(int a) const;  // identity -> infinity; non-inertia -> error
  // Depth granularity: every depth lies in (1/(e*e_base)) Z.
  Rat granularity() const { return Rat(1, e * e_base); }

  // Full invariant check (group axioms, normality, symmetric depths,
  // level sets are subgroups, granularity).  Throws on violation.
  void validate() const;
};

struct Breaks {
  Rat ell;  // last lower break
  Rat u;    // last upper break
  Rat c;    // conductor shift
};

// {1} u {sigma : depth(sigma) >= r}; a subgroup of the inertia.
std::vector<int> lower_group(const RamDatum& d, const Rat& r);

PLFun hh_phi(const RamDatum& d);
PLFun hh_psi(const RamDatum& d);

// ell = sup of depths (0 if inertia trivial), c = sum of depths, u = phi(ell).
// Checks c == u - ell and throws an invariant error otherwise.
Breaks breaks(const RamDatum& d);

std::vector<int> upper_group(const RamDatum& d, const Rat& s);

// Quotient datum for K/E where K is the fixed field of the normal subgroup
// n_ids.  Coset depths come from the Herbrand pushforward; this is only
// valid combinatorially when each coset carries a constant depth multiset,
// otherwise the caller must realize the tower and quotient there.
RamDatum quotient_datum(const RamDatum& d, const std::vector<int>& n_ids);

struct TfaeFlags {
  bool b1;  // c == s - psi(s)
  bool b2;  // psi(s) >= ell or s >= u
  bool b3;  // lower_group(psi(s)+) trivial
  bool all_equal() const { return b1 == b2 && b2 == b3; }
};

TfaeFlags check_tfae_combinatorial(const RamDatum& d, const Rat& s);

// Small constructors used by tests and the abstract bridge from the cft
// module (cyclic group of given order, all non-identity depths equal).
RamDatum make_cyclic_datum(int n, const Rat& depth, std::int64_t e_base = 1);
RamDatum make_trivial_datum();

// Abelian datum from an upper-numbering filtration: subgroup chain
// H^s for integer s with the last break d; depths are psi-pullbacks of the
// upper breaks.  `filtration[s]` = element ids with upper depth >= s.
RamDatum datum_from_upper_filtration(const std::vector<std::string>& elements,
                                     const std::vector<std::vector<int>>& mul,
                                     const std::map<Rat, std::set<int>>& filtration,
                                     std::int64_t e_base = 1);

}  // namespace lfp::ram
