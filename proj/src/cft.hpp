#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ramification.hpp"
#include "rat.hpp"

namespace lfp::cft {

using i64 = std::int64_t;

// Smith normal form D = U * A * V of an integer matrix whose columns are
// relation vectors; only U (and its inverse) are tracked since V acts on
// relations.  diag has one entry per ambient generator.
struct SnfResult {
  std::vector<std::vector<i64>> U, Uinv;
  std::vector<i64> diag;
};
SnfResult smith_normal_form(std::vector<std::vector<i64>> A, int n);

// F^x / <U, 1 + t^N O> for F = F_p((t)), presented on the ambient
// generators [t, zeta, 1+t^1, ..., 1+t^{N-1}] with the p-power relations
// (1+t^i)^p = 1+t^{ip}.  S is given as explicit members plus an optional
// tail {n : n >= tail_start}.
struct GenSet {
  std::vector<int> members;
  int tail_start = 0;  // 0 = no tail
  bool contains(int n) const;
  int max_listed() const;
};

class UnitQuotient {
 public:
  UnitQuotient(int p, const GenSet& S, int N,
               const std::vector<std::string>& extra_gen_words = {});

  int p() const { return p_; }
  int N() const { return N_; }
  const std::vector<i64>& invariant_factors() const { return inv_; }
  i64 order() const;

  // Ambient coordinates: exponent vector on [t, zeta, g_1, ..., g_{N-1}].
  int ambient_dim() const { return N_ + 1; }
  std::vector<i64> ambient_of_word(const std::string& word) const;
  std::vector<i64> class_of(const std::vector<i64>& ambient) const;
  std::vector<i64> class_of_word(const std::string& word) const;

  std::vector<std::vector<i64>> all_elements() const;
  std::vector<i64> add(const std::vector<i64>& a, const std::vector<i64>& b) const;
  std::vector<i64> zero_class() const;

  // Quotient by additional generators, with the natural surjection usable
  // via project_through.
  UnitQuotient intermediate(const std::vector<std::string>& extra_gen_words) const;
  std::vector<i64> project_through(const UnitQuotient& smaller,
                                   const std::vector<i64>& cls) const;

  // Subgroup generated by the classes of the given ambient vectors.
  std::set<std::vector<i64>> subgroup(const std::vector<std::vector<i64>>& ambient_gens) const;

 private:
  int p_, N_;
  GenSet S_;
  std::vector<std::string> own_words_;
  std::vector<i64> inv_;                  // invariant factors > 1
  std::vector<std::vector<i64>> proj_;    // surviving rows of U
  std::vector<std::vector<i64>> uinv_;    // full Uinv (ambient preimages)
  std::vector<int> surviving_rows_;
};

struct AbelianRamification {
  std::map<Rat, std::set<std::vector<i64>>> filtration;  // s -> image of F^x_{>=s}
  std::vector<Rat> breaks;
  Rat last_break;  // d; 0 when the filtration is trivial
};

AbelianRamification upper_filtration(const UnitQuotient& uq);

// RamDatum of the abelian extension cut out by the quotient: depths are
// psi-pullbacks of the upper breaks.  Asserts the Hasse-Arf integrality of
// the upper breaks.
ram::RamDatum ramdatum_of_quotient(const UnitQuotient& uq);

struct CounterexampleReport {
  int p;
  std::vector<i64> quotient;         // invariant factors
  Rat d;                             // last upper break
  i64 gamma_d_order;
  bool gamma_d_cyclic;
  std::vector<i64> uprime_quotient;  // invariant factors of F^x/U'
  Rat uprime_break;                  // single upper break of the U' quotient
  bool surjection_iso;               // Gamma^d -> Gal(E'/F) bijective
};

// Full numeric content of the SL_p counterexample for a given prime.
CounterexampleReport counterexample_report(int p);

}  // namespace lfp::cft
