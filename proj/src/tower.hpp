#pragma once

#include <memory>
#include <string>
#include <vector>

#include "errors.hpp"
#include "ramification.hpp"
#include "series.hpp"

namespace lfp::lf {

struct StepSpec {
  enum class Kind { Unramified, Tame, ArtinSchreier };
  Kind kind;
  int param;
};

// A chain of explicit extensions of the base field F_{p^residue_deg}((t)).
// Valuations are normalized so the base uniformizer has valuation 1.
struct TowerDescriptor {
  int p = 3;
  int residue_deg = 1;
  std::vector<StepSpec> steps;
  std::string name;

  std::string key() const;  // canonical string form
};

struct Aut {
  std::int64_t frob = 0;  // power of the absolute Frobenius on coefficients
  Series pi_img;          // image of the top uniformizer
};

// Nontrivial additive character of the base field, as an exponent map:
// Lambda(x) = unit * Tr_{k/F_p}(x_0) / p in Q/Z where x_0 is the t^0
// coefficient.  Trivial on m_F, not on O_F, so its conductor is 0.
struct AdditiveCharacter {
  int p = 3;
  int unit = 1;  // in (Z/p)^x
  Rat conductor = Rat(0);
};

class Tower {
 public:
  static std::shared_ptr<const Tower> realize(const TowerDescriptor& d, std::int64_t prec = 0);

  const TowerDescriptor& descriptor() const { return desc_; }
  int num_levels() const { return static_cast<int>(levels_.size()); }
  std::int64_t prec() const { return prec_; }
  const FqCtx* field(int level) const { return levels_[level].k; }
  const FqCtx* top() const { return levels_.back().k; }

  std::int64_t e(int base_level = 0) const;  // e(L / E_base)
  int degree(int base_level = 0) const;      // [L : E_base]
  Rat val(const Series& x) const;            // base-normalized valuation

  int gal_size() const { return static_cast<int>(gal_.size()); }
  const Aut& aut(int i) const { return gal_[i]; }
  Series apply(int aut_idx, const Series& x) const;
  int compose(int i, int j) const { return mul_table_[i][j]; }
  int aut_inverse(int i) const;
  bool aut_in_inertia(int i) const;
  std::vector<int> gal_fixing(int level) const;
  bool is_galois_over(int level) const;

  RatOrInf depth_of_aut(int aut_idx, int base_level = 0) const;
  ram::RamDatum ramdatum(int base_level = 0) const;

  const Series& uniformizer_in_top(int level) const { return levels_[level].pi_in_top; }
  Series lift(const Series& x, int level) const;
  Series to_level(const Series& x, int level) const;

  Series trace(const Series& x, int base_level = 0) const;
  Series norm(const Series& x, int base_level = 0) const;

  // Lambda_{E_level}(z) = Lambda(Tr_{E_level/E_0}(z)), exact in Q/Z.
  Rat character_value(const AdditiveCharacter& chr, const Series& z, int level) const;

 private:
  struct Level {
    const FqCtx* k;
    Series pi_in_top;
  };

  Tower() = default;
  void build(const TowerDescriptor& d, std::int64_t prec);
  void close_group(int expected_order);
  int find_aut(const Aut& a) const;

  TowerDescriptor desc_;
  std::int64_t prec_ = 0;
  std::vector<Level> levels_;
  std::vector<Aut> gal_;
  std::vector<std::vector<int>> mul_table_;
};

// Working precision ladder: 40 top-uniformizer units, doubling on precision
// errors up to 320, then a hard failure.
constexpr std::int64_t kDefaultPrec = 40;
constexpr std::int64_t kMaxPrec = 320;

template <class Fn>
auto with_precision_retry(const TowerDescriptor& d, Fn&& fn) {
  std::int64_t prec = kDefaultPrec;
  while (true) {
    try {
      return fn(*Tower::realize(d, prec));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Precision || prec >= kMaxPrec) throw;
      prec *= 2;
    }
  }
}

struct TraceImageReport {
  Rat shift;
  bool surjective;
};
TraceImageReport trace_image_level(const Tower& tw, const Rat& s, int base_level = 0);

struct NormGradedReport {
  Rat target_grade;
  bool surjective;
  bool additive_match;
  bool additive_meaningful;  // false when s <= ell
};
NormGradedReport norm_graded(const Tower& tw, const Rat& s, int base_level = 0);

bool check_tfae_field(const Tower& tw, const Rat& s, int base_level = 0);

// Exponent of Lambda_{E_level}(v * x).
Rat character_pair(const Tower& tw, const AdditiveCharacter& chr, const Series& v,
                   const Series& x, int level);

// max { grade g : some graded element at g pairs nontrivially }; equals
// -c_{E_level/E_0} for the catalog extensions.
Rat character_conductor(const Tower& tw, const AdditiveCharacter& chr, int level);

std::vector<TowerDescriptor> builtin_catalog();
TowerDescriptor catalog_lookup(const std::string& name);
std::string descriptor_to_string(const TowerDescriptor& d);

// Bounded search for L/E_0 with n | e(L/E_0) and u(L/E_0) < eps; returns the
// first qualifying catalog entry (catalog order).  Throws NotFound when the
// finite catalog has no member with both properties.
TowerDescriptor find_adapted_extension(const std::vector<TowerDescriptor>& catalog,
                                       std::int64_t n, const Rat& eps);

// Descriptor of the compositum L * M where M/E_0 is tame totally ramified of
// degree m (supported for chains unram* [tame] [artin_schreier]).
TowerDescriptor compositum_with_tame(const TowerDescriptor& d, int m);

}  // namespace lfp::lf
