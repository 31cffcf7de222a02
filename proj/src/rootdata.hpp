#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fq.hpp"
#include "rat.hpp"

namespace lfp::rd {

// Split type-A root data: GL_n and SL_n.  SL_n is handled inside the gl_n
// ambient (trace-zero constraint); the dual-torus coordinate rank is n for
// GL_n and n-1 for SL_n.
struct RootDatum {
  enum class Type { GL, SL };
  Type type = Type::GL;
  int n = 2;

  int rank() const { return type == Type::GL ? n : n - 1; }
  std::vector<std::pair<int, int>> roots() const;  // alpha_{ij} = e_i - e_j, 0-based
  std::string str() const;
  bool operator==(const RootDatum& o) const { return type == o.type && n == o.n; }
};

RootDatum parse_root_datum(const std::string& s);  // "GL2", "SL2", ...

// Point of the standard apartment, as n rational coordinates (SL_n: modulo
// the diagonal center direction).
using Apt = std::vector<Rat>;

Rat root_value(const Apt& x, int i, int j);  // <alpha_ij, x> = x_i - x_j
std::int64_t apartment_denominator(const Apt& x);

// A line of a Moy-Prasad graded piece in the trace-form coordinates: the
// label (i,j,c) stands for E_ij (x) pi^c; a torus label k stands for the
// k-th diagonal basis vector (GL: E_kk; SL: E_kk - E_nn) at power s.
struct GradedLabel {
  bool is_torus = false;
  int k = 0;
  int i = 0, j = 0;
  Rat c = Rat(0);

  bool operator==(const GradedLabel& o) const;
  bool operator<(const GradedLabel& o) const;
  std::string str() const;
};

struct GradedModel {
  RootDatum rd;
  Apt x;
  Rat s;
  std::int64_t e = 1;
  const lf::FqCtx* field = nullptr;
  std::vector<GradedLabel> labels;  // torus labels first, then roots in lex order

  int dim() const { return static_cast<int>(labels.size()); }
  int index_of(const GradedLabel& l) const;  // -1 when absent
};

// Model of g*(F^u)_{x=s} at finite coefficient level: torus lines at
// integral s, root lines at integral powers c = s - <alpha, x>.
GradedModel graded_piece(const RootDatum& rd, const Apt& x, const Rat& s, std::int64_t e,
                         const lf::FqCtx* field);

struct ReductiveQuotient {
  std::vector<std::pair<int, int>> roots;      // roots with integral value at x
  std::vector<std::vector<int>> weyl;          // W_x as permutations of 0..n-1
};
ReductiveQuotient reductive_quotient(const RootDatum& rd, const Apt& x);

// Label-preserving shift: multiplication by a scalar of valuation v moves
// power labels by v (and the torus power along with the grade).
GradedModel shift_by_scalar(const GradedModel& m, const Rat& v);

// Affine Weyl element (w, lambda) acting on the apartment by x -> w(x - lambda);
// the matrix representative is P_w diag(pi^lambda).
struct AffineWeyl {
  std::vector<int> w;                // permutation, w[i] = image of i
  std::vector<std::int64_t> lambda;  // cocharacter (SL: sum 0)

  static AffineWeyl identity(int n);
  AffineWeyl compose(const AffineWeyl& other) const;  // this after other
  bool operator==(const AffineWeyl& o) const { return w == o.w && lambda == o.lambda; }
  bool operator<(const AffineWeyl& o) const {
    return w != o.w ? w < o.w : lambda < o.lambda;
  }
};

std::vector<AffineWeyl> affine_weyl_ball(const RootDatum& rd, int length_bound,
                                         size_t cap = 5000);

struct Transported {
  Apt x;
  GradedModel model;
  std::vector<lf::fq_t> coeffs;
};
Transported act_affine_weyl(const RootDatum& rd, const AffineWeyl& aw, const GradedModel& m,
                            const std::vector<lf::fq_t>& coeffs);

// --- dual-torus torsion points -------------------------------------------

// Entries are exact elements of Q/Z in [0,1); vectors have length rank().
using Torsion = std::vector<Rat>;

std::vector<Torsion> weyl_orbit(const RootDatum& rd, const Torsion& t);
Torsion torsion_scale(const Torsion& t, std::int64_t q);

// Canonical representative (lex-least orbit member) when the orbit is stable
// under multiplication by q, else nullopt.
std::optional<Torsion> torsion_canonical(const RootDatum& rd, const Torsion& t, std::int64_t q);

// All canonical classes with the q-power condition, denominators bounded by
// denominator_bound (0 = derive q^{exponent of W} - 1).
std::vector<Torsion> depth_zero_space(const RootDatum& rd, std::int64_t q,
                                      std::int64_t denominator_bound = 0);

std::string torsion_str(const Torsion& t);

}  // namespace lfp::rd
