#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lfp::lf {

// An element of F_{p^deg} is a uint32 whose base-p digits are the
// coefficients of its polynomial representative modulo a fixed monic
// irreducible.  The modulus is the lexicographically least primitive one,
// so x itself generates the multiplicative group and fields are canonical
// per (p, deg); multiplication runs off discrete-log tables.
using fq_t = std::uint32_t;

class FqCtx {
 public:
  int p;
  int deg;
  std::int64_t q;
  std::vector<int> modulus;  // monic, size deg+1

  static const FqCtx* get(int p, int deg);

  fq_t add(fq_t a, fq_t b) const;
  fq_t sub(fq_t a, fq_t b) const;
  fq_t neg(fq_t a) const;
  fq_t mul(fq_t a, fq_t b) const;
  fq_t inv(fq_t a) const;
  fq_t pow(fq_t a, std::int64_t e) const;
  fq_t frob(fq_t a) const { return pow(a, p); }
  fq_t frob_pow(fq_t a, std::int64_t k) const;
  fq_t pth_root(fq_t a) const;
  fq_t from_int(std::int64_t c) const;
  fq_t generator() const { return gen_; }

  int trace_to_fp(fq_t a) const;                 // absolute trace, as 0..p-1
  fq_t trace_to_subfield(fq_t a, int subdeg) const;
  fq_t norm_to_subfield(fq_t a, int subdeg) const;
  bool in_subfield(fq_t a, int subdeg) const;
  std::int64_t log(fq_t a) const;                // discrete log base x; a != 0
  bool has_nth_root(fq_t a, std::int64_t n) const;
  fq_t nth_root(fq_t a, std::int64_t n) const;   // some n-th root; a != 0

  // Canonical embedding into a larger field (deg | other.deg): x maps to the
  // lexicographically least root of this modulus.
  fq_t embed_into(const FqCtx* larger, fq_t a) const;
  fq_t project_from(const FqCtx* larger, fq_t a) const;  // inverse of embed

  std::vector<int> digits(fq_t a) const;
  fq_t from_digits(const std::vector<int>& d) const;
  std::string str(fq_t a) const;

  // All q elements, in index order 0..q-1 (for small enumerations).
  std::vector<fq_t> all_elements() const;

 private:
  FqCtx() = default;
  void build(int p, int deg);
  fq_t mul_by_x(fq_t a) const;

  fq_t gen_ = 0;
  std::vector<fq_t> exp_;
  std::vector<std::int32_t> log_;
};

}  // namespace lfp::lf
