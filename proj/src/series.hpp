#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fq.hpp"
#include "rat.hpp"

namespace lfp::lf {

// Truncated Laurent series over F_q in one uniformizer.  `prec` is the
// absolute precision: coefficients at exponents >= prec are unknown.  All
// arithmetic tracks precision pessimistically; asking for data the
// truncation cannot certify raises a precision error.
struct Series {
  const FqCtx* F = nullptr;
  std::int64_t lo = 0;    // exponent of c[0]
  std::int64_t prec = 0;  // exclusive
  std::vector<fq_t> c;    // size prec - lo

  static Series zero(const FqCtx* F, std::int64_t prec);
  static Series one(const FqCtx* F, std::int64_t prec);
  static Series monomial(const FqCtx* F, fq_t coeff, std::int64_t exp, std::int64_t prec);

  bool is_zero_to_prec() const;
  std::int64_t valuation() const;  // throws precision_error when zero-to-prec
  fq_t coeff(std::int64_t k) const;
  fq_t lead() const { return coeff(valuation()); }
  void normalize();
  Series truncated(std::int64_t new_prec) const;
  std::string str(const std::string& var = "u") const;
};

Series s_add(const Series& a, const Series& b);
Series s_sub(const Series& a, const Series& b);
Series s_neg(const Series& a);
Series s_scale(const Series& a, fq_t k);
Series s_mul(const Series& a, const Series& b);
Series s_inv(const Series& a);
Series s_div(const Series& a, const Series& b);
Series s_pow(const Series& a, std::int64_t n);

// f(g) for val(g) >= 1; Laurent tails of f use inverse powers of g.
Series s_subst(const Series& f, const Series& g);

// Coefficientwise absolute-Frobenius power (x -> x^{p^k}).
Series s_frob(const Series& a, std::int64_t k);

// Coefficientwise re-embedding into a larger field.
Series s_embed(const Series& a, const FqCtx* larger);

bool s_eq(const Series& a, const Series& b);  // up to the shared precision

// n-th root with gcd(n, p) = 1 and n | val(a); Hensel on the unit part.
Series s_nth_root(const Series& a, std::int64_t n);

// Least solution z of z^p - z = a (exact digit-by-digit solve; the residue
// Artin-Schreier equation must be solvable in F_q).
Series s_artin_schreier_root(const Series& a);

}  // namespace lfp::lf
