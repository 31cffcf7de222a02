#include "series.hpp"

#include <algorithm>
#include <map>

#include "errors.hpp"

namespace lfp::lf {

Series Series::zero(const FqCtx* F, std::int64_t prec) {
  Series s;
  s.F = F;
  s.lo = prec;
  s.prec = prec;
  return s;
}

Series Series::one(const FqCtx* F, std::int64_t prec) { return monomial(F, 1, 0, prec); }

Series Series::monomial(const FqCtx* F, fq_t coeff, std::int64_t exp, std::int64_t prec) {
  if (coeff == 0 || exp >= prec) return zero(F, prec);
  Series s;
  s.F = F;
  s.lo = exp;
  s.prec = prec;
  s.c.assign(prec - exp, 0);
  s.c[0] = coeff;
  return s;
}

bool Series::is_zero_to_prec() const {
  for (fq_t v : c)
    if (v != 0) return false;
  return true;
}

std::int64_t Series::valuation() const {
  for (size_t i = 0; i < c.size(); ++i)
    if (c[i] != 0) return lo + static_cast<std::int64_t>(i);
  throw precision_error("Series: valuation of a zero-to-precision series");
}

fq_t Series::coeff(std::int64_t k) const {
  if (k >= prec) throw precision_error("Series: coefficient beyond precision");
  if (k < lo) return 0;
  return c[k - lo];
}

void Series::normalize() {
  size_t skip = 0;
  while (skip < c.size() && c[skip] == 0) ++skip;
  if (skip > 0) {
    c.erase(c.begin(), c.begin() + skip);
    lo += static_cast<std::int64_t>(skip);
  }
}

Series Series::truncated(std::int64_t new_prec) const {
  Series s = *this;
  if (new_prec < s.prec) {
    s.prec = new_prec;
    if (s.lo > new_prec) s.lo = new_prec;
    s.c.resize(std::max<std::int64_t>(0, s.prec - s.lo));
  }
  return s;
}

std::string Series::str(const std::string& var) const {
  std::string out;
  for (size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    if (!out.empty()) out += " + ";
    out += F->str(c[i]) + "*" + var + "^" + std::to_string(lo + static_cast<std::int64_t>(i));
  }
  if (out.empty()) out = "0";
  out += " + O(" + var + "^" + std::to_string(prec) + ")";
  return out;
}

namespace {

// Known lower bound on the valuation (prec if zero-to-prec).
std::int64_t val_bound(const Series& a) {
  for (size_t i = 0; i < a.c.size(); ++i)
    if (a.c[i] != 0) return a.lo + static_cast<std::int64_t>(i);
  return a.prec;
}

void check_same_field(const Series& a, const Series& b) {
  if (a.F != b.F) throw domain_error("Series: mixed coefficient fields");
}

}  // namespace

Series s_add(const Series& a, const Series& b) {
  check_same_field(a, b);
  Series s;
  s.F = a.F;
  s.prec = std::min(a.prec, b.prec);
  s.lo = std::min(std::min(a.lo, b.lo), s.prec);
  s.c.assign(s.prec - s.lo, 0);
  for (std::int64_t k = s.lo; k < s.prec; ++k) {
    fq_t av = (k >= a.lo && k < a.prec) ? a.c[k - a.lo] : 0;
    fq_t bv = (k >= b.lo && k < b.prec) ? b.c[k - b.lo] : 0;
    s.c[k - s.lo] = a.F->add(av, bv);
  }
  s.normalize();
  return s;
}

Series s_neg(const Series& a) {
  Series s = a;
  for (auto& v : s.c) v = a.F->neg(v);
  return s;
}

Series s_sub(const Series& a, const Series& b) { return s_add(a, s_neg(b)); }

Series s_scale(const Series& a, fq_t k) {
  if (k == 0) return Series::zero(a.F, a.prec);
  Series s = a;
  for (auto& v : s.c) v = a.F->mul(v, k);
  return s;
}

Series s_mul(const Series& a, const Series& b) {
  check_same_field(a, b);
  std::int64_t va = val_bound(a), vb = val_bound(b);
  std::int64_t prec = std::min(a.prec + vb, b.prec + va);
  Series s;
  s.F = a.F;
  s.prec = prec;
  s.lo = std::min(va + vb, prec);
  s.c.assign(std::max<std::int64_t>(0, s.prec - s.lo), 0);
  if (s.c.empty()) return s;
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    std::int64_t ea = a.lo + static_cast<std::int64_t>(i);
    for (size_t j = 0; j < b.c.size(); ++j) {
      if (b.c[j] == 0) continue;
      std::int64_t k = ea + b.lo + static_cast<std::int64_t>(j);
      if (k < s.lo || k >= s.prec) continue;
      s.c[k - s.lo] = a.F->add(s.c[k - s.lo], a.F->mul(a.c[i], b.c[j]));
    }
  }
  s.normalize();
  return s;
}

Series s_inv(const Series& a) {
  std::int64_t v = a.valuation();  // throws on zero-to-prec
  std::int64_t n = a.prec - v;     // known unit-part length
  // 1/a = c0^{-1} pi^{-v} (1 + w)^{-1}, solved coefficient by coefficient.
  std::vector<fq_t> u(n), d(n, 0);
  for (std::int64_t i = 0; i < n; ++i) u[i] = a.coeff(v + i);
  const FqCtx* F = a.F;
  fq_t c0inv = F->inv(u[0]);
  d[0] = c0inv;
  for (std::int64_t k = 1; k < n; ++k) {
    fq_t acc = 0;
    for (std::int64_t i = 1; i <= k; ++i) acc = F->add(acc, F->mul(u[i], d[k - i]));
    d[k] = F->neg(F->mul(acc, c0inv));
  }
  Series s;
  s.F = F;
  s.lo = -v;
  s.prec = a.prec - 2 * v;
  s.c = std::move(d);
  s.normalize();
  return s;
}

Series s_div(const Series& a, const Series& b) { return s_mul(a, s_inv(b)); }

Series s_pow(const Series& a, std::int64_t n) {
  if (n == 0) return Series::one(a.F, a.prec - val_bound(a));
  Series base = (n < 0) ? s_inv(a) : a;
  std::int64_t e = n < 0 ? -n : n;
  Series acc = base;
  --e;
  while (e > 0) {
    acc = s_mul(acc, base);
    --e;
  }
  return acc;
}

Series s_subst(const Series& f, const Series& g) {
  if (val_bound(g) < 1) throw domain_error("s_subst: substituted series needs valuation >= 1");
  const FqCtx* F = g.F;
  std::int64_t eg = val_bound(g);
  std::int64_t cap = eg * f.prec;
  Series acc = Series::zero(F, cap);
  if (f.c.empty()) return acc;
  Series cur = s_pow(g, f.lo);
  for (size_t i = 0; i < f.c.size(); ++i) {
    if (f.c[i] != 0) acc = s_add(acc, s_scale(cur, f.c[i]));
    if (i + 1 < f.c.size()) cur = s_mul(cur, g);
  }
  return acc.truncated(std::min(acc.prec, cap));
}

Series s_frob(const Series& a, std::int64_t k) {
  Series s = a;
  for (auto& v : s.c) v = a.F->frob_pow(v, k);
  return s;
}

Series s_embed(const Series& a, const FqCtx* larger) {
  if (a.F == larger) return a;
  Series s = a;
  s.F = larger;
  for (auto& v : s.c) v = a.F->embed_into(larger, v);
  return s;
}

bool s_eq(const Series& a, const Series& b) {
  check_same_field(a, b);
  std::int64_t prec = std::min(a.prec, b.prec);
  std::int64_t lo = std::min(a.lo, b.lo);
  for (std::int64_t k = lo; k < prec; ++k) {
    fq_t av = (k >= a.lo && k < a.prec) ? a.c[k - a.lo] : 0;
    fq_t bv = (k >= b.lo && k < b.prec) ? b.c[k - b.lo] : 0;
    if (av != bv) return false;
  }
  return true;
}

Series s_nth_root(const Series& a, std::int64_t n) {
  const FqCtx* F = a.F;
  if (n <= 0 || n % F->p == 0) throw domain_error("s_nth_root: need n > 0 coprime to p");
  std::int64_t v = a.valuation();
  if (v % n != 0) throw domain_error("s_nth_root: valuation not divisible by n");
  fq_t c0 = a.coeff(v);
  fq_t r0 = F->nth_root(c0, n);  // throws if no root
  // Hensel on the unit part: w <- w - (w^n - A) / (n w^{n-1}).
  std::int64_t uprec = a.prec - v;
  Series A = a;
  A.lo -= v;
  A.prec -= v;
  Series w = Series::monomial(F, r0, 0, uprec);
  while (true) {
    Series err = s_sub(s_pow(w, n), A);
    if (err.is_zero_to_prec()) break;
    Series corr = s_mul(err, s_inv(s_scale(s_pow(w, n - 1), F->from_int(n % F->p))));
    Series w2 = s_sub(w, corr).truncated(uprec);
    if (s_eq(w2, w))
      throw invariant_error("s_nth_root: Hensel iteration stalled");
    w = w2;
  }
  w.lo += v / n;
  w.prec += v / n;
  return w;
}

Series s_artin_schreier_root(const Series& a) {
  const FqCtx* F = a.F;
  int p = F->p;
  std::int64_t av;
  bool zero = a.is_zero_to_prec();
  if (!zero) av = a.valuation();

  std::int64_t z_lo = 0;
  if (!zero && av < 0) {
    if (av % p != 0)
      throw domain_error("s_artin_schreier_root: pole order not divisible by p");
    z_lo = av / p;
  }
  std::int64_t prec_out = a.prec;
  std::map<std::int64_t, fq_t> d;
  for (std::int64_t j = p * z_lo; j < prec_out; ++j) {
    fq_t rhs = (j >= a.lo && j < a.prec) ? a.coeff(j) : 0;
    if (j < 0) {
      if (j % p == 0) {
        fq_t dj = d.count(j) ? d[j] : 0;
        d[j / p] = F->pth_root(F->add(rhs, dj));
      } else {
        // equation: -d_j = rhs
        if (j >= z_lo) d[j] = F->neg(rhs);
        else if (rhs != 0)
          throw domain_error("s_artin_schreier_root: no solution at this valuation");
      }
    } else if (j == 0) {
      bool found = false;
      for (std::int64_t c = 0; c < F->q; ++c) {
        fq_t fc = static_cast<fq_t>(c);
        if (F->sub(F->pow(fc, p), fc) == rhs) {
          d[0] = fc;
          found = true;
          break;
        }
      }
      if (!found)
        throw domain_error("s_artin_schreier_root: residue Artin-Schreier equation unsolvable");
    } else {
      fq_t pcontrib = 0;
      if (j % p == 0 && d.count(j / p)) pcontrib = F->pow(d[j / p], p);
      d[j] = F->sub(pcontrib, rhs);
    }
  }
  Series z;
  z.F = F;
  z.lo = z_lo;
  z.prec = prec_out;
  z.c.assign(std::max<std::int64_t>(0, z.prec - z.lo), 0);
  for (const auto& [k, v] : d)
    if (k >= z.lo && k < z.prec) z.c[k - z.lo] = v;
  z.normalize();
  return z;
}

}  // namespace lfp::lf
