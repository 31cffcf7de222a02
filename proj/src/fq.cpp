#include "fq.hpp"

#include <map>
#include <memory>
#include <mutex>

#include "errors.hpp"
#include "rat.hpp"

namespace lfp::lf {

namespace {

std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

fq_t FqCtx::mul_by_x(fq_t a) const {
  // Shift digits up by one and reduce by the monic modulus.
  std::vector<int> d = digits(a);
  int top = d[deg - 1];
  for (int i = deg - 1; i > 0; --i) d[i] = d[i - 1];
  d[0] = 0;
  if (top != 0)
    for (int i = 0; i < deg; ++i) d[i] = ((d[i] - top * modulus[i]) % p + p) % p;
  return from_digits(d);
}

void FqCtx::build(int p_, int deg_) {
  p = p_;
  deg = deg_;
  q = ipow(p, deg);
  std::int64_t order_target = q - 1;
  // Scan monic candidates in lex order of (c_0, ..., c_{deg-1}); keep the
  // first whose root x has multiplicative order q-1 (primitive => the
  // quotient ring is a field and x generates it).
  for (std::int64_t cand = 0; cand < q; ++cand) {
    modulus.assign(deg + 1, 0);
    std::int64_t t = cand;
    for (int i = 0; i < deg; ++i) {
      modulus[i] = static_cast<int>(t % p);
      t /= p;
    }
    modulus[deg] = 1;
    if (modulus[0] == 0) continue;  // x would divide the modulus

    fq_t x = (deg == 1) ? from_int(-modulus[0]) : static_cast<fq_t>(p);
    if (x == 0) continue;
    exp_.assign(order_target, 0);
    log_.assign(q, -1);
    fq_t v = 1;
    bool ok = true;
    for (std::int64_t i = 0; i < order_target; ++i) {
      if (log_[v] != -1) {  // premature cycle
        ok = false;
        break;
      }
      exp_[i] = v;
      log_[v] = static_cast<std::int32_t>(i);
      v = (deg == 1) ? static_cast<fq_t>((static_cast<std::int64_t>(v) * x) % p)
                     : mul_by_x(v);
      if (v == 0) {
        ok = false;
        break;
      }
    }
    if (ok && v == 1) {
      gen_ = x;
      return;
    }
  }
  throw invariant_error("FqCtx: no primitive modulus found");
}

const FqCtx* FqCtx::get(int p, int deg) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<FqCtx>> cache;
  if (p < 2 || deg < 1) throw domain_error("FqCtx: need p >= 2, deg >= 1");
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, deg);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second.get();
  auto ctx = std::unique_ptr<FqCtx>(new FqCtx());
  ctx->build(p, deg);
  auto* raw = ctx.get();
  cache.emplace(key, std::move(ctx));
  return raw;
}

std::vector<int> FqCtx::digits(fq_t a) const {
  std::vector<int> d(deg);
  for (int i = 0; i < deg; ++i) {
    d[i] = static_cast<int>(a % p);
    a /= p;
  }
  return d;
}

fq_t FqCtx::from_digits(const std::vector<int>& d) const {
  fq_t a = 0;
  for (int i = deg - 1; i >= 0; --i) a = a * p + static_cast<fq_t>(((d[i] % p) + p) % p);
  return a;
}

fq_t FqCtx::add(fq_t a, fq_t b) const {
  fq_t r = 0, mult = 1;
  for (int i = 0; i < deg; ++i) {
    r += mult * ((a % p + b % p) % p);
    a /= p;
    b /= p;
    mult *= p;
  }
  return r;
}

fq_t FqCtx::neg(fq_t a) const {
  fq_t r = 0, mult = 1;
  for (int i = 0; i < deg; ++i) {
    r += mult * ((p - a % p) % p);
    a /= p;
    mult *= p;
  }
  return r;
}

fq_t FqCtx::sub(fq_t a, fq_t b) const { return add(a, neg(b)); }

fq_t FqCtx::mul(fq_t a, fq_t b) const {
  if (a == 0 || b == 0) return 0;
  return exp_[(log_[a] + log_[b]) % (q - 1)];
}

fq_t FqCtx::inv(fq_t a) const {
  if (a == 0) throw domain_error("FqCtx: inverse of zero");
  return exp_[(q - 1 - log_[a]) % (q - 1)];
}

fq_t FqCtx::pow(fq_t a, std::int64_t e) const {
  if (a == 0) {
    if (e > 0) return 0;
    if (e == 0) return 1;
    throw domain_error("FqCtx: negative power of zero");
  }
  std::int64_t l = (log_[a] % (q - 1)) * (e % (q - 1)) % (q - 1);
  l = ((l % (q - 1)) + (q - 1)) % (q - 1);
  return exp_[l];
}

fq_t FqCtx::frob_pow(fq_t a, std::int64_t k) const {
  k %= deg;
  if (k < 0) k += deg;
  fq_t r = a;
  for (std::int64_t i = 0; i < k; ++i) r = frob(r);
  return r;
}

fq_t FqCtx::pth_root(fq_t a) const { return frob_pow(a, deg - 1); }

fq_t FqCtx::from_int(std::int64_t c) const {
  c %= p;
  if (c < 0) c += p;
  return static_cast<fq_t>(c);
}

int FqCtx::trace_to_fp(fq_t a) const {
  fq_t s = 0, v = a;
  for (int i = 0; i < deg; ++i) {
    s = add(s, v);
    v = frob(v);
  }
  return static_cast<int>(s % p);
}

fq_t FqCtx::trace_to_subfield(fq_t a, int subdeg) const {
  if (deg % subdeg != 0) throw domain_error("trace_to_subfield: degree mismatch");
  fq_t s = 0, v = a;
  std::int64_t step = ipow(p, subdeg);
  for (int i = 0; i < deg / subdeg; ++i) {
    s = add(s, v);
    v = pow(v, step);
  }
  return s;
}

fq_t FqCtx::norm_to_subfield(fq_t a, int subdeg) const {
  if (deg % subdeg != 0) throw domain_error("norm_to_subfield: degree mismatch");
  fq_t s = 1, v = a;
  std::int64_t step = ipow(p, subdeg);
  for (int i = 0; i < deg / subdeg; ++i) {
    s = mul(s, v);
    v = pow(v, step);
  }
  return s;
}

bool FqCtx::in_subfield(fq_t a, int subdeg) const {
  return pow(a, ipow(p, subdeg)) == a;
}

std::int64_t FqCtx::log(fq_t a) const {
  if (a == 0) throw domain_error("FqCtx: log of zero");
  return log_[a];
}

bool FqCtx::has_nth_root(fq_t a, std::int64_t n) const {
  if (a == 0) return true;
  std::int64_t g = gcd64(n % (q - 1) == 0 ? q - 1 : n % (q - 1), q - 1);
  return log_[a] % g == 0;
}

fq_t FqCtx::nth_root(fq_t a, std::int64_t n) const {
  if (a == 0) return 0;
  std::int64_t m = q - 1;
  std::int64_t nn = ((n % m) + m) % m;
  std::int64_t g = gcd64(nn == 0 ? m : nn, m);
  std::int64_t l = log_[a];
  if (l % g != 0) throw domain_error("FqCtx: element has no n-th root");
  // Solve nn * t = l (mod m).
  std::int64_t nred = nn / g, lred = l / g, mred = m / g;
  // Modular inverse of nred mod mred by extended Euclid.
  std::int64_t t0 = 0, t1 = 1, r0 = mred, r1 = nred % mred;
  while (r1 != 0) {
    std::int64_t qq = r0 / r1;
    std::int64_t tmp = t0 - qq * t1;
    t0 = t1;
    t1 = tmp;
    tmp = r0 - qq * r1;
    r0 = r1;
    r1 = tmp;
  }
  std::int64_t invn = ((t0 % mred) + mred) % mred;
  std::int64_t t = (lred % mred) * invn % mred;
  return exp_[t % m];
}

fq_t FqCtx::embed_into(const FqCtx* larger, fq_t a) const {
  if (larger == this) return a;
  if (larger->p != p || larger->deg % deg != 0)
    throw domain_error("FqCtx: invalid embedding target");
  static std::mutex mu;
  static std::map<std::pair<const FqCtx*, const FqCtx*>, std::vector<fq_t>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(static_cast<const FqCtx*>(this), larger);
  auto it = cache.find(key);
  if (it == cache.end()) {
    // Lexicographically least root of our modulus in the larger field.
    fq_t root = 0;
    bool found = false;
    for (std::int64_t v = 0; v < larger->q && !found; ++v) {
      fq_t acc = larger->from_int(modulus[deg]);
      for (int i = deg - 1; i >= 0; --i)
        acc = larger->add(larger->mul(acc, static_cast<fq_t>(v)), larger->from_int(modulus[i]));
      if (acc == 0) {
        root = static_cast<fq_t>(v);
        found = true;
      }
    }
    if (!found) throw invariant_error("FqCtx: modulus has no root in larger field");
    std::vector<fq_t> table(q);
    for (std::int64_t v = 0; v < q; ++v) {
      std::vector<int> d = digits(static_cast<fq_t>(v));
      fq_t acc = 0;
      for (int i = deg - 1; i >= 0; --i)
        acc = larger->add(larger->mul(acc, root), larger->from_int(d[i]));
      table[v] = acc;
    }
    it = cache.emplace(key, std::move(table)).first;
  }
  return it->second[a];
}

fq_t FqCtx::project_from(const FqCtx* larger, fq_t a) const {
  if (larger == this) return a;
  // Inverse lookup of embed_into; desk-scale fields, linear scan is fine.
  for (std::int64_t v = 0; v < q; ++v)
    if (embed_into(larger, static_cast<fq_t>(v)) == a) return static_cast<fq_t>(v);
  throw domain_error("FqCtx: element is not in the subfield");
}

std::string FqCtx::str(fq_t a) const {
  if (deg == 1) return std::to_string(a);
  std::string s = "[";
  std::vector<int> d = digits(a);
  for (int i = 0; i < deg; ++i) {
    if (i) s += ",";
    s += std::to_string(d[i]);
  }
  return s + "]";
}

std::vector<fq_t> FqCtx::all_elements() const {
  std::vector<fq_t> v(q);
  for (std::int64_t i = 0; i < q; ++i) v[i] = static_cast<fq_t>(i);
  return v;
}

}  // namespace lfp::lf
