#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lfp {

// All depths, breaks and valuations are exact rationals.  boost::rational
// keeps the invariants we need (reduced, positive denominator).
using Rat = boost::rational<std::int64_t>;

inline Rat rat(std::int64_t n, std::int64_t d = 1) { return Rat(n, d); }

std::string rat_str(const Rat& r);
Rat parse_rat(const std::string& s);  // "n/d" or "n"

std::int64_t floor_rat(const Rat& r);
std::int64_t ceil_rat(const Rat& r);
inline bool is_integer(const Rat& r) { return r.denominator() == 1; }

std::int64_t gcd64(std::int64_t a, std::int64_t b);
std::int64_t lcm64(std::int64_t a, std::int64_t b);

// Exact element of Q/Z, normalized to [0,1).
Rat qmod1(const Rat& r);

// Depth of a Galois element: a rational, or +infinity for the identity.
struct RatOrInf {
  std::optional<Rat> v;  // nullopt = +infinity

  static RatOrInf infinity() { return RatOrInf{}; }
  static RatOrInf of(const Rat& r) { return RatOrInf{r}; }
  bool is_inf() const { return !v.has_value(); }
  // min(+inf, x) = x; used by the Hasse-Herbrand sum.
  Rat min_with(const Rat& x) const { return is_inf() ? x : std::min(*v, x); }
  bool operator>=(const Rat& r) const { return is_inf() || *v >= r; }
  bool operator>(const Rat& r) const { return is_inf() || *v > r; }
};

std::string rat_or_inf_str(const RatOrInf& r);

}  // namespace lfp
