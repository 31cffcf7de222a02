#include "rat.hpp"

#include <numeric>

#include "errors.hpp"

namespace lfp {

std::string rat_str(const Rat& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rat parse_rat(const std::string& s) {
  if (s.empty()) throw usage_error("empty rational literal");
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(std::stoll(s), 1);
    std::int64_t num = std::stoll(s.substr(0, slash));
    std::int64_t den = std::stoll(s.substr(slash + 1));
    if (den == 0) throw usage_error("zero denominator in '" + s + "'");
    return Rat(num, den);
  } catch (const std::invalid_argument&) {
    throw usage_error("bad rational literal '" + s + "'");
  } catch (const std::out_of_range&) {
    throw usage_error("rational literal out of range '" + s + "'");
  }
}

std::int64_t floor_rat(const Rat& r) {
  std::int64_t q = r.numerator() / r.denominator();
  if (r.numerator() % r.denominator() != 0 && r.numerator() < 0) --q;
  return q;
}

std::int64_t ceil_rat(const Rat& r) { return -floor_rat(-r); }

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }
std::int64_t lcm64(std::int64_t a, std::int64_t b) { return std::lcm(a, b); }

Rat qmod1(const Rat& r) { return r - Rat(floor_rat(r), 1); }

std::string rat_or_inf_str(const RatOrInf& r) {
  return r.is_inf() ? std::string("inf") : rat_str(*r.v);
}

}  // namespace lfp
