#include "plfun.hpp"

#include <algorithm>

#include "errors.hpp"

namespace lfp::ram {

PLFun::PLFun() : slopes_{Rat(1)} { normalize(); }

PLFun::PLFun(std::vector<Rat> breaks, std::vector<Rat> slopes)
    : breaks_(std::move(breaks)), slopes_(std::move(slopes)) {
  if (slopes_.size() != breaks_.size() + 1)
    throw domain_error("PLFun: need one slope per segment plus a final slope");
  for (size_t i = 0; i < breaks_.size(); ++i) {
    if (breaks_[i] <= Rat(0)) throw domain_error("PLFun: breakpoints must be positive");
    if (i && breaks_[i] <= breaks_[i - 1]) throw domain_error("PLFun: breakpoints must increase");
  }
  for (const Rat& s : slopes_)
    if (s <= Rat(0)) throw domain_error("PLFun: slopes must be positive");
  normalize();
}

PLFun PLFun::identity() { return PLFun(); }

void PLFun::normalize() {
  // Merge adjacent segments with equal slope.
  std::vector<Rat> nb, ns;
  ns.push_back(slopes_[0]);
  for (size_t i = 0; i < breaks_.size(); ++i) {
    if (slopes_[i + 1] != ns.back()) {
      nb.push_back(breaks_[i]);
      ns.push_back(slopes_[i + 1]);
    }
  }
  breaks_ = std::move(nb);
  slopes_ = std::move(ns);
  value_at_break_.clear();
  Rat v(0), prev(0);
  for (size_t i = 0; i < breaks_.size(); ++i) {
    v += slopes_[i] * (breaks_[i] - prev);
    prev = breaks_[i];
    value_at_break_.push_back(v);
  }
}

Rat PLFun::operator()(const Rat& x) const {
  if (x < Rat(0)) throw domain_error("PLFun: argument must be >= 0");
  Rat v(0), prev(0);
  for (size_t i = 0; i < breaks_.size(); ++i) {
    if (x <= breaks_[i]) return v + slopes_[i] * (x - prev);
    v = value_at_break_[i];
    prev = breaks_[i];
  }
  return v + slopes_.back() * (x - prev);
}

Rat PLFun::slope_right_of(const Rat& x) const {
  size_t i = 0;
  while (i < breaks_.size() && x >= breaks_[i]) ++i;
  return slopes_[i];
}

PLFun PLFun::inverse() const {
  std::vector<Rat> ib, is;
  for (size_t i = 0; i < breaks_.size(); ++i) ib.push_back(value_at_break_[i]);
  for (const Rat& s : slopes_) is.push_back(Rat(1) / s);
  return PLFun(std::move(ib), std::move(is));
}

PLFun PLFun::compose(const PLFun& g) const {
  // Breakpoints of f o g: breaks of g plus preimages under g of breaks of f.
  PLFun ginv = g.inverse();
  std::vector<Rat> bs = g.breaks();
  for (const Rat& b : breaks_) {
    Rat pre = ginv(b);
    if (pre > Rat(0)) bs.push_back(pre);
  }
  std::sort(bs.begin(), bs.end());
  bs.erase(std::unique(bs.begin(), bs.end()), bs.end());
  std::vector<Rat> ss;
  for (size_t i = 0; i <= bs.size(); ++i) {
    Rat start = (i == 0) ? Rat(0) : bs[i - 1];
    ss.push_back(slope_right_of(g(start)) * g.slope_right_of(start));
  }
  return PLFun(std::move(bs), std::move(ss));
}

}  // namespace lfp::ram
