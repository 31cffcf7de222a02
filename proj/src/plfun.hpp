#pragma once

#include <vector>

#include "rat.hpp"

namespace lfp::ram {

// Exact continuous piecewise-linear function on [0, inf) with f(0) = 0,
// strictly increasing.  Segment i has slope slopes[i]; breakpoints are the
// positive abscissae where the slope changes (slopes.size() == breaks.size()+1).
//
// Hosts the normalized Hasse-Herbrand functions: phi has nonincreasing
// slopes, its inverse psi nondecreasing ones.  Slopes are rationals: psi's
// slopes are reciprocals of group orders.
class PLFun {
 public:
  PLFun();  // identity
  PLFun(std::vector<Rat> breaks, std::vector<Rat> slopes);

  static PLFun identity();

  const std::vector<Rat>& breaks() const { return breaks_; }
  const std::vector<Rat>& slopes() const { return slopes_; }

  Rat operator()(const Rat& x) const;  // x >= 0
  Rat slope_right_of(const Rat& x) const;

  PLFun inverse() const;
  // (*this) o g, exact.
  PLFun compose(const PLFun& g) const;

  bool operator==(const PLFun& o) const {
    return breaks_ == o.breaks_ && slopes_ == o.slopes_;
  }

 private:
  void normalize();
  std::vector<Rat> breaks_;  // strictly increasing, > 0
  std::vector<Rat> slopes_;  // positive, one per segment plus final
  std::vector<Rat> value_at_break_;
};

}  // namespace lfp::ram
