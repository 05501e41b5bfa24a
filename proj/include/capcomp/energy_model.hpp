#pragma once

#include <string>

#include "capcomp/rational.hpp"

namespace capcomp {

// Receiver battery: B energy units consumed per channel use (0 < B < 1), a
// buffer of size E_max and initial level E(1) = E_init with 0 <= E_init <= E_max.
class EnergyModel {
 public:
  EnergyModel(Rational b, Rational e_max, Rational e_init);

  // The full-battery start assumed by every outage-capacity computation.
  static EnergyModel saturated(Rational b, Rational e_max);

  const Rational& b() const noexcept { return b_; }
  const Rational& e_max() const noexcept { return e_max_; }
  const Rational& e_init() const noexcept { return e_init_; }

  bool is_saturated() const { return e_init_ == e_max_; }

  // z = floor(E_max / B): zeros a full buffer can absorb back to back.
  long zeros_per_buffer() const;

  std::string to_string() const;

 private:
  Rational b_;
  Rational e_max_;
  Rational e_init_;
};

}  // namespace capcomp
