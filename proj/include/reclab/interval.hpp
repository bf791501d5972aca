#pragma once

#include <mpfr.h>

#include <string>

#include "reclab/rational.hpp"

namespace reclab {

/// Closed interval [lo, hi] with 128-bit MPFR endpoints and outward rounding.
/// Arithmetic assumes nonnegative operands, which is all the conductance
/// recursions need.
class Interval {
 public:
  static constexpr mpfr_prec_t kPrecision = 128;

  Interval();
  explicit Interval(const Rational& exact);
  Interval(const Interval& other);
  Interval& operator=(const Interval& other);
  ~Interval();

  double lo() const;
  double hi() const;
  std::string lo_str(int digits = 20) const;
  std::string hi_str(int digits = 20) const;
  bool contains(const Rational& q) const;

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  /// Requires b > 0.
  friend Interval operator/(const Interval& a, const Interval& b);
  /// x / (1 + x), evaluated endpoint-wise since it is increasing for x >= 0.
  friend Interval saturate(const Interval& x);

 private:
  mpfr_t lo_;
  mpfr_t hi_;
};

}  // namespace reclab
