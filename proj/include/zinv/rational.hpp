#pragma once

#include <utility>

#include "zinv/error.hpp"
#include "zinv/polycore.hpp"

namespace zinv {

/// X(z) = N(z) / D(z) with real coefficients, stored with a monic denominator.
class RationalFunction {
 public:
  RationalFunction() : num_(), den_(RealPoly::constant(1.0)) {}

  RationalFunction(RealPoly num, RealPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw Error("zero denominator");
    const double lead = den_.leading();
    if (lead != 1.0) {
      num_ /= lead;
      den_ /= lead;
    }
  }

  const RealPoly& num() const { return num_; }
  const RealPoly& den() const { return den_; }

  /// deg N <= deg D, so the unilateral inverse transform is causal.
  bool is_causal() const { return num_.degree() <= den_.degree(); }

  template <Scalar U>
  promote_t<double, U> operator()(const U& z) const {
    return num_(z) / den_(z);
  }

  friend RationalFunction operator+(const RationalFunction& x, const RationalFunction& y) {
    if (x.den_ == y.den_) return {x.num_ + y.num_, x.den_};
    return {x.num_ * y.den_ + y.num_ * x.den_, x.den_ * y.den_};
  }

  friend RationalFunction operator*(double s, const RationalFunction& x) { return {x.num_ * s, x.den_}; }

  friend bool operator==(const RationalFunction&, const RationalFunction&) = default;

 private:
  RealPoly num_;
  RealPoly den_;
};

}  // namespace zinv
