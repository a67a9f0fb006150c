#pragma once

// Scalar LIP (logarithmic image processing) algebra on gray tones in [0, M)
// and the two pairwise logarithmic contrasts built on it.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "liprg/error.hpp"

namespace liprg {

/// The gray scale [0, M). 8-bit data uses M = 256.
class GrayScaleModel {
 public:
  constexpr GrayScaleModel() = default;
  explicit GrayScaleModel(double bound) : bound_(bound) {
    if (!(bound > 0.0) || !std::isfinite(bound)) {
      throw Error(ErrorKind::Config, "scale bound M must be positive and finite, got " +
                                         std::to_string(bound));
    }
  }

  constexpr double bound() const noexcept { return bound_; }

  constexpr bool contains(double v) const noexcept { return v >= 0.0 && v < bound_; }

  /// Largest representable gray tone; used to keep rounded results inside [0, M).
  double top() const noexcept { return std::nextafter(bound_, 0.0); }

  void check(double v) const {
    if (!contains(v)) {
      throw Error(ErrorKind::InvalidGrayTone,
                  "gray tone " + std::to_string(v) + " outside [0, " + std::to_string(bound_) + ")");
    }
  }

  friend constexpr bool operator==(GrayScaleModel, GrayScaleModel) = default;

 private:
  double bound_ = 256.0;
};

inline constexpr GrayScaleModel kEightBit{};

enum class ScalarPolicy { RejectNegative, AllowNegative };

/// a ⊕ b = a + b - ab/M
inline double lip_add(double a, double b, GrayScaleModel m = kEightBit) {
  m.check(a);
  m.check(b);
  const double r = a + b - a * b / m.bound();
  // Near M the exact result can round up to M itself.
  return std::min(r, m.top());
}

/// a ⊖ b = (a - b) / (1 - b/M). Negative when a < b.
inline double lip_sub(double a, double b, GrayScaleModel m = kEightBit) {
  m.check(a);
  if (b == m.bound()) {
    throw Error(ErrorKind::SingularDenominator, "subtrahend equals the scale bound");
  }
  m.check(b);
  return (a - b) / (1.0 - b / m.bound());
}

/// λ ⊗ a = M - M (1 - a/M)^λ
inline double lip_scalar_mul(double lambda, double a, GrayScaleModel m = kEightBit,
                             ScalarPolicy policy = ScalarPolicy::RejectNegative) {
  m.check(a);
  if (!std::isfinite(lambda)) {
    throw Error(ErrorKind::UnsupportedScalar, "scalar must be finite");
  }
  if (lambda < 0.0 && policy == ScalarPolicy::RejectNegative) {
    throw Error(ErrorKind::UnsupportedScalar,
                "negative scalar " + std::to_string(lambda) + " rejected");
  }
  if (lambda == 1.0) return a;
  const double M = m.bound();
  const double r = M - M * std::pow(1.0 - a / M, lambda);
  return lambda >= 0.0 ? std::min(r, m.top()) : r;
}

/// Logarithmic additive contrast: max(x,y) ⊖ min(x,y).
inline double lac(double x, double y, GrayScaleModel m = kEightBit) {
  m.check(x);
  m.check(y);
  const double lo = std::min(x, y);
  const double hi = std::max(x, y);
  return (hi - lo) / (1.0 - lo / m.bound());
}

/// Logarithmic multiplicative contrast: ln(1 - max/M) / ln(1 - min/M).
///
/// lmc(v, v) is 1 for every v, including 0. lmc(0, s) with s > 0 is +inf.
inline double lmc(double x, double y, GrayScaleModel m = kEightBit) {
  m.check(x);
  m.check(y);
  const double lo = std::min(x, y);
  const double hi = std::max(x, y);
  if (lo == hi) return 1.0;
  if (lo == 0.0) return std::numeric_limits<double>::infinity();
  const double M = m.bound();
  return std::log1p(-hi / M) / std::log1p(-lo / M);
}

}  // namespace liprg
