#pragma once

// Deterministic synthetic test images and pixelwise LIP illumination changes.

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "liprg/error.hpp"
#include "liprg/image.hpp"
#include "liprg/lip.hpp"

namespace liprg::synth {

struct PlateauSpec {
  int width = 64;
  int height = 32;
  double val_a = 20.0;
  double val_b = 60.0;
  int ramp_width = 0;  // interpolated columns between the plateaus
};

/// Left plateau at val_a, right plateau at val_b, joined by a linear ramp.
///
/// The (width - ramp_width) plateau columns are split evenly, the left side
/// taking the smaller half on odd counts. Ramp column k (0-based) holds
/// val_a + (val_b - val_a) * (k + 1) / (ramp_width + 1), so ramp values lie
/// strictly between the plateau values. Every row is identical.
inline GrayImage make_two_plateau(const PlateauSpec& spec, GrayScaleModel m = kEightBit) {
  if (spec.width < 1 || spec.height < 1) {
    throw Error(ErrorKind::Config, "plateau image dimensions must be positive");
  }
  if (spec.ramp_width < 0 || spec.ramp_width > spec.width) {
    throw Error(ErrorKind::Config, "ramp width must lie in [0, width]");
  }
  if (!m.contains(spec.val_a) || !m.contains(spec.val_b)) {
    throw Error(ErrorKind::Config, "plateau values must lie in [0, M)");
  }
  const int left = (spec.width - spec.ramp_width) / 2;
  std::vector<double> row(static_cast<std::size_t>(spec.width));
  for (int x = 0; x < spec.width; ++x) {
    double v;
    if (x < left) {
      v = spec.val_a;
    } else if (x < left + spec.ramp_width) {
      const double frac = static_cast<double>(x - left + 1) / (spec.ramp_width + 1);
      v = spec.val_a + (spec.val_b - spec.val_a) * frac;
    } else {
      v = spec.val_b;
    }
    row[static_cast<std::size_t>(x)] = v;
  }
  std::vector<double> px;
  px.reserve(row.size() * static_cast<std::size_t>(spec.height));
  for (int y = 0; y < spec.height; ++y) px.insert(px.end(), row.begin(), row.end());
  return GrayImage(spec.width, spec.height, m, std::move(px));
}

/// v ↦ v ⊕ c for every pixel.
inline GrayImage apply_lip_bias(const GrayImage& img, double c) {
  const GrayScaleModel m = img.model();
  m.check(c);
  std::vector<double> px(img.pixels());
  for (double& v : px) v = lip_add(v, c, m);
  return GrayImage(img.width(), img.height(), m, std::move(px));
}

/// v ↦ λ ⊗ v for every pixel, λ > 0.
inline GrayImage apply_lip_gain(const GrayImage& img, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw Error(ErrorKind::Config, "gain must be positive and finite, got " + std::to_string(lambda));
  }
  const GrayScaleModel m = img.model();
  std::vector<double> px(img.pixels());
  for (double& v : px) v = lip_scalar_mul(lambda, v, m);
  return GrayImage(img.width(), img.height(), m, std::move(px));
}

/// Column-varying bias: column x gets v ⊕ c(x), c linear from c_left (x = 0)
/// to c_right (x = width - 1).
inline GrayImage apply_lip_bias_gradient(const GrayImage& img, double c_left, double c_right) {
  const GrayScaleModel m = img.model();
  m.check(c_left);
  m.check(c_right);
  const int w = img.width();
  std::vector<double> bias(static_cast<std::size_t>(w));
  for (int x = 0; x < w; ++x) {
    if (x == 0 || w == 1) {
      bias[0] = c_left;
    } else if (x == w - 1) {
      bias[static_cast<std::size_t>(x)] = c_right;
    } else {
      const double frac = static_cast<double>(x) / (w - 1);
      bias[static_cast<std::size_t>(x)] = c_left + (c_right - c_left) * frac;
    }
  }
  std::vector<double> px(img.pixels());
  for (std::size_t i = 0; i < px.size(); ++i) {
    px[i] = lip_add(px[i], bias[i % static_cast<std::size_t>(w)], m);
  }
  return GrayImage(img.width(), img.height(), m, std::move(px));
}

}  // namespace liprg::synth
