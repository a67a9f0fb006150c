#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "liprg/error.hpp"
#include "liprg/lip.hpp"

namespace liprg {

/// Pixel coordinate: x is the column, y the row, both 0-based.
struct Coord {
  int x = 0;
  int y = 0;

  friend constexpr bool operator==(Coord, Coord) = default;
  friend constexpr auto operator<=>(Coord a, Coord b) {
    if (auto c = a.y <=> b.y; c != 0) return c;
    return a.x <=> b.x;
  }
};

/// Immutable row-major grid of real-valued gray tones, all inside [0, M).
class GrayImage {
 public:
  GrayImage(int width, int height, GrayScaleModel model, std::vector<double> pixels)
      : width_(width), height_(height), model_(model), pixels_(std::move(pixels)) {
    if (width < 1 || height < 1) {
      throw Error(ErrorKind::Config, "image dimensions must be positive");
    }
    if (pixels_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
      throw Error(ErrorKind::Config, "pixel count does not match " + std::to_string(width) + "x" +
                                         std::to_string(height));
    }
    for (double v : pixels_) model_.check(v);
  }

  /// Constant image.
  GrayImage(int width, int height, GrayScaleModel model, double value)
      : GrayImage(width, height, model,
                  std::vector<double>(static_cast<std::size_t>(std::max(width, 0)) *
                                          static_cast<std::size_t>(std::max(height, 0)),
                                      value)) {}

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return pixels_.size(); }
  GrayScaleModel model() const noexcept { return model_; }
  const std::vector<double>& pixels() const noexcept { return pixels_; }

  bool contains(Coord p) const noexcept {
    return p.x >= 0 && p.y >= 0 && p.x < width_ && p.y < height_;
  }

  std::size_t index(Coord p) const noexcept {
    return static_cast<std::size_t>(p.y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(p.x);
  }

  Coord coord(std::size_t index) const noexcept {
    return {static_cast<int>(index % static_cast<std::size_t>(width_)),
            static_cast<int>(index / static_cast<std::size_t>(width_))};
  }

  double operator()(Coord p) const noexcept { return pixels_[index(p)]; }
  double at(int x, int y) const noexcept { return (*this)({x, y}); }

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

 private:
  int width_;
  int height_;
  GrayScaleModel model_;
  std::vector<double> pixels_;
};

}  // namespace liprg
