#pragma once

// Seeded region growing driven by a heterogeneity criterion.
//
// Each round dilates the current region R_n by the neighbourhood N, then
// trims the most penalizing candidates (those at the candidate region's sup
// or inf) until the criterion is satisfied again. Pixels of R_n are never
// trimmed, so R_n ⊆ R_{n+1} and growth stops at a fixpoint after at most
// |D| rounds.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "liprg/error.hpp"
#include "liprg/image.hpp"
#include "liprg/region.hpp"

namespace liprg {

enum class Connectivity { N4 = 4, N8 = 8 };

inline std::span<const Coord> neighbour_offsets(Connectivity c) {
  static constexpr Coord n4[] = {{0, -1}, {-1, 0}, {1, 0}, {0, 1}};
  static constexpr Coord n8[] = {{-1, -1}, {0, -1}, {1, -1}, {-1, 0},
                                 {1, 0},   {-1, 1}, {0, 1},  {1, 1}};
  if (c == Connectivity::N4) return n4;
  return n8;
}

/// Pixels of D adjacent to some member of `r` but not members themselves,
/// sorted row-major. r ∪ ring equals the dilation of r by N clipped to D.
inline std::vector<Coord> dilate_ring(const Region& r, Connectivity c) {
  std::vector<Coord> ring;
  const auto offsets = neighbour_offsets(c);
  for (const Coord p : r.members()) {
    for (const Coord d : offsets) {
      const Coord q{p.x + d.x, p.y + d.y};
      if (q.x < 0 || q.y < 0 || q.x >= r.width() || q.y >= r.height()) continue;
      if (!r.contains(q)) ring.push_back(q);
    }
  }
  std::sort(ring.begin(), ring.end());
  ring.erase(std::unique(ring.begin(), ring.end()), ring.end());
  return ring;
}

inline std::vector<Coord> dilate_ring(const Region& r, const GrayImage&, Connectivity c) {
  return dilate_ring(r, c);
}

namespace detail {

// Relative tolerance under which two candidate heterogeneities count as a
// tie. Keeps the side choice stable when an illumination transform perturbs
// exactly equal values by a few ulps.
inline constexpr double kTieTolerance = 1e-9;

inline bool same_heterogeneity(double a, double b) {
  if (a == b) return true;
  if (std::isinf(a) || std::isinf(b)) return false;
  return std::abs(a - b) <= kTieTolerance * std::max(std::abs(a), std::abs(b));
}

}  // namespace detail

struct TrimResult {
  Region kept;
  std::vector<Coord> trimmed;  // in ring order
  double heterogeneity = 0.0;  // criterion value of `kept`
};

/// Merges `ring` into `r`, dropping extremal ring pixels until the criterion holds.
///
/// While H(candidate) > t, the sup side is removable when the candidate sup is
/// attained by ring pixels only, likewise the inf side. A removable side is
/// dropped as a whole equal-valued set. With both sides removable the one whose
/// removal leaves the lower H goes; a tie drops the inf side. If no side is
/// removable trimming stops, which cannot happen while H(r) <= t.
inline TrimResult trim_to_homogeneous(Region r, std::span<const Coord> ring,
                                      const GrayImage& img, const CriterionConfig& crit) {
  if (r.empty()) throw Error(ErrorKind::EmptyRegion, "cannot trim around an empty region");
  const GrayScaleModel m = img.model();

  // Ring values only; the protected extrema come from r.
  std::map<double, std::size_t> by_value;
  for (const Coord p : ring) {
    if (!img.contains(p)) throw Error(ErrorKind::Seed, "ring pixel outside the image domain");
    ++by_value[img(p)];
  }

  const double r_sup = r.sup();
  const double r_inf = r.inf();
  auto h_of = [&](double sup, double inf) { return heterogeneity(crit.kind, sup, inf, m); };

  while (!by_value.empty()) {
    const double ring_max = by_value.rbegin()->first;
    const double ring_min = by_value.begin()->first;
    const double sup = std::max(r_sup, ring_max);
    const double inf = std::min(r_inf, ring_min);
    if (h_of(sup, inf) <= crit.threshold) break;

    const bool sup_removable = ring_max > r_sup;
    const bool inf_removable = ring_min < r_inf;
    if (!sup_removable && !inf_removable) break;

    bool drop_sup = sup_removable;
    if (sup_removable && inf_removable) {
      // Both sides are ring-only, so the map holds at least two keys.
      const double next_max = std::next(by_value.rbegin())->first;
      const double next_min = std::next(by_value.begin())->first;
      const double h_without_sup = h_of(std::max(r_sup, next_max), inf);
      const double h_without_inf = h_of(sup, std::min(r_inf, next_min));
      drop_sup = h_without_sup < h_without_inf &&
                 !detail::same_heterogeneity(h_without_sup, h_without_inf);
    }
    if (drop_sup) {
      by_value.erase(std::prev(by_value.end()));
    } else {
      by_value.erase(by_value.begin());
    }
  }

  TrimResult out{std::move(r), {}, 0.0};
  const bool any = !by_value.empty();
  const double keep_lo = any ? by_value.begin()->first : 0.0;
  const double keep_hi = any ? by_value.rbegin()->first : -1.0;
  for (const Coord p : ring) {
    const double v = img(p);
    if (any && v >= keep_lo && v <= keep_hi) {
      out.kept.insert(p, img);
    } else {
      out.trimmed.push_back(p);
    }
  }
  out.heterogeneity = heterogeneity(crit.kind, out.kept, img);
  return out;
}

enum class Termination { Fixpoint, MaxIterations };

inline const char* to_string(Termination t) {
  return t == Termination::Fixpoint ? "fixpoint" : "max-iterations";
}

struct IterationRecord {
  std::size_t candidates = 0;   // ring size before trimming
  std::size_t trimmed = 0;
  std::size_t region_size = 0;  // after trimming
  double heterogeneity = 0.0;   // after trimming
};

struct GrowthResult {
  Region region;
  std::size_t iterations = 0;
  double final_heterogeneity = 0.0;
  Termination termination = Termination::Fixpoint;
  std::vector<IterationRecord> trace;
};

/// Grows a region from `seed` until it stops changing or `max_iters` rounds ran.
/// The default round limit, width*height, is never reached before the fixpoint.
inline GrowthResult grow(const GrayImage& img, Coord seed, const CriterionConfig& crit,
                         Connectivity connectivity = Connectivity::N8,
                         std::optional<std::size_t> max_iters = std::nullopt) {
  crit.validate();
  if (!img.contains(seed)) {
    throw Error(ErrorKind::Seed, "seed (" + std::to_string(seed.x) + "," +
                                     std::to_string(seed.y) + ") outside " +
                                     std::to_string(img.width()) + "x" +
                                     std::to_string(img.height()) + " image");
  }
  const std::size_t limit = max_iters.value_or(img.size());

  GrowthResult result{Region(img, seed), 0, 0.0, Termination::MaxIterations, {}};
  result.final_heterogeneity = heterogeneity(crit.kind, result.region, img);

  while (result.iterations < limit) {
    const std::vector<Coord> ring = dilate_ring(result.region, connectivity);
    const std::size_t before = result.region.size();
    auto [kept, trimmed, h] = trim_to_homogeneous(std::move(result.region), ring, img, crit);
    result.region = std::move(kept);
    result.final_heterogeneity = h;
    ++result.iterations;
    result.trace.push_back({ring.size(), trimmed.size(), result.region.size(), h});
    if (result.region.size() == before) {
      result.termination = Termination::Fixpoint;
      break;
    }
  }
  return result;
}

}  // namespace liprg
