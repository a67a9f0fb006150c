#pragma once

// A region of an image's domain together with an ordered multiset of its
// members' gray values, so sup/inf (and hence every heterogeneity criterion)
// are available without rescanning the members.

#include <cassert>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "liprg/error.hpp"
#include "liprg/image.hpp"
#include "liprg/lip.hpp"

namespace liprg {

/// Counted multiset of doubles. insert/erase are O(log n), min/max O(1).
class ValueMultiset {
 public:
  void insert(double v) {
    ++counts_[v];
    ++size_;
  }

  /// Returns false when v is not present.
  bool erase(double v) {
    auto it = counts_.find(v);
    if (it == counts_.end()) return false;
    if (--it->second == 0) counts_.erase(it);
    --size_;
    return true;
  }

  bool empty() const noexcept { return size_ == 0; }
  std::size_t size() const noexcept { return size_; }
  std::size_t distinct() const noexcept { return counts_.size(); }
  double min() const { return counts_.begin()->first; }
  double max() const { return counts_.rbegin()->first; }
  std::size_t count(double v) const {
    auto it = counts_.find(v);
    return it == counts_.end() ? 0 : it->second;
  }

 private:
  std::map<double, std::size_t> counts_;
  std::size_t size_ = 0;
};

class Region {
 public:
  /// Empty region over the domain of `img`.
  explicit Region(const GrayImage& img)
      : width_(img.width()),
        height_(img.height()),
        slot_(img.size(), kAbsent) {}

  Region(const GrayImage& img, Coord seed) : Region(img) { insert(seed, img); }

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }

  /// Members in insertion order (reordered by removals).
  std::span<const Coord> members() const noexcept { return members_; }
  const ValueMultiset& stats() const noexcept { return stats_; }

  bool contains(Coord p) const noexcept {
    return in_domain(p) && slot_[linear(p)] != kAbsent;
  }

  double sup() const {
    require_nonempty();
    return stats_.max();
  }
  double inf() const {
    require_nonempty();
    return stats_.min();
  }

  void insert(Coord p, const GrayImage& img) {
    check_domain(p, img);
    auto& slot = slot_[linear(p)];
    if (slot != kAbsent) {
      throw Error(ErrorKind::DuplicateMember, "pixel (" + std::to_string(p.x) + "," +
                                                  std::to_string(p.y) + ") already in region");
    }
    slot = static_cast<std::uint32_t>(members_.size());
    members_.push_back(p);
    stats_.insert(img(p));
  }

  void remove(Coord p, const GrayImage& img) {
    check_domain(p, img);
    const std::size_t idx = linear(p);
    const std::uint32_t slot = slot_[idx];
    if (slot == kAbsent) {
      throw Error(ErrorKind::MissingMember, "pixel (" + std::to_string(p.x) + "," +
                                                std::to_string(p.y) + ") not in region");
    }
    const Coord last = members_.back();
    members_[slot] = last;
    slot_[linear(last)] = slot;
    members_.pop_back();
    slot_[idx] = kAbsent;
    [[maybe_unused]] const bool erased = stats_.erase(img(p));
    assert(erased);
  }

  /// Row-major sorted copy of the members, for comparisons and output.
  std::vector<Coord> sorted_members() const {
    std::vector<Coord> out;
    out.reserve(members_.size());
    for (std::size_t i = 0; i < slot_.size(); ++i) {
      if (slot_[i] != kAbsent) {
        out.push_back({static_cast<int>(i % static_cast<std::size_t>(width_)),
                       static_cast<int>(i / static_cast<std::size_t>(width_))});
      }
    }
    return out;
  }

  /// Same membership (region statistics follow from membership).
  friend bool operator==(const Region& a, const Region& b) {
    if (a.width_ != b.width_ || a.height_ != b.height_ || a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.slot_.size(); ++i) {
      if ((a.slot_[i] == kAbsent) != (b.slot_[i] == kAbsent)) return false;
    }
    return true;
  }

 private:
  static constexpr std::uint32_t kAbsent = 0xFFFFFFFFu;

  bool in_domain(Coord p) const noexcept {
    return p.x >= 0 && p.y >= 0 && p.x < width_ && p.y < height_;
  }
  std::size_t linear(Coord p) const noexcept {
    return static_cast<std::size_t>(p.y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(p.x);
  }
  void check_domain(Coord p, const GrayImage& img) const {
    if (img.width() != width_ || img.height() != height_) {
      throw Error(ErrorKind::Config, "region and image dimensions differ");
    }
    if (!in_domain(p)) {
      throw Error(ErrorKind::Seed, "pixel (" + std::to_string(p.x) + "," + std::to_string(p.y) +
                                       ") outside the image domain");
    }
  }
  void require_nonempty() const {
    if (members_.empty()) throw Error(ErrorKind::EmptyRegion, "region has no members");
  }

  int width_;
  int height_;
  std::vector<std::uint32_t> slot_;  // position in members_, or kAbsent
  std::vector<Coord> members_;
  ValueMultiset stats_;
};

// ---------------------------------------------------------------------------
// Heterogeneity criteria. Each is a function of (sup, inf) only.

enum class CriterionKind { ClassicalRange, LipAdditive, LipMultiplicative };

inline const char* to_string(CriterionKind kind) {
  switch (kind) {
    case CriterionKind::ClassicalRange: return "range";
    case CriterionKind::LipAdditive: return "lip-add";
    case CriterionKind::LipMultiplicative: return "lip-mul";
  }
  return "unknown";
}

inline CriterionKind parse_criterion(const std::string& name) {
  if (name == "range") return CriterionKind::ClassicalRange;
  if (name == "lip-add") return CriterionKind::LipAdditive;
  if (name == "lip-mul") return CriterionKind::LipMultiplicative;
  throw Error(ErrorKind::Config, "unknown criterion '" + name + "' (expected range|lip-add|lip-mul)");
}

struct CriterionConfig {
  CriterionKind kind = CriterionKind::LipAdditive;
  double threshold = 0.0;

  /// t >= 0, and t >= 1 for the multiplicative criterion (a single pixel scores 1).
  void validate() const {
    if (std::isnan(threshold)) throw Error(ErrorKind::Config, "threshold is NaN");
    const double floor = kind == CriterionKind::LipMultiplicative ? 1.0 : 0.0;
    if (threshold < floor) {
      throw Error(ErrorKind::Config, std::string("threshold for ") + to_string(kind) +
                                         " must be >= " + std::to_string(floor) + ", got " +
                                         std::to_string(threshold));
    }
  }
};

/// Criterion value for a region whose extreme gray tones are `sup` and `inf`.
inline double heterogeneity(CriterionKind kind, double sup, double inf, GrayScaleModel m) {
  switch (kind) {
    case CriterionKind::ClassicalRange: return sup - inf;
    case CriterionKind::LipAdditive: return lac(sup, inf, m);
    case CriterionKind::LipMultiplicative: return lmc(sup, inf, m);
  }
  return 0.0;
}

inline double heterogeneity(CriterionKind kind, const Region& r, const GrayImage& img) {
  if (r.empty()) throw Error(ErrorKind::EmptyRegion, "heterogeneity of an empty region");
  return heterogeneity(kind, r.sup(), r.inf(), img.model());
}

inline double heterogeneity_range(const Region& r, const GrayImage& img) {
  return heterogeneity(CriterionKind::ClassicalRange, r, img);
}

inline double heterogeneity_additive(const Region& r, const GrayImage& img) {
  return heterogeneity(CriterionKind::LipAdditive, r, img);
}

inline double heterogeneity_multiplicative(const Region& r, const GrayImage& img) {
  return heterogeneity(CriterionKind::LipMultiplicative, r, img);
}

}  // namespace liprg
