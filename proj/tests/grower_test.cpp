#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "liprg/grower.hpp"
#include "liprg/synth.hpp"
#include "support/invariants.hpp"
#include "support/naive_grow.hpp"

using namespace liprg;
using liprg::testing::as_set;
using liprg::testing::check_growth;
using liprg::testing::naive_grow;

namespace {

GrayImage random_image(std::mt19937& rng, int w, int h, int levels) {
  std::uniform_int_distribution<int> pick(0, levels - 1);
  std::uniform_int_distribution<int> value(0, 255);
  std::vector<double> palette(static_cast<std::size_t>(levels));
  for (double& v : palette) v = value(rng);
  std::vector<double> px(static_cast<std::size_t>(w * h));
  for (double& v : px) v = palette[static_cast<std::size_t>(pick(rng))];
  return GrayImage(w, h, kEightBit, std::move(px));
}

}  // namespace

TEST(DilateRing, SingleInteriorPixelN8) {
  const GrayImage img(5, 5, kEightBit, 0.0);
  const auto ring = dilate_ring(Region(img, {2, 2}), Connectivity::N8);
  ASSERT_EQ(ring.size(), 8u);
  for (const Coord p : ring) {
    EXPECT_LE(std::abs(p.x - 2), 1);
    EXPECT_LE(std::abs(p.y - 2), 1);
  }
  EXPECT_TRUE(std::is_sorted(ring.begin(), ring.end()));
}

TEST(DilateRing, CornerIsClipped) {
  const GrayImage img(5, 5, kEightBit, 0.0);
  EXPECT_EQ(dilate_ring(Region(img, {0, 0}), Connectivity::N8).size(), 3u);
  EXPECT_EQ(dilate_ring(Region(img, {4, 4}), Connectivity::N4).size(), 2u);
}

TEST(DilateRing, BlockN4MatchesEnumeration) {
  const GrayImage img(9, 9, kEightBit, 0.0);
  Region r(img);
  for (int y = 3; y <= 5; ++y)
    for (int x = 3; x <= 5; ++x) r.insert({x, y}, img);
  const auto ring = dilate_ring(r, Connectivity::N4);

  std::vector<Coord> expected;
  for (int y = 0; y < 9; ++y) {
    for (int x = 0; x < 9; ++x) {
      if (r.contains({x, y})) continue;
      const bool touches = r.contains({x - 1, y}) || r.contains({x + 1, y}) ||
                           r.contains({x, y - 1}) || r.contains({x, y + 1});
      if (touches) expected.push_back({x, y});
    }
  }
  EXPECT_EQ(expected.size(), 12u);
  EXPECT_EQ(ring, expected);
}

TEST(TrimToHomogeneous, NothingToTrim) {
  const GrayImage img(3, 3, kEightBit, {10, 11, 12, 13, 14, 15, 16, 17, 18});
  const Region r(img, {1, 1});
  const auto ring = dilate_ring(r, Connectivity::N8);
  const auto out =
      trim_to_homogeneous(r, ring, img, {CriterionKind::ClassicalRange, 8.0});
  EXPECT_EQ(out.kept.size(), 9u);
  EXPECT_TRUE(out.trimmed.empty());
  EXPECT_EQ(out.heterogeneity, 8.0);
}

TEST(TrimToHomogeneous, OneSidedRingIsFullyTrimmed) {
  std::vector<double> px(9, 200.0);
  px[4] = 20.0;
  const GrayImage img(3, 3, kEightBit, px);
  const Region r(img, {1, 1});
  const auto ring = dilate_ring(r, Connectivity::N8);
  const auto out = trim_to_homogeneous(r, ring, img, {CriterionKind::LipAdditive, 25.0});
  EXPECT_EQ(out.kept, r);
  EXPECT_EQ(out.trimmed.size(), 8u);
  EXPECT_EQ(out.heterogeneity, 0.0);
}

TEST(TrimToHomogeneous, TieDropsInfSide) {
  const GrayImage img(3, 1, kEightBit, {90, 100, 110});
  const Region r(img, {1, 0});
  const std::vector<Coord> ring{{0, 0}, {2, 0}};
  const auto out = trim_to_homogeneous(r, ring, img, {CriterionKind::ClassicalRange, 10.0});
  EXPECT_EQ(out.trimmed, (std::vector<Coord>{{0, 0}}));
  EXPECT_TRUE(out.kept.contains({2, 0}));
}

TEST(TrimToHomogeneous, BothSidesPrefersLowerResult) {
  // Dropping 150 leaves {30, 50, 105}: range 75. Dropping 30 leaves {50, 105, 150}: range 100.
  const GrayImage img(4, 1, kEightBit, {30, 50, 105, 150});
  Region r(img, {1, 0});
  r.insert({2, 0}, img);
  const std::vector<Coord> ring{{0, 0}, {3, 0}};
  const auto out = trim_to_homogeneous(r, ring, img, {CriterionKind::ClassicalRange, 100.0});
  EXPECT_EQ(out.trimmed, (std::vector<Coord>{{3, 0}}));
  EXPECT_EQ(out.heterogeneity, 75.0);
}

TEST(TrimToHomogeneous, RejectsEmptyRegion) {
  const GrayImage img(2, 2, kEightBit, 0.0);
  EXPECT_THROW(trim_to_homogeneous(Region(img), {}, img, {}), Error);
}

namespace {

// Largest ring subset S with H(r ∪ S) <= t, by enumeration of all subsets.
std::set<Coord> best_subset(const GrayImage& img, const Region& r, const std::vector<Coord>& ring,
                            const CriterionConfig& crit) {
  std::set<Coord> best;
  bool unique = true;
  for (std::uint32_t mask = 0; mask < (1u << ring.size()); ++mask) {
    double hi = r.sup(), lo = r.inf();
    std::set<Coord> s;
    for (std::size_t i = 0; i < ring.size(); ++i) {
      if (!(mask >> i & 1u)) continue;
      s.insert(ring[i]);
      hi = std::max(hi, img(ring[i]));
      lo = std::min(lo, img(ring[i]));
    }
    if (heterogeneity(crit.kind, hi, lo, img.model()) > crit.threshold) continue;
    if (s.size() > best.size()) {
      best = std::move(s);
      unique = true;
    } else if (s.size() == best.size() && s != best) {
      unique = false;
    }
  }
  EXPECT_TRUE(unique);
  return best;
}

}  // namespace

TEST(TrimToHomogeneous, SingleOutlierMatchesBruteForce) {
  std::mt19937 rng(55);
  std::uniform_int_distribution<int> inside(100, 110);
  for (int outliers = 1; outliers <= 2; ++outliers) {
    std::vector<double> px(25);
    for (double& v : px) v = inside(rng);
    px[12] = 100;
    px[6] = 110;  // the protected block spans [100, 110]
    const GrayImage base(5, 5, kEightBit, px);
    Region r(base);
    for (int y = 1; y <= 3; ++y)
      for (int x = 1; x <= 3; ++x) r.insert({x, y}, base);

    px[0] = 200;
    if (outliers == 2) px[24] = 200;
    const GrayImage img(5, 5, kEightBit, px);
    Region region(img);
    for (const Coord p : r.members()) region.insert(p, img);

    const CriterionConfig crit{CriterionKind::LipAdditive, 25.0};
    const auto ring = dilate_ring(region, Connectivity::N8);
    ASSERT_EQ(ring.size(), 16u);
    const auto out = trim_to_homogeneous(region, ring, img, crit);
    const auto best = best_subset(img, region, ring, crit);

    std::set<Coord> kept_ring;
    for (const Coord p : ring)
      if (out.kept.contains(p)) kept_ring.insert(p);
    EXPECT_EQ(kept_ring, best);
    EXPECT_EQ(out.trimmed.size(), static_cast<std::size_t>(outliers));
    EXPECT_EQ(out.trimmed.front(), (Coord{0, 0}));
  }
}

TEST(Grow, ConstantImageFillsDomain) {
  const GrayImage img(7, 5, kEightBit, 123.0);
  for (const Coord seed : {Coord{0, 0}, Coord{3, 2}, Coord{6, 4}}) {
    const auto r = grow(img, seed, {CriterionKind::LipAdditive, 0.0});
    EXPECT_EQ(r.region.size(), img.size());
    EXPECT_EQ(r.termination, Termination::Fixpoint);
    EXPECT_EQ(check_growth(img, seed, {CriterionKind::LipAdditive, 0.0}, Connectivity::N8, r), "");
  }
}

TEST(Grow, ZeroThresholdGivesEqualValuedComponent) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const GrayImage img = random_image(rng, 12, 9, 3);
    const Coord seed{trial % 12, trial % 9};
    const Connectivity conn = trial % 2 ? Connectivity::N4 : Connectivity::N8;
    const auto r = grow(img, seed, {CriterionKind::LipAdditive, 0.0}, conn);

    // Flood fill over equal values.
    std::set<Coord> component{seed};
    std::vector<Coord> stack{seed};
    while (!stack.empty()) {
      const Coord p = stack.back();
      stack.pop_back();
      for (const Coord d : neighbour_offsets(conn)) {
        const Coord q{p.x + d.x, p.y + d.y};
        if (img.contains(q) && img(q) == img(seed) && component.insert(q).second) {
          stack.push_back(q);
        }
      }
    }
    ASSERT_EQ(as_set(r.region), component);
  }
}

TEST(Grow, MatchesNaiveOracle) {
  std::mt19937 rng(77);
  std::uniform_int_distribution<int> kind_pick(0, 2);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const GrayImage img = random_image(rng, 8, 8, 2 + trial % 12);
    const Coord seed{static_cast<int>(unit(rng) * 8), static_cast<int>(unit(rng) * 8)};
    const auto kind = static_cast<CriterionKind>(kind_pick(rng));
    const double t = kind == CriterionKind::LipMultiplicative ? 1.0 + 3.0 * unit(rng)
                                                              : 120.0 * unit(rng);
    const CriterionConfig crit{kind, t};
    const Connectivity conn = trial % 3 ? Connectivity::N8 : Connectivity::N4;
    const auto fast = grow(img, seed, crit, conn);
    const auto slow = naive_grow(img, seed, crit, conn);
    ASSERT_EQ(as_set(fast.region), slow.region) << "trial " << trial;
    ASSERT_EQ(fast.iterations, slow.iterations);
    ASSERT_EQ(check_growth(img, seed, crit, conn, fast), "") << "trial " << trial;
  }
}

TEST(Grow, Errors) {
  const GrayImage img(4, 4, kEightBit, 1.0);
  try {
    grow(img, {4, 0}, {CriterionKind::LipAdditive, 1.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Seed);
  }
  try {
    grow(img, {0, 0}, {CriterionKind::LipMultiplicative, 0.5});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Config);
  }
}

TEST(Grow, MaxIterationsStopsEarly) {
  const GrayImage img(20, 1, kEightBit, 5.0);
  const auto r = grow(img, {0, 0}, {CriterionKind::ClassicalRange, 0.0}, Connectivity::N4, 3);
  EXPECT_EQ(r.termination, Termination::MaxIterations);
  EXPECT_EQ(r.iterations, 3u);
  EXPECT_EQ(r.region.size(), 4u);

  const auto none = grow(img, {5, 0}, {CriterionKind::ClassicalRange, 0.0}, Connectivity::N4, 0);
  EXPECT_EQ(none.region.size(), 1u);
  EXPECT_EQ(none.iterations, 0u);
}

TEST(Grow, SinglePixelImage) {
  const GrayImage img(1, 1, kEightBit, 9.0);
  const auto r = grow(img, {0, 0}, {CriterionKind::LipMultiplicative, 1.0});
  EXPECT_EQ(r.region.size(), 1u);
  EXPECT_EQ(r.iterations, 1u);
  EXPECT_EQ(r.final_heterogeneity, 1.0);
  EXPECT_EQ(r.termination, Termination::Fixpoint);
}

namespace {

double coverage_of_b(const GrowthResult& r, const GrayImage& img) {
  // Plateau B occupies the rightmost 28 columns.
  std::size_t in_b = 0, total = 0;
  for (int y = 0; y < img.height(); ++y) {
    for (int x = img.width() - 28; x < img.width(); ++x) {
      ++total;
      in_b += r.region.contains({x, y});
    }
  }
  return static_cast<double>(in_b) / static_cast<double>(total);
}

}  // namespace

TEST(Grow, TwoPlateauChaining) {
  const GrayImage raw = synth::make_two_plateau({64, 32, 20, 60, 8});
  const GrayImage biased = synth::apply_lip_bias(raw, 200);
  const Coord seed{5, 16};

  const CriterionConfig range{CriterionKind::ClassicalRange, 25};
  EXPECT_LT(coverage_of_b(grow(raw, seed, range), raw), 0.05);
  EXPECT_GE(coverage_of_b(grow(biased, seed, range), biased), 0.95);

  const CriterionConfig additive{CriterionKind::LipAdditive, 25};
  const auto a0 = grow(raw, seed, additive);
  const auto a1 = grow(biased, seed, additive);
  EXPECT_LT(coverage_of_b(a0, raw), 0.05);
  EXPECT_LT(coverage_of_b(a1, biased), 0.05);
  EXPECT_EQ(a0.region, a1.region);
}

TEST(Grow, IlluminationInvariance) {
  std::mt19937 rng(909);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    const GrayImage img = random_image(rng, 10, 10, 3 + trial % 6);
    const Coord seed{trial % 10, (trial * 3) % 10};
    const CriterionConfig add{CriterionKind::LipAdditive, 80.0 * unit(rng)};
    const GrayImage biased = synth::apply_lip_bias(img, 256.0 * unit(rng));
    ASSERT_EQ(grow(img, seed, add).region, grow(biased, seed, add).region);

    const CriterionConfig mul{CriterionKind::LipMultiplicative, 1.0 + 2.0 * unit(rng)};
    const GrayImage scaled = synth::apply_lip_gain(img, 0.2 + 4.8 * unit(rng));
    ASSERT_EQ(grow(img, seed, mul).region, grow(scaled, seed, mul).region);
  }
}

TEST(Grow, RangeIsNotIlluminationInvariant) {
  const GrayImage raw = synth::make_two_plateau({64, 32, 20, 60, 8});
  const CriterionConfig range{CriterionKind::ClassicalRange, 25};
  EXPECT_NE(grow(raw, {5, 16}, range).region,
            grow(synth::apply_lip_bias(raw, 200), {5, 16}, range).region);
}
