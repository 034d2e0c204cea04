#include <gtest/gtest.h>

#include <random>

#include "simulatar/error.hpp"
#include "simulatar/optics.hpp"

namespace simulatar {
namespace {

// Reference source-over in linear light, written out longhand.
double source_over(double dst, double src, double a) { return src * a + dst * (1.0 - a); }

TEST(Srgb, DecodeMatchesReferenceValue) {
  // (0.555 / 1.055)^2.4, computed at 40 digits.
  EXPECT_NEAR(srgb_decode(0.5), 0.214041140482, 1e-12);
  EXPECT_DOUBLE_EQ(srgb_decode(0.0), 0.0);
  EXPECT_DOUBLE_EQ(srgb_decode(1.0), 1.0);
  EXPECT_DOUBLE_EQ(srgb_decode(0.04045), 0.04045 / 12.92);
}

TEST(Srgb, RejectsOutOfRange) {
  EXPECT_THROW(srgb_decode(-0.01), DomainError);
  EXPECT_THROW(srgb_decode(1.01), DomainError);
  EXPECT_THROW(srgb_encode(-1e-9), DomainError);
  EXPECT_THROW(srgb_encode(2.0), DomainError);
}

TEST(Srgb, RoundTripAllCodes) {
  const auto& lut = srgb_decode_table();
  for (int code = 0; code < 256; ++code) {
    const double c = code / 255.0;
    EXPECT_NEAR(srgb_encode(srgb_decode(c)), c, 1.0 / 1020.0) << code;
    EXPECT_EQ(lut[static_cast<std::size_t>(code)], srgb_decode(c));
    EXPECT_EQ(encode_srgb8(lut[static_cast<std::size_t>(code)]), code);
  }
}

TEST(Srgb, EncodeIsMonotone) {
  double prev = -1.0;
  for (int i = 0; i <= 4096; ++i) {
    const double v = srgb_encode(i / 4096.0);
    EXPECT_GE(v, prev);
    prev = v;
  }
}

TEST(Optics, TintMultiplies) {
  EXPECT_EQ(apply_tint({0.5, 0.25, 1.0}, 0.4), (LinearColor{0.2, 0.1, 0.4}));
  EXPECT_EQ(apply_tint({0.5, 0.25, 1.0}, 1.0), (LinearColor{0.5, 0.25, 1.0}));
}

TEST(Optics, WashOut) {
  EXPECT_EQ(wash_out({0.0, 1.0, 0.3}, 1.0), (LinearColor{0.0, 1.0, 0.3}));
  EXPECT_EQ(wash_out({0.0, 1.0, 0.3}, 0.0), (LinearColor{0.5, 0.5, 0.5}));
  const LinearColor half = wash_out({0.0, 1.0, 0.5}, 0.5);
  EXPECT_DOUBLE_EQ(half.r, 0.25);
  EXPECT_DOUBLE_EQ(half.g, 0.75);
  EXPECT_DOUBLE_EQ(half.b, 0.5);
}

TEST(Optics, AdditiveBlackIsTransparent) {
  const BlendParams p;
  EXPECT_EQ(composite_pixel({0.2, 0.3, 0.4}, {0.0, 0.0, 0.0}, 1.0, p),
            (LinearColor{0.2, 0.3, 0.4}));
}

TEST(Optics, ParseAndFormat) {
  EXPECT_EQ(parse_blend_mode("additive"), BlendMode::Additive);
  EXPECT_EQ(parse_blend_mode("alpha-over"), BlendMode::AlphaOver);
  EXPECT_EQ(parse_blend_mode("alpha_over"), BlendMode::AlphaOver);
  EXPECT_THROW(parse_blend_mode("multiply"), ValidationError);
  EXPECT_EQ(parse_tint_extent("full"), TintExtent::FullFrame);
  EXPECT_EQ(parse_tint_extent("overlay_rect_only"), TintExtent::OverlayRectOnly);
  EXPECT_THROW(parse_tint_extent("none"), ValidationError);
  for (auto m : {BlendMode::Additive, BlendMode::AlphaOver})
    EXPECT_EQ(parse_blend_mode(to_string(m)), m);
  for (auto t : {TintExtent::FullFrame, TintExtent::OverlayRectOnly})
    EXPECT_EQ(parse_tint_extent(to_string(t)), t);
}

TEST(Optics, ParamsValidation) {
  BlendParams p;
  EXPECT_NO_THROW(validate(p));
  p.transmittance = 0.0;
  EXPECT_THROW(validate(p), ValidationError);
  p = {};
  p.alpha_scale = 1.5;
  EXPECT_THROW(validate(p), ValidationError);
  p = {};
  p.contrast_retention = -0.1;
  EXPECT_THROW(validate(p), ValidationError);
}

class OpticsProperty : public ::testing::Test {
 protected:
  std::mt19937_64 rng{20240611};
  std::uniform_real_distribution<double> unit{0.0, 1.0};

  LinearColor color() { return {unit(rng), unit(rng), unit(rng)}; }
  BlendParams params(BlendMode mode) {
    BlendParams p;
    p.transmittance = std::max(1e-3, unit(rng));
    p.alpha_scale = unit(rng);
    p.contrast_retention = unit(rng);
    p.mode = mode;
    return p;
  }
  static constexpr int kCases = 1000;
};

TEST_F(OpticsProperty, OutputStaysInUnitRange) {
  for (int i = 0; i < kCases; ++i) {
    for (auto mode : {BlendMode::Additive, BlendMode::AlphaOver}) {
      const auto bg = apply_tint(color(), unit(rng));
      const auto out = composite_pixel(bg, color(), unit(rng), params(mode));
      for (double c : {out.r, out.g, out.b}) {
        ASSERT_GE(c, 0.0);
        ASSERT_LE(c, 1.0);
      }
    }
  }
}

TEST_F(OpticsProperty, AdditiveNeverDarkens) {
  for (int i = 0; i < kCases; ++i) {
    const auto bg = color();
    const auto p = params(BlendMode::Additive);
    const auto out = composite_pixel(bg, color(), unit(rng), p);
    ASSERT_GE(out.r, bg.r);
    ASSERT_GE(out.g, bg.g);
    ASSERT_GE(out.b, bg.b);
  }
}

TEST_F(OpticsProperty, AdditiveMonotoneInAlphaAndColor) {
  for (int i = 0; i < kCases; ++i) {
    const auto bg = color();
    const auto d = color();
    const auto p = params(BlendMode::Additive);
    double a0 = unit(rng), a1 = unit(rng);
    if (a0 > a1) std::swap(a0, a1);
    const auto lo = composite_pixel(bg, d, a0, p);
    const auto hi = composite_pixel(bg, d, a1, p);
    ASSERT_LE(lo.r, hi.r);
    ASSERT_LE(lo.g, hi.g);
    ASSERT_LE(lo.b, hi.b);

    LinearColor brighter = d;
    brighter.g = std::min(1.0, d.g + unit(rng) * (1.0 - d.g));
    ASSERT_LE(composite_pixel(bg, d, a1, p).g, composite_pixel(bg, brighter, a1, p).g);
  }
}

TEST_F(OpticsProperty, ZeroAlphaIsIdentity) {
  for (int i = 0; i < kCases; ++i) {
    for (auto mode : {BlendMode::Additive, BlendMode::AlphaOver}) {
      const auto bg = color();
      ASSERT_EQ(composite_pixel(bg, color(), 0.0, params(mode)), bg);
      auto p = params(mode);
      p.alpha_scale = 0.0;
      ASSERT_EQ(composite_pixel(bg, color(), unit(rng), p), bg);
    }
  }
}

TEST_F(OpticsProperty, AlphaOverMatchesSourceOverAtNeutralParams) {
  BlendParams p;
  p.mode = BlendMode::AlphaOver;
  for (int i = 0; i < kCases; ++i) {
    const auto bg = color();
    const auto d = color();
    const double a = unit(rng);
    const auto out = composite_pixel(bg, d, a, p);
    ASSERT_NEAR(out.r, source_over(bg.r, d.r, a), 1e-15);
    ASSERT_NEAR(out.g, source_over(bg.g, d.g, a), 1e-15);
    ASSERT_NEAR(out.b, source_over(bg.b, d.b, a), 1e-15);
  }
}

TEST_F(OpticsProperty, LowerRetentionMovesTowardGray) {
  for (int i = 0; i < kCases; ++i) {
    const auto d = color();
    double r0 = unit(rng), r1 = unit(rng);
    if (r0 > r1) std::swap(r0, r1);
    const auto lo = wash_out(d, r0);
    const auto hi = wash_out(d, r1);
    ASSERT_LE(std::abs(lo.r - 0.5), std::abs(hi.r - 0.5) + 1e-15);
    ASSERT_LE(std::abs(lo.b - 0.5), std::abs(hi.b - 0.5) + 1e-15);
  }
}

}  // namespace
}  // namespace simulatar
