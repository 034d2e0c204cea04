#include <gtest/gtest.h>

#include <boost/math/distributions/students_t.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <random>

#include "simulatar/error.hpp"
#include "simulatar/stats.hpp"

namespace simulatar {
namespace {

using Precise = boost::multiprecision::cpp_bin_float_50;

double oracle_cdf(double t, double df) {
  const boost::math::students_t_distribution<Precise> dist{Precise(df)};
  return static_cast<double>(boost::math::cdf(dist, Precise(t)));
}

TEST(StudentT, FrozenOracleValues) {
  // mpmath, 40 digits (tests/oracles/derive_constants.py).
  struct Case {
    double t, df, cdf;
  };
  const Case cases[] = {
      {0.0, 1, 0.5},
      {1.0, 1, 0.75},
      {2.5, 3, 0.95614667649596722637},
      {-1.7, 7, 0.066464448391277631931},
      {0.3, 30, 0.61687694735782359117},
      {12.0, 11, 0.9999999418357974869},
      {-6.2354, 11, 0.000031949201031617572919},
      {40.0, 2, 0.99968779266390762968},
  };
  for (const auto& c : cases) {
    EXPECT_NEAR(student_t_cdf(c.t, c.df), c.cdf, 1e-12) << c.t << " df " << c.df;
    EXPECT_NEAR(student_t_sf(-c.t, c.df), c.cdf, 1e-12);
  }
}

TEST(StudentT, AgreesWithMultiprecisionOracle) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> t_dist(-30.0, 30.0);
  std::uniform_real_distribution<double> df_dist(0.5, 300.0);
  for (int i = 0; i < 300; ++i) {
    const double t = i % 3 == 0 ? t_dist(rng) / 10.0 : t_dist(rng);
    const double df = i % 5 == 0 ? std::round(df_dist(rng) / 10.0) + 1.0 : df_dist(rng);
    const double want = oracle_cdf(t, df);
    ASSERT_NEAR(student_t_cdf(t, df), want, 1e-9) << "t=" << t << " df=" << df;
    ASSERT_NEAR(student_t_sf(t, df), 1.0 - want, 1e-9) << "t=" << t << " df=" << df;
  }
}

TEST(StudentT, SmallTailsKeepRelativeAccuracy) {
  for (double df : {2.0, 5.0, 11.0, 40.0}) {
    for (double t : {-8.0, -15.0, -40.0}) {
      const double want = oracle_cdf(t, df);
      EXPECT_NEAR(student_t_cdf(t, df) / want, 1.0, 1e-9) << t << " " << df;
    }
  }
}

TEST(StudentT, Domain) {
  EXPECT_THROW(student_t_cdf(1.0, 0.0), DomainError);
  EXPECT_THROW(student_t_cdf(std::nan(""), 3.0), DomainError);
  EXPECT_DOUBLE_EQ(student_t_cdf(INFINITY, 3.0), 1.0);
  EXPECT_DOUBLE_EQ(student_t_cdf(-INFINITY, 3.0), 0.0);
}

TEST(IncompleteBeta, KnownValues) {
  EXPECT_DOUBLE_EQ(incomplete_beta(1.0, 1.0, 0.3), 0.3);
  EXPECT_NEAR(incomplete_beta(2.0, 3.0, 0.4), 0.5248, 1e-14);
  EXPECT_DOUBLE_EQ(incomplete_beta(2.0, 3.0, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(incomplete_beta(2.0, 3.0, 1.0), 1.0);
  EXPECT_THROW(incomplete_beta(0.0, 1.0, 0.5), DomainError);
  EXPECT_THROW(incomplete_beta(1.0, 1.0, 1.5), DomainError);
}

TEST(Tost, ReferenceFixture) {
  // n = 12, mean 0.1, sd 0.5, bound 1.
  const TostResult r = tost_from_summary(12, 0.1, 0.5, 1.0, 0.05);
  EXPECT_NEAR(r.t_lower, 7.62102355330306, 1e-12);
  EXPECT_NEAR(r.t_upper, -6.23538290724796, 1e-12);
  EXPECT_NEAR(r.p_lower, 5.1653347920112254222e-6, 1e-15);
  EXPECT_NEAR(r.p_upper, 3.1949967787413362296e-5, 1e-15);
  EXPECT_EQ(r.df(), 11u);
  EXPECT_TRUE(r.equivalent);
}

TEST(Tost, PairedMatchesSummary) {
  const std::vector<double> d{0.5, -0.5, 1.0, 0.0, 0.0, -1.0, 0.5, 0.5, 0.0, 0.0, 0.0, 0.2};
  const TostResult r = tost_paired(d, 1.0, 0.05);
  double mean = 0.0;
  for (double x : d) mean += x;
  mean /= static_cast<double>(d.size());
  double ss = 0.0;
  for (double x : d) ss += (x - mean) * (x - mean);
  const TostResult s = tost_from_summary(d.size(), mean, std::sqrt(ss / 11.0), 1.0, 0.05);
  EXPECT_NEAR(r.t_lower, s.t_lower, 1e-12);
  EXPECT_NEAR(r.p_upper, s.p_upper, 1e-15);
  EXPECT_EQ(r.equivalent, s.equivalent);
}

TEST(Tost, NegatingMeanSwapsTails) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> m(-2.0, 2.0), sd(0.05, 3.0), b(0.1, 2.0);
  for (int i = 0; i < 500; ++i) {
    const std::size_t n = 2 + static_cast<std::size_t>(i % 40);
    const double mean = m(rng), s = sd(rng), bound = b(rng);
    const TostResult pos = tost_from_summary(n, mean, s, bound, 0.05);
    const TostResult neg = tost_from_summary(n, -mean, s, bound, 0.05);
    ASSERT_NEAR(pos.t_lower, -neg.t_upper, 1e-12);
    ASSERT_NEAR(pos.p_lower, neg.p_upper, 1e-12);
    ASSERT_NEAR(pos.p_upper, neg.p_lower, 1e-12);
    ASSERT_EQ(pos.equivalent, neg.equivalent);
  }
}

TEST(Tost, WiderBoundNeverHurts) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> m(-1.5, 1.5), sd(0.1, 2.0);
  for (int i = 0; i < 300; ++i) {
    const double mean = m(rng), s = sd(rng);
    double prev = 2.0;
    bool was_equivalent = false;
    for (double bound = 0.1; bound < 4.0; bound += 0.1) {
      const TostResult r = tost_from_summary(12, mean, s, bound, 0.05);
      const double p = std::max(r.p_lower, r.p_upper);
      ASSERT_LE(p, prev + 1e-15);
      if (was_equivalent) {
        ASSERT_TRUE(r.equivalent);
      }
      was_equivalent = r.equivalent;
      prev = p;
    }
  }
}

TEST(Tost, Errors) {
  const std::vector<double> one{0.5};
  try {
    (void)tost_paired(one, 1.0, 0.05);
    FAIL();
  } catch (const StatsError& e) {
    EXPECT_EQ(e.reason(), StatsError::Reason::InsufficientData);
  }
  const std::vector<double> flat{1.0, 1.0, 1.0};
  try {
    (void)tost_paired(flat, 1.0, 0.05);
    FAIL();
  } catch (const StatsError& e) {
    EXPECT_EQ(e.reason(), StatsError::Reason::DegenerateVariance);
  }
  const std::vector<double> ok{0.0, 1.0};
  EXPECT_THROW((void)tost_paired(ok, 0.0, 0.05), DomainError);
  EXPECT_THROW((void)tost_paired(ok, 1.0, 1.0), DomainError);
  EXPECT_THROW((void)tost_from_summary(5, 0.0, 0.0, 1.0, 0.05), StatsError);
}

// Ratings where simulator - headset differences follow `diffs` per participant.
void add_pairs(std::vector<RatingRecord>& out, const std::string& context, Variant v, Dimension d,
               const std::vector<int>& diffs) {
  for (std::size_t p = 0; p < diffs.size(); ++p) {
    const std::string participant = "P" + std::to_string(p + 1);
    out.push_back({participant, context, v, Method::Hmd, d, 3});
    out.push_back({participant, context, v, Method::Simulatar, d, 3 + diffs[p]});
  }
}

const std::vector<int> kClose = {0, 0, 1, -1, 0, 0, 1, -1, 0, 0, 0, 1};
const std::vector<int> kFar = {2, 3, 2, 1, 2, 3, 2, 2, 3, 1, 2, 2};

TEST(Grid, GreenYellowRed) {
  std::vector<RatingRecord> records;
  add_pairs(records, "green-ctx", Variant::A, Dimension::Comfort, kClose);
  add_pairs(records, "green-ctx", Variant::B, Dimension::Comfort, kClose);
  add_pairs(records, "yellow-ctx", Variant::A, Dimension::Comfort, kClose);
  add_pairs(records, "yellow-ctx", Variant::B, Dimension::Comfort, kFar);
  add_pairs(records, "red-ctx", Variant::A, Dimension::Comfort, kFar);
  add_pairs(records, "red-ctx", Variant::B, Dimension::Comfort, kFar);

  const EquivalenceGrid grid = build_grid(records, 1.0, 0.05);
  ASSERT_EQ(grid.cells.size(), 3u);
  EXPECT_EQ(grid.find("green-ctx", Dimension::Comfort)->color, CellColor::Green);
  EXPECT_EQ(grid.find("yellow-ctx", Dimension::Comfort)->color, CellColor::Yellow);
  EXPECT_EQ(grid.find("red-ctx", Dimension::Comfort)->color, CellColor::Red);
  EXPECT_EQ(grid.find("red-ctx", Dimension::Awareness), nullptr);
  EXPECT_TRUE(grid.unpaired.empty());
  EXPECT_TRUE(grid.indeterminate.empty());
  const GridCell& yellow = *grid.find("yellow-ctx", Dimension::Comfort);
  EXPECT_EQ(yellow.variants[0].pairs, 12u);
  EXPECT_TRUE(yellow.variants[0].result->equivalent);
  EXPECT_FALSE(yellow.variants[1].result->equivalent);
}

TEST(Grid, UnpairedRecordsAreExcludedWithWarning) {
  std::vector<RatingRecord> records;
  add_pairs(records, "c", Variant::A, Dimension::Noticeability, kClose);
  add_pairs(records, "c", Variant::B, Dimension::Noticeability, kClose);
  records.push_back({"P99", "c", Variant::A, Method::Simulatar, Dimension::Noticeability, 5});
  const EquivalenceGrid grid = build_grid(records, 1.0, 0.05);
  ASSERT_EQ(grid.warning_count(), 1u);
  EXPECT_EQ(grid.unpaired[0].participant, "P99");
  EXPECT_EQ(grid.unpaired[0].present, Method::Simulatar);
  EXPECT_EQ(grid.cells[0].variants[0].pairs, 12u);
  EXPECT_EQ(grid.cells[0].color, CellColor::Green);
}

TEST(Grid, UntestableVariantIsIndeterminate) {
  std::vector<RatingRecord> records;
  add_pairs(records, "c", Variant::A, Dimension::Identifiability, kClose);
  add_pairs(records, "c", Variant::B, Dimension::Identifiability, std::vector<int>(12, 1));
  const EquivalenceGrid grid = build_grid(records, 1.0, 0.05);
  EXPECT_EQ(grid.cells[0].color, CellColor::Indeterminate);
  ASSERT_EQ(grid.indeterminate.size(), 1u);
  EXPECT_FALSE(grid.cells[0].variants[1].result.has_value());
  EXPECT_FALSE(grid.cells[0].variants[1].note.empty());
}

TEST(Grid, RepeatsAreAveragedBeforePairing) {
  std::vector<RatingRecord> records;
  add_pairs(records, "c", Variant::A, Dimension::Comfort, kClose);
  add_pairs(records, "c", Variant::B, Dimension::Comfort, kClose);
  // A second simulator rating for P1/A: mean (3 + 5) / 2 = 4, difference 1.
  records.push_back({"P1", "c", Variant::A, Method::Simulatar, Dimension::Comfort, 5});
  const EquivalenceGrid grid = build_grid(records, 1.0, 0.05);
  const VariantTest& a = grid.cells[0].variants[0];
  EXPECT_EQ(a.pairs, 12u);
  std::vector<double> diffs(kClose.begin(), kClose.end());
  diffs[0] = 1.0;
  const TostResult expected = tost_paired(diffs, 1.0, 0.05);
  EXPECT_DOUBLE_EQ(a.result->mean_diff, expected.mean_diff);
  EXPECT_DOUBLE_EQ(a.result->t_lower, expected.t_lower);
}

TEST(Grid, RejectsOutOfScaleRatings) {
  std::vector<RatingRecord> records;
  add_pairs(records, "c", Variant::A, Dimension::Comfort, kClose);
  records[0].rating = 8;
  EXPECT_THROW((void)build_grid(records, 1.0, 0.05), ValidationError);
}

}  // namespace
}  // namespace simulatar
