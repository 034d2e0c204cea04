#include "simulatar/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <tuple>

#include "simulatar/error.hpp"

namespace simulatar {
namespace {

constexpr int kMaxIterations = 10000;
constexpr double kEpsilon = 1e-16;
constexpr double kTiny = 1e-300;

// Continued fraction for I_x(a, b) (modified Lentz), converging fast for
// x < (a + 1) / (a + b + 2).
double beta_continued_fraction(double a, double b, double x) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;

    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEpsilon) return h;
  }
  throw DomainError("incomplete beta continued fraction did not converge");
}

double log_beta(double a, double b) { return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b); }

double sample_mean(std::span<const double> xs) {
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double sample_sd(std::span<const double> xs, double mean) {
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

}  // namespace

double incomplete_beta(double a, double b, double x, double y) {
  if (!(a > 0.0 && b > 0.0)) throw DomainError("incomplete beta needs a, b > 0");
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("incomplete beta needs x in [0,1]");
  if (x == 0.0) return 0.0;
  if (y == 0.0) return 1.0;

  const double log_front = a * std::log(x) + b * std::log(y) - log_beta(a, b);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return std::exp(log_front) * beta_continued_fraction(a, b, x) / a;
  }
  return 1.0 - std::exp(log_front) * beta_continued_fraction(b, a, y) / b;
}

double incomplete_beta(double a, double b, double x) { return incomplete_beta(a, b, x, 1.0 - x); }

namespace {

// P(T > |t|) for t != 0.
double t_tail(double t, double df) {
  if (std::isinf(t)) return 0.0;
  const double t2 = t * t;
  const double denom = df + t2;
  return 0.5 * incomplete_beta(df / 2.0, 0.5, df / denom, t2 / denom);
}

void check_t_args(double t, double df) {
  if (std::isnan(t)) throw DomainError("t statistic is NaN");
  if (!(df > 0.0)) throw DomainError("degrees of freedom must be positive");
}

}  // namespace

double student_t_cdf(double t, double df) {
  check_t_args(t, df);
  if (t == 0.0) return 0.5;
  const double tail = t_tail(t, df);
  return t > 0.0 ? 1.0 - tail : tail;
}

double student_t_sf(double t, double df) {
  check_t_args(t, df);
  if (t == 0.0) return 0.5;
  const double tail = t_tail(t, df);
  return t > 0.0 ? tail : 1.0 - tail;
}

TostResult tost_from_summary(std::size_t n, double mean, double sd, double bound, double alpha) {
  if (n < 2)
    throw StatsError(StatsError::Reason::InsufficientData,
                     "TOST needs at least 2 paired differences, got " + std::to_string(n));
  if (!(bound > 0.0 && std::isfinite(bound)))
    throw DomainError("equivalence bound must be positive");
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must be in (0, 1)");
  if (!std::isfinite(mean) || !std::isfinite(sd))
    throw DomainError("non-finite summary statistics");
  if (!(sd > 0.0))
    throw StatsError(StatsError::Reason::DegenerateVariance,
                     "paired differences have zero variance");

  TostResult r;
  r.n = n;
  r.mean_diff = mean;
  r.sd_diff = sd;
  r.bound = bound;
  r.alpha = alpha;
  const double se = sd / std::sqrt(static_cast<double>(n));
  const double df = static_cast<double>(n - 1);
  r.t_lower = (mean + bound) / se;
  r.t_upper = (mean - bound) / se;
  r.p_lower = student_t_sf(r.t_lower, df);
  r.p_upper = student_t_cdf(r.t_upper, df);
  r.equivalent = std::max(r.p_lower, r.p_upper) < alpha;
  return r;
}

TostResult tost_paired(std::span<const double> diffs, double bound, double alpha) {
  if (diffs.size() < 2)
    throw StatsError(
        StatsError::Reason::InsufficientData,
        "TOST needs at least 2 paired differences, got " + std::to_string(diffs.size()));
  const auto [lo, hi] = std::minmax_element(diffs.begin(), diffs.end());
  if (*lo == *hi)
    throw StatsError(StatsError::Reason::DegenerateVariance,
                     "all paired differences are identical; variance is zero");
  const double mean = sample_mean(diffs);
  return tost_from_summary(diffs.size(), mean, sample_sd(diffs, mean), bound, alpha);
}

std::string_view to_string(CellColor c) {
  switch (c) {
    case CellColor::Green:
      return "green";
    case CellColor::Yellow:
      return "yellow";
    case CellColor::Red:
      return "red";
    case CellColor::Indeterminate:
      return "indeterminate";
  }
  return "?";
}

const GridCell* EquivalenceGrid::find(std::string_view context, Dimension d) const {
  for (const auto& cell : cells)
    if (cell.context == context && cell.dimension == d) return &cell;
  return nullptr;
}

EquivalenceGrid build_grid(std::span<const RatingRecord> records, double bound, double alpha) {
  validate(records);

  // (context, dimension, variant, participant) -> rating sum and count per
  // method; repeats within a cell are averaged before pairing.
  using Key = std::tuple<std::string, Dimension, Variant, std::string>;
  struct Accum {
    double sum = 0.0;
    int count = 0;
  };
  std::map<Key, std::array<Accum, 2>> paired;
  for (const auto& r : records) {
    auto& slot = paired[{r.context, r.dimension, r.variant, r.participant}]
                       [r.method == Method::Simulatar ? 0 : 1];
    slot.sum += r.rating;
    ++slot.count;
  }

  EquivalenceGrid grid;
  std::map<std::tuple<std::string, Dimension, Variant>, std::vector<double>> diffs;
  std::map<std::pair<std::string, Dimension>, bool> cell_keys;
  for (const auto& [key, ratings] : paired) {
    const auto& [context, dimension, variant, participant] = key;
    cell_keys[{context, dimension}] = true;
    auto& bucket = diffs[{context, dimension, variant}];
    if (ratings[0].count > 0 && ratings[1].count > 0) {
      bucket.push_back(ratings[0].sum / ratings[0].count - ratings[1].sum / ratings[1].count);
    } else {
      grid.unpaired.push_back({participant, context, variant, dimension,
                               ratings[0].count > 0 ? Method::Simulatar : Method::Hmd});
    }
  }

  for (const auto& [cell_key, _] : cell_keys) {
    GridCell cell;
    cell.context = cell_key.first;
    cell.dimension = cell_key.second;
    int equivalent = 0;
    bool testable = true;
    for (Variant v : {Variant::A, Variant::B}) {
      VariantTest& test = cell.variants[v == Variant::A ? 0 : 1];
      test.variant = v;
      const auto it = diffs.find({cell.context, cell.dimension, v});
      const std::vector<double> empty;
      const std::vector<double>& d = it == diffs.end() ? empty : it->second;
      test.pairs = d.size();
      try {
        test.result = tost_paired(d, bound, alpha);
        if (test.result->equivalent) ++equivalent;
      } catch (const StatsError& e) {
        test.note = e.what();
        testable = false;
        grid.indeterminate.push_back(cell.context + "/" + std::string(to_string(cell.dimension)) +
                                     "/" + std::string(to_string(v)) + ": " + e.what());
      }
    }
    if (!testable) {
      cell.color = CellColor::Indeterminate;
    } else {
      cell.color = equivalent == 2   ? CellColor::Green
                   : equivalent == 1 ? CellColor::Yellow
                                     : CellColor::Red;
    }
    grid.cells.push_back(std::move(cell));
  }
  return grid;
}

}  // namespace simulatar
