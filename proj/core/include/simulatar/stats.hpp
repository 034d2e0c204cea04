#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace simulatar {

/// Regularized incomplete beta I_x(a, b). `y` must equal 1 - x; passing it
/// separately avoids cancellation when x is close to 1.
double incomplete_beta(double a, double b, double x, double y);
double incomplete_beta(double a, double b, double x);

/// Student t distribution with `df` degrees of freedom (df > 0).
double student_t_cdf(double t, double df);
/// Upper tail P(T > t).
double student_t_sf(double t, double df);

/// Outcome of a paired two one-sided tests (TOST) procedure.
///
/// t_lower tests H0: mean <= -bound against the upper tail, t_upper tests
/// H0: mean >= +bound against the lower tail. Equivalence is declared when
/// both nulls are rejected, i.e. max(p_lower, p_upper) < alpha.
struct TostResult {
  std::size_t n = 0;
  double mean_diff = 0.0;
  double sd_diff = 0.0;
  double t_lower = 0.0;
  double t_upper = 0.0;
  double p_lower = 1.0;
  double p_upper = 1.0;
  double bound = 1.0;
  double alpha = 0.05;
  bool equivalent = false;

  [[nodiscard]] std::size_t df() const { return n - 1; }
};

/// Throws StatsError (InsufficientData for n < 2, DegenerateVariance when
/// every difference is identical) and DomainError for bound <= 0 or alpha
/// outside (0, 1).
TostResult tost_paired(std::span<const double> diffs, double bound, double alpha);

/// Same test from summary statistics (sd is the n-1 sample deviation).
TostResult tost_from_summary(std::size_t n, double mean, double sd, double bound, double alpha);

enum class Variant { A, B };
enum class Method { Simulatar, Hmd };
enum class Dimension { Noticeability, Identifiability, Comfort, Awareness, Multitaskability };

inline constexpr std::array<Dimension, 5> kAllDimensions = {
    Dimension::Noticeability, Dimension::Identifiability, Dimension::Comfort, Dimension::Awareness,
    Dimension::Multitaskability};

std::string_view to_string(Variant v);
std::string_view to_string(Method m);
std::string_view to_string(Dimension d);
Variant parse_variant(std::string_view s);
Method parse_method(std::string_view s);
Dimension parse_dimension(std::string_view s);

/// One 7-point Likert rating.
struct RatingRecord {
  std::string participant;
  std::string context;
  Variant variant = Variant::A;
  Method method = Method::Simulatar;
  Dimension dimension = Dimension::Noticeability;
  int rating = 4;
};

/// Ratings in 1..7 with non-empty participant and context. Throws
/// ValidationError naming the offending record.
void validate(std::span<const RatingRecord> records);

/// CSV with header participant,context,variant,method,dimension,rating
/// (any column order). Throws ValidationError with the line number.
std::vector<RatingRecord> parse_ratings_csv(std::string_view text);
std::vector<RatingRecord> load_ratings_csv(const std::filesystem::path& path);

enum class CellColor { Green, Yellow, Red, Indeterminate };
std::string_view to_string(CellColor c);

struct VariantTest {
  Variant variant = Variant::A;
  std::size_t pairs = 0;
  std::optional<TostResult> result;  // empty when the test could not run
  std::string note;                  // why it could not run
};

struct GridCell {
  std::string context;
  Dimension dimension = Dimension::Noticeability;
  std::array<VariantTest, 2> variants;  // A, B
  CellColor color = CellColor::Indeterminate;
};

/// A record excluded because the participant lacks the other method's
/// rating in the same (context, variant, dimension).
struct UnpairedRecord {
  std::string participant;
  std::string context;
  Variant variant = Variant::A;
  Dimension dimension = Dimension::Noticeability;
  Method present = Method::Simulatar;
};

struct EquivalenceGrid {
  std::vector<GridCell> cells;             // sorted by context, then dimension
  std::vector<std::string> indeterminate;  // one line per untestable variant
  std::vector<UnpairedRecord> unpaired;

  [[nodiscard]] std::size_t warning_count() const { return unpaired.size(); }
  [[nodiscard]] const GridCell* find(std::string_view context, Dimension d) const;
};

/// Pairs each participant's simulator and headset ratings (repeats within a
/// cell are averaged first), runs
/// tost_paired on (simulatar - hmd) per (context, variant, dimension) and
/// colours each (context, dimension) cell: green when both variants are
/// equivalent, yellow for exactly one, red for neither. Cells where a
/// variant is untestable (fewer than 2 pairs, zero variance) are
/// Indeterminate.
EquivalenceGrid build_grid(std::span<const RatingRecord> records, double bound, double alpha);

}  // namespace simulatar
