#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "simulatar/error.hpp"
#include "simulatar/stats.hpp"

namespace simulatar {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

// Splits one CSV line, honouring double-quoted fields.
std::vector<std::string> split_csv_line(std::string_view line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        field += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.emplace_back(trim(field));
      field.clear();
    } else {
      field += ch;
    }
  }
  if (quoted) throw ValidationError("line " + std::to_string(line_no) + ": unterminated quote");
  fields.emplace_back(trim(field));
  return fields;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

std::string_view to_string(Variant v) { return v == Variant::A ? "A" : "B"; }

std::string_view to_string(Method m) { return m == Method::Simulatar ? "simulatar" : "hmd"; }

std::string_view to_string(Dimension d) {
  switch (d) {
    case Dimension::Noticeability:
      return "noticeability";
    case Dimension::Identifiability:
      return "identifiability";
    case Dimension::Comfort:
      return "comfort";
    case Dimension::Awareness:
      return "awareness";
    case Dimension::Multitaskability:
      return "multitaskability";
  }
  return "?";
}

Variant parse_variant(std::string_view s) {
  if (s == "A" || s == "a") return Variant::A;
  if (s == "B" || s == "b") return Variant::B;
  throw ValidationError("unknown variant '" + std::string(s) + "' (expected A or B)");
}

Method parse_method(std::string_view s) {
  const std::string v = lower(s);
  if (v == "simulatar") return Method::Simulatar;
  if (v == "hmd") return Method::Hmd;
  throw ValidationError("unknown method '" + std::string(s) + "' (expected simulatar or hmd)");
}

Dimension parse_dimension(std::string_view s) {
  const std::string v = lower(s);
  for (Dimension d : kAllDimensions)
    if (v == to_string(d)) return d;
  throw ValidationError("unknown dimension '" + std::string(s) + "'");
}

void validate(std::span<const RatingRecord> records) {
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    const std::string where = "record " + std::to_string(i) + " (participant '" + r.participant +
                              "', context '" + r.context + "')";
    if (r.rating < 1 || r.rating > 7)
      throw ValidationError(where + ": rating " + std::to_string(r.rating) + " outside 1..7");
    if (r.participant.empty() || r.context.empty())
      throw ValidationError(where + ": participant and context must be non-empty");
  }
}

std::vector<RatingRecord> parse_ratings_csv(std::string_view text) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);

  std::vector<RatingRecord> records;
  std::array<int, 6> column{-1, -1, -1, -1, -1, -1};
  constexpr std::array<std::string_view, 6> names = {"participant", "context",   "variant",
                                                     "method",      "dimension", "rating"};
  bool have_header = false;
  std::size_t line_no = 0;
  std::size_t width = 0;

  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    const std::string_view line = trim(text.substr(0, nl));
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    if (line.empty()) continue;

    const auto fields = split_csv_line(line, line_no);
    const std::string where = "line " + std::to_string(line_no);
    if (!have_header) {
      for (std::size_t i = 0; i < fields.size(); ++i) {
        const std::string name = lower(fields[i]);
        const auto it = std::find(names.begin(), names.end(), name);
        if (it == names.end())
          throw ValidationError(where + ": unknown column '" + fields[i] + "'");
        column[static_cast<std::size_t>(it - names.begin())] = static_cast<int>(i);
      }
      for (std::size_t c = 0; c < names.size(); ++c) {
        if (column[c] < 0)
          throw ValidationError(where + ": missing column '" + std::string(names[c]) + "'");
      }
      width = fields.size();
      have_header = true;
      continue;
    }
    if (fields.size() != width)
      throw ValidationError(where + ": expected " + std::to_string(width) + " fields, got " +
                            std::to_string(fields.size()));
    const auto get = [&](std::size_t c) -> const std::string& {
      return fields[static_cast<std::size_t>(column[c])];
    };
    try {
      RatingRecord r;
      r.participant = get(0);
      r.context = get(1);
      r.variant = parse_variant(get(2));
      r.method = parse_method(get(3));
      r.dimension = parse_dimension(get(4));
      const std::string& rating = get(5);
      const auto [ptr, ec] =
          std::from_chars(rating.data(), rating.data() + rating.size(), r.rating);
      if (ec != std::errc() || ptr != rating.data() + rating.size())
        throw ValidationError("rating '" + rating + "' is not an integer");
      if (r.rating < 1 || r.rating > 7) throw ValidationError("rating " + rating + " outside 1..7");
      records.push_back(std::move(r));
    } catch (const ValidationError& e) {
      throw ValidationError(where + ": " + e.what());
    }
  }
  if (!have_header) throw ValidationError("ratings CSV is empty");
  validate(records);
  return records;
}

std::vector<RatingRecord> load_ratings_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open ratings CSV '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_ratings_csv(buf.str());
}

}  // namespace simulatar
