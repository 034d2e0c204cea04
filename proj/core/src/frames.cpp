#include "simulatar/frames.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>

#include "simulatar/error.hpp"

namespace simulatar {
namespace fs = std::filesystem;

namespace {

// Parses "frame_NNNNNN.png" (exactly six digits); returns 0 on mismatch.
std::size_t parse_frame_index(const std::string& name) {
  constexpr std::string_view prefix = "frame_";
  constexpr std::string_view suffix = ".png";
  if (name.size() != prefix.size() + 6 + suffix.size()) return 0;
  if (name.compare(0, prefix.size(), prefix) != 0) return 0;
  if (name.compare(prefix.size() + 6, suffix.size(), suffix) != 0) return 0;
  std::size_t value = 0;
  const char* first = name.data() + prefix.size();
  const auto [ptr, ec] = std::from_chars(first, first + 6, value);
  if (ec != std::errc() || ptr != first + 6) return 0;
  return value;
}

std::string describe(Resolution r) {
  return std::to_string(r.width) + "x" + std::to_string(r.height);
}

}  // namespace

std::string frame_file_name(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "frame_%06zu.png", index);
  return buf;
}

FrameBuffer FrameSequence::load(std::size_t i) const {
  FrameBuffer frame = read_png_rgb(path(i));
  if (frame.size() != resolution_) {
    throw IngestionError("frame " + path(i).filename().string() + " is " + describe(frame.size()) +
                         ", expected " + describe(resolution_));
  }
  return frame;
}

FrameSequence ingest_frames(const fs::path& directory) {
  std::error_code ec;
  if (!fs::is_directory(directory, ec))
    throw IngestionError("frame directory '" + directory.string() + "' does not exist");

  std::vector<std::pair<std::size_t, fs::path>> found;
  for (const auto& entry : fs::directory_iterator(directory)) {
    if (!entry.is_regular_file()) continue;
    const std::size_t index = parse_frame_index(entry.path().filename().string());
    if (index > 0) found.emplace_back(index, entry.path());
  }
  if (found.empty())
    throw IngestionError("no frame_NNNNNN.png files in '" + directory.string() + "'");
  std::sort(found.begin(), found.end());

  for (std::size_t i = 0; i < found.size(); ++i) {
    if (found[i].first != i + 1) {
      throw IngestionError("frame sequence in '" + directory.string() + "' has a gap at index " +
                           std::to_string(i + 1) + " (" + frame_file_name(i + 1) + " missing)");
    }
  }

  FrameSequence seq;
  seq.directory_ = directory;
  seq.paths_.reserve(found.size());
  for (auto& [_, p] : found) seq.paths_.push_back(std::move(p));

  try {
    seq.resolution_ = read_png_size(seq.paths_.front());
    for (std::size_t i = 1; i < seq.paths_.size(); ++i) {
      const Resolution r = read_png_size(seq.paths_[i]);
      if (r != seq.resolution_) {
        throw IngestionError("frame " + seq.paths_[i].filename().string() + " is " + describe(r) +
                             ", expected " + describe(seq.resolution_) + " like " +
                             seq.paths_.front().filename().string());
      }
    }
  } catch (const IoError& e) {
    throw IngestionError(e.what());
  }
  return seq;
}

}  // namespace simulatar
