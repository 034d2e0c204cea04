#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "simulatar/image.hpp"

namespace simulatar {

/// File name of the 1-based frame `index`: frame_%06d.png.
std::string frame_file_name(std::size_t index);

/// An ordered, contiguous frame_%06d.png sequence. Only headers are read up
/// front; pixels are decoded on demand by load().
class FrameSequence {
 public:
  [[nodiscard]] std::size_t size() const { return paths_.size(); }
  [[nodiscard]] Resolution resolution() const { return resolution_; }
  [[nodiscard]] const std::filesystem::path& directory() const { return directory_; }

  /// Path of the 0-based position `i` (frame number i + 1).
  [[nodiscard]] const std::filesystem::path& path(std::size_t i) const { return paths_.at(i); }

  /// Decodes position `i`. Throws IngestionError if its size changed.
  [[nodiscard]] FrameBuffer load(std::size_t i) const;

 private:
  friend FrameSequence ingest_frames(const std::filesystem::path& directory);

  std::filesystem::path directory_;
  std::vector<std::filesystem::path> paths_;
  Resolution resolution_;
};

/// Scans `directory` for frame_NNNNNN.png starting at 1. Throws
/// IngestionError when the directory is missing or empty, when an index is
/// missing (naming the first gap) or when a frame's size differs from the
/// first frame's (naming the frame).
FrameSequence ingest_frames(const std::filesystem::path& directory);

}  // namespace simulatar
