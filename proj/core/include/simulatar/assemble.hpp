#pragma once

#include <filesystem>
#include <optional>
#include <string>

namespace simulatar {

/// Environment variable naming the external muxing command.
inline constexpr const char* kTranscoderEnv = "SIMULATAR_TRANSCODER";

enum class AssemblyOutcome { Assembled, FramesOnly };

struct AssemblyResult {
  AssemblyOutcome outcome = AssemblyOutcome::FramesOnly;
  std::filesystem::path output;  // set when Assembled
  std::string message;
};

/// Muxes frames_dir/frame_%06d.png into `out_path` by running
///
///   <transcoder> <frames_dir>/frame_%06d.png <fps> <out_path>
///
/// where <transcoder> is `transcoder` or, when that is empty, the value of
/// SIMULATAR_TRANSCODER. With neither set, returns FramesOnly (the frame
/// sequence is the canonical output). A non-zero exit, or a missing/empty
/// output file, throws AssemblyError carrying the command's stdout/stderr.
AssemblyResult assemble_video(const std::filesystem::path& frames_dir, double fps,
                              const std::filesystem::path& out_path,
                              std::optional<std::string> transcoder = std::nullopt);

/// Value of SIMULATAR_TRANSCODER, if set and non-empty.
std::optional<std::string> configured_transcoder();

}  // namespace simulatar
