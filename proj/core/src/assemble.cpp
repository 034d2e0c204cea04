#include "simulatar/assemble.hpp"

#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <sstream>
#include <vector>

#include "simulatar/error.hpp"
#include "simulatar/frames.hpp"

extern char** environ;

namespace simulatar {
namespace fs = std::filesystem;

namespace {

struct Pipe {
  int fds[2] = {-1, -1};
  Pipe() {
    if (::pipe(fds) != 0) throw IoError(std::string("pipe: ") + std::strerror(errno));
  }
  ~Pipe() {
    for (int fd : fds)
      if (fd >= 0) ::close(fd);
  }
  void close_write() {
    ::close(fds[1]);
    fds[1] = -1;
  }
};

struct SpawnActions {
  posix_spawn_file_actions_t actions;
  SpawnActions() { posix_spawn_file_actions_init(&actions); }
  ~SpawnActions() { posix_spawn_file_actions_destroy(&actions); }
};

// Runs argv, returning (exit status, combined stdout+stderr).
std::pair<int, std::string> run_capture(const std::vector<std::string>& args) {
  Pipe out;
  SpawnActions sa;
  posix_spawn_file_actions_adddup2(&sa.actions, out.fds[1], STDOUT_FILENO);
  posix_spawn_file_actions_adddup2(&sa.actions, out.fds[1], STDERR_FILENO);
  posix_spawn_file_actions_addclose(&sa.actions, out.fds[0]);

  std::vector<char*> argv;
  for (const auto& a : args) argv.push_back(const_cast<char*>(a.c_str()));
  argv.push_back(nullptr);

  pid_t pid = 0;
  const int rc = ::posix_spawnp(&pid, argv[0], &sa.actions, nullptr, argv.data(), environ);
  if (rc != 0) {
    throw AssemblyError("cannot start transcoder '" + args[0] + "'", std::strerror(rc));
  }
  out.close_write();

  std::string captured;
  std::array<char, 4096> buf{};
  for (;;) {
    const ssize_t got = ::read(out.fds[0], buf.data(), buf.size());
    if (got > 0) {
      captured.append(buf.data(), static_cast<std::size_t>(got));
    } else if (got == 0 || errno != EINTR) {
      break;
    }
  }
  int status = 0;
  while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : 128 + WTERMSIG(status);
  return {code, captured};
}

}  // namespace

std::optional<std::string> configured_transcoder() {
  const char* v = std::getenv(kTranscoderEnv);
  if (v == nullptr || *v == '\0') return std::nullopt;
  return std::string(v);
}

AssemblyResult assemble_video(const fs::path& frames_dir, double fps, const fs::path& out_path,
                              std::optional<std::string> transcoder) {
  if (!transcoder || transcoder->empty()) transcoder = configured_transcoder();
  if (!transcoder) {
    return {AssemblyOutcome::FramesOnly,
            {},
            std::string(kTranscoderEnv) + " is not set; frames in '" + frames_dir.string() +
                "' are the output"};
  }
  if (!fs::exists(frames_dir / frame_file_name(1)))
    throw AssemblyError("no frames to assemble in '" + frames_dir.string() + "'", "");
  if (!(fps > 0.0)) throw DomainError("fps must be positive");

  std::ostringstream fps_text;
  fps_text << fps;
  const auto [code, output] = run_capture(
      {*transcoder, (frames_dir / "frame_%06d.png").string(), fps_text.str(), out_path.string()});
  if (code != 0) {
    throw AssemblyError("transcoder exited with status " + std::to_string(code), output);
  }
  std::error_code ec;
  if (!fs::exists(out_path, ec) || fs::file_size(out_path, ec) == 0) {
    throw AssemblyError("transcoder produced no output at '" + out_path.string() + "'", output);
  }
  return {AssemblyOutcome::Assembled, out_path, "assembled"};
}

}  // namespace simulatar
