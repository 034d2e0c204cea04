#include "fixtures.hpp"

#include <fcntl.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <atomic>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

extern char** environ;

namespace simulatar::testing {

namespace fs = std::filesystem;

TempDir::TempDir() {
  static std::atomic<int> counter{0};
  std::random_device rd;
  path_ = fs::temp_directory_path() / ("simulatar-test-" + std::to_string(::getpid()) + "-" +
                                       std::to_string(counter++) + "-" + std::to_string(rd()));
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

FrameBuffer synthetic_frame(int width, int height, std::uint32_t seed) {
  FrameBuffer f(width, height);
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> noise(-12, 12);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      std::uint8_t* p = f.pixel(x, y);
      const int base = (x * 255) / std::max(1, width - 1);
      const int vert = (y * 255) / std::max(1, height - 1);
      p[0] = static_cast<std::uint8_t>(std::clamp(base + noise(rng), 0, 255));
      p[1] = static_cast<std::uint8_t>(std::clamp(vert + noise(rng), 0, 255));
      p[2] = static_cast<std::uint8_t>(
          std::clamp(((x + y + static_cast<int>(seed) * 7) % 64) * 4, 0, 255));
    }
  }
  return f;
}

void write_frames(const fs::path& dir, int count, int width, int height, std::uint32_t seed) {
  fs::create_directories(dir);
  for (int i = 1; i <= count; ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "frame_%06d.png", i);
    write_png(dir / name,
              synthetic_frame(width, height, seed * 1000 + static_cast<std::uint32_t>(i)));
  }
}

RgbaImage solid_design(int width, int height, std::uint8_t r, std::uint8_t g, std::uint8_t b,
                       std::uint8_t a) {
  RgbaImage img(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      std::uint8_t* p = img.pixel(x, y);
      p[0] = r;
      p[1] = g;
      p[2] = b;
      p[3] = a;
    }
  }
  return img;
}

CameraProfile camera_with_resolution(int width, int height, std::string id) {
  CameraProfile cam = builtin_profiles().camera("gopro-hero10-linear");
  cam.id = std::move(id);
  cam.frame_resolution = {width, height};
  return cam;
}

ProfileRegistry registry_with(const CameraProfile& camera) {
  const ProfileRegistry base = builtin_profiles();
  auto cameras = base.cameras();
  cameras.insert_or_assign(camera.id, camera);
  return ProfileRegistry(base.hmds(), std::move(cameras));
}

void write_asset_library(const fs::path& root, const std::vector<ContextFixture>& contexts) {
  fs::create_directories(root / "contexts");
  std::uint32_t seed = 1;
  for (const auto& c : contexts) {
    const fs::path dir = root / "contexts" / c.id;
    write_frames(dir / "frames", c.frames, c.width, c.height, seed++);
    std::ostringstream meta;
    meta << "{\"location\": \"" << c.location << "\", \"mobility\": \"" << c.mobility
         << "\", \"lighting_lux\": " << c.lux << ", \"camera\": \"" << c.camera << "\"}\n";
    write_text(dir / "meta.json", meta.str());
  }
}

std::string camera_config_json(const std::string& id, int width, int height) {
  std::ostringstream out;
  out << "{\"camera_profiles\": {\"" << id << "\": {\"frame_resolution\": [" << width << ", "
      << height << "], \"diagonal_fov_deg\": 95, \"aspect\": [16, 9], \"fps\": 50}}}\n";
  return out.str();
}

ProcessResult run_process(const std::vector<std::string>& argv,
                          const std::map<std::string, std::string>& env) {
  TempDir io;
  const fs::path out_path = io / "stdout";
  const fs::path err_path = io / "stderr";

  std::vector<std::string> env_strings;
  for (char** e = environ; *e != nullptr; ++e) {
    const std::string entry(*e);
    const auto key = entry.substr(0, entry.find('='));
    if (!env.contains(key)) env_strings.push_back(entry);
  }
  for (const auto& [k, v] : env) {
    if (!v.empty()) env_strings.push_back(k + "=" + v);  // empty value: unset
  }
  std::vector<char*> envp;
  for (auto& s : env_strings) envp.push_back(s.data());
  envp.push_back(nullptr);

  std::vector<std::string> args = argv;
  std::vector<char*> cargv;
  for (auto& a : args) cargv.push_back(a.data());
  cargv.push_back(nullptr);

  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_addopen(&actions, STDIN_FILENO, "/dev/null", O_RDONLY, 0);
  posix_spawn_file_actions_addopen(&actions, STDOUT_FILENO, out_path.c_str(),
                                   O_WRONLY | O_CREAT | O_TRUNC, 0644);
  posix_spawn_file_actions_addopen(&actions, STDERR_FILENO, err_path.c_str(),
                                   O_WRONLY | O_CREAT | O_TRUNC, 0644);
  pid_t pid = 0;
  const int rc = posix_spawn(&pid, cargv[0], &actions, nullptr, cargv.data(), envp.data());
  posix_spawn_file_actions_destroy(&actions);
  if (rc != 0) throw std::runtime_error("posix_spawn failed for " + argv.front());

  int status = 0;
  waitpid(pid, &status, 0);
  ProcessResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : 128 + WTERMSIG(status);
  result.out = read_text(out_path);
  result.err = read_text(err_path);
  return result;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

}  // namespace simulatar::testing
