#include "f2k/exec/subprocess.hpp"

#include <fcntl.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <thread>

#include "f2k/errors.hpp"
#include "f2k/text.hpp"

extern char** environ;

namespace f2k::exec {
namespace {

// Owns a scratch file for an unredirected stream.
struct Capture {
  std::string path;
  int fd = -1;

  Capture() {
    const char* tmp = std::getenv("TMPDIR");
    std::string pattern = std::string(tmp && *tmp ? tmp : "/tmp") + "/f2k-capture-XXXXXX";
    fd = ::mkstemp(pattern.data());
    if (fd < 0) throw ExecutorFailure(std::string("cannot create capture file: ") + std::strerror(errno));
    path = pattern;
  }
  ~Capture() {
    if (fd >= 0) ::close(fd);
    ::unlink(path.c_str());
  }
  Capture(const Capture&) = delete;
  Capture& operator=(const Capture&) = delete;
};

class FileActions {
 public:
  FileActions() { posix_spawn_file_actions_init(&fa_); }
  ~FileActions() { posix_spawn_file_actions_destroy(&fa_); }
  FileActions(const FileActions&) = delete;
  FileActions& operator=(const FileActions&) = delete;
  posix_spawn_file_actions_t* get() { return &fa_; }

 private:
  posix_spawn_file_actions_t fa_;
};

int decode_status(int status) {
  if (WIFEXITED(status)) return WEXITSTATUS(status);
  if (WIFSIGNALED(status)) return 128 + WTERMSIG(status);
  return -1;
}

}  // namespace

ProcessResult run_process(const ProcessSpec& spec) {
  if (spec.argv.empty()) throw PreconditionViolation("run_process: empty argv");
  for (const auto* p : {&spec.stdout_path, &spec.stderr_path}) {
    if (!p->empty() && p->has_parent_path()) std::filesystem::create_directories(p->parent_path());
  }

  std::optional<Capture> out_cap, err_cap;
  FileActions fa;
  posix_spawn_file_actions_addopen(fa.get(), STDIN_FILENO, "/dev/null", O_RDONLY, 0);
  if (spec.stdout_path.empty()) {
    out_cap.emplace();
    posix_spawn_file_actions_adddup2(fa.get(), out_cap->fd, STDOUT_FILENO);
  } else {
    posix_spawn_file_actions_addopen(fa.get(), STDOUT_FILENO, spec.stdout_path.c_str(), O_WRONLY | O_CREAT | O_TRUNC,
                                     0644);
  }
  if (spec.stderr_path.empty()) {
    err_cap.emplace();
    posix_spawn_file_actions_adddup2(fa.get(), err_cap->fd, STDERR_FILENO);
  } else {
    posix_spawn_file_actions_addopen(fa.get(), STDERR_FILENO, spec.stderr_path.c_str(), O_WRONLY | O_CREAT | O_TRUNC,
                                     0644);
  }
  if (!spec.cwd.empty()) posix_spawn_file_actions_addchdir_np(fa.get(), spec.cwd.c_str());

  posix_spawnattr_t attr;
  posix_spawnattr_init(&attr);
  posix_spawnattr_setflags(&attr, POSIX_SPAWN_SETPGROUP | POSIX_SPAWN_SETSIGMASK | POSIX_SPAWN_SETSIGDEF);
  posix_spawnattr_setpgroup(&attr, 0);
  sigset_t empty_mask, default_sigs;
  sigemptyset(&empty_mask);
  sigemptyset(&default_sigs);
  sigaddset(&default_sigs, SIGPIPE);
  sigaddset(&default_sigs, SIGINT);
  sigaddset(&default_sigs, SIGTERM);
  posix_spawnattr_setsigmask(&attr, &empty_mask);
  posix_spawnattr_setsigdefault(&attr, &default_sigs);

  std::vector<char*> argv;
  for (const auto& a : spec.argv) argv.push_back(const_cast<char*>(a.c_str()));
  argv.push_back(nullptr);

  const auto start = std::chrono::steady_clock::now();
  pid_t pid = 0;
  const int rc = posix_spawnp(&pid, argv[0], fa.get(), &attr, argv.data(), environ);
  posix_spawnattr_destroy(&attr);
  if (rc != 0) throw ExecutorFailure("cannot start '" + spec.argv[0] + "': " + std::strerror(rc));

  ProcessResult result;
  int status = 0;
  auto nap = std::chrono::milliseconds(1);
  for (;;) {
    const pid_t w = ::waitpid(pid, &status, WNOHANG);
    if (w == pid) break;
    if (w < 0 && errno != EINTR) throw ExecutorFailure(std::string("waitpid failed: ") + std::strerror(errno));
    if (spec.timeout && std::chrono::steady_clock::now() - start >= *spec.timeout) {
      ::kill(-pid, SIGKILL);
      while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
      }
      result.timed_out = true;
      break;
    }
    std::this_thread::sleep_for(nap);
    nap = std::min(nap * 2, std::chrono::milliseconds(20));
  }
  // Reap anything the child left behind in its group.
  if (result.timed_out) ::kill(-pid, SIGKILL);

  result.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  result.exit_status = decode_status(status);
  if (out_cap) result.stdout_text = text::read_file(out_cap->path);
  if (err_cap) result.stderr_text = text::read_file(err_cap->path);
  return result;
}

ProcessResult run_shell(std::string_view script, ProcessSpec spec) {
  spec.argv = {"/bin/bash", "-c", std::string(script)};
  return run_process(spec);
}

std::string shell_quote(std::string_view s) {
  static constexpr std::string_view safe = "_./+=:,@%-";
  bool plain = !s.empty();
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && safe.find(c) == std::string_view::npos) {
      plain = false;
      break;
    }
  }
  if (plain) return std::string(s);
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  return out + "'";
}

}  // namespace f2k::exec
