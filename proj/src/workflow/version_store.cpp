#include "f2k/workflow/version_store.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cstring>

#include "f2k/errors.hpp"

namespace f2k::workflow {

FileLock::FileLock(const std::filesystem::path& path) {
  fd_ = ::open(path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
  if (fd_ < 0) throw IoFailure("cannot open lock file " + path.string() + ": " + std::strerror(errno));
  while (::flock(fd_, LOCK_EX) != 0) {
    if (errno != EINTR) {
      ::close(fd_);
      throw IoFailure("cannot lock " + path.string() + ": " + std::strerror(errno));
    }
  }
}

FileLock::~FileLock() {
  if (fd_ >= 0) {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
}

VersionStore::VersionStore(std::filesystem::path workdir, std::string kernel)
    : workdir_(std::move(workdir)), kernel_(std::move(kernel)) {
  std::error_code ec;
  std::filesystem::create_directories(workdir_, ec);
  if (ec) throw IoFailure("cannot create workdir " + workdir_.string() + ": " + ec.message());
}

std::vector<int> VersionStore::existing() const {
  std::vector<int> out;
  const std::string prefix = kernel_ + ".v";
  std::error_code ec;
  for (const auto& entry : std::filesystem::directory_iterator(workdir_, ec)) {
    if (!entry.is_directory()) continue;
    const auto name = entry.path().filename().string();
    if (!name.starts_with(prefix) || name.size() == prefix.size()) continue;
    int k = 0;
    const char* first = name.data() + prefix.size();
    const char* last = name.data() + name.size();
    auto [ptr, err] = std::from_chars(first, last, k);
    if (err == std::errc() && ptr == last && k >= 1 && *first != '0') out.push_back(k);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::filesystem::path VersionStore::dir_for(int number) const {
  return workdir_ / (kernel_ + ".v" + std::to_string(number));
}

VersionHandle VersionStore::next_version() {
  FileLock lock(workdir_ / ".versions.lock");
  const auto have = existing();
  const int k = have.empty() ? 1 : have.back() + 1;
  const auto dir = dir_for(k);
  std::error_code ec;
  if (!std::filesystem::create_directory(dir, ec))
    throw IoFailure("cannot create version directory " + dir.string() + (ec ? ": " + ec.message() : ""));
  return {k, dir};
}

}  // namespace f2k::workflow
