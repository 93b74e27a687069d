#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace f2k::workflow {

struct VersionHandle {
  int number = 0;  // 1 = baseline
  std::filesystem::path dir;  // <workdir>/<kernel>.v<number>
};

/// Numbered version directories of one kernel under a workdir. Numbering is
/// serialized through an exclusive lock file, so concurrent stores on the same
/// workdir never hand out the same number.
class VersionStore {
 public:
  VersionStore(std::filesystem::path workdir, std::string kernel);

  /// Creates `<kernel>.v<K>` with K = highest existing number + 1.
  /// Throws IoFailure.
  VersionHandle next_version();

  /// Existing version numbers, ascending.
  std::vector<int> existing() const;

  std::filesystem::path dir_for(int number) const;
  const std::filesystem::path& workdir() const { return workdir_; }
  const std::string& kernel() const { return kernel_; }

 private:
  std::filesystem::path workdir_;
  std::string kernel_;
};

/// Holds an exclusive flock on `path` (created if needed) for its lifetime.
class FileLock {
 public:
  explicit FileLock(const std::filesystem::path& path);
  ~FileLock();
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;

 private:
  int fd_ = -1;
};

}  // namespace f2k::workflow
