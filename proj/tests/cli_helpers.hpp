#ifndef CASECRIT_TESTS_CLI_HELPERS_HPP_
#define CASECRIT_TESTS_CLI_HELPERS_HPP_

#include <unistd.h>

#include <filesystem>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "casecrit/cli.hpp"
#include "casecrit/io.hpp"

namespace testutil {

namespace fs = std::filesystem;

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("casecrit_" + tag + "_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const fs::path& path() const { return path_; }
  std::string operator/(const std::string& name) const {
    return (path_ / name).string();
  }

 private:
  fs::path path_;
};

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

inline CliResult run(std::vector<std::string> args) {
  args.insert(args.begin(), "casecrit");
  std::ostringstream out, err;
  CliResult r;
  r.code = casecrit::run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

// File name to contents for every regular file in dir.
inline std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file()) {
      files[entry.path().filename().string()] =
          casecrit::io::read_file(entry.path());
    }
  }
  return files;
}

}  // namespace testutil

#endif  // CASECRIT_TESTS_CLI_HELPERS_HPP_
