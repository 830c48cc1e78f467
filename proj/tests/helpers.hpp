#pragma once

#include "fht/assemble.hpp"
#include "fht/tensor.hpp"
#include "fht/types.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

namespace fht::testing {

/// The 2-mode worked example: raw v with the single entry v(0,1,1,0) = 4,
/// which antisymmetrizes to h(0,1,1,0) = h(1,0,0,1) = 1 and
/// h(1,0,1,0) = h(0,1,0,1) = -1.
inline HamiltonianInstance canonical2() {
  RawTensor v(2);
  v.at(0, 1, 1, 0) = 4.0;
  HamiltonianInstance inst;
  inst.two_body = antisymmetrize(v).tensor;
  inst.one_body = OneBodyMatrix::zero(2);
  inst.label = "canonical2";
  return inst;
}

inline HamiltonianInstance wrap(TwoBodyTensor h, const std::string& label = "") {
  HamiltonianInstance inst;
  inst.one_body = OneBodyMatrix::zero(h.n_modes);
  inst.two_body = std::move(h);
  inst.label = label;
  return inst;
}

inline double max_abs_diff(const TwoBodyTensor& a, const TwoBodyTensor& b) {
  double m = 0.0;
  for (size_t i = 0; i < a.entries.size(); ++i)
    m = std::max(m, std::abs(a.entries[i] - b.entries[i]));
  return m;
}

inline double rel_frobenius(const TwoBodyTensor& approx,
                            const TwoBodyTensor& exact) {
  double diff2 = 0.0;
  for (size_t i = 0; i < exact.entries.size(); ++i) {
    const double d = approx.entries[i] - exact.entries[i];
    diff2 += d * d;
  }
  const double norm = exact.frobenius_norm();
  return norm > 0.0 ? std::sqrt(diff2) / norm : std::sqrt(diff2);
}

/// Scratch directory unique to this process, removed on destruction.
class TempDir {
 public:
  TempDir() {
    auto base = std::filesystem::temp_directory_path();
    std::mt19937_64 rng(std::random_device{}());
    dir_ = base / ("fht-test-" + std::to_string(rng()));
    std::filesystem::create_directories(dir_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(dir_, ec);
  }
  std::string path(const std::string& name) const {
    return (dir_ / name).string();
  }

 private:
  std::filesystem::path dir_;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

/// Runs the CLI binary (path injected at compile time) with the given
/// argument string, capturing exit code and both streams.
inline CliResult run_cli(const std::string& args, const TempDir& tmp) {
#ifndef FHT_CLI_PATH
#error "FHT_CLI_PATH must be defined for CLI tests"
#endif
  static int counter = 0;
  const std::string out_path = tmp.path("cli-out-" + std::to_string(counter));
  const std::string err_path = tmp.path("cli-err-" + std::to_string(counter));
  ++counter;
  const std::string cmd = std::string(FHT_CLI_PATH) + " " + args + " > " +
                          out_path + " 2> " + err_path;
  const int status = std::system(cmd.c_str());
  CliResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = read_file(out_path);
  result.err = read_file(err_path);
  return result;
}

}  // namespace fht::testing
