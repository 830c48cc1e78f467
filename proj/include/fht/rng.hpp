#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace fht {

/// Seed-stable standard-normal stream. mt19937_64 output is pinned by the
/// C++ standard; the Box-Muller transform below avoids the
/// implementation-defined std::normal_distribution so fixed seeds give
/// identical bytes across standard libraries.
class NormalSampler {
 public:
  explicit NormalSampler(std::uint64_t seed) : engine_(seed) {}

  double operator()() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 0.0) u1 = uniform();  // log(0) guard
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * 3.141592653589793238462643383279502884 * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;

  double uniform() {  // [0, 1) with 53 random bits
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
};

}  // namespace fht
