#include "fht/generators.hpp"

#include "fht/rng.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace fht {

TwoBodyTensor random_valid(int n_modes, std::uint64_t seed) {
  if (n_modes < 1) fail(ErrorKind::Usage, "n_modes must be positive");
  NormalSampler normal(seed);
  TwoBodyTensor raw(n_modes);
  for (double& x : raw.entries) x = normal();
  // The raw noise has no structure at all; the antisymmetrizer is used here
  // as a projection, so its input-sanity tolerance must not bite.
  constexpr double unchecked = std::numeric_limits<double>::infinity();
  return antisymmetrize(raw, unchecked).tensor;
}

TwoBodyTensor real_basis_instance(int n_modes, int rank, std::uint64_t seed) {
  if (n_modes < 1) fail(ErrorKind::Usage, "n_modes must be positive");
  if (rank < 0) fail(ErrorKind::Usage, "rank must be >= 0");
  NormalSampler normal(seed);
  const int n = n_modes;
  TwoBodyTensor raw(n);
  for (int term = 0; term < rank; ++term) {
    Matrix g(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g(i, j) = normal();
    const Matrix m = 0.5 * (g + g.transpose());
    const double w = normal();
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q)
        for (int r = 0; r < n; ++r)
          for (int s = 0; s < n; ++s)
            raw.at(p, q, r, s) += w * m(p, s) * m(q, r);
  }
  return antisymmetrize(raw).tensor;
}

int ring_momentum(int p, int n_modes) { return p - (n_modes - 1) / 2; }

HamiltonianInstance ring_planewave(const RingModelParams& params) {
  params.validate();
  const int n = params.n_modes;
  const double length = params.ring_length;
  const double v0 = params.potential_strength;
  const double sigma = params.potential_width;
  const double two_pi = 2.0 * 3.141592653589793238462643383279502884;

  std::vector<double> k(static_cast<size_t>(n));
  for (int p = 0; p < n; ++p)
    k[static_cast<size_t>(p)] = two_pi * ring_momentum(p, n) / length;

  CMatrix f = CMatrix::Zero(n, n);
  for (int p = 0; p < n; ++p)
    f(p, p) = 0.5 * k[static_cast<size_t>(p)] * k[static_cast<size_t>(p)];

  // v(p,q,r,s) = V0/L * exp(-(k_p-k_s)^2 sigma^2/2) on momentum-conserving
  // quadruples; real because the Gaussian profile is even in k.
  TwoBodyTensor raw(n);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          if (ring_momentum(p, n) + ring_momentum(q, n) !=
              ring_momentum(r, n) + ring_momentum(s, n))
            continue;
          const double dk = k[static_cast<size_t>(p)] - k[static_cast<size_t>(s)];
          raw.at(p, q, r, s) =
              v0 * std::exp(-0.5 * dk * dk * sigma * sigma) / length;
        }

  HamiltonianInstance inst;
  inst.one_body = OneBodyMatrix(std::move(f));
  inst.two_body = antisymmetrize(raw).tensor;
  inst.label = "ring(n_modes=" + std::to_string(n) + ")";
  return inst;
}

}  // namespace fht
