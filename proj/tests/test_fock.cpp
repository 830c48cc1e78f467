#include <doctest.h>

#include "fht/assemble.hpp"
#include "fht/fock.hpp"
#include "fht/generators.hpp"
#include "helpers.hpp"

#include <cmath>

using namespace fht;
using fht::testing::canonical2;
using fht::testing::wrap;

namespace {

// Independent creation-operator builder used to cross-check the library's
// sign bookkeeping: c^dag_p with sign (-1)^(occupied modes below p).
CMatrix creation_matrix(int p, int n) {
  const int dim = 1 << n;
  CMatrix c = CMatrix::Zero(dim, dim);
  for (int b = 0; b < dim; ++b) {
    if (b & (1 << p)) continue;
    int sign = 1;
    for (int q = 0; q < p; ++q)
      if (b & (1 << q)) sign = -sign;
    c(b | (1 << p), b) = static_cast<double>(sign);
  }
  return c;
}

CMatrix total_number(int n) {
  const int dim = 1 << n;
  CMatrix num = CMatrix::Zero(dim, dim);
  for (int b = 0; b < dim; ++b) num(b, b) = __builtin_popcount(b);
  return num;
}

}  // namespace

TEST_CASE("build_from_tensor: worked 2-mode example is diag(0,0,0,2)") {
  const FockMatrix h = build_from_tensor(canonical2());
  REQUIRE(h.dim() == 4);
  CMatrix expected = CMatrix::Zero(4, 4);
  expected(3, 3) = 2.0;
  CHECK((h.entries - expected).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("build_from_tensor: pure one-body term is a number operator sum") {
  HamiltonianInstance inst;
  CMatrix f = CMatrix::Zero(2, 2);
  f(0, 0) = 0.25;
  f(1, 1) = -1.5;
  inst.one_body = OneBodyMatrix(f);
  inst.two_body = TwoBodyTensor(2);
  const FockMatrix h = build_from_tensor(inst);
  CHECK(h.entries(0, 0) == Complex(0.0, 0.0));
  CHECK(h.entries(1, 1) == Complex(0.25, 0.0));
  CHECK(h.entries(2, 2) == Complex(-1.5, 0.0));
  CHECK(h.entries(3, 3) == Complex(-1.25, 0.0));
  CHECK(h.entries.cwiseAbs().sum() ==
        doctest::Approx(0.25 + 1.5 + 1.25).epsilon(1e-14));
}

TEST_CASE("build_from_tensor: agreement with an independent operator build") {
  const int n = 3;
  const HamiltonianInstance inst = wrap(random_valid(n, 14));
  const FockMatrix h = build_from_tensor(inst);

  std::vector<CMatrix> cdag(n), cann(n);
  for (int p = 0; p < n; ++p) {
    cdag[p] = creation_matrix(p, n);
    cann[p] = cdag[p].adjoint();
  }
  CMatrix ref = CMatrix::Zero(1 << n, 1 << n);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          const double v = inst.two_body.at(p, q, r, s);
          if (v == 0.0) continue;
          ref += 0.5 * v * (cdag[p] * cdag[q] * cann[r] * cann[s]);
        }
  CHECK((h.entries - ref).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("build_from_tensor: Hermiticity and particle-number blocks") {
  const FockMatrix h = build_from_tensor(wrap(random_valid(5, 3)));
  CHECK((h.entries - h.entries.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  for (int b = 0; b < h.dim(); ++b)
    for (int c = 0; c < h.dim(); ++c)
      if (__builtin_popcount(b) != __builtin_popcount(c))
        CHECK(h.entries(b, c) == Complex(0.0, 0.0));
  const CMatrix num = total_number(5);
  CHECK((h.entries * num - num * h.entries).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("build_from_tensor: size guard") {
  CHECK_THROWS_AS(build_from_tensor(wrap(TwoBodyTensor(13))), Error);
}

TEST_CASE("build_from_factored: matches the tensor build") {
  SUBCASE("worked 2-mode example") {
    const HamiltonianInstance inst = canonical2();
    const FockMatrix a = build_from_tensor(inst);
    const FockMatrix b = build_from_factored(factorize_hamiltonian(inst));
    CHECK((a.entries - b.entries).cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("4-mode ring") {
    RingModelParams params;
    params.n_modes = 4;
    const HamiltonianInstance inst = ring_planewave(params);
    const FockMatrix a = build_from_tensor(inst);
    const FockMatrix b = build_from_factored(factorize_hamiltonian(inst));
    CHECK((a.entries - b.entries).cwiseAbs().maxCoeff() < 1e-10);
  }
  SUBCASE("random instances with one-body parts") {
    for (int n : {2, 3, 4}) {
      HamiltonianInstance inst = wrap(random_valid(n, 500 + n));
      CMatrix f = CMatrix::Random(n, n);
      inst.one_body = OneBodyMatrix(CMatrix(0.5 * (f + f.adjoint())));
      const FockMatrix a = build_from_tensor(inst);
      const FockMatrix b = build_from_factored(factorize_hamiltonian(inst));
      const double scale = std::max(1.0, a.entries.cwiseAbs().maxCoeff());
      CHECK((a.entries - b.entries).cwiseAbs().maxCoeff() <= 1e-9 * scale);
    }
  }
}

TEST_CASE("build_from_factored: empty factorization is the zero operator") {
  FactoredHamiltonian fh;
  fh.n_modes = 2;
  fh.one_body = OneBodyMatrix::zero(2);
  fh.correction = OneBodyMatrix::zero(2);
  CHECK(build_from_factored(fh).entries.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("compare_spectra: shift and identity") {
  const FockMatrix a = build_from_tensor(wrap(random_valid(3, 8)));
  CHECK(compare_spectra(a, a, 4) == 0.0);
  FockMatrix b = a;
  b.entries += 0.125 * CMatrix::Identity(8, 8);
  CHECK(compare_spectra(a, b, 4) == doctest::Approx(0.125).epsilon(1e-12));
}

TEST_CASE("compare_spectra: raw vs factored on a 6-mode random instance") {
  const HamiltonianInstance inst = wrap(random_valid(6, 2));
  const FockMatrix a = build_from_tensor(inst);
  const FockMatrix b = build_from_factored(factorize_hamiltonian(inst));
  CHECK(compare_spectra(a, b, 4) < 1e-9);
}

TEST_CASE("compare_spectra: dimension mismatch rejected") {
  const FockMatrix a = build_from_tensor(wrap(random_valid(2, 0)));
  const FockMatrix b = build_from_tensor(wrap(random_valid(3, 0)));
  CHECK_THROWS_AS(compare_spectra(a, b, 2), Error);
}

TEST_CASE("cross-slice rotated operators do not anticommute") {
  // The rotated operators satisfy canonical anticommutation relations only
  // within one slice; across slices a concrete witness breaks them.
  const HamiltonianInstance inst = wrap(random_valid(3, 6));
  const FactoredHamiltonian fh = factorize_hamiltonian(inst);
  REQUIRE(fh.slices.size() >= 2);
  const int n = 3;
  std::vector<CMatrix> cdag(n);
  for (int p = 0; p < n; ++p) cdag[p] = creation_matrix(p, n);

  auto rotated_annihilator = [&](const CMatrix& u, int a) {
    CMatrix b = CMatrix::Zero(1 << n, 1 << n);
    for (int q = 0; q < n; ++q) b += std::conj(u(q, a)) * cdag[q].adjoint();
    return b;
  };

  const CMatrix& u0 = fh.slices[0].rotation;
  const CMatrix& u1 = fh.slices[1].rotation;

  // Same slice: {b_a, b_c^dag} = delta_ac.
  double same_defect = 0.0;
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < n; ++c) {
      const CMatrix ba = rotated_annihilator(u0, a);
      const CMatrix bc = rotated_annihilator(u0, c);
      const CMatrix anti = ba * bc.adjoint() + bc.adjoint() * ba;
      const CMatrix expect =
          (a == c) ? CMatrix(CMatrix::Identity(1 << n, 1 << n))
                   : CMatrix(CMatrix::Zero(1 << n, 1 << n));
      same_defect =
          std::max(same_defect, (anti - expect).cwiseAbs().maxCoeff());
    }
  CHECK(same_defect < 1e-12);

  // Across slices: some pair deviates visibly.
  double cross_defect = 0.0;
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < n; ++c) {
      const CMatrix ba = rotated_annihilator(u0, a);
      const CMatrix bc = rotated_annihilator(u1, c);
      const CMatrix anti = ba * bc.adjoint() + bc.adjoint() * ba;
      const CMatrix expect =
          (a == c) ? CMatrix(CMatrix::Identity(1 << n, 1 << n))
                   : CMatrix(CMatrix::Zero(1 << n, 1 << n));
      cross_defect =
          std::max(cross_defect, (anti - expect).cwiseAbs().maxCoeff());
    }
  CHECK(cross_defect > 0.01);
}

TEST_CASE("trotter_scan: commuting factorization has zero error") {
  // Single symmetric slice; one-body and correction diagonal in the same
  // basis, so every exponential factor commutes with every other.
  FactoredHamiltonian fh;
  fh.n_modes = 2;
  CMatrix f = CMatrix::Zero(2, 2);
  f(0, 0) = 0.3;
  f(1, 1) = -0.7;
  fh.one_body = OneBodyMatrix(f);
  fh.correction = OneBodyMatrix::zero(2);
  FactorSlice s;
  s.weight = 0.8;
  s.parity = Parity::Symmetric;
  s.slice = Matrix::Zero(2, 2);
  s.slice(0, 0) = 2.0 / std::sqrt(5.0);
  s.slice(1, 1) = 1.0 / std::sqrt(5.0);
  s.rotation = CMatrix::Identity(2, 2);
  s.lambdas = Vector(2);
  s.lambdas << 2.0 / std::sqrt(5.0), 1.0 / std::sqrt(5.0);
  fh.slices.push_back(s);

  const TrotterScanResult res = trotter_scan(fh, {0.2, 0.1, 0.05, 0.025});
  for (double err : res.errors) CHECK(err <= 1e-13);
  CHECK(std::isnan(res.fitted_slope));  // no resolvable points to fit
}

TEST_CASE("trotter_scan: dt = 0 yields exactly zero error") {
  const FactoredHamiltonian fh =
      factorize_hamiltonian(wrap(random_valid(3, 19)));
  const TrotterScanResult res = trotter_scan(fh, {0.0, 0.1});
  CHECK(res.errors[0] == 0.0);
  CHECK(res.errors[1] > 0.0);
}

TEST_CASE("trotter_scan: halving dt quarters the error on a random instance") {
  const FactoredHamiltonian fh =
      factorize_hamiltonian(wrap(random_valid(4, 0)));
  const TrotterScanResult res = trotter_scan(fh, {0.2, 0.1, 0.05, 0.025});
  REQUIRE(res.errors.size() == 4);
  for (size_t i = 0; i + 1 < res.errors.size(); ++i) {
    const double ratio = res.errors[i] / res.errors[i + 1];
    CHECK(ratio == doctest::Approx(4.0).epsilon(0.15));
  }
  CHECK(res.fitted_slope > 1.9);
  CHECK(res.fitted_slope < 2.1);
}

TEST_CASE("trotter_scan: guards") {
  const FactoredHamiltonian ok = factorize_hamiltonian(wrap(random_valid(2, 1)));
  CHECK_THROWS_AS(trotter_scan(ok, {}), Error);
  CHECK_THROWS_AS(trotter_scan(ok, {-0.1}), Error);

  FactoredHamiltonian big;
  big.n_modes = 9;
  big.one_body = OneBodyMatrix::zero(9);
  big.correction = OneBodyMatrix::zero(9);
  CHECK_THROWS_AS(trotter_scan(big, {0.1}), Error);
}
