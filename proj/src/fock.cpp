#include "fht/fock.hpp"

#include "fht/parallel.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

namespace fht {

namespace {

// (-1)^(occupied modes below p) -- the fermionic reordering sign.
double mode_sign(unsigned state, int p) {
  const unsigned below = state & ((1u << p) - 1u);
  return (std::popcount(below) & 1) ? -1.0 : 1.0;
}

void check_fock_guard(int n) {
  if (n < 1 || n > kMaxFockModes)
    fail(ErrorKind::Usage, "occupation-basis builds support 1.." +
                               std::to_string(kMaxFockModes) + " modes, got " +
                               std::to_string(n));
}

// Groups basis states by particle number; applying a one-body-derived
// operator never leaves a sector, so squares can be done block-wise.
std::vector<std::vector<int>> number_sectors(int n) {
  std::vector<std::vector<int>> sectors(static_cast<size_t>(n) + 1);
  for (int b = 0; b < (1 << n); ++b)
    sectors[static_cast<size_t>(std::popcount(static_cast<unsigned>(b)))]
        .push_back(b);
  return sectors;
}

// result += factor * D^2 computed sector-by-sector.
void add_scaled_square(CMatrix& result, const CMatrix& d, Complex factor,
                       const std::vector<std::vector<int>>& sectors) {
  for (const auto& sector : sectors) {
    const int m = static_cast<int>(sector.size());
    CMatrix block(m, m);
    for (int j = 0; j < m; ++j)
      for (int i = 0; i < m; ++i) block(i, j) = d(sector[i], sector[j]);
    const CMatrix square = block * block;
    for (int j = 0; j < m; ++j)
      for (int i = 0; i < m; ++i)
        result(sector[i], sector[j]) += factor * square(i, j);
  }
}

}  // namespace

FockMatrix build_one_body(const CMatrix& coeff) {
  const int n = static_cast<int>(coeff.rows());
  check_fock_guard(n);
  const int dim = 1 << n;
  FockMatrix fm;
  fm.n_modes = n;
  fm.entries = CMatrix::Zero(dim, dim);
  for (int b = 0; b < dim; ++b) {
    const unsigned ub = static_cast<unsigned>(b);
    for (int q = 0; q < n; ++q) {
      if (!(ub >> q & 1u)) continue;
      const double sq = mode_sign(ub, q);
      const unsigned b1 = ub & ~(1u << q);
      for (int p = 0; p < n; ++p) {
        if (b1 >> p & 1u) continue;
        const double sp = mode_sign(b1, p);
        fm.entries(static_cast<int>(b1 | (1u << p)), b) +=
            coeff(p, q) * (sq * sp);
      }
    }
  }
  return fm;
}

FockMatrix build_from_tensor(const HamiltonianInstance& inst) {
  const int n = inst.n_modes();
  check_fock_guard(n);
  FockMatrix fm = build_one_body(inst.one_body.entries);
  const TwoBodyTensor& h = inst.two_body;
  const int dim = 1 << n;
  // 1/2 sum_pqrs h(p,q,r,s) c+_p c+_q c_r c_s, applied right to left.
  for (int b = 0; b < dim; ++b) {
    const unsigned ub = static_cast<unsigned>(b);
    for (int s = 0; s < n; ++s) {
      if (!(ub >> s & 1u)) continue;
      const double sign_s = mode_sign(ub, s);
      const unsigned b1 = ub & ~(1u << s);
      for (int r = 0; r < n; ++r) {
        if (!(b1 >> r & 1u)) continue;
        const double sign_r = sign_s * mode_sign(b1, r);
        const unsigned b2 = b1 & ~(1u << r);
        for (int q = 0; q < n; ++q) {
          if (b2 >> q & 1u) continue;
          const double sign_q = sign_r * mode_sign(b2, q);
          const unsigned b3 = b2 | (1u << q);
          for (int p = 0; p < n; ++p) {
            if (b3 >> p & 1u) continue;
            const double sign_p = sign_q * mode_sign(b3, p);
            fm.entries(static_cast<int>(b3 | (1u << p)), b) +=
                0.5 * h.at(p, q, r, s) * sign_p;
          }
        }
      }
    }
  }
  return fm;
}

FockMatrix build_from_factored(const FactoredHamiltonian& fh) {
  const int n = fh.n_modes;
  check_fock_guard(n);
  CMatrix one_body_coeff = fh.correction.entries;
  if (fh.one_body.n_modes > 0) one_body_coeff += fh.one_body.entries;
  FockMatrix fm = build_one_body(one_body_coeff);

  const auto sectors = number_sectors(n);
  for (const FactorSlice& slice : fh.slices) {
    // D = sum_a lambda_a n_a has one-body coefficients U diag(lambda) U^dag,
    // which is the slice itself (Symmetric) or -i * slice (Antisymmetric).
    CMatrix coeff =
        slice.rotation *
        slice.lambdas.cast<Complex>().asDiagonal() *
        slice.rotation.adjoint();
    const FockMatrix d = build_one_body(coeff);
    const double sign = slice.parity == Parity::Symmetric ? 1.0 : -1.0;
    add_scaled_square(fm.entries, d.entries, Complex(sign * 0.5 * slice.weight),
                      sectors);
  }
  return fm;
}

double compare_spectra(const FockMatrix& a, const FockMatrix& b, int k) {
  if (a.dim() != b.dim())
    fail(ErrorKind::Usage, "operator dimensions differ");
  Eigen::SelfAdjointEigenSolver<CMatrix> ea(a.entries);
  Eigen::SelfAdjointEigenSolver<CMatrix> eb(b.entries);
  const int kk = std::min<int>(k, static_cast<int>(a.dim()));
  double worst = 0.0;
  for (int i = 0; i < kk; ++i)
    worst = std::max(worst, std::abs(ea.eigenvalues()[i] - eb.eigenvalues()[i]));
  return worst;
}

namespace {

struct EigPair {
  CMatrix vectors;
  Vector values;
};

EigPair hermitian_eig(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
  if (es.info() != Eigen::Success)
    fail(ErrorKind::Decomposition, "dense eigensolver did not converge");
  return {es.eigenvectors(), es.eigenvalues()};
}

CMatrix unitary_exp(const EigPair& eig, double dt) {
  const Eigen::Index dim = eig.values.size();
  Eigen::VectorXcd phases(dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    phases[i] = std::exp(Complex(0.0, dt * eig.values[i]));
  return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

double operator_norm(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m.adjoint() * m,
                                            Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

}  // namespace

TrotterScanResult trotter_scan(const FactoredHamiltonian& fh,
                               const std::vector<double>& dts) {
  const int n = fh.n_modes;
  if (n < 1 || n > kMaxTrotterModes)
    fail(ErrorKind::Usage, "product-formula scans support 1.." +
                               std::to_string(kMaxTrotterModes) +
                               " modes, got " + std::to_string(n));
  if (dts.empty()) fail(ErrorKind::Usage, "time-step list must not be empty");
  for (double dt : dts)
    if (dt < 0.0 || !std::isfinite(dt))
      fail(ErrorKind::Usage, "time steps must be finite and >= 0");

  // Split into the one-body factor and one factor per slice, in the canonical
  // slice order; the full operator is their exact sum.
  const auto sectors = number_sectors(n);
  CMatrix one_body_coeff = fh.correction.entries;
  if (fh.one_body.n_modes > 0) one_body_coeff += fh.one_body.entries;
  std::vector<CMatrix> parts;
  parts.push_back(build_one_body(one_body_coeff).entries);
  for (const FactorSlice& slice : fh.slices) {
    CMatrix coeff = slice.rotation *
                    slice.lambdas.cast<Complex>().asDiagonal() *
                    slice.rotation.adjoint();
    const FockMatrix d = build_one_body(coeff);
    CMatrix part = CMatrix::Zero(d.dim(), d.dim());
    const double sign = slice.parity == Parity::Symmetric ? 1.0 : -1.0;
    add_scaled_square(part, d.entries, Complex(sign * 0.5 * slice.weight),
                      sectors);
    parts.push_back(std::move(part));
  }
  CMatrix total = parts.front();
  for (size_t i = 1; i < parts.size(); ++i) total += parts[i];

  const EigPair total_eig = hermitian_eig(total);
  std::vector<EigPair> part_eigs(parts.size());
  parallel_for(parts.size(),
               [&](std::size_t i) { part_eigs[i] = hermitian_eig(parts[i]); });

  TrotterScanResult result;
  result.dts = dts;
  result.errors.assign(dts.size(), 0.0);
  parallel_for(dts.size(), [&](std::size_t i) {
    const double dt = dts[i];
    if (dt == 0.0) return;  // both sides are the identity
    CMatrix product = unitary_exp(part_eigs.front(), dt);
    for (size_t j = 1; j < part_eigs.size(); ++j)
      product = product * unitary_exp(part_eigs[j], dt);
    result.errors[i] = operator_norm(unitary_exp(total_eig, dt) - product);
  });

  // Log-log least squares over resolvable points.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (size_t i = 0; i < dts.size(); ++i) {
    if (dts[i] <= 0.0 || result.errors[i] <= 1e-13) continue;
    const double x = std::log(dts[i]);
    const double y = std::log(result.errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  if (count < 2) {
    result.fitted_slope = std::numeric_limits<double>::quiet_NaN();
  } else {
    result.fitted_slope =
        (count * sxy - sx * sy) / (count * sxx - sx * sx);
  }
  return result;
}

}  // namespace fht
