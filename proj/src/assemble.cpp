#include "fht/assemble.hpp"

#include "fht/fock.hpp"
#include "fht/tensor.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace fht {

namespace {

Vector vectorize(const Matrix& slice) {
  const int n = static_cast<int>(slice.rows());
  Vector v(n * n);
  for (int p = 0; p < n; ++p)
    for (int s = 0; s < n; ++s) v[pair_index(p, s, n)] = slice(p, s);
  return v;
}

Matrix rebuild_grouped(const std::vector<FactorSlice>& slices, int n) {
  const int k = static_cast<int>(slices.size());
  if (k == 0) return Matrix::Zero(n * n, n * n);
  // Assemble all slice vectors into one matrix so the weighted sum of
  // rank-one terms becomes a single dense product instead of k full-size
  // accumulation passes.
  Matrix basis(n * n, k);
  for (int j = 0; j < k; ++j) basis.col(j) = vectorize(slices[j].slice);
  Matrix scaled = basis;
  for (int j = 0; j < k; ++j) scaled.col(j) *= slices[j].weight;
  Matrix m(n * n, n * n);
  m.noalias() = scaled * basis.transpose();
  return m;
}

}  // namespace

FactoredHamiltonian factorize_hamiltonian(const HamiltonianInstance& inst,
                                          const FactorizationOptions& opts) {
  if (inst.one_body.n_modes != inst.two_body.n_modes)
    fail(ErrorKind::Usage, "one-body and two-body mode counts differ");
  FactoredHamiltonian fh;
  fh.n_modes = inst.n_modes();
  fh.one_body = inst.one_body;
  fh.correction = effective_one_body(inst.two_body);
  fh.slices = factor_grouped(group(inst.two_body, kTolInput), opts);
  fh.options = opts;
  return fh;
}

TwoBodyTensor reconstruct_tensor(const FactoredHamiltonian& fh) {
  GroupedMatrix m{fh.n_modes, rebuild_grouped(fh.slices, fh.n_modes)};
  return ungroup(m);
}

FactoredHamiltonian truncate(const FactoredHamiltonian& fh, double threshold) {
  if (threshold < 0)
    fail(ErrorKind::Usage, "truncation threshold must be >= 0");
  FactoredHamiltonian out = fh;
  out.slices.clear();
  for (const FactorSlice& slice : fh.slices)
    if (std::abs(slice.weight) > threshold) out.slices.push_back(slice);
  return out;
}

TruncationReport truncation_scan(const HamiltonianInstance& inst,
                                 const std::vector<double>& thresholds,
                                 bool with_spectrum, int k,
                                 const FactorizationOptions& opts) {
  if (thresholds.empty())
    fail(ErrorKind::Usage, "threshold list must not be empty");
  if (!std::is_sorted(thresholds.begin(), thresholds.end()))
    fail(ErrorKind::Usage, "thresholds must be ascending");
  if (thresholds.front() < 0)
    fail(ErrorKind::Usage, "thresholds must be >= 0");

  const FactoredHamiltonian fh = factorize_hamiltonian(inst, opts);
  const Matrix m = group(inst.two_body, kTolInput).entries;
  const double m_norm = m.norm();

  TruncationReport report;
  report.thresholds = thresholds;
  if (with_spectrum) report.spectrum_error.emplace();

  Vector exact_spectrum;
  if (with_spectrum) {
    const FockMatrix exact = build_from_tensor(inst);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(exact.entries);
    exact_spectrum = es.eigenvalues();
  }

  for (const double threshold : thresholds) {
    const FactoredHamiltonian cut = truncate(fh, threshold);
    report.kept_slices.push_back(static_cast<int>(cut.slices.size()));
    const double err = (rebuild_grouped(cut.slices, fh.n_modes) - m).norm();
    report.recon_error_frobenius.push_back(m_norm == 0.0 ? 0.0 : err / m_norm);
    if (with_spectrum) {
      const FockMatrix approx = build_from_factored(cut);
      Eigen::SelfAdjointEigenSolver<CMatrix> es(approx.entries);
      const int kk = std::min<int>(k, static_cast<int>(exact_spectrum.size()));
      double worst = 0.0;
      for (int i = 0; i < kk; ++i)
        worst = std::max(worst,
                         std::abs(es.eigenvalues()[i] - exact_spectrum[i]));
      report.spectrum_error->push_back(worst);
    }
  }
  return report;
}

}  // namespace fht
