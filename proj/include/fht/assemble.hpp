#pragma once

#include "fht/factorize.hpp"
#include "fht/tensor.hpp"
#include "fht/types.hpp"

#include <optional>

namespace fht {

/// The factored Hamiltonian: one-body part f, reordering correction S, and
/// the ordered slice list. The interaction equals
///   sum_L (+-1/2) w_L (sum_a lambda_a n_a)^2
/// with + for Symmetric and - for Antisymmetric slices, where n_a are number
/// operators in the slice's rotated basis.
struct FactoredHamiltonian {
  int n_modes = 0;
  OneBodyMatrix one_body;
  OneBodyMatrix correction;
  std::vector<FactorSlice> slices;
  FactorizationOptions options;

  int count(Parity p) const {
    int c = 0;
    for (const auto& s : slices) c += (s.parity == p) ? 1 : 0;
    return c;
  }
};

/// Truncation-threshold scan results; one entry per threshold.
struct TruncationReport {
  std::vector<double> thresholds;
  std::vector<int> kept_slices;
  std::vector<double> recon_error_frobenius;       // relative
  std::optional<std::vector<double>> spectrum_error;  // max |dE| over k lowest
};

/// Runs the whole pipeline on an instance: correction = effective_one_body(h),
/// slices = factor_grouped(group(h)).
FactoredHamiltonian factorize_hamiltonian(const HamiltonianInstance& inst,
                                          const FactorizationOptions& opts = {});

/// Rebuilds the grouped matrix as sum_L w_L vec(slice_L) vec(slice_L)^T and
/// returns its un-grouping. Exact (<= 1e-10 relative Frobenius) at zero
/// truncation.
TwoBodyTensor reconstruct_tensor(const FactoredHamiltonian& fh);

/// Drops slices with |weight| <= threshold (strict comparison: a threshold of
/// zero keeps every retained slice). One-body part and correction unchanged.
FactoredHamiltonian truncate(const FactoredHamiltonian& fh, double threshold);

/// Reconstruction-error scan over ascending thresholds; optionally also
/// compares the k lowest Fock eigenvalues of the truncated and exact forms.
TruncationReport truncation_scan(const HamiltonianInstance& inst,
                                 const std::vector<double>& thresholds,
                                 bool with_spectrum = false, int k = 4,
                                 const FactorizationOptions& opts = {});

}  // namespace fht
