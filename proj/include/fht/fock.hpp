#pragma once

#include "fht/assemble.hpp"
#include "fht/types.hpp"

namespace fht {

/// Dense Hermitian operator matrix in the 2^N_f occupation basis.
/// Basis state index b encodes occupations with bit p = occupation of mode p;
/// creation picks up the sign (-1)^(number of occupied modes below p).
struct FockMatrix {
  int n_modes = 0;
  CMatrix entries;  // 2^n_modes square

  Eigen::Index dim() const { return entries.rows(); }
};

/// First-order product-formula error scan.
struct TrotterScanResult {
  std::vector<double> dts;
  std::vector<double> errors;  // operator 2-norm per dt
  double fitted_slope = 0.0;   // log-log least squares; NaN when degenerate
};

/// One-body operator sum_pq C(p,q) c^dag_p c_q as a Fock matrix.
FockMatrix build_one_body(const CMatrix& coeff);

/// H = sum f_pq c^dag_p c_q + 1/2 sum h_pqrs c^dag_p c^dag_q c_r c_s.
/// Guard: N_f <= 12.
FockMatrix build_from_tensor(const HamiltonianInstance& inst);

/// Assembles F + S + sum_L (+-1/2) w_L D_L^2 with D_L = sum_a lambda_a n_a
/// built from the slice rotations. Must coincide with build_from_tensor for
/// untruncated factorizations. Guard: N_f <= 12.
FockMatrix build_from_factored(const FactoredHamiltonian& fh);

/// Max |E_i(A) - E_i(B)| over the k lowest eigenvalues.
double compare_spectra(const FockMatrix& a, const FockMatrix& b, int k);

/// err(dt) = |exp(i dt H) - exp(i dt (F+S)) prod_L exp(i dt V_L)|_2 with the
/// slice product in canonical list order. dt = 0 yields exactly 0. The slope
/// is fitted over points with dt > 0 and err > 1e-13; fewer than two such
/// points yield slope = NaN. Guard: N_f <= 8.
TrotterScanResult trotter_scan(const FactoredHamiltonian& fh,
                               const std::vector<double>& dts);

}  // namespace fht
