#pragma once

#include "fht/types.hpp"

#include <array>

namespace fht {

/// Per-relation maximum absolute defects of the two-body index symmetries.
/// The seven nontrivial relations are checked against a common tolerance.
struct SymmetryReport {
  static constexpr int kRelationCount = 7;
  static const std::array<const char*, kRelationCount> kRelationNames;

  std::array<double, kRelationCount> defects{};
  double tolerance = kTolSym;
  bool ok = false;

  double max_defect() const;
};

/// Raw rank-4 complex array, the antisymmetrizer input. Row-major, s fastest.
struct RawTensor {
  int n_modes = 0;
  std::vector<Complex> entries;

  explicit RawTensor(int n)
      : n_modes(n), entries(static_cast<size_t>(n) * n * n * n, Complex{}) {}
  Complex& at(int p, int q, int r, int s) {
    return entries[((static_cast<size_t>(p) * n_modes + q) * n_modes + r) *
                       n_modes +
                   s];
  }
  const Complex& at(int p, int q, int r, int s) const {
    return entries[((static_cast<size_t>(p) * n_modes + q) * n_modes + r) *
                       n_modes +
                   s];
  }
};

/// Diagnostics produced while antisymmetrizing raw matrix elements.
struct AntisymmetrizeResult {
  TwoBodyTensor tensor;
  double imag_defect = 0.0;    // max |Im| discarded after mirror averaging
  double mirror_defect = 0.0;  // max mirror asymmetry before averaging
};

/// Builds the antisymmetrized two-body tensor from raw matrix elements v:
/// h = 1/4 (v_pqrs - v_qprs + v_qpsr - v_pqsr), then h <- (h + mirror(h))/2
/// with mirror(h)_pqrs = h_srqp, then the imaginary part is dropped.
/// Rejects inputs whose discarded imaginary part or mirror defect exceeds
/// `tol_input` (the realness assumption of the factorization is violated).
AntisymmetrizeResult antisymmetrize(const RawTensor& v,
                                    double tol_input = kTolInput);

/// Convenience overload for already-real raw elements.
AntisymmetrizeResult antisymmetrize(const TwoBodyTensor& v,
                                    double tol_input = kTolInput);

/// Checks all seven index-symmetry relations of a candidate tensor.
SymmetryReport validate_symmetries(const TwoBodyTensor& h,
                                   double tol = kTolSym);

/// Flattens h into the pair-grouped symmetric matrix (see GroupedMatrix).
/// Throws ErrorKind::Symmetry when h fails validation at `tol`.
GroupedMatrix group(const TwoBodyTensor& h, double tol = kTolSym);

/// Exact inverse of group(); group -> ungroup is bit-for-bit identity.
TwoBodyTensor ungroup(const GroupedMatrix& m);

/// One-body correction produced by normal-ordering the reordered
/// interaction: S(p,r) = -1/2 sum_q h(p,q,r,q). Real symmetric.
OneBodyMatrix effective_one_body(const TwoBodyTensor& h);

}  // namespace fht
