#pragma once

#include "fht/tensor.hpp"
#include "fht/types.hpp"

namespace fht {

/// Orthogonal eigendecomposition of the grouped matrix, M = O diag(w) O^T,
/// with weights ordered by descending absolute value and sign-canonicalized
/// eigenvector columns.
struct SchurResult {
  int n_modes = 0;
  Vector weights;  // length N_f^2
  Matrix vectors;  // N_f^2 x N_f^2, column i pairs with weights[i]
};

enum class Parity { Symmetric, Antisymmetric };

inline const char* parity_name(Parity p) {
  return p == Parity::Symmetric ? "S" : "A";
}

/// One retained term of the factorization: an eigenvector of the grouped
/// matrix reshaped into an N_f x N_f matrix of definite transpose parity,
/// together with its own eigendecomposition.
///   Symmetric:     slice = U diag(lambdas) U^dagger, U real orthogonal
///   Antisymmetric: slice = U diag(i*lambdas) U^dagger, U unitary
struct FactorSlice {
  double weight = 0.0;
  Parity parity = Parity::Symmetric;
  Matrix slice;     // N_f x N_f, slice = +/- slice^T exactly
  CMatrix rotation; // N_f x N_f unitary U
  Vector lambdas;   // descending; +/- paired for Antisymmetric parity
};

struct FactorizationOptions {
  double degeneracy_tol = 1e-9;  // eigenvalue clustering, scaled by max(1,|M|_F)
  double parity_tol = 1e-9;      // slice classification
  double weight_cutoff = 0.0;    // drop |weight| <= max(cutoff, 1e-14)

  void validate() const {
    if (degeneracy_tol < 0 || parity_tol < 0 || weight_cutoff < 0)
      fail(ErrorKind::Usage, "factorization tolerances must be >= 0");
  }
};

/// Symmetric eigendecomposition of the grouped matrix with deterministic
/// ordering (descending |weight|) and sign convention (first non-negligible
/// eigenvector component positive).
SchurResult schur_grouped(const GroupedMatrix& m);

/// A (weight, eigenvector) pair whose vector is an exact eigenvector of the
/// pair-swap permutation: P v = +v (even) or P v = -v (odd).
struct ParityVector {
  double weight = 0.0;
  bool even = true;
  Vector vec;  // length N_f^2
};

/// Resolves degenerate eigenvalue clusters against the pair-swap symmetry:
/// inside each cluster the eigenbasis is projected onto the even/odd
/// subspaces of P and re-orthonormalized, so every output vector has definite
/// parity. Throws ErrorKind::Decomposition when a cluster cannot be split
/// cleanly (input symmetry violation).
std::vector<ParityVector> resolve_parity(const SchurResult& res,
                                         const FactorizationOptions& opts);

/// Reshapes parity-definite eigenvectors into slice matrices, classifies them
/// as Symmetric/Antisymmetric, drops negligible weights, and orders the list
/// canonically (descending |weight|; ties: descending weight, Symmetric
/// first). Rotations/lambdas are not yet filled.
std::vector<FactorSlice> slice_and_classify(const std::vector<ParityVector>& pairs,
                                            const FactorizationOptions& opts);

/// Fills rotation and lambdas of one slice. Symmetric slices get a real
/// orthogonal eigenbasis; antisymmetric slices get the unitary eigenbasis of
/// the Hermitian matrix i*slice with lambdas = -mu, so that
/// slice = U diag(i*lambdas) U^dagger. Eigenvalues sorted descending, column
/// phases canonicalized (largest-magnitude component real positive).
FactorSlice diagonalize_slice(FactorSlice slice);

/// Full factorization of a grouped matrix: schur_grouped -> resolve_parity ->
/// slice_and_classify -> per-slice diagonalization (parallel over slices).
std::vector<FactorSlice> factor_grouped(const GroupedMatrix& m,
                                        const FactorizationOptions& opts);

}  // namespace fht
