#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fht {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXd;
using CMatrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXd;

/// Failure taxonomy; values double as process exit codes.
enum class ErrorKind : int {
  Usage = 2,
  Io = 3,
  Symmetry = 4,
  Decomposition = 5,
  Verification = 6,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }
  int exit_code() const { return static_cast<int>(kind_); }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
  throw Error(kind, msg);
}

// Pinned default tolerances.
inline constexpr double kTolSym = 1e-12;     // symmetry validation
inline constexpr double kTolInput = 1e-10;   // input realness / file validation
inline constexpr double kTolOrth = 1e-10;    // orthogonality / unitarity
inline constexpr double kTolRecon = 1e-10;   // reconstruction residuals
inline constexpr double kWeightDropFloor = 1e-14;  // zero-weight slice drop
inline constexpr int kMaxFockModes = 12;     // dense Fock guard (dim 4096)
inline constexpr int kMaxTrotterModes = 8;   // matrix-exponential guard

/// N_f x N_f complex Hermitian coefficient matrix of the one-body term.
struct OneBodyMatrix {
  int n_modes = 0;
  CMatrix entries;  // f(p, q)

  OneBodyMatrix() = default;
  explicit OneBodyMatrix(CMatrix f)
      : n_modes(static_cast<int>(f.rows())), entries(std::move(f)) {
    if (entries.rows() != entries.cols())
      fail(ErrorKind::Usage, "one-body matrix must be square");
  }
  static OneBodyMatrix zero(int n) {
    return OneBodyMatrix(CMatrix::Zero(n, n));
  }
  /// Largest deviation from f = f^dagger.
  double hermiticity_defect() const {
    return n_modes == 0
               ? 0.0
               : (entries - entries.adjoint()).cwiseAbs().maxCoeff();
  }
};

/// Rank-4 real coefficient tensor h(p,q,r,s) of the two-body term, stored
/// dense row-major with s fastest. Valid tensors are antisymmetric in (p,q)
/// and in (r,s) and invariant under the index mirror (p,q,r,s) -> (s,r,q,p).
struct TwoBodyTensor {
  int n_modes = 0;
  std::vector<double> entries;  // size n_modes^4

  TwoBodyTensor() = default;
  explicit TwoBodyTensor(int n)
      : n_modes(n), entries(static_cast<size_t>(n) * n * n * n, 0.0) {
    if (n < 1) fail(ErrorKind::Usage, "n_modes must be positive");
  }

  double& at(int p, int q, int r, int s) {
    return entries[((static_cast<size_t>(p) * n_modes + q) * n_modes + r) *
                       n_modes +
                   s];
  }
  double at(int p, int q, int r, int s) const {
    return entries[((static_cast<size_t>(p) * n_modes + q) * n_modes + r) *
                       n_modes +
                   s];
  }
  double max_abs() const {
    double m = 0.0;
    for (double x : entries) m = std::max(m, std::abs(x));
    return m;
  }
  double frobenius_norm() const {
    double s = 0.0;
    for (double x : entries) s += x * x;
    return std::sqrt(s);
  }
};

/// N_f^2 x N_f^2 symmetric flattening M[idx(p,s), idx(q,r)] = h(p,q,r,s)
/// with idx(x,y) = x*N_f + y. Commutes with the pair-swap permutation
/// idx(x,y) -> idx(y,x).
struct GroupedMatrix {
  int n_modes = 0;
  Matrix entries;
};

/// Full Hamiltonian data: one-body coefficients plus interaction tensor.
struct HamiltonianInstance {
  OneBodyMatrix one_body;
  TwoBodyTensor two_body;
  std::string label;

  int n_modes() const { return two_body.n_modes; }
};

inline int pair_index(int x, int y, int n) { return x * n + y; }

}  // namespace fht
