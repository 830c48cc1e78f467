#include "fht/factorize.hpp"

#include "fht/parallel.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fht {

namespace {

// Pair-swap permutation on flattened pair indices: idx(x,y) -> idx(y,x).
Vector apply_pair_swap(const Vector& v, int n) {
  Vector out(n * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      out[pair_index(y, x, n)] = v[pair_index(x, y, n)];
  return out;
}

// First component above the negligibility cutoff is made positive.
void canonical_sign(Vector& v) {
  const double scale = v.cwiseAbs().maxCoeff();
  if (scale == 0.0) return;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (std::abs(v[i]) > 1e-12 * scale) {
      if (v[i] < 0.0) v = -v;
      return;
    }
}

// Largest-magnitude component (first on ties) rotated to the positive real
// axis.
void canonical_phase(Eigen::Ref<Eigen::VectorXcd> col) {
  Eigen::Index best = 0;
  double best_mag = 0.0;
  for (Eigen::Index i = 0; i < col.size(); ++i) {
    const double mag = std::abs(col[i]);
    if (mag > best_mag) {
      best_mag = mag;
      best = i;
    }
  }
  if (best_mag == 0.0) return;
  col *= std::conj(col[best]) / best_mag;
}

struct Cluster {
  std::vector<int> members;  // indices into the ascending eigh order
};

}  // namespace

SchurResult schur_grouped(const GroupedMatrix& m) {
  const Eigen::Index dim = m.entries.rows();
  if (m.entries.cols() != dim)
    fail(ErrorKind::Usage, "grouped matrix must be square");
  const double scale = std::max(1.0, m.entries.cwiseAbs().maxCoeff());
  if ((m.entries - m.entries.transpose()).cwiseAbs().maxCoeff() >
      kTolSym * scale)
    fail(ErrorKind::Symmetry, "grouped matrix is not symmetric");

  Eigen::SelfAdjointEigenSolver<Matrix> es(m.entries);
  if (es.info() != Eigen::Success)
    fail(ErrorKind::Decomposition, "grouped-matrix eigensolver did not converge");

  // Order by descending |weight|; ties by descending weight, then by the
  // solver's ascending position (stable).
  std::vector<int> order(static_cast<size_t>(dim));
  std::iota(order.begin(), order.end(), 0);
  const Vector& w = es.eigenvalues();
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const double absa = std::abs(w[a]), absb = std::abs(w[b]);
    if (absa != absb) return absa > absb;
    return w[a] > w[b];
  });

  SchurResult res;
  res.n_modes = m.n_modes;
  res.weights = Vector(dim);
  res.vectors = Matrix(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    res.weights[i] = w[order[i]];
    Vector col = es.eigenvectors().col(order[i]);
    canonical_sign(col);
    res.vectors.col(i) = col;
  }
  return res;
}

std::vector<ParityVector> resolve_parity(const SchurResult& res,
                                         const FactorizationOptions& opts) {
  opts.validate();
  const int n = res.n_modes;
  const Eigen::Index dim = res.weights.size();
  std::vector<ParityVector> out;
  out.reserve(static_cast<size_t>(dim));
  if (dim == 0) return out;

  // Cluster near-equal eigenvalues on the ascending-value ordering; the gap
  // test is scaled by the matrix Frobenius norm (= sqrt(sum w^2)).
  std::vector<int> byvalue(static_cast<size_t>(dim));
  std::iota(byvalue.begin(), byvalue.end(), 0);
  std::stable_sort(byvalue.begin(), byvalue.end(),
                   [&](int a, int b) { return res.weights[a] < res.weights[b]; });
  const double scale = std::max(1.0, res.weights.norm());
  const double gap_tol = opts.degeneracy_tol * scale;

  std::vector<Cluster> clusters;
  for (Eigen::Index i = 0; i < dim; ++i) {
    const int idx = byvalue[static_cast<size_t>(i)];
    if (clusters.empty() ||
        res.weights[idx] - res.weights[clusters.back().members.back()] >
            gap_tol)
      clusters.push_back({});
    clusters.back().members.push_back(idx);
  }

  for (const Cluster& cluster : clusters) {
    const int k = static_cast<int>(cluster.members.size());
    double wmean = 0.0;
    Matrix basis(dim, k);
    for (int j = 0; j < k; ++j) {
      wmean += res.weights[cluster.members[j]];
      basis.col(j) = res.vectors.col(cluster.members[j]);
    }
    wmean /= k;

    Matrix swapped(dim, k);
    for (int j = 0; j < k; ++j)
      swapped.col(j) = apply_pair_swap(basis.col(j), n);

    int emitted = 0;
    for (const bool even : {true, false}) {
      const Matrix projected =
          even ? Matrix(0.5 * (basis + swapped)) : Matrix(0.5 * (basis - swapped));
      Eigen::JacobiSVD<Matrix> svd(projected, Eigen::ComputeThinU);
      const Vector& sv = svd.singularValues();
      int rank = 0;
      for (Eigen::Index i = 0; i < sv.size(); ++i) {
        const double mixedness = std::min(sv[i], std::abs(1.0 - sv[i]));
        if (mixedness > 1e-6)
          fail(ErrorKind::Decomposition,
               "degenerate cluster does not split into pair-swap parity "
               "sectors (singular value " +
                   std::to_string(sv[i]) + ")");
        if (sv[i] > 0.5) ++rank;
      }
      for (int i = 0; i < rank; ++i) {
        Vector u = svd.matrixU().col(i);
        // Exact parity enforcement: (u +- Pu) is a bit-exact eigenvector of
        // the swap because IEEE addition commutes.
        Vector pu = apply_pair_swap(u, n);
        u = even ? Vector(u + pu) : Vector(u - pu);
        u /= u.norm();
        canonical_sign(u);
        out.push_back({wmean, even, std::move(u)});
        ++emitted;
      }
    }
    if (emitted != k)
      fail(ErrorKind::Decomposition,
           "degenerate cluster rank mismatch after parity splitting (got " +
               std::to_string(emitted) + " of " + std::to_string(k) + ")");
  }
  return out;
}

std::vector<FactorSlice> slice_and_classify(const std::vector<ParityVector>& pairs,
                                            const FactorizationOptions& opts) {
  opts.validate();
  const double drop = std::max(opts.weight_cutoff, kWeightDropFloor);
  std::vector<FactorSlice> slices;
  for (const ParityVector& pv : pairs) {
    if (std::abs(pv.weight) <= drop) continue;
    const int n = static_cast<int>(std::llround(std::sqrt(double(pv.vec.size()))));
    Matrix o(n, n);
    for (int p = 0; p < n; ++p)
      for (int s = 0; s < n; ++s) o(p, s) = pv.vec[pair_index(p, s, n)];

    const double sym_part = 0.5 * (o + o.transpose()).cwiseAbs().maxCoeff();
    const double anti_part = 0.5 * (o - o.transpose()).cwiseAbs().maxCoeff();
    if (sym_part > opts.parity_tol && anti_part > opts.parity_tol)
      fail(ErrorKind::Decomposition,
           "slice has mixed transpose parity (symmetric part " +
               std::to_string(sym_part) + ", antisymmetric part " +
               std::to_string(anti_part) + ")");

    FactorSlice slice;
    slice.weight = pv.weight;
    slice.parity = pv.even ? Parity::Symmetric : Parity::Antisymmetric;
    // Exact parity projection (no-op for already pure matrices).
    slice.slice = pv.even ? Matrix(0.5 * (o + o.transpose()))
                          : Matrix(0.5 * (o - o.transpose()));
    slices.push_back(std::move(slice));
  }

  std::stable_sort(slices.begin(), slices.end(),
                   [](const FactorSlice& a, const FactorSlice& b) {
                     const double absa = std::abs(a.weight);
                     const double absb = std::abs(b.weight);
                     if (absa != absb) return absa > absb;
                     if (a.weight != b.weight) return a.weight > b.weight;
                     return a.parity == Parity::Symmetric &&
                            b.parity == Parity::Antisymmetric;
                   });
  return slices;
}

FactorSlice diagonalize_slice(FactorSlice slice) {
  const int n = static_cast<int>(slice.slice.rows());
  slice.rotation = CMatrix::Zero(n, n);
  slice.lambdas = Vector::Zero(n);

  if (slice.parity == Parity::Symmetric) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(slice.slice);
    if (es.info() != Eigen::Success)
      fail(ErrorKind::Decomposition, "slice eigensolver did not converge");
    // ascending -> descending; a stable reorder keeps the solver's column
    // order on exact ties (a zero slice keeps its identity eigenbasis).
    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return es.eigenvalues()[a] > es.eigenvalues()[b];
    });
    for (int i = 0; i < n; ++i) {
      slice.lambdas[i] = es.eigenvalues()[order[i]];
      slice.rotation.col(i) =
          es.eigenvectors().col(order[i]).cast<Complex>();
    }
  } else {
    // i*slice is Hermitian; with mu its ascending eigenvalues and
    // lambdas = -mu (descending), slice = U diag(i*lambdas) U^dagger.
    const CMatrix hermitian = Complex(0.0, 1.0) * slice.slice.cast<Complex>();
    Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian);
    if (es.info() != Eigen::Success)
      fail(ErrorKind::Decomposition, "slice eigensolver did not converge");
    for (int i = 0; i < n; ++i) {
      slice.lambdas[i] = -es.eigenvalues()[i];
      slice.rotation.col(i) = es.eigenvectors().col(i);
    }
  }
  for (int i = 0; i < n; ++i) canonical_phase(slice.rotation.col(i));
  return slice;
}

std::vector<FactorSlice> factor_grouped(const GroupedMatrix& m,
                                        const FactorizationOptions& opts) {
  const SchurResult schur = schur_grouped(m);
  const auto pairs = resolve_parity(schur, opts);
  std::vector<FactorSlice> slices = slice_and_classify(pairs, opts);
  parallel_for(slices.size(), [&](std::size_t i) {
    slices[i] = diagonalize_slice(std::move(slices[i]));
  });
  return slices;
}

}  // namespace fht
