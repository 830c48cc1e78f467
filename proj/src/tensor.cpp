#include "fht/tensor.hpp"

#include <algorithm>
#include <cmath>

namespace fht {

const std::array<const char*, SymmetryReport::kRelationCount>
    SymmetryReport::kRelationNames = {
        "swap_pq",        "swap_rs",        "swap_pq_swap_rs", "mirror",
        "mirror_swap_pq", "mirror_swap_rs", "mirror_swap_pq_rs",
};

double SymmetryReport::max_defect() const {
  return *std::max_element(defects.begin(), defects.end());
}

namespace {

size_t flat(int p, int q, int r, int s, int n) {
  return ((static_cast<size_t>(p) * n + q) * n + r) * n + s;
}

// Shared tail of both antisymmetrize overloads: mirror-average the
// quarter-combination result, record diagnostics, drop the imaginary part.
// (a + b)/2 over mirrored index pairs is mirror-symmetric bit-for-bit.
AntisymmetrizeResult finish(const std::vector<Complex>& quarter, int n,
                            double tol_input) {
  AntisymmetrizeResult res;
  res.tensor = TwoBodyTensor(n);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          const Complex a = quarter[flat(p, q, r, s, n)];
          const Complex b = quarter[flat(s, r, q, p, n)];
          res.mirror_defect = std::max(res.mirror_defect, std::abs(a - b));
          const Complex avg = 0.5 * (a + b);
          res.imag_defect = std::max(res.imag_defect, std::abs(avg.imag()));
          res.tensor.at(p, q, r, s) = avg.real();
        }
  if (res.mirror_defect > tol_input)
    fail(ErrorKind::Symmetry,
         "raw two-body elements violate the realness mirror symmetry (defect " +
             std::to_string(res.mirror_defect) + ")");
  if (res.imag_defect > tol_input)
    fail(ErrorKind::Symmetry,
         "raw two-body elements leave a non-negligible imaginary part (defect " +
             std::to_string(res.imag_defect) + ")");
  return res;
}

}  // namespace

AntisymmetrizeResult antisymmetrize(const RawTensor& v, double tol_input) {
  const int n = v.n_modes;
  if (static_cast<size_t>(n) * n * n * n != v.entries.size())
    fail(ErrorKind::Usage, "raw tensor is not hypercubic");
  // 0.25*((a-b)+(c-d)) keeps the output antisymmetries exact in floating
  // point: permuted quadruples see the same summands and rounding order.
  std::vector<Complex> quarter(v.entries.size());
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s)
          quarter[flat(p, q, r, s, n)] =
              0.25 * ((v.at(p, q, r, s) - v.at(q, p, r, s)) +
                      (v.at(q, p, s, r) - v.at(p, q, s, r)));
  return finish(quarter, n, tol_input);
}

AntisymmetrizeResult antisymmetrize(const TwoBodyTensor& v, double tol_input) {
  const int n = v.n_modes;
  if (static_cast<size_t>(n) * n * n * n != v.entries.size())
    fail(ErrorKind::Usage, "raw tensor is not hypercubic");
  std::vector<Complex> quarter(v.entries.size());
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s)
          quarter[flat(p, q, r, s, n)] =
              0.25 * ((v.at(p, q, r, s) - v.at(q, p, r, s)) +
                      (v.at(q, p, s, r) - v.at(p, q, s, r)));
  return finish(quarter, n, tol_input);
}

SymmetryReport validate_symmetries(const TwoBodyTensor& h, double tol) {
  const int n = h.n_modes;
  SymmetryReport rep;
  rep.tolerance = tol;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          const double x = h.at(p, q, r, s);
          const double images[SymmetryReport::kRelationCount] = {
              -h.at(q, p, r, s), -h.at(p, q, s, r), h.at(q, p, s, r),
              h.at(s, r, q, p),  -h.at(r, s, q, p), -h.at(s, r, p, q),
              h.at(r, s, p, q),
          };
          for (int k = 0; k < SymmetryReport::kRelationCount; ++k)
            rep.defects[k] = std::max(rep.defects[k], std::abs(x - images[k]));
        }
  rep.ok = rep.max_defect() <= tol;
  return rep;
}

GroupedMatrix group(const TwoBodyTensor& h, double tol) {
  const auto rep = validate_symmetries(h, tol);
  if (!rep.ok)
    fail(ErrorKind::Symmetry,
         "two-body tensor fails symmetry validation (max defect " +
             std::to_string(rep.max_defect()) + ")");
  const int n = h.n_modes;
  GroupedMatrix m;
  m.n_modes = n;
  m.entries = Matrix::Zero(n * n, n * n);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s)
          m.entries(pair_index(p, s, n), pair_index(q, r, n)) =
              h.at(p, q, r, s);
  return m;
}

TwoBodyTensor ungroup(const GroupedMatrix& m) {
  const auto dim = m.entries.rows();
  if (dim != m.entries.cols())
    fail(ErrorKind::Usage, "grouped matrix must be square");
  const int n = static_cast<int>(std::llround(std::sqrt(double(dim))));
  if (static_cast<Eigen::Index>(n) * n != dim)
    fail(ErrorKind::Usage, "grouped matrix dimension is not a perfect square");
  TwoBodyTensor h(n);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s)
          h.at(p, q, r, s) = m.entries(pair_index(p, s, n), pair_index(q, r, n));
  return h;
}

OneBodyMatrix effective_one_body(const TwoBodyTensor& h) {
  const int n = h.n_modes;
  CMatrix s = CMatrix::Zero(n, n);
  for (int p = 0; p < n; ++p)
    for (int r = 0; r < n; ++r) {
      double acc = 0.0;
      for (int q = 0; q < n; ++q) acc += h.at(p, q, r, q);
      s(p, r) = -0.5 * acc;
    }
  return OneBodyMatrix(std::move(s));
}

}  // namespace fht
