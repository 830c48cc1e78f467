#pragma once

#include "fht/assemble.hpp"
#include "fht/types.hpp"

#include <cstdint>
#include <string>

namespace fht {

// TensorFileV1: binary, little-endian.
//   magic "FHT1" | u16 version=1 | u16 N_f | u8 flags | 7 zero bytes |
//   [one-body: N_f^2 float64 row-major, or 2x float64 re,im when complex] |
//   N_f^4 float64 row-major h(p,q,r,s), s fastest.
// flags bit0: one-body block present; bit1: one-body stored as complex.
inline constexpr char kTensorMagic[4] = {'F', 'H', 'T', '1'};

/// Writes a TensorFileV1. The one-body block is emitted iff
/// `with_one_body`; it is stored complex iff any entry has a nonzero
/// imaginary part (or `force_complex`).
void save_tensor_file(const std::string& path, const HamiltonianInstance& inst,
                      bool with_one_body, bool force_complex = false);

/// Reads a TensorFileV1. Malformed bytes raise ErrorKind::Io; unless
/// `validate` is false, the loaded tensor must pass the symmetry checks at
/// tolerance 1e-10 (ErrorKind::Symmetry otherwise).
HamiltonianInstance load_tensor_file(const std::string& path,
                                     bool validate = true);

// FactorFileV1: JSON text with fixed key order and floats printed with 17
// significant digits, so save -> load -> save is byte-identical.
// Top level: format, n_modes, options{degeneracy_tol,parity_tol,
// weight_cutoff}, correction (N_f^2 reals, row-major), slices[]. Each slice:
// weight, parity ("S"/"A"), lambdas (N_f reals), rotation (2*N_f^2 reals,
// re/im interleaved, row-major). Slice matrices are rebuilt on load from the
// rotation and lambdas, then parity-projected exactly.
void save_factor_file(const std::string& path, const FactoredHamiltonian& fh);
FactoredHamiltonian load_factor_file(const std::string& path);

/// Serializes a double with 17 significant digits ("%.17g"), the format used
/// by FactorFileV1 and all report records. NaN becomes the string "nan".
std::string format_double(double x);

/// Minimal deterministic JSON writer for report records: insertion-ordered
/// keys, no whitespace variation, format_double for numbers.
class JsonWriter {
 public:
  JsonWriter& field(const std::string& key, double value);
  JsonWriter& field(const std::string& key, int value);
  JsonWriter& field(const std::string& key, std::int64_t value);
  JsonWriter& field(const std::string& key, bool value);
  JsonWriter& field(const std::string& key, const std::string& value);
  JsonWriter& field(const std::string& key, const char* value) {
    return field(key, std::string(value));
  }
  JsonWriter& field(const std::string& key, const std::vector<double>& values);
  JsonWriter& field(const std::string& key, const std::vector<int>& values);
  /// NaN-aware numeric field: writes "nan" (string) for NaN, number otherwise.
  JsonWriter& numeric_or_nan(const std::string& key, double value);
  std::string str() const;

 private:
  std::string body_;
  void key_prefix(const std::string& key);
};

}  // namespace fht
