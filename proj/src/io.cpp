#include "fht/io.hpp"

#include "fht/tensor.hpp"

#include <json.hpp>

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

static_assert(std::endian::native == std::endian::little,
              "file formats are little-endian; big-endian hosts need swapping");

namespace fht {

namespace {

constexpr std::uint8_t kFlagOneBody = 0x01;
constexpr std::uint8_t kFlagComplex = 0x02;
constexpr int kMaxFileModes = 1024;  // sanity bound against absurd headers

void write_bytes(std::ofstream& out, const void* data, size_t size) {
  out.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
}

void write_f64(std::ofstream& out, double x) { write_bytes(out, &x, 8); }

[[noreturn]] void malformed(const std::string& path, const std::string& why) {
  fail(ErrorKind::Io, path + ": malformed tensor file (" + why + ")");
}

}  // namespace

void save_tensor_file(const std::string& path, const HamiltonianInstance& inst,
                      bool with_one_body, bool force_complex) {
  const int n = inst.n_modes();
  if (with_one_body && inst.one_body.n_modes != n)
    fail(ErrorKind::Usage, "one-body and two-body mode counts differ");

  bool complex_one_body = force_complex;
  if (with_one_body && !complex_one_body)
    complex_one_body = inst.one_body.entries.imag().cwiseAbs().maxCoeff() != 0.0;

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::Io, path + ": cannot open for writing");

  write_bytes(out, kTensorMagic, 4);
  const std::uint16_t version = 1;
  const std::uint16_t modes = static_cast<std::uint16_t>(n);
  write_bytes(out, &version, 2);
  write_bytes(out, &modes, 2);
  const std::uint8_t flags = static_cast<std::uint8_t>(
      (with_one_body ? kFlagOneBody : 0) |
      (with_one_body && complex_one_body ? kFlagComplex : 0));
  write_bytes(out, &flags, 1);
  const char reserved[7] = {};
  write_bytes(out, reserved, 7);

  if (with_one_body) {
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) {
        write_f64(out, inst.one_body.entries(p, q).real());
        if (complex_one_body) write_f64(out, inst.one_body.entries(p, q).imag());
      }
  }
  for (double x : inst.two_body.entries) write_f64(out, x);
  out.flush();
  if (!out) fail(ErrorKind::Io, path + ": write failed");
}

HamiltonianInstance load_tensor_file(const std::string& path, bool validate) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, path + ": cannot open for reading");
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  if (!in.good() && !in.eof()) fail(ErrorKind::Io, path + ": read failed");

  if (bytes.size() < 16) malformed(path, "shorter than the 16-byte header");
  if (std::memcmp(bytes.data(), kTensorMagic, 4) != 0)
    malformed(path, "bad magic");
  std::uint16_t version, modes;
  std::memcpy(&version, bytes.data() + 4, 2);
  std::memcpy(&modes, bytes.data() + 6, 2);
  if (version != 1) malformed(path, "unsupported version");
  const std::uint8_t flags = static_cast<std::uint8_t>(bytes[8]);
  for (int i = 9; i < 16; ++i)
    if (bytes[static_cast<size_t>(i)] != 0) malformed(path, "nonzero reserved bytes");
  if (flags & ~(kFlagOneBody | kFlagComplex)) malformed(path, "unknown flags");
  if ((flags & kFlagComplex) && !(flags & kFlagOneBody))
    malformed(path, "complex flag without one-body block");
  const int n = modes;
  if (n < 1 || n > kMaxFileModes) malformed(path, "mode count out of range");

  const bool with_one_body = flags & kFlagOneBody;
  const bool complex_one_body = flags & kFlagComplex;
  const size_t nn = static_cast<size_t>(n) * n;
  const size_t one_body_doubles =
      with_one_body ? nn * (complex_one_body ? 2 : 1) : 0;
  const size_t expected = 16 + 8 * (one_body_doubles + nn * nn);
  if (bytes.size() != expected)
    malformed(path, "byte length does not match the header");

  const char* cursor = bytes.data() + 16;
  auto read_f64 = [&cursor]() {
    double x;
    std::memcpy(&x, cursor, 8);
    cursor += 8;
    return x;
  };

  HamiltonianInstance inst;
  CMatrix f = CMatrix::Zero(n, n);
  if (with_one_body)
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) {
        const double re = read_f64();
        const double im = complex_one_body ? read_f64() : 0.0;
        f(p, q) = Complex(re, im);
      }
  inst.one_body = OneBodyMatrix(std::move(f));
  inst.two_body = TwoBodyTensor(n);
  for (double& x : inst.two_body.entries) x = read_f64();
  inst.label = path;

  if (validate) {
    const SymmetryReport rep = validate_symmetries(inst.two_body, kTolInput);
    if (!rep.ok)
      fail(ErrorKind::Symmetry,
           path + ": tensor fails symmetry validation (max defect " +
               std::to_string(rep.max_defect()) + ")");
    if (inst.one_body.hermiticity_defect() > kTolInput)
      fail(ErrorKind::Symmetry, path + ": one-body block is not Hermitian");
  }
  return inst;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  // JSON parsers fold "-0" into plain 0, so emit negative zero as "0" up
  // front; save -> load -> save then stays byte-identical.
  if (x == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

namespace {

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

std::string join_doubles(const std::vector<double>& values) {
  std::string out = "[";
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) out += ",";
    out += format_double(values[i]);
  }
  out += "]";
  return out;
}

}  // namespace

void JsonWriter::key_prefix(const std::string& key) {
  if (!body_.empty()) body_ += ",";
  body_ += "\"" + json_escape(key) + "\":";
}

JsonWriter& JsonWriter::field(const std::string& key, double value) {
  key_prefix(key);
  body_ += format_double(value);
  return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, int value) {
  key_prefix(key);
  body_ += std::to_string(value);
  return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, std::int64_t value) {
  key_prefix(key);
  body_ += std::to_string(value);
  return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, bool value) {
  key_prefix(key);
  body_ += value ? "true" : "false";
  return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, const std::string& value) {
  key_prefix(key);
  body_ += "\"" + json_escape(value) + "\"";
  return *this;
}

JsonWriter& JsonWriter::field(const std::string& key,
                              const std::vector<double>& values) {
  key_prefix(key);
  body_ += join_doubles(values);
  return *this;
}

JsonWriter& JsonWriter::field(const std::string& key,
                              const std::vector<int>& values) {
  key_prefix(key);
  std::string out = "[";
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(values[i]);
  }
  body_ += out + "]";
  return *this;
}

JsonWriter& JsonWriter::numeric_or_nan(const std::string& key, double value) {
  key_prefix(key);
  if (std::isnan(value))
    body_ += "\"nan\"";
  else
    body_ += format_double(value);
  return *this;
}

std::string JsonWriter::str() const { return "{" + body_ + "}"; }

void save_factor_file(const std::string& path, const FactoredHamiltonian& fh) {
  const int n = fh.n_modes;
  std::ostringstream out;
  out << "{\n";
  out << "\"format\": \"FactorFileV1\",\n";
  out << "\"n_modes\": " << n << ",\n";
  out << "\"options\": {\"degeneracy_tol\": "
      << format_double(fh.options.degeneracy_tol)
      << ", \"parity_tol\": " << format_double(fh.options.parity_tol)
      << ", \"weight_cutoff\": " << format_double(fh.options.weight_cutoff)
      << "},\n";

  std::vector<double> correction;
  correction.reserve(static_cast<size_t>(n) * n);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      correction.push_back(fh.correction.entries(p, q).real());
  out << "\"correction\": " << join_doubles(correction) << ",\n";

  out << "\"slices\": [";
  for (size_t i = 0; i < fh.slices.size(); ++i) {
    const FactorSlice& slice = fh.slices[i];
    if (i) out << ",";
    out << "\n{\"weight\": " << format_double(slice.weight) << ", \"parity\": \""
        << parity_name(slice.parity) << "\", \"lambdas\": ";
    std::vector<double> lambdas(slice.lambdas.data(),
                                slice.lambdas.data() + slice.lambdas.size());
    out << join_doubles(lambdas) << ", \"rotation\": ";
    std::vector<double> rotation;
    rotation.reserve(2 * static_cast<size_t>(n) * n);
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) {
        rotation.push_back(slice.rotation(p, q).real());
        rotation.push_back(slice.rotation(p, q).imag());
      }
    out << join_doubles(rotation) << "}";
  }
  out << "\n]\n}\n";

  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) fail(ErrorKind::Io, path + ": cannot open for writing");
  file << out.str();
  file.flush();
  if (!file) fail(ErrorKind::Io, path + ": write failed");
}

FactoredHamiltonian load_factor_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, path + ": cannot open for reading");
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());

  nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
  if (doc.is_discarded())
    fail(ErrorKind::Io, path + ": malformed factor file (invalid JSON)");

  try {
    if (doc.at("format").get<std::string>() != "FactorFileV1")
      fail(ErrorKind::Io, path + ": malformed factor file (unknown format)");
    const int n = doc.at("n_modes").get<int>();
    if (n < 1 || n > kMaxFileModes)
      fail(ErrorKind::Io, path + ": malformed factor file (mode count)");

    FactoredHamiltonian fh;
    fh.n_modes = n;
    fh.one_body = OneBodyMatrix::zero(n);
    const auto& opts = doc.at("options");
    fh.options.degeneracy_tol = opts.at("degeneracy_tol").get<double>();
    fh.options.parity_tol = opts.at("parity_tol").get<double>();
    fh.options.weight_cutoff = opts.at("weight_cutoff").get<double>();

    const auto correction = doc.at("correction").get<std::vector<double>>();
    if (correction.size() != static_cast<size_t>(n) * n)
      fail(ErrorKind::Io, path + ": malformed factor file (correction size)");
    CMatrix corr(n, n);
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q)
        corr(p, q) = correction[static_cast<size_t>(p) * n + q];
    fh.correction = OneBodyMatrix(std::move(corr));

    for (const auto& record : doc.at("slices")) {
      FactorSlice slice;
      slice.weight = record.at("weight").get<double>();
      const auto parity = record.at("parity").get<std::string>();
      if (parity == "S")
        slice.parity = Parity::Symmetric;
      else if (parity == "A")
        slice.parity = Parity::Antisymmetric;
      else
        fail(ErrorKind::Io, path + ": malformed factor file (parity letter)");

      const auto lambdas = record.at("lambdas").get<std::vector<double>>();
      if (lambdas.size() != static_cast<size_t>(n))
        fail(ErrorKind::Io, path + ": malformed factor file (lambdas size)");
      slice.lambdas = Eigen::Map<const Vector>(lambdas.data(), n);

      const auto rotation = record.at("rotation").get<std::vector<double>>();
      if (rotation.size() != 2 * static_cast<size_t>(n) * n)
        fail(ErrorKind::Io, path + ": malformed factor file (rotation size)");
      slice.rotation = CMatrix(n, n);
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
          const size_t base = 2 * (static_cast<size_t>(p) * n + q);
          slice.rotation(p, q) = Complex(rotation[base], rotation[base + 1]);
        }

      // The slice matrix is derived data: rebuild from the eigensystem, then
      // enforce the exact transpose parity the factorization guarantees.
      CMatrix diag = CMatrix::Zero(n, n);
      for (int a = 0; a < n; ++a)
        diag(a, a) = slice.parity == Parity::Symmetric
                         ? Complex(slice.lambdas[a], 0.0)
                         : Complex(0.0, slice.lambdas[a]);
      const CMatrix rebuilt =
          slice.rotation * diag * slice.rotation.adjoint();
      const Matrix real_part = rebuilt.real();
      slice.slice = slice.parity == Parity::Symmetric
                        ? Matrix(0.5 * (real_part + real_part.transpose()))
                        : Matrix(0.5 * (real_part - real_part.transpose()));
      fh.slices.push_back(std::move(slice));
    }
    return fh;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Io,
         path + ": malformed factor file (" + std::string(e.what()) + ")");
  }
}

}  // namespace fht
