// fht — factorized-Hamiltonian toolkit command line.
//
// Subcommands: generate, factorize, verify, truncation-scan, trotter-scan.
// Every command prints one structured JSON record per logical result to
// standard output; diagnostics go to standard error.  Exit codes:
//   0 ok, 2 usage, 3 I/O, 4 symmetry validation, 5 decomposition,
//   6 verification failure.

#include <CLI11.hpp>

#include "fht/assemble.hpp"
#include "fht/fock.hpp"
#include "fht/generators.hpp"
#include "fht/io.hpp"
#include "fht/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

namespace {

using namespace fht;

// Linear-interpolation quantile of a sorted sample (empty -> 0).
double quantile(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) return 0.0;
  if (sorted.size() == 1) return sorted.front();
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const size_t lo = static_cast<size_t>(pos);
  const size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

void emit(const JsonWriter& record) { std::cout << record.str() << "\n"; }

HamiltonianInstance wrap_instance(TwoBodyTensor h, const std::string& label) {
  HamiltonianInstance inst;
  inst.one_body = OneBodyMatrix::zero(h.n_modes);
  inst.two_body = std::move(h);
  inst.label = label;
  return inst;
}

double relative_frobenius(const TwoBodyTensor& approx,
                          const TwoBodyTensor& exact) {
  double diff2 = 0.0;
  for (size_t i = 0; i < exact.entries.size(); ++i) {
    const double d = approx.entries[i] - exact.entries[i];
    diff2 += d * d;
  }
  const double norm = exact.frobenius_norm();
  const double diff = std::sqrt(diff2);
  return norm > 0.0 ? diff / norm : diff;
}

int cmd_generate(const std::string& model, const HamiltonianInstance& inst,
                 const std::string& out_path, bool with_one_body,
                 bool complex_one_body, std::uint64_t seed, bool has_seed) {
  save_tensor_file(out_path, inst, with_one_body, complex_one_body);

  const SymmetryReport report = validate_symmetries(inst.two_body, kTolSym);
  JsonWriter rec;
  rec.field("record", std::string("generate"))
      .field("model", model)
      .field("n_modes", inst.n_modes())
      .field("out", out_path);
  if (has_seed) rec.field("seed", static_cast<std::int64_t>(seed));
  rec.field("symmetry_ok", report.ok)
      .field("symmetry_max_defect", report.max_defect())
      .field("symmetry_defects",
             std::vector<double>(report.defects.begin(), report.defects.end()))
      .field("tensor_max_abs", inst.two_body.max_abs());
  emit(rec);
  return 0;
}

int cmd_factorize(const std::string& in_path, const std::string& out_path,
                  const FactorizationOptions& opts, bool validate) {
  const HamiltonianInstance inst = load_tensor_file(in_path, validate);
  const FactoredHamiltonian fh = factorize_hamiltonian(inst, opts);
  save_factor_file(out_path, fh);

  std::vector<double> weights, abs_weights;
  for (const FactorSlice& s : fh.slices) {
    weights.push_back(s.weight);
    abs_weights.push_back(std::abs(s.weight));
  }
  std::sort(weights.begin(), weights.end());
  std::sort(abs_weights.begin(), abs_weights.end());

  const double recon = relative_frobenius(reconstruct_tensor(fh), inst.two_body);

  JsonWriter rec;
  rec.field("record", std::string("factorize"))
      .field("in", in_path)
      .field("out", out_path)
      .field("n_modes", fh.n_modes)
      .field("slices", static_cast<int>(fh.slices.size()))
      .field("l_s", static_cast<int>(fh.count(Parity::Symmetric)))
      .field("l_a", static_cast<int>(fh.count(Parity::Antisymmetric)))
      .field("weight_min", weights.empty() ? 0.0 : weights.front())
      .field("weight_max", weights.empty() ? 0.0 : weights.back())
      .field("abs_weight_quartiles",
             std::vector<double>{quantile(abs_weights, 0.25),
                                 quantile(abs_weights, 0.50),
                                 quantile(abs_weights, 0.75)})
      .field("reconstruction_error", recon);
  emit(rec);
  return 0;
}

int cmd_verify(const std::string& tensor_path, const std::string& factors_path,
               int max_modes_fock, int k, double threshold, bool validate) {
  const HamiltonianInstance inst = load_tensor_file(tensor_path, validate);
  FactoredHamiltonian fh = load_factor_file(factors_path);
  if (fh.n_modes != inst.n_modes())
    fail(ErrorKind::Usage, "mode count mismatch: tensor has " +
                               std::to_string(inst.n_modes()) +
                               ", factors have " + std::to_string(fh.n_modes));
  fh.one_body = inst.one_body;

  const double recon = relative_frobenius(reconstruct_tensor(fh), inst.two_body);

  const bool fock_checked = inst.n_modes() <= max_modes_fock;
  double fock_error = 0.0;
  double spectrum_error = 0.0;
  if (fock_checked) {
    const FockMatrix ht = build_from_tensor(inst);
    const FockMatrix hf = build_from_factored(fh);
    const double scale = std::max(1.0, ht.entries.cwiseAbs().maxCoeff());
    fock_error = (ht.entries - hf.entries).cwiseAbs().maxCoeff() / scale;
    spectrum_error = compare_spectra(ht, hf, k) / scale;
  }

  std::vector<std::string> failed;
  if (!(recon <= threshold)) failed.push_back("reconstruction");
  if (fock_checked && !(fock_error <= threshold)) failed.push_back("fock");
  if (fock_checked && !(spectrum_error <= threshold)) failed.push_back("spectrum");

  JsonWriter rec;
  rec.field("record", std::string("verify"))
      .field("tensor", tensor_path)
      .field("factors", factors_path)
      .field("n_modes", inst.n_modes())
      .field("threshold", threshold)
      .field("reconstruction_error", recon)
      .field("fock_checked", fock_checked);
  if (fock_checked) {
    rec.field("fock_error", fock_error)
        .field("spectrum_error", spectrum_error)
        .field("k", k);
  }
  rec.field("pass", failed.empty());
  emit(rec);

  if (!failed.empty()) {
    std::string what = "verification failed:";
    for (const std::string& name : failed) what += " " + name;
    fail(ErrorKind::Verification, what);
  }
  return 0;
}

int cmd_truncation_scan(const std::string& in_path,
                        const std::vector<double>& thresholds, bool spectrum,
                        int k, bool validate) {
  const HamiltonianInstance inst = load_tensor_file(in_path, validate);
  const TruncationReport report =
      truncation_scan(inst, thresholds, spectrum, k);
  for (size_t i = 0; i < report.thresholds.size(); ++i) {
    JsonWriter rec;
    rec.field("record", std::string("truncation_row"))
        .field("in", in_path)
        .field("n_modes", inst.n_modes())
        .field("threshold", report.thresholds[i])
        .field("kept_slices", report.kept_slices[i])
        .field("reconstruction_error", report.recon_error_frobenius[i]);
    if (report.spectrum_error)
      rec.field("spectrum_error", (*report.spectrum_error)[i]).field("k", k);
    emit(rec);
  }
  return 0;
}

int cmd_trotter_scan(const std::string& in_path, const std::vector<double>& dts,
                     bool validate) {
  const HamiltonianInstance inst = load_tensor_file(in_path, validate);
  const FactoredHamiltonian fh = factorize_hamiltonian(inst, {});
  const TrotterScanResult result = trotter_scan(fh, dts);

  JsonWriter rec;
  rec.field("record", std::string("trotter_scan"))
      .field("in", in_path)
      .field("n_modes", inst.n_modes())
      .field("dts", result.dts)
      .field("errors", result.errors)
      .numeric_or_nan("slope", result.fitted_slope);
  emit(rec);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fht: pairwise number-operator factorization of fermionic "
               "two-body Hamiltonians"};
  app.require_subcommand(1);

  // ---- generate ------------------------------------------------------
  auto* generate = app.add_subcommand(
      "generate", "Generate a Hamiltonian instance and write a tensor file");
  generate->require_subcommand(1);

  int g_modes = 3;
  std::string g_out;
  std::uint64_t g_seed = 0;
  int g_rank = 3;
  RingModelParams ring_params;

  auto* gen_random = generate->add_subcommand(
      "random", "Random complex-basis instance (dense Gaussian tensor)");
  gen_random->add_option("--modes", g_modes, "number of modes")->required();
  gen_random->add_option("--seed", g_seed, "RNG seed")->capture_default_str();
  gen_random->add_option("--out", g_out, "output tensor file")->required();

  auto* gen_real = generate->add_subcommand(
      "real-basis", "Low-rank instance from a real single-particle basis");
  gen_real->add_option("--modes", g_modes, "number of modes")->required();
  gen_real->add_option("--rank", g_rank, "number of separable terms")
      ->capture_default_str();
  gen_real->add_option("--seed", g_seed, "RNG seed")->capture_default_str();
  gen_real->add_option("--out", g_out, "output tensor file")->required();

  auto* gen_ring = generate->add_subcommand(
      "ring", "Plane-wave ring with Gaussian pair potential");
  gen_ring->add_option("--modes", ring_params.n_modes, "number of modes")
      ->capture_default_str();
  gen_ring->add_option("--length", ring_params.ring_length, "ring length")
      ->capture_default_str();
  gen_ring->add_option("--v0", ring_params.potential_strength,
                       "potential strength")
      ->capture_default_str();
  gen_ring->add_option("--sigma", ring_params.potential_width,
                       "potential width")
      ->capture_default_str();
  gen_ring->add_option("--out", g_out, "output tensor file")->required();

  // ---- factorize -----------------------------------------------------
  auto* factorize =
      app.add_subcommand("factorize", "Factorize a tensor file into slices");
  std::string f_in, f_out;
  FactorizationOptions f_opts;
  bool f_no_validate = false;
  factorize->add_option("--in", f_in, "input tensor file")->required();
  factorize->add_option("--out", f_out, "output factor file")->required();
  factorize->add_option("--cutoff", f_opts.weight_cutoff,
                        "drop slices with |weight| <= cutoff")
      ->capture_default_str();
  factorize->add_option("--degeneracy-tol", f_opts.degeneracy_tol,
                        "relative eigenvalue clustering tolerance")
      ->capture_default_str();
  factorize->add_option("--parity-tol", f_opts.parity_tol,
                        "parity classification tolerance")
      ->capture_default_str();
  factorize->add_flag("--no-validate", f_no_validate,
                      "skip symmetry validation of the input");

  // ---- verify --------------------------------------------------------
  auto* verify = app.add_subcommand(
      "verify", "Check a factor file against its tensor file");
  std::string v_tensor, v_factors;
  int v_max_fock = kMaxFockModes;
  int v_k = 4;
  double v_threshold = 1e-9;
  bool v_no_validate = false;
  verify->add_option("--tensor", v_tensor, "tensor file")->required();
  verify->add_option("--factors", v_factors, "factor file")->required();
  verify->add_option("--max-modes-fock", v_max_fock,
                     "skip Fock-space checks above this mode count")
      ->capture_default_str();
  verify->add_option("--k", v_k, "number of lowest eigenvalues to compare")
      ->capture_default_str();
  verify->add_option("--threshold", v_threshold, "pass/fail threshold")
      ->capture_default_str();
  verify->add_flag("--no-validate", v_no_validate,
                   "skip symmetry validation of the input");

  // ---- truncation-scan -------------------------------------------------
  auto* trunc = app.add_subcommand(
      "truncation-scan", "Sweep weight cutoffs and report truncation error");
  std::string t_in;
  std::vector<double> t_thresholds;
  bool t_spectrum = false;
  int t_k = 4;
  bool t_no_validate = false;
  trunc->add_option("--in", t_in, "input tensor file")->required();
  trunc->add_option("--thresholds", t_thresholds,
                    "ascending cutoff values (one row each)")
      ->required()
      ->expected(-1);
  trunc->add_flag("--spectrum", t_spectrum,
                  "also compare low-lying Fock spectra");
  trunc->add_option("--k", t_k, "eigenvalues compared with --spectrum")
      ->capture_default_str();
  trunc->add_flag("--no-validate", t_no_validate,
                  "skip symmetry validation of the input");

  // ---- trotter-scan ----------------------------------------------------
  auto* trotter = app.add_subcommand(
      "trotter-scan", "Single-step product-formula error versus step size");
  std::string tr_in;
  std::vector<double> tr_dts;
  bool tr_no_validate = false;
  trotter->add_option("--in", tr_in, "input tensor file")->required();
  trotter->add_option("--dts", tr_dts, "time steps to scan")
      ->required()
      ->expected(-1);
  trotter->add_flag("--no-validate", tr_no_validate,
                    "skip symmetry validation of the input");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen_random->parsed())
      return cmd_generate(
          "random", wrap_instance(random_valid(g_modes, g_seed), "random"),
          g_out, false, false, g_seed, true);
    if (gen_real->parsed())
      return cmd_generate(
          "real-basis",
          wrap_instance(real_basis_instance(g_modes, g_rank, g_seed),
                        "real-basis"),
          g_out, false, false, g_seed, true);
    if (gen_ring->parsed())
      return cmd_generate("ring", ring_planewave(ring_params), g_out, true,
                          true, 0, false);
    if (factorize->parsed())
      return cmd_factorize(f_in, f_out, f_opts, !f_no_validate);
    if (verify->parsed())
      return cmd_verify(v_tensor, v_factors, v_max_fock, v_k, v_threshold,
                        !v_no_validate);
    if (trunc->parsed())
      return cmd_truncation_scan(t_in, t_thresholds, t_spectrum, t_k,
                                 !t_no_validate);
    if (trotter->parsed()) return cmd_trotter_scan(tr_in, tr_dts, !tr_no_validate);
  } catch (const fht::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
