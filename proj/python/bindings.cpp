// Python bindings for the fht core library.

#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fht/assemble.hpp"
#include "fht/fock.hpp"
#include "fht/generators.hpp"
#include "fht/io.hpp"
#include "fht/tensor.hpp"

#include <algorithm>

namespace py = pybind11;
using namespace fht;

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

namespace {

int checked_rank4_extent(const py::array& arr) {
  if (arr.ndim() != 4) throw py::value_error("expected a rank-4 array");
  const auto n = arr.shape(0);
  for (int d = 1; d < 4; ++d)
    if (arr.shape(d) != n)
      throw py::value_error("expected equal extents along all four axes");
  if (n < 1) throw py::value_error("expected at least one mode");
  return static_cast<int>(n);
}

py::array_t<double> tensor_to_array(const TwoBodyTensor& t) {
  const int n = t.n_modes;
  py::array_t<double> arr({n, n, n, n});
  std::copy(t.entries.begin(), t.entries.end(), arr.mutable_data());
  return arr;
}

TwoBodyTensor tensor_from_array(
    const py::array_t<double, py::array::c_style | py::array::forcecast>& arr) {
  TwoBodyTensor t(checked_rank4_extent(arr));
  std::copy(arr.data(), arr.data() + t.entries.size(), t.entries.begin());
  return t;
}

RawTensor raw_from_array(
    const py::array_t<Complex, py::array::c_style | py::array::forcecast>& arr) {
  RawTensor v(checked_rank4_extent(arr));
  std::copy(arr.data(), arr.data() + v.entries.size(), v.entries.begin());
  return v;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Pairwise number-operator factorization of fermionic two-body "
            "Hamiltonians, with a brute-force Fock-space cross-check.";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      switch (e.kind()) {
        case ErrorKind::Usage:
          PyErr_SetString(PyExc_ValueError, e.what());
          break;
        case ErrorKind::Io:
          PyErr_SetString(PyExc_OSError, e.what());
          break;
        default:
          PyErr_SetString(PyExc_RuntimeError, e.what());
      }
    }
  });

  py::class_<SymmetryReport>(m, "SymmetryReport")
      .def_readonly("ok", &SymmetryReport::ok)
      .def_readonly("tolerance", &SymmetryReport::tolerance)
      .def_property_readonly("defects",
                             [](const SymmetryReport& r) {
                               return std::vector<double>(r.defects.begin(),
                                                          r.defects.end());
                             })
      .def_property_readonly_static("relation_names",
                                    [](py::object) {
                                      return std::vector<std::string>(
                                          SymmetryReport::kRelationNames.begin(),
                                          SymmetryReport::kRelationNames.end());
                                    })
      .def("max_defect", &SymmetryReport::max_defect)
      .def("__repr__", [](const SymmetryReport& r) {
        return "SymmetryReport(ok=" + std::string(r.ok ? "True" : "False") +
               ", max_defect=" + format_double(r.max_defect()) + ")";
      });

  py::class_<OneBodyMatrix>(m, "OneBodyMatrix")
      .def(py::init([](const CMatrix& f) { return OneBodyMatrix(f); }),
           py::arg("entries"))
      .def_readonly("n_modes", &OneBodyMatrix::n_modes)
      .def_readonly("entries", &OneBodyMatrix::entries)
      .def("hermiticity_defect", &OneBodyMatrix::hermiticity_defect);

  py::class_<TwoBodyTensor>(m, "TwoBodyTensor")
      .def(py::init(&tensor_from_array), py::arg("array"),
           "Wraps a rank-4 real array (no symmetrization is applied).")
      .def_readonly("n_modes", &TwoBodyTensor::n_modes)
      .def_property_readonly("array", &tensor_to_array)
      .def("max_abs", &TwoBodyTensor::max_abs)
      .def("frobenius_norm", &TwoBodyTensor::frobenius_norm)
      .def("__repr__", [](const TwoBodyTensor& t) {
        return "TwoBodyTensor(n_modes=" + std::to_string(t.n_modes) + ")";
      });

  py::class_<GroupedMatrix>(m, "GroupedMatrix")
      .def_readonly("n_modes", &GroupedMatrix::n_modes)
      .def_readonly("entries", &GroupedMatrix::entries);

  py::class_<HamiltonianInstance>(m, "HamiltonianInstance")
      .def(py::init([](const OneBodyMatrix& f, const TwoBodyTensor& h,
                       const std::string& label) {
             HamiltonianInstance inst;
             inst.one_body = f;
             inst.two_body = h;
             inst.label = label;
             return inst;
           }),
           py::arg("one_body"), py::arg("two_body"), py::arg("label") = "")
      .def_readonly("one_body", &HamiltonianInstance::one_body)
      .def_readonly("two_body", &HamiltonianInstance::two_body)
      .def_readonly("label", &HamiltonianInstance::label)
      .def_property_readonly("n_modes", &HamiltonianInstance::n_modes);

  py::class_<AntisymmetrizeResult>(m, "AntisymmetrizeResult")
      .def_readonly("tensor", &AntisymmetrizeResult::tensor)
      .def_readonly("imag_defect", &AntisymmetrizeResult::imag_defect)
      .def_readonly("mirror_defect", &AntisymmetrizeResult::mirror_defect);

  py::enum_<Parity>(m, "Parity")
      .value("SYMMETRIC", Parity::Symmetric)
      .value("ANTISYMMETRIC", Parity::Antisymmetric);

  py::class_<FactorizationOptions>(m, "FactorizationOptions")
      .def(py::init([](double degeneracy_tol, double parity_tol,
                       double weight_cutoff) {
             FactorizationOptions o;
             o.degeneracy_tol = degeneracy_tol;
             o.parity_tol = parity_tol;
             o.weight_cutoff = weight_cutoff;
             o.validate();
             return o;
           }),
           py::arg("degeneracy_tol") = 1e-9, py::arg("parity_tol") = 1e-9,
           py::arg("weight_cutoff") = 0.0)
      .def_readwrite("degeneracy_tol", &FactorizationOptions::degeneracy_tol)
      .def_readwrite("parity_tol", &FactorizationOptions::parity_tol)
      .def_readwrite("weight_cutoff", &FactorizationOptions::weight_cutoff);

  py::class_<SchurResult>(m, "SchurResult")
      .def_readonly("n_modes", &SchurResult::n_modes)
      .def_readonly("weights", &SchurResult::weights)
      .def_readonly("vectors", &SchurResult::vectors);

  py::class_<FactorSlice>(m, "FactorSlice")
      .def_readonly("weight", &FactorSlice::weight)
      .def_readonly("parity", &FactorSlice::parity)
      .def_readonly("slice", &FactorSlice::slice)
      .def_readonly("rotation", &FactorSlice::rotation)
      .def_readonly("lambdas", &FactorSlice::lambdas)
      .def("__repr__", [](const FactorSlice& s) {
        return std::string("FactorSlice(weight=") + format_double(s.weight) +
               ", parity='" + parity_name(s.parity) + "')";
      });

  py::class_<FactoredHamiltonian>(m, "FactoredHamiltonian")
      .def_readonly("n_modes", &FactoredHamiltonian::n_modes)
      .def_readonly("one_body", &FactoredHamiltonian::one_body)
      .def_readonly("correction", &FactoredHamiltonian::correction)
      .def_readonly("slices", &FactoredHamiltonian::slices)
      .def_readonly("options", &FactoredHamiltonian::options)
      .def("count", &FactoredHamiltonian::count, py::arg("parity"));

  py::class_<TruncationReport>(m, "TruncationReport")
      .def_readonly("thresholds", &TruncationReport::thresholds)
      .def_readonly("kept_slices", &TruncationReport::kept_slices)
      .def_readonly("recon_error_frobenius",
                    &TruncationReport::recon_error_frobenius)
      .def_readonly("spectrum_error", &TruncationReport::spectrum_error);

  py::class_<FockMatrix>(m, "FockMatrix")
      .def_readonly("n_modes", &FockMatrix::n_modes)
      .def_readonly("entries", &FockMatrix::entries)
      .def_property_readonly("dim", &FockMatrix::dim);

  py::class_<TrotterScanResult>(m, "TrotterScanResult")
      .def_readonly("dts", &TrotterScanResult::dts)
      .def_readonly("errors", &TrotterScanResult::errors)
      .def_readonly("fitted_slope", &TrotterScanResult::fitted_slope);

  // ---- tensor operations ------------------------------------------------
  m.def("antisymmetrize",
        [](const py::array_t<Complex, py::array::c_style |
                                          py::array::forcecast>& v,
           double tol_input) {
          return antisymmetrize(raw_from_array(v), tol_input);
        },
        py::arg("v"), py::arg("tol_input") = kTolInput,
        "Antisymmetrize raw matrix elements and enforce the realness mirror.");
  m.def("validate_symmetries", &validate_symmetries, py::arg("h"),
        py::arg("tol") = kTolSym);
  m.def("group", &group, py::arg("h"), py::arg("tol") = kTolSym);
  m.def("ungroup", &ungroup, py::arg("m"));
  m.def("effective_one_body", &effective_one_body, py::arg("h"));

  // ---- factorization ------------------------------------------------------
  m.def("schur_grouped", &schur_grouped, py::arg("m"));
  m.def("factorize_hamiltonian", &factorize_hamiltonian, py::arg("instance"),
        py::arg("options") = FactorizationOptions{});
  m.def("reconstruct_tensor", &reconstruct_tensor, py::arg("factored"));
  m.def("truncate", &fht::truncate, py::arg("factored"),
        py::arg("threshold"));
  m.def("truncation_scan", &truncation_scan, py::arg("instance"),
        py::arg("thresholds"), py::arg("with_spectrum") = false,
        py::arg("k") = 4, py::arg("options") = FactorizationOptions{});

  // ---- Fock-space oracle --------------------------------------------------
  m.def("build_one_body", &build_one_body, py::arg("coeff"));
  m.def("build_from_tensor", &build_from_tensor, py::arg("instance"));
  m.def("build_from_factored", &build_from_factored, py::arg("factored"));
  m.def("compare_spectra", &compare_spectra, py::arg("a"), py::arg("b"),
        py::arg("k") = 4);
  m.def("trotter_scan", &trotter_scan, py::arg("factored"), py::arg("dts"));

  // ---- generators -----------------------------------------------------
  m.def("random_valid", &random_valid, py::arg("n_modes"), py::arg("seed"));
  m.def("real_basis_instance", &real_basis_instance, py::arg("n_modes"),
        py::arg("rank"), py::arg("seed"));
  m.def("ring_planewave",
        [](int n_modes, double length, double v0, double sigma) {
          RingModelParams params;
          params.n_modes = n_modes;
          params.ring_length = length;
          params.potential_strength = v0;
          params.potential_width = sigma;
          return ring_planewave(params);
        },
        py::arg("n_modes") = 3, py::arg("length") = 10.0, py::arg("v0") = 1.0,
        py::arg("sigma") = 1.0);
  m.def("ring_momentum", &ring_momentum, py::arg("p"), py::arg("n_modes"));

  // ---- files ---------------------------------------------------------
  m.def("save_tensor_file", &save_tensor_file, py::arg("path"),
        py::arg("instance"), py::arg("with_one_body") = true,
        py::arg("force_complex") = false);
  m.def("load_tensor_file", &load_tensor_file, py::arg("path"),
        py::arg("validate") = true);
  m.def("save_factor_file", &save_factor_file, py::arg("path"),
        py::arg("factored"));
  m.def("load_factor_file", &load_factor_file, py::arg("path"));
  m.def("format_double", &format_double, py::arg("x"));

#ifdef VERSION_INFO
  m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
  m.attr("__version__") = "dev";
#endif
}
