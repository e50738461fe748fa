// Python bindings for the qfilab core. Matrices cross the boundary as numpy
// complex arrays; reports become small bound structs.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qfilab/bounds.hpp"
#include "qfilab/landscape.hpp"
#include "qfilab/spin.hpp"
#include "qfilab/version.hpp"

namespace py = pybind11;
using namespace qfilab;

namespace {

MonotoneMean mean_arg(const std::string& name) {
  return MonotoneMean::from_name(name);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Quantum Fisher information, generalized variances, the gap "
      "V(rho, A), operator-sphere averages, and entropy landscapes for "
      "finite-dimensional states.";
  m.attr("__version__") = kVersion;

  py::register_exception<Error>(m, "QfilabError");

  py::class_<DensityMatrix>(m, "DensityMatrix")
      .def(py::init<const Matrix&>(), py::arg("matrix"))
      .def_static("from_spectrum", &DensityMatrix::from_spectrum,
                  py::arg("eigenvalues"), py::arg("basis"))
      .def_property_readonly("dim", &DensityMatrix::dim)
      .def_property_readonly("matrix", &DensityMatrix::matrix)
      .def_property_readonly("eigenvalues", &DensityMatrix::eigenvalues)
      .def_property_readonly("eigenvectors", &DensityMatrix::eigenvectors)
      .def_property_readonly("rank", &DensityMatrix::rank)
      .def_property_readonly("purity", &DensityMatrix::purity)
      .def("__repr__", [](const DensityMatrix& r) {
        return "<DensityMatrix d=" + std::to_string(r.dim()) +
               " rank=" + std::to_string(r.rank()) + ">";
      });

  py::class_<Observable>(m, "Observable")
      .def(py::init<Matrix>(), py::arg("matrix"))
      .def_property_readonly("dim", &Observable::dim)
      .def_property_readonly("matrix", &Observable::matrix)
      .def_property_readonly("is_traceless", &Observable::is_traceless)
      .def_property_readonly("norm2", &Observable::norm2);

  py::class_<GeneratorBasis>(m, "GeneratorBasis")
      .def(py::init<int>(), py::arg("d"))
      .def_property_readonly("dim", &GeneratorBasis::dim)
      .def("__len__", &GeneratorBasis::count)
      .def("__getitem__",
           [](const GeneratorBasis& b, int m) {
             if (m < 0 || m >= b.count()) throw py::index_error();
             return b[m];
           })
      .def("matrices", [](const GeneratorBasis& b) {
        std::vector<Matrix> out;
        out.reserve(static_cast<std::size_t>(b.count()));
        for (int m = 0; m < b.count(); ++m) out.push_back(b[m].matrix());
        return out;
      });

  // --- hermitian core -----------------------------------------------------
  m.def(
      "spectral_decompose",
      [](const Matrix& mat) {
        const Spectral s = spectral_decompose(mat);
        return py::make_tuple(s.eigenvalues, s.eigenvectors);
      },
      py::arg("matrix"),
      "Descending eigenvalues and phase-fixed eigenvectors of a Hermitian "
      "matrix.");
  m.def(
      "random_unit_vector",
      [](int n, std::uint64_t seed) {
        return random_unit_vector(n, seed).components;
      },
      py::arg("n_components"), py::arg("seed"));
  m.def("random_density_matrix", &random_density_matrix, py::arg("d"),
        py::arg("rank"), py::arg("seed"));
  m.def(
      "observable_from_unit_vector",
      [](const GeneratorBasis& basis, const RealVector& n) {
        return observable_from_unit_vector(basis, UnitVector(n));
      },
      py::arg("basis"), py::arg("n"));
  m.def(
      "random_decomposition",
      [](const DensityMatrix& rho, int size, std::uint64_t seed) {
        const Decomposition dec = random_decomposition(rho, size, seed);
        return py::make_tuple(dec.probabilities, dec.states);
      },
      py::arg("rho"), py::arg("size"), py::arg("seed"),
      "Random pure-state decomposition; returns (probabilities, columns).");

  // --- metrology ----------------------------------------------------------
  m.def("variance", &variance, py::arg("rho"), py::arg("a"));
  m.def("qfi", &qfi, py::arg("rho"), py::arg("a"));
  m.def("qfi_rearranged", &qfi_rearranged, py::arg("rho"), py::arg("a"));
  m.def(
      "gap",
      [](const DensityMatrix& rho, const Observable& a) {
        const GapReport g = gap(rho, a);
        py::dict out;
        out["variance"] = g.variance;
        out["qfi"] = g.qfi;
        out["gap"] = g.gap;
        return out;
      },
      py::arg("rho"), py::arg("a"));
  m.def(
      "generalized_variance",
      [](const DensityMatrix& rho, const Observable& a, const std::string& mean) {
        return generalized_variance(rho, a, mean_arg(mean));
      },
      py::arg("rho"), py::arg("a"), py::arg("mean") = "harmonic");
  m.def("qfi_math", &qfi_math, py::arg("rho"), py::arg("a"));
  m.def(
      "qfi_generalized",
      [](const DensityMatrix& rho, const Observable& a, const std::string& mean) {
        return qfi_generalized(rho, a, mean_arg(mean));
      },
      py::arg("rho"), py::arg("a"), py::arg("mean") = "logarithmic");

  // --- bounds ---------------------------------------------------------------
  m.def(
      "rank2_gap_identity",
      [](const DensityMatrix& rho, const Observable& a) {
        const Rank2Identity r = rank2_gap_identity(rho, a);
        return py::make_tuple(r.value, py::make_tuple(r.sigma1, r.sigma2));
      },
      py::arg("rho"), py::arg("a"));

  py::class_<BoundCheck>(m, "BoundCheck")
      .def_readonly("bound", &BoundCheck::bound)
      .def_readonly("gap", &BoundCheck::gap)
      .def_readonly("holds", &BoundCheck::holds);
  m.def("bound_h_times_sigma", &bound_h_times_sigma, py::arg("rho"),
        py::arg("a"));
  m.def("bound_linear_entropy", &bound_linear_entropy, py::arg("rho"),
        py::arg("a"));
  m.def(
      "max_gap_over_spectrum",
      [](const RealVector& lambdas, const RealVector& sigmas) {
        const SpectrumMax r = max_gap_over_spectrum(lambdas, sigmas);
        return py::make_tuple(r.value, r.permutation);
      },
      py::arg("lambdas"), py::arg("sigmas"));
  m.def("max_vprime_over_spectrum", &max_vprime_over_spectrum,
        py::arg("lambdas"), py::arg("sigmas"));

  // --- averages -------------------------------------------------------------
  py::class_<AverageReport>(m, "AverageReport")
      .def_readonly("analytic", &AverageReport::analytic)
      .def_readonly("monte_carlo_mean", &AverageReport::monte_carlo_mean)
      .def_readonly("monte_carlo_stderr", &AverageReport::monte_carlo_stderr)
      .def_readonly("samples", &AverageReport::samples)
      .def("consistent", &AverageReport::consistent, py::arg("n_sigma") = 5.0,
           py::arg("abs_floor") = 1e-12)
      .def("__repr__", [](const AverageReport& r) {
        return "<AverageReport analytic=" + std::to_string(r.analytic) +
               " mc=" + std::to_string(r.monte_carlo_mean) + ">";
      });

  m.def("covariance_matrix", &covariance_matrix, py::arg("rho"),
        py::arg("basis"));
  m.def("fisher_matrix", &fisher_matrix, py::arg("rho"), py::arg("basis"));
  m.def("avg_variance", &avg_variance, py::arg("rho"),
        py::arg("samples") = kDefaultMcSamples,
        py::arg("seed") = kDefaultMcSeed);
  m.def("avg_qfi", &avg_qfi, py::arg("rho"),
        py::arg("samples") = kDefaultMcSamples,
        py::arg("seed") = kDefaultMcSeed);
  m.def("avg_gap", &avg_gap, py::arg("rho"),
        py::arg("samples") = kDefaultMcSamples,
        py::arg("seed") = kDefaultMcSeed);
  m.def("avg_qfi_math", &avg_qfi_math, py::arg("rho"),
        py::arg("samples") = kDefaultMcSamples,
        py::arg("seed") = kDefaultMcSeed);
  m.def("avg_qfi_kmb", &avg_qfi_kmb, py::arg("rho"),
        py::arg("samples") = kDefaultMcSamples,
        py::arg("seed") = kDefaultMcSeed);

  // --- entropy / landscape ---------------------------------------------------
  m.def(
      "entropies",
      [](const RealVector& lambdas) {
        const SpectrumPoint p = entropies(lambdas);
        py::dict out;
        out["s_lin"] = p.s_lin;
        out["s_vn"] = p.s_vn;
        out["exp_s"] = p.exp_s;
        out["h"] = p.h;
        return out;
      },
      py::arg("lambdas"));
  m.def("h_exp_s_gap", &h_exp_s_gap, py::arg("lambdas"));
  m.def("relative_entropy", &relative_entropy, py::arg("rho"),
        py::arg("sigma"));
  m.def(
      "kmb_second_derivative_check",
      [](const DensityMatrix& rho, const Observable& a, double h) {
        const KmbCheck c = kmb_second_derivative_check(rho, a, h);
        return py::make_tuple(c.fd_second_derivative, c.kmb_value);
      },
      py::arg("rho"), py::arg("a"), py::arg("h") = 1e-4);
  m.def(
      "white_noise_curve",
      [](int d, const RealVector& grid) {
        std::vector<py::dict> rows;
        for (const WhiteNoisePoint& p : white_noise_curve(d, grid)) {
          py::dict row;
          row["lambda"] = p.lambda;
          row["exp_s"] = p.exp_s;
          row["avg_qfi_math"] = p.avg_qfi_math;
          row["avg_qfi_kmb"] = p.avg_qfi_kmb;
          rows.push_back(std::move(row));
        }
        return rows;
      },
      py::arg("d"), py::arg("lambda_grid"));
  m.def(
      "lagrange_stationarity",
      [](int d, double lambda) {
        const Stationarity s = lagrange_stationarity(d, lambda);
        return py::make_tuple(s.grad_alignment, s.residual);
      },
      py::arg("d"), py::arg("lambda"));
  m.def("hessian_min_eig", &hessian_min_eig, py::arg("d"), py::arg("lambda"));
  m.def("landscape_hessian", &landscape_hessian, py::arg("d"),
        py::arg("lambda"));
  m.def(
      "global_min_probe",
      [](int d, double target, int restarts, std::uint64_t seed) {
        const MinProbe p = global_min_probe(d, target, restarts, seed);
        py::dict out;
        out["best_value"] = p.best_value;
        out["best_spectrum"] = p.best_spectrum;
        out["family_value"] = p.family_value;
        out["family_lambda"] = p.family_lambda;
        return out;
      },
      py::arg("d"), py::arg("exp_s_target"), py::arg("restarts") = 10,
      py::arg("seed") = 1);

  // --- collective spin --------------------------------------------------------
  m.def(
      "collective_operator",
      [](int n, const std::string& axis) {
        return collective_operator(n, axis_from_name(axis)).op;
      },
      py::arg("n_qubits"), py::arg("axis"));
  m.def("ghz_state", &ghz_state, py::arg("n_qubits"));
  m.def("noisy_ghz", &noisy_ghz, py::arg("n_qubits"), py::arg("p"));
  m.def(
      "ghz_purity_relation",
      [](const DensityMatrix& rho, int n) {
        const GhzRelation r = ghz_purity_relation(rho, n);
        py::dict out;
        out["lhs"] = r.lhs;
        out["rhs"] = r.rhs;
        out["holds"] = r.holds;
        out["obs2_gap"] = r.obs2_gap;
        out["obs2_bound"] = r.obs2_bound;
        out["obs2_saturated"] = r.obs2_saturated;
        return out;
      },
      py::arg("rho"), py::arg("n_qubits"));
  m.def(
      "fidelity_bound",
      [](const DensityMatrix& rho, int n) {
        const FidelityBound f = fidelity_bound(rho, n);
        py::dict out;
        out["fidelity"] = f.fidelity;
        out["bound"] = f.bound;
        out["qfi"] = f.qfi;
        out["holds"] = f.holds;
        return out;
      },
      py::arg("rho"), py::arg("n_qubits"));
}
