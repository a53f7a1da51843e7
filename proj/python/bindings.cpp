#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qdeform/algebra.hpp"
#include "qdeform/coherent.hpp"
#include "qdeform/geometry.hpp"
#include "qdeform/qcore.hpp"
#include "qdeform/statistics.hpp"
#include "qdeform/verify.hpp"

namespace py = pybind11;
using namespace qdeform;

namespace {

py::dict tridiagonal_dict(const TridiagonalOperator& op) {
  py::dict d;
  d["dim"] = op.dim;
  d["sub"] = op.sub;
  d["diag"] = op.diag;
  d["sup"] = op.sup;
  d["imaginary"] = op.phase == Phase::kImaginary;
  return d;
}

}  // namespace

PYBIND11_MODULE(_qdeform, m) {
  m.doc() = "Numerics for the (q; l, lambda)-deformed Heisenberg algebra";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_ArithmeticError);
  py::register_exception<OverflowError>(m, "OverflowError", PyExc_OverflowError);

  py::class_<DeformParams>(m, "DeformParams")
      .def(py::init<double, double, double>(), py::arg("q"), py::arg("l") = 1.0, py::arg("lam") = 0.0)
      .def_property_readonly("q", &DeformParams::q)
      .def_property_readonly("l", &DeformParams::l)
      .def_property_readonly("lam", &DeformParams::lambda)
      .def_property_readonly("scale", &DeformParams::scale)
      .def("base_case", &DeformParams::base_case)
      .def("__repr__", [](const DeformParams& p) { return "DeformParams(" + p.describe() + ")"; });

  // qcore
  m.def("q_number", &q_number, py::arg("n"), py::arg("q"));
  m.def("q_factorial", &q_factorial, py::arg("n"), py::arg("q"));
  m.def("log_q_factorial", &log_q_factorial, py::arg("n"), py::arg("q"));
  m.def("q_pochhammer", &q_pochhammer, py::arg("a"), py::arg("base"), py::arg("n"));
  m.def(
      "q_pochhammer_inf",
      [](double a, double base) {
        const auto r = q_pochhammer_inf(a, base);
        return py::make_tuple(r.value, r.tail_bound);
      },
      py::arg("a"), py::arg("base"), "(value, tail_bound)");
  m.def("structure_function", &structure_function, py::arg("p"), py::arg("n"));
  m.def("q_derivative", &q_derivative, py::arg("f"), py::arg("p"), py::arg("x"));

  // algebra
  m.def(
      "ladder_matrices",
      [](const DeformParams& p, std::size_t dim) {
        const auto ops = ladder_matrices(p, FockTruncation(dim));
        py::dict d;
        d["a"] = tridiagonal_dict(ops.a);
        d["a_dag"] = tridiagonal_dict(ops.a_dag);
        d["n_op"] = tridiagonal_dict(ops.n_op);
        return d;
      },
      py::arg("p"), py::arg("dim"));
  m.def(
      "commutator_defect",
      [](const DeformParams& p, std::size_t dim) { return commutator_defect(p, FockTruncation(dim)); },
      py::arg("p"), py::arg("dim"));
  m.def(
      "spectrum",
      [](const DeformParams& p, long n_max, double hbar, double mass, double omega) {
        py::list rows;
        for (const auto& r : spectrum(p, n_max, PhysicalUnits{hbar, mass, omega})) {
          rows.append(py::make_tuple(r.n, r.energy, r.var_x, r.var_p, r.uncertainty_product));
        }
        return rows;
      },
      py::arg("p"), py::arg("n_max"), py::arg("hbar") = 1.0, py::arg("mass") = 1.0, py::arg("omega") = 1.0,
      "list of (n, E, var_X, var_P, dX dP)");

  // coherent
  m.def("domain_radius", [](const DeformParams& p) { return domain_radius(p).radius; });
  m.def(
      "normalization",
      [](const DeformParams& p, double x) {
        const auto r = normalization(p, x);
        return py::make_tuple(r.value, r.d1, r.d2, r.tail_bound);
      },
      py::arg("p"), py::arg("x"), "(N, N', N'', tail_bound)");
  m.def(
      "log_normalization", [](const DeformParams& p, double x) { return log_normalization(p, x).log_value; },
      py::arg("p"), py::arg("x"));
  m.def(
      "coherent_amplitudes",
      [](const DeformParams& p, std::complex<double> z, std::size_t dim) {
        const auto cs = amplitudes(p, z, FockTruncation(dim));
        return py::make_tuple(cs.amplitudes, cs.tail_residual, cs.tail_bound);
      },
      py::arg("p"), py::arg("z"), py::arg("dim"), "(amplitudes, tail_residual, tail_bound)");
  m.def("overlap", &overlap, py::arg("p"), py::arg("z1"), py::arg("z2"));
  m.def(
      "eigen_residual",
      [](const DeformParams& p, std::complex<double> z, std::size_t dim) {
        return eigen_residual(p, z, FockTruncation(dim));
      },
      py::arg("p"), py::arg("z"), py::arg("dim"));
  m.def("unity_weight", &unity_weight, py::arg("p"), py::arg("x"));
  m.def("moment_target", &moment_target, py::arg("p"), py::arg("n"));
  m.def(
      "verify_moments",
      [](const DeformParams& p, long n_max) {
        const auto r = verify_moments(p, n_max);
        py::dict d;
        d["orders"] = r.orders;
        d["computed"] = r.computed;
        d["target"] = r.target;
        d["rel_error"] = r.rel_error;
        d["error_estimate"] = r.error_estimate;
        return d;
      },
      py::arg("p"), py::arg("n_max"));

  // statistics
  m.def("photon_pdf", &photon_pdf, py::arg("p"), py::arg("x"), py::arg("n"));
  m.def(
      "monomial_expectation",
      [](const DeformParams& p, std::complex<double> z, long s, long r) { return monomial_expectation(p, z, s, r); },
      py::arg("p"), py::arg("z"), py::arg("s"), py::arg("r"));
  m.def(
      "stats_point",
      [](const DeformParams& p, double x) {
        const auto s = stats_point(p, x);
        return py::make_tuple(s.mean_n, s.second_moment, s.mandel_q);
      },
      py::arg("p"), py::arg("x"), "(<N>, <N^2>, Q)");
  m.def("mandel_slope_prediction", &mandel_slope_prediction, py::arg("p"));

  // geometry
  m.def(
      "metric_w", [](const DeformParams& p, double x) { return metric_w(p, x).w; }, py::arg("p"), py::arg("x"));
  m.def("metric_slope_prediction", &metric_slope_prediction, py::arg("p"));

  // verification suite
  m.def(
      "run_verify",
      [](const DeformParams& p, std::size_t dim, const std::map<std::string, double>& tolerances) {
        VerifyConfig cfg;
        cfg.dim = dim;
        cfg.tolerances = tolerances;
        py::list out;
        for (const auto& o : run_verify(p, cfg)) {
          out.append(py::make_tuple(o.check_name, o.max_rel_error, o.threshold, to_string(o.status)));
        }
        return out;
      },
      py::arg("p"), py::arg("dim") = 64, py::arg("tolerances") = std::map<std::string, double>{},
      "list of (check_name, max_rel_error, threshold, status)");
}
