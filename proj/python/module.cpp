#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "superpos/afe.hpp"
#include "superpos/arith.hpp"
#include "superpos/coefficients.hpp"
#include "superpos/errors.hpp"
#include "superpos/mollifier.hpp"
#include "superpos/moments.hpp"
#include "superpos/parallel.hpp"
#include "superpos/zerodensity.hpp"

namespace py = pybind11;
using namespace superpos;

PYBIND11_MODULE(_superpos, m) {
  m.doc() = "numerical toolkit for mollified second moments and zero-density bounds";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<AccuracyError>(m, "AccuracyError", PyExc_ArithmeticError);
  py::register_exception<IncompleteDataError>(m, "IncompleteDataError", PyExc_LookupError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);

  m.def("set_max_threads", &set_max_threads, py::arg("n"));

  py::class_<specfun::QuadratureSpec>(m, "QuadratureSpec")
      .def(py::init<>())
      .def_readwrite("abs_tol", &specfun::QuadratureSpec::abs_tol)
      .def_readwrite("rel_tol", &specfun::QuadratureSpec::rel_tol)
      .def_readwrite("max_subdivisions", &specfun::QuadratureSpec::max_subdivisions);

  py::class_<CoefficientTable>(m, "CoefficientTable")
      .def_readonly("q", &CoefficientTable::q)
      .def_readonly("weight", &CoefficientTable::weight)
      .def_property_readonly("n_max", &CoefficientTable::n_max)
      .def("__call__", &CoefficientTable::operator(), py::arg("n"));
  m.def("ingest_coefficients", [](const std::string& path) { return ingest_coefficients(path); },
        py::arg("path"));
  m.def("sign", &sign, py::arg("table"));

  py::class_<mollifier::MollifierProfile>(m, "MollifierProfile")
      .def(py::init<double, double, double>(), py::arg("upsilon"), py::arg("M"),
           py::arg("theta") = 1e-10)
      .def_property_readonly("upsilon", &mollifier::MollifierProfile::upsilon)
      .def_property_readonly("M", &mollifier::MollifierProfile::M)
      .def_property_readonly("flat_end", &mollifier::MollifierProfile::flat_end);
  m.def("taper", &mollifier::taper, py::arg("profile"), py::arg("x"));
  m.def("psi", &mollifier::psi, py::arg("profile"), py::arg("w"));
  m.def("dirichlet_c", &mollifier::dirichlet_c, py::arg("profile"), py::arg("n"));
  m.def("mollifier_value", &mollifier::mollifier_value, py::arg("profile"), py::arg("coeffs"),
        py::arg("s"));

  py::class_<afe::SpectralWeight>(m, "SpectralWeight")
      .def(py::init<int, double>(), py::arg("N") = 5, py::arg("growth_exponent_B") = 0.0)
      .def_property_readonly("N", &afe::SpectralWeight::N)
      .def("G", &afe::SpectralWeight::G, py::arg("s"));
  py::class_<afe::VWeightResult>(m, "VWeightResult")
      .def_readonly("value", &afe::VWeightResult::value)
      .def_readonly("imag_residual", &afe::VWeightResult::imag_residual)
      .def_readonly("error_estimate", &afe::VWeightResult::error_estimate);
  m.def(
      "v_weight",
      [](const afe::SpectralWeight& w, double delta, double t, double y, std::int64_t q,
         const specfun::QuadratureSpec& spec) { return afe::v_weight(w, delta, t, y, q, spec); },
      py::arg("weight"), py::arg("delta"), py::arg("t"), py::arg("y"), py::arg("q"),
      py::arg("spec") = specfun::QuadratureSpec{});
  py::class_<afe::AfeResult>(m, "AfeResult")
      .def_readonly("value", &afe::AfeResult::value)
      .def_readonly("error_estimate", &afe::AfeResult::error_estimate);
  m.def(
      "afe_square",
      [](const afe::SpectralWeight& w, const CoefficientTable& c, double delta, double t,
         const specfun::QuadratureSpec& spec) { return afe::afe_square(w, c, delta, t, spec); },
      py::arg("weight"), py::arg("coeffs"), py::arg("delta"), py::arg("t"),
      py::arg("spec") = specfun::QuadratureSpec{});

  py::class_<moments::PeterssonResult>(m, "PeterssonResult")
      .def_readonly("value", &moments::PeterssonResult::value)
      .def_readonly("tail_bound", &moments::PeterssonResult::tail_bound)
      .def_readonly("c_max", &moments::PeterssonResult::c_max)
      .def_readonly("capped", &moments::PeterssonResult::capped);
  m.def("petersson_delta", &moments::petersson_delta, py::arg("m"), py::arg("n"), py::arg("q"),
        py::arg("c_max") = 0);
  m.def("kloosterman", &arith::kloosterman, py::arg("m"), py::arg("n"), py::arg("c"));
  m.def("dirichlet_eta_square", &moments::dirichlet_eta_square, py::arg("nu"), py::arg("ell1"),
        py::arg("ell2"), py::arg("s"));

  py::class_<moments::MomentResult>(m, "MomentResult")
      .def_readonly("value", &moments::MomentResult::value)
      .def_readonly("error_estimate", &moments::MomentResult::error_estimate)
      .def_readonly("tail_bound", &moments::MomentResult::tail_bound);
  m.def(
      "twisted_second_moment",
      [](std::int64_t q, std::int64_t ell, double delta, double t, std::int64_t c_max) {
        moments::MomentRequest req;
        req.q = q;
        req.ell = ell;
        req.delta = delta;
        req.t = t;
        req.c_max = c_max;
        afe::SpectralWeight w(5);
        return std::make_pair(moments::twisted_second_moment_numeric(req, w),
                              moments::twisted_second_moment_mainterm(req, w));
      },
      py::arg("q"), py::arg("ell") = 1, py::arg("delta") = 0.0, py::arg("t") = 0.0,
      py::arg("c_max") = 0);

  py::class_<zerodensity::SurfaceParams>(m, "SurfaceParams")
      .def(py::init([](double upsilon, double theta) {
             zerodensity::SurfaceParams p;
             p.upsilon = upsilon;
             p.theta = theta;
             zerodensity::validate(p);
             return p;
           }),
           py::arg("upsilon") = 0.64, py::arg("theta") = 1e-10)
      .def_readonly("upsilon", &zerodensity::SurfaceParams::upsilon)
      .def_readonly("theta", &zerodensity::SurfaceParams::theta);
  m.def("v_surface", &zerodensity::v_surface, py::arg("params"), py::arg("u"), py::arg("v"));
  py::class_<zerodensity::Bound>(m, "Bound")
      .def_readonly("value", &zerodensity::Bound::value)
      .def_readonly("err", &zerodensity::Bound::err);
  m.def(
      "central_bound",
      [](const zerodensity::SurfaceParams& p, double R) { return zerodensity::central_bound(p, R); },
      py::arg("params"), py::arg("R"));
  m.def(
      "superpositivity_report",
      [](double upsilon, double R) {
        const auto cfg = zerodensity::make_ladder_config(upsilon, R);
        return zerodensity::superpositivity_proportion(cfg).to_json();
      },
      py::arg("upsilon"), py::arg("R"));
  m.def(
      "realzero_report",
      [](double upsilon, double R) {
        zerodensity::SurfaceParams p;
        p.upsilon = upsilon;
        return zerodensity::realzero_proportion(p, R).to_json();
      },
      py::arg("upsilon"), py::arg("R"));
}
