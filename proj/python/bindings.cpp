#include "berezin/io.hpp"
#include "berezin/schroedinger.hpp"
#include "berezin/symbol.hpp"
#include "berezin/transforms.hpp"
#include "berezin/verify.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace berezin;

namespace {

PhasePoint to_point(const RVector& coords, int n) {
  if (coords.size() != 2 * n) throw InputError("phase point must have 2n = " + std::to_string(2 * n) + " coordinates");
  return PhasePoint::from_coords(coords);
}

HeisenbergElement to_element(const RVector& a, const RVector& b, double c) {
  if (a.size() != b.size()) throw InputError("a and b must have the same length");
  return {a, b, c};
}

py::tuple from_element(const HeisenbergElement& g) { return py::make_tuple(g.a, g.b, g.c); }

HermiteState to_state(const CVector& v) { return HermiteState(v); }

OperatorMatrix to_operator(const CMatrix& m) { return OperatorMatrix(m); }

py::dict report_dict(const InjectivityReport& r) {
  py::dict d;
  d["M"] = r.config.M;
  d["sigma_min"] = r.sigma_min;
  d["sigma_max"] = r.sigma_max;
  d["cond"] = r.cond;
  d["threshold"] = r.threshold;
  d["verdict"] = r.verdict;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "C++ core of the berezin package";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<TruncationError>(m, "TruncationError", PyExc_ValueError);

  py::class_<ModelConfig>(m, "ModelConfig")
      .def(py::init([](int n, double lambda_, int M, std::optional<double> L, int G, double tol_identity,
                       double tol_quadrature) {
             ModelConfig cfg;
             cfg.n = n;
             cfg.lambda = lambda_;
             cfg.M = M;
             cfg.G = G;
             cfg.tol_identity = tol_identity;
             cfg.tol_quadrature = tol_quadrature;
             cfg.L = L ? *L : ModelConfig::default_half_width(M, lambda_, tol_quadrature);
             cfg.validate();
             return cfg;
           }),
           py::kw_only(), py::arg("n") = 1, py::arg("lam") = 1.0, py::arg("M") = 16, py::arg("L") = py::none(),
           py::arg("G") = 128, py::arg("tol_identity") = 1e-8, py::arg("tol_quadrature") = 1e-6)
      .def_readonly("n", &ModelConfig::n)
      .def_readonly("lam", &ModelConfig::lambda)
      .def_readonly("M", &ModelConfig::M)
      .def_readonly("L", &ModelConfig::L)
      .def_readonly("G", &ModelConfig::G)
      .def_readonly("tol_identity", &ModelConfig::tol_identity)
      .def_readonly("tol_quadrature", &ModelConfig::tol_quadrature)
      .def_property_readonly("dim", &ModelConfig::dim)
      .def_property_readonly("step", &ModelConfig::step)
      .def("derived", &ModelConfig::derived, py::arg("M"), py::arg("G") = py::none())
      .def("to_dict", [](const ModelConfig& c) { return py::module_::import("json").attr("loads")(io::to_json(c).dump()); })
      .def("__eq__", [](const ModelConfig& a, const ModelConfig& b) { return a == b; })
      .def("__repr__", [](const ModelConfig& c) { return "ModelConfig(" + io::to_json(c).dump() + ")"; });

  m.def(
      "config_from_dict",
      [](const py::dict& d) {
        const std::string text = py::module_::import("json").attr("dumps")(d).cast<std::string>();
        return io::config_from_json(io::json::parse(text));
      },
      py::arg("config"), "Build a validated config from the same keys the CLI accepts.");

  m.def(
      "multiply",
      [](const RVector& a1, const RVector& b1, double c1, const RVector& a2, const RVector& b2, double c2) {
        return from_element(multiply(to_element(a1, b1, c1), to_element(a2, b2, c2)));
      },
      py::arg("a1"), py::arg("b1"), py::arg("c1"), py::arg("a2"), py::arg("b2"), py::arg("c2"),
      "Group product [a1,b1,c1][a2,b2,c2] as (a, b, c).");
  m.def(
      "inverse", [](const RVector& a, const RVector& b, double c) { return from_element(inverse(to_element(a, b, c))); },
      py::arg("a"), py::arg("b"), py::arg("c"));
  m.def(
      "coadjoint",
      [](const RVector& a, const RVector& b, double c, const RVector& alpha, const RVector& beta, double gamma) {
        const OrbitPoint xi = coadjoint(to_element(a, b, c), OrbitPoint(alpha, beta, gamma));
        return py::make_tuple(xi.alpha, xi.beta, xi.gamma);
      },
      py::arg("a"), py::arg("b"), py::arg("c"), py::arg("alpha"), py::arg("beta"), py::arg("gamma"));

  py::class_<InjectivityReport>(m, "InjectivityReport")
      .def_readonly("sigma_min", &InjectivityReport::sigma_min)
      .def_readonly("sigma_max", &InjectivityReport::sigma_max)
      .def_readonly("cond", &InjectivityReport::cond)
      .def_readonly("threshold", &InjectivityReport::threshold)
      .def_readonly("verdict", &InjectivityReport::verdict)
      .def("to_dict", &report_dict);

  py::class_<RepresentationContext>(m, "Context")
      .def(py::init<ModelConfig>(), py::arg("config"))
      .def_property_readonly("config", &RepresentationContext::config)
      .def_property_readonly("dim", &RepresentationContext::dim)
      .def("grid_points", [](const RepresentationContext& c) { return c.grid()->points(); },
           "Grid points, one row (a_1..a_n, b_1..b_n) per point.")
      .def("grid_weight", [](const RepresentationContext& c) { return c.grid()->weight(); })
      .def(
          "rep_matrix",
          [](const RepresentationContext& c, const RVector& a, const RVector& b, double z) {
            return c.rep_matrix(to_element(a, b, z)).entries;
          },
          py::arg("a"), py::arg("b"), py::arg("c") = 0.0)
      .def(
          "coherent_state",
          [](const RepresentationContext& c, const RVector& x) { return c.coherent_state(to_point(x, c.config().n)).coeffs; },
          py::arg("x"))
      .def(
          "kernel",
          [](const RepresentationContext& c, const RVector& x, const RVector& y) {
            return kernel(c, to_point(x, c.config().n), to_point(y, c.config().n));
          },
          py::arg("x"), py::arg("y"))
      .def(
          "full_symbol",
          [](const RepresentationContext& c, const CMatrix& A, const RVector& x, const RVector& y) {
            return full_symbol(c, to_operator(A), to_point(x, c.config().n), to_point(y, c.config().n));
          },
          py::arg("A"), py::arg("x"), py::arg("y"))
      .def(
          "analysis", [](const RepresentationContext& c, const CVector& f) { return analysis(c, to_state(f)).values; },
          py::arg("f"))
      .def(
          "coefficient_map",
          [](const RepresentationContext& c, const CVector& f, const CVector& phi) {
            return coefficient_map(c, to_state(f), to_state(phi)).values;
          },
          py::arg("f"), py::arg("phi"))
      .def(
          "wigner",
          [](const RepresentationContext& c, const CVector& f, const CVector& phi) {
            const OrbitGridFunction w = wigner(c, to_state(f), to_state(phi));
            return py::make_tuple(w.chart->points(), w.values);
          },
          py::arg("f"), py::arg("phi"), "Returns (orbit chart points, Wigner samples).")
      .def(
          "covariant_symbol",
          [](const RepresentationContext& c, const CMatrix& A) { return covariant_symbol(c, to_operator(A)).values; },
          py::arg("A"))
      .def(
          "trace_identity_residual",
          [](const RepresentationContext& c, const CMatrix& A) { return trace_identity_residual(c, to_operator(A)); },
          py::arg("A"))
      .def(
          "hs_identity_residual",
          [](const RepresentationContext& c, const CMatrix& A) { return hs_identity_residual(c, to_operator(A)); },
          py::arg("A"))
      .def(
          "covariance_residual",
          [](const RepresentationContext& c, const CMatrix& A, const RVector& a, const RVector& b, double z) {
            return covariance_residual(c, to_operator(A), to_element(a, b, z));
          },
          py::arg("A"), py::arg("a"), py::arg("b"), py::arg("c") = 0.0)
      .def("symbol_map_singular_values",
           [](const RepresentationContext& c) { return build_symbol_map(c).singular_values; })
      .def("injectivity_report", [](const RepresentationContext& c) { return injectivity_report(c); });

  m.def(
      "run_verification",
      [](const ModelConfig& cfg, std::uint64_t seed) {
        py::list out;
        for (const auto& r : run_verification(cfg, seed)) {
          py::dict d;
          d["criterion"] = r.criterion;
          d["name"] = r.name;
          d["description"] = r.description;
          d["value"] = r.value;
          d["relation"] = symbol(r.relation);
          d["threshold"] = r.threshold;
          d["passed"] = r.passed;
          out.append(d);
        }
        return out;
      },
      py::arg("config"), py::arg("seed") = 0, "Every identity check at its pinned tolerance, as a list of dicts.");
}
