#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "polar/baselines.hpp"
#include "polar/certificates.hpp"
#include "polar/geometry.hpp"
#include "polar/harness.hpp"
#include "polar/objective.hpp"
#include "polar/solver.hpp"

namespace py = pybind11;
using namespace polar;

namespace {

py::dict traceDict(const solver::SolveTrace& trace) {
  auto column = [&](auto get) {
    py::list out;
    for (const solver::TraceRow& r : trace.rows) {
      const std::optional<double> v = get(r);
      if (v) out.append(*v);
      else out.append(py::none());
    }
    return out;
  };
  py::dict d;
  d["t"] = column([](const solver::TraceRow& r) { return std::optional<double>(static_cast<double>(r.t)); });
  d["eta"] = column([](const solver::TraceRow& r) { return std::optional<double>(r.eta); });
  d["f_gap"] = column([](const solver::TraceRow& r) { return std::optional<double>(r.fGap); });
  d["grad_norm"] = column([](const solver::TraceRow& r) { return std::optional<double>(r.gradNorm); });
  d["dist_to_star"] = column([](const solver::TraceRow& r) { return r.distToStar; });
  d["linear_envelope"] = column([](const solver::TraceRow& r) { return r.linearEnvelope; });
  d["sublinear_envelope"] = column([](const solver::TraceRow& r) { return r.sublinearEnvelope; });
  d["a_of_x"] = column([](const solver::TraceRow& r) { return r.aOfX; });
  return d;
}

solver::StepSizePolicy policyFrom(const std::string& step, std::optional<double> eta) {
  solver::StepSizePolicy p{harness::parseStepMode(step), eta.value_or(0.0)};
  if (eta && p.mode != solver::StepMode::UserFixed) {
    throw Error(Errc::InvalidArgument, "eta is only used with step='user'");
  }
  return p;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Polar factor by Riemannian gradient descent on O(n)";

  // Module-lifetime reference; instances carry the error code name in `code`.
  static PyObject* polarError = PyErr_NewException("polar_rgd._core.PolarError", PyExc_RuntimeError, nullptr);
  m.attr("PolarError") = py::reinterpret_borrow<py::object>(polarError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(polarError)(e.what());
      exc.attr("code") = std::string(errcName(e.code()));
      PyErr_SetObject(polarError, exc.ptr());
    }
  });

  py::class_<objective::ProcrustesProblem>(m, "ProcrustesProblem")
      .def(py::init<Matrix>(), py::arg("C"))
      .def_property_readonly("C", &objective::ProcrustesProblem::C)
      .def_property_readonly("L", &objective::ProcrustesProblem::L)
      .def_property_readonly("sigma_min", &objective::ProcrustesProblem::sigmaMin)
      .def_property_readonly("mu", &objective::ProcrustesProblem::mu)
      .def_property_readonly("f_star", &objective::ProcrustesProblem::fStar)
      .def_property_readonly("singular", &objective::ProcrustesProblem::singular)
      .def_property_readonly("x_star", [](const objective::ProcrustesProblem& p) { return p.xStar().matrix(); })
      .def("value", [](const objective::ProcrustesProblem& p, const Matrix& x) {
        return objective::value(p, OrthogonalMatrix(x));
      })
      .def("gradient", [](const objective::ProcrustesProblem& p, const Matrix& x) {
        return objective::riemannianGradient(p, OrthogonalMatrix(x)).ambient();
      }, "Riemannian gradient as an ambient matrix X * Omega.")
      .def("hessian_apply", [](const objective::ProcrustesProblem& p, const Matrix& x, const Matrix& omega) {
        const OrthogonalMatrix xo(x);
        return objective::hessianApply(p, xo, TangentVector(xo, omega)).omega();
      }, py::arg("X"), py::arg("omega"), "Generator of Hess f(X)[X omega].");

  m.def("exp_map", [](const Matrix& x, const Matrix& omega) {
    return geometry::expMap(TangentVector(OrthogonalMatrix(x), omega)).matrix();
  }, py::arg("X"), py::arg("omega"));
  m.def("log_map", [](const Matrix& x, const Matrix& y) {
    return geometry::logMap(OrthogonalMatrix(x), OrthogonalMatrix(y)).omega();
  }, py::arg("X"), py::arg("Y"), "Generator omega with exp_X(X omega) = Y.");
  m.def("distance", [](const Matrix& x, const Matrix& y) {
    return geometry::distance(OrthogonalMatrix(x), OrthogonalMatrix(y));
  }, py::arg("X"), py::arg("Y"));
  m.def("parallel_transport", [](const Matrix& x, const Matrix& omega, const Matrix& y) {
    return geometry::parallelTransport(TangentVector(OrthogonalMatrix(x), omega), OrthogonalMatrix(y)).omega();
  }, py::arg("X"), py::arg("omega"), py::arg("Y"));
  m.def("haar_sample", [](int n, std::uint64_t seed) {
    Rng rng(seed);
    return geometry::haarSample(n, rng).matrix();
  }, py::arg("n"), py::arg("seed") = 0);

  m.def("polar_svd", [](const Matrix& c) {
    const baselines::PolarFactors f = baselines::polarViaSvd(c);
    return py::make_tuple(f.X.matrix(), f.P);
  }, py::arg("C"), "Polar factors (X, P) with C = X P.");
  m.def("polar_newton", [](const Matrix& c, double tol, int maxIters) {
    const baselines::NewtonResult r = baselines::polarViaNewton(c, tol, maxIters);
    return py::make_tuple(r.factors.X.matrix(), r.factors.P, r.iterations);
  }, py::arg("C"), py::arg("tol") = 1e-12, py::arg("max_iters") = 100);

  m.def(
      "solve",
      [](const Matrix& c, std::optional<Matrix> x0, const std::string& step, std::optional<double> eta,
         std::optional<double> gradTol, long maxIters, const std::string& start, double radius, std::uint64_t seed) {
        const objective::ProcrustesProblem p(c);
        const OrthogonalMatrix start0 =
            x0 ? OrthogonalMatrix(*x0)
               : solver::coldStart(p, solver::StartStrategy{harness::parseStartKind(start), radius}, seed);
        solver::SolveOptions opts;
        opts.gradTol = gradTol;
        opts.maxIters = maxIters;
        const solver::StepSizePolicy policy = policyFrom(step, eta);
        std::optional<solver::SolveResult> solved;
        {
          py::gil_scoped_release release;
          solved.emplace(solver::solve(p, start0, policy, opts));
        }
        const solver::SolveResult& r = *solved;
        const auto violation = solver::findEnvelopeViolation(r.trace, p.singular());
        py::dict out;
        out["x"] = r.xFinal.matrix();
        out["iterations"] = r.iterations;
        out["termination"] = std::string(solver::terminationName(r.termination));
        out["trace"] = traceDict(r.trace);
        out["envelope_violation_row"] = violation ? py::cast(violation->row) : py::none();
        return out;
      },
      py::arg("C"), py::arg("x0") = py::none(), py::arg("step") = "practical", py::arg("eta") = py::none(),
      py::arg("grad_tol") = py::none(), py::arg("max_iters") = 100000, py::arg("start") = "identity",
      py::arg("radius") = 1.0, py::arg("seed") = 0);

  m.def(
      "certificate_sweep",
      [](const Matrix& c, int samples, double radiusCap, std::uint64_t seed) {
        const objective::ProcrustesProblem p(c);
        std::vector<certificates::CertificateReport> reports;
        {
          py::gil_scoped_release release;
          reports = certificates::certificateSweep(p, samples, radiusCap, seed);
        }
        py::list out;
        for (const certificates::CertificateReport& r : reports) {
          py::dict d;
          d["kind"] = std::string(certificates::kindName(r.kind));
          d["sample"] = r.samplePoint;
          d["lhs"] = r.lhs;
          d["rhs"] = r.rhs;
          d["slack"] = r.slack;
          d["passed"] = r.passed;
          d["vacuous"] = r.vacuous;
          out.append(d);
        }
        return out;
      },
      py::arg("C"), py::arg("samples") = 100, py::arg("radius_cap") = 0.95 * std::numbers::pi, py::arg("seed") = 0);

  m.def(
      "compare_solvers",
      [](const Matrix& c, std::uint64_t seed) {
        baselines::RgdConfig rgd;
        rgd.seed = seed;
        const baselines::ComparisonRecord rec = baselines::compareSolvers(c, rgd);
        py::list out;
        for (const baselines::MethodOutcome& o : rec.outcomes) {
          py::dict d;
          d["method"] = o.method;
          d["included"] = o.included;
          d["iterations"] = o.iterations;
          d["residual_to_star"] = o.residualToStar;
          d["f_gap"] = o.fGap;
          d["note"] = o.note;
          out.append(d);
        }
        return out;
      },
      py::arg("C"), py::arg("seed") = 0);
}
