#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qomchaos/benchmarks.hpp"
#include "qomchaos/config.hpp"
#include "qomchaos/sweep.hpp"

namespace py = pybind11;
using namespace qomchaos;

namespace {

py::array_t<double> jacobian_array(const ModelParams& params, const State6& state) {
  Mat6 jac;
  jacobian(params, state.to_array(), jac);
  py::array_t<double> out({6, 6});
  auto buf = out.mutable_unchecked<2>();
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) buf(i, j) = jac[i][j];
  return out;
}

py::dict trajectory_dict(const Trajectory<6>& traj) {
  const auto n = static_cast<py::ssize_t>(traj.times.size());
  py::array_t<double> times(n);
  py::array_t<double> states({n, static_cast<py::ssize_t>(6)});
  auto tbuf = times.mutable_unchecked<1>();
  auto sbuf = states.mutable_unchecked<2>();
  for (py::ssize_t i = 0; i < n; ++i) {
    tbuf(i) = traj.times[i];
    for (int j = 0; j < 6; ++j) sbuf(i, j) = traj.states[i][j];
  }
  py::dict out;
  out["times"] = times;
  out["states"] = states;
  out["diverged"] = traj.diverged;
  out["divergence_time"] = traj.divergence_time;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Mean-field chaos toolkit for a qubit-coupled optomechanical cavity";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<StiffnessFailure>(m, "StiffnessError", PyExc_RuntimeError);

  py::enum_<StepMethod>(m, "StepMethod")
      .value("rk4_fixed", StepMethod::rk4_fixed)
      .value("rk54_adaptive", StepMethod::rk54_adaptive);
  py::enum_<MleMethod>(m, "MleMethod")
      .value("benettin_two_trajectory", MleMethod::benettin_two_trajectory)
      .value("tangent_variational", MleMethod::tangent_variational);
  py::enum_<MleSign>(m, "MleSign")
      .value("negative", MleSign::negative)
      .value("zero", MleSign::zero)
      .value("positive", MleSign::positive)
      .value("indeterminate", MleSign::indeterminate);
  py::enum_<AttractorKind>(m, "AttractorKind")
      .value("fixed_point", AttractorKind::fixed_point)
      .value("period_n", AttractorKind::period_n)
      .value("chaotic", AttractorKind::chaotic)
      .value("unbounded", AttractorKind::unbounded)
      .value("indeterminate", AttractorKind::indeterminate);
  py::enum_<SweepAxis>(m, "SweepAxis")
      .value("j", SweepAxis::j)
      .value("delta_q", SweepAxis::delta_q)
      .value("p", SweepAxis::p)
      .value("p_p", SweepAxis::p_p)
      .value("phi", SweepAxis::phi)
      .value("delta", SweepAxis::delta);
  py::enum_<SweepMode>(m, "SweepMode")
      .value("independent", SweepMode::independent)
      .value("warm_start", SweepMode::warm_start);
  py::enum_<PhysicalKind>(m, "PhysicalKind")
      .value("frequency", PhysicalKind::frequency)
      .value("rate", PhysicalKind::rate)
      .value("time", PhysicalKind::time);

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init([](double delta, double delta_q, double j, double p, double p_p, double phi,
                       double kappa, double kappa_m, double kappa_q,
                       std::optional<double> omega_m_hz) {
             ModelParams mp{delta, delta_q, j, p, p_p, phi, kappa, kappa_m, kappa_q, omega_m_hz};
             mp.validate();
             return mp;
           }),
           py::arg("delta") = -0.65, py::arg("delta_q") = 0.5, py::arg("j") = 0.2,
           py::arg("p") = 1.4, py::arg("p_p") = 0.5, py::arg("phi") = 0.0,
           py::arg("kappa") = 1.0, py::arg("kappa_m") = 0.001, py::arg("kappa_q") = 1.0,
           py::arg("omega_m_hz") = std::nullopt)
      .def_readwrite("delta", &ModelParams::delta)
      .def_readwrite("delta_q", &ModelParams::delta_q)
      .def_readwrite("j", &ModelParams::j)
      .def_readwrite("p", &ModelParams::p)
      .def_readwrite("p_p", &ModelParams::p_p)
      .def_readwrite("phi", &ModelParams::phi)
      .def_readwrite("kappa", &ModelParams::kappa)
      .def_readwrite("kappa_m", &ModelParams::kappa_m)
      .def_readwrite("kappa_q", &ModelParams::kappa_q)
      .def_readwrite("omega_m_hz", &ModelParams::omega_m_hz)
      .def("validate", &ModelParams::validate)
      .def("__repr__", [](const ModelParams& p) {
        return "ModelParams(delta=" + std::to_string(p.delta) +
               ", delta_q=" + std::to_string(p.delta_q) + ", j=" + std::to_string(p.j) +
               ", p=" + std::to_string(p.p) + ", p_p=" + std::to_string(p.p_p) +
               ", phi=" + std::to_string(p.phi) + ")";
      });

  py::class_<State6>(m, "State6")
      .def(py::init<double, double, double, double, double, double>(), py::arg("a_re") = 0.0,
           py::arg("a_im") = 0.0, py::arg("b_re") = 0.0, py::arg("b_im") = 0.0,
           py::arg("q_re") = 0.0, py::arg("q_im") = 0.0)
      .def_readwrite("a_re", &State6::a_re)
      .def_readwrite("a_im", &State6::a_im)
      .def_readwrite("b_re", &State6::b_re)
      .def_readwrite("b_im", &State6::b_im)
      .def_readwrite("q_re", &State6::q_re)
      .def_readwrite("q_im", &State6::q_im)
      .def("to_array",
           [](const State6& s) {
             py::array_t<double> out(6);
             auto buf = out.mutable_unchecked<1>();
             const Vec6 v = s.to_array();
             for (int i = 0; i < 6; ++i) buf(i) = v[i];
             return out;
           })
      .def("__repr__", [](const State6& s) {
        return "State6(" + std::to_string(s.a_re) + ", " + std::to_string(s.a_im) + ", " +
               std::to_string(s.b_re) + ", " + std::to_string(s.b_im) + ", " +
               std::to_string(s.q_re) + ", " + std::to_string(s.q_im) + ")";
      });

  py::class_<Observables>(m, "Observables")
      .def_readonly("x", &Observables::x)
      .def_readonly("p_mom", &Observables::p_mom)
      .def_readonly("n_a", &Observables::n_a)
      .def_readonly("n_q", &Observables::n_q);

  py::class_<IntegratorSettings>(m, "IntegratorSettings")
      .def(py::init<>())
      .def_readwrite("method", &IntegratorSettings::method)
      .def_readwrite("h", &IntegratorSettings::h)
      .def_readwrite("rtol", &IntegratorSettings::rtol)
      .def_readwrite("atol", &IntegratorSettings::atol)
      .def_readwrite("sample_dt", &IntegratorSettings::sample_dt)
      .def_readwrite("t_end", &IntegratorSettings::t_end)
      .def_readwrite("divergence_threshold", &IntegratorSettings::divergence_threshold);

  py::class_<MleSettings>(m, "MleSettings")
      .def(py::init<>())
      .def_readwrite("d0", &MleSettings::d0)
      .def_readwrite("renorm_interval", &MleSettings::renorm_interval)
      .def_readwrite("t_transient", &MleSettings::t_transient)
      .def_readwrite("t_total", &MleSettings::t_total)
      .def_readwrite("method", &MleSettings::method);

  py::class_<MleEstimate>(m, "MleEstimate")
      .def_readonly("value", &MleEstimate::value)
      .def_readonly("history", &MleEstimate::history)
      .def_readonly("method", &MleEstimate::method)
      .def_readonly("converged", &MleEstimate::converged)
      .def_readonly("bounded", &MleEstimate::bounded);

  py::class_<PeakSet>(m, "PeakSet")
      .def_readonly("times", &PeakSet::times)
      .def_readonly("values", &PeakSet::values)
      .def_readonly("min_prominence", &PeakSet::min_prominence);

  py::class_<AttractorLabel>(m, "AttractorLabel")
      .def_readonly("kind", &AttractorLabel::kind)
      .def_readonly("n", &AttractorLabel::n)
      .def_readonly("amplitude", &AttractorLabel::amplitude)
      .def_readonly("n_clusters", &AttractorLabel::n_clusters)
      .def("__repr__", [](const AttractorLabel& l) {
        std::string s = "AttractorLabel(" + to_string(l.kind);
        if (l.kind == AttractorKind::period_n) s += "(" + std::to_string(l.n) + ")";
        return s + ")";
      });

  py::class_<BifurcationRow>(m, "BifurcationRow")
      .def_readonly("param_value", &BifurcationRow::param_value)
      .def_readonly("peaks", &BifurcationRow::peaks)
      .def_readonly("mle", &BifurcationRow::mle)
      .def_readonly("label", &BifurcationRow::label)
      .def_readonly("wall_time_s", &BifurcationRow::wall_time_s);

  py::class_<AnalysisSettings>(m, "AnalysisSettings")
      .def(py::init<>())
      .def_readwrite("t_start", &AnalysisSettings::t_start);

  m.def("rhs", py::overload_cast<const ModelParams&, const State6&>(&rhs), py::arg("params"),
        py::arg("state"), "Time derivative of the six-component mean-field state.");
  m.def("jacobian", &jacobian_array, py::arg("params"), py::arg("state"),
        "6x6 analytic Jacobian of the right-hand side.");
  m.def("observables", &observables, py::arg("state"));
  m.def("linear_steady_state", &linear_steady_state, py::arg("params"),
        "Closed-form steady state of the P=0 system.");
  m.def(
      "newton_fixed_point",
      [](const ModelParams& params, const State6& guess, double tol, int max_iter) {
        const NewtonResult res = newton_fixed_point(params, guess, tol, max_iter);
        py::dict out;
        out["state"] = res.state;
        out["iterations"] = res.iterations;
        out["converged"] = res.converged;
        out["error"] = res.error;
        return out;
      },
      py::arg("params"), py::arg("guess") = State6{}, py::arg("tol") = 1e-10,
      py::arg("max_iter") = 50);
  m.def("to_physical", &to_physical, py::arg("params"), py::arg("quantity"), py::arg("kind"));

  m.def(
      "simulate",
      [](const ModelParams& params, const IntegratorSettings& settings, const State6& state0) {
        return trajectory_dict(integrate(ModelSystem{params}, state0.to_array(), settings));
      },
      py::arg("params"), py::arg("settings") = IntegratorSettings{},
      py::arg("state0") = State6{},
      "Integrate one trajectory; returns dict with times, states, diverged.");

  m.def(
      "mle",
      [](const ModelParams& params, const MleSettings& ms, const IntegratorSettings& is,
         const State6& state0) {
        return estimate_mle(ModelSystem{params}, state0.to_array(), ms, is);
      },
      py::arg("params"), py::arg("settings") = MleSettings{},
      py::arg("integrator") = IntegratorSettings{}, py::arg("state0") = State6{},
      "Maximal Lyapunov exponent with the configured method.");
  m.def(
      "mle_lorenz",
      [](const MleSettings& ms, const IntegratorSettings& is) {
        return estimate_mle(LorenzSystem{}, Vec<3>{1.0, 1.0, 1.0}, ms, is);
      },
      py::arg("settings") = MleSettings{}, py::arg("integrator") = IntegratorSettings{},
      "MLE of the built-in Lorenz benchmark (reference 0.9056).");
  m.def("classify_mle", &classify_mle, py::arg("estimate"), py::arg("eps") = 0.005);

  m.def(
      "find_peaks",
      [](const std::vector<double>& times, const std::vector<double>& x, double min_prominence) {
        return find_peaks(times, x, min_prominence);
      },
      py::arg("times"), py::arg("x"), py::arg("min_prominence") = 0.0);

  m.def(
      "analyze_point",
      [](const ModelParams& params, const State6& state0, const IntegratorSettings& is,
         const MleSettings& ms, const AnalysisSettings& as) {
        return analyze_point(params, state0, is, ms, as).row;
      },
      py::arg("params"), py::arg("state0") = State6{},
      py::arg("integrator") = IntegratorSettings{}, py::arg("mle") = MleSettings{},
      py::arg("analysis") = AnalysisSettings{},
      "Full per-point pipeline: integrate, peaks, MLE, classification.");

  m.def("grid", &grid, py::arg("start"), py::arg("stop"), py::arg("count"));

  m.def(
      "run_sweep",
      [](const std::string& axis, double start, double stop, int count, const ModelParams& base,
         const IntegratorSettings& is, const MleSettings& ms, const AnalysisSettings& as,
         const std::string& mode, int workers) {
        SweepSpec spec;
        bool found = false;
        for (SweepAxis a : {SweepAxis::j, SweepAxis::delta_q, SweepAxis::p, SweepAxis::p_p,
                            SweepAxis::phi, SweepAxis::delta})
          if (to_string(a) == axis) {
            spec.axis = a;
            found = true;
          }
        if (!found) throw std::invalid_argument("unknown sweep axis '" + axis + "'");
        spec.start = start;
        spec.stop = stop;
        spec.count = count;
        spec.base = base;
        spec.integrator = is;
        spec.mle = ms;
        spec.analysis = as;
        spec.mode = mode == "warm_start" ? SweepMode::warm_start : SweepMode::independent;
        spec.workers = workers;
        py::gil_scoped_release release;
        return run_sweep(spec);
      },
      py::arg("axis"), py::arg("start"), py::arg("stop"), py::arg("count"), py::arg("base"),
      py::arg("integrator") = IntegratorSettings{}, py::arg("mle") = MleSettings{},
      py::arg("analysis") = AnalysisSettings{}, py::arg("mode") = "independent",
      py::arg("workers") = 1);

  m.def("preset_names", &preset_names);
  m.def("preset_json", &preset_json, py::arg("name"));

#ifdef QOMCHAOS_VERSION
  m.attr("__version__") = QOMCHAOS_VERSION;
#else
  m.attr("__version__") = "dev";
#endif
}
