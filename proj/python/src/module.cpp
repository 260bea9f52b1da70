#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "bosecanon/asymptotics.hpp"
#include "bosecanon/canonical_integral.hpp"
#include "bosecanon/errors.hpp"
#include "bosecanon/grand_canonical.hpp"
#include "bosecanon/oracle.hpp"
#include "bosecanon/scaling_fit.hpp"
#include "bosecanon/spectrum.hpp"
#include "bosecanon/sweep.hpp"
#include "bosecanon/validation.hpp"

namespace py = pybind11;
using namespace bosecanon;

namespace {

QuadratureConfig make_config(std::optional<int> m_max, std::optional<double> ground_offset,
                             const std::string& tail, const std::string& contour,
                             double rel_tol, int intervals_per_oscillation,
                             std::optional<int> points_per_interval, bool exploit_symmetry,
                             int threads) {
  QuadratureConfig c;
  c.m_max = m_max;
  c.ground_offset = ground_offset;
  c.tail_mode = parse_tail_mode(tail);
  c.contour = parse_contour_mode(contour);
  c.convergence_rel_tol = rel_tol;
  c.intervals_per_oscillation = intervals_per_oscillation;
  c.points_per_interval = points_per_interval;
  c.exploit_symmetry = exploit_symmetry;
  c.threads = threads;
  c.validate();
  return c;
}

// Keyword arguments shared by every function that runs the integral engine.
#define ENGINE_KWARGS                                                                   \
  py::kw_only(), py::arg("m_max") = py::none(), py::arg("ground_offset") = py::none(), \
      py::arg("tail") = "mb", py::arg("contour") = "adaptive",                         \
      py::arg("rel_tol") = 1e-12, py::arg("intervals_per_oscillation") = 1,            \
      py::arg("points_per_interval") = py::none(), py::arg("exploit_symmetry") = true, \
      py::arg("threads") = 1

py::dict row_to_dict(const SweepRow& row) {
  py::dict d;
  const auto& names = row_field_names();
  const std::vector<double> values = row_numeric_values(row);
  for (std::size_t i = 0; i < values.size(); ++i) d[py::str(names[i])] = values[i];
  d["n"] = row.n;
  d["m_max"] = row.m_max;
  d["intervals"] = row.intervals;
  d["error"] = row.error.empty() ? py::object(py::none()) : py::object(py::str(row.error));
  return d;
}

}  // namespace

PYBIND11_MODULE(_bosecanon, m) {
  m.doc() = "Canonical ideal Bose gas in an isotropic harmonic trap";
  m.attr("__version__") = BOSECANON_VERSION;

  auto domain_error = py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
  (void)domain_error;

  py::class_<TrapSpectrum>(m, "TrapSpectrum")
      .def(py::init<int, double, double>(), py::arg("max_level"), py::arg("ground_offset") = 0.0,
           py::arg("level_spacing") = 1.0)
      .def_property_readonly("max_level", &TrapSpectrum::max_level)
      .def_property_readonly("ground_offset", &TrapSpectrum::ground_offset)
      .def_property_readonly("level_spacing", &TrapSpectrum::level_spacing)
      .def_property_readonly("state_count", &TrapSpectrum::state_count)
      .def("energy", &TrapSpectrum::energy, py::arg("m"))
      .def_static("degeneracy", &TrapSpectrum::degeneracy, py::arg("m"))
      .def("levels",
           [](const TrapSpectrum& s) {
             py::list out;
             for (const Level& l : s.levels()) out.append(py::make_tuple(l.energy, l.degeneracy));
             return out;
           })
      .def("__repr__", [](const TrapSpectrum& s) {
        std::ostringstream o;
        o << "TrapSpectrum(max_level=" << s.max_level() << ", ground_offset=" << s.ground_offset()
          << ", level_spacing=" << s.level_spacing() << ")";
        return o.str();
      });

  m.def("critical_temperature", &critical_temperature, py::arg("spectrum"), py::arg("n"));
  m.def("default_max_level", &default_max_level, py::arg("t_over_spacing"));

  py::class_<GrandCanonicalState>(m, "GrandCanonicalState")
      .def_property_readonly("temperature", &GrandCanonicalState::temperature)
      .def_property_readonly("ground_gap", &GrandCanonicalState::ground_gap)
      .def_property_readonly("fugacity", &GrandCanonicalState::fugacity)
      .def_property_readonly("chemical_potential", &GrandCanonicalState::chemical_potential)
      .def_property_readonly("ground_occupation", &GrandCanonicalState::ground_occupation)
      .def_property_readonly("ground_fluctuation", &GrandCanonicalState::ground_fluctuation)
      .def_property_readonly("excited_particles", &GrandCanonicalState::excited_particles)
      .def_property_readonly("tail_particles", &GrandCanonicalState::tail_particles)
      .def_property_readonly("total_particles", &GrandCanonicalState::total_particles)
      .def("state_occupation", &GrandCanonicalState::state_occupation, py::arg("m"));
  m.def("solve_fugacity", &solve_fugacity, py::arg("spectrum"), py::arg("t"), py::arg("n"),
        py::arg("include_tail") = true);

  py::class_<IntegralDiagnostics>(m, "IntegralDiagnostics")
      .def_readonly("imag_residual", &IntegralDiagnostics::imag_residual)
      .def_readonly("intervals_evaluated", &IntegralDiagnostics::intervals_evaluated)
      .def_readonly("intervals_total", &IntegralDiagnostics::intervals_total)
      .def_readonly("early_exit", &IntegralDiagnostics::early_exit)
      .def_readonly("tail_share", &IntegralDiagnostics::tail_share)
      .def_readonly("m_max", &IntegralDiagnostics::m_max)
      .def_readonly("points_per_interval", &IntegralDiagnostics::points_per_interval)
      .def_readonly("contour_ground_fugacity", &IntegralDiagnostics::contour_ground_fugacity)
      .def_readonly("cancellation", &IntegralDiagnostics::cancellation);

  py::class_<CanonicalResult>(m, "CanonicalResult")
      .def_readonly("n", &CanonicalResult::n)
      .def_readonly("temperature", &CanonicalResult::temperature)
      .def_readonly("log_z", &CanonicalResult::log_z)
      .def_readonly("n0_mean", &CanonicalResult::n0_mean)
      .def_readonly("n0_second_moment", &CanonicalResult::n0_second_moment)
      .def_readonly("n1_mean", &CanonicalResult::n1_mean)
      .def_readonly("n0_n1_mean", &CanonicalResult::n0_n1_mean)
      .def_readonly("ne_mean", &CanonicalResult::ne_mean)
      .def_readonly("diagnostics", &CanonicalResult::diagnostics)
      .def_property_readonly("n0_variance", &CanonicalResult::n0_variance)
      .def_property_readonly("delta_n0", &CanonicalResult::delta_n0)
      .def_property_readonly("covariance_01", &CanonicalResult::covariance_01);

  m.def(
      "canonical_observables",
      [](const TrapSpectrum& s, double t, std::int64_t n, std::optional<int> m_max,
         std::optional<double> ground_offset, const std::string& tail,
         const std::string& contour, double rel_tol, int ipo, std::optional<int> ppi,
         bool symmetric, int threads) {
        const QuadratureConfig c = make_config(m_max, ground_offset, tail, contour, rel_tol, ipo,
                                               ppi, symmetric, threads);
        py::gil_scoped_release release;
        return canonical_observables(s, t, n, c);
      },
      py::arg("spectrum"), py::arg("t"), py::arg("n"), ENGINE_KWARGS);

  py::class_<RecursionTable>(m, "RecursionTable")
      .def_property_readonly("max_n", &RecursionTable::max_n)
      .def("log_z", &RecursionTable::log_z, py::arg("k"))
      .def("state_occupation", &RecursionTable::state_occupation, py::arg("state_energy"),
           py::arg("n"))
      .def("state_second_moment", &RecursionTable::state_second_moment,
           py::arg("state_energy"), py::arg("n"));
  m.def(
      "recursion_partition",
      [](const TrapSpectrum& s, double t, std::int64_t n, const std::string& model) {
        SingleParticleModel mdl = SingleParticleModel::full;
        if (model == "truncated") {
          mdl = SingleParticleModel::truncated;
        } else if (model == "mb") {
          mdl = SingleParticleModel::truncated_mb_tail;
        } else if (model != "full") {
          throw ConfigError("model must be full, truncated or mb");
        }
        return recursion_partition(s, t, n, mdl);
      },
      py::arg("spectrum"), py::arg("t"), py::arg("n"), py::arg("model") = "full");

  py::class_<EnumerationResult>(m, "EnumerationResult")
      .def_readonly("z", &EnumerationResult::z)
      .def_readonly("configurations", &EnumerationResult::configurations)
      .def_readonly("mean", &EnumerationResult::mean)
      .def_readonly("second", &EnumerationResult::second);
  m.def("state_energies", &state_energies, py::arg("spectrum"));
  m.def("enumerate_exact", &enumerate_exact, py::arg("state_energies"), py::arg("t"),
        py::arg("n"));

  m.def("condensate_fraction_limit", &condensate_fraction_limit, py::arg("t_over_tc"));
  m.def("fluctuation_prefactor", &fluctuation_prefactor);
  m.def("delta_n0_fraction_limit", &delta_n0_fraction_limit, py::arg("n"), py::arg("t_over_tc"));
  m.def("correlation_limit", &correlation_limit, py::arg("n"), py::arg("t_over_tc"));
  m.def("correlation_transfer_ratio", &correlation_transfer_ratio, py::arg("spectrum"),
        py::arg("t"));

  py::class_<SweepResult>(m, "SweepResult")
      .def_property_readonly("rows",
                             [](const SweepResult& r) {
                               py::list out;
                               for (const SweepRow& row : r.rows) out.append(row_to_dict(row));
                               return out;
                             })
      .def_property_readonly("failed_rows", &SweepResult::failed_rows)
      .def("to_json", &to_json, py::arg("indent") = 2)
      .def("to_csv", [](const SweepResult& r) {
        std::ostringstream out;
        write_csv(out, r);
        return out.str();
      });
  m.def(
      "run_sweep",
      [](std::vector<std::int64_t> particles, std::vector<double> t_over_tc,
         std::optional<int> m_max, double ground_offset, const std::string& tail,
         const std::string& contour, double rel_tol, int threads) {
        SweepConfig c;
        c.particles = std::move(particles);
        c.t_over_tc = std::move(t_over_tc);
        c.m_max = m_max;
        c.ground_offset = ground_offset;
        c.tail_mode = parse_tail_mode(tail);
        c.contour = parse_contour_mode(contour);
        c.rel_tol = rel_tol;
        c.threads = threads;
        py::gil_scoped_release release;
        return run_sweep(c);
      },
      py::arg("particles"), py::arg("t_over_tc"), py::kw_only(), py::arg("m_max") = py::none(),
      py::arg("ground_offset") = 1.0, py::arg("tail") = "mb", py::arg("contour") = "adaptive",
      py::arg("rel_tol") = 1e-12, py::arg("threads") = 1);
  m.def("preset_grid", &preset_grid);

  py::class_<ScalingFit>(m, "ScalingFit")
      .def_readonly("exponent", &ScalingFit::exponent)
      .def_readonly("std_error", &ScalingFit::std_error)
      .def_readonly("intercepts", &ScalingFit::intercepts)
      .def_readonly("points", &ScalingFit::points)
      .def_readonly("distinct_n", &ScalingFit::distinct_n);
  m.def(
      "fit_scaling",
      [](const SweepResult& r, const std::string& observable, std::vector<double> temps) {
        return fit_scaling_pooled(r.rows, parse_gap_observable(observable), temps);
      },
      py::arg("result"), py::arg("observable"), py::arg("t_over_tc"),
      "Common log-log slope of |gap| against N over the given temperatures.");

  py::class_<SuiteReport>(m, "SuiteReport")
      .def_readonly("name", &SuiteReport::name)
      .def_readonly("max_deviation", &SuiteReport::max_deviation)
      .def_readonly("worst_case", &SuiteReport::worst_case)
      .def_readonly("cases", &SuiteReport::cases)
      .def_readonly("passed", &SuiteReport::passed);
  py::class_<ValidationReport>(m, "ValidationReport")
      .def_readonly("suites", &ValidationReport::suites)
      .def_property_readonly("passed", &ValidationReport::passed)
      .def("__str__", &format_report);
  m.def(
      "validate",
      [](std::int64_t max_n, double tol, std::optional<int> m_max,
         std::optional<double> ground_offset, const std::string& tail,
         const std::string& contour, double rel_tol, int ipo, std::optional<int> ppi,
         bool symmetric, int threads) {
        const QuadratureConfig c = make_config(m_max, ground_offset, tail, contour, rel_tol, ipo,
                                               ppi, symmetric, threads);
        py::gil_scoped_release release;
        return validate(max_n, tol, c);
      },
      py::arg("max_n") = 100, py::arg("tol") = 1e-8, ENGINE_KWARGS);
}
