#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "aoiq/analysis.hpp"
#include "aoiq/optimize.hpp"
#include "aoiq/simulate.hpp"

namespace py = pybind11;
using namespace aoiq;

namespace {

std::vector<std::vector<double>> matrix_rows(const Matrix& m) {
  std::vector<std::vector<double>> rows(m.rows());
  for (int r = 0; r < m.rows(); ++r) rows[r].assign(m.row(r), m.row(r) + m.cols());
  return rows;
}

std::string policy_repr(const PreemptionPolicy& p) {
  std::ostringstream os;
  os << "PreemptionPolicy(regions=" << p.regions() << ", max_age=" << p.max_age() << ")";
  return os.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Average age-of-information analysis for preemptive status updates";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const NumericalError& e) {
      PyErr_SetString(PyExc_ArithmeticError, e.what());
    } catch (const ValidationError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  py::enum_<HazardProfile>(m, "HazardProfile")
      .value("CONSTANT", HazardProfile::Constant)
      .value("NONINCREASING", HazardProfile::Nonincreasing)
      .value("INCREASING_SOMEWHERE", HazardProfile::IncreasingSomewhere);

  py::enum_<PolicyKind>(m, "PolicyKind")
      .value("AP", PolicyKind::AlwaysPreempt)
      .value("PP", PolicyKind::Probabilistic)
      .value("PAP", PolicyKind::PacketAge)
      .value("PSP", PolicyKind::PacketSystemAge);

  py::class_<DelayModel>(m, "DelayModel")
      .def(py::init<std::vector<double>>(), py::arg("hazards"))
      .def_static("weibull", &DelayModel::weibull, py::arg("alpha"), py::arg("beta"),
                  py::arg("max_age"))
      .def_static("geometric", &DelayModel::geometric, py::arg("y"), py::arg("max_age"))
      .def_static(
          "from_tail",
          [](const std::vector<double>& tail, int max_age) {
            return DelayModel::from_tail(tail, max_age);
          },
          py::arg("tail"), py::arg("max_age"))
      .def_property_readonly("max_age", &DelayModel::max_age)
      .def_property_readonly("hazards",
                             [](const DelayModel& d) {
                               return std::vector<double>(d.hazards().begin(), d.hazards().end());
                             })
      .def("hazard", &DelayModel::hazard, py::arg("n"));

  m.def("hazard_profile", &hazard_profile, py::arg("model"));

  py::class_<PreemptionPolicy>(m, "PreemptionPolicy")
      .def(py::init<std::vector<int>, const std::vector<std::vector<double>>&, int>(),
           py::arg("thresholds"), py::arg("table"), py::arg("max_age"))
      .def_static("always_preempt", &PreemptionPolicy::always_preempt, py::arg("max_age"))
      .def_static("probabilistic", &PreemptionPolicy::probabilistic, py::arg("p"),
                  py::arg("max_age"))
      .def_static("packet_age", &PreemptionPolicy::packet_age, py::arg("p_low"),
                  py::arg("p_high"), py::arg("split_age"), py::arg("max_age"))
      .def_static("packet_system_age", &PreemptionPolicy::packet_system_age, py::arg("p1"),
                  py::arg("p2"), py::arg("p3"), py::arg("p4"), py::arg("split1"),
                  py::arg("split2"), py::arg("gamma"), py::arg("max_age"))
      .def_property_readonly("regions", &PreemptionPolicy::regions)
      .def_property_readonly("max_age", &PreemptionPolicy::max_age)
      .def_property_readonly("thresholds",
                             [](const PreemptionPolicy& p) {
                               return std::vector<int>(p.thresholds().begin(),
                                                       p.thresholds().end());
                             })
      .def("row",
           [](const PreemptionPolicy& p, int region) {
             return std::vector<double>(p.row(region).begin(), p.row(region).end());
           },
           py::arg("region"))
      .def("region_index", &PreemptionPolicy::region_index, py::arg("delta"))
      .def("__repr__", &policy_repr);

  py::class_<EvaluationScenario>(m, "EvaluationScenario")
      .def(py::init<DelayModel, PreemptionPolicy, double>(), py::arg("model"), py::arg("policy"),
           py::arg("q"))
      .def_readonly("model", &EvaluationScenario::model)
      .def_readonly("policy", &EvaluationScenario::policy)
      .def_readonly("q", &EvaluationScenario::arrival_prob);

  py::class_<CycleOffsets>(m, "CycleOffsets")
      .def_readonly("gamma", &CycleOffsets::gamma)
      .def_readonly("shifted", &CycleOffsets::shifted)
      .def_readonly("gaps", &CycleOffsets::gaps);

  py::class_<ResetDistribution>(m, "ResetDistribution")
      .def_property_readonly("B", [](const ResetDistribution& r) { return matrix_rows(r.B); })
      .def_readonly("pi", &ResetDistribution::pi);

  py::class_<AoiReport>(m, "AoiReport")
      .def_readonly("delta_bar", &AoiReport::delta_bar)
      .def_readonly("reset", &AoiReport::reset)
      .def_readonly("m1", &AoiReport::m1)
      .def_readonly("m2", &AoiReport::m2);

  m.def("cycle_offsets", &cycle_offsets, py::arg("policy"), py::arg("gamma"));
  m.def("tail_tau", &tail_tau, py::arg("scenario"), py::arg("gamma"), py::arg("n"));
  m.def("moments_tau", &moments_tau, py::arg("scenario"), py::arg("gamma"));
  m.def("moments_tau_truncated", &moments_tau_truncated, py::arg("scenario"), py::arg("gamma"),
        py::arg("tol"), py::arg("max_terms") = 1'000'000);
  m.def("reset_matrix", &reset_matrix, py::arg("scenario"));
  m.def("average_aoi", &average_aoi, py::arg("scenario"));

  py::class_<SimStats>(m, "SimStats")
      .def_readonly("slots", &SimStats::slots)
      .def_readonly("warmup", &SimStats::warmup)
      .def_readonly("mean_aoi", &SimStats::mean_aoi)
      .def_readonly("deliveries", &SimStats::deliveries)
      .def_readonly("reset_histogram", &SimStats::reset_histogram)
      .def_readonly("batch_means", &SimStats::batch_means)
      .def_readonly("batch_size", &SimStats::batch_size);

  m.def("simulate", &simulate, py::arg("scenario"), py::arg("slots"), py::arg("warmup"),
        py::arg("seed"), py::call_guard<py::gil_scoped_release>());
  m.def("confidence_interval", &confidence_interval, py::arg("stats"), py::arg("level"));

  py::class_<OptResult>(m, "OptResult")
      .def_readonly("kind", &OptResult::kind)
      .def_readonly("params", &OptResult::params)
      .def_readonly("delta_bar", &OptResult::delta_bar)
      .def_readonly("evaluated", &OptResult::evaluated)
      .def_readonly("skipped_nonabsorbing", &OptResult::skipped_nonabsorbing)
      .def_property_readonly("policy", [](const OptResult& r) { return r.policy; });

  m.def("grid_optimize", &grid_optimize, py::arg("kind"), py::arg("model"), py::arg("q"),
        py::arg("grid_step"), py::call_guard<py::gil_scoped_release>());

  py::class_<DominanceReport>(m, "DominanceReport")
      .def_readonly("holds", &DominanceReport::holds)
      .def_readonly("det_delta", &DominanceReport::det_delta)
      .def_readonly("rand_delta", &DominanceReport::rand_delta)
      .def_property_readonly("det_policy", [](const DominanceReport& r) { return r.det_policy; })
      .def_property_readonly("rand_policy",
                             [](const DominanceReport& r) { return r.rand_policy; })
      .def_readonly("evaluated", &DominanceReport::evaluated)
      .def_readonly("skipped_nonabsorbing", &DominanceReport::skipped_nonabsorbing);

  m.def("check_deterministic_dominance", &check_deterministic_dominance, py::arg("model"),
        py::arg("q"), py::arg("prob_grid_step"), py::arg("delta_cap") = 4,
        py::arg("threads") = 0, py::arg("max_points") = 300'000'000LL,
        py::call_guard<py::gil_scoped_release>());

  py::class_<AlwaysPreemptReport>(m, "AlwaysPreemptReport")
      .def_readonly("applicable", &AlwaysPreemptReport::applicable)
      .def_readonly("ap_delta", &AlwaysPreemptReport::ap_delta)
      .def_readonly("closed_form", &AlwaysPreemptReport::closed_form)
      .def_readonly("optimal", &AlwaysPreemptReport::optimal);

  m.def("check_always_preempt", &check_always_preempt, py::arg("model"), py::arg("q"),
        py::call_guard<py::gil_scoped_release>());
}
