#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "speedsched/harness.hpp"
#include "speedsched/io.hpp"

namespace py = pybind11;
using namespace speedsched;

namespace {

using Vec = std::vector<double>;
using Bags = std::vector<Bag>;

Instance make_instance(Vec jobs, Vec true_speeds, Vec predicted_speeds) {
  Instance inst{std::move(jobs), std::move(true_speeds), std::move(predicted_speeds)};
  inst.validate();
  return inst;
}

py::dict solve_dict(const SolveResult& r) {
  py::dict d;
  d["bag_to_machine"] = r.schedule.bag_to_machine;
  d["makespan"] = r.makespan;
  d["optimal"] = r.optimal;
  d["nodes_explored"] = r.nodes_explored;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Two-stage makespan scheduling with speed predictions";

  py::register_exception<BudgetError>(m, "BudgetError", PyExc_RuntimeError);
  py::register_exception<InvariantError>(m, "InvariantError", PyExc_AssertionError);

  py::class_<Instance>(m, "Instance")
      .def(py::init(&make_instance), py::arg("jobs"), py::arg("true_speeds"),
           py::arg("predicted_speeds"))
      .def_readonly("jobs", &Instance::jobs)
      .def_readonly("true_speeds", &Instance::true_speeds)
      .def_readonly("predicted_speeds", &Instance::predicted_speeds)
      .def_readonly("name", &Instance::name)
      .def_readonly("seed", &Instance::seed)
      .def_property_readonly("n", &Instance::n)
      .def_property_readonly("m", &Instance::m)
      .def("to_json", [](const Instance& i) { return to_json(i).dump(); })
      .def_static("from_json",
                  [](const std::string& text) { return instance_from_json(nlohmann::json::parse(text)); })
      .def("__repr__", [](const Instance& i) {
        return "<Instance n=" + std::to_string(i.n()) + " m=" + std::to_string(i.m()) + ">";
      });

  m.def("generate", [](std::size_t n, std::size_t machines, double err_sigma, std::uint64_t seed,
                       const std::string& job_dist, const std::string& speed_dist) {
          SyntheticConfig cfg;
          cfg.n = n;
          cfg.m = machines;
          cfg.err_sigma = err_sigma;
          cfg.seed = seed;
          cfg.job_dist = Distribution::parse(job_dist);
          cfg.speed_dist = Distribution::parse(speed_dist);
          return gen_synthetic(cfg);
        },
        py::arg("n") = 12, py::arg("m") = 4, py::arg("err_sigma") = 4.0, py::arg("seed") = 0,
        py::arg("job_dist") = "normal:50:5", py::arg("speed_dist") = "normal:20:4");
  m.def("prop1_instance", &gen_prop1_instance, py::arg("n"), py::arg("m"));
  m.def("tradeoff_instance", &gen_tradeoff_instance, py::arg("m"));

  m.def("bag_loads", [](const Bags& bags, const Vec& jobs) { return bag_loads(Partition{bags}, jobs); });
  m.def("beta_ratio", [](const Bags& bags, const Vec& jobs) { return beta_ratio(Partition{bags}, jobs); });
  m.def("prediction_error", [](const Vec& pred, const Vec& truth) { return prediction_error(pred, truth); });

  m.def("lpt_partition", [](const Vec& jobs, std::size_t k) { return lpt_partition(jobs, k).bags; },
        py::arg("jobs"), py::arg("k"));
  m.def("consistent_partition",
        [](const Vec& jobs, const Vec& predicted, const std::string& solver) {
          auto c = consistent_partition(jobs, predicted, parse_solver(solver));
          return py::make_tuple(c.partition.bags, c.opt_c_bar);
        },
        py::arg("jobs"), py::arg("predicted_speeds"), py::arg("solver") = "exact");
  m.def("ipr",
        [](const Vec& jobs, const Vec& predicted, double alpha, double rho, const std::string& solver) {
          IprConfig cfg{alpha, rho, parse_solver(solver)};
          cfg.validate();
          auto r = ipr(jobs, predicted, cfg);
          py::dict d;
          d["bags"] = r.partition.bags;
          d["tentative"] = r.tentative.bag_to_machine;
          d["iterations"] = r.state.iterations;
          d["opt_c_bar"] = r.state.opt_c_bar;
          return d;
        },
        py::arg("jobs"), py::arg("predicted_speeds"), py::arg("alpha") = 0.5, py::arg("rho") = 4.0,
        py::arg("solver") = "exact");
  m.def("fluid_ipr",
        [](double total, const Vec& predicted, double alpha, double rho) {
          return fluid_ipr(total, predicted, alpha, rho).loads;
        },
        py::arg("total_load"), py::arg("predicted_speeds"), py::arg("alpha") = 0.5,
        py::arg("rho") = 2.0);
  m.def("binary_speed_partition",
        [](const Vec& jobs, std::size_t machines, std::size_t m_hat) {
          return binary_speed_partition(jobs, machines, m_hat, SolverKind::Exact).partition.bags;
        },
        py::arg("jobs"), py::arg("m"), py::arg("m_hat"));

  m.def("lpt_schedule", [](const Vec& loads, const Vec& speeds) { return solve_dict(lpt_schedule(loads, speeds)); });
  m.def("exact_schedule",
        [](const Vec& loads, const Vec& speeds, std::uint64_t budget) {
          SolveResult r;
          {
            py::gil_scoped_release release;
            r = exact_schedule(loads, speeds, budget);
          }
          return solve_dict(r);
        },
        py::arg("loads"), py::arg("speeds"), py::arg("node_budget") = kDefaultNodeBudget);
  m.def("capacity_schedule", [](const Bags& bags, const Vec& jobs, const Vec& speeds) {
    return solve_dict(capacity_robust_schedule(Partition{bags}, jobs, speeds));
  });
  m.def("merge_to_fit", &merge_to_fit, py::arg("loads"), py::arg("available"));
  m.def("opt_lower_bound", [](const Vec& jobs, const Vec& speeds) { return opt_lower_bound(jobs, speeds); });

  m.def("evaluate",
        [](const Instance& inst, const std::string& algorithm, double alpha, double rho,
           const std::string& scheduler, const std::string& oracle) {
          auto spec = AlgorithmSpec::parse(algorithm, IprConfig{alpha, rho});
          return evaluate(inst, spec, parse_solver(scheduler), parse_oracle(oracle)).ratio;
        },
        py::arg("instance"), py::arg("algorithm") = "ipr", py::arg("alpha") = 0.5,
        py::arg("rho") = 4.0, py::arg("scheduler") = "exact", py::arg("oracle") = "exact");

  m.def("run_experiment",
        [](const std::string& config_json) {
          auto cfg = ExperimentConfig::from_json(nlohmann::json::parse(config_json));
          py::gil_scoped_release release;
          return rows_to_csv(run_experiment(cfg));
        },
        py::arg("config_json") = "{}");
  m.def("verify",
        [](std::uint64_t seed, std::size_t trials) {
          auto report = verify_properties(seed, trials);
          return py::make_tuple(report.all_passed(), report.to_text());
        },
        py::arg("seed") = 7, py::arg("trials") = 100);
  m.def("theory_csv", [](const Vec& alphas) { return theory_csv(theory_curves(alphas)); });
}
