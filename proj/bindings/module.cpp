#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "moosize/explorer.hpp"
#include "moosize/text.hpp"

namespace py = pybind11;
using namespace moosize;

namespace {

std::set<FunctionKey> to_function_keys(const std::vector<std::pair<std::string, int>>& pairs) {
  return {pairs.begin(), pairs.end()};
}

ObjectiveVector to_objectives(const std::tuple<double, double, double>& t) {
  return {std::get<0>(t), std::get<1>(t), std::get<2>(t)};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Multi-objective drive-strength remapping of gate-level circuits";
  m.attr("__version__") = "1.0.0";

  py::register_exception<Error>(m, "MoosizeError");

  // ---- library ---------------------------------------------------------
  py::class_<CellVariant>(m, "CellVariant")
      .def_readonly("function_id", &CellVariant::function_id)
      .def_readonly("arity", &CellVariant::arity)
      .def_readonly("strength_label", &CellVariant::strength_label)
      .def_readonly("strength", &CellVariant::strength)
      .def_readonly("input_cap_per_pin", &CellVariant::input_cap_per_pin)
      .def_readonly("drive_resistance", &CellVariant::drive_resistance)
      .def_readonly("intrinsic_delay", &CellVariant::intrinsic_delay)
      .def_readonly("area", &CellVariant::area)
      .def_readonly("leakage_power", &CellVariant::leakage_power)
      .def_readonly("internal_energy", &CellVariant::internal_energy)
      .def("__repr__", [](const CellVariant& v) {
        return "<CellVariant " + v.function_id + std::to_string(v.arity) + " " +
               v.strength_label + ">";
      });

  py::class_<ScalingProfile>(m, "ScalingProfile")
      .def(py::init<>())
      .def_readwrite("base_resistance", &ScalingProfile::base_resistance)
      .def_readwrite("base_input_cap", &ScalingProfile::base_input_cap)
      .def_readwrite("base_area", &ScalingProfile::base_area)
      .def_readwrite("base_leakage", &ScalingProfile::base_leakage)
      .def_readwrite("base_internal_energy", &ScalingProfile::base_internal_energy)
      .def_readwrite("base_intrinsic_delay", &ScalingProfile::base_intrinsic_delay)
      .def_readwrite("arity_factor", &ScalingProfile::arity_factor)
      .def_readwrite("voltage", &ScalingProfile::voltage)
      .def_readwrite("wire_cap_per_fanout", &ScalingProfile::wire_cap_per_fanout)
      .def_readwrite("name", &ScalingProfile::name)
      .def_readwrite("strength_labels", &ScalingProfile::strength_labels)
      .def_readwrite("multi_input_strength_labels",
                     &ScalingProfile::multi_input_strength_labels);

  py::class_<CellLibrary>(m, "CellLibrary")
      .def_readonly("name", &CellLibrary::name)
      .def_readonly("voltage", &CellLibrary::voltage)
      .def_readonly("wire_cap_per_fanout", &CellLibrary::wire_cap_per_fanout)
      .def("has", &CellLibrary::has)
      .def("functions", [](const CellLibrary& lib) {
        std::vector<std::pair<std::string, int>> keys;
        for (const auto& [key, fn] : lib.functions) keys.push_back(key);
        return keys;
      });

  m.def("generate_synthetic_library",
        [](const ScalingProfile& profile, const std::vector<std::pair<std::string, int>>& req) {
          return generate_synthetic_library(profile, to_function_keys(req));
        },
        py::arg("profile"), py::arg("required"));
  m.def("load_library", &load_library, py::arg("document"));
  m.def("load_library_file", &load_library_file, py::arg("path"));
  m.def("serialize_library", &serialize_library, py::arg("library"));
  m.def("save_library_file", &save_library_file, py::arg("library"), py::arg("path"));
  m.def("variants_of", &variants_of, py::arg("library"), py::arg("function_id"), py::arg("arity"),
        py::return_value_policy::reference_internal);
  m.def("restrict_library",
        [](const CellLibrary& lib,
           const std::map<std::pair<std::string, int>, std::set<std::string>>& allow) {
          std::map<FunctionKey, std::set<std::string>> converted(allow.begin(), allow.end());
          return restrict_library(lib, converted);
        },
        py::arg("library"), py::arg("allow"));

  // ---- netlist ----------------------------------------------------------
  py::class_<Gate>(m, "Gate")
      .def_readonly("instance_name", &Gate::instance_name)
      .def_readonly("function_id", &Gate::function_id)
      .def_readonly("inputs", &Gate::inputs)
      .def_readonly("output", &Gate::output)
      .def_readonly("line", &Gate::line);

  py::class_<Netlist>(m, "Netlist")
      .def_readonly("name", &Netlist::name)
      .def_readonly("primary_inputs", &Netlist::primary_inputs)
      .def_readonly("primary_outputs", &Netlist::primary_outputs)
      .def_readonly("gates", &Netlist::gates)
      .def("__len__", [](const Netlist& nl) { return nl.gates.size(); });

  py::class_<Diagnostic>(m, "Diagnostic")
      .def_readonly("kind", &Diagnostic::kind)
      .def_readonly("message", &Diagnostic::message)
      .def_readonly("line", &Diagnostic::line);

  m.def("parse_bench", &parse_bench, py::arg("document"), py::arg("name") = "");
  m.def("parse_bench_file", &parse_bench_file, py::arg("path"));
  m.def("validate", &validate, py::arg("netlist"));
  m.def("topological_order", &topological_order, py::arg("netlist"));

  py::class_<Chromosome>(m, "Chromosome")
      .def(py::init([](const std::vector<int>& genes) { return Chromosome{genes}; }))
      .def_readwrite("genes", &Chromosome::genes)
      .def("__eq__", [](const Chromosome& a, const Chromosome& b) { return a == b; })
      .def("__len__", [](const Chromosome& c) { return c.genes.size(); });

  py::class_<MappedDesign>(m, "MappedDesign")
      .def_readonly("netlist", &MappedDesign::netlist)
      .def_readonly("assignment", &MappedDesign::assignment)
      .def_readonly("topo_order", &MappedDesign::topo_order);

  m.def("map_to_library", &map_to_library, py::arg("netlist"), py::arg("library"),
        py::keep_alive<0, 2>());
  m.def("extract_chromosome", &extract_chromosome, py::arg("design"));
  m.def("apply_chromosome", &apply_chromosome, py::arg("design"), py::arg("chromosome"),
        py::keep_alive<0, 1>());
  m.def("export_assignment", &export_assignment, py::arg("design"));
  m.def("parse_assignment", &parse_assignment, py::arg("design"), py::arg("text"));

  // ---- evaluation --------------------------------------------------------
  py::class_<TimingScenario>(m, "TimingScenario")
      .def(py::init<>())
      .def_readwrite("clock_period", &TimingScenario::clock_period)
      .def_readwrite("output_delay", &TimingScenario::output_delay)
      .def_readwrite("output_load", &TimingScenario::output_load)
      .def_property_readonly("required_time", &TimingScenario::required_time)
      .def_property_readonly("frequency", &TimingScenario::frequency);

  m.def("required_time", &required_time, py::arg("clock_period"), py::arg("output_delay"));
  m.def("scenario_for_required_time", &scenario_for_required_time, py::arg("t_r"),
        py::arg("clock_period") = 4e-9, py::arg("output_load") = 0.0);

  py::class_<ObjectiveVector>(m, "ObjectiveVector")
      .def(py::init([](double d, double p, double a) { return ObjectiveVector{d, p, a}; }))
      .def_readwrite("delay", &ObjectiveVector::delay)
      .def_readwrite("power", &ObjectiveVector::power)
      .def_readwrite("area", &ObjectiveVector::area)
      .def("__eq__", [](const ObjectiveVector& a, const ObjectiveVector& b) { return a == b; })
      .def("as_tuple",
           [](const ObjectiveVector& o) { return std::make_tuple(o.delay, o.power, o.area); })
      .def("__repr__", [](const ObjectiveVector& o) {
        return "<ObjectiveVector D=" + format_double(o.delay) + " P=" + format_double(o.power) +
               " A=" + format_double(o.area) + ">";
      });

  py::class_<PowerReport>(m, "PowerReport")
      .def_readonly("switching", &PowerReport::switching)
      .def_readonly("internal", &PowerReport::internal)
      .def_readonly("leakage", &PowerReport::leakage)
      .def_readonly("total", &PowerReport::total);

  py::class_<TimingReport>(m, "TimingReport")
      .def_readonly("worst_arrival", &TimingReport::worst_arrival)
      .def_readonly("wns", &TimingReport::wns)
      .def_readonly("critical_path", &TimingReport::critical_path);

  py::class_<EvalResult>(m, "EvalResult")
      .def_readonly("objectives", &EvalResult::objectives)
      .def_readonly("wns", &EvalResult::wns)
      .def_readonly("timing_met", &EvalResult::timing_met)
      .def_readonly("power", &EvalResult::power);

  py::class_<Evaluator>(m, "Evaluator")
      .def(py::init<const MappedDesign&, const TimingScenario&>(), py::arg("design"),
           py::arg("scenario"), py::keep_alive<1, 2>())
      .def("evaluate",
           [](const Evaluator& e, const Chromosome& c) { return e.evaluate(c); })
      .def("evaluate_assignment", &Evaluator::evaluate_assignment)
      .def("arrival_times", &Evaluator::arrival_times);

  m.def("evaluate_full", &evaluate_full, py::arg("design"), py::arg("chromosome"),
        py::arg("scenario"));
  m.def("evaluate",
        [](const MappedDesign& d, const Chromosome& c, const TimingScenario& s) {
          return evaluate(d, c, s);
        },
        py::arg("design"), py::arg("chromosome"), py::arg("scenario"));
  m.def("compute_arrival_times", &compute_arrival_times, py::arg("design"), py::arg("scenario"));
  m.def("total_power", &total_power, py::arg("design"), py::arg("scenario"));
  m.def("total_area", &total_area, py::arg("design"));
  m.def("propagate_probabilities", &propagate_probabilities, py::arg("design"));

  // ---- search ------------------------------------------------------------
  py::class_<MoeaConfig>(m, "MoeaConfig")
      .def(py::init<>())
      .def_readwrite("population_size", &MoeaConfig::population_size)
      .def_readwrite("generations", &MoeaConfig::generations)
      .def_readwrite("mutation_rate", &MoeaConfig::mutation_rate)
      .def_readwrite("rng_seed", &MoeaConfig::rng_seed)
      .def_readwrite("jobs", &MoeaConfig::jobs);

  py::class_<GenerationStats>(m, "GenerationStats")
      .def_readonly("generation", &GenerationStats::generation)
      .def_readonly("min_delay", &GenerationStats::min_delay)
      .def_readonly("min_power", &GenerationStats::min_power)
      .def_readonly("min_area", &GenerationStats::min_area)
      .def_readonly("first_front_size", &GenerationStats::first_front_size)
      .def_readonly("hypervolume", &GenerationStats::hypervolume);

  py::class_<Provenance>(m, "Provenance")
      .def_readonly("seed_id", &Provenance::seed_id)
      .def_readonly("birth_generation", &Provenance::birth_generation);

  py::class_<Individual>(m, "Individual")
      .def_readonly("chromosome", &Individual::chromosome)
      .def_property_readonly("objectives",
                             [](const Individual& i) { return i.eval.objectives; })
      .def_readonly("rank", &Individual::rank)
      .def_readonly("crowding", &Individual::crowding)
      .def_readonly("provenance", &Individual::provenance)
      .def_property_readonly("timing_met", [](const Individual& i) { return i.eval.timing_met; });

  py::class_<EvolveResult>(m, "EvolveResult")
      .def_readonly("population", &EvolveResult::population)
      .def_readonly("history", &EvolveResult::history);

  m.def("dominates", &dominates, py::arg("a"), py::arg("b"));
  m.def("fast_non_dominated_sort",
        [](const std::vector<std::tuple<double, double, double>>& points) {
          std::vector<ObjectiveVector> converted;
          converted.reserve(points.size());
          for (const auto& p : points) converted.push_back(to_objectives(p));
          return fast_non_dominated_sort(converted);
        },
        py::arg("points"));
  m.def("crowding_distance",
        [](const std::vector<std::tuple<double, double, double>>& front) {
          std::vector<ObjectiveVector> converted;
          converted.reserve(front.size());
          for (const auto& p : front) converted.push_back(to_objectives(p));
          return crowding_distance(converted);
        },
        py::arg("front"));
  m.def("evolve",
        [](const MappedDesign& design, const TimingScenario& scenario, const MoeaConfig& config,
           const std::vector<Chromosome>& seeds) {
          return evolve(design, scenario, config, seeds);
        },
        py::arg("design"), py::arg("scenario"), py::arg("config"), py::arg("seeds"),
        py::call_guard<py::gil_scoped_release>());

  // ---- seeding -----------------------------------------------------------
  py::class_<SweepConfig>(m, "SweepConfig")
      .def(py::init<>())
      .def_readwrite("t_r_max", &SweepConfig::t_r_max)
      .def_readwrite("t_r_min", &SweepConfig::t_r_min)
      .def_readwrite("steps", &SweepConfig::steps)
      .def_property(
          "output_load",
          [](const SweepConfig& s) { return s.output_load.to_string(); },
          [](SweepConfig& s, const std::string& text) {
            s.output_load = OutputLoadScenario::parse(text);
          });

  py::class_<SeedSolution>(m, "SeedSolution")
      .def_readonly("t_r", &SeedSolution::t_r)
      .def_readonly("chromosome", &SeedSolution::chromosome)
      .def_property_readonly("objectives",
                             [](const SeedSolution& s) { return s.eval.objectives; })
      .def_readonly("timing_met", &SeedSolution::timing_met);

  m.def("greedy_timing_sizer", &greedy_timing_sizer, py::arg("evaluator"), py::arg("t_r"));
  m.def("power_recovery", &power_recovery, py::arg("evaluator"), py::arg("chromosome"),
        py::arg("t_r"));
  m.def("tool_flow_seed", &tool_flow_seed, py::arg("design"), py::arg("t_r"),
        py::arg("clock_period") = 4e-9, py::arg("output_load") = 0.0,
        py::arg("recover_power") = true);
  m.def("constraint_sweep", &constraint_sweep, py::arg("design"), py::arg("sweep"),
        py::arg("clock_period") = 4e-9, py::arg("jobs") = 0,
        py::call_guard<py::gil_scoped_release>());
  m.def("syn_frontier", &syn_frontier, py::arg("seeds"));

  // ---- explorer ----------------------------------------------------------
  py::enum_<ExperimentMode>(m, "ExperimentMode")
      .value("SINGLE_SEED", ExperimentMode::SingleSeed)
      .value("MULTI_SEED", ExperimentMode::MultiSeed);

  py::class_<ExperimentSpec>(m, "ExperimentSpec")
      .def(py::init<>())
      .def_readwrite("bench_path", &ExperimentSpec::bench_path)
      .def_readwrite("library_path", &ExperimentSpec::library_path)
      .def_readwrite("mode", &ExperimentSpec::mode)
      .def_readwrite("clock_period", &ExperimentSpec::clock_period)
      .def_readwrite("t_r", &ExperimentSpec::t_r)
      .def_property(
          "output_load",
          [](const ExperimentSpec& s) { return s.output_load.to_string(); },
          [](ExperimentSpec& s, const std::string& text) {
            s.output_load = OutputLoadScenario::parse(text);
          })
      .def_readwrite("sweep", &ExperimentSpec::sweep)
      .def_readwrite("moea", &ExperimentSpec::moea)
      .def_readwrite("output_dir", &ExperimentSpec::output_dir);

  py::class_<ResultArchive>(m, "ResultArchive")
      .def_readonly("config_json", &ResultArchive::config_json)
      .def_readonly("frontier_hypervolume", &ResultArchive::frontier_hypervolume)
      .def_readonly("final_hypervolume", &ResultArchive::final_hypervolume)
      .def_readonly("surviving_seed_fraction", &ResultArchive::surviving_seed_fraction)
      .def_readonly("tradeoff_id", &ResultArchive::tradeoff_id)
      .def_readonly("best_delay_id", &ResultArchive::best_delay_id)
      .def_readonly("best_power_id", &ResultArchive::best_power_id)
      .def_readonly("best_area_id", &ResultArchive::best_area_id)
      .def_readonly("pareto_ids", &ResultArchive::pareto_ids)
      .def_property_readonly("seed_count",
                             [](const ResultArchive& a) { return a.seeds.size(); })
      .def_property_readonly("final_count",
                             [](const ResultArchive& a) { return a.final_population.size(); });

  m.def("hypervolume",
        [](const std::vector<std::tuple<double, double, double>>& front,
           const std::tuple<double, double, double>& ref) {
          std::vector<ObjectiveVector> converted;
          converted.reserve(front.size());
          for (const auto& p : front) converted.push_back(to_objectives(p));
          return hypervolume(converted, to_objectives(ref));
        },
        py::arg("front"), py::arg("reference"));
  m.def("run_single_seed", [](const ExperimentSpec& s) { return run_single_seed(s); },
        py::arg("spec"), py::call_guard<py::gil_scoped_release>());
  m.def("run_multi_seed", [](const ExperimentSpec& s) { return run_multi_seed(s); },
        py::arg("spec"), py::call_guard<py::gil_scoped_release>());
  m.def("export_archive", &export_archive, py::arg("archive"), py::arg("directory"));
  m.def("load_archive", &load_archive, py::arg("directory"));
  m.def("archive_to_json", &archive_to_json, py::arg("archive"));
}
