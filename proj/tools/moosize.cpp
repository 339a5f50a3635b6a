// moosize -- multi-objective drive-strength remapping for gate-level circuits.

#include <filesystem>
#include <iostream>
#include <set>
#include <string>

#include <CLI11.hpp>

#include "moosize/explorer.hpp"
#include "moosize/text.hpp"

namespace fs = std::filesystem;
using namespace moosize;

namespace {

struct ProfileFlags {
  ScalingProfile profile;
  std::string strengths;

  void attach(CLI::App* cmd) {
    cmd->add_option("--r0", profile.base_resistance, "Base drive resistance at D1 [Ohm]")
        ->capture_default_str();
    cmd->add_option("--c0", profile.base_input_cap, "Base input pin capacitance at D1 [F]")
        ->capture_default_str();
    cmd->add_option("--a0", profile.base_area, "Base cell area at D1 [um^2]")
        ->capture_default_str();
    cmd->add_option("--l0", profile.base_leakage, "Base leakage power at D1 [W]")
        ->capture_default_str();
    cmd->add_option("--e0", profile.base_internal_energy, "Base internal energy per toggle [J]")
        ->capture_default_str();
    cmd->add_option("--d0", profile.base_intrinsic_delay, "Base intrinsic delay [s]")
        ->capture_default_str();
    cmd->add_option("--arity-factor", profile.arity_factor,
                    "Geometric cost factor per extra input [unitless]")
        ->capture_default_str();
    cmd->add_option("--voltage", profile.voltage, "Supply voltage [V]")->capture_default_str();
    cmd->add_option("--wire-cap", profile.wire_cap_per_fanout,
                    "Wire capacitance added per fanout pin [F]")
        ->capture_default_str();
    cmd->add_option("--name", profile.name, "Library name")->capture_default_str();
    cmd->add_option("--strengths", strengths,
                    "Comma-separated strength labels, ascending (default D0,D1,...,D24)");
  }

  ScalingProfile resolve() const {
    ScalingProfile p = profile;
    if (!strengths.empty()) {
      p.strength_labels.clear();
      for (const auto& label : split(strengths, ','))
        p.strength_labels.emplace_back(trim(label), strength_of_label(trim(label)));
    }
    return p;
  }
};

std::set<FunctionKey> functions_in_bench(const Netlist& netlist) {
  std::set<FunctionKey> required{{"NOT", 1}};  // load-reference inverter is always present
  for (const auto& gate : netlist.gates)
    required.insert({gate.function_id, static_cast<int>(gate.inputs.size())});
  return required;
}

CellLibrary library_for(const std::string& lib_path, const Netlist& netlist) {
  if (!lib_path.empty()) return load_library_file(lib_path);
  return generate_synthetic_library(ScalingProfile{}, functions_in_bench(netlist));
}

std::string bench_stem(const std::string& path) {
  return fs::path(path).stem().string();
}

void echo_config(const CLI::App& cmd) {
  std::cerr << "# resolved config [" << cmd.get_name() << "]\n";
  for (const auto* opt : cmd.get_options()) {
    if (opt->get_name() == "--help" || opt->get_name().empty()) continue;
    std::string value = opt->count() ? opt->results().front() : opt->get_default_str();
    if (value.empty()) value = "(unset)";
    std::cerr << "#   " << opt->get_name() << " = " << value << "\n";
  }
}

void print_progress(const GenerationStats& g) {
  std::cout << "gen " << g.generation << " min_D_wc " << format_double(g.min_delay)
            << " min_P_total " << format_double(g.min_power) << " min_A_gate "
            << format_double(g.min_area) << " front " << g.first_front_size << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"moosize: multi-objective (delay, power, area) drive-strength optimisation\n"
               "of .bench gate-level circuits with an NSGA-II loop and a first-order\n"
               "delay/power/area evaluator."};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "Config file; command-line flags override its values");

  int jobs = 0;
  app.add_option("--jobs", jobs, "Max concurrent evaluations (0 = hardware threads)")
      ->envname("MOOSIZE_JOBS")
      ->capture_default_str();

  // genlib -------------------------------------------------------------
  auto* genlib = app.add_subcommand("genlib", "Generate a synthetic cell library document");
  ProfileFlags genlib_profile;
  genlib_profile.attach(genlib);
  std::string genlib_bench, genlib_out;
  genlib->add_option("--functions-from", genlib_bench,
                     "Bench file scanned for required (function, arity) pairs")
      ->required();
  genlib->add_option("--out", genlib_out, "Output library document path")->required();

  // eval ---------------------------------------------------------------
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate one assignment of a bench circuit");
  std::string eval_bench, eval_lib, eval_assignment, eval_load = "NONE";
  double eval_tr = 0.0, eval_tc = 4e-9;
  eval_cmd->add_option("--bench", eval_bench, "Bench circuit path")->required();
  eval_cmd->add_option("--lib", eval_lib, "Library document path (default: synthetic library)");
  eval_cmd->add_option("--assignment", eval_assignment,
                       "Assignment file (default: all-minimum strengths)");
  eval_cmd->add_option("--tr", eval_tr, "Required time T_r [s] (default: T_c)");
  eval_cmd->add_option("--tc", eval_tc, "Clock period T_c [s]")->capture_default_str();
  eval_cmd->add_option("--load", eval_load, "Output load: NONE, D1, D8 or capacitance [F]")
      ->capture_default_str();

  // optimize -----------------------------------------------------------
  auto* opt_cmd = app.add_subcommand("optimize", "Single-seed optimisation run");
  std::string opt_bench, opt_lib, opt_load = "NONE", opt_out;
  double opt_tr = 0.0, opt_tc = 4e-9, opt_rho = 0.01;
  int opt_pop = 200, opt_gen = 200;
  std::uint64_t opt_seed = 1;
  opt_cmd->add_option("--bench", opt_bench, "Bench circuit path")->required();
  opt_cmd->add_option("--lib", opt_lib, "Library document path (default: synthetic library)");
  opt_cmd->add_option("--tr", opt_tr,
                      "Required time T_r [s]; omit to seed at the tightest met T_r");
  opt_cmd->add_option("--tc", opt_tc, "Clock period T_c [s]")->capture_default_str();
  opt_cmd->add_option("--load", opt_load, "Output load: NONE, D1, D8 or capacitance [F]")
      ->capture_default_str();
  opt_cmd->add_option("--pop", opt_pop, "Population size N (even)")->capture_default_str();
  opt_cmd->add_option("--gen", opt_gen, "Generations M")->capture_default_str();
  opt_cmd->add_option("--rho", opt_rho, "Per-gene mutation probability in (0, 1]")
      ->capture_default_str();
  opt_cmd->add_option("--seed-rng", opt_seed, "Root RNG seed [64-bit]")->capture_default_str();
  std::string opt_seeds;
  opt_cmd->add_option("--seeds", opt_seeds,
                      "Seed archive CSV; its solutions form the initial population");
  opt_cmd->add_option("--out", opt_out, "Output archive directory")->required();

  // sweep --------------------------------------------------------------
  auto* sweep_cmd = app.add_subcommand("sweep", "Timing-constraint sweep; optionally optimise");
  std::string sw_bench, sw_lib, sw_load = "NONE", sw_out;
  double sw_tr_max = 0.0, sw_tr_min = 0.0, sw_tc = 4e-9, sw_rho = 0.01;
  int sw_steps = 100, sw_pop = 500, sw_gen = 100;
  std::uint64_t sw_seed = 1;
  bool sw_optimize = false;
  sweep_cmd->add_option("--bench", sw_bench, "Bench circuit path")->required();
  sweep_cmd->add_option("--lib", sw_lib, "Library document path (default: synthetic library)");
  sweep_cmd->add_option("--tr-max", sw_tr_max, "Loosest required time [s]")->required();
  sweep_cmd->add_option("--tr-min", sw_tr_min, "Tightest required time [s]")->required();
  sweep_cmd->add_option("--steps", sw_steps, "Number of evenly spaced constraints")
      ->capture_default_str();
  sweep_cmd->add_option("--tc", sw_tc, "Clock period T_c [s]")->capture_default_str();
  sweep_cmd->add_option("--load", sw_load, "Output load: NONE, D1, D8 or capacitance [F]")
      ->capture_default_str();
  sweep_cmd->add_flag("--optimize", sw_optimize, "Continue into a multi-seed optimisation");
  sweep_cmd->add_option("--pop", sw_pop, "Population size N (even)")->capture_default_str();
  sweep_cmd->add_option("--gen", sw_gen, "Generations M")->capture_default_str();
  sweep_cmd->add_option("--rho", sw_rho, "Per-gene mutation probability in (0, 1]")
      ->capture_default_str();
  sweep_cmd->add_option("--seed-rng", sw_seed, "Root RNG seed [64-bit]")->capture_default_str();
  sweep_cmd->add_option("--out", sw_out, "Output archive directory")->required();

  // report -------------------------------------------------------------
  auto* report_cmd = app.add_subcommand("report", "Re-export a result archive as JSON");
  std::string rep_in, rep_out = "-";
  report_cmd->add_option("--in", rep_in, "Archive directory")->required();
  report_cmd->add_option("--out", rep_out, "Output JSON path, '-' for standard output")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*genlib) {
      echo_config(*genlib);
      Netlist netlist = parse_bench_file(genlib_bench);
      CellLibrary lib = generate_synthetic_library(genlib_profile.resolve(),
                                                   functions_in_bench(netlist));
      save_library_file(lib, genlib_out);
      std::cout << "wrote " << genlib_out << " (" << lib.functions.size() << " functions)\n";
    } else if (*eval_cmd) {
      echo_config(*eval_cmd);
      Netlist netlist = parse_bench_file(eval_bench);
      CellLibrary lib = library_for(eval_lib, netlist);
      MappedDesign design = map_to_library(netlist, lib);
      double load = OutputLoadScenario::parse(eval_load).resolve(lib);
      double t_r = eval_cmd->count("--tr") ? eval_tr : eval_tc;
      TimingScenario scenario = scenario_for_required_time(t_r, eval_tc, load);
      Chromosome c = extract_chromosome(design);
      if (!eval_assignment.empty()) c = parse_assignment(design, read_file(eval_assignment));
      EvalResult r = evaluate_full(design, c, scenario);
      std::cout << eval_csv_header() << "\n"
                << eval_csv_row(bench_stem(eval_bench), r) << "\n";
    } else if (*opt_cmd) {
      echo_config(*opt_cmd);
      ExperimentSpec spec;
      spec.bench_path = opt_bench;
      spec.library_path = opt_lib;
      spec.mode = ExperimentMode::SingleSeed;
      spec.clock_period = opt_tc;
      spec.t_r = opt_tr;
      spec.output_load = OutputLoadScenario::parse(opt_load);
      spec.moea.population_size = opt_pop;
      spec.moea.generations = opt_gen;
      spec.moea.mutation_rate = opt_rho;
      spec.moea.rng_seed = opt_seed;
      spec.moea.jobs = jobs;
      spec.output_dir = opt_out;
      ResultArchive archive;
      if (!opt_seeds.empty()) {
        Netlist netlist = parse_bench_file(opt_bench);
        CellLibrary lib = library_for(opt_lib, netlist);
        MappedDesign design = map_to_library(netlist, lib);
        double load = spec.output_load.resolve(lib);
        auto seeds = load_seed_archive(design, read_file(opt_seeds), opt_tc, load);
        spec.mode = ExperimentMode::MultiSeed;
        archive = run_with_seeds(spec, seeds, print_progress);
      } else {
        archive = run_single_seed(spec, print_progress);
      }
      export_archive(archive, opt_out);
      std::cout << "frontier_hypervolume " << format_double(archive.frontier_hypervolume) << "\n"
                << "final_hypervolume " << format_double(archive.final_hypervolume) << "\n"
                << "tradeoff " << archive.tradeoff_id << "\n"
                << "archive " << opt_out << "\n";
    } else if (*sweep_cmd) {
      echo_config(*sweep_cmd);
      ExperimentSpec spec;
      spec.bench_path = sw_bench;
      spec.library_path = sw_lib;
      spec.mode = ExperimentMode::MultiSeed;
      spec.clock_period = sw_tc;
      spec.output_load = OutputLoadScenario::parse(sw_load);
      spec.sweep.t_r_max = sw_tr_max;
      spec.sweep.t_r_min = sw_tr_min;
      spec.sweep.steps = sw_steps;
      spec.sweep.output_load = spec.output_load;
      spec.moea.population_size = sw_pop;
      spec.moea.generations = sw_gen;
      spec.moea.mutation_rate = sw_rho;
      spec.moea.rng_seed = sw_seed;
      spec.moea.jobs = jobs;
      spec.output_dir = sw_out;
      if (sw_optimize) {
        ResultArchive archive = run_multi_seed(spec, print_progress);
        export_archive(archive, sw_out);
        std::cout << "frontier_hypervolume " << format_double(archive.frontier_hypervolume)
                  << "\n"
                  << "final_hypervolume " << format_double(archive.final_hypervolume) << "\n"
                  << "surviving_seed_fraction "
                  << format_double(archive.surviving_seed_fraction) << "\n"
                  << "archive " << sw_out << "\n";
      } else {
        spec.moea.check();
        Netlist netlist = parse_bench_file(sw_bench);
        CellLibrary lib = library_for(sw_lib, netlist);
        MappedDesign design = map_to_library(netlist, lib);
        auto seeds = constraint_sweep(design, spec.sweep, sw_tc, jobs);
        auto frontier = syn_frontier(seeds);

        std::error_code ec;
        fs::create_directories(sw_out, ec);
        if (ec) throw Error(ErrorKind::Io, "cannot create " + sw_out + ": " + ec.message());
        std::string seeds_csv = seed_archive_csv(design, seeds);
        write_file((fs::path(sw_out) / "seeds.csv").string(), seeds_csv);
        // frontier rows keep their seeds.csv ids
        auto seed_lines = split(seeds_csv, '\n');
        std::string frontier_csv = seed_lines[0] + "\n";
        for (const auto& f : frontier)
          for (std::size_t i = 0; i < seeds.size(); ++i)
            if (seeds[i].chromosome == f.chromosome &&
                seeds[i].eval.objectives == f.eval.objectives) {
              frontier_csv += seed_lines[i + 1] + "\n";
              break;
            }
        write_file((fs::path(sw_out) / "frontier.csv").string(), frontier_csv);
        std::cout << "seeds " << seeds.size() << "\nfrontier " << frontier.size() << "\narchive "
                  << sw_out << "\n";
      }
    } else if (*report_cmd) {
      echo_config(*report_cmd);
      ResultArchive archive = load_archive(rep_in);
      std::string json = archive_to_json(archive);
      if (rep_out == "-")
        std::cout << json;
      else
        write_file(rep_out, json);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
