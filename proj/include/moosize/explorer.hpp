#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "moosize/moea.hpp"
#include "moosize/seeding.hpp"

namespace moosize {

enum class ExperimentMode { SingleSeed, MultiSeed };

struct ExperimentSpec {
  std::string bench_path;
  std::string library_path;          // empty: generate the default synthetic library
  ExperimentMode mode = ExperimentMode::SingleSeed;
  double clock_period = 4e-9;        // T_c [s]
  double t_r = 0.0;                  // single-seed; 0 = find the tightest met T_r
  OutputLoadScenario output_load;
  SweepConfig sweep;                 // multi-seed
  MoeaConfig moea;
  std::string output_dir;

  void check() const;  // throws Error(InvalidConfig) on mode-inconsistent fields
};

// One exported row: an evaluated individual plus bookkeeping.
struct ArchiveRow {
  std::string id;
  EvalResult eval;
  int rank = -1;
  double crowding = 0.0;
  int seed_id = -1;
  int birth_generation = 0;
  std::string chromosome_text;  // space-separated strength labels, gate order
};

struct SeedRow {
  std::string id;
  double t_r = 0.0;
  bool timing_met = false;
  EvalResult eval;
  std::string chromosome_text;
};

struct ResultArchive {
  std::string config_json;              // full provenance echo, pretty-printed
  std::vector<SeedRow> seeds;
  std::vector<std::string> frontier_ids;  // Syn-Frontier, ascending D_wc
  std::vector<GenerationStats> history;
  std::vector<ArchiveRow> final_population;
  std::vector<std::string> pareto_ids;    // rank-1 ids, final order
  std::string tradeoff_id;
  // Best-per-objective solutions that worsen nothing versus the seed
  // (single-seed mode); empty ids when no such solution exists.
  std::string best_delay_id, best_power_id, best_area_id;
  double frontier_hypervolume = 0.0;
  double final_hypervolume = 0.0;
  ObjectiveVector hypervolume_reference{};
  double surviving_seed_fraction = 0.0;
  // id -> assignment text for every rank-1 solution.
  std::vector<std::pair<std::string, std::string>> assignments;
};

// Exact hypervolume of a minimisation front against a reference point that
// every member dominates. Order-independent.
double hypervolume(const std::vector<ObjectiveVector>& front, const ObjectiveVector& reference);

ResultArchive run_single_seed(const ExperimentSpec& spec, const ProgressFn& progress = {});
ResultArchive run_multi_seed(const ExperimentSpec& spec, const ProgressFn& progress = {});
// Multi-seed run over an externally supplied seed set (for example a
// reloaded seed archive); spec.t_r picks the evaluation constraint,
// 0 meaning the tightest met seed's T_r.
ResultArchive run_with_seeds(const ExperimentSpec& spec, const std::vector<SeedSolution>& seeds,
                             const ProgressFn& progress = {});

// Directory layout: config.json, seeds.csv, frontier.csv, history.csv,
// final.csv, pareto.csv, tradeoff.txt, plot_delay_power.csv,
// plot_delay_area.csv, assignment/<id>.txt.
void export_archive(const ResultArchive& archive, const std::string& directory);
ResultArchive load_archive(const std::string& directory);
std::string archive_to_json(const ResultArchive& archive);

}  // namespace moosize
