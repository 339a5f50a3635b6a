#pragma once

#include <string>
#include <vector>

#include "moosize/evaluate.hpp"
#include "moosize/netlist.hpp"

namespace moosize {

// Output-load choice for a sweep: none, the library's INV D1/D8 input pin
// capacitance, or an explicit value in farads.
struct OutputLoadScenario {
  enum class Kind { None, D1, D8, Explicit } kind = Kind::None;
  double explicit_cap = 0.0;

  static OutputLoadScenario parse(const std::string& text);  // "NONE"|"D1"|"D8"|<farads>
  std::string to_string() const;
  double resolve(const CellLibrary& lib) const;
};

struct SweepConfig {
  double t_r_max = 0.0;  // s
  double t_r_min = 0.0;  // s
  int steps = 0;         // >= 2
  OutputLoadScenario output_load;

  void check() const;  // throws Error(InvalidConfig)
};

struct SeedSolution {
  double t_r = 0.0;
  Chromosome chromosome;
  EvalResult eval;
  bool timing_met = false;
};

// Greedy timing-driven sizer: while WNS < 0, apply the single one-step
// upsize on the current critical path that maximises WNS gain per area,
// ties by smallest gate index. Stops at WNS >= 0 or at a fixed point.
SeedSolution greedy_timing_sizer(const Evaluator& eval, double t_r);

// Down-steps gates one at a time, largest power reduction first, keeping
// WNS >= 0 throughout. Requires the input to meet timing.
Chromosome power_recovery(const Evaluator& eval, const Chromosome& c, double t_r);

// The pre-layout timing view the seed generator optimises against: pin
// loads only, no wire parasitics.
CellLibrary synthesis_view_library(const CellLibrary& lib);

// One pass of the surrogate tool flow at a required time: size against the
// pre-layout view, chase full-evaluation closure by over-constraining the
// tool target, optionally recover power within the final tool budget.
// Reported objectives and the met flag come from the full evaluator.
SeedSolution tool_flow_seed(const MappedDesign& design, double t_r, double clock_period,
                            double output_load, bool recover_power);

// steps evenly spaced T_r values, descending from t_r_max to t_r_min; each
// runs the sizer then (when timing is met) power recovery, and records the
// evaluated solution. Failing solutions are kept and flagged.
std::vector<SeedSolution> constraint_sweep(const MappedDesign& design,
                                           const SweepConfig& sweep,
                                           double clock_period, int jobs = 0);

// Rank-1 subset under dominance, de-duplicated by objective triple,
// ascending D_wc.
std::vector<SeedSolution> syn_frontier(const std::vector<SeedSolution>& seeds);

// Seed archive CSV: id, T_r, timing flag, the evaluation columns and the
// chromosome as space-separated strength labels in gate order. Loading
// re-evaluates every row under its own T_r so the objectives always come
// from this build's evaluator.
std::string seed_archive_csv(const MappedDesign& design, const std::vector<SeedSolution>& seeds);
std::vector<SeedSolution> load_seed_archive(const MappedDesign& design, const std::string& csv,
                                            double clock_period, double output_load);

}  // namespace moosize
