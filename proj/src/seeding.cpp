#include "moosize/seeding.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "moosize/moea.hpp"
#include "moosize/parallel.hpp"
#include "moosize/text.hpp"

namespace moosize {

OutputLoadScenario OutputLoadScenario::parse(const std::string& text) {
  OutputLoadScenario s;
  std::string t = trim(text);
  std::string u = t;
  for (char& c : u) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (u.empty() || u == "NONE") {
    s.kind = Kind::None;
  } else if (u == "D1") {
    s.kind = Kind::D1;
  } else if (u == "D8") {
    s.kind = Kind::D8;
  } else {
    s.kind = Kind::Explicit;
    s.explicit_cap = parse_double(t);
    if (s.explicit_cap < 0.0)
      throw Error(ErrorKind::InvalidConstraint, "output load must be >= 0");
  }
  return s;
}

std::string OutputLoadScenario::to_string() const {
  switch (kind) {
    case Kind::None: return "NONE";
    case Kind::D1: return "D1";
    case Kind::D8: return "D8";
    case Kind::Explicit: return format_double(explicit_cap);
  }
  return "NONE";
}

double OutputLoadScenario::resolve(const CellLibrary& lib) const {
  if (kind == Kind::None) return 0.0;
  if (kind == Kind::Explicit) return explicit_cap;
  const char* label = kind == Kind::D1 ? "D1" : "D8";
  for (const auto& v : variants_of(lib, "NOT", 1))
    if (v.strength_label == label) return v.input_cap_per_pin;
  throw Error(ErrorKind::UnknownVariant, std::string("NOT/1 ") + label +
                                             " (needed as the output load reference)");
}

void SweepConfig::check() const {
  if (!(t_r_min > 0.0) || !(t_r_max > t_r_min))
    throw Error(ErrorKind::InvalidConfig, "need T_r_max > T_r_min > 0");
  if (steps < 2) throw Error(ErrorKind::InvalidConfig, "sweep needs at least 2 steps");
}

SeedSolution greedy_timing_sizer(const Evaluator& eval, double t_r) {
  const MappedDesign& design = eval.design();
  std::vector<int> assignment = design.assignment;
  std::vector<int> range;
  range.reserve(design.netlist.gates.size());
  for (const auto& gate : design.netlist.gates)
    range.push_back(static_cast<int>(
        variants_of(*design.library, gate.function_id, static_cast<int>(gate.inputs.size()))
            .size()));

  TimingReport report = eval.arrival_times(assignment);
  double wns = t_r - report.worst_arrival;
  bool timing_met = wns >= 0.0;

  while (wns < 0.0) {
    double best_score = 0.0;
    std::size_t best_gate = 0;
    double best_wns = wns;
    bool found = false;
    for (std::size_t g : report.critical_path) {
      if (assignment[g] + 1 >= range[g]) continue;
      const Gate& gate = design.netlist.gates[g];
      const auto& variants =
          variants_of(*design.library, gate.function_id, static_cast<int>(gate.inputs.size()));
      std::vector<int> trial = assignment;
      ++trial[g];
      double trial_wns = t_r - eval.arrival_times(trial).worst_arrival;
      if (trial_wns <= wns) continue;
      double area_cost = variants[static_cast<std::size_t>(trial[g])].area -
                         variants[static_cast<std::size_t>(assignment[g])].area;
      double score = (trial_wns - wns) / area_cost;
      if (!found || score > best_score) {  // ties keep the smallest gate index
        found = true;
        best_score = score;
        best_gate = g;
        best_wns = trial_wns;
      }
    }
    if (!found) break;  // fixed point: no single up-step improves WNS
    ++assignment[best_gate];
    wns = best_wns;
    report = eval.arrival_times(assignment);
    timing_met = wns >= 0.0;
  }

  SeedSolution seed;
  seed.t_r = t_r;
  seed.chromosome = Chromosome{assignment};
  seed.eval = eval.evaluate_assignment(assignment);
  seed.timing_met = timing_met;
  return seed;
}

Chromosome power_recovery(const Evaluator& eval, const Chromosome& c, double t_r) {
  std::vector<int> assignment = c.genes;
  double wns = t_r - eval.arrival_times(assignment).worst_arrival;
  if (wns < 0.0)
    throw Error(ErrorKind::TimingNotMet,
                "power recovery requires WNS >= 0, got " + format_double(wns));

  double power = eval.power(assignment).total;
  for (;;) {
    double best_reduction = 0.0;
    std::size_t best_gate = 0;
    bool found = false;
    for (std::size_t g = 0; g < assignment.size(); ++g) {
      if (assignment[g] == 0) continue;
      std::vector<int> trial = assignment;
      --trial[g];
      if (t_r - eval.arrival_times(trial).worst_arrival < 0.0) continue;
      double reduction = power - eval.power(trial).total;
      if (reduction <= 0.0) continue;
      if (!found || reduction > best_reduction) {  // ties keep the smallest gate index
        found = true;
        best_reduction = reduction;
        best_gate = g;
      }
    }
    if (!found) break;
    --assignment[best_gate];
    power = eval.power(assignment).total;
  }
  return Chromosome{assignment};
}

CellLibrary synthesis_view_library(const CellLibrary& lib) {
  // The seed generator works pre-layout: pin loads but no wire parasitics,
  // like a synthesis tool ahead of place-and-route.
  CellLibrary view = lib;
  view.wire_cap_per_fanout = 0.0;
  return view;
}

SeedSolution tool_flow_seed(const MappedDesign& design, double t_r, double clock_period,
                            double output_load, bool recover_power) {
  CellLibrary view_lib = synthesis_view_library(*design.library);
  MappedDesign view_design = design;
  view_design.library = &view_lib;
  TimingScenario scenario = scenario_for_required_time(t_r, clock_period, output_load);
  Evaluator tool_view(view_design, scenario);
  Evaluator signoff(design, scenario);

  SeedSolution seed;
  double tool_target = t_r;
  for (int iteration = 0; iteration < 8; ++iteration) {
    seed = greedy_timing_sizer(tool_view, tool_target);
    bool tool_met = seed.timing_met;  // against the view and the tool target
    if (recover_power && tool_met)
      seed.chromosome = power_recovery(tool_view, seed.chromosome, tool_target);

    EvalResult full = signoff.evaluate(seed.chromosome);
    seed.t_r = t_r;
    seed.eval = full;
    seed.timing_met = full.wns >= 0.0;
    if (seed.timing_met || !tool_met) break;

    // Signed off slower than the tool believed: margin the tool target by
    // the measured view-to-signoff gap and rerun, the way flows iterate to
    // close timing.
    double view_delay = tool_view.arrival_times(seed.chromosome.genes).worst_arrival;
    double gap = full.objectives.delay - view_delay;
    double margined = t_r - gap;
    if (margined >= tool_target) margined = tool_target + full.wns;  // force progress
    tool_target = margined;
    if (tool_target <= 0.0) tool_target = t_r * 1e-3;
  }
  return seed;
}

std::vector<SeedSolution> constraint_sweep(const MappedDesign& design, const SweepConfig& sweep,
                                           double clock_period, int jobs) {
  sweep.check();
  if (!(sweep.t_r_max <= clock_period))
    throw Error(ErrorKind::InvalidConstraint,
                "T_r_max exceeds the clock period " + format_double(clock_period));
  double load = sweep.output_load.resolve(*design.library);

  std::vector<SeedSolution> seeds(static_cast<std::size_t>(sweep.steps));
  double span = sweep.t_r_max - sweep.t_r_min;
  parallel_for(static_cast<std::size_t>(sweep.steps), jobs, [&](std::size_t i) {
    double t_r = sweep.t_r_max - span * static_cast<double>(i) / (sweep.steps - 1);
    seeds[i] = tool_flow_seed(design, t_r, clock_period, load, true);
  });
  return seeds;
}

std::string seed_archive_csv(const MappedDesign& design, const std::vector<SeedSolution>& seeds) {
  std::string csv =
      "id,T_r,timing_met,D_wc,WNS,switching,internal,leakage,P_total,A_gate,chromosome\n";
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    const SeedSolution& s = seeds[i];
    csv += "s" + std::to_string(i) + "," + format_double(s.t_r) + (s.timing_met ? ",1" : ",0");
    for (double v : {s.eval.objectives.delay, s.eval.wns, s.eval.power.switching,
                     s.eval.power.internal, s.eval.power.leakage, s.eval.power.total,
                     s.eval.objectives.area})
      csv += "," + format_double(v);
    csv += ",";
    for (std::size_t g = 0; g < s.chromosome.genes.size(); ++g) {
      const Gate& gate = design.netlist.gates[g];
      const auto& variants =
          variants_of(*design.library, gate.function_id, static_cast<int>(gate.inputs.size()));
      if (g) csv += ' ';
      csv += variants[static_cast<std::size_t>(s.chromosome.genes[g])].strength_label;
    }
    csv += "\n";
  }
  return csv;
}

std::vector<SeedSolution> load_seed_archive(const MappedDesign& design, const std::string& csv,
                                            double clock_period, double output_load) {
  std::vector<SeedSolution> seeds;
  auto lines = split(csv, '\n');
  for (std::size_t row = 1; row < lines.size(); ++row) {  // skip the header
    const std::string& line = lines[row];
    if (trim(line).empty()) continue;
    auto fields = split(line, ',');
    if (fields.size() < 11)
      throw Error(ErrorKind::Parse,
                  "seed archive row " + std::to_string(row + 1) + ": expected 11 columns");
    SeedSolution seed;
    seed.t_r = parse_double(fields[1]);

    auto labels = split(trim(fields[10]), ' ');
    if (labels.size() != design.netlist.gates.size())
      throw Error(ErrorKind::Parse, "seed archive row " + std::to_string(row + 1) + ": " +
                                        std::to_string(labels.size()) + " genes for " +
                                        std::to_string(design.netlist.gates.size()) + " gates");
    Chromosome c;
    c.genes.reserve(labels.size());
    for (std::size_t g = 0; g < labels.size(); ++g) {
      const Gate& gate = design.netlist.gates[g];
      const auto& variants =
          variants_of(*design.library, gate.function_id, static_cast<int>(gate.inputs.size()));
      int index = -1;
      for (std::size_t k = 0; k < variants.size(); ++k)
        if (variants[k].strength_label == labels[g]) index = static_cast<int>(k);
      if (index < 0)
        throw Error(ErrorKind::UnknownVariant,
                    gate.function_id + "/" + std::to_string(gate.inputs.size()) + " " + labels[g]);
      c.genes.push_back(index);
    }
    seed.chromosome = std::move(c);

    Evaluator eval(design, scenario_for_required_time(seed.t_r, clock_period, output_load));
    seed.eval = eval.evaluate(seed.chromosome);
    seed.timing_met = seed.eval.wns >= 0.0;
    seeds.push_back(std::move(seed));
  }
  if (seeds.empty()) throw Error(ErrorKind::Parse, "seed archive holds no rows");
  return seeds;
}

std::vector<SeedSolution> syn_frontier(const std::vector<SeedSolution>& seeds) {
  std::vector<ObjectiveVector> points;
  points.reserve(seeds.size());
  for (const auto& s : seeds) points.push_back(s.eval.objectives);
  auto fronts = fast_non_dominated_sort(points);
  if (fronts.empty()) return {};

  std::vector<SeedSolution> frontier;
  for (std::size_t idx : fronts.front()) {
    bool duplicate = false;
    for (const auto& kept : frontier)
      if (kept.eval.objectives == seeds[idx].eval.objectives) {
        duplicate = true;
        break;
      }
    if (!duplicate) frontier.push_back(seeds[idx]);
  }
  std::stable_sort(frontier.begin(), frontier.end(), [](const SeedSolution& a, const SeedSolution& b) {
    return a.eval.objectives.delay < b.eval.objectives.delay;
  });
  return frontier;
}

}  // namespace moosize
