#include "moosize/explorer.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "moosize/text.hpp"

namespace fs = std::filesystem;

namespace moosize {

void ExperimentSpec::check() const {
  if (bench_path.empty()) throw Error(ErrorKind::InvalidConfig, "bench path is required");
  if (output_dir.empty()) throw Error(ErrorKind::InvalidConfig, "output directory is required");
  moea.check();
  if (!(clock_period > 0.0)) throw Error(ErrorKind::InvalidConfig, "clock period must be > 0");
  if (mode == ExperimentMode::MultiSeed) {
    sweep.check();
  } else if (t_r < 0.0 || t_r > clock_period) {
    throw Error(ErrorKind::InvalidConfig, "single-seed T_r must be in (0, T_c] or 0 for auto");
  }
}

namespace {

// 2D union area of boxes [p.x, ref.x] x [p.y, ref.y], minimisation.
double staircase_area(std::vector<std::pair<double, double>> pts, double ref_x, double ref_y) {
  if (pts.empty()) return 0.0;
  std::sort(pts.begin(), pts.end());
  double area = 0.0;
  double min_y = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    min_y = std::min(min_y, pts[i].second);
    double next_x = i + 1 < pts.size() ? pts[i + 1].first : ref_x;
    if (next_x > pts[i].first) area += (next_x - pts[i].first) * (ref_y - min_y);
  }
  return area;
}

}  // namespace

double hypervolume(const std::vector<ObjectiveVector>& front, const ObjectiveVector& reference) {
  for (std::size_t i = 0; i < front.size(); ++i)
    if (!dominates(front[i], reference))
      throw Error(ErrorKind::InvalidReference,
                  "front member " + std::to_string(i) + " does not dominate the reference point");
  if (front.empty()) return 0.0;

  // Slice along the area axis; each slab contributes the 2D delay/power
  // staircase area of the points at or below it.
  std::vector<double> levels;
  levels.reserve(front.size());
  for (const auto& p : front) levels.push_back(p.area);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  double volume = 0.0;
  for (std::size_t k = 0; k < levels.size(); ++k) {
    double z = levels[k];
    double z_next = k + 1 < levels.size() ? levels[k + 1] : reference.area;
    std::vector<std::pair<double, double>> active;
    for (const auto& p : front)
      if (p.area <= z) active.emplace_back(p.delay, p.power);
    volume += staircase_area(std::move(active), reference.delay, reference.power) * (z_next - z);
  }
  return volume;
}

namespace {

struct ExperimentContext {
  CellLibrary library;
  Netlist netlist;
  MappedDesign design;
  double output_load = 0.0;
};

ExperimentContext build_context(const ExperimentSpec& spec) {
  ExperimentContext ctx;
  ctx.netlist = parse_bench_file(spec.bench_path);
  if (!spec.library_path.empty()) {
    ctx.library = load_library_file(spec.library_path);
  } else {
    std::set<FunctionKey> required{{"NOT", 1}};  // keep the load-reference inverter
    for (const auto& gate : ctx.netlist.gates)
      required.insert({gate.function_id, static_cast<int>(gate.inputs.size())});
    ctx.library = generate_synthetic_library(ScalingProfile{}, required);
  }
  ctx.design = map_to_library(ctx.netlist, ctx.library);
  ctx.output_load = spec.output_load.resolve(ctx.library);
  return ctx;
}

std::string chromosome_labels(const MappedDesign& design, const Chromosome& c) {
  std::string out;
  for (std::size_t g = 0; g < c.genes.size(); ++g) {
    const Gate& gate = design.netlist.gates[g];
    const auto& variants =
        variants_of(*design.library, gate.function_id, static_cast<int>(gate.inputs.size()));
    if (g) out += ' ';
    out += variants[static_cast<std::size_t>(c.genes[g])].strength_label;
  }
  return out;
}

std::string spec_to_json(const ExperimentSpec& spec, double resolved_t_r, double output_load) {
  nlohmann::json doc;
  doc["bench"] = spec.bench_path;
  doc["library"] = spec.library_path.empty() ? "synthetic-default" : spec.library_path;
  doc["mode"] = spec.mode == ExperimentMode::SingleSeed ? "SINGLE_SEED" : "MULTI_SEED";
  doc["clock_period"] = format_double(spec.clock_period);
  doc["required_time"] = format_double(resolved_t_r);
  doc["output_load_scenario"] = spec.output_load.to_string();
  doc["output_load"] = format_double(output_load);
  if (spec.mode == ExperimentMode::MultiSeed && spec.sweep.steps >= 2) {
    doc["sweep"]["t_r_max"] = format_double(spec.sweep.t_r_max);
    doc["sweep"]["t_r_min"] = format_double(spec.sweep.t_r_min);
    doc["sweep"]["steps"] = spec.sweep.steps;
  }
  doc["moea"]["population_size"] = spec.moea.population_size;
  doc["moea"]["generations"] = spec.moea.generations;
  doc["moea"]["mutation_rate"] = format_double(spec.moea.mutation_rate);
  doc["moea"]["rng_seed"] = spec.moea.rng_seed;
  doc["moea"]["jobs"] = spec.moea.jobs;
  doc["output_dir"] = spec.output_dir;
  return doc.dump(2) + "\n";
}

ObjectiveVector componentwise_max(const ObjectiveVector& a, const ObjectiveVector& b) {
  return {std::max(a.delay, b.delay), std::max(a.power, b.power), std::max(a.area, b.area)};
}

// Shared assembly once seeds and the evolved population are known.
ResultArchive assemble(const ExperimentContext& ctx, const std::vector<SeedSolution>& seeds,
                       const std::vector<SeedSolution>& frontier, const EvolveResult& evolved,
                       const ObjectiveVector& normalization, const ObjectiveVector* single_seed) {
  ResultArchive archive;

  for (std::size_t i = 0; i < seeds.size(); ++i) {
    SeedRow row;
    row.id = "s" + std::to_string(i);
    row.t_r = seeds[i].t_r;
    row.timing_met = seeds[i].timing_met;
    row.eval = seeds[i].eval;
    row.chromosome_text = chromosome_labels(ctx.design, seeds[i].chromosome);
    archive.seeds.push_back(std::move(row));
  }
  for (const auto& f : frontier)
    for (std::size_t i = 0; i < seeds.size(); ++i)
      if (seeds[i].eval.objectives == f.eval.objectives &&
          seeds[i].chromosome == f.chromosome) {
        archive.frontier_ids.push_back("s" + std::to_string(i));
        break;
      }

  archive.history = evolved.history;

  std::vector<ObjectiveVector> pareto_points;
  std::vector<std::size_t> pareto_members;
  for (std::size_t i = 0; i < evolved.population.size(); ++i) {
    const Individual& ind = evolved.population[i];
    ArchiveRow row;
    row.id = "f" + std::to_string(i);
    row.eval = ind.eval;
    row.rank = ind.rank;
    row.crowding = ind.crowding;
    row.seed_id = ind.provenance.seed_id;
    row.birth_generation = ind.provenance.birth_generation;
    row.chromosome_text = chromosome_labels(ctx.design, ind.chromosome);
    archive.final_population.push_back(std::move(row));
    if (ind.rank == 0) {
      archive.pareto_ids.push_back("f" + std::to_string(i));
      pareto_points.push_back(ind.objectives());
      pareto_members.push_back(i);

      MappedDesign assigned = apply_chromosome(ctx.design, ind.chromosome);
      archive.assignments.emplace_back("f" + std::to_string(i), export_assignment(assigned));
    }
  }

  std::size_t tradeoff = trade_off_solution(pareto_points, normalization);
  archive.tradeoff_id = archive.pareto_ids[tradeoff];

  // Best improvement per objective that worsens nothing versus the seed.
  if (single_seed) {
    const ObjectiveVector& seed = *single_seed;
    for (std::size_t k = 0; k < 3; ++k) {
      int best = -1;
      for (std::size_t i = 0; i < evolved.population.size(); ++i) {
        const ObjectiveVector& obj = evolved.population[i].objectives();
        if (obj.delay > seed.delay || obj.power > seed.power || obj.area > seed.area) continue;
        if (!(obj[k] < seed[k])) continue;
        if (best < 0 || obj[k] < evolved.population[static_cast<std::size_t>(best)].objectives()[k])
          best = static_cast<int>(i);
      }
      std::string id = best < 0 ? "" : "f" + std::to_string(best);
      if (k == 0) archive.best_delay_id = id;
      if (k == 1) archive.best_power_id = id;
      if (k == 2) archive.best_area_id = id;
    }
  }

  // Reference point: 1.1x the componentwise maximum over seeds and final
  // population, so both fronts dominate it and the two volumes compare.
  ObjectiveVector ref{};
  for (const auto& s : seeds) ref = componentwise_max(ref, s.eval.objectives);
  for (const auto& ind : evolved.population) ref = componentwise_max(ref, ind.objectives());
  ref.delay *= 1.1;
  ref.power *= 1.1;
  ref.area *= 1.1;
  archive.hypervolume_reference = ref;

  std::vector<ObjectiveVector> frontier_points;
  for (const auto& f : frontier) frontier_points.push_back(f.eval.objectives);
  archive.frontier_hypervolume = hypervolume(frontier_points, ref);
  archive.final_hypervolume = hypervolume(pareto_points, ref);

  std::set<int> roots;
  for (const auto& ind : evolved.population) roots.insert(ind.provenance.seed_id);
  archive.surviving_seed_fraction =
      seeds.empty() ? 0.0 : static_cast<double>(roots.size()) / static_cast<double>(seeds.size());

  return archive;
}

}  // namespace

ResultArchive run_single_seed(const ExperimentSpec& spec, const ProgressFn& progress) {
  spec.check();
  if (spec.mode != ExperimentMode::SingleSeed)
    throw Error(ErrorKind::InvalidConfig, "spec mode is not SINGLE_SEED");
  ExperimentContext ctx = build_context(spec);

  // Seed = the delay-pushed tool solution: sized against the pre-layout
  // view, not power-recovered. Reported objectives come from the full
  // evaluation.
  auto tool_seed = [&](double t_r) {
    return tool_flow_seed(ctx.design, t_r, spec.clock_period, ctx.output_load, false);
  };

  SeedSolution seed;
  if (spec.t_r > 0.0) {
    seed = tool_seed(spec.t_r);
  } else {
    // Tighten in fixed increments until the flow fails, then keep the last
    // working point. The grid deliberately extends below the reachable
    // limit so the failure edge is actually observed.
    TimingScenario probe;
    probe.clock_period = spec.clock_period;
    probe.output_load = ctx.output_load;
    Evaluator eval(ctx.design, probe);
    double easy = eval.arrival_times(ctx.design.assignment).worst_arrival;
    double tight =
        greedy_timing_sizer(eval, spec.clock_period * 1e-6).eval.objectives.delay;
    double hi = std::min(easy, spec.clock_period);
    double lo = std::min(tight * 0.9, hi * 0.999999);

    const int steps = 24;
    bool found = false;
    for (int i = 0; i < steps; ++i) {
      double t_r = hi - (hi - lo) * static_cast<double>(i) / (steps - 1);
      SeedSolution candidate = tool_seed(t_r);
      if (!candidate.timing_met) break;  // past the failure edge
      seed = candidate;
      found = true;
    }
    if (!found) seed = tool_seed(hi);
  }

  TimingScenario scenario =
      scenario_for_required_time(seed.t_r, spec.clock_period, ctx.output_load);
  MoeaConfig config = spec.moea;
  ObjectiveVector normalization = config.normalization;
  if (!(normalization.delay > 0.0)) normalization = seed.eval.objectives;
  config.normalization = normalization;

  EvolveResult evolved =
      evolve(ctx.design, scenario, config, {seed.chromosome}, progress);

  std::vector<SeedSolution> seeds{seed};
  ResultArchive archive = assemble(ctx, seeds, syn_frontier(seeds), evolved, normalization,
                                   &seed.eval.objectives);
  archive.config_json = spec_to_json(spec, seed.t_r, ctx.output_load);
  return archive;
}

namespace {

ResultArchive evolve_over_seeds(const ExperimentSpec& spec, const ExperimentContext& ctx,
                                const std::vector<SeedSolution>& seeds, double t_r,
                                const ProgressFn& progress) {
  auto frontier = syn_frontier(seeds);
  TimingScenario scenario = scenario_for_required_time(t_r, spec.clock_period, ctx.output_load);

  std::vector<Chromosome> chromosomes;
  chromosomes.reserve(seeds.size());
  for (const auto& s : seeds) chromosomes.push_back(s.chromosome);

  MoeaConfig config = spec.moea;
  ObjectiveVector normalization = config.normalization;
  if (!(normalization.delay > 0.0)) {
    normalization = seeds.front().eval.objectives;
    for (const auto& s : seeds) {
      normalization.delay = std::min(normalization.delay, s.eval.objectives.delay);
      normalization.power = std::min(normalization.power, s.eval.objectives.power);
      normalization.area = std::min(normalization.area, s.eval.objectives.area);
    }
  }
  config.normalization = normalization;

  EvolveResult evolved = evolve(ctx.design, scenario, config, chromosomes, progress);

  ResultArchive archive = assemble(ctx, seeds, frontier, evolved, normalization, nullptr);
  archive.config_json = spec_to_json(spec, t_r, ctx.output_load);
  return archive;
}

}  // namespace

ResultArchive run_multi_seed(const ExperimentSpec& spec, const ProgressFn& progress) {
  spec.check();
  if (spec.mode != ExperimentMode::MultiSeed)
    throw Error(ErrorKind::InvalidConfig, "spec mode is not MULTI_SEED");
  ExperimentContext ctx = build_context(spec);

  SweepConfig sweep = spec.sweep;
  sweep.output_load = spec.output_load;
  auto seeds = constraint_sweep(ctx.design, sweep, spec.clock_period, spec.moea.jobs);

  // All seed solutions enter the population, failing ones included; the
  // MOEA runs under the tightest sweep constraint.
  return evolve_over_seeds(spec, ctx, seeds, sweep.t_r_min, progress);
}

ResultArchive run_with_seeds(const ExperimentSpec& spec, const std::vector<SeedSolution>& seeds,
                             const ProgressFn& progress) {
  if (seeds.empty()) throw Error(ErrorKind::InvalidConfig, "no seeds supplied");
  spec.moea.check();
  if (!(spec.clock_period > 0.0))
    throw Error(ErrorKind::InvalidConfig, "clock period must be > 0");
  ExperimentContext ctx = build_context(spec);

  double t_r = spec.t_r;
  if (!(t_r > 0.0)) {
    // Default to the tightest met seed's constraint.
    for (const auto& s : seeds)
      if (s.timing_met && (!(t_r > 0.0) || s.t_r < t_r)) t_r = s.t_r;
    if (!(t_r > 0.0)) t_r = seeds.front().t_r;
  }
  return evolve_over_seeds(spec, ctx, seeds, t_r, progress);
}

namespace {

const char* kSeedColumns = "id,T_r,timing_met,D_wc,WNS,switching,internal,leakage,P_total,A_gate,chromosome";
const char* kFinalColumns =
    "id,D_wc,WNS,timing_met,switching,internal,leakage,P_total,A_gate,rank,crowding,seed_id,birth_gen,chromosome";

std::string seed_csv_row(const SeedRow& row) {
  std::string out = row.id;
  out += "," + format_double(row.t_r);
  out += row.timing_met ? ",1" : ",0";
  for (double v : {row.eval.objectives.delay, row.eval.wns, row.eval.power.switching,
                   row.eval.power.internal, row.eval.power.leakage, row.eval.power.total,
                   row.eval.objectives.area})
    out += "," + format_double(v);
  out += "," + row.chromosome_text;
  return out;
}

std::string final_csv_row(const ArchiveRow& row) {
  std::string out = row.id;
  for (double v : {row.eval.objectives.delay, row.eval.wns}) out += "," + format_double(v);
  out += row.eval.timing_met ? ",1" : ",0";
  for (double v : {row.eval.power.switching, row.eval.power.internal, row.eval.power.leakage,
                   row.eval.power.total, row.eval.objectives.area})
    out += "," + format_double(v);
  out += "," + std::to_string(row.rank);
  out += "," + format_double(row.crowding);
  out += "," + std::to_string(row.seed_id);
  out += "," + std::to_string(row.birth_generation);
  out += "," + row.chromosome_text;
  return out;
}

}  // namespace

void export_archive(const ResultArchive& archive, const std::string& directory) {
  std::error_code ec;
  fs::create_directories(fs::path(directory) / "assignment", ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create " + directory + ": " + ec.message());
  auto path = [&](const std::string& file) { return (fs::path(directory) / file).string(); };

  write_file(path("config.json"), archive.config_json);

  std::string seeds_csv = std::string(kSeedColumns) + "\n";
  for (const auto& row : archive.seeds) seeds_csv += seed_csv_row(row) + "\n";
  write_file(path("seeds.csv"), seeds_csv);

  std::string frontier_csv = std::string(kSeedColumns) + "\n";
  for (const auto& id : archive.frontier_ids)
    for (const auto& row : archive.seeds)
      if (row.id == id) frontier_csv += seed_csv_row(row) + "\n";
  write_file(path("frontier.csv"), frontier_csv);

  std::string history_csv = "generation,min_D_wc,min_P_total,min_A_gate,front_size,hypervolume\n";
  for (const auto& g : archive.history) {
    history_csv += std::to_string(g.generation);
    for (double v : {g.min_delay, g.min_power, g.min_area}) history_csv += "," + format_double(v);
    history_csv += "," + std::to_string(g.first_front_size);
    history_csv += "," + format_double(g.hypervolume) + "\n";
  }
  write_file(path("history.csv"), history_csv);

  std::string final_csv = std::string(kFinalColumns) + "\n";
  for (const auto& row : archive.final_population) final_csv += final_csv_row(row) + "\n";
  write_file(path("final.csv"), final_csv);

  std::string pareto_csv = std::string(kFinalColumns) + "\n";
  for (const auto& id : archive.pareto_ids)
    for (const auto& row : archive.final_population)
      if (row.id == id) pareto_csv += final_csv_row(row) + "\n";
  write_file(path("pareto.csv"), pareto_csv);

  nlohmann::json summary;
  summary["frontier_hypervolume"] = format_double(archive.frontier_hypervolume);
  summary["final_hypervolume"] = format_double(archive.final_hypervolume);
  summary["hypervolume_reference"] = {format_double(archive.hypervolume_reference.delay),
                                      format_double(archive.hypervolume_reference.power),
                                      format_double(archive.hypervolume_reference.area)};
  summary["surviving_seed_fraction"] = format_double(archive.surviving_seed_fraction);
  summary["tradeoff"] = archive.tradeoff_id;
  summary["best_delay"] = archive.best_delay_id;
  summary["best_power"] = archive.best_power_id;
  summary["best_area"] = archive.best_area_id;
  write_file(path("summary.json"), summary.dump(2) + "\n");

  std::string tradeoff_txt;
  for (const auto& row : archive.final_population)
    if (row.id == archive.tradeoff_id) {
      tradeoff_txt = "id " + row.id + "\nD_wc " + format_double(row.eval.objectives.delay) +
                     "\nP_total " + format_double(row.eval.power.total) + "\nA_gate " +
                     format_double(row.eval.objectives.area) + "\nchromosome " +
                     row.chromosome_text + "\n";
      break;
    }
  write_file(path("tradeoff.txt"), tradeoff_txt);

  std::string plot_power = "series,id,D_wc,P_total,timing_met\n";
  std::string plot_area = "series,id,D_wc,A_gate,timing_met\n";
  auto plot_rows = [&](const std::string& series, const std::string& id, const EvalResult& e) {
    std::string met = e.timing_met ? "1" : "0";
    plot_power += series + "," + id + "," + format_double(e.objectives.delay) + "," +
                  format_double(e.power.total) + "," + met + "\n";
    plot_area += series + "," + id + "," + format_double(e.objectives.delay) + "," +
                 format_double(e.objectives.area) + "," + met + "\n";
  };
  for (const auto& row : archive.seeds) plot_rows("seed", row.id, row.eval);
  for (const auto& id : archive.frontier_ids)
    for (const auto& row : archive.seeds)
      if (row.id == id) plot_rows("frontier", row.id, row.eval);
  for (const auto& row : archive.final_population) plot_rows("final", row.id, row.eval);
  write_file(path("plot_delay_power.csv"), plot_power);
  write_file(path("plot_delay_area.csv"), plot_area);

  for (const auto& [id, text] : archive.assignments)
    write_file(path("assignment/" + id + ".txt"), text);
}

namespace {

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(read_file(path));
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (first) {  // header
      first = false;
      continue;
    }
    if (!line.empty()) rows.push_back(split(line, ','));
  }
  return rows;
}

EvalResult eval_from_fields(const std::vector<std::string>& f, std::size_t at) {
  // D_wc, WNS, timing_met, switching, internal, leakage, P_total, A_gate
  EvalResult e;
  e.objectives.delay = parse_double(f[at]);
  e.wns = parse_double(f[at + 1]);
  e.timing_met = f[at + 2] == "1";
  e.power.switching = parse_double(f[at + 3]);
  e.power.internal = parse_double(f[at + 4]);
  e.power.leakage = parse_double(f[at + 5]);
  e.power.total = parse_double(f[at + 6]);
  e.objectives.power = e.power.total;
  e.objectives.area = parse_double(f[at + 7]);
  return e;
}

}  // namespace

ResultArchive load_archive(const std::string& directory) {
  auto path = [&](const std::string& file) { return (fs::path(directory) / file).string(); };
  ResultArchive archive;
  archive.config_json = read_file(path("config.json"));

  for (const auto& f : read_csv(path("seeds.csv"))) {
    SeedRow row;
    row.id = f[0];
    row.t_r = parse_double(f[1]);
    row.timing_met = f[2] == "1";
    EvalResult e;
    e.objectives.delay = parse_double(f[3]);
    e.wns = parse_double(f[4]);
    e.timing_met = row.timing_met;
    e.power.switching = parse_double(f[5]);
    e.power.internal = parse_double(f[6]);
    e.power.leakage = parse_double(f[7]);
    e.power.total = parse_double(f[8]);
    e.objectives.power = e.power.total;
    e.objectives.area = parse_double(f[9]);
    row.eval = e;
    row.chromosome_text = f[10];
    archive.seeds.push_back(std::move(row));
  }
  for (const auto& f : read_csv(path("frontier.csv"))) archive.frontier_ids.push_back(f[0]);

  for (const auto& f : read_csv(path("history.csv"))) {
    GenerationStats g;
    g.generation = static_cast<int>(parse_double(f[0]));
    g.min_delay = parse_double(f[1]);
    g.min_power = parse_double(f[2]);
    g.min_area = parse_double(f[3]);
    g.first_front_size = static_cast<std::size_t>(parse_double(f[4]));
    g.hypervolume = parse_double(f[5]);
    archive.history.push_back(g);
  }

  for (const auto& f : read_csv(path("final.csv"))) {
    ArchiveRow row;
    row.id = f[0];
    row.eval = eval_from_fields(f, 1);
    row.rank = static_cast<int>(parse_double(f[9]));
    row.crowding = parse_double(f[10]);
    row.seed_id = static_cast<int>(parse_double(f[11]));
    row.birth_generation = static_cast<int>(parse_double(f[12]));
    row.chromosome_text = f[13];
    archive.final_population.push_back(std::move(row));
  }
  for (const auto& f : read_csv(path("pareto.csv"))) archive.pareto_ids.push_back(f[0]);

  nlohmann::json summary = nlohmann::json::parse(read_file(path("summary.json")));
  archive.frontier_hypervolume = parse_double(summary["frontier_hypervolume"].get<std::string>());
  archive.final_hypervolume = parse_double(summary["final_hypervolume"].get<std::string>());
  archive.hypervolume_reference = {
      parse_double(summary["hypervolume_reference"][0].get<std::string>()),
      parse_double(summary["hypervolume_reference"][1].get<std::string>()),
      parse_double(summary["hypervolume_reference"][2].get<std::string>())};
  archive.surviving_seed_fraction =
      parse_double(summary["surviving_seed_fraction"].get<std::string>());
  archive.tradeoff_id = summary["tradeoff"].get<std::string>();
  archive.best_delay_id = summary["best_delay"].get<std::string>();
  archive.best_power_id = summary["best_power"].get<std::string>();
  archive.best_area_id = summary["best_area"].get<std::string>();

  for (const auto& id : archive.pareto_ids)
    archive.assignments.emplace_back(id, read_file(path("assignment/" + id + ".txt")));
  return archive;
}

std::string archive_to_json(const ResultArchive& archive) {
  nlohmann::json doc;
  doc["config"] = nlohmann::json::parse(archive.config_json);
  doc["seeds"] = nlohmann::json::array();
  for (const auto& row : archive.seeds) {
    nlohmann::json r;
    r["id"] = row.id;
    r["T_r"] = format_double(row.t_r);
    r["timing_met"] = row.timing_met;
    r["D_wc"] = format_double(row.eval.objectives.delay);
    r["WNS"] = format_double(row.eval.wns);
    r["P_total"] = format_double(row.eval.power.total);
    r["A_gate"] = format_double(row.eval.objectives.area);
    r["chromosome"] = row.chromosome_text;
    doc["seeds"].push_back(std::move(r));
  }
  doc["frontier"] = archive.frontier_ids;
  doc["history"] = nlohmann::json::array();
  for (const auto& g : archive.history) {
    nlohmann::json r;
    r["generation"] = g.generation;
    r["min_D_wc"] = format_double(g.min_delay);
    r["min_P_total"] = format_double(g.min_power);
    r["min_A_gate"] = format_double(g.min_area);
    r["front_size"] = g.first_front_size;
    r["hypervolume"] = format_double(g.hypervolume);
    doc["history"].push_back(std::move(r));
  }
  doc["final"] = nlohmann::json::array();
  for (const auto& row : archive.final_population) {
    nlohmann::json r;
    r["id"] = row.id;
    r["D_wc"] = format_double(row.eval.objectives.delay);
    r["WNS"] = format_double(row.eval.wns);
    r["timing_met"] = row.eval.timing_met;
    r["switching"] = format_double(row.eval.power.switching);
    r["internal"] = format_double(row.eval.power.internal);
    r["leakage"] = format_double(row.eval.power.leakage);
    r["P_total"] = format_double(row.eval.power.total);
    r["A_gate"] = format_double(row.eval.objectives.area);
    r["rank"] = row.rank;
    r["crowding"] = format_double(row.crowding);
    r["seed_id"] = row.seed_id;
    r["birth_gen"] = row.birth_generation;
    r["chromosome"] = row.chromosome_text;
    doc["final"].push_back(std::move(r));
  }
  doc["pareto"] = archive.pareto_ids;
  doc["tradeoff"] = archive.tradeoff_id;
  doc["best_delay"] = archive.best_delay_id;
  doc["best_power"] = archive.best_power_id;
  doc["best_area"] = archive.best_area_id;
  doc["frontier_hypervolume"] = format_double(archive.frontier_hypervolume);
  doc["final_hypervolume"] = format_double(archive.final_hypervolume);
  doc["surviving_seed_fraction"] = format_double(archive.surviving_seed_fraction);
  doc["assignments"] = nlohmann::json::object();
  for (const auto& [id, text] : archive.assignments) doc["assignments"][id] = text;
  return doc.dump(2) + "\n";
}

}  // namespace moosize
