#include "moosize/moea.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "moosize/explorer.hpp"
#include "moosize/parallel.hpp"
#include "moosize/text.hpp"

namespace moosize {

void MoeaConfig::check() const {
  if (population_size < 2 || population_size % 2 != 0)
    throw Error(ErrorKind::InvalidConfig,
                "population size must be even and >= 2, got " + std::to_string(population_size));
  if (generations < 1)
    throw Error(ErrorKind::InvalidConfig,
                "generations must be >= 1, got " + std::to_string(generations));
  if (!(mutation_rate > 0.0) || !(mutation_rate <= 1.0))
    throw Error(ErrorKind::InvalidConfig,
                "mutation rate must be in (0, 1], got " + format_double(mutation_rate));
  if (jobs < 0) throw Error(ErrorKind::InvalidConfig, "jobs must be >= 0");
}

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  bool strictly_better = false;
  for (std::size_t k = 0; k < 3; ++k) {
    if (a[k] > b[k]) return false;
    if (a[k] < b[k]) strictly_better = true;
  }
  return strictly_better;
}

std::vector<std::vector<std::size_t>> fast_non_dominated_sort(
    const std::vector<ObjectiveVector>& points) {
  const std::size_t n = points.size();
  std::vector<std::vector<std::size_t>> dominated(n);
  std::vector<int> domination_count(n, 0);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = p + 1; q < n; ++q) {
      if (dominates(points[p], points[q])) {
        dominated[p].push_back(q);
        ++domination_count[q];
      } else if (dominates(points[q], points[p])) {
        dominated[q].push_back(p);
        ++domination_count[p];
      }
    }

  std::vector<std::vector<std::size_t>> fronts;
  std::vector<bool> in_front(n, false);
  std::vector<std::size_t> current;
  for (std::size_t p = 0; p < n; ++p)
    if (domination_count[p] == 0) {
      current.push_back(p);
      in_front[p] = true;
    }
  while (!current.empty()) {
    fronts.push_back(current);
    std::vector<bool> next_flag(n, false);
    for (std::size_t p : current)
      for (std::size_t q : dominated[p])
        if (--domination_count[q] == 0) next_flag[q] = true;
    current.clear();
    for (std::size_t q = 0; q < n; ++q)  // ascending index keeps input order
      if (next_flag[q] && !in_front[q]) {
        current.push_back(q);
        in_front[q] = true;
      }
  }
  return fronts;
}

std::vector<double> crowding_distance(const std::vector<ObjectiveVector>& front) {
  const std::size_t n = front.size();
  const double inf = std::numeric_limits<double>::infinity();
  if (n <= 2) return std::vector<double>(n, inf);

  std::vector<double> distance(n, 0.0);
  std::vector<std::size_t> order(n);
  for (std::size_t k = 0; k < 3; ++k) {
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return front[a][k] < front[b][k]; });
    double min = front[order.front()][k];
    double max = front[order.back()][k];
    if (max == min) continue;  // this objective contributes nothing
    distance[order.front()] = inf;
    distance[order.back()] = inf;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      if (std::isinf(distance[order[i]])) continue;
      distance[order[i]] += (front[order[i + 1]][k] - front[order[i - 1]][k]) / (max - min);
    }
  }
  return distance;
}

namespace {

std::vector<int> gene_ranges(const MappedDesign& design) {
  std::vector<int> ranges;
  ranges.reserve(design.netlist.gates.size());
  for (const auto& gate : design.netlist.gates)
    ranges.push_back(static_cast<int>(
        variants_of(*design.library, gate.function_id, static_cast<int>(gate.inputs.size()))
            .size()));
  return ranges;
}

Chromosome mutate_ranged(const Chromosome& c, const std::vector<int>& ranges, double rho,
                         Rng& rng) {
  Chromosome out = c;
  for (std::size_t i = 0; i < out.genes.size(); ++i) {
    if (rng.uniform() >= rho) continue;
    int n = ranges[i];
    if (n <= 1) continue;  // single-variant genes are immutable
    int pick = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(n - 1)));
    out.genes[i] = pick >= out.genes[i] ? pick + 1 : pick;
  }
  return out;
}

struct ChromosomeHash {
  std::size_t operator()(const Chromosome& c) const {
    std::uint64_t h = 1469598103934665603ULL;
    for (int g : c.genes) {
      h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(g));
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

// Evaluate every unevaluated member, de-duplicating identical chromosomes so
// seed copies and unmutated children cost one evaluation. Results are written
// into per-index slots, so the parallel schedule cannot affect them.
void evaluate_population(std::vector<Individual>& pop, const Evaluator& eval, int jobs) {
  std::unordered_map<Chromosome, EvalResult, ChromosomeHash> known;
  for (const auto& ind : pop)
    if (ind.evaluated) known.emplace(ind.chromosome, ind.eval);

  std::vector<const Chromosome*> work;
  std::vector<std::size_t> work_owner;  // first individual enqueueing the chromosome
  std::unordered_map<Chromosome, std::size_t, ChromosomeHash> work_index;
  for (std::size_t p = 0; p < pop.size(); ++p) {
    const Individual& ind = pop[p];
    if (ind.evaluated || known.count(ind.chromosome) || work_index.count(ind.chromosome)) continue;
    work_index.emplace(ind.chromosome, work.size());
    work.push_back(&ind.chromosome);
    work_owner.push_back(p);
  }

  std::vector<EvalResult> results(work.size());
  parallel_for(work.size(), jobs, [&](std::size_t i) {
    try {
      results[i] = eval.evaluate(*work[i]);
    } catch (const Error& e) {
      throw Error(e.kind(),
                  "individual " + std::to_string(work_owner[i]) + ": " + e.what());
    }
  });

  for (auto& ind : pop) {
    if (ind.evaluated) continue;
    if (auto it = known.find(ind.chromosome); it != known.end()) {
      ind.eval = it->second;
    } else {
      ind.eval = results[work_index.at(ind.chromosome)];
    }
    ind.evaluated = true;
  }
}

}  // namespace

Chromosome mutate(const Chromosome& c, const MappedDesign& design, double rho, Rng& rng) {
  check_chromosome(design, c);
  if (!(rho > 0.0 && rho <= 1.0))
    throw Error(ErrorKind::InvalidConfig, "mutation rate must be in (0, 1]");
  return mutate_ranged(c, gene_ranges(design), rho, rng);
}

std::vector<Individual> make_initial_population(const std::vector<Chromosome>& seeds,
                                                int population_size,
                                                const MappedDesign& design) {
  if (seeds.empty()) throw Error(ErrorKind::InvalidConfig, "need at least one seed");
  for (const auto& seed : seeds) check_chromosome(design, seed);
  std::vector<Individual> pop;
  pop.reserve(static_cast<std::size_t>(population_size));
  for (int i = 0; i < population_size; ++i) {
    Individual ind;
    ind.chromosome = seeds[static_cast<std::size_t>(i) % seeds.size()];
    ind.provenance.seed_id = static_cast<int>(static_cast<std::size_t>(i) % seeds.size());
    ind.provenance.birth_generation = 0;
    pop.push_back(std::move(ind));
  }
  return pop;
}

EvolveResult evolve(const MappedDesign& design, const TimingScenario& scenario,
                    const MoeaConfig& config, const std::vector<Chromosome>& seeds,
                    const ProgressFn& progress) {
  config.check();
  const int n = config.population_size;
  const auto ranges = gene_ranges(design);
  Evaluator eval(design, scenario);

  auto mutate_into_offspring = [&](const std::vector<Individual>& parents, int generation) {
    std::vector<Individual> offspring;
    offspring.reserve(parents.size());
    for (std::size_t i = 0; i < parents.size(); ++i) {
      Rng rng = Rng::stream(config.rng_seed, static_cast<std::uint64_t>(generation), i);
      Individual child;
      child.chromosome = mutate_ranged(parents[i].chromosome, ranges, config.mutation_rate, rng);
      child.provenance.seed_id = parents[i].provenance.seed_id;
      child.provenance.birth_generation = generation;
      offspring.push_back(std::move(child));
    }
    return offspring;
  };

  EvolveResult result;
  std::vector<Individual> parents = make_initial_population(seeds, n, design);
  std::vector<Individual> offspring = mutate_into_offspring(parents, 0);

  ObjectiveVector hv_reference{};
  bool hv_reference_set = false;

  for (int t = 0; t < config.generations; ++t) {
    std::vector<Individual> merged = std::move(parents);
    merged.insert(merged.end(), std::make_move_iterator(offspring.begin()),
                  std::make_move_iterator(offspring.end()));
    offspring.clear();

    try {
      evaluate_population(merged, eval, config.jobs);
    } catch (const Error& e) {
      throw Error(e.kind(), "generation " + std::to_string(t + 1) + ": " + e.what());
    }

    if (!hv_reference_set) {
      for (const auto& ind : merged) {
        hv_reference.delay = std::max(hv_reference.delay, ind.objectives().delay);
        hv_reference.power = std::max(hv_reference.power, ind.objectives().power);
        hv_reference.area = std::max(hv_reference.area, ind.objectives().area);
      }
      hv_reference.delay *= 1.1;
      hv_reference.power *= 1.1;
      hv_reference.area *= 1.1;
      hv_reference_set = true;
    }

    std::vector<ObjectiveVector> points;
    points.reserve(merged.size());
    for (const auto& ind : merged) points.push_back(ind.objectives());
    auto fronts = fast_non_dominated_sort(points);

    std::vector<Individual> selected;
    selected.reserve(static_cast<std::size_t>(n));
    for (std::size_t fi = 0; fi < fronts.size() && selected.size() < static_cast<std::size_t>(n);
         ++fi) {
      const auto& front = fronts[fi];
      std::vector<ObjectiveVector> front_points;
      front_points.reserve(front.size());
      for (std::size_t idx : front) front_points.push_back(points[idx]);
      auto distance = crowding_distance(front_points);

      std::vector<std::size_t> order(front.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      if (selected.size() + front.size() > static_cast<std::size_t>(n))
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
          return distance[a] > distance[b];
        });

      for (std::size_t i : order) {
        if (selected.size() >= static_cast<std::size_t>(n)) break;
        Individual ind = std::move(merged[front[i]]);
        ind.rank = static_cast<int>(fi);
        ind.crowding = distance[i];
        selected.push_back(std::move(ind));
      }
    }

    parents = std::move(selected);

    GenerationStats stats;
    stats.generation = t + 1;
    stats.min_delay = std::numeric_limits<double>::infinity();
    stats.min_power = std::numeric_limits<double>::infinity();
    stats.min_area = std::numeric_limits<double>::infinity();
    std::vector<ObjectiveVector> first_front;
    for (const auto& ind : parents) {
      stats.min_delay = std::min(stats.min_delay, ind.objectives().delay);
      stats.min_power = std::min(stats.min_power, ind.objectives().power);
      stats.min_area = std::min(stats.min_area, ind.objectives().area);
      if (ind.rank == 0) {
        ++stats.first_front_size;
        if (dominates(ind.objectives(), hv_reference))
          first_front.push_back(ind.objectives());
      }
    }
    stats.hypervolume = first_front.empty() ? 0.0 : hypervolume(first_front, hv_reference);
    result.history.push_back(stats);
    if (progress) progress(stats);

    if (t + 1 < config.generations) offspring = mutate_into_offspring(parents, t + 1);
  }

  result.population = std::move(parents);
  return result;
}

std::size_t trade_off_solution(const std::vector<ObjectiveVector>& front,
                               const ObjectiveVector& normalization) {
  if (front.empty()) throw Error(ErrorKind::InvalidConfig, "empty front");
  for (std::size_t k = 0; k < 3; ++k)
    if (!(normalization[k] > 0.0))
      throw Error(ErrorKind::InvalidConfig, "normalization references must be > 0");
  std::size_t best = 0;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < front.size(); ++i) {
    double d2 = 0.0;
    for (std::size_t k = 0; k < 3; ++k) {
      double r = front[i][k] / normalization[k];
      d2 += r * r;
    }
    if (d2 < best_d2) {
      best_d2 = d2;
      best = i;
    }
  }
  return best;
}

}  // namespace moosize
