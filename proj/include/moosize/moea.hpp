#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "moosize/evaluate.hpp"
#include "moosize/netlist.hpp"
#include "moosize/rng.hpp"

namespace moosize {

struct Provenance {
  int seed_id = -1;        // index of the originating seed chromosome
  int birth_generation = 0;
};

struct Individual {
  Chromosome chromosome;
  EvalResult eval;
  bool evaluated = false;
  int rank = -1;                 // front index, 0-based
  double crowding = 0.0;         // [0, +inf]
  Provenance provenance;

  const ObjectiveVector& objectives() const { return eval.objectives; }
};

struct MoeaConfig {
  int population_size = 200;   // N, >= 2 and even
  int generations = 200;       // M, >= 1
  double mutation_rate = 0.01; // rho in (0, 1]
  std::uint64_t rng_seed = 1;
  // Per-objective reference for the trade-off pick; zeros mean "derive from seeds".
  ObjectiveVector normalization{};
  int jobs = 0;                // evaluation parallelism; 0 = hardware concurrency

  void check() const;  // throws Error(InvalidConfig)
};

struct GenerationStats {
  int generation = 0;
  double min_delay = 0.0;
  double min_power = 0.0;
  double min_area = 0.0;
  std::size_t first_front_size = 0;
  double hypervolume = 0.0;
};

// True iff a is no worse in every objective and strictly better in at least one.
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);

// Deb's fast non-dominated sort. Fronts partition [0, n); order within a
// front follows input order. Individuals supply objectives via the callback.
std::vector<std::vector<std::size_t>> fast_non_dominated_sort(
    const std::vector<ObjectiveVector>& points);

// Crowding distance of one front, in front order. Boundary points get +inf;
// an objective with max == min contributes 0 to everyone.
std::vector<double> crowding_distance(const std::vector<ObjectiveVector>& front);

// Per-gene, with probability rho, replace by a uniformly chosen different
// variant of the gate's function. Single-variant genes never change.
Chromosome mutate(const Chromosome& c, const MappedDesign& design, double rho, Rng& rng);

// N individuals cycling through the seeds round-robin.
std::vector<Individual> make_initial_population(const std::vector<Chromosome>& seeds,
                                                int population_size,
                                                const MappedDesign& design);

struct EvolveResult {
  std::vector<Individual> population;       // size N, ranked with crowding set
  std::vector<GenerationStats> history;     // one row per generation
};

using ProgressFn = std::function<void(const GenerationStats&)>;

// Elitist mu+lambda NSGA-II with mutation-only variation:
//   P0 from seeds, Q0 = Mutation(P0); each generation ranks R = P u Q (2N),
//   fills the next P by whole fronts, truncates the spilling front by
//   descending crowding distance (stable), then mutates P into the next Q.
// Deterministic for a fixed rng_seed regardless of evaluation parallelism.
EvolveResult evolve(const MappedDesign& design, const TimingScenario& scenario,
                    const MoeaConfig& config, const std::vector<Chromosome>& seeds,
                    const ProgressFn& progress = {});

// Front member minimising sqrt(sum_k (obj_k / ref_k)^2); ties by input order.
std::size_t trade_off_solution(const std::vector<ObjectiveVector>& front,
                               const ObjectiveVector& normalization);

}  // namespace moosize
