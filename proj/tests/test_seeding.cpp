#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "oracles.hpp"
#include "moosize/seeding.hpp"

using namespace moosize;
using moosize::test::bench_path;
using moosize::test::scenario;

namespace {

struct SingleNot {
  Netlist netlist;
  CellLibrary lib;
  MappedDesign design;

  SingleNot() {
    netlist = parse_bench("INPUT(a)\ny = NOT(a)\nOUTPUT(y)\n");
    lib = test::full_library_for(netlist);
    design = map_to_library(netlist, lib);
  }

  // Closed-form stage delay of variant i under an output load.
  double delay_of(std::size_t i, double load) const {
    const CellVariant& v = variants_of(lib, "NOT", 1)[i];
    return v.intrinsic_delay + v.drive_resistance * load;
  }
};

struct C17Fixture {
  Netlist netlist;
  CellLibrary lib;
  MappedDesign design;

  C17Fixture() {
    netlist = parse_bench_file(bench_path("c17"));
    lib = test::full_library_for(netlist);
    design = map_to_library(netlist, lib);
  }
};

}  // namespace

TEST_CASE("output load scenarios resolve against the library") {
  CellLibrary lib = generate_synthetic_library(ScalingProfile{}, {{"NOT", 1}});
  CHECK(OutputLoadScenario::parse("NONE").resolve(lib) == 0.0);
  double d1 = OutputLoadScenario::parse("D1").resolve(lib);
  double d8 = OutputLoadScenario::parse("D8").resolve(lib);
  CHECK(d1 == doctest::Approx(ScalingProfile{}.base_input_cap));
  CHECK(d8 == doctest::Approx(8.0 * ScalingProfile{}.base_input_cap));
  CHECK(OutputLoadScenario::parse("2.5e-15").resolve(lib) == doctest::Approx(2.5e-15));

  CellLibrary no_inv = generate_synthetic_library(ScalingProfile{}, {{"NAND", 2}});
  CHECK_THROWS_AS(OutputLoadScenario::parse("D8").resolve(no_inv), Error);
}

TEST_CASE("an already-met constraint needs zero moves") {
  SingleNot fx;
  Evaluator eval(fx.design, scenario(4e-9, 4e-9, 1e-14));
  SeedSolution seed = greedy_timing_sizer(eval, 4e-9);
  CHECK(seed.timing_met);
  for (int g : seed.chromosome.genes) CHECK(g == 0);
}

TEST_CASE("the sizer lands on the smallest variant meeting T_r") {
  SingleNot fx;
  const double load = 5e-14;  // heavy output load, upsizing pays off
  const auto& ladder = variants_of(fx.lib, "NOT", 1);
  REQUIRE(fx.delay_of(0, load) > fx.delay_of(ladder.size() - 1, load));

  // T_r between the fastest and slowest variant: pick by formula, then check.
  for (std::size_t target = 1; target + 1 < ladder.size(); target += 2) {
    double t_r = fx.delay_of(target, load) * 1.0000001;
    Evaluator eval(fx.design, scenario(t_r, 4e-9, load));
    SeedSolution seed = greedy_timing_sizer(eval, t_r);
    CHECK(seed.timing_met);
    int expected = -1;  // smallest index whose delay meets t_r
    for (std::size_t i = 0; i < ladder.size(); ++i)
      if (fx.delay_of(i, load) <= t_r) {
        expected = static_cast<int>(i);
        break;
      }
    CHECK(seed.chromosome.genes[0] == expected);
  }
}

TEST_CASE("an impossible constraint ends at a fixed point, flagged unmet") {
  C17Fixture fx;
  const double t_r = 1e-12;
  Evaluator eval(fx.design, scenario(t_r, 4e-9, 1e-14));
  SeedSolution seed = greedy_timing_sizer(eval, t_r);
  CHECK_FALSE(seed.timing_met);

  // No single up-step improves WNS from here.
  double wns = t_r - eval.arrival_times(seed.chromosome.genes).worst_arrival;
  for (std::size_t g = 0; g < seed.chromosome.genes.size(); ++g) {
    const Gate& gate = fx.netlist.gates[g];
    auto n = variants_of(fx.lib, gate.function_id, static_cast<int>(gate.inputs.size())).size();
    if (seed.chromosome.genes[g] + 1 >= static_cast<int>(n)) continue;
    std::vector<int> trial = seed.chromosome.genes;
    ++trial[g];
    double trial_wns = t_r - eval.arrival_times(trial).worst_arrival;
    CHECK(trial_wns <= wns);
  }
}

TEST_CASE("sizer moves are bounded and strictly improving") {
  C17Fixture fx;
  const double t_r = 1.2e-10;
  Evaluator eval(fx.design, scenario(t_r, 4e-9, 5e-15));
  SeedSolution seed = greedy_timing_sizer(eval, t_r);
  long long moves = 0;
  for (std::size_t g = 0; g < seed.chromosome.genes.size(); ++g) moves += seed.chromosome.genes[g];
  long long bound = 0;
  for (const auto& gate : fx.netlist.gates)
    bound += static_cast<long long>(
                 variants_of(fx.lib, gate.function_id, static_cast<int>(gate.inputs.size()))
                     .size()) -
             1;
  CHECK(moves <= bound);
}

TEST_CASE("power recovery") {
  SingleNot fx;

  SUBCASE("slack-free input is a fixed point") {
    const double load = 5e-14;
    std::vector<int> genes{4};
    double t_r = fx.delay_of(4, load);  // WNS exactly zero
    Evaluator eval(fx.design, scenario(t_r, 4e-9, load));
    Chromosome out = power_recovery(eval, Chromosome{genes}, t_r);
    CHECK(out.genes == genes);
  }

  SUBCASE("a generous budget recovers to all-minimum") {
    Evaluator eval(fx.design, scenario(4e-9, 4e-9, 5e-14));
    Chromosome out = power_recovery(eval, Chromosome{{8}}, 4e-9);
    CHECK(out.genes == std::vector<int>{0});
  }

  SUBCASE("unmet input is rejected") {
    const double load = 5e-14;
    double t_r = fx.delay_of(0, load) * 0.5;
    Evaluator eval(fx.design, scenario(t_r, 4e-9, load));
    CHECK_THROWS_AS(power_recovery(eval, Chromosome{{0}}, t_r), Error);
  }

  SUBCASE("mid-size case: power never rises, timing never breaks") {
    C17Fixture c17;
    const double load = 1e-14;
    Evaluator probe(c17.design, scenario(4e-9, 4e-9, load));
    double tight = greedy_timing_sizer(probe, 1e-15).eval.objectives.delay;
    const double t_r = tight * 1.05;
    Evaluator eval(c17.design, scenario(t_r, 4e-9, load));
    SeedSolution sized = greedy_timing_sizer(eval, t_r);
    REQUIRE(sized.timing_met);
    Chromosome recovered = power_recovery(eval, sized.chromosome, t_r);
    EvalResult before = eval.evaluate(sized.chromosome);
    EvalResult after = eval.evaluate(recovered);
    CHECK(after.power.total <= before.power.total);
    CHECK(after.wns >= 0.0);
  }
}

TEST_CASE("constraint sweeps") {
  C17Fixture fx;

  SUBCASE("two easy steps both meet") {
    SweepConfig sweep;
    sweep.t_r_max = 4e-9;
    sweep.t_r_min = 2e-9;
    sweep.steps = 2;
    auto seeds = constraint_sweep(fx.design, sweep, 4e-9, 1);
    REQUIRE(seeds.size() == 2);
    CHECK(seeds[0].t_r == doctest::Approx(4e-9));
    CHECK(seeds[1].t_r == doctest::Approx(2e-9));
    CHECK(seeds[0].timing_met);
    CHECK(seeds[1].timing_met);
  }

  SUBCASE("a 10-step sweep spans the grid evenly, descending") {
    SweepConfig sweep;
    sweep.t_r_max = 4e-10;
    sweep.t_r_min = 1e-10;
    sweep.steps = 10;
    sweep.output_load = OutputLoadScenario::parse("D1");
    auto seeds = constraint_sweep(fx.design, sweep, 4e-9, 0);
    REQUIRE(seeds.size() == 10);
    for (std::size_t i = 0; i < seeds.size(); ++i) {
      double expected = 4e-10 - (4e-10 - 1e-10) * static_cast<double>(i) / 9.0;
      CHECK(seeds[i].t_r == doctest::Approx(expected));
      CHECK(seeds[i].chromosome.genes.size() == fx.netlist.gates.size());
    }
    // identical results whatever the parallelism
    auto serial = constraint_sweep(fx.design, sweep, 4e-9, 1);
    for (std::size_t i = 0; i < seeds.size(); ++i) {
      CHECK(serial[i].chromosome == seeds[i].chromosome);
      CHECK(serial[i].eval.objectives == seeds[i].eval.objectives);
    }
  }

  SUBCASE("pre-recovery area grows monotonically as T_r tightens") {
    const double load = 1e-14;
    double area_before = 0.0;
    for (int i = 0; i < 12; ++i) {
      double t_r = 4e-10 - i * 2.5e-11;
      Evaluator eval(fx.design, scenario(t_r, 4e-9, load));
      SeedSolution sized = greedy_timing_sizer(eval, t_r);
      double area = 0.0;
      for (std::size_t g = 0; g < sized.chromosome.genes.size(); ++g)
        area += oracle::variant_at(fx.design, g, sized.chromosome.genes).area;
      if (i > 0) CHECK(area >= area_before);
      area_before = area;
    }
  }

  SUBCASE("invalid configs are rejected") {
    SweepConfig sweep;
    sweep.t_r_max = 1e-10;
    sweep.t_r_min = 1e-9;
    sweep.steps = 10;
    CHECK_THROWS_AS(constraint_sweep(fx.design, sweep, 4e-9, 1), Error);
    sweep.t_r_max = 2e-9;
    sweep.steps = 1;
    CHECK_THROWS_AS(constraint_sweep(fx.design, sweep, 4e-9, 1), Error);
  }
}

TEST_CASE("seed archives reload as MOEA seeds") {
  C17Fixture fx;
  SweepConfig sweep;
  sweep.t_r_max = 4e-10;
  sweep.t_r_min = 1.5e-10;
  sweep.steps = 6;
  sweep.output_load = OutputLoadScenario::parse("D1");
  double load = sweep.output_load.resolve(fx.lib);
  auto seeds = constraint_sweep(fx.design, sweep, 4e-9, 1);

  std::string csv = seed_archive_csv(fx.design, seeds);
  auto reloaded = load_seed_archive(fx.design, csv, 4e-9, load);
  REQUIRE(reloaded.size() == seeds.size());
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    CHECK(reloaded[i].chromosome == seeds[i].chromosome);
    CHECK(reloaded[i].t_r == seeds[i].t_r);
    CHECK(reloaded[i].eval.objectives == seeds[i].eval.objectives);
    CHECK(reloaded[i].timing_met == seeds[i].timing_met);
  }

  SUBCASE("unknown labels are rejected") {
    std::string broken = csv;
    auto pos = broken.rfind("D");
    broken.replace(pos, 2, "D5");
    CHECK_THROWS_AS(load_seed_archive(fx.design, broken, 4e-9, load), Error);
  }
}

TEST_CASE("syn frontier") {
  auto seed_with = [](double d, double p, double a, int tag) {
    SeedSolution s;
    s.t_r = 1e-9;
    s.chromosome.genes = {tag};
    s.eval.objectives = {d, p, a};
    s.timing_met = true;
    return s;
  };

  SUBCASE("identical seeds collapse to one representative") {
    std::vector<SeedSolution> seeds(5, seed_with(1, 1, 1, 0));
    auto frontier = syn_frontier(seeds);
    REQUIRE(frontier.size() == 1);
  }

  SUBCASE("a dominance chain keeps only the dominating seed") {
    std::vector<SeedSolution> seeds{seed_with(3, 3, 3, 0), seed_with(1, 1, 1, 1),
                                    seed_with(2, 2, 2, 2)};
    auto frontier = syn_frontier(seeds);
    REQUIRE(frontier.size() == 1);
    CHECK(frontier[0].chromosome.genes == std::vector<int>{1});
  }

  SUBCASE("random sets match the pairwise oracle, ascending by delay") {
    Rng rng(41);
    for (int round = 0; round < 30; ++round) {
      std::vector<SeedSolution> seeds;
      std::vector<ObjectiveVector> points;
      for (int i = 0; i < 25; ++i) {
        double d = 1.0 + rng.uniform(), p = 1.0 + rng.uniform(), a = 1.0 + rng.uniform();
        seeds.push_back(seed_with(d, p, a, i));
        points.push_back({d, p, a});
      }
      auto frontier = syn_frontier(seeds);
      auto oracle_front = oracle::pairwise_sort(points).front();
      CHECK(frontier.size() == oracle_front.size());  // no exact duplicates among uniforms
      for (std::size_t i = 1; i < frontier.size(); ++i)
        CHECK(frontier[i].eval.objectives.delay >= frontier[i - 1].eval.objectives.delay);
      for (std::size_t i = 0; i < frontier.size(); ++i)
        for (std::size_t j = i + 1; j < frontier.size(); ++j) {
          CHECK_FALSE(dominates(frontier[i].eval.objectives, frontier[j].eval.objectives));
          CHECK_FALSE(dominates(frontier[j].eval.objectives, frontier[i].eval.objectives));
        }
    }
  }
}
