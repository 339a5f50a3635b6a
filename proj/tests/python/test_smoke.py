"""Smoke tests for the Python bindings."""

import os

import pytest

import moosize

C17 = """
INPUT(a)
INPUT(b)
INPUT(c)
OUTPUT(y)
u = NAND(a, b)
v = NAND(b, c)
y = NAND(u, v)
"""


def bench_path(name):
    return os.path.join(os.environ["MOOSIZE_BENCH_DIR"], name + ".bench")


def make_design(text=C17):
    netlist = moosize.parse_bench(text, "tiny")
    profile = moosize.ScalingProfile()
    library = moosize.generate_synthetic_library(
        profile, [(g.function_id, len(g.inputs)) for g in netlist.gates] + [("NOT", 1)]
    )
    return moosize.map_to_library(netlist, library), library


def test_parse_and_validate():
    netlist = moosize.parse_bench(C17, "tiny")
    assert len(netlist) == 3
    assert netlist.primary_inputs == ["a", "b", "c"]
    assert moosize.validate(netlist) == []


def test_parse_errors_raise():
    with pytest.raises(moosize.MoosizeError, match="line 2"):
        moosize.parse_bench("INPUT(a)\ny = FROB(a)\nOUTPUT(y)\n")


def test_library_round_trip():
    _, library = make_design()
    reloaded = moosize.load_library(moosize.serialize_library(library))
    assert moosize.serialize_library(reloaded) == moosize.serialize_library(library)
    assert len(moosize.variants_of(library, "NOT", 1)) == 11


def test_evaluation_is_deterministic():
    design, _ = make_design()
    scenario = moosize.scenario_for_required_time(1e-9)
    chromosome = moosize.extract_chromosome(design)
    a = moosize.evaluate_full(design, chromosome, scenario)
    b = moosize.evaluate_full(design, chromosome, scenario)
    assert a.objectives == b.objectives
    assert a.objectives.delay > 0 and a.objectives.power > 0 and a.objectives.area > 0
    assert a.power.total == a.power.switching + a.power.internal + a.power.leakage


def test_evolve_small_run():
    design, _ = make_design()
    scenario = moosize.scenario_for_required_time(2e-10)
    config = moosize.MoeaConfig()
    config.population_size = 8
    config.generations = 5
    config.mutation_rate = 0.2
    config.rng_seed = 3
    seeds = [moosize.extract_chromosome(design)]
    result = moosize.evolve(design, scenario, config, seeds)
    assert len(result.population) == 8
    assert len(result.history) == 5
    minima = [g.min_area for g in result.history]
    assert minima == sorted(minima, reverse=True) or all(
        minima[i] >= minima[i + 1] for i in range(len(minima) - 1)
    )


def test_hypervolume_examples():
    assert moosize.hypervolume([(1, 1, 1)], (2, 2, 2)) == pytest.approx(1.0)
    assert moosize.hypervolume([(1, 2, 2), (2, 1, 2)], (3, 3, 3)) == pytest.approx(3.0)


def test_sizer_meets_easy_constraint():
    design, _ = make_design()
    evaluator = moosize.Evaluator(design, moosize.scenario_for_required_time(4e-9))
    seed = moosize.greedy_timing_sizer(evaluator, 4e-9)
    assert seed.timing_met
    assert list(seed.chromosome.genes) == [0, 0, 0]


def test_single_seed_experiment(tmp_path):
    spec = moosize.ExperimentSpec()
    spec.bench_path = bench_path("c17")
    spec.mode = moosize.ExperimentMode.SINGLE_SEED
    spec.output_load = "D1"
    spec.moea.population_size = 8
    spec.moea.generations = 4
    spec.moea.mutation_rate = 0.1
    spec.moea.rng_seed = 5
    spec.output_dir = str(tmp_path / "run")
    archive = moosize.run_single_seed(spec)
    assert archive.final_count == 8
    moosize.export_archive(archive, spec.output_dir)
    for name in ("config.json", "seeds.csv", "pareto.csv", "history.csv"):
        assert (tmp_path / "run" / name).exists()
    reloaded = moosize.load_archive(spec.output_dir)
    assert moosize.archive_to_json(reloaded) == moosize.archive_to_json(archive)
