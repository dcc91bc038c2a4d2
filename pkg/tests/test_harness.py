import json

import numpy as np
import pytest

from logenc.harness import (
    ExperimentSpec,
    RunRecord,
    derive_seed,
    gen_gnp,
    gen_max2sat,
    gen_node_weights,
    gen_partition,
    load_instance,
    plot_data,
    records_to_jsonl,
    run_experiment,
    summarize,
    summary_csv,
)
from logenc.optimizers import OptimizerConfig
from logenc.reductions import is_clique, is_independent_set

SMALL = OptimizerConfig(max_evals=300)


class TestGenerators:
    def test_density_extremes(self):
        assert gen_gnp(10, 0.0, 1).m == 0
        assert gen_gnp(10, 1.0, 1).m == 45

    def test_edge_count_statistics(self):
        m = gen_gnp(32, 0.5, 123).m
        assert abs(m - 248) <= 4 * np.sqrt(496 / 4)

    def test_gnp_deterministic(self):
        assert gen_gnp(12, 0.4, 5) == gen_gnp(12, 0.4, 5)

    def test_partition_range_and_determinism(self):
        p = gen_partition(50, 3)
        assert all(1 <= w <= 100 for w in p.weights)
        assert p == gen_partition(50, 3)

    def test_partition_mean(self):
        assert 49 <= np.mean(gen_partition(10_000, 4).weights) <= 52

    def test_node_weights(self):
        w = gen_node_weights(40, 9)
        assert all(1 <= v <= 100 for v in w) and w == gen_node_weights(40, 9)
        seqs = {gen_node_weights(10, s) for s in range(1000)}
        assert len(seqs) == 1000

    def test_max2sat(self):
        s = gen_max2sat(5, 12, 0)
        assert s.n_vars == 5 and len(s.clauses) == 12

    def test_derive_seed_distinct(self):
        assert len({derive_seed(0, i) for i in range(1000)}) == 1000
        assert derive_seed(1, 2) != derive_seed(2, 1)


class TestSpec:
    def test_validation(self):
        with pytest.raises(ValueError):
            ExperimentSpec(problem="tsp")
        with pytest.raises(ValueError):
            ExperimentSpec(problem="maxcut", runs=0)
        with pytest.raises(ValueError):
            ExperimentSpec(problem="maxcut", evaluator="noisy")

    def test_missing_file(self, tmp_path):
        with pytest.raises(OSError):
            run_experiment(ExperimentSpec(problem="maxcut", instance_path=str(tmp_path / "nope.txt")))


class TestRunExperiment:
    def test_maxcut_records(self):
        recs = run_experiment(ExperimentSpec(problem="maxcut", n=8, runs=10, optimizer=SMALL))
        assert len(recs) == 10
        assert [r.run for r in recs] == list(range(10))
        assert all(r.percent_of_optimal <= 1 + 1e-9 for r in recs)
        assert len({r.seed for r in recs}) == 10

    def test_partition_records(self):
        recs = run_experiment(ExperimentSpec(problem="partition", n=16, runs=2, optimizer=SMALL))
        assert all(0 <= r.p_norm <= 1 for r in recs)
        assert all(r.percent_of_optimal is None for r in recs)

    def test_clique_solutions_are_cliques(self):
        spec = ExperimentSpec(problem="clique", n=6, density=0.5, runs=3, optimizer=SMALL)
        g, _ = load_instance(spec)
        for r in run_experiment(spec):
            assert is_clique(g, r.solution) and r.value == len(r.solution)
            assert r.percent_of_optimal <= 1 + 1e-9

    def test_mwis_solutions_are_independent(self):
        spec = ExperimentSpec(problem="mwis", n=10, density=0.3, runs=3, optimizer=SMALL)
        g, _ = load_instance(spec)
        for r in run_experiment(spec):
            assert is_independent_set(g, r.solution)
            assert r.value == sum(g.node_weights[i] for i in r.solution)

    @pytest.mark.parametrize("mode", ["ground-gadget", "paper-literal"])
    def test_max2sat(self, mode):
        recs = run_experiment(ExperimentSpec(problem="max2sat", n=5, runs=2, mode=mode, optimizer=SMALL))
        assert all(r.percent_of_optimal <= 1 + 1e-9 for r in recs)

    def test_sampled_evaluator(self):
        spec = ExperimentSpec(problem="maxcut", n=6, runs=1, evaluator="sampled", shots=200,
                              optimizer=OptimizerConfig(max_evals=64))
        a, b = run_experiment(spec), run_experiment(spec)
        assert records_to_jsonl(a) == records_to_jsonl(b)

    def test_oracle_limit_omits_score(self):
        recs = run_experiment(ExperimentSpec(problem="maxcut", n=8, runs=1, optimizer=SMALL, oracle_limit=4))
        assert recs[0].optimal_value is None and recs[0].percent_of_optimal is None

    def test_byte_identical_output(self, tmp_path):
        spec = ExperimentSpec(problem="mwis", n=8, density=0.4, runs=3, optimizer=SMALL, seed=77)
        a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
        run_experiment(spec, out=a)
        run_experiment(spec, out=b)
        assert a.read_bytes() == b.read_bytes()
        assert "wall_time_ms" not in a.read_text()

    def test_workers_do_not_change_results(self):
        spec = ExperimentSpec(problem="maxcut", n=8, runs=3, optimizer=SMALL)
        assert records_to_jsonl(run_experiment(spec, workers=2)) == records_to_jsonl(run_experiment(spec))

    def test_timing_flag(self):
        recs = run_experiment(ExperimentSpec(problem="maxcut", n=5, runs=1, optimizer=SMALL))
        assert "wall_time_ms" in json.loads(records_to_jsonl(recs, timing=True))


def _record(instance, value, pct=None):
    return RunRecord(problem="maxcut", instance_id=instance, seed=0, run=0, value=value,
                     solution=[], evals_used=1, n=4, percent_of_optimal=pct, density=0.5)


class TestSummaries:
    def test_single_record(self):
        (row,) = summarize([_record("a", 3.0, 0.8)])
        assert row["value_std"] == 0

    def test_two_point_std(self):
        (row,) = summarize([_record("a", 1, 0.8), _record("a", 2, 1.0)])
        assert row["percent_of_optimal_mean"] == pytest.approx(0.9)
        assert row["percent_of_optimal_std"] == pytest.approx(0.1414, abs=1e-4)
        assert row["percent_of_optimal_best"] == 1.0

    def test_one_row_per_instance(self):
        rows = summarize([_record(i, 1.0) for i in "abcab"])
        assert len(rows) == 3
        assert summary_csv(rows).count("\n") == 4

    def test_plot_data(self):
        files = plot_data([_record("a", 1, 0.8), _record("b", 2, 0.9)])
        assert "maxcut" in files and files["maxcut"].splitlines()[0].split(",")[:2] == ["instance_id", "density"]
