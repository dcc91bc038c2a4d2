"""Instance generation, experiment orchestration and reporting.

Random instances are ``G(n, p)`` graphs and uniform integers in ``[1, 100]``
drawn from numpy's PCG64: reproducible per seed, but not bit-compatible with
instances from other generators.
"""

from __future__ import annotations

import csv
import io
import json
import time
from collections import OrderedDict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path
from typing import Any, Callable, Iterable, Sequence

import numpy as np

from . import io as fileio
from .encoder import LogEncoding, decode_params
from .model import WeightedGraph, build_laplacian, cut_value
from .optimizers import OptimizationResult, OptimizerConfig, minimize
from .oracles import (
    CapacityError,
    brute_force_max2sat,
    brute_force_maxcut,
    brute_force_mwis,
    brute_force_partition,
    exact_max_clique,
    partition_norm,
    percent_of_optimal,
)
from .reductions import (
    PartitionInstance,
    TwoSatInstance,
    clique_to_maxcut,
    max2sat_to_maxcut,
    mwis_to_qubo,
    partition_to_maxcut,
)
from .simulator import ShotConfig, expectation_sampled

__all__ = [
    "PROBLEMS",
    "ExperimentSpec",
    "RunRecord",
    "gen_gnp",
    "gen_partition",
    "gen_node_weights",
    "gen_max2sat",
    "derive_seed",
    "load_instance",
    "run_experiment",
    "records_to_jsonl",
    "summarize",
    "summary_csv",
    "format_table",
    "plot_data",
    "BENCH_SWEEPS",
    "bench_specs",
]

PROBLEMS = ("maxcut", "partition", "max2sat", "clique", "mwis")
_MASK64 = (1 << 64) - 1


def derive_seed(*parts: int) -> int:
    """Stable 64-bit seed from a tuple of integers."""
    ss = np.random.SeedSequence([int(p) & _MASK64 for p in parts])
    return int(ss.generate_state(1, np.uint64)[0])


def gen_gnp(n: int, density: float, seed: int) -> WeightedGraph:
    """``G(n, p)`` with unit weights: each pair kept independently with probability ``density``."""
    if n < 2:
        raise ValueError("need at least two vertices")
    if not 0.0 <= density <= 1.0:
        raise ValueError(f"density must lie in [0, 1], got {density}")
    rng = np.random.default_rng(seed)
    iu, ju = np.triu_indices(n, 1)
    keep = rng.random(len(iu)) < density
    return WeightedGraph(n, tuple((int(i), int(j), 1.0) for i, j in zip(iu[keep], ju[keep])))


def gen_partition(n: int, seed: int) -> PartitionInstance:
    if n < 2:
        raise ValueError("need at least two numbers")
    rng = np.random.default_rng(seed)
    return PartitionInstance(tuple(int(x) for x in rng.integers(1, 101, size=n)))


def gen_node_weights(n: int, seed: int) -> tuple[int, ...]:
    if n < 1:
        raise ValueError("need at least one vertex")
    rng = np.random.default_rng(seed)
    return tuple(int(x) for x in rng.integers(1, 101, size=n))


def gen_max2sat(n_vars: int, n_clauses: int, seed: int, max_weight: int = 10) -> TwoSatInstance:
    """Random weighted 2-SAT: literals uniform over variables and signs, integer weights."""
    rng = np.random.default_rng(seed)
    clauses = []
    for _ in range(n_clauses):
        var = rng.integers(1, n_vars + 1, size=2)
        sign = rng.choice([-1, 1], size=2)
        clauses.append((int(var[0] * sign[0]), int(var[1] * sign[1]), float(rng.integers(1, max_weight + 1))))
    return TwoSatInstance(n_vars, tuple(clauses))


@dataclass(frozen=True)
class ExperimentSpec:
    """One instance, many optimizer runs.

    The instance is read from ``instance_path`` when given, otherwise generated
    from ``(n, density, instance_seed)``; ``n_clauses`` sizes random 2-SAT.
    """

    problem: str
    instance_path: str | None = None
    n: int = 16
    density: float = 0.5
    instance_seed: int = 0
    n_clauses: int | None = None
    evaluator: str = "exact"
    shots: int = 1000
    optimizer: OptimizerConfig = field(default_factory=OptimizerConfig)
    runs: int = 1
    seed: int = 0
    mode: str = "ground-gadget"
    penalty: float | None = None
    oracle_limit: int = 26

    def __post_init__(self) -> None:
        if self.problem not in PROBLEMS:
            raise ValueError(f"unknown problem {self.problem!r}; expected one of {PROBLEMS}")
        if self.runs < 1:
            raise ValueError("runs must be at least 1")
        if self.evaluator not in ("exact", "sampled"):
            raise ValueError(f"unknown evaluator {self.evaluator!r}")


@dataclass
class RunRecord:
    problem: str
    instance_id: str
    seed: int
    run: int
    value: float
    solution: list
    evals_used: int
    n: int
    density: float | None = None
    optimal_value: float | None = None
    percent_of_optimal: float | None = None
    p_norm: float | None = None
    wall_time_ms: float | None = None

    def to_json(self, timing: bool = False) -> str:
        data = asdict(self)
        if not timing:
            data.pop("wall_time_ms")
        return json.dumps(data, sort_keys=True)


def load_instance(spec: ExperimentSpec) -> tuple[Any, str]:
    """Return ``(instance, instance_id)`` for the spec's problem."""
    p = spec.problem
    if spec.instance_path is not None:
        path = spec.instance_path
        if p == "partition":
            inst = fileio.read_partition(path)
        elif p == "max2sat":
            inst = fileio.read_twosat(path)
        else:
            inst = fileio.read_graph(path)
            if p == "mwis" and inst.node_weights is None:
                raise ValueError(f"{path}: MWIS instances need a node-weight block")
        return inst, Path(path).stem
    seed = spec.instance_seed
    if p == "partition":
        return gen_partition(spec.n, seed), f"partition-n{spec.n}-s{seed}"
    if p == "max2sat":
        m = spec.n_clauses if spec.n_clauses is not None else 2 * spec.n
        return gen_max2sat(spec.n, m, seed), f"max2sat-n{spec.n}-m{m}-s{seed}"
    if p == "mwis":
        graph_seed, weight_seed = (derive_seed(seed, k) for k in (0, 1))
        g = gen_gnp(spec.n, spec.density, graph_seed)
        return g.with_node_weights(gen_node_weights(spec.n, weight_seed)), f"mwis-n{spec.n}-d{spec.density}-s{seed}"
    return gen_gnp(spec.n, spec.density, seed), f"{p}-n{spec.n}-d{spec.density}-s{seed}"


@dataclass
class _Prepared:
    instance_id: str
    size: int
    encoding: LogEncoding
    decode: Callable[[np.ndarray], tuple[Any, float]]
    optimal: float | None


def _prepare(spec: ExperimentSpec) -> _Prepared:
    inst, inst_id = load_instance(spec)
    p = spec.problem

    def oracle(fn, size):
        if size > spec.oracle_limit:
            return None
        try:
            return fn().optimal_value
        except CapacityError:
            return None

    if p == "maxcut":
        enc = LogEncoding.maxcut(build_laplacian(inst))

        def decode(theta):
            spins, _ = decode_params(theta)
            return [int(s) for s in spins], cut_value(inst, spins)

        return _Prepared(inst_id, inst.n, enc, decode, oracle(lambda: brute_force_maxcut(inst), inst.n))
    if p == "partition":
        art = partition_to_maxcut(inst)
        enc = LogEncoding.maxcut(build_laplacian(art.target))
        size = len(inst.weights)

        def decode(theta):
            side, diff = art.decode(decode_params(theta)[0])
            return list(side), diff

        return _Prepared(inst_id, size, enc, decode, oracle(lambda: brute_force_partition(inst), size))
    if p == "max2sat":
        art = max2sat_to_maxcut(inst, mode=spec.mode)
        enc = LogEncoding.maxcut(build_laplacian(art.target))

        def decode(theta):
            assignment, sat = art.decode(decode_params(theta)[0])
            return [bool(a) for a in assignment], sat

        return _Prepared(inst_id, inst.n_vars, enc, decode, oracle(lambda: brute_force_max2sat(inst), inst.n_vars))
    if p == "clique":
        art = clique_to_maxcut(inst, mode=spec.mode)
        enc = LogEncoding.maxcut(build_laplacian(art.target))

        def decode(theta):
            clique, size = art.decode(decode_params(theta)[0])
            return list(clique), size

        return _Prepared(inst_id, inst.n, enc, decode, oracle(lambda: exact_max_clique(inst), min(inst.n, 64)))
    art = mwis_to_qubo(inst, penalty=spec.penalty)
    enc = LogEncoding.qubo(art.target)

    def decode(theta):
        chosen, weight = art.decode(decode_params(theta)[1])
        return list(chosen), weight

    return _Prepared(inst_id, inst.n, enc, decode, oracle(lambda: brute_force_mwis(inst), inst.n))


class SampledObjective:
    """Cost estimated from shots; each call draws fresh, seed-derived shot noise."""

    def __init__(self, encoding: LogEncoding, shots: int, seed: int):
        self.encoding = encoding
        self.shots = shots
        self.seed = seed
        self.calls = 0

    def __call__(self, theta) -> float:
        cfg = ShotConfig(self.shots, derive_seed(self.seed, self.calls))
        self.calls += 1
        est = expectation_sampled(theta, self.encoding.observable, cfg)
        return self.encoding.scale * est.value


def _optimize(args) -> tuple[OptimizationResult, float]:
    objective, n_params, cfg = args
    start = time.perf_counter()
    result = minimize(objective, n_params, cfg)
    return result, (time.perf_counter() - start) * 1000.0


def run_experiment(
    spec: ExperimentSpec,
    out: str | Path | None = None,
    workers: int = 1,
    timing: bool = False,
) -> list[RunRecord]:
    """Reduce, encode, optimize ``spec.runs`` times, decode, repair and score.

    Each run gets a seed derived from ``(spec.seed, run)``; records come back
    in run order regardless of ``workers``. When ``out`` is given the records
    are appended to it as JSON lines.
    """
    prep = _prepare(spec)
    jobs = []
    run_seeds = [derive_seed(spec.seed, r) for r in range(spec.runs)]
    for seed in run_seeds:
        cfg = replace(spec.optimizer, seed=seed)
        if spec.evaluator == "sampled":
            objective = SampledObjective(prep.encoding, spec.shots, derive_seed(seed, 1))
        else:
            objective = prep.encoding
        jobs.append((objective, prep.encoding.n_params, cfg))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_optimize, jobs))
    else:
        outcomes = [_optimize(job) for job in jobs]

    density = None if spec.problem in ("partition", "max2sat") or spec.instance_path else spec.density
    records = []
    for run, (seed, (result, ms)) in enumerate(zip(run_seeds, outcomes)):
        solution, value = prep.decode(result.best_theta)
        rec = RunRecord(
            problem=spec.problem,
            instance_id=prep.instance_id,
            seed=seed,
            run=run,
            value=float(value),
            solution=solution,
            evals_used=result.evals_used,
            n=prep.size,
            density=density,
            optimal_value=None if prep.optimal is None else float(prep.optimal),
            wall_time_ms=round(ms, 3),
        )
        if spec.problem == "partition":
            rec.p_norm = partition_norm(value, prep.size)
        elif prep.optimal is not None and prep.optimal > 0:
            rec.percent_of_optimal = percent_of_optimal(value, prep.optimal)
        records.append(rec)
    if out is not None:
        with open(out, "a") as fh:
            fh.write(records_to_jsonl(records, timing=timing))
    return records


def records_to_jsonl(records: Iterable[RunRecord], timing: bool = False) -> str:
    return "".join(r.to_json(timing=timing) + "\n" for r in records)


_METRICS = ("value", "percent_of_optimal", "p_norm")


def _get(rec, key):
    return rec[key] if isinstance(rec, dict) else getattr(rec, key)


def summarize(records: Sequence[RunRecord | dict]) -> list[dict]:
    """Per ``(problem, instance)``: mean, sample std, min, max and best of each metric.

    "Best" is the maximum, except for the partition difference where it is
    the minimum.
    """
    if not records:
        raise ValueError("no records to summarize")
    groups: "OrderedDict[tuple[str, str], list]" = OrderedDict()
    for rec in records:
        groups.setdefault((_get(rec, "problem"), _get(rec, "instance_id")), []).append(rec)
    rows = []
    for (problem, inst), recs in groups.items():
        row: dict[str, Any] = {"problem": problem, "instance_id": inst, "runs": len(recs)}
        for metric in _METRICS:
            vals = [_get(r, metric) for r in recs if _get(r, metric) is not None]
            if not vals:
                continue
            arr = np.array(vals, dtype=float)
            minimize_best = problem == "partition" and metric == "value"
            row[f"{metric}_mean"] = float(arr.mean())
            row[f"{metric}_std"] = float(arr.std(ddof=1)) if len(arr) > 1 else 0.0
            row[f"{metric}_min"] = float(arr.min())
            row[f"{metric}_max"] = float(arr.max())
            row[f"{metric}_best"] = float(arr.min() if minimize_best else arr.max())
        rows.append(row)
    return rows


def _columns(rows: list[dict]) -> list[str]:
    cols: list[str] = []
    for row in rows:
        cols += [c for c in row if c not in cols]
    return cols


def summary_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=_columns(rows), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def format_table(rows: list[dict]) -> str:
    cols = _columns(rows)

    def cell(v):
        if v is None:
            return "-"
        if isinstance(v, float):
            return f"{v:.4g}"
        return str(v)

    table = [cols] + [[cell(r.get(c)) for c in cols] for r in rows]
    widths = [max(len(line[i]) for line in table) for i in range(len(cols))]
    return "\n".join("  ".join(x.rjust(w) for x, w in zip(line, widths)) for line in table) + "\n"


def plot_data(records: Sequence[RunRecord | dict]) -> dict[str, str]:
    """CSV series for external plotting, one per problem.

    Graph problems: density against percent of optimal. Partition: number
    count against ``p_norm``.
    """
    out: dict[str, str] = {}
    for row in summarize(records):
        problem = row["problem"]
        first = next(r for r in records if _get(r, "instance_id") == row["instance_id"])
        if problem == "partition":
            x_name, x_val, metric = "n", _get(first, "n"), "p_norm"
        else:
            x_name, x_val, metric = "density", _get(first, "density"), "percent_of_optimal"
        if f"{metric}_mean" not in row:
            continue
        lines = out.setdefault(problem, f"instance_id,{x_name},mean,std,min,max\n")
        out[problem] = lines + (
            f"{row['instance_id']},{x_val},{row[metric + '_mean']!r},{row[metric + '_std']!r},"
            f"{row[metric + '_min']!r},{row[metric + '_max']!r}\n"
        )
    return out


# Desk-scale quality sweeps shared by `logenc bench` and the acceptance tests.
BENCH_SWEEPS: dict[str, dict[str, Any]] = {
    "maxcut": dict(n=20, densities=(0.3, 0.4, 0.5), instances=10, runs=10,
                   optimizer=OptimizerConfig(max_evals=5000)),
    "partition": dict(n=16, densities=(None,), instances=10, runs=20,
                      optimizer=OptimizerConfig(max_evals=5000)),
    # the 27-node gadget graph needs a longer search than plain MaxCut
    "clique": dict(n=12, densities=(0.5,), instances=5, runs=20,
                   optimizer=OptimizerConfig(max_evals=20000)),
    "mwis": dict(n=16, densities=(0.3,), instances=10, runs=20,
                 optimizer=OptimizerConfig(max_evals=5000)),
}


def bench_specs(problem: str, seed: int = 0) -> list[ExperimentSpec]:
    sweep = BENCH_SWEEPS[problem]
    specs = []
    for k, density in enumerate(sweep["densities"]):
        for i in range(sweep["instances"]):
            specs.append(
                ExperimentSpec(
                    problem=problem,
                    n=sweep["n"],
                    density=0.0 if density is None else density,
                    instance_seed=derive_seed(seed, k, i),
                    optimizer=sweep["optimizer"],
                    runs=sweep["runs"],
                    seed=derive_seed(seed, k, i, 1),
                )
            )
    return specs
