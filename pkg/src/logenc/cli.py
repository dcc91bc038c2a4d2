"""Command-line entry point: ``logenc gen | solve | oracle | decompose | bench``.

Exit codes: 0 success, 2 argument error, 3 capacity error, 4 I/O error.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import io as fileio
from . import kernels
from .encoder import pauli_decompose
from .harness import (
    BENCH_SWEEPS,
    PROBLEMS,
    ExperimentSpec,
    bench_specs,
    format_table,
    load_instance,
    plot_data,
    records_to_jsonl,
    run_experiment,
    summarize,
    summary_csv,
)
from .model import pad_to_power_of_two, symmetrize
from .optimizers import OptimizerConfig, parse_config
from .oracles import (
    CapacityError,
    brute_force_max2sat,
    brute_force_maxcut,
    brute_force_mwis,
    brute_force_partition,
    brute_force_qubo,
    exact_max_clique,
)

EXIT_ARGUMENT, EXIT_CAPACITY, EXIT_IO = 2, 3, 4


def _cmd_gen(args) -> int:
    spec = ExperimentSpec(
        problem=args.problem, n=args.n, density=args.density,
        instance_seed=args.seed, n_clauses=args.clauses,
    )
    inst, _ = load_instance(spec)
    if args.problem == "partition":
        text = fileio.format_partition(inst)
    elif args.problem == "max2sat":
        text = fileio.format_twosat(inst)
    else:
        text = fileio.format_graph(inst)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def _optimizer_from_args(args) -> OptimizerConfig:
    base = OptimizerConfig(kind=args.optimizer)
    pairs = []
    if args.config:
        pairs += Path(args.config).read_text().splitlines()
    pairs += args.opt or []
    return parse_config(pairs, base)


def _cmd_solve(args) -> int:
    spec = ExperimentSpec(
        problem=args.problem,
        instance_path=args.instance,
        n=args.n,
        density=args.density,
        instance_seed=args.instance_seed,
        n_clauses=args.clauses,
        evaluator=args.evaluator,
        shots=args.shots,
        optimizer=_optimizer_from_args(args),
        runs=args.runs,
        seed=args.seed,
        mode=args.mode,
        penalty=args.penalty,
    )
    if args.out:
        Path(args.out).write_text("")
    records = run_experiment(spec, out=args.out, workers=args.workers, timing=args.timing)
    if not args.out:
        sys.stdout.write(records_to_jsonl(records, timing=args.timing))
    rows = summarize(records)
    sys.stderr.write(format_table(rows))
    if args.summary:
        Path(args.summary).write_text(summary_csv(rows))
    if args.plot_data:
        _write_plot_data(records, args.plot_data)
    return 0


def _write_plot_data(records, directory) -> None:
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    for problem, text in plot_data(records).items():
        (out / f"{problem}.csv").write_text(text)


def _cmd_oracle(args) -> int:
    p = args.problem
    if p == "qubo":
        res = brute_force_qubo(fileio.read_qubo(args.file))
    else:
        inst, _ = load_instance(ExperimentSpec(problem=p, instance_path=args.file))
        fn = {
            "maxcut": brute_force_maxcut,
            "partition": brute_force_partition,
            "max2sat": brute_force_max2sat,
            "clique": exact_max_clique,
            "mwis": brute_force_mwis,
        }[p]
        res = fn(inst)
    witness = res.witness
    if isinstance(witness, np.ndarray):
        witness = witness.tolist()
    if p == "max2sat":
        witness = [i + 1 if v else -(i + 1) for i, v in enumerate(witness)]
    print(f"optimal_value {res.optimal_value:g}")
    print("witness " + " ".join(str(int(x)) for x in witness))
    return 0


def _cmd_decompose(args) -> int:
    m = fileio.read_qubo(args.file)
    if not np.allclose(m, m.T):
        m = symmetrize(m)
    obs = pauli_decompose(pad_to_power_of_two(m), tol=args.tol)
    sys.stdout.write(obs.dump())
    return 0


def _bench_kernels(sizes) -> None:
    rng = np.random.default_rng(0)
    print(f"{'kernel':<22}{'n':>4}" + "".join(f"{b:>12}" for b in kernels.available_backends()))
    for n in sizes:
        a = np.triu((rng.random((n, n)) < 0.5).astype(float), 1)
        a = a + a.T
        w = rng.integers(1, 101, n)
        cases = {
            "maxcut_enumerate": lambda b: kernels.maxcut_enumerate(a, backend=b),
            "qubo_enumerate": lambda b: kernels.qubo_enumerate(a - np.eye(n), backend=b),
            "partition_enumerate": lambda b: kernels.partition_enumerate(w * 1000 + 1, backend=b),
        }
        for name, fn in cases.items():
            times = []
            for b in kernels.available_backends():
                start = time.perf_counter()
                fn(b)
                times.append(time.perf_counter() - start)
            print(f"{name:<22}{n:>4}" + "".join(f"{t * 1000:>10.1f}ms" for t in times))


def _cmd_bench(args) -> int:
    if args.kernels:
        _bench_kernels(args.sizes)
        return 0
    problems = args.problems or list(BENCH_SWEEPS)
    all_records = []
    out = Path(args.out) if args.out else None
    if out:
        out.write_text("")
    for problem in problems:
        start = time.perf_counter()
        for spec in bench_specs(problem, seed=args.seed):
            if args.runs:
                spec = replace(spec, runs=args.runs)
            all_records += run_experiment(spec, out=out)
        print(f"# {problem}: {time.perf_counter() - start:.1f}s", file=sys.stderr)
    sys.stdout.write(format_table(summarize(all_records)))
    if args.plot_data:
        _write_plot_data(all_records, args.plot_data)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="logenc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="emit a random instance file")
    gen.add_argument("problem", choices=PROBLEMS)
    gen.add_argument("--n", type=int, default=16)
    gen.add_argument("--density", type=float, default=0.5)
    gen.add_argument("--clauses", type=int, default=None)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out")
    gen.set_defaults(func=_cmd_gen)

    solve = sub.add_parser("solve", help="run the variational solver on one instance")
    solve.add_argument("problem", choices=PROBLEMS)
    solve.add_argument("instance", nargs="?", help="instance file; omit to generate one")
    solve.add_argument("--n", type=int, default=16)
    solve.add_argument("--density", type=float, default=0.5)
    solve.add_argument("--clauses", type=int, default=None)
    solve.add_argument("--instance-seed", type=int, default=0)
    solve.add_argument("--mode", choices=("ground-gadget", "paper-literal"), default="ground-gadget")
    solve.add_argument("--evaluator", choices=("exact", "sampled"), default="exact")
    solve.add_argument("--shots", type=int, default=1000, help="shots per Pauli term (sampled)")
    solve.add_argument("--optimizer", choices=("genetic", "simplex"), default="genetic")
    solve.add_argument("--opt", action="append", metavar="KEY=VALUE", help="optimizer option")
    solve.add_argument("--config", help="file of KEY=VALUE optimizer options")
    solve.add_argument("--penalty", type=float, default=None, help="MWIS penalty weight")
    solve.add_argument("--runs", type=int, default=1)
    solve.add_argument("--seed", type=int, default=0)
    solve.add_argument("--workers", type=int, default=1)
    solve.add_argument("--out", help="JSON-lines output (default: stdout)")
    solve.add_argument("--summary", help="write the summary CSV here")
    solve.add_argument("--plot-data", help="directory for per-metric CSV series for plotting")
    solve.add_argument("--timing", action="store_true", help="include wall_time_ms in records")
    solve.set_defaults(func=_cmd_solve)

    oracle = sub.add_parser("oracle", help="exact optimum of an instance file")
    oracle.add_argument("problem", choices=PROBLEMS + ("qubo",))
    oracle.add_argument("file")
    oracle.set_defaults(func=_cmd_oracle)

    dec = sub.add_parser("decompose", help="Pauli decomposition of a matrix file")
    dec.add_argument("file")
    dec.add_argument("--tol", type=float, default=1e-12)
    dec.set_defaults(func=_cmd_decompose)

    bench = sub.add_parser("bench", help="scaled acceptance sweep, or --kernels timings")
    bench.add_argument("--problems", nargs="*", choices=list(BENCH_SWEEPS))
    bench.add_argument("--runs", type=int, default=None, help="override runs per instance")
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--out")
    bench.add_argument("--plot-data")
    bench.add_argument("--kernels", action="store_true", help="time compiled vs numpy kernels")
    bench.add_argument("--sizes", type=int, nargs="*", default=[14, 18, 20])
    bench.set_defaults(func=_cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CapacityError as exc:
        print(f"logenc: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except OSError as exc:
        print(f"logenc: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"logenc: {exc}", file=sys.stderr)
        return EXIT_ARGUMENT


if __name__ == "__main__":
    sys.exit(main())
