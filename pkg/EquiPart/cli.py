"""
EquiPart (c) 2026 EquiPart contributors
This code is licensed under GNU LESSER GENERAL PUBLIC LICENSE (see LICENSE for details)
"""
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, List, Optional, Sequence

import argparse
import json
import logging
import os
import pathlib
import sys
import time

from .__version__ import VERSION
from .config import DispatchConfig, load_config
from .dispatch import AUTO, dispatch
from .errors import Error, PreconditionError, UsageError
from .generators import (
    RANDOM_KINDS,
    SizeParams,
    gen_random_instance,
    generated_instance_text,
    parse_binpacking,
    reduce_binpacking,
)
from .graph import parse_instance, parse_solution, serialize_solution, verify_partition
from .limits import SearchLimits
from .locals import ALGORITHM_TAGS
from .parameters import PARAMETER_NAMES, parameter_report
from .report import SolveReport, error_report, reports_to_csv, reports_to_text

__all__ = ["EXIT_YES", "EXIT_NO", "EXIT_UNKNOWN", "EXIT_USAGE", "EXIT_DATA", "Client", "main"]

EXIT_YES = 0
EXIT_NO = 1
EXIT_UNKNOWN = 2
EXIT_USAGE = 64
EXIT_DATA = 65


def _get_time() -> str:
    return time.strftime("%m-%d-%Y %H-%M-%S")


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:
        raise UsageError(message)


def _read(path: str) -> str:
    with open(path, "r") as f:
        return f.read()


def _write(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w") as f:
        f.write(text)


def _assignments(values: Optional[List[str]], option: str) -> Dict[str, int]:
    result = {}
    for value in values or []:
        name, sep, number = value.partition("=")
        if not sep or not number.isdigit():
            raise UsageError(f"{option} expects NAME=K, got {value}")
        result[name] = int(number)
    return result


def _bench_one(path: str, strategy: str, config: DispatchConfig) -> SolveReport:
    try:
        instance = parse_instance(_read(path))
    except (Error, OSError) as e:
        logging.warning(f"Skipping {path}: {e}")
        return error_report(path, str(e))
    return dispatch(instance, strategy, config=config)


class Client:
    def __init__(self, log_dir: Optional[str] = None, verbose: bool = False) -> None:
        """The command-line client.

        Parameters:
            log_dir: Directory receiving a timestamped .log file.
            verbose: Log DEBUG messages to stderr.

        """
        root = logging.getLogger()
        root.setLevel(logging.DEBUG)
        self._previous = list(root.handlers)
        formatter = logging.Formatter("%(asctime)s %(levelname)s: %(message)s", datefmt="%m/%d/%Y %I:%M:%S %p")

        if log_dir is not None:
            self.local_dir_path = pathlib.Path(log_dir)
            self.local_log_path = self.local_dir_path / f"{_get_time()}.log"
            if not os.path.exists(str(self.local_dir_path)):
                os.makedirs(self.local_dir_path)
            handler = logging.FileHandler(self.local_log_path)
            handler.setFormatter(formatter)
            handler.setLevel(logging.DEBUG)
            root.addHandler(handler)

        console = logging.StreamHandler(sys.stderr)
        console.setFormatter(formatter)
        console.setLevel(logging.DEBUG if verbose else logging.WARNING)
        root.addHandler(console)
        self.handlers = [h for h in root.handlers if h not in self._previous]
        logging.info(f"Initializing EquiPart {VERSION} client")

    def config(self, args: argparse.Namespace) -> DispatchConfig:
        config = load_config(args.config) if args.config else DispatchConfig()
        return config.with_overrides(
            node_limit=args.node_limit,
            time_limit=args.time_limit,
            max_diversity=args.max_diversity,
            max_modulator=args.max_modulator,
            max_three_pvc=args.max_three_pvc,
            max_integrity=args.max_integrity,
            max_treewidth=args.max_treewidth,
            max_oracle_n=args.max_oracle_n,
            portfolio=True if getattr(args, "portfolio", False) else None,
        )

    def cmd_solve(self, args: argparse.Namespace) -> int:
        instance = parse_instance(_read(args.input))
        report = dispatch(instance, args.algo, config=self.config(args))
        timing = not args.no_timing
        if args.format == "json":
            sys.stdout.write(report.to_json(timing) + "\n")
        else:
            sys.stdout.write(report.render(timing))
        if args.output:
            if report.exit_code == EXIT_UNKNOWN:
                logging.warning(f"No solution file written, answer is {report.answer}")
            else:
                _write(args.output, serialize_solution(report.partition))
        return report.exit_code

    def cmd_verify(self, args: argparse.Namespace) -> int:
        instance = parse_instance(_read(args.input))
        partition = parse_solution(_read(args.solution), instance)
        if partition is None:
            sys.stdout.write("solution claims no partition; nothing to verify\n")
            return EXIT_UNKNOWN
        verdict = verify_partition(instance, partition)
        if verdict:
            sys.stdout.write("valid\n")
            return EXIT_YES
        sys.stdout.write("invalid\n")
        for violation in verdict.violations:
            part = "-" if violation.part is None else violation.part + 1
            sys.stdout.write(f"violation {violation.kind} part {part}: {violation.detail}\n")
        return EXIT_NO

    def cmd_analyze(self, args: argparse.Namespace) -> int:
        instance = parse_instance(_read(args.input))
        budgets = self.config(args).budgets
        overrides = _assignments(args.budget, "--budget")
        unknown = set(overrides) - set(PARAMETER_NAMES)
        if unknown:
            raise UsageError(f"unknown parameter {', '.join(sorted(unknown))}")
        budgets = {**budgets, **overrides}
        search = SearchLimits(time_budget=args.time_limit).start()
        report = parameter_report(instance.graph, budgets, search)
        if args.format == "json":
            sys.stdout.write(json.dumps(report.as_dict(), indent=2) + "\n")
        else:
            sys.stdout.write(report.render())
        return EXIT_YES

    def cmd_generate(self, args: argparse.Namespace) -> int:
        if args.source == "ubp":
            ubp = parse_binpacking(_read(args.input))
            instance = reduce_binpacking(ubp)
            text = generated_instance_text(
                instance, "ubp", bins=ubp.bins, capacity=ubp.capacity, items=",".join(map(str, ubp.items))
            )
        else:
            size = SizeParams(
                n=args.n,
                p=args.p,
                rows=args.rows,
                cols=args.cols,
                modulator=args.modulator,
                clusters=args.clusters,
                chord_probability=args.chord_probability,
            )
            instance = gen_random_instance(args.kind, args.seed, size)
            text = generated_instance_text(instance, args.kind, args.seed)
        _write(args.output, text)
        return EXIT_YES

    def cmd_bench(self, args: argparse.Namespace) -> int:
        manifest = pathlib.Path(args.manifest)
        paths = []
        for line in _read(args.manifest).splitlines():
            line = line.strip()
            if line and not line.startswith("#"):
                paths.append(str(manifest.parent / line))
        config = self.config(args)
        logging.info(f"Benchmarking {len(paths)} instances with {args.jobs} workers")

        if args.jobs > 1 and paths:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                reports = list(pool.map(_bench_one, paths, [args.algo] * len(paths), [config] * len(paths)))
        else:
            reports = [_bench_one(path, args.algo, config) for path in paths]

        timing = not args.no_timing
        _write(args.csv, reports_to_csv(reports, timing))
        sys.stdout.write(reports_to_text(reports, timing))
        return EXIT_YES

    def run(self, args: argparse.Namespace) -> int:
        command = getattr(self, f"cmd_{args.command}")
        return command(args)

    def close(self) -> None:
        root = logging.getLogger()
        for handler in self.handlers:
            root.removeHandler(handler)
            handler.close()


def _limits(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--algo", default=AUTO, choices=(AUTO,) + ALGORITHM_TAGS, help="solver tag or auto")
    parser.add_argument("--time-limit", type=float, help="seconds per solve")
    parser.add_argument("--node-limit", type=int, help="search nodes per solve")
    parser.add_argument("--no-timing", action="store_true", help="report 0 ms so output is reproducible")


def _thresholds(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="JSON dispatch configuration")
    for name in ("diversity", "modulator", "three-pvc", "integrity", "treewidth", "oracle-n"):
        parser.add_argument(f"--max-{name}", type=int, help=f"automatic threshold for {name}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="equipart", description="Equitable connected partition solvers")
    parser.add_argument("--version", action="version", version=f"equipart {VERSION}")
    parser.add_argument("--log-dir", help="write a timestamped log file into this directory")
    parser.add_argument("-v", "--verbose", action="store_true")
    commands = parser.add_subparsers(dest="command", parser_class=_Parser)
    commands.required = True

    solve = commands.add_parser("solve", help="solve one instance")
    solve.add_argument("--input", required=True)
    solve.add_argument("--output", help="write the solution file here")
    solve.add_argument("--format", choices=("text", "json"), default="text")
    solve.add_argument("--portfolio", action="store_true", help="race the oracle against the automatic pick")
    _limits(solve)
    _thresholds(solve)

    verify = commands.add_parser("verify", help="check a solution file")
    verify.add_argument("--input", required=True)
    verify.add_argument("--solution", required=True)

    analyze = commands.add_parser("analyze", help="report structural parameters")
    analyze.add_argument("--input", required=True)
    analyze.add_argument("--budget", action="append", metavar="NAME=K")
    analyze.add_argument("--format", choices=("text", "json"), default="text")
    analyze.add_argument("--time-limit", type=float, help="seconds for the branching analyzers")
    _thresholds(analyze)
    analyze.set_defaults(node_limit=None)

    generate = commands.add_parser("generate", help="write a generated instance")
    sources = generate.add_subparsers(dest="source", parser_class=_Parser)
    sources.required = True
    ubp = sources.add_parser("ubp", help="reduce a unary bin packing instance")
    ubp.add_argument("--input", required=True)
    ubp.add_argument("--output", default="-")
    rand = sources.add_parser("random", help="seeded random family")
    rand.add_argument("--kind", required=True, choices=RANDOM_KINDS)
    rand.add_argument("--seed", type=int, default=0)
    rand.add_argument("--n", type=int, default=10)
    rand.add_argument("--p", type=int, default=2)
    rand.add_argument("--rows", type=int, default=3)
    rand.add_argument("--cols", type=int, default=3)
    rand.add_argument("--modulator", type=int, default=2)
    rand.add_argument("--clusters", type=int, default=3)
    rand.add_argument("--chord-probability", type=float, default=0.2)
    rand.add_argument("--output", default="-")

    bench = commands.add_parser("bench", help="solve every instance of a manifest")
    bench.add_argument("--manifest", required=True)
    bench.add_argument("--csv", required=True)
    bench.add_argument("--jobs", type=int, default=1)
    _limits(bench)
    _thresholds(bench)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        sys.stderr.write(f"equipart: {e}\n")
        return EXIT_USAGE

    client = Client(args.log_dir, args.verbose)
    try:
        return client.run(args)
    except UsageError as e:
        sys.stderr.write(f"equipart: {e}\n")
        return EXIT_USAGE
    except PreconditionError as e:
        logging.error(str(e))
        sys.stderr.write(f"equipart: {e}\n")
        return EXIT_DATA
    except (Error, OSError, ValueError) as e:
        logging.error(f"Data error: {e}")
        sys.stderr.write(f"equipart: {e}\n")
        return EXIT_DATA
    finally:
        client.close()
