"""
Command-line interface for the permstat toolkit.

Subcommands evaluate statistics, apply or invert the insertion bijections,
print joint distributions, search for counterexamples, reproduce the phi_7
table and run the named verification suites.

Exit codes: 0 success or pass, 1 verification failed, 2 usage or validation
error, 3 unexpected internal error.
"""

import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

from src.config import MAX_ENUM_CAP, settings
from src.models.permutation import Permutation, StatDescriptor
from src.models.report import Report, Table1Row
from src.services.bijections import (
    phi_den,
    phi_den_inverse,
    phi_gh_den,
    phi_gh_den_inverse,
    render_trace,
)
from src.services.distcheck import DistributionChecker
from src.services.statistics import eval_stat
from src.services.theorems import THEOREM_NAMES, TheoremSuite
from src.utils.logging_utils import PermstatError, RangeError, setup_logging

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3

logger = logging.getLogger(__name__)


def _common_options(suppress: bool) -> argparse.ArgumentParser:
    """
    Parent parser for --cap, --workers and --format.

    The copy attached to each subcommand uses SUPPRESS defaults, so a value
    given before the subcommand name is not overwritten.
    """
    common = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    common.add_argument(
        "--cap",
        type=int,
        default=argparse.SUPPRESS if suppress else None,
        help="Largest n that may be enumerated",
    )
    common.add_argument(
        "--workers",
        type=int,
        default=argparse.SUPPRESS if suppress else None,
        help="Worker processes for distributions",
    )
    common.add_argument(
        "--format",
        choices=["text", "json", "csv"],
        default=argparse.SUPPRESS if suppress else "text",
        help="Output format (default: text)",
    )
    return common


def build_parser() -> argparse.ArgumentParser:
    """Create the argument parser with all subcommands."""
    # allow_abbrev=False keeps --l from being read as a prefix of --log-level.
    parser = argparse.ArgumentParser(
        prog="permstat",
        description="Permutation statistics, Denert bijections and equidistribution checks",
        parents=[_common_options(suppress=False)],
        allow_abbrev=False,
    )
    parser.add_argument(
        "--log-level",
        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
        default=settings.LOG_LEVEL,
        help="Set the logging level",
    )
    parser.add_argument(
        "--log-file", help="Path to a log file (if not specified, logs to stderr only)"
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    common = _common_options(suppress=True)

    def add_command(name: str, help_text: str) -> argparse.ArgumentParser:
        return subparsers.add_parser(
            name, help=help_text, parents=[common], allow_abbrev=False
        )

    stat = add_command("stat", "Evaluate a statistic")
    stat.add_argument("--stat", required=True, help='Descriptor, e.g. "gden:g=2,h=3"')
    _add_perm_source(stat)

    for name, help_text in (
        ("apply", "Apply an insertion bijection to (sigma, c)"),
        ("invert", "Recover (sigma, c) from an image"),
    ):
        command = add_command(name, help_text)
        command.add_argument("--map", choices=["phi-den", "phi-gh-den"], required=True)
        command.add_argument("--g", type=int, default=1)
        command.add_argument("--h", type=int, default=1)
        command.add_argument("--trace", action="store_true", help="Print the step trace")
        _add_perm_source(command)
        if name == "apply":
            command.add_argument("--c", type=int, required=True)

    dist = add_command("dist", "Joint distribution of a statistic pair")
    dist.add_argument("--pair", nargs=2, required=True, metavar=("STAT1", "STAT2"))
    dist.add_argument("--n", type=int, required=True)

    search = add_command(
        "counterexample", "Smallest n where two pairs are not equidistributed"
    )
    search.add_argument("--pair-a", nargs=2, required=True, metavar=("STAT1", "STAT2"))
    search.add_argument("--pair-b", nargs=2, required=True, metavar=("STAT1", "STAT2"))
    search.add_argument("--max-n", type=int, required=True)

    verify = add_command("verify", "Run a named verification suite")
    verify.add_argument("--theorem", choices=THEOREM_NAMES, required=True)
    for flag in ("--r", "--g", "--l", "--h", "--n", "--max-n"):
        verify.add_argument(flag, type=int, default=None)

    add_command("table1", "Images of (621534, c) under phi_7")
    return parser


def _add_perm_source(command: argparse.ArgumentParser) -> None:
    source = command.add_mutually_exclusive_group(required=True)
    source.add_argument("--perm", help='One-line notation, e.g. "7 1 5 4 9 2 6 3 8"')
    source.add_argument("--perm-file", help="File with one permutation per line")


def read_permutations(args: argparse.Namespace) -> List[Permutation]:
    """Parse --perm, or every non-blank line of --perm-file."""
    if args.perm is not None:
        return [Permutation.parse(args.perm)]
    path = Path(args.perm_file)
    try:
        lines = path.read_text().splitlines()
    except OSError as e:
        raise PermstatError(
            f"Cannot read {path}: {e.strerror}", {"file": str(path)}
        ) from e
    return [Permutation.parse(line) for line in lines if line.strip()]


def _parse_pair(texts) -> tuple:
    return StatDescriptor.parse(texts[0]), StatDescriptor.parse(texts[1])


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _csv(rows: List[list]) -> str:
    buffer = io.StringIO()
    csv.writer(buffer, lineterminator="\n").writerows(rows)
    return buffer.getvalue()


def _emit_report(report: Report, output_format: str) -> int:
    if output_format == "json":
        _emit(report.to_json())
    elif output_format == "csv":
        witness = report.witness.describe() if report.witness else ""
        rows = [["name", "verdict", "witness"], [report.name, report.verdict, witness]]
        _emit(_csv(rows))
    else:
        _emit(report.to_text())
    return EXIT_OK if report.passed else EXIT_FAILED


def command_stat(args: argparse.Namespace, checker: DistributionChecker) -> int:
    descriptor = StatDescriptor.parse(args.stat)
    values = [(perm, eval_stat(descriptor, perm)) for perm in read_permutations(args)]
    if args.format == "json":
        for perm, value in values:
            payload = {"stat": descriptor.label, "perm": list(perm.letters), "value": value}
            _emit(json.dumps(payload))
    elif args.format == "csv":
        rows = [[str(perm), value] for perm, value in values]
        _emit(_csv([["perm", "value"]] + rows))
    else:
        for _, value in values:
            _emit(str(value))
    return EXIT_OK


def command_apply(args: argparse.Namespace, checker: DistributionChecker) -> int:
    for perm in read_permutations(args):
        if args.map == "phi-den":
            image, trace = phi_den(perm, args.c)
        else:
            image, trace = phi_gh_den(args.g, args.h, perm, args.c)
        if args.format == "json":
            payload = {"image": list(image.letters), "case": trace.case_tag}
            if args.trace:
                payload["trace"] = trace.to_dict()
            _emit(json.dumps(payload))
        elif args.format == "csv":
            row = [str(perm), args.c, str(image), trace.case_tag]
            _emit(_csv([["sigma", "c", "image", "case"], row]))
        else:
            _emit(str(image))
            if args.trace:
                _emit(render_trace(trace))
    return EXIT_OK


def command_invert(args: argparse.Namespace, checker: DistributionChecker) -> int:
    for perm in read_permutations(args):
        if args.map == "phi-den":
            sigma, c, trace = phi_den_inverse(perm)
        else:
            sigma, c, trace = phi_gh_den_inverse(args.g, args.h, perm)
        if args.format == "json":
            payload = {"sigma": list(sigma.letters), "c": c, "case": trace.case_tag}
            if args.trace:
                payload["trace"] = trace.to_dict()
            _emit(json.dumps(payload))
        elif args.format == "csv":
            row = [str(perm), str(sigma), c, trace.case_tag]
            _emit(_csv([["image", "sigma", "c", "case"], row]))
        else:
            _emit(" ".join(filter(None, [str(sigma), f"c={c}"])))
            if args.trace:
                _emit(render_trace(trace))
    return EXIT_OK


def command_dist(args: argparse.Namespace, checker: DistributionChecker) -> int:
    stat1, stat2 = _parse_pair(args.pair)
    distribution = checker.joint_distribution(stat1, stat2, args.n)
    if args.format == "json":
        _emit(distribution.to_json())
    elif args.format == "csv":
        _emit(distribution.to_csv())
    else:
        _emit(distribution.to_text())
    return EXIT_OK


def command_counterexample(
    args: argparse.Namespace, checker: DistributionChecker
) -> int:
    report = checker.find_counterexample(
        _parse_pair(args.pair_a), _parse_pair(args.pair_b), args.max_n
    )
    return _emit_report(report, args.format)


def command_verify(args: argparse.Namespace, checker: DistributionChecker) -> int:
    report = TheoremSuite(checker).verify(
        args.theorem,
        r=args.r,
        g=args.g,
        level=args.l,
        h=args.h,
        n=args.n,
        max_n=args.max_n,
    )
    return _emit_report(report, args.format)


def format_table1(rows: List[Table1Row], output_format: str) -> str:
    """Render the phi_7 table as text, CSV or JSON."""
    if output_format == "json":
        return json.dumps([row.model_dump() for row in rows])
    if output_format == "csv":
        header = ["c", "image"]
        for r in range(1, len(rows[0].values) + 1):
            header += [f"exc_{r}", f"den_{r}"]
        body = [
            [row.c, "".join(map(str, row.image))]
            + [value for pair in row.values for value in pair]
            for row in rows
        ]
        return _csv([header] + body)
    lines = []
    for row in rows:
        cells = " ".join(f"({exc},{den})" for exc, den in row.values)
        lines.append(f"c={row.c} {''.join(map(str, row.image))} {cells}")
    return "\n".join(lines) + "\n"


def command_table1(args: argparse.Namespace, checker: DistributionChecker) -> int:
    _emit(format_table1(checker.reproduce_table1(), args.format))
    return EXIT_OK


COMMANDS = {
    "stat": command_stat,
    "apply": command_apply,
    "invert": command_invert,
    "dist": command_dist,
    "counterexample": command_counterexample,
    "verify": command_verify,
    "table1": command_table1,
}


def run(argv: Optional[List[str]] = None) -> int:
    """
    Parse argv, dispatch one subcommand and return its exit code.

    Args:
        argv: Arguments without the program name (defaults to sys.argv[1:])

    Returns:
        0 on success or pass, 1 when a verification fails, 2 on usage errors,
        3 on an unexpected internal error
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    setup_logging(log_level=getattr(logging, args.log_level), log_file=args.log_file)

    try:
        if args.cap is not None and not 0 <= args.cap <= MAX_ENUM_CAP:
            raise RangeError(
                f"--cap must lie in 0..{MAX_ENUM_CAP}, got {args.cap}", {"cap": args.cap}
            )
        if args.workers is not None and args.workers < 1:
            raise RangeError(
                f"--workers must be at least 1, got {args.workers}",
                {"workers": args.workers},
            )
        checker = DistributionChecker(cap=args.cap, workers=args.workers)
        return COMMANDS[args.command](args, checker)
    except PermstatError as e:
        logger.debug(f"{args.command} rejected its input: {e.message}")
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as e:
        logger.exception(f"Error running {args.command}: {e}")
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_INTERNAL


def main() -> int:
    """Entry point for the permstat console script."""
    return run(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
