"""Command-line front end.

Exit codes: 0 success, 1 unreadable or malformed input, 2 invalid
diagram or non-transitive / non-homomorphic Shapiro input, 3 a size cap
was exceeded, 4 a torus relation check failed.
"""

from __future__ import annotations

import argparse
import enum
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from . import shapiro, torus_skein
from .stabilizer import DEFAULT_QPRIME_CAP, InvalidGraph, SizeLimit, h1_stabilizer
from .surface import GluingGraph, NonIntegralGenus, SurfaceError, validate

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INVALID = 2
EXIT_SIZE = 3
EXIT_RELATION = 4


class Command(enum.Enum):
    H1 = "h1"
    SHAPIRO = "shapiro"
    TORUS_VERIFY = "torus-verify"


@dataclass(frozen=True)
class JobSpec:
    command: Command
    input_path: Path | None = None
    options: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.command in (Command.H1, Command.SHAPIRO) and self.input_path is None:
            raise ValueError(f"{self.command.value} needs an input file")
        if self.command is Command.TORUS_VERIFY and self.input_path is not None:
            raise ValueError("torus-verify takes no input file")

    @property
    def details(self) -> bool:
        return bool(self.options.get("details", False))

    @property
    def qprime_cap(self) -> int:
        return int(self.options.get("qprime_cap", DEFAULT_QPRIME_CAP))

    @property
    def group_cap(self) -> int:
        return int(self.options.get("group_cap", shapiro.DEFAULT_GROUP_CAP))


class InputError(Exception):
    pass


def _emit(report: dict) -> None:
    sys.stdout.write(json.dumps(report, sort_keys=True) + "\n")


def _fail(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return EXIT_INPUT


def _load_json(path: Path) -> Any:
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON: {exc}") from None


def run_h1(job: JobSpec) -> int:
    try:
        data = _load_json(job.input_path)
        if not isinstance(data, dict):
            raise InputError("top level must be an object")
        graph = GluingGraph.from_json(data)
    except InputError as exc:
        return _fail(str(exc))
    except SurfaceError as exc:
        return _fail(str(exc))
    violations = validate(graph)
    if violations:
        _emit({"valid": False, "violations": [v.to_json() for v in violations]})
        return EXIT_INVALID
    try:
        report = h1_stabilizer(graph, qprime_cap=job.qprime_cap)
    except NonIntegralGenus as exc:
        _emit({"valid": False, "violations": [{"code": "non-integral genus", "detail": str(exc)}]})
        return EXIT_INVALID
    except InvalidGraph as exc:
        _emit({"valid": False, "violations": [v.to_json() for v in exc.violations]})
        return EXIT_INVALID
    except SizeLimit as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SIZE
    _emit(report.to_json(details=job.details))
    return EXIT_OK


def _parse_coefficients(raw) -> shapiro.Coefficients:
    if raw in ("Q", "q"):
        return shapiro.Coefficients.rationals()
    if isinstance(raw, dict) and set(raw) == {"mod"} and isinstance(raw["mod"], int):
        return shapiro.Coefficients.mod(raw["mod"])
    raise InputError(f"coefficients must be \"Q\" or {{\"mod\": m}}, got {raw!r}")


def run_shapiro(job: JobSpec) -> int:
    try:
        data = _load_json(job.input_path)
        if not isinstance(data, dict):
            raise InputError("top level must be an object")
        try:
            degree = data["degree"]
            gens = data["generators"]
            base = data["base_point"]
        except KeyError as exc:
            raise InputError(f"missing field {exc.args[0]!r}") from None
        if not isinstance(degree, int) or degree < 1:
            raise InputError("degree must be a positive integer")
        if not isinstance(base, int) or not 1 <= base <= degree:
            raise InputError(f"base_point must be in 1..{degree}")
        if not isinstance(gens, list) or not all(isinstance(g, str) for g in gens):
            raise InputError("generators must be a list of cycle strings")
        coeffs = _parse_coefficients(data.get("coefficients", "Q"))
        raw_hom = data.get("hom", {})
        if not isinstance(raw_hom, dict):
            raise InputError("hom must map cycle strings to values")
        try:
            perms = [shapiro.parse_cycles(g, degree) for g in gens]
            images = {shapiro.parse_cycles(k, degree): coeffs.norm(v) for k, v in raw_hom.items()}
        except (ValueError, TypeError, ZeroDivisionError) as exc:
            raise InputError(str(exc)) from None
    except InputError as exc:
        return _fail(str(exc))

    D = base - 1
    try:
        action = shapiro.FiniteAction.generate(perms, degree, cap=job.group_cap)
    except shapiro.GroupTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SIZE
    try:
        hom = shapiro.hom_from_images(action, D, images, coeffs)
        table = shapiro.extend(action, D, hom, coeffs)
        verdict = shapiro.is_coboundary(table, D)
        count = shapiro.h1_dimension_report(action, D, coeffs)
    except (shapiro.NotTransitive, shapiro.NotAHomomorphism) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    report = {
        "coefficients": coeffs.describe(),
        "cocycle_valid": shapiro.verify_cocycle(table),
        "table_digest": table.digest(),
        "h1_count": count.h1_count,
        "group_order": action.order,
        "stabilizer_order": count.stabilizer_order,
        "restriction": {shapiro.format_cycles(h): coeffs.to_json(v) for h, v in sorted(hom.items())},
    }
    report.update(verdict.to_json(coeffs))
    if count.brute_force is not None:
        report["brute_force"] = {"cocycles": count.brute_force[0], "coboundaries": count.brute_force[1]}
    _emit(report)
    return EXIT_OK


def run_torus_verify(job: JobSpec) -> int:
    u = torus_skein.TorusCocycle.standard()
    try:
        if "u_alpha" in job.options:
            u = torus_skein.TorusCocycle(torus_skein.parse_skein(job.options["u_alpha"]), u.u_beta)
        if "u_beta" in job.options:
            u = torus_skein.TorusCocycle(u.u_alpha, torus_skein.parse_skein(job.options["u_beta"]))
    except ValueError as exc:
        return _fail(str(exc))
    rel = torus_skein.check_relations(u, strict=False)
    cert = torus_skein.noncoboundary_certificate(u)
    report = {
        "braid_matrix": rel["braid_matrix"],
        "braid_cocycle": rel["braid_cocycle"],
        "order6_matrix": rel["order6_matrix"],
        "order6_cocycle": rel["order6_cocycle"],
        "noncoboundary": cert["noncoboundary"],
        "alpha_coefficient": cert["alpha_coefficient"],
    }
    _emit(report)
    failed = [k for k, v in report.items() if v is False]
    if failed:
        print("relation check failed: " + ", ".join(failed), file=sys.stderr)
        return EXIT_RELATION
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # usage errors count as malformed input, keeping 2 for invalid diagrams
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mcgcohom", description="Stabilizer homology and skein cocycle checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    h1 = sub.add_parser("h1", help="rational H_1 of a multicurve stabilizer from a gluing graph")
    h1.add_argument("path", type=Path)
    h1.add_argument("--details", action="store_true", help="include per-component data")
    h1.add_argument("--qprime-cap", type=int, default=DEFAULT_QPRIME_CAP)

    sh = sub.add_parser("shapiro", help="extend a stabilizer homomorphism to a cocycle and classify it")
    sh.add_argument("path", type=Path)
    sh.add_argument("--group-cap", type=int, default=shapiro.DEFAULT_GROUP_CAP)

    tv = sub.add_parser("torus-verify", help="check the torus cocycle relations and certificate")
    tv.add_argument("--u-alpha", help="override the value on tau_alpha, e.g. 'alpha - beta'")
    tv.add_argument("--u-beta", help="override the value on tau_beta")
    return parser


def job_from_args(args: argparse.Namespace) -> JobSpec:
    command = Command(args.command)
    if command is Command.H1:
        return JobSpec(command, args.path, {"details": args.details, "qprime_cap": args.qprime_cap})
    if command is Command.SHAPIRO:
        return JobSpec(command, args.path, {"group_cap": args.group_cap})
    opts = {}
    if args.u_alpha is not None:
        opts["u_alpha"] = args.u_alpha
    if args.u_beta is not None:
        opts["u_beta"] = args.u_beta
    return JobSpec(command, None, opts)


RUNNERS = {Command.H1: run_h1, Command.SHAPIRO: run_shapiro, Command.TORUS_VERIFY: run_torus_verify}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    job = job_from_args(args)
    return RUNNERS[job.command](job)


if __name__ == "__main__":
    sys.exit(main())
