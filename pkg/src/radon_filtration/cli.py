"""Command-line front end: decompose, spherical, verify, count.

Exit codes: 0 success, 1 usage error, 2 an exact check failed.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from . import closed_forms as cf
from . import counting
from .errors import InconsistencyError, ParameterError
from .matrix import format_rational
from .operators import make_geometry
from .spectral_oracle import decompose_dual_level, decompose_level, spherical_from_projector
from .verify import CHECKS, run_suite

EXIT_OK, EXIT_USAGE, EXIT_INCONSISTENT = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class RunConfig:
    command: str
    family: str
    n: Optional[int]
    s: Optional[int]
    q: Optional[int]
    fmt: str
    out: Optional[str]
    checks: tuple[str, ...]
    jobs: int
    kind: Optional[str]

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        cfg = cls(
            args.command,
            args.family,
            args.n,
            args.s,
            args.q,
            args.format,
            args.out,
            tuple(c for c in (args.check or []) if c),
            args.jobs,
            getattr(args, "kind", None),
        )
        cfg.validate()
        return cfg

    def validate(self) -> None:
        if self.jobs < 1:
            raise ParameterError("--jobs must be at least 1")
        if self.family == "subset" and self.q is not None:
            raise ParameterError("--q applies to the subspace family only")
        if self.command == "verify":
            return
        if self.n is None:
            raise ParameterError(f"{self.command} needs --n")
        if self.family == "all":
            raise ParameterError(f"{self.command} needs --family subset or subspace")
        if self.family == "subspace" and self.q is None:
            raise ParameterError("the subspace family needs --q")
        if self.command in ("decompose", "spherical"):
            if self.s is None:
                raise ParameterError(f"{self.command} needs --s")
            if not 0 <= self.s <= self.n:
                raise ParameterError(f"--s must lie in 0..{self.n}")
        if self.family == "subset" and self.n > 12:
            raise ParameterError("subset levels are limited to n <= 12 here")


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _csv(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def cmd_decompose(cfg: RunConfig) -> int:
    g = make_geometry(cfg.family, cfg.n, cfg.q)
    # levels above n/2 go through the filtration of the paired level
    report = decompose_level(g, cfg.s) if 2 * cfg.s <= cfg.n else decompose_dual_level(g, cfg.n - cfg.s)
    if cfg.fmt == "json":
        _emit(_json(report.to_json()), cfg.out)
    else:
        rows = [
            [c.t, c.dimension, c.expected_dimension, format_rational(c.eigenvalue), " ".join(format_rational(x) for x in c.profile)]
            for c in report.components
        ]
        _emit(_csv(["t", "dimension", "expected_dimension", "eigenvalue", "profile"], rows), cfg.out)
    return EXIT_OK if report.consistent else EXIT_INCONSISTENT


def cmd_spherical(cfg: RunConfig) -> int:
    dual = 2 * cfg.s > cfg.n
    s = cfg.n - cfg.s if dual else cfg.s
    table = cf.spherical_table(cfg.family, cfg.n, s, cfg.q)
    payload = table.to_json()
    payload["level"] = cfg.s
    verdict = None
    if cfg.checks:
        g = make_geometry(cfg.family, cfg.n, cfg.q)
        oracle = [spherical_from_projector(g, s, t, dual) for t in range(s + 1)]
        verdict = oracle == table.values()
        payload["oracle"] = [{"t": t, "values": [format_rational(x) for x in row]} for t, row in enumerate(oracle)]
        payload["equal"] = verdict
    if cfg.fmt == "json":
        _emit(_json(payload), cfg.out)
    else:
        text = table.to_csv()
        if verdict is not None:
            text += f"# oracle_equal,{str(verdict).lower()}\n"
        _emit(text, cfg.out)
    return EXIT_INCONSISTENT if verdict is False else EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    result = run_suite(cfg.family, cfg.n, cfg.q, list(cfg.checks) or None, cfg.jobs)
    _emit(_json(result.to_json()) if cfg.fmt == "json" else result.to_csv(), cfg.out)
    summary = result.summary()
    print(
        f"{summary['pass']} pass, {summary['fail']} fail, {summary['paper-discrepancy']} paper-discrepancy",
        file=sys.stderr,
    )
    return EXIT_OK if result.ok else EXIT_INCONSISTENT


def cmd_count(cfg: RunConfig) -> int:
    kind = cfg.kind or "Omega"
    if cfg.family == "subspace" and kind in counting.LADDER_KINDS:
        kind += "_q"
    rows = counting.count_table(kind, cfg.n, cfg.s, cfg.q)
    if cfg.fmt == "json":
        _emit(_json({"kind": kind, "rows": [r.to_json() for r in rows]}), cfg.out)
    else:
        keys = list(rows[0].to_json()) if rows else []
        _emit(_csv(keys, [[_cell(r.to_json()[k]) for k in keys] for r in rows]), cfg.out)
    return EXIT_OK if all(r.agrees for r in rows) else EXIT_INCONSISTENT


def _cell(x):
    if isinstance(x, bool):
        return str(x).lower()
    return "" if x is None else x


COMMANDS = {"decompose": cmd_decompose, "spherical": cmd_spherical, "verify": cmd_verify, "count": cmd_count}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="radon-filtration", description="Exact spectral decompositions of subset and subspace lattices.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--family", choices=["subset", "subspace", "all"], default="subset")
        p.add_argument("--n", type=int)
        p.add_argument("--s", type=int)
        p.add_argument("--q", type=int)
        p.add_argument("--format", choices=["json", "csv"], default="json")
        p.add_argument("--out", metavar="PATH")
        p.add_argument(
            "--check",
            action="append",
            nargs="?",
            const="oracle",
            metavar="NAME",
            help=f"verify: restrict to check groups ({', '.join(CHECKS)}); spherical: compare with the oracle",
        )
        p.add_argument("--jobs", type=int, default=1)
        if name == "count":
            p.add_argument("--kind", choices=list(counting.KINDS), default="Omega")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig.from_args(args)
        return COMMANDS[cfg.command](cfg)
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InconsistencyError as exc:
        print(f"inconsistency: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT


if __name__ == "__main__":
    sys.exit(main())
