"""Command line: ``artifact verify <suite> [flags]`` and
``artifact report --merge <files>``.

Exit status: 0 when every hard check passes (soft checks may warn),
1 on a hard failure or an exhausted time budget, 2 on usage errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from .config import SUITES, ConfigError, default_path, load_config
from .report import EXIT_USAGE, emit, from_dict, merge
from .suites import parse_int_list, run_suite


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _flag_list(v: Optional[str]):
    return None if v is None else parse_int_list(v)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="artifact", description="Exact and numerical verification suites.", allow_abbrev=False)
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run one suite", allow_abbrev=False)
    v.add_argument("suite", choices=SUITES)
    v.add_argument("--config", help="TOML config (default: $ARTIFACT_CONFIG)")
    v.add_argument("--format", choices=("json", "csv", "text"), default="text")
    v.add_argument("--output", "-o", help="write the report here instead of stdout")
    v.add_argument("--seed", type=int)
    v.add_argument("--budget", type=float, help="time budget in seconds")
    v.add_argument("--strict", action="store_true", help="treat soft checks as hard")
    v.add_argument("--no-timings", action="store_true", help="omit runtime fields (byte-stable output)")
    # suite parameters; lists accept "2,3" or "1..20"
    v.add_argument("--n")
    v.add_argument("--nmax", type=int)
    v.add_argument("--order", type=int)
    v.add_argument("--extended", action="store_true", default=None)
    v.add_argument("--q")
    v.add_argument("--deg", type=int)
    v.add_argument("--p")
    v.add_argument("--j")
    v.add_argument("--pair", choices=("gl2-gl1", "gl3-gl2"))
    v.add_argument("--pmax", type=int)
    v.add_argument("--sweep", help="TOML file with the counting grid (kmax, ells, X, R)")
    v.add_argument("--count", type=int)
    v.add_argument("--T")
    v.add_argument("--tgrid")
    v.add_argument("--L", type=int)

    r = sub.add_parser("report", help="merge JSON reports", allow_abbrev=False)
    r.add_argument("--merge", nargs="+", required=True, metavar="FILE")
    r.add_argument("--format", choices=("json", "csv", "text"), default="json")
    r.add_argument("--output", "-o")
    return ap


def _overrides(ns: argparse.Namespace) -> dict:
    return {
        "seed": ns.seed, "budget": ns.budget, "strict": ns.strict or None,
        "n": _flag_list(ns.n), "nmax": ns.nmax, "order": ns.order, "extended": ns.extended,
        "q": ns.q, "deg": ns.deg, "p": _flag_list(ns.p), "j": _flag_list(ns.j), "pair": ns.pair,
        "pmax": ns.pmax, "sweep": ns.sweep, "count": ns.count, "T": _flag_list(ns.T),
        "tgrid": ns.tgrid, "L": ns.L,
    }


def _write(data: bytes, path: Optional[str]):
    if path:
        with open(path, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def main(argv: Optional[List[str]] = None) -> int:
    try:
        ns = build_parser().parse_args(argv)
        if ns.command == "verify":
            cfg = load_config(ns.suite, ns.config or default_path(), _overrides(ns))
            rep = run_suite(cfg)
            _write(emit(rep, ns.format, timings=not ns.no_timings), ns.output)
            return rep.exit_code()
        reports = []
        for path in ns.merge:
            try:
                with open(path) as fh:
                    reports.append(from_dict(json.load(fh)))
            except (OSError, ValueError, KeyError) as exc:
                raise UsageError(f"cannot read report {path}: {exc}") from exc
        rep = merge(reports)
        _write(emit(rep, ns.format), ns.output)
        return rep.exit_code()
    except (UsageError, ConfigError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
