"""Command-line driver: counting runs, verification suites, and data dumps.

Every command prints a single report.  JSON output is deterministic
(sorted keys, floats rounded to twelve digits), so repeated runs of the
same command are byte-identical.  Exit codes:

    0   the run completed and every check passed
    1   usage error (bad flags, bad labels, bad parameters)
    2   a verification check failed; the failing rows are in the report
        (and echoed to stderr as JSON when the format is not json)
    3   the request falls outside the covered range

The environment variable DUALCOUNT_MAX_ORDER lowers the default series
truncation order wherever a command does not fix one explicitly.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
from dataclasses import dataclass

from . import affine, lattice, series
from .counting import (Target, count_homs, count_row, sector_row,
                       verify_swap_equivalence)
from .errors import NotCoveredError
from .grouprep import GroupSpec, irrep_table_json
from .mckay import mckay_json

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAIL = 2
EXIT_UNSUPPORTED = 3

SUITES = ("duality", "refined", "identities", "zn-lattice", "smatrix", "oracle")
FORMATS = ("json", "csv", "text")

DUALITY_PAIRS = {
    "sp-so": ("Sp", "SO_odd"),
    "su-pu": ("SU", "PU"),
    "psp-spin": ("PSp", "Spin_odd"),
}

# the standard sweep: all cyclic groups to order 12, binary dihedral to
# index 6, and the three exceptional binary polyhedral groups
DEFAULT_GAMMAS = (
    tuple(f"Z:{m}" for m in range(1, 13))
    + tuple(f"Dhat:{m}" for m in range(2, 7))
    + ("That", "Ohat", "Ihat"))

# cyclic adjoint-side counts grow as order**n, so the psp-spin sweep keeps
# to the exceptional groups; the cyclic case is the zn-lattice suite's job
PAIR_DEFAULT_GAMMAS = {
    "sp-so": DEFAULT_GAMMAS,
    "su-pu": DEFAULT_GAMMAS,
    "psp-spin": ("That", "Ohat", "Ihat"),
}

FIXED_IDENTITY_RUNS = (
    ("KF1", "1;1;3;1,1,1"),
    ("KF1", "2;1,2;2;1,2"),
    ("KF1", "4;1,3,2,2;2;2,4"),
    ("KF2", "2;1;3,2;1,2,2;1,1"),
    ("KF2", "4;1,2;1,1;2;1"),
    ("KF3", "1;2,2,0,0;2,2;1,1;;"),
    ("KF4", "1,2;1;2"),
)

# default grid for the S-matrix suite; E7 is opt-in and E8 out of range
SMATRIX_GRID = tuple(
    [(f"A{r}", n) for r in range(1, 5) for n in range(1, 5)]
    + [(t, n) for t in ("D4", "D5") for n in (1, 2)]
    + [("E6", n) for n in (1, 2)])

# spot checks with independently computed values
ORACLE_COUNTS = (
    ("That", "Sp", 1, 3),
    ("That", "Sp", 2, 7),
    ("That", "Spin_odd", 1, 3),
    ("Ohat", "Sp", 1, 4),
    ("Ohat", "SO_odd", 1, 4),
    ("Ohat", "Spin_odd", 1, 4),
    ("Ohat", "PSp", 1, 4),
    ("Ohat", "Spin_odd", 0, 2),
    ("Ohat", "PSp", 0, 2),
    ("Z:1", "U", 5, 1),
    ("Z:2", "SU", 2, 2),
    ("Z:2", "PU", 2, 2),
    ("Z:3", "SO_odd", 1, 2),
    ("Z:4", "Sp", 1, 3),
    ("Z:4", "PU", 2, 3),
)

ORACLE_GENFUN_GAMMAS = ("Z:1", "Z:2", "Z:3", "Z:4", "Dhat:2", "Dhat:3",
                        "That", "Ohat", "Ihat")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    """Everything one invocation does, as plain data.

    parse_args and to_argv are mutually inverse on configurations built by
    parse_args, so runs can be logged and replayed.
    """

    command: str
    fmt: str = "json"
    gamma: str | None = None
    target: str | None = None
    n: int | None = None
    n_range: tuple[int, int] | None = None
    family: str | None = None
    token: str | None = None
    order: int | None = None
    ade_type: str | None = None
    level: int | None = None
    digits: int | None = None
    suite: str | None = None
    pair: str | None = None
    prop: str | None = None
    params: str | None = None
    max_n: int | None = None
    max_rank: int | None = None
    random_draws: int | None = None
    seed: int = 0
    enable_e7_smatrix: bool = False


# -- argument parsing -------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad usage; the exit-code contract
    # reserves 2 for verification failures, so route errors through our own
    # exception and let main() map them to exit 1
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dualcount", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--format", dest="fmt", choices=FORMATS, default="json")
        return p

    p = add("count", "count conjugacy classes of homomorphisms")
    p.add_argument("--gamma", required=True, help="source group, e.g. Z:7, Dhat:3, Ohat")
    p.add_argument("--target", required=True, help="target family, e.g. Sp, SO_odd, PU")
    p.add_argument("--n", type=int)
    p.add_argument("--n-range", dest="n_range", help="inclusive range lo:hi")

    p = add("sectors", "fixed/moved class counts of the two-torsion sectors")
    p.add_argument("--gamma", default="Ohat")
    p.add_argument("--family", required=True, choices=("Sp", "Spin_odd"))
    p.add_argument("--n", type=int, required=True)

    p = add("irreps", "irreducible character table of a source group")
    p.add_argument("--gamma", required=True)

    p = add("mckay", "McKay graph of a source group")
    p.add_argument("--gamma", required=True)

    p = add("genfun", "coefficients of a built-in generating function")
    p.add_argument("--gamma", required=True)
    p.add_argument("--token", default="Sp",
                   help="series token: Sp, SO_odd, or refined:e,m:Sp|Spin")
    p.add_argument("--order", type=int, help="truncation order (default env-capped 24)")

    p = add("smatrix", "modular S-matrix of an affine algebra at a level")
    p.add_argument("--type", dest="ade_type", required=True, help="e.g. A3, D4, E6")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--digits", type=int, default=12)
    p.add_argument("--enable-e7-smatrix", action="store_true",
                   help="allow the large E7 Weyl sums")

    p = add("verify", "run a verification suite")
    p.add_argument("suite", choices=SUITES)
    p.add_argument("--gamma", help="restrict to one source group")
    p.add_argument("--pair", help="duality: sp-so, su-pu, psp-spin or all; "
                                  "zn-lattice: a pair label like Sp(2)/SO(5)")
    p.add_argument("--prop", help="identities: run a single named identity")
    p.add_argument("--params", help="identities: parameter string for --prop")
    p.add_argument("--random", dest="random_draws", type=int,
                   help="identities: random draws per parametrized family")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-n", dest="max_n", type=int)
    p.add_argument("--max-rank", dest="max_rank", type=int)
    p.add_argument("--type", dest="ade_type", help="smatrix: restrict to one type")
    p.add_argument("--enable-e7-smatrix", action="store_true")
    return parser


def _parse_pair_of_ints(text: str) -> tuple[int, int]:
    try:
        lo_text, hi_text = text.split(":")
        lo, hi = int(lo_text), int(hi_text)
    except ValueError:
        raise UsageError(f"could not parse range {text!r}; expected lo:hi") from None
    if lo < 0 or hi < lo:
        raise UsageError("range must satisfy 0 <= lo <= hi")
    return lo, hi


def parse_args(argv=None) -> RunConfig:
    ns = build_parser().parse_args(argv)
    values = vars(ns)
    if values.get("n_range") is not None:
        values["n_range"] = _parse_pair_of_ints(values["n_range"])
    if ns.command == "count":
        if (values.get("n") is None) == (values.get("n_range") is None):
            raise UsageError("count needs exactly one of --n and --n-range")
    defaults = {f.name for f in RunConfig.__dataclass_fields__.values()}
    assert set(values) <= defaults, sorted(set(values) - defaults)
    return RunConfig(**values)


def to_argv(cfg: RunConfig) -> list[str]:
    argv = [cfg.command]
    if cfg.command == "verify":
        argv.append(cfg.suite)

    def opt(flag, value):
        if value is not None:
            argv.extend([flag, str(value)])

    opt("--gamma", cfg.gamma)
    opt("--target", cfg.target)
    opt("--n", cfg.n)
    if cfg.n_range is not None:
        argv.extend(["--n-range", f"{cfg.n_range[0]}:{cfg.n_range[1]}"])
    opt("--family", cfg.family)
    opt("--token", cfg.token)
    opt("--order", cfg.order)
    opt("--type", cfg.ade_type)
    opt("--level", cfg.level)
    opt("--digits", cfg.digits)
    opt("--pair", cfg.pair)
    opt("--prop", cfg.prop)
    opt("--params", cfg.params)
    opt("--random", cfg.random_draws)
    if cfg.seed:
        argv.extend(["--seed", str(cfg.seed)])
    opt("--max-n", cfg.max_n)
    opt("--max-rank", cfg.max_rank)
    if cfg.enable_e7_smatrix:
        argv.append("--enable-e7-smatrix")
    if cfg.fmt != "json":
        argv.extend(["--format", cfg.fmt])
    return argv


# -- commands -------------------------------------------------------------


def _series_default_order(cap: int) -> int:
    # an explicit DUALCOUNT_MAX_ORDER wins over the built-in default
    if os.environ.get("DUALCOUNT_MAX_ORDER"):
        return series.max_order()
    return cap


def _run_count(cfg: RunConfig):
    g = GroupSpec.from_label(cfg.gamma)
    ns = [cfg.n] if cfg.n is not None else range(cfg.n_range[0], cfg.n_range[1] + 1)
    rows = [count_row(g, Target(cfg.target, n)) for n in ns]
    return {"command": "count", "rows": rows}, EXIT_OK


def _run_sectors(cfg: RunConfig):
    g = GroupSpec.from_label(cfg.gamma)
    rows = [sector_row(g, cfg.family, cfg.n, w) for w in (0, 1)]
    return {"command": "sectors", "family": cfg.family, "rows": rows}, EXIT_OK


def _run_irreps(cfg: RunConfig):
    g = GroupSpec.from_label(cfg.gamma)
    return {"command": "irreps", **irrep_table_json(g)}, EXIT_OK


def _run_mckay(cfg: RunConfig):
    g = GroupSpec.from_label(cfg.gamma)
    return {"command": "mckay", "gamma": g.label, **mckay_json(g)}, EXIT_OK


def _run_genfun(cfg: RunConfig):
    g = GroupSpec.from_label(cfg.gamma)
    order = cfg.order if cfg.order is not None else _series_default_order(24)
    tree = series.builtin_genfun(g, cfg.token)
    coeffs = series.expand(tree, order).integer_coeffs()
    return {"command": "genfun", "gamma": g.label, "token": cfg.token,
            "order": order, "coefficients": list(coeffs)}, EXIT_OK


def _run_smatrix(cfg: RunConfig):
    sm = affine.s_matrix(cfg.ade_type, cfg.level,
                         enable_e7=cfg.enable_e7_smatrix)
    payload = affine.smatrix_json(sm, digits=cfg.digits or 12)
    return {"command": "smatrix", **payload}, EXIT_OK


# -- verification suites -------------------------------------------------------------


def _suite_duality(cfg: RunConfig):
    if cfg.pair in (None, "all"):
        names = tuple(DUALITY_PAIRS)
    elif cfg.pair in DUALITY_PAIRS:
        names = (cfg.pair,)
    else:
        raise ValueError(
            f"unknown duality pair {cfg.pair!r}; choose from "
            f"{tuple(DUALITY_PAIRS)} or all")
    max_n = cfg.max_n if cfg.max_n is not None else 10
    checks = skipped = 0
    failures = []
    for name in names:
        left_family, right_family = DUALITY_PAIRS[name]
        gammas = (cfg.gamma,) if cfg.gamma else PAIR_DEFAULT_GAMMAS[name]
        for glabel in gammas:
            g = GroupSpec.from_label(glabel)
            for n in range(0, max_n + 1):
                try:
                    left = count_homs(g, Target(left_family, n))
                    right = count_homs(g, Target(right_family, n))
                except NotCoveredError:
                    skipped += 1
                    continue
                checks += 1
                if left != right:
                    failures.append({"suite": "duality", "pair": name,
                                     "gamma": g.label, "n": n,
                                     "left": left, "right": right})
    return checks, skipped, failures


def _suite_refined(cfg: RunConfig):
    gammas = (cfg.gamma,) if cfg.gamma else ("Ohat",)
    max_n = cfg.max_n if cfg.max_n is not None else 6
    checks = skipped = 0
    failures = []
    for glabel in gammas:
        g = GroupSpec.from_label(glabel)
        # the unitary refinement needs a nonempty weight lattice, so n >= 1
        plans = [(("Sp", "Spin_odd"), 0), (("SU", "PU"), 1)]
        for pair, start in plans:
            for n in range(start, max_n + 1):
                try:
                    rep = verify_swap_equivalence(g, pair, n)
                except NotCoveredError:
                    skipped += 1
                    continue
                checks += 1
                if not rep["equivalent"]:
                    failures.append({"suite": "refined", **rep})
    return checks, skipped, failures


def _propy_order() -> int:
    return _series_default_order(200)


def _suite_identities(cfg: RunConfig):
    if cfg.prop:
        runs = [(cfg.prop, cfg.params)]
    elif cfg.random_draws:
        rng = random.Random(cfg.seed)
        runs = [(fam, series.random_identity_params(fam, rng))
                for fam in ("KF1", "KF2", "KF3", "KF4")
                for _ in range(cfg.random_draws)]
    else:
        runs = list(FIXED_IDENTITY_RUNS) + [("PropX", None), ("PropA", None),
                                            ("PropY", None)]
    checks = 0
    failures = []
    for name, params in runs:
        if name == "PropY":
            # no closed rational form on the zero side: compare series deep
            rep = series.prove_identity(name, params, method="series",
                                        order=_propy_order())
        else:
            rep = series.prove_identity(name, params)
        checks += 1
        if rep["verdict"] != "proven":
            failures.append({"suite": "identities", **rep})
    return checks, 0, failures


def _suite_zn(cfg: RunConfig):
    max_rank = cfg.max_rank if cfg.max_rank is not None else 4
    max_n = cfg.max_n if cfg.max_n is not None else 4
    pairs = (cfg.pair,) if cfg.pair else lattice.dual_pairs(max_rank)
    checks = 0
    failures = []
    for pair in pairs:
        for n in range(1, max_n + 1):
            row = lattice.zn_duality_row(pair, n)
            checks += 1
            if not row["equal"]:
                failures.append({"suite": "zn-lattice", **row})
    return checks, 0, failures


def _suite_smatrix(cfg: RunConfig):
    if cfg.ade_type:
        levels = range(1, (cfg.max_n if cfg.max_n is not None else 2) + 1)
        grid = [(cfg.ade_type, n) for n in levels]
    else:
        grid = SMATRIX_GRID
    checks = 0
    failures = []
    for ade_type, level in grid:
        sm = affine.s_matrix(ade_type, level, enable_e7=cfg.enable_e7_smatrix)
        _, _, conj_err = affine.charge_conjugation(sm)
        rep = affine.verify_s_conjugation(ade_type, level,
                                          enable_e7=cfg.enable_e7_smatrix)
        errors = {
            "unitarity": affine.unitarity_error(sm),
            "symmetry": affine.symmetry_error(sm),
            "conjugation_permutation": conj_err,
            "center_action": rep["max_abs_error"],
        }
        checks += 1
        if not rep["holds"] or max(errors.values()) >= affine.TOLERANCE:
            failures.append({"suite": "smatrix", "type": ade_type,
                             "level": level, "holds": rep["holds"],
                             "errors": {k: float(v) for k, v in errors.items()}})
    return checks, 0, failures


def _suite_oracle(cfg: RunConfig):
    max_n = cfg.max_n if cfg.max_n is not None else 8
    checks = skipped = 0
    failures = []

    def record(glabel, token, n, expected, got):
        nonlocal checks
        checks += 1
        if expected != got:
            failures.append({"suite": "oracle", "gamma": glabel,
                             "target": token, "n": n,
                             "expected": expected, "got": got})

    for glabel, family, n, expected in ORACLE_COUNTS:
        g = GroupSpec.from_label(glabel)
        record(glabel, family, n, expected, count_homs(g, Target(family, n)))

    # generating function coefficients against direct enumeration
    for glabel in ORACLE_GENFUN_GAMMAS:
        g = GroupSpec.from_label(glabel)
        try:
            sp = series.expand(series.builtin_genfun(g, "Sp"),
                               2 * max_n).integer_coeffs()
            so = series.expand(series.builtin_genfun(g, "SO_odd"),
                               2 * max_n + 1).integer_coeffs()
        except NotCoveredError:
            skipped += 1
            continue
        for n in range(max_n + 1):
            record(glabel, "Sp", n, count_homs(g, Target("Sp", n)), sp[2 * n])
            record(glabel, "SO_odd", n,
                   count_homs(g, Target("SO_odd", n)), so[2 * n + 1])
        # the two series live on opposite parities
        record(glabel, "Sp", -1, [0] * max_n, [sp[2 * i + 1] for i in range(max_n)])
        record(glabel, "SO_odd", -1, [0] * (max_n + 1),
               [so[2 * i] for i in range(max_n + 1)])
    return checks, skipped, failures


_SUITE_RUNNERS = {
    "duality": _suite_duality,
    "refined": _suite_refined,
    "identities": _suite_identities,
    "zn-lattice": _suite_zn,
    "smatrix": _suite_smatrix,
    "oracle": _suite_oracle,
}


def _run_verify(cfg: RunConfig):
    checks, skipped, failures = _SUITE_RUNNERS[cfg.suite](cfg)
    report = {"command": "verify", "suite": cfg.suite, "checks": checks,
              "skipped": skipped, "failures": failures}
    return report, (EXIT_OK if not failures else EXIT_FAIL)


_COMMANDS = {
    "count": _run_count,
    "sectors": _run_sectors,
    "irreps": _run_irreps,
    "mckay": _run_mckay,
    "genfun": _run_genfun,
    "smatrix": _run_smatrix,
    "verify": _run_verify,
}


def run(cfg: RunConfig):
    """Execute a configuration; returns (report, exit_status)."""
    return _COMMANDS[cfg.command](cfg)


# -- output -------------------------------------------------------------


def _round_floats(obj):
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, float):
        return round(obj, 12) + 0.0
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v) for v in obj]
    return obj


def _cell(value):
    if isinstance(value, (dict, list, tuple)):
        return json.dumps(_round_floats(value), sort_keys=True)
    if isinstance(value, float):
        return repr(_round_floats(value))
    return value


def render(report: dict, fmt: str) -> str:
    """One deterministic string per report; no trailing newline."""
    if fmt == "json":
        return json.dumps(_round_floats(report), sort_keys=True)
    rows = report.get("rows", report.get("failures", []))
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        columns = sorted({key for row in rows for key in row})
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_cell(row.get(c, "")) for c in columns])
        return buf.getvalue().rstrip("\n")
    lines = []
    for key in sorted(report):
        if key in ("rows", "failures"):
            continue
        lines.append(f"{key}: {_cell(report[key])}")
    if "failures" in report:
        lines.append(f"failures: {len(report['failures'])}")
    for row in rows:
        lines.append("  " + " ".join(f"{k}={_cell(row[k])}" for k in sorted(row)))
    return "\n".join(lines)


def main(argv=None) -> int:
    try:
        cfg = parse_args(argv)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    try:
        report, status = run(cfg)
    except NotCoveredError as e:
        print(str(e), file=sys.stderr)
        return EXIT_UNSUPPORTED
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    print(render(report, cfg.fmt))
    if status == EXIT_FAIL and cfg.fmt != "json":
        print(json.dumps(_round_floats(report["failures"]), sort_keys=True),
              file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
