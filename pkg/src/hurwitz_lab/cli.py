"""Batch entry point: ``hurwitz-lab <command> --group S3 --class-rep "(12)" ...``.

Every command writes one JSON report (``<command>.json``) and, with
``--format csv``, the tabular parts as CSV files next to it. Without ``--out``
the report goes to stdout. Exit status: 0 clean, 2 configuration error,
3 budget hit (partial report), 4 finding (a checked property failed).
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
import time
from dataclasses import asdict, dataclass
from fractions import Fraction
from pathlib import Path

from . import __version__
from .braids import (
    BR,
    PBR,
    GradedComponentRing,
    check_lift_iso_on_pi0,
    enumerate_orbits,
    find_central_stabilizer,
    scan_nc,
)
from .characters import hilbert_poly_fit, multiplicity_stability_report
from .errors import BudgetExceeded, FindingError, HurwitzLabError
from .fic import generation_rows, pi0_module
from .groups import (
    ConjClassSet,
    FiniteGroup,
    builtin_group,
    conjugation_quandle,
    is_connected_quandle,
    is_non_splitting,
    load_cayley_table,
)
from .koszul import (
    DEFAULT_BASIS_LIMIT,
    build_koszul,
    homology_dims,
    low_degree_vanishing_check,
    vanishing_threshold_scan,
)

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_BUDGET = 3
EXIT_FINDING = 4

COMMANDS = ("group", "orbits", "koszul", "decompose", "fic", "dossier")


class ConfigError(HurwitzLabError):
    pass


def code_version() -> str:
    """Digest of the package sources, so reports pin the code that made them."""
    h = hashlib.sha256(__version__.encode())
    root = Path(__file__).resolve().parent
    for path in sorted(root.glob("*.py")):
        h.update(path.name.encode())
        h.update(path.read_bytes())
    return h.hexdigest()[:16]


@dataclass(frozen=True)
class RunConfig:
    command: str
    group: str
    class_rep: str
    nmax: int = 6
    nmax_koszul: int = 4
    nmax_fic: int = 4
    max_degree: int = 2
    budget_basis: int = DEFAULT_BASIS_LIMIT
    budget_seconds: float | None = None
    out: str | None = None
    format: str = "json"

    def validate(self):
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        for name in ("nmax", "nmax_koszul", "nmax_fic"):
            if getattr(self, name) < 0:
                raise ConfigError(f"--{name.replace('_', '-')} must be >= 0")
        if self.max_degree < -1:
            raise ConfigError("--max-degree must be >= -1")
        if self.budget_basis <= 0:
            raise ConfigError("--budget-basis must be positive")
        if self.budget_seconds is not None and self.budget_seconds <= 0:
            raise ConfigError("--budget-seconds must be positive")
        if self.format not in ("json", "csv"):
            raise ConfigError("--format must be json or csv")

    def echo(self) -> dict:
        # the output location does not change results, so it stays out of the report
        d = asdict(self)
        d.pop("out")
        return d


def resolve_group(name: str) -> FiniteGroup:
    if os.path.isfile(name):
        try:
            return load_cayley_table(name)
        except (OSError, ValueError, HurwitzLabError) as exc:
            raise ConfigError(f"cannot read Cayley table {name!r}: {exc}") from None
    try:
        return builtin_group(name)
    except (ValueError, HurwitzLabError) as exc:
        raise ConfigError(f"group {name!r} is neither a file nor a builtin: {exc}") from None


def resolve_class(G: FiniteGroup, rep: str) -> ConjClassSet:
    try:
        x = G.element_index(rep)
    except HurwitzLabError as exc:
        raise ConfigError(f"class representative: {exc}") from None
    if x == G.identity:
        raise ConfigError("the identity class is not allowed")
    return G.conjugacy_class(x)


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else int(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, frozenset):
        return sorted(_jsonable(v) for v in x)
    return x


def _csv_text(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


class Run:
    """Collects report sections, CSV tables and the exit status of one command."""

    def __init__(self, cfg: RunConfig, G: FiniteGroup, c: ConjClassSet):
        self.cfg = cfg
        self.G = G
        self.c = c
        self.sections: dict = {}
        self.tables: dict = {}
        self.findings: list[str] = []
        self.budget_hits: list[str] = []
        self.start = time.monotonic()

    def out_of_time(self) -> bool:
        s = self.cfg.budget_seconds
        return s is not None and time.monotonic() - self.start > s

    def section(self, name: str, fn):
        """Run one task; budget and finding exceptions become flagged sections."""
        if self.out_of_time():
            self.budget_hits.append(name)
            self.sections[name] = {"status": "skipped", "reason": "time budget", "conclusive": False}
            return None
        try:
            value = fn()
        except BudgetExceeded as exc:
            self.budget_hits.append(name)
            self.sections[name] = {"status": "budget", "reason": str(exc), "conclusive": False}
            return None
        except FindingError as exc:
            self.findings.append(f"{name}: {exc}")
            self.sections[name] = {"status": "finding", "reason": str(exc), "conclusive": True}
            return None
        self.sections[name] = value
        return value

    def name(self, x: int) -> str:
        return self.G.element_name(x)

    def exit_status(self) -> int:
        if self.findings:
            return EXIT_FINDING
        if self.budget_hits:
            return EXIT_BUDGET
        return EXIT_OK

    def report(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "code_version": code_version(),
            "command": self.cfg.command,
            "config": self.cfg.echo(),
            "subject": {
                "group": self.G.name,
                "group_order": self.G.order,
                "group_hash": self.G.content_hash,
                "class": self.c.describe(),
                "class_size": len(self.c),
            },
            "results": _jsonable(self.sections),
            "findings": list(self.findings),
            "budget_hits": list(self.budget_hits),
            "exit_status": self.exit_status(),
        }


# --- tasks -------------------------------------------------------------------------------


def task_group(run: Run) -> dict:
    G, c = run.G, run.c
    verdict = is_non_splitting(G, c)
    Q = conjugation_quandle(G, c)
    failures = Q.axiom_failures()
    if failures:
        raise FindingError(f"quandle axioms fail: {failures[:3]}")
    out = {
        "non_splitting": {
            "holds": verdict.holds,
            "reason": verdict.reason,
            "witness_subgroup": None if verdict.witness is None else sorted(run.name(x) for x in verdict.witness),
            "witness_parts": [sorted(run.name(x) for x in part) for part in verdict.witness_parts],
            "window": "all subgroups",
            "conclusive": True,
        },
        "quandle": {
            "size": Q.size,
            "axioms_hold": True,
            "connected": is_connected_quandle(Q),
            "window": "exhaustive",
            "conclusive": True,
        },
    }
    if verdict.holds and not out["quandle"]["connected"]:
        raise FindingError("non-splitting single class with a disconnected quandle")
    return out


def task_nc_scan(run: Run) -> dict:
    scan = scan_nc(run.c, run.cfg.nmax)
    d = scan.as_dict()
    d["window"] = [0, scan.n_max]
    d["conclusive"] = False
    if scan.n_max < run.cfg.nmax:
        run.budget_hits.append("nc_scan")
    if not scan.monotone:
        d["note"] = "bijectivity held and later failed inside the window"
    return d


def task_orbit_tables(run: Run) -> dict:
    out = {}
    for n in range(run.cfg.nmax + 1):
        row = {}
        for flavor in (BR, PBR):
            try:
                table = enumerate_orbits(run.c, n, flavor)
            except BudgetExceeded:
                run.budget_hits.append(f"orbits n={n}")
                return out
            row[flavor] = {"orbits": len(table), "tuples": int(table.sizes.sum())}
            run.tables[f"orbits_{flavor}_n{n}"] = list(table.csv_rows())
        out[str(n)] = row
    return out


def task_stabilizer(run: Run, non_splitting: bool, nc: int | None) -> dict:
    ring = GradedComponentRing(run.c, run.cfg.nmax)
    search = find_central_stabilizer(ring)
    if search.found is None:
        msg = f"no central stabilizer: {search.reason}"
        if non_splitting:
            run.findings.append(f"stabilizer: {msg}")
        return {"found": False, "reason": search.reason, "tried": search.tried, "window": [1, run.cfg.nmax], "conclusive": False}
    stab = search.found
    lo = max(stab.N0, nc or 0)
    rows = check_lift_iso_on_pi0(stab, range(lo, stab.window_end + 1))
    iso = all(r.bijective for r in rows)
    if non_splitting and not iso:
        run.findings.append("stabilizer: lifted multiplication not bijective on pure-braid orbits")
    d = stab.describe()
    d.update(
        found=True,
        tried=search.tried,
        lift_bijective=[{"n": r.n, "source": r.source_dim, "target": r.target_dim, "rank": r.rank} for r in rows],
        lift_iso_holds=iso,
        window=[stab.N0, stab.window_end],
        conclusive=False,
    )
    return d


def task_koszul(run: Run, export_dir: Path | None = None) -> dict:
    cfg = run.cfg
    per_n = {}
    for n in range(cfg.nmax_koszul + 1):
        try:
            cx = build_koszul(run.c, n, max_degree=cfg.max_degree, basis_limit=cfg.budget_basis)
        except BudgetExceeded as exc:
            run.budget_hits.append(f"koszul n={n}: {exc}")
            break
        rep = homology_dims(cx)
        per_n[str(n)] = rep.records()
        run.tables[f"koszul_n{n}"] = [list(rep.records()[0].keys())] + [list(r.values()) for r in rep.records()]
        if export_dir is not None:
            for p, M in sorted(cx.differentials.items()):
                (export_dir / f"koszul_n{n}_d{p}.txt").write_text(M.to_coordinate_text())
        if n == cfg.nmax_koszul or run.out_of_time():
            break
    done = len(per_n) - 1
    low = low_degree_vanishing_check(run.c, range(0, min(done, 5) + 1)) if done >= 0 else []
    scan = vanishing_threshold_scan(run.c, done, cfg.max_degree, cfg.budget_basis) if done >= 1 else None
    return {
        "homology": per_n,
        "low_degree_vanishing": [
            {"n": r.n, "H_-1": r.h_minus1, "H_0": r.h_0, "ok": r.ok} for r in low
        ],
        "thresholds": None if scan is None else scan.as_dict(),
        "window": [0, done],
        "max_degree": cfg.max_degree,
        "conclusive": False,
    }


def task_decompose(run: Run) -> dict:
    rep = multiplicity_stability_report(run.c, run.cfg.nmax)
    table = rep.table
    if not table.check_dimensions():
        raise FindingError("multiplicities do not account for the orbit counts")
    run.tables["multiplicities"] = list(csv.reader(io.StringIO(table.to_csv())))
    dims = list(table.dims)
    try:
        # keep two values beyond the interpolation points as a check
        fit = hilbert_poly_fit(dims, max_degree=max(0, len(dims) - 4))
    except ValueError:
        fit = None
    d = rep.as_dict()
    d["dimension_check"] = True
    d["polynomial_fit"] = None if fit is None else dict(fit.as_dict(), conclusive=False)
    d["window"] = [0, run.cfg.nmax]
    return d


def task_fic(run: Run) -> dict:
    out = {}
    for label, allow in (("all_sources", True), ("nonempty_sources", False)):
        M = pi0_module(run.c, run.cfg.nmax_fic, allow_empty_source=allow)
        rows = generation_rows(M, -1)
        fails = [r.degree for r in rows if not r.surjective]
        out[label] = {
            "generation_degree": max(fails) if fails else -1,
            "rows": [{"degree": r.degree, "value_dim": r.value_dim, "spanned_dim": r.spanned_dim, "surjective": r.surjective} for r in rows],
        }
        run.tables[f"fic_{label}"] = [["degree", "value_dim", "spanned_dim", "verdict"]] + [
            r.as_text().split() for r in rows
        ]
    if out["all_sources"]["generation_degree"] > 0:
        run.findings.append("fic: not generated in degree 0 within the window")
    out["window"] = [0, run.cfg.nmax_fic]
    out["conclusive"] = False
    return out


# --- commands ------------------------------------------------------------------------


def cmd_group(run: Run):
    run.section("group", lambda: task_group(run))


def cmd_orbits(run: Run):
    run.section("orbit_counts", lambda: task_orbit_tables(run))
    run.section("nc_scan", lambda: task_nc_scan(run))


def cmd_koszul(run: Run, export_dir=None):
    run.section("koszul", lambda: task_koszul(run, export_dir))


def cmd_decompose(run: Run):
    run.section("multiplicities", lambda: task_decompose(run))


def cmd_fic(run: Run):
    run.section("fic", lambda: task_fic(run))


def cmd_dossier(run: Run):
    grp = run.section("group", lambda: task_group(run))
    ns = bool(grp and grp["non_splitting"]["holds"])
    scan = run.section("nc_scan", lambda: task_nc_scan(run))
    nc = scan["empirical_Nc"] if scan else None
    run.section("stabilizer", lambda: task_stabilizer(run, ns, nc))
    run.section("koszul", lambda: task_koszul(run))
    run.section("multiplicities", lambda: task_decompose(run))
    run.section("fic", lambda: task_fic(run))


def write_outputs(run: Run, stream) -> None:
    report = json.dumps(run.report(), indent=2, sort_keys=True) + "\n"
    out = run.cfg.out
    if out is None:
        if run.cfg.format == "csv" and run.tables:
            for name in sorted(run.tables):
                stream.write(f"# {name}\n")
                stream.write(_csv_text(run.tables[name]))
        else:
            stream.write(report)
        return
    d = Path(out)
    (d / f"{run.cfg.command}.json").write_text(report)
    if run.cfg.format == "csv":
        for name in sorted(run.tables):
            (d / f"{name}.csv").write_text(_csv_text(run.tables[name]))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hurwitz-lab", description="Orbit, Koszul and character checks for Hurwitz-space invariants.")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("--group", required=True, help="builtin (S3, A4, Z4, D5, ...) or a Cayley table file")
        s.add_argument("--class-rep", required=True, help="element index or name, e.g. '(12)'")
        s.add_argument("--nmax", type=int, default=6, help="largest n for orbit, stabilizer and character work")
        s.add_argument("--nmax-koszul", type=int, default=4)
        s.add_argument("--nmax-fic", type=int, default=4)
        s.add_argument("--max-degree", type=int, default=2, help="top homological degree for Koszul homology")
        s.add_argument("--budget-basis", type=int, default=DEFAULT_BASIS_LIMIT, help="cap on a chain group's basis size")
        s.add_argument("--budget-seconds", type=float, default=None, help="soft wall-clock cap between tasks")
        s.add_argument("--out", default=None, help="output directory (default: stdout)")
        s.add_argument("--format", choices=("json", "csv"), default="json")
        if name == "koszul":
            s.add_argument("--export-matrices", action="store_true", help="write differentials as coordinate triples (needs --out)")
    return p


def main(argv=None, stream=None) -> int:
    stream = sys.stdout if stream is None else stream
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(
            command=args.command,
            group=args.group,
            class_rep=args.class_rep,
            nmax=args.nmax,
            nmax_koszul=args.nmax_koszul,
            nmax_fic=args.nmax_fic,
            max_degree=args.max_degree,
            budget_basis=args.budget_basis,
            budget_seconds=args.budget_seconds,
            out=args.out,
            format=args.format,
        )
        cfg.validate()
        if cfg.out is not None:
            Path(cfg.out).mkdir(parents=True, exist_ok=True)
        export = getattr(args, "export_matrices", False)
        if export and cfg.out is None:
            raise ConfigError("--export-matrices needs --out")
        G = resolve_group(cfg.group)
        c = resolve_class(G, cfg.class_rep)
    except (ConfigError, OSError) as exc:
        print(f"hurwitz-lab: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    run = Run(cfg, G, c)
    if cfg.command == "koszul":
        cmd_koszul(run, Path(cfg.out) if export else None)
    else:
        {
            "group": cmd_group,
            "orbits": cmd_orbits,
            "decompose": cmd_decompose,
            "fic": cmd_fic,
            "dossier": cmd_dossier,
        }[cfg.command](run)
    write_outputs(run, stream)
    return run.exit_status()


if __name__ == "__main__":
    sys.exit(main())
