"""Command line front end.

Exit codes: 0 success, 1 validation error (bad arguments, bad input file,
refused evaluation), 2 verification mismatch, 3 group too large to enumerate.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from filelock import FileLock

from . import __version__, swc, verify
from .chartab import (
    CharacterTable,
    ChartabError,
    dixon_table,
    export_table,
    import_table,
)
from .fieldcore import FieldError
from .groupcore import DEFAULT_BUDGET, BudgetExceeded, GroupData, GroupError, GroupSpec, build_group

EXIT_OK, EXIT_INVALID, EXIT_MISMATCH, EXIT_BUDGET = 0, 1, 2, 3
FAMILIES = ("cyclic", "sl2", "sl3", "sp4", "sp6")
CACHE_ENV = "SWCENGINE_CACHE"
CACHE_SCHEMA = 1
SWC_CSV_COLUMNS = ("group", "selection", "degree", "fs_profile", "theorem", "exponents", "total_class")
SUITES = ("selfcheck", "restriction", "whitney", "cyclic", "synthetic")


class UsageError(Exception):
    pass


@dataclass
class JobConfig:
    command: str
    family: str | None = None
    q: int | None = None
    fmt: str = "text"
    cache_dir: Path = field(default_factory=lambda: default_cache_dir())
    seed: int = 0
    trials: int = 100
    budget: int = DEFAULT_BUDGET
    selector: tuple[str, object] | None = None
    path: Path | None = None
    suites: tuple[str, ...] = ()
    synthetic: bool = False

    def validate(self) -> None:
        if self.family is not None and self.family not in FAMILIES:
            raise UsageError(f"unknown family {self.family!r}; choose from {', '.join(FAMILIES)}")
        if self.fmt not in ("text", "json", "csv"):
            raise UsageError(f"unknown format {self.fmt!r}")
        if self.trials < 1:
            raise UsageError("--trials must be at least 1")
        if self.budget < 1:
            raise UsageError("--budget must be positive")
        if self.family == "sp6" and self.q is None:
            self.q = 3
        if self.family is not None and self.q is None and not self.synthetic:
            raise UsageError(f"{self.family} needs a size argument")
        if self.q is not None and self.q < 2:
            raise UsageError("the size argument must be at least 2")
        bad = [s for s in self.suites if s not in SUITES]
        if bad:
            raise UsageError(f"unknown suites {bad}; choose from {', '.join(SUITES)}")

    @property
    def spec(self) -> GroupSpec:
        if self.family == "cyclic":
            return GroupSpec.cyclic(self.q)
        return GroupSpec(self.family, q=self.q)


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    return Path(env) if env else Path.home() / ".cache" / "swcengine"


# ---------------------------------------------------------------------------------------
# cache


def _slot(cfg: JobConfig, spec: GroupSpec) -> Path:
    key = f"{spec.family}-{spec.n if spec.family == 'cyclic' else spec.q}"
    return cfg.cache_dir / key


def _lock(cfg: JobConfig) -> FileLock:
    cfg.cache_dir.mkdir(parents=True, exist_ok=True)
    return FileLock(str(cfg.cache_dir / ".lock"))


def _write_slot(cfg: JobConfig, T: CharacterTable, G: GroupData | None, source: str) -> Path:
    slot = _slot(cfg, T.spec)
    with _lock(cfg):
        slot.mkdir(parents=True, exist_ok=True)
        if G is not None:
            G.save(slot / "group.bin")
        elif (slot / "group.bin").exists():
            (slot / "group.bin").unlink()
        (slot / "chartab.json").write_text(json.dumps(export_table(T), indent=1) + "\n")
        meta = {"schema": CACHE_SCHEMA, "engine": __version__, "source": source, "synthetic": T.synthetic}
        (slot / "meta.json").write_text(json.dumps(meta, indent=1) + "\n")
    return slot


def _read_slot(cfg: JobConfig, spec: GroupSpec) -> CharacterTable | None:
    slot = _slot(cfg, spec)
    try:
        meta = json.loads((slot / "meta.json").read_text())
    except (OSError, ValueError):
        return None
    if meta.get("schema") != CACHE_SCHEMA or meta.get("engine") != __version__:
        return None
    with _lock(cfg):
        T = import_table(json.loads((slot / "chartab.json").read_text()))
        if (slot / "group.bin").exists():
            G = GroupData.load(slot / "group.bin", expect=spec)
            if np.array_equal(G.class_sizes, T.class_sizes):
                T.group = G
    return T


def obtain_table(cfg: JobConfig) -> CharacterTable:
    spec = cfg.spec
    T = _read_slot(cfg, spec)
    if T is not None:
        return T
    G = build_group(spec, cfg.budget)
    T = dixon_table(G, seed=cfg.seed)
    _write_slot(cfg, T, G, "computed")
    return T


# ---------------------------------------------------------------------------------------
# output helpers


def _emit(cfg: JobConfig, text_lines: list[str], payload, csv_rows: list[list] | None = None, header=None):
    out = sys.stdout
    if cfg.fmt == "json":
        out.write(json.dumps(payload, indent=1, sort_keys=True) + "\n")
    elif cfg.fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if header:
            w.writerow(header)
        w.writerows(csv_rows or [])
        out.write(buf.getvalue())
    else:
        out.write("\n".join(text_lines) + "\n")


def fs_census(T: CharacterTable) -> dict[str, int]:
    c = T.fs_census()
    return {"+1": c.get(1, 0), "0": c.get(0, 0), "-1": c.get(-1, 0)}


# ---------------------------------------------------------------------------------------
# commands


def cmd_gen(cfg: JobConfig) -> int:
    T = obtain_table(cfg)
    census = fs_census(T)
    payload = {
        "group": T.spec.label,
        "order": T.order,
        "classes": T.class_count,
        "fs_census": census,
        "synthetic": T.synthetic,
        "cache": str(_slot(cfg, T.spec)),
    }
    text = [
        f"{T.spec.label}: order {T.order}, {T.class_count} classes",
        f"fs census: +1 x{census['+1']}, 0 x{census['0']}, -1 x{census['-1']}",
    ]
    if T.synthetic:
        text.append(f"synthetic table: {T.note}")
    rows = [[T.spec.label, T.order, T.class_count, census["+1"], census["0"], census["-1"]]]
    _emit(cfg, text, payload, rows, ("group", "order", "classes", "fs_plus", "fs_zero", "fs_minus"))
    return EXIT_OK


def parse_sum(spec: str, n_rows: int) -> np.ndarray:
    """``"2*3+5"`` -> multiplicity 2 on row 3 and 1 on row 5."""
    mults = np.zeros(n_rows, dtype=np.int64)
    for term in spec.replace(" ", "").split("+"):
        if not term:
            raise UsageError(f"empty term in sum {spec!r}")
        k, _, row = term.rpartition("*")
        try:
            k, row = (int(k) if k else 1), int(row)
        except ValueError:
            raise UsageError(f"bad term {term!r} in sum {spec!r}") from None
        if not 0 <= row < n_rows or k < 0:
            raise UsageError(f"term {term!r} out of range (rows 0..{n_rows - 1})")
        mults[row] += k
    return mults


def select(cfg: JobConfig, T: CharacterTable):
    kind, arg = cfg.selector or ("all-orthogonal", None)
    n = len(T)
    if kind == "all-orthogonal":
        return [(f"row {i}", T.row(i)) for i in range(n) if T.fs[i] == 1]
    if kind in ("row", "doubled-row"):
        if not 0 <= arg < n:
            raise UsageError(f"row {arg} out of range (rows 0..{n - 1})")
        if kind == "row":
            return [(f"row {arg}", T.row(arg))]
        return [(f"2*row {arg}", swc.double_symplectic(T.row(arg)))]
    return [(f"sum {arg}", T.combination(parse_sum(arg, n)))]


def _exponent_text(rep: swc.ExponentReport) -> str:
    parts = []
    for name, x in rep.exponents.items():
        tick = "integral" if rep.integral(name) else "NOT integral"
        gate = "" if name in rep.gated else ", not gated"
        parts.append(f"{name} = {x} [{tick}{gate}]")
    return "; ".join(parts)


def cmd_swc(cfg: JobConfig) -> int:
    T = obtain_table(cfg)
    status = EXIT_OK
    text, payload, rows = [], [], []
    for label, f in select(cfg, T):
        head = f"{T.spec.label} {label} (degree {f.degree})"
        try:
            res = swc.swc_auto(f)
        except swc.NotOrthogonal as exc:
            status = EXIT_INVALID
            hint = " (double it with --doubled-row)" if "symplectic" in str(exc) else ""
            text.append(f"{head}: not orthogonal: {exc}{hint}")
            payload.append({"group": T.spec.label, "selection": label, "error": f"not orthogonal: {exc}"})
            rows.append([T.spec.label, label, f.degree, "", "", "", f"error: not orthogonal: {exc}"])
            continue
        except swc.SWCError as exc:
            status = EXIT_INVALID
            text.append(f"{head}: refused: {exc}")
            payload.append({"group": T.spec.label, "selection": label, "error": str(exc)})
            rows.append([T.spec.label, label, f.degree, "", "", "", f"error: {exc}"])
            continue
        fs_profile = " ".join(f"{mu}x{i}({s:+d})" for i, mu, s in res.constituents)
        text += [
            f"{head}: {res.theorem}",
            f"  constituents {fs_profile}",
            f"  {_exponent_text(res.report)}",
            f"  w = {res.total.render()}",
        ]
        js = res.to_json(T.spec.label)
        js["selection"] = label
        if T.synthetic:
            js["synthetic_table"] = True
        payload.append(js)
        exps = ";".join(f"{k}={v}" for k, v in res.report.exponents.items())
        rows.append([T.spec.label, label, f.degree, fs_profile, res.theorem, exps, res.total.render()])
    if T.synthetic:
        text.insert(0, f"(synthetic table: {T.note})")
    _emit(cfg, text, payload, rows, SWC_CSV_COLUMNS)
    return status


def default_suites(cfg: JobConfig, T: CharacterTable | None) -> tuple[str, ...]:
    if cfg.synthetic:
        return ("synthetic",)
    if cfg.family == "cyclic":
        return ("selfcheck", "cyclic", "whitney")
    base = ("selfcheck", "restriction", "whitney")
    return base + (("synthetic",) if cfg.family in ("sp4", "sp6") else ())


def cmd_verify(cfg: JobConfig) -> int:
    suites = cfg.suites or default_suites(cfg, None)
    T = None if suites == ("synthetic",) else obtain_table(cfg)
    reports = []
    for name in suites:
        if name == "selfcheck":
            if T.group is None:
                continue  # imported tables were validated on import
            reports.append(verify.table_self_checks(T))
        elif name == "restriction":
            reports.append(verify.restriction_suite(T, extra=cfg.trials, seed=cfg.seed))
        elif name == "whitney":
            reports.append(verify.whitney_sum_suite(T, trials=cfg.trials, seed=cfg.seed))
        elif name == "cyclic":
            if cfg.family != "cyclic":
                raise UsageError("the cyclic suite needs a cyclic group")
            reports.append(verify.cyclic_suite(T))
        elif name == "synthetic":
            n = {"sp4": 2, "sp6": 3}.get(cfg.family)
            if n is None:
                raise UsageError("the synthetic suite is defined for sp4 and sp6")
            reports.append(verify.synthetic_sp_identity(n, trials=cfg.trials, seed=cfg.seed))
    ok = all(r.passed for r in reports)
    label = T.spec.label if T is not None else cfg.family
    text = [r.summary() for r in reports]
    for r in reports:
        for c in r.failures[:5]:
            text.append(f"  FAIL {r.name}: {json.dumps(c, default=str)}")
    text.append(f"{label}: {'PASS' if ok else 'FAIL'}")
    payload = {"group": label, "passed": ok, "suites": []}
    for r in reports:
        js = r.to_json()
        js["failures"] = js["failures"][:20]
        payload["suites"].append(js)
    rows = [[label, r.name, len(r.cases), len(r.failures), r.passed] for r in reports]
    _emit(cfg, text, json.loads(json.dumps(payload, default=str)), rows, ("group", "suite", "cases", "failures", "passed"))
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_import(cfg: JobConfig) -> int:
    try:
        data = json.loads(Path(cfg.path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {cfg.path}: {exc}") from None
    except ValueError as exc:
        raise ChartabError(f"{cfg.path} is not valid JSON: {exc}") from None
    T = import_table(data)
    slot = _write_slot(cfg, T, None, "imported")
    tag = " (synthetic)" if T.synthetic else ""
    text = [f"accepted {T.spec.label}{tag}: order {T.order}, {T.class_count} classes -> {slot}"]
    payload = {"group": T.spec.label, "accepted": True, "synthetic": T.synthetic, "cache": str(slot)}
    _emit(cfg, text, payload, [[T.spec.label, T.order, T.class_count, T.synthetic]], ("group", "order", "classes", "synthetic"))
    return EXIT_OK


def cmd_export(cfg: JobConfig) -> int:
    if cfg.synthetic:
        if cfg.family != "sp6":
            raise UsageError("--synthetic export is only defined for sp6")
        T = verify.synthetic_sp6_table(seed=cfg.seed)
    else:
        T = obtain_table(cfg)
    data = json.dumps(export_table(T), indent=1) + "\n"
    if cfg.path is None or str(cfg.path) == "-":
        sys.stdout.write(data)
    else:
        Path(cfg.path).write_text(data)
    return EXIT_OK


COMMANDS = {"gen": cmd_gen, "swc": cmd_swc, "verify": cmd_verify, "import-chartab": cmd_import, "export-chartab": cmd_export}


# ---------------------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # exit code 2 is reserved for verification mismatches
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", dest="fmt", choices=("text", "json", "csv"), default="text")
    common.add_argument("--cache-dir", type=Path, default=None, help=f"cache directory (env {CACHE_ENV})")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=100)
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="largest group order to enumerate")

    p = _Parser(prog="swcengine", description="Stiefel-Whitney classes of representations of finite groups of Lie type.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def group_args(sp, q_required=True):
        sp.add_argument("family", choices=FAMILIES)
        sp.add_argument("q", type=int, nargs=None if q_required else "?", help="field size (n for cyclic)")

    g = sub.add_parser("gen", parents=[common], help="enumerate a group and compute its character table")
    group_args(g, q_required=False)

    s = sub.add_parser("swc", parents=[common], help="total SWC of selected representations")
    group_args(s, q_required=False)
    sel = s.add_mutually_exclusive_group()
    sel.add_argument("--all-orthogonal", action="store_true", help="every irreducible row with fs = +1 (default)")
    sel.add_argument("--row", type=int)
    sel.add_argument("--doubled-row", type=int)
    sel.add_argument("--sum", help="multiplicity spec such as '2*3+5'")

    v = sub.add_parser("verify", parents=[common], help="run verification suites")
    group_args(v, q_required=False)
    v.add_argument("--suites", default="", help=f"comma-separated subset of {','.join(SUITES)}")
    v.add_argument("--synthetic", action="store_true", help="only the synthetic Sp identity suite")

    i = sub.add_parser("import-chartab", parents=[common], help="validate and register a JSON character table")
    i.add_argument("path", type=Path)

    e = sub.add_parser("export-chartab", parents=[common], help="write a character table as JSON")
    group_args(e, q_required=False)
    e.add_argument("path", type=Path, nargs="?")
    e.add_argument("--synthetic", action="store_true", help="the C2 wr S3 model table for sp6")
    return p


def config_from_args(ns: argparse.Namespace) -> JobConfig:
    cfg = JobConfig(
        command=ns.command,
        family=getattr(ns, "family", None),
        q=getattr(ns, "q", None),
        fmt=ns.fmt,
        cache_dir=ns.cache_dir or default_cache_dir(),
        seed=ns.seed,
        trials=ns.trials,
        budget=ns.budget,
        path=getattr(ns, "path", None),
        synthetic=getattr(ns, "synthetic", False),
    )
    if ns.command == "swc":
        if ns.row is not None:
            cfg.selector = ("row", ns.row)
        elif ns.doubled_row is not None:
            cfg.selector = ("doubled-row", ns.doubled_row)
        elif ns.sum is not None:
            cfg.selector = ("sum", ns.sum)
        else:
            cfg.selector = ("all-orthogonal", None)
    if ns.command == "verify" and ns.suites:
        cfg.suites = tuple(s.strip() for s in ns.suites.split(",") if s.strip())
    cfg.validate()
    return cfg


def main(argv: list[str] | None = None) -> int:
    try:
        ns = build_parser().parse_args(argv)
    except SystemExit as exc:  # --help, --version and usage errors
        return int(exc.code or 0)
    try:
        cfg = config_from_args(ns)
        return COMMANDS[cfg.command](cfg)
    except BudgetExceeded as exc:
        print(
            f"error: {exc.spec.label} has order {exc.order}, above the enumeration budget {exc.budget}; "
            f"supply its character table with 'swcengine import-chartab FILE'",
            file=sys.stderr,
        )
        return EXIT_BUDGET
    except (UsageError, ChartabError, GroupError, FieldError, swc.SWCError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
