"""Command-line front end.

Exit status: 0 when every check passes, 2 when a mathematical verification
fails (a JSON list of failures goes to stderr), 1 for usage and parse errors.
Output is deterministic: JSON keys are sorted and rows keep input order
regardless of ``--jobs``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Callable

from . import __version__
from .errors import ExprSyntaxError, HeckextError, LedgerInconsistency, VerificationFailed

FORMATS = ("json", "csv", "md")
TABLE_COLUMNS = ("left", "right", "hom", "ext1", "provenance")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit with status 2
        raise UsageError(f"{self.prog}: {message}")


@dataclass
class Report:
    rows: list[dict]
    p: int | None = None
    field: str | None = None
    failures: list[dict] | None = None

    def payload(self) -> dict:
        meta = {"version": __version__}
        if self.p is not None:
            meta["p"] = self.p
        meta["field"] = self.field or (f"GF({self.p})" if self.p is not None else "")
        return {"meta": meta, "rows": self.rows}


# ---------------------------------------------------------------------------
# rendering


def _columns(rows: list[dict]) -> list[str]:
    keys = sorted({k for row in rows for k in row})
    lead = [c for c in TABLE_COLUMNS if c in keys]
    return lead + [k for k in keys if k not in lead]


def _cell(v) -> str:
    if isinstance(v, (list, tuple)):
        return " ".join(str(x) for x in v)
    return "" if v is None else str(v)


def render(report: Report, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report.payload(), sort_keys=True, indent=2) + "\n"
    cols = _columns(report.rows)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for row in report.rows:
            w.writerow([_cell(row.get(c)) for c in cols])
        return buf.getvalue()
    lines = ["| " + " | ".join(cols) + " |", "|" + "---|" * len(cols)]
    for row in report.rows:
        lines.append("| " + " | ".join(_cell(row.get(c)) for c in cols) + " |")
    return "\n".join(lines) + "\n"


def _map(fn: Callable, items: list, jobs: int) -> list:
    """Ordered map, in worker processes when jobs > 1."""
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items))


# ---------------------------------------------------------------------------
# verify


def _symr_point(args: tuple[int, int, int]) -> list[dict]:
    from . import symr

    p, r, a = args
    rows = []
    closed_form = True
    for j in range(r + 1):
        try:
            symr.f_sum(p, r, a, j)
        except VerificationFailed:
            closed_form = False
    rows.append({"check": "closed_form", "ok": int(closed_form)})
    rows.append({"check": "top_power", "ok": int(symr.verify_calcsym2(p, r, a))})
    for k, v in symr.verify_relations(p, r, a).items():
        rows.append({"check": k, "ok": int(v)})
    if r:
        rows.append({"check": "displacement", "ok": int(symr.w_sigma_check(p, r, a))})
    for row in rows:
        row.update(p=p, r=r, a=a)
    return rows


def _grid(p: int, r: int | None, a: int | None) -> list[tuple[int, int, int]]:
    rs = [r] if r is not None else range(p)
    as_ = [a] if a is not None else range(p - 1)
    return [(p, rr, aa) for rr in rs for aa in as_]


def cmd_verify_symr(ns) -> Report:
    from .gf import field_make
    from .symr import _check_params

    field_make(ns.p)
    _check_params(ns.p, ns.r or 0, ns.a or 0)
    rows = [row for chunk in _map(_symr_point, _grid(ns.p, ns.r, ns.a), ns.jobs) for row in chunk]
    return Report(rows, ns.p, failures=[r for r in rows if not r["ok"]])


def _relations_point(args: tuple[int, int, int]) -> list[dict]:
    from .symr import verify_relations

    p, r, a = args
    return [{"check": k, "ok": int(v), "p": p, "r": r, "a": a} for k, v in verify_relations(p, r, a).items()]


def cmd_verify_relations(ns) -> Report:
    from .gf import field_make

    field_make(ns.p)
    rows = [row for chunk in _map(_relations_point, _grid(ns.p, None, None), ns.jobs) for row in chunk]
    return Report(rows, ns.p, failures=[r for r in rows if not r["ok"]])


# ---------------------------------------------------------------------------
# hecke


def cmd_hecke_ext(ns) -> Report:
    from .expr import evaluate
    from .gf import field_make
    from .presalg import ext1, hom_space

    F = field_make(ns.p, ns.degree)
    M = evaluate(ns.left, F)
    N = evaluate(ns.right, F)
    if M.algebra != N.algebra:
        raise UsageError("left and right have different central characters")
    A = M.algebra
    row = {
        "left": ns.left.replace(" ", ""),
        "right": ns.right.replace(" ", ""),
        "hom": len(hom_space(A, M, N)),
        "ext1": ext1(A, M, N).dim,
        "provenance": "computed",
    }
    return Report([row], ns.p, _field_name(ns.p, ns.degree))


def _field_name(p: int, k: int) -> str:
    return f"GF({p})" if k == 1 else f"GF({p}^{k})"


def cmd_hecke_table(ns) -> Report:
    from .hecke import ext_table

    return Report(ext_table(ns.p, ns.kind), ns.p)


# ---------------------------------------------------------------------------
# pgroup


def _group(ns):
    from .pgroup import group_build

    return group_build(ns.p, ns.level, ns.group)


def cmd_pgroup_hom(ns) -> Report:
    from .pgroup import hom_fp

    G = _group(ns)
    dim, basis = hom_fp(G)
    row = {
        "group": ns.group, "level": ns.level, "order": G.order, "hom_dim": dim,
        "basis_on_generators": [[int(x) for x in line] for line in basis],
        "provenance": "computed",
    }
    return Report([row], ns.p)


def cmd_pgroup_eigenchars(ns) -> Report:
    from .pgroup import eigenchars

    G = _group(ns)
    rows = [
        {"group": ns.group, "level": ns.level, "character": chi.label(), "m": chi.m, "n": chi.n,
         "multiplicity": k, "provenance": "computed"}
        for chi, k in sorted(eigenchars(G).items())
    ]
    return Report(rows, ns.p)


# ---------------------------------------------------------------------------
# envelope


def _chi(ns):
    from .hecke import TorusCharacter

    try:
        m, n = (int(x) for x in ns.chi.split(","))
    except ValueError:
        raise UsageError(f"--chi expects M,N, got {ns.chi!r}") from None
    return TorusCharacter(m, n, ns.p)


def cmd_envelope_socle(ns) -> Report:
    from .envelope import envelope_make, socle_series
    from .hecke import TorusCharacter

    chi = _chi(ns)
    J = envelope_make(chi, ns.m)
    series = socle_series(J)
    alpha = TorusCharacter.alpha(ns.p)
    rows, failures = [], []
    for k, c in enumerate(series):
        expected = chi * alpha ** (-k)
        row = {"k": k + 1, "character": c.label(), "m": c.m, "n": c.n, "expected": expected.label(),
               "ok": int(c == expected)}
        rows.append(row)
        if not row["ok"]:
            failures.append(row)
    return Report(rows, ns.p, failures=failures)


def cmd_envelope_minj(ns) -> Report:
    from .envelope import minj_recursion

    rows = []
    for n in range(ns.n + 1):
        res = minj_recursion(ns.p, ns.r, n)
        rows.append({"n": n, "e": res.e, "lambda": res.lam, "envelope_checked": int(res.depth_checked)})
    return Report(rows, ns.p)


# ---------------------------------------------------------------------------
# ledger and classification


def cmd_ledger_main(ns) -> Report:
    from .ledger import main_theorem_assembly

    L = main_theorem_assembly(ns.p, ns.r)
    rows = [dict(row, kind="entry") for row in L.rows()]
    rows += [dict(row, kind="constraint") for row in L.constraint_rows()]
    failures = [row for row in rows if row.get("holds") == 0]
    return Report(rows, ns.p, failures=failures)


def _classify_one(args: tuple[int, str]) -> list[dict]:
    from .ledger import classification_table

    p, spec = args
    return classification_table(p, spec)


def cmd_classify(ns) -> Report:
    from .hecke import parse_pi_spec
    from .ledger import principal_sweep, supersingular_sweep, sweep_specs

    groups = {
        "all": sweep_specs,
        "principal-sweep": principal_sweep,
        "supersingular-sweep": supersingular_sweep,
    }
    if ns.pi in groups:
        specs = [s.text(ns.p) for s in groups[ns.pi](ns.p)]
    else:
        parse_pi_spec(ns.pi)
        specs = [ns.pi]
    chunks = _map(_classify_one, [(ns.p, s) for s in specs], ns.jobs)
    return Report([row for chunk in chunks for row in chunk], ns.p)


# ---------------------------------------------------------------------------
# goldens


# golden file name -> argument vector producing it
GOLDENS: dict[str, list[str]] = {
    **{f"hecke_extH_p{p}.json": ["hecke", "table", "--p", str(p), "--kind", "extH"] for p in (3, 5, 7)},
    **{f"hecke_sp-triv_p{p}.json": ["hecke", "table", "--p", str(p), "--kind", "sp-triv"] for p in (3, 5, 7)},
    "hecke_kuku_p5.json": ["hecke", "table", "--p", "5", "--kind", "kuku"],
    "hecke_stex-split_p5.json": ["hecke", "table", "--p", "5", "--kind", "stex-split"],
    **{f"hecke_rst-isotype_p{p}.json": ["hecke", "table", "--p", str(p), "--kind", "rst-isotype"] for p in (5, 7)},
    **{f"pgroup_eigenchars_p5_{g}.json": ["pgroup", "eigenchars", "--p", "5", "--level", "2", "--group", g]
       for g in ("I1modZ1", "I1P", "I1Ps", "I1U", "I1Us")},
    "pgroup_eigenchars_p3_I1modZ1.json": ["pgroup", "eigenchars", "--p", "3", "--level", "2", "--group", "I1modZ1"],
    "envelope_socle_p5.json": ["envelope", "socle", "--p", "5", "--chi", "1,0"],
    "envelope_minj_p3_r1.json": ["envelope", "minj", "--p", "3", "--r", "1", "--n", "2"],
    **{f"ledger_main_p5_r{r}.json": ["ledger", "main-theorem", "--p", "5", "--r", str(r)] for r in (0, 2)},
    **{f"classify_p{p}.json": ["classify", "--p", str(p), "--pi", "all"] for p in (5, 7)},
}


def default_golden_dir() -> Path:
    env = os.environ.get("GOLDEN_DIR")
    if env:
        return Path(env)
    return Path(str(resources.files("heckext") / "goldens"))


def render_argv(argv: list[str], jobs: int = 1) -> str:
    ns = build_parser().parse_args([*argv, "--jobs", str(jobs)])
    return render(ns.func(ns), "json")


def _golden_one(args: tuple[str, str, int]) -> dict:
    name, directory, jobs = args
    path = Path(directory) / name
    actual = render_argv(GOLDENS[name], jobs)
    if not path.exists():
        return {"file": name, "status": "missing"}
    expected = path.read_text()
    if expected == actual:
        return {"file": name, "status": "ok"}
    exp_lines, act_lines = expected.splitlines(), actual.splitlines()
    line = next(
        (i for i, (a, b) in enumerate(zip(exp_lines, act_lines)) if a != b),
        min(len(exp_lines), len(act_lines)),
    )
    return {
        "file": name,
        "status": "mismatch",
        "line": line + 1,
        "expected": exp_lines[line] if line < len(exp_lines) else "<end of file>",
        "actual": act_lines[line] if line < len(act_lines) else "<end of file>",
    }


def cmd_goldens_check(ns) -> Report:
    directory = Path(ns.dir) if ns.dir else default_golden_dir()
    rows = _map(_golden_one, [(n, str(directory), 1) for n in sorted(GOLDENS)], ns.jobs)
    return Report(rows, failures=[r for r in rows if r["status"] != "ok"])


def cmd_goldens_write(ns) -> Report:
    directory = Path(ns.dir) if ns.dir else default_golden_dir()
    directory.mkdir(parents=True, exist_ok=True)
    names = sorted(GOLDENS)
    texts = _map(_render_named, names, ns.jobs)
    rows = []
    for name, text in zip(names, texts):
        (directory / name).write_text(text)
        rows.append({"file": name, "status": "written"})
    return Report(rows)


def _render_named(name: str) -> str:
    return render_argv(GOLDENS[name])


# ---------------------------------------------------------------------------
# parser


def _common(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--format", choices=FORMATS, default="json", help="output format (default json)")
    sp.add_argument("--jobs", type=int, default=1, help="worker processes for sweeps (default 1)")


def build_parser() -> argparse.ArgumentParser:
    from .hecke import TABLE_KINDS
    from .pgroup import SELECTORS

    parser = _Parser(prog="heckext", description="Exact Ext computations for mod-p GL2 representations.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    verify = sub.add_parser("verify", help="polynomial identities in Sym^r")
    vsub = verify.add_subparsers(dest="what", required=True, parser_class=_Parser)
    sp = vsub.add_parser("symr", help="closed forms, relations and displacement")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--r", type=int)
    sp.add_argument("--a", type=int)
    _common(sp)
    sp.set_defaults(func=cmd_verify_symr)
    sp = vsub.add_parser("relations", help="the three invariant-vector relations")
    sp.add_argument("--p", type=int, required=True)
    _common(sp)
    sp.set_defaults(func=cmd_verify_relations)

    hecke = sub.add_parser("hecke", help="Hecke-module Hom and Ext")
    hsub = hecke.add_subparsers(dest="what", required=True, parser_class=_Parser)
    sp = hsub.add_parser("ext", help="Hom and Ext^1 between two module expressions")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--degree", type=int, default=1, help="field degree k for GF(p^k) (default 1)")
    sp.add_argument("--left", required=True)
    sp.add_argument("--right", required=True)
    _common(sp)
    sp.set_defaults(func=cmd_hecke_ext)
    sp = hsub.add_parser("table", help="a standard table of Hecke dimensions")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--kind", choices=TABLE_KINDS, required=True)
    _common(sp)
    sp.set_defaults(func=cmd_hecke_table)

    pg = sub.add_parser("pgroup", help="finite quotients of the pro-p Iwahori")
    psub = pg.add_subparsers(dest="what", required=True, parser_class=_Parser)
    for name, func, text in (("hom", cmd_pgroup_hom, "dimension of Hom(G, F_p)"),
                             ("eigenchars", cmd_pgroup_eigenchars, "torus characters on Hom(G, F_p)")):
        sp = psub.add_parser(name, help=text)
        sp.add_argument("--p", type=int, required=True)
        sp.add_argument("--level", type=int, default=2)
        sp.add_argument("--group", choices=SELECTORS, required=True)
        _common(sp)
        sp.set_defaults(func=func)

    env = sub.add_parser("envelope", help="finite injective envelopes")
    esub = env.add_subparsers(dest="what", required=True, parser_class=_Parser)
    sp = esub.add_parser("socle", help="socle series characters")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--chi", required=True, help="torus character as M,N")
    sp.add_argument("--m", type=int, default=1)
    _common(sp)
    sp.set_defaults(func=cmd_envelope_socle)
    sp = esub.add_parser("minj", help="depth recursion (e_n, lambda_n) for n = 0..N")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    _common(sp)
    sp.set_defaults(func=cmd_envelope_minj)

    led = sub.add_parser("ledger", help="dimension ledgers")
    lsub = led.add_subparsers(dest="what", required=True, parser_class=_Parser)
    sp = lsub.add_parser("main-theorem", help="assemble the supersingular self-extension dimensions")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--r", type=int, required=True)
    _common(sp)
    sp.set_defaults(func=cmd_ledger_main)

    sp = sub.add_parser("classify", help="extensions of irreducibles by pi")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--pi", required=True,
                    help="trivial | steinberg | principal(r,lam) | supersingular(r) | all | "
                         "principal-sweep | supersingular-sweep")
    _common(sp)
    sp.set_defaults(func=cmd_classify)

    gold = sub.add_parser("goldens", help="golden-file regression")
    gsub = gold.add_subparsers(dest="what", required=True, parser_class=_Parser)
    for name, func in (("check", cmd_goldens_check), ("write", cmd_goldens_write)):
        sp = gsub.add_parser(name)
        sp.add_argument("--dir", help="golden directory (default $GOLDEN_DIR or the packaged set)")
        _common(sp)
        sp.set_defaults(func=func)
    return parser


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        ns = build_parser().parse_args(argv)
        if ns.jobs < 1:
            raise UsageError("--jobs must be at least 1")
        report = ns.func(ns)
    except UsageError as exc:
        print(exc, file=stderr)
        return 1
    except ExprSyntaxError as exc:
        print(f"parse error: {exc}", file=stderr)
        print(f"  {exc.text}\n  {' ' * exc.pos}^", file=stderr)
        return 1
    except (VerificationFailed, LedgerInconsistency) as exc:
        print(json.dumps({"failures": [{"error": type(exc).__name__, "message": str(exc)}]},
                         sort_keys=True), file=stderr)
        return 2
    except HeckextError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=stderr)
        return 1
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    stdout.write(render(report, ns.format))
    if report.failures:
        print(json.dumps({"failures": report.failures}, sort_keys=True), file=stderr)
        return 2
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
