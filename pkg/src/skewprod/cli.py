"""Command-line front end.

    skewprod verify-theorem [--n N]
    skewprod case K [--n N]
    skewprod noncorefree-sym5
    skewprod examples
    skewprod oracle --group SPEC
    skewprod induce --group G --sub B --elem CYCLES

Exit status: 0 when every executed claim passes, 1 when some claim fails,
2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from . import catalog
from .classify import CaseReport, Settings, enumerate_case, enumerate_noncorefree_sym5, examples_report, theorem_report
from .factorization import NotComplementary, NotCoreFree, induce_skew_morphism, validate_pair
from .oracle import ORACLE_MAX, compare
from .perm import DEFAULT_ELEMENT_CAP, Permutation
from .skew import save, verify_axioms

SCHEMA = 1


@dataclass
class RunConfig:
    subcommand: str
    case_ids: list[int] = field(default_factory=list)
    n: int | None = None
    group: str | None = None
    sub: str | None = None
    elem: str | None = None
    output_format: str = "json"
    out: str | None = None
    export: str | None = None
    seed: int = 0
    sample_size: int = 500
    element_cap: int = DEFAULT_ELEMENT_CAP

    def settings(self) -> Settings:
        return Settings(seed=self.seed, sample_size=self.sample_size, element_cap=self.element_cap)

    def as_dict(self) -> dict:
        d = asdict(self)
        d.pop("out")
        d.pop("export")
        return d


class UsageError(Exception):
    pass


def worker_count() -> int:
    raw = os.environ.get("SKEWPROD_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise UsageError(f"SKEWPROD_THREADS must be an integer, got {raw!r}")


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="output_format", choices=["json", "text"], default="json")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--sample-size", type=int, default=500)
    common.add_argument("--element-cap", type=int, default=DEFAULT_ELEMENT_CAP)

    p = argparse.ArgumentParser(prog="skewprod", description="Skew morphisms via skew product groups.")
    sub = p.add_subparsers(dest="subcommand", required=True)
    t = sub.add_parser("verify-theorem", parents=[common], help="validate the listed factorisations")
    t.add_argument("--n", type=int, help="only this n for the symmetric and alternating lines")
    c = sub.add_parser("case", parents=[common], help="run one or more of the seven core-free cases")
    c.add_argument("k", type=int, nargs="+", choices=range(1, 8), metavar="k")
    c.add_argument("--n", type=int, help="degree parameter for cases 6 and 7")
    sub.add_parser("noncorefree-sym5", parents=[common], help="Sym(5) with core Alt(5)")
    sub.add_parser("examples", parents=[common], help="example families")
    o = sub.add_parser("oracle", parents=[common], help="census of all skew morphisms of a tiny group")
    o.add_argument("--group", required=True)
    i = sub.add_parser("induce", parents=[common], help="skew morphism induced by one pair")
    i.add_argument("--group", required=True, help="group spec for G")
    i.add_argument("--sub", required=True, help="group spec for B, or stab(<point>) with 1-based point")
    i.add_argument("--elem", required=True, help="y in 1-based cycle notation")
    i.add_argument("--export", help="also write the morphism in the binary table format")
    return p


def parse_config(argv: list[str]) -> RunConfig:
    ns = _parser().parse_args(argv)
    cfg = RunConfig(
        subcommand=ns.subcommand,
        output_format=ns.output_format,
        out=ns.out,
        seed=ns.seed,
        sample_size=ns.sample_size,
        element_cap=ns.element_cap,
    )
    if ns.subcommand in ("verify-theorem", "case"):
        cfg.n = ns.n
    if ns.subcommand == "case":
        cfg.case_ids = list(ns.k)
    if ns.subcommand in ("oracle", "induce"):
        cfg.group = ns.group
    if ns.subcommand == "induce":
        cfg.sub, cfg.elem, cfg.export = ns.sub, ns.elem, ns.export
    if cfg.sample_size < 1 or cfg.element_cap < 1:
        raise UsageError("--sample-size and --element-cap must be positive")
    return cfg


# ---------------------------------------------------------------------------
# report producers


def _case_job(k: int, cfg: RunConfig):
    n = cfg.n if k in (6, 7) else None
    if k in (6, 7) and n is not None:
        ok = n in (8, 10) if k == 6 else (n == 5 or n >= 7)
        if not ok:
            raise UsageError(f"case {k} does not accept n = {n}")
    return lambda: enumerate_case(k, cfg.settings(), n=n)


def _oracle_report(cfg: RunConfig) -> CaseReport:
    B = catalog.parse_group_spec(cfg.group)
    if B.order > ORACLE_MAX:
        raise UsageError(f"oracle groups must have order <= {ORACLE_MAX}")
    r = CaseReport(f"oracle:{cfg.group}", f"census of skew morphisms of {cfg.group}")
    a, b, equal = compare(B, cfg.group)
    r.groups = {"B": cfg.group}
    r.total = a.total_count
    r.check("agreement", "depth-first search and closure census agree", True, equal)
    r.check("kernels_nontrivial", "every skew morphism has a non-trivial kernel", True,
            B.order == 1 or all(m.kernel_order > 1 for m in a.morphisms))
    r.check("order_below_size", "every skew morphism has order < |B|", True,
            B.order == 1 or all(m.order < B.order for m in a.morphisms))
    r.extra["census"] = a.as_dict()
    r.extra["proper"] = a.proper_count
    return r


def _resolve_sub(group: str, sub: str) -> str:
    """Expand the shorthand stab(<point>) to a full spec stab(<group>,<point>)."""
    s = sub.strip().lower().replace(" ", "")
    if s.startswith("stab(") and s.endswith(")") and s[5:-1].isdigit():
        return f"stab({group.strip().lower()},{s[5:-1]})"
    return sub


def _induce_report(cfg: RunConfig) -> CaseReport:
    G = catalog.parse_group_spec(cfg.group)
    sub = _resolve_sub(cfg.group, cfg.sub)
    B = catalog.parse_group_spec(sub)
    try:
        y = Permutation.parse(cfg.elem, G.degree)
    except ValueError as exc:
        raise UsageError(str(exc))
    r = CaseReport("induce", f"morphism of {cfg.sub} induced in {cfg.group} by {cfg.elem}")
    r.groups = {"G": cfg.group, "B": cfg.sub, "Y": f"C{y.order()}"}
    try:
        pair = validate_pair(G, B, y)
    except (NotComplementary, NotCoreFree) as exc:
        r.check("valid_pair", "(B, y) is a skew generating pair", True, False)
        r.notes.append(str(exc))
        return r
    r.check("valid_pair", "(B, y) is a skew generating pair", True, True)
    phi = induce_skew_morphism(pair)
    ax = verify_axioms(phi, samples=10**5, seed=cfg.seed)
    r.check("axioms", "skew product rule on all checked pairs", True, ax.passed)
    r.total = 1
    r.classes = [{"order": phi.order, "kernel_order": int(len(phi.kernel_indices)),
                  "proper": phi.is_proper(), "size": phi.size}]
    if phi.size <= 200:
        r.extra["values"] = phi.values.tolist()
        r.extra["powers"] = phi.powers.tolist()
    if cfg.export:
        save(phi, cfg.export, spec=sub)
    return r


def build_jobs(cfg: RunConfig) -> list:
    s = cfg.settings()
    if cfg.subcommand == "verify-theorem":
        rng = (cfg.n, cfg.n) if cfg.n is not None else (6, 9)
        return [lambda: theorem_report(rng)]
    if cfg.subcommand == "case":
        return [_case_job(k, cfg) for k in cfg.case_ids]
    if cfg.subcommand == "noncorefree-sym5":
        return [lambda: enumerate_noncorefree_sym5(s)]
    if cfg.subcommand == "examples":
        return [examples_report]
    if cfg.subcommand == "oracle":
        return [lambda: _oracle_report(cfg)]
    if cfg.subcommand == "induce":
        return [lambda: _induce_report(cfg)]
    raise UsageError(f"unknown subcommand {cfg.subcommand}")


def run_reports(cfg: RunConfig) -> list[CaseReport]:
    jobs = build_jobs(cfg)
    workers = min(worker_count(), len(jobs))
    if workers <= 1:
        return [job() for job in jobs]
    with ThreadPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(lambda job: job(), jobs))


# ---------------------------------------------------------------------------
# rendering


def render_json(cfg: RunConfig, reports: list[CaseReport]) -> str:
    doc = {
        "schema": SCHEMA,
        "config": cfg.as_dict(),
        "reports": [r.as_dict() for r in reports],
        "passed": all(r.passed for r in reports),
    }
    return json.dumps(doc, sort_keys=True, indent=2, default=_json_default) + "\n"


def _json_default(o):
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, np.bool_):
        return bool(o)
    if isinstance(o, np.ndarray):
        return o.tolist()
    raise TypeError(f"not serialisable: {type(o).__name__}")


def render_text(cfg: RunConfig, reports: list[CaseReport]) -> str:
    lines = [f"skewprod {cfg.subcommand}  schema {SCHEMA}  seed {cfg.seed}"]
    for r in reports:
        lines.append("")
        head = f"[{r.case_id}] {r.title}"
        if r.total is not None:
            head += f"  total={r.total}" + (" (formula)" if r.formula_based else "")
        if r.pair_orbits is not None:
            head += f"  pair_orbits={r.pair_orbits}"
        lines.append(head)
        wid = max((len(c.id) for c in r.claims), default=0)
        for c in r.claims:
            verdict = "PASS" if c.passed else "FAIL"
            lines.append(f"  {verdict}  {c.id:<{wid}}  expected={_short(c.expected)}  "
                         f"observed={_short(c.observed)}  [{c.anchor}]")
        for note in r.notes:
            lines.append(f"  note: {note}")
    ok = all(r.passed for r in reports)
    lines.append("")
    lines.append("ALL CLAIMS PASS" if ok else "SOME CLAIMS FAIL")
    return "\n".join(lines) + "\n"


def _short(v) -> str:
    s = json.dumps(v, default=_json_default, sort_keys=True)
    return s if len(s) <= 60 else s[:57] + "..."


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        cfg = parse_config(argv)
        reports = run_reports(cfg)
    except SystemExit as exc:  # argparse usage errors
        return 2 if exc.code not in (0, None) else 0
    except (UsageError, catalog.UnknownGroupSpec) as exc:
        print(f"skewprod: error: {exc}", file=sys.stderr)
        return 2
    text = render_json(cfg, reports) if cfg.output_format == "json" else render_text(cfg, reports)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    failed = [(r.case_id, c) for r in reports for c in r.failed_claims()]
    for cid, c in failed:
        print(f"skewprod: claim failed: [{cid}] {c.id}: {c.anchor}", file=sys.stderr)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
