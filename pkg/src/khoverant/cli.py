"""Command line interface, fixture registry and the corpus harness.

Exit codes: 0 when every check passes, 1 when a theorem check fails, 2 on
bad input.  Output is JSON unless ``--pretty`` is given.  ``--stable`` drops
timings so reports are byte-identical across runs.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .classify import classify, signature, turaev1_flags
from .diagnostics import (CheckResult, MisclassifiedError, check_aakh, check_diagonal_window,
                          check_euler, check_ext_adeq, check_knight_move, check_les,
                          check_les_jmin, check_mirror_duality, check_span_bound,
                          check_theorem_diagonal, extremal_profile, obstruction_report,
                          signature_report)
from .diagram import LinkDiagram, PDError, flip_component, is_split, mirror, parse_pd
from .homology import KhTable, kh
from .legendrian import front_svg, kh_tb_bound, legendrian_front, tb_interval, tb_of_front
from .polynomials import LaurentPoly, convert_normalization, jones
from .states import is_adequate, sA, sB, turaev_genus_diagram

SCHEMA = "khoverant.report/1"
HEAVY = 16  # crossings from which full tables need --full
THEOREMS = ("diagonal", "signature", "aakh", "bounds", "les", "knightmove", "mirror", "euler")
LES_LIMIT = 8
# checks whose failure is a failed conclusion even without a certified hypothesis
CONCLUSIONS = {"main", "signature"}


class InputError(Exception):
    pass


# ---------------------------------------------------------------------------
# fixtures

@dataclass
class Fixture:
    name: str
    diagram: LinkDiagram
    meta: dict = field(default_factory=dict)
    path: str | None = None


def fixtures_root() -> Path:
    env = os.environ.get("KHOVERANT_FIXTURES")
    return Path(env) if env else Path(__file__).with_name("fixtures")


def _meta(text: str) -> dict:
    out = {}
    for line in text.splitlines():
        m = re.match(r"\s*#\s*([A-Za-z_]+)\s*:\s*(.*?)\s*$", line)
        if m:
            out[m.group(1)] = m.group(2)
    return out


_TERM = re.compile(r"([+-]?)\s*(\d*)\s*(\*|/)?\s*([tx])?(?:\^\(?\s*(-?\d+(?:/\d+)?)\s*\)?)?")


def parse_published_poly(text: str) -> LaurentPoly:
    """Polynomial in ``t`` (or ``x = t^(1/2)``) as printed by public knot tables."""
    s = text.replace(" ", "")
    acc: dict[int, int] = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError("cannot parse polynomial near %r" % s[pos:pos + 10])
        sign, coef, op, var, exp = m.groups()
        if not coef and not var:
            raise ValueError("cannot parse polynomial near %r" % s[pos:pos + 10])
        c = int(coef) if coef else 1
        e = Fraction(exp) if exp else Fraction(1 if var else 0)
        if op == "/":
            e = -e
        if var == "x":
            e /= 2
        k = int(e * 2)
        acc[k] = acc.get(k, 0) + (-c if sign == "-" else c)
        pos = m.end()
    return LaurentPoly.from_dict(acc, "t", 2)


def jones_matches_published(D: LinkDiagram, text: str, mirrored: bool = False) -> bool:
    want = parse_published_poly(text)
    if mirrored:
        want = LaurentPoly.from_dict({-e: c for e, c in want.terms}, "t", 2)
    if D.c == 0 and D.loops == 1:
        got = LaurentPoly.from_dict({0: 1}, "t", 2)
    else:
        got = convert_normalization(jones(D))
    # public tables use the opposite sign for an even number of components
    if D.num_components % 2 == 0:
        got = LaurentPoly.from_dict({e: -c for e, c in got.terms}, "t", 2)
    return got == want


def ingest_fixture(source: str, registry: dict | None = None, name: str | None = None) -> Fixture:
    """Register a fixture from a file path or inline PD text.

    Published Jones values in the metadata are checked before the fixture is
    accepted.
    """
    path = None
    if "X(" in source or "X[" in source or source.strip() == "O":
        text = source
    else:
        path = source
        try:
            text = Path(source).read_text()
        except OSError as exc:
            raise InputError("cannot read %s: %s" % (source, exc)) from exc
    meta = _meta(text)
    name = name or meta.get("name") or (Path(path).stem if path else None)
    if not name:
        raise InputError("inline PD needs a name")
    try:
        D = parse_pd(text, name=name)
    except PDError as exc:
        raise InputError("%s: %s" % (name, exc)) from exc
    for key, mirrored in (("published_jones", False), ("published_jones_mirror", True)):
        if key in meta and not jones_matches_published(D, meta[key], mirrored):
            raise InputError("%s: Jones polynomial disagrees with published value" % name)
    meta.update({"crossings": D.c, "components": D.num_components,
                 "source": meta.get("source", path or "inline")})
    fx = Fixture(name, D, meta, path)
    if registry is not None:
        if name in registry:
            raise InputError("duplicate fixture name %r" % name)
        registry[name] = fx
    return fx


def load_fixtures(root: Path | None = None) -> dict[str, Fixture]:
    root = root or fixtures_root()
    reg: dict[str, Fixture] = {}
    for p in sorted(Path(root).glob("*.pd")):
        ingest_fixture(str(p), reg)
    return reg


def _resolve_input(arg: str) -> Fixture:
    if "X(" in arg or "X[" in arg:
        return ingest_fixture(arg, name="inline")
    if os.path.exists(arg):
        return ingest_fixture(arg)
    root = fixtures_root()
    for cand in (root / arg, root / (arg + ".pd"), root / Path(arg).name):
        if cand.exists():
            return ingest_fixture(str(cand))
    raise InputError("no such file or fixture: %s" % arg)


# ---------------------------------------------------------------------------
# reports

def _report(command: str, name: str, analyses: list[str], results: dict,
            checks: list[CheckResult], started: float, stable: bool) -> tuple[dict, int]:
    failed = [c.name for c in checks
              if not c.passed and (c.hypothesis == "certified" or c.name in CONCLUSIONS)]
    rep = {"schema": SCHEMA, "command": command, "input": name, "analyses": analyses,
           "results": results, "checks": [c.to_dict() for c in checks],
           "summary": {"passed": not failed, "failed": failed}}
    if not stable:
        rep["timing"] = {"seconds": round(time.perf_counter() - started, 3)}
    return rep, (1 if failed else 0)


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _parse_range(text: str) -> list[int]:
    m = re.fullmatch(r"\s*(-?\d+)\s*(?:\.\.\s*(-?\d+))?\s*", text)
    if not m:
        raise InputError("bad --j range %r (use a..b)" % text)
    a = int(m.group(1))
    b = int(m.group(2)) if m.group(2) is not None else a
    lo, hi = min(a, b), max(a, b)
    return list(range(lo, hi + 1))


def _table(D: LinkDiagram, args, extremal_default: bool = True) -> tuple[KhTable, str]:
    jobs = max(1, getattr(args, "threads", 1) or 1)
    if getattr(args, "j", None):
        return kh(D, _parse_range(args.j), jobs), "slices"
    if getattr(args, "jmin_only", False):
        return kh(D, mode="jmin"), "jmin"
    if getattr(args, "jmax_only", False):
        return kh(D, mode="jmax"), "jmax"
    if D.c >= HEAVY and not getattr(args, "full", False) and extremal_default:
        lo, hi = kh(D, mode="jmin"), kh(D, mode="jmax")
        cells = dict(lo.cells)
        cells.update(hi.cells)
        return KhTable(cells, tuple(sorted(set(lo.j_range) | set(hi.j_range))), True, D.name), \
            "extremal"
    return kh(D, jobs=jobs), "full"


def _side_checks(D: LinkDiagram, T: KhTable) -> list[CheckResult]:
    flags = turaev1_flags(D)
    out = []
    for side in ("A", "B"):
        r = check_theorem_diagonal(T, side)
        r.hypothesis = "certified" if flags[side + "_tg1"] else "unknown"
        out.append(r)
    ok = out[0].passed or out[1].passed
    rep = obstruction_report(T)
    out.append(CheckResult("main", ok, "certified" if flags["A_tg1"] or flags["B_tg1"] else "unknown",
                           "at least one extremal group is Z on its diagonal" if ok else rep["summary"],
                           {"obstruction": rep["obstruction"], "verdict": rep.get("verdict")}))
    return out


def _bounds_checks(D: LinkDiagram, T: KhTable | None) -> list[CheckResult]:
    out = [check_span_bound(D), check_ext_adeq(D)]
    if T is not None:
        out.append(check_diagonal_window(D, T))
        out.append(_tb_check(D, T))
    return out


def _tb_check(D: LinkDiagram, T: KhTable) -> CheckResult:
    if is_split(D) or T.is_zero():
        return CheckResult("tb_bound", True, "n/a", "split or empty")
    flags = turaev1_flags(D)
    if not flags["A_tg1"]:
        return CheckResult("tb_bound", True, "n/a", "not certified A-Turaev genus one")
    bound = kh_tb_bound(T)
    lo, hi = tb_interval(D, "A")
    ok = lo <= bound <= hi
    return CheckResult("tb_bound", ok, "certified",
                       "kh bound %d in [%d, %d]" % (bound, lo, hi) if ok else
                       "kh bound %d outside [%d, %d]" % (bound, lo, hi),
                       {"kh_bound": bound, "interval": [lo, hi]})


def _verify(D: LinkDiagram, theorems: Sequence[str], args, T: KhTable | None = None,
            mode: str = "full") -> tuple[dict, list[CheckResult]]:
    results: dict = {}
    checks: list[CheckResult] = []
    need_table = set(theorems) & {"diagonal", "signature", "bounds", "knightmove", "euler"}
    if need_table and T is None:
        T, mode = _table(D, args)
    if T is not None:
        results["table_mode"] = mode
        if mode != "full":
            results["profile_note"] = "deltas computed over the computed slices only"
        if not T.is_zero():
            results["profile"] = extremal_profile(T).to_dict()
    full = mode == "full"
    for th in theorems:
        if th == "diagonal":
            checks += _side_checks(D, T)
        elif th == "signature":
            if is_split(D):
                checks.append(CheckResult("signature", True, "n/a", "split diagram"))
            else:
                checks.append(signature_report(D, T))
        elif th == "aakh":
            try:
                checks.append(check_aakh(D))
            except MisclassifiedError as exc:
                if list(theorems) == ["aakh"]:
                    raise InputError(str(exc)) from exc
                checks.append(CheckResult("aakh", True, "n/a", str(exc)))
        elif th == "bounds":
            checks += _bounds_checks(D, T if full else None)
        elif th == "les":
            if D.c > LES_LIMIT and not getattr(args, "full", False):
                checks.append(CheckResult("les", True, "n/a",
                                          "more than %d crossings (use --full)" % LES_LIMIT))
            else:
                checks.append(check_les(D))
            checks.append(check_les_jmin(D))
        elif th == "knightmove":
            checks.append(check_knight_move(T) if full else
                          CheckResult("knight_move", True, "n/a", "partial table"))
        elif th == "mirror":
            if D.c >= HEAVY and not getattr(args, "full", False):
                checks.append(CheckResult("mirror", True, "n/a", "heavy diagram (use --full)"))
            else:
                checks.append(check_mirror_duality(D))
        elif th == "euler":
            checks.append(check_euler(D, T) if full else
                          CheckResult("euler", True, "n/a", "partial table"))
    return results, checks


# ---------------------------------------------------------------------------
# commands

def cmd_states(fx: Fixture, args) -> tuple[dict | str, int]:
    D = fx.diagram
    res = {"name": fx.name, "c": D.c, "s_A": sA(D), "s_B": sB(D), "g_T": turaev_genus_diagram(D),
           "A_adequate": is_adequate(D, "A"), "B_adequate": is_adequate(D, "B"),
           "writhe": D.writhe, "components": D.num_components}
    if args.pretty:
        return "\n".join("%-11s %s" % (k, v) for k, v in res.items()), 0
    return res, 0


def cmd_jones(fx: Fixture, args) -> tuple[dict | str, int]:
    V = jones(fx.diagram)
    Vt = convert_normalization(V)
    res = {"name": fx.name, "q": {str(e): c for e, c in V.terms},
           "t": {str(Fraction(e, 2)): c for e, c in Vt.terms},
           "q_text": str(V), "t_text": str(Vt)}
    if args.pretty:
        return "V(q) = %s\nV(t) = %s" % (V, Vt), 0
    return res, 0


def cmd_kh(fx: Fixture, args) -> tuple[dict | str, int]:
    T, mode = _table(fx.diagram, args)
    if args.pretty:
        return T.pretty(), 0
    if args.csv:
        return T.grid_csv(), 0
    return {"name": fx.name, "mode": mode, "j_computed": list(T.j_range),
            "table": T.to_records()}, 0


def cmd_classify(fx: Fixture, args) -> tuple[dict | str, int]:
    D = fx.diagram
    res = classify(D).to_dict()
    res.update(turaev1_flags(D))
    res["signature"] = None if is_split(D) else signature(D)
    res["name"] = fx.name
    return res, 0


def cmd_tb(fx: Fixture, args) -> tuple[dict, int]:
    D = fx.diagram if args.side == "A" else mirror(fx.diagram)
    T, _ = _table(D, argparse.Namespace(jmin_only=False, jmax_only=False, j=None,
                                       full=True, threads=args.threads))
    res: dict = {"name": fx.name, "side": args.side, "kh_bound": kh_tb_bound(T),
                 "writhe": D.writhe}
    code = 0
    try:
        lo, hi = tb_interval(fx.diagram, args.side)
        res["interval"] = [lo, hi]
        if not lo <= res["kh_bound"] <= hi:
            code = 1
    except ValueError as exc:
        res["interval"] = None
        res["interval_note"] = str(exc)
    try:
        F, _, _ = legendrian_front(D)
        res["front_tb"] = tb_of_front(F)
        res["cusps"] = F.cusps
        if res["front_tb"] > res["kh_bound"]:
            code = 1
    except (ValueError, PDError) as exc:
        res["front_tb"] = None
        res["cusps"] = None
        res["front_note"] = str(exc)
    return res, code


def cmd_front(fx: Fixture, args) -> tuple[dict, int]:
    D = fx.diagram if args.side == "A" else mirror(fx.diagram)
    try:
        F, M, _ = legendrian_front(D)
    except (ValueError, PDError) as exc:
        raise InputError(str(exc)) from exc
    if args.svg:
        Path(args.svg).write_text(front_svg(F))
    res = {"name": fx.name, "side": args.side, "front": F.to_dict(),
           "mondrian": {"horizontals": [list(h) for h in M.horizontals],
                        "verticals": [list(v) for v in M.verticals], "marked": M.marked}}
    return res, 0


def cmd_verify(fx: Fixture, args) -> tuple[dict | str, int]:
    t0 = time.perf_counter()
    theorems = THEOREMS if args.theorem == "all" else (args.theorem,)
    results, checks = _verify(fx.diagram, theorems, args)
    rep, code = _report("verify", fx.name, list(theorems), results, checks, t0, args.stable)
    if args.pretty:
        lines = ["%s: %s" % (fx.name, "pass" if code == 0 else "FAIL")]
        for c in checks:
            lines.append("  %-16s %-5s [%s] %s" % (c.name, "ok" if c.passed else "fail",
                                                  c.hypothesis, c.message))
        return "\n".join(lines), code
    return rep, code


def corpus_run(args, reg: dict[str, Fixture] | None = None) -> tuple[dict, int]:
    t0 = time.perf_counter()
    reg = reg if reg is not None else load_fixtures()
    entries = {}
    violations = []
    for name in sorted(reg):
        fx = reg[name]
        D = fx.diagram
        theorems = ["diagonal", "signature", "bounds", "knightmove", "euler", "mirror"]
        if D.c <= LES_LIMIT:
            theorems.append("les")
        verdict = classify(D).verdict
        if verdict in ("A_almost_alternating", "B_almost_alternating", "both"):
            theorems.append("aakh")
        T, mode = _table(D, args)
        results, checks = _verify(D, theorems, args, T, mode)
        bad = [c.name for c in checks if c.violation]
        violations += ["%s:%s" % (name, b) for b in bad]
        entries[name] = {"crossings": D.c, "components": D.num_components,
                         "classification": verdict, "table_mode": mode,
                         "profile": results.get("profile"),
                         "obstruction": next((c.details["obstruction"] for c in checks
                                              if c.name == "main"), None),
                         "checks": {c.name: {"passed": c.passed, "hypothesis": c.hypothesis}
                                    for c in checks},
                         "violations": bad}
    rep = {"schema": SCHEMA, "command": "corpus run", "fixtures": len(entries),
           "entries": entries, "summary": {"violations": violations,
                                           "passed": not violations}}
    if not args.stable:
        rep["timing"] = {"seconds": round(time.perf_counter() - t0, 3)}
    return rep, (1 if violations else 0)


# ---------------------------------------------------------------------------
# entry point

def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="human-readable output")
    common.add_argument("--json", action="store_true", help="JSON output (default)")
    common.add_argument("--stable", action="store_true", help="omit timings")
    common.add_argument("--full", action="store_true", help="allow heavy computations")
    common.add_argument("--threads", type=int, default=1, help="parallel j-slices")
    common.add_argument("--flip-component", type=int, action="append", default=[],
                        metavar="K", help="reverse the orientation of component K")

    p = argparse.ArgumentParser(prog="khoverant", description="Khovanov homology toolkit")
    sub = p.add_subparsers(dest="command", required=True)
    s = sub.add_parser("states", parents=[common], help="state statistics")
    s.add_argument("file")
    s.add_argument("--summary", action="store_true")
    s = sub.add_parser("jones", parents=[common], help="Jones polynomial")
    s.add_argument("file")
    s = sub.add_parser("kh", parents=[common], help="Khovanov homology table")
    s.add_argument("file")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--jmin-only", action="store_true")
    g.add_argument("--jmax-only", action="store_true")
    g.add_argument("--j", metavar="A..B")
    s.add_argument("--csv", action="store_true", help="grid as CSV")
    s = sub.add_parser("classify", parents=[common], help="almost alternating structure")
    s.add_argument("file")
    s = sub.add_parser("verify", parents=[common], help="run theorem checks")
    s.add_argument("file")
    s.add_argument("--theorem", choices=THEOREMS + ("all",), default="all")
    s = sub.add_parser("tb", parents=[common], help="Thurston-Bennequin bounds")
    s.add_argument("file")
    s.add_argument("--side", choices=("A", "B"), default="A")
    s = sub.add_parser("front", parents=[common], help="Legendrian front")
    s.add_argument("file")
    s.add_argument("--svg", metavar="OUT")
    s.add_argument("--side", choices=("A", "B"), default="A")
    s = sub.add_parser("corpus", parents=[common], help="fixture corpus")
    s.add_argument("action", choices=("run", "list"))
    return p


COMMANDS = {"states": cmd_states, "jones": cmd_jones, "kh": cmd_kh, "classify": cmd_classify,
            "verify": cmd_verify, "tb": cmd_tb, "front": cmd_front}


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    raw = list(sys.argv[1:] if argv is None else argv)
    # "--j -1..3" would otherwise be read as an option
    argv = []
    while raw:
        a = raw.pop(0)
        if a == "--j" and raw:
            a = "--j=" + raw.pop(0)
        argv.append(a)
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        if args.command == "corpus":
            if args.action == "list":
                reg = load_fixtures()
                res = {"command": "corpus list",
                       "fixtures": {n: {k: f.meta.get(k) for k in ("crossings", "components",
                                                                   "source")}
                                    for n, f in sorted(reg.items())}}
                code = 0
            else:
                res, code = corpus_run(args)
        else:
            fx = _resolve_input(args.file)
            for k in args.flip_component:
                if not 0 <= k < len(fx.diagram.components):
                    raise InputError("no component %d" % k)
                fx.diagram = flip_component(fx.diagram, k)
            res, code = COMMANDS[args.command](fx, args)
    except (InputError, PDError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    if isinstance(res, dict):
        res.setdefault("schema", SCHEMA)
        res.setdefault("command", args.command)
    out.write(res if isinstance(res, str) else _dump(res))
    out.write("\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
