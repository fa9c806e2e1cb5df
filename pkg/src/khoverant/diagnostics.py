"""Extremal data of Khovanov tables and executable theorem checks.

Every checker returns a :class:`CheckResult`.  ``passed`` says whether the
stated conclusion holds; ``hypothesis`` records whether the diagram certifies
the hypothesis (``certified``), cannot tell (``unknown``) or the check is not
applicable (``n/a``).  A failure under a certified hypothesis is a violation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .classify import A_AA, B_AA, BOTH, classify, signature, turaev1_flags
from .diagram import LinkDiagram, is_split, mirror, resolve
from .homology import KhTable, KhovanovComplex, j_bounds, kh, unshifted_kh
from .polynomials import convert_normalization, jones
from .snf import SparseMatrix, smith_normal_form
from .states import is_adequate, sA, sB, turaev_genus_diagram

__all__ = [
    "CheckResult",
    "ExtremalProfile",
    "MisclassifiedError",
    "extremal_profile",
    "check_theorem_diagonal",
    "obstruction_report",
    "check_signature_relation",
    "check_aakh",
    "check_lowq",
    "check_ext_adeq",
    "check_diagonal_window",
    "check_span_bound",
    "check_euler",
    "check_knight_move",
    "check_mirror_duality",
    "check_les",
    "check_les_jmin",
]


class MisclassifiedError(ValueError):
    """The diagram does not satisfy the checker's classification precondition."""


@dataclass
class CheckResult:
    name: str
    passed: bool
    hypothesis: str = "certified"
    message: str = ""
    details: dict = field(default_factory=dict)

    @property
    def violation(self) -> bool:
        return not self.passed and self.hypothesis == "certified"

    def to_dict(self) -> dict:
        return {"check": self.name, "passed": self.passed, "hypothesis": self.hypothesis,
                "message": self.message, "details": self.details}


# ---------------------------------------------------------------------------
# extremal data

@dataclass(frozen=True)
class ExtremalProfile:
    j_min: int
    j_max: int
    delta_min: int
    delta_max: int
    bottom: dict
    top: dict

    @staticmethod
    def _i0(row: dict) -> int | None:
        return next(iter(row)) if len(row) == 1 else None

    @property
    def i0_min(self) -> int | None:
        return self._i0(self.bottom)

    @property
    def i0_max(self) -> int | None:
        return self._i0(self.top)

    @staticmethod
    def _cyclic(row: dict) -> bool:
        return len(row) == 1 and next(iter(row.values())) == (1, ())

    @property
    def bottom_is_z(self) -> bool:
        return self._cyclic(self.bottom)

    @property
    def top_is_z(self) -> bool:
        return self._cyclic(self.top)

    @property
    def bottom_rank(self) -> int:
        return sum(r for r, _ in self.bottom.values())

    @property
    def top_rank(self) -> int:
        return sum(r for r, _ in self.top.values())

    def to_dict(self) -> dict:
        def row(r):
            return [{"i": i, "rank": v[0], "torsion": list(v[1])} for i, v in sorted(r.items())]
        return {"j_min": self.j_min, "j_max": self.j_max, "delta_min": self.delta_min,
                "delta_max": self.delta_max, "i0_min": self.i0_min, "i0_max": self.i0_max,
                "bottom": row(self.bottom), "top": row(self.top)}


def extremal_profile(T: KhTable) -> ExtremalProfile:
    if T.is_zero():
        raise ValueError("empty Khovanov table")
    deltas = [2 * i - j for i, j in T.cells]
    return ExtremalProfile(T.j_min, T.j_max, min(deltas), max(deltas),
                           T.row(T.j_min), T.row(T.j_max))


def _side_failure(row: dict) -> str | None:
    if len(row) == 1 and next(iter(row.values())) == (1, ()):
        return None
    rank = sum(r for r, _ in row.values())
    tors = sorted(t for _, ts in row.values() for t in ts)
    if len(row) > 1:
        msg = "not cyclic: extremal rank = %d in gradings %s" % (rank, sorted(row))
    else:
        msg = "extremal rank = %d" % rank
    if tors:
        msg += ", torsion %s" % tors
    return msg


def check_theorem_diagonal(T: KhTable, side: str = "A") -> CheckResult:
    """Extremal group is Z and sits two diagonals in from the extreme diagonal."""
    P = extremal_profile(T)
    side = side.upper()
    if side == "A":
        row, j, delta, off, label = P.bottom, P.j_min, P.delta_min, 2, "j_min"
    elif side == "B":
        row, j, delta, off, label = P.top, P.j_max, P.delta_max, -2, "j_max"
    else:
        raise ValueError("side must be A or B")
    details = {"side": side, label: j, "delta": delta,
               "row": {str(i): [v[0], list(v[1])] for i, v in sorted(row.items())}}
    why = _side_failure(row)
    if why is not None:
        return CheckResult("diagonal_" + side, False, "unknown", why, details)
    i0 = next(iter(row))
    lhs = 2 * i0 - j
    details.update({"i0": i0, "lhs": lhs, "rhs": delta + off})
    if lhs != delta + off:
        return CheckResult("diagonal_" + side, False, "unknown",
                           "2i0 - %s = %d != %d" % (label, lhs, delta + off), details)
    return CheckResult("diagonal_" + side, True, "unknown", "holds", details)


def obstruction_report(T: KhTable) -> dict:
    a = check_theorem_diagonal(T, "A")
    b = check_theorem_diagonal(T, "B")
    fires = not a.passed and not b.passed
    if fires and a.details.get("lhs") is None and b.details.get("lhs") is None:
        ra = extremal_profile(T).bottom_rank
        rb = extremal_profile(T).top_rank
        summary = ("both extremal ranks = %d" % ra) if ra == rb else "both extremal groups fail"
    elif fires:
        summary = "both sides fail"
    else:
        summary = "no obstruction"
    out = {"A": a.to_dict(), "B": b.to_dict(), "obstruction": fires, "summary": summary}
    if fires:
        out["verdict"] = ("inadequate, not almost alternating, Turaev genus >= 2, "
                          "dealternating number >= 2")
    return out


def check_signature_relation(T: KhTable, sigma: int) -> CheckResult:
    P = extremal_profile(T)
    res = {}
    for label, row, j, want in (("j_min", P.bottom, P.j_min, sigma + 1),
                                ("j_max", P.top, P.j_max, sigma - 1)):
        why = _side_failure(row)
        if why is None:
            i0 = next(iter(row))
            ok = 2 * i0 - j == want
            why = "holds" if ok else "2i0 - %s = %d != %d" % (label, 2 * i0 - j, want)
        else:
            ok = False
        res[label] = {"holds": ok, "reason": why}
    passed = res["j_min"]["holds"] or res["j_max"]["holds"]
    msg = "; ".join("%s: %s" % (k, v["reason"]) for k, v in res.items())
    return CheckResult("signature", passed, "unknown", msg, {"sigma": sigma, **res})


# ---------------------------------------------------------------------------
# diagram-level checks

def _side_of(D: LinkDiagram) -> str:
    verdict = classify(D).verdict
    if verdict in (A_AA, BOTH):
        return "A"
    if verdict == B_AA:
        return "B"
    raise MisclassifiedError("diagram is %s, not A- or B-almost alternating" % verdict)


def check_lowq(D: LinkDiagram, side: str | None = None) -> CheckResult:
    """No homology beyond the almost-alternating extremal grading."""
    side = side or _side_of(D)
    lo, hi = j_bounds(D)
    if side == "A":
        js = range(lo, 2 - sA(D), 2)
    else:
        js = range(D.c + sB(D) - 2 + 2, hi + 1, 2)
    T = unshifted_kh(D, js)
    ok = T.is_zero()
    return CheckResult("lowq_" + side, ok, "certified",
                       "vacuous range is zero" if ok else "nonzero groups %s" % T.nonzero(),
                       {"slices": list(js)})


def check_aakh(D: LinkDiagram) -> CheckResult:
    """Extremal unshifted group of an almost alternating diagram.

    A side: ``j_min = 2 - s_A`` with Z at ``i = 1``.  B side, through mirror
    duality: ``j_max = c + s_B - 2`` with Z at ``i = c - 1``.
    """
    side = _side_of(D)
    low = check_lowq(D, side)
    if side == "A":
        j, i = 2 - sA(D), 1
    else:
        j, i = D.c + sB(D) - 2, D.c - 1
    row = unshifted_kh(D, [j]).row(j)
    ok = low.passed and row == {i: (1, ())}
    details = {"side": side, "j": j, "i": i, "lowq": low.passed,
               "row": {str(k): [v[0], list(v[1])] for k, v in sorted(row.items())}}
    msg = "holds" if ok else "expected Z at (%d,%d), found %s" % (i, j, details["row"])
    return CheckResult("aakh", ok, "certified", msg, details)


def check_ext_adeq(D: LinkDiagram) -> CheckResult:
    """Adequate sides have Z at the very end of the chain complex."""
    lo, hi = j_bounds(D)
    details = {}
    ok = True
    applicable = False
    if is_adequate(D, "A"):
        applicable = True
        T = unshifted_kh(D, mode="jmin")
        good = T.j_min == lo and T.row(lo) == {0: (1, ())}
        details["A"] = good
        ok &= good
    if is_adequate(D, "B"):
        applicable = True
        T = unshifted_kh(D, mode="jmax")
        good = T.j_max == hi and T.row(hi) == {D.c: (1, ())}
        details["B"] = good
        ok &= good
    return CheckResult("ext_adeq", ok, "certified" if applicable else "n/a",
                       "holds" if ok else "extremal group not Z at the complex's end", details)


def check_diagonal_window(D: LinkDiagram, T: KhTable) -> CheckResult:
    """Parity and bounds on ``2i - j`` from the all-A and all-B circle counts."""
    if is_split(D):
        return CheckResult("diagonal_window", True, "n/a", "split diagram")
    base = sA(D) - D.c_plus
    lo = base - 2
    hi = D.c_minus - sB(D) + 2
    tg1 = turaev_genus_diagram(D) == 1
    if tg1:
        hi = min(hi, base + 2)
    bad = [(i, j) for i, j in T.cells
           if (2 * i - j - base) % 2 or not lo <= 2 * i - j <= hi]
    return CheckResult("diagonal_window", not bad, "certified",
                       "holds" if not bad else "entries outside window: %s" % bad,
                       {"window": [lo, hi], "turaev_genus_one": tg1})


def check_span_bound(D: LinkDiagram) -> CheckResult:
    if is_split(D):
        return CheckResult("span_bound", True, "n/a", "split diagram")
    span = convert_normalization(jones(D)).span()
    bound = D.c - turaev_genus_diagram(D)
    ok = span <= bound
    return CheckResult("span_bound", ok, "certified",
                       "span %s <= %d" % (span, bound) if ok else "span %s > %d" % (span, bound),
                       {"span": str(span), "bound": bound})


def check_euler(D: LinkDiagram, T: KhTable) -> CheckResult:
    ok = T.euler() == jones(D)
    return CheckResult("euler", ok, "certified", "chi = Jones" if ok else "chi != Jones")


def check_knight_move(T: KhTable) -> CheckResult:
    ranks = T.poincare()
    if not ranks:
        return CheckResult("knight_move", True, "n/a", "no free part")
    js = [j for _, j in ranks]
    span = max(js) - min(js)
    lonely = []
    for (i, j) in ranks:
        if ranks.get((i, j + 2)) or ranks.get((i, j - 2)):
            continue
        if any(ranks.get((i + 1, j + 4 * k)) or ranks.get((i - 1, j - 4 * k))
               for k in range(1, span // 4 + 2)):
            continue
        lonely.append((i, j))
    return CheckResult("knight_move", not lonely, "certified",
                       "holds" if not lonely else "no companion for %s" % lonely)


def check_mirror_duality(D: LinkDiagram, U: KhTable | None = None,
                         Ubar: KhTable | None = None) -> CheckResult:
    """Ranks at ``(i, j)`` and ``(c-i, c-j)``, torsion at ``(i, j)`` and ``(c-i+1, c-j)``."""
    U = U if U is not None else unshifted_kh(D)
    Ubar = Ubar if Ubar is not None else unshifted_kh(mirror(D))
    c = D.c
    bad = []
    keys = set(Ubar.cells) | {(c - i, c - j) for i, j in U.cells} \
        | {(c - i + 1, c - j) for i, j in U.cells}
    for i, j in sorted(keys):
        if Ubar.rank(i, j) != U.rank(c - i, c - j):
            bad.append(("rank", i, j))
        if Ubar.torsion(i, j) != U.torsion(c - i + 1, c - j):
            bad.append(("torsion", i, j))
    return CheckResult("mirror", not bad, "certified",
                       "holds" if not bad else "mismatch at %s" % bad[:5])


# ---------------------------------------------------------------------------
# long exact sequence of a crossing

def _rank(nrows: int, ncols: int, entries) -> int:
    if not nrows or not ncols:
        return 0
    return smith_normal_form(SparseMatrix.from_entries(nrows, ncols, entries)).rank


def _les_slice(K: KhovanovComplex, k: int, j: int) -> dict:
    """Ranks for the sequence of crossing ``k`` in quantum grading ``j``.

    The subcomplex spanned by states with the B-smoothing at ``k`` models the
    complex of the B-resolution (shifted by one in both gradings), the quotient
    by it models the A-resolution.  ``f`` is the inclusion, ``g`` the
    projection and ``h`` the part of the differential from A- to B-states,
    which induces the connecting map.
    """
    gens, level, out = K.slice_complex(j)
    bit = 1 << k
    is_b = [bool(s & bit) for s, _ in gens]
    idx: dict[tuple[str, int], list[int]] = {}
    for g, lv in enumerate(level):
        idx.setdefault(("C", lv), []).append(g)
        idx.setdefault(("S" if is_b[g] else "Q", lv), []).append(g)
    pos = {}
    for key, lst in idx.items():
        for p, g in enumerate(lst):
            pos[(key[0], g)] = p

    def basis(kind, i):
        return idx.get((kind, i), [])

    def d_entries(src_kind, dst_kind, i, keep):
        ents = []
        for g in basis(src_kind, i):
            for h, v in out[g].items():
                if keep(g, h):
                    ents.append((pos[(dst_kind, h)], pos[(src_kind, g)], v))
        return ents

    levels = sorted({lv for lv in level})
    if not levels:
        return {}
    lo_i, hi_i = levels[0] - 1, levels[-1] + 1
    keep_c = lambda g, h: True  # noqa: E731
    keep_s = lambda g, h: is_b[h]  # noqa: E731
    keep_q = lambda g, h: not is_b[h]  # noqa: E731
    rk = {}
    for kind, keep in (("C", keep_c), ("S", keep_s), ("Q", keep_q)):
        for i in range(lo_i, hi_i + 1):
            rk[(kind, i)] = _rank(len(basis(kind, i + 1)), len(basis(kind, i)),
                                  d_entries(kind, kind, i, keep))
    dims = {}
    for kind in "CSQ":
        for i in range(lo_i, hi_i + 1):
            dims[(kind, i)] = len(basis(kind, i)) - rk[(kind, i)] - rk.get((kind, i - 1), 0)

    def induced(src, dst, i, p, phi):
        """Rank of the map on homology induced by ``phi: src^i -> dst^(i+p)``."""
        ys = basis(dst, i + p - 1)
        xs = basis(src, i)
        n_rows = len(basis(dst, i + p)) + len(basis(src, i + 1))
        off_r = len(basis(dst, i + p))
        off_c = len(ys)
        ents = []
        for g in ys:  # d_dst^(i+p-1)
            for h, v in out[g].items():
                if (dst, h) in pos and level[h] == i + p and (dst != "S" or is_b[h]) \
                        and (dst != "Q" or not is_b[h]):
                    ents.append((pos[(dst, h)], pos[(dst, g)], v))
        for g in xs:
            for r, v in phi(g):
                ents.append((r, off_c + pos[(src, g)], v))
            for h, v in out[g].items():  # d_src^i
                if (src != "S" or is_b[h]) and (src != "Q" or not is_b[h]):
                    ents.append((off_r + pos[(src, h)], off_c + pos[(src, g)], v))
        total = _rank(n_rows, len(ys) + len(xs), ents)
        return total - rk.get((src, i), 0) - rk.get((dst, i + p - 1), 0)

    f = lambda g: [(pos[("C", g)], 1)]  # noqa: E731
    gmap = lambda g: [] if is_b[g] else [(pos[("Q", g)], 1)]  # noqa: E731
    hmap = lambda g: [(pos[("S", h)], v) for h, v in out[g].items() if is_b[h]]  # noqa: E731
    maps = {}
    for i in range(lo_i, hi_i + 1):
        maps[("f", i)] = induced("S", "C", i, 0, f)
        maps[("g", i)] = induced("C", "Q", i, 0, gmap)
        maps[("h", i)] = induced("Q", "S", i, 1, hmap)
    return {"dims": dims, "maps": maps, "range": (lo_i, hi_i)}


def check_les(D: LinkDiagram, crossings=None, js=None) -> CheckResult:
    """Exactness over Q of the long exact sequence at each crossing and slice.

    Also confirms that the sub- and quotient complexes reproduce the homology
    of the two resolutions computed from scratch.
    """
    if D.c == 0:
        return CheckResult("les", True, "n/a", "no crossings")
    K = KhovanovComplex(D)
    lo, hi = j_bounds(D)
    js = list(range(lo, hi + 1, 2)) if js is None else list(js)
    crossings = range(D.c) if crossings is None else crossings
    problems = []
    windows = 0
    for k in crossings:
        UA = unshifted_kh(resolve(D, k, "A"))
        UB = unshifted_kh(resolve(D, k, "B"))
        for j in js:
            data = _les_slice(K, k, j)
            if not data:
                continue
            dims, maps = data["dims"], data["maps"]
            a, b = data["range"]
            for i in range(a, b + 1):
                windows += 3
                # ... -> S^i -f-> C^i -g-> Q^i -h-> S^(i+1) -> ...
                if dims[("S", i)] != maps.get(("h", i - 1), 0) + maps[("f", i)]:
                    problems.append((k, i, j, "S"))
                if dims[("C", i)] != maps[("f", i)] + maps[("g", i)]:
                    problems.append((k, i, j, "C"))
                if dims[("Q", i)] != maps[("g", i)] + maps[("h", i)]:
                    problems.append((k, i, j, "Q"))
                if dims[("Q", i)] != UA.rank(i, j):
                    problems.append((k, i, j, "A-resolution"))
                if dims[("S", i)] != UB.rank(i - 1, j - 1):
                    problems.append((k, i, j, "B-resolution"))
    return CheckResult("les", not problems, "certified",
                       "exact" if not problems else "failures at %s" % problems[:5],
                       {"windows": windows})


def check_les_jmin(D: LinkDiagram) -> CheckResult:
    """Where the bottom of the A-resolution sits below the B-resolution's, it is inherited."""
    if D.c == 0:
        return CheckResult("les_jmin", True, "n/a", "no crossings")
    U = unshifted_kh(D, mode="jmin")
    fired = 0
    bad = []
    for k in range(D.c):
        TA = unshifted_kh(resolve(D, k, "A"), mode="jmin")
        TB = unshifted_kh(resolve(D, k, "B"), mode="jmin")
        if TA.j_min - 1 < TB.j_min:
            fired += 1
            if U.j_min != TA.j_min or U.row(U.j_min) != TA.row(TA.j_min):
                bad.append(k)
    return CheckResult("les_jmin", not bad, "certified" if fired else "n/a",
                       "holds" if not bad else "fails at crossings %s" % bad,
                       {"hypothesis_met": fired})


def signature_report(D: LinkDiagram, T: KhTable | None = None) -> CheckResult:
    T = T if T is not None else kh(D)
    sigma = signature(D)
    r = check_signature_relation(T, sigma)
    flags = turaev1_flags(D)
    r.hypothesis = "certified" if flags["A_tg1"] and flags["B_tg1"] else "unknown"
    return r
