"""Khovanov chain complex and its integral homology.

Generators of a quantum slice are enhanced states ``(s, mask)``; the complex
splits over ``j`` so each slice is built and reduced on its own.  Reduction
first cancels every pair of generators joined by a unit coefficient (a
Gaussian elimination on the complex, which preserves homology) and then runs a
dense Smith normal form on whatever is left.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .diagram import LinkDiagram
from .polynomials import LaurentPoly
from .snf import SparseMatrix, dense_invariant_factors, prime_power_parts
from .states import EnhancedState, circle_labels, kauffman_state, masks_with_popcount, states_in_slice

__all__ = [
    "ChainSlice",
    "KhTable",
    "KhovanovComplex",
    "chain_slice",
    "incidence",
    "sign",
    "boundary_matrix",
    "unshifted_kh",
    "kh",
    "j_bounds",
    "grading_shift",
    "d_squared_zero",
]

Cell = tuple[int, tuple[int, ...]]


# ---------------------------------------------------------------------------
# the table

@dataclass(frozen=True)
class ChainSlice:
    """The chain group ``C^{i,j}`` with its outgoing and incoming differentials."""

    i: int
    j: int
    basis: tuple[EnhancedState, ...]
    d_out: SparseMatrix
    d_in: SparseMatrix


@dataclass(frozen=True)
class KhTable:
    """Nonzero Khovanov groups ``Z^rank + sum Z/t`` indexed by ``(i, j)``.

    ``j_range`` lists the quantum gradings that were actually computed, so a
    missing cell inside it is a genuine zero.
    """

    cells: Mapping[tuple[int, int], Cell]
    j_range: tuple[int, ...] = ()
    shifted: bool = True
    name: str | None = None

    def __getitem__(self, key: tuple[int, int]) -> Cell:
        return self.cells.get(key, (0, ()))

    def rank(self, i: int, j: int) -> int:
        return self[i, j][0]

    def torsion(self, i: int, j: int) -> tuple[int, ...]:
        return self[i, j][1]

    def nonzero(self) -> list[tuple[int, int]]:
        return sorted(self.cells)

    def computed(self, j: int) -> bool:
        return j in self.j_range

    def is_zero(self) -> bool:
        return not self.cells

    @property
    def j_min(self) -> int | None:
        return min((j for _, j in self.cells), default=None)

    @property
    def j_max(self) -> int | None:
        return max((j for _, j in self.cells), default=None)

    def row(self, j: int) -> dict[int, Cell]:
        return {i: v for (i, jj), v in self.cells.items() if jj == j}

    def euler(self) -> LaurentPoly:
        acc: dict[int, int] = {}
        for (i, j), (r, _) in self.cells.items():
            acc[j] = acc.get(j, 0) + (-r if i % 2 else r)
        return LaurentPoly.from_dict(acc)

    def poincare(self) -> dict[tuple[int, int], int]:
        return {k: v[0] for k, v in self.cells.items() if v[0]}

    def shift(self, di: int, dj: int) -> "KhTable":
        cells = {(i + di, j + dj): v for (i, j), v in self.cells.items()}
        return KhTable(cells, tuple(j + dj for j in self.j_range), self.shifted, self.name)

    def to_records(self) -> list[dict]:
        return [{"i": i, "j": j, "rank": r, "torsion": list(t)}
                for (i, j), (r, t) in sorted(self.cells.items())]

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_records(), **kw)

    @classmethod
    def from_records(cls, records: Iterable[Mapping], j_range: Sequence[int] = (),
                     shifted: bool = True, name: str | None = None) -> "KhTable":
        cells = {}
        for r in records:
            tors = tuple(sorted(int(t) for t in r.get("torsion", ())))
            if r["rank"] or tors:
                cells[(int(r["i"]), int(r["j"]))] = (int(r["rank"]), tors)
        return cls(cells, tuple(j_range), shifted, name)

    def _cell_text(self, i: int, j: int) -> str:
        r, tors = self[i, j]
        parts = [str(r)] if r else []
        counts: dict[int, int] = {}
        for t in tors:
            counts[t] = counts.get(t, 0) + 1
        parts += ["%d_%d" % (n, t) for t, n in sorted(counts.items())]
        return ",".join(parts)

    def _axes(self) -> tuple[list[int], list[int]]:
        if not self.cells:
            return [], []
        i_lo = min(i for i, _ in self.cells)
        i_hi = max(i for i, _ in self.cells)
        js = sorted({j for _, j in self.cells}, reverse=True)
        j_all = list(range(js[0], js[-1] - 1, -2))
        return list(range(i_lo, i_hi + 1)), j_all

    def grid_csv(self) -> str:
        """Rows ``j`` descending, columns ``i`` ascending; cells like ``2,1_2``."""
        i_axis, j_axis = self._axes()
        lines = ["j\\i," + ",".join(str(i) for i in i_axis)]
        for j in j_axis:
            cells = []
            for i in i_axis:
                txt = self._cell_text(i, j)
                cells.append('"%s"' % txt if "," in txt else txt)
            lines.append(str(j) + "," + ",".join(cells))
        return "\n".join(lines) + "\n"

    def pretty(self) -> str:
        i_axis, j_axis = self._axes()
        if not i_axis:
            return "(zero)\n"
        body = [[self._pretty_cell(i, j) for i in i_axis] for j in j_axis]
        width = max([len(str(i)) for i in i_axis] + [len(c) for r in body for c in r] + [1])
        jw = max(len(str(j)) for j in j_axis + ["j"])
        head = "j".rjust(jw) + " | " + " ".join(str(i).rjust(width) for i in i_axis)
        out = [head, "-" * len(head)]
        for j, r in zip(j_axis, body):
            out.append(str(j).rjust(jw) + " | " + " ".join(c.rjust(width) for c in r))
        return "\n".join(out) + "\n"

    def _pretty_cell(self, i: int, j: int) -> str:
        r, tors = self[i, j]
        if not r and not tors:
            return "."
        counts: dict[int, int] = {}
        for t in tors:
            counts[t] = counts.get(t, 0) + 1
        parts = [str(r)] if r else []
        parts += ["%sZ%d" % ("" if n == 1 else n, t) for t, n in sorted(counts.items())]
        return "+".join(parts)


# ---------------------------------------------------------------------------
# the complex

class KhovanovComplex:
    """Lazy Khovanov complex of a diagram, unshifted gradings."""

    def __init__(self, D: LinkDiagram):
        self.D = D
        self._circ: dict[int, tuple[tuple[int, ...], int]] = {}
        self._first: dict[int, list[int]] = {}
        self._trans: dict[tuple[int, int], tuple] = {}

    def circles(self, s: int) -> tuple[tuple[int, ...], int]:
        v = self._circ.get(s)
        if v is None:
            v = self._circ[s] = circle_labels(self.D, s)
        return v

    def size(self, s: int) -> int:
        return self.circles(s)[1] + self.D.loops

    def _firsts(self, s: int) -> list[int]:
        """An arc lying on each circle of ``s``."""
        f = self._first.get(s)
        if f is None:
            lab, n = self.circles(s)
            f = [-1] * n
            for a, m in enumerate(lab):
                if f[m] < 0:
                    f[m] = a
            self._first[s] = f
        return f

    def transition(self, s: int, k: int) -> tuple:
        """Data for the edge ``s -> s + e_k``.

        Returns ``(split, p, q, targets, dst)`` where ``dst[m]`` is the bit of
        circle ``m`` in the target state (0 for the circles touching ``k``);
        for a merge ``targets`` is the merged circle, for a split the pair of
        new circles on the ``(a, d)`` and ``(b, c)`` sides.
        """
        key = (s, k)
        v = self._trans.get(key)
        if v is not None:
            return v
        t = s | (1 << k)
        lab_s, n_s = self.circles(s)
        lab_t, n_t = self.circles(t)
        a, b, c, d = self.D.crossings[k]
        p, q = lab_s[a - 1], lab_s[c - 1]
        split = p == q
        dst = [0] * (n_s + self.D.loops)
        for m, arc in enumerate(self._firsts(s)):
            if m != p and m != q:
                dst[m] = 1 << lab_t[arc]
        for e in range(self.D.loops):
            dst[n_s + e] = 1 << (n_t + e)
        targets = (lab_t[a - 1], lab_t[b - 1]) if split else lab_t[a - 1]
        v = (split, p, q, targets, dst)
        self._trans[key] = v
        return v

    def images(self, s: int, k: int, mask: int) -> list[int]:
        """Label masks hit by ``(s, mask)`` in state ``s + e_k`` (coefficient +1)."""
        split, p, q, tg, dst = self.transition(s, k)
        rest = 0
        m = mask & ~((1 << p) | (1 << q))
        while m:
            low = m & -m
            rest |= dst[low.bit_length() - 1]
            m ^= low
        xp = (mask >> p) & 1
        if split:
            r1, r2 = tg
            if xp:
                return [rest | (1 << r1) | (1 << r2)]
            return [rest | (1 << r2), rest | (1 << r1)]
        xq = (mask >> q) & 1
        if xp and xq:
            return []
        if xp or xq:
            return [rest | (1 << tg)]
        return [rest]

    def slice_generators(self, j: int) -> dict[int, list[tuple[int, int]]]:
        """Generators of quantum grading ``j`` per homological degree, in basis order."""
        states = states_in_slice(self.D, j, self._circ)
        out: dict[int, list[tuple[int, int]]] = {}
        for s in states:
            b = bin(s).count("1")
            n = self.size(s)
            nx, rem = divmod(b + n - j, 2)
            if rem or nx < 0 or nx > n:
                continue
            masks = masks_with_popcount(n, nx)
            if masks:
                out.setdefault(b, []).extend((s, m) for m in masks)
        return dict(sorted(out.items()))

    def slice_complex(self, j: int):
        """Generators of slice ``j`` and the differential as ``out[g] = {h: coeff}``."""
        gens_by_i = self.slice_generators(j)
        gens: list[tuple[int, int]] = []
        level: list[int] = []
        for i, g in gens_by_i.items():
            gens.extend(g)
            level.extend([i] * len(g))
        index: dict[int, dict[int, int]] = {}
        for g, (s, m) in enumerate(gens):
            index.setdefault(s, {})[m] = g
        c = self.D.c
        out: list[dict[int, int]] = [{} for _ in gens]
        for g, (s, m) in enumerate(gens):
            row = out[g]
            for k in range(c):
                bit = 1 << k
                if s & bit:
                    continue
                tgt = index.get(s | bit)
                if tgt is None:
                    continue
                eps = -1 if bin(s & (bit - 1)).count("1") & 1 else 1
                for m2 in self.images(s, k, m):
                    row[tgt[m2]] = eps
        return gens, level, out

    def homology_slice(self, j: int, check: bool = False) -> dict[int, Cell]:
        gens, level, out = self.slice_complex(j)
        if check and not d_squared_zero(out):
            raise AssertionError("d^2 != 0 in slice j=%d" % j)
        return _homology(level, out)


def d_squared_zero(out: list[dict[int, int]]) -> bool:
    for row in out:
        acc: dict[int, int] = {}
        for y, v in row.items():
            for z, w in out[y].items():
                acc[z] = acc.get(z, 0) + v * w
        if any(acc.values()):
            return False
    return True


def _homology(level: list[int], out: list[dict[int, int]]) -> dict[int, Cell]:
    n = len(level)
    inn: list[dict[int, int]] = [{} for _ in range(n)]
    for x, row in enumerate(out):
        for y, v in row.items():
            inn[y][x] = v
    alive = [True] * n
    progress = True
    while progress:
        progress = False
        for x in range(n):
            if not alive[x]:
                continue
            ox = out[x]
            best, cost = -1, -1
            for y, v in ox.items():
                if v == 1 or v == -1:
                    cy = len(inn[y])
                    if best < 0 or cy < cost:
                        best, cost = y, cy
                        if cy == 1:
                            break
            if best < 0:
                continue
            _cancel(x, best, out, inn)
            alive[x] = alive[best] = False
            progress = True
    left: dict[int, list[int]] = {}
    for x in range(n):
        if alive[x]:
            left.setdefault(level[x], []).append(x)
    factors: dict[int, list[int]] = {}
    for i, xs in left.items():
        ys = left.get(i + 1, [])
        pos = {y: r for r, y in enumerate(ys)}
        dense = [[0] * len(xs) for _ in ys]
        nonzero = False
        for col, x in enumerate(xs):
            for y, v in out[x].items():
                dense[pos[y]][col] = v
                nonzero = True
        factors[i] = dense_invariant_factors(dense) if nonzero else []
    res: dict[int, Cell] = {}
    for i, xs in left.items():
        r_out = len(factors.get(i, []))
        inc = factors.get(i - 1, [])
        free = len(xs) - r_out - len(inc)
        tors: list[int] = []
        for f in inc:
            if f > 1:
                tors.extend(prime_power_parts(f))
        if free or tors:
            res[i] = (free, tuple(sorted(tors)))
    return res


def _cancel(x: int, y: int, out: list[dict[int, int]], inn: list[dict[int, int]]) -> None:
    """Gaussian elimination of the unit entry ``d(x -> y)``."""
    ox, iy = out[x], inn[y]
    u = ox[y]  # a unit, so u^-1 == u
    for z, vzy in iy.items():
        if z == x:
            continue
        f = vzy * u
        oz = out[z]
        for w, vxw in ox.items():
            if w == y:
                continue
            nv = oz.get(w, 0) - f * vxw
            if nv:
                oz[w] = nv
                inn[w][z] = nv
            elif w in oz:
                del oz[w]
                del inn[w][z]
    for w in ox:
        del inn[w][x]
    for v in inn[x]:
        del out[v][x]
    for z in iy:
        if z != x:
            del out[z][y]
    for w in out[y]:
        del inn[w][y]
    out[x] = {}
    inn[x] = {}
    out[y] = {}
    inn[y] = {}


# ---------------------------------------------------------------------------
# generic helpers on explicit enhanced states

def incidence(S0: EnhancedState, S1: EnhancedState) -> int:
    """1 when ``S1`` occurs in the differential of ``S0``, else 0.

    Works from the circles' arc sets alone: circles present in both states
    must carry the same label, and the remaining ones form a merge (two into
    one) or a split (one into two) with one of the allowed label patterns.
    """
    k0, k1 = S0.state, S1.state
    if k0.c != k1.c or k0.loops != k1.loops:
        return 0
    diff = k0.choices ^ k1.choices
    if k1.choices & ~k0.choices != diff or bin(diff).count("1") != 1:
        return 0
    lab0 = {frozenset(c): (S0.labels >> m) & 1 for m, c in enumerate(k0.circles)}
    lab1 = {frozenset(c): (S1.labels >> m) & 1 for m, c in enumerate(k1.circles)}
    n0 = len(k0.circles)
    n1 = len(k1.circles)
    for e in range(k0.loops):
        if (S0.labels >> (n0 + e)) & 1 != (S1.labels >> (n1 + e)) & 1:
            return 0
    for circ in set(lab0) & set(lab1):
        if lab0[circ] != lab1[circ]:
            return 0
    old = [lab0[c] for c in lab0 if c not in lab1]
    new = [lab1[c] for c in lab1 if c not in lab0]
    if len(old) == 2 and len(new) == 1:
        return int(sum(old) < 2 and new[0] == sum(old))
    if len(old) == 1 and len(new) == 2:
        return int(sum(new) == 1 + old[0])
    return 0


def sign(S0: EnhancedState, S1: EnhancedState) -> int:
    diff = S0.state.choices ^ S1.state.choices
    if bin(diff).count("1") != 1:
        raise ValueError("states differ at more than one crossing")
    return -1 if bin(S0.state.choices & (diff - 1)).count("1") & 1 else 1


def boundary_matrix(D: LinkDiagram, i: int, j: int):
    """Matrix of ``d: C^{i,j} -> C^{i+1,j}`` (unshifted) with its two bases.

    Rows index the target basis, columns the source basis; both bases are in
    state order then label order.
    """
    K = KhovanovComplex(D)
    gens = K.slice_generators(j)
    src = gens.get(i, [])
    dst = gens.get(i + 1, [])
    pos = {g: r for r, g in enumerate(dst)}
    entries = []
    for col, (s, m) in enumerate(src):
        for k in range(D.c):
            bit = 1 << k
            if s & bit:
                continue
            eps = -1 if bin(s & (bit - 1)).count("1") & 1 else 1
            for m2 in K.images(s, k, m):
                r = pos.get((s | bit, m2))
                if r is not None:
                    entries.append((r, col, eps))
    M = SparseMatrix.from_entries(len(dst), len(src), entries)
    to_state = lambda g: EnhancedState(kauffman_state(D, g[0]), g[1])  # noqa: E731
    return M, [to_state(g) for g in src], [to_state(g) for g in dst]


def chain_slice(D: LinkDiagram, i: int, j: int) -> ChainSlice:
    out, basis, _ = boundary_matrix(D, i, j)
    inc, _, _ = boundary_matrix(D, i - 1, j)
    return ChainSlice(i, j, tuple(basis), out, inc)


# ---------------------------------------------------------------------------
# top level

def j_bounds(D: LinkDiagram) -> tuple[int, int]:
    """Unshifted quantum range ``[-s_A, c + s_B]`` of the chain complex."""
    n0 = circle_labels(D, 0)[1] + D.loops
    n1 = circle_labels(D, (1 << D.c) - 1)[1] + D.loops
    return -n0, D.c + n1


def _slice_worker(args):
    D, j, check = args
    return j, KhovanovComplex(D).homology_slice(j, check)


def unshifted_kh(D: LinkDiagram, js: Iterable[int] | None = None, jobs: int = 1,
                 check: bool = False, mode: str = "full") -> KhTable:
    """Homology of the unshifted complex.

    With ``mode="full"`` every requested slice (default: all) is computed.
    ``"jmin"``/``"jmax"`` walk up from the bottom or down from the top and stop
    at the first nonzero slice.
    """
    lo, hi = j_bounds(D)
    cells: dict[tuple[int, int], Cell] = {}
    if mode in ("jmin", "jmax"):
        order = range(lo, hi + 1, 2) if mode == "jmin" else range(hi, lo - 1, -2)
        K = KhovanovComplex(D)
        done = []
        for j in order:
            row = K.homology_slice(j, check)
            done.append(j)
            if row:
                for i, v in row.items():
                    cells[(i, j)] = v
                break
        return KhTable(cells, tuple(sorted(done)), False, D.name)
    if mode != "full":
        raise ValueError("mode must be full, jmin or jmax")
    if js is None:
        js = range(lo, hi + 1, 2)
    js = [j for j in js if lo <= j <= hi and (j - lo) % 2 == 0]
    if jobs > 1 and len(js) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_slice_worker, [(D, j, check) for j in js]))
    else:
        K = KhovanovComplex(D)
        results = [(j, K.homology_slice(j, check)) for j in js]
    for j, row in results:
        for i, v in row.items():
            cells[(i, j)] = v
    return KhTable(cells, tuple(js), False, D.name)


def grading_shift(D: LinkDiagram) -> tuple[int, int]:
    """``(di, dj)`` taking unshifted gradings of ``D`` to link gradings."""
    return -D.c_minus, D.c_plus - 2 * D.c_minus


def kh(D: LinkDiagram, js: Iterable[int] | None = None, jobs: int = 1,
       mode: str = "full", check: bool = False) -> KhTable:
    """Khovanov homology with the link-invariant grading.

    ``js`` are link quantum gradings; ``mode`` is as for :func:`unshifted_kh`.
    """
    di, dj = grading_shift(D)
    base = None if js is None else [j - dj for j in js]
    T = unshifted_kh(D, base, jobs, check, mode)
    return KhTable(T.shift(di, dj).cells, tuple(j + dj for j in T.j_range), True, D.name)
