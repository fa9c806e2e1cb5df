"""Oriented link diagrams in PD notation.

Each crossing is a quadruple of arc ids listed counterclockwise, starting at
the incoming under-strand.  The under-strand runs slot 0 -> slot 2; the over
strand joins slots 1 and 3.  A crossing is positive when the over strand runs
from slot 3 to slot 1.

Slot endpoints are addressed as ``4 * crossing + slot``.  Corner ``k`` of a
crossing is the wedge between slots ``k`` and ``k + 1``; the A-smoothing joins
slots (0,1) and (2,3), so it merges the regions at corners 1 and 3.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Iterable, Sequence

__all__ = [
    "PDError",
    "LinkDiagram",
    "CheckerboardGraph",
    "parse_pd",
    "crossing_signs",
    "mirror",
    "resolve",
    "connected_sum",
    "checkerboard",
    "is_alternating",
    "is_split",
    "flip_crossing",
    "flip_component",
    "unknot",
    "faces",
    "from_quads",
    "relabel_order",
]

A, B = 0, 1
A_PAIRS = ((0, 1), (2, 3))
B_PAIRS = ((0, 3), (1, 2))


class PDError(ValueError):
    """Malformed or inconsistent PD input."""


Quad = tuple[int, int, int, int]


@dataclass(frozen=True, eq=False)
class LinkDiagram:
    """Immutable oriented diagram.

    ``heads[a - 1]`` is the endpoint (``4 * crossing + slot``) at which arc
    ``a`` arrives, which fixes the orientation of every arc.  ``loops`` counts
    crossing-free unknotted components drawn apart from the rest.
    """

    crossings: tuple[Quad, ...]
    heads: tuple[int, ...]
    loops: int = 0
    dealternator: int | None = None
    name: str | None = None

    # -- basic counts -----------------------------------------------------
    @property
    def c(self) -> int:
        return len(self.crossings)

    @property
    def num_arcs(self) -> int:
        return 2 * len(self.crossings)

    @cached_property
    def ends(self) -> tuple[tuple[int, int], ...]:
        """For arc ``a`` (index ``a - 1``) its two endpoints, ascending."""
        acc: list[list[int]] = [[] for _ in range(self.num_arcs)]
        for x, quad in enumerate(self.crossings):
            for k, a in enumerate(quad):
                acc[a - 1].append(4 * x + k)
        return tuple((p[0], p[1]) for p in acc)

    def arc_at(self, endpoint: int) -> int:
        return self.crossings[endpoint >> 2][endpoint & 3]

    def other_end(self, endpoint: int) -> int:
        e0, e1 = self.ends[self.arc_at(endpoint) - 1]
        return e1 if endpoint == e0 else e0

    @cached_property
    def signs(self) -> tuple[int, ...]:
        heads = set(self.heads)
        return tuple(1 if 4 * x + 3 in heads else -1 for x in range(self.c))

    @property
    def c_plus(self) -> int:
        return sum(1 for s in self.signs if s > 0)

    @property
    def c_minus(self) -> int:
        return sum(1 for s in self.signs if s < 0)

    @property
    def writhe(self) -> int:
        return sum(self.signs)

    @cached_property
    def successor(self) -> tuple[int, ...]:
        """``successor[a - 1]`` is the arc following ``a``."""
        out = []
        for h in self.heads:
            out.append(self.arc_at(h ^ 2))
        return tuple(out)

    @cached_property
    def components(self) -> tuple[tuple[int, ...], ...]:
        """Arc cycles, one per component with crossings, ordered by least arc."""
        seen = [False] * self.num_arcs
        comps = []
        for a in range(1, self.num_arcs + 1):
            if seen[a - 1]:
                continue
            cyc = []
            b = a
            while not seen[b - 1]:
                seen[b - 1] = True
                cyc.append(b)
                b = self.successor[b - 1]
            comps.append(tuple(cyc))
        return tuple(comps)

    @property
    def num_components(self) -> int:
        return len(self.components) + self.loops

    def under_arcs(self, x: int) -> tuple[int, int]:
        q = self.crossings[x]
        return q[0], q[2]

    # -- serialization ----------------------------------------------------
    def to_pd(self) -> str:
        toks = []
        for x, q in enumerate(self.crossings):
            mark = "!" if x == self.dealternator else ""
            toks.append("%sX(%d,%d,%d,%d)" % ((mark,) + q))
        toks.extend("O" for _ in range(self.loops))
        return " ".join(toks)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "crossings": [list(q) for q in self.crossings],
            "orientation": [list(cyc) for cyc in self.components],
            "signs": list(self.signs),
            "loops": self.loops,
            "dealternator": self.dealternator,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "LinkDiagram":
        quads = [tuple(int(v) for v in q) for q in data["crossings"]]
        d = from_quads(quads, loops=int(data.get("loops", 0)),
                       dealternator=data.get("dealternator"), name=data.get("name"))
        want = data.get("signs")
        if want is not None and list(want) != list(d.signs):
            for ci in range(len(d.components)):
                if list(want) == list(flip_component(d, ci).signs):
                    return flip_component(d, ci)
            raise PDError("orientation data inconsistent with crossings")
        return d

    @classmethod
    def from_json(cls, text: str) -> "LinkDiagram":
        return cls.from_dict(json.loads(text))

    def __repr__(self) -> str:
        label = self.name or "diagram"
        return "<LinkDiagram %s c=%d w=%d comps=%d>" % (
            label, self.c, self.writhe, self.num_components)

    def invariant_key(self) -> tuple:
        return (self.crossings, self.heads, self.loops)


# ---------------------------------------------------------------------------
# construction

_TOKEN = re.compile(r"(!?)\s*X\s*[\(\[]\s*([^\)\]]*)[\)\]]|(\bO\b)", re.I)


def parse_pd(text: str, name: str | None = None) -> LinkDiagram:
    """Parse ``X(a,b,c,d)`` tokens; ``!`` marks the dealternator, ``O`` a free loop."""
    body = "\n".join(line.split("#", 1)[0] for line in text.splitlines())
    stripped = body.strip()
    wrapped = re.match(r"PD\s*[\(\[](.*)[\)\]]$", stripped, re.S)
    if wrapped:
        stripped = wrapped.group(1)
    if not stripped.strip():
        raise PDError("empty input")
    quads: list[Quad] = []
    loops = 0
    dealt: int | None = None
    pos = 0
    for m in _TOKEN.finditer(stripped):
        gap = stripped[pos:m.start()]
        if gap.strip(" \t\n,;"):
            raise PDError("malformed token near %r" % gap.strip()[:20])
        pos = m.end()
        if m.group(3):
            loops += 1
            continue
        parts = [p for p in re.split(r"[\s,]+", m.group(2).strip()) if p]
        if len(parts) != 4 or not all(re.fullmatch(r"-?\d+", p) for p in parts):
            raise PDError("malformed crossing %r" % m.group(0))
        if m.group(1):
            if dealt is not None:
                raise PDError("more than one dealternator mark")
            dealt = len(quads)
        quads.append(tuple(int(p) for p in parts))  # type: ignore[arg-type]
    if stripped[pos:].strip(" \t\n,;"):
        raise PDError("malformed token near %r" % stripped[pos:].strip()[:20])
    if not quads and not loops:
        raise PDError("empty input")
    return from_quads(quads, loops=loops, dealternator=dealt, name=name)


def unknot(loops: int = 1, name: str | None = "unknot") -> LinkDiagram:
    return LinkDiagram(crossings=(), heads=(), loops=loops, name=name)


def from_quads(quads: Sequence[Sequence[int]], loops: int = 0,
               dealternator: int | None = None, name: str | None = None,
               strict: bool = True) -> LinkDiagram:
    """Validate, renumber arcs to 1..2c and infer orientation."""
    counts: dict[int, int] = {}
    for q in quads:
        if len(q) != 4:
            raise PDError("crossing needs four arcs: %r" % (q,))
        for a in q:
            counts[a] = counts.get(a, 0) + 1
    bad = sorted(a for a, n in counts.items() if n != 2)
    if bad:
        raise PDError("arc %d used %d times (expected 2)" % (bad[0], counts[bad[0]]))
    relabel = {a: i + 1 for i, a in enumerate(sorted(counts))}
    crossings = [tuple(relabel[a] for a in q) for q in quads]
    if dealternator is not None and not 0 <= dealternator < len(crossings):
        raise PDError("dealternator index out of range")
    crossings, heads = _orient(crossings, strict)
    return LinkDiagram(tuple(crossings), tuple(heads), loops, dealternator, name)


def _ends_of(crossings: Sequence[Quad]) -> list[list[int]]:
    ends: list[list[int]] = [[] for _ in range(2 * len(crossings))]
    for x, q in enumerate(crossings):
        for k, a in enumerate(q):
            ends[a - 1].append(4 * x + k)
    return ends


def _orient(crossings: list, strict: bool) -> tuple[list, list[int]]:
    """Choose a direction for every component.

    Under passages pin the direction.  A component that is only ever over is
    oriented so that arc labels mostly increase along it.  With ``strict``
    False, quadruples whose under-strand disagrees are rotated by two slots.
    """
    crossings = [tuple(q) for q in crossings]
    n = 2 * len(crossings)
    ends = _ends_of(crossings)

    def other(e: int) -> int:
        e0, e1 = ends[crossings[e >> 2][e & 3] - 1]
        return e1 if e == e0 else e0

    heads = [0] * n
    seen = [False] * n
    for start in range(1, n + 1):
        if seen[start - 1]:
            continue
        # walk once in an arbitrary direction, recording (arc, head endpoint)
        walk = []
        a, h = start, ends[start - 1][1]
        while True:
            seen[a - 1] = True
            walk.append((a, h))
            t = h ^ 2
            a = crossings[t >> 2][t & 3]
            h = other(t)
            if a == start and h == walk[0][1]:
                break
        votes = [(h >> 2, (h & 3) == 0) for _, h in walk if (h & 3) in (0, 2)]
        fwd = sum(1 for _, ok in votes if ok)
        if votes:
            if fwd == len(votes):
                forward = True
            elif fwd == 0:
                forward = False
            elif strict:
                raise PDError("under-strand orientation inconsistent at crossing %d"
                              % min(x for x, ok in votes if not ok))
            else:
                forward = fwd * 2 >= len(votes)
        else:
            arcs = [a for a, _ in walk]
            up = sum(1 for i in range(len(arcs)) if arcs[(i + 1) % len(arcs)] == arcs[i] + 1)
            down = sum(1 for i in range(len(arcs)) if arcs[(i + 1) % len(arcs)] == arcs[i] - 1)
            if up != down:
                forward = up > down
            else:
                h0 = walk[0][1]
                forward = (h0 & 3) == 3
        for a, h in walk:
            heads[a - 1] = h if forward else other(h)
    if not strict:
        # rotate crossings whose under strand runs 2 -> 0
        hs = set(heads)
        for x, q in enumerate(crossings):
            if 4 * x + 2 in hs:
                crossings[x] = (q[2], q[3], q[0], q[1])
                for i, h in enumerate(heads):
                    if h >> 2 == x:
                        heads[i] = 4 * x + ((h & 3) + 2) % 4
    return crossings, heads


# ---------------------------------------------------------------------------
# signs and simple transformations

def crossing_signs(D: LinkDiagram) -> tuple[tuple[int, ...], int, int, int]:
    """Per-crossing signs and ``(c_plus, c_minus, writhe)``."""
    return D.signs, D.c_plus, D.c_minus, D.writhe


def _rotate_heads(D: LinkDiagram, x: int, shift: int, heads: list[int]) -> None:
    for i, h in enumerate(heads):
        if h >> 2 == x:
            heads[i] = 4 * x + ((h & 3) - shift) % 4


def flip_crossing(D: LinkDiagram, x: int) -> LinkDiagram:
    """Swap over and under at crossing ``x``, keeping orientation."""
    q = D.crossings[x]
    heads = list(D.heads)
    if D.signs[x] > 0:  # over ran 3 -> 1; new under enters at old slot 3
        newq = (q[3], q[0], q[1], q[2])
        shift = 3
    else:
        newq = (q[1], q[2], q[3], q[0])
        shift = 1
    _rotate_heads(D, x, shift, heads)
    crossings = list(D.crossings)
    crossings[x] = newq
    return replace(D, crossings=tuple(crossings), heads=tuple(heads))


def mirror(D: LinkDiagram) -> LinkDiagram:
    out = D
    for x in range(D.c):
        out = flip_crossing(out, x)
    name = None if D.name is None else (D.name[:-7] if D.name.endswith("#mirror")
                                        else D.name + "#mirror")
    return replace(out, name=name)


def flip_component(D: LinkDiagram, index: int) -> LinkDiagram:
    """Reverse the orientation of one component (indexing ``D.components``)."""
    comps = D.components
    if not 0 <= index < len(comps):
        raise PDError("component index out of range")
    arcs = set(comps[index])
    heads = list(D.heads)
    for a in arcs:
        e0, e1 = D.ends[a - 1]
        heads[a - 1] = e1 if heads[a - 1] == e0 else e0
    crossings = list(D.crossings)
    for x, q in enumerate(D.crossings):
        if q[0] in arcs and q[2] in arcs and 4 * x + 2 in heads:
            crossings[x] = (q[2], q[3], q[0], q[1])
            _rotate_heads(D, x, 2, heads)
    return replace(D, crossings=tuple(crossings), heads=tuple(heads))


def resolve(D: LinkDiagram, k: int, choice: int | str) -> LinkDiagram:
    """Smooth crossing ``k``; the result carries an arbitrary orientation."""
    if not 0 <= k < D.c:
        raise IndexError("crossing index %d out of range" % k)
    side = _side(choice)
    q = D.crossings[k]
    parent = list(range(D.num_arcs + 1))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for s, t in (A_PAIRS if side == A else B_PAIRS):
        ra, rb = find(q[s]), find(q[t])
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    rest = [D.crossings[x] for x in range(D.c) if x != k]
    used = {find(a) for quad in rest for a in quad}
    loops = D.loops + len({find(a) for a in q} - used)
    quads = [tuple(find(a) for a in quad) for quad in rest]
    dealt = D.dealternator
    if dealt is not None:
        dealt = None if dealt == k else (dealt - (dealt > k))
    if not quads:
        return LinkDiagram((), (), loops, None, None)
    counts: dict[int, int] = {}
    for quad in quads:
        for a in quad:
            counts[a] = counts.get(a, 0) + 1
    relabel = {a: i + 1 for i, a in enumerate(sorted(counts))}
    quads = [tuple(relabel[a] for a in quad) for quad in quads]
    crossings, heads = _orient(quads, strict=False)
    return LinkDiagram(tuple(crossings), tuple(heads), loops, dealt, None)


def _side(choice: int | str) -> int:
    if choice in (A, "A", "a"):
        return A
    if choice in (B, "B", "b"):
        return B
    raise ValueError("resolution choice must be A or B")


def connected_sum(D1: LinkDiagram, D2: LinkDiagram, arc1: int | None = None,
                  arc2: int | None = None) -> LinkDiagram:
    """Band ``arc1`` of D1 to ``arc2`` of D2 respecting orientations."""
    if D2.c == 0:
        if D2.loops < 1:
            raise PDError("empty summand")
        return replace(D1, loops=D1.loops + D2.loops - 1, name=None)
    if D1.c == 0:
        if D1.loops < 1:
            raise PDError("empty summand")
        return replace(D2, loops=D1.loops + D2.loops - 1, dealternator=None, name=None)
    arc1 = 1 if arc1 is None else arc1
    arc2 = 1 if arc2 is None else arc2
    if not 1 <= arc1 <= D1.num_arcs or not 1 <= arc2 <= D2.num_arcs:
        raise PDError("invalid arc for connected sum")
    off = D1.num_arcs
    q1 = [list(q) for q in D1.crossings]
    q2 = [[a + off for a in q] for q in D2.crossings]
    h1 = D1.heads[arc1 - 1]
    h2 = D2.heads[arc2 - 1]
    # arc1 now ends where arc2 ended; arc2 now ends where arc1 ended
    q1[h1 >> 2][h1 & 3] = arc2 + off
    q2[h2 >> 2][h2 & 3] = arc1
    quads = [tuple(q) for q in q1 + q2]
    heads_of: dict[int, int] = {}
    for a in range(1, D1.num_arcs + 1):
        heads_of[a] = D1.heads[a - 1]
    for a in range(1, D2.num_arcs + 1):
        heads_of[a + off] = D2.heads[a - 1] + 4 * D1.c
    heads_of[arc1], heads_of[arc2 + off] = heads_of[arc2 + off], heads_of[arc1]
    name = None
    if D1.name and D2.name:
        name = "%s+%s" % (D1.name, D2.name)
    out = LinkDiagram(tuple(quads), tuple(heads_of[a] for a in range(1, off + D2.num_arcs + 1)),
                      D1.loops + D2.loops, None, name)
    return out


# ---------------------------------------------------------------------------
# planar structure

def faces(D: LinkDiagram) -> list[list[int]]:
    """Faces as lists of corners ``4 * crossing + k``."""
    if D.c == 0:
        return []
    nxt = [0] * (4 * D.c)
    for corner in range(4 * D.c):
        x, k = corner >> 2, corner & 3
        nxt[corner] = D.other_end(4 * x + (k + 1) % 4)
    seen = [False] * (4 * D.c)
    out = []
    for start in range(4 * D.c):
        if seen[start]:
            continue
        cyc = []
        c = start
        while not seen[c]:
            seen[c] = True
            cyc.append(c)
            c = nxt[c]
        out.append(cyc)
    return out


def is_split(D: LinkDiagram) -> bool:
    pieces = _crossing_pieces(D)
    return pieces + D.loops > 1


def _crossing_pieces(D: LinkDiagram) -> int:
    if D.c == 0:
        return 0
    parent = list(range(D.c))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for e0, e1 in D.ends:
        ra, rb = find(e0 >> 2), find(e1 >> 2)
        if ra != rb:
            parent[ra] = rb
    return len({find(x) for x in range(D.c)})


def is_alternating(D: LinkDiagram) -> bool:
    """Every arc runs from an under slot to an over slot."""
    return all((e0 & 1) != (e1 & 1) for e0, e1 in D.ends)


@dataclass(frozen=True)
class CheckerboardGraph:
    """Shaded and unshaded region graphs; edge ``x`` comes from crossing ``x``.

    ``shaded_edges[x]`` joins the two shaded regions at crossing ``x``, and
    likewise for ``unshaded_edges``.  Regions are numbered separately in each
    graph.  ``marks`` holds ``u1, u2`` (unshaded) and ``v1, v2`` (shaded) when a
    dealternator is set.
    """

    n_shaded: int
    n_unshaded: int
    shaded_edges: tuple[tuple[int, int], ...]
    unshaded_edges: tuple[tuple[int, int], ...]
    shaded_corners: tuple[tuple[int, ...], ...]
    unshaded_corners: tuple[tuple[int, ...], ...]
    corner_type: tuple[int, ...] = field(default=())
    marks: dict | None = None

    @property
    def regions(self) -> int:
        return self.n_shaded + self.n_unshaded


def checkerboard(D: LinkDiagram) -> CheckerboardGraph:
    """Two-colour the regions.

    Unshaded regions sit at corners 0 and 2 of every crossing except the
    dealternator, where they sit at corners 1 and 3 (so the A-smoothing of the
    dealternator joins ``u1`` and ``u2``).  ``corner_type[x]`` is 0 when the
    unshaded corners of ``x`` are 0 and 2, else 1.
    """
    if D.c == 0:
        if D.loops != 1:
            raise PDError("split diagram")
        return CheckerboardGraph(1, 1, (), (), ((),), ((),), (), None)
    if is_split(D):
        raise PDError("split diagram")
    fs = faces(D)
    face_of = [0] * (4 * D.c)
    for fi, cyc in enumerate(fs):
        for corner in cyc:
            face_of[corner] = fi
    color = [-1] * len(fs)
    seed_x = D.dealternator if D.dealternator is not None else 0
    # colour 0 = unshaded
    start_corner = 4 * seed_x + (1 if D.dealternator is not None else 0)
    color[face_of[start_corner]] = 0
    stack = [face_of[start_corner]]
    adj: list[list[tuple[int, int]]] = [[] for _ in fs]
    for x in range(D.c):
        f = [face_of[4 * x + k] for k in range(4)]
        for k in range(4):
            adj[f[k]].append((f[(k + 1) % 4], 1))
            adj[f[k]].append((f[(k + 2) % 4], 0))
    while stack:
        f = stack.pop()
        for g, diff in adj[f]:
            want = color[f] ^ diff
            if color[g] == -1:
                color[g] = want
                stack.append(g)
            elif color[g] != want:
                raise PDError("regions cannot be two-coloured (not planar)")
    un_ids: dict[int, int] = {}
    sh_ids: dict[int, int] = {}
    for fi in range(len(fs)):
        (un_ids if color[fi] == 0 else sh_ids)[fi] = len(un_ids if color[fi] == 0 else sh_ids)
    un_edges, sh_edges, ctype = [], [], []
    for x in range(D.c):
        f = [face_of[4 * x + k] for k in range(4)]
        t = 0 if color[f[0]] == 0 else 1
        ctype.append(t)
        uk = (0, 2) if t == 0 else (1, 3)
        sk = (1, 3) if t == 0 else (0, 2)
        un_edges.append((un_ids[f[uk[0]]], un_ids[f[uk[1]]]))
        sh_edges.append((sh_ids[f[sk[0]]], sh_ids[f[sk[1]]]))
    un_corners = [()] * len(un_ids)
    sh_corners = [()] * len(sh_ids)
    for fi, cyc in enumerate(fs):
        if color[fi] == 0:
            un_corners[un_ids[fi]] = tuple(cyc)
        else:
            sh_corners[sh_ids[fi]] = tuple(cyc)
    marks = None
    if D.dealternator is not None:
        x = D.dealternator
        marks = {
            "u1": un_ids[face_of[4 * x + 1]], "u2": un_ids[face_of[4 * x + 3]],
            "v1": sh_ids[face_of[4 * x + 0]], "v2": sh_ids[face_of[4 * x + 2]],
        }
    return CheckerboardGraph(len(sh_ids), len(un_ids), tuple(sh_edges), tuple(un_edges),
                             tuple(sh_corners), tuple(un_corners), tuple(ctype), marks)


def relabel_order(D: LinkDiagram, order: Iterable[int]) -> LinkDiagram:
    """Permute crossing order (used to test order independence)."""
    order = list(order)
    if sorted(order) != list(range(D.c)):
        raise ValueError("not a permutation")
    pos = {old: new for new, old in enumerate(order)}
    crossings = tuple(D.crossings[o] for o in order)
    heads = tuple(4 * pos[h >> 2] + (h & 3) for h in D.heads)
    dealt = None if D.dealternator is None else pos[D.dealternator]
    return LinkDiagram(crossings, heads, D.loops, dealt, D.name)
