"""Thurston-Bennequin bounds, Mondrian layouts and Legendrian fronts.

A Mondrian diagram here is a visibility layout of the unshaded checkerboard
graph: vertices become horizontal segments at distinct heights and edges
become vertical segments.  It is built from a bipolar orientation (an
st-ordering found by ear insertion) with x-coordinates from longest paths in
the dual graph.  Graphs that are not 2-connected are first augmented by a
dummy vertex inside every face, joined to every corner of that face; the
dummies are dropped from the final layout.

When an edge is marked, it is contracted and the merged vertex is made the
source.  Splitting it back puts the lower endpoint at the very bottom with
the marked vertical as its leftmost top edge, and the upper endpoint just
above it with the marked vertical as its only bottom edge.

A front is stored as a word of events read left to right, with strand
positions counted from the bottom: ``("L", p)`` a left cusp creating strands
``p, p+1``; ``("X", p, id)`` a crossing of strands ``p, p+1``; ``("R", p)`` a
right cusp joining them.  At a crossing the strand with negative slope (from
upper left to lower right) is over.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, replace
from typing import Sequence

from .classify import A_AA, BOTH, classify, turaev1_flags
from .diagram import (CheckerboardGraph, LinkDiagram, PDError, checkerboard, from_quads,
                      is_alternating, is_split)
from .homology import KhTable
from .states import is_adequate, sA, sB

__all__ = [
    "MondrianDiagram",
    "LegendrianFront",
    "kh_tb_bound",
    "tb_interval",
    "mondrian_from_graph",
    "validate_mondrian",
    "contraction_rotations",
    "graph_rotations",
    "front_from_mondrian",
    "tb_of_front",
    "front_diagram",
    "match_diagram",
    "legendrian_front",
    "front_svg",
]


def kh_tb_bound(T: KhTable) -> int:
    if T.is_zero():
        raise ValueError("empty Khovanov table")
    return min(j - i for i, j in T.cells)


def tb_interval(D: LinkDiagram, side: str = "A") -> tuple[int, int]:
    """Interval for the maximal tb of the link (A side) or of its mirror (B side)."""
    side = side.upper()
    flags = turaev1_flags(D)
    if side == "A":
        if not flags["A_tg1"]:
            raise ValueError("diagram is not certified A-Turaev genus one")
        lo = D.writhe - sA(D)
        return (lo, lo) if is_adequate(D, "A") else (lo, lo + 1)
    if side == "B":
        if not flags["B_tg1"]:
            raise ValueError("diagram is not certified B-Turaev genus one")
        lo = -D.writhe - sB(D)
        return (lo, lo) if is_adequate(D, "B") else (lo, lo + 1)
    raise ValueError("side must be A or B")


# ---------------------------------------------------------------------------
# Mondrian diagrams

@dataclass(frozen=True)
class MondrianDiagram:
    """``horizontals[v] = (y, x0, x1)``; ``verticals[k] = (x, lower, upper, edge)``.

    ``edge`` is the graph edge (crossing index) contracted by the vertical;
    ``lower`` and ``upper`` are the vertices whose horizontals it joins.
    """

    horizontals: tuple[tuple[float, float, float], ...]
    verticals: tuple[tuple[float, int, int, int], ...]
    marked: int | None = None

    @property
    def contraction(self) -> dict[int, tuple[int, int]]:
        return {e: (lo, hi) for _, lo, hi, e in self.verticals}


def graph_rotations(G: CheckerboardGraph) -> list[list[int]]:
    """Counterclockwise edge order around each unshaded vertex."""
    # face walks keep the region on their right, i.e. run clockwise around it
    return [[corner >> 2 for corner in reversed(cyc)] for cyc in G.unshaded_corners]


def contraction_rotations(M: MondrianDiagram) -> list[list[int]]:
    """Counterclockwise edge order at each horizontal: top right to left, then bottom."""
    top: list[list[tuple[float, int]]] = [[] for _ in M.horizontals]
    bot: list[list[tuple[float, int]]] = [[] for _ in M.horizontals]
    for x, lo, hi, e in M.verticals:
        top[lo].append((x, e))
        bot[hi].append((x, e))
    out = []
    for v in range(len(M.horizontals)):
        out.append([e for _, e in sorted(top[v], reverse=True)] + [e for _, e in sorted(bot[v])])
    return out


def _same_cycle(a: Sequence[int], b: Sequence[int]) -> bool:
    if len(a) != len(b):
        return False
    if not a:
        return True
    n = len(a)
    return any(all(a[(k + r) % n] == b[k] for k in range(n)) for r in range(n) if a[r] == b[0])


def validate_mondrian(M: MondrianDiagram, G: CheckerboardGraph | None = None) -> list[str]:
    """Problems with the layout (empty when valid).

    With ``G`` also checks that contraction reproduces its edges and rotations.
    """
    problems = []
    H = M.horizontals
    for a in range(len(H)):
        for b in range(a + 1, len(H)):
            if H[a][0] == H[b][0] and not (H[a][2] < H[b][1] or H[b][2] < H[a][1]):
                problems.append("horizontals %d and %d overlap" % (a, b))
    for x, lo, hi, e in M.verticals:
        ylo, yhi = H[lo][0], H[hi][0]
        if not ylo < yhi:
            problems.append("vertical %d points down" % e)
        for v in (lo, hi):
            if not H[v][1] <= x <= H[v][2]:
                problems.append("vertical %d misses horizontal %d" % (e, v))
        for v, (y, x0, x1) in enumerate(H):
            if ylo < y < yhi and x0 <= x <= x1:
                problems.append("vertical %d crosses horizontal %d" % (e, v))
    if G is not None:
        if len(H) != G.n_unshaded:
            problems.append("vertex count differs")
        for x, lo, hi, e in M.verticals:
            if {lo, hi} != set(G.unshaded_edges[e]):
                problems.append("edge %d has wrong ends" % e)
        if sorted(e for *_, e in M.verticals) != list(range(len(G.unshaded_edges))):
            problems.append("edge set differs")
        for v, (r1, r2) in enumerate(zip(contraction_rotations(M), graph_rotations(G))):
            if not _same_cycle(r1, r2):
                problems.append("rotation at vertex %d differs" % v)
    if M.marked is not None:
        x, lo, hi, e = next(t for t in M.verticals if t[3] == M.marked)
        tops = [t[0] for t in M.verticals if t[1] == lo]
        bots = [t[0] for t in M.verticals if t[2] == hi]
        if min(tops) != x or max(bots) != x:
            problems.append("marked edge is not leftmost on top and rightmost on bottom")
    return problems


class _Plane:
    """Plane multigraph given by counterclockwise edge rotations."""

    def __init__(self, n: int, ends: dict[int, tuple[int, int]], rot: list[list[int]]):
        self.n = n
        self.ends = dict(ends)
        self.rot = [list(r) for r in rot]

    def other(self, e: int, v: int) -> int:
        a, b = self.ends[e]
        return b if a == v else a

    def next_dart(self, e: int, u: int) -> tuple[int, int]:
        """Dart following ``e`` (traversed from ``u``) with the face on its left."""
        w = self.other(e, u)
        r = self.rot[w]
        k = r.index(e)
        return r[(k - 1) % len(r)], w

    def faces(self) -> tuple[list[list[tuple[int, int]]], dict[tuple[int, int], int]]:
        face_of: dict[tuple[int, int], int] = {}
        faces = []
        for v in range(self.n):
            for e in self.rot[v]:
                if (e, v) in face_of:
                    continue
                walk = []
                d = (e, v)
                while d not in face_of:
                    face_of[d] = len(faces)
                    walk.append(d)
                    d = self.next_dart(*d)
                faces.append(walk)
        return faces, face_of

    def is_biconnected(self) -> bool:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for a, b in self.ends.values():
            adj[a].add(b)
            adj[b].add(a)
        for cut in range(self.n):
            rest = [v for v in range(self.n) if v != cut]
            if not rest:
                continue
            seen = {rest[0]}
            stack = [rest[0]]
            while stack:
                v = stack.pop()
                for w in adj[v]:
                    if w != cut and w not in seen:
                        seen.add(w)
                        stack.append(w)
            if len(seen) != len(rest):
                return False
        return True


def _augment(P: _Plane) -> tuple[_Plane, dict[tuple[int, int], int]]:
    """Add a vertex in every face joined to each of its corners.

    Returns the new plane graph and, for each corner (keyed by the dart that
    leaves it), the dummy edge placed there.
    """
    faces, _ = P.faces()
    ends = dict(P.ends)
    rot = [list(r) for r in P.rot]
    next_id = max(ends, default=-1) + 1
    corner_edge: dict[tuple[int, int], int] = {}
    n = P.n
    for walk in faces:
        f = n
        n += 1
        rot.append([])
        for e, u in walk:
            # the corner at u sits counterclockwise after the leaving edge e
            d = next_id
            next_id += 1
            ends[d] = (u, f)
            r = rot[u]
            r.insert(r.index(e) + 1, d)
            rot[f].append(d)
            corner_edge[(e, u)] = d
    return _Plane(n, ends, rot), corner_edge


def _st_order(P: _Plane, s: int, t: int) -> list[int]:
    adj: list[set[int]] = [set() for _ in range(P.n)]
    for a, b in P.ends.values():
        adj[a].add(b)
        adj[b].add(a)
    if t not in adj[s]:
        raise ValueError("source and sink must be adjacent")
    order = [s, t]
    seen = {s, t}
    while len(seen) < P.n:
        ear = None
        for x in order:
            for y in sorted(adj[x] - seen):
                prev = {y: None}
                queue = deque([y])
                while queue and ear is None:
                    w = queue.popleft()
                    ends = sorted(z for z in adj[w] if z in seen and z != x)
                    if ends:
                        path = []
                        k = w
                        while k is not None:
                            path.append(k)
                            k = prev[k]
                        ear = (x, path[::-1], ends[0])
                        break
                    for z in sorted(adj[w] - seen):
                        if z not in prev:
                            prev[z] = w
                            queue.append(z)
                if ear:
                    break
            if ear:
                break
        if ear is None:
            raise ValueError("graph is not 2-connected")
        x, path, z = ear
        px, pz = order.index(x), order.index(z)
        if px <= pz:
            order[px + 1:px + 1] = path
        else:
            order[pz + 1:pz + 1] = path[::-1]
        seen.update(path)
    return order


def _visibility(P: _Plane, order: list[int], outer: int) -> tuple[dict[int, int], dict[int, int]]:
    """y-rank of each vertex and x-rank of each edge for a bipolar orientation."""
    rank = {v: k for k, v in enumerate(order)}
    faces, face_of = P.faces()
    nf = len(faces)
    # the outer face acts as a left node (index outer) and a right node (index nf)
    succ: list[list[int]] = [[] for _ in range(nf + 1)]
    left_of: dict[int, int] = {}
    for e, (a, b) in P.ends.items():
        lo, hi = (a, b) if rank[a] < rank[b] else (b, a)
        L = face_of[(e, lo)]
        R = face_of[(e, hi)]
        if R == outer:
            R = nf
        left_of[e] = L
        succ[L].append(R)
    indeg = [0] * (nf + 1)
    for L in range(nf + 1):
        for R in succ[L]:
            indeg[R] += 1
    X = [0] * (nf + 1)
    queue = deque(k for k in range(nf + 1) if indeg[k] == 0)
    done = 0
    while queue:
        k = queue.popleft()
        done += 1
        for R in succ[k]:
            X[R] = max(X[R], X[k] + 1)
            indeg[R] -= 1
            if not indeg[R]:
                queue.append(R)
    if done != nf + 1:
        raise AssertionError("dual graph has a cycle")
    return rank, {e: X[left_of[e]] for e in P.ends}


def mondrian_from_graph(G: CheckerboardGraph, marked_edge: int | None = None) -> MondrianDiagram:
    """Mondrian layout contracting to the unshaded graph of ``G``."""
    V = G.n_unshaded
    E = {e: tuple(ab) for e, ab in enumerate(G.unshaded_edges)}
    rot = graph_rotations(G)
    if any(a == b for a, b in E.values()):
        raise ValueError("graph has a loop (nugatory crossing)")
    if not E:
        if V != 1:
            raise ValueError("disconnected graph")
        return MondrianDiagram(((0, 0, 1),), (), None)
    if marked_edge is None:
        P = _Plane(V, E, rot)
        A, corner_edge = _augment(P)
        s = 0
        e0 = A.rot[s][0]
        t = A.other(e0, s)
        faces, face_of = A.faces()
        order = _st_order(A, s, t)
        rank, X = _visibility(A, order, face_of[(e0, s)])
        ys = {v: float(rank[v]) for v in range(V)}
        xs = {e: 8.0 * X[e] for e in E}
        return _assemble(V, E, ys, xs, None, {})
    # contract the marked edge into its lower endpoint
    if marked_edge not in E:
        raise ValueError("unknown edge %d" % marked_edge)
    a, b = E[marked_edge]
    if sum(1 for e, ab in E.items() if set(ab) == {a, b}) > 1:
        raise ValueError("marked edge is not the unique edge between its endpoints")

    def after(v: int) -> list[int]:
        r = rot[v]
        k = r.index(marked_edge)
        return r[k + 1:] + r[:k]

    a_block, b_block = after(a), after(b)
    ends = {}
    for e, (p, q) in E.items():
        if e == marked_edge:
            continue
        ends[e] = (a if p == b else p, a if q == b else q)
    crot = [list(r) for r in rot]
    crot[a] = a_block + b_block
    crot[b] = []
    # b is now isolated; move it out of the way by renumbering
    keep = [v for v in range(V) if v != b]
    new = {v: k for k, v in enumerate(keep)}
    P = _Plane(len(keep), {e: (new[p], new[q]) for e, (p, q) in ends.items()},
               [crot[v] for v in keep])
    A, corner_edge = _augment(P)
    s = new[a]
    # the corner after the last b-edge (counterclockwise) becomes the outer face
    if not b_block or not a_block:
        raise ValueError("marked edge endpoint has no other edges")
    delta = corner_edge[(b_block[-1], s)]
    t = A.other(delta, s)
    faces, face_of = A.faces()
    order = _st_order(A, s, t)
    rank, X = _visibility(A, order, face_of[(delta, s)])
    xs = {e: 8.0 * X[e] for e in ends}
    xa = [xs[e] for e in a_block]
    xb = [xs[e] for e in b_block]
    if not max(xb) < min(xa):
        raise AssertionError("marked vertex blocks out of order")
    x_mark = max(xb) + 4.0
    xs[marked_edge] = x_mark
    ys = {}
    for v in range(V):
        if v == a:
            ys[v] = 0.0
        elif v == b:
            ys[v] = 0.5
        else:
            ys[v] = float(rank[new[v]])
    return _assemble(V, E, ys, xs, marked_edge, {a: (x_mark - 1, None), b: (None, x_mark + 1)})


def _assemble(V, E, ys, xs, marked, fixed) -> MondrianDiagram:
    lo_x: dict[int, float] = {}
    hi_x: dict[int, float] = {}
    for e, (p, q) in E.items():
        for v in (p, q):
            lo_x[v] = min(lo_x.get(v, xs[e]), xs[e])
            hi_x[v] = max(hi_x.get(v, xs[e]), xs[e])
    H = []
    for v in range(V):
        x0, x1 = lo_x[v] - 1, hi_x[v] + 1
        f0, f1 = fixed.get(v, (None, None))
        H.append((ys[v], f0 if f0 is not None else x0, f1 if f1 is not None else x1))
    verts = []
    for e in sorted(E):
        p, q = E[e]
        lo, hi = (p, q) if ys[p] < ys[q] else (q, p)
        verts.append((xs[e], lo, hi, e))
    return MondrianDiagram(tuple(H), tuple(verts), marked)


# ---------------------------------------------------------------------------
# fronts

@dataclass(frozen=True)
class LegendrianFront:
    events: tuple[tuple, ...]
    diagram: LinkDiagram
    crossing_ids: tuple[int, ...]

    @property
    def cusps(self) -> int:
        return sum(1 for ev in self.events if ev[0] in "LR")

    @property
    def writhe(self) -> int:
        return self.diagram.writhe

    def to_dict(self) -> dict:
        return {"events": [list(ev) for ev in self.events], "cusps": self.cusps,
                "writhe": self.writhe, "tb": tb_of_front(self)}


def _front_word(M: MondrianDiagram) -> list[tuple]:
    timeline = []
    for v, (y, x0, x1) in enumerate(M.horizontals):
        timeline.append((x0, 0, y, ("L", v)))
        timeline.append((x1, 2, y, ("R", v)))
    for x, lo, hi, e in M.verticals:
        timeline.append((x, 1, M.horizontals[lo][0], ("X", lo, hi, e)))
    timeline.sort(key=lambda t: (t[0], t[1], t[2]))
    active: list[tuple[float, int]] = []
    word = []
    for _, _, _, ev in timeline:
        if ev[0] == "L":
            v = ev[1]
            key = (M.horizontals[v][0], v)
            k = sum(1 for a in active if a < key)
            active.insert(k, key)
            word.append(("L", 2 * k))
        elif ev[0] == "R":
            v = ev[1]
            k = active.index((M.horizontals[v][0], v))
            active.pop(k)
            word.append(("R", 2 * k))
        else:
            _, lo, hi, e = ev
            k = active.index((M.horizontals[lo][0], lo))
            if k + 1 >= len(active) or active[k + 1][1] != hi:
                raise ValueError("vertical %d does not join adjacent horizontals" % e)
            word.append(("X", 2 * k + 1, e))
    return word


def front_diagram(events: Sequence[tuple]) -> tuple[LinkDiagram, tuple[int, ...]]:
    """Oriented diagram of a front word (orientation chosen arbitrarily)."""
    parent: dict[int, int] = {}

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def new() -> int:
        k = len(parent)
        parent[k] = k
        return k

    stack: list[int] = []
    quads = []
    ids = []
    for ev in events:
        p = ev[1]
        if ev[0] == "L":
            a = new()
            stack[p:p] = [a, a]
        elif ev[0] == "R":
            ra, rb = find(stack[p]), find(stack[p + 1])
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
            del stack[p:p + 2]
        else:
            s_lo, s_hi = stack[p], stack[p + 1]
            n_lo, n_hi = new(), new()
            # counterclockwise from the lower-left (under) end
            quads.append([s_lo, n_lo, n_hi, s_hi])
            ids.append(ev[2])
            stack[p], stack[p + 1] = n_lo, n_hi
    if stack:
        raise ValueError("front word leaves open strands")
    used = {find(a) for q in quads for a in q}
    loops = len({find(a) for a in parent} - used)
    if not quads:
        return LinkDiagram((), (), loops), ()
    labels = {r: k + 1 for k, r in enumerate(sorted(used))}
    quads = [[labels[find(a)] for a in q] for q in quads]
    return from_quads(quads, loops, strict=False), tuple(ids)


def _apply_dealternator_move(word: list[tuple], e: int) -> list[tuple]:
    k = next(i for i, ev in enumerate(word) if ev[0] == "X" and ev[2] == e)
    p = word[k][1] - 1
    if k == 0 or k + 1 >= len(word) or word[k - 1] != ("L", p) or word[k + 1] != ("R", p + 2):
        raise ValueError("dealternator vertical is not in the required position")
    return word[:k - 1] + [("X", p, e)] + word[k + 2:]


def front_from_mondrian(M: MondrianDiagram, dealternator_edge: int | None = None) -> LegendrianFront:
    word = _front_word(M)
    if dealternator_edge is not None:
        word = _apply_dealternator_move(word, dealternator_edge)
    D, ids = front_diagram(word)
    return LegendrianFront(tuple(word), D, ids)


def tb_of_front(F: LegendrianFront) -> int:
    return F.writhe - F.cusps // 2


def match_diagram(F: LegendrianFront, D: LinkDiagram) -> LinkDiagram | None:
    """Transfer the orientation of ``D`` to ``F`` if the two diagrams coincide.

    Coincide means an orientation-preserving identification of the planar
    diagrams taking front crossing ``k`` to crossing ``crossing_ids[k]`` of
    ``D`` with over/under respected.  Returns the re-oriented front diagram.
    """
    P = F.diagram
    if P.c != D.c or P.loops != D.loops or sorted(F.crossing_ids) != list(range(D.c)):
        return None
    if P.c == 0:
        return P
    where = {cid: k for k, cid in enumerate(F.crossing_ids)}
    # arc -> endpoints in each diagram
    for r0 in (0, 2):
        rot = {F.crossing_ids[0]: r0}
        amap: dict[int, int] = {}
        ok = True
        queue = deque([F.crossing_ids[0]])
        while queue and ok:
            x = queue.popleft()
            fq = P.crossings[where[x]]
            dq = D.crossings[x]
            r = rot[x]
            for k in range(4):
                fa, da = fq[(k + r) % 4], dq[k]
                if amap.setdefault(fa, da) != da:
                    ok = False
                    break
            if not ok:
                break
            for k in range(4):
                # neighbour across the arc at slot k
                da = dq[k]
                e0, e1 = D.ends[da - 1]
                other = e1 if e0 == 4 * x + k else e0
                y, ky = other >> 2, other & 3
                if y in rot:
                    continue
                fa = fq[(k + r) % 4]
                fy = P.crossings[where[y]]
                cands = [ry for ry in (0, 2) if fy[(ky + ry) % 4] == fa]
                if not cands:
                    ok = False
                    break
                rot[y] = cands[0]
                queue.append(y)
        if ok and len(rot) == D.c and len(set(amap.values())) == len(amap):
            # rotated front quads line up slot for slot with those of D
            heads = [0] * P.num_arcs
            for fa, da in amap.items():
                h = D.heads[da - 1]
                heads[fa - 1] = 4 * where[h >> 2] + (h & 3)
            quads = []
            for kf, q in enumerate(P.crossings):
                r = rot[F.crossing_ids[kf]]
                quads.append(tuple(q[(k + r) % 4] for k in range(4)))
            return LinkDiagram(tuple(quads), tuple(heads), P.loops, None, D.name)
    return None


def legendrian_front(D: LinkDiagram) -> tuple[LegendrianFront, MondrianDiagram, LinkDiagram]:
    """Front realizing an alternating or A-almost alternating diagram.

    Returns the front with the orientation of ``D``, the Mondrian layout it
    came from, and the front's oriented diagram.
    """
    if is_split(D):
        raise PDError("split diagram")
    if is_alternating(D):
        G = checkerboard(replace(D, dealternator=None))
        M = mondrian_from_graph(G)
        F = front_from_mondrian(M)
        target = D
    else:
        verdict = classify(D)
        if verdict.verdict not in (A_AA, BOTH):
            raise ValueError("diagram is %s; fronts are built for alternating and "
                             "A-almost alternating diagrams" % verdict.verdict)
        k = next(s.dealternator for s in verdict.structures if s.cond3A)
        G = checkerboard(replace(D, dealternator=k))
        M = mondrian_from_graph(G, k)
        F = front_from_mondrian(M, k)
        target = D
    problems = validate_mondrian(M, G)
    if problems:
        raise AssertionError("invalid Mondrian layout: %s" % problems[:3])
    oriented = match_diagram(F, target)
    if oriented is None:
        raise AssertionError("front does not reproduce the diagram")
    F = LegendrianFront(F.events, oriented, F.crossing_ids)
    return F, M, oriented


# ---------------------------------------------------------------------------
# drawing

def front_svg(F: LegendrianFront, step: float = 30.0, gap: float = 24.0) -> str:
    """Plain SVG rendering of a front word (for documentation only)."""
    depth = max(_depth(F.events), 1)
    height = (depth + 1) * gap
    lines: list[str] = []
    rows = 0

    def Y(p: float) -> float:
        return height - (p + 1) * gap

    for n, ev in enumerate(F.events):
        x0, x1 = n * step + step / 2, (n + 1) * step + step / 2
        p = ev[1]
        if ev[0] == "L":
            moves = [(q, q if q < p else q + 2) for q in range(rows)]
            lines.append(_path([(x1, Y(p)), (x0, Y(p + 0.5)), (x1, Y(p + 1))]))
            rows += 2
        elif ev[0] == "R":
            moves = [(q, q if q < p else q - 2) for q in range(rows) if q not in (p, p + 1)]
            lines.append(_path([(x0, Y(p)), (x1, Y(p + 0.5)), (x0, Y(p + 1))]))
            rows -= 2
        else:
            moves = [(q, q) for q in range(rows) if q not in (p, p + 1)]
            # over strand runs from upper left to lower right; the other is broken
            lines.append(_path([(x0, Y(p + 1)), (x1, Y(p))]))
            xm, ym = (x0 + x1) / 2, Y(p + 0.5)
            dx, dy = 0.3 * (x1 - x0) / 2, 0.3 * (Y(p + 1) - Y(p)) / 2
            lines.append(_path([(x0, Y(p)), (xm - dx, ym - dy)]))
            lines.append(_path([(xm + dx, ym + dy), (x1, Y(p + 1))]))
        for q0, q1 in moves:
            lines.append(_path([(x0, Y(q0)), (x1, Y(q1))]))
    width = (len(F.events) + 1) * step
    return ('<svg xmlns="http://www.w3.org/2000/svg" width="%g" height="%g">\n'
            '<g stroke="black" fill="none" stroke-width="2">\n%s\n</g>\n</svg>\n'
            % (width, height, "\n".join(lines)))


def _depth(events) -> int:
    n = best = 0
    for ev in events:
        if ev[0] == "L":
            n += 2
        elif ev[0] == "R":
            n -= 2
        best = max(best, n)
    return best


def _path(pts) -> str:
    return '<path d="M %s"/>' % " L ".join("%.1f %.1f" % p for p in pts)
