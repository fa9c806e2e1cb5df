"""Kauffman states, enhanced states and the statistics read off them.

A state is an integer bitmask over crossings: bit ``k`` set means the
B-smoothing at crossing ``k``.  Circles are found with a union-find over arcs
and numbered by their least arc id; free loops of the diagram come last.
Enhanced-state labels are bitmasks over circles with bit ``m`` set when circle
``m`` carries ``x`` (unset means ``1``).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

from .diagram import LinkDiagram, PDError, is_split

__all__ = [
    "KauffmanState",
    "EnhancedState",
    "circle_labels",
    "kauffman_state",
    "sA",
    "sB",
    "turaev_genus_diagram",
    "is_adequate",
    "enumerate_enhanced",
    "states_in_slice",
    "masks_with_popcount",
]


def circle_labels(D: LinkDiagram, s: int) -> tuple[tuple[int, ...], int]:
    """Circle index of every arc in state ``s`` and the number of circles.

    Free loops are not included in the count.
    """
    n = D.num_arcs
    parent = list(range(n + 1))
    for x, (a, b, c, d) in enumerate(D.crossings):
        if (s >> x) & 1:
            pairs = ((a, d), (b, c))
        else:
            pairs = ((a, b), (c, d))
        for p, q in pairs:
            while parent[p] != p:
                parent[p] = parent[parent[p]]
                p = parent[p]
            while parent[q] != q:
                parent[q] = parent[parent[q]]
                q = parent[q]
            if p != q:
                if p < q:
                    parent[q] = p
                else:
                    parent[p] = q
    label = [0] * n
    index: dict[int, int] = {}
    for a in range(1, n + 1):
        r = a
        while parent[r] != r:
            r = parent[r]
        k = index.get(r)
        if k is None:
            k = index[r] = len(index)
        label[a - 1] = k
    return tuple(label), len(index)


@dataclass(frozen=True)
class KauffmanState:
    choices: int
    c: int
    circles: tuple[tuple[int, ...], ...]
    loops: int = 0

    @property
    def b(self) -> int:
        return bin(self.choices).count("1")

    @property
    def a(self) -> int:
        return self.c - self.b

    @property
    def size(self) -> int:
        """|s|, counting free loops."""
        return len(self.circles) + self.loops

    def bits(self) -> tuple[int, ...]:
        return tuple((self.choices >> k) & 1 for k in range(self.c))


@dataclass(frozen=True)
class EnhancedState:
    state: KauffmanState
    labels: int

    @property
    def n_x(self) -> int:
        return bin(self.labels).count("1")

    @property
    def theta(self) -> int:
        return self.state.size - 2 * self.n_x

    @property
    def i(self) -> int:
        return self.state.b

    @property
    def j(self) -> int:
        return self.state.b + self.theta

    def label_vector(self) -> tuple[str, ...]:
        return tuple("x" if (self.labels >> m) & 1 else "1" for m in range(self.state.size))


def _choices_int(D: LinkDiagram, choices) -> int:
    if isinstance(choices, int):
        if choices < 0 or choices >> D.c:
            raise ValueError("state bitmask out of range")
        return choices
    seq = list(choices)
    if len(seq) != D.c:
        raise ValueError("choice vector has length %d, expected %d" % (len(seq), D.c))
    s = 0
    for k, v in enumerate(seq):
        if v in (1, "B", "b"):
            s |= 1 << k
        elif v not in (0, "A", "a"):
            raise ValueError("choices must be A/B or 0/1")
    return s


def kauffman_state(D: LinkDiagram, choices) -> KauffmanState:
    s = _choices_int(D, choices)
    label, n = circle_labels(D, s)
    circles: list[list[int]] = [[] for _ in range(n)]
    for a, m in enumerate(label, start=1):
        circles[m].append(a)
    return KauffmanState(s, D.c, tuple(tuple(c) for c in circles), D.loops)


def _size(D: LinkDiagram, s: int) -> int:
    return circle_labels(D, s)[1] + D.loops


def sA(D: LinkDiagram) -> int:
    return _size(D, 0)


def sB(D: LinkDiagram) -> int:
    return _size(D, (1 << D.c) - 1)


def turaev_genus_diagram(D: LinkDiagram) -> int:
    if is_split(D):
        raise PDError("split diagram")
    twice = 2 + D.c - sA(D) - sB(D)
    assert twice >= 0 and twice % 2 == 0, "circle count parity broken"
    return twice // 2


def is_adequate(D: LinkDiagram, side: str = "A") -> bool:
    all_b = side.upper() == "B"
    s = (1 << D.c) - 1 if all_b else 0
    label, _ = circle_labels(D, s)
    for (a, b, c, d) in D.crossings:
        # the two smoothing arcs of a crossing are the arc pairs it joins
        if all_b:
            if label[a - 1] == label[b - 1]:
                return False
        elif label[a - 1] == label[d - 1]:
            return False
    return True


def states_in_slice(D: LinkDiagram, j: int, cache: dict | None = None) -> list[int]:
    """All states carrying an enhanced state of quantum grading ``j``, ascending.

    ``b - |s|`` and ``b + |s|`` never decrease under an A to B flip, so the
    states with ``b - |s| <= j`` form a down-set reachable from all-A, and
    those with ``b + |s| >= j`` an up-set reachable from all-B.  Whichever end
    is nearer to ``j`` is searched.
    """
    c = D.c
    full = (1 << c) - 1
    if cache is None:
        cache = {}

    def size(s: int) -> int:
        v = cache.get(s)
        if v is None:
            v = circle_labels(D, s)
            cache[s] = v
        return v[1] + D.loops

    lo = -size(0)
    hi = c + size(full)
    if j < lo or j > hi or (j - lo) % 2:
        return []
    if c <= 12:
        cands = range(full + 1)
        out = []
        for s in cands:
            b = bin(s).count("1")
            n = size(s)
            if b - n <= j <= b + n:
                out.append(s)
        return out
    from_bottom = (j - lo) <= (hi - j)
    seen = {0 if from_bottom else full}
    queue = deque(seen)
    keep = []
    while queue:
        s = queue.popleft()
        b = bin(s).count("1")
        n = size(s)
        if b - n <= j <= b + n:
            keep.append(s)
        for k in range(c):
            bit = 1 << k
            if from_bottom:
                if s & bit:
                    continue
                t = s | bit
            else:
                if not s & bit:
                    continue
                t = s & ~bit
            if t in seen:
                continue
            bt = bin(t).count("1")
            nt = size(t)
            if (from_bottom and bt - nt <= j) or (not from_bottom and bt + nt >= j):
                seen.add(t)
                queue.append(t)
    keep.sort()
    return keep


def masks_with_popcount(n: int, k: int) -> list[int]:
    """All ``n``-bit masks with ``k`` bits set, ascending."""
    if k < 0 or k > n:
        return []
    out = [sum(1 << p for p in combo) for combo in combinations(range(n), k)]
    out.sort()
    return out


def enumerate_enhanced(D: LinkDiagram, j: int) -> Iterator[EnhancedState]:
    """Enhanced states of quantum grading ``j``, by ``i``, then state, then labels."""
    cache: dict = {}
    states = states_in_slice(D, j, cache)
    by_i: dict[int, list[int]] = {}
    for s in states:
        by_i.setdefault(bin(s).count("1"), []).append(s)
    for i in sorted(by_i):
        for s in by_i[i]:
            ks = kauffman_state(D, s)
            n = ks.size
            nx, rem = divmod(i + n - j, 2)
            if rem:
                continue
            for mask in masks_with_popcount(n, nx):
                yield EnhancedState(ks, mask)
