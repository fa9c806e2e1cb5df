"""Smith normal form over the integers.

Unit pivots are eliminated sparsely first, cheapest (fewest entries in the
pivot column) first; whatever survives is handed to a dense elimination.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = ["SNFResult", "SparseMatrix", "smith_normal_form", "rank", "dense_invariant_factors",
           "prime_power_parts"]


@dataclass
class SparseMatrix:
    """Row-major sparse integer matrix."""

    nrows: int
    ncols: int
    rows: list[dict[int, int]]

    @classmethod
    def from_dense(cls, data: Sequence[Sequence[int]]) -> "SparseMatrix":
        rows = [{j: int(v) for j, v in enumerate(r) if v} for r in data]
        ncols = len(data[0]) if len(data) else 0
        return cls(len(rows), ncols, rows)

    @classmethod
    def from_entries(cls, nrows: int, ncols: int,
                     entries: Iterable[tuple[int, int, int]]) -> "SparseMatrix":
        rows: list[dict[int, int]] = [{} for _ in range(nrows)]
        for i, j, v in entries:
            if v:
                rows[i][j] = rows[i].get(j, 0) + v
                if not rows[i][j]:
                    del rows[i][j]
        return cls(nrows, ncols, rows)

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                out[i][j] = v
        return out

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    def matmul(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        rows = []
        for r in self.rows:
            acc: dict[int, int] = {}
            for k, v in r.items():
                for j, w in other.rows[k].items():
                    acc[j] = acc.get(j, 0) + v * w
            rows.append({j: v for j, v in acc.items() if v})
        return SparseMatrix(self.nrows, other.ncols, rows)

    def is_zero(self) -> bool:
        return all(not r for r in self.rows)


@dataclass(frozen=True)
class SNFResult:
    factors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(f for f in self.factors if f > 1)


def _as_sparse(M) -> SparseMatrix:
    if isinstance(M, SparseMatrix):
        return SparseMatrix(M.nrows, M.ncols, [dict(r) for r in M.rows])
    if hasattr(M, "tolist"):
        M = M.tolist()
    M = [list(r) for r in M]
    if not M:
        return SparseMatrix(0, 0, [])
    return SparseMatrix.from_dense(M)


def _eliminate_units(S: SparseMatrix) -> tuple[int, list[dict[int, int]]]:
    """Remove unit pivots in place; return their count and the surviving rows."""
    rows = S.rows
    cols: dict[int, set[int]] = {}
    for i, r in enumerate(rows):
        for j in r:
            cols.setdefault(j, set()).add(i)
    alive = set(i for i, r in enumerate(rows) if r)
    units = 0
    progress = True
    while progress:
        progress = False
        for i in sorted(alive, key=lambda t: len(rows[t])):
            if i not in alive:
                continue
            r = rows[i]
            best, best_cost = -1, -1
            for j, v in r.items():
                if v == 1 or v == -1:
                    cost = len(cols[j])
                    if best < 0 or cost < best_cost:
                        best, best_cost = j, cost
            if best < 0:
                continue
            u = r[best]
            for k in list(cols[best]):
                if k == i:
                    continue
                rk = rows[k]
                f = rk[best] * u
                for j, v in r.items():
                    nv = rk.get(j, 0) - f * v
                    if nv:
                        if j not in rk:
                            cols[j].add(k)
                        rk[j] = nv
                    elif j in rk:
                        del rk[j]
                        cols[j].discard(k)
                if not rk:
                    alive.discard(k)
            for j in r:
                cols[j].discard(i)
            rows[i] = {}
            alive.discard(i)
            units += 1
            progress = True
    return units, [rows[i] for i in sorted(alive)]


def dense_invariant_factors(A: list[list[int]]) -> list[int]:
    """Nonzero invariant factors of a small dense matrix (modified in place)."""
    m = len(A)
    n = len(A[0]) if m else 0
    out: list[int] = []
    t = 0
    while t < m and t < n:
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        A[t], A[pi] = A[pi], A[t]
        if pj != t:
            for row in A:
                row[t], row[pj] = row[pj], row[t]
        while True:
            p = A[t][t]
            clean = True
            for i in range(t + 1, m):
                v = A[i][t]
                if v:
                    f = v // p
                    if f:
                        ri, rt = A[i], A[t]
                        for j in range(t, n):
                            if rt[j]:
                                ri[j] -= f * rt[j]
                    if A[i][t]:
                        clean = False
            for j in range(t + 1, n):
                v = A[t][j]
                if v:
                    f = v // p
                    if f:
                        for i in range(t, m):
                            if A[i][t]:
                                A[i][j] -= f * A[i][t]
                    if A[t][j]:
                        clean = False
            if not clean:
                # move the smallest leftover in row/column t to the pivot
                cand = [(abs(A[i][t]), i, t) for i in range(t + 1, m) if A[i][t]]
                cand += [(abs(A[t][j]), t, j) for j in range(t + 1, n) if A[t][j]]
                _, ci, cj = min(cand)
                if ci != t:
                    A[t], A[ci] = A[ci], A[t]
                if cj != t:
                    for row in A:
                        row[t], row[cj] = row[cj], row[t]
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            rt, rb = A[t], A[bad]
            for j in range(t, n):
                rt[j] += rb[j]
        out.append(abs(A[t][t]))
        t += 1
    return out


def smith_normal_form(M) -> SNFResult:
    """Invariant factors ``d1 | d2 | ...`` of an integer matrix (nonzero ones)."""
    S = _as_sparse(M)
    units, rest = _eliminate_units(S)
    cols = sorted({j for r in rest for j in r})
    pos = {j: k for k, j in enumerate(cols)}
    dense = [[0] * len(cols) for _ in rest]
    for i, r in enumerate(rest):
        for j, v in r.items():
            dense[i][pos[j]] = v
    factors = dense_invariant_factors(dense) if dense and cols else []
    return SNFResult(tuple([1] * units + sorted(factors)))


def rank(M) -> int:
    return smith_normal_form(M).rank


def prime_power_parts(n: int) -> list[int]:
    """Split a cyclic order into prime-power orders, e.g. 12 -> [3, 4]."""
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 1
            while n % p == 0:
                n //= p
                e *= p
            out.append(e)
        p += 1
    if n > 1:
        out.append(n)
    return sorted(out)
