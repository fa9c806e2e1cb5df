"""Slow reference implementations used only by the tests.

Nothing here imports the package: PD text is parsed with its own regex,
circles are traced by walking arcs, the complex is assembled as dense
matrices over all enhanced states and homology comes from a textbook
pivoting diagonalization.  Only meant for diagrams with a handful of
crossings.
"""

from __future__ import annotations

import re
from itertools import combinations, product
from math import gcd

A_PAIRS = ((0, 1), (2, 3))
B_PAIRS = ((0, 3), (1, 2))


def parse(text):
    """Return (quads, free loops) from ``X(a,b,c,d)`` / ``O`` tokens."""
    body = "\n".join(line.split("#", 1)[0] for line in text.splitlines())
    quads = [tuple(int(v) for v in m.split(","))
             for m in re.findall(r"X\(([-\d,\s]+)\)", body)]
    loops = len(re.findall(r"\bO\b", body))
    return quads, loops


def orientation_signs(quads):
    """Crossing signs from walking each component.

    The under strand enters at slot 0.  Endpoints are ``(crossing, slot)``;
    going through a crossing maps slot ``k`` to ``k ^ 2``.
    """
    where = {}
    for x, q in enumerate(quads):
        for k, a in enumerate(q):
            where.setdefault(a, []).append((x, k))
    head = {}
    for x, q in enumerate(quads):
        start = q[0]
        if start in head:
            continue
        a, h = start, (x, 0)
        while a not in head:
            head[a] = h
            nx, nk = h[0], h[1] ^ 2
            a = quads[nx][nk]
            ends = where[a]
            h = ends[1] if ends[0] == (nx, nk) else ends[0]
    for a, ends in where.items():
        if a not in head:
            raise ValueError("component without under-crossings")
    # over strand runs 3 -> 1 at a positive crossing
    return [1 if head[q[3]] == (x, 3) else -1 for x, q in enumerate(quads)]


def circles(quads, state):
    """Circles of a Kauffman state as frozensets of arc labels."""
    nbr = {}
    for x, q in enumerate(quads):
        for s, t in (B_PAIRS if (state >> x) & 1 else A_PAIRS):
            nbr.setdefault(q[s], []).append(q[t])
            nbr.setdefault(q[t], []).append(q[s])
    seen, out = set(), []
    for a in sorted(nbr):
        if a in seen:
            continue
        comp, todo = set(), [a]
        while todo:
            b = todo.pop()
            if b in comp:
                continue
            comp.add(b)
            todo.extend(nbr[b])
        seen |= comp
        out.append(frozenset(comp))
    return out


def bracket_counts(quads, loops):
    """{(number of B smoothings, number of circles): multiplicity}."""
    out = {}
    for s in range(1 << len(quads)):
        key = (bin(s).count("1"), len(circles(quads, s)) + loops)
        out[key] = out.get(key, 0) + 1
    return out


def jones(text):
    """{q exponent: coefficient} of the unnormalized Jones polynomial."""
    quads, loops = parse(text)
    signs = orientation_signs(quads) if quads else []
    cp, cm = signs.count(1), signs.count(-1)
    acc = {}
    for (b, n), mult in bracket_counts(quads, loops).items():
        # (q + 1/q)^n = sum_k C(n, k) q^(n - 2k)
        for k in range(n + 1):
            c = _binom(n, k)
            e = n - 2 * k + b + cp - 2 * cm
            acc[e] = acc.get(e, 0) + (-1) ** (b + cm) * mult * c
    return {e: c for e, c in acc.items() if c}


def _binom(n, k):
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out


# ---------------------------------------------------------------------------
# the chain complex

def generators(quads, loops):
    """All enhanced states as (state, labels) with labels 0 for 1 and 1 for x."""
    out = []
    for s in range(1 << len(quads)):
        n = len(circles(quads, s)) + loops
        for lab in product((0, 1), repeat=n):
            out.append((s, lab))
    return out


def _grading(s, lab):
    i = bin(s).count("1")
    return i, i + lab.count(0) - lab.count(1)


def _image(quads, loops, s, lab, k):
    """Linear combination (dict) of targets of ``(s, lab)`` across crossing k."""
    t = s | (1 << k)
    cs, ct = circles(quads, s), circles(quads, t)
    ls = dict(zip(cs, lab))
    free = lab[len(cs):]
    old = [c for c in cs if c not in ct]
    new = [c for c in ct if c not in cs]
    fixed = {c: ls[c] for c in cs if c in ct}
    outs = []
    if len(old) == 2 and len(new) == 1:
        a, b = ls[old[0]], ls[old[1]]
        if a + b < 2:
            outs.append({new[0]: a + b})
    elif len(old) == 1 and len(new) == 2:
        if ls[old[0]] == 0:
            outs.append({new[0]: 0, new[1]: 1})
            outs.append({new[0]: 1, new[1]: 0})
        else:
            outs.append({new[0]: 1, new[1]: 1})
    else:
        raise AssertionError("a single smoothing change must merge or split")
    res = []
    for o in outs:
        labels = dict(fixed)
        labels.update(o)
        res.append((t, tuple(labels[c] for c in ct) + tuple(free)))
    return res


def complex_matrices(text):
    """Dense differentials ``d[(i, j)]`` from C^{i,j} to C^{i+1,j} and the bases."""
    quads, loops = parse(text)
    gens = generators(quads, loops)
    basis = {}
    for g in gens:
        basis.setdefault(_grading(*g), []).append(g)
    index = {key: {g: r for r, g in enumerate(b)} for key, b in basis.items()}
    mats = {}
    for (i, j), src in basis.items():
        dst = index.get((i + 1, j), {})
        M = [[0] * len(src) for _ in dst]
        for col, (s, lab) in enumerate(src):
            for k in range(len(quads)):
                if (s >> k) & 1:
                    continue
                sgn = (-1) ** bin(s & ((1 << k) - 1)).count("1")
                for tgt in _image(quads, loops, s, lab, k):
                    M[dst[tgt]][col] += sgn
        mats[(i, j)] = M
    return basis, mats


def matmul(A, B):
    return [[sum(A[r][k] * B[k][c] for k in range(len(B))) for c in range(len(B[0]))]
            for r in range(len(A))] if A and B and B[0] else []


def diagonalize(M):
    """Nonzero diagonal entries after integer row/column elimination.

    The entries need not divide each other; their prime-power parts give the
    cokernel's torsion and their count the rank.
    """
    A = [row[:] for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    diag = []
    t = 0
    while t < min(m, n):
        nz = [(abs(A[r][c]), r, c) for r in range(t, m) for c in range(t, n) if A[r][c]]
        if not nz:
            break
        _, r, c = min(nz)
        A[t], A[r] = A[r], A[t]
        for row in A:
            row[t], row[c] = row[c], row[t]
        while True:
            p = A[t][t]
            for r in range(t + 1, m):
                f = A[r][t] // p
                if f:
                    A[r] = [x - f * y for x, y in zip(A[r], A[t])]
            for c in range(t + 1, n):
                f = A[t][c] // p
                if f:
                    for row in A:
                        row[c] -= f * row[t]
            rest = [(abs(A[r][t]), r, None) for r in range(t + 1, m) if A[r][t]] + \
                   [(abs(A[t][c]), None, c) for c in range(t + 1, n) if A[t][c]]
            if not rest:
                break
            _, r, c = min(rest, key=lambda z: z[0])
            if r is not None:
                A[t], A[r] = A[r], A[t]
            else:
                for row in A:
                    row[t], row[c] = row[c], row[t]
        diag.append(abs(A[t][t]))
        t += 1
    return diag


def prime_powers(n):
    out, p = [], 2
    while n > 1:
        if n % p == 0:
            q = 1
            while n % p == 0:
                n //= p
                q *= p
            out.append(q)
        p += 1
    return out


def homology(text):
    """Unshifted integral homology {(i, j): (rank, torsion)} of the dense complex."""
    basis, mats = complex_matrices(text)
    diag = {key: diagonalize(M) if M and M[0] else [] for key, M in mats.items()}
    out = {}
    for (i, j), b in basis.items():
        out_rank = len(diag.get((i, j), []))
        inc = diag.get((i - 1, j), [])
        free = len(b) - out_rank - len(inc)
        tors = sorted(q for d in inc for q in prime_powers(d))
        if free or tors:
            out[(i, j)] = (free, tuple(tors))
    return out


def khovanov(text):
    """Homology with the link gradings ``(i - c_-, j + c_+ - 2 c_-)``."""
    quads, _ = parse(text)
    signs = orientation_signs(quads) if quads else []
    cp, cm = signs.count(1), signs.count(-1)
    return {(i - cm, j + cp - 2 * cm): v for (i, j), v in homology(text).items()}


def d_squared(text):
    """Largest absolute entry of d o d over all bidegrees (0 when exact)."""
    _, mats = complex_matrices(text)
    worst = 0
    for (i, j), M in mats.items():
        N = mats.get((i + 1, j))
        if not M or not N or not N[0]:
            continue
        P = matmul(N, M)
        worst = max([worst] + [abs(v) for row in P for v in row])
    return worst


# ---------------------------------------------------------------------------
# invariant factors from minors

def _det(M):
    n = len(M)
    if n == 0:
        return 1
    if n == 1:
        return M[0][0]
    return sum((-1) ** c * M[0][c] * _det([row[:c] + row[c + 1:] for row in M[1:]])
               for c in range(n))


def determinantal_factors(M):
    """Invariant factors d_k / d_(k-1), with d_k the gcd of all k x k minors."""
    m = len(M)
    n = len(M[0]) if m else 0
    ds = [1]
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                g = gcd(g, _det([[M[r][c] for c in cols] for r in rows]))
        if g == 0:
            break
        ds.append(g)
    return [ds[k] // ds[k - 1] for k in range(1, len(ds))]
