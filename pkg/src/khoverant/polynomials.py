"""Integer Laurent polynomials, the Kauffman bracket and the Jones polynomial.

Bracket convention: ``<X> = <A-smoothing> - q <B-smoothing>`` and
``<O> = q + 1/q``.  The unnormalized Jones polynomial is
``V(q) = (-1)^{c-} q^{c+ - 2c-} <D>``, and the classical one satisfies
``V(q) = (q + 1/q) * Vt(q^2)``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .diagram import LinkDiagram
from .states import circle_labels

__all__ = ["LaurentPoly", "bracket", "jones", "convert_normalization", "q", "ONE", "LOOP"]


@dataclass(frozen=True)
class LaurentPoly:
    """Sparse Laurent polynomial; exponent ``e`` means ``var^(e/denom)``."""

    terms: tuple[tuple[int, int], ...] = ()
    var: str = "q"
    denom: int = 1

    @classmethod
    def from_dict(cls, coeffs: Mapping[int, int], var: str = "q", denom: int = 1) -> "LaurentPoly":
        return cls(tuple(sorted((int(e), int(c)) for e, c in coeffs.items() if c)), var, denom)

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1, var: str = "q") -> "LaurentPoly":
        return cls.from_dict({exp: coeff}, var)

    def as_dict(self) -> dict[int, int]:
        return dict(self.terms)

    def _check(self, other: "LaurentPoly") -> None:
        if (self.var, self.denom) != (other.var, other.denom):
            raise ValueError("variable mismatch")

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        acc = Counter(self.as_dict())
        for e, c in other.terms:
            acc[e] += c
        return LaurentPoly.from_dict(acc, self.var, self.denom)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(tuple((e, -c) for e, c in self.terms), self.var, self.denom)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly.from_dict({e: c * other for e, c in self.terms}, self.var, self.denom)
        self._check(other)
        acc: Counter = Counter()
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                acc[e1 + e2] += c1 * c2
        return LaurentPoly.from_dict(acc, self.var, self.denom)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative power")
        out = LaurentPoly(((0, 1),), self.var, self.denom)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, k: int) -> "LaurentPoly":
        return LaurentPoly(tuple((e + k, c) for e, c in self.terms), self.var, self.denom)

    def invert(self) -> "LaurentPoly":
        """Substitute ``var -> 1/var``."""
        return LaurentPoly.from_dict({-e: c for e, c in self.terms}, self.var, self.denom)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def min_exp(self) -> Fraction:
        return Fraction(self.terms[0][0], self.denom)

    @property
    def max_exp(self) -> Fraction:
        return Fraction(self.terms[-1][0], self.denom)

    def span(self) -> Fraction:
        if not self.terms:
            raise ValueError("span of zero polynomial")
        return self.max_exp - self.min_exp

    def divmod_by(self, other: "LaurentPoly") -> tuple["LaurentPoly", "LaurentPoly"]:
        """Long division by ``other`` (unit leading coefficient).

        Both sides are first shifted to ordinary polynomials; the remainder is
        zero exactly when ``other`` divides ``self`` in the Laurent ring.
        """
        self._check(other)
        if not other.terms or abs(other.terms[-1][1]) != 1:
            raise ValueError("divisor must have unit leading coefficient")
        if not self.terms:
            return self, self
        s0, o0 = self.terms[0][0], other.terms[0][0]
        rem = {e - s0: c for e, c in self.terms}
        div = {e - o0: c for e, c in other.terms}
        deg = max(div)
        lead = div[deg]
        quo: dict[int, int] = {}
        while rem and max(rem) >= deg:
            top = max(rem)
            f = rem[top] * lead
            k = top - deg
            quo[k] = f
            for e, c in div.items():
                v = rem.get(e + k, 0) - f * c
                if v:
                    rem[e + k] = v
                else:
                    rem.pop(e + k, None)
        shift = s0 - o0
        return (LaurentPoly.from_dict({e + shift: c for e, c in quo.items()}, self.var, self.denom),
                LaurentPoly.from_dict({e + s0: c for e, c in rem.items()}, self.var, self.denom))

    def __call__(self, value):
        return sum(c * value ** Fraction(e, self.denom) for e, c in self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in reversed(self.terms):
            ex = Fraction(e, self.denom)
            if ex == 0:
                mono = ""
            elif ex == 1:
                mono = self.var
            else:
                mono = "%s^%s" % (self.var, ex if ex.denominator == 1 else "(%s)" % ex)
            mag = abs(c)
            body = mono if mag == 1 and mono else (str(mag) + ("*" + mono if mono else ""))
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return head + "".join(" %s %s" % p for p in parts[1:])

    def to_json(self) -> dict:
        return {"var": self.var, "denom": self.denom,
                "terms": {str(e): c for e, c in self.terms}}


q = LaurentPoly(((1, 1),))
ONE = LaurentPoly(((0, 1),))
LOOP = LaurentPoly(((-1, 1), (1, 1)))


def _state_counts(D: LinkDiagram) -> Counter:
    counts: Counter = Counter()
    for s in range(1 << D.c):
        n = circle_labels(D, s)[1] + D.loops
        counts[(bin(s).count("1"), n)] += 1
    return counts


def bracket_from_counts(counts: Mapping[tuple[int, int], int]) -> LaurentPoly:
    acc: Counter = Counter()
    loop_pows: dict[int, LaurentPoly] = {}
    for (b, n), m in counts.items():
        if n not in loop_pows:
            loop_pows[n] = LOOP ** n
        sign = -1 if b % 2 else 1
        for e, c in loop_pows[n].terms:
            acc[e + b] += sign * m * c
    return LaurentPoly.from_dict(acc)


def bracket(D: LinkDiagram) -> LaurentPoly:
    """State sum over all ``2^c`` Kauffman states."""
    return bracket_from_counts(_state_counts(D))


def jones(D: LinkDiagram) -> LaurentPoly:
    cp, cm = D.c_plus, D.c_minus
    return bracket(D).shift(cp - 2 * cm) * (-1 if cm % 2 else 1)


def convert_normalization(V: LaurentPoly) -> LaurentPoly:
    """Return ``Vt`` with ``V(q) = (q + 1/q) Vt(q^2)``, in powers of ``t^(1/2)``."""
    if V.var != "q" or V.denom != 1:
        raise ValueError("expected a polynomial in q")
    if V.is_zero():
        raise ValueError("zero polynomial is not a Jones polynomial")
    quo, rem = V.divmod_by(LOOP)
    if not rem.is_zero():
        raise ValueError("not divisible by q + 1/q")
    return LaurentPoly(quo.terms, "t", 2)


def poly_from_pairs(pairs: Iterable[tuple[int, int]], var: str = "q") -> LaurentPoly:
    acc: Counter = Counter()
    for e, c in pairs:
        acc[e] += c
    return LaurentPoly.from_dict(acc, var)
