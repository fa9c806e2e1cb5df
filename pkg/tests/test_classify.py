import json
from fractions import Fraction
from pathlib import Path

import pytest

from khoverant.classify import (A_AA, ALT, B_AA, NOT_AA, adj_counts, almost_alt_structure,
                                classify, find_dealternators, goeritz_matrix, inertia,
                                signature, turaev1_flags)
from khoverant.diagram import PDError, flip_crossing, mirror, parse_pd
from khoverant.polynomials import convert_normalization, jones

VALUES = json.loads((Path(__file__).parent / "data" / "knot_values.json").read_text())


def test_alternating_fixtures(registry):
    for name in ("trefoil_right", "k4_1", "k7_4", "hopf", "borromean", "whitehead"):
        C = classify(registry[name].diagram)
        assert C.alternating and C.verdict == ALT and C.structures == ()


@pytest.mark.parametrize("name,verdict,dealt,adj", [
    ("t34_aa", A_AA, 2, (0, 1)),
    ("13n613", A_AA, 5, (0, 3)),
    ("l11n388", B_AA, 3, (4, 0)),
])
def test_almost_alternating_fixtures(registry, name, verdict, dealt, adj):
    D = registry[name].diagram
    C = classify(D)
    assert C.verdict == verdict
    assert [s.dealternator for s in C.structures] == [dealt]
    assert adj_counts(D, dealt) == adj
    S = almost_alt_structure(D, dealt)
    assert S.cond1 and S.cond2
    assert S.cond3A == (verdict == A_AA) and S.cond3B == (verdict == B_AA)
    assert C.to_dict()["dealternators"][0]["index"] == dealt


def test_mirror_swaps_sides(registry):
    assert classify(mirror(registry["t34_aa"].diagram)).verdict == B_AA
    assert classify(mirror(registry["l11n388"].diagram)).verdict == A_AA


def test_not_almost_alternating(registry):
    D = registry["13n588"].diagram
    assert find_dealternators(D) == []
    assert classify(D).verdict == NOT_AA


def test_one_flip_of_alternating_is_found(registry):
    D = flip_crossing(registry["k7_4"].diagram, 3)
    assert 3 in find_dealternators(D)
    assert classify(D).verdict != ALT


def test_turaev_flags(registry):
    assert turaev1_flags(registry["t34_aa"].diagram) == {"A_tg1": True, "B_tg1": False}
    flags = turaev1_flags(registry["13n588"].diagram)
    assert not flags["A_tg1"] and not flags["B_tg1"] and "note" in flags


# ---------------------------------------------------------------------------
# signature

@pytest.mark.parametrize("name", sorted(VALUES))
def test_signature_frozen(registry, name):
    assert signature(registry[name].diagram) == VALUES[name]["signature"]


@pytest.mark.parametrize("name", ["trefoil_right", "k5_2", "12n809", "t34_aa"])
def test_signature_of_mirror_is_negated(registry, name):
    D = registry[name].diagram
    assert signature(mirror(D)) == -signature(D)


def _jones_at_minus_one(D):
    # |V(-1)| with t^(1/2) = i
    V = convert_normalization(jones(D))
    return abs(sum(c * 1j ** e for e, c in V.terms))


@pytest.mark.parametrize("name", sorted(VALUES))
def test_goeritz_determinant_equals_jones_value(registry, name):
    D = registry[name].diagram
    M, _ = goeritz_matrix(D)
    det = round(abs(_det(M)))
    assert det == VALUES[name]["determinant"]
    assert round(_jones_at_minus_one(D)) == det


def _det(M):
    A = [[Fraction(v) for v in row] for row in M]
    n, d = len(A), Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c]), None)
        if p is None:
            return 0
        if p != c:
            A[c], A[p] = A[p], A[c]
            d = -d
        d *= A[c][c]
        for r in range(c + 1, n):
            f = A[r][c] / A[c][c]
            A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return d


def test_inertia():
    assert inertia([[2, 1], [1, 2]]) == (2, 0, 0)
    assert inertia([[0, 1], [1, 0]]) == (1, 1, 0)
    assert inertia([[1, 0], [0, 0]]) == (1, 0, 1)
    assert inertia([]) == (0, 0, 0)


def test_signature_edge_cases():
    assert signature(parse_pd("O")) == 0
    with pytest.raises(PDError):
        signature(parse_pd("X(1,1,2,2) O"))
    # kinks do not change the signature
    assert signature(parse_pd("X(1,1,2,2)")) == 0
    assert signature(parse_pd("X(1,2,2,1)")) == 0


def test_link_signature_hopf(registry):
    D = registry["hopf"].diagram
    # negative Hopf link; positive links have negative signature here
    assert D.signs == (-1, -1)
    assert signature(D) == 1 and signature(mirror(D)) == -1
