import json
from pathlib import Path

import pytest

import oracles
from khoverant.diagram import mirror, parse_pd
from khoverant.homology import (KhTable, KhovanovComplex, boundary_matrix, chain_slice,
                                grading_shift, incidence, j_bounds, kh, sign, unshifted_kh)
from khoverant.polynomials import jones
from khoverant.snf import (SparseMatrix, dense_invariant_factors, prime_power_parts, rank,
                           smith_normal_form)

FROZEN = json.loads((Path(__file__).parent / "data" / "oracle_frozen.json").read_text())


def as_cells(records):
    return {(i, j): (r, tuple(t)) for i, j, r, t in records}


# ---------------------------------------------------------------------------
# Smith normal form

def test_snf_small_examples():
    assert smith_normal_form([[2, 4], [6, 8]]).factors == (2, 4)
    assert smith_normal_form([[0, 0], [0, 0]]).factors == ()
    assert smith_normal_form([[1, 2, 3], [4, 5, 6], [7, 8, 9]]).factors == (1, 3)
    assert smith_normal_form([]).factors == ()
    assert rank([[2, 0], [0, 0]]) == 1
    assert smith_normal_form([[6]]).torsion == (6,)


def test_dense_invariant_factors_divide():
    fs = dense_invariant_factors([[4, 0, 0], [0, 6, 0], [0, 0, 10]])
    assert fs == [2, 2, 60]


def test_prime_power_parts():
    assert prime_power_parts(12) == [3, 4]
    assert prime_power_parts(1) == []


def test_sparse_matrix_helpers():
    M = SparseMatrix.from_entries(2, 3, [(0, 0, 1), (0, 0, -1), (1, 2, 5)])
    assert M.to_dense() == [[0, 0, 0], [0, 0, 5]]
    assert M.nnz() == 1
    N = SparseMatrix.from_dense([[1], [1], [1]])
    assert M.matmul(N).to_dense() == [[0], [5]]
    with pytest.raises(ValueError):
        M.matmul(M)


# ---------------------------------------------------------------------------
# frozen brute-force values

@pytest.mark.parametrize("name", sorted(FROZEN))
def test_kh_matches_frozen_oracle(name):
    D = parse_pd(FROZEN[name]["pd"])
    assert dict(kh(D, check=True).cells) == as_cells(FROZEN[name]["kh"])


@pytest.mark.parametrize("name", sorted(FROZEN))
def test_oracle_still_reproduces_frozen_values(name):
    got = oracles.khovanov(FROZEN[name]["pd"])
    assert got == as_cells(FROZEN[name]["kh"])
    assert {str(e): c for e, c in oracles.jones(FROZEN[name]["pd"]).items()} == FROZEN[name]["jones"]


def test_trefoil_table_by_hand():
    # Z at (0,1), (0,3), (2,5), (3,9) and Z/2 at (3,7)
    T = kh(parse_pd("X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)"))
    assert T.poincare() == {(0, 1): 1, (0, 3): 1, (2, 5): 1, (3, 9): 1}
    assert T.torsion(3, 7) == (2,)


# ---------------------------------------------------------------------------
# the complex itself

def test_oracle_complex_squares_to_zero():
    for name in ("trefoil_right", "k4_1", "hopf"):
        assert oracles.d_squared(FROZEN[name]["pd"]) == 0


def test_boundary_matrix_matches_incidence_and_sign():
    D = parse_pd(FROZEN["k4_1"]["pd"])
    lo, hi = j_bounds(D)
    seen = 0
    for j in range(lo, hi + 1, 2):
        for i in range(D.c):
            M, src, dst = boundary_matrix(D, i, j)
            dense = M.to_dense()
            for col, S0 in enumerate(src):
                for row, S1 in enumerate(dst):
                    want = incidence(S0, S1)
                    if want:
                        want *= sign(S0, S1)
                    assert dense[row][col] == want
                    seen += 1
    assert seen > 100


def test_incidence_rejects_unrelated_states():
    D = parse_pd(FROZEN["trefoil_right"]["pd"])
    # i = 0 and i = 2 in the same quantum grading
    _, src, _ = boundary_matrix(D, 0, 2)
    _, _, far = boundary_matrix(D, 1, 2)
    assert src and far
    assert all(incidence(S0, S1) == 0 for S0 in src for S1 in far)
    with pytest.raises(ValueError):
        sign(src[0], far[0])


def test_chain_slice_composes_to_zero():
    D = parse_pd(FROZEN["k4_1"]["pd"])
    C = chain_slice(D, 2, 1)
    assert C.d_out.nrows == len(boundary_matrix(D, 3, 1)[1])
    assert C.d_out.matmul(C.d_in).is_zero()


def test_unshifted_modes_agree_with_full():
    D = parse_pd(FROZEN["k5_1"]["pd"])
    full = unshifted_kh(D)
    lo = unshifted_kh(D, mode="jmin")
    hi = unshifted_kh(D, mode="jmax")
    assert lo.j_min == full.j_min and lo.row(lo.j_min) == full.row(full.j_min)
    assert hi.j_max == full.j_max and hi.row(hi.j_max) == full.row(full.j_max)
    with pytest.raises(ValueError):
        unshifted_kh(D, mode="middle")


def test_grading_shift_and_link_gradings():
    D = parse_pd(FROZEN["trefoil_left"]["pd"])
    assert grading_shift(D) == (-3, -6)
    assert kh(D, js=[-9]).cells == {(-3, -9): (1, ())}
    assert kh(D, js=[-9]).j_range == (-9,)


def test_parallel_slices_match_serial():
    D = parse_pd(FROZEN["k4_1"]["pd"])
    assert dict(kh(D, jobs=2).cells) == dict(kh(D).cells)


def test_table_helpers():
    D = parse_pd(FROZEN["k4_1"]["pd"])
    T = kh(D)
    assert T.euler() == jones(D)
    assert T[(5, 5)] == (0, ())
    assert T.computed(1) and not T.computed(2)
    assert T.j_min == -5 and T.j_max == 5
    back = KhTable.from_records(json.loads(T.to_json()), T.j_range)
    assert dict(back.cells) == dict(T.cells)
    assert T.shift(1, 2).rank(-1, -3) == 1
    grid = T.grid_csv().splitlines()
    assert grid[0] == "j\\i,-2,-1,0,1,2"
    assert grid[1] == "5,,,,,1"
    assert "2Z2" not in T.pretty() and "Z2" in T.pretty()
    assert KhTable({}).pretty() == "(zero)\n"


def test_mirror_of_table():
    D = parse_pd(FROZEN["trefoil_right"]["pd"])
    T, M = kh(D), kh(mirror(D))
    # free parts reflect through the origin
    assert {(-i, -j): r for (i, j), r in T.poincare().items()} == M.poincare()


def test_complex_caches_are_consistent():
    D = parse_pd(FROZEN["k4_1"]["pd"])
    K = KhovanovComplex(D)
    gens, level, out = K.slice_complex(1)
    assert len(gens) == len(level) == len(out)
    assert K.homology_slice(1, check=True) == K.homology_slice(1)
