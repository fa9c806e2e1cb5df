from dataclasses import replace

import pytest

from khoverant.diagram import PDError, checkerboard, mirror, parse_pd
from khoverant.homology import KhTable, kh
from khoverant.legendrian import (LegendrianFront, contraction_rotations, front_diagram,
                                  front_svg, graph_rotations, kh_tb_bound, legendrian_front,
                                  match_diagram, mondrian_from_graph, tb_interval, tb_of_front,
                                  validate_mondrian)
from khoverant.polynomials import jones

RIGHT = "X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)"


def test_kh_tb_bound():
    assert kh_tb_bound(kh(parse_pd(RIGHT))) == 1
    assert kh_tb_bound(kh(mirror(parse_pd(RIGHT)))) == -6
    with pytest.raises(ValueError):
        kh_tb_bound(KhTable({}))


def test_tb_interval(registry):
    assert tb_interval(parse_pd(RIGHT)) == (1, 1)
    assert tb_interval(registry["t34_aa"].diagram, "A") == (4, 5)
    assert tb_interval(registry["l11n388"].diagram, "B") == (-3, -2)
    with pytest.raises(ValueError):
        tb_interval(registry["t34_aa"].diagram, "B")
    with pytest.raises(ValueError):
        tb_interval(parse_pd(RIGHT), "C")


def test_front_word_basics():
    # one left cusp and one right cusp: the Legendrian unknot with tb = -1
    events = [("L", 0), ("R", 0)]
    D, ids = front_diagram(events)
    assert D.c == 0 and D.loops == 1 and ids == ()
    F = LegendrianFront(tuple(events), D, ids)
    assert F.cusps == 2 and tb_of_front(F) == -1
    with pytest.raises(ValueError):
        front_diagram([("L", 0)])


def test_front_crossing_orientation():
    # left cusp, crossing, right cusp: figure-eight shaped unknot with one crossing
    D, ids = front_diagram([("L", 0), ("X", 0, 7), ("R", 0)])
    assert D.c == 1 and ids == (7,)
    assert jones(D) == jones(parse_pd("O"))


def test_mondrian_of_trefoil_graph():
    D = parse_pd(RIGHT)
    G = checkerboard(D)
    M = mondrian_from_graph(G)
    assert validate_mondrian(M, G) == []
    assert len(M.horizontals) == G.n_unshaded
    assert sorted(M.contraction) == [0, 1, 2]
    rot = contraction_rotations(M)
    assert [sorted(r) for r in rot] == [sorted(r) for r in graph_rotations(G)]


def test_validate_catches_bad_layouts():
    D = parse_pd(RIGHT)
    G = checkerboard(D)
    M = mondrian_from_graph(G)
    overlap = replace(M, horizontals=tuple((0.0, h[1], h[2]) for h in M.horizontals))
    assert any("overlap" in p or "points down" in p for p in validate_mondrian(overlap))
    short = replace(M, horizontals=tuple((h[0], h[1], h[1]) for h in M.horizontals))
    assert any("misses" in p for p in validate_mondrian(short))
    v = list(M.verticals)
    x, lo, hi, e = v[0]
    v[0] = (x, lo, hi, (e + 1) % 3)
    assert validate_mondrian(replace(M, verticals=tuple(v)), G)


def test_mondrian_marked_edge_placement(registry):
    D = registry["t34_aa"].diagram
    G = checkerboard(replace(D, dealternator=2))
    M = mondrian_from_graph(G, 2)
    assert validate_mondrian(M, G) == []
    x, lo, hi, _ = next(t for t in M.verticals if t[3] == 2)
    assert M.horizontals[lo][0] == 0.0 and M.horizontals[hi][0] == 0.5
    assert M.horizontals[lo][1] == x - 1 and M.horizontals[hi][2] == x + 1


def test_mondrian_rejects_bad_input():
    G = checkerboard(parse_pd("X(1,2,2,1)"))
    with pytest.raises(ValueError):
        mondrian_from_graph(G)
    # the Hopf graph has a doubled edge, so a marked edge would not be unique
    H = checkerboard(parse_pd("X(4,1,3,2) X(2,3,1,4)"))
    assert H.unshaded_edges == ((0, 1), (1, 0))
    with pytest.raises(ValueError):
        mondrian_from_graph(H, 0)
    with pytest.raises(ValueError):
        mondrian_from_graph(checkerboard(parse_pd(RIGHT)), 9)


def test_single_vertex_graph():
    G = checkerboard(parse_pd("O"))
    M = mondrian_from_graph(G)
    assert M.horizontals == ((0, 0, 1),) and M.verticals == ()


def test_legendrian_front_of_trefoil():
    D = parse_pd(RIGHT)
    F, M, oriented = legendrian_front(D)
    assert tb_of_front(F) == D.writhe - 2 == 1
    assert oriented.signs == (1, 1, 1)
    assert match_diagram(F, D) is not None
    assert F.to_dict()["tb"] == 1


def test_legendrian_front_almost_alternating(registry):
    D = registry["t34_aa"].diagram
    F, M, oriented = legendrian_front(D)
    assert tb_of_front(F) == 4 and F.cusps == 6
    assert sorted(F.crossing_ids) == list(range(D.c))
    assert sorted(oriented.signs) == sorted(D.signs)


def test_legendrian_front_refuses(registry):
    with pytest.raises(ValueError):
        legendrian_front(registry["13n588"].diagram)
    with pytest.raises(ValueError):
        legendrian_front(registry["l11n388"].diagram)
    with pytest.raises(PDError):
        legendrian_front(parse_pd("X(1,1,2,2) O"))


def test_match_diagram_rejects_other_diagram(registry):
    F, _, _ = legendrian_front(parse_pd(RIGHT))
    assert match_diagram(F, mirror(parse_pd(RIGHT))) is None
    assert match_diagram(F, registry["k4_1"].diagram) is None


def test_front_svg_is_plain_svg():
    F, _, _ = legendrian_front(parse_pd(RIGHT))
    svg = front_svg(F)
    assert svg.startswith("<svg") and svg.rstrip().endswith("</svg>")
    assert svg.count("<path") >= len(F.events)
