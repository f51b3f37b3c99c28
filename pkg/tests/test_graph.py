from __future__ import annotations

import itertools
from math import comb

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import ray_inside, read
from kastpoly.fleet import RING, fleet, random_subregion
from kastpoly.graph import (
    Cycle,
    GraphInputError,
    aztec_diamond,
    balanced_subgraphs,
    format_graph,
    from_ascii,
    fundamental_cycles,
    interior_vertex_count,
    parse_graph,
    rectangle_grid,
    validate,
)

FLEET = fleet()


def as_nx(g):
    h = nx.Graph()
    for v in g.vertices:
        h.add_node(v.id, color=v.color)
    h.add_edges_from(g.edges)
    return h


# -- parsing ---------------------------------------------------------------


def test_parse_square():
    g = parse_graph(read("square.graph"))
    assert (g.n, g.n_prime, len(g.edges), len(g.holes)) == (2, 2, 4, 1)
    assert g.holes[0].witness == (0.5, 0.5)


def test_parse_declared_hole_on_grid():
    text = "".join(l + "\n" for l in read("square.graph").splitlines() if not l.startswith("h"))
    assert parse_graph(text).holes == ()
    g = parse_graph(text + "h 1 2 4 3 wx=1/2 wy=1/2\n")
    assert len(g.holes) == 1 and g.holes[0].boundary == (1, 2, 4, 3)


def test_parse_labels():
    g = parse_graph(read("labelled_square.graph"))
    labs = {e: (r, q) for e, r, q in g.labels}
    # edge "e 1 2" is oriented black 2 -> white 1
    assert labs[(2, 1)] == (0.25, 0)
    assert labs[(3, 4)] == (0.5, 1)


@pytest.mark.parametrize(
    "name, code",
    [("bad_bipartite.graph", "bipartite"), ("bad_crossing.graph", "crossing")],
)
def test_file_errors(name, code):
    with pytest.raises(GraphInputError) as err:
        parse_graph(read(name))
    assert err.value.code == code


@pytest.mark.parametrize(
    "text, code, line",
    [
        ("v 1 0 0 w\nv 1 1 0 b\n", "duplicate", 2),
        ("v 1 0 0 w\nv 2 1 0 b\ne 1 2\ne 2 1\n", "duplicate", 4),
        ("v 1 0 0 w\ne 1 9\n", "dangling", 2),
        ("v 1 0 0 x\n", "syntax", 1),
        ("v 1 0 zero w\n", "syntax", 1),
        ("q 1 2\n", "syntax", 1),
        ("v 1 0 0 w\nv 2 1 0 b\ne 1 2 rot=1/4 foo=3\n", "syntax", 3),
    ],
)
def test_error_lines(text, code, line):
    with pytest.raises(GraphInputError) as err:
        parse_graph(text)
    assert err.value.code == code and err.value.line == line


def test_hole_errors():
    base = "v 1 0 0 w\nv 2 1 0 b\nv 3 0 1 b\nv 4 1 1 w\ne 1 2\ne 2 4\ne 4 3\ne 3 1\n"
    with pytest.raises(GraphInputError) as err:
        parse_graph(base + "h 1 2 4 3 wx=2 wy=2\n")
    assert err.value.code == "witness"
    with pytest.raises(GraphInputError) as err:
        parse_graph(base + "h 1 3 4 2 wx=1/2 wy=1/2\n")
    assert err.value.code == "hole"
    with pytest.raises(GraphInputError):
        parse_graph(base + "h 1 4 2 wx=1/2 wy=1/2\n")


def test_vertex_on_edge_rejected():
    with pytest.raises(GraphInputError) as err:
        parse_graph("v 1 0 0 w\nv 2 2 0 b\nv 3 1 0 b\ne 1 2\n")
    assert err.value.code == "crossing"


@pytest.mark.parametrize("name, g", FLEET[::3] + [("aztec-3", aztec_diamond(3))])
def test_round_trip(name, g):
    text = format_graph(g)
    h = parse_graph(text)
    assert h == g
    assert format_graph(h) == text


def test_round_trip_labels():
    g = parse_graph(read("labelled_square.graph"))
    assert parse_graph(format_graph(g)) == g


# -- builders --------------------------------------------------------------


def grid_counts(M, N):
    pts = [(k, l) for k in range(1, M + 1) for l in range(1, N + 1)]
    white = sum(1 for k, l in pts if (k + l) % 2 == 0)
    edges = sum(1 for k, l in pts for d in ((1, 0), (0, 1)) if (k + d[0], l + d[1]) in set(pts))
    return len(pts), white, edges, max(M - 1, 0) * max(N - 1, 0)


@pytest.mark.parametrize("M, N", [(1, 1), (2, 2), (3, 3), (4, 3), (2, 7)])
def test_rectangle_counts(M, N):
    g = rectangle_grid(M, N)
    assert (len(g.vertices), g.n, len(g.edges), len(g.holes)) == grid_counts(M, N)
    validate(g)


def test_rectangle_examples():
    g = rectangle_grid(3, 3)
    assert (len(g.vertices), g.n, g.n_prime, len(g.edges), len(g.holes)) == (9, 5, 4, 12, 4)
    g = rectangle_grid(1, 1)
    assert (g.n, len(g.edges), len(g.holes)) == (1, 0, 0)
    assert rectangle_grid(2, 3).pos(5) == (1, 3)


@pytest.mark.parametrize("order", [1, 2, 3, 4])
def test_aztec_counts(order):
    g = aztec_diamond(order)
    assert len(g.vertices) == 2 * order * (order + 1)
    assert g.n == g.n_prime
    validate(g)
    for v in g.vertices:
        assert v.x.denominator == 2 and abs(v.x) + abs(v.y) <= order


def test_aztec_order_two():
    g = aztec_diamond(2)
    assert (len(g.vertices), g.n, g.n_prime) == (12, 6, 6)


def test_ascii_square_matches_grid():
    a, b = as_nx(from_ascii("##\n##")), as_nx(rectangle_grid(2, 2))
    assert nx.is_isomorphic(a, b, node_match=lambda x, y: x["color"] == y["color"])


@pytest.mark.parametrize("M, N", [(3, 2), (4, 3)])
def test_ascii_block_matches_grid(M, N):
    text = "\n".join("#" * M for _ in range(N))
    assert nx.is_isomorphic(as_nx(from_ascii(text)), as_nx(rectangle_grid(M, N)), node_match=lambda x, y: x["color"] == y["color"])


def test_ascii_ring_and_disconnected():
    g = from_ascii(RING)
    assert (len(g.vertices), len(g.edges), len(g.holes)) == (8, 8, 0)
    g = from_ascii("#.#")
    assert (len(g.vertices), len(g.edges), g.n_components()) == (2, 0, 2)
    with pytest.raises(GraphInputError):
        from_ascii("#x")
    with pytest.raises(GraphInputError):
        from_ascii("...")


@given(st.integers(0, 50))
def test_random_subregion_valid(seed):
    g = from_ascii(random_subregion(seed))
    validate(g)
    assert 6 <= len(g.vertices) <= 12


# -- cycles ----------------------------------------------------------------


@pytest.mark.parametrize("name, g", FLEET)
def test_cycle_rank(name, g):
    cyc = fundamental_cycles(g)
    assert len(cyc) == len(g.edges) - len(g.vertices) + nx.number_connected_components(as_nx(g))
    for c in cyc:
        for u, v in c.directed_edges():
            assert frozenset((u, v)) in {frozenset(e) for e in g.edges}


def test_cycle_examples():
    assert len(fundamental_cycles(rectangle_grid(2, 2))) == 1
    assert len(fundamental_cycles(rectangle_grid(3, 3))) == 4
    assert fundamental_cycles(rectangle_grid(1, 5)) == []


def test_interior_examples():
    assert interior_vertex_count(rectangle_grid(3, 3), Cycle((1, 2, 3, 6, 9, 8, 7, 4))) == 1
    assert interior_vertex_count(rectangle_grid(2, 2), Cycle((1, 2, 4, 3))) == 0
    assert interior_vertex_count(rectangle_grid(4, 3), Cycle((1, 2, 3, 4, 8, 12, 11, 10, 9, 5))) == 2
    with pytest.raises(ValueError):
        interior_vertex_count(rectangle_grid(2, 2), Cycle((1, 2, 1, 2)))


@pytest.mark.parametrize("name, g", FLEET + [("hexwheel", parse_graph(read("hexwheel.graph")))])
def test_interior_matches_ray_casting(name, g):
    h = as_nx(g)
    for cyc in nx.simple_cycles(h, length_bound=12):
        poly = [g.pos(v) for v in cyc]
        expected = sum(1 for v in g.vertices if v.id not in cyc and ray_inside(v.pos, poly))
        assert interior_vertex_count(g, Cycle(tuple(cyc))) == expected


# -- balanced subgraphs ----------------------------------------------------


def test_balanced_examples():
    assert len(list(balanced_subgraphs(rectangle_grid(2, 2), 2))) == 1
    assert len(list(balanced_subgraphs(rectangle_grid(2, 2), 1))) == 4
    assert len(list(balanced_subgraphs(rectangle_grid(3, 3), 2))) == 60
    with pytest.raises(ValueError):
        list(balanced_subgraphs(rectangle_grid(2, 2), 3))


@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_balanced_count_and_order(M, N, data):
    g = rectangle_grid(M, N)
    m = data.draw(st.integers(0, min(g.n, g.n_prime)))
    subs = list(balanced_subgraphs(g, m))
    assert len(subs) == comb(g.n, m) * comb(g.n_prime, m)
    keys = [(s.whites, s.blacks) for s in subs]
    assert keys == sorted(keys)
    for s in subs:
        assert set(s.edges) == {(b, w) for b, w in g.edges if b in s.blacks and w in s.whites}


def test_subgraph_graph_has_no_holes():
    g = rectangle_grid(3, 3)
    s = next(itertools.islice(balanced_subgraphs(g, 4), 3, None))
    assert s.graph.holes == () and set(s.graph.edges) == set(s.edges)
