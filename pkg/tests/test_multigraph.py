"""Censuses and brute-force oracles for the half-edge multigraph layer."""

from __future__ import annotations

import math
from itertools import combinations

import pytest

from nbspectra.multigraph import (BRUTE_R_CAP, CapExceededError, GraphError,
                                  GraphFormatError, MultiGraph, RegularityError,
                                  build_from_edge_list, brute_walk_counts,
                                  census_to_csv, complete_graph,
                                  count_circuits_brute, count_closed_nbw_brute,
                                  cycle_graph, enumerate_circles,
                                  format_graph_text, girth, parse_graph_text,
                                  petersen_graph, regular_degree, walk_census)
from nbspectra.random_models import RngStream, sample_regular_graph


def circles_by_edge_subsets(g: MultiGraph, r_max: int) -> list[int]:
    """Independent circle oracle: enumerate all edge subsets and test the
    connected-degree-2 definition directly (tiny graphs only)."""
    edges = g.edge_list()
    z = [0] * (r_max + 1)
    for size in range(1, r_max + 1):
        for combo in combinations(range(len(edges)), size):
            deg: dict[int, int] = {}
            parent: dict[int, int] = {}

            def find(x):
                while parent.get(x, x) != x:
                    parent[x] = parent.get(parent[x], parent[x])
                    x = parent[x]
                return x

            for idx in combo:
                u, v = edges[idx]
                deg[u] = deg.get(u, 0) + (2 if u == v else 1)
                if u != v:
                    deg[v] = deg.get(v, 0) + 1
                parent.setdefault(u, u)
                parent.setdefault(v, v)
                ru, rv = find(u), find(v)
                if ru != rv:
                    parent[ru] = rv
            if all(d == 2 for d in deg.values()):
                roots = {find(v) for v in deg}
                if len(roots) == 1:
                    z[size] += 1
    return z


# -- construction -----------------------------------------------------------

def test_build_cycle_graph():
    g = build_from_edge_list([(0, 1), (1, 2), (2, 3), (3, 0)], 4)
    assert g.n_darts == 8
    assert regular_degree(g) == 2
    assert g.canonical_edge_list() == [(0, 1), (0, 3), (1, 2), (2, 3)]


def test_build_single_loop():
    g = build_from_edge_list([(0, 0)], 1)
    assert g.n_darts == 2
    assert list(g.head) == [0, 0]
    assert list(g.origin) == [0, 0]
    assert g.degrees[0] == 2


def test_build_complete_graph():
    g = complete_graph(4)
    assert g.n_darts == 12
    assert all(len(g.out_darts(v)) == 3 for v in range(4))


def test_twin_involution_fixed_point_free():
    g = petersen_graph()
    for d in range(g.n_darts):
        assert g.twin(d) != d
        assert g.twin(g.twin(d)) == d
        assert g.head[g.twin(d)] == g.origin[d]


def test_out_dart_counts_sum_to_darts():
    g = build_from_edge_list([(0, 0), (0, 1), (1, 2), (1, 2)], 3)
    assert int(g.degrees.sum()) == g.n_darts


def test_build_rejects_bad_endpoint():
    with pytest.raises(GraphError, match="edge 1"):
        build_from_edge_list([(0, 1), (0, 5)], 3)


def test_edge_list_round_trip():
    edges = [(0, 1), (1, 1), (0, 1), (2, 0)]
    g = build_from_edge_list(edges, 3)
    expect = sorted((min(u, v), max(u, v)) for u, v in edges)
    assert g.canonical_edge_list() == expect


# -- file format -------------------------------------------------------------

def test_graph_text_round_trip():
    g = build_from_edge_list([(0, 1), (1, 1), (0, 1)], 2)
    again = parse_graph_text(format_graph_text(g))
    assert again.canonical_edge_list() == g.canonical_edge_list()


def test_parse_errors_carry_line_numbers():
    with pytest.raises(GraphFormatError, match="line 1"):
        parse_graph_text("not a header\n")
    with pytest.raises(GraphFormatError, match="line 3"):
        parse_graph_text("3 2\n0 1\n0 9\n")
    with pytest.raises(GraphFormatError, match="line 2"):
        parse_graph_text("2 1\n0 one\n")


# -- regularity and girth ----------------------------------------------------

def test_regular_degree_values():
    assert regular_degree(cycle_graph(4)) == 2
    assert regular_degree(complete_graph(4)) == 3
    path = build_from_edge_list([(0, 1), (1, 2)], 3)
    assert regular_degree(path) is None


@pytest.mark.parametrize("graph,expected", [
    (complete_graph(4), 3),
    (cycle_graph(4), 4),
    (petersen_graph(), 5),
    (build_from_edge_list([(0, 1), (1, 2)], 3), math.inf),
    (build_from_edge_list([(0, 0)], 1), 1),
    (build_from_edge_list([(0, 1), (0, 1)], 2), 2),
])
def test_girth(graph, expected):
    assert girth(graph) == expected


# -- brute oracles ------------------------------------------------------------

def test_closed_nbw_counts_named():
    assert count_closed_nbw_brute(cycle_graph(4), 4) == 8
    assert count_closed_nbw_brute(complete_graph(4), 0) == 4
    assert count_closed_nbw_brute(complete_graph(4), 3) == 24


def test_circuit_counts_named():
    assert count_circuits_brute(cycle_graph(4), 4) == 8
    assert count_circuits_brute(complete_graph(4), 3) == 24
    assert count_circuits_brute(petersen_graph(), 1) == 0
    assert count_circuits_brute(complete_graph(4), 0) == 0


def test_brute_cap_rejections():
    with pytest.raises(CapExceededError):
        count_closed_nbw_brute(complete_graph(4), BRUTE_R_CAP + 1)
    big = sample_regular_graph(66, 3, RngStream(5))
    with pytest.raises(CapExceededError):
        count_closed_nbw_brute(big, 3)


def test_layered_enumeration_matches_recursive_dfs():
    graphs = [
        complete_graph(4),
        cycle_graph(5),
        build_from_edge_list([(0, 0), (0, 1), (1, 2), (2, 0)], 3),
        build_from_edge_list([(0, 1), (0, 1), (1, 2), (2, 0)], 3),
    ]
    for g in graphs:
        f, c = brute_walk_counts(g, 6)
        for r in range(7):
            assert f[r] == count_closed_nbw_brute(g, r)
            assert c[r] == count_circuits_brute(g, r)


# -- circle enumeration --------------------------------------------------------

def test_circles_named_graphs():
    assert enumerate_circles(complete_graph(4), 4) == [0, 0, 0, 4, 3]
    assert enumerate_circles(cycle_graph(5), 5) == [0, 0, 0, 0, 0, 1]
    dbl = build_from_edge_list([(0, 1), (0, 1)], 2)
    assert enumerate_circles(dbl, 2)[2] == 1
    loop = build_from_edge_list([(0, 0)], 1)
    assert enumerate_circles(loop, 1)[1] == 1


def test_circles_match_edge_subset_oracle():
    graphs = [
        complete_graph(4),
        build_from_edge_list([(0, 0), (0, 1), (1, 2), (2, 0)], 3),
        build_from_edge_list([(0, 1), (0, 1), (1, 2), (2, 0), (2, 0)], 3),
        build_from_edge_list([(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)], 4),
        build_from_edge_list([(0, 0), (1, 1), (0, 1), (0, 1)], 2),
    ]
    for g in graphs:
        assert enumerate_circles(g, 6)[:7] == circles_by_edge_subsets(g, 6)


def test_circles_cap_rejection():
    with pytest.raises(CapExceededError):
        enumerate_circles(complete_graph(4), BRUTE_R_CAP + 1)


# -- census ---------------------------------------------------------------------

def test_census_matches_brute_on_named(named_graphs):
    for _, g in named_graphs:
        census = walk_census(g, 8)
        f, c = brute_walk_counts(g, 8)
        assert list(census.f) == f
        assert list(census.c) == c
        assert census.z == tuple(enumerate_circles(g, 8))


def test_census_base_cases(k4):
    census = walk_census(k4, 5)
    assert census.f[0] == 4
    assert census.c[0] == 0


def test_census_identities_on_sampled_graphs():
    for i in range(12):
        n = 10 + 2 * (i % 6)
        d = 3 if i % 2 == 0 else 4
        g = sample_regular_graph(n, d, RngStream(seed=200 + i))
        census = walk_census(g, 8)
        census.check_all()
        for r in range(1, 9):
            assert census.identity_nbw_circuit(r)
            assert census.identity_circle_bounds(r)


def test_census_girth_cross_check(named_graphs):
    for _, g in named_graphs:
        census = walk_census(g, 8)
        first = next((r for r in range(1, 9) if census.c[r] > 0), math.inf)
        assert girth(g) == first


def test_census_rejects_non_regular():
    path = build_from_edge_list([(0, 1), (1, 2)], 3)
    with pytest.raises(RegularityError, match="vertex"):
        walk_census(path, 4)


def test_census_multigraph_with_loops():
    # 2-regular multigraph: a loop and a double edge
    g = build_from_edge_list([(0, 0), (1, 2), (1, 2)], 3)
    census = walk_census(g, 6)
    f, c = brute_walk_counts(g, 6)
    assert list(census.f) == f
    assert list(census.c) == c
    assert census.z[1] == 1 and census.z[2] == 1


def test_census_csv_format(c4):
    census = walk_census(c4, 4)
    text = census_to_csv(census)
    lines = text.strip().splitlines()
    assert lines[0] == "r,f,c,z"
    assert lines[1] == "0,4,0,0"
    assert lines[-1] == "4,8,8,1"


def test_frzr_right_bound_tightness(k4):
    census = walk_census(k4, 6)
    q = census.q
    for r in range(1, 7):
        weight = sum(k * census.z[k] for k in range(1, r + 1))
        assert census.f[r] <= (q + 1) ** 2 * q ** (2 * r - 2) * weight
        assert 2 * r * census.z[r] <= census.c[r] <= census.f[r]
