from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from orbitforge.orbits import c_sequence, lucas_list
from orbitforge.plmap import (
    DegenerateIterateError,
    PieceCapExceeded,
    PLMap,
    PLMapError,
    compose,
    count_minimal_period_orbits_oracle,
    count_periodic_points,
    evaluate,
    iterate,
    make_family_map,
    minimal_period,
    periodic_point_counts,
    solve_fixed_points,
)


def naive_power(g, x, k):
    for _ in range(k):
        x = evaluate(g, x)
    return x


def test_theorem1_map_nodes(thm1):
    assert thm1.nodes == ((1, 3), (2, 1), (3, 2))
    assert thm1(2) == 1
    assert thm1(F(3, 2)) == 2


@pytest.mark.parametrize("n", [2, 3, 4, 7])
def test_family_map_breakpoints(n):
    g = make_family_map(n)
    assert g.domain == (1, 2 * n + 1)
    assert g(1) == n + 1
    assert g(2) == 2 * n + 1
    assert g(n + 1) == n + 2
    assert g(n + 2) == n
    assert g(2 * n + 1) == 1
    # linear away from 2, n+1, n+2
    for x in range(3, n + 1):
        assert g(x) == g(2) + (g(n + 1) - g(2)) * F(x - 2, n - 1)
    for x in range(n + 3, 2 * n + 1):
        assert g(x) == g(n + 2) + (g(2 * n + 1) - g(n + 2)) * F(x - n - 2, n - 1)


def test_family_map_values():
    assert make_family_map(2).ys == (3, 5, 4, 2, 1)
    assert make_family_map(3)(4) == 5
    assert make_family_map(2)(5) == 1
    with pytest.raises(PLMapError):
        make_family_map(1)


def test_evaluate(thm1, fam):
    assert evaluate(thm1, F(5, 3)) == F(5, 3)
    assert evaluate(fam[2], F(7, 2)) == 3
    for x, y in fam[3].nodes:
        assert evaluate(fam[3], x) == y
    with pytest.raises(PLMapError):
        evaluate(thm1, F(7, 2))


@pytest.mark.parametrize("nodes", [
    [(0, 0)],
    [(0, 0), (0, 1)],
    [(1, 0), (0, 1)],
    [(0, 0), (1, 2)],
])
def test_rejects_bad_nodes(nodes):
    with pytest.raises(PLMapError):
        PLMap(tuple(nodes))


def test_json_round_trip(fam):
    g = PLMap(((0, F(1, 3)), (F(1, 2), 1), (1, 0)))
    assert PLMap.from_json(g.to_json()) == g
    assert PLMap.from_json(fam[2].to_json()) == fam[2]
    with pytest.raises(PLMapError):
        PLMap.from_json('{"nodes": [[1, 0, 1, 1], [2, 1, 1, 1]]}')


def test_iterate_identity_and_square(thm1, fam):
    assert iterate(thm1, 1) == thm1
    assert iterate(thm1, 2).nodes == ((1, 2), (F(3, 2), 1), (2, 3), (3, 1))
    assert len(solve_fixed_points(iterate(fam[2], 2))) == 3


@settings(max_examples=60, deadline=None)
@given(k=st.integers(1, 7), num=st.integers(0, 1000), n=st.integers(2, 4))
def test_iterate_matches_repeated_evaluation(k, num, n):
    g = make_family_map(n)
    x = 1 + F(num * 2 * n, 1000)
    assert evaluate(iterate(g, k), x) == naive_power(g, x, k)


@settings(max_examples=40, deadline=None)
@given(
    ys=st.lists(st.fractions(min_value=0, max_value=1, max_denominator=7), min_size=2, max_size=5),
    k=st.integers(1, 4),
    num=st.integers(0, 97),
)
def test_iterate_arbitrary_maps(ys, k, num):
    xs = [F(i, len(ys) - 1) for i in range(len(ys))]
    g = PLMap(tuple(zip(xs, ys)))
    x = F(num, 97)
    assert evaluate(iterate(g, k), x) == naive_power(g, x, k)


def test_collinear_nodes_merged(fam):
    # f_3 has integer nodes but only three true breakpoints
    assert iterate(fam[3], 1).pieces == 6
    sq = iterate(fam[3], 2)
    for (x0, y0), (x1, y1), (x2, y2) in zip(sq.nodes, sq.nodes[1:], sq.nodes[2:]):
        assert (y1 - y0) * (x2 - x1) != (y2 - y1) * (x1 - x0)


def test_solve_fixed_points(thm1, fam):
    assert solve_fixed_points(thm1).points == (F(5, 3),)
    for n, g in fam.items():
        assert solve_fixed_points(g).points == (F(3 * n + 4, 3),)
    ident = solve_fixed_points(PLMap(((0, 0), (1, 1))))
    assert ident.degenerate


def test_fixed_points_on_nodes_counted_once(thm1):
    cube = solve_fixed_points(iterate(thm1, 3))
    assert cube.points == (1, F(5, 3), 2, 3)


@pytest.mark.parametrize("k", range(1, 9))
def test_solutions_are_exact_and_complete(fam, k):
    g = iterate(fam[2], k)
    sols = solve_fixed_points(g)
    for x in sols.points:
        assert evaluate(g, x) == x
    for x, y in g.nodes:
        if x not in sols.points:
            assert y != x


def test_count_periodic_points(thm1, fam):
    assert count_periodic_points(thm1, 3) == 4
    assert count_periodic_points(fam[2], 1) == 1
    assert count_periodic_points(fam[2], 4) == 7


def test_degenerate_iterate_reported():
    ident = PLMap(((0, 0), (1, 1)))
    with pytest.raises(DegenerateIterateError):
        count_periodic_points(ident, 2)


def test_counts_follow_lucas(thm1):
    assert periodic_point_counts(thm1, 14) == lucas_list(14)


@pytest.mark.parametrize("n", [2, 3])
def test_counts_follow_branch_recursion(fam, n):
    assert periodic_point_counts(fam[n], 12) == c_sequence(n, 12)


@pytest.mark.parametrize("a,b", [(2, 3), (3, 2), (2, 4), (3, 3)])
def test_iterate_of_iterate(thm1, a, b):
    left = solve_fixed_points(iterate(iterate(thm1, a), b)).points
    right = solve_fixed_points(iterate(thm1, a * b)).points
    assert left == right


def test_oracle_orbits(thm1, fam):
    assert count_minimal_period_orbits_oracle(thm1, 3) == 1
    assert count_minimal_period_orbits_oracle(fam[2], 3) == 0
    assert count_minimal_period_orbits_oracle(thm1, 5) == 2
    assert minimal_period(thm1, 1, 5) == 3


def test_piece_cap(thm1, monkeypatch):
    with pytest.raises(PieceCapExceeded):
        iterate(thm1, 10, cap=20)
    monkeypatch.setenv("ORBITFORGE_PIECE_CAP", "20")
    with pytest.raises(PieceCapExceeded):
        count_periodic_points(thm1, 10)
    monkeypatch.setenv("ORBITFORGE_PIECE_CAP", "lots")
    with pytest.raises(PLMapError):
        iterate(thm1, 2)


def test_compose_needs_common_interval(thm1, fam):
    with pytest.raises(PLMapError):
        compose(thm1, fam[2])
