import json
from fractions import Fraction as F

import pytest
from helpers import family_rules, golden_mean_rules

from orbitforge.orbits import b_states, c_sequence, family_pair, lucas_list
from orbitforge.plmap import PLMap, make_family_map, periodic_point_counts
from orbitforge.symbolic import (
    LocatedCounts,
    NotMarkovError,
    SymbolicError,
    base_representation,
    count_crossings,
    count_sequence,
    crossing_counts,
    crossing_mask,
    derive_rules,
    expand,
    format_rep,
    initial_counts,
    located_expansion,
    located_pairs,
    parse_rep,
    representation,
    restrict,
    step_counts,
)


def r(text):
    return parse_rep(text)


def as_b(counts, n):
    """LocatedCounts -> 1-based b[i][j] using the family pair indexing."""
    b = [[0] * (2 * n + 1) for _ in range(2 * n + 1)]
    for i in range(1, 2 * n + 1):
        for j in range(1, 2 * n + 1):
            lo, hi = family_pair(n, j)
            b[i][j] = counts[(i - 1, (F(lo), F(hi)))]
    return b


def test_base_representation(thm1, fam):
    assert format_rep(base_representation(thm1)) == "3,1,2"
    assert format_rep(base_representation(fam[2])) == "3,5,4,2,1"
    with pytest.raises(NotMarkovError):
        base_representation(PLMap(((1, 2), (2, F(3, 2)), (3, 1))))


def test_constant_pieces_merged():
    g = PLMap(((0, 2), (1, 2), (2, 0)))
    assert format_rep(base_representation(g)) == "2,0"


def test_restrict(fam):
    assert format_rep(restrict(r("3,1,2"), (1, 2, 3), 1, 2)) == "3,1"
    assert format_rep(restrict(r("3,1,2"), (1, 2, 3), 1, 3)) == "3,1,2"
    assert format_rep(restrict(fam[2].ys, fam[2].xs, 3, 5)) == "4,2,1"
    with pytest.raises(SymbolicError):
        restrict(r("3,1,2"), (1, 2, 3), 2, 1)
    with pytest.raises(SymbolicError):
        restrict(r("3,1,2"), (1, 2, 3), 1, F(5, 2))


def test_rules_golden_mean_map(thm1):
    assert derive_rules(thm1) == golden_mean_rules()


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_rules_family_map(n):
    assert derive_rules(make_family_map(n)) == family_rules(n)


def test_specific_family_rules(fam):
    assert format_rep(derive_rules(fam[2])[(2, 4)]) == "5,4,2"
    assert format_rep(derive_rules(fam[3])[(4, 7)]) == "5,3,2,1"


def test_rules_are_mutual_reversals(fam):
    rules = derive_rules(fam[4])
    for (a, b), img in rules.items():
        assert rules[(b, a)] == img[::-1]


def test_expand(thm1):
    rules = derive_rules(thm1)
    assert format_rep(expand(r("3,1,2"), rules)) == "2,1,3,1"
    third = expand(expand(r("3,1,2"), rules), rules)
    assert format_rep(third) == "1,3,1,2,1,3"
    with pytest.raises(SymbolicError):
        expand(r("3,2"), rules)


@pytest.mark.parametrize("k", range(1, 9))
def test_representation_matches_graph(thm1, fam, k):
    for g in (thm1, fam[3]):
        nodes = located_expansion(g, k)
        assert representation(g, k) == tuple(
            lab for i, (_, lab) in enumerate(nodes) if i == 0 or lab != nodes[i - 1][1])


def test_no_equal_neighbours(fam):
    for k in range(1, 10):
        rep = representation(fam[2], k)
        assert all(a != b for a, b in zip(rep, rep[1:]))


def test_initial_counts(thm1, fam):
    b1 = initial_counts(fam[2])
    assert b1.counts == {
        (0, (3, 5)): 1, (1, (4, 5)): 1, (2, (2, 4)): 1, (3, (1, 2)): 1,
    }
    t = initial_counts(thm1)
    # u counts pair 1-3, v counts pair 1-2
    assert t[(0, (1, 3))] == 1 and t[(1, (1, 2))] == 1
    assert t[(1, (1, 3))] == 0 and t[(0, (1, 2))] == 0
    assert b1.total() == len(base_representation(fam[2])) - 1


def test_step_counts_by_hand(fam):
    b2 = step_counts(initial_counts(fam[2]), derive_rules(fam[2]))
    expected = {(0, (1, 2)): 1, (1, (1, 2)): 1, (0, (2, 4)): 1, (2, (2, 4)): 1,
                (3, (3, 5)): 1, (2, (4, 5)): 1}
    assert b2.counts == expected


def test_two_interval_recurrence(thm1):
    seq = count_sequence(thm1, 20)
    for prev, cur in zip(seq, seq[1:]):
        for i in (0, 1):
            u, v = prev[(i, (1, 3))], prev[(i, (1, 2))]
            assert cur[(i, (1, 3))] == u + v
            assert cur[(i, (1, 2))] == u
    for k, state in enumerate(seq, 1):
        w = state[(0, (1, 3))] + state[(0, (1, 2))] + state[(1, (1, 3))]
        assert w == lucas_list(20)[k - 1]


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_counts_equal_branch_recursion(n):
    seq = count_sequence(make_family_map(n), 40)
    direct = b_states(n, 40)
    for state, b in zip(seq, direct):
        assert as_b(state, n) == b


@pytest.mark.parametrize("k", range(1, 13))
def test_counts_equal_explicit_string(thm1, fam, k):
    for g in (thm1, fam[2], fam[3]):
        assert located_pairs(g, k).counts == count_sequence(g, k)[-1].counts


def test_total_tracks_string_length(fam):
    for k, state in enumerate(count_sequence(fam[3], 10), 1):
        assert state.total() == len(representation(fam[3], k)) - 1


def test_crossing_mask_cells(thm1):
    for n in (2, 3, 4):
        mask = crossing_mask(make_family_map(n))
        expected = {(i, i) for i in range(1, 2 * n + 1)} | {(n + 1, n)} \
            | {(i, n + 1) for i in range(n + 2, 2 * n + 1)}
        got = set()
        for i, (lo, hi) in mask.cells:
            j = next(j for j in range(1, 2 * n + 1) if family_pair(n, j) == (lo, hi))
            got.add((i + 1, j))
        assert got == expected
    assert crossing_mask(thm1).cells == {(0, (1, 2)), (0, (1, 3)), (1, (1, 3))}


def test_whole_span_pair_selects_every_interval():
    g = PLMap(((0, 0), (1, 2), (2, 0)))
    mask = crossing_mask(g)
    assert {i for i, p in mask.cells if p == (0, 2)} == {0, 1}


def test_count_crossings(thm1, fam):
    seq = count_sequence(fam[2], 2)
    mask = crossing_mask(fam[2])
    assert count_crossings(seq[0], mask) == 1
    assert count_crossings(seq[1], mask) == 3
    assert crossing_counts(thm1, 18) == lucas_list(18)
    with pytest.raises(SymbolicError):
        count_crossings(LocatedCounts(1, {(9, (F(1), F(2))): 1}), mask)


@pytest.mark.parametrize("n", [2, 3])
def test_crossings_match_oracle(n):
    g = make_family_map(n)
    assert crossing_counts(g, 12) == periodic_point_counts(g, 12) == c_sequence(n, 12)


def test_user_markov_map_against_oracle():
    # full tent on four nodes; every value is a node
    g = PLMap(((0, 0), (1, 2), (2, 3), (3, 0)))
    assert crossing_counts(g, 8) == periodic_point_counts(g, 8)


def test_located_counts_json(fam):
    state = count_sequence(fam[2], 3)[-1]
    text = state.to_json()
    data = json.loads(text)
    assert data["step"] == 3
    assert all(len(row) == 4 for row in data["counts"])
    assert LocatedCounts.from_json(text) == state
