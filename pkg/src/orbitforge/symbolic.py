"""Symbolic representations of Markov piecewise-linear maps.

A representation is the sequence of node values ``y_1 y_2 ... y_k`` of the
graph of an iterate, with equal neighbours merged.  For a Markov map (every
node value is itself a node x-coordinate) the representation of ``g^(k+1)`` is
obtained from that of ``g^k`` by replacing each adjacent pair ``ab`` with the
restriction of the base representation to ``[a:b]``, reversed when ``a > b``.

Labels are :class:`fractions.Fraction` values; representations are tuples.
Counting works on unordered pair types located over base intervals, which is
all that is needed to count crossings with the diagonal.
"""

from __future__ import annotations

import json
from bisect import bisect_left, bisect_right
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from orbitforge.plmap import PLMap, evaluate, iterate

Label = Fraction
Representation = tuple
PairType = tuple  # (lo, hi) with lo < hi
Rules = dict  # (a, b) -> Representation


class NotMarkovError(ValueError):
    """Some node value is not a node x-coordinate of the map."""


class SymbolicError(ValueError):
    pass


def merge_repeats(labels: Iterable) -> Representation:
    out: list = []
    for lab in labels:
        if not out or out[-1] != lab:
            out.append(lab)
    return tuple(out)


def format_rep(rep: Sequence) -> str:
    return ",".join(_label_str(lab) for lab in rep)


def parse_rep(text: str) -> Representation:
    return tuple(Fraction(tok.strip()) for tok in text.split(",") if tok.strip())


def _label_str(lab: Fraction) -> str:
    return str(lab.numerator) if lab.denominator == 1 else f"{lab.numerator}/{lab.denominator}"


def _label_json(lab: Fraction):
    return lab.numerator if lab.denominator == 1 else _label_str(lab)


def _check_markov(g: PLMap) -> None:
    xset = set(g.xs)
    stray = [y for y in g.ys if y not in xset]
    if stray:
        raise NotMarkovError(f"node values {sorted(set(stray))} are not node x-coordinates")


def base_representation(g: PLMap) -> Representation:
    _check_markov(g)
    return merge_repeats(g.ys)


def restrict(rep: Sequence, base_xs: Sequence, u, v) -> Representation:
    """Sub-representation over ``[u, v]``.

    ``rep`` must be aligned with ``base_xs`` (one label per x, before merging
    constant pieces); ``u`` and ``v`` must be members of ``base_xs``.
    """
    if len(rep) != len(base_xs):
        raise SymbolicError("representation is not aligned with the x-coordinates")
    u, v = Fraction(u), Fraction(v)
    if u >= v:
        raise SymbolicError(f"restriction needs u < v, got [{u}, {v}]")
    i = bisect_left(base_xs, u)
    j = bisect_left(base_xs, v)
    if i == len(base_xs) or base_xs[i] != u or j == len(base_xs) or base_xs[j] != v:
        raise SymbolicError(f"[{u}, {v}] does not end on base nodes")
    return merge_repeats(rep[i:j + 1])


def _rule(g: PLMap, a: Fraction, b: Fraction) -> Representation:
    if a < b:
        return restrict(g.ys, g.xs, a, b)
    return restrict(g.ys, g.xs, b, a)[::-1]


def derive_rules(g: PLMap) -> Rules:
    """Substitution rules for every ordered pair reachable from the base representation."""
    rep = base_representation(g)
    rules: Rules = {}
    todo = list(zip(rep, rep[1:]))
    while todo:
        pair = todo.pop()
        if pair in rules:
            continue
        image = _rule(g, *pair)
        rules[pair] = image
        todo.extend(p for p in zip(image, image[1:]) if p not in rules)
    return rules


def expand(rep: Sequence, rules: Rules) -> Representation:
    """One substitution step: the representation of the next iterate."""
    if len(rep) < 2:
        raise SymbolicError("a representation needs at least two labels")
    out = [None]
    for pair in zip(rep, rep[1:]):
        try:
            image = rules[pair]
        except KeyError:
            raise SymbolicError(f"no rule for pair {format_rep(pair)}") from None
        if out[-1] is None:
            out[-1:] = image
        else:
            out.extend(image[1:])
    return merge_repeats(out)


def representation(g: PLMap, k: int) -> Representation:
    """Representation of ``g^k`` by ``k - 1`` expansions of the base one."""
    if k < 1:
        raise SymbolicError(f"k must be >= 1, got {k}")
    rules = derive_rules(g)
    rep = base_representation(g)
    for _ in range(k - 1):
        rep = expand(rep, rules)
    return rep


def pair_type(a, b) -> PairType:
    return (a, b) if a < b else (b, a)


def pair_types(rules: Rules) -> list[PairType]:
    return sorted({pair_type(a, b) for a, b in rules})


def transition(rules: Rules) -> dict[PairType, Counter]:
    """For each pair type, the multiset of pair types its image contains."""
    out: dict[PairType, Counter] = {}
    for (a, b), image in rules.items():
        # both orientations share one multiset, the images being reversals
        out[pair_type(a, b)] = Counter(pair_type(u, v) for u, v in zip(image, image[1:]))
    return out


@dataclass(frozen=True)
class LocatedCounts:
    """Branch counts of the ``step``-th iterate, keyed by (base interval, pair type).

    Intervals are 0-based indices into the base partition; zero cells are
    omitted from ``counts``.
    """

    step: int
    counts: dict = field(default_factory=dict)

    def __getitem__(self, key) -> int:
        return self.counts.get(key, 0)

    def total(self) -> int:
        return sum(self.counts.values())

    def to_json(self) -> str:
        rows = [
            [i + 1, _label_json(lo), _label_json(hi), c]
            for (i, (lo, hi)), c in sorted(self.counts.items())
        ]
        return json.dumps({"step": self.step, "counts": rows})

    @classmethod
    def from_json(cls, text: str) -> "LocatedCounts":
        data = json.loads(text)
        counts = {
            (i - 1, (Fraction(lo), Fraction(hi))): c for i, lo, hi, c in data["counts"]
        }
        return cls(data["step"], counts)


def initial_counts(g: PLMap) -> LocatedCounts:
    _check_markov(g)
    counts: Counter = Counter()
    for i, (a, b) in enumerate(zip(g.ys, g.ys[1:])):
        if a != b:
            counts[(i, pair_type(a, b))] += 1
    return LocatedCounts(1, dict(counts))


def step_counts(counts: LocatedCounts, rules: Rules) -> LocatedCounts:
    trans = transition(rules)
    out: Counter = Counter()
    for (i, pt), c in counts.counts.items():
        for child, mult in trans[pt].items():
            out[(i, child)] += c * mult
    return LocatedCounts(counts.step + 1, {key: c for key, c in out.items() if c})


def count_sequence(g: PLMap, k_max: int) -> list[LocatedCounts]:
    rules = derive_rules(g)
    state = initial_counts(g)
    seq = [state]
    for _ in range(k_max - 1):
        state = step_counts(state, rules)
        seq.append(state)
    return seq


@dataclass(frozen=True)
class CrossingMask:
    """Cells (interval index, pair type) whose branches cross the diagonal once."""

    cells: frozenset
    intervals: int

    def __contains__(self, key) -> bool:
        return key in self.cells


def crossing_mask(g: PLMap) -> CrossingMask:
    """A branch of type ``(lo, hi)`` over base interval ``[p_i, p_i+1]`` is
    selected when its value span covers that interval."""
    rules = derive_rules(g)
    xs = g.xs
    cells = set()
    for lo, hi in pair_types(rules):
        first = bisect_left(xs, lo)
        last = bisect_right(xs, hi) - 1
        for i in range(first, last):
            cells.add((i, (lo, hi)))
    return CrossingMask(frozenset(cells), len(xs) - 1)


def count_crossings(counts: LocatedCounts, mask: CrossingMask) -> int:
    for i, _ in counts.counts:
        if not 0 <= i < mask.intervals:
            raise SymbolicError(f"interval index {i} outside a {mask.intervals}-interval partition")
    return sum(c for key, c in counts.counts.items() if key in mask)


def crossing_counts(g: PLMap, k_max: int) -> list[int]:
    """Symbolic count of solutions of ``g^k(x) = x`` for ``k = 1..k_max``."""
    mask = crossing_mask(g)
    return [count_crossings(state, mask) for state in count_sequence(g, k_max)]


def located_expansion(g: PLMap, k: int) -> list[tuple[Fraction, Fraction]]:
    """Nodes ``(x, g^k(x))`` of the ``k``-th representation with exact x-coordinates.

    Each pair of the current list is a linear branch sending its x-span onto
    ``[a:b]``, so the base nodes ``c`` strictly between ``a`` and ``b`` pull
    back linearly and contribute the label ``g(c)``.  Constant stretches are
    kept as repeated labels so that every x-span stays correct; apply
    :func:`merge_repeats` to the labels to get the representation.
    """
    _check_markov(g)
    if k < 1:
        raise SymbolicError(f"k must be >= 1, got {k}")
    xs = g.xs
    nodes = list(zip(g.xs, g.ys))
    for _ in range(k - 1):
        out = [(nodes[0][0], evaluate(g, nodes[0][1]))]
        for (x0, a), (x1, b) in zip(nodes, nodes[1:]):
            if a != b:
                if a < b:
                    cs = xs[bisect_right(xs, a):bisect_left(xs, b)]
                else:
                    cs = xs[bisect_right(xs, b):bisect_left(xs, a)][::-1]
                for c in cs:
                    out.append((x0 + (c - a) / (b - a) * (x1 - x0), evaluate(g, c)))
            out.append((x1, evaluate(g, b)))
        nodes = out
    return nodes


def located_pairs(g: PLMap, k: int) -> LocatedCounts:
    """Located pair counts read off the explicit ``k``-th representation.

    Each node is checked against the exact ``k``-th iterate, and each branch is
    placed in the base interval containing its x-span.
    """
    nodes = located_expansion(g, k)
    gk = iterate(g, k)
    xs = g.xs
    counts: Counter = Counter()
    for x, y in nodes:
        if evaluate(gk, x) != y:
            raise SymbolicError(f"representation node ({x}, {y}) is off the graph of g^{k}")
    for (x0, a), (x1, b) in zip(nodes, nodes[1:]):
        if a == b:
            continue
        i = bisect_right(xs, x0) - 1
        if x1 > xs[i + 1]:
            raise SymbolicError(f"branch over [{x0}, {x1}] straddles a base node")
        counts[(i, pair_type(a, b))] += 1
    return LocatedCounts(k, dict(counts))
