"""Exact continuous piecewise-linear self-maps of a compact interval.

Every coordinate is a :class:`fractions.Fraction`; nothing in this module
touches floating point.  The functions here are the brute-force ground truth
that the symbolic and recursive counting paths are checked against.
"""

from __future__ import annotations

import json
import os
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

DEFAULT_PIECE_CAP = 10**7
PIECE_CAP_ENV = "ORBITFORGE_PIECE_CAP"


class PLMapError(ValueError):
    """Malformed node list or an argument outside the map's domain."""


class PieceCapExceeded(RuntimeError):
    """An iterate would have more linear pieces than the configured cap."""


class DegenerateIterateError(ArithmeticError):
    """A linear piece lies on the diagonal, so the fixed-point set is infinite."""


def default_piece_cap() -> int:
    raw = os.environ.get(PIECE_CAP_ENV)
    if raw is None:
        return DEFAULT_PIECE_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise PLMapError(f"{PIECE_CAP_ENV} must be an integer, got {raw!r}") from None
    if cap < 1:
        raise PLMapError(f"{PIECE_CAP_ENV} must be positive, got {cap}")
    return cap


@dataclass(frozen=True)
class PLMap:
    """A continuous piecewise-linear map of ``[x_first, x_last]`` into itself.

    ``nodes`` is a sequence of ``(x, y)`` pairs with strictly increasing x; the
    map is linear between consecutive nodes.  Collinear neighbours are kept as
    given, since a Markov partition may need nodes where the slope does not
    change.
    """

    nodes: tuple[tuple[Fraction, Fraction], ...]
    xs: tuple[Fraction, ...] = field(init=False, repr=False, compare=False)
    ys: tuple[Fraction, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        nodes = tuple((Fraction(x), Fraction(y)) for x, y in self.nodes)
        if len(nodes) < 2:
            raise PLMapError("a map needs at least two nodes")
        xs = tuple(x for x, _ in nodes)
        ys = tuple(y for _, y in nodes)
        if any(a >= b for a, b in zip(xs, xs[1:])):
            raise PLMapError("node x-coordinates must be strictly increasing")
        lo, hi = xs[0], xs[-1]
        for x, y in nodes:
            if not lo <= y <= hi:
                raise PLMapError(f"value {y} at x={x} leaves the interval [{lo}, {hi}]")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ys", ys)

    @property
    def domain(self) -> tuple[Fraction, Fraction]:
        return self.xs[0], self.xs[-1]

    @property
    def pieces(self) -> int:
        return len(self.nodes) - 1

    def __call__(self, x) -> Fraction:
        return evaluate(self, x)

    def to_json(self) -> str:
        rows = [[x.numerator, x.denominator, y.numerator, y.denominator] for x, y in self.nodes]
        return json.dumps({"nodes": rows})

    @classmethod
    def from_json(cls, text: str) -> "PLMap":
        data = json.loads(text)
        try:
            rows = data["nodes"]
            nodes = [(Fraction(xn, xd), Fraction(yn, yd)) for xn, xd, yn, yd in rows]
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise PLMapError(f"bad node-list JSON: {exc}") from None
        return cls(tuple(nodes))


@dataclass(frozen=True)
class SolutionSet:
    points: tuple[Fraction, ...]
    degenerate: bool = False

    def __len__(self) -> int:
        return len(self.points)


def make_theorem1_map() -> PLMap:
    """``x -> -2x + 5`` on [1, 2] and ``x -> x - 1`` on [2, 3]."""
    return PLMap(((1, 3), (2, 1), (3, 2)))


def make_family_map(n: int) -> PLMap:
    """The map on [1, 2n+1] with a node at every integer.

    Values at ``x = 1, 2, ..., 2n+1`` are ``n+1, 2n+1, 2n, ..., n+2, n, n-1, ..., 1``;
    the true breakpoints are 2, n+1 and n+2.
    """
    if not isinstance(n, int) or n < 2:
        raise PLMapError(f"family map needs an integer n >= 2, got {n!r}")
    values = [n + 1] + list(range(2 * n + 1, n + 1, -1)) + list(range(n, 0, -1))
    return PLMap(tuple(zip(range(1, 2 * n + 2), values)))


def evaluate(g: PLMap, x) -> Fraction:
    x = Fraction(x)
    lo, hi = g.domain
    if not lo <= x <= hi:
        raise PLMapError(f"x={x} outside domain [{lo}, {hi}]")
    i = bisect_left(g.xs, x)
    if g.xs[i] == x:
        return g.ys[i]
    x0, x1 = g.xs[i - 1], g.xs[i]
    y0, y1 = g.ys[i - 1], g.ys[i]
    return y0 + (y1 - y0) * (x - x0) / (x1 - x0)


def simplify(g: PLMap) -> PLMap:
    """Drop interior nodes that are collinear with both neighbours."""
    return PLMap(tuple(_merge_collinear(list(g.nodes))))


def _merge_collinear(nodes: list[tuple[Fraction, Fraction]]) -> list[tuple[Fraction, Fraction]]:
    out = [nodes[0]]
    for node in nodes[1:]:
        while len(out) >= 2:
            (x0, y0), (x1, y1) = out[-2], out[-1]
            x2, y2 = node
            if (y1 - y0) * (x2 - x1) == (y2 - y1) * (x1 - x0):
                out.pop()
            else:
                break
        out.append(node)
    return out


def compose(outer: PLMap, inner: PLMap, cap: int | None = None) -> PLMap:
    """Exact graph of ``outer(inner(x))``, collinear nodes merged.

    Both maps must live on the same interval.
    """
    if outer.domain != inner.domain:
        raise PLMapError("composition needs maps on the same interval")
    cap = default_piece_cap() if cap is None else cap
    brk = simplify(outer).xs
    nodes = [(inner.xs[0], evaluate(outer, inner.ys[0]))]
    for (x0, y0), (x1, y1) in zip(inner.nodes, inner.nodes[1:]):
        if y0 != y1:
            if y0 < y1:
                cuts = brk[bisect_right(brk, y0):bisect_left(brk, y1)]
            else:
                cuts = reversed(brk[bisect_right(brk, y1):bisect_left(brk, y0)])
            scale = (x1 - x0) / (y1 - y0)
            for c in cuts:
                nodes.append((x0 + (c - y0) * scale, evaluate(outer, c)))
        nodes.append((x1, evaluate(outer, y1)))
        if len(nodes) > 2 * cap:
            nodes = _merge_collinear(nodes)
            if len(nodes) - 1 > cap:
                raise PieceCapExceeded(f"iterate exceeds the piece cap of {cap}")
    nodes = _merge_collinear(nodes)
    if len(nodes) - 1 > cap:
        raise PieceCapExceeded(f"iterate exceeds the piece cap of {cap}")
    return PLMap(tuple(nodes))


def iterates(g: PLMap, k_max: int, cap: int | None = None) -> Iterator[PLMap]:
    """Yield ``g, g∘g, ..., g^k_max`` (the first one unmodified)."""
    if k_max < 1:
        raise PLMapError(f"iterate count must be >= 1, got {k_max}")
    current = g
    yield current
    for _ in range(k_max - 1):
        current = compose(g, current, cap)
        yield current


def iterate(g: PLMap, k: int, cap: int | None = None) -> PLMap:
    if k < 1:
        raise PLMapError(f"iterate count must be >= 1, got {k}")
    for current in iterates(g, k, cap):
        pass
    return current


def solve_fixed_points(g: PLMap) -> SolutionSet:
    found: set[Fraction] = set()
    degenerate = False
    for (x0, y0), (x1, y1) in zip(g.nodes, g.nodes[1:]):
        d0, d1 = y0 - x0, y1 - x1
        if d0 == 0 and d1 == 0:
            degenerate = True
            continue
        if d0 == 0:
            found.add(x0)
        if d1 == 0:
            found.add(x1)
        if (d0 < 0 < d1) or (d1 < 0 < d0):
            found.add(x0 + d0 * (x1 - x0) / (d0 - d1))
    return SolutionSet(tuple(sorted(found)), degenerate)


def _fixed_points_strict(g: PLMap) -> tuple[Fraction, ...]:
    sols = solve_fixed_points(g)
    if sols.degenerate:
        raise DegenerateIterateError("an iterate has a piece on the diagonal")
    return sols.points


def count_periodic_points(g: PLMap, k: int, cap: int | None = None) -> int:
    """Number of solutions of ``g^k(x) = x``."""
    return len(_fixed_points_strict(iterate(g, k, cap)))


def periodic_point_counts(g: PLMap, k_max: int, cap: int | None = None) -> list[int]:
    """``[count_periodic_points(g, k) for k in 1..k_max]`` sharing the iterates."""
    return [len(_fixed_points_strict(h)) for h in iterates(g, k_max, cap)]


def minimal_period(g: PLMap, x, limit: int) -> int | None:
    """Least ``p <= limit`` with ``g^p(x) = x``, or None."""
    x = Fraction(x)
    y = x
    for p in range(1, limit + 1):
        y = evaluate(g, y)
        if y == x:
            return p
    return None


def count_minimal_period_orbits_oracle(g: PLMap, m: int, cap: int | None = None) -> int:
    """Orbits of minimal period exactly ``m``, found by following every
    solution of ``g^m(x) = x`` around its orbit."""
    if m < 1:
        raise PLMapError(f"period must be >= 1, got {m}")
    points = _fixed_points_strict(iterate(g, m, cap))
    exact = sum(1 for x in points if minimal_period(g, x, m) == m)
    if exact % m:
        raise ArithmeticError(f"{exact} points of minimal period {m} do not split into orbits")
    return exact // m


def nodes_from_pairs(pairs: Sequence[Sequence]) -> PLMap:
    """Build a map from ``[(x, y), ...]`` where entries may be ints, Fractions or 'p/q' strings."""
    return PLMap(tuple((Fraction(x), Fraction(y)) for x, y in pairs))
