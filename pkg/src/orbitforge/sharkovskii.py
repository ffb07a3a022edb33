"""Sharkovskii's ordering and the sharp orbit-count bounds it implies."""

from __future__ import annotations

from dataclasses import dataclass

from orbitforge.orbits import orbit_count

SHARP = "sharp"
INAPPLICABLE = "formula-inapplicable"


class HypothesisError(ValueError):
    """The bound query does not satisfy the theorem's hypotheses."""


@dataclass(frozen=True)
class PeriodDecomposition:
    k: int
    odd_part: int

    @property
    def n(self) -> int | None:
        return (self.odd_part - 1) // 2 if self.odd_part > 1 else None


def decompose(s: int) -> PeriodDecomposition:
    """Write ``s = 2^k * odd_part``."""
    if s < 1:
        raise ValueError(f"period must be positive, got {s}")
    k = (s & -s).bit_length() - 1
    return PeriodDecomposition(k, s >> k)


def order_key(m: int) -> tuple[int, int, int]:
    """Sort key realising 3, 5, 7, ..., 2*3, 2*5, ..., 4*3, ..., 8, 4, 2, 1."""
    d = decompose(m)
    if d.odd_part > 1:
        return (0, d.k, d.odd_part)
    return (1, -d.k, 0)


def precedes(a: int, b: int) -> bool:
    """True when ``a`` comes strictly before ``b``, i.e. period ``a`` forces period ``b``."""
    return order_key(a) < order_key(b)


def sharkovskii_sorted(values) -> list[int]:
    return sorted(values, key=order_key)


@dataclass(frozen=True)
class Bound:
    value: int
    status: str


def theorem3_bound(s: int, t: int) -> Bound:
    """Least number of period-``t`` orbits for a map whose earliest period is ``s``.

    With ``s = 2^k (2n+1)`` and ``2^k | t`` the bound is the orbit count of
    period ``t / 2^k`` for the extremal map of index ``n`` and is attained.
    When ``2^k`` does not divide ``t`` (only small powers of two) the formula
    says nothing and the ordering's own guarantee of one orbit is returned.
    """
    d = decompose(s)
    if d.n is None:
        raise HypothesisError(f"s={s} is a power of two")
    if not precedes(s, t):
        raise HypothesisError(f"period {s} does not force period {t}")
    scale = 1 << d.k
    if t % scale:
        return Bound(1, INAPPLICABLE)
    return Bound(orbit_count(d.n, t // scale), SHARP)
