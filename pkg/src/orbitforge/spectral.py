"""Growth rates of the orbit counts.

The family map on ``[1, 2n+1]`` has orbit counts growing like ``lambda_n^m``,
where ``lambda_n`` is the positive root of ``x^(2n+1) - 2x^(2n-1) - 1``.  The
root is bracketed with exact rational endpoints; only the reported value is
converted to floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction

from orbitforge.orbits import (
    b_states,
    lucas_list,
    minimal_period_points,
    c_phi,
    orbit_count,
)

MAX_BISECTIONS = 200


def char_poly(n: int) -> list[int]:
    """Coefficients of ``x^(2n+1) - 2x^(2n-1) - 1``, lowest degree first."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    coeffs = [0] * (2 * n + 2)
    coeffs[0] = -1
    coeffs[2 * n - 1] = -2
    coeffs[2 * n + 1] = 1
    return coeffs


def recurrence_poly(n: int) -> list[int]:
    """Characteristic polynomial of ``b_k = b_(k-1) + sum_{i=2}^{2n} (-1)^i b_(k-i)``."""
    coeffs = [0] * (2 * n + 1)
    coeffs[2 * n] = 1
    coeffs[2 * n - 1] = -1
    for i in range(2, 2 * n + 1):
        coeffs[2 * n - i] = -((-1) ** i)
    return coeffs


def poly_mul(p: list[int], q: list[int]) -> list[int]:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def poly_eval(coeffs: list[int], x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


@dataclass(frozen=True)
class RootApprox:
    lo: Fraction
    hi: Fraction

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def radius(self) -> Fraction:
        return (self.hi - self.lo) / 2

    @property
    def value(self) -> float:
        return float(self.midpoint)

    def decimal(self, digits: int = 30) -> Decimal:
        with localcontext() as ctx:
            ctx.prec = digits
            return Decimal(self.midpoint.numerator) / Decimal(self.midpoint.denominator)


def dominant_root(n: int, tol: float = 1e-12) -> RootApprox:
    """Bisect for the positive root of ``char_poly(n)`` until the half-width is at most ``tol``.

    ``p(x) = x^(2n-1) (x^2 - 2) - 1`` is negative on ``(0, sqrt 2]`` and positive
    at 2, so ``[7/5, 2]`` always brackets it.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    p = char_poly(n)
    lo, hi = Fraction(7, 5), Fraction(2)
    target = Fraction(tol)
    for _ in range(MAX_BISECTIONS):
        if (hi - lo) / 2 <= target:
            break
        mid = (lo + hi) / 2
        if poly_eval(p, mid) < 0:
            lo = mid
        else:
            hi = mid
    return RootApprox(lo, hi)


def growth_gap(n: int, m: int, per_orbit: bool = False, tol: float = 1e-15) -> float:
    """``log(points)/m - log(lambda_n)`` at period ``m``.

    With ``per_orbit`` the orbit count (points divided by ``m``) is used
    instead, which carries an extra ``-log(m)/m`` bias.
    """
    points = minimal_period_points(m, c_phi(n))
    if points <= 0:
        raise ValueError(f"no points of minimal period {m} for n={n}; log undefined")
    value = orbit_count(n, m) if per_orbit else points
    return math.log(value) / m - math.log(dominant_root(n, tol).value)


def branch_growth_gap(n: int, k: int, tol: float = 1e-15) -> float:
    """``log(b_{k,1,n,n})/k - log(lambda_n)`` for the family branch counts."""
    b = b_states(n, k)[-1][1][n]
    return math.log(b) / k - math.log(dominant_root(n, tol).value)


GOLDEN = (1 + math.sqrt(5)) / 2


def thm1c_checks(m_max: int) -> dict:
    """Monotonicity and golden-ratio growth of the golden-mean map's orbit counts.

    Also evaluates each link of the three-step inequality chain
    ``(k+2)Phi(k+3) > (k+2)(a_{k+3} - a_h) > (k+3)(a_{k+2} + a_h) > (k+3)Phi(k+2)``
    with ``h = floor((k+3)/2) + 1``, reporting (not asserting) where a link fails.
    """
    if m_max < 8:
        raise ValueError("need m_max >= 8")
    orbits = [None] + [orbit_count(1, m) for m in range(1, m_max + 1)]
    not_increasing = [m for m in range(6, m_max) if not orbits[m + 1] > orbits[m]]
    ratios = {
        m: orbits[m + 1] / orbits[m] * (m + 1) / m for m in range(6, m_max)
    }
    last = m_max - 1
    a = [None] + lucas_list(m_max + 3)
    phi = [None] + [minimal_period_points(m, c_phi(1)) for m in range(1, m_max + 1)]
    chain_failures = []
    for k in range(6, m_max - 2):
        h = (k + 3) // 2 + 1
        links = (
            (k + 2) * phi[k + 3] > (k + 2) * (a[k + 3] - a[h]),
            (k + 2) * (a[k + 3] - a[h]) > (k + 3) * (a[k + 2] + a[h]),
            (k + 3) * (a[k + 2] + a[h]) > (k + 3) * phi[k + 2],
        )
        for idx, ok in enumerate(links, 1):
            if not ok:
                chain_failures.append({"k": k, "link": idx})
    return {
        "m_max": m_max,
        "strictly_increasing": not not_increasing,
        "not_increasing_at": not_increasing,
        "ratio_at": last,
        "corrected_ratio": ratios[last],
        "golden_ratio": GOLDEN,
        "ratio_error": abs(ratios[last] - GOLDEN),
        "chain_failures": chain_failures,
    }
