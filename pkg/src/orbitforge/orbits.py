"""Periodic-point counts, inclusion-exclusion, and the orbit table.

``b_states(n, k_max)`` below gives the 2n x 2n located branch-count matrix of the
k-th iterate of the family map on ``[1, 2n+1]``; it is computed by the
index-level recursion alone and is kept independent of
:mod:`orbitforge.symbolic`, so the two can be compared.  Matrices are
1-based (row and column 0 unused) to keep the index arithmetic readable.
"""

from __future__ import annotations

import csv
import io
import json
import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Callable

FACTOR_LIMIT = 10**9


# -- sequences -------------------------------------------------------------

def lucas(k: int) -> int:
    """1, 3, 4, 7, 11, ...; the number of solutions of f^k(x) = x for the golden-mean map."""
    if k < 1:
        raise ValueError(f"lucas index must be >= 1, got {k}")
    a, b = 1, 3
    for _ in range(k - 1):
        a, b = b, a + b
    return a


def lucas_list(k_max: int) -> list[int]:
    out, a, b = [], 1, 3
    for _ in range(k_max):
        out.append(a)
        a, b = b, a + b
    return out


def family_pair(n: int, j: int) -> tuple[int, int]:
    """Endpoints of the j-th pair type (1 <= j <= 2n) of the family map."""
    if not 1 <= j <= 2 * n:
        raise ValueError(f"pair index {j} outside 1..{2 * n}")
    if j == n:
        return (n, n + 2)
    if j == n + 1:
        return (n + 1, 2 * n + 1)
    return (j, j + 1)


def _first_state(n: int) -> list[list[int]]:
    size = 2 * n
    b = [[0] * (size + 1) for _ in range(size + 1)]
    b[1][n + 1] = 1
    for m in range(2, n + 1):
        b[m][2 * n + 2 - m] = 1
    for m in range(n + 1, 2 * n + 1):
        b[m][2 * n + 1 - m] = 1
    return b


def _next_state(b: list[list[int]], n: int) -> list[list[int]]:
    size = 2 * n
    nxt = [[0] * (size + 1) for _ in range(size + 1)]
    for i in range(1, size + 1):
        row, out = b[i], nxt[i]
        for j in range(1, n):
            out[j] = row[2 * n + 1 - j] + row[n + 1]
        out[n] = row[n] + row[n + 1]
        out[n + 1] = row[1]
        for j in range(n + 2, size + 1):
            out[j] = row[2 * n + 2 - j]
    return nxt


_states: dict[int, list] = {}
_counts: dict[int, list[int]] = {}
_lock = threading.Lock()


def _grow(n: int, k_max: int) -> None:
    if n < 2:
        raise ValueError(f"the family needs n >= 2, got {n}")
    with _lock:
        states = _states.setdefault(n, [_first_state(n)])
        counts = _counts.setdefault(n, [_c_from_state(states[0], n)])
        while len(states) < k_max:
            states.append(_next_state(states[-1], n))
            counts.append(_c_from_state(states[-1], n))


def b_states(n: int, k_max: int) -> list[list[list[int]]]:
    """``[b_1, ..., b_k_max]``; ``b_k[i][j]`` counts type-j branches over ``[i, i+1]``."""
    _grow(n, k_max)
    return [[row[:] for row in state] for state in _states[n][:k_max]]


def _c_from_state(b: list[list[int]], n: int) -> int:
    size = 2 * n
    return (sum(b[i][i] for i in range(1, size + 1))
            + b[n + 1][n]
            + sum(b[i][n + 1] for i in range(n + 2, size + 1)))


def c_sequence(n: int, k_max: int) -> list[int]:
    """``[c_1, ..., c_k_max]``: solutions of f_n^k(x) = x from the branch recursion."""
    if k_max < 1:
        return []
    _grow(n, k_max)
    return _counts[n][:k_max]


def periodic_counts(n: int, k_max: int) -> list[int]:
    """Point counts for selector ``n``: Lucas numbers for n = 1, c-sequence otherwise."""
    return lucas_list(k_max) if n == 1 else c_sequence(n, k_max)


# -- inclusion-exclusion ---------------------------------------------------

def prime_factors(m: int) -> list[int]:
    """Distinct primes dividing ``m`` by trial division."""
    if m < 1:
        raise ValueError(f"need a positive integer, got {m}")
    if m > FACTOR_LIMIT:
        raise ValueError(f"{m} exceeds the factorisation limit {FACTOR_LIMIT}")
    out, p = [], 2
    while p * p <= m:
        if m % p == 0:
            out.append(p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out.append(m)
    return out


def divisors(m: int) -> list[int]:
    small = [d for d in range(1, math.isqrt(m) + 1) if m % d == 0]
    return sorted(set(small + [m // d for d in small]))


def mobius(m: int) -> int:
    if m < 1:
        raise ValueError(f"need a positive integer, got {m}")
    primes = prime_factors(m)
    for p in primes:
        if m % (p * p) == 0:
            return 0
    return -1 if len(primes) % 2 else 1


class CountFunction:
    """``m -> number of solutions of f^m(x) = x`` for a named family, memoised."""

    def __init__(self, name: str, evaluator: Callable[[int], int]):
        self.name = name
        self._evaluator = evaluator
        self._cache: dict[int, int] = {}

    def __call__(self, m: int) -> int:
        try:
            return self._cache[m]
        except KeyError:
            value = self._cache[m] = self._evaluator(m)
            return value

    def __repr__(self) -> str:
        return f"CountFunction({self.name!r})"


def _c_at(n: int) -> Callable[[int], int]:
    def at(m: int) -> int:
        return c_sequence(n, m)[m - 1]
    return at


lucas_phi = CountFunction("lucas", lucas)
power2_phi = CountFunction("power2", lambda m: 2**m)


@lru_cache(maxsize=None)
def c_phi(n: int) -> CountFunction:
    if n == 1:
        return lucas_phi
    if n < 2:
        raise ValueError(f"selector must be >= 1, got {n}")
    return CountFunction(f"c_{n}", _c_at(n))


def mobius_combine(m: int, phi: Callable[[int], int]) -> int:
    """Sum of ``mu(m/d) * phi(d)`` over divisors ``d`` of ``m``."""
    return sum(mobius(m // d) * phi(d) for d in divisors(m))


def inclusion_exclusion(m: int, phi: Callable[[int], int]) -> int:
    """The same transform written as the alternating sum over sets of distinct primes."""
    primes = prime_factors(m)
    total = 0
    for r in range(len(primes) + 1):
        sign = -1 if r % 2 else 1
        for chosen in combinations(primes, r):
            total += sign * phi(m // math.prod(chosen))
    return total


def minimal_period_points(m: int, phi: Callable[[int], int]) -> int:
    value = mobius_combine(m, phi)
    check = inclusion_exclusion(m, phi)
    if value != check:
        raise ArithmeticError(f"divisor and prime-subset transforms disagree at m={m}")
    return value


def orbit_count(n: int, m: int) -> int:
    """Number of orbits of minimal period ``m`` for the map selected by ``n``.

    ``n = 1`` is the golden-mean map (Lucas counts); ``n >= 2`` is the family
    map on ``[1, 2n+1]``.
    """
    if m < 1:
        raise ValueError(f"period must be >= 1, got {m}")
    total = minimal_period_points(m, c_phi(n))
    if total < 0 or total % m:
        raise ArithmeticError(f"{total} points of minimal period {m} (n={n}) is not a whole number of orbits")
    return total // m


def psi_orbits(m: int) -> int:
    """Orbits of minimal period ``m`` when there are ``2^k`` points of period dividing ``k``."""
    if m < 1:
        raise ValueError(f"period must be >= 1, got {m}")
    total = minimal_period_points(m, power2_phi)
    if total % m:
        raise ArithmeticError(f"2^k transform at m={m} is not divisible by m")
    return total // m


# -- table -----------------------------------------------------------------

@dataclass(frozen=True)
class OrbitTable:
    n_max: int
    m_max: int
    phi: tuple[tuple[int, ...], ...]  # phi[m-1][n-1]
    psi: tuple[int, ...]

    def header(self) -> list[str]:
        return ["m"] + [f"phi{n}" for n in range(1, self.n_max + 1)] + ["psi"]

    def rows(self) -> list[list[int]]:
        return [[m, *self.phi[m - 1], self.psi[m - 1]] for m in range(1, self.m_max + 1)]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.header())
        writer.writerows(self.rows())
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "OrbitTable":
        reader = list(csv.reader(io.StringIO(text)))
        header, body = reader[0], reader[1:]
        n_max = len(header) - 2
        phi = tuple(tuple(int(v) for v in row[1:-1]) for row in body)
        psi = tuple(int(row[-1]) for row in body)
        return cls(n_max, len(body), phi, psi)

    def to_dict(self) -> dict:
        return {
            "m_max": self.m_max,
            "n_max": self.n_max,
            "rows": [
                {"m": m, "phi": list(self.phi[m - 1]), "psi": self.psi[m - 1]}
                for m in range(1, self.m_max + 1)
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def to_text(self) -> str:
        rows = [self.header()] + [[str(v) for v in row] for row in self.rows()]
        widths = [max(len(r[c]) for r in rows) for c in range(len(rows[0]))]
        return "\n".join("  ".join(v.rjust(w) for v, w in zip(r, widths)) for r in rows) + "\n"


def build_table(n_max: int, m_max: int) -> OrbitTable:
    if n_max < 1 or m_max < 1:
        raise ValueError("table needs n_max >= 1 and m_max >= 1")
    phi = tuple(tuple(orbit_count(n, m) for n in range(1, n_max + 1)) for m in range(1, m_max + 1))
    psi = tuple(psi_orbits(m) for m in range(1, m_max + 1))
    return OrbitTable(n_max, m_max, phi, psi)


# -- identities ------------------------------------------------------------

@dataclass
class CheckResult:
    name: str
    range: str
    passed: bool
    counterexample: dict | None = None
    note: str | None = None

    def to_dict(self) -> dict:
        out = {"property": self.name, "range": self.range, "pass": self.passed}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if self.note is not None:
            out["note"] = self.note
        return out


def _first_failure(cases):
    for case, ok in cases:
        if not ok:
            return case
    return None


def _result(name, rng, cases, note=None) -> CheckResult:
    bad = _first_failure(cases)
    return CheckResult(name, rng, bad is None, bad, note)


def alternative_b(n: int, k_max: int) -> dict[int, list[list[int]]]:
    """Rows 1 and n+1 of the branch counts, columns 1..n, from the short second-order recurrences."""
    out = {}
    for i in (1, n + 1):
        seq = [None, [0] * (n + 1), [0] * (n + 1)]  # seq[k][j], 1-based
        for j in range(1, n + 1):
            if i == 1:
                seq[1][j], seq[2][j] = 0, 1
            else:
                seq[1][j] = seq[2][j] = 1 if j == n else 0
        for k in range(1, k_max - 1):
            nxt = [0] * (n + 1)
            nxt[n] = seq[k][1] + seq[k + 1][n]
            for j in range(1, n):
                nxt[j] = seq[k][1] + seq[k][j + 1]
            seq.append(nxt)
        out[i] = seq[:k_max + 1]
    return out


def check_properties(n: int, k_max: int) -> list[CheckResult]:
    """Check the six structural identities of the branch counts for one ``n``.

    ``k_max`` bounds the recursion depth used for the open-ended identities;
    the fixed-range ones (even-index powers of two, the ``n`` vs ``n+1``
    relation) compute whatever depth they need.
    """
    if n < 2:
        raise ValueError(f"the family needs n >= 2, got {n}")
    depth = max(k_max, 4 * n, 6 * n + 1)
    b = [None] + b_states(n, depth)
    c = [None] + c_sequence(n, depth)
    results = []

    # (i)
    cases = [({"k": k, "claim": "b[k+1,1,n] >= b[k,1,n]"}, b[k + 1][1][n] >= b[k][1][n])
             for k in range(1, k_max)]
    for k in range(2, k_max + 1):
        cases.append(({"k": k, "claim": "b[k,1,n] >= b[k,n+1,n]"}, b[k][1][n] >= b[k][n + 1][n]))
        cases += [({"k": k, "i": i, "claim": "b[k,1,i+1] >= b[k,1,i]"}, b[k][1][i + 1] >= b[k][1][i])
                  for i in range(1, n)]
    results.append(_result("i", f"1<=k<={k_max}", cases, "increase checked non-strictly"))

    # (ii)
    alt = alternative_b(n, k_max)
    cases = [({"k": k, "i": i, "j": j, "direct": b[k][i][j], "alternative": alt[i][k][j]},
              b[k][i][j] == alt[i][k][j])
             for i in (1, n + 1) for k in range(1, k_max + 1) for j in range(1, n + 1)]
    results.append(_result("ii", f"1<=k<={k_max}", cases))

    # (iii): both forms against the direct values; the first form from k = 3-2n
    def b1(k, j):
        return b[k][1][j] if k >= 1 else 0

    cases = []
    for k in range(3 - 2 * n, k_max - 2 * n + 3):
        idx = k + 2 * n - 2
        first = b[idx][n + 1][n] + 2 * sum(b1(k + 2 * n - 2 * j, j) for j in range(1, n + 1))
        cases.append(({"k": k, "form": 1, "direct": c[idx], "formula": first}, first == c[idx]))
        if k >= 1:
            second = (b[idx][n + 1][n] + 2 * n * b[k][1][n]
                      + sum((2**i - 2) * b[k][1][n + 1 - i] for i in range(2, n + 1)))
            cases.append(({"k": k, "form": 2, "direct": c[idx], "formula": second}, second == c[idx]))
    results.append(_result("iii", f"{3 - 2 * n}<=k<={k_max - 2 * n + 2}", cases))

    # (iv)
    cases = [({"k": k, "c": c[2 * k], "expected": 2**(k + 1) - 1}, c[2 * k] == 2**(k + 1) - 1)
             for k in range(1, 2 * n + 1)]
    results.append(_result("iv", f"1<=k<={2 * n}", cases))

    # (v)
    c_next = [None] + c_sequence(n + 1, 6 * n + 1)
    cases = [({"k": k, "c_n": c[2 * k + 1], "c_n+1": c_next[2 * k + 1]},
              c[2 * k + 1] == 2 * c_next[2 * k + 1] - 1)
             for k in range(n + 1, 3 * n + 1)]
    results.append(_result("v", f"{n + 1}<=k<={3 * n}", cases))

    # (vi)
    cases = []
    for k in range(2 * n + 1, k_max + 1):
        rhs = b[k - 1][1][n] + sum((-1)**i * b[k - i][1][n] for i in range(2, 2 * n + 1))
        cases.append(({"k": k, "b": b[k][1][n], "recurrence": rhs}, b[k][1][n] == rhs))
    results.append(_result("vi", f"{2 * n + 1}<=k<={k_max}", cases))
    return results


def check_lucas_sum(k_max: int) -> CheckResult:
    """``a_{k+2} = 3 + a_1 + ... + a_k``."""
    a = [None] + lucas_list(k_max + 2)
    cases = [({"k": k}, a[k + 2] == 3 + sum(a[1:k + 1])) for k in range(1, k_max + 1)]
    return _result("lucas-sum", f"1<=k<={k_max}", cases)


def check_inversion(m_max: int, phis) -> list[CheckResult]:
    """Summing the minimal-period counts over divisors recovers ``phi``; each is divisible by its period."""
    results = []
    for phi in phis:
        cases = []
        for m in range(1, m_max + 1):
            sums = sum(minimal_period_points(d, phi) for d in divisors(m))
            cases.append(({"m": m, "claim": "sum over divisors"}, sums == phi(m)))
            cases.append(({"m": m, "claim": "m divides"}, minimal_period_points(m, phi) % m == 0))
            cases.append(({"m": m, "claim": "nonnegative"}, minimal_period_points(m, phi) >= 0))
        results.append(_result(f"mobius[{phi.name}]", f"1<=m<={m_max}", cases))
    return results


def scan_conjectures(n_max: int, m_max: int) -> dict:
    """Power-of-two and doubling relations between the table columns.

    Equalities on their established ranges are checked; the strict
    inequalities beyond those ranges are only tallied and reported.
    """
    equalities, strict = [], []
    for n in range(1, n_max + 1):
        for m in range(n, (m_max - 1) // 2 + 1):
            q = 2 * m + 1
            value, bound = orbit_count(n, q), Fraction(2)**(m - n)
            row = {"n": n, "m": m, "period": q, "orbits": value, "power_of_two": int(bound)}
            if m <= 3 * n + 1:
                equalities.append({**row, "kind": "odd", "holds": value == bound})
            else:
                strict.append({**row, "kind": "odd", "holds": value > bound})
        for k in range(1, (m_max - 2) // 2 + 1):
            q = 2 * k + 2
            value, psi = orbit_count(n, q), psi_orbits(k + 1)
            row = {"n": n, "k": k, "period": q, "orbits": value, "psi": psi}
            if k <= 2 * n:
                equalities.append({**row, "kind": "even", "holds": value == psi})
            else:
                strict.append({**row, "kind": "even", "holds": value > psi})
    return {
        "n_max": n_max,
        "m_max": m_max,
        "equalities_hold": all(e["holds"] for e in equalities),
        "equality_failures": [e for e in equalities if not e["holds"]],
        "equalities_checked": len(equalities),
        "strict_checked": len(strict),
        "strict_counterexamples": [s for s in strict if not s["holds"]],
        "note": "odd-period strict range read as m > 3n+1",
    }


# -- literature bounds -----------------------------------------------------

def bowen_franks_bound(d: int, m: int, k: int) -> float:
    """``2^(k/m) / (2^d k)`` orbits of period ``2^d k`` given a period ``2^d m`` orbit, m odd > 1."""
    if d < 0 or k < 1 or m <= 1 or m % 2 == 0:
        raise ValueError("need d >= 0, k >= 1 and odd m > 1")
    return 2 ** (k / m) / (2**d * k)


def jonker_bound(m: int, n: int) -> int:
    """``2^((n-m)/2)`` orbits for odd ``1 < m < n``."""
    if m % 2 == 0 or n % 2 == 0 or not 1 < m < n:
        raise ValueError("need odd m and n with 1 < m < n")
    return 2 ** ((n - m) // 2)
