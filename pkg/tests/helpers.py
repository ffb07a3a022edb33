"""Rule tables transcribed by hand, used as the independent side of rule checks."""

from fractions import Fraction as F

from orbitforge.plmap import make_family_map


def golden_mean_rules():
    return {(F(1), F(3)): (F(3), F(1), F(2)), (F(3), F(1)): (F(2), F(1), F(3)),
            (F(1), F(2)): (F(3), F(1)), (F(2), F(1)): (F(1), F(3))}


def family_rules(n):
    """The four special rules plus uv -> f(u) f(v) on the rest of the pair set."""
    f = dict(zip(range(1, 2 * n + 2), make_family_map(n).ys))
    rules = {
        (n, n + 2): (n + 3, n + 2, n),
        (n + 2, n): (n, n + 2, n + 3),
        (n + 1, 2 * n + 1): (n + 2, *range(n, 0, -1)),
        (2 * n + 1, n + 1): (*range(1, n + 1), n + 2),
    }
    pairs = [(i, i + 1) for i in range(1, n)] + [(j, j + 1) for j in range(n + 2, 2 * n + 1)]
    for u, v in pairs:
        rules[(u, v)] = (f[u], f[v])
        rules[(v, u)] = (f[v], f[u])
    return {(F(a), F(b)): tuple(F(x) for x in img) for (a, b), img in rules.items()}
