"""Independent brute-force oracles shared by the test modules.

These deliberately avoid the vectorised paths of the library: lines are
enumerated here from scratch and every count is a plain Python loop over
scalar field operations.
"""
import itertools
from collections import Counter

import pytest

from nonhitting import gf

SMALL_QS = (2, 3, 4, 5, 7, 8, 9, 11, 13, 16)
ODD_QS = (3, 5, 7, 9, 11, 13, 25, 27)


def brute_lines(ctx):
    q = ctx.q
    out = []
    for v in itertools.product(range(q), repeat=3):
        first = next((a for a in v if a), None)
        if first == 1:
            out.append(v)
    return out


def brute_u(ctx, points):
    """Intersection distribution of a point set, one line at a time."""
    add, mul = ctx.add, ctx.mul
    u = Counter()
    for a, b, c in brute_lines(ctx):
        n = sum(1 for x, y, z in points if add(add(mul(a, x), mul(b, y)), mul(c, z)) == 0)
        u[n] += 1
    return dict(u)


def brute_values(ctx, coeffs):
    out = []
    for x in range(ctx.q):
        acc, xp = 0, 1
        for a in coeffs:
            acc = ctx.add(acc, ctx.mul(a, xp))
            xp = ctx.mul(xp, x)
        out.append(acc)
    return out


def brute_row(ctx, values, c):
    """``M_i``: field elements hit exactly i times by ``f(x) - c x``."""
    hits = Counter(ctx.sub(y, ctx.mul(c, x)) for x, y in enumerate(values))
    row = Counter(hits[b] for b in range(ctx.q))
    return dict(row)


def brute_v(ctx, values):
    """``v_i`` straight from the definition: roots of ``f(x) - a x - b``."""
    v = Counter()
    for a in range(ctx.q):
        for b in range(ctx.q):
            r = sum(1 for x, y in enumerate(values)
                    if ctx.sub(ctx.sub(y, ctx.mul(a, x)), b) == 0)
            v[r] += 1
    return dict(v)


def graph_points(values):
    return [(x, y, 1) for x, y in enumerate(values)] + [(0, 1, 0)]


def counts(dist):
    return dict(dist.counts)


@pytest.fixture(params=SMALL_QS, ids=lambda q: f"q{q}")
def small_field(request):
    return gf(request.param)
