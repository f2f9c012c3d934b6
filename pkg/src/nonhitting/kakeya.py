"""Dual Kakeya sets ``DK(f, c)`` and the sizes of the Kakeya sets they give.

``DK(f, c)`` is the graph set of ``f`` plus the point ``<(1, c, 0)>``.  The
corresponding Kakeya set has ``q^2 - u_0(DK)`` points.
"""
import json
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .formulas import PredictedDistribution, _dist, classify, exact_div
from .plane import Distribution, PointSet, intersection_distribution
from .polyset import (FieldPoly, graph_set, intersection_distribution_poly,
                      multiplicity_distribution, multiplicity_matrix)

CENSUS_CAP = 16


@dataclass(frozen=True)
class DualKakeyaSet:
    base: FieldPoly
    c: int
    points: PointSet

    @property
    def q(self):
        return self.base.q


@dataclass
class KakeyaReport:
    dk: DualKakeyaSet
    u: Distribution
    size: int

    def to_dict(self):
        return {"q": self.dk.q, "f": list(self.dk.base.coeffs), "c": self.dk.c,
                "u": {str(i): n for i, n in self.u.items()}, "size": self.size}

    def to_json(self):
        return json.dumps(self.to_dict())


def dual_kakeya(f, c):
    S = graph_set(f)
    return DualKakeyaSet(f, c, S.union([(1, c, 0)]))


def transfer(v, M, q):
    """``u(DK(f, c))`` from ``v(f)`` and the row ``M(f, c)``."""
    u = Counter()
    u[0] = v[0] - M[0]
    u[1] = v[1] - M[1] + M[0]
    u[2] = v[2] - M[2] + M[1] + q + 1
    for i in range(3, q + 1):
        u[i] = v[i] - M[i] + M[i - 1]
    u[q + 1] = M[q]
    return Distribution(u, q * q + q + 1)


def dk_distribution_transfer(f, c):
    return transfer(intersection_distribution_poly(f),
                    multiplicity_distribution(f, c).dist, f.q)


def dk_distribution_direct(f, c):
    """Line-by-line count on the realised point set."""
    return intersection_distribution(dual_kakeya(f, c).points)


def kakeya_size(f, c):
    q = f.q
    v0 = intersection_distribution_poly(f)[0]
    return q * q - (v0 - multiplicity_distribution(f, c).dist[0])


def kakeya_report(f, c):
    u = dk_distribution_transfer(f, c)
    return KakeyaReport(dual_kakeya(f, c), u, f.q ** 2 - u[0])


def monomial_sizes(ctx, d):
    """``{c: |K(DK(d, c))|}`` for one exponent, from a single row matrix."""
    q = ctx.q
    M = multiplicity_matrix(FieldPoly.monomial(ctx, d))
    v0 = int(M[:, 0].sum())
    sizes = q * q - v0 + M[:, 0]
    return {c: int(n) for c, n in enumerate(sizes)}


def monomial_census(ctx, cap=CENSUS_CAP, jobs=1):
    """Map each Kakeya size attained by some ``DK(d, c)`` to its exponents."""
    q = ctx.q
    if q > cap:
        raise ValueError(f"census capped at q <= {cap}, got {q}")
    ds = range(1, q)
    if jobs > 1 and q > 2:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(jobs) as ex:
            results = list(ex.map(_census_worker, [(ctx.p, ctx.s, d) for d in ds]))
    else:
        results = [set(monomial_sizes(ctx, d).values()) for d in ds]
    out = {}
    for d, sizes in zip(ds, results):
        for k in sizes:
            out.setdefault(k, set()).add(d)
    return dict(sorted(out.items()))


def _census_worker(args):
    from .gf import field_new
    p, s, d = args
    return set(monomial_sizes(field_new(p, s), d).values())


def census_to_dict(q, census):
    return {"q": q, "entries": [{"size": k, "exponents": sorted(ds)}
                                for k, ds in sorted(census.items())]}


# -- closed forms for DK(x^d, c) ---------------------------------------------

def _dk_terms(family, ctx, label):
    q, p, s = ctx.q, ctx.p, ctx.s
    tag = family.tag
    if tag == "p^i":
        h = family.h(ctx)
        ph, psh = p ** h, p ** (s - h)
        if label.startswith("c in"):
            return [(0, q * (psh - 1)),
                    (1, exact_div(psh * (q * ph * ph - 2 * q * ph + ph * ph - ph + 1), ph - 1)),
                    (2, q + 1), (ph, exact_div(q * (psh - 1), ph - 1)), (ph + 1, psh)]
        return [(0, psh * (q - 1)), (1, exact_div(q * (q - 1) * (ph - 2), ph - 1)),
                (2, 2 * q + 1), (ph, exact_div(psh * (q - 1), ph - 1))]
    if tag == "p^i+1":
        h = family.h(ctx)
        ph, psh = p ** h, p ** (s - h)
        zero = label.endswith("c=0")
        if label.startswith("l2(h)<l2(s)"):
            if zero:
                return [(0, exact_div(ph * (q - 1) ** 2, 2 * (ph + 1))),
                        (1, exact_div((q + psh + ph) * (q - 1), ph + 1)),
                        (2, exact_div(q * q * ph - 2 * q * q + 2 * q * ph + 3 * ph - 4, 2 * (ph - 1))),
                        (ph + 1, exact_div((psh - ph) * (q - 1), ph * ph - 1)),
                        (ph + 2, exact_div(q - 1, ph + 1))]
            return [(0, exact_div(q * ph * (q - 1), 2 * (ph + 1))),
                    (1, exact_div(ph * (q - 1), 2 * (ph + 1)) + q * psh - 2 * psh + 1),
                    (2, exact_div((ph - 2) * (q - 1) * (q - 2), 2 * (ph - 1)) + 2 * q + psh - 1),
                    (3, exact_div(q * ph - 2 * q + ph, 2 * (ph - 1))),
                    (ph + 1, exact_div(q * psh - q - 2 * psh + ph + 1, ph * ph - 1)),
                    (ph + 2, exact_div(psh - ph, ph * ph - 1))]
        if label.startswith("p=2"):
            if zero:
                return [(0, exact_div(ph * (q * q - 1), 2 * (ph + 1))),
                        (1, (psh - 1) * (q - 1)),
                        (2, exact_div((ph - 2) * (q - 1) ** 2, 2 * (ph - 1)) + 3 * q),
                        (ph + 1, exact_div((psh - 1) * (q - 1), ph * ph - 1))]
            return [(0, exact_div(ph * (q + 1) * (q - 2), 2 * (ph + 1))),
                    (1, exact_div(ph * (q + 1), 2 * (ph + 1)) + q * psh - 2 * psh + 2),
                    (2, exact_div((ph - 2) * (q - 1) * (q - 2), 2 * (ph - 1)) + 2 * q + psh - 2),
                    (3, exact_div(q * ph - 2 * q + ph, 2 * (ph - 1))),
                    (ph + 1, exact_div((psh - 1) * (q - 2), ph * ph - 1)),
                    (ph + 2, exact_div(psh - 1, ph * ph - 1))]
        if zero:
            return [(0, exact_div((q * ph - 1) * (q - 1), 2 * (ph + 1))),
                    (1, exact_div((2 * psh + 1) * (q - 1), 2)),
                    (2, exact_div(q * q * ph - 2 * q * q + q * ph + q + 4 * ph - 5, 2 * (ph - 1))),
                    (3, (q - 1) // 2),
                    (ph + 1, exact_div((psh - 1) * (q - 1), ph * ph - 1))]
        return [(0, exact_div(q * q * ph - q * ph - ph + 1, 2 * (ph + 1))),
                (1, exact_div(q * ph - 1, 2 * (ph + 1)) + q * psh - 2 * psh + 1),
                (2, exact_div(q * q * ph - 2 * q * q + q * ph + 4 * q - 2 * psh + ph - 3,
                              2 * (ph - 1))),
                (3, exact_div(q * ph - 2 * q + 1, 2 * (ph - 1))),
                (ph + 1, exact_div((psh - 1) * (q - 2), ph * ph - 1)),
                (ph + 2, exact_div(psh - 1, ph * ph - 1))]
    if tag == "(q-1)/2":
        lo, hi = (q - 1) // 2, (q + 1) // 2
        if q % 4 == 1:
            if label == "c=0":
                return [(0, exact_div(q * q + 2 * q - 3, 4)), (1, exact_div(q * q - 2 * q - 3, 2)),
                        (2, exact_div(q * q + 6 * q + 5, 4)), (hi, 2)]
            return [(0, exact_div(q * q + 5 * q - 18, 4)), (1, exact_div(2 * q * q - 9 * q + 19, 4)),
                    (2, exact_div(q * q + 7 * q - 8, 4)), (3, exact_div(q + 3, 4)), (lo, 2)]
        if label == "c=0":
            return [(0, exact_div(q * q - 1, 4)), (1, exact_div(q * q + q - 6, 2)),
                    (2, exact_div(q * q + 11, 4)), (3, (q - 1) // 2), (hi, 2)]
        square = label == "c in C_0^(2,q)"
        if q % 8 == 3:
            if square:
                return [(0, exact_div(q * q + 3 * q - 18, 4)), (1, exact_div(2 * q * q - 3 * q + 15, 4)),
                        (2, exact_div(q * q + q + 4, 4)), (3, exact_div(3 * q - 9, 4)), (4, 1), (lo, 2)]
            return [(0, exact_div(q * q + 3 * q - 10, 4)), (1, exact_div(2 * q * q - 3 * q - 5, 4)),
                    (2, exact_div(q * q + q + 16, 4)), (3, exact_div(3 * q - 5, 4)), (lo, 2)]
        if square:
            return [(0, exact_div(q * q + 3 * q - 14, 4)), (1, exact_div(2 * q * q - 3 * q + 3, 4)),
                    (2, exact_div(q * q + q + 16, 4)), (3, exact_div(3 * q - 13, 4)), (4, 1), (lo, 2)]
        return [(0, exact_div(q * q + 3 * q - 14, 4)), (1, exact_div(2 * q * q - 3 * q + 7, 4)),
                (2, exact_div(q * q + q + 4, 4)), (3, exact_div(3 * q - 1, 4)), (lo, 2)]
    if tag == "(q+1)/2":
        hi = (q + 1) // 2
        if label == "c=+-1":
            return [(0, exact_div(q * q - 1, 4)), (1, exact_div(q * q - 3, 2)),
                    (2, exact_div(q * q + 4 * q + 3, 4)), (hi, 1), (hi + 1, 1)]
        permutes = "C_00" in label if q % 4 == 1 else "C_01" in label
        if permutes:
            return [(0, exact_div(q * q + 2 * q - 3, 4)), (1, exact_div(q * q - 2 * q - 3, 2)),
                    (2, exact_div(q * q + 6 * q + 5, 4)), (hi, 2)]
        return [(0, exact_div(q * q - 1, 4)), (1, exact_div(q * q + q - 6, 2)),
                (2, exact_div(q * q + 11, 4)), (3, (q - 1) // 2), (hi, 2)]
    if tag == "q-2":
        if p == 2:
            if label == "c=0":
                return [(0, q * (q - 1) // 2), (2, (q + 1) * (q + 2) // 2)]
            return [(0, q * (q - 2) // 2), (1, 3 * q // 2), (2, q * q // 2 + 1), (3, q // 2)]
        if label == "c=0":
            return [(0, exact_div((q - 1) ** 2, 2)), (1, exact_div(3 * (q - 1), 2)),
                    (2, exact_div(q * q + 5, 2)), (3, (q - 1) // 2)]
        square = label == "c in C_0^(2,q)"
        if q % 4 == 1:
            if square:
                return [(0, exact_div((q - 1) * (q - 2), 2)), (1, 3 * q - 4),
                        (2, exact_div(q * q - 3 * q + 14, 2)), (3, q - 4), (4, 1)]
            return [(0, exact_div((q - 1) * (q - 2), 2)), (1, 3 * q - 3),
                    (2, exact_div(q * q - 3 * q + 8, 2)), (3, q - 1)]
        if square:
            return [(0, exact_div(q * q - 3 * q, 2)), (1, 3 * q - 1),
                    (2, exact_div(q * q - 3 * q + 8, 2)), (3, q - 3), (4, 1)]
        return [(0, exact_div(q * q - 3 * q + 4, 2)), (1, 3 * q - 6),
                (2, exact_div(q * q - 3 * q + 14, 2)), (3, q - 2)]
    if tag == "q-1":
        if label == "c=0":
            return [(0, q - 1), (1, q * q - 2 * q), (2, 2 * q + 1), (q, 1)]
        return [(0, 2 * q - 4), (1, q * q - 4 * q + 6), (2, 3 * q - 3), (3, 1), (q - 1, 1)]
    raise AssertionError(tag)


def predict_dk(family, ctx, c):
    """Closed-form ``u(DK(x^d, c))`` and ``|K|``, dispatched like the rows."""
    label = classify(family, ctx, c)
    q = ctx.q
    dist = _dist(_dk_terms(family, ctx, label), q * q + q + 1)
    return PredictedDistribution("dual-kakeya", label, dist, c=c, size=q * q - dist[0])
