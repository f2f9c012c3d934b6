"""Polynomials over GF(q) and the distributions they induce.

Sign conventions follow the definitions: multiplicity rows and the
intersection distribution use ``f(x) - c x``; value sets and permutation
directions use ``f(x) + c x``.  Summed over all ``c`` the two agree.
"""
import json
import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import (DegreeOutOfRange, IncompleteData, NotInternalNucleus,
                     OddCharacteristic, SizeMismatch)
from .plane import (Distribution, PointSet, canonical, get_plane,
                    internal_nuclei)


def _reduce_exponent(e, q):
    if e <= 0:
        return 0
    return (e - 1) % (q - 1) + 1


@dataclass(frozen=True)
class FieldPoly:
    """Polynomial of degree <= q-1; coefficients constant term first."""

    ctx: object
    coeffs: tuple

    def __post_init__(self):
        q = self.ctx.q
        red = [0] * q
        for e, a in enumerate(self.coeffs):
            if not 0 <= a < q:
                raise ValueError(f"coefficient {a} out of range for GF({q})")
            if a:
                k = _reduce_exponent(e, q)
                red[k] = self.ctx.add(red[k], a)
        while red and red[-1] == 0:
            red.pop()
        object.__setattr__(self, "coeffs", tuple(red))

    @classmethod
    def monomial(cls, ctx, d, coef=1):
        return cls(ctx, (0,) * d + (coef,))

    @classmethod
    def parse(cls, ctx, text):
        """Comma-separated element indices, constant term first."""
        return cls(ctx, tuple(int(t) for t in text.split(",") if t.strip()))

    @property
    def q(self):
        return self.ctx.q

    @property
    def degree(self):
        return max(len(self.coeffs) - 1, 0)

    def is_affine(self):
        return self.degree <= 1

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return FieldPoly(self.ctx, tuple(self.ctx.add(x, y) for x, y in zip(a, b)))

    def __call__(self, x):
        return evaluate(self, x)

    @cached_property
    def values(self):
        """``f(x)`` for every field element, as a read-only array."""
        ctx = self.ctx
        nz = [(e, a) for e, a in enumerate(self.coeffs) if a]
        if len(nz) == 1:
            e, a = nz[0]
            out = ctx.vmul(a, ctx.power_map(e))
        else:
            xs = np.arange(ctx.q, dtype=np.int64)
            out = np.zeros(ctx.q, dtype=np.int64)
            for a in reversed(self.coeffs):
                out = ctx.vadd(ctx.vmul(out, xs), a)
        out = np.asarray(out, dtype=np.int64)
        out.setflags(write=False)
        return out


def evaluate(f, x):
    ctx = f.ctx
    acc = 0
    for a in reversed(f.coeffs):
        acc = ctx.add(ctx.mul(acc, x), a)
    return acc


def graph_set(f):
    """The (q+1)-set of graph points ``<(x, f(x), 1)>`` plus ``<(0,1,0)>``."""
    pts = [(x, int(y), 1) for x, y in enumerate(f.values)]
    pts.append((0, 1, 0))
    return PointSet.of(f.ctx, pts)


@dataclass(frozen=True)
class MultiplicityRow:
    c: int
    dist: Distribution


def _shifted_values(f, cs):
    """Matrix ``[c, x] -> f(x) - c x`` for the given c values."""
    ctx = f.ctx
    xs = np.arange(ctx.q, dtype=np.int64)
    cs = np.asarray(cs, dtype=np.int64)
    return ctx.vsub(f.values[None, :], ctx.vmul(cs[:, None], xs[None, :]))


def multiplicity_matrix(f):
    """Array ``M[c, i]``: elements hit exactly ``i`` times by ``f(x) - c x``."""
    q = f.q
    Y = _shifted_values(f, range(q))
    rows = np.arange(q, dtype=np.int64)[:, None]
    occ = np.bincount((Y + q * rows).ravel(), minlength=q * q).reshape(q, q)
    M = np.bincount((occ + (q + 1) * rows).ravel(),
                    minlength=q * (q + 1)).reshape(q, q + 1)
    return M


def multiplicity_distribution(f, c):
    q = f.q
    y = _shifted_values(f, [c])[0]
    occ = np.bincount(y, minlength=q)
    return MultiplicityRow(c, Distribution.from_array(
        np.bincount(occ, minlength=q + 1), total=q))


def multiplicity_rows(f):
    M = multiplicity_matrix(f)
    return [MultiplicityRow(c, Distribution.from_array(M[c], total=f.q))
            for c in range(f.q)]


def intersection_distribution_poly(f):
    """``v_i``: pairs ``(a, b)`` with ``f(x) - a x - b`` having ``i`` roots."""
    M = multiplicity_matrix(f)
    return Distribution.from_array(M.sum(axis=0), total=f.q ** 2)


def intersection_distribution_pairs(f):
    """Reference computation of ``v_i`` by the direct (a, b) double loop."""
    ctx = f.ctx
    q = ctx.q
    fx = [evaluate(f, x) for x in range(q)]
    counts = {}
    for a in range(q):
        for b in range(q):
            r = 0
            for x in range(q):
                if ctx.sub(ctx.sub(fx[x], ctx.mul(a, x)), b) == 0:
                    r += 1
            counts[r] = counts.get(r, 0) + 1
    return Distribution(counts, total=q * q)


def value_set_plus(f, c):
    """``{f(x) + c x}``."""
    ctx = f.ctx
    xs = np.arange(ctx.q, dtype=np.int64)
    return frozenset(int(v) for v in ctx.vadd(f.values, ctx.vmul(c, xs)))


def value_set_sizes(f):
    ctx = f.ctx
    q = ctx.q
    xs = np.arange(q, dtype=np.int64)
    cs = np.arange(q, dtype=np.int64)
    Y = ctx.vadd(f.values[None, :], ctx.vmul(cs[:, None], xs[None, :]))
    return {c: len(np.unique(Y[c])) for c in range(q)}


def permutation_directions(f):
    """``N_f``: the ``c`` making ``f(x) + c x`` a permutation."""
    return frozenset(c for c, n in value_set_sizes(f).items() if n == f.q)


def is_permutation(f):
    return len(np.unique(f.values)) == f.q


def o_polynomial_test(f):
    """Permutation with ``f(x) + c x`` two-to-one for every nonzero ``c``."""
    if f.ctx.p != 2:
        raise OddCharacteristic(f"o-polynomials need even q, got {f.q}")
    if not is_permutation(f):
        return False
    M = multiplicity_matrix(f)
    # char 2: f(x) + cx == f(x) - cx
    for c in range(1, f.q):
        row = M[c]
        if row.sum() != row[0] + row[2]:
            return False
    return True


@dataclass
class PolyProfile:
    f: FieldPoly
    rows: list
    v: Distribution
    value_set_sizes: dict
    N_f: frozenset = field(default_factory=frozenset)

    def to_dict(self):
        return {
            "q": self.f.q,
            "f": list(self.f.coeffs),
            "v": {str(i): n for i, n in self.v.items()},
            "rows": [{"c": r.c, "M": {str(i): n for i, n in r.dist.items()}}
                     for r in self.rows],
            "N_f": sorted(self.N_f),
        }

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d, ctx):
        f = FieldPoly(ctx, tuple(d["f"]))
        q = ctx.q
        rows = [MultiplicityRow(r["c"], Distribution(
            {int(i): n for i, n in r["M"].items()}, total=q)) for r in d["rows"]]
        v = Distribution({int(i): n for i, n in d["v"].items()}, total=q * q)
        return cls(f, rows, v, value_set_sizes(f), frozenset(d["N_f"]))


def profile(f):
    rows = multiplicity_rows(f)
    v = intersection_distribution_poly(f)
    sizes = value_set_sizes(f)
    N = frozenset(c for c, n in sizes.items() if n == f.q)
    return PolyProfile(f, rows, v, sizes, N)


# -- interpolation and coordinatization -----------------------------------

def interpolate(ctx, points):
    """The unique polynomial of degree <= q-1 through ``{x: y}``."""
    q = ctx.q
    if set(points) != set(range(q)):
        raise IncompleteData(f"need values at all {q} elements, got {len(points)}")
    ys = [points[x] for x in range(q)]
    coeffs = [ys[0]] + [0] * (q - 1)
    for k in range(1, q):
        acc = 0
        for a in range(q):
            if ys[a]:
                acc = ctx.add(acc, ctx.mul(ys[a], ctx.pow(a, q - 1 - k)))
        coeffs[k] = ctx.neg(acc)
    return FieldPoly(ctx, tuple(coeffs))


def mat_vec(ctx, M, v):
    return tuple(
        ctx.add(ctx.add(ctx.mul(r[0], v[0]), ctx.mul(r[1], v[1])), ctx.mul(r[2], v[2]))
        for r in M)


def mat_inv(ctx, M):
    n = len(M)
    A = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(M)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col]), None)
        if piv is None:
            raise ValueError("singular matrix")
        A[col], A[piv] = A[piv], A[col]
        inv = ctx.inv(A[col][col])
        A[col] = [ctx.mul(inv, a) for a in A[col]]
        for r in range(n):
            if r != col and A[r][col]:
                k = A[r][col]
                A[r] = [ctx.sub(a, ctx.mul(k, b)) for a, b in zip(A[r], A[col])]
    return tuple(tuple(r[n:]) for r in A)


def apply_projectivity(ctx, M, points):
    return [canonical(ctx, mat_vec(ctx, M, P)) for P in points]


def coordinatize(S, O):
    """Polynomial ``f`` and matrix ``M`` with ``M(S) == graph_set(f)``.

    ``O`` goes to ``<(0,1,0)>`` and the tangent at ``O`` to the line ``z = 0``.
    Frame: the smallest other point of that tangent goes to ``<(1,0,0)>`` and
    the smallest point of ``S - {O}`` to ``<(0,0,1)>``.
    """
    ctx = S.ctx
    q = ctx.q
    if len(S) != q + 1:
        raise SizeMismatch(f"expected a {q + 1}-set, got {len(S)} points")
    if O not in internal_nuclei(S):
        raise NotInternalNucleus(f"{O} is not an internal nucleus")
    pl = get_plane(ctx)
    counts = S.line_counts()
    tangents = [L for L in pl.lines_through(O) if counts[pl.line_index[L]] == 1]
    assert len(tangents) == 1, "an internal nucleus has exactly one tangent"
    R = min(P for P in pl.points_on(tangents[0]) if P != O)
    P1 = min(P for P in S.members if P != O)
    cols = (R, O, P1)
    M = mat_inv(ctx, tuple(tuple(c[i] for c in cols) for i in range(3)))
    ys = {}
    for P in S.members:
        if P == O:
            continue
        x, y, z = mat_vec(ctx, M, P)
        assert z != 0
        ys[ctx.div(x, z)] = ctx.div(y, z)
    return interpolate(ctx, ys), M


# -- degree bounds ---------------------------------------------------------

def degree_bounds(f, n_f=None):
    """Bounds on ``v_0(f)`` from the degree and the size of ``N_f``."""
    q = f.q
    d = f.degree
    if not 2 <= d <= q - 1:
        raise DegreeOutOfRange(f"degree {d} outside [2, q-1]")
    if n_f is None:
        n_f = len(permutation_directions(f))
    ceil = lambda a, b: -(-a // b)
    out = {
        "lower": ceil(q - 1, d) * (q - n_f),
        "upper": (q - ceil(q, d)) * (q - n_f),
        "lower_degree_only": ceil(q - 1, d) * max(ceil(q - 1, d - 1), d + 1),
    }
    if (q - 1) % d == 0:
        out["divisor_lower"] = q * (q - 1) // d
        out["divisor_upper"] = (d - 1) * q * (q - 1) // d
    return out


def inverse_exponent(d, q):
    """``d^{-1} mod (q-1)`` when it exists, else None."""
    if q == 2:
        return 1 if d == 1 else None
    if math.gcd(d, q - 1) != 1:
        return None
    return pow(d, -1, q - 1)
