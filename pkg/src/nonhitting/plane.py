"""The projective plane PG(2,q): points, lines, incidence and distributions.

Points and lines are canonical triples of element indices whose first
nonzero entry is 1.  Point ``(x, y, z)`` lies on line ``(a, b, c)`` iff
``a x + b y + c z == 0``.
"""
import functools
import json
from dataclasses import dataclass

import numpy as np

from .errors import SizeMismatch

INCIDENCE_LIMIT = 64     # dense incidence matrix cached up to this order


class Distribution:
    """Sparse count vector indexed by multiplicity.

    Only nonzero counts are stored.  ``total`` is the number of objects
    being classified (lines, pairs ``(a, b)``, or field elements).
    """

    def __init__(self, counts, total=None):
        self.counts = {int(i): int(n) for i, n in dict(counts).items() if n}
        if any(n < 0 for n in self.counts.values()):
            raise ValueError("negative count in distribution")
        s = sum(self.counts.values())
        self.total = s if total is None else int(total)
        if s != self.total:
            raise ValueError(f"counts sum to {s}, expected {self.total}")

    @classmethod
    def from_array(cls, arr, total=None):
        arr = np.asarray(arr)
        nz = np.nonzero(arr)[0]
        return cls({int(i): int(arr[i]) for i in nz}, total)

    def __getitem__(self, i):
        return self.counts.get(i, 0)

    def __eq__(self, other):
        if not isinstance(other, Distribution):
            return NotImplemented
        return self.counts == other.counts and self.total == other.total

    def __repr__(self):
        inner = ", ".join(f"{i}: {n}" for i, n in self.items())
        return f"Distribution({{{inner}}}, total={self.total})"

    def items(self):
        return sorted(self.counts.items())

    def moment(self, k):
        """``sum_i i(i-1)...(i-k+1) * counts[i]`` (falling factorial moment)."""
        out = 0
        for i, n in self.counts.items():
            f = 1
            for j in range(k):
                f *= i - j
            out += f * n
        return out

    def max_index(self):
        return max(self.counts) if self.counts else 0

    def to_dict(self, q=None):
        d = {"total": self.total,
             "counts": {str(i): n for i, n in self.items()}}
        if q is not None:
            d = {"q": q, **d}
        return d

    def to_json(self, q=None):
        return json.dumps(self.to_dict(q), sort_keys=False)

    @classmethod
    def from_dict(cls, d):
        return cls({int(i): n for i, n in d["counts"].items()}, d["total"])

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))

    def render(self, symbol="u"):
        return ", ".join(f"{symbol}_{i}={n}" for i, n in self.items())


def canonical(ctx, v):
    """Scale a nonzero triple so its first nonzero entry is 1."""
    for a in v:
        if a:
            inv = ctx.inv(a)
            return tuple(ctx.mul(inv, b) for b in v)
    raise ValueError("the zero vector is not a projective point")


def _triples(q):
    out = [(0, 0, 1)]
    out += [(0, 1, z) for z in range(q)]
    out += [(1, y, z) for y in range(q) for z in range(q)]
    return out


class Plane:
    """Points, lines and incidence of PG(2,q) for one field context."""

    def __init__(self, ctx):
        self.ctx = ctx
        self.q = ctx.q
        self.points = _triples(self.q)
        self.lines = list(self.points)
        self.point_index = {P: k for k, P in enumerate(self.points)}
        self.line_index = self.point_index
        self._coords = np.array(self.points, dtype=np.int64)
        self._inc = None
        n = self.q * self.q + self.q + 1
        assert len(self.points) == n

    @property
    def size(self):
        return len(self.points)

    def incident(self, P, L):
        ctx = self.ctx
        return ctx.add(ctx.add(ctx.mul(L[0], P[0]), ctx.mul(L[1], P[1])),
                       ctx.mul(L[2], P[2])) == 0

    def _incidence_rows(self, line_coords):
        """Boolean matrix ``[line, point]`` for the given line triples."""
        ctx = self.ctx
        L = np.asarray(line_coords, dtype=np.int64)
        P = self._coords
        acc = ctx.vmul(L[:, None, 0], P[None, :, 0])
        acc = ctx.vadd(acc, ctx.vmul(L[:, None, 1], P[None, :, 1]))
        acc = ctx.vadd(acc, ctx.vmul(L[:, None, 2], P[None, :, 2]))
        return acc == 0

    @property
    def incidence(self):
        """Dense ``[line, point]`` incidence matrix (cached for small q)."""
        if self._inc is not None:
            return self._inc
        inc = self._incidence_rows(self.lines)
        inc.setflags(write=False)
        if self.q <= INCIDENCE_LIMIT:
            self._inc = inc
        return inc

    def points_on(self, L):
        return [P for P in self.points if self.incident(P, L)]

    def lines_through(self, P):
        return [L for L in self.lines if self.incident(P, L)]

    def line_through(self, P, Q):
        """The line joining two distinct points (cross product)."""
        ctx = self.ctx
        m, s = ctx.mul, ctx.sub
        v = (s(m(P[1], Q[2]), m(P[2], Q[1])),
             s(m(P[2], Q[0]), m(P[0], Q[2])),
             s(m(P[0], Q[1]), m(P[1], Q[0])))
        return canonical(ctx, v)

    def meet(self, L, M):
        """Intersection point of two distinct lines."""
        return self.line_through(L, M)

    def line_counts(self, members):
        """Array of ``|L & members|`` over all lines, in line order."""
        idx = [self.point_index[P] for P in members]
        if not idx:
            return np.zeros(self.size, dtype=np.int64)
        if self.q <= INCIDENCE_LIMIT:
            return self.incidence[:, idx].sum(axis=1)
        counts = np.zeros(self.size, dtype=np.int64)
        chunk = max(1, 2 ** 22 // self.size)
        for start in range(0, self.size, chunk):
            block = self._incidence_rows(self.lines[start:start + chunk])
            counts[start:start + chunk] = block[:, idx].sum(axis=1)
        return counts


@functools.lru_cache(maxsize=16)
def get_plane(ctx):
    return Plane(ctx)


def enumerate_points(ctx):
    return list(get_plane(ctx).points)


def enumerate_lines(ctx):
    return list(get_plane(ctx).lines)


@dataclass(frozen=True)
class PointSet:
    """An immutable set of canonical points of PG(2,q)."""

    ctx: object
    members: frozenset

    @classmethod
    def of(cls, ctx, points):
        pl = get_plane(ctx)
        members = frozenset(canonical(ctx, P) for P in points)
        for P in members:
            if P not in pl.point_index:
                raise ValueError(f"{P} is not a point of PG(2,{ctx.q})")
        return cls(ctx, members)

    @property
    def plane(self):
        return get_plane(self.ctx)

    @property
    def q(self):
        return self.ctx.q

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(sorted(self.members))

    def __contains__(self, P):
        return P in self.members

    def union(self, points):
        return PointSet.of(self.ctx, set(self.members) | set(points))

    def without(self, points):
        return PointSet(self.ctx, self.members - set(points))

    def line_counts(self):
        return self.plane.line_counts(sorted(self.members))


def intersection_distribution(S):
    """Counts ``u_i`` of lines meeting ``S`` in exactly ``i`` points."""
    counts = S.line_counts()
    return Distribution.from_array(np.bincount(counts, minlength=S.q + 2),
                                   total=S.plane.size)


def degree(S):
    """Largest ``i >= 2`` with ``u_i > 0``; None for sets of size <= 1."""
    if len(S) <= 1:
        return None
    return int(S.line_counts().max())


def _counts_through(S, P):
    pl = S.plane
    counts = S.line_counts()
    return [int(counts[pl.line_index[L]]) for L in pl.lines_through(P)]


def internal_nuclei(S):
    """Points of ``S`` on no line meeting ``S`` in three or more points."""
    pl = S.plane
    counts = S.line_counts()
    inc = pl.incidence if S.q <= INCIDENCE_LIMIT else None
    out = set()
    for P in S.members:
        if inc is not None:
            through = counts[inc[:, pl.point_index[P]]]
        else:
            through = np.array(_counts_through(S, P))
        if through.max() <= 2:
            out.add(P)
    return out


def nuclei(S):
    """Points off a (q+1)-set through which every line is a tangent."""
    if len(S) != S.q + 1:
        raise SizeMismatch(f"nuclei need a {S.q + 1}-set, got {len(S)} points")
    pl = S.plane
    counts = S.line_counts()
    out = set()
    if S.q <= INCIDENCE_LIMIT:
        inc = pl.incidence
        tangent_everywhere = ~np.any(inc & (counts != 1)[:, None], axis=0)
        for k in np.nonzero(tangent_everywhere)[0]:
            P = pl.points[k]
            if P not in S.members:
                out.add(P)
        return out
    for P in pl.points:
        if P not in S.members and all(c == 1 for c in _counts_through(S, P)):
            out.add(P)
    return out
