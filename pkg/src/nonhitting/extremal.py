"""Arcs, pro-arc sets, bounds on the non-hitting index, and Spec(q).

Everything here works on (q+1)-sets of PG(2,q).  Bounds are evaluated with
exact rationals so that half-integer right-hand sides compare correctly.
"""
import itertools
import logging
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import BudgetExceeded, NoSuchConfiguration, NotMaximalArc, SizeMismatch
from .plane import (INCIDENCE_LIMIT, PointSet, get_plane, intersection_distribution,
                    internal_nuclei, nuclei)
from .polyset import FieldPoly, graph_set, o_polynomial_test

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 2_000_000   # subsets an exhaustive search may visit


def _lines_through_idx(pl, P):
    """Boolean mask over lines: those through ``P``."""
    if pl.q <= INCIDENCE_LIMIT:
        return pl.incidence[:, pl.point_index[P]]
    return pl._incidence_rows(pl.lines)[:, pl.point_index[P]]


def is_arc(D):
    """No three points of ``D`` on a line."""
    if len(D) < 3:
        return True
    return int(D.line_counts().max()) <= 2


def _blocked(pl, counts, P):
    return bool((counts[_lines_through_idx(pl, P)] >= 2).any())


def _is_maximal(S, A):
    pl = S.plane
    counts = pl.line_counts(sorted(A))
    return all(_blocked(pl, counts, P) for P in S.members - A)


def s_maximal_arcs(S, mode="greedy"):
    """S-maximal arcs of ``S``.

    ``greedy`` adds points in canonical order whenever the arc survives and
    returns that single arc.  ``all`` enumerates every S-maximal arc by a
    include/exclude search; only sensible for small ``S``.
    """
    if len(S) < 2:
        raise SizeMismatch("need at least two points")
    pl = S.plane
    pts = sorted(S.members)
    if mode == "greedy":
        counts = np.zeros(pl.size, dtype=np.int64)
        arc = []
        for P in pts:
            mask = _lines_through_idx(pl, P)
            if (counts[mask] >= 2).any():
                continue
            arc.append(P)
            counts[mask] += 1
        return [PointSet(S.ctx, frozenset(arc))]
    if mode != "all":
        raise ValueError(f"mode must be 'greedy' or 'all', not {mode!r}")
    masks = {P: _lines_through_idx(pl, P) for P in pts}
    found = []

    def walk(k, chosen, counts):
        if k == len(pts):
            A = frozenset(chosen)
            if all((counts[masks[P]] >= 2).any() for P in pts if P not in A):
                found.append(PointSet(S.ctx, A))
            return
        P = pts[k]
        if not (counts[masks[P]] >= 2).any():
            counts[masks[P]] += 1
            chosen.append(P)
            walk(k + 1, chosen, counts)
            chosen.pop()
            counts[masks[P]] -= 1
        walk(k + 1, chosen, counts)

    walk(0, [], np.zeros(pl.size, dtype=np.int64))
    return found


@dataclass
class ArcAnalysis:
    S: PointSet
    A: PointSet
    k: int
    pro_arc_points: set
    B: PointSet
    l: int
    tangent_counts: dict        # P in S \ A -> tangents to A through P
    secant_counts: dict         # P in S \ A -> 2-secants to A through P
    lam: int                    # max tangent count (0 when S == A)


def pro_arc_analysis(S, A):
    """Pro-arc points of ``A`` in ``S`` and one pro-arc set ``B``.

    ``B`` takes the smallest pro-arc point on each occupied 2-secant.
    """
    if not A.members <= S.members or not is_arc(A) or not _is_maximal(S, A.members):
        raise NotMaximalArc("A must be an S-maximal arc contained in S")
    pl = S.plane
    countsA = pl.line_counts(sorted(A.members))
    tangents, secants, pro = {}, {}, set()
    chosen = {}
    for P in sorted(S.members - A.members):
        mask = _lines_through_idx(pl, P)
        tangents[P] = int((countsA[mask] == 1).sum())
        sec = np.nonzero(mask & (countsA == 2))[0]
        secants[P] = len(sec)
        if len(sec) == 1:
            pro.add(P)
            chosen.setdefault(int(sec[0]), P)   # sorted order: smallest first
    B = PointSet(S.ctx, frozenset(chosen.values()))
    lam = max(tangents.values(), default=0)
    return ArcAnalysis(S, A, len(A), pro, B, len(B), tangents, secants, lam)


# -- bounds ------------------------------------------------------------------

@dataclass
class BoundCheck:
    name: str
    holds: bool
    value: object
    bound: object
    relation: str

    def to_dict(self):
        return {"name": self.name, "holds": self.holds, "value": str(self.value),
                "bound": str(self.bound), "relation": self.relation}


@dataclass
class BoundReport:
    q: int
    u: object
    degree: int
    k: int
    l: int
    lam: int
    checks: list = field(default_factory=list)

    @property
    def ok(self):
        return all(c.holds for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.holds]

    def to_dict(self):
        return {"q": self.q, "u": {str(i): n for i, n in self.u.items()},
                "degree": self.degree, "k": self.k, "l": self.l, "lambda": self.lam,
                "ok": self.ok, "checks": [c.to_dict() for c in self.checks]}


def _cmp(name, value, relation, bound):
    ops = {"<=": value <= bound, "<": value < bound, ">=": value >= bound,
           "==": value == bound}
    return BoundCheck(name, bool(ops[relation]), value, bound, relation)


def _fact(name, holds):
    return BoundCheck(name, bool(holds), holds, True, "==")


def _piecewise_bound(q, k):
    top = Fraction(q * (q - 1), 2)
    if q % 2 == 0:
        if k < Fraction(q, 2) + 2:
            return top - (q + 1 - k)
        return top - (q + 1 - k) * (k - Fraction(q + 2, 2))
    if k < Fraction(2 * q + 6, 3):
        return top - (q + 1 - k)
    return top - Fraction(3, 2) * (q + 1 - k) * (k - Fraction(2 * q + 4, 3))


def odd_upper_bound(q):
    """Largest possible ``u_0`` of a non-arc (q+1)-set, q odd."""
    small = {3: 2, 5: 9, 7: 19}
    if q in small:
        return Fraction(small[q])
    top = Fraction(q * (q - 1), 2)
    r = q % 3
    if (r == 0 and q >= 9) or (r == 1 and q >= 13) or (r == 2 and q >= 11):
        return top - Fraction(q - (3, 1, 2)[r], 3)
    return None


def _degree_n_configuration(S, counts, n):
    """For degree ``q-1``: the multiplicity of the line through the two
    points off the unique (q-1)-secant, or None when not of that shape."""
    pl = S.plane
    q = S.q
    rich = np.nonzero(counts == n)[0]
    if n != q - 1 or len(rich) != 1:
        return None
    L = pl.lines[int(rich[0])]
    off = [P for P in S.members if not pl.incident(P, L)]
    if len(off) != 2:
        return None
    M = pl.line_through(*off)
    return int(counts[pl.line_index[M]])


def check_bounds(S, A=None):
    """Evaluate every applicable identity and bound on ``u_0(S)``."""
    q = S.q
    if len(S) != q + 1:
        raise SizeMismatch(f"bounds need a {q + 1}-set, got {len(S)} points")
    u = intersection_distribution(S)
    counts = S.line_counts()
    n = int(counts.max())
    u0 = u[0]
    top = Fraction(q * (q - 1), 2)
    arc = n <= 2
    if A is None:
        A = s_maximal_arcs(S)[0]
    an = pro_arc_analysis(S, A)
    k, l, lam = an.k, an.l, an.lam
    rep = BoundReport(q, u, n, k, l, lam)
    add = rep.checks.append

    # counting identities
    add(_cmp("identity: sum u_i", u.total, "==", q * q + q + 1))
    add(_cmp("identity: sum i u_i", u.moment(1), "==", (q + 1) ** 2))
    add(_cmp("identity: sum i(i-1) u_i", u.moment(2), "==", q * (q + 1)))
    excess = sum(Fraction((i - 1) * (i - 2), 2) * m for i, m in u.items() if i >= 3)
    add(_cmp("identity: u_0 from higher counts", u0, "==", top - excess))
    add(_cmp("upper bound q(q-1)/2", u0, "<=", top))
    add(_fact("u_0 = q(q-1)/2 iff arc", (u0 == top) == arc))

    # structure bounds from an S-maximal arc
    if lam <= k:
        add(_cmp("maximal arc, tangent bound", u0, "<=",
                 top - Fraction((q + 1 - k) * (k - lam), 2)))
    add(_cmp("maximal arc, pro-arc bound", u0, "<=", top - 2 * (q + 1) + 2 * k + l))
    if k < q + 1:
        for P, t in an.tangent_counts.items():
            add(_cmp(f"tangents through {P} <= k-2", t, "<=", k - 2))
            if q % 2 == 0 and k > Fraction(q, 2) + 1:
                add(_cmp(f"tangents through {P} <= q+2-k", t, "<=", q + 2 - k))
            if q % 2 == 1 and k > Fraction(2 * q + 4, 3):
                add(_cmp(f"tangents through {P} <= 2(q+2-k)", t, "<=", 2 * (q + 2 - k)))
        if _single_b_secant_per_point(S, A, an.B):
            add(_cmp("l <= floor(k/2)", l, "<=", k // 2))
    if 2 <= k <= q:
        add(_cmp("piecewise bound in k", u0, "<=", _piecewise_bound(q, k)))

    # characterisations near the top
    if not arc:
        if q % 2 == 0:
            add(_cmp("even q, non-arc bound", u0, "<=", top - Fraction(q, 2) + 1))
        else:
            ob = odd_upper_bound(q)
            if ob is not None:
                add(_cmp("odd q, non-arc bound", u0, "<=", ob))
            if nuclei(S):
                half = top - Fraction(q - 1, 2)
                if internal_nuclei(S):
                    add(_cmp("odd q, nucleus and internal nucleus", u0, "<=", half))
                else:
                    add(_cmp("odd q, nucleus, no internal nucleus", u0, "<", half))

    # characterisations near the bottom
    if n >= 3:
        add(_cmp("lower bound in degree", u0, ">=", n * (q + 2 - n) - (q + 1)))
    add(_fact("u_0 = 0 iff degree q+1", (u0 == 0) == (n == q + 1)))
    add(_fact("u_0 = q-1 iff degree q", (u0 == q - 1) == (n == q)))
    if 3 <= n <= q - 1:
        add(_cmp("degree in [3, q-1] bound", u0, ">=", 2 * q - 4))
        # At q = 5 the six vertices of a complete quadrilateral have degree 3
        # and u_0 = 6 = 2q-4, so the forcing only holds from q = 7 on.
        if u0 in (2 * q - 4, 2 * q - 3) and q != 5:
            add(_fact("u_0 in {2q-4, 2q-3} forces degree q-1", n == q - 1))
        m = _degree_n_configuration(S, counts, n)
        if m is not None:
            add(_cmp("degree q-1 configuration", u0, "==", 2 * q - 4 if m == 3 else 2 * q - 3))
    return rep


def _single_b_secant_per_point(S, A, B):
    """At most one 2-secant of ``A`` holding a point of ``B`` through each point of ``A``."""
    pl = S.plane
    countsA = pl.line_counts(sorted(A.members))
    b_lines = np.zeros(pl.size, dtype=bool)
    for P in B.members:
        b_lines |= _lines_through_idx(pl, P) & (countsA == 2)
    for X in A.members:
        if int((b_lines & _lines_through_idx(pl, X)).sum()) > 1:
            return False
    return True


# -- constructions -----------------------------------------------------------

EXAMPLE_KINDS = ("qplus1_arc", "even_2_2_case1", "even_2_2_case2", "odd_2_3_case1",
                 "odd_2_3_case2", "thm210_line", "thm210_line_plus_point",
                 "thm210_3a", "thm210_3b")


def _need(ok, kind, q, why):
    if not ok:
        raise NoSuchConfiguration(f"{kind} needs {why} (q = {q})")


def example_admissible(kind, q):
    even = q % 2 == 0
    return {
        "qplus1_arc": True,
        "even_2_2_case1": even and q >= 4,
        "even_2_2_case2": even,
        "odd_2_3_case1": not even and q > 3,
        "odd_2_3_case2": not even,
        "thm210_line": True,
        "thm210_line_plus_point": True,
        "thm210_3a": q >= 4,
        "thm210_3b": q >= 4,
    }[kind]


def conic(ctx):
    """The (q+1)-arc ``S_{x^2}``; for even q the o-polynomial test is run."""
    f = FieldPoly.monomial(ctx, 2)
    if ctx.p == 2:
        assert o_polynomial_test(f), "x^2 should be an o-polynomial"
    T = graph_set(f)
    assert is_arc(T)
    return T


def _tangent_lines(T, Q):
    pl = T.plane
    counts = T.line_counts()
    mask = _lines_through_idx(pl, Q) & (counts == 1)
    return [pl.lines[i] for i in np.nonzero(mask)[0]]


def _one_point_away(ctx, kind):
    """Remove the first point P of the conic and add the first fitting Q."""
    q = ctx.q
    pl = get_plane(ctx)
    T = conic(ctx)
    P = min(T.members)
    ell = _tangent_lines(T, P)
    assert len(ell) == 1
    ell = ell[0]
    bad = set(T.members)
    if q % 2 == 0:
        (O,) = nuclei(T)
        bad.add(O)
    for Q in pl.points:
        if Q in bad:
            continue
        tang = _tangent_lines(T, Q)
        on_ell = pl.incident(Q, ell)
        if kind == "even_2_2_case1":
            fits = not on_ell
        elif kind == "even_2_2_case2":
            fits = on_ell
        elif kind == "odd_2_3_case1":
            fits = len(tang) == 2 and ell not in tang
        else:
            # Q on ell; the removed point P is then a nucleus of S
            fits = on_ell
        if fits:
            return PointSet(ctx, (T.members - {P}) | {Q})
    raise NoSuchConfiguration(f"no point Q found for {kind} at q = {q}")


def _on_line_plus(ctx, kind):
    q = ctx.q
    pl = get_plane(ctx)
    ell = (0, 0, 1)                       # the line z = 0
    line_pts = sorted(pl.points_on(ell))
    if kind == "thm210_line":
        return PointSet(ctx, frozenset(line_pts))
    if kind == "thm210_line_plus_point":
        return PointSet(ctx, frozenset(line_pts[:q] + [(0, 0, 1)]))
    keep = line_pts[:q - 1]
    R1 = (0, 0, 1)
    want_in = kind == "thm210_3a"
    for R2 in pl.points:
        if R2 == R1 or pl.incident(R2, ell):
            continue
        meet = pl.meet(pl.line_through(R1, R2), ell)
        if (meet in keep) == want_in:
            return PointSet(ctx, frozenset(keep + [R1, R2]))
    raise NoSuchConfiguration(f"no second point found for {kind} at q = {q}")


def construct_example(kind, ctx):
    """Deterministic (q+1)-set realising one of the named configurations."""
    if kind not in EXAMPLE_KINDS:
        raise ValueError(f"unknown example kind {kind!r}")
    _need(example_admissible(kind, ctx.q), kind, ctx.q, "a different q")
    if kind == "qplus1_arc":
        return conic(ctx)
    if kind.startswith("thm210"):
        return _on_line_plus(ctx, kind)
    return _one_point_away(ctx, kind)


def expected_distribution(kind, q):
    """The full intersection distribution the configuration must have."""
    from .plane import Distribution
    top = q * (q - 1) // 2
    h = q // 2
    terms = {
        "qplus1_arc": lambda: [(0, top), (1, q + 1), (2, q * (q + 1) // 2)],
        "even_2_2_case1": lambda: [(0, top - h + 1), (1, 5 * h - 2),
                                   (2, q * (q - 2) // 2 + 3), (3, h - 1)],
        "even_2_2_case2": lambda: [(0, top - h), (1, 5 * h + 1),
                                   (2, q * (q - 2) // 2), (3, h)],
        "odd_2_3_case1": lambda: [(0, top - (q - 3) // 2), (1, (5 * q - 7) // 2),
                                  (2, (q * q - 2 * q + 9) // 2), (3, (q - 3) // 2)],
        "odd_2_3_case2": lambda: [(0, top - (q - 1) // 2), (1, (5 * q - 1) // 2),
                                  (2, (q * q - 2 * q + 3) // 2), (3, (q - 1) // 2)],
        "thm210_line": lambda: [(1, q * q + q), (q + 1, 1)],
        "thm210_line_plus_point": lambda: [(0, q - 1), (1, q * q - q + 1), (2, q), (q, 1)],
        "thm210_3a": lambda: [(0, 2 * q - 4), (1, q * q - 3 * q + 7), (2, 2 * q - 4),
                              (3, 1), (q - 1, 1)],
        "thm210_3b": lambda: [(0, 2 * q - 3), (1, q * q - 3 * q + 4), (2, 2 * q - 1),
                              (q - 1, 1)],
    }[kind]()
    acc = {}
    for i, m in terms:
        acc[i] = acc.get(i, 0) + m
    return Distribution(acc, q * q + q + 1)


# -- Spec(q) -----------------------------------------------------------------

@dataclass
class SpectrumResult:
    q: int
    attained: tuple
    method: str
    sets_checked: int = 0
    evidence: dict = field(default_factory=dict)

    def to_dict(self):
        out = {"q": self.q, "attained": list(self.attained), "method": self.method,
               "sets_checked": self.sets_checked}
        if self.evidence:
            out["evidence"] = {str(k): v for k, v in sorted(self.evidence.items())}
        return out


def _u0_block(incT, combos, q):
    """``u_0`` of each row of point-index ``combos``; identities asserted."""
    counts = incT[combos].sum(axis=1, dtype=np.int16)      # (sets, lines)
    assert (counts.sum(axis=1) == (q + 1) ** 2).all()
    c = counts.astype(np.int64)
    assert ((c * (c - 1)).sum(axis=1) == q * (q + 1)).all()
    u0 = (counts == 0).sum(axis=1)
    excess = np.where(c >= 3, (c - 1) * (c - 2) // 2, 0).sum(axis=1)
    assert (u0 == q * (q - 1) // 2 - excess).all()
    return u0


def _combo_chunks(n, r, fixed, chunk):
    it = itertools.combinations(range(len(fixed), n), r - len(fixed))
    pre = tuple(fixed)
    while True:
        block = list(itertools.islice(it, chunk))
        if not block:
            return
        arr = np.array(block, dtype=np.int64)
        if pre:
            arr = np.hstack([np.tile(np.array(pre, dtype=np.int64), (len(arr), 1)), arr])
        yield arr


def _spectrum_worker(args):
    from .gf import field_new
    p, s, combos = args
    ctx = field_new(p, s)
    pl = get_plane(ctx)
    return set(np.unique(_u0_block(pl.incidence.T, combos, ctx.q)).tolist())


def spectrum(ctx, mode="exhaustive", budget=DEFAULT_BUDGET, seed=0, pinned=True,
             jobs=1, chunk=50_000):
    """Attainable non-hitting indices of (q+1)-sets.

    ``exhaustive`` visits every (q+1)-subset; with ``pinned`` the first two
    points of the plane are forced into the subset.  PGL(3,q) is 2-transitive
    on points and preserves ``u_0``, so this loses no value.  ``partial``
    collects values from the constructions plus ``budget`` random sets.
    """
    q = ctx.q
    pl = get_plane(ctx)
    n = pl.size
    if mode == "partial":
        return _partial_spectrum(ctx, budget, seed)
    if mode != "exhaustive":
        raise ValueError(f"mode must be 'exhaustive' or 'partial', not {mode!r}")
    fixed = (0, 1) if pinned else ()
    total = math.comb(n - len(fixed), q + 1 - len(fixed))
    if total > budget:
        raise BudgetExceeded(f"{total} subsets for q = {q} exceed the budget of {budget}")
    incT = np.ascontiguousarray(pl.incidence.T)
    attained = set()
    blocks = _combo_chunks(n, q + 1, fixed, chunk)
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(jobs) as ex:
            for vals in ex.map(_spectrum_worker, ((ctx.p, ctx.s, b) for b in blocks)):
                attained |= vals
    else:
        for b in blocks:
            attained |= set(np.unique(_u0_block(incT, b, q)).tolist())
    method = "exhaustive-pinned" if pinned else "exhaustive"
    return SpectrumResult(q, tuple(sorted(attained)), method, total)


def _partial_spectrum(ctx, budget, seed):
    q = ctx.q
    pl = get_plane(ctx)
    incT = np.ascontiguousarray(pl.incidence.T)
    evidence = {}
    for kind in EXAMPLE_KINDS:
        if example_admissible(kind, q):
            S = construct_example(kind, ctx)
            evidence.setdefault(intersection_distribution(S)[0], f"construction {kind}")
    rng = random.Random(seed)
    line_list = pl.lines
    batch = []
    sources = []
    for t in range(budget):
        if t % 2 == 0:
            pts = rng.sample(range(pl.size), q + 1)
            src = "random set"
        else:
            # many points on one line, the rest anywhere
            L = rng.choice(line_list)
            on = [pl.point_index[P] for P in pl.points_on(L)]
            m = rng.randint(3, q)
            chosen = set(rng.sample(on, m))
            rest = [i for i in range(pl.size) if i not in chosen]
            chosen |= set(rng.sample(rest, q + 1 - m))
            pts = sorted(chosen)
            src = f"random set with {m} collinear points"
        batch.append(sorted(pts))
        sources.append(src)
        if len(batch) == 4096 or t == budget - 1:
            u0 = _u0_block(incT, np.array(batch, dtype=np.int64), q)
            for val, src, pts in zip(u0.tolist(), sources, batch):
                evidence.setdefault(val, f"{src}: {[pl.points[i] for i in pts]}")
            batch, sources = [], []
    return SpectrumResult(q, tuple(sorted(evidence)), "partial", budget, evidence)
