"""Reproduction of the four published tables and their golden transcriptions."""
import re
from importlib import resources

from .formulas import (branches, families_for, predict_intersection,
                       predict_multiplicity)
from .gf import gf
from .kakeya import monomial_census, predict_dk
from .polyset import FieldPoly, intersection_distribution_poly, inverse_exponent

TABLE2_QS = (2, 3, 4, 5, 7, 8, 9, 11, 13, 16)
TABLE4_QS = (2, 3, 4, 5, 7, 8, 9)

_ENTRY = re.compile(r"\((\{[\d,]*\}|\d+),(\{[\d,]*\}|\d+)\)(\*?)")


def _parse_set(tok):
    tok = tok.strip("{}")
    return frozenset(int(t) for t in tok.split(",") if t)


def golden_text(name):
    return resources.files("nonhitting.golden").joinpath(name).read_text()


def _golden_rows(name):
    for line in golden_text(name).splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        q, _, rest = line.partition("|")
        yield int(q), _ENTRY.findall(rest.replace(" ", ""))


def load_table2():
    """``{q: [(exponents, v0, starred), ...]}`` as printed."""
    return {q: [(_parse_set(a), int(b), bool(star)) for a, b, star in ents]
            for q, ents in _golden_rows("table2.txt")}


def load_table4():
    """``{q: [(size, exponents), ...]}`` as printed; empty sets included."""
    return {q: [(int(a), _parse_set(b)) for a, b, _ in ents]
            for q, ents in _golden_rows("table4.txt")}


def covered_exponents(ctx):
    """Exponents in ``[1, q-1]`` that belong to one of the six families."""
    return {fam.exponent(ctx) for fam in families_for(ctx)}


def compute_table2(q):
    """Brute-force Table 2 row: exponent groups, ``v_0`` and the star flag."""
    ctx = gf(q)
    covered = covered_exponents(ctx)
    rows, seen = [], set()
    for d in range(1, q):
        if d in seen:
            continue
        e = inverse_exponent(d, q)
        group = frozenset({d, e}) if e is not None else frozenset({d})
        seen |= group
        v0 = intersection_distribution_poly(FieldPoly.monomial(ctx, d))[0]
        rows.append((group, v0, not (group & covered)))
    return rows


def compute_table4(q, known_sizes=None):
    """Census rows; sizes listed in ``known_sizes`` but never hit map to {}."""
    census = monomial_census(gf(q))
    sizes = set(census) | set(known_sizes or ())
    return [(k, frozenset(census.get(k, ()))) for k in sorted(sizes)]


def _fmt_set(s):
    return "{" + ",".join(str(x) for x in sorted(s)) + "}"


def render_table2_row(q, rows):
    parts = []
    for group, v0, star in rows:
        key = str(next(iter(group))) if len(group) == 1 else _fmt_set(group)
        parts.append(f"({key},{v0})" + ("*" if star else ""))
    return f"{q:<2} | " + ", ".join(parts)


def render_table4_row(q, rows):
    return f"{q} | " + ", ".join(f"({k},{_fmt_set(ds)})" for k, ds in rows)


def table1_rows(q, d=None):
    """``(family, exponent, v)`` for every family applicable at q."""
    ctx = gf(q)
    out = []
    for fam in families_for(ctx):
        e = fam.exponent(ctx)
        if d is None or d == e:
            out.append((fam, e, predict_intersection(fam, ctx)))
    return out


def table3_rows(q, d=None):
    """``(family, exponent, label, prediction)`` per branch of every family."""
    ctx = gf(q)
    out = []
    for fam in families_for(ctx):
        e = fam.exponent(ctx)
        if d is not None and d != e:
            continue
        for label, members in branches(fam, ctx):
            if members:
                out.append((fam, e, label, predict_dk(fam, ctx, min(members))))
    return out


def multiplicity_rows_closed(q, fam):
    ctx = gf(q)
    return [predict_multiplicity(fam, ctx, c) for c in range(q)]
