"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` or directly as a script.
"""
import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from nonhitting.extremal import (EXAMPLE_KINDS, construct_example, example_admissible,
                                 expected_distribution, spectrum)
from nonhitting.formulas import (aggregate_rows, families_for, predict_intersection,
                                 predict_multiplicity, verify_family)
from nonhitting.gf import (cij_set, cij_sizes_closed, cyclotomic_number2,
                           cyclotomic_number2_closed, delta_closed, delta_ps, gf, prime_powers)
from nonhitting.kakeya import dk_distribution_direct, dk_distribution_transfer
from nonhitting.plane import intersection_distribution
from nonhitting.polyset import FieldPoly
from nonhitting.tables import (TABLE4_QS, compute_table2, compute_table4, load_table2,
                               load_table4)

import test_properties as props

KNOWN_SPEC = {2: (0, 1), 3: (0, 2, 3), 4: (0, 3, 4, 5, 6), 5: (0, 4, 6, 7, 8, 9, 10)}


def _report(n, ok, detail, emit):
    emit(f"CRITERION {n}: {'PASS' if ok else 'FAIL'} - {detail}")
    return ok


@pytest.fixture
def emit(capsys):
    def out(line):
        with capsys.disabled():
            print("\n" + line)
    return out


def criterion_1(emit):
    t = time.perf_counter()
    golden = load_table2()
    qs = prime_powers(2, 16)
    bad = [q for q in qs if compute_table2(q) != golden.get(q)]
    dt = time.perf_counter() - t
    stars = (frozenset({6}), 28, True) in golden[9] and (frozenset({12}), 70, True) in golden[16]
    return _report(1, not bad and stars and dt < 60,
                   f"Table 2 for q in {qs}, mismatches {bad}, {dt:.1f}s (< 60s)", emit)


def criterion_2(emit):
    t = time.perf_counter()
    rows, bad = 0, []
    for q in prime_powers(2, 128):
        ctx = gf(q)
        for fam in families_for(ctx):
            rep = verify_family(fam, ctx)
            rows += rep.rows_checked
            bad += [(fam.name, q, m) for m in rep.mismatches if m["what"] == "row"]
    dt = time.perf_counter() - t
    return _report(2, not bad and dt < 600,
                   f"{rows} closed-form rows vs brute force for q <= 128, "
                   f"{len(bad)} mismatches, {dt:.1f}s (< 600s)", emit)


def criterion_3(emit):
    t = time.perf_counter()
    checked, bad = 0, []
    for q in prime_powers(2, 128):
        ctx = gf(q)
        for fam in families_for(ctx):
            table1 = predict_intersection(fam, ctx)
            agg = aggregate_rows(fam, ctx)
            brute = verify_family(fam, ctx)
            v_bad = [m for m in brute.mismatches if m["what"] != "row"]
            conserved = table1.conserved(q) and all(
                predict_multiplicity(fam, ctx, c).conserved(q) for c in range(q))
            if agg != table1.dist or v_bad or not conserved:
                bad.append((fam.name, q))
            checked += 1
    dt = time.perf_counter() - t
    return _report(3, not bad,
                   f"{checked} Table 1 distributions = aggregated rows = brute force, "
                   f"conservation holds; failures {bad}, {dt:.1f}s", emit)


def criterion_4(emit):
    t = time.perf_counter()
    golden = load_table4()
    bad = [q for q in TABLE4_QS
           if compute_table4(q, [k for k, _ in golden[q]]) != golden[q]]
    dt = time.perf_counter() - t
    return _report(4, not bad and dt < 120,
                   f"Table 4 for q in {TABLE4_QS}, mismatches {bad}, {dt:.1f}s (< 120s)", emit)


def criterion_5(emit):
    rng = random.Random(5)
    qs = (3, 4, 5, 7, 8, 9, 11, 13, 16)
    pairs, bad = 0, []
    for q in qs:
        ctx = gf(q)
        for _ in range(200):
            f = FieldPoly(ctx, tuple(rng.randrange(q) for _ in range(rng.randint(1, q))))
            c = rng.randrange(q)
            if dk_distribution_transfer(f, c) != dk_distribution_direct(f, c):
                bad.append((q, f.coeffs, c))
            pairs += 1
    return _report(5, not bad,
                   f"{pairs} random (f, c): transfer = line enumeration, {len(bad)} differ", emit)


def criterion_6(emit):
    results, times = {}, {}
    for q in (2, 3, 4, 5):
        t = time.perf_counter()
        results[q] = spectrum(gf(q), pinned=False).attained
        times[q] = time.perf_counter() - t
    ok = results == KNOWN_SPEC and times[4] < 10 and times[5] < 600
    spec = ", ".join(f"Spec({q})={{{','.join(map(str, v))}}}" for q, v in results.items())
    return _report(6, ok, f"{spec}; q=4 {times[4]:.2f}s (< 10s), q=5 {times[5]:.1f}s (< 600s)",
                   emit)


def criterion_7(emit):
    qs = (2, 3, 4, 5, 7, 8, 9, 11, 16)
    covered, bad = {}, []
    for kind in EXAMPLE_KINDS:
        for q in qs:
            if not example_admissible(kind, q):
                continue
            if intersection_distribution(construct_example(kind, gf(q))) \
                    != expected_distribution(kind, q):
                bad.append((kind, q))
            covered.setdefault(kind, []).append(q)
    few = [k for k in EXAMPLE_KINDS if len(covered.get(k, ())) < 2]
    return _report(7, not bad and not few,
                   f"{len(EXAMPLE_KINDS)} constructions over {sum(map(len, covered.values()))} "
                   f"(kind, q) pairs; wrong {bad}, under-covered {few}", emit)


def criterion_8(emit):
    suites = [props.test_counting_identities_on_random_sets,
              props.test_bridge_on_random_polynomials,
              props.test_degree_bounds_on_random_polynomials,
              props.test_row_conservation,
              props.test_linearity_invariance,
              props.test_inverse_exponent_symmetry]
    failed = []
    for suite in suites:
        try:
            suite()
        except AssertionError:
            failed.append(suite.__name__)
    return _report(8, not failed,
                   f"{len(suites)} suites x >= {props.N} instances (q <= 16, fixed seeds); "
                   f"failed {failed}", emit)


def criterion_9(emit):
    qs = [q for q in prime_powers(3, 128) if q % 2]
    bad = []
    for q in qs:
        ctx = gf(q)
        delta = delta_ps(ctx)
        sizes = cij_sizes_closed(q, delta)
        if delta != delta_closed(ctx.p, ctx.s):
            bad.append((q, "delta"))
        for i in (0, 1):
            for j in (0, 1):
                if cyclotomic_number2(ctx, i, j) != cyclotomic_number2_closed(q, i, j):
                    bad.append((q, "cyclotomic", i, j))
                if len(cij_set(ctx, i, j)) != sizes[(i, j)]:
                    bad.append((q, "C_ij", i, j))
    return _report(9, not bad,
                   f"cyclotomic numbers and C_ij sizes for {len(qs)} odd q <= 128; "
                   f"mismatches {bad}", emit)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8, criterion_9]


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 10)])
def test_acceptance(criterion, emit):
    assert criterion(emit)


if __name__ == "__main__":
    results = [c(print) for c in CRITERIA]
    sys.exit(0 if all(results) else 1)
