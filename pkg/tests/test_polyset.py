import pytest

from nonhitting.errors import (DegreeOutOfRange, IncompleteData, NotInternalNucleus,
                               OddCharacteristic)
from nonhitting.gf import gf
from nonhitting.plane import PointSet, intersection_distribution, internal_nuclei
from nonhitting.polyset import (FieldPoly, PolyProfile, apply_projectivity, coordinatize,
                                degree_bounds, evaluate, graph_set,
                                intersection_distribution_pairs,
                                intersection_distribution_poly, interpolate,
                                inverse_exponent, is_permutation, mat_inv, mat_vec,
                                multiplicity_distribution, multiplicity_rows,
                                o_polynomial_test, permutation_directions, profile,
                                value_set_plus, value_set_sizes)

from conftest import brute_row, brute_u, brute_v, brute_values, counts, graph_points


def test_reduction_mod_x_q_minus_x():
    ctx = gf(3)
    assert FieldPoly(ctx, (0, 0, 0, 1)).coeffs == (0, 1)       # x^3 = x
    assert FieldPoly(ctx, (1, 0, 0)).coeffs == (1,)
    assert FieldPoly.parse(ctx, "0, 0, 1").degree == 2
    with pytest.raises(ValueError):
        FieldPoly(ctx, (3,))


def test_values_match_horner(small_field):
    ctx = small_field
    coeffs = tuple((3 * k + 1) % ctx.q for k in range(min(ctx.q, 5)))
    f = FieldPoly(ctx, coeffs)
    assert f.values.tolist() == brute_values(ctx, f.coeffs)
    assert [evaluate(f, x) for x in range(ctx.q)] == f.values.tolist()


def test_graph_set_of_x_over_gf3():
    ctx = gf(3)
    S = graph_set(FieldPoly.monomial(ctx, 1))
    assert S == PointSet.of(ctx, [(0, 0, 1), (1, 1, 1), (2, 2, 1), (0, 1, 0)])
    assert (1, 1, 2) in S           # canonical form of <(2,2,1)>


def test_graph_set_of_constant_is_collinear():
    from nonhitting.plane import degree
    S = graph_set(FieldPoly(gf(4), ()))
    assert len(S) == 5 and degree(S) == 4


def test_x2_gf5():
    f = FieldPoly.monomial(gf(5), 2)
    assert intersection_distribution(graph_set(f))[0] == 10
    assert intersection_distribution_poly(f)[0] == 10
    assert permutation_directions(f) == frozenset()


def test_x4_gf5():
    assert intersection_distribution_poly(FieldPoly.monomial(gf(5), 4))[0] == 7


@pytest.mark.parametrize("q", (2, 3, 4, 5, 7, 8, 9))
def test_linear_v(q):
    v = intersection_distribution_poly(FieldPoly.monomial(gf(q), 1))
    assert counts(v) == {0: q - 1, 1: q * (q - 1), q: 1}


def test_multiplicity_row_examples():
    ctx = gf(5)
    row = multiplicity_distribution(FieldPoly.monomial(ctx, 4), 0)
    assert counts(row.dist) == {0: 3, 1: 1, 4: 1}
    lin = FieldPoly(ctx, (2, 3))
    for c in range(5):
        if c != 3:
            assert counts(multiplicity_distribution(lin, c).dist) == {1: 5}


def test_x3_gf7_c1_two_oracles():
    ctx = gf(7)
    f = FieldPoly.monomial(ctx, 3)
    got = counts(multiplicity_distribution(f, 1).dist)
    # per-b root counts of x^3 - x - b
    per_b = {}
    for b in range(7):
        r = sum(1 for x in range(7) if ctx.sub(ctx.sub(ctx.pow(x, 3), x), b) == 0)
        per_b[r] = per_b.get(r, 0) + 1
    assert got == per_b == brute_row(ctx, f.values.tolist(), 1)


def test_rows_and_v_match_brute(small_field):
    ctx = small_field
    for d in range(1, ctx.q):
        f = FieldPoly.monomial(ctx, d)
        vals = f.values.tolist()
        rows = multiplicity_rows(f)
        assert [counts(r.dist) for r in rows] == [brute_row(ctx, vals, c) for c in range(ctx.q)]
        if ctx.q <= 9:
            assert counts(intersection_distribution_poly(f)) == brute_v(ctx, vals)


def test_pairs_reference_agrees():
    ctx = gf(8)
    f = FieldPoly(ctx, (1, 2, 0, 5, 7))
    assert intersection_distribution_pairs(f) == intersection_distribution_poly(f)


def test_bridge_to_geometry(small_field):
    ctx = small_field
    f = FieldPoly(ctx, (0, 1, 1) if ctx.q > 2 else (0, 1))
    u = intersection_distribution(graph_set(f))
    assert counts(u) == brute_u(ctx, graph_points(f.values.tolist()))
    v = intersection_distribution_poly(f)
    q = ctx.q
    assert u[0] == v[0] and u[1] == v[1] + 1 and u[2] == v[2] + q


def test_permutation_directions_of_x():
    for q in (3, 4, 5, 8, 9):
        ctx = gf(q)
        minus_one = ctx.neg(1)
        N = permutation_directions(FieldPoly.monomial(ctx, 1))
        assert N == frozenset(range(q)) - {minus_one}


def test_x3_over_gf4_is_not_a_permutation():
    # gcd(3, q-1) = 3: every nonzero element cubes to 1
    f = FieldPoly.monomial(gf(4), 3)
    assert not is_permutation(f)
    assert 0 not in permutation_directions(f)


def test_value_sets():
    ctx = gf(5)
    f = FieldPoly.monomial(ctx, 2)
    assert value_set_plus(f, 0) == {0, 1, 4}
    assert value_set_sizes(f) == {c: 3 for c in range(5)}


def test_o_polynomials():
    assert o_polynomial_test(FieldPoly.monomial(gf(4), 2))
    assert not o_polynomial_test(FieldPoly.monomial(gf(4), 1))
    assert o_polynomial_test(FieldPoly.monomial(gf(8), 6))
    with pytest.raises(OddCharacteristic):
        o_polynomial_test(FieldPoly.monomial(gf(5), 2))


def test_interpolate():
    ctx = gf(3)
    assert interpolate(ctx, {0: 0, 1: 1, 2: 2}).coeffs == (0, 1)
    with pytest.raises(IncompleteData):
        interpolate(ctx, {0: 0, 1: 1})


@pytest.mark.parametrize("q", (4, 5, 7, 8, 9))
def test_interpolate_roundtrip(q):
    ctx = gf(q)
    f = FieldPoly(ctx, tuple((k * k + 1) % q for k in range(q)))
    assert interpolate(ctx, dict(enumerate(f.values.tolist()))) == f


def test_coordinatize_identity_roundtrip():
    ctx = gf(7)
    f = FieldPoly.monomial(ctx, 3)
    g, M = coordinatize(graph_set(f), (0, 1, 0))
    assert g == f


def test_coordinatize_conic_from_other_nucleus():
    ctx = gf(5)
    S = graph_set(FieldPoly.monomial(ctx, 2))
    g, M = coordinatize(S, (1, 1, 1))
    assert intersection_distribution_poly(g)[0] == 10
    assert set(apply_projectivity(ctx, M, S.members)) == graph_set(g).members


def test_coordinatize_rejects_non_nucleus():
    ctx = gf(3)
    from nonhitting.plane import get_plane
    S = PointSet.of(ctx, get_plane(ctx).points_on((0, 0, 1)))
    assert not internal_nuclei(S)
    with pytest.raises(NotInternalNucleus):
        coordinatize(S, (0, 1, 0))


def test_matrix_inverse():
    ctx = gf(9)
    M = ((1, 2, 0), (0, 1, 3), (4, 0, 1))
    Mi = mat_inv(ctx, M)
    for v in [(1, 0, 0), (0, 1, 0), (2, 5, 7)]:
        assert mat_vec(ctx, Mi, mat_vec(ctx, M, v)) == v


def test_degree_bounds_shape():
    ctx = gf(7)
    b = degree_bounds(FieldPoly.monomial(ctx, 3))
    assert set(b) == {"lower", "upper", "lower_degree_only", "divisor_lower", "divisor_upper"}
    with pytest.raises(DegreeOutOfRange):
        degree_bounds(FieldPoly.monomial(ctx, 1))


def test_inverse_exponent():
    assert inverse_exponent(3, 8) == 5
    assert inverse_exponent(2, 9) is None
    assert inverse_exponent(1, 2) == 1


def test_profile_roundtrip():
    ctx = gf(7)
    prof = profile(FieldPoly.monomial(ctx, 3))
    d = prof.to_dict()
    assert set(d) == {"q", "f", "v", "rows", "N_f"}
    assert d["v"]["0"] == 16
    back = PolyProfile.from_dict(d, ctx)
    assert back.to_dict() == d
