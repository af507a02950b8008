from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cremona_lab.algebra import field_make
from cremona_lab.surfaces import (
    Curve,
    DP1Surface,
    FieldTooSmall,
    NotOnSurface,
    NoUnitChart,
    PreconditionFailed,
    WeightedHypersurface,
    WrongShape,
    cusp_normal_form,
    dp1_make,
    dp1_singular_witness,
    dp2_invariance_constraints,
    dp2_ring,
    dp2_singular_on_axis,
    dp2_surface,
    fiber_automorphisms,
    field_from_spec,
    invariant_dimension_table,
    is_singular_at,
    load_surface,
    random_dp1,
    random_invariant_dp2,
    singular_points_bruteforce,
    two_torsion_count,
    weierstrass_discriminant,
)

F2, F4, F16 = field_make(2), field_make(2, 2), field_make(2, 4)


def test_singularity_is_independent_of_representative():
    rng = random.Random(1)
    S = random_dp1(F4, rng)
    a6 = S.a6 - S.ring.monomial((1, 5, 0, 0), S.a6.coefficient({"u": 1, "v": 5}))
    S = dp1_make(S.b, a6, F4)
    verdict = dp1_singular_witness(S)
    assert not verdict.smooth
    for lam in F4.elements()[1:]:
        scaled = [c * lam**w for c, w in zip(verdict.point, S.ring.weights)]
        assert is_singular_at(S.hypersurface, scaled)


def test_point_errors():
    X = dp2_surface("x^2", "z^4 + y^4", F2)
    with pytest.raises(NotOnSurface):
        is_singular_at(X, (0, 1, 0, 0))
    Y = WeightedHypersurface(dp2_ring(F2), dp2_ring(F2)("x*y*u + z^4"))
    with pytest.raises(NoUnitChart):
        is_singular_at(Y, (0, 0, 0, 1))


def test_dp2_invariance_examples():
    R = dp2_ring(F2)
    assert not dp2_invariance_constraints(R("z^3*x"), "x").invariant
    rep = dp2_invariance_constraints(R("z^2*(z+x)^2 + z*(z+x)*y^2 + x^4"), "x")
    assert rep.invariant


@given(st.integers(0, 10**6), st.sampled_from([1, 2]))
def test_random_invariant_surfaces_have_the_axis_point(seed, k):
    fld = field_make(2, k)
    a2, a4, w = random_invariant_dp2(fld, random.Random(seed))
    assert dp2_invariance_constraints(a4, w).invariant
    pt = dp2_singular_on_axis(a2, a4, w)
    assert is_singular_at(dp2_surface(a2, a4), pt)


def test_dp2_preconditions():
    with pytest.raises(PreconditionFailed):
        dp2_singular_on_axis("x^2", "z^3*x + y^4")
    with pytest.raises(PreconditionFailed):
        dp2_singular_on_axis("z^2", "z^4")


def test_invariant_dimension_table():
    table = invariant_dimension_table(8)
    assert [r.degree for r in table] == list(range(9))
    assert all(r.kernel_dimension == r.monomial_count for r in table)
    # x^a (z^2 + xz)^b with a + 2b = d
    assert [r.monomial_count for r in table] == [d // 2 + 1 for d in range(9)]


@given(st.integers(0, 10**6), st.booleans())
def test_dp1_witness_agrees_with_search(seed, drop_uv5):
    S = random_dp1(F4, random.Random(seed))
    if drop_uv5:
        a6 = S.a6 - S.ring.monomial((1, 5, 0, 0), S.a6.coefficient({"u": 1, "v": 5}))
        S = dp1_make(S.b, a6, F4)
    verdict = dp1_singular_witness(S)
    pts = singular_points_bruteforce(S.hypersurface, 4)
    if verdict.smooth:
        assert pts == []
    else:
        emb = F16.embedding(F4)
        assert pts == [tuple(emb[c.rep] for c in verdict.point)]


def test_dp1_shape_checks():
    with pytest.raises(WrongShape):
        dp1_make("u*v + x", "u^6", F4)
    with pytest.raises(WrongShape):
        dp1_make("u", "u^6", F4)


def test_discriminant_of_basic_curve():
    z, one = F2.zero, F2.one
    assert weierstrass_discriminant(z, z, one, z, z) == one
    C = Curve(one, z, z)
    assert C.discriminant == one and C.j_invariant == z


def _two_torsion_by_negation(C: Curve) -> int:
    fld = C.field
    count = 1
    for x in fld.elements():
        for y in fld.elements():
            if not (y * y + C.A3 * y + x**3 + C.A4 * x + C.A6).rep and y == y + C.A3:
                count += 1
    return count


@given(st.integers(0, 15), st.integers(0, 15), st.integers(0, 15))
def test_two_torsion_against_negation(a3, a4, a6):
    C = Curve(F16.element(a3), F16.element(a4), F16.element(a6))
    if a3:
        assert two_torsion_count(C) == _two_torsion_by_negation(C) == 1


@given(st.integers(0, 15), st.integers(0, 15))
def test_cusp_normal_form(a4, a6):
    C = Curve(F16.zero, F16.element(a4), F16.element(a6))
    (x0, y0), H = cusp_normal_form(C)
    x, y = H.ring.gens()
    assert H == y * y + x**3
    G = C.polynomial()
    assert not G.evaluate([x0, y0]).rep
    assert not G.partial("x").evaluate([x0, y0]).rep and not G.partial("y").evaluate([x0, y0]).rep


def test_automorphisms_small_field():
    rep = fiber_automorphisms(Curve(F2.one, F2.zero, F2.zero))
    assert rep.count == 2 and rep.advisory and "FieldTooSmall" in rep.advisory
    with pytest.raises(FieldTooSmall):
        fiber_automorphisms(Curve(F2.one, F2.zero, F2.zero), strict=True)
    with pytest.raises(PreconditionFailed):
        fiber_automorphisms(Curve(F16.zero, F16.zero, F16.zero))


def test_automorphism_group_structure_gf16():
    rep = fiber_automorphisms(Curve(F16.one, F16.zero, F16.zero))
    assert rep.order_counts == {1: 1, 2: 1, 3: 8, 4: 6, 6: 8}
    maps = rep.maps
    # closed under composition
    keys = {M.rows for M in maps}
    assert all((A * B).rows in keys for A in maps for B in maps)


def test_field_spec_and_loading():
    assert field_from_spec(4) == F4 and field_from_spec("GF(16)") == F16
    assert field_from_spec({"p": 2, "k": 2}) == F4
    S = load_surface({"b": "u*v", "a6": "u*v^5 + v^6", "field": 4})
    assert isinstance(S, DP1Surface) and dp1_singular_witness(S).smooth
    X = load_surface({"vars": ["x:1", "y:1", "z:1", "u:2"], "F": "u^2 + x^2*u + z^4 + y^4", "field": 2})
    assert isinstance(X, WeightedHypersurface) and X.degree == 4
