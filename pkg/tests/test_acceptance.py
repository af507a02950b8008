"""The twelve acceptance criteria, each checked against an independent route
where one exists.  A summary line per criterion is printed by conftest."""

from __future__ import annotations

import itertools
import json
import math
import random
import subprocess
import sys
import time
from math import comb

import numpy as np
import pytest

from cremona_lab.algebra import PolyRing, RationalFunction, field_make, sqrt_char2, univariate_squarefree
from cremona_lab.birmaps import (
    DegenerateFiber,
    dj_example_build,
    dj_example_degenerate,
    dj_example_fiber,
    dj_order,
    norm_sum,
    norm_sum_oracle,
)
from cremona_lab.picard import PicLattice, bertini, di_cross_values, exceptional_classes, geiser, scale
from cremona_lab.projlin import (
    SquareMatrix,
    gl_order,
    is_power_of,
    projective_order_census,
    random_unipotent,
    unipotent_identity_check,
)
from cremona_lab.surfaces import (
    Curve,
    bertini_deck,
    discriminant,
    dp1_make,
    dp1_singular_witness,
    dp1_tau,
    dp2_ring,
    dp2_singular_on_axis,
    dp2_surface,
    fiber_analysis,
    fiber_automorphisms,
    invariant_ring_dimension_check,
    is_singular_at,
    random_dp1,
    random_form,
    random_invariant_dp2,
    singular_points_bruteforce,
)
from cremona_lab.verify import run_claim
from cremona_lab.weyl import (
    bareiss_rank,
    count_elements,
    elements_of_order,
    lefschetz,
    longest_element,
    no_square_root_of,
    order_profile,
    plus_part_decomposition,
    root_system,
)
from cremona_lab.birmaps import wp_order


def criterion(n: int, title: str):
    return pytest.mark.criterion(n, title)


# ---------------------------------------------------------------------------
# 1


@criterion(1, "Weyl group orders by enumeration")
def test_c1_group_orders():
    expected = {
        "A4": math.factorial(5),
        "D5": 2**4 * math.factorial(5),
        "E6": 51840,
        "E7": 2903040,
    }
    start = time.perf_counter()
    for name, order in expected.items():
        assert count_elements(root_system(name)) == order, name
    assert time.perf_counter() - start < 15 * 60


# ---------------------------------------------------------------------------
# 2


def _signed_permutation_profile(n: int, order: int) -> list[int]:
    """Traces of elements of the given order in the even signed permutations of
    n letters, i.e. W(D_n) acting on Q^n."""
    traces = []
    for perm in itertools.permutations(range(n)):
        for signs in itertools.product((1, -1), repeat=n):
            if math.prod(signs) != 1:
                continue
            M = np.zeros((n, n), dtype=np.int64)
            for i in range(n):
                M[perm[i], i] = signs[i]
            P, k = M.copy(), 1
            while not np.array_equal(P, np.eye(n, dtype=np.int64)):
                P, k = P @ M, k + 1
            if k == order:
                traces.append(int(np.trace(M)))
    return sorted(traces)


@criterion(2, "W(D5) order-8 elements have trace -1; Lefschetz number 2")
def test_c2_d5_order8():
    prof = order_profile(root_system("D5"), [8])
    entry = prof[8]
    assert entry.count > 0
    assert set(entry.traces) == {-1}
    oracle = _signed_permutation_profile(5, 8)
    assert sorted(entry.traces.elements()) == oracle
    assert lefschetz(-1) == 2


# ---------------------------------------------------------------------------
# 3


@criterion(3, "W(E6): orders 4 and 8 fix a vector; order 9 has trace 0, fixed rank 0")
def test_c3_e6_profile():
    rs = root_system("E6")
    prof = order_profile(rs, [4, 8, 9])
    for m in (4, 8):
        assert prof[m].count > 0
        assert min(prof[m].fixed_ranks) >= 1
    assert prof[9].count > 0
    assert set(prof[9].traces) == {0}
    assert set(prof[9].fixed_ranks) == {0}
    # exact elimination on a sample agrees with the character-average ranks
    rng = random.Random(3)
    for m, expect_zero in ((4, False), (8, False), (9, True)):
        for w in rng.sample(elements_of_order(rs, m), 30):
            rank = 6 - bareiss_rank((w.matrix - np.eye(6, dtype=np.int64)).tolist())
            assert (rank == 0) == expect_zero
    assert lefschetz(0) == 3


# ---------------------------------------------------------------------------
# 4


@criterion(4, "W(E7): w0 = -I, no square root of -I, W+ x <w0>")
def test_c4_e7():
    rs = root_system("E7")
    start = time.perf_counter()
    w0 = longest_element(rs)
    assert w0 == rs.minus_identity()
    res = no_square_root_of(rs, w0)
    assert not res.found and res.target_in_group and res.scanned == 2903040
    dec = plus_part_decomposition(rs, samples=1000, rng=random.Random(4))
    assert dec.holds and dec.samples_checked == 1000
    assert time.perf_counter() - start < 30 * 60


# ---------------------------------------------------------------------------
# 5


def _mat_pow_mod(M: np.ndarray, e: int, p: int) -> np.ndarray:
    out = np.eye(len(M), dtype=np.int64)
    base = M % p
    while e:
        if e & 1:
            out = out @ base % p
        base = base @ base % p
        e >>= 1
    return out


@criterion(5, "p-power projective orders in GL3(2), GL3(3); unipotent identity")
def test_c5_lemma1():
    r = 2
    for q in (2, 3):
        census = projective_order_census(field_make(q), r)
        assert sum(census.values()) == gl_order(3, q)
        for o in census:
            if is_power_of(o, q) and o > 1:
                s = round(math.log(o, q))
                assert q ** (s - 1) < r + 1, (q, o)
    rng = random.Random(5)
    fields = {p: field_make(p) for p in (2, 3, 5)}
    for _ in range(1000):
        p = rng.choice((2, 3, 5))
        n = rng.randint(2, 5)
        s = rng.randint(1, 3)
        A = random_unipotent(fields[p], n, rng)
        assert unipotent_identity_check(A, s)
        # second route: plain integer matrices reduced mod p
        M = np.array(A.rows, dtype=np.int64)
        I = np.eye(n, dtype=np.int64)
        e = p ** (s - 1)
        assert np.array_equal(_mat_pow_mod(M, e, p), (I + _mat_pow_mod(M - I, e, p)) % p)


# ---------------------------------------------------------------------------
# 6


def _squarefree_gf2(max_degree: int):
    R = PolyRing(field_make(2), ("x",), (1,))
    x = R.gen("x")
    out = []
    for d in range(1, max_degree + 1):
        for low in itertools.product((0, 1), repeat=d):
            P = x**d + sum((x**i for i, c in enumerate(low) if c), R.zero())
            if univariate_squarefree(P):
                out.append(P)
    return out


def _shift(P):
    return P.subst({"x": P.ring.gen("x") + 1})


@criterion(6, "de Jonquieres example for every squarefree P of degree <= 6")
def test_c6_construction():
    start = time.perf_counter()
    polys = _squarefree_gf2(6)
    built = 0
    for P in polys:
        x = P.ring.gen("x")
        a, b, c, d = dj_example_fiber(P)
        # the two displayed identities, straight from the fiber entries
        assert (a * _shift(a) + b * _shift(c)).is_zero()
        assert (a * _shift(a) + _shift(b) * c).is_zero()
        if dj_example_degenerate(P):
            continue
        g = dj_example_build(P)
        s2 = g**2
        R = RationalFunction(P * _shift(P), x * (x + 1))
        assert s2.base == (1, 0, 0, 1)
        assert s2.is_antidiagonal() and s2.fiber_ratio() == R
        assert dj_order(g) == 4
        built += 1
    assert built == 61
    assert time.perf_counter() - start < 10


@criterion(6, "de Jonquieres example for every squarefree P of degree <= 6")
@pytest.mark.xfail(strict=True, raises=DegenerateFiber, reason="ad - bc = 0 for P = x+1, x^3+1, x^5+x^4+x^2+1")
def test_c6_every_squarefree_polynomial_literally():
    for P in _squarefree_gf2(6):
        assert dj_order(dj_example_build(P)) == 4


def test_c6_degenerate_polynomials_are_exactly_the_shift_invariant_ones():
    degenerate = []
    for P in _squarefree_gf2(6):
        Q = P.ring.gen("x") * P
        assert dj_example_degenerate(P) == (Q == _shift(Q))
        if dj_example_degenerate(P):
            degenerate.append(str(P))
    assert degenerate == ["x + 1", "x^3 + 1", "x^5 + x^4 + x^2 + 1"]


# ---------------------------------------------------------------------------
# 7


def _binomial_norm_sum(a: int, n: int, p: int) -> dict[tuple[int, int], int]:
    """sum_j (t0 + j t1)^a t1^(n-a) over j in GF(p), expanded by hand."""
    out: dict[tuple[int, int], int] = {}
    for k in range(a + 1):
        power_sum = sum(pow(j, a - k, p) if a - k else 1 for j in range(p)) % p
        c = comb(a, k) * power_sum % p
        if c:
            out[(k, n - k)] = c
    return out


@criterion(7, "norm sum agrees with the binomial oracle; refuted witnesses")
def test_c7_norm_sum():
    for p in (2, 3, 5):
        R = PolyRing(field_make(p), ("t0", "t1"), (1, 1))
        t0, t1 = R.gens()
        for n in range(1, 7):
            for a in range(n + 1):
                f = t0**a * t1 ** (n - a)
                s = norm_sum(f)
                assert s == norm_sum_oracle(f)
                assert dict(s.sorted_terms()) == _binomial_norm_sum(a, n, p), (p, str(f))
    for p, f, expected in ((2, "t0*t1", "t1^2"), (3, "t0^2", "2*t1^2")):
        v = run_claim("thm3.norm_sum", {"p": p, "n": 2, "f": f})
        assert v.status == "refuted"
        R = PolyRing(field_make(p), ("t0", "t1"), (1, 1))
        assert R(v.witness["sum"]) == R(expected)


# ---------------------------------------------------------------------------
# 8


@criterion(8, "Picard lattice involutions, S.beta(S) = 3, D_i cross sum, exceptional counts")
def test_c8_picard():
    for N, op, mult in ((7, geiser, 1), (8, bertini, 2)):
        L = PicLattice(N)
        basis = [L.e(i) for i in range(N + 1)]
        for u in basis:
            assert op(L, op(L, u)) == u
            for v in basis:
                assert L.dot(op(L, u), op(L, v)) == L.dot(u, v)
        assert op(L, L.K) == L.K
        kperp = L.kperp_basis()
        assert len(kperp) == N and all(L.dot(r, L.K) == 0 for r in kperp)
        assert np.linalg.matrix_rank(np.array(kperp)) == N
        for r in kperp:
            assert op(L, r) == scale(-1, r)
        # closed form -D + mult (D.K) K
        for u in basis:
            k = mult * L.dot(u, L.K)
            assert op(L, u) == tuple(-a + k * b for a, b in zip(u, L.K))
    L8 = PicLattice(8)
    classes = exceptional_classes(L8)
    assert len(classes) == 240
    assert all(L8.dot(E, bertini(L8, E)) == 3 for E in classes)
    res = di_cross_values(L8, [scale(-2, L8.K)] * 4)
    assert res.cross_sum == 48 and res.common_value == 4
    for N, count in ((6, 27), (7, 56), (8, 240)):
        L = PicLattice(N)
        cls = exceptional_classes(L)
        assert len(cls) == len(set(cls)) == count
        assert all(L.dot(E, E) == -1 and L.dot(E, L.K) == -1 for E in cls)


# ---------------------------------------------------------------------------
# 9


def _jacobian_vanishes(X, point) -> bool:
    """All partials and F vanish at the point (no chart choice)."""
    F = X.F
    if F.evaluate(point).rep:
        return False
    return all(not F.partial(v).evaluate(point).rep for v in X.ring.names)


@criterion(9, "DP2: invariant ring generators; singular point on the axis")
def test_c9_dp2():
    assert invariant_ring_dimension_check(8)
    rng = random.Random(9)
    for i in range(20):
        fld = field_make(2, 1 + i % 2)
        R = dp2_ring(fld)
        if i < 4:
            # a2 = x^2, a4 = c z^2 (z + x)^2 + z (z + x) g + h
            x, z = R.gen("x"), R.gen("z")
            c = fld.element(rng.randrange(fld.q))
            g = random_form(R, ("x", "y"), 2, rng)
            h = random_form(R, ("x", "y"), 4, rng)
            a2, a4, w = R("x^2"), (z * z * (z + x) ** 2).scale(c) + z * (z + x) * g + h, x
        else:
            a2, a4, w = random_invariant_dp2(fld, rng)
            c = None
        pt = dp2_singular_on_axis(a2, a4, w)
        X = dp2_surface(a2, a4)
        assert is_singular_at(X, pt)
        assert _jacobian_vanishes(X, pt)
        if c is not None:
            assert pt == (fld.zero, fld.zero, fld.one, sqrt_char2(c))


# ---------------------------------------------------------------------------
# 10


def _two_torsion_by_negation(C: Curve) -> int:
    """Count P with P = -P, where -(x, y) = (x, y + A3), plus the origin."""
    fld = C.field
    count = 1
    for x in fld.elements():
        for y in fld.elements():
            on = y * y + C.A3 * y + x**3 + C.A4 * x + C.A6
            if not on.rep and y == y + C.A3:
                count += 1
    return count


@criterion(10, "DP1: tau of order 4 squaring to Bertini, smoothness, discriminant, supersingular fibers")
def test_c10_dp1():
    rng = random.Random(10)
    F4 = field_make(2, 2)
    F16 = field_make(2, 4)
    for i in range(50):
        S = random_dp1(F4, rng)
        if i % 2:
            a6 = S.a6 - S.ring.monomial((1, 5, 0, 0), S.a6.coefficient({"u": 1, "v": 5}))
            S = dp1_make(S.b, a6, F4)
        tau = dp1_tau(S)
        assert tau(S.F) == S.F
        assert wp_order(tau) == 4
        u, v, x, y = S.ring.gens()
        assert (tau * tau).components == (u, v, x, y + u**3)
        assert tau * tau == bertini_deck(S)

        verdict = dp1_singular_witness(S)
        assert verdict.smooth == bool(S.a6.coefficient({"u": 1, "v": 5}).rep)
        for k in (2, 4, 6):
            pts = singular_points_bruteforce(S.hypersurface, k)
            if verdict.smooth:
                assert pts == []
            else:
                emb = field_make(2, k).embedding(F4)
                assert tuple(emb[c.rep] for c in verdict.point) in pts

        W = S.fibration()
        assert discriminant(W) == W.ring.gen("u") ** 12
        base = [(F16.one, c) for c in F16.elements()] + [(F16.zero, F16.one)]
        singular = [pt for pt in base if not fiber_analysis(W, pt, F16).smooth]
        assert [tuple(c.rep for c in pt) for pt in singular] == [(0, 1)]
        rep = fiber_analysis(W, (0, 1))
        X, Y = rep.normal_form.ring.gens()
        assert rep.cuspidal and rep.normal_form == Y * Y + X**3

    for _ in range(20):
        S = random_dp1(F16, rng)
        pt = (F16.one, F16.element(rng.randrange(16)))
        rep = fiber_analysis(S.fibration(), pt)
        assert rep.smooth and rep.j_invariant is not None and not rep.j_invariant.rep
        assert rep.two_torsion == 1
        assert _two_torsion_by_negation(rep.curve) == 1


# ---------------------------------------------------------------------------
# 11


def _automorphism_count_by_hand(fld) -> int:
    """For y^2 + y = x^3, substituting x -> u^2 x + s^2, y -> u^3 y + u^2 s x + t
    and comparing coefficients gives u^3 = 1, s^4 = s, t^2 + t = s^6."""
    E = fld.elements()
    us = [u for u in E if u.rep and u**3 == fld.one]
    total = 0
    for s in E:
        if s**4 == s:
            total += sum(1 for t in E if t * t + t == s**6)
    return len(us) * total


@criterion(11, "y^2 + y = x^3 over GF(16) has 24 automorphisms with Q8 signature")
def test_c11_fiber_automorphisms():
    F16 = field_make(2, 4)
    rep = fiber_automorphisms(Curve(F16.one, F16.zero, F16.zero))
    assert rep.count == 24 == _automorphism_count_by_hand(F16)
    assert rep.center_size == 2 and rep.negation_central
    assert rep.order_counts.get(4, 0) > 0 and rep.order4_squares == 1
    assert rep.quaternion_signature


# ---------------------------------------------------------------------------
# 12


def _run_all_json() -> bytes:
    cmd = [sys.executable, "-m", "cremona_lab.verify.cli", "run", "--all", "--seed", "7", "--json", "--normalize-timing"]
    proc = subprocess.run(cmd, capture_output=True, timeout=1800)
    assert proc.returncode in (0, 1), proc.stderr.decode()
    return proc.stdout


@criterion(12, "two seeded full runs give byte-identical JSON")
def test_c12_determinism():
    first, second = _run_all_json(), _run_all_json()
    assert first == second
    report = json.loads(first)
    assert report["seed"] == 7
    assert all(c["millis"] == 0 for c in report["claims"])
    assert "error" not in {c["verdict"] for c in report["claims"]}
