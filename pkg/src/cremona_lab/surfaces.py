"""Del Pezzo double planes, degree-1 Weierstrass models and their fibers.

Degree-2 surfaces live in P(1,1,1,2) with coordinates (x, y, z, u); degree-1
surfaces in P(1,1,2,3) with coordinates (u, v, x, y).  Everything here is in
characteristic 2 except the generic Jacobian test.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from typing import Any, Mapping, Sequence

import numpy as np

from .algebra import (
    FieldDescriptor,
    FieldElement,
    Polynomial,
    PolyRing,
    WrongCharacteristic,
    field_make,
    make_ring,
    sqrt_char2,
)
from .birmaps import WeightedSelfMap, wp_make
from .projlin import SquareMatrix, rank_over_field


class NotOnSurface(ValueError):
    pass


class NoUnitChart(ValueError):
    pass


class PreconditionFailed(ValueError):
    pass


class NoAlphaInField(ValueError):
    pass


class WrongShape(ValueError):
    pass


class FieldTooSmall(ValueError):
    pass


def _require_char2(fld: FieldDescriptor) -> None:
    if fld.p != 2:
        raise WrongCharacteristic(f"characteristic 2 required, got {fld.p}")


def _field_of(*forms) -> FieldDescriptor:
    """Field of the first form given as a polynomial; strings alone mean GF(2)."""
    return next((f.field for f in forms if isinstance(f, Polynomial)), field_make(2))


def _elem(fld: FieldDescriptor, c) -> FieldElement:
    if isinstance(c, FieldElement):
        if c.field != fld:
            return FieldElement(fld, fld.embedding(c.field)[c.rep])
        return c
    return fld.element(c % fld.p if fld.k == 1 else c)


# ---------------------------------------------------------------------------
# Weighted hypersurfaces and the Jacobian criterion


@dataclass(frozen=True)
class WeightedHypersurface:
    ring: PolyRing
    F: Polynomial

    def __post_init__(self) -> None:
        if self.F.ring != self.ring:
            raise ValueError("equation lives in a different ring")
        if self.F.is_zero() or not self.F.is_homogeneous():
            raise WrongShape(f"{self.F} is not weighted-homogeneous")

    @property
    def field(self) -> FieldDescriptor:
        return self.ring.field

    @property
    def degree(self) -> int:
        return self.F.homogeneous_degree()

    def to_json(self) -> dict:
        return {
            "vars": [f"{n}:{w}" for n, w in zip(self.ring.names, self.ring.weights)],
            "F": str(self.F),
            "field": str(self.field),
        }


def _point_in(fld: FieldDescriptor, point: Sequence) -> tuple[FieldDescriptor, list[FieldElement]]:
    """Coordinates as elements of a common field containing ``fld``."""
    target = fld
    for c in point:
        if isinstance(c, FieldElement) and c.field.q > target.q:
            target = c.field
    return target, [_elem(target, c) for c in point]


def is_singular_at(X: WeightedHypersurface, point: Sequence) -> bool:
    """Jacobian criterion in the chart of the first nonzero weight-1 coordinate."""
    if len(point) != X.ring.nvars:
        raise ValueError("point has the wrong number of coordinates")
    fld, pt = _point_in(X.field, point)
    ring = X.ring.with_field(fld)
    F = X.F if fld == X.field else X.F.change_ring(ring)
    if F.evaluate(pt).rep:
        raise NotOnSurface(f"F does not vanish at {format_point(pt)}")
    chart = next((i for i, w in enumerate(ring.weights) if w == 1 and pt[i].rep), None)
    if chart is None:
        raise NoUnitChart("no weight-1 coordinate is nonzero at the point")
    lam = pt[chart]
    scaled = [c / lam ** w for c, w in zip(pt, ring.weights)]
    f = F.subst({ring.names[chart]: ring.one()})
    for i, name in enumerate(ring.names):
        if i != chart and f.partial(name).evaluate(scaled).rep:
            return False
    return True


def format_point(point: Sequence[FieldElement]) -> str:
    return "(" + ", ".join(str(c) for c in point) + ")"


def point_to_json(point: Sequence[FieldElement]) -> list[str]:
    return [str(c) for c in point]


# ---------------------------------------------------------------------------
# Degree-2 double planes  u^2 + a2(x,y,z) u + a4(x,y,z) = 0

DP2_VARS = ("x:1", "y:1", "z:1", "u:2")


def dp2_ring(fld: FieldDescriptor) -> PolyRing:
    return make_ring(fld, DP2_VARS)


def dp2_surface(a2: Polynomial | str, a4: Polynomial | str, fld: FieldDescriptor | None = None) -> WeightedHypersurface:
    if fld is None:
        fld = _field_of(a2, a4)
    ring = dp2_ring(fld)
    a2p, a4p = ring(a2), ring(a4)
    if "u" in a2p.variables() or "u" in a4p.variables():
        raise WrongShape("a2 and a4 must not involve u")
    if not a2p.is_zero() and not a2p.is_homogeneous(2):
        raise WrongShape(f"a2 = {a2p} is not a quadratic form")
    if not a4p.is_zero() and not a4p.is_homogeneous(4):
        raise WrongShape(f"a4 = {a4p} is not a quartic form")
    u = ring.gen("u")
    return WeightedHypersurface(ring, u * u + a2p * u + a4p)


def z_layers(a4: Polynomial) -> list[Polynomial]:
    """[l0, ..., l4] with a4 = l0 z^4 + l1 z^3 + l2 z^2 + l3 z + l4."""
    return [a4.coefficient_in("z", 4 - i) for i in range(5)]


@dataclass
class LayerConstraint:
    z_power: int
    computed: Polynomial
    predicted: Polynomial
    # True for the one relation usually quoted (l1 w = 0), False for the rest
    stated: bool

    @property
    def holds(self) -> bool:
        return self.computed.is_zero()

    def to_json(self) -> dict:
        return {
            "z_power": self.z_power,
            "constraint": str(self.computed),
            "holds": self.holds,
            "stated": self.stated,
        }


@dataclass
class InvarianceReport:
    layers: list[Polynomial]
    constraints: list[LayerConstraint]

    @property
    def invariant(self) -> bool:
        return all(c.holds for c in self.constraints)

    @property
    def unstated_failures(self) -> list[LayerConstraint]:
        return [c for c in self.constraints if not c.stated and not c.holds]

    def to_json(self) -> dict:
        return {
            "l": [str(l) for l in self.layers],
            "invariant": self.invariant,
            "constraints": [c.to_json() for c in self.constraints],
        }


def dp2_invariance_constraints(a4: Polynomial, w: Polynomial | str) -> InvarianceReport:
    """Compare coefficients in z of a4(x, y, z + w) and a4(x, y, z)."""
    ring = a4.ring
    _require_char2(ring.field)
    if not a4.is_zero() and not a4.is_homogeneous(4):
        raise WrongShape(f"{a4} is not a quartic form")
    w = ring(w)
    if "z" in w.variables() or not w.is_homogeneous(1):
        raise WrongShape(f"w = {w} must be a linear form in x, y")
    z = ring.gen("z")
    diff = a4.subst({"z": z + w}) - a4
    l0, l1, l2, l3, _ = z_layers(a4)
    # char-2 binomial expansion of sum l_i (z + w)^(4-i)
    predicted = {
        3: ring.zero(),
        2: l1 * w,
        1: l1 * w * w,
        0: l0 * w**4 + l1 * w**3 + l2 * w**2 + l3 * w,
    }
    constraints = []
    for j in (3, 2, 1, 0):
        computed = diff.coefficient_in("z", j)
        if computed != predicted[j]:
            raise AssertionError(f"z^{j} layer disagrees with the binomial expansion")
        constraints.append(LayerConstraint(j, computed, predicted[j], stated=(j == 2)))
    if any(e[ring.index("z")] > 3 for e in diff.terms):
        raise AssertionError("z^4 layer of the difference must vanish")
    return InvarianceReport(z_layers(a4), constraints)


def dp2_singular_on_axis(
    a2: Polynomial, a4: Polynomial, w: Polynomial | str | None = None
) -> tuple[FieldElement, ...]:
    """The singular point (0, 0, 1, sqrt(l0)) on the line x = y = 0."""
    X = dp2_surface(a2, a4)
    ring = X.ring
    a2p, a4p = ring(a2), ring(a4)
    if a2p.is_zero() or "z" in a2p.variables():
        raise PreconditionFailed("a2 must be a nonzero quadratic form in x, y")
    l0, l1, *_ = z_layers(a4p)
    if not l1.is_zero():
        raise PreconditionFailed(f"l1 = {l1} is nonzero")
    if w is not None:
        report = dp2_invariance_constraints(a4p, w)
        if not report.invariant:
            raise PreconditionFailed("a4 is not invariant under z -> z + w")
    fld = ring.field
    point = (fld.zero, fld.zero, fld.one, sqrt_char2(l0.constant_coefficient()))
    if not is_singular_at(X, point):
        raise AssertionError("axis point failed the Jacobian check")
    return point


def random_form(ring: PolyRing, names: Sequence[str], degree: int, rng: random.Random) -> Polynomial:
    """Uniformly random homogeneous form of ``degree`` in the given weight-1 variables."""
    sub = PolyRing(ring.field, tuple(names), (1,) * len(names))
    out = ring.zero()
    for e in sub.monomials_of_degree(degree):
        c = rng.randrange(ring.field.q)
        if c:
            out = out + ring.monomial(_lift(ring, names, e), ring.field.element(c))
    return out


def _lift(ring: PolyRing, names: Sequence[str], e: Sequence[int]) -> tuple[int, ...]:
    full = [0] * ring.nvars
    for n, a in zip(names, e):
        full[ring.index(n)] = a
    return tuple(full)


def random_invariant_dp2(fld: FieldDescriptor, rng: random.Random) -> tuple[Polynomial, Polynomial, Polynomial]:
    """(a2, a4, w) with a4 invariant under z -> z + w and l1 = 0."""
    _require_char2(fld)
    ring = dp2_ring(fld)
    x, y, z = ring.gen("x"), ring.gen("y"), ring.gen("z")
    w = ring.zero()
    while w.is_zero():
        w = random_form(ring, ("x", "y"), 1, rng)
    a2 = ring.zero()
    while a2.is_zero():
        a2 = random_form(ring, ("x", "y"), 2, rng)
    l0 = ring.const(fld.element(rng.randrange(fld.q)))
    l2 = random_form(ring, ("x", "y"), 2, rng)
    l3 = l0 * w**3 + l2 * w
    l4 = random_form(ring, ("x", "y"), 4, rng)
    a4 = l0 * z**4 + l2 * z**2 + l3 * z + l4
    return a2, a4, w


# ---------------------------------------------------------------------------
# Invariants of z -> z + x in two variables


@dataclass
class InvariantDegree:
    degree: int
    kernel_dimension: int
    monomial_count: int
    generated: bool

    @property
    def agrees(self) -> bool:
        return self.kernel_dimension == self.monomial_count and self.generated


def invariant_dimension_table(max_degree: int, fld: FieldDescriptor | None = None) -> list[InvariantDegree]:
    fld = fld or field_make(2)
    _require_char2(fld)
    ring = PolyRing(fld, ("x", "z"), (1, 1))
    x, z = ring.gens()
    q = z * z + x * z
    table = []
    for d in range(max_degree + 1):
        basis = ring.monomials_of_degree(d)
        pos = {e: i for i, e in enumerate(basis)}
        rows = []
        for e in basis:
            m = ring.monomial(e)
            img = m.subst({"z": z + x}) - m
            row = [0] * len(basis)
            for te, c in img.terms.items():
                row[pos[te]] = c
            rows.append(row)
        kernel = len(basis) - rank_over_field(fld, rows)
        products = [x ** (d - 2 * b) * q**b for b in range(d // 2 + 1)]
        invariant = all(P.subst({"z": z + x}) == P for P in products)
        prows = [[P.terms.get(e, 0) for e in basis] for P in products]
        independent = rank_over_field(fld, prows) == len(products)
        table.append(InvariantDegree(d, kernel, len(products), invariant and independent))
    return table


def invariant_ring_dimension_check(max_degree: int, fld: FieldDescriptor | None = None) -> bool:
    """Invariants of z -> z + x in degree d are spanned by x^a (z^2 + xz)^b, a + 2b = d."""
    return all(row.agrees for row in invariant_dimension_table(max_degree, fld))


# ---------------------------------------------------------------------------
# Degree-1 surfaces  y^2 + u^3 y + x^3 + (b^2 + u^2 b) x + a6 = 0

DP1_VARS = ("u:1", "v:1", "x:2", "y:3")


def dp1_ring(fld: FieldDescriptor) -> PolyRing:
    return make_ring(fld, DP1_VARS)


def cube_root_of_unity(fld: FieldDescriptor) -> FieldElement:
    """The smallest-representative root of t^2 + t + 1."""
    for c in fld.elements():
        if c * c + c + fld.one == fld.zero:
            return c
    raise NoAlphaInField(f"t^2 + t + 1 has no root in {fld}")


@dataclass(frozen=True)
class DP1Surface:
    ring: PolyRing
    b: Polynomial
    a6: Polynomial
    alpha: FieldElement

    @property
    def field(self) -> FieldDescriptor:
        return self.ring.field

    @property
    def a3(self) -> Polynomial:
        return self.ring.gen("u") ** 3

    @property
    def a4(self) -> Polynomial:
        u = self.ring.gen("u")
        return self.b * self.b + u * u * self.b

    @property
    def F(self) -> Polynomial:
        x, y = self.ring.gen("x"), self.ring.gen("y")
        return y * y + self.a3 * y + x**3 + self.a4 * x + self.a6

    @property
    def hypersurface(self) -> WeightedHypersurface:
        return WeightedHypersurface(self.ring, self.F)

    def fibration(self) -> WeierstrassFibration:
        base = PolyRing(self.field, ("u", "v"), (1, 1))
        return WeierstrassFibration(
            base, self.a3.change_ring(base), self.a4.change_ring(base), self.a6.change_ring(base)
        )

    def to_json(self) -> dict:
        return {"b": str(self.b), "a6": str(self.a6), "field": str(self.field), "alpha": str(self.alpha)}


def dp1_make(b: Polynomial | str, a6: Polynomial | str, fld: FieldDescriptor | None = None) -> DP1Surface:
    if fld is None:
        fld = _field_of(b, a6)
    _require_char2(fld)
    alpha = cube_root_of_unity(fld)
    ring = dp1_ring(fld)
    bp, a6p = ring(b), ring(a6)
    for name, P, d in (("b", bp, 2), ("a6", a6p, 6)):
        if not set(P.variables()) <= {"u", "v"}:
            raise WrongShape(f"{name} must be a form in u, v")
        if not P.is_zero() and not P.is_homogeneous(d):
            raise WrongShape(f"{name} = {P} is not homogeneous of degree {d}")
    return DP1Surface(ring, bp, a6p, alpha)


def random_dp1(fld: FieldDescriptor, rng: random.Random) -> DP1Surface:
    ring = dp1_ring(fld)
    return dp1_make(random_form(ring, ("u", "v"), 2, rng), random_form(ring, ("u", "v"), 6, rng), fld)


def dp1_constraints_check(
    s: Polynomial,
    t: Polynomial,
    a3: Polynomial,
    a4: Polynomial,
    b: Polynomial | None = None,
    alpha: FieldElement | None = None,
) -> bool:
    """a3 = s^3 and t^2 + a3 t + s^6 + a4 s^2 = 0; with b and alpha given,
    also the normalized solution s = u, t = u b + alpha u^3, a4 = b^2 + u^2 b."""
    _require_char2(s.field)
    ok = a3 == s**3 and (t * t + a3 * t + s**6 + a4 * s * s).is_zero()
    if b is not None and alpha is not None:
        u = b.ring.gen("u")
        s0, a30 = u, u**3
        t0 = u * b + (u**3).scale(alpha)
        a40 = b * b + u * u * b
        ok = ok and a30 == s0**3 and (t0 * t0 + a30 * t0 + s0**6 + a40 * s0 * s0).is_zero()
    return ok


def dp1_tau(S: DP1Surface) -> WeightedSelfMap:
    """(u, v, x, y) -> (u, v, x + u^2, y + u x + u b + alpha u^3)."""
    ring = S.ring
    u, v, x, y = ring.gens()
    return wp_make(ring, [u, v, x + u * u, y + u * x + u * S.b + (u**3).scale(S.alpha)])


def bertini_deck(S: DP1Surface) -> WeightedSelfMap:
    """The covering involution y -> y + a3 of the double cover of P(1,1,2)."""
    u, v, x, y = S.ring.gens()
    return wp_make(S.ring, [u, v, x, y + S.a3])


@dataclass
class SingularityVerdict:
    smooth: bool
    uv5_coefficient: FieldElement
    point: tuple[FieldElement, ...] | None = None

    def to_json(self) -> dict:
        return {
            "smooth": self.smooth,
            "uv5_coefficient": str(self.uv5_coefficient),
            "point": point_to_json(self.point) if self.point else None,
        }


def dp1_singular_witness(S: DP1Surface) -> SingularityVerdict:
    """Symbolic decision: a singular point needs u = 0 (y-partial is u^3),
    then x = b(0,1) (x-partial), and the u-partial reduces to coeff(a6, u v^5)."""
    ring = S.ring
    c = S.a6.coefficient({"u": 1, "v": 5})
    if c.rep:
        return SingularityVerdict(True, c)
    fld = S.field
    at = [fld.zero, fld.one, fld.zero, fld.zero]
    b0 = S.b.evaluate(at)
    # on u = 0 the equation reads y^2 + x^3 + b0^2 x + a6(0,1); x = b0 kills x^3 + b0^2 x
    y0 = sqrt_char2(S.a6.evaluate(at))
    point = (fld.zero, fld.one, b0, y0)
    if not is_singular_at(S.hypersurface, point):
        raise AssertionError("constructed witness is not singular")
    return SingularityVerdict(False, c, point)


def singular_points_bruteforce(X: WeightedHypersurface, k: int) -> list[tuple[int, ...]]:
    """Every singular point of a surface in P(1,1,w2,w3) over GF(2^k) lying in a
    chart of one of the first two (weight-1) coordinates, by exhaustive scan."""
    big = field_make(X.field.p, k)
    if not big.contains_subfield(X.field):
        raise ValueError(f"{big} does not contain {X.field}")
    if X.ring.nvars != 4 or X.ring.weights[:2] != (1, 1):
        raise WrongShape("expected coordinates (s0, s1, t0, t1) with s0, s1 of weight 1")
    ring = X.ring.with_field(big)
    F = X.F.change_ring(ring)
    s0, s1, t0, t1 = ring.names
    q = big.q
    elems = np.arange(q, dtype=np.int64)
    found: list[tuple[int, ...]] = []

    # chart s1 = 1: all (s0, t0, t1)
    f = F.subst({s1: ring.one()})
    grid = (elems.reshape(q, 1, 1), np.array(1), elems.reshape(1, q, 1), elems.reshape(1, 1, q))
    on = np.nonzero(f.evaluate_grid(grid) == 0)
    pts = (on[0], np.ones_like(on[0]), on[1], on[2])
    sing = np.ones(len(on[0]), dtype=bool)
    for name in (s0, t0, t1):
        sing &= f.partial(name).evaluate_grid(pts) == 0
    found += [(int(a), 1, int(c), int(d)) for a, c, d in zip(on[0][sing], on[1][sing], on[2][sing])]

    # chart s0 = 1 restricted to s1 = 0
    g = F.subst({s0: ring.one()})
    grid = (np.array(1), np.array(0), elems.reshape(q, 1), elems.reshape(1, q))
    on = np.nonzero(g.evaluate_grid(grid) == 0)
    pts = (np.ones_like(on[0]), np.zeros_like(on[0]), on[0], on[1])
    sing = np.ones(len(on[0]), dtype=bool)
    for name in (s1, t0, t1):
        sing &= g.partial(name).evaluate_grid(pts) == 0
    found += [(1, 0, int(c), int(d)) for c, d in zip(on[0][sing], on[1][sing])]
    return sorted(found)


# ---------------------------------------------------------------------------
# Weierstrass fibrations over P^1 with a1 = a2 = 0


@dataclass(frozen=True)
class WeierstrassFibration:
    ring: PolyRing
    a3: Polynomial
    a4: Polynomial
    a6: Polynomial

    def __post_init__(self) -> None:
        if self.ring.nvars != 2:
            raise WrongShape("base ring must have two variables")
        for name, P, d in (("a3", self.a3, 3), ("a4", self.a4, 4), ("a6", self.a6, 6)):
            if not P.is_zero() and not P.is_homogeneous(d):
                raise WrongShape(f"{name} = {P} is not a form of degree {d}")

    @property
    def field(self) -> FieldDescriptor:
        return self.ring.field

    @classmethod
    def make(cls, fld: FieldDescriptor, a3, a4, a6) -> WeierstrassFibration:
        ring = PolyRing(fld, ("u", "v"), (1, 1))
        return cls(ring, ring(a3), ring(a4), ring(a6))

    def swapped(self) -> WeierstrassFibration:
        u, v = self.ring.gens()
        sw = {"u": v, "v": u}
        return WeierstrassFibration(self.ring, self.a3.subst(sw), self.a4.subst(sw), self.a6.subst(sw))


def b_invariants(a1, a2, a3, a4, a6):
    """Standard b2, b4, b6, b8 of y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6.

    Works on anything with ring arithmetic and integer scalars.
    """
    b2 = a1 * a1 + a2 * 4
    b4 = a4 * 2 + a1 * a3
    b6 = a3 * a3 + a6 * 4
    b8 = a1 * a1 * a6 + a2 * a6 * 4 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    return b2, b4, b6, b8


def weierstrass_discriminant(a1, a2, a3, a4, a6):
    b2, b4, b6, b8 = b_invariants(a1, a2, a3, a4, a6)
    return -(b2 * b2 * b8) - b4 * b4 * b4 * 8 - b6 * b6 * 27 + b2 * b4 * b6 * 9


def c4_invariant(a1, a2, a3, a4, a6):
    b2, b4, _, _ = b_invariants(a1, a2, a3, a4, a6)
    return b2 * b2 - b4 * 24


def discriminant(W: WeierstrassFibration) -> Polynomial:
    """Delta of the fibration as a binary form of degree 12."""
    _require_char2(W.field)
    zero = W.ring.zero()
    # y^2 + a3 y + x^3 + a4 x + a6 = 0 is y^2 + a3 y = x^3 + a4 x + a6 in char 2
    return weierstrass_discriminant(zero, zero, W.a3, W.a4, W.a6)


def _curve_ring(fld: FieldDescriptor) -> PolyRing:
    return PolyRing(fld, ("x", "y"), (1, 1))


@dataclass(frozen=True)
class Curve:
    """y^2 + A3 y + x^3 + A4 x + A6 = 0 over a field of characteristic 2."""

    A3: FieldElement
    A4: FieldElement
    A6: FieldElement

    @property
    def field(self) -> FieldDescriptor:
        return self.A3.field

    def polynomial(self) -> Polynomial:
        R = _curve_ring(self.field)
        x, y = R.gens()
        return y * y + y.scale(self.A3) + x**3 + x.scale(self.A4) + R.const(self.A6)

    @property
    def discriminant(self) -> FieldElement:
        z = self.field.zero
        return weierstrass_discriminant(z, z, self.A3, self.A4, self.A6)

    @property
    def j_invariant(self) -> FieldElement | None:
        d = self.discriminant
        if not d.rep:
            return None
        z = self.field.zero
        c4 = c4_invariant(z, z, self.A3, self.A4, self.A6)
        return c4**3 / d

    def describe(self) -> str:
        return f"y^2 + ({self.A3}) y = x^3 + ({self.A4}) x + ({self.A6})"


def fiber_curve(W: WeierstrassFibration, point: Sequence, fld: FieldDescriptor | None = None) -> Curve:
    fld = fld or W.field
    _require_char2(fld)
    pt = [_elem(fld, c) for c in point]
    ring = W.ring.with_field(fld)
    vals = [P.change_ring(ring).evaluate(pt) for P in (W.a3, W.a4, W.a6)]
    return Curve(*vals)


def two_torsion_count(C: Curve) -> int:
    """Points with 2P = O over the curve's field: the origin plus affine points
    where the tangent is vertical (the y-partial vanishes)."""
    G = C.polynomial()
    q = C.field.q
    elems = np.arange(q, dtype=np.int64)
    grid = (elems.reshape(q, 1), elems.reshape(1, q))
    on = G.evaluate_grid(grid) == 0
    vertical = np.broadcast_to(G.partial("y").evaluate_grid(grid) == 0, on.shape)
    return 1 + int(np.count_nonzero(on & vertical))


@dataclass
class FiberReport:
    point: tuple[FieldElement, ...]
    curve: Curve
    smooth: bool
    j_invariant: FieldElement | None
    two_torsion: int | None
    inconsistent: bool = False
    singular_point: tuple[FieldElement, FieldElement] | None = None
    normal_form: Polynomial | None = None
    cuspidal: bool | None = None

    def to_json(self) -> dict:
        return {
            "point": point_to_json(self.point),
            "curve": self.curve.describe(),
            "smooth": self.smooth,
            "j": None if self.j_invariant is None else str(self.j_invariant),
            "two_torsion": self.two_torsion,
            "inconsistent": self.inconsistent,
            "singular_point": point_to_json(self.singular_point) if self.singular_point else None,
            "normal_form": None if self.normal_form is None else str(self.normal_form),
            "cuspidal": self.cuspidal,
        }


def cusp_normal_form(C: Curve) -> tuple[tuple[FieldElement, FieldElement], Polynomial]:
    """For A3 = 0: the singular point (x0, y0) and the equation after
    x -> x + x0, y -> y + sqrt(x0) x + y0, which is y^2 + x^3."""
    if C.A3.rep:
        raise PreconditionFailed("the fiber is not singular")
    x0 = sqrt_char2(C.A4)
    y0 = sqrt_char2(C.A6)
    R = _curve_ring(C.field)
    x, y = R.gens()
    G = C.polynomial()
    H = G.subst({"x": x + R.const(x0), "y": y + x.scale(sqrt_char2(x0)) + R.const(y0)})
    return (x0, y0), H


def fiber_analysis(W: WeierstrassFibration, point: Sequence, fld: FieldDescriptor | None = None) -> FiberReport:
    fld = fld or W.field
    C = fiber_curve(W, point, fld)
    pt = tuple(_elem(fld, c) for c in point)
    delta = C.discriminant
    smooth = bool(delta.rep)
    inconsistent = smooth != bool(C.A3.rep)
    report = FiberReport(pt, C, smooth, C.j_invariant, None, inconsistent)
    if smooth:
        report.two_torsion = two_torsion_count(C)
    elif not C.A3.rep:
        sp, H = cusp_normal_form(C)
        R = H.ring
        x, y = R.gens()
        report.singular_point = sp
        report.normal_form = H
        report.cuspidal = H == y * y + x**3
    return report


# ---------------------------------------------------------------------------
# Automorphisms of a smooth fiber fixing the origin


@dataclass
class AutomorphismReport:
    curve: Curve
    maps: list[SquareMatrix]
    center_size: int
    center: list[SquareMatrix]
    negation_central: bool
    order_counts: dict[int, int]
    order4_squares: int
    advisory: str | None = None

    @property
    def count(self) -> int:
        return len(self.maps)

    @property
    def quaternion_signature(self) -> bool:
        return self.order_counts.get(4, 0) > 0 and self.order4_squares == 1

    def to_json(self) -> dict:
        return {
            "curve": self.curve.describe(),
            "count": self.count,
            "center_size": self.center_size,
            "center": [describe_substitution(M) for M in self.center],
            "negation_central": self.negation_central,
            "order_counts": {str(k): v for k, v in sorted(self.order_counts.items())},
            "order4_squares": self.order4_squares,
            "advisory": self.advisory,
        }


def substitution_matrix(fld: FieldDescriptor, u: FieldElement, s: FieldElement, t: FieldElement) -> SquareMatrix:
    """(x, y) -> (u^2 x + s^2, u^2 s x + u^3 y + t) acting on columns (x, y, 1)."""
    return SquareMatrix.of(
        fld,
        [
            [u * u, fld.zero, s * s],
            [u * u * s, u**3, t],
            [fld.zero, fld.zero, fld.one],
        ],
    )


def describe_substitution(M: SquareMatrix) -> str:
    f = M.field
    r = [[FieldElement(f, c) for c in row] for row in M.rows]
    return f"(x, y) -> (({r[0][0]}) x + {r[0][2]}, ({r[1][0]}) x + ({r[1][1]}) y + {r[1][2]})"


def _matrix_order(M: SquareMatrix, cutoff: int = 64) -> int:
    P = M
    for n in range(1, cutoff + 1):
        if P.is_identity():
            return n
        P = P * M
    raise AssertionError("automorphism of unexpectedly large order")


def fiber_automorphisms(C: Curve, strict: bool = False) -> AutomorphismReport:
    """All substitutions x -> u^2 x + s^2, y -> u^3 y + u^2 s x + t preserving
    the equation.  Preserving the y-coefficient forces u^3 = 1."""
    fld = C.field
    _require_char2(fld)
    if not C.A3.rep:
        raise PreconditionFailed("the fiber is singular")
    G = C.polynomial()
    R = G.ring
    x, y = R.gens()
    maps = []
    for u in fld.elements():
        if u**3 != fld.one:
            continue
        for s in fld.elements():
            for t in fld.elements():
                img = G.subst({"x": x.scale(u * u) + R.const(s * s), "y": y.scale(u**3) + x.scale(u * u * s) + R.const(t)})
                if img == G.scale(u**6):
                    maps.append(substitution_matrix(fld, u, s, t))
    center = [M for M in maps if all(M * N == N * M for N in maps)]
    orders = {id(M): _matrix_order(M) for M in maps}
    order_counts = dict(Counter(orders.values()))
    squares = {M * M for M in maps if orders[id(M)] == 4}
    negation = substitution_matrix(fld, fld.one, fld.zero, C.A3)
    advisory = None
    if C.j_invariant is not None and not C.j_invariant.rep and len(maps) < 24:
        advisory = f"FieldTooSmall: {len(maps)} of 24 automorphisms are defined over {fld}"
        if strict:
            raise FieldTooSmall(advisory)
    return AutomorphismReport(
        C,
        maps,
        len(center),
        [M for M in center if not M.is_identity()],
        negation in center,
        order_counts,
        len(squares),
        advisory,
    )


def fiber_automorphism_count(C: Curve, strict: bool = False) -> int:
    return fiber_automorphisms(C, strict).count


# ---------------------------------------------------------------------------
# Surface files


def field_from_spec(spec: Any) -> FieldDescriptor:
    """Accepts 4, "GF(4)", "4", or {"p": 2, "k": 2, "modulus": [...]}."""
    if isinstance(spec, FieldDescriptor):
        return spec
    if isinstance(spec, Mapping):
        return field_make(int(spec["p"]), int(spec.get("k", 1)), spec.get("modulus"))
    if isinstance(spec, str):
        s = spec.strip().upper()
        if s.startswith("GF(") and s.endswith(")"):
            s = s[3:-1]
        spec = int(s.replace(" ", ""))
    q = int(spec)
    for p in range(2, q + 1):
        if q % p == 0:
            k, r = 0, q
            while r % p == 0:
                r //= p
                k += 1
            if r != 1:
                raise ValueError(f"{q} is not a prime power")
            return field_make(p, k)
    raise ValueError(f"bad field size {q}")


def load_surface(data: Mapping[str, Any]) -> WeightedHypersurface | DP1Surface:
    """Build a surface from a parsed JSON record: {vars, F, field} for a general
    weighted hypersurface or {b, a6, field} for the degree-1 family."""
    fld = field_from_spec(data.get("field", 2))
    if "b" in data or "a6" in data:
        return dp1_make(data.get("b", "0"), data.get("a6", "0"), fld)
    if "vars" not in data or "F" not in data:
        raise ValueError("surface file needs either {b, a6} or {vars, F}")
    decls = list(data["vars"])
    if "weights" in data:
        decls = [f"{n.split(':')[0]}:{w}" for n, w in zip(decls, data["weights"])]
    ring = make_ring(fld, decls)
    return WeightedHypersurface(ring, ring(data["F"]))
