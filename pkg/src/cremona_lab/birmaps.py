"""Finite-order birational self-maps.

Composition is always ``(g1 * g2)(z) = g1(g2(z))``.  For de Jonquieres maps
that makes the fiber matrix of the composite ``M1(mu2(x)) . M2(x)`` and the
base ``mu1 o mu2``.  Equality is decided on normalized representatives,
never by sampling points.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, gcd
from typing import Mapping, Sequence

from .algebra import (
    FieldDescriptor,
    FieldElement,
    Polynomial,
    PolyRing,
    RationalFunction,
    WrongCharacteristic,
    univariate_squarefree,
)
from .projlin import DEFAULT_CUTOFF, SquareMatrix


class DegenerateFiber(ValueError):
    pass


class NotSquarefree(ValueError):
    pass


class WrongBase(ValueError):
    pass


class NotHomogeneous(ValueError):
    pass


class NonInvertibleLinearPart(ValueError):
    pass


class NotBinaryForm(ValueError):
    pass


# ---------------------------------------------------------------------------
# de Jonquieres maps (x, y) -> (mu(x), M(x) . y)


def _mobius_normalize(f: FieldDescriptor, m: Sequence[int]) -> tuple[int, int, int, int]:
    lead = next(c for c in m if c)
    inv = f.inv(lead)
    return tuple(f.mul(c, inv) for c in m)  # type: ignore[return-value]


def _mobius_mul(f: FieldDescriptor, m1: Sequence[int], m2: Sequence[int]) -> tuple[int, int, int, int]:
    a1, b1, c1, d1 = m1
    a2, b2, c2, d2 = m2
    add, mul = f.add, f.mul
    return (
        add(mul(a1, a2), mul(b1, c2)),
        add(mul(a1, b2), mul(b1, d2)),
        add(mul(c1, a2), mul(d1, c2)),
        add(mul(c1, b2), mul(d1, d2)),
    )


def _mobius_adjugate(f: FieldDescriptor, m: Sequence[int]) -> tuple[int, int, int, int]:
    a, b, c, d = m
    return (d, f.neg(b), f.neg(c), a)


@dataclass(frozen=True)
class DeJonquieresMap:
    """``(x, y) -> ((alpha x + beta)/(gamma x + delta), (a y + b)/(c y + d))``.

    ``base`` holds (alpha, beta, gamma, delta) as field representatives and
    ``fiber`` holds (a, b, c, d) as polynomials in x; both are stored
    normalized (first nonzero entry monic, fiber entries coprime).
    """

    ring: PolyRing
    base: tuple[int, int, int, int]
    fiber: tuple[Polynomial, Polynomial, Polynomial, Polynomial]
    metadata: Mapping[str, object] = field(default_factory=dict, compare=False, hash=False)

    @classmethod
    def make(cls, ring: PolyRing, base: Sequence, fiber: Sequence, metadata=None) -> DeJonquieresMap:
        f = ring.field
        base_reps = [b.rep if isinstance(b, FieldElement) else b % f.p for b in base]
        a, b, c, d = base_reps
        if f.sub(f.mul(a, d), f.mul(b, c)) == 0:
            raise ValueError("base Mobius matrix is singular")
        entries = [e if isinstance(e, RationalFunction) else RationalFunction(ring(e)) for e in fiber]
        return cls(ring, _mobius_normalize(f, base_reps), _normalize_fiber(entries), dict(metadata or {}))

    @classmethod
    def identity(cls, ring: PolyRing) -> DeJonquieresMap:
        one, zero = ring.one(), ring.zero()
        return cls.make(ring, (1, 0, 0, 1), (one, zero, zero, one))

    @property
    def field(self) -> FieldDescriptor:
        return self.ring.field

    def fiber_determinant(self) -> Polynomial:
        a, b, c, d = self.fiber
        return a * d - b * c

    def __mul__(self, other: DeJonquieresMap) -> DeJonquieresMap:
        return dj_compose(self, other)

    def __pow__(self, n: int) -> DeJonquieresMap:
        if n < 0:
            return self.inverse() ** (-n)
        result = DeJonquieresMap.identity(self.ring)
        for _ in range(n):
            result = result * self
        return result

    def inverse(self) -> DeJonquieresMap:
        f = self.field
        inv_base = _mobius_adjugate(f, self.base)
        a, b, c, d = self.fiber
        adj = (d, -b, -c, a)
        return DeJonquieresMap.make(self.ring, inv_base, _fiber_after_base(adj, inv_base, self.ring))

    def is_identity(self) -> bool:
        f = self.field
        base_ok = self.base[1] == 0 and self.base[2] == 0 and self.base[0] == self.base[3]
        a, b, c, d = self.fiber
        return base_ok and b.is_zero() and c.is_zero() and a == d

    def is_antidiagonal(self) -> bool:
        a, b, c, d = self.fiber
        return a.is_zero() and d.is_zero()

    def fiber_ratio(self) -> RationalFunction:
        """For an antidiagonal fiber y -> b/(c y), the rational function b/c."""
        if not self.is_antidiagonal():
            raise ValueError("fiber is not antidiagonal")
        _, b, c, _ = self.fiber
        return RationalFunction(b, c)

    def describe(self) -> str:
        x = self.ring.names[0]
        al, be, ga, de = (str(FieldElement(self.field, v)) for v in self.base)
        a, b, c, d = self.fiber
        return f"({x} -> ({al}*{x} + {be})/({ga}*{x} + {de}), y -> (({a})*y + ({b}))/(({c})*y + ({d})))"

    def to_json(self) -> dict:
        return {
            "base": [str(FieldElement(self.field, v)) for v in self.base],
            "fiber": [str(e) for e in self.fiber],
        }


def _normalize_fiber(entries: Sequence[RationalFunction]) -> tuple[Polynomial, ...]:
    ring = entries[0].ring
    lcm = ring.one()
    for e in entries:
        g = lcm.gcd(e.den)
        lcm = (lcm * e.den) // g
    polys = [e.num * (lcm // e.den) for e in entries]
    g = ring.zero()
    for p in polys:
        g = g.gcd(p) if not g.is_zero() else p.monic()
    if g.is_zero():
        raise DegenerateFiber("all fiber entries vanish")
    polys = [p // g for p in polys]
    lead = next(p for p in polys if not p.is_zero()).leading_coefficient()
    polys = [p.scale(lead.inverse()) for p in polys]
    a, b, c, d = polys
    if (a * d - b * c).is_zero():
        raise DegenerateFiber("fiber determinant vanishes identically")
    return tuple(polys)


def _fiber_after_base(
    fiber: Sequence[Polynomial], base: Sequence[int], ring: PolyRing
) -> list[Polynomial]:
    """Entries of M(mu(x)) with the common denominator (gamma x + delta)^D cleared."""
    f = ring.field
    x = ring.gen(ring.names[0])
    al, be, ga, de = (FieldElement(f, v) for v in base)
    num = x.scale(al) + be
    den = x.scale(ga) + de
    D = max(e.degree() for e in fiber)
    D = max(D, 0)
    num_pows = [ring.one()]
    den_pows = [ring.one()]
    for _ in range(D):
        num_pows.append(num_pows[-1] * num)
        den_pows.append(den_pows[-1] * den)
    out = []
    for e in fiber:
        acc = ring.zero()
        for (i,), c in e.terms.items():
            acc = acc + (num_pows[i] * den_pows[D - i]).scale(FieldElement(f, c))
        out.append(acc)
    return out


def _matmul2(m1: Sequence[Polynomial], m2: Sequence[Polynomial]) -> list[Polynomial]:
    a1, b1, c1, d1 = m1
    a2, b2, c2, d2 = m2
    return [a1 * a2 + b1 * c2, a1 * b2 + b1 * d2, c1 * a2 + d1 * c2, c1 * b2 + d1 * d2]


def dj_compose(g1: DeJonquieresMap, g2: DeJonquieresMap) -> DeJonquieresMap:
    """``g1 o g2``: base mu1 o mu2, fiber M1(mu2(x)) . M2(x)."""
    if g1.ring != g2.ring:
        raise ValueError("maps live over different rings")
    f = g1.field
    base = _mobius_mul(f, g1.base, g2.base)
    m1 = _fiber_after_base(g1.fiber, g2.base, g1.ring)
    prod = _matmul2(m1, g2.fiber)
    if (prod[0] * prod[3] - prod[1] * prod[2]).is_zero():
        raise DegenerateFiber("composite fiber determinant is zero")
    return DeJonquieresMap.make(g1.ring, base, prod)


def dj_order(g: DeJonquieresMap, cutoff: int = DEFAULT_CUTOFF) -> int | None:
    P = g
    for n in range(1, cutoff + 1):
        if P.is_identity():
            return n
        P = P * g
    return None


def dj_example_fiber(P: Polynomial) -> tuple[Polynomial, Polynomial, Polynomial, Polynomial]:
    """Fiber entries a = d = x P(x), b = P(x) P(x+1), c = x (x+1) over GF(2)."""
    ring = P.ring
    if ring.field.p != 2:
        raise WrongCharacteristic("the construction lives in characteristic 2")
    if P.is_zero() or not univariate_squarefree(P):
        raise NotSquarefree(f"{P} has a repeated factor")
    x = ring.gen(ring.names[0])
    P1 = P.subst({ring.names[0]: x + 1})
    return x * P, P * P1, x * (x + 1), x * P


def dj_example_degenerate(P: Polynomial) -> bool:
    """ad - bc = xP (Q(x) + Q(x+1)) with Q = xP, so the fiber collapses
    exactly when x P(x) is invariant under x -> x+1 (e.g. P = x + 1)."""
    a, b, c, d = dj_example_fiber(P)
    return (a * d - b * c).is_zero()


def dj_example_build(P: Polynomial) -> DeJonquieresMap:
    """The order-4 map over GF(2) with base x -> x+1 built from squarefree P.

    Raises DegenerateFiber when ad - bc vanishes (see dj_example_degenerate).
    """
    a, b, c, d = dj_example_fiber(P)
    return DeJonquieresMap.make(
        P.ring, (1, 1, 0, 1), (a, b, c, d), metadata={"P": str(P), "m": b.degree()}
    )


def fiber_identities(a: Polynomial, b: Polynomial, c: Polynomial) -> bool:
    """a(x)a(x+1) + b(x)c(x+1) == 0 and a(x)a(x+1) + b(x+1)c(x) == 0."""
    ring = a.ring
    x = ring.gen(ring.names[0])
    shift = {ring.names[0]: x + 1}
    a1, b1, c1 = (e.subst(shift) for e in (a, b, c))
    return (a * a1 + b * c1).is_zero() and (a * a1 + b1 * c).is_zero()


def dj_identities_check(g: DeJonquieresMap) -> bool:
    """fiber_identities on the stored (normalized) fiber of a map with base x -> x+1."""
    f = g.field
    if g.base != (1, 1, 0, 1) and g.base != _mobius_normalize(f, (1, 1, 0, 1)):
        raise WrongBase("identities are stated for the base x -> x+1")
    a, b, c, _ = g.fiber
    return fiber_identities(a, b, c)


def dj_involution(R: RationalFunction) -> DeJonquieresMap:
    """(x, y) -> (x, R(x)/y)."""
    ring = R.ring
    zero = ring.zero()
    return DeJonquieresMap.make(ring, (1, 0, 0, 1), (zero, R.num, R.den, zero))


def dj_fiber_scaling(lam: RationalFunction) -> DeJonquieresMap:
    """(x, y) -> (x, lam(x) y)."""
    ring = lam.ring
    zero = ring.zero()
    return DeJonquieresMap.make(ring, (1, 0, 0, 1), (lam.num, zero, zero, lam.den))


def dj_conjugate(g: DeJonquieresMap, phi: DeJonquieresMap) -> DeJonquieresMap:
    """phi o g o phi^-1 (g written in the coordinates produced by phi)."""
    return phi * g * phi.inverse()


# ---------------------------------------------------------------------------
# Weighted projective self-maps


@dataclass(frozen=True)
class WeightedSelfMap:
    """Graded self-map ``t_i -> F_i`` with F_i weighted-homogeneous of degree w_i."""

    ring: PolyRing
    components: tuple[Polynomial, ...]

    @property
    def weights(self) -> tuple[int, ...]:
        return self.ring.weights

    def as_assignment(self) -> dict[str, Polynomial]:
        return dict(zip(self.ring.names, self.components))

    def __mul__(self, other: WeightedSelfMap) -> WeightedSelfMap:
        return wp_compose(self, other)

    def __pow__(self, n: int) -> WeightedSelfMap:
        result = wp_identity(self.ring)
        for _ in range(n):
            result = result * self
        return result

    def __call__(self, F: Polynomial) -> Polynomial:
        """Pullback ``F o g``."""
        return F.subst(self.as_assignment())

    def scaling_factor(self) -> FieldElement | None:
        """lambda with F_i = lambda^{w_i} t_i for all i, if one exists in the field."""
        return _weighted_scalar(self)

    def is_identity(self) -> bool:
        return self.scaling_factor() is not None

    def describe(self) -> str:
        return "(" + ", ".join(f"{n} -> {c}" for n, c in zip(self.ring.names, self.components)) + ")"

    def to_json(self) -> dict:
        return {n: str(c) for n, c in zip(self.ring.names, self.components)}


def wp_identity(ring: PolyRing) -> WeightedSelfMap:
    return WeightedSelfMap(ring, ring.gens())


def wp_make(ring: PolyRing, components: Sequence[Polynomial | str]) -> WeightedSelfMap:
    comps = tuple(ring(c) for c in components)
    if len(comps) != ring.nvars:
        raise ValueError("one component per variable")
    for name, w, F in zip(ring.names, ring.weights, comps):
        if F.is_zero() or not F.is_homogeneous(w):
            raise NotHomogeneous(f"component for {name} is not homogeneous of degree {w}: {F}")
    _check_graded_invertible(ring, comps)
    return WeightedSelfMap(ring, comps)


def _check_graded_invertible(ring: PolyRing, comps: Sequence[Polynomial]) -> None:
    # block-triangular by weight: each same-weight linear block must be invertible
    for w in sorted(set(ring.weights)):
        idx = [i for i, wi in enumerate(ring.weights) if wi == w]
        rows = []
        for i in idx:
            row = []
            for j in idx:
                e = tuple(int(k == j) for k in range(ring.nvars))
                row.append(comps[i].coefficient(e).rep)
            rows.append(row)
        if not SquareMatrix.of(ring.field, rows).is_invertible():
            raise NonInvertibleLinearPart(f"weight-{w} linear block is singular")


def wp_compose(g1: WeightedSelfMap, g2: WeightedSelfMap) -> WeightedSelfMap:
    """``g1 o g2``: components F1_i(F2_0, ..., F2_n)."""
    if g1.ring != g2.ring:
        raise ValueError("maps live over different rings")
    sub = g2.as_assignment()
    return WeightedSelfMap(g1.ring, tuple(F.subst(sub) for F in g1.components))


def _weighted_scalar(g: WeightedSelfMap) -> FieldElement | None:
    ring = g.ring
    f = ring.field
    lead = g.components[0]
    e0 = tuple(int(k == 0) for k in range(ring.nvars))
    if set(lead.terms) != {e0}:
        return None
    c = lead.coefficient(e0)
    w0 = ring.weights[0]
    for lam in f.elements():
        if not lam or lam**w0 != c:
            continue
        if all(
            F == ring.gen(n).scale(lam**w)
            for n, w, F in zip(ring.names, ring.weights, g.components)
        ):
            return lam
    return None


def wp_order(g: WeightedSelfMap, cutoff: int = DEFAULT_CUTOFF) -> int | None:
    P = g
    for n in range(1, cutoff + 1):
        if P.is_identity():
            return n
        P = P * g
    return None


# ---------------------------------------------------------------------------
# The norm sum  sum_{j=0}^{p-1} f(t0 + j t1, t1)


def _check_binary_form(f: Polynomial) -> None:
    if f.ring.nvars != 2 or not f.is_homogeneous() or f.ring.weights != (1, 1):
        raise NotBinaryForm(f"{f} is not a binary form in two weight-1 variables")


def norm_sum(f: Polynomial, p: int | None = None) -> Polynomial:
    """Sum over j in GF(p) of f(t0 + j t1, t1), by direct substitution."""
    _check_binary_form(f)
    if p is not None and p != f.field.p:
        raise WrongCharacteristic(f"form lives in characteristic {f.field.p}, not {p}")
    ring = f.ring
    t0, t1 = ring.gens()
    total = ring.zero()
    for j in range(f.field.p):
        total = total + f.subst({ring.names[0]: t0 + t1.scale(j)})
    return total


def norm_sum_oracle(f: Polynomial) -> Polynomial:
    """Same sum by binomial expansion with power sums reduced mod p.

    t0^a t1^b  ->  sum_i C(a, i) (sum_j j^i) t0^(a-i) t1^(b+i).
    """
    _check_binary_form(f)
    ring = f.ring
    fld = f.field
    p = fld.p
    out: dict[tuple[int, int], int] = {}
    for (a, b), c in f.terms.items():
        for i in range(a + 1):
            s = sum(pow(j, i, p) if (j or i) else 1 for j in range(p)) % p
            coeff = comb(a, i) * s % p
            if coeff:
                e = (a - i, b + i)
                out[e] = fld.add(out.get(e, 0), fld.mul(c, coeff))
    return Polynomial(ring, out)


def norm_sum_by_differences(f: Polynomial) -> Polynomial:
    """(T - 1)^(p-1) applied to f, where T is t0 -> t0 + t1."""
    _check_binary_form(f)
    ring = f.ring
    t0, t1 = ring.gens()
    g = f
    for _ in range(f.field.p - 1):
        g = g.subst({ring.names[0]: t0 + t1}) - g
    return g


def p11n_map(
    fld: FieldDescriptor,
    n: int,
    linear: Sequence[int] = (1, 1, 0, 1),
    e: int = 1,
    f_n: Polynomial | str | None = None,
    names: Sequence[str] = ("t0", "t1", "t2"),
) -> WeightedSelfMap:
    """(t0, t1, t2) -> (a t0 + b t1, c t0 + d t1, e t2 + f_n(t0, t1)) on P(1,1,n)."""
    ring = PolyRing(fld, tuple(names), (1, 1, n))
    t0, t1, t2 = ring.gens()
    a, b, c, d = linear
    fn = ring.zero() if f_n is None else ring(f_n)
    return wp_make(
        ring,
        [t0.scale(a) + t1.scale(b), t0.scale(c) + t1.scale(d), t2.scale(e) + fn],
    )


# ---------------------------------------------------------------------------
# Maps of P^1 x P^1


@dataclass(frozen=True)
class ProductMap:
    """(x, y) -> (phi(x), psi(y)), or (phi(y), psi(x)) when ``swap``."""

    field: FieldDescriptor
    phi: tuple[int, int, int, int]
    psi: tuple[int, int, int, int]
    swap: bool = False

    @classmethod
    def make(cls, fld: FieldDescriptor, phi: Sequence[int], psi: Sequence[int], swap: bool = False) -> ProductMap:
        for m in (phi, psi):
            a, b, c, d = (v % fld.p if isinstance(v, int) else v.rep for v in m)
            if fld.sub(fld.mul(a, d), fld.mul(b, c)) == 0:
                raise ValueError("Mobius factor is singular")
        norm = lambda m: _mobius_normalize(fld, [v % fld.p if isinstance(v, int) else v.rep for v in m])
        return cls(fld, norm(phi), norm(psi), swap)

    def __mul__(self, other: ProductMap) -> ProductMap:
        f = self.field
        first = other.psi if self.swap else other.phi
        second = other.phi if self.swap else other.psi
        return ProductMap(
            f,
            _mobius_normalize(f, _mobius_mul(f, self.phi, first)),
            _mobius_normalize(f, _mobius_mul(f, self.psi, second)),
            self.swap != other.swap,
        )

    def is_identity(self) -> bool:
        return not self.swap and self.phi == (1, 0, 0, 1) and self.psi == (1, 0, 0, 1)

    def describe(self) -> str:
        def mob(m, v):
            a, b, c, d = (str(FieldElement(self.field, t)) for t in m)
            return f"({a}*{v} + {b})/({c}*{v} + {d})"

        if self.swap:
            return f"(x, y) -> ({mob(self.phi, 'y')}, {mob(self.psi, 'x')})"
        return f"(x, y) -> ({mob(self.phi, 'x')}, {mob(self.psi, 'y')})"


def product_map_order(g: ProductMap, cutoff: int = DEFAULT_CUTOFF) -> int | None:
    P = g
    for n in range(1, cutoff + 1):
        if P.is_identity():
            return n
        P = P * g
    return None
