"""Sparse multivariate polynomials over GF(p^k) with weighted variables."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence, Union

import numpy as np

from .errors import DescriptorMismatch, NotUnivariate, UnknownVariable
from .fields import FieldDescriptor, FieldElement, format_rep

Exps = tuple[int, ...]
Scalar = Union[int, FieldElement]


def _order_key(exps: Exps) -> tuple[int, Exps]:
    # graded lex: total degree first, then lexicographic exponent vector
    return (sum(exps), exps)


@dataclass(frozen=True)
class PolyRing:
    """GF(q)[v_1, ..., v_n] with positive integer weights on the variables."""

    field: FieldDescriptor
    names: tuple[str, ...]
    weights: tuple[int, ...] = ()

    def __post_init__(self):
        if not self.weights:
            object.__setattr__(self, "weights", (1,) * len(self.names))
        if len(self.weights) != len(self.names):
            raise ValueError("one weight per variable")
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")
        if any(w < 1 for w in self.weights):
            raise ValueError("weights must be positive")

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise UnknownVariable(name) from None

    def weight(self, name: str) -> int:
        return self.weights[self.index(name)]

    def gen(self, name: str) -> Polynomial:
        i = self.index(name)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self) -> tuple[Polynomial, ...]:
        return tuple(self.gen(n) for n in self.names)

    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def one(self) -> Polynomial:
        return self.const(1)

    def const(self, c: Scalar) -> Polynomial:
        rep = self._scalar_rep(c)
        return Polynomial(self, {(0,) * self.nvars: rep} if rep else {})

    def monomial(self, exps: Sequence[int], coeff: Scalar = 1) -> Polynomial:
        rep = self._scalar_rep(coeff)
        return Polynomial(self, {tuple(exps): rep} if rep else {})

    def _scalar_rep(self, c: Scalar) -> int:
        if isinstance(c, FieldElement):
            if c.field != self.field:
                raise DescriptorMismatch(f"{c.field} vs {self.field}")
            return c.rep
        return c % self.field.p

    def __call__(self, value) -> Polynomial:
        if isinstance(value, Polynomial):
            if value.ring != self:
                return value.change_ring(self)
            return value
        if isinstance(value, str):
            from .parse import parse_polynomial

            return parse_polynomial(value, self)
        return self.const(value)

    def parse(self, text: str) -> Polynomial:
        from .parse import parse_polynomial

        return parse_polynomial(text, self)

    def with_field(self, field: FieldDescriptor) -> PolyRing:
        return PolyRing(field, self.names, self.weights)

    def monomials_of_degree(self, d: int, weighted: bool = True) -> list[Exps]:
        """Exponent vectors of (weighted) degree d, in descending term order."""
        w = self.weights if weighted else (1,) * self.nvars
        out: list[Exps] = []

        def rec(i: int, left: int, acc: list[int]):
            if i == self.nvars - 1:
                if left % w[i] == 0:
                    out.append(tuple(acc + [left // w[i]]))
                return
            for e in range(left // w[i] + 1):
                rec(i + 1, left - e * w[i], acc + [e])

        if self.nvars == 0:
            return [()] if d == 0 else []
        rec(0, d, [])
        return sorted(out, key=_order_key, reverse=True)

    def __repr__(self) -> str:
        vs = ",".join(
            n if w == 1 else f"{n}:{w}" for n, w in zip(self.names, self.weights)
        )
        return f"{self.field}[{vs}]"


class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps exponent tuples to reps."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping[Exps, int]):
        self.ring = ring
        self.terms = {e: c for e, c in terms.items() if c}
        self._hash = None

    # -- basic queries ------------------------------------------------------

    @property
    def field(self) -> FieldDescriptor:
        return self.ring.field

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_coefficient(self) -> FieldElement:
        return FieldElement(self.field, self.terms.get((0,) * self.ring.nvars, 0))

    def sorted_terms(self) -> list[tuple[Exps, int]]:
        return sorted(self.terms.items(), key=lambda t: _order_key(t[0]), reverse=True)

    def leading_term(self) -> tuple[Exps, FieldElement]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=_order_key)
        return e, FieldElement(self.field, self.terms[e])

    def leading_coefficient(self) -> FieldElement:
        return self.leading_term()[1]

    def degree(self) -> int:
        """Total (unweighted) degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, name: str) -> int:
        i = self.ring.index(name)
        return max((e[i] for e in self.terms), default=-1)

    def weighted_degree(self, e: Exps) -> int:
        return sum(a * w for a, w in zip(e, self.ring.weights))

    def homogeneous_degree(self) -> int | None:
        """The common weighted degree of all terms, or None if mixed."""
        degs = {self.weighted_degree(e) for e in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return None

    def is_homogeneous(self, degree: int | None = None) -> bool:
        if self.is_zero():
            return True
        d = self.homogeneous_degree()
        return d is not None and (degree is None or d == degree)

    def variables(self) -> list[str]:
        used = set()
        for e in self.terms:
            used.update(i for i, a in enumerate(e) if a)
        return [self.ring.names[i] for i in sorted(used)]

    def coefficient(self, exps: Sequence[int] | Mapping[str, int]) -> FieldElement:
        if isinstance(exps, Mapping):
            e = [0] * self.ring.nvars
            for name, a in exps.items():
                e[self.ring.index(name)] = a
            exps = e
        return FieldElement(self.field, self.terms.get(tuple(exps), 0))

    def coefficient_in(self, name: str, power: int) -> Polynomial:
        """Coefficient of ``name**power`` as a polynomial in the other variables."""
        i = self.ring.index(name)
        out = {}
        for e, c in self.terms.items():
            if e[i] == power:
                out[e[:i] + (0,) + e[i + 1 :]] = c
        return Polynomial(self.ring, out)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise DescriptorMismatch(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, FieldElement)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        f = self.field
        out = dict(self.terms)
        for e, c in o.terms.items():
            out[e] = f.add(out.get(e, 0), c)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        f = self.field
        return Polynomial(self.ring, {e: f.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        f = self.field
        out: dict[Exps, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = f.add(out.get(e, 0), f.mul(c1, c2))
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> Polynomial:
        rep = self.ring._scalar_rep(c)
        f = self.field
        return Polynomial(self.ring, {e: f.mul(v, rep) for e, v in self.terms.items()})

    def __pow__(self, n: int) -> Polynomial:
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, FieldElement)):
            return self.terms == self.ring.const(other).terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    # -- calculus and substitution --------------------------------------------

    def partial(self, name: str) -> Polynomial:
        """Formal derivative; the exponent is reduced mod p before multiplying."""
        i = self.ring.index(name)
        f = self.field
        out = {}
        for e, c in self.terms.items():
            a = e[i]
            if a % f.p == 0:
                continue
            ne = e[:i] + (a - 1,) + e[i + 1 :]
            out[ne] = f.add(out.get(ne, 0), f.mul(c, a % f.p))
        return Polynomial(self.ring, out)

    def subst(self, assignment: Mapping[str, Polynomial | Scalar], ring: PolyRing | None = None) -> Polynomial:
        """Simultaneous substitution of every variable.

        Variables missing from ``assignment`` are kept (mapped to the
        generator of the same name in the target ring).
        """
        for name in assignment:
            self.ring.index(name)
        images = []
        target = ring
        for name in self.ring.names:
            img = assignment.get(name)
            if isinstance(img, Polynomial):
                if target is None:
                    target = img.ring
                elif img.ring != target:
                    raise DescriptorMismatch("substituted polynomials live in different rings")
            images.append(img)
        if target is None:
            target = self.ring
        imgs: list[Polynomial] = []
        for name, img in zip(self.ring.names, images):
            if img is None:
                imgs.append(target.gen(name))
            elif isinstance(img, Polynomial):
                imgs.append(img)
            else:
                imgs.append(target.const(img))
        cache: list[dict[int, Polynomial]] = [dict() for _ in imgs]

        def power(i: int, a: int) -> Polynomial:
            if a not in cache[i]:
                cache[i][a] = imgs[i] ** a
            return cache[i][a]

        result = target.zero()
        f = target.field
        for e, c in self.terms.items():
            term = target.const(FieldElement(f, c))
            for i, a in enumerate(e):
                if a:
                    term = term * power(i, a)
            result = result + term
        return result

    def evaluate(self, point: Mapping[str, Scalar] | Sequence[Scalar]) -> FieldElement:
        f = self.field
        if isinstance(point, Mapping):
            vals = [point[n] for n in self.ring.names]
        else:
            vals = list(point)
            if len(vals) != self.ring.nvars:
                raise ValueError("point has the wrong number of coordinates")
        reps = [self.ring._scalar_rep(v) for v in vals]
        acc = 0
        for e, c in self.terms.items():
            t = c
            for r, a in zip(reps, e):
                if a:
                    t = f.mul(t, f.pow(r, a))
            acc = f.add(acc, t)
        return FieldElement(f, acc)

    def evaluate_grid(self, arrays: Mapping[str, np.ndarray] | Sequence[np.ndarray]) -> np.ndarray:
        """Vectorized evaluation on arrays of representatives (q <= 256)."""
        f = self.field
        add, mul = f.add_table, f.mul_table
        if isinstance(arrays, Mapping):
            arrs = [np.asarray(arrays[n]) for n in self.ring.names]
        else:
            arrs = [np.asarray(a) for a in arrays]
        shape = np.broadcast(*arrs).shape if arrs else ()
        powers: list[dict[int, np.ndarray]] = [{1: a} for a in arrs]

        def power(i: int, a: int) -> np.ndarray:
            if a not in powers[i]:
                half = power(i, a // 2)
                sq = mul[half, half]
                powers[i][a] = mul[sq, arrs[i]] if a % 2 else sq
            return powers[i][a]

        acc = np.zeros(shape, dtype=np.int64)
        for e, c in self.terms.items():
            t = np.full(shape, c, dtype=np.int64)
            for i, a in enumerate(e):
                if a:
                    t = mul[t, power(i, a)]
            acc = add[acc, t]
        return acc

    def change_ring(self, ring: PolyRing, embedding: Sequence[int] | None = None) -> Polynomial:
        """Move to ``ring``: variables are matched by name, coefficients are
        carried along ``embedding`` (default: the canonical subfield map)."""
        if embedding is None and ring.field != self.field:
            embedding = ring.field.embedding(self.field)
        used = set(self.variables())
        idx = [ring.index(n) if (n in used or n in ring.names) else -1 for n in self.ring.names]
        out = {}
        for e, c in self.terms.items():
            ne = [0] * ring.nvars
            for j, a in zip(idx, e):
                if a:
                    ne[j] = a
            out[tuple(ne)] = embedding[c] if embedding is not None else c
        return Polynomial(ring, out)

    # -- univariate algebra -------------------------------------------------

    def _univariate_index(self) -> int:
        if self.ring.nvars == 1:
            return 0
        raise NotUnivariate(f"{self.ring} is not univariate")

    def _dense(self) -> list[int]:
        self._univariate_index()
        d = self.degree()
        out = [0] * (d + 1)
        for e, c in self.terms.items():
            out[e[0]] = c
        return out

    def _from_dense(self, coeffs: Sequence[int]) -> Polynomial:
        return Polynomial(self.ring, {(i,): c for i, c in enumerate(coeffs) if c})

    def divmod(self, other: Polynomial) -> tuple[Polynomial, Polynomial]:
        f = self.field
        a = self._dense()
        b = other._dense()
        if not b:
            raise ZeroDivisionError("division by zero polynomial")
        inv = f.inv(b[-1])
        quot = [0] * max(len(a) - len(b) + 1, 0)
        while len(a) >= len(b) and a:
            shift = len(a) - len(b)
            c = f.mul(a[-1], inv)
            quot[shift] = c
            for i, bi in enumerate(b):
                a[shift + i] = f.sub(a[shift + i], f.mul(c, bi))
            while a and a[-1] == 0:
                a.pop()
        return self._from_dense(quot), self._from_dense(a)

    def __floordiv__(self, other: Polynomial) -> Polynomial:
        return self.divmod(other)[0]

    def __mod__(self, other: Polynomial) -> Polynomial:
        return self.divmod(other)[1]

    def monic(self) -> Polynomial:
        if self.is_zero():
            return self
        return self.scale(self.leading_coefficient().inverse())

    def gcd(self, other: Polynomial) -> Polynomial:
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def divides(self, other: Polynomial) -> bool:
        return (other % self).is_zero()

    # -- printing -------------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        f = self.field
        parts = []
        for e, c in self.sorted_terms():
            mon = "*".join(
                n if a == 1 else f"{n}^{a}" for n, a in zip(self.ring.names, e) if a
            )
            cs = format_rep(f, c)
            if f.k > 1 and " + " in cs:
                cs = f"({cs})"
            if not mon:
                parts.append(cs)
            elif c == 1:
                parts.append(mon)
            else:
                parts.append(f"{cs}*{mon}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"Polynomial({self})"


def univariate_squarefree(f: Polynomial) -> bool:
    """gcd(f, f') is constant and f' != 0."""
    if f.ring.nvars != 1:
        raise NotUnivariate(f"{f.ring} is not univariate")
    if f.is_zero():
        raise ValueError("zero polynomial")
    name = f.ring.names[0]
    df = f.partial(name)
    if df.is_zero():
        return False
    return f.gcd(df).is_constant()


def poly_subst(f: Polynomial, assignment: Mapping[str, Polynomial | Scalar]) -> Polynomial:
    return f.subst(assignment)


def poly_partial(f: Polynomial, v: str) -> Polynomial:
    return f.partial(v)


def compose_assignments(
    g: Mapping[str, Polynomial], h: Mapping[str, Polynomial]
) -> dict[str, Polynomial]:
    """The assignment ``v -> g[v](h)``, i.e. substitute g first, then h."""
    return {v: img.subst(h) for v, img in g.items()}


class RationalFunction:
    """A fraction of polynomials with monic denominator.

    Univariate fractions are fully reduced (numerator and denominator
    coprime), which makes equality representational.  Multivariate ones
    only get the denominator normalized.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial | None = None):
        if den is None:
            den = num.ring.one()
        if num.ring != den.ring:
            raise DescriptorMismatch("numerator and denominator rings differ")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            den = num.ring.one()
        elif num.ring.nvars == 1:
            g = num.gcd(den)
            if not g.is_constant():
                num, den = num // g, den // g
        lc = den.leading_coefficient()
        if lc != 1:
            inv = lc.inverse()
            num, den = num.scale(inv), den.scale(inv)
        self.num = num
        self.den = den

    @property
    def ring(self) -> PolyRing:
        return self.num.ring

    def _coerce(self, other) -> RationalFunction:
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, Polynomial):
            return RationalFunction(other)
        if isinstance(other, (int, FieldElement)):
            return RationalFunction(self.ring.const(other))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RationalFunction(self.num * o.den, self.den * o.num)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self.ring.nvars == 1:
            return self.num == o.num and self.den == o.den
        return (self.num * o.den - o.num * self.den).is_zero()

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __str__(self) -> str:
        if self.den == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"

    __repr__ = __str__


def binary_forms(ring: PolyRing, degree: int) -> Iterable[Exps]:
    """Monomials of a given degree in a two-variable ring, t0-degree descending."""
    if ring.nvars != 2:
        raise ValueError("binary forms need exactly two variables")
    for a in range(degree, -1, -1):
        yield (a, degree - a)
