"""Finite fields GF(p^k) with q = p^k <= 2^16.

Elements are stored as integers: the base-p digits of the integer are the
coefficients of the canonical representative polynomial in the adjoined
generator ``a`` (digit i is the coefficient of a^i).  Multiplication uses
log/antilog tables for q <= 256 and schoolbook reduction above that.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DescriptorMismatch,
    DivisionByZero,
    NonPrime,
    ReducibleModulus,
    UnsupportedSize,
    WrongCharacteristic,
)

MAX_FIELD_SIZE = 1 << 16
TABLE_LIMIT = 256

# Coefficients low -> high, monic, without the leading 1.  Chosen to be
# primitive so that the generator ``a`` also generates the multiplicative
# group; irreducibility is re-verified at construction.
DEFAULT_MODULI: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1),  # a^2 + a + 1
    (2, 3): (1, 1, 0),  # a^3 + a + 1
    (2, 4): (1, 1, 0, 0),  # a^4 + a + 1
    (2, 5): (1, 0, 1, 0, 0),  # a^5 + a^2 + 1
    (2, 6): (1, 1, 0, 0, 0, 0),  # a^6 + a + 1
    (2, 7): (1, 1, 0, 0, 0, 0, 0),  # a^7 + a + 1
    (2, 8): (1, 0, 1, 1, 1, 0, 0, 0),  # a^8 + a^4 + a^3 + a^2 + 1
    (3, 2): (2, 2),  # a^2 + 2a + 2
    (3, 3): (1, 2, 0),  # a^3 + 2a + 1
    (3, 4): (2, 0, 0, 2),  # a^4 + 2a^3 + 2
    (5, 2): (2, 4),  # a^2 + 4a + 2
    (5, 3): (3, 3, 0),  # a^3 + 3a + 3
    (7, 2): (3, 6),  # a^2 + 6a + 3
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


# ---------------------------------------------------------------------------
# Dense polynomials over GF(p) as coefficient lists (low -> high).


def _trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def _gfp_mod(f: Sequence[int], g: Sequence[int], p: int) -> list[int]:
    f = [c % p for c in f]
    _trim(f)
    g = _trim([c % p for c in g])
    inv_lead = pow(g[-1], p - 2, p)
    while len(f) >= len(g):
        c = f[-1] * inv_lead % p
        shift = len(f) - len(g)
        for i, gi in enumerate(g):
            f[shift + i] = (f[shift + i] - c * gi) % p
        _trim(f)
    return f


def _monic_polys(p: int, degree: int) -> Iterable[list[int]]:
    for n in range(p**degree):
        coeffs = []
        for _ in range(degree):
            coeffs.append(n % p)
            n //= p
        yield coeffs + [1]


def is_irreducible_over_prime_field(modulus: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    f = _trim([c % p for c in modulus])
    k = len(f) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    if f[0] == 0:
        return False
    for d in range(1, k // 2 + 1):
        for g in _monic_polys(p, d):
            if not _gfp_mod(f, g, p):
                return False
    return True


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FieldDescriptor:
    """GF(p^k) given by a monic irreducible ``modulus`` of degree k.

    ``modulus`` lists the coefficients low -> high including the leading 1;
    it is empty for prime fields.
    """

    p: int
    k: int
    modulus: tuple[int, ...] = ()

    @property
    def q(self) -> int:
        return self.p**self.k

    @property
    def characteristic(self) -> int:
        return self.p

    def __repr__(self) -> str:
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k})"

    def __str__(self) -> str:
        return repr(self)

    # -- digit helpers -----------------------------------------------------

    def digits(self, rep: int) -> list[int]:
        out = []
        for _ in range(self.k):
            out.append(rep % self.p)
            rep //= self.p
        return out

    def from_digits(self, digits: Sequence[int]) -> int:
        rep = 0
        for d in reversed(digits):
            rep = rep * self.p + d % self.p
        return rep

    # -- scalar arithmetic on integer reps -------------------------------

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.k == 1:
            return (a + b) % self.p
        if self._add_table is not None:
            return int(self._add_table[a, b])
        return self.from_digits([x + y for x, y in zip(self.digits(a), self.digits(b))])

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.k == 1:
            return -a % self.p
        return self.from_digits([-x for x in self.digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.k == 1:
            return a * b % self.p
        if self._log is not None:
            return int(self._exp[(self._log[a] + self._log[b]) % (self.q - 1)])
        return self._schoolbook_mul(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero(f"inverse of 0 in {self}")
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        if self._log is not None:
            return int(self._exp[(-self._log[a]) % (self.q - 1)])
        return self.pow(a, self.q - 2)

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            a, n = self.inv(a), -n
        result = 1
        while n:
            if n & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            n >>= 1
        return result

    def from_int(self, n: int) -> int:
        return n % self.p

    def _schoolbook_mul(self, a: int, b: int) -> int:
        p, k = self.p, self.k
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        return self.from_digits(_gfp_mod(prod, self.modulus, p))

    # -- tables ------------------------------------------------------------

    @cached_property
    def _tables(self) -> tuple[np.ndarray, np.ndarray] | None:
        if self.k == 1 or self.q > TABLE_LIMIT:
            return None
        q = self.q
        for g in range(2, q):
            exp = np.zeros(q - 1, dtype=np.int64)
            x = 1
            seen = set()
            for i in range(q - 1):
                exp[i] = x
                seen.add(x)
                x = self._schoolbook_mul(x, g)
            if len(seen) == q - 1:
                log = np.zeros(q, dtype=np.int64)
                log[exp] = np.arange(q - 1)
                return exp, log
        raise AssertionError("no primitive element found")  # pragma: no cover

    @property
    def _exp(self) -> np.ndarray | None:
        t = self._tables
        return None if t is None else t[0]

    @property
    def _log(self) -> np.ndarray | None:
        t = self._tables
        return None if t is None else t[1]

    @cached_property
    def _add_table(self) -> np.ndarray | None:
        if self.p == 2 or self.k == 1 or self.q > TABLE_LIMIT:
            return None
        q = self.q
        digits = np.array([self.digits(r) for r in range(q)], dtype=np.int64)
        weights = self.p ** np.arange(self.k)
        summed = (digits[:, None, :] + digits[None, :, :]) % self.p
        return summed @ weights

    @cached_property
    def add_table(self) -> np.ndarray:
        """Full q x q addition table (q <= 256), for vectorized evaluation."""
        if self.q > TABLE_LIMIT:
            raise UnsupportedSize("vectorized tables need q <= 256")
        r = np.arange(self.q)
        if self.p == 2:
            return r[:, None] ^ r[None, :]
        if self.k == 1:
            return (r[:, None] + r[None, :]) % self.p
        return self._add_table

    @cached_property
    def mul_table(self) -> np.ndarray:
        """Full q x q multiplication table (q <= 256)."""
        if self.q > TABLE_LIMIT:
            raise UnsupportedSize("vectorized tables need q <= 256")
        r = np.arange(self.q)
        if self.k == 1:
            return (r[:, None] * r[None, :]) % self.p
        exp, log = self._tables
        t = exp[(log[:, None] + log[None, :]) % (self.q - 1)]
        t[0, :] = 0
        t[:, 0] = 0
        return t

    # -- element constructors ----------------------------------------------

    def __call__(self, value: int | Sequence[int] | FieldElement) -> FieldElement:
        """Integer -> image of that integer; sequence -> digits in ``a``."""
        if isinstance(value, FieldElement):
            if value.field != self:
                raise DescriptorMismatch(f"{value.field} vs {self}")
            return value
        if isinstance(value, int):
            return FieldElement(self, value % self.p)
        return FieldElement(self, self.from_digits(list(value)))

    def element(self, rep: int) -> FieldElement:
        if not 0 <= rep < self.q:
            raise ValueError(f"representative {rep} out of range for {self}")
        return FieldElement(self, rep)

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    @property
    def gen(self) -> FieldElement:
        """The adjoined generator ``a`` (a root of the modulus)."""
        if self.k == 1:
            return self.one
        return FieldElement(self, self.p)

    def elements(self) -> list[FieldElement]:
        return [FieldElement(self, r) for r in range(self.q)]

    def contains_subfield(self, other: FieldDescriptor) -> bool:
        return other.p == self.p and self.k % other.k == 0

    def embedding(self, sub: FieldDescriptor) -> list[int]:
        """Representatives of the images of ``sub``'s elements in this field.

        The generator of ``sub`` goes to the smallest representative that is
        a root of ``sub``'s modulus, which makes the embedding deterministic.
        """
        return list(_embedding(sub, self))


@lru_cache(maxsize=None)
def _embedding(sub: FieldDescriptor, big: FieldDescriptor) -> tuple[int, ...]:
    if sub == big:
        return tuple(range(sub.q))
    if not big.contains_subfield(sub):
        raise DescriptorMismatch(f"{sub} is not a subfield of {big}")
    if sub.k == 1:
        return tuple(range(sub.p))
    root = None
    for r in range(big.q):
        acc = 0
        for c in reversed(sub.modulus):
            acc = big.add(big.mul(acc, r), c)
        if acc == 0:
            root = r
            break
    assert root is not None
    powers = [1]
    for _ in range(sub.k - 1):
        powers.append(big.mul(powers[-1], root))
    images = []
    for rep in range(sub.q):
        acc = 0
        for d, pw in zip(sub.digits(rep), powers):
            if d:
                acc = big.add(acc, big.mul(d, pw))
        images.append(acc)
    return tuple(images)


def field_make(p: int, k: int = 1, modulus: Sequence[int] | None = None) -> FieldDescriptor:
    """Build GF(p^k).

    ``modulus`` is a coefficient list low -> high of a monic degree-k
    polynomial; if omitted a built-in default is used.
    """
    if not is_prime(p):
        raise NonPrime(f"{p} is not prime")
    if k < 1 or p**k > MAX_FIELD_SIZE:
        raise UnsupportedSize(f"GF({p}^{k}) outside supported range q <= {MAX_FIELD_SIZE}")
    if k == 1:
        if modulus is not None and len(_trim([c % p for c in modulus])) not in (0, 2):
            raise ValueError("prime field modulus must be linear or absent")
        return FieldDescriptor(p, 1, ())
    if modulus is None:
        modulus = DEFAULT_MODULI.get((p, k))
        if modulus is None:
            modulus = _first_irreducible(p, k)
        else:
            modulus = tuple(modulus) + (1,)
    mod = tuple(c % p for c in modulus)
    if len(mod) != k + 1 or mod[-1] != 1:
        raise ValueError(f"modulus must be monic of degree {k}")
    if not is_irreducible_over_prime_field(mod, p):
        raise ReducibleModulus(f"{_poly_str(mod)} is reducible over GF({p})")
    return FieldDescriptor(p, k, mod)


def _first_irreducible(p: int, k: int) -> tuple[int, ...]:
    for f in _monic_polys(p, k):
        if is_irreducible_over_prime_field(f, p):
            return tuple(f)
    raise AssertionError("unreachable")  # pragma: no cover


def _poly_str(coeffs: Sequence[int]) -> str:
    parts = []
    for i in reversed(range(len(coeffs))):
        c = coeffs[i]
        if not c:
            continue
        mon = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
        if not mon:
            parts.append(str(c))
        else:
            parts.append(mon if c == 1 else f"{c}*{mon}")
    return " + ".join(parts) or "0"


class FieldElement:
    """An element of a :class:`FieldDescriptor`, immutable."""

    __slots__ = ("field", "rep")

    def __init__(self, field: FieldDescriptor, rep: int):
        self.field = field
        self.rep = rep

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise DescriptorMismatch(f"{self.field} vs {other.field}")
            return other.rep
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.add(self.rep, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.sub(self.rep, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.sub(b, self.rep))

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.mul(self.rep, b))

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.rep))

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.mul(self.rep, self.field.inv(b)))

    def __rtruediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.mul(b, self.field.inv(self.rep)))

    def __pow__(self, n: int):
        return FieldElement(self.field, self.field.pow(self.rep, n))

    def inverse(self) -> FieldElement:
        return FieldElement(self.field, self.field.inv(self.rep))

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.field == other.field and self.rep == other.rep
        if isinstance(other, int):
            return self.rep == other % self.field.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field, self.rep))

    def __bool__(self) -> bool:
        return self.rep != 0

    def coefficients(self) -> list[int]:
        return self.field.digits(self.rep)

    def __repr__(self) -> str:
        return f"{self.field}({self})"

    def __str__(self) -> str:
        return format_rep(self.field, self.rep)

    def trace(self) -> FieldElement:
        """Absolute trace to the prime field."""
        acc, x = 0, self.rep
        for _ in range(self.field.k):
            acc = self.field.add(acc, x)
            x = self.field.pow(x, self.field.p)
        return FieldElement(self.field, acc)


def format_rep(field: FieldDescriptor, rep: int) -> str:
    if field.k == 1:
        return str(rep)
    parts = []
    for i, d in reversed(list(enumerate(field.digits(rep)))):
        if not d:
            continue
        mon = "" if i == 0 else ("a" if i == 1 else f"a^{i}")
        if not mon:
            parts.append(str(d))
        else:
            parts.append(mon if d == 1 else f"{d}*{mon}")
    return " + ".join(parts) or "0"


def sqrt_char2(a: FieldElement) -> FieldElement:
    """The unique square root in characteristic 2: a^(2^(k-1))."""
    f = a.field
    if f.p != 2:
        raise WrongCharacteristic("square roots via Frobenius need characteristic 2")
    return FieldElement(f, f.pow(a.rep, 1 << (f.k - 1)))


def artin_schreier_solve(c: FieldElement) -> tuple[FieldElement, FieldElement] | None:
    """Both roots of x^2 + x = c in characteristic 2, or None if trace(c) = 1."""
    f = c.field
    if f.p != 2:
        raise WrongCharacteristic("Artin-Schreier solving needs characteristic 2")
    if c.trace().rep != 0:
        return None
    if f.k % 2 == 1:
        # half-trace: sum of c^(4^i), i = 0..(k-1)/2
        acc, x = 0, c.rep
        for _ in range((f.k - 1) // 2 + 1):
            acc ^= x
            x = f.pow(x, 4)
        root = acc
    else:
        # pick d of trace 1, then x = sum_{i<j} d^(2^i) c^(2^j)
        d = next(r for r in range(f.q) if FieldElement(f, r).trace().rep == 1)
        dp = [f.pow(d, 1 << i) for i in range(f.k)]
        cp = [f.pow(c.rep, 1 << i) for i in range(f.k)]
        root = 0
        for j in range(f.k):
            for i in range(j):
                root ^= f.mul(dp[i], cp[j])
    x0 = FieldElement(f, root)
    assert x0 * x0 + x0 == c
    r1, r2 = sorted([x0, x0 + 1], key=lambda e: e.rep)
    return r1, r2
