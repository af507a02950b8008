"""Square matrices over GF(q) and orders of their classes in PGL."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .algebra import FieldDescriptor, FieldElement

DEFAULT_CUTOFF = 64
DEFAULT_BUDGET = 10**7


class Singular(ValueError):
    pass


class NotUnipotent(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class SquareMatrix:
    field: FieldDescriptor
    rows: tuple[tuple[int, ...], ...]
    _det: list = field(default_factory=list, compare=False, repr=False, hash=False)

    @classmethod
    def of(cls, fld: FieldDescriptor, rows: Sequence[Sequence[int | FieldElement]]) -> SquareMatrix:
        reps = tuple(
            tuple(x.rep if isinstance(x, FieldElement) else x % fld.p for x in row) for row in rows
        )
        n = len(reps)
        if any(len(r) != n for r in reps):
            raise ValueError("matrix is not square")
        return cls(fld, reps)

    @classmethod
    def identity(cls, fld: FieldDescriptor, n: int) -> SquareMatrix:
        return cls(fld, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def scalar(cls, fld: FieldDescriptor, n: int, c: int) -> SquareMatrix:
        return cls(fld, tuple(tuple(c if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def jordan_block(cls, fld: FieldDescriptor, n: int, eigenvalue: int = 1) -> SquareMatrix:
        return cls(
            fld,
            tuple(
                tuple(eigenvalue if i == j else (1 if j == i + 1 else 0) for j in range(n))
                for i in range(n)
            ),
        )

    @property
    def size(self) -> int:
        return len(self.rows)

    def __mul__(self, other: SquareMatrix) -> SquareMatrix:
        f, n = self.field, self.size
        cols = list(zip(*other.rows))
        out = []
        for row in self.rows:
            out_row = []
            for col in cols:
                acc = 0
                for a, b in zip(row, col):
                    if a and b:
                        acc = f.add(acc, f.mul(a, b))
                out_row.append(acc)
            out.append(tuple(out_row))
        return SquareMatrix(f, tuple(out))

    def __add__(self, other: SquareMatrix) -> SquareMatrix:
        f = self.field
        return SquareMatrix(
            f, tuple(tuple(f.add(a, b) for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows))
        )

    def __sub__(self, other: SquareMatrix) -> SquareMatrix:
        f = self.field
        return SquareMatrix(
            f, tuple(tuple(f.sub(a, b) for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows))
        )

    def __pow__(self, n: int) -> SquareMatrix:
        if n < 0:
            return self.inverse() ** (-n)
        result = SquareMatrix.identity(self.field, self.size)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def is_zero(self) -> bool:
        return all(not x for row in self.rows for x in row)

    def scalar_value(self) -> int | None:
        """c if the matrix is c*I, else None."""
        n = self.size
        c = self.rows[0][0]
        for i in range(n):
            for j in range(n):
                if self.rows[i][j] != (c if i == j else 0):
                    return None
        return c

    def is_identity(self) -> bool:
        return self.scalar_value() == 1

    def _eliminate(self) -> tuple[int, list[list[int]] | None]:
        """Determinant and inverse (None if singular) by Gauss-Jordan."""
        f, n = self.field, self.size
        a = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(self.rows)]
        det = 1
        for col in range(n):
            pivot = next((r for r in range(col, n) if a[r][col]), None)
            if pivot is None:
                return 0, None
            if pivot != col:
                a[col], a[pivot] = a[pivot], a[col]
                det = f.neg(det)
            pv = a[col][col]
            det = f.mul(det, pv)
            inv = f.inv(pv)
            a[col] = [f.mul(x, inv) for x in a[col]]
            for r in range(n):
                if r != col and a[r][col]:
                    c = a[r][col]
                    a[r] = [f.sub(x, f.mul(c, y)) for x, y in zip(a[r], a[col])]
        return det, [row[n:] for row in a]

    def determinant(self) -> FieldElement:
        if not self._det:
            self._det.append(self._eliminate()[0])
        return FieldElement(self.field, self._det[0])

    def is_invertible(self) -> bool:
        return self.determinant().rep != 0

    def inverse(self) -> SquareMatrix:
        det, inv = self._eliminate()
        if inv is None:
            raise Singular("matrix is singular")
        return SquareMatrix(self.field, tuple(tuple(r) for r in inv))

    def __str__(self) -> str:
        return "[" + "; ".join(" ".join(str(x) for x in r) for r in self.rows) + "]"


def proj_order(A: SquareMatrix, cutoff: int = DEFAULT_CUTOFF) -> int | None:
    """Least n >= 1 with A^n scalar, or None when it exceeds ``cutoff``."""
    if not A.is_invertible():
        raise Singular("projective order of a singular matrix")
    P = A
    for n in range(1, cutoff + 1):
        if P.scalar_value() is not None:
            return n
        P = P * A
    return None


def is_unipotent(A: SquareMatrix) -> bool:
    N = A - SquareMatrix.identity(A.field, A.size)
    return (N ** A.size).is_zero()


def unipotent_identity_check(A: SquareMatrix, s: int) -> bool:
    """Check A^(p^(s-1)) == I + (A - I)^(p^(s-1)) for unipotent A."""
    if not is_unipotent(A):
        raise NotUnipotent("(A - I)^(r+1) != 0")
    I = SquareMatrix.identity(A.field, A.size)
    e = A.field.p ** (s - 1)
    return A**e == I + (A - I) ** e


def jordan_bound(r: int, p: int) -> int:
    """Largest p-power order allowed in PGL_{r+1}: p^s with p^(s-1) < r+1."""
    if r < 1:
        raise ValueError("r must be >= 1")
    s = 1
    while p**s < r + 1:
        s += 1
    return p**s


def is_power_of(n: int, p: int) -> bool:
    if n < 1:
        return False
    while n % p == 0:
        n //= p
    return n == 1


def gl_order(n: int, q: int) -> int:
    out = 1
    for i in range(n):
        out *= q**n - q**i
    return out


def iter_gl(fld: FieldDescriptor, n: int) -> Iterator[SquareMatrix]:
    q = fld.q
    for entries in itertools.product(range(q), repeat=n * n):
        rows = tuple(tuple(entries[i * n : (i + 1) * n]) for i in range(n))
        M = SquareMatrix(fld, rows)
        if M.is_invertible():
            yield M


def projective_order_census(fld: FieldDescriptor, r: int, budget: int = DEFAULT_BUDGET) -> dict[int, int]:
    """Count of elements of GL_{r+1}(GF(q)) by projective order."""
    n = r + 1
    if gl_order(n, fld.q) > budget:
        raise BudgetExceeded(f"|GL_{n}({fld.q})| = {gl_order(n, fld.q)} > budget {budget}")
    census: dict[int, int] = {}
    for M in iter_gl(fld, n):
        o = proj_order(M, cutoff=fld.q ** n)
        census[o] = census.get(o, 0) + 1
    return census


def exhaustive_bound_check(r: int, fld: FieldDescriptor, budget: int = DEFAULT_BUDGET) -> bool:
    """Every p-power projective order in GL_{r+1}(GF(q)) is <= jordan_bound(r, p)."""
    census = projective_order_census(fld, r, budget)
    bound = jordan_bound(r, fld.p)
    return all(o <= bound for o in census if is_power_of(o, fld.p))


def random_unipotent(fld: FieldDescriptor, n: int, rng: random.Random) -> SquareMatrix:
    """A conjugate P U P^-1 of a random upper unitriangular U."""
    q = fld.q
    U = SquareMatrix(
        fld,
        tuple(
            tuple(1 if i == j else (rng.randrange(q) if j > i else 0) for j in range(n))
            for i in range(n)
        ),
    )
    while True:
        P = SquareMatrix(fld, tuple(tuple(rng.randrange(q) for _ in range(n)) for _ in range(n)))
        if P.is_invertible():
            return P * U * P.inverse()


def nilpotency_index(N: SquareMatrix) -> int:
    P = N
    for k in range(1, N.size + 1):
        if P.is_zero():
            return k
        P = P * N
    raise NotUnipotent("matrix is not nilpotent")


def rank_over_field(fld: FieldDescriptor, rows: Sequence[Sequence[int]]) -> int:
    """Rank of a (not necessarily square) matrix of representatives."""
    A = [list(r) for r in rows]
    if not A:
        return 0
    ncols = len(A[0])
    rank = 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(A)) if A[r][c]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        inv = fld.inv(A[rank][c])
        A[rank] = [fld.mul(x, inv) for x in A[rank]]
        for r in range(len(A)):
            if r != rank and A[r][c]:
                f = A[r][c]
                A[r] = [fld.sub(x, fld.mul(f, y)) for x, y in zip(A[r], A[rank])]
        rank += 1
    return rank
