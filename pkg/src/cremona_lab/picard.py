"""The lattice I^{1,N}: Picard group of the plane blown up at N points.

Basis e0 (line), e1..eN (exceptional curves), form diag(1, -1, ..., -1),
canonical class K = -3 e0 + e1 + ... + eN.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

PicVector = tuple[int, ...]


class DimensionMismatch(ValueError):
    pass


class WrongN(ValueError):
    pass


class UnsupportedN(ValueError):
    pass


class PreconditionFailed(ValueError):
    pass


# degree bound for exceptional classes; (6; 3, 2^7) is the largest at N = 8
MAX_EXCEPTIONAL_DEGREE = 6


@dataclass(frozen=True)
class PicLattice:
    N: int

    @property
    def K(self) -> PicVector:
        return (-3,) + (1,) * self.N

    def vector(self, coords: Sequence[int]) -> PicVector:
        if len(coords) != self.N + 1:
            raise DimensionMismatch(f"expected {self.N + 1} coordinates, got {len(coords)}")
        return tuple(int(c) for c in coords)

    def e(self, i: int) -> PicVector:
        return tuple(int(j == i) for j in range(self.N + 1))

    def dot(self, a: PicVector, b: PicVector) -> int:
        if len(a) != self.N + 1 or len(b) != self.N + 1:
            raise DimensionMismatch("vector length does not match the lattice")
        return a[0] * b[0] - sum(x * y for x, y in zip(a[1:], b[1:]))

    def kperp_basis(self) -> list[PicVector]:
        """Simple roots e_i - e_{i+1} and e0 - e1 - e2 - e3 of K-perp."""
        basis = []
        for i in range(1, self.N):
            v = [0] * (self.N + 1)
            v[i], v[i + 1] = 1, -1
            basis.append(tuple(v))
        if self.N >= 3:
            basis.append((1, -1, -1, -1) + (0,) * (self.N - 3))
        return basis


def add(a: PicVector, b: PicVector) -> PicVector:
    return tuple(x + y for x, y in zip(a, b))


def scale(c: int, a: PicVector) -> PicVector:
    return tuple(c * x for x in a)


def dot(L: PicLattice, d1: PicVector, d2: PicVector) -> int:
    return L.dot(d1, d2)


def geiser(L: PicLattice, D: PicVector) -> PicVector:
    """-D + (D.K) K on the degree-2 lattice (N = 7)."""
    if L.N != 7:
        raise WrongN("the Geiser involution lives on N = 7")
    return add(scale(-1, D), scale(L.dot(D, L.K), L.K))


def bertini(L: PicLattice, D: PicVector) -> PicVector:
    """-D + 2 (D.K) K on the degree-1 lattice (N = 8)."""
    if L.N != 8:
        raise WrongN("the Bertini involution lives on N = 8")
    return add(scale(-1, D), scale(2 * L.dot(D, L.K), L.K))


def exceptional_classes(L: PicLattice) -> list[PicVector]:
    """All E with E.E = -1 and E.K = -1, by bounded search over degrees 0..6."""
    if not 1 <= L.N <= 8:
        raise UnsupportedN("exceptional classes are finite only for N <= 8")
    return list(_exceptional(L.N))


@lru_cache(maxsize=None)
def _exceptional(N: int) -> tuple[PicVector, ...]:
    L = PicLattice(N)
    found = set()
    for i in range(1, N + 1):
        found.add(L.e(i))
    for d in range(1, MAX_EXCEPTIONAL_DEGREE + 1):
        # class d e0 - sum m_i e_i with 0 <= m_i <= d
        for ms in itertools.combinations_with_replacement(range(d + 1), N):
            if sum(ms) != 3 * d - 1 or sum(m * m for m in ms) != d * d + 1:
                continue
            for perm in set(itertools.permutations(ms)):
                found.add((d,) + tuple(-m for m in perm))
    out = sorted(found, key=lambda v: (v[0], tuple(-x for x in v[1:])))
    for E in out:
        assert L.dot(E, E) == -1 and L.dot(E, L.K) == -1
    return tuple(out)


@dataclass
class CrossValues:
    cross_sum: int
    table: list[list[int]]
    common_value: int | None

    @property
    def consistent_with_equality(self) -> bool:
        return self.common_value is not None

    def to_json(self) -> dict:
        return {
            "cross_sum": self.cross_sum,
            "table": self.table,
            "common_value": self.common_value,
        }


def di_cross_values(L: PicLattice, classes: Sequence[PicVector]) -> CrossValues:
    """For four classes with D_i^2 = 4 summing to -8K: the cross-term sum
    (always 64 - 16 = 48) and the common pairwise value if there is one."""
    if L.N != 8:
        raise WrongN("the cross-term identity is stated on N = 8")
    if len(classes) != 4:
        raise PreconditionFailed("need exactly four classes")
    if any(L.dot(D, D) != 4 for D in classes):
        raise PreconditionFailed("each class must have self-intersection 4")
    total = classes[0]
    for D in classes[1:]:
        total = add(total, D)
    if total != scale(-8, L.K):
        raise PreconditionFailed("classes do not sum to -8K")
    table = [[L.dot(a, b) for b in classes] for a in classes]
    cross = sum(table[i][j] for i in range(4) for j in range(4) if i != j)
    # (sum D_i)^2 = 64 K^2 = 64, minus sum D_i^2 = 16
    if cross != 64 * L.dot(L.K, L.K) - 16:
        raise AssertionError("cross-term sum does not match (sum D_i)^2 - sum D_i^2")
    offdiag = {table[i][j] for i in range(4) for j in range(4) if i != j}
    common = offdiag.pop() if len(offdiag) == 1 else None
    return CrossValues(cross, table, common)
