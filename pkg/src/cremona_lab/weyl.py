"""Root lattices A4, D5, E6, E7, E8 and their Weyl groups.

Elements are integer matrices in the simple-root basis: column j holds the
simple-root coordinates of w(alpha_j).  Enumeration walks the group by
length: w s_i is longer than w exactly when w(alpha_i) is a positive root,
so each length level is built from the previous one alone and deduplicated
on the raw bytes of the int8 matrices.

Coordinatizations: A4 in the sum-zero hyperplane of Z^5, D5 in Z^5, and
E6 < E7 < E8 in the even-coordinate-sum model of E8 in Q^8 (Bourbaki
numbering, node 2 attached to node 4).
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd, lcm
from typing import Callable, Iterator, Sequence

import numpy as np

DEFAULT_BUDGET = 5_000_000

GROUP_ORDERS = {
    "A4": 120,
    "D5": 1920,
    "E6": 51840,
    "E7": 2903040,
    "E8": 696729600,
}

# Dynkin diagram edges, 1-based node labels
DYNKIN_EDGES = {
    "A4": [(1, 2), (2, 3), (3, 4)],
    "D5": [(1, 2), (2, 3), (3, 4), (3, 5)],
    "E6": [(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)],
    "E7": [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (2, 4)],
    "E8": [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)],
}


class BudgetExceeded(RuntimeError):
    pass


def _e(n: int, *pairs: tuple[int, int]) -> tuple[Fraction, ...]:
    v = [Fraction(0)] * n
    for i, c in pairs:
        v[i] = Fraction(c)
    return tuple(v)


def _simple_roots(name: str) -> tuple[tuple[Fraction, ...], ...]:
    if name == "A4":
        return tuple(_e(5, (i, 1), (i + 1, -1)) for i in range(4))
    if name == "D5":
        roots = [_e(5, (i, 1), (i + 1, -1)) for i in range(4)]
        roots.append(_e(5, (3, 1), (4, 1)))
        return tuple(roots)
    if name in ("E6", "E7", "E8"):
        h = Fraction(1, 2)
        e8 = [
            (h, -h, -h, -h, -h, -h, -h, h),
            _e(8, (0, 1), (1, 1)),
        ] + [_e(8, (i, -1), (i + 1, 1)) for i in range(6)]
        return tuple(tuple(Fraction(c) for c in r) for r in e8[: int(name[1])])
    raise ValueError(f"unknown root system {name!r}")


def standard_cartan(name: str) -> np.ndarray:
    n = int(name[1])
    C = 2 * np.eye(n, dtype=np.int64)
    for i, j in DYNKIN_EDGES[name]:
        C[i - 1, j - 1] = C[j - 1, i - 1] = -1
    return C


def _solve_rational(A: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> list[Fraction]:
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(bi)] for row, bi in zip(A, b)]
    for col in range(n):
        piv = next(r for r in range(col, n) if M[r][col] != 0)
        M[col], M[piv] = M[piv], M[col]
        pv = M[col][col]
        M[col] = [x / pv for x in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                c = M[r][col]
                M[r] = [x - c * y for x, y in zip(M[r], M[col])]
    return [M[i][n] for i in range(n)]


@dataclass(frozen=True)
class RootSystem:
    name: str
    simple_roots: tuple[tuple[Fraction, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.simple_roots)

    @cached_property
    def gram(self) -> np.ndarray:
        r = self.simple_roots
        G = [[sum(a * b for a, b in zip(r[i], r[j])) for j in range(self.rank)] for i in range(self.rank)]
        assert all(x.denominator == 1 for row in G for x in row)
        return np.array([[int(x) for x in row] for row in G], dtype=np.int64)

    @cached_property
    def cartan(self) -> np.ndarray:
        G = self.gram
        return np.array(
            [[2 * G[i, j] // G[i, i] for j in range(self.rank)] for i in range(self.rank)],
            dtype=np.int64,
        )

    @property
    def order(self) -> int:
        return GROUP_ORDERS[self.name]

    def reflection(self, i: int) -> np.ndarray:
        """s_i in the simple-root basis: s_i(alpha_j) = alpha_j - C_ij alpha_i."""
        S = np.eye(self.rank, dtype=np.int64)
        S[i, :] -= self.cartan[i, :]
        return S

    @cached_property
    def reflections(self) -> tuple[np.ndarray, ...]:
        return tuple(self.reflection(i) for i in range(self.rank))

    def to_ambient(self, coords: Sequence[int | Fraction]) -> tuple[Fraction, ...]:
        dim = len(self.simple_roots[0])
        out = [Fraction(0)] * dim
        for c, root in zip(coords, self.simple_roots):
            for k in range(dim):
                out[k] += c * root[k]
        return tuple(out)

    def from_ambient(self, v: Sequence[int | Fraction]) -> list[Fraction]:
        """Simple-root coordinates of an ambient vector in the root span."""
        rhs = [sum(Fraction(a) * b for a, b in zip(v, root)) for root in self.simple_roots]
        coords = _solve_rational(self.gram.tolist(), rhs)
        if self.to_ambient(coords) != tuple(Fraction(x) for x in v):
            raise ValueError("vector is not in the span of the roots")
        return coords

    def element_from_ambient(self, action: Callable[[tuple[Fraction, ...]], Sequence]) -> WeylElement:
        """Matrix of an ambient linear map restricted to the root lattice."""
        cols = []
        for root in self.simple_roots:
            c = self.from_ambient(action(root))
            if any(x.denominator != 1 for x in c):
                raise ValueError("map does not preserve the root lattice")
            cols.append([int(x) for x in c])
        M = np.array(cols, dtype=np.int64).T
        return WeylElement(self, M)

    @cached_property
    def positive_roots(self) -> np.ndarray:
        """Positive roots in simple-root coordinates, by closure under s_i."""
        n = self.rank
        found = {tuple(int(i == j) for j in range(n)) for i in range(n)}
        frontier = list(found)
        while frontier:
            new = []
            for v in frontier:
                vv = np.array(v)
                for S in self.reflections:
                    w = tuple(int(x) for x in S @ vv)
                    if all(x >= 0 for x in w) and w not in found:
                        found.add(w)
                        new.append(w)
            frontier = new
        return np.array(sorted(found, key=lambda v: (sum(v), v)), dtype=np.int64)

    def identity(self) -> WeylElement:
        return WeylElement(self, np.eye(self.rank, dtype=np.int64))

    def minus_identity(self) -> WeylElement:
        return WeylElement(self, -np.eye(self.rank, dtype=np.int64))

    def __repr__(self) -> str:
        return f"RootSystem({self.name})"


@lru_cache(maxsize=None)
def root_system(name: str) -> RootSystem:
    rs = RootSystem(name, _simple_roots(name))
    if not np.array_equal(rs.cartan, standard_cartan(name)):
        raise AssertionError(f"Cartan matrix of {name} does not match its Dynkin diagram")
    if not all(rs.gram[i, i] == 2 for i in range(rs.rank)):
        raise AssertionError("simple roots must have squared length 2")
    return rs


# ---------------------------------------------------------------------------
# exact integer linear algebra


def bareiss_rank(M: Sequence[Sequence[int]]) -> int:
    """Rank over Q by fraction-free elimination."""
    A = [list(map(int, row)) for row in M]
    rows, cols = len(A), len(A[0]) if A else 0
    rank, prev = 0, 1
    for c in range(cols):
        piv = next((r for r in range(rank, rows) if A[r][c]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        for r in range(rank + 1, rows):
            for k in range(c + 1, cols):
                A[r][k] = (A[rank][c] * A[r][k] - A[r][c] * A[rank][k]) // prev
            A[r][c] = 0
        prev = A[rank][c]
        rank += 1
    return rank


def bareiss_det(M: Sequence[Sequence[int]]) -> int:
    A = [list(map(int, row)) for row in M]
    n = len(A)
    sign, prev = 1, 1
    for c in range(n - 1):
        piv = next((r for r in range(c, n) if A[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            sign = -sign
        for r in range(c + 1, n):
            for k in range(c + 1, n):
                A[r][k] = (A[c][c] * A[r][k] - A[r][c] * A[c][k]) // prev
        prev = A[c][c]
    return sign * A[n - 1][n - 1]


def integer_kernel(M: Sequence[Sequence[int]]) -> list[list[int]]:
    """Basis of ker(M) over Q, each vector scaled to a primitive integer vector."""
    A = [[Fraction(x) for x in row] for row in M]
    rows, cols = len(A), len(A[0])
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        pv = A[r][c]
        A[r] = [x / pv for x in A[r]]
        for i in range(rows):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -A[i][fc]
        den = lcm(*(x.denominator for x in v))
        ints = [int(x * den) for x in v]
        g = gcd(*ints)
        basis.append([x // g for x in ints])
    return basis


# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class WeylElement:
    rs: RootSystem
    matrix: np.ndarray

    def __eq__(self, other) -> bool:
        return isinstance(other, WeylElement) and self.rs == other.rs and np.array_equal(self.matrix, other.matrix)

    def __hash__(self) -> int:
        return hash((self.rs.name, self.matrix.astype(np.int8).tobytes()))

    def __mul__(self, other: WeylElement) -> WeylElement:
        return WeylElement(self.rs, self.matrix @ other.matrix)

    def __pow__(self, n: int) -> WeylElement:
        if n < 0:
            raise ValueError("use inverse() for negative powers")
        return WeylElement(self.rs, np.linalg.matrix_power(self.matrix, n))

    def inverse(self) -> WeylElement:
        # isometries: M^-1 = G^-1 M^T G, but the group is finite, so use M^(o-1)
        return self ** (self.order - 1)

    def is_identity(self) -> bool:
        return np.array_equal(self.matrix, np.eye(self.rs.rank, dtype=self.matrix.dtype))

    def preserves_form(self) -> bool:
        G = self.rs.gram
        return np.array_equal(self.matrix.T @ G @ self.matrix, G)

    @cached_property
    def order(self) -> int:
        P = self.matrix
        I = np.eye(self.rs.rank, dtype=np.int64)
        for n in range(1, 121):
            if np.array_equal(P, I):
                return n
            P = P @ self.matrix
        raise AssertionError("element order above 120; not a Weyl group element")

    @cached_property
    def trace(self) -> int:
        return int(np.trace(self.matrix))

    @cached_property
    def det(self) -> int:
        return bareiss_det(self.matrix.tolist())

    @cached_property
    def fixed_rank(self) -> int:
        M = self.matrix - np.eye(self.rs.rank, dtype=np.int64)
        return self.rs.rank - bareiss_rank(M.tolist())

    def __repr__(self) -> str:
        return f"WeylElement({self.rs.name}, {self.matrix.tolist()})"


# ---------------------------------------------------------------------------
# enumeration


def _byte_keys(mats: np.ndarray) -> np.ndarray:
    flat = np.ascontiguousarray(mats.reshape(len(mats), -1))
    return flat.view(np.dtype((np.void, flat.shape[1]))).ravel()


def enumerate_levels(rs: RootSystem, budget: int = DEFAULT_BUDGET) -> Iterator[np.ndarray]:
    """Yield the elements of each length 0, 1, 2, ... as int8 arrays (n, r, r)."""
    if rs.order > budget:
        raise BudgetExceeded(f"|W({rs.name})| = {rs.order} exceeds budget {budget}")
    r = rs.rank
    C = rs.cartan.astype(np.int16)
    G = rs.gram
    level = np.eye(r, dtype=np.int8)[None]
    while len(level):
        L32 = level.astype(np.int32)
        check = np.matmul(np.matmul(L32.transpose(0, 2, 1), G.astype(np.int32)), L32)
        if not (check == G).all():
            raise AssertionError("enumerated matrix does not preserve the Gram form")
        yield level
        cands = []
        for i in range(r):
            sel = level[(level[:, :, i] >= 0).all(axis=1)]
            if len(sel):
                new = sel.astype(np.int16) - sel[:, :, i : i + 1].astype(np.int16) * C[i][None, None, :]
                if np.abs(new).max() >= 128:
                    raise AssertionError("matrix entry out of int8 range")
                cands.append(new.astype(np.int8))
        if not cands:
            return
        c = np.concatenate(cands)
        _, idx = np.unique(_byte_keys(c), return_index=True)
        level = c[np.sort(idx)]


def enumerate_group(rs: RootSystem, budget: int = DEFAULT_BUDGET) -> Iterator[WeylElement]:
    for level in enumerate_levels(rs, budget):
        for M in level:
            yield WeylElement(rs, M.astype(np.int64))


@lru_cache(maxsize=4)
def group_matrices(name: str, budget: int = DEFAULT_BUDGET) -> tuple[np.ndarray, np.ndarray]:
    """All elements as one int8 array plus their lengths."""
    rs = root_system(name)
    mats, lengths = [], []
    for L, level in enumerate(enumerate_levels(rs, budget)):
        mats.append(level)
        lengths.append(np.full(len(level), L, dtype=np.int16))
    out = np.concatenate(mats), np.concatenate(lengths)
    if len(out[0]) != rs.order:
        raise AssertionError(f"enumerated {len(out[0])} elements of W({name}), expected {rs.order}")
    if len(np.unique(_byte_keys(out[0]))) != len(out[0]):
        raise AssertionError("duplicate elements in enumeration")
    return out


def count_elements(rs: RootSystem, budget: int = DEFAULT_BUDGET) -> int:
    return sum(len(level) for level in enumerate_levels(rs, budget))


# ---------------------------------------------------------------------------
# per-element statistics, vectorized


def _is_identity_batch(P: np.ndarray) -> np.ndarray:
    r = P.shape[-1]
    return (P == np.eye(r, dtype=P.dtype)).all(axis=(1, 2))


def batch_orders(mats: np.ndarray, max_order: int = 120, chunk: int = 200_000) -> np.ndarray:
    out = np.zeros(len(mats), dtype=np.int64)
    for start in range(0, len(mats), chunk):
        M = mats[start : start + chunk].astype(np.int32)
        orders = np.zeros(len(M), dtype=np.int64)
        live = np.arange(len(M))
        P = M.copy()
        for n in range(1, max_order + 1):
            done = _is_identity_batch(P)
            orders[live[done]] = n
            keep = ~done
            live, P = live[keep], P[keep]
            if not len(live):
                break
            P = np.matmul(P, M[live])
        if len(live):
            raise AssertionError("element order above cutoff")
        out[start : start + chunk] = orders
    return out


def batch_traces(mats: np.ndarray) -> np.ndarray:
    return np.trace(mats.astype(np.int64), axis1=1, axis2=2)


def batch_fixed_ranks(mats: np.ndarray, orders: np.ndarray) -> np.ndarray:
    """dim ker(w - 1) = (1/m) sum_{k<m} tr(w^k) for w of order m (character average)."""
    out = np.zeros(len(mats), dtype=np.int64)
    for m in np.unique(orders):
        sel = np.nonzero(orders == m)[0]
        M = mats[sel].astype(np.int32)
        P = np.broadcast_to(np.eye(M.shape[-1], dtype=np.int32), M.shape).copy()
        total = np.zeros(len(sel), dtype=np.int64)
        for _ in range(int(m)):
            total += np.trace(P, axis1=1, axis2=2)
            P = np.matmul(P, M)
        if (total % m).any():
            raise AssertionError("character average is not an integer")
        out[sel] = total // m
    return out


@dataclass
class ProfileEntry:
    count: int = 0
    traces: Counter = field(default_factory=Counter)
    fixed_ranks: Counter = field(default_factory=Counter)
    dets: Counter = field(default_factory=Counter)

    def to_json(self) -> dict:
        return {
            "count": self.count,
            "traces": sorted(self.traces.elements()) if self.count <= 64 else _multiset(self.traces),
            "fixed_ranks": _multiset(self.fixed_ranks),
        }


def _multiset(c: Counter) -> dict[str, int]:
    return {str(k): int(v) for k, v in sorted(c.items())}


@dataclass
class OrderProfile:
    name: str
    entries: dict[int, ProfileEntry]
    realized_orders: list[int]

    def __getitem__(self, order: int) -> ProfileEntry:
        return self.entries[order]

    def to_json(self) -> dict:
        return {str(k): v.to_json() for k, v in sorted(self.entries.items())}


@lru_cache(maxsize=8)
def _group_statistics(name: str, budget: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    mats, lengths = group_matrices(name, budget)
    orders = batch_orders(mats)
    traces = batch_traces(mats)
    return orders, traces, lengths


def order_profile(rs: RootSystem, orders: Sequence[int] | None = None, budget: int = DEFAULT_BUDGET) -> OrderProfile:
    """Counts, traces and fixed ranks of the elements of the requested orders."""
    if rs.order > budget:
        raise BudgetExceeded(f"|W({rs.name})| = {rs.order} exceeds budget {budget}")
    mats, _ = group_matrices(rs.name, budget)
    ords, traces, lengths = _group_statistics(rs.name, budget)
    realized = sorted(int(o) for o in np.unique(ords))
    wanted = realized if orders is None else sorted(set(orders))
    entries = {}
    for m in wanted:
        sel = np.nonzero(ords == m)[0]
        e = ProfileEntry(count=len(sel))
        if len(sel):
            fr = batch_fixed_ranks(mats[sel], ords[sel])
            e.traces.update(int(t) for t in traces[sel])
            e.fixed_ranks.update(int(f) for f in fr)
            e.dets.update(int(d) for d in np.where(lengths[sel] % 2 == 0, 1, -1))
        entries[m] = e
    return OrderProfile(rs.name, entries, realized)


def elements_of_order(rs: RootSystem, m: int, budget: int = DEFAULT_BUDGET) -> list[WeylElement]:
    mats, _ = group_matrices(rs.name, budget)
    ords, _, _ = _group_statistics(rs.name, budget)
    return [WeylElement(rs, M.astype(np.int64)) for M in mats[ords == m]]


# ---------------------------------------------------------------------------


def fixed_vector_witness(w: WeylElement) -> list[int] | None:
    """A nonzero primitive integer vector (simple-root coordinates) fixed by w."""
    M = w.matrix - np.eye(w.rs.rank, dtype=np.int64)
    basis = integer_kernel(M.tolist())
    return basis[0] if basis else None


def longest_element(rs: RootSystem) -> WeylElement:
    """Descend from rho: apply s_i while <v, alpha_i> > 0; the product is w0."""
    G = rs.gram
    n = rs.rank
    rho = _solve_rational(G.tolist(), [Fraction(1)] * n)
    v = np.array(rho, dtype=object)
    W = np.eye(n, dtype=np.int64)
    while True:
        pairing = G.astype(object) @ v
        i = next((k for k in range(n) if pairing[k] > 0), None)
        if i is None:
            break
        S = rs.reflections[i]
        v = S.astype(object) @ v
        W = S @ W
    if not all(x == -r for x, r in zip(v, rho)):
        raise AssertionError("descent did not reach -rho")
    return WeylElement(rs, W)


@dataclass
class SquareRootSearch:
    found: bool
    witness: WeylElement | None
    target_in_group: bool
    scanned: int


def no_square_root_of(rs: RootSystem, target: WeylElement, budget: int = DEFAULT_BUDGET) -> SquareRootSearch:
    """Scan the whole group for w with w^2 == target."""
    tgt = target.matrix.astype(np.int32)
    key = tgt.astype(np.int8).tobytes()
    in_group = False
    scanned = 0
    for level in enumerate_levels(rs, budget):
        L = level.astype(np.int32)
        if not in_group:
            in_group = any(M.tobytes() == key for M in level)
        sq = np.matmul(L, L)
        hit = np.nonzero((sq == tgt).all(axis=(1, 2)))[0]
        scanned += len(level)
        if len(hit):
            return SquareRootSearch(True, WeylElement(rs, L[hit[0]].astype(np.int64)), True, scanned)
    return SquareRootSearch(False, None, in_group, scanned)


@dataclass
class PlusDecomposition:
    holds: bool
    minus_identity_in_group: bool
    central: bool
    det_minus_identity: int
    plus_count: int
    group_count: int
    samples_checked: int

    def to_json(self) -> dict:
        return self.__dict__.copy()


def plus_part_decomposition(
    rs: RootSystem, budget: int = DEFAULT_BUDGET, samples: int = 1000, rng: random.Random | None = None
) -> PlusDecomposition:
    """W = W+ x <w0> with w0 = -I: checks -I in W, centrality, det(-I) = -1,
    |W+| = |W|/2 and, on samples, that exactly one of w, -w lies in W+."""
    rng = rng or random.Random(0)
    w0 = longest_element(rs)
    minus = rs.minus_identity()
    in_group = w0 == minus
    det_minus = bareiss_det(minus.matrix.tolist())
    plus = 0
    total = 0
    central = True
    sampled: list[np.ndarray] = []
    for level_no, level in enumerate(enumerate_levels(rs, budget)):
        total += len(level)
        if level_no % 2 == 0:
            plus += len(level)
        L = level.astype(np.int32)
        central &= bool((np.matmul(L, -np.eye(rs.rank, dtype=np.int32)) == np.matmul(-np.eye(rs.rank, dtype=np.int32), L)).all())
        k = min(len(level), max(1, samples * len(level) // rs.order + 1))
        for idx in sorted(rng.sample(range(len(level)), k)):
            sampled.append(level[idx].astype(np.int64))
    checked = 0
    for M in sampled[:samples]:
        w = WeylElement(rs, M)
        d1 = w.det
        d2 = bareiss_det((-M).tolist())
        if (d1 == 1) == (d2 == 1):
            return PlusDecomposition(False, in_group, central, det_minus, plus, total, checked)
        checked += 1
    holds = in_group and central and det_minus == -1 and 2 * plus == total
    return PlusDecomposition(holds, in_group, central, det_minus, plus, total, checked)


def lefschetz(trace_on_kperp: int) -> int:
    """H^0 + H^4 contribute 2, H^2 contributes 1 (the class K) + trace on K-perp."""
    return 3 + trace_on_kperp


def permutation_element(rs: RootSystem, perm: Sequence[int], signs: Sequence[int] | None = None) -> WeylElement:
    """Signed coordinate permutation e_i -> signs[i] e_perm[i] (0-based)."""
    n = len(perm)
    signs = signs or [1] * n

    def act(v):
        out = [Fraction(0)] * n
        for i in range(n):
            out[perm[i]] += signs[i] * v[i]
        return out

    return rs.element_from_ambient(act)


def cycle_to_perm(n: int, cycle: Sequence[int]) -> list[int]:
    """1-based cycle notation to a 0-based image list."""
    perm = list(range(n))
    for a, b in zip(cycle, list(cycle[1:]) + [cycle[0]]):
        perm[a - 1] = b - 1
    return perm
