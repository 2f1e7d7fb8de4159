"""
Finite-field arithmetic over GF(q) for prime powers q <= 16.

Elements are the integers 0..q-1.  Index i encodes the polynomial whose
GF(p) coefficients are the base-p digits of i, most significant digit
multiplying the highest power of x.  All arithmetic is done through
precomputed q x q lookup tables stored as uint8 numpy arrays, so whole
arrays of symbols can be combined with fancy indexing:

    F.add_table[a, b]       # elementwise for broadcastable a, b

The module also carries the small amount of GF(q) linear algebra the rest
of the package needs (row reduction, rank, kernel bases).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

import numpy as np

from .errors import IndexOutOfRange, NotPrimePower, ZeroInverse

MAX_ORDER = 16


def _factor_prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise NotPrimePower(f"{q} is not a prime power")
    p = 2
    while p * p <= q and q % p:
        p += 1
    if q % p:
        p = q
    e = 0
    rest = q
    while rest % p == 0:
        rest //= p
        e += 1
    if rest != 1:
        raise NotPrimePower(f"{q} has more than one prime factor")
    return p, e


def _poly_mod(a: list[int], mod: list[int], p: int) -> list[int]:
    # coefficient lists are lowest degree first; mod is monic
    a = a[:]
    d = len(mod) - 1
    for i in range(len(a) - 1, d - 1, -1):
        c = a[i] % p
        if c:
            for j in range(d + 1):
                a[i - d + j] = (a[i - d + j] - c * mod[j]) % p
    return [c % p for c in a[:d]] + [0] * max(0, d - len(a))


def _is_irreducible(poly: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    deg = len(poly) - 1
    for d in range(1, deg // 2 + 1):
        for low in product(range(p), repeat=d):
            divisor = list(low) + [1]
            if not any(_poly_mod(poly, divisor, p)):
                return False
    return True


def _smallest_irreducible(p: int, e: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree e, highest power first."""
    # iterate lower coefficients with the x^{e-1} coefficient most significant
    for high_first in product(range(p), repeat=e):
        poly = list(reversed(high_first)) + [1]
        if _is_irreducible(poly, p):
            return (1,) + tuple(high_first)
    raise AssertionError(f"no irreducible polynomial of degree {e} over GF({p})")


@dataclass(frozen=True, eq=False)
class FieldTable:
    """Complete arithmetic tables for GF(q).

    ``modulus`` lists the coefficients of the defining polynomial from the
    highest power down, e.g. ``(1, 1, 1)`` for x^2 + x + 1.
    """

    q: int
    p: int
    e: int
    modulus: tuple[int, ...]
    add_table: np.ndarray = field(repr=False)
    mul_table: np.ndarray = field(repr=False)
    neg_table: np.ndarray = field(repr=False)
    inv_table: np.ndarray = field(repr=False)
    sub_table: np.ndarray = field(repr=False)

    def _check(self, *xs: int) -> None:
        for x in xs:
            if not 0 <= int(x) < self.q:
                raise IndexOutOfRange(f"element {x} not in GF({self.q})")

    def add(self, a: int, b: int) -> int:
        self._check(a, b)
        return int(self.add_table[a, b])

    def sub(self, a: int, b: int) -> int:
        self._check(a, b)
        return int(self.sub_table[a, b])

    def mul(self, a: int, b: int) -> int:
        self._check(a, b)
        return int(self.mul_table[a, b])

    def neg(self, a: int) -> int:
        self._check(a)
        return int(self.neg_table[a])

    def inv(self, a: int) -> int:
        self._check(a)
        if a == 0:
            raise ZeroInverse("0 has no multiplicative inverse")
        return int(self.inv_table[a])

    @property
    def elements(self) -> range:
        return range(self.q)

    @property
    def nonzero(self) -> range:
        return range(1, self.q)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FieldTable) and other.q == self.q and other.modulus == self.modulus

    def __hash__(self) -> int:
        return hash((self.q, self.modulus))


@lru_cache(maxsize=None)
def field_make(q: int) -> FieldTable:
    """Build GF(q) tables.  Raises NotPrimePower for q > 16 or composite q."""
    q = int(q)
    if q > MAX_ORDER:
        raise NotPrimePower(f"q={q} exceeds the supported maximum {MAX_ORDER}")
    p, e = _factor_prime_power(q)
    modulus = _smallest_irreducible(p, e) if e > 1 else (1, 0)
    low_first = list(reversed(modulus))

    def digits(i: int) -> list[int]:
        out = []
        for _ in range(e):
            out.append(i % p)
            i //= p
        return out  # lowest degree first

    def index(coeffs: list[int]) -> int:
        v = 0
        for c in reversed(coeffs):
            v = v * p + c
        return v

    polys = [digits(i) for i in range(q)]
    add = np.zeros((q, q), dtype=np.uint8)
    mul = np.zeros((q, q), dtype=np.uint8)
    for a in range(q):
        for b in range(q):
            add[a, b] = index([(x + y) % p for x, y in zip(polys[a], polys[b])])
            prod = [0] * (2 * e - 1)
            for i, x in enumerate(polys[a]):
                for j, y in enumerate(polys[b]):
                    prod[i + j] += x * y
            if e == 1:
                mul[a, b] = prod[0] % p
            else:
                mul[a, b] = index(_poly_mod(prod, low_first, p))
    neg = np.array([int(np.flatnonzero(add[a] == 0)[0]) for a in range(q)], dtype=np.uint8)
    inv = np.zeros(q, dtype=np.uint8)
    for a in range(1, q):
        hits = np.flatnonzero(mul[a] == 1)
        if len(hits) != 1:
            raise AssertionError(f"GF({q}) table construction failed at {a}")
        inv[a] = hits[0]
    sub = add[:, neg]
    for t in (add, mul, neg, inv, sub):
        t.setflags(write=False)
    return FieldTable(q, p, e, modulus, add, mul, neg, inv, sub)


def field_add(F: FieldTable, a: int, b: int) -> int:
    return F.add(a, b)


def field_mul(F: FieldTable, a: int, b: int) -> int:
    return F.mul(a, b)


def field_inv(F: FieldTable, a: int) -> int:
    return F.inv(a)


# ---------- linear algebra over GF(q) ----------


def row_reduce(M, F: FieldTable) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of M over GF(q).

    Returns ``(R, pivots)`` where R has exactly ``len(pivots)`` rows, each
    with a leading 1 in the matching pivot column and zeros elsewhere in
    that column.  Works on tall matrices (rows = codewords) without
    materializing anything larger than M itself.
    """
    R = np.array(M, dtype=np.uint8, copy=True)
    if R.ndim != 2:
        R = R.reshape(len(R), -1)
    rows, cols = R.shape
    pivots: list[int] = []
    prow = 0
    for col in range(cols):
        if prow == rows:
            break
        nz = np.flatnonzero(R[prow:, col])
        if len(nz) == 0:
            continue
        found = prow + int(nz[0])
        if found != prow:
            R[[prow, found]] = R[[found, prow]]
        a = int(R[prow, col])
        if a != 1:
            R[prow] = F.mul_table[F.inv_table[a], R[prow]]
        coef = R[:, col].copy()
        coef[prow] = 0
        hit = np.flatnonzero(coef)
        if len(hit):
            R[hit] = F.sub_table[R[hit], F.mul_table[coef[hit, None], R[prow][None, :]]]
        pivots.append(col)
        prow += 1
    return R[:prow], pivots


def matrix_rank(M, F: FieldTable) -> int:
    return len(row_reduce(M, F)[1])


def kernel_basis(M, F: FieldTable, ncols: int | None = None) -> np.ndarray:
    """Basis (as rows) of { x : M x^T = 0 }, one vector per free column."""
    M = np.asarray(M, dtype=np.uint8)
    if ncols is None:
        ncols = M.shape[1]
    if M.size == 0:
        return np.eye(ncols, dtype=np.uint8)
    R, pivots = row_reduce(M, F)
    free = [c for c in range(ncols) if c not in pivots]
    basis = np.zeros((len(free), ncols), dtype=np.uint8)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = F.neg_table[R[i, f]]
    return basis
