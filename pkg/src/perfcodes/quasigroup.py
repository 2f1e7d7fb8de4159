"""
m-ary quasigroups as flat lookup tables.

A table of length order^m is indexed row-major: the argument tuple
(x_1, ..., x_m) sits at sum x_i * order^(m - i), x_1 most significant.
That is the same packing used for words, so evaluating a quasigroup on a
block of a word is ``table[pack(block)]``.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .codespace import PASS, Check, Code, all_words, is_perfect, powers, unpack
from .errors import ArityMismatch, BadShape, TooLarge, ZeroCoefficient
from .gfq import FieldTable, field_make

# largest arity qg_count will enumerate, by order
COUNT_FEASIBLE = {2: 6, 3: 3, 4: 2, 5: 1, 6: 1}


@dataclass(frozen=True, eq=False)
class MultaryQuasigroup:
    m: int
    order: int
    table: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.table, dtype=np.int64).ravel()
        if len(t) != self.order**self.m:
            raise BadShape(f"table has {len(t)} entries, expected {self.order}^{self.m}")
        t = t.copy()
        t.setflags(write=False)
        object.__setattr__(self, "table", t)

    def __call__(self, *args: int) -> int:
        if len(args) != self.m:
            raise ArityMismatch(f"{self.m}-ary quasigroup called with {len(args)} arguments")
        idx = 0
        for a in args:
            idx = idx * self.order + int(a)
        return int(self.table[idx])

    def evaluate(self, args: np.ndarray) -> np.ndarray:
        """Row-wise evaluation on an (N, m) array of arguments."""
        return self.table[np.asarray(args, dtype=np.int64) @ powers(self.order, self.m)]

    def solve_last(self) -> np.ndarray:
        """inv[prefix, value] = the last argument y with f(prefix, y) = value."""
        rows = self.table.reshape(-1, self.order)
        inv = np.empty_like(rows)
        np.put_along_axis(inv, rows, np.arange(self.order)[None, :].repeat(len(rows), 0), axis=1)
        return inv

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, MultaryQuasigroup)
            and (self.m, self.order) == (other.m, other.order)
            and np.array_equal(self.table, other.table)
        )

    def __hash__(self) -> int:
        return hash((self.m, self.order, self.table.tobytes()))

    def __repr__(self) -> str:
        return f"MultaryQuasigroup(m={self.m}, order={self.order})"


@dataclass(frozen=True)
class SigmaFamily:
    """t quasigroups of a common arity l, applied blockwise to produce a profile."""

    sigmas: tuple[MultaryQuasigroup, ...]

    def __post_init__(self):
        object.__setattr__(self, "sigmas", tuple(self.sigmas))
        if not self.sigmas:
            raise ArityMismatch("empty sigma family")
        m, order = self.sigmas[0].m, self.sigmas[0].order
        if any((f.m, f.order) != (m, order) for f in self.sigmas):
            raise ArityMismatch("sigma family mixes arities or orders")

    @property
    def t(self) -> int:
        return len(self.sigmas)

    @property
    def l(self) -> int:
        return self.sigmas[0].m

    @property
    def q(self) -> int:
        return self.sigmas[0].order


def qg_check(table, m: int, order: int) -> Check:
    """Unique recovery along every line; witness = (position, fixed args, repeated value)."""
    t = np.asarray(table, dtype=np.int64).ravel()
    if len(t) != order**m:
        raise BadShape(f"table has {len(t)} entries, expected {order}^{m}")
    if len(t) and (t.min() < 0 or t.max() >= order):
        bad = int(np.flatnonzero((t < 0) | (t >= order))[0])
        args = tuple(int(x) for x in unpack([bad], order, m)[0])
        return Check(False, "value out of range", (None, args, int(t[bad])))
    T = t.reshape((order,) * m)
    target = np.arange(order)
    for j in range(m):
        lines = np.moveaxis(T, j, -1).reshape(-1, order)
        ok = (np.sort(lines, axis=1) == target).all(axis=1)
        if not ok.all():
            li = int(np.flatnonzero(~ok)[0])
            line = lines[li]
            values, counts = np.unique(line, return_counts=True)
            fixed = list(int(x) for x in unpack([li], order, m - 1)[0]) if m > 1 else []
            fixed.insert(j, None)
            return Check(False, "line not a permutation", (j, tuple(fixed), int(values[counts > 1][0])))
    return PASS


def qg_linear(F: FieldTable, m: int, coeffs: Sequence[int], c: int = 0) -> MultaryQuasigroup:
    """f(x) = c + sum coeffs_i * x_i over GF(q)."""
    if len(coeffs) != m:
        raise ArityMismatch(f"{len(coeffs)} coefficients for arity {m}")
    if any(a == 0 for a in coeffs):
        raise ZeroCoefficient("linear quasigroup needs nonzero coefficients")
    D = all_words(F.q, m)
    acc = np.full(len(D), c, dtype=np.uint8)
    for i, a in enumerate(coeffs):
        acc = F.add_table[acc, F.mul_table[a, D[:, i]]]
    return MultaryQuasigroup(m, F.q, acc)


def identity_qg(order: int) -> MultaryQuasigroup:
    return MultaryQuasigroup(1, order, np.arange(order))


def linear_coefficients(f: MultaryQuasigroup, F: FieldTable) -> tuple[int, ...] | None:
    """Coefficients a with f(x) = sum a_i x_i, or None if f is not of that form."""
    if f.order != F.q:
        return None
    if f.table[0] != 0:
        return None
    coeffs = tuple(int(f.table[f.order ** (f.m - 1 - i)]) for i in range(f.m))
    if any(a == 0 for a in coeffs):
        return None
    if not np.array_equal(qg_linear(F, f.m, coeffs).table, f.table):
        return None
    return coeffs


# ---------- enumeration ----------


def _lines(m: int, order: int) -> np.ndarray:
    """lines[cell, j] = id of the line through cell along argument j."""
    D = unpack(np.arange(order**m, dtype=np.int64), order, m).astype(np.int64)
    pw = powers(order, m)
    ids = np.empty((order**m, m), dtype=np.int64)
    for j in range(m):
        ids[:, j] = j * order**m + (D @ pw - D[:, j] * pw[j])
    return ids


def _search(m: int, order: int, first: int | None) -> Iterator[list[int]]:
    """Row-major backtracking, candidate values ascending."""
    cells = order**m
    lines = _lines(m, order).tolist()
    used = [0] * (m * cells)
    table = [0] * cells
    full = (1 << order) - 1

    def rec(cell: int):
        if cell == cells:
            yield table
            return
        ls = lines[cell]
        taken = 0
        for lid in ls:
            taken |= used[lid]
        free = full & ~taken
        if cell == 0 and first is not None:
            free &= 1 << first
        v = 0
        while free:
            if free & 1:
                bit = 1 << v
                for lid in ls:
                    used[lid] |= bit
                table[cell] = v
                yield from rec(cell + 1)
                for lid in ls:
                    used[lid] &= ~bit
            free >>= 1
            v += 1

    yield from rec(0)


def qg_enumerate(m: int, order: int) -> Iterator[MultaryQuasigroup]:
    """Every m-ary quasigroup of the given order, in a fixed deterministic order.

    Lazy; callers that only need a prefix of the stream may go beyond the
    arities accepted by qg_count.
    """
    for table in _search(m, order, None):
        yield MultaryQuasigroup(m, order, np.array(table))


def _count_branch(args: tuple[int, int, int]) -> int:
    m, order, first = args
    return sum(1 for _ in _search(m, order, first))


def qg_count(m: int, order: int, workers: int = 1) -> int:
    """Exact number of m-ary quasigroups of the given order."""
    if order < 1 or m < 1:
        raise BadShape("arity and order must be positive")
    if order == 1:
        return 1
    if m > COUNT_FEASIBLE.get(order, 0):
        raise TooLarge(f"counting {m}-ary quasigroups of order {order} is out of range")
    branches = [(m, order, v) for v in range(order)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return sum(pool.map(_count_branch, branches))
    return sum(map(_count_branch, branches))


# ---------- composition ----------


def vh_pair_check(v: MultaryQuasigroup, h: MultaryQuasigroup, F: FieldTable) -> Check:
    """Is {(y | v(y) | h(y)) : y in F_q^(q-1)} a perfect code?"""
    q = F.q
    for f in (v, h):
        if (f.m, f.order) != (q - 1, q):
            raise ArityMismatch(f"expected ({q - 1})-ary quasigroups of order {q}")
    Y = all_words(q, q - 1)
    idx = np.arange(len(Y))
    D = np.concatenate([Y, v.table[idx][:, None], h.table[idx][:, None]], axis=1)
    return is_perfect(Code.from_digits(q, D.astype(np.uint8)))


def sigma_from_component_law(V: MultaryQuasigroup, v: MultaryQuasigroup, k: int) -> MultaryQuasigroup:
    """The ((q-1)k+1)-ary quasigroup V(v(x_1), ..., v(x_k), y) as a materialized table."""
    q = v.order
    if V.order != q:
        raise ArityMismatch("V and v have different orders")
    if V.m != k + 1:
        raise ArityMismatch(f"V must be {k + 1}-ary, got {V.m}")
    w = v.m
    arity = w * k + 1
    D = all_words(q, arity).astype(np.int64)
    pw = powers(q, w)
    args = np.empty((len(D), k + 1), dtype=np.int64)
    for j in range(k):
        args[:, j] = v.table[D[:, j * w : (j + 1) * w] @ pw]
    args[:, k] = D[:, -1]
    return MultaryQuasigroup(arity, q, V.evaluate(args))


def block_sum_sigma(q: int, t: int, l: int) -> SigmaFamily:
    """sigma_i(x_i) = sum of the block's symbols, for every block."""
    f = qg_linear(field_make(q), l, (1,) * l)
    return SigmaFamily((f,) * t)


def sigma_linear_coefficients(sigma: SigmaFamily) -> list[tuple[int, ...]] | None:
    F = field_make(sigma.q)
    out = []
    for f in sigma.sigmas:
        c = linear_coefficients(f, F)
        if c is None:
            return None
        out.append(c)
    return out
