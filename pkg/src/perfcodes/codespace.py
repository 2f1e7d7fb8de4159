"""
Words and codes over GF(q).

A word is a plain tuple of element indices.  A :class:`Code` stores its
words packed as base-q integers (coordinate 0 most significant) in a sorted
int64 array, which makes the canonical lexicographic order coincide with
integer order and lets the covering checks work on flat index arrays.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import TYPE_CHECKING, Any, Iterable, Sequence

import numpy as np

from .errors import (
    ArityMismatch,
    BadLength,
    Empty,
    LengthMismatch,
    TooLarge,
    TooSmall,
)
from .gfq import FieldTable, field_make, row_reduce

if TYPE_CHECKING:
    from .quasigroup import SigmaFamily

Word = tuple[int, ...]

PACK_LIMIT = 2**62
COVER_LIMIT = 2**26
SPAN_LIMIT = 2**22


@dataclass(frozen=True)
class Check:
    """Outcome of a verification: truthy iff ``ok``.

    ``reason`` names the failed check and ``witness`` carries whatever
    demonstrates the failure (a word, a pair of words, ...).
    """

    ok: bool
    reason: str = ""
    witness: Any = None

    def __bool__(self) -> bool:
        return self.ok


PASS = Check(True)


# ---------- packing ----------


def powers(q: int, n: int) -> np.ndarray:
    return q ** np.arange(n - 1, -1, -1, dtype=np.int64)


def pack(D: np.ndarray, q: int) -> np.ndarray:
    D = np.asarray(D)
    if D.ndim == 1:
        D = D[None, :]
    if D.shape[1] == 0:
        return np.zeros(len(D), dtype=np.int64)
    return D.astype(np.int64) @ powers(q, D.shape[1])


def unpack(packed, q: int, n: int) -> np.ndarray:
    packed = np.asarray(packed, dtype=np.int64)
    D = np.empty((len(packed), n), dtype=np.uint8)
    rest = packed.copy()
    for j in range(n - 1, -1, -1):
        D[:, j] = rest % q
        rest //= q
    return D


@lru_cache(maxsize=8)
def all_words(q: int, n: int) -> np.ndarray:
    """Digits of every word of F_q^n in lexicographic order (read-only)."""
    if q**n > COVER_LIMIT:
        raise TooLarge(f"{q}^{n} words exceed the enumeration limit")
    D = unpack(np.arange(q**n, dtype=np.int64), q, n)
    D.setflags(write=False)
    return D


def word_str(word: Sequence[int]) -> str:
    return "".join("0123456789abcdef"[int(x)] for x in word)


def perfect_length_exponent(q: int, n: int) -> int | None:
    """m with n = (q^m - 1)/(q - 1), or None."""
    m, length = 0, 0
    while length < n:
        length = length * q + 1
        m += 1
    return m if length == n else None


# ---------- codes ----------


class Code:
    """Finite set of length-n words over GF(q), kept in canonical order."""

    __slots__ = ("q", "n", "packed", "_digits")

    def __init__(self, q: int, n: int, packed=()):
        if q**n > PACK_LIMIT:
            raise TooLarge(f"words of length {n} over GF({q}) do not fit the packed representation")
        arr = np.unique(np.asarray(packed, dtype=np.int64).ravel())
        if len(arr) and (arr[0] < 0 or arr[-1] >= q**n):
            raise ValueError("packed word out of range")
        arr.setflags(write=False)
        self.q = q
        self.n = n
        self.packed = arr
        self._digits = None

    @classmethod
    def from_words(cls, q: int, n: int, words: Iterable[Sequence[int]]) -> Code:
        rows = [tuple(int(x) for x in w) for w in words]
        for w in rows:
            if len(w) != n:
                raise LengthMismatch(f"word {w} has length {len(w)}, expected {n}")
            if any(not 0 <= x < q for x in w):
                raise ValueError(f"word {w} has a symbol outside 0..{q - 1}")
        D = np.array(rows, dtype=np.uint8).reshape(len(rows), n)
        return cls(q, n, pack(D, q) if rows else ())

    @classmethod
    def from_digits(cls, q: int, D: np.ndarray) -> Code:
        D = np.asarray(D)
        return cls(q, D.shape[1], pack(D, q) if len(D) else ())

    def digits(self) -> np.ndarray:
        if self._digits is None:
            d = unpack(self.packed, self.q, self.n)
            d.setflags(write=False)
            self._digits = d
        return self._digits

    @property
    def words(self) -> list[Word]:
        return [tuple(int(x) for x in row) for row in self.digits()]

    def __len__(self) -> int:
        return len(self.packed)

    def __iter__(self):
        return iter(self.words)

    def __contains__(self, word) -> bool:
        if len(word) != self.n:
            return False
        v = int(pack(np.array(word, dtype=np.uint8), self.q)[0])
        i = np.searchsorted(self.packed, v)
        return bool(i < len(self.packed) and self.packed[i] == v)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Code)
            and (self.q, self.n) == (other.q, other.n)
            and np.array_equal(self.packed, other.packed)
        )

    def __hash__(self) -> int:
        return hash((self.q, self.n, self.packed.tobytes()))

    def __repr__(self) -> str:
        return f"Code(q={self.q}, n={self.n}, size={len(self)})"

    def union(self, *others: Code) -> Code:
        for o in others:
            if (o.q, o.n) != (self.q, self.n):
                raise LengthMismatch("codes over different spaces")
        return Code(self.q, self.n, np.concatenate([self.packed, *[o.packed for o in others]]))

    def isdisjoint(self, other: Code) -> bool:
        return len(np.intersect1d(self.packed, other.packed, assume_unique=True)) == 0


@dataclass(frozen=True)
class CodeParameters:
    """Block layout (x_1 | ... | x_t | x_0): t blocks of length l, then n0 tail symbols.

    For a combinable layout n = (q^m - 1)/(q - 1), t = (q^r - 1)/(q - 1),
    l = q^s with s = m - r, and n0 = (q^s - 1)/(q - 1).  Standalone
    component layouts may have any t; then m, r and s are None.
    """

    q: int
    t: int
    l: int
    n0: int
    n: int
    m: int | None = None
    r: int | None = None
    s: int | None = None

    @classmethod
    def from_mr(cls, q: int, m: int, r: int) -> CodeParameters:
        if not 1 <= r < m:
            raise BadLength(f"need 1 <= r < m, got r={r}, m={m}")
        s = m - r
        t = (q**r - 1) // (q - 1)
        l = q**s
        n0 = (q**s - 1) // (q - 1)
        n = (q**m - 1) // (q - 1)
        assert n == l * t + n0
        return cls(q, t, l, n0, n, m, r, s)

    @classmethod
    def from_blocks(cls, q: int, t: int, l: int, n0: int) -> CodeParameters:
        n = l * t + n0
        r = perfect_length_exponent(q, t)
        s = perfect_length_exponent(q, n0)
        if r is not None and s is not None and r >= 1 and s >= 1 and l == q**s:
            return cls(q, t, l, n0, n, r + s, r, s)
        return cls(q, t, l, n0, n)

    @property
    def combinable(self) -> bool:
        return self.m is not None

    @property
    def component_size(self) -> int | None:
        """q^(n - m - (t - r)) for combinable layouts."""
        if not self.combinable:
            return None
        return self.q ** (self.n - self.m - (self.t - self.r))

    def block(self, i: int) -> slice:
        return slice(i * self.l, (i + 1) * self.l)

    @property
    def prefix_length(self) -> int:
        return self.l * self.t


@dataclass(frozen=True)
class MonomialTransform:
    """Coordinate permutation followed by per-position scaling.

    A word x maps to y with ``y[perm[i]] = scale[perm[i]] * x[i]``.
    """

    perm: tuple[int, ...]
    scale: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.perm) != list(range(len(self.perm))):
            raise ValueError("perm is not a permutation")
        if len(self.scale) != len(self.perm):
            raise LengthMismatch("perm and scale lengths differ")
        if any(s == 0 for s in self.scale):
            raise ValueError("scale entries must be nonzero")

    @classmethod
    def identity(cls, n: int) -> MonomialTransform:
        return cls(tuple(range(n)), (1,) * n)

    @property
    def n(self) -> int:
        return len(self.perm)

    def inverse(self, F: FieldTable) -> MonomialTransform:
        inv_perm = [0] * self.n
        for i, p in enumerate(self.perm):
            inv_perm[p] = i
        scale = tuple(F.inv(self.scale[p]) for p in self.perm)
        return MonomialTransform(tuple(inv_perm), scale)

    def apply_digits(self, D: np.ndarray, F: FieldTable) -> np.ndarray:
        out = np.empty_like(D)
        perm = np.asarray(self.perm)
        scale = np.asarray(self.scale, dtype=np.uint8)
        out[:, perm] = F.mul_table[scale[perm][None, :], D]
        return out


# ---------- operations ----------


def hamming_distance(x: Sequence[int], y: Sequence[int]) -> int:
    if len(x) != len(y):
        raise LengthMismatch(f"lengths {len(x)} and {len(y)} differ")
    return sum(1 for a, b in zip(x, y) if a != b)


def min_distance(C: Code) -> int:
    """Minimum distance over all unordered pairs, by chunked brute force.

    Disjoint radius-1 balls prove d >= 3, so the scan may stop at the first
    pair meeting that bound (otherwise at the first pair at distance 1).
    """
    N = len(C)
    if N < 2:
        raise TooSmall("minimum distance needs at least two words")
    floor = 3 if distance3_check(C) else 1
    D = C.digits()
    best = C.n
    chunk = max(1, 2**24 // max(1, N * C.n))
    for start in range(0, N - 1, chunk):
        block = D[start : start + chunk]
        diff = (block[:, None, :] != D[None, start + 1 :, :]).sum(axis=2)
        # keep only pairs (i, j) with j > i
        rows = np.arange(len(block))[:, None]
        cols = np.arange(diff.shape[1])[None, :]
        diff = np.where(cols >= rows, diff, C.n + 1)
        best = min(best, int(diff.min()))
        if best <= floor:
            break
    return best


def ball_array(C: Code) -> np.ndarray:
    """(|C|, 1 + n(q-1)) array of packed radius-1 ball members, centre first."""
    q, n = C.q, C.n
    W = C.packed
    D = C.digits().astype(np.int64)
    pw = powers(q, n)
    F = field_make(q)
    deltas = np.arange(1, q)
    # new symbol at position j after adding delta
    new = F.add_table[D[:, :, None], deltas[None, None, :]].astype(np.int64)
    moved = W[:, None, None] + (new - D[:, :, None]) * pw[None, :, None]
    return np.concatenate([W[:, None], moved.reshape(len(W), -1)], axis=1)


def _radius1(word_packed: int, q: int, n: int) -> np.ndarray:
    return ball_array(Code(q, n, [word_packed])).ravel()


def distance3_check(C: Code) -> Check:
    """d(C) >= 3 iff radius-1 balls are pairwise disjoint; witness = a close pair."""
    if len(C) < 2:
        return PASS
    balls = ball_array(C).ravel()
    s = np.sort(balls)
    dup = np.flatnonzero(s[1:] == s[:-1])
    if not len(dup):
        return PASS
    centre = int(s[dup[0]])
    near = np.intersect1d(_radius1(centre, C.q, C.n), C.packed)
    pair = tuple(tuple(int(x) for x in row) for row in unpack(near[:2], C.q, C.n))
    return Check(False, "distance<3", pair)


def is_perfect(C: Code) -> Check:
    """True iff radius-1 balls around C tile F_q^n.

    On failure the witness is a doubly covered word if one exists,
    otherwise an uncovered word.
    """
    q, n = C.q, C.n
    size = q**n
    if size > COVER_LIMIT:
        raise TooLarge(f"covering check over {q}^{n} words exceeds the limit")
    sphere = 1 + n * (q - 1)
    card_ok = len(C) * sphere == size
    if len(C):
        balls = ball_array(C).ravel()
        s = np.sort(balls)
        dup = np.flatnonzero(s[1:] == s[:-1])
    else:
        balls = s = dup = np.zeros(0, dtype=np.int64)
    if card_ok and not len(dup):
        return PASS
    if len(dup):
        w = int(s[dup[0]])
        return Check(False, "doubly covered", tuple(int(x) for x in unpack([w], q, n)[0]))
    covered = np.zeros(size, dtype=bool)
    covered[balls] = True
    w = int(np.flatnonzero(~covered)[0])
    return Check(False, "uncovered", tuple(int(x) for x in unpack([w], q, n)[0]))


def rank(C: Code) -> int:
    if len(C) == 0:
        raise Empty("rank of an empty code")
    return len(row_reduce(C.digits(), field_make(C.q))[1])


def span_basis(C: Code) -> np.ndarray:
    if len(C) == 0:
        raise Empty("span of an empty code")
    return row_reduce(C.digits(), field_make(C.q))[0]


def span_of_rows(basis: np.ndarray, q: int, n: int) -> Code:
    """All GF(q)-combinations of the given rows."""
    k = len(basis)
    if q**k > SPAN_LIMIT:
        raise TooLarge(f"span has {q}^{k} words")
    F = field_make(q)
    coeffs = unpack(np.arange(q**k, dtype=np.int64), q, k)
    S = np.zeros((q**k, n), dtype=np.uint8)
    for i in range(k):
        S = F.add_table[S, F.mul_table[coeffs[:, i, None], basis[i][None, :]]]
    return Code.from_digits(q, S) if n else Code(q, 0, [0])


def span(C: Code) -> Code:
    return span_of_rows(span_basis(C), C.q, C.n)


def apply_monomial(psi: MonomialTransform, C: Code) -> Code:
    if psi.n != C.n:
        raise LengthMismatch(f"transform of length {psi.n} applied to length-{C.n} code")
    if len(C) == 0:
        return C
    return Code.from_digits(C.q, psi.apply_digits(C.digits(), field_make(C.q)))


def profile_array(D: np.ndarray, layout: CodeParameters, sigma: SigmaFamily) -> np.ndarray:
    """Row-wise sigma profiles of a digit array, shape (N, t)."""
    if D.shape[1] != layout.n:
        raise LengthMismatch(f"words of length {D.shape[1]} for a length-{layout.n} layout")
    if sigma.t != layout.t or sigma.l != layout.l:
        raise ArityMismatch(
            f"sigma family has t={sigma.t}, l={sigma.l}; layout has t={layout.t}, l={layout.l}"
        )
    pw = powers(layout.q, layout.l)
    out = np.empty((len(D), layout.t), dtype=np.uint8)
    for i, f in enumerate(sigma.sigmas):
        out[:, i] = f.table[D[:, layout.block(i)].astype(np.int64) @ pw]
    return out


def sigma_profile(x: Sequence[int], layout: CodeParameters, sigma: SigmaFamily) -> Word:
    """(sigma_1(x_1), ..., sigma_t(x_t)); the trailing n0 symbols are ignored."""
    D = np.asarray(x, dtype=np.uint8)[None, :]
    return tuple(int(v) for v in profile_array(D, layout, sigma)[0])
