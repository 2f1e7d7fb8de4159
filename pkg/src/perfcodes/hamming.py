"""Hamming codes from normalized projective columns, and coset partitions into perfect codes."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .codespace import (
    PASS,
    Check,
    Code,
    all_words,
    is_perfect,
    pack,
    perfect_length_exponent,
    span_of_rows,
)
from .errors import BadLength, BadPartition, TooLarge
from .gfq import field_make, kernel_basis

MAX_POINTS = 10**5


@dataclass(frozen=True)
class ParityCheckMatrix:
    """r x t matrix stored by columns."""

    q: int
    r: int
    columns: tuple[tuple[int, ...], ...]

    @property
    def t(self) -> int:
        return len(self.columns)

    def matrix(self) -> np.ndarray:
        return np.array(self.columns, dtype=np.uint8).reshape(self.t, self.r).T

    def is_canonical(self) -> bool:
        cols = list(self.columns)
        normalized = all(next(x for x in c if x) == 1 for c in cols if any(c))
        return (
            normalized
            and all(any(c) for c in cols)
            and cols == sorted(set(cols))
            and self.t == (self.q**self.r - 1) // (self.q - 1)
        )

    def syndromes(self, D: np.ndarray) -> np.ndarray:
        """Packed syndromes H x^T for each row x of D."""
        F = field_make(self.q)
        H = self.matrix()
        S = np.zeros((len(D), self.r), dtype=np.uint8)
        for j in range(self.t):
            S = F.add_table[S, F.mul_table[D[:, j, None], H[None, :, j]]]
        return pack(S, self.q)


def projective_points(q: int, r: int) -> list[tuple[int, ...]]:
    """Nonzero vectors of GF(q)^r whose first nonzero entry is 1, in lexicographic order."""
    field_make(q)
    t = (q**r - 1) // (q - 1)
    if t > MAX_POINTS:
        raise TooLarge(f"{t} projective points")
    return [v for v in product(range(q), repeat=r) if any(v) and next(x for x in v if x) == 1]


def canonical_parity_check(q: int, r: int) -> ParityCheckMatrix:
    return ParityCheckMatrix(q, r, tuple(projective_points(q, r)))


def null_space_code(H: ParityCheckMatrix) -> Code:
    """{x : sum_i x_i * column_i = 0}, enumerated from a kernel basis."""
    F = field_make(H.q)
    basis = kernel_basis(H.matrix(), F, H.t)
    return span_of_rows(basis, H.q, H.t)


def hamming_code(q: int, r: int) -> Code:
    t = (q**r - 1) // (q - 1)
    if q ** (t - r) > 2**22:
        raise TooLarge(f"Hamming code with {q}^{t - r} words")
    return null_space_code(canonical_parity_check(q, r))


@dataclass(frozen=True)
class PerfectPartition:
    """Partition of F_q^n0 into perfect codes; gamma maps a packed word to its part index."""

    q: int
    n0: int
    parts: tuple[Code, ...]

    def __post_init__(self):
        expected = (self.q - 1) * self.n0 + 1
        if len(self.parts) != expected:
            raise BadPartition(f"expected {expected} parts, got {len(self.parts)}")
        gamma = np.full(self.q**self.n0, -1, dtype=np.int64)
        for j, part in enumerate(self.parts):
            if (part.q, part.n) != (self.q, self.n0):
                raise BadPartition(f"part {j} lives in the wrong space")
            if (gamma[part.packed] >= 0).any():
                raise BadPartition(f"part {j} overlaps an earlier part")
            gamma[part.packed] = j
        if (gamma < 0).any():
            raise BadPartition("parts do not cover the space")
        gamma.setflags(write=False)
        object.__setattr__(self, "gamma", gamma)

    def verify(self) -> Check:
        """Every part must itself be a perfect code."""
        for j, part in enumerate(self.parts):
            check = is_perfect(part)
            if not check:
                return Check(False, f"part {j} not perfect: {check.reason}", check.witness)
        return PASS


def perfect_partition(q: int, n0: int) -> PerfectPartition:
    """The q^s cosets of hamming_code(q, s), indexed by syndrome (part 0 holds the zero word)."""
    s = perfect_length_exponent(q, n0)
    if s is None or n0 < 1:
        raise BadLength(f"{n0} is not a perfect-code length over GF({q})")
    H = canonical_parity_check(q, s)
    D = all_words(q, n0)
    syn = H.syndromes(D)
    words = np.arange(q**n0, dtype=np.int64)
    parts = tuple(Code(q, n0, words[syn == j]) for j in range(q**s))
    return PerfectPartition(q, n0, parts)
