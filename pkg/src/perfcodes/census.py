"""
Counting perfect codes from quasigroup choices.

A perfect code of length n = qt + 1 is assembled from one component per
word of the outer Hamming code of length t.  With k = 1 every component of
the generalized Phelps construction is fixed by a t-ary quasigroup of
order q, chosen independently per component, which gives at least
Q(t, q)^R distinct codes where R = q^t / (1 + t(q - 1)) is the size of a
perfect code of length t.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import islice, product
from typing import Iterator

from .codespace import Code, CodeParameters, perfect_length_exponent
from .combiner import Assembly, combine
from .components import MuComponent, build_phelps
from .errors import BadLength, StructureViolation, TooLarge
from .gfq import field_make
from .hamming import hamming_code, perfect_partition
from .quasigroup import SigmaFamily, qg_count, qg_enumerate, qg_linear, sigma_from_component_law

EXHAUSTIVE_CODES = 4096


@dataclass(frozen=True)
class BoundReport:
    n: int
    q: int
    t: int
    Qcount: int
    R: int
    bound: int
    provenance: str  # "enumerated" or "formula"
    printed_R: Fraction

    @property
    def diagnostic(self) -> str | None:
        """Set when the printed denominator tq - q + 1 gives a different R."""
        if self.printed_R == self.R:
            return None
        return (
            f"R with denominator t*q-q+1 = {self.printed_R} differs from "
            f"the perfect-code size q^t/(1+t(q-1)) = {self.R}"
        )

    def line(self) -> str:
        return f"{self.n} {self.q} {self.t} {self.Qcount} {self.R} {self.bound}"


def qg_count_order3(m: int) -> int:
    """Number of m-ary quasigroups of order 3."""
    return 3 * 2**m


def qg_count_order4_leading(m: int) -> int:
    """Leading term 3^(m+1) * 2^(2^m + 1) of the order-4 count."""
    return 3 ** (m + 1) * 2 ** (2**m + 1)


def qg_order5_lower_log2(m: int) -> float:
    """log2 of the order-5 lower bound 2^(3^(m/3 - 0.072))."""
    return 3 ** (m / 3 - 0.072)


def qg_odd_order_lower_log2(m: int, q: int) -> float:
    """log2 of the odd-order lower bound 2^(((q^2 - 4q + 3)/4)^(m/2))."""
    return ((q * q - 4 * q + 3) / 4) ** (m / 2)


def qg_product_lower_bound(m: int, q1: int, count1: int, count2: int) -> int:
    """Q(m, q1 q2) >= Q(m, q1) * Q(m, q2)^(q1^m), given the two counts."""
    return count1 * count2 ** (q1**m)


def _split_length(n: int, q: int) -> tuple[int, int]:
    m = perfect_length_exponent(q, n)
    if m is None or m < 2:
        raise BadLength(f"{n} is not a perfect-code length >= {q + 1} over GF({q})")
    return m, (n - 1) // q


def lower_bound(n: int, q: int) -> BoundReport:
    field_make(q)
    m, t = _split_length(n, q)
    R = Fraction(q**t, 1 + t * (q - 1))
    assert R.denominator == 1
    try:
        count, provenance = qg_count(t, q), "enumerated"
    except TooLarge:
        if q != 3:
            raise
        count, provenance = qg_count_order3(t), "formula"
    R = int(R)
    return BoundReport(n, q, t, count, R, count**R, provenance, Fraction(q**t, t * q - q + 1))


class _ChoiceBuilder:
    """Shared inputs for the k = 1 generalized Phelps components of length n = qt + 1."""

    def __init__(self, n: int, q: int):
        self.F = F = field_make(q)
        m, t = _split_length(n, q)
        self.q, self.n, self.t = q, n, t
        self.layout = CodeParameters.from_mr(q, m, m - 1)
        self.outer = hamming_code(q, m - 1)
        self.v = qg_linear(F, q - 1, (1,) * (q - 1))
        self.h = qg_linear(F, q - 1, tuple(F.nonzero))
        self.V = [qg_linear(F, 2, (1, 1))] * t
        self.partitions = [perfect_partition(q, 1)] * (t + 1)
        self.sigma = SigmaFamily(tuple(sigma_from_component_law(f, self.v, 1) for f in self.V))
        self._cache: dict[tuple[tuple[int, ...], int], MuComponent] = {}

    def component(self, mu, qidx: int, Q) -> MuComponent:
        key = (tuple(mu), qidx)
        if key not in self._cache:
            self._cache[key] = build_phelps(mu, self.partitions, self.v, self.h, self.V, Q, self.F)
        return self._cache[key]


def generate_assemblies(n: int, q: int, limit: int | None = None) -> Iterator[Assembly]:
    """Assemblies with an independently chosen quasigroup per outer word.

    Assignments run through the product of quasigroup indices with the last
    outer word varying fastest.  Without a limit the whole product is
    produced, which must stay below EXHAUSTIVE_CODES.
    """
    b = _ChoiceBuilder(n, q)
    words = b.outer.words
    if limit is None:
        total = qg_count(b.t, q) ** len(words)
        if total > EXHAUSTIVE_CODES:
            raise TooLarge(f"{total} codes is too many for exhaustive generation")
        pool = list(qg_enumerate(b.t, q))
    else:
        pool = list(islice(qg_enumerate(b.t, q), limit))
    assignments = product(range(len(pool)), repeat=len(words))
    if limit is not None:
        assignments = islice(assignments, limit)
    for choice in assignments:
        components = {mu: b.component(mu, i, pool[i]) for mu, i in zip(words, choice)}
        yield Assembly(b.outer, components, b.layout, b.sigma)


def generate_distinct_codes(n: int, q: int, limit: int | None = None) -> list[Code]:
    codes = [combine(A) for A in generate_assemblies(n, q, limit)]
    if len(set(codes)) != len(codes):
        raise StructureViolation("two quasigroup assignments produced the same code")
    return codes


def log_bound(report: BoundReport) -> float:
    """Natural log of the bound, for display when the integer is huge."""
    return report.R * math.log(report.Qcount)
