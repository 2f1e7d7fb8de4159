"""
Split a non-full-rank perfect code into mu-components.

Given a perfect code C of length n = (q^m - 1)/(q - 1) and 1 <= r <= n - rank(C),
r < m, ``decompose`` finds a monomial map psi such that psi(C) lies in the
null space of

    H = [ a_1 ... a_1 | a_2 ... a_2 | ... | a_t ... a_t | 0 ... 0 ]

with every projective point a_i of GF(q)^r repeated l = q^(m-r) times and
n0 = (q^(m-r) - 1)/(q - 1) zero columns.  Block sums then sort the words of
psi(C) into components indexed by the Hamming code with check matrix
[a_1 ... a_t].
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .codespace import (
    PASS,
    COVER_LIMIT,
    Check,
    Code,
    CodeParameters,
    MonomialTransform,
    Word,
    apply_monomial,
    ball_array,
    is_perfect,
    pack,
    perfect_length_exponent,
    profile_array,
    rank,
)
from .combiner import Assembly
from .components import MuComponent
from .errors import BadLength, NotPerfect, RankTooHigh, StructureViolation, TooLarge
from .gfq import field_make, kernel_basis, matrix_rank, row_reduce
from .hamming import ParityCheckMatrix, null_space_code, projective_points
from .quasigroup import SigmaFamily, block_sum_sigma

EXHAUSTIVE_LIMIT = 2**22
SAMPLE_PAIRS = 10**5


@dataclass
class Decomposition:
    psi: MonomialTransform
    layout: CodeParameters
    Hstar: ParityCheckMatrix
    outer: Code
    components: dict[Word, MuComponent]
    inner_tables: dict[Word, dict[Word, Code]]

    @property
    def sigma(self) -> SigmaFamily:
        return block_sum_sigma(self.layout.q, self.layout.t, self.layout.l)

    def assembly(self) -> Assembly:
        return Assembly(self.outer, dict(self.components), self.layout, self.sigma)


def _extend_to(basis: list[np.ndarray], dim: int, n: int, F) -> list[np.ndarray]:
    """Add standard basis vectors, lowest index first, until the span has dimension dim."""
    rows = list(basis)
    for i in range(n):
        if len(rows) >= dim:
            break
        e = np.zeros(n, dtype=np.uint8)
        e[i] = 1
        if matrix_rank(np.array(rows + [e]), F) > len(rows):
            rows.append(e)
    return rows


def _inner_tables(K: Code, layout: CodeParameters) -> dict[Word, Code]:
    q, split = layout.q, layout.prefix_length
    D = K.digits()
    if not len(D):
        return {}
    prefixes = pack(D[:, :split], q)
    tails = pack(D[:, split:], q)
    keys, inverse = np.unique(prefixes, return_inverse=True)
    order = np.argsort(inverse, kind="stable")
    bounds = np.searchsorted(inverse[order], np.arange(len(keys) + 1))
    firsts = D[order[bounds[:-1]], :split]
    table = {}
    for g in range(len(keys)):
        rows = order[bounds[g] : bounds[g + 1]]
        table[tuple(int(x) for x in firsts[g])] = Code(q, layout.n0, tails[rows])
    return table


def decompose(C: Code, r: int, seed: int = 0) -> Decomposition:
    q, n = C.q, C.n
    F = field_make(q)
    if not is_perfect(C):
        raise NotPerfect("input code is not perfect")
    m = perfect_length_exponent(q, n)
    if r < 1:
        raise BadLength(f"need r >= 1, got r={r}")
    rk = rank(C)
    if r > n - rk:
        raise RankTooHigh(f"r={r} exceeds n - rank(C) = {n - rk}")
    if r >= m:
        raise BadLength(f"need r < m = {m}, got r={r}")
    layout = CodeParameters.from_mr(q, m, r)
    t, l, n0 = layout.t, layout.l, layout.n0

    # D contains <C> and has dimension n - r; M spans its dual
    B, _ = row_reduce(C.digits(), F)
    Dbasis = np.array(_extend_to(list(B), n - r, n, F))
    M, _ = row_reduce(kernel_basis(Dbasis, F, n), F)
    if len(M) != r:
        raise StructureViolation(f"dual of D has dimension {len(M)}, expected {r}")

    groups: dict[tuple[int, ...], list[int]] = {}
    zeros: list[int] = []
    lead = [1] * n
    for i in range(n):
        col = M[:, i]
        nz = np.flatnonzero(col)
        if not len(nz):
            zeros.append(i)
            continue
        a = int(col[nz[0]])
        lead[i] = a
        point = tuple(int(x) for x in F.mul_table[F.inv_table[a], col])
        groups.setdefault(point, []).append(i)
    points = sorted(groups)
    if points != projective_points(q, r) or any(len(groups[p]) != l for p in points) or len(zeros) != n0:
        raise StructureViolation(
            f"column multiplicities {[len(groups[p]) for p in points]} with {len(zeros)} zero columns; "
            f"expected {t} points x {l} and {n0} zeros"
        )
    new_order = [i for p in points for i in groups[p]] + zeros
    perm = [0] * n
    for pos, i in enumerate(new_order):
        perm[i] = pos
    # a column a*alpha becomes alpha once its coordinate is multiplied by a
    scale = [1] * n
    for i in range(n):
        scale[perm[i]] = lead[i]
    psi = MonomialTransform(tuple(perm), tuple(scale))
    Hstar = ParityCheckMatrix(q, r, tuple(points))
    image = apply_monomial(psi, C)

    Hwide = ParityCheckMatrix(q, r, tuple(p for p in points for _ in range(l)) + ((0,) * r,) * n0)
    if Hwide.syndromes(image.digits()).any():
        raise StructureViolation("psi(C) is not annihilated by the block check matrix")

    outer = null_space_code(Hstar)
    sigma = block_sum_sigma(q, t, l)
    prof = pack(profile_array(image.digits(), layout, sigma), q)
    if not np.isin(prof, outer.packed).all():
        raise StructureViolation("a word's block-sum profile is outside the outer code")
    components = {}
    inner = {}
    for mu, mu_packed in zip(outer.words, outer.packed):
        K = Code(q, n, image.packed[prof == mu_packed])
        components[mu] = MuComponent(K, mu, layout, sigma)
        inner[mu] = _inner_tables(K, layout)
    result = Decomposition(psi, layout, Hstar, outer, components, inner)
    check = decomposition_verify(result, C, seed=seed)
    if not check:
        raise StructureViolation(f"decomposition failed its own check: {check.reason} {check.witness}")
    return result


# ---------- verification ----------


def _component_distance(dec: Decomposition, q: int, n: int) -> Check:
    """Radius-1 balls of distinct components never meet, i.e. d(K_mu, K_mu') >= 3."""
    if q**n > COVER_LIMIT:
        raise TooLarge("component distance check exceeds the covering limit")
    keys = sorted(dec.components)
    label = np.full(q**n, -1, dtype=np.int16 if len(keys) < 2**15 else np.int32)
    for idx, mu in enumerate(keys):
        K = dec.components[mu].code
        if not len(K):
            continue
        balls = ball_array(K)
        seen = label[balls]
        hit = np.argwhere((seen >= 0) & (seen != idx))
        if len(hit):
            row, col = hit[0]
            other = keys[int(seen[row, col])]
            return Check(False, "component distance", (other, mu, tuple(int(x) for x in K.digits()[row])))
        label[balls.ravel()] = idx
    return PASS


def _change_patterns(L: int, q: int):
    deltas = range(1, q)
    for j in range(L):
        for d in deltas:
            yield ((j, d),)
    for j1, j2 in combinations(range(L), 2):
        for d1 in deltas:
            for d2 in deltas:
                yield ((j1, d1), (j2, d2))


def _inner_overlap(dec: Decomposition, q: int, n: int, rng: np.random.Generator) -> Check:
    """Prefixes at distance 1 or 2 never share a tail inside one component."""
    F = field_make(q)
    L = dec.layout.prefix_length
    pw = q ** np.arange(n - 1, -1, -1, dtype=np.int64)
    patterns = list(_change_patterns(L, q))
    exhaustive = q**L <= EXHAUSTIVE_LIMIT
    for mu in sorted(dec.components):
        K = dec.components[mu].code
        if len(K) < 2:
            continue
        D = K.digits()
        W = K.packed
        if exhaustive:
            chosen = [(p, np.arange(len(W))) for p in patterns]
        else:
            per = max(1, SAMPLE_PAIRS // len(dec.components) // len(patterns) + 1)
            chosen = [(p, rng.integers(0, len(W), size=per)) for p in patterns]
        for pattern, rows in chosen:
            nb = W[rows].copy()
            for j, d in pattern:
                old = D[rows, j].astype(np.int64)
                nb += (F.add_table[old, d].astype(np.int64) - old) * pw[j]
            pos = np.searchsorted(W, nb)
            pos[pos == len(W)] = 0
            hit = np.flatnonzero(W[pos] == nb)
            if len(hit):
                a = D[rows[hit[0]]]
                b = K.digits()[pos[hit[0]]]
                return Check(
                    False,
                    "inner overlap",
                    (mu, tuple(int(x) for x in a[:L]), tuple(int(x) for x in b[:L]), tuple(int(x) for x in a[L:])),
                )
    return PASS


def decomposition_verify(dec: Decomposition, C: Code, seed: int = 0) -> Check:
    """Recheck every structural claim of a decomposition against C."""
    q, n = C.q, C.n
    L = dec.layout
    if L.n != n or L.q != q:
        return Check(False, "layout", (L.q, L.n))
    image = apply_monomial(dec.psi, C)

    # component distance first: overlapping or adjacent components are the most specific failure
    check = _component_distance(dec, q, n)
    if not check:
        return check

    # union and cardinalities
    sizes = {mu: len(K.code) for mu, K in dec.components.items()}
    union = Code(q, n, np.concatenate([K.code.packed for K in dec.components.values()] or [np.zeros(0, np.int64)]))
    if union != image or sum(sizes.values()) != len(image):
        diff = np.setxor1d(union.packed, image.packed)
        witness = tuple(int(x) for x in Code(q, n, diff[:1]).digits()[0]) if len(diff) else None
        return Check(False, "union", witness)

    # outer code
    if not dec.Hstar.is_canonical() or dec.Hstar.r != L.r:
        return Check(False, "Hstar", dec.Hstar.columns)
    if dec.outer != null_space_code(dec.Hstar):
        return Check(False, "outer", None)
    if len(dec.outer) != q ** (L.t - L.r) or not is_perfect(dec.outer):
        return Check(False, "outer", len(dec.outer))
    if set(dec.components) != set(dec.outer.words):
        return Check(False, "outer", sorted(set(dec.components) ^ set(dec.outer.words))[:1])
    for mu, size in sorted(sizes.items()):
        if size != L.component_size:
            return Check(False, "cardinality", (mu, size, L.component_size))

    # inner law: block sums and prefix/tail tables
    sigma = block_sum_sigma(q, L.t, L.l)
    split = L.prefix_length
    perfect_seen: dict[Code, bool] = {}
    for mu in sorted(dec.components):
        K = dec.components[mu].code
        table = dec.inner_tables.get(mu, {})
        if len(K):
            prof = profile_array(K.digits(), L, sigma)
            bad = np.flatnonzero((prof != np.asarray(mu, dtype=np.uint8)).any(axis=1))
            if len(bad):
                return Check(False, "inner law", (mu, tuple(int(x) for x in K.digits()[bad[0]])))
        rebuilt = [
            pack(np.asarray(prefix, dtype=np.uint8), q)[0] * q**L.n0 + tails.packed
            for prefix, tails in table.items()
        ]
        rebuilt = np.concatenate(rebuilt) if rebuilt else np.zeros(0, np.int64)
        if len(rebuilt) != len(K) or not np.array_equal(np.sort(rebuilt), K.packed):
            diff = np.setxor1d(rebuilt, K.packed)
            w = tuple(int(x) for x in Code(q, n, diff[:1]).digits()[0]) if len(diff) else None
            return Check(False, "inner law", (mu, w))
        for prefix, tails in table.items():
            if tails.n != L.n0 or len(prefix) != split:
                return Check(False, "inner", (mu, prefix))
            if tails not in perfect_seen:
                perfect_seen[tails] = bool(is_perfect(tails))
            if len(tails) and not perfect_seen[tails]:
                return Check(False, "inner not perfect", (mu, prefix))

    return _inner_overlap(dec, q, n, np.random.default_rng(seed))
