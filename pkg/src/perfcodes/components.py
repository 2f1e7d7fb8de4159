"""
mu-components from the Mollard-Phelps product and the generalized Phelps construction.

Both builders lay a word out as t blocks of (q-1)k + 1 symbols
(k sub-blocks x_ij of length q-1, then y_i) followed by k symbols z_1..z_k.
Block i obeys sigma_i = V_i(v(x_i1), ..., v(x_ik), y_i).

Two independent routes produce the same set: ``filter`` scans all of
F_q^n and keeps the words satisfying the defining conditions; ``solve``
enumerates the free x_ij and recovers y_i and z by quasigroup inversion.
``auto`` picks the filter whenever q^n <= 2^24.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .codespace import (
    PASS,
    Check,
    Code,
    CodeParameters,
    Word,
    all_words,
    distance3_check,
    is_perfect,
    pack,
    powers,
    profile_array,
)
from .errors import (
    ArityMismatch,
    BadOrder,
    BadPartition,
    BadVHPair,
    LengthMismatch,
    NonlinearSigma,
    NotPerfect,
    NotQuasigroup,
)
from .gfq import FieldTable, field_make
from .hamming import PerfectPartition
from .quasigroup import (
    MultaryQuasigroup,
    SigmaFamily,
    qg_check,
    sigma_from_component_law,
    sigma_linear_coefficients,
    vh_pair_check,
)

FILTER_LIMIT = 2**24


@dataclass(frozen=True)
class MuComponent:
    code: Code
    mu: Word
    layout: CodeParameters
    sigma: SigmaFamily

    def __post_init__(self):
        object.__setattr__(self, "mu", tuple(int(x) for x in self.mu))

    def __len__(self) -> int:
        return len(self.code)


class _Shape:
    """Coordinate bookkeeping for the t x k x (q-1) product layout."""

    def __init__(self, q: int, k: int, t: int):
        self.q, self.k, self.t = q, k, t
        self.w = q - 1
        self.l = self.w * k + 1
        self.n = self.l * t + k

    def x(self, i: int, j: int) -> slice:
        start = i * self.l + j * self.w
        return slice(start, start + self.w)

    def y(self, i: int) -> int:
        return i * self.l + self.k * self.w

    def z(self, j: int) -> int:
        return self.l * self.t + j


def _check_qg(f: MultaryQuasigroup, m: int, order: int, name: str) -> None:
    if (f.m, f.order) != (m, order):
        raise ArityMismatch(f"{name} must be {m}-ary of order {order}, got {f.m}-ary of order {f.order}")
    if not qg_check(f.table, f.m, f.order):
        raise NotQuasigroup(f"{name} is not a quasigroup")


def _common_checks(mu, v, h, V, F: FieldTable, k: int) -> _Shape:
    q = F.q
    t = len(mu)
    if t < 1:
        raise ArityMismatch("mu must have at least one coordinate")
    if any(not 0 <= x < q for x in mu):
        raise ValueError("mu has a symbol outside the field")
    _check_qg(v, q - 1, q, "v")
    _check_qg(h, q - 1, q, "h")
    if not vh_pair_check(v, h, F):
        raise BadVHPair("(y | v(y) | h(y)) is not a perfect code")
    if len(V) != t:
        raise ArityMismatch(f"need {t} vertical quasigroups, got {len(V)}")
    for i, f in enumerate(V):
        _check_qg(f, k + 1, q, f"V[{i}]")
    return _Shape(q, k, t)


def _sub_values(D: np.ndarray, f: MultaryQuasigroup, cols: slice) -> np.ndarray:
    return f.table[D[:, cols].astype(np.int64) @ powers(f.order, f.m)]


def _vertical_ok(D: np.ndarray, shape: _Shape, mu, v, V) -> np.ndarray:
    mask = np.ones(len(D), dtype=bool)
    for i in range(shape.t):
        args = np.empty((len(D), shape.k + 1), dtype=np.int64)
        for j in range(shape.k):
            args[:, j] = _sub_values(D, v, shape.x(i, j))
        args[:, shape.k] = D[:, shape.y(i)]
        mask &= V[i].evaluate(args) == mu[i]
    return mask


def _h_matrix(D: np.ndarray, shape: _Shape, h) -> np.ndarray:
    """hv[:, i, j] = h(x_ij)."""
    hv = np.empty((len(D), shape.t, shape.k), dtype=np.int64)
    for i in range(shape.t):
        for j in range(shape.k):
            hv[:, i, j] = _sub_values(D, h, shape.x(i, j))
    return hv


def _free_part(shape: _Shape, mu, v, V) -> np.ndarray:
    """All words' block part (x_ij and solved y_i), shape (q^(wkt), l*t)."""
    q, k, t, w = shape.q, shape.k, shape.t, shape.w
    X = all_words(q, w * k * t)
    out = np.empty((len(X), shape.l * t), dtype=np.uint8)
    pk = powers(q, k)
    for i in range(t):
        xs = X[:, i * k * w : (i + 1) * k * w]
        out[:, i * shape.l : i * shape.l + k * w] = xs
        vals = np.stack([_sub_values(xs, v, slice(j * w, (j + 1) * w)) for j in range(k)], axis=1)
        out[:, shape.y(i)] = V[i].solve_last()[vals @ pk, mu[i]]
    return out


def _pick(method: str, shape: _Shape) -> str:
    if method == "auto":
        return "filter" if shape.q**shape.n <= FILTER_LIMIT else "solve"
    if method not in ("filter", "solve"):
        raise ValueError(f"unknown method {method!r}")
    return method


def _finish(code: Code, mu, shape: _Shape, v, V) -> MuComponent:
    layout = CodeParameters.from_blocks(shape.q, shape.t, shape.l, shape.k)
    sigma = SigmaFamily(tuple(sigma_from_component_law(f, v, shape.k) for f in V))
    return MuComponent(code, tuple(mu), layout, sigma)


def build_mollard_phelps(
    mu: Sequence[int],
    Csharp: Code,
    v: MultaryQuasigroup,
    h: MultaryQuasigroup,
    V: Sequence[MultaryQuasigroup],
    H: Sequence[MultaryQuasigroup],
    F: FieldTable,
    method: str = "auto",
) -> MuComponent:
    """Words whose vertical profile is mu and whose horizontal profile lies in Csharp."""
    k = Csharp.n
    if Csharp.q != F.q:
        raise ArityMismatch("Csharp is over a different field")
    if not is_perfect(Csharp):
        raise NotPerfect("Csharp is not a perfect code")
    shape = _common_checks(mu, v, h, V, F, k)
    if len(H) != k:
        raise ArityMismatch(f"need {k} horizontal quasigroups, got {len(H)}")
    for j, f in enumerate(H):
        _check_qg(f, shape.t + 1, F.q, f"H[{j}]")
    q, t = F.q, shape.t
    pt = powers(q, t)

    if _pick(method, shape) == "filter":
        D = all_words(q, shape.n)
        D = D[_vertical_ok(D, shape, mu, v, V)]
        hv = _h_matrix(D, shape, h)
        col = np.empty((len(D), k), dtype=np.int64)
        for j in range(k):
            col[:, j] = H[j].evaluate(np.concatenate([hv[:, :, j], D[:, [shape.z(j)]]], axis=1))
        D = D[np.isin(pack(col, q), Csharp.packed)]
    else:
        blocks = _free_part(shape, mu, v, V)
        hv = _h_matrix(np.concatenate([blocks, np.zeros((len(blocks), k), np.uint8)], axis=1), shape, h)
        inv = [f.solve_last() for f in H]
        pieces = []
        for c in Csharp.digits():
            Z = np.stack([inv[j][hv[:, :, j] @ pt, c[j]] for j in range(k)], axis=1)
            pieces.append(np.concatenate([blocks, Z.astype(np.uint8)], axis=1))
        D = np.concatenate(pieces) if pieces else np.zeros((0, shape.n), np.uint8)
    return _finish(Code.from_digits(q, D) if len(D) else Code(q, shape.n), mu, shape, v, V)


def build_phelps(
    mu: Sequence[int],
    partitions: Sequence[PerfectPartition],
    v: MultaryQuasigroup,
    h: MultaryQuasigroup,
    V: Sequence[MultaryQuasigroup],
    Q: MultaryQuasigroup,
    F: FieldTable,
    method: str = "auto",
) -> MuComponent:
    """Words whose vertical profile is mu and Q(gamma_1(h-row 1), ..., gamma_t(h-row t)) = gamma_{t+1}(z)."""
    t = len(mu)
    q = F.q
    if len(partitions) != t + 1:
        raise ArityMismatch(f"need {t + 1} partitions, got {len(partitions)}")
    k = partitions[0].n0
    for i, P in enumerate(partitions):
        if (P.q, P.n0) != (q, k):
            raise BadPartition(f"partition {i} is not a partition of F_{q}^{k}")
        if not P.verify():
            raise BadPartition(f"partition {i} has a part that is not perfect")
    shape = _common_checks(mu, v, h, V, F, k)
    order = (q - 1) * k + 1
    if (Q.m, Q.order) != (t, order):
        raise BadOrder(f"Q must be {t}-ary of order {order}, got {Q.m}-ary of order {Q.order}")
    if not qg_check(Q.table, Q.m, Q.order):
        raise BadOrder("Q is not a quasigroup")
    pk = powers(q, k)

    def target(hv: np.ndarray) -> np.ndarray:
        g = np.stack([partitions[i].gamma[hv[:, i, :] @ pk] for i in range(t)], axis=1)
        return Q.evaluate(g)

    last = partitions[t]
    if _pick(method, shape) == "filter":
        D = all_words(q, shape.n)
        D = D[_vertical_ok(D, shape, mu, v, V)]
        tail = D[:, shape.l * t :].astype(np.int64) @ pk
        D = D[last.gamma[tail] == target(_h_matrix(D, shape, h))]
    else:
        blocks = _free_part(shape, mu, v, V)
        hv = _h_matrix(np.concatenate([blocks, np.zeros((len(blocks), k), np.uint8)], axis=1), shape, h)
        tgt = target(hv)
        part_digits = np.stack([p.digits() for p in last.parts])  # (parts, size, k)
        Z = part_digits[tgt]
        size = Z.shape[1]
        D = np.concatenate([np.repeat(blocks, size, axis=0), Z.reshape(-1, k)], axis=1)
    return _finish(Code.from_digits(q, D) if len(D) else Code(q, shape.n), mu, shape, v, V)


def component_verify(K: MuComponent, sigma: SigmaFamily | None = None) -> Check:
    """Parity-check law, distance >= 3, and (combinable layouts) cardinality.

    ``sigma`` overrides the component's own family, so a component can be
    checked against an assembly's sigma.
    """
    sigma = K.sigma if sigma is None else sigma
    layout = K.layout
    if K.code.n != layout.n:
        return Check(False, "length", K.code.n)
    if len(K.mu) != layout.t:
        return Check(False, "mu length", K.mu)
    if len(K.code):
        prof = profile_array(K.code.digits(), layout, sigma)
        bad = np.flatnonzero((prof != np.asarray(K.mu, dtype=np.uint8)).any(axis=1))
        if len(bad):
            return Check(False, "law", tuple(int(x) for x in K.code.digits()[bad[0]]))
    dist = distance3_check(K.code)
    if not dist:
        return dist
    size = layout.component_size
    if size is not None and len(K.code) != size:
        return Check(False, "cardinality", (len(K.code), size))
    return PASS


def component_shift(K: MuComponent, target_mu: Sequence[int]) -> MuComponent:
    """Translate K so that its profile becomes target_mu (linear sigma only).

    The translation vector is supported on the first coordinate of each block.
    """
    target_mu = tuple(int(x) for x in target_mu)
    if len(target_mu) != K.layout.t:
        raise LengthMismatch(f"target mu has length {len(target_mu)}, expected {K.layout.t}")
    coeffs = sigma_linear_coefficients(K.sigma)
    if coeffs is None:
        raise NonlinearSigma("shift needs every sigma_i linear with zero constant")
    F = field_make(K.code.q)
    z = np.zeros(K.layout.n, dtype=np.uint8)
    for i, (a, b) in enumerate(zip(target_mu, K.mu)):
        z[i * K.layout.l] = F.mul(F.sub(a, b), F.inv(coeffs[i][0]))
    if len(K.code):
        D = F.add_table[K.code.digits(), z[None, :]]
        code = Code.from_digits(F.q, D)
    else:
        code = K.code
    return MuComponent(code, target_mu, K.layout, K.sigma)
