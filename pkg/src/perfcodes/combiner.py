"""Glue mu-components indexed by an outer perfect code into one perfect code."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .codespace import Code, CodeParameters, Word, is_perfect, rank
from .components import MuComponent, component_verify
from .errors import (
    ComponentLawViolation,
    LayoutMismatch,
    NonlinearSigma,
    NotPerfectResult,
    OuterNotPerfect,
)
from .quasigroup import SigmaFamily, sigma_linear_coefficients


@dataclass
class Assembly:
    outer: Code
    components: dict[Word, MuComponent]
    layout: CodeParameters
    sigma: SigmaFamily


def _check_layout(A: Assembly) -> None:
    L = A.layout
    if not L.combinable:
        raise LayoutMismatch(f"layout {L} cannot be combined into a perfect code")
    q = L.q
    if L.t != (q**L.r - 1) // (q - 1) or L.l != q ** (L.m - L.r):
        raise LayoutMismatch("layout violates t = (q^r-1)/(q-1), l = q^(m-r)")
    if (A.outer.q, A.outer.n) != (q, L.t):
        raise LayoutMismatch(f"outer code must have length t={L.t} over GF({q})")
    if A.sigma.t != L.t or A.sigma.l != L.l or A.sigma.q != q:
        raise LayoutMismatch("sigma family does not match the layout")
    keys = set(A.components)
    outer = set(A.outer.words)
    if keys != outer:
        missing = sorted(outer - keys)
        extra = sorted(keys - outer)
        raise LayoutMismatch(f"components do not match outer code (missing {missing[:3]}, extra {extra[:3]})")
    for mu, K in A.components.items():
        if K.layout.n != L.n or K.layout.t != L.t or K.layout.l != L.l:
            raise LayoutMismatch(f"component {mu} has layout {K.layout}")
        if tuple(K.mu) != tuple(mu):
            raise LayoutMismatch(f"component stored under {mu} claims mu={K.mu}")


def combine(A: Assembly) -> Code:
    """Union of the components, checked to be perfect."""
    _check_layout(A)
    if not is_perfect(A.outer):
        raise OuterNotPerfect("outer code is not perfect")
    for mu in sorted(A.components):
        check = component_verify(A.components[mu], A.sigma)
        if not check:
            raise ComponentLawViolation(f"component {mu}: {check.reason} {check.witness}")
    L = A.layout
    total = sum(len(K) for K in A.components.values())
    if total != L.q ** (L.n - L.m):
        raise ComponentLawViolation(f"components hold {total} words, expected {L.q}^{L.n - L.m}")
    parts = [A.components[mu].code for mu in sorted(A.components)]
    C = Code(L.q, L.n, np.concatenate([p.packed for p in parts]))
    check = is_perfect(C)
    if not check:
        raise NotPerfectResult(f"union is not perfect: {check.reason}", check.witness)
    return C


def assembly_rank_bound_check(A: Assembly) -> bool:
    """rank(combine(A)) <= n - r; requires a linear sigma family."""
    if sigma_linear_coefficients(A.sigma) is None:
        raise NonlinearSigma("rank bound needs linear sigma")
    return rank(combine(A)) <= A.layout.n - A.layout.r
