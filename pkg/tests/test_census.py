from __future__ import annotations

from fractions import Fraction

import pytest

from perfcodes import errors
from perfcodes.census import (
    generate_assemblies,
    generate_distinct_codes,
    log_bound,
    lower_bound,
    qg_count_order3,
    qg_count_order4_leading,
    qg_product_lower_bound,
)
from perfcodes.codespace import is_perfect
from perfcodes.quasigroup import qg_count


def test_bound_examples():
    r = lower_bound(7, 2)
    assert (r.t, r.Qcount, r.R, r.bound) == (3, 2, 2, 4)
    assert r.line() == "7 2 3 2 2 4"
    r = lower_bound(4, 3)
    assert (r.t, r.Qcount, r.R, r.bound) == (1, 6, 1, 6)
    r = lower_bound(13, 3)
    assert (r.t, r.Qcount, r.R) == (4, 48, 9)
    assert r.bound == 48**9 == 1352605460594688
    assert r.provenance == "formula"


def test_r_denominator_diagnostic():
    r = lower_bound(4, 3)
    assert r.printed_R == Fraction(3, 1)
    assert r.diagnostic is not None and "3" in r.diagnostic
    assert lower_bound(7, 2).printed_R == Fraction(8, 5)
    assert lower_bound(7, 2).diagnostic is not None


def test_bound_rejects_bad_lengths():
    with pytest.raises(errors.BadLength):
        lower_bound(8, 2)
    with pytest.raises(errors.BadLength):
        lower_bound(13, 2)
    assert lower_bound(3, 2).bound == 2  # t = 1: two permutations, one component


def test_formula_helpers():
    assert [qg_count_order3(m) for m in (1, 2, 3)] == [qg_count(m, 3) for m in (1, 2, 3)]
    assert qg_count_order4_leading(1) == 3**2 * 2**3
    assert qg_product_lower_bound(1, 2, 2, 6) == 72 <= qg_count(1, 6)
    assert log_bound(lower_bound(7, 2)) == pytest.approx(2 * 0.6931471805599453)


@pytest.mark.parametrize("n,q", [(7, 2), (4, 3)])
def test_exhaustive_generation_meets_bound(n, q):
    codes = generate_distinct_codes(n, q)
    assert len(codes) == len(set(codes)) == lower_bound(n, q).bound
    assert all(is_perfect(C) for C in codes)


def test_generation_guards():
    with pytest.raises(errors.TooLarge):
        next(generate_assemblies(13, 3))
    assemblies = list(generate_assemblies(13, 3, limit=3))
    assert len(assemblies) == 3
    assert all(len(A.components) == 9 for A in assemblies)
