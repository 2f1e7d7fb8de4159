from __future__ import annotations

from itertools import product

import numpy as np
import pytest

from perfcodes import errors
from perfcodes.gfq import field_add, field_inv, field_make, field_mul, kernel_basis, matrix_rank, row_reduce

FIELDS = [2, 3, 4, 5, 7, 8, 9]


def clmul_oracle(a: int, b: int, modulus: tuple[int, ...]) -> int:
    """Carry-less product reduced by the modulus, for characteristic 2."""
    mod = int("".join(map(str, modulus)), 2)
    deg = len(modulus) - 1
    prod = 0
    for i in range(b.bit_length()):
        if b >> i & 1:
            prod ^= a << i
    for i in range(prod.bit_length() - 1, deg - 1, -1):
        if prod >> i & 1:
            prod ^= mod << (i - deg)
    return prod


def test_examples():
    assert field_add(field_make(3), 1, 2) == 0
    F4 = field_make(4)
    assert F4.modulus == (1, 1, 1)
    assert field_mul(F4, 2, 2) == 3
    assert field_add(F4, 2, 3) == 1
    assert field_mul(field_make(3), 2, 2) == 1
    assert field_inv(field_make(5), 2) == 3


@pytest.mark.parametrize("q", [4, 8, 16])
def test_char2_against_clmul(q):
    F = field_make(q)
    for a, b in product(range(q), repeat=2):
        assert F.mul(a, b) == clmul_oracle(a, b, F.modulus)
        assert F.add(a, b) == a ^ b


@pytest.mark.parametrize("q", [2, 3, 5, 7])
def test_prime_fields_are_modular(q):
    F = field_make(q)
    a, b = np.meshgrid(range(q), range(q), indexing="ij")
    assert (F.add_table == (a + b) % q).all()
    assert (F.mul_table == (a * b) % q).all()


@pytest.mark.parametrize("q", FIELDS)
def test_field_axioms_exhaustive(q):
    F = field_make(q)
    A, M = F.add_table.astype(int), F.mul_table.astype(int)
    x, y, z = np.meshgrid(range(q), range(q), range(q), indexing="ij")
    assert (A[A[x, y], z] == A[x, A[y, z]]).all()
    assert (M[M[x, y], z] == M[x, M[y, z]]).all()
    assert (M[x, A[y, z]] == A[M[x, y], M[x, z]]).all()
    assert (A == A.T).all() and (M == M.T).all()
    assert (A[0] == np.arange(q)).all() and (M[1] == np.arange(q)).all()
    assert (A[np.arange(q), F.neg_table] == 0).all()
    assert (M[np.arange(1, q), F.inv_table[1:]] == 1).all()
    assert (A[F.sub_table, np.arange(q)] == np.arange(q)[:, None]).all()


@pytest.mark.parametrize("q", [1, 6, 10, 12, 15, 17, 25])
def test_rejects_non_prime_powers(q):
    with pytest.raises(errors.NotPrimePower):
        field_make(q)


def test_deterministic():
    field_make.cache_clear()
    a = field_make(9)
    field_make.cache_clear()
    b = field_make(9)
    assert a.modulus == b.modulus == (1, 0, 1)
    assert (a.mul_table == b.mul_table).all()


def test_input_errors():
    F = field_make(5)
    with pytest.raises(errors.IndexOutOfRange):
        F.add(5, 0)
    with pytest.raises(errors.ZeroInverse):
        F.inv(0)


def test_linear_algebra():
    F = field_make(3)
    M = np.array([[1, 2, 0, 1], [2, 1, 0, 2], [0, 0, 1, 1]], dtype=np.uint8)
    R, piv = row_reduce(M, F)
    assert piv == [0, 2]
    assert matrix_rank(M, F) == 2
    K = kernel_basis(M, F, 4)
    assert K.shape == (2, 4)
    assert not ((M.astype(int) @ K.T.astype(int)) % 3).any()
