"""
Acceptance criteria, one test per criterion.

Run with ``pytest tests/test_acceptance.py``; the terminal summary prints
one PASS/FAIL line per criterion.
"""

from __future__ import annotations

import time
from itertools import permutations, product

import pytest

from corpus import F2, F3, binary_assembly, mp_binary, nonlinear_n7
from perfcodes.census import generate_assemblies, generate_distinct_codes, lower_bound
from perfcodes.codespace import Code, apply_monomial, is_perfect, rank
from perfcodes.combiner import Assembly, assembly_rank_bound_check, combine
from perfcodes.components import build_mollard_phelps, build_phelps, component_shift, component_verify
from perfcodes.decomposer import EXHAUSTIVE_LIMIT, decompose, decomposition_verify
from perfcodes.hamming import PerfectPartition, hamming_code, perfect_partition
from perfcodes.quasigroup import qg_count, qg_enumerate, vh_pair_check


def corpus_codes():
    return {
        "Hamming(2,3)": hamming_code(2, 3),
        "Hamming(3,2)": hamming_code(3, 2),
        "nonlinear n=7": nonlinear_n7(),
    }


def admissible_r(C: Code) -> list[int]:
    m = {7: 3, 4: 2}[C.n]
    return [r for r in range(1, m) if r <= C.n - rank(C)]


def swapped_ternary_assemblies(count: int) -> list[Assembly]:
    """Assemblies at q=3, n=13 with one component replaced by a shifted foreign component.

    Generation varies the last outer word fastest, so assembly i+1 carries
    quasigroup i+1 on that word; its component is shifted onto word i of
    the first assembly, which uses quasigroup 0 everywhere.
    """
    base = list(generate_assemblies(13, 3, limit=count + 1))
    A = base[0]
    keys = sorted(A.components)
    out = []
    for i in range(count):
        comps = dict(A.components)
        comps[keys[i]] = component_shift(base[i + 1].components[keys[-1]], keys[i])
        out.append(Assembly(A.outer, comps, A.layout, A.sigma))
    return out


def binary_assemblies() -> list[Assembly]:
    mp = binary_assembly(mp_binary((0, 0, 0)), mp_binary((1, 1, 1)))
    swapped = binary_assembly(mp_binary((0, 0, 0), c=1), component_shift(mp_binary((0, 0, 0)), (1, 1, 1)))
    return [mp, swapped, *generate_assemblies(7, 2), decompose(nonlinear_n7(), 2).assembly()]


def check_cardinalities(A: Assembly) -> None:
    L = A.layout
    q = L.q
    assert len(A.outer) == q ** (L.t - L.r)
    for K in A.components.values():
        assert len(K) == q ** (L.n - L.m - (L.t - L.r))
    assert sum(len(K) for K in A.components.values()) == q ** (L.n - L.m)


@pytest.mark.criterion(1, "Hamming codes are perfect, each check under 10 s")
def test_criterion_1_hamming_perfect():
    for q, m in [(2, 3), (2, 4), (3, 2), (3, 3), (4, 2), (5, 2)]:
        t0 = time.perf_counter()
        C = hamming_code(q, m)
        check = is_perfect(C)
        elapsed = time.perf_counter() - t0
        assert check, (q, m, check.reason, check.witness)
        assert elapsed < 10, (q, m, elapsed)


@pytest.mark.criterion(2, "exact quasigroup counts, total under 60 s")
def test_criterion_2_quasigroup_counts():
    t0 = time.perf_counter()
    for m in (1, 2, 3):
        assert qg_count(m, 3) == 3 * 2**m
    assert [qg_count(1, 3), qg_count(2, 3), qg_count(3, 3)] == [6, 12, 24]
    for m in range(1, 7):
        assert qg_count(m, 2) == 2
    assert qg_count(1, 6) == 720 >= 2 * 6**2
    assert time.perf_counter() - t0 < 60


@pytest.mark.criterion(3, "exhaustive generation meets the bound at (7,2) and (4,3)")
def test_criterion_3_exhaustive_generation():
    for n, q, expected in [(7, 2, 4), (4, 3, 6)]:
        codes = generate_distinct_codes(n, q)
        assert all(is_perfect(C) for C in codes)
        assert len(set(codes)) == len(codes) == expected == lower_bound(n, q).bound


@pytest.mark.criterion(4, "20 distinct perfect codes at q=3, n=13, each build+verify under 60 s")
def test_criterion_4_large_desk_case():
    codes = []
    timings = []
    stream = generate_assemblies(13, 3, limit=20)
    while True:
        t0 = time.perf_counter()
        A = next(stream, None)  # the first assembly builds all nine components from scratch
        if A is None:
            break
        assert len(A.components) == 9
        C = combine(A)
        check = is_perfect(C)  # covering check over all 3^13 words
        timings.append(time.perf_counter() - t0)
        assert check and len(C) == 3**10 == 59049
        codes.append(C)
    assert len(codes) == 20 and len(set(codes)) == 20
    assert max(timings) < 60, timings


@pytest.mark.criterion(5, "decomposition round trip with exhaustive inner-law, inner-overlap and component-distance checks")
def test_criterion_5_round_trip():
    seen = 0
    for name, C in corpus_codes().items():
        rs = admissible_r(C)
        assert rs, name
        for r in rs:
            dec = decompose(C, r)
            L = dec.layout
            assert L.q ** (L.l * L.t) <= EXHAUSTIVE_LIMIT  # the overlap scan covers every prefix pair
            assert combine(dec.assembly()) == apply_monomial(dec.psi, C), (name, r)
            check = decomposition_verify(dec, C)
            assert check, (name, r, check.reason, check.witness)
            seen += 1
    assert seen == 5  # r in {1,2}, {1}, {1,2}


@pytest.mark.criterion(6, "cardinality identities on every decomposition and assembly")
def test_criterion_6_cardinalities():
    assemblies = binary_assemblies()
    assemblies += list(generate_assemblies(4, 3))
    assemblies += list(generate_assemblies(13, 3, limit=3))
    assemblies += swapped_ternary_assemblies(2)
    for C in corpus_codes().values():
        for r in admissible_r(C):
            assemblies.append(decompose(C, r).assembly())
    for A in assemblies:
        check_cardinalities(A)
        assert len(combine(A)) == A.layout.q ** (A.layout.n - A.layout.m)


@pytest.mark.criterion(7, "rank <= n - r for linear-sigma assemblies, swapped ones included")
def test_criterion_7_rank_bound():
    for A in binary_assemblies():
        assert A.layout.r == 2
        assert assembly_rank_bound_check(A)
    ternary = list(generate_assemblies(13, 3, limit=4)) + swapped_ternary_assemblies(3)
    for A in ternary:
        assert A.layout.r == 2
        assert assembly_rank_bound_check(A)
        assert rank(combine(A)) <= 11


def _same(a, b) -> bool:
    return a.code == b.code and a.mu == b.mu and a.sigma == b.sigma and component_verify(a) == component_verify(b)


@pytest.mark.criterion(8, "filter and solver builders agree on the input grids")
def test_criterion_8_oracle_agreement():
    builds = 0

    # q = 2, k = 1, t = 3
    perms2 = list(qg_enumerate(1, 2))
    vh2 = [(v, h) for v in perms2 for h in perms2 if vh_pair_check(v, h, F2)]
    V2 = list(qg_enumerate(2, 2))
    H2 = list(qg_enumerate(4, 2))
    Q2 = list(qg_enumerate(3, 2))
    singles2 = perfect_partition(2, 1)
    orders2 = [singles2, PerfectPartition(2, 1, singles2.parts[::-1])]
    for mu in product(range(2), repeat=3):
        for (v, h), Vs, H, c in product(vh2, product(V2, repeat=3), H2, range(2)):
            Cs = Code.from_words(2, 1, [(c,)])
            args = (mu, Cs, v, h, list(Vs), [H], F2)
            assert _same(build_mollard_phelps(*args, method="filter"), build_mollard_phelps(*args, method="solve"))
            builds += 1
        for (v, h), Q in product(vh2, Q2):
            for Vs in product(V2, repeat=3):
                args = (mu, [singles2] * 4, v, h, list(Vs), Q, F2)
                assert _same(build_phelps(*args, method="filter"), build_phelps(*args, method="solve"))
                builds += 1
            for parts in product(orders2, repeat=4):
                args = (mu, list(parts), v, h, [V2[0]] * 3, Q, F2)
                assert _same(build_phelps(*args, method="filter"), build_phelps(*args, method="solve"))
                builds += 1

    # q = 3, k = 1, t = 1
    sq3 = list(qg_enumerate(2, 3))
    vh3 = [(v, h) for v in sq3 for h in sq3 if vh_pair_check(v, h, F3)]
    Q3 = list(qg_enumerate(1, 3))
    singles3 = perfect_partition(3, 1)
    orders3 = [PerfectPartition(3, 1, tuple(singles3.parts[i] for i in p)) for p in permutations(range(3))]
    for (v, h), V in product(vh3, sq3):
        for mu, Q in product(range(3), Q3):
            args = ((mu,), [singles3] * 2, v, h, [V], Q, F3)
            assert _same(build_phelps(*args, method="filter"), build_phelps(*args, method="solve"))
            builds += 1
        for i, H in enumerate(sq3):
            mu, c = i % 3, (i // 3) % 3
            args = ((mu,), Code.from_words(3, 1, [(c,)]), v, h, [V], [H], F3)
            assert _same(build_mollard_phelps(*args, method="filter"), build_mollard_phelps(*args, method="solve"))
            builds += 1
    v, h = vh3[0]
    for mu, Q, p1, p2 in product(range(3), Q3, orders3, orders3):
        args = ((mu,), [p1, p2], v, h, [sq3[0]], Q, F3)
        assert _same(build_phelps(*args, method="filter"), build_phelps(*args, method="solve"))
        builds += 1
    assert builds > 20000


@pytest.mark.criterion(9, "bound report for (13,3) is exactly 48^9 with the R diagnostic")
def test_criterion_9_bound_report():
    rep = lower_bound(13, 3)
    assert isinstance(rep.bound, int)
    assert rep.bound == 48**9 == 1352605460594688
    assert (rep.t, rep.Qcount, rep.R) == (4, 48, 9)
    assert rep.diagnostic is not None


def test_swapped_components_change_the_code():
    """Sanity check for the swapped assemblies used above: they really differ from their base."""
    base = next(generate_assemblies(13, 3, limit=1))
    swapped = swapped_ternary_assemblies(1)[0]
    assert combine(base) != combine(swapped)
    assert is_perfect(combine(swapped))


def test_nonlinear_corpus_code_is_nonlinear():
    C = nonlinear_n7()
    assert (0,) * 7 not in C
    assert rank(C) == 5 and admissible_r(C) == [1, 2]
