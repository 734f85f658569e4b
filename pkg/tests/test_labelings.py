import itertools
from math import comb

import pytest
from hypothesis import given, strategies as st

from magic24.errors import Inconsistent, WrongStructure
from magic24.incidence import antipode_map, triangles
from magic24.labelings import (
    TRIT_PERMUTATIONS,
    cell_counts,
    colex_rank,
    colex_unrank,
    complement,
    enumerate_parity_binary,
    parity_solutions_gf2,
    parity_system,
    permute_trits,
    solve_gf2,
    split_ranks,
)


@given(st.integers(1, 12).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n))))
def test_colex_matches_numeric_order(nk):
    n, k = nk
    vecs = sorted(x for x in range(1 << n) if x.bit_count() == k)
    assert len(vecs) == comb(n, k)
    for r, x in enumerate(vecs):
        assert colex_rank(x) == r
        assert colex_unrank(r, k) == x


def test_split_ranks_covers_range():
    parts = split_ranks(100, 7)
    assert parts[0][0] == 0 and parts[-1][1] == 100
    assert all(a[1] == b[0] for a, b in zip(parts, parts[1:]))


def test_parity_counts(parity):
    assert parity.total_candidates == comb(24, 12) == 2704156
    assert len(parity.solutions) == 256
    assert len(parity.balanced) == 64
    assert len(parity.unbalanced) == 192
    assert list(parity.solutions) == sorted(parity.solutions)


def test_all_zero_rejected(cell24, parity):
    assert 0 not in parity.solutions
    assert all(c == 0 for c in cell_counts(cell24, 0))


def test_cell_counts_of_solutions(cell24, parity):
    for b in parity.solutions:
        counts = cell_counts(cell24, b)
        assert set(counts) <= {1, 3, 5}
        assert (set(counts) == {3}) == (b in parity.balanced)
        assert b.bit_count() == 12


def test_gf2_agrees_with_brute_force(cell24, parity):
    assert parity_solutions_gf2(cell24) == frozenset(parity.solutions)


def test_gf2_coset(cell24):
    coset = parity_system(cell24)
    assert coset.rank == 14
    assert len(coset) == 2 ** (24 - coset.rank) == 1024
    masks = cell24.cell_masks
    for x in coset:
        assert all((x & m).bit_count() % 2 == 1 for m in masks)


def test_gf2_small_systems():
    sol = solve_gf2([0b011, 0b110], [1, 0], 3)
    assert sol.rank == 2 and len(sol) == 2
    assert {x for x in sol} == {
        x for x in range(8) if (x & 0b011).bit_count() % 2 == 1 and (x & 0b110).bit_count() % 2 == 0
    }
    with pytest.raises(Inconsistent):
        solve_gf2([0b1, 0b1], [0, 1], 1)


def test_parity_requires_24cell(cube):
    with pytest.raises(WrongStructure):
        enumerate_parity_binary(cube)


def test_antipodal_parity(cell24, parity):
    a = antipode_map(cell24)
    for b in parity.solutions:
        assert all((b >> v & 1) != (b >> a[v] & 1) for v in range(24))


def test_solutions_are_group_invariant(parity, group24):
    sols = set(parity.solutions)
    for p in group24.sorted_elements[::7]:
        for b in parity.solutions:
            moved = sum(1 << p[v] for v in range(24) if b >> v & 1)
            assert moved in sols


def test_complement(parity):
    bal = set(parity.balanced)
    for b in parity.balanced:
        c = complement(b)
        assert c in bal
        assert complement(c) == b
        assert c.bit_count() == 12


def test_ternary_definition(cell24, trits):
    idx = cell24.coord_index
    assert trits[idx[(1, 1, 0, 0)]] == 0
    assert trits[idx[(1, 0, 1, 0)]] == 1
    assert trits[idx[(1, 0, 0, 1)]] == 2
    assert sorted(trits) == [0] * 8 + [1] * 8 + [2] * 8


def test_ternary_per_cell(cell24, trits):
    for c in cell24.cells:
        assert sorted(trits[v] for v in c.members) == [0, 0, 1, 1, 2, 2]


def test_ternary_triangles(cell24, trits):
    for t in triangles(cell24):
        assert sorted(trits[v] for v in t) == [0, 1, 2]


def test_ternary_classes_are_cross_polytopes(cell24, trits):
    a = antipode_map(cell24)
    pts = [v.coords for v in cell24.vertices]
    for cls in range(3):
        members = [v for v in range(24) if trits[v] == cls]
        for u, w in itertools.combinations(members, 2):
            d = sum(x * y for x, y in zip(pts[u], pts[w]))
            assert d == (-2 if a[u] == w else 0)


def test_ternary_antipodal(cell24, trits):
    a = antipode_map(cell24)
    assert all(trits[v] == trits[a[v]] for v in range(24))


def test_permute_trits(cell24, trits):
    assert permute_trits(trits, (0, 1, 2)) == trits
    variants = {permute_trits(trits, pi) for pi in TRIT_PERMUTATIONS}
    assert len(variants) == 6
    for t in variants:
        for c in cell24.cells:
            assert sorted(t[v] for v in c.members) == [0, 0, 1, 1, 2, 2]


def test_parity_workers_identical(cell24, parity):
    assert enumerate_parity_binary(cell24, workers=4) == parity
