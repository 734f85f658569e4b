import itertools

import pytest

from magic24.construct import (
    SCHEMES,
    WeightScheme,
    compose,
    enumerate_triples,
    superimpose,
)
from magic24.errors import InvalidSuperimposition, PoolMismatch
from magic24.incidence import verify_labeling
from magic24.labelings import TRIT_PERMUTATIONS, bits_of, permute_trits


def brute_triples(pool, t):
    out = []
    for b1, b2, b3 in itertools.product(pool, repeat=3):
        tuples = {(b1 >> v & 1, b2 >> v & 1, b3 >> v & 1, t[v]) for v in range(24)}
        if len(tuples) == 24:
            out.append((b1, b2, b3))
    return out


@pytest.fixture(scope="module")
def triples(parity, trits):
    return enumerate_triples(parity.balanced, trits)


def test_scheme_weights():
    got = {w.ternary_position: w.weights for w in SCHEMES}
    assert got == {3: (12, 6, 3, 1), 2: (12, 6, 2, 1), 1: (12, 4, 2, 1), 0: (8, 4, 2, 1)}
    with pytest.raises(ValueError):
        WeightScheme(4)


def test_triple_count(triples, parity, trits):
    assert len(triples) == 3072
    assert sorted(triples) == sorted(brute_triples(parity.balanced, trits))


def test_triples_have_distinct_entries(triples):
    assert all(len(set(t)) == 3 for t in triples)


@pytest.mark.parametrize("pi", TRIT_PERMUTATIONS)
def test_triple_count_per_trit_permutation(parity, trits, pi):
    assert len(enumerate_triples(parity.balanced, permute_trits(trits, pi))) == 3072


def test_pool_must_be_balanced_set(parity, trits):
    with pytest.raises(PoolMismatch):
        enumerate_triples(parity.balanced[:10], trits)


def test_superimpose(triples, parity, trits):
    b = parity.balanced[0]
    assert superimpose(b, b, parity.balanced[1], trits) is None
    b1, b2, b3 = triples[0]
    digits = superimpose(b1, b2, b3, trits)
    assert len(set(digits)) == 24
    assert superimpose(b2, b1, b3, trits) is not None


def test_compose_formulas(triples, trits):
    b1, b2, b3 = triples[17]
    x1, x2, x3 = bits_of(b1), bits_of(b2), bits_of(b3)
    last = compose(b1, b2, b3, trits, WeightScheme(3)).labels
    first = compose(b1, b2, b3, trits, WeightScheme(0)).labels
    for v in range(24):
        assert last[v] == 12 * x1[v] + 6 * x2[v] + 3 * x3[v] + trits[v] + 1
        assert first[v] == 8 * trits[v] + 4 * x1[v] + 2 * x2[v] + x3[v] + 1


def test_compose_rejects_invalid(parity, trits):
    b = parity.balanced[0]
    with pytest.raises(InvalidSuperimposition):
        compose(b, b, b, trits, SCHEMES[0])


@pytest.mark.parametrize("w", SCHEMES)
def test_cell_sum_from_digit_counts(cell24, parity, trits, w):
    # each cell holds three ones per binary digit and two of each trit
    for b in parity.balanced:
        assert all(sum(b >> v & 1 for v in c.members) == 3 for c in cell24.cells)
    assert all(sum(trits[v] for v in c.members) == 6 for c in cell24.cells)
    digit_sums = w.order_digits(3, 3, 3, 6)
    assert sum(wt * d for wt, d in zip(w.weights, digit_sums)) + 6 == 75


def test_construction_counts(construction):
    assert construction.raw == 6 * 3072 * 4 == 73728
    assert construction.distinct == 73728
    assert set(construction.triples_per_perm.values()) == {3072}


def test_every_construction_is_magic(cell24, construction):
    for m in construction.labelings:
        rep = verify_labeling(cell24, m.labels)
        assert rep.magic and rep.magic_sum == 75


def test_construction_sorted_with_provenance(construction, trits):
    labels = [m.labels for m in construction.labelings]
    assert labels == sorted(labels)
    m = construction.labelings[123]
    p = m.provenance
    again = compose(p.b1, p.b2, p.b3, permute_trits(trits, p.trit_perm), SCHEMES[p.scheme])
    assert again.labels == m.labels


def test_validity_independent_of_scheme(construction):
    by_scheme = {}
    for m in construction.labelings:
        p = m.provenance
        by_scheme.setdefault(p.scheme, set()).add((p.b1, p.b2, p.b3, p.trit_perm))
    assert len(by_scheme) == 4
    assert len({frozenset(v) for v in by_scheme.values()}) == 1


def test_orbits(orbits):
    assert len(orbits) == 64
    assert set(orbits.values()) == {1152}


def test_to_json(construction):
    row = construction.labelings[0].to_json()
    assert set(row) == {"labels", "b1", "b2", "b3", "trit_perm", "scheme"}
    assert row["trit_perm"].startswith("012→")
