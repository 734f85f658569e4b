"""Magic labelings as mixed-radix numbers built from digit labelings.

Three balanced binary labelings and one ternary labeling give each vertex a
digit tuple.  When the 24 tuples are all different they run through every
combination in {0,1}^3 x {0,1,2}, so reading them as a mixed-radix number
(plus one) labels the vertices 1..24.  Every cell of a balanced labeling holds
three ones, and every cell holds each trit twice, so all cell sums agree.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from .errors import InvalidSuperimposition, PoolMismatch
from .incidence import IncidenceStructure, build_24cell, magic_rows
from .labelings import (
    TRIT_PERMUTATIONS,
    bits_of,
    enumerate_parity_binary,
    permute_trits,
    ternary_16cell,
    trit_perm_name,
)

N_VERTICES = 24
FULL = (1 << 24) - 1


@dataclass(frozen=True)
class WeightScheme:
    """Digit order with the ternary digit at ``ternary_position`` (0 = most significant)."""

    ternary_position: int

    def __post_init__(self):
        if self.ternary_position not in range(4):
            raise ValueError(f"ternary position {self.ternary_position} not in 0..3")

    @property
    def radices(self) -> tuple:
        r = [2, 2, 2]
        r.insert(self.ternary_position, 3)
        return tuple(r)

    @cached_property
    def weights(self) -> tuple:
        w = [1]
        for r in reversed(self.radices[1:]):
            w.append(w[-1] * r)
        return tuple(reversed(w))

    def order_digits(self, b1, b2, b3, t) -> list:
        d = [b1, b2, b3]
        d.insert(self.ternary_position, t)
        return d


SCHEMES = tuple(WeightScheme(p) for p in range(4))


@dataclass(frozen=True)
class Provenance:
    b1: int
    b2: int
    b3: int
    trit_perm: tuple
    scheme: int


@dataclass(frozen=True)
class MagicLabeling:
    labels: tuple
    provenance: Optional[Provenance] = None

    def to_json(self) -> dict:
        out = {"labels": list(self.labels)}
        p = self.provenance
        if p is not None:
            out.update(b1=p.b1, b2=p.b2, b3=p.b3,
                       trit_perm=trit_perm_name(p.trit_perm), scheme=p.scheme)
        return out


def superimpose(b1: int, b2: int, b3: int, t: Sequence[int]) -> Optional[tuple]:
    """Per-vertex digit tuples, or None unless they hit all 24 combinations."""
    digits = tuple(
        (b1 >> v & 1, b2 >> v & 1, b3 >> v & 1, t[v]) for v in range(len(t))
    )
    if len(digits) != 24 or len(set(digits)) != 24:
        return None
    return digits


def _code_array(pool: Sequence[int], t: Sequence[int]) -> np.ndarray:
    """codes[i, j, k, v] = 12*b_i(v) + 6*b_j(v) + 3*b_k(v) + t(v), all in 0..23."""
    bits = np.array([bits_of(b) for b in pool], dtype=np.int64)
    tv = np.asarray(t, dtype=np.int64)
    return (12 * bits[:, None, None, :] + 6 * bits[None, :, None, :]
            + 3 * bits[None, None, :, :] + tv)


def enumerate_triples(pool: Sequence[int], t: Sequence[int]) -> list:
    """Ordered triples from the 64 balanced labelings whose superimposition with ``t`` is valid."""
    pool = list(pool)
    if len(pool) != 64:
        raise PoolMismatch(f"expected 64 balanced labelings, got {len(pool)}")
    hit = np.bitwise_or.reduce(np.left_shift(1, _code_array(pool, t)), axis=-1)
    idx = np.argwhere(hit == FULL)
    return [(pool[i], pool[j], pool[k]) for i, j, k in idx]


def _label_table(w: WeightScheme) -> dict:
    return {
        dv: 1 + sum(wt * d for wt, d in zip(w.weights, w.order_digits(*dv)))
        for dv in itertools.product((0, 1), (0, 1), (0, 1), (0, 1, 2))
    }


_TABLES = {w: _label_table(w) for w in SCHEMES}


def _labels(digits: tuple, w: WeightScheme) -> tuple:
    table = _TABLES[w]
    return tuple(table[dv] for dv in digits)


def compose(b1: int, b2: int, b3: int, t: Sequence[int], w: WeightScheme,
            trit_perm: tuple = (0, 1, 2)) -> MagicLabeling:
    digits = superimpose(b1, b2, b3, t)
    if digits is None:
        raise InvalidSuperimposition("digit tuples do not cover all 24 combinations")
    return MagicLabeling(_labels(digits, w),
                         Provenance(b1, b2, b3, tuple(trit_perm), w.ternary_position))


def _construct_for_perm(args) -> list:
    pi, pool, t0 = args
    t = permute_trits(t0, pi)
    out = []
    for b1, b2, b3 in enumerate_triples(pool, t):
        digits = superimpose(b1, b2, b3, t)
        for w in SCHEMES:
            out.append(MagicLabeling(_labels(digits, w), Provenance(b1, b2, b3, pi, w.ternary_position)))
    ok = magic_rows(build_24cell(), [m.labels for m in out])
    if not ok.all():
        raise AssertionError(f"composed labeling is not magic: {out[int(np.argmin(ok))]}")
    return out


@dataclass(frozen=True)
class Construction:
    labelings: tuple  # sorted by label sequence
    raw: int
    triples_per_perm: dict

    @property
    def distinct(self) -> int:
        return len({m.labels for m in self.labelings})

    def label_array(self) -> np.ndarray:
        return np.array([m.labels for m in self.labelings], dtype=np.int64)


def _sort_key(m: MagicLabeling) -> tuple:
    p = m.provenance
    return m.labels, p.b1, p.b2, p.b3, p.trit_perm, p.scheme


def construct_all(s: Optional[IncidenceStructure] = None, workers: int = 1,
                  pool: Optional[Sequence[int]] = None) -> Construction:
    """All 6 x |triples| x 4 compositions over the canonical ternary labeling."""
    s = s or build_24cell()
    if pool is None:
        pool = enumerate_parity_binary(s, workers=workers).balanced
    t0 = ternary_16cell(s)
    jobs = [(pi, tuple(pool), t0) for pi in TRIT_PERMUTATIONS]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as ex:
            parts = list(ex.map(_construct_for_perm, jobs))
    else:
        parts = [_construct_for_perm(j) for j in jobs]
    per_perm = {trit_perm_name(pi): len(p) // len(SCHEMES) for pi, p in zip(TRIT_PERMUTATIONS, parts)}
    emitted = [m for p in parts for m in p]
    emitted.sort(key=_sort_key)
    return Construction(tuple(emitted), len(emitted), per_perm)
