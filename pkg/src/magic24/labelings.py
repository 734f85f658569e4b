"""Binary parity labelings and the ternary three-16-cell labeling.

A binary labeling is an int whose bit ``i`` is the digit of vertex position
``i``.  Weight-``k`` bit vectors in increasing numeric order are exactly the
k-subsets in colexicographic order, so a rank range maps to a contiguous
integer range and the brute-force search splits into disjoint chunks.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .errors import Inconsistent, WrongStructure
from .incidence import IncidenceStructure


# -- colex ranking of k-subsets encoded as bit vectors ----------------------

def colex_rank(x: int) -> int:
    """Rank of bit vector ``x`` among vectors of the same weight."""
    rank, i = 0, 0
    pos = 0
    while x:
        if x & 1:
            i += 1
            rank += comb(pos, i)
        x >>= 1
        pos += 1
    return rank


def colex_unrank(rank: int, k: int) -> int:
    """Inverse of :func:`colex_rank` for weight ``k``."""
    x = 0
    for i in range(k, 0, -1):
        pos = i - 1
        while comb(pos + 1, i) <= rank:
            pos += 1
        rank -= comb(pos, i)
        x |= 1 << pos
    return x


def split_ranks(total: int, parts: int) -> list:
    bounds = [total * j // parts for j in range(parts + 1)]
    return [(a, b) for a, b in zip(bounds, bounds[1:]) if a < b]


def _scan_chunk(args) -> np.ndarray:
    """Odd-parity solutions among weight-``k`` vectors with rank in [lo, hi)."""
    n, k, lo, hi, masks = args
    start = colex_unrank(lo, k)
    stop = colex_unrank(hi, k) if hi < comb(n, k) else 1 << n
    step = 1 << 22
    found = []
    mask_arr = np.array(masks, dtype=np.uint64)
    for a in range(start, stop, step):
        x = np.arange(a, min(a + step, stop), dtype=np.uint64)
        x = x[np.bitwise_count(x) == k]
        ok = np.ones(len(x), dtype=bool)
        for m in mask_arr:
            ok &= (np.bitwise_count(x & m) & 1) == 1
        found.append(x[ok])
    return np.concatenate(found) if found else np.empty(0, dtype=np.uint64)


@dataclass(frozen=True)
class ParityClassification:
    total_candidates: int
    solutions: tuple  # sorted ints
    balanced: tuple
    unbalanced: tuple

    def to_json(self) -> dict:
        return {
            "total_candidates": self.total_candidates,
            "solutions": list(self.solutions),
            "balanced": list(self.balanced),
        }

    def summary(self) -> str:
        return (f"candidates={self.total_candidates} solutions={len(self.solutions)} "
                f"balanced={len(self.balanced)} unbalanced={len(self.unbalanced)}")


def cell_counts(s: IncidenceStructure, bits: int) -> tuple:
    return tuple((bits & m).bit_count() for m in s.cell_masks)


def _require_24cell(s: IncidenceStructure) -> None:
    if s.n_vertices != 24 or s.n_cells != 24 or s.regularity != (6, 6):
        raise WrongStructure(f"{s.name} is not the 24-cell")


def enumerate_parity_binary(s: IncidenceStructure, workers: int = 1,
                            chunks: int = 16) -> ParityClassification:
    """Brute-force every half-weight bit vector and keep odd-per-cell ones."""
    _require_24cell(s)
    n = s.n_vertices
    k = n // 2
    total = comb(n, k)
    jobs = [(n, k, lo, hi, s.cell_masks) for lo, hi in split_ranks(total, chunks)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(_scan_chunk, jobs))
    else:
        parts = [_scan_chunk(j) for j in jobs]
    sols = tuple(sorted(int(x) for p in parts for x in p))
    balanced = tuple(b for b in sols if all(c == 3 for c in cell_counts(s, b)))
    bal = set(balanced)
    unbalanced = tuple(b for b in sols if b not in bal)
    return ParityClassification(total, sols, balanced, unbalanced)


# -- GF(2) oracle -----------------------------------------------------------

@dataclass(frozen=True)
class AffineSolution:
    particular: int
    basis: tuple  # nullspace basis as bit vectors
    rank: int

    def __iter__(self):
        for coeffs in itertools.product((0, 1), repeat=len(self.basis)):
            x = self.particular
            for c, b in zip(coeffs, self.basis):
                if c:
                    x ^= b
            yield x

    def __len__(self) -> int:
        return 1 << len(self.basis)


def solve_gf2(rows: Sequence[int], rhs: Sequence[int], n_cols: int) -> AffineSolution:
    """Solve ``rows . x = rhs`` over GF(2); rows and x are bit vectors."""
    aug = [(r, b & 1) for r, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for col in range(n_cols):
        piv = next((i for i in range(r, len(aug)) if aug[i][0] >> col & 1), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        pr, pb = aug[r]
        for i in range(len(aug)):
            if i != r and aug[i][0] >> col & 1:
                aug[i] = (aug[i][0] ^ pr, aug[i][1] ^ pb)
        pivots.append(col)
        r += 1
    if any(row == 0 and b for row, b in aug[r:]):
        raise Inconsistent("system has no solution")
    particular = 0
    for i, col in enumerate(pivots):
        if aug[i][1]:
            particular |= 1 << col
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        v = 1 << f
        for i, col in enumerate(pivots):
            if aug[i][0] >> f & 1:
                v |= 1 << col
        basis.append(v)
    return AffineSolution(particular, tuple(basis), len(pivots))


def parity_system(s: IncidenceStructure) -> AffineSolution:
    """Solution coset of: every cell holds an odd number of ones."""
    return solve_gf2(s.cell_masks, [1] * s.n_cells, s.n_vertices)


def parity_solutions_gf2(s: IncidenceStructure) -> frozenset:
    _require_24cell(s)
    k = s.n_vertices // 2
    return frozenset(x for x in parity_system(s) if x.bit_count() == k)


def complement(b: int, n: int = 24) -> int:
    return b ^ ((1 << n) - 1)


def bits_of(b: int, n: int = 24) -> tuple:
    return tuple(b >> i & 1 for i in range(n))


def from_bits(bits: Iterable[int]) -> int:
    return sum(1 << i for i, x in enumerate(bits) if x)


# -- ternary labeling -------------------------------------------------------

_SUPPORT_CLASS = {
    frozenset((0, 1)): 0, frozenset((2, 3)): 0,
    frozenset((0, 2)): 1, frozenset((1, 3)): 1,
    frozenset((0, 3)): 2, frozenset((1, 2)): 2,
}


def ternary_16cell(s: IncidenceStructure) -> tuple:
    """Trit per vertex: which of the three inscribed 16-cells it lies on."""
    _require_24cell(s)
    return tuple(
        _SUPPORT_CLASS[frozenset(i for i, x in enumerate(v.coords) if x)]
        for v in s.vertices
    )


TRIT_PERMUTATIONS = tuple(itertools.permutations(range(3)))


def permute_trits(t: Sequence[int], pi: Sequence[int]) -> tuple:
    """Relabel trit ``d`` as ``pi[d]``."""
    return tuple(pi[x] for x in t)


def trit_perm_name(pi: Sequence[int]) -> str:
    return "012→" + "".join(str(x) for x in pi)
