"""Permutation groups on vertex positions, canonical forms and orbit counts.

A permutation is a tuple ``p`` of 0-based images: vertex ``i`` goes to
``p[i]``.  Products compose right to left, ``(a * b)[i] == a[b[i]]``.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import CapExceeded, GeneratorNotAutomorphism, LengthMismatch
from .incidence import IncidenceStructure


def identity(n: int) -> tuple:
    return tuple(range(n))


def compose(a: Sequence[int], b: Sequence[int]) -> tuple:
    return tuple(a[x] for x in b)


def inverse(p: Sequence[int]) -> tuple:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def is_permutation(p: Sequence[int]) -> bool:
    return sorted(p) == list(range(len(p)))


@dataclass(frozen=True)
class SymmetryGroup:
    elements: frozenset

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def degree(self) -> int:
        return len(next(iter(self.elements)))

    @cached_property
    def sorted_elements(self) -> tuple:
        return tuple(sorted(self.elements))

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.sorted_elements, dtype=np.intp)

    def __contains__(self, p) -> bool:
        return tuple(p) in self.elements

    def __iter__(self):
        return iter(self.sorted_elements)

    def __len__(self) -> int:
        return self.order

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "elements": [[x + 1 for x in p] for p in self.sorted_elements],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SymmetryGroup":
        elements = frozenset(tuple(x - 1 for x in p) for p in data["elements"])
        if len(elements) != data["order"]:
            raise ValueError("group order does not match element count")
        return cls(elements)


def group_closure(generators: Iterable[Sequence[int]], cap: int = 100_000) -> SymmetryGroup:
    """Breadth-first closure of ``generators`` under composition."""
    gens = [tuple(g) for g in generators]
    if not gens:
        raise ValueError("need at least one generator")
    n = len(gens[0])
    for g in gens:
        if len(g) != n or not is_permutation(g):
            raise ValueError(f"not a permutation of 0..{n - 1}: {g}")
    els = {identity(n)}
    els.update(gens)
    if len(els) > cap:
        raise CapExceeded(f"more than {cap} elements")
    frontier = list(els)
    while frontier:
        nxt = []
        for a in gens:
            for b in frontier:
                c = compose(a, b)
                if c not in els:
                    els.add(c)
                    if len(els) > cap:
                        raise CapExceeded(f"more than {cap} elements")
                    nxt.append(c)
        frontier = nxt
    # finite group: closure under products already contains inverses
    return SymmetryGroup(frozenset(els))


def matrix_to_permutation(s: IncidenceStructure, matrix: Sequence[Sequence]) -> tuple:
    """Vertex permutation induced by a linear map acting on coordinates."""
    idx = s.coord_index
    image = []
    for v in s.vertices:
        w = tuple(sum(Fraction(m) * x for m, x in zip(row, v.coords)) for row in matrix)
        w = tuple(int(x) if x.denominator == 1 else x for x in w)
        if w not in idx:
            raise GeneratorNotAutomorphism(f"vertex {v.index} maps to {w}, not a vertex")
        image.append(idx[w])
    return tuple(image)


def coordinate_permutation_matrix(perm: Sequence[int]) -> list:
    """Matrix sending coordinate ``i`` of a point to position ``perm[i]``."""
    n = len(perm)
    m = [[0] * n for _ in range(n)]
    for i, j in enumerate(perm):
        m[j][i] = 1
    return m


_HALF = Fraction(1, 2)
TRIALITY = [
    [_HALF, _HALF, _HALF, _HALF],
    [_HALF, _HALF, -_HALF, -_HALF],
    [_HALF, -_HALF, _HALF, -_HALF],
    [_HALF, -_HALF, -_HALF, _HALF],
]


def signed_permutation_generators(s: IncidenceStructure) -> list:
    flip = [[-1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    return [
        matrix_to_permutation(s, coordinate_permutation_matrix((1, 0, 2, 3))),
        matrix_to_permutation(s, coordinate_permutation_matrix((1, 2, 3, 0))),
        matrix_to_permutation(s, flip),
    ]


def generators_24cell(s: IncidenceStructure) -> list:
    return signed_permutation_generators(s) + [matrix_to_permutation(s, TRIALITY)]


def signed_permutation_group(s: IncidenceStructure) -> SymmetryGroup:
    """Closure of coordinate permutations and sign flips (order 384 on the 24-cell)."""
    return group_closure(signed_permutation_generators(s), cap=384)


def symmetry_24cell(s: IncidenceStructure) -> SymmetryGroup:
    """Full symmetry group of the 24-cell, order 1152."""
    return group_closure(generators_24cell(s), cap=1152)


def preserves_cells(s: IncidenceStructure, p: Sequence[int]) -> bool:
    family = s.cell_member_sets()
    return all(frozenset(p[v] for v in c.members) in family for c in s.cells)


def automorphisms(s: IncidenceStructure, cap: int = 100_000) -> SymmetryGroup:
    """All vertex permutations mapping the cell family onto itself.

    Backtracking over images of vertices 0, 1, ... with two prunes: the number
    of cells shared by each pair of placed vertices must be preserved, and the
    images of the placed members of every cell must fit inside some cell.
    """
    n = s.n_vertices
    masks = s.cell_masks
    codeg = [[0] * n for _ in range(n)]
    for c in s.cells:
        for u in c.members:
            for v in c.members:
                codeg[u][v] += 1
    cells_of = s.cells_of_vertex
    image = [-1] * n
    used = [False] * n
    found = []

    def partial_ok(i: int) -> bool:
        for j in cells_of[i]:
            img = 0
            for v in s.cells[j].members:
                if image[v] >= 0:
                    img |= 1 << image[v]
            if not any(img & m == img for m in masks):
                return False
        return True

    def extend(i: int) -> None:
        if i == n:
            p = tuple(image)
            if preserves_cells(s, p):
                found.append(p)
                if len(found) > cap:
                    raise CapExceeded(f"more than {cap} automorphisms")
            return
        for w in range(n):
            if used[w] or codeg[w][w] != codeg[i][i]:
                continue
            if any(codeg[i][j] != codeg[w][image[j]] for j in range(i)):
                continue
            image[i] = w
            used[w] = True
            if partial_ok(i):
                extend(i + 1)
            used[w] = False
            image[i] = -1

    extend(0)
    return SymmetryGroup(frozenset(found))


def _lexmin_rows(block: np.ndarray) -> np.ndarray:
    """Index of the lexicographically least row in each ``block[b]`` (shape (b, m, n))."""
    n = block.shape[-1]
    width = max(int(block.max()).bit_length(), 1)
    per_word = max(63 // width, 1)
    alive = None
    for start in range(0, n, per_word):
        chunk = block[..., start:start + per_word]
        place = np.left_shift(1, width * np.arange(chunk.shape[-1])[::-1]).astype(np.int64)
        key = chunk @ place
        if alive is not None:
            key = np.where(alive, key, np.iinfo(np.int64).max)
        alive = key == key.min(axis=1, keepdims=True)
    return alive.argmax(axis=1)


def _canon_block(rows: np.ndarray, perms: np.ndarray, batch: int) -> np.ndarray:
    out = np.empty_like(rows)
    for lo in range(0, len(rows), batch):
        block = rows[lo:lo + batch][:, perms]  # (b, m, n)
        best = _lexmin_rows(block)
        out[lo:lo + batch] = block[np.arange(len(block)), best]
    return out


def canonical_forms(labelings: np.ndarray, g: SymmetryGroup, batch: int = 512) -> np.ndarray:
    """Row-wise canonical forms of a 2-D array of labelings.

    A canonical form starts with the least label, so a row whose minimum
    sits at a single vertex ``v`` only needs the elements with ``p[0] == v``.
    """
    labelings = np.asarray(labelings)
    if labelings.ndim != 2 or labelings.shape[1] != g.degree:
        raise LengthMismatch(f"labelings of shape {labelings.shape} for degree {g.degree}")
    if len(labelings) == 0:
        return labelings.copy()
    base = labelings.min()
    shifted = (labelings - base).astype(np.int64)
    perms = g.array
    out = np.empty_like(shifted)
    row_min = shifted.min(axis=1, keepdims=True)
    at_min = shifted == row_min
    unique_min = at_min.sum(axis=1) == 1
    min_pos = at_min.argmax(axis=1)
    rest = ~unique_min
    for v in range(g.degree):
        rows = np.flatnonzero(unique_min & (min_pos == v))
        if len(rows) == 0:
            continue
        sub = perms[perms[:, 0] == v]
        if len(sub) == 0:
            rest[rows] = True
            continue
        out[rows] = _canon_block(shifted[rows], sub, batch)
    rows = np.flatnonzero(rest)
    if len(rows):
        out[rows] = _canon_block(shifted[rows], perms, max(batch // 8, 1))
    return (out + base).astype(labelings.dtype)


def canonical_form(labels: Sequence[int], g: SymmetryGroup) -> tuple:
    """Lexicographically least ``(labels[p[0]], ..., labels[p[n-1]])`` over ``p`` in ``g``."""
    if len(labels) != g.degree:
        raise LengthMismatch(f"{len(labels)} labels for degree {g.degree}")
    row = canonical_forms(np.array([labels], dtype=np.int64), g)[0]
    return tuple(int(x) for x in row)


def _canon_chunk(args):
    arr, elements = args
    return canonical_forms(arr, SymmetryGroup(elements))


def canonical_forms_parallel(labelings: np.ndarray, g: SymmetryGroup,
                             workers: int = 1, chunk: int = 4096) -> np.ndarray:
    labelings = np.asarray(labelings)
    if workers <= 1 or len(labelings) <= chunk:
        return canonical_forms(labelings, g)
    pieces = [labelings[i:i + chunk] for i in range(0, len(labelings), chunk)]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        results = list(ex.map(_canon_chunk, [(p, g.elements) for p in pieces]))
    return np.concatenate(results)


def orbit_members(labelings, g: SymmetryGroup, workers: int = 1) -> dict:
    """Map canonical form -> number of input labelings in that orbit."""
    arr = np.asarray(list(labelings) if not isinstance(labelings, np.ndarray) else labelings)
    if arr.size == 0:
        return {}
    if arr.ndim != 2 or arr.shape[1] != g.degree:
        raise LengthMismatch(f"labelings of shape {arr.shape} for degree {g.degree}")
    canon = canonical_forms_parallel(arr, g, workers)
    rows, counts = np.unique(canon, axis=0, return_counts=True)
    return {tuple(int(x) for x in r): int(c) for r, c in zip(rows, counts)}


def count_orbits(labelings, g: SymmetryGroup, workers: int = 1) -> tuple:
    """(number of orbits, sorted canonical representatives)."""
    reps = sorted(orbit_members(labelings, g, workers))
    return len(reps), reps


def orbit_size(labels: Sequence[int], g: SymmetryGroup) -> int:
    """Size of the orbit of ``labels`` (= |g| / |stabilizer|)."""
    arr = np.asarray(labels)[g.array]
    return len(np.unique(arr, axis=0))


def default_workers() -> int:
    try:
        return max(int(os.environ.get("MAGIC24_WORKERS", "1")), 1)
    except ValueError:
        return 1
