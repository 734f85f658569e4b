"""Vertex-cell incidence structures and labeling checks.

Vertices are addressed by 0-based position throughout the Python API: the
vertex at position ``i`` carries index ``i + 1`` in files and printed output.
Cell members are stored the same way.  Coordinates are exact (``int`` or
``Fraction`` with denominator 2), never floats.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import LengthMismatch, NonIntegral, NonRegular, NotCentrallySymmetric

Coord = tuple  # tuple of int | Fraction


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


@dataclass(frozen=True)
class Vertex:
    index: int  # 1-based
    coords: Optional[Coord] = None


@dataclass(frozen=True)
class Cell:
    index: int  # 1-based
    members: frozenset  # 0-based vertex positions
    center: Optional[Coord] = None

    @cached_property
    def sorted_members(self) -> tuple:
        return tuple(sorted(self.members))


@dataclass(frozen=True)
class IncidenceStructure:
    name: str
    vertices: tuple
    cells: tuple

    def __post_init__(self):
        n = len(self.vertices)
        for i, v in enumerate(self.vertices):
            if v.index != i + 1:
                raise ValueError(f"vertex at position {i} has index {v.index}")
        for c in self.cells:
            if not c.members or min(c.members) < 0 or max(c.members) >= n:
                raise ValueError(f"cell {c.index} references an invalid vertex")

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_cells(self) -> int:
        return len(self.cells)

    @cached_property
    def cell_masks(self) -> tuple:
        """Cell member sets as int bitmasks (bit i = vertex position i)."""
        return tuple(sum(1 << v for v in c.members) for c in self.cells)

    @cached_property
    def cells_of_vertex(self) -> tuple:
        out = [[] for _ in self.vertices]
        for j, c in enumerate(self.cells):
            for v in c.members:
                out[v].append(j)
        return tuple(tuple(x) for x in out)

    @property
    def regularity(self) -> Optional[tuple]:
        """(members per cell, cells per vertex) if both are uniform."""
        ks = {len(c.members) for c in self.cells}
        rs = {len(x) for x in self.cells_of_vertex}
        if len(ks) == 1 and len(rs) == 1:
            return ks.pop(), rs.pop()
        return None

    @property
    def has_coords(self) -> bool:
        return all(v.coords is not None for v in self.vertices)

    @cached_property
    def coord_index(self) -> dict:
        return {v.coords: i for i, v in enumerate(self.vertices)}

    def cell_member_sets(self) -> frozenset:
        return frozenset(c.members for c in self.cells)


def from_cells(name: str, n_vertices: int, cells: Iterable[Iterable[int]],
               coords: Optional[Sequence[Coord]] = None) -> IncidenceStructure:
    """Build a structure from 0-based member lists (and optional coordinates)."""
    if coords is not None and len(coords) != n_vertices:
        raise LengthMismatch(f"{len(coords)} coordinates for {n_vertices} vertices")
    vertices = tuple(
        Vertex(i + 1, tuple(coords[i]) if coords is not None else None)
        for i in range(n_vertices)
    )
    cell_objs = tuple(Cell(j + 1, frozenset(m)) for j, m in enumerate(cells))
    return IncidenceStructure(name, vertices, cell_objs)


def _from_centers(name: str, points: list, centers: list) -> IncidenceStructure:
    vertices = tuple(Vertex(i + 1, p) for i, p in enumerate(points))
    cells = tuple(
        Cell(j + 1, frozenset(i for i, p in enumerate(points) if dot(p, c) == 1), c)
        for j, c in enumerate(centers)
    )
    return IncidenceStructure(name, vertices, cells)


def _axis_vectors(dim: int) -> list:
    vs = {tuple(s if i == j else 0 for i in range(dim)) for j in range(dim) for s in (1, -1)}
    return sorted(vs, reverse=True)


def build_24cell() -> IncidenceStructure:
    """The 24-cell: vertices are the permutations of (+-1, +-1, 0, 0).

    Cells are the 8 octahedra centred on +-e_i followed by the 16 centred on
    s/2 for s in {+-1}^4; a vertex belongs to a cell iff its dot product with
    the centre is 1.
    """
    points = set()
    for support in itertools.combinations(range(4), 2):
        for signs in itertools.product((1, -1), repeat=2):
            p = [0, 0, 0, 0]
            for k, s in zip(support, signs):
                p[k] = s
            points.add(tuple(p))
    points = sorted(points, reverse=True)
    half = Fraction(1, 2)
    centers = _axis_vectors(4) + [
        tuple(s * half for s in signs)
        for signs in sorted(itertools.product((1, -1), repeat=4), reverse=True)
    ]
    return _from_centers("24cell", points, centers)


def build_cube() -> IncidenceStructure:
    points = sorted(itertools.product((1, -1), repeat=3), reverse=True)
    return _from_centers("cube", points, _axis_vectors(3))


def build_tesseract() -> IncidenceStructure:
    points = sorted(itertools.product((1, -1), repeat=4), reverse=True)
    return _from_centers("tesseract", points, _axis_vectors(4))


BUILDERS = {
    "24cell": build_24cell,
    "cube": build_cube,
    "tesseract": build_tesseract,
}


def magic_sum(s: IncidenceStructure) -> int:
    """Common cell sum forced on any magic labeling of ``s`` by 1..|V|."""
    r_values = {len(x) for x in s.cells_of_vertex}
    if len(r_values) != 1:
        raise NonRegular(f"{s.name}: cells per vertex vary: {sorted(r_values)}")
    r = r_values.pop()
    n = s.n_vertices
    total = r * n * (n + 1) // 2
    if total % s.n_cells:
        raise NonIntegral(f"{s.name}: {total} is not divisible by {s.n_cells} cells")
    return total // s.n_cells


@dataclass(frozen=True)
class LabelingReport:
    is_permutation: bool
    cell_sums: tuple
    magic: bool
    magic_sum: Optional[int] = None

    def describe(self) -> str:
        if self.magic:
            return f"magic: yes, magic sum {self.magic_sum}"
        lines = [f"magic: no (permutation: {'yes' if self.is_permutation else 'no'})"]
        lines += [f"  cell {j + 1}: {x}" for j, x in enumerate(self.cell_sums)]
        return "\n".join(lines)


def verify_labeling(s: IncidenceStructure, labels: Sequence[int]) -> LabelingReport:
    if len(labels) != s.n_vertices:
        raise LengthMismatch(f"{len(labels)} labels for {s.n_vertices} vertices")
    labels = [int(x) for x in labels]
    is_perm = sorted(labels) == list(range(1, s.n_vertices + 1))
    sums = tuple(sum(labels[v] for v in c.members) for c in s.cells)
    magic = is_perm and len(set(sums)) == 1
    return LabelingReport(is_perm, sums, magic, sums[0] if magic else None)


def magic_rows(s: IncidenceStructure, labelings) -> np.ndarray:
    """Vectorized :func:`verify_labeling`: boolean ``magic`` flag per row."""
    arr = np.asarray(labelings, dtype=np.int64)
    if arr.ndim != 2 or arr.shape[1] != s.n_vertices:
        raise LengthMismatch(f"labelings of shape {arr.shape} for {s.n_vertices} vertices")
    incidence = np.zeros((s.n_vertices, s.n_cells), dtype=np.int64)
    for j, c in enumerate(s.cells):
        incidence[list(c.members), j] = 1
    sums = arr @ incidence
    is_perm = (np.sort(arr, axis=1) == np.arange(1, s.n_vertices + 1)).all(axis=1)
    return is_perm & (sums == sums[:, :1]).all(axis=1)


def antipode_map(s: IncidenceStructure) -> tuple:
    """Permutation (0-based image tuple) sending each vertex to its negation."""
    if not s.has_coords:
        raise NotCentrallySymmetric(f"{s.name} has no coordinates")
    idx = s.coord_index
    image = []
    for v in s.vertices:
        neg = tuple(-x for x in v.coords)
        if neg not in idx or neg == v.coords:
            raise NotCentrallySymmetric(f"{s.name}: no antipode for vertex {v.index}")
        image.append(idx[neg])
    return tuple(image)


def edges(s: IncidenceStructure) -> set:
    """Vertex pairs at minimal squared distance."""
    if not s.has_coords:
        raise ValueError(f"{s.name} has no coordinates")
    pts = [v.coords for v in s.vertices]
    d2 = {}
    for i, j in itertools.combinations(range(len(pts)), 2):
        d2[i, j] = sum((a - b) ** 2 for a, b in zip(pts[i], pts[j]))
    m = min(d2.values())
    return {frozenset(p) for p, d in d2.items() if d == m}


def triangles(s: IncidenceStructure) -> set:
    """All 3-cliques of the minimal-distance edge graph."""
    e = edges(s)
    nbrs = [set() for _ in s.vertices]
    for pair in e:
        a, b = tuple(pair)
        nbrs[a].add(b)
        nbrs[b].add(a)
    out = set()
    for a in range(s.n_vertices):
        for b in nbrs[a]:
            if b <= a:
                continue
            for c in nbrs[a] & nbrs[b]:
                if c > b:
                    out.add(frozenset((a, b, c)))
    return out
