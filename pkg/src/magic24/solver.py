"""Exact backtracking search for magic labelings of an incidence structure.

The search is fully deterministic: the next vertex is the lowest-indexed free
vertex of the incomplete cell with the fewest free vertices (lowest cell index
on ties), and labels are tried in increasing order.  Because of that, the list
of ``(vertex, label)`` decisions from the root identifies a node uniquely and
serves as the checkpoint for resuming a budgeted run.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import BadTargetSum
from .incidence import IncidenceStructure, verify_labeling
from .symmetry import SymmetryGroup, automorphisms, count_orbits


@dataclass(frozen=True)
class SearchConfig:
    target_sum: int
    node_budget: Optional[int] = None
    emit_limit: Optional[int] = None
    symmetry_reduction: bool = False
    prefix: tuple = ()  # fixed (vertex, label) pairs restricting the search to a subtree

    def __post_init__(self):
        for name in ("node_budget", "emit_limit"):
            value = getattr(self, name)
            if value is not None and value <= 0:
                raise ValueError(f"{name} must be positive, got {value}")


@dataclass
class SearchOutcome:
    labelings: list
    nodes_explored: int
    complete: bool
    checkpoint: Optional[tuple] = None  # decision path of the first unexplored node

    @property
    def count(self) -> int:
        return len(self.labelings)

    def summary(self) -> dict:
        return {"nodes": self.nodes_explored, "complete": self.complete, "count": self.count}


class _Stop(Exception):
    def __init__(self, path):
        self.path = path


def vertex_orbit_representatives(g: SymmetryGroup) -> frozenset:
    reps = set()
    seen = set()
    for v in range(g.degree):
        if v in seen:
            continue
        orbit = {p[v] for p in g.elements}
        seen |= orbit
        reps.add(min(orbit))
    return frozenset(reps)


class _Search:
    def __init__(self, s: IncidenceStructure, cfg: SearchConfig,
                 label1_vertices: Optional[frozenset]):
        self.s = s
        self.cfg = cfg
        self.n = s.n_vertices
        self.target = cfg.target_sum
        self.members = [c.sorted_members for c in s.cells]
        self.cells_of = s.cells_of_vertex
        self.label1_vertices = label1_vertices
        self.labels = [0] * self.n
        self.free_count = [len(m) for m in self.members]
        self.partial = [0] * len(self.members)
        self.used = [False] * (self.n + 1)
        self.path: list = []
        self.nodes = 0
        self.found: list = []
        self.stop_requested = False

    # -- state updates ------------------------------------------------------
    def assign(self, v: int, x: int) -> None:
        self.labels[v] = x
        self.used[x] = True
        for c in self.cells_of[v]:
            self.free_count[c] -= 1
            self.partial[c] += x

    def unassign(self, v: int, x: int) -> None:
        self.labels[v] = 0
        self.used[x] = False
        for c in self.cells_of[v]:
            self.free_count[c] += 1
            self.partial[c] -= x

    def feasible(self) -> bool:
        """Every cell can still reach the target with the unused labels."""
        unused = [x for x in range(1, self.n + 1) if not self.used[x]]
        for c, k in enumerate(self.free_count):
            rest = self.target - self.partial[c]
            if k == 0:
                if rest != 0:
                    return False
            elif k > len(unused):
                return False
            elif rest < sum(unused[:k]) or rest > sum(unused[-k:]):
                return False
        return True

    def next_vertex(self) -> Optional[int]:
        best = None
        for c, k in enumerate(self.free_count):
            if k and (best is None or k < self.free_count[best]):
                best = c
        if best is not None:
            return next(v for v in self.members[best] if not self.labels[v])
        free = [v for v in range(self.n) if not self.labels[v]]
        return free[0] if free else None

    # -- search -------------------------------------------------------------
    def visit(self, v: int, x: int) -> bool:
        """Count and examine the node (v, x); True if it survives pruning."""
        if self.stop_requested or (
            self.cfg.node_budget is not None and self.nodes >= self.cfg.node_budget
        ):
            raise _Stop(tuple(self.path) + ((v, x),))
        self.nodes += 1
        if x == 1 and self.label1_vertices is not None and v not in self.label1_vertices:
            return False
        self.assign(v, x)
        if self.feasible():
            return True
        self.unassign(v, x)
        return False

    def emit(self) -> None:
        labels = tuple(self.labels)
        if not verify_labeling(self.s, labels).magic:
            raise AssertionError(f"solver emitted a non-magic labeling {labels}")
        self.found.append(labels)
        if self.cfg.emit_limit is not None and len(self.found) >= self.cfg.emit_limit:
            self.stop_requested = True

    def descend(self, resume: Sequence = ()) -> None:
        v = self.next_vertex()
        if v is None:
            self.emit()
            return
        start = 1
        if resume:
            rv, rx = resume[0]
            if rv != v:
                raise ValueError(f"checkpoint expects vertex {rv + 1}, search is at {v + 1}")
            start = rx
        for x in range(start, self.n + 1):
            if self.used[x]:
                continue
            replay = bool(resume) and x == start and len(resume) > 1
            if replay:
                # an ancestor on the checkpoint path: examined in an earlier run
                self.assign(v, x)
            elif not self.visit(v, x):
                continue
            self.path.append((v, x))
            self.descend(resume[1:] if replay else ())
            self.path.pop()
            self.unassign(v, x)


def solve(s: IncidenceStructure, cfg: SearchConfig, group: Optional[SymmetryGroup] = None,
          resume: Optional[Sequence] = None) -> SearchOutcome:
    """Depth-first search for labelings of ``s`` by 1..|V| with every cell summing to the target.

    ``resume`` is the ``checkpoint`` of an earlier outcome with the same
    config; the run continues exactly where that one stopped.
    """
    if cfg.target_sum <= 0:
        raise BadTargetSum(f"target sum must be positive, got {cfg.target_sum}")
    label1 = None
    if cfg.symmetry_reduction:
        group = group or automorphisms(s)
        label1 = vertex_orbit_representatives(group)
    search = _Search(s, cfg, label1)
    for v, x in cfg.prefix:
        if search.labels[v] or search.used[x]:
            raise ValueError(f"prefix assigns vertex {v + 1} or label {x} twice")
        search.assign(v, x)
    resume = [tuple(p) for p in resume or ()]
    if not search.feasible():
        return SearchOutcome([], 0, True)
    try:
        search.descend(resume)
    except _Stop as stop:
        return SearchOutcome(search.found, search.nodes, False, stop.path)
    return SearchOutcome(search.found, search.nodes, True)


def solve_all(s: IncidenceStructure, cfg: SearchConfig, group: Optional[SymmetryGroup] = None,
              resume: Optional[Sequence] = None, max_rounds: Optional[int] = None) -> SearchOutcome:
    """Run ``solve`` in budget-sized rounds, resuming each time, until exhausted."""
    found, nodes, rounds = [], 0, 0
    while True:
        out = solve(s, cfg, group, resume)
        found += out.labelings
        nodes += out.nodes_explored
        rounds += 1
        if out.complete or (max_rounds is not None and rounds >= max_rounds):
            return SearchOutcome(found, nodes, out.complete, out.checkpoint)
        resume = out.checkpoint


def prefix_from_labeling(s: IncidenceStructure, labels: Sequence[int], depth: int) -> tuple:
    """The first ``depth`` decisions the search makes on its way to ``labels``."""
    search = _Search(s, SearchConfig(target_sum=1), None)
    out = []
    for _ in range(depth):
        v = search.next_vertex()
        if v is None:
            break
        search.assign(v, labels[v])
        out.append((v, labels[v]))
    return tuple(out)


def orbit_report(outcome, g: SymmetryGroup) -> tuple:
    """(orbit count, sorted canonical representatives) of the emitted labelings."""
    labelings = outcome.labelings if isinstance(outcome, SearchOutcome) else list(outcome)
    if not labelings:
        return 0, []
    return count_orbits(labelings, g)
