import itertools

import pytest

from magic24.errors import BadTargetSum
from magic24.incidence import from_cells, verify_labeling
from magic24.solver import (
    SearchConfig,
    orbit_report,
    prefix_from_labeling,
    solve,
    solve_all,
    vertex_orbit_representatives,
)
from magic24.symmetry import automorphisms, canonical_form


@pytest.fixture(scope="module")
def cube_oracle(cube):
    return {p for p in itertools.permutations(range(1, 9)) if verify_labeling(cube, p).magic}


def test_cube_complete_and_exact(cube, cube_oracle):
    out = solve(cube, SearchConfig(18))
    assert out.complete
    assert len(out.labelings) == len(set(out.labelings))
    assert set(out.labelings) == cube_oracle
    g = automorphisms(cube)
    assert orbit_report(out, g) == orbit_report(sorted(cube_oracle), g)


def test_cube_wrong_sum(cube):
    out = solve(cube, SearchConfig(17))
    assert out.complete and out.count == 0


def test_bad_target(cube):
    with pytest.raises(BadTargetSum):
        solve(cube, SearchConfig(0))


def test_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(18, node_budget=0)


def test_symmetry_reduction_keeps_orbits(cube, cube_oracle):
    g = automorphisms(cube)
    reduced = solve(cube, SearchConfig(18, symmetry_reduction=True), group=g)
    assert reduced.complete
    assert set(reduced.labelings) < cube_oracle
    assert orbit_report(reduced, g) == orbit_report(sorted(cube_oracle), g)


def test_orbit_representatives_non_transitive():
    s = from_cells("two-blocks", 4, [[0, 1], [2, 3], [0, 1, 2, 3]])
    g = automorphisms(s)
    assert vertex_orbit_representatives(g) == {0}
    s = from_cells("lopsided", 3, [[0, 1], [2]])
    assert vertex_orbit_representatives(automorphisms(s)) == {0, 2}


def test_determinism(cube):
    a = solve(cube, SearchConfig(18))
    b = solve(cube, SearchConfig(18))
    assert a.labelings == b.labelings and a.nodes_explored == b.nodes_explored


def test_monotone_budget(cube):
    previous = []
    for budget in (50, 200, 1000, 5000):
        out = solve(cube, SearchConfig(18, node_budget=budget))
        assert out.labelings[:len(previous)] == previous
        previous = out.labelings
    assert out.complete


def test_resume_matches_unbudgeted(cube):
    full = solve(cube, SearchConfig(18))
    chunked = solve_all(cube, SearchConfig(18, node_budget=97))
    assert chunked.complete
    assert chunked.labelings == full.labelings
    assert chunked.nodes_explored == full.nodes_explored


def test_emit_limit_resume(cube):
    full = solve(cube, SearchConfig(18))
    got = solve_all(cube, SearchConfig(18, emit_limit=5))
    assert got.labelings == full.labelings


def test_empty_orbit_report(cube):
    out = solve(cube, SearchConfig(17))
    assert orbit_report(out, automorphisms(cube)) == (0, [])


def test_24cell_replay(cell24, construction):
    for m in construction.labelings[::9000]:
        prefix = prefix_from_labeling(cell24, m.labels, 6)
        out = solve(cell24, SearchConfig(75, node_budget=1_000_000, prefix=prefix))
        assert m.labels in out.labelings
        assert all(verify_labeling(cell24, x).magic for x in out.labelings)


def test_24cell_resume_in_subtree(cell24, construction):
    prefix = prefix_from_labeling(cell24, construction.labelings[0].labels, 5)
    cfg = SearchConfig(75, prefix=prefix)
    full = solve(cell24, cfg)
    assert full.complete
    chunked = solve_all(cell24, SearchConfig(75, node_budget=3000, prefix=prefix))
    assert chunked.labelings == full.labelings
    assert chunked.nodes_explored == full.nodes_explored


def test_24cell_budgeted_root_is_incomplete(cell24):
    out = solve(cell24, SearchConfig(75, node_budget=2000))
    assert not out.complete and out.nodes_explored == 2000
    assert out.checkpoint


def test_24cell_symmetry_reduced_replay(cell24, group24, orbits):
    # canonical forms put label 1 on vertex 1, which the reduced search allows
    for rep in sorted(orbits)[:8]:
        prefix = prefix_from_labeling(cell24, rep, 6)
        out = solve(cell24, SearchConfig(75, symmetry_reduction=True, prefix=prefix), group=group24)
        assert rep in out.labelings
        assert canonical_form(rep, group24) == rep
