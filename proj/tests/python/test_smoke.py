"""End-to-end smoke tests for the python bindings.

These deliberately re-check a few frozen constants from the C++ suite so a
broken binding layer (wrong arg order, lossy conversions) cannot pass.
"""

import math

import pytest

import qperc


def test_survival_probability_fixed_point():
    gamma = qperc.survival_probability(1.0)
    assert gamma == pytest.approx(0.7968121300200199, abs=1e-9)
    # defining equation
    assert gamma == pytest.approx(1.0 - math.exp(-2.0 * gamma), abs=1e-9)
    assert qperc.survival_probability(-0.5) == 0.0


def test_full_cube_counts():
    g = qperc.full_cube(4)
    assert g.d == 4
    assert g.num_vertices == 16
    assert g.edge_count() == 4 * 16 // 2
    assert g.degree(0) == 4
    assert g.has_edge(0, 3)


def test_generation_is_deterministic():
    a = qperc.generate(10, 0.2, seed=7)
    b = qperc.generate(10, 0.2, seed=7)
    c = qperc.generate(10, 0.2, seed=8)
    assert a.edge_count() == b.edge_count()
    assert a.subgraph_of(b) and b.subgraph_of(a)
    assert c.edge_count() != a.edge_count() or not a.subgraph_of(c)


def test_census_partitions_the_cube():
    g = qperc.generate(9, 2.0 / 9.0, seed=11)
    cen = qperc.census(g)
    assert sum(cen.sizes) == 512
    assert list(cen.sizes) == sorted(cen.sizes, reverse=True)
    assert qperc.giant_fraction(cen, 9) == pytest.approx(cen.sizes[0] / 512.0)


def test_supercritical_giant_is_macroscopic():
    g = qperc.generate(12, 2.0 / 12.0, seed=1)
    cen = qperc.census(g)
    # the fraction concentrates near 0.797; leave wide sampling slack
    assert 0.5 < qperc.giant_fraction(cen, 12) < 1.0


def test_giant_graph_and_diameter():
    giant = qperc.giant(qperc.full_cube(4))
    assert giant.n == 16
    assert giant.connected()
    assert qperc.diameter(giant, mode="ifub").value == 4
    assert qperc.diameter(giant, mode="all-pairs").value == 4
    lower = qperc.diameter(giant, mode="double-sweep")
    assert lower.value == 4 and not lower.exact
    with pytest.raises(qperc.CapExceeded):
        qperc.diameter(giant, mode="all-pairs", cap=4)
    with pytest.raises(ValueError):
        qperc.diameter(giant, mode="sideways")


def test_spectral_summary_frozen_cube_value():
    rep = qperc.spectral_summary(qperc.giant(qperc.full_cube(3)))
    assert rep.lambda2 == pytest.approx(2.0 / 3.0, abs=1e-8)
    assert rep.gap == pytest.approx(1.0 / 3.0, abs=1e-8)
    assert rep.cheeger_lower <= rep.cheeger_upper


def test_mixing_time_exact():
    rep = qperc.mixing_time(qperc.giant(qperc.full_cube(4)))
    assert rep.method == "exact"
    assert rep.mixed
    assert rep.t_mix >= 1
    assert len(rep.tv_curve) == rep.t_mix
    assert rep.tv_curve[-1] <= 0.25


def test_longest_cycle_on_the_cube():
    giant = qperc.giant(qperc.full_cube(4))
    cycle = qperc.longest_cycle(giant, budget=50000, seed=3)
    assert len(cycle) >= 8
    assert len(set(cycle)) == len(cycle)


def test_clique_minor_branch_sets_are_disjoint():
    giant = qperc.giant(qperc.full_cube(4))
    sets = qperc.clique_minor(giant, 4, seed=2)
    assert len(sets) >= 3
    seen = set()
    for s in sets:
        assert s and not (seen & set(s))
        seen |= set(s)


def test_sprinkled_generation_is_nested():
    pair = qperc.generate_sprinkled(8, 0.3, 0.1, seed=5)
    assert pair.q1.subgraph_of(pair.q2)
    assert pair.sprinkle.subgraph_of(pair.q2)
    assert pair.q1_prob == pytest.approx(qperc.sprinkle_split(0.3, 0.1))


def test_snapshot_round_trip(tmp_path):
    g = qperc.generate(8, 0.25, seed=42)
    path = str(tmp_path / "g.qprc")
    qperc.save_snapshot(path, g, seed=42)
    loaded, seed = qperc.load_snapshot(path)
    assert seed == 42
    assert loaded.edge_count() == g.edge_count()
    assert loaded.subgraph_of(g) and g.subgraph_of(loaded)


def test_run_csv_shape_and_determinism():
    csv = qperc.run_csv("census", [6, 7], trials=2, seed=3, workers=1)
    lines = csv.strip().split("\n")
    assert lines[0] == "experiment,d,p,q2,trial,seed,metric,value,wall_ms,workers"
    assert len(lines) == 1 + 2 * 2 * 5  # dims x trials x metrics
    assert csv == qperc.run_csv("census", [6, 7], trials=2, seed=3, workers=1)
    with pytest.raises(qperc.ConfigError):
        qperc.run_csv("census", [6], p=0.5, epsilon=1.0)
    with pytest.raises(qperc.ConfigError):
        qperc.run_csv("no-such-kind", [6])
