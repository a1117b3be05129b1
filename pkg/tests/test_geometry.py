import numpy as np
import pytest

from reluopt import DimensionMismatch, Hyperrectangle, Polytope
from reluopt.geometry import (
    box_contains,
    box_polytope,
    complement,
    linf_epigraph,
)


def test_hyperrectangle_basics():
    h = Hyperrectangle(np.array([-1.0, 0.0]), np.array([1.0, 4.0]))
    np.testing.assert_allclose(h.center, [0.0, 2.0])
    np.testing.assert_allclose(h.radius, [1.0, 2.0])
    assert h.dim == 2


def test_hyperrectangle_rejects_crossed_bounds():
    with pytest.raises(DimensionMismatch):
        Hyperrectangle(np.array([1.0]), np.array([0.0]))


def test_intersect():
    a = Hyperrectangle(np.array([0.0]), np.array([2.0]))
    b = Hyperrectangle(np.array([1.0]), np.array([3.0]))
    c = a.intersect(b)
    assert (c.lower[0], c.upper[0]) == (1.0, 2.0)


def test_sample_inside_box():
    h = Hyperrectangle(np.array([-1.0, 2.0]), np.array([1.0, 5.0]))
    pts = h.sample(np.random.default_rng(0), 200)
    assert pts.shape == (200, 2)
    for p in pts:
        assert box_contains(h, p, 0.0)


def test_box_contains_tolerance():
    h = Hyperrectangle(np.array([0.0]), np.array([1.0]))
    assert box_contains(h, [1.0 + 1e-9], 1e-8)
    assert not box_contains(h, [1.1], 1e-8)


def test_polytope_contains():
    p = Polytope(np.array([[1.0, 0.0], [0.0, 1.0]]), np.array([1.0, 1.0]))
    assert p.contains([0.5, 0.5])
    assert not p.contains([1.5, 0.0])


def test_complement_is_reversed_facets():
    p = Polytope(np.array([[1.0], [-1.0]]), np.array([1.0, 0.0]))  # 0 <= x <= 1
    comp = complement(p)
    rng = np.random.default_rng(1)
    for x in rng.uniform(-3, 3, 500):
        inside = p.contains([x])
        outside = comp.satisfied_by([x])
        # Every point is in the polytope or in its closed complement;
        # strict-interior points are never in the complement.
        assert inside or outside
        if 1e-9 < x < 1 - 1e-9:
            assert not outside


def test_box_polytope_roundtrip():
    h = Hyperrectangle(np.array([-1.0, 0.0]), np.array([2.0, 1.0]))
    p = box_polytope(h)
    rng = np.random.default_rng(2)
    for x in rng.uniform(-2, 3, (500, 2)):
        assert p.contains(x) == box_contains(h, x, 0.0)


def test_linf_epigraph_rows():
    x0 = np.array([0.5, -1.0])
    rows = linf_epigraph(x0)
    assert len(rows) == 4
    rng = np.random.default_rng(3)
    for _ in range(500):
        x = rng.uniform(-3, 3, 2)
        t = rng.uniform(0, 3)
        holds = all(r.satisfied(x, None, t) for r in rows)
        assert holds == (np.max(np.abs(x - x0)) <= t + 1e-12)


def test_linf_epigraph_rejects_nonfinite():
    with pytest.raises(DimensionMismatch):
        linf_epigraph([np.inf])
