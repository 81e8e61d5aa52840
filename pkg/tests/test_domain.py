"""Scene validation, edge classification and extrema."""

import math
import random

import pytest

from rectispline.config import RunConfig, GP_STRICT, GP_PERTURB
from rectispline.domain import (
    SplinegonalDomain,
    classify_edge,
    splinegon_extrema,
    validate_domain,
)
from rectispline.errors import (
    AxisParallelEdge,
    EndpointInsideObstacle,
    NonSimpleBoundary,
    OverlappingObstacles,
)
from rectispline.geom import ArcEdge
from rectispline.scenes import (
    disk3,
    disk3_scene,
    disk_splinegon,
    random_scene,
    splinegon_from_vertices,
)

from conftest import dense_polyline, dense_point_in


def test_disk3_scene_valid(disk3_domain):
    v = validate_domain(disk3_domain)
    assert v.n == 3 and v.h == 1
    assert v.in_free_space((-2.0, 0.0))


def test_overlapping_disks_rejected():
    scene = SplinegonalDomain(
        [disk_splinegon((0, 0), 1.0, id="a"), disk_splinegon((1, 0), 1.0, id="b")],
        (-3.0, 0.1),
        (3.0, 0.1),
    )
    with pytest.raises(OverlappingObstacles):
        validate_domain(scene)


def test_endpoint_inside_obstacle():
    scene = SplinegonalDomain([disk3()], (0.0, 0.0), (2.0, 0.0))
    with pytest.raises(EndpointInsideObstacle):
        validate_domain(scene)


def test_axis_parallel_straight_edge_rejected_by_default():
    square = splinegon_from_vertices(
        [(0, 0), (1, 0), (1, 1), (0, 1)], [0, 0, 0, 0], id="sq"
    )
    scene = SplinegonalDomain([square], (-1.0, 0.3), (2.0, 0.7))
    with pytest.raises(AxisParallelEdge):
        validate_domain(scene)
    # perturb mode accepts it
    v = validate_domain(scene, RunConfig(general_position=GP_PERTURB))
    assert v.h == 1


def test_strict_mode_rejects_disk3():
    # the two lower vertices share a y-coordinate and the bottom chord is
    # horizontal; the strict general-position switch refuses that
    with pytest.raises(AxisParallelEdge):
        validate_domain(disk3_scene(), RunConfig(general_position=GP_STRICT))


def test_self_intersecting_boundary_rejected():
    bow = splinegon_from_vertices(
        [(0, 0), (2, 1.5), (2, 0), (0, 1.5)], [0.01, 0.01, 0.01, 0.01], id="bow"
    )
    scene = SplinegonalDomain([bow], (-1.0, 0.4), (3.0, 0.6))
    with pytest.raises(NonSimpleBoundary):
        validate_domain(scene)


def test_classify_edges_disk3(disk3_obstacle):
    for e in disk3_obstacle.edges:
        assert classify_edge(disk3_obstacle, e) == "concave-in"


def test_classify_flipped_bulges_concave_out(disk3_obstacle):
    dented = splinegon_from_vertices(
        [e.start for e in disk3_obstacle.edges],
        [-e.bulge for e in disk3_obstacle.edges],
        id="dent",
    )
    for e in dented.edges:
        assert classify_edge(dented, e) == "concave-out"


def test_classify_zero_bulge_concave_in():
    tri = splinegon_from_vertices([(0, 0), (2, 0.3), (0.7, 2)], [0, 0, 0], id="tri")
    assert classify_edge(tri, tri.edges[0]) == "concave-in"


def test_classify_invariant_under_reversal(disk3_obstacle):
    rev = splinegon_from_vertices(
        [e.start for e in reversed(disk3_obstacle.edges)],
        [0, 0, 0],
        id="r",
    )
    # rebuild the reversed disk explicitly: reversed cycle with negated bulges
    edges = [e.reversed() for e in reversed(disk3_obstacle.edges)]
    from rectispline.domain import Splinegon

    rev = Splinegon(edges, id="rev")
    for e in rev.edges:
        assert classify_edge(rev, e) == "concave-in"


def test_extrema_disk3(disk3_obstacle):
    lo, hi = splinegon_extrema(disk3_obstacle)
    assert hi == pytest.approx((0.0, 1.0), abs=1e-12)
    assert lo == pytest.approx((0.0, -1.0), abs=1e-12)


def test_extrema_translation_equivariance():
    moved = disk_splinegon((5.0, 7.0), 1.0, id="m")
    lo, hi = splinegon_extrema(moved)
    assert hi == pytest.approx((5.0, 8.0), abs=1e-12)
    assert lo == pytest.approx((5.0, 6.0), abs=1e-12)


def test_extrema_polygon_case():
    tri = splinegon_from_vertices([(0, 0), (2, 0.3), (0.7, 2)], [0, 0, 0], id="t")
    lo, hi = splinegon_extrema(tri)
    assert lo == (0.0, 0.0)
    assert hi == (0.7, 2.0)


def test_contains_against_dense_oracle(disk3_obstacle):
    rng = random.Random(2)
    loop = []
    for e in disk3_obstacle.edges:
        loop.extend(dense_polyline(e, 2000)[:-1])
    for _ in range(300):
        p = (rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5))
        if abs(math.hypot(*p) - 1.0) < 1e-3:
            continue
        assert disk3_obstacle.contains(p) == dense_point_in([loop], p)


def test_validation_agrees_with_dense_contact_oracle():
    # valid random scenes have no boundary contact at 1e-4 resolution;
    # scenes rejected as overlapping do have contact
    scene = random_scene(42, mode="concave-in", h=3, n_target=14)
    v = validate_domain(scene)
    loops = []
    for s in v.obstacles:
        loop = []
        for e in s.edges:
            loop.extend(dense_polyline(e, 300)[:-1])
        loops.append(loop)
    for i in range(len(loops)):
        for j in range(i + 1, len(loops)):
            for p in loops[i][:: max(1, len(loops[i]) // 400)]:
                assert not dense_point_in([loops[j]], p)


def test_random_scenes_generate_and_validate():
    for seed in range(6):
        scene = random_scene(seed, mode="concave-in")
        v = validate_domain(scene)
        assert v.h >= 1
        scene = random_scene(seed + 100, mode="general")
        v = validate_domain(scene)
        assert v.n >= 3 * v.h
