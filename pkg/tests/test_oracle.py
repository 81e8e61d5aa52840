"""Lattice oracle sanity: free-space L1, convergence, blocking."""

import math

import pytest

from rectispline.domain import SplinegonalDomain, validate_domain
from rectispline.errors import UnreachableOnGrid
from rectispline.oracle import convergence_table, grid_oracle, rasterize
from rectispline.scenes import disk3_scene, disk_splinegon


def test_empty_scene_l1():
    scene = SplinegonalDomain([], (0.0, 0.0), (3.0, 4.0))
    v = validate_domain(scene)
    r = 1.0 / 64.0
    d = grid_oracle(v, r)
    assert abs(d - 7.0) <= 2 * r


def test_disk3_convergence():
    v = validate_domain(disk3_scene())
    table = convergence_table(v, [1 / 64, 1 / 128, 1 / 256, 1 / 512])
    for r, d in table:
        assert abs(d - 6.0) <= max(4 * r, 0.02), (r, d)
    # refinement never increases the estimate beyond slack
    for (r1, d1), (r2, d2) in zip(table[:-1], table[1:]):
        assert d2 <= d1 + 2 * r1
    assert abs(table[-1][1] - 6.0) <= 0.02


def test_sealed_box_unreachable():
    big = disk_splinegon((0, 0), 1.0, k=8, id="big")
    # a target strictly inside the disk is rejected by validation, so build
    # the validated domain directly to exercise the unreachable branch
    from rectispline.config import DEFAULT_CONFIG
    from rectispline.domain import ValidatedDomain, compute_bounding_box

    box = compute_bounding_box([big], (-2.0, 0.1), (0.0, 0.05), 0.25)
    dom = ValidatedDomain([big], (-2.0, 0.1), (0.0, 0.05), box, DEFAULT_CONFIG)
    with pytest.raises(UnreachableOnGrid):
        grid_oracle(dom, 1 / 64)


def test_rasterization_refinement_consistency():
    v = validate_domain(disk3_scene())
    lat1 = rasterize(v, 1 / 32)
    lat2 = rasterize(v, 1 / 64)
    # blocked at r implies blocked or within one cell of the boundary at r/2
    rows, cols = lat1.shape
    for i in range(0, rows, 3):
        for j in range(0, cols, 3):
            if not lat1.blocked[i, j]:
                continue
            c = lat1.center_of((i, j))
            i2, j2 = lat2.cell_of(c)
            window = lat2.blocked[
                max(i2 - 1, 0) : i2 + 2, max(j2 - 1, 0) : j2 + 2
            ]
            assert window.any()


def test_blocked_iff_center_strictly_inside():
    v = validate_domain(disk3_scene())
    lat = rasterize(v, 1 / 40)
    rows, cols = lat.shape
    disk = v.obstacles[0]
    for i in range(0, rows, 2):
        for j in range(0, cols, 2):
            c = lat.center_of((i, j))
            d = math.hypot(*c)
            if abs(d - 1.0) < 0.05:
                continue  # skip the boundary band
            assert lat.blocked[i, j] == (d < 1.0)
