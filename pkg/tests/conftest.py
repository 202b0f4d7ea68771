"""Shared fixtures: the small graphs most tests are built around."""

import pytest

from planarmwc.plane_graph import PlaneGraph, build_plane_graph


def square_graph() -> PlaneGraph:
    """4-cycle a=0, b=1, c=2, d=3 with weights ab=1, bc=2, cd=3, da=4."""
    edges = [(0, 0, 1, 1), (1, 1, 2, 2), (2, 2, 3, 3), (3, 3, 0, 4)]
    rotation = [[0, 7], [2, 1], [4, 3], [6, 5]]
    # Walk {0,2,4,6} is a->b->c->d; mark the other one as outer.
    return build_plane_graph(4, edges, rotation, 1)


def triangle_graph() -> PlaneGraph:
    """Triangle 0-1-2 with weights 1, 2, 3."""
    edges = [(0, 0, 1, 1), (1, 1, 2, 2), (2, 2, 0, 3)]
    rotation = [[0, 5], [2, 1], [4, 3]]
    return build_plane_graph(3, edges, rotation, 1)


def grid_graph(rows: int = 3, cols: int = 3) -> PlaneGraph:
    """rows x cols grid; vertex (r, c) -> r*cols + c, unit weights.

    Clockwise rotation order (y axis up): up, right, down, left.
    """
    edges = []
    eid = 0
    edge_id = {}
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edge_id[(v, v + 1)] = eid
                edges.append((eid, v, v + 1, 1))
                eid += 1
            if r + 1 < rows:
                edge_id[(v, v + cols)] = eid
                edges.append((eid, v, v + cols, 1))
                eid += 1

    def dart(u, w):
        if (u, w) in edge_id:
            return 2 * edge_id[(u, w)]
        return 2 * edge_id[(w, u)] + 1

    rotation = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            order = []
            if r + 1 < rows:
                order.append(dart(v, v + cols))  # up (larger row drawn above)
            if c + 1 < cols:
                order.append(dart(v, v + 1))  # right
            if r > 0:
                order.append(dart(v, v - cols))  # down
            if c > 0:
                order.append(dart(v, v - 1))  # left
            rotation.append(order)
    g = build_plane_graph(rows * cols, edges, rotation, 0)
    # The boundary walk is the unique longest one; mark it as outer.
    boundary = max(g.faces, key=lambda f: f.length)
    return build_plane_graph(rows * cols, edges, rotation, boundary.darts[0])


@pytest.fixture
def fix_sq() -> PlaneGraph:
    return square_graph()


@pytest.fixture
def fix_tri() -> PlaneGraph:
    return triangle_graph()


@pytest.fixture
def fix_grid() -> PlaneGraph:
    return grid_graph()
