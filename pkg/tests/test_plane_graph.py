import pytest
from hypothesis import given, settings, strategies as st

from planarmwc.plane_graph import (
    INFINITE,
    add_edge_in_face,
    bridge_blocks,
    build_plane_graph,
    canonical_certificate,
    contract_edges,
    darts_of,
    delete_edges,
    dual,
    duplicate_edge,
    edit,
    plane_equivalent,
    split_after_deletion,
    subdivide_edge,
    subgraph_regions,
    trace_faces,
    twin,
)

from conftest import grid_graph, square_graph, triangle_graph


def cycle_graph(n, weights=None):
    weights = weights or [1] * n
    edges = [(i, i, (i + 1) % n, weights[i]) for i in range(n)]
    rotation = [[2 * i, twin(2 * ((i - 1) % n))] for i in range(n)]
    return build_plane_graph(n, edges, rotation, 1)


class TestBuild:
    def test_triangle_two_faces(self, fix_tri):
        assert fix_tri.face_count == 2
        assert [fix_tri.weight(e) for e in fix_tri.edges] == [1, 2, 3]

    def test_square_two_faces(self, fix_sq):
        assert fix_sq.face_count == 2
        assert all(f.length == 4 for f in fix_sq.faces)

    def test_duplicate_dart_rejected(self):
        with pytest.raises(ValueError):
            build_plane_graph(3, [(0, 0, 1, 1), (1, 1, 2, 1), (2, 2, 0, 1)],
                              [[0, 5, 5], [2, 1], [4, 3]], 1)

    def test_missing_dart_rejected(self):
        with pytest.raises(ValueError):
            build_plane_graph(3, [(0, 0, 1, 1), (1, 1, 2, 1), (2, 2, 0, 1)],
                              [[0], [2, 1], [4, 3]], 1)

    def test_nonpositive_weight_rejected(self):
        with pytest.raises(ValueError):
            build_plane_graph(2, [(0, 0, 1, 0)], [[0], [1]], 0)

    def test_infinite_weight_accepted(self):
        g = build_plane_graph(2, [(0, 0, 1, INFINITE)], [[0], [1]], 0)
        assert g.weight(0) == INFINITE

    def test_nonplanar_rotation_rejected(self):
        # K4: one rotation system of genus 0, one of higher genus.
        edges = [(0, 0, 1, 1), (1, 0, 2, 1), (2, 0, 3, 1),
                 (3, 1, 2, 1), (4, 1, 3, 1), (5, 2, 3, 1)]
        planar_rot = [[0, 4, 2], [8, 1, 6], [7, 3, 10], [11, 5, 9]]
        g = build_plane_graph(4, edges, planar_rot, 7)
        assert g.face_count == 4
        twisted = [[0, 2, 4], [8, 1, 6], [7, 3, 10], [11, 5, 9]]
        with pytest.raises(ValueError, match="not planar"):
            build_plane_graph(4, edges, twisted, 7)


class TestFaces:
    def test_every_dart_once(self, fix_grid):
        seen = []
        for f in trace_faces(fix_grid):
            seen.extend(f.darts)
        assert sorted(seen) == sorted(
            d for e in fix_grid.edges for d in darts_of(e)
        )

    def test_single_edge_one_face_of_length_two(self):
        g = build_plane_graph(2, [(0, 0, 1, 5)], [[0], [1]], 0)
        assert g.face_count == 1
        assert g.faces[0].length == 2

    def test_grid_five_faces(self, fix_grid):
        # 4 unit squares plus the boundary walk of length 8.
        assert fix_grid.face_count == 5
        assert sorted(f.length for f in fix_grid.faces) == [4, 4, 4, 4, 8]
        assert fix_grid.faces[fix_grid.outer_face].length == 8

    def test_euler_after_edits(self, fix_grid):
        g = delete_edges(fix_grid, [0, 5])
        assert g.face_count == g.edge_count - g.vertex_count + 2
        g2 = contract_edges(fix_grid, [0]).graph
        assert g2.face_count == g2.edge_count - g2.vertex_count + 2


class TestDual:
    def test_cycle_dual_is_dipole(self):
        for n in (2, 3, 4, 5, 6):
            d = dual(cycle_graph(n)).dual
            assert d.vertex_count == 2
            assert d.edge_count == n
            us = {frozenset(d.endpoints(e)) for e in d.edges}
            assert len(us) == 1  # all parallel

    def test_single_edge_dual_is_loop(self):
        g = build_plane_graph(2, [(0, 0, 1, 5)], [[0], [1]], 0)
        d = dual(g).dual
        assert d.vertex_count == 1 and d.edge_count == 1
        u, v, w = d.edges[0]
        assert u == v and w == 5

    def test_grid_dual_counts(self, fix_grid):
        d = dual(fix_grid).dual
        assert d.vertex_count == 5
        assert d.edge_count == 12
        assert d.face_count == d.edge_count - d.vertex_count + 2

    def test_dual_of_dual_equivalent(self, fix_sq, fix_tri, fix_grid):
        for g in (fix_sq, fix_tri, fix_grid):
            dd = dual(dual(g).dual).dual
            assert plane_equivalent(dd, g, include_weights=True)

    def test_dual_disconnected_rejected(self):
        g = build_plane_graph(4, [(0, 0, 1, 1), (1, 2, 3, 1)],
                              [[0], [1], [2], [3]], 0)
        with pytest.raises(ValueError):
            dual(g)

    def test_bridge_iff_dual_self_loop_iff_one_walk(self):
        # Two triangles joined by a bridge.
        ed = [(0, 0, 1, 1), (1, 1, 2, 1), (2, 2, 0, 1), (3, 3, 4, 1),
              (4, 4, 5, 1), (5, 5, 3, 1), (6, 2, 3, 1)]
        rot = [[0, 5], [2, 1], [4, 3, 12], [6, 11, 13], [8, 7], [10, 9]]
        g = build_plane_graph(6, ed, rot, 1)
        bb = bridge_blocks(g)
        dl = dual(g).dual
        for e in g.edges:
            a, b = darts_of(e)
            same_walk = g.face_of_dart(a) == g.face_of_dart(b)
            u, v, _ = dl.edges[e]
            assert (e in bb.bridges) == same_walk == (u == v)


class TestBridgeBlocks:
    def test_square_single_block(self, fix_sq):
        bb = bridge_blocks(fix_sq)
        assert not bb.bridges
        assert bb.nontrivial_blocks == (frozenset({0, 1, 2, 3}),)

    def test_path_three_trivial_blocks(self):
        g = build_plane_graph(4, [(0, 0, 1, 1), (1, 1, 2, 1), (2, 2, 3, 1)],
                              [[0], [2, 1], [4, 3], [5]], 0)
        bb = bridge_blocks(g)
        assert bb.bridges == frozenset({0, 1, 2})
        assert not bb.nontrivial_blocks
        assert bb.block_count == 3

    def test_two_triangles_and_bridge(self):
        ed = [(0, 0, 1, 1), (1, 1, 2, 1), (2, 2, 0, 1), (3, 3, 4, 1),
              (4, 4, 5, 1), (5, 5, 3, 1), (6, 2, 3, 1)]
        rot = [[0, 5], [2, 1], [4, 3, 12], [6, 11, 13], [8, 7], [10, 9]]
        bb = bridge_blocks(build_plane_graph(6, ed, rot, 1))
        assert bb.bridges == frozenset({6})
        assert sorted(sorted(b) for b in bb.nontrivial_blocks) == [
            [0, 1, 2], [3, 4, 5]]

    def test_parallel_pair_not_bridge(self):
        g = cycle_graph(2)
        assert not bridge_blocks(g).bridges


class TestEdits:
    def test_delete_edge_of_square(self, fix_sq):
        g = delete_edges(fix_sq, [0])
        assert g.edge_count == 3 and g.face_count == 1

    def test_contract_edge_of_square(self, fix_sq):
        res = contract_edges(fix_sq, [0])
        assert plane_equivalent(res.graph, cycle_graph(3), include_weights=False)
        assert res.vertex_map[1] == 0

    def test_contract_spanning_tree_of_grid(self, fix_grid):
        # Remaining edges: E - (V - 1) = 12 - 8 = 4 self-loops.
        tree = [0, 1, 2, 4, 5, 6, 8, 9]  # a spanning tree of the 3x3 grid
        verts = set()
        for e in tree:
            u, v, _ = fix_grid.edges[e]
            verts.update((u, v))
        assert len(verts) == 9
        res = contract_edges(fix_grid, tree)
        g = res.graph
        assert g.vertex_count == 1
        assert g.edge_count == 4
        assert all(u == v for (u, v, _) in g.edges.values())
        assert g.face_count == 5

    def test_contract_self_loop_rejected(self, fix_tri):
        g, loop = add_edge_in_face(fix_tri, 0, 0, 1)
        with pytest.raises(ValueError):
            contract_edges(g, [loop])

    def test_contract_cycle_rejected(self, fix_tri):
        with pytest.raises(ValueError):
            contract_edges(fix_tri, [0, 1, 2])

    def test_contract_simplify(self, fix_sq):
        res = contract_edges(fix_sq, [0, 1], simplify=True)
        # Two parallel edges collapse to the smaller id.
        assert res.graph.edge_count == 1
        assert list(res.graph.edges) == [2]

    def test_edit_combined(self, fix_grid):
        g = edit(fix_grid, delete=[0], contract=[5])
        assert g.vertex_count == 8 and g.edge_count == 10

    def test_subdivide(self, fix_tri):
        g, e1, e2, mid = subdivide_edge(fix_tri, 0)
        assert g.vertex_count == 4 and g.edge_count == 4
        assert g.weight(e1) == g.weight(e2) == 1
        assert g.face_count == 2

    def test_duplicate_creates_digon(self, fix_tri):
        g, ne = duplicate_edge(fix_tri, 0)
        digons = [f for f in g.faces if f.length == 2]
        assert len(digons) == 1
        assert sorted(e >> 1 for e in ()) == []
        assert {d >> 1 for d in digons[0].darts} == {0, ne}

    def test_chord_splits_face(self, fix_sq):
        g, ne = add_edge_in_face(fix_sq, 0, 4, 9)
        assert g.face_count == 3
        assert sorted(f.length for f in g.faces) == [3, 3, 4]

    def test_chord_corners_must_share_face(self, fix_sq):
        with pytest.raises(ValueError):
            add_edge_in_face(fix_sq, 0, 5, 9)  # dart 5 is on the outer walk

    def test_self_loop_insert(self, fix_tri):
        g, loop = add_edge_in_face(fix_tri, 0, 0, 1)
        assert g.face_count == 3
        assert min(f.length for f in g.faces) == 1


class TestRegions:
    def test_full_subgraph_regions_are_faces(self, fix_grid):
        r = subgraph_regions(fix_grid, fix_grid.edges)
        assert len(set(r.region_of_face)) == fix_grid.face_count

    def test_empty_subgraph_single_region(self, fix_grid):
        r = subgraph_regions(fix_grid, ())
        assert len(set(r.region_of_face)) == 1

    def test_nested_split_outer_faces(self):
        # Triangle inside a triangle, joined by an edge; delete the joiner.
        ed = [(0, 0, 1, 1), (1, 1, 2, 1), (2, 2, 0, 1), (3, 3, 4, 1),
              (4, 4, 5, 1), (5, 5, 3, 1), (6, 0, 3, 1)]
        rot = [[0, 5, 12], [2, 1], [4, 3], [6, 11, 13], [8, 7], [10, 9]]
        nest = build_plane_graph(6, ed, rot, 1)
        outer_part, inner_part = split_after_deletion(nest, {6})
        # The enclosing triangle keeps its true outer walk.
        assert outer_part.faces[outer_part.outer_face].darts == (1, 5, 3)
        # The nested triangle's outer face is the side toward its host face.
        assert inner_part.faces[inner_part.outer_face].darts == (6, 8, 10)


class TestEquivalence:
    def test_relabelled_cycle_equivalent(self):
        g1 = cycle_graph(4)
        edges = [(7, 2, 3, 1), (3, 3, 0, 1), (5, 0, 1, 1), (9, 1, 2, 1)]
        rotation = [[10, 7], [18, 11], [14, 19], [6, 15]]
        g2 = build_plane_graph(4, edges, rotation, 15)
        assert plane_equivalent(g1, g2)

    def test_weight_mismatch_detected(self):
        g1 = cycle_graph(3, [1, 2, 3])
        g2 = cycle_graph(3, [1, 2, 4])
        assert plane_equivalent(g1, g2)
        assert not plane_equivalent(g1, g2, include_weights=True)

    def test_mirror_grids(self, fix_grid):
        assert canonical_certificate(fix_grid) == canonical_certificate(
            grid_graph())


@st.composite
def random_plane_graphs(draw):
    """Random connected plane multigraph built by random face edits."""
    g = triangle_graph()
    steps = draw(st.integers(min_value=0, max_value=8))
    for _ in range(steps):
        op = draw(st.integers(min_value=0, max_value=2))
        if op == 0:
            e = draw(st.sampled_from(sorted(g.edges)))
            g = duplicate_edge(g, e)[0]
        elif op == 1:
            e = draw(st.sampled_from(sorted(g.edges)))
            g = subdivide_edge(g, e)[0]
        else:
            f = draw(st.sampled_from(g.faces))
            i = draw(st.integers(min_value=0, max_value=f.length - 1))
            j = draw(st.integers(min_value=0, max_value=f.length - 1))
            g = add_edge_in_face(g, f.darts[i], f.darts[j], 1)[0]
    return g


class TestProperties:
    @settings(max_examples=60, deadline=None)
    @given(random_plane_graphs())
    def test_euler_and_dual_roundtrip(self, g):
        assert g.face_count == g.edge_count - g.vertex_count + 2
        dd = dual(dual(g).dual).dual
        assert plane_equivalent(dd, g, include_weights=True)

    @settings(max_examples=40, deadline=None)
    @given(random_plane_graphs())
    def test_bridge_characterisations_agree(self, g):
        bb = bridge_blocks(g)
        dl = dual(g).dual
        for e in g.edges:
            a, b = darts_of(e)
            u, v, _ = dl.edges[e]
            assert (e in bb.bridges) == (
                g.face_of_dart(a) == g.face_of_dart(b)) == (u == v)
