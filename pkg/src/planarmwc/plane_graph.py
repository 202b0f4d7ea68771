"""Combinatorial plane multigraphs.

A plane multigraph is stored purely combinatorially.  Every edge ``e`` owns
two darts ``2*e`` (leaving the first endpoint) and ``2*e + 1`` (leaving the
second).  The clockwise cyclic order of outgoing darts around each vertex
(the rotation system), together with one marked dart on the outer face,
fixes the embedding.  Faces are traced with ``next(d) = rotation successor
of twin(d)``; a rotation system is accepted only if the traced face count
matches Euler's formula, i.e. the embedding has genus zero.

Edge and vertex identifiers are stable across edits; parallel edges and
self-loops are first-class citizens.  All values are immutable after
construction: every edit returns a new graph.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

INFINITE = math.inf

Weight = "int | Fraction | float"


def twin(dart: int) -> int:
    return dart ^ 1


def edge_of(dart: int) -> int:
    return dart >> 1


def darts_of(edge: int) -> tuple[int, int]:
    return 2 * edge, 2 * edge + 1


def is_positive_weight(w) -> bool:
    return w == INFINITE or (isinstance(w, (int, Fraction)) and w > 0)


@dataclass(frozen=True)
class FaceWalk:
    """One closed face walk; ``darts`` starts at the walk's smallest dart."""

    index: int
    darts: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.darts)

    def __contains__(self, dart: int) -> bool:
        return dart in self.darts


class PlaneGraph:
    """Immutable plane multigraph with a rotation system.

    Parameters
    ----------
    rotation:
        Mapping from vertex id to the clockwise sequence of outgoing darts.
        Vertices with no incident edge may appear with an empty sequence.
    edges:
        Mapping from edge id to ``(u, v, weight)``.
    outer_dart:
        Any dart lying on the outer face walk, or ``None`` for edgeless
        graphs.
    """

    __slots__ = (
        "rotation",
        "edges",
        "outer_dart",
        "_rot_pos",
        "_faces",
        "_face_of_dart",
        "_components",
    )

    def __init__(
        self,
        rotation: Mapping[int, Sequence[int]],
        edges: Mapping[int, tuple],
        outer_dart: "int | None",
    ):
        self.rotation = {v: tuple(ds) for v, ds in sorted(rotation.items())}
        self.edges = {e: (u, v, w) for e, (u, v, w) in sorted(edges.items())}
        self.outer_dart = outer_dart
        self._faces = None
        self._face_of_dart = None
        self._components = None
        self._rot_pos = {}
        for v, ds in self.rotation.items():
            for i, d in enumerate(ds):
                if d in self._rot_pos:
                    raise ValueError(f"dart {d} appears twice in rotation")
                self._rot_pos[d] = (v, i)
        self._check_structure()

    # -- integrity ---------------------------------------------------------

    def _check_structure(self) -> None:
        expected = set()
        for e, (u, v, w) in self.edges.items():
            if not is_positive_weight(w):
                raise ValueError(f"edge {e} has nonpositive finite weight {w!r}")
            if u not in self.rotation or v not in self.rotation:
                raise ValueError(f"edge {e} references unknown vertex")
            a, b = darts_of(e)
            expected.add(a)
            expected.add(b)
            if self._rot_pos.get(a, (None,))[0] != u:
                raise ValueError(f"dart {a} missing from rotation of vertex {u}")
            if self._rot_pos.get(b, (None,))[0] != v:
                raise ValueError(f"dart {b} missing from rotation of vertex {v}")
        if expected != set(self._rot_pos):
            stray = set(self._rot_pos) - expected
            raise ValueError(f"rotation mentions unknown darts {sorted(stray)}")
        if self.edges:
            if self.outer_dart is None or self.outer_dart not in self._rot_pos:
                raise ValueError("outer face dart missing or unknown")
        # Genus check: traced faces must satisfy Euler's formula per
        # component (F = E - V + 2C with F counting one walk per region
        # boundary per component).
        faces = self._trace()
        v = len(self.rotation)
        e = len(self.edges)
        c = len(self._component_sets())
        if len(faces) != e - v + 2 * c:
            raise ValueError(
                "rotation system is not planar: "
                f"{len(faces)} faces, expected {e - v + 2 * c}"
            )

    # -- basic accessors ----------------------------------------------------

    def vertex_ids(self) -> tuple[int, ...]:
        return tuple(self.rotation)

    def edge_ids(self) -> tuple[int, ...]:
        return tuple(self.edges)

    @property
    def vertex_count(self) -> int:
        return len(self.rotation)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def endpoints(self, e: int) -> tuple[int, int]:
        u, v, _ = self.edges[e]
        return u, v

    def weight(self, e: int):
        return self.edges[e][2]

    def total_weight(self, edge_ids: Iterable[int]):
        total = 0
        for e in edge_ids:
            total += self.edges[e][2]
        return total

    def origin(self, dart: int) -> int:
        u, v, _ = self.edges[edge_of(dart)]
        return u if dart % 2 == 0 else v

    def head(self, dart: int) -> int:
        return self.origin(twin(dart))

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    def darts_at(self, v: int) -> tuple[int, ...]:
        return self.rotation[v]

    def incident_edges(self, v: int) -> tuple[int, ...]:
        return tuple(edge_of(d) for d in self.rotation[v])

    def rotation_successor(self, dart: int) -> int:
        v, i = self._rot_pos[dart]
        rot = self.rotation[v]
        return rot[(i + 1) % len(rot)]

    def rotation_position(self, dart: int) -> tuple[int, int]:
        return self._rot_pos[dart]

    def next_dart(self, dart: int) -> int:
        """Face-walk successor of ``dart``."""
        return self.rotation_successor(twin(dart))

    # -- faces ---------------------------------------------------------------

    def _trace(self) -> list[tuple[int, ...]]:
        seen = set()
        walks = []
        for d0 in sorted(self._rot_pos):
            if d0 in seen:
                continue
            walk = []
            d = d0
            while True:
                walk.append(d)
                seen.add(d)
                d = self.next_dart(d)
                if d == d0:
                    break
            walks.append(tuple(walk))
        return walks

    @property
    def faces(self) -> tuple[FaceWalk, ...]:
        if self._faces is None:
            walks = self._trace()
            self._faces = tuple(
                FaceWalk(i, w) for i, w in enumerate(walks)
            )
            self._face_of_dart = {}
            for f in self._faces:
                for d in f.darts:
                    self._face_of_dart[d] = f.index
        return self._faces

    def face_of_dart(self, dart: int) -> int:
        self.faces
        return self._face_of_dart[dart]

    @property
    def face_count(self) -> int:
        return len(self.faces)

    @property
    def outer_face(self) -> int:
        if self.outer_dart is None:
            raise ValueError("graph has no edges, outer face undefined")
        return self.face_of_dart(self.outer_dart)

    def face_vertices(self, face: int) -> tuple[int, ...]:
        return tuple(sorted({self.origin(d) for d in self.faces[face].darts}))

    def face_edges(self, face: int) -> tuple[int, ...]:
        """Edge ids on the face walk; a bridge appears twice."""
        return tuple(edge_of(d) for d in self.faces[face].darts)

    # -- connectivity ---------------------------------------------------------

    def _component_sets(self) -> list[frozenset[int]]:
        if self._components is not None:
            return list(self._components)
        parent = {v: v for v in self.rotation}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v, _ in self.edges.values():
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
        groups: dict[int, set[int]] = {}
        for v in self.rotation:
            groups.setdefault(find(v), set()).add(v)
        comps = sorted((frozenset(g) for g in groups.values()), key=min)
        self._components = tuple(comps)
        return list(comps)

    @property
    def components(self) -> tuple[frozenset[int], ...]:
        self._component_sets()
        return self._components

    @property
    def is_connected(self) -> bool:
        return len(self.components) <= 1

    def is_bridge(self, e: int) -> bool:
        a, b = darts_of(e)
        return self.face_of_dart(a) == self.face_of_dart(b)

    # -- misc ------------------------------------------------------------------

    def with_weights(self, new_weights: Mapping[int, object]) -> "PlaneGraph":
        edges = {
            e: (u, v, new_weights.get(e, w)) for e, (u, v, w) in self.edges.items()
        }
        return PlaneGraph(self.rotation, edges, self.outer_dart)

    def __repr__(self) -> str:
        return (
            f"PlaneGraph(V={self.vertex_count}, E={self.edge_count}, "
            f"F={self.face_count})"
        )


def trace_faces(g: PlaneGraph) -> tuple[FaceWalk, ...]:
    """All face walks of the embedding (each dart covered exactly once)."""
    return g.faces


def build_plane_graph(
    vertex_count: int,
    edge_list: Sequence[tuple],
    rotation: Sequence[Sequence[int]],
    outer_face_dart: "int | None",
) -> PlaneGraph:
    """Assemble a plane graph from explicit building blocks.

    ``edge_list`` holds ``(edge_id, u, v, weight)`` rows, ``rotation`` one
    clockwise dart list per vertex ``0..vertex_count-1``.
    """
    if len(rotation) != vertex_count:
        raise ValueError("rotation must list every vertex")
    edges = {}
    for eid, u, v, w in edge_list:
        if eid in edges:
            raise ValueError(f"duplicate edge id {eid}")
        edges[eid] = (u, v, w)
    rot = {v: tuple(rotation[v]) for v in range(vertex_count)}
    return PlaneGraph(rot, edges, outer_face_dart)


# ---------------------------------------------------------------------------
# Dual construction
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DualPair:
    """A plane graph and its dual with the connecting bijections.

    Edge ids coincide in the primal and the dual; the dual dart ``d``
    originates at the primal face whose walk contains dart ``d``.  Dual
    vertex ids equal primal face indices.
    """

    primal: PlaneGraph
    dual: PlaneGraph

    def dual_vertex(self, primal_face: int) -> int:
        return primal_face

    def primal_face(self, dual_vertex: int) -> int:
        return dual_vertex


def dual(g: PlaneGraph) -> DualPair:
    """Construct the plane dual; requires a connected graph."""
    if not g.is_connected:
        raise ValueError("dual of a disconnected plane graph is undefined")
    if not g.edges:
        raise ValueError("dual of an edgeless graph is undefined")
    faces = g.faces
    dual_edges = {}
    for e in g.edges:
        a, b = darts_of(e)
        dual_edges[e] = (g.face_of_dart(a), g.face_of_dart(b), g.weight(e))
    # The rotation of a dual vertex is its face walk: dual dart d leaves the
    # face containing primal dart d, so the walk order is a valid clockwise
    # order for the inherited embedding.
    dual_rot = {f.index: f.darts for f in faces}
    # Dual faces correspond to primal vertices (the orbit of the primal
    # rotation).  Place the dual outer face at the origin of the smallest
    # dart on the primal outer walk.
    ref_vertex = g.origin(min(g.faces[g.outer_face].darts))
    outer = min(g.rotation[ref_vertex])
    dg = PlaneGraph(dual_rot, dual_edges, outer)
    return DualPair(g, dg)


# ---------------------------------------------------------------------------
# Bridges and bridgeless components
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BridgeBlocks:
    bridges: frozenset[int]
    nontrivial_blocks: tuple[frozenset[int], ...]

    @property
    def block_count(self) -> int:
        return len(self.bridges) + len(self.nontrivial_blocks)

    def block_of(self, e: int) -> frozenset[int]:
        if e in self.bridges:
            return frozenset([e])
        for b in self.nontrivial_blocks:
            if e in b:
                return b
        raise KeyError(e)


def bridge_blocks(g: PlaneGraph) -> BridgeBlocks:
    """Partition edges into bridges and maximal bridgeless components."""
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in g.rotation}
    for e, (u, v, _) in g.edges.items():
        if u == v:
            continue  # self-loops are never bridges and join no two vertices
        adj[u].append((v, e))
        adj[v].append((u, e))
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    bridges: set[int] = set()
    counter = 0
    for root in g.rotation:
        if root in index:
            continue
        index[root] = low[root] = counter
        counter += 1
        # Frame: [vertex, entering edge, adjacency pointer, entry consumed?]
        stack: list[list] = [[root, -1, 0, True]]
        while stack:
            frame = stack[-1]
            v, in_edge, ptr, consumed = frame
            if ptr < len(adj[v]):
                frame[2] += 1
                w, e = adj[v][ptr]
                if e == in_edge and not consumed:
                    # Skip one traversal of the entering edge; a parallel
                    # copy must still be explored as a back edge.
                    frame[3] = True
                    continue
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append([w, e, 0, False])
                else:
                    low[v] = min(low[v], index[w])
            else:
                stack.pop()
                if stack:
                    p = stack[-1][0]
                    low[p] = min(low[p], low[v])
                    if low[v] > index[p]:
                        bridges.add(in_edge)
    parent = {v: v for v in g.rotation}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e, (u, v, _) in g.edges.items():
        if e in bridges:
            continue
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    groups: dict[int, set[int]] = {}
    for e, (u, v, _) in g.edges.items():
        if e in bridges:
            continue
        groups.setdefault(find(u), set()).add(e)
    blocks = tuple(
        sorted((frozenset(s) for s in groups.values()), key=min)
    )
    return BridgeBlocks(frozenset(bridges), blocks)


# ---------------------------------------------------------------------------
# Regions of a subgraph within a host graph
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Regions:
    """Faces of a subgraph drawing, as unions of host faces.

    Two host faces lie in the same region exactly when they are joined by a
    host edge outside the subgraph.  ``region_of_face[f]`` is a canonical
    region id (the smallest member face); ``outer`` is the region holding
    the host's outer face.
    """

    region_of_face: tuple[int, ...]
    outer: int

    def region_of_dart(self, host: PlaneGraph, dart: int) -> int:
        return self.region_of_face[host.face_of_dart(dart)]


def subgraph_regions(host: PlaneGraph, sub_edges: Iterable[int]) -> Regions:
    keep = set(sub_edges)
    n_faces = host.face_count
    parent = list(range(n_faces))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in host.edges:
        if e in keep:
            continue
        a, b = darts_of(e)
        ra, rb = find(host.face_of_dart(a)), find(host.face_of_dart(b))
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    region = tuple(find(f) for f in range(n_faces))
    return Regions(region, region[host.outer_face])


def connected_edge_components(g: PlaneGraph, edge_ids: Iterable[int]) -> list[frozenset[int]]:
    """Group an edge subset into connected components (as edge sets)."""
    ids = sorted(set(edge_ids))
    parent: dict[int, int] = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in ids:
        u, v, _ = g.edges[e]
        for x in (u, v):
            parent.setdefault(x, x)
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    groups: dict[int, set[int]] = {}
    for e in ids:
        u = g.edges[e][0]
        groups.setdefault(find(u), set()).add(e)
    return sorted((frozenset(s) for s in groups.values()), key=min)


def split_plane_components(g: PlaneGraph) -> list[PlaneGraph]:
    """Split a plane graph into its connected components.

    Each component inherits its rotation verbatim.  The component holding
    the marked outer dart keeps it; a bare rotation system carries no
    nesting information for the others, so they get a canonical choice
    (the walk through their smallest dart).  Use ``split_after_deletion``
    when the components came from deleting edges of a connected graph and
    the exact outer faces matter.
    """
    comps = g.components
    if len(comps) <= 1:
        return [g]
    out = []
    for comp in comps:
        rot = {v: g.rotation[v] for v in sorted(comp)}
        edges = {e: t for e, t in g.edges.items() if t[0] in comp}
        if not edges:
            out.append(PlaneGraph(rot, {}, None))
            continue
        if g.outer_dart is not None and edge_of(g.outer_dart) in edges:
            outer_dart = g.outer_dart
        else:
            outer_dart = min(2 * e for e in edges)
        out.append(PlaneGraph(rot, edges, outer_dart))
    return out


def split_after_deletion(host: PlaneGraph, doomed: Iterable[int]) -> list[PlaneGraph]:
    """Delete edges from a connected graph and split the remainder.

    The host's drawing determines each resulting component's outer face
    exactly, including nested components.  Isolated vertices are dropped.
    """
    if not host.is_connected:
        raise ValueError("host must be connected")
    doomed = set(doomed)
    surviving = set(host.edges) - doomed
    if not surviving:
        return []
    regions = subgraph_regions(host, surviving)
    comps = connected_edge_components(host, surviving)
    out = []
    for comp_edges in comps:
        verts = set()
        for e in comp_edges:
            u, v, _ = host.edges[e]
            verts.add(u)
            verts.add(v)
        rot = {
            v: tuple(d for d in host.rotation[v] if edge_of(d) in comp_edges)
            for v in sorted(verts)
        }
        edges = {e: host.edges[e] for e in comp_edges}
        # This component's own regions within the host drawing: its outer
        # face is the region that contains the host's outer face.
        comp_regions = subgraph_regions(host, comp_edges)
        outer_dart = None
        for e in sorted(comp_edges):
            for d in darts_of(e):
                if comp_regions.region_of_dart(host, d) == comp_regions.outer:
                    outer_dart = d
                    break
            if outer_dart is not None:
                break
        if outer_dart is None:
            raise AssertionError("component has no dart on its outer region")
        out.append(PlaneGraph(rot, edges, outer_dart))
    return out


# ---------------------------------------------------------------------------
# Edits
# ---------------------------------------------------------------------------


def _fresh_edge_id(g: PlaneGraph) -> int:
    return max(g.edges, default=-1) + 1


def _fresh_vertex_id(g: PlaneGraph) -> int:
    return max(g.rotation, default=-1) + 1


def _pick_outer_dart(g: PlaneGraph, surviving_edges: set[int]) -> "int | None":
    """Outer dart for the graph induced by ``surviving_edges``."""
    if not surviving_edges:
        return None
    if edge_of(g.outer_dart) in surviving_edges:
        return g.outer_dart
    regions = subgraph_regions(g, surviving_edges)
    for e in sorted(surviving_edges):
        for d in darts_of(e):
            if regions.region_of_dart(g, d) == regions.outer:
                return d
    raise AssertionError("no surviving dart borders the outer region")


def delete_edges(g: PlaneGraph, edge_ids: Iterable[int]) -> PlaneGraph:
    doomed = set(edge_ids)
    unknown = doomed - set(g.edges)
    if unknown:
        raise KeyError(f"unknown edge ids {sorted(unknown)}")
    surviving = set(g.edges) - doomed
    outer = _pick_outer_dart(g, surviving)
    rot = {
        v: tuple(d for d in ds if edge_of(d) not in doomed)
        for v, ds in g.rotation.items()
    }
    edges = {e: t for e, t in g.edges.items() if e in surviving}
    return PlaneGraph(rot, edges, outer)


@dataclass(frozen=True)
class Contraction:
    graph: PlaneGraph
    vertex_map: dict  # old vertex id -> surviving vertex id


def contract_edges(
    g: PlaneGraph, edge_ids: Iterable[int], simplify: bool = False
) -> Contraction:
    """Contract the given edges one by one (ascending id).

    Contracting a self-loop is an error, including loops that arise midway
    when the requested set contains a cycle.  By default parallel edges and
    self-loops produced by the contraction are kept; ``simplify=True``
    removes arising loops and collapses each parallel class to its smallest
    edge id.
    """
    todo = sorted(set(edge_ids))
    unknown = [e for e in todo if e not in g.edges]
    if unknown:
        raise KeyError(f"unknown edge ids {unknown}")
    rot = {v: list(ds) for v, ds in g.rotation.items()}
    edges = dict(g.edges)
    vmap = {v: v for v in g.rotation}

    def resolve(v):
        while vmap[v] != v:
            v = vmap[v]
        return v

    for e in todo:
        u, v, _ = edges[e]
        u, v = resolve(u), resolve(v)
        if u == v:
            raise ValueError(f"cannot contract self-loop {e}")
        keep, gone = (u, v) if u < v else (v, u)
        a, b = darts_of(e)
        if resolve(g.origin(a)) == keep:
            keep_dart, gone_dart = a, b
        else:
            keep_dart, gone_dart = b, a
        # Splice the rotation of the vanishing vertex into the kept one at
        # the contracted edge's position.
        rk = rot[keep]
        rg = rot[gone]
        i = rk.index(keep_dart)
        j = rg.index(gone_dart)
        spliced = rk[:i] + rg[j + 1 :] + rg[:j] + rk[i + 1 :]
        rot[keep] = spliced
        del rot[gone]
        del edges[e]
        vmap[gone] = keep
        # Reattach endpoints of surviving edges.
        for eid, (x, y, w) in list(edges.items()):
            nx, ny = resolve(x), resolve(y)
            if (nx, ny) != (x, y):
                edges[eid] = (nx, ny, w)
    surviving = set(edges)
    # Contracting an edge never changes which region of the drawing is
    # unbounded, so the new outer dart is the first surviving dart on the
    # old outer walk.
    outer = None
    if surviving and g.outer_dart is not None:
        old_walk = g.faces[g.outer_face].darts
        start = old_walk.index(g.outer_dart)
        for step in range(len(old_walk)):
            d = old_walk[(start + step) % len(old_walk)]
            if edge_of(d) in surviving:
                outer = d
                break
        if outer is None:
            raise AssertionError("outer walk contracted away entirely")
    result = PlaneGraph(rot, edges, outer)
    final_map = {v: resolve(v) for v in g.rotation}
    if simplify:
        loops = [e for e, (x, y, _) in result.edges.items() if x == y]
        seen_pairs: dict[tuple[int, int], int] = {}
        dupes = []
        for e, (x, y, _) in sorted(result.edges.items()):
            if x == y:
                continue
            key = (min(x, y), max(x, y))
            if key in seen_pairs:
                dupes.append(e)
            else:
                seen_pairs[key] = e
        result = delete_edges(result, loops + dupes)
    return Contraction(result, final_map)


def edit(
    g: PlaneGraph,
    delete: "Iterable[int] | None" = None,
    contract: "Iterable[int] | None" = None,
    simplify: bool = False,
) -> PlaneGraph:
    """Delete and/or contract edge sets (deletions first)."""
    out = g
    if delete:
        out = delete_edges(out, delete)
    if contract:
        out = contract_edges(out, contract, simplify=simplify).graph
    return out


def subdivide_edge(
    g: PlaneGraph, e: int, weights: "tuple | None" = None
) -> tuple[PlaneGraph, int, int, int]:
    """Split edge ``e`` with a new middle vertex.

    Returns ``(graph, e1, e2, mid)`` where ``e1`` spans ``(u, mid)`` and
    ``e2`` spans ``(mid, v)``.  Without explicit ``weights`` both halves
    inherit the original weight.
    """
    u, v, w = g.edges[e]
    if weights is None:
        weights = (w, w)
    mid = _fresh_vertex_id(g)
    e1 = _fresh_edge_id(g)
    e2 = e1 + 1
    a, b = darts_of(e)
    rot = {x: list(ds) for x, ds in g.rotation.items()}
    rot[u][rot[u].index(a)] = 2 * e1
    rot[v][rot[v].index(b)] = 2 * e2 + 1
    rot[mid] = [2 * e1 + 1, 2 * e2]
    edges = dict(g.edges)
    del edges[e]
    edges[e1] = (u, mid, weights[0])
    edges[e2] = (mid, v, weights[1])
    outer = g.outer_dart
    if outer is not None and edge_of(outer) == e:
        outer = 2 * e1 if outer == a else 2 * e2 + 1
    return PlaneGraph(rot, edges, outer), e1, e2, mid


def add_edge_in_face(
    g: PlaneGraph,
    corner_u: int,
    corner_v: int,
    weight,
    edge_id: "int | None" = None,
) -> tuple[PlaneGraph, int]:
    """Embed a new edge inside a face.

    A corner is named by the dart the face walk leaves it by; the new dart
    is inserted immediately before that dart in the rotation.  Both corners
    must lie on the same face walk.  ``corner_u == corner_v`` embeds a
    self-loop whose inner face sits in that corner.
    """
    if g.face_of_dart(corner_u) != g.face_of_dart(corner_v):
        raise ValueError("corners lie on different faces")
    e = _fresh_edge_id(g) if edge_id is None else edge_id
    if e in g.edges:
        raise ValueError(f"edge id {e} already used")
    u = g.origin(corner_u)
    v = g.origin(corner_v)
    rot = {x: list(ds) for x, ds in g.rotation.items()}
    du, dv = darts_of(e)
    if corner_u == corner_v:
        if u != v:
            raise AssertionError
        i = rot[u].index(corner_u)
        rot[u][i:i] = [du, dv]
    else:
        rot[u].insert(rot[u].index(corner_u), du)
        rot[v].insert(rot[v].index(corner_v), dv)
    edges = dict(g.edges)
    edges[e] = (u, v, weight)
    return PlaneGraph(rot, edges, g.outer_dart), e


def duplicate_edge(
    g: PlaneGraph, e: int, weight=None, edge_id: "int | None" = None
) -> tuple[PlaneGraph, int]:
    """Add a parallel copy of ``e`` routed alongside it.

    The copy and the original bound a new face of length two.
    """
    u, v, w = g.edges[e]
    if weight is None:
        weight = w
    ne = _fresh_edge_id(g) if edge_id is None else edge_id
    if ne in g.edges:
        raise ValueError(f"edge id {ne} already used")
    a, b = darts_of(e)
    du, dv = darts_of(ne)
    rot = {x: list(ds) for x, ds in g.rotation.items()}
    rot[u].insert(rot[u].index(a) + 1, du)
    rot[v].insert(rot[v].index(b), dv)
    edges = dict(g.edges)
    edges[ne] = (u, v, weight)
    return PlaneGraph(rot, edges, g.outer_dart), ne


# ---------------------------------------------------------------------------
# Plane-graph equivalence
# ---------------------------------------------------------------------------


def _certificate_from(g: PlaneGraph, start: int, include_weights: bool) -> tuple:
    """Canonical encoding of a connected plane graph explored from ``start``."""
    dart_label: dict[int, int] = {}
    vertex_label: dict[int, int] = {}
    order: list[int] = []

    def visit_vertex(v: int, entry: "int | None"):
        vertex_label[v] = len(vertex_label)
        rot = g.rotation[v]
        if entry is None:
            ds = rot
        else:
            i = rot.index(entry)
            ds = rot[i:] + rot[:i]
        for d in ds:
            if d not in dart_label:
                dart_label[d] = len(dart_label)
                order.append(d)

    visit_vertex(g.origin(start), start)
    i = 0
    while i < len(order):
        d = order[i]
        i += 1
        h = g.head(d)
        if h not in vertex_label:
            visit_vertex(h, twin(d))
        elif twin(d) not in dart_label:
            dart_label[twin(d)] = len(dart_label)
            order.append(twin(d))
    rows = []
    for v, _ in sorted(vertex_label.items(), key=lambda kv: kv[1]):
        rot = g.rotation[v]
        start_d = min(rot, key=lambda d: dart_label[d])
        j = rot.index(start_d)
        seq = rot[j:] + rot[:j]
        row = []
        for d in seq:
            item = (dart_label[twin(d)],)
            if include_weights:
                item = item + (g.weight(edge_of(d)),)
            row.append(item)
        rows.append(tuple(row))
    return tuple(rows)


def canonical_certificate(g: PlaneGraph, include_weights: bool = False) -> tuple:
    if not g.is_connected:
        raise ValueError("certificates are defined for connected graphs only")
    if not g.edges:
        return (g.vertex_count,)
    best = None
    for d in sorted(g._rot_pos):
        cert = _certificate_from(g, d, include_weights)
        if best is None or cert < best:
            best = cert
    return best


def plane_equivalent(
    a: PlaneGraph, b: PlaneGraph, include_weights: bool = False
) -> bool:
    """True when the two embeddings are isomorphic with matching rotations."""
    if a.vertex_count != b.vertex_count or a.edge_count != b.edge_count:
        return False
    if a.face_count != b.face_count:
        return False
    return canonical_certificate(a, include_weights) == canonical_certificate(
        b, include_weights
    )
