"""Multiway-cut instances on plane graphs.

An instance couples a plane multigraph with a terminal set and an ordered
list of terminal faces that jointly cover the terminals.  This module owns
the instance file format, terminal-face bookkeeping (assignment and the
clockwise first-encounter order), face-cover search, weight normalization,
and the structural transformation that later stages of the pipeline rely
on (bridgeless graph, vertex-disjoint all-terminal faces, short faces
elsewhere), together with exact recovery of an optimum of the original
instance from an optimum of the transformed one.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .plane_graph import (
    INFINITE,
    PlaneGraph,
    add_edge_in_face,
    bridge_blocks,
    build_plane_graph,
    darts_of,
    duplicate_edge,
    edge_of,
    split_after_deletion,
    subdivide_edge,
    twin,
)


class InstanceError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Domain types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TerminalFace:
    """One face of the cover with its assigned terminals in walk order.

    ``anchor`` is the smallest dart on the face walk.  ``terminals`` lists
    the terminals assigned to this face by first encounter when the walk is
    traversed from the anchor.
    """

    anchor: int
    terminals: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.terminals)

    @property
    def plural(self) -> bool:
        return len(self.terminals) > 1


@dataclass(frozen=True)
class MwcInstance:
    graph: PlaneGraph
    terminals: tuple[int, ...]
    terminal_faces: tuple[TerminalFace, ...]
    transformed: bool = False

    @property
    def k(self) -> int:
        return len(self.terminal_faces)

    def face_index(self, tf: TerminalFace) -> int:
        return self.graph.face_of_dart(tf.anchor)

    def face_of_terminal(self, t: int) -> int:
        for i, tf in enumerate(self.terminal_faces):
            if t in tf.terminals:
                return i
        raise KeyError(t)

    def terminal_position(self, t: int) -> tuple[int, int]:
        """(face position in the cover, 1-based index on that face)."""
        for i, tf in enumerate(self.terminal_faces):
            if t in tf.terminals:
                return i, tf.terminals.index(t) + 1
        raise KeyError(t)


def face_walk_vertices(g: PlaneGraph, face: int) -> list[int]:
    return [g.origin(d) for d in g.faces[face].darts]


def ordered_terminals_on_face(
    g: PlaneGraph, face: int, terminals: Iterable[int]
) -> tuple[int, ...]:
    """Assigned terminals of a face, ordered by first encounter on the walk
    starting from the face's smallest dart."""
    want = set(terminals)
    walk = g.faces[face].darts
    start = walk.index(min(walk))
    seen: list[int] = []
    for i in range(len(walk)):
        v = g.origin(walk[(start + i) % len(walk)])
        if v in want and v not in seen:
            seen.append(v)
    return tuple(seen)


def make_instance(
    graph: PlaneGraph,
    terminals: Iterable[int],
    face_anchors: Sequence[int],
    transformed: bool = False,
) -> MwcInstance:
    """Assemble and validate an instance.

    A terminal lying on several cover faces is assigned to the earliest
    face in the given order.  Faces that end up with no assigned terminal
    are dropped.
    """
    terminals = tuple(sorted(set(terminals)))
    for t in terminals:
        if t not in graph.rotation:
            raise InstanceError(f"terminal {t} is not a vertex")
    faces = []
    seen_faces = set()
    for d in face_anchors:
        f = graph.face_of_dart(d)
        if f in seen_faces:
            raise InstanceError(f"face of dart {d} listed twice")
        seen_faces.add(f)
        faces.append(f)
    assigned: dict[int, list[int]] = {f: [] for f in faces}
    for t in terminals:
        home = None
        for f in faces:
            if t in {graph.origin(d) for d in graph.faces[f].darts}:
                home = f
                break
        if home is None:
            raise InstanceError(
                f"terminal {t} does not lie on any listed terminal face"
            )
        assigned[home].append(t)
    tfs = []
    for f in faces:
        if not assigned[f]:
            continue  # faces with no assigned terminal are redundant
        anchor = min(graph.faces[f].darts)
        tfs.append(
            TerminalFace(anchor, ordered_terminals_on_face(graph, f, assigned[f]))
        )
    if terminals and not tfs:
        raise InstanceError("no terminal face holds any terminal")
    return MwcInstance(graph, terminals, tuple(tfs), transformed)


# ---------------------------------------------------------------------------
# File format
# ---------------------------------------------------------------------------


def _parse_weight(w):
    if isinstance(w, bool):
        raise InstanceError("boolean weight")
    if isinstance(w, int):
        return w
    if isinstance(w, str):
        if w == "inf":
            return INFINITE
        try:
            q = Fraction(w)
        except ValueError as exc:
            raise InstanceError(f"bad weight {w!r}") from exc
        return int(q) if q.denominator == 1 else q
    raise InstanceError(f"bad weight {w!r} (use int, decimal string, or 'inf')")


def _render_weight(w):
    if w == INFINITE:
        return "inf"
    if isinstance(w, int):
        return w
    if isinstance(w, Fraction):
        if w.denominator == 1:
            return int(w)
        # Exact decimal rendering; only terminating expansions round-trip.
        num, den = w.numerator, w.denominator
        d = den
        for p in (2, 5):
            while d % p == 0:
                d //= p
        if d != 1:
            raise InstanceError(f"weight {w} has no exact decimal form")
        scale = 1
        exp = 0
        while den * scale % 10 and (den * scale) != 10 ** exp:
            scale += 1  # pragma: no cover - replaced below
        # Simpler: expand to the needed number of decimals.
        digits = 0
        den2 = den
        while den2 % 2 == 0:
            den2 //= 2
            digits += 1
        den5 = den
        fives = 0
        while den5 % 5 == 0:
            den5 //= 5
            fives += 1
        digits = max(digits, fives)
        scaled = num * 10 ** digits // den
        s = str(scaled).rjust(digits + 1, "0")
        return s[:-digits] + "." + s[-digits:]
    raise InstanceError(f"cannot render weight {w!r}")


def instance_to_document(inst: MwcInstance) -> dict:
    g = inst.graph
    ids = g.vertex_ids()
    if ids != tuple(range(len(ids))):
        raise InstanceError("serialization requires dense vertex ids 0..N-1")
    return {
        "vertices": len(ids),
        "edges": [[e, u, v, _render_weight(w)] for e, (u, v, w) in g.edges.items()],
        "rotation": [list(g.rotation[v]) for v in ids],
        "outer_face_dart": g.outer_dart,
        "terminals": list(inst.terminals),
        "terminal_faces": [{"face_dart": tf.anchor} for tf in inst.terminal_faces],
    }


def serialize_instance(inst: MwcInstance) -> str:
    return json.dumps(instance_to_document(inst), indent=2) + "\n"


def instance_from_document(doc: dict) -> MwcInstance:
    try:
        n = doc["vertices"]
        edge_rows = doc["edges"]
        rotation = doc["rotation"]
        outer = doc["outer_face_dart"]
        terminals = doc["terminals"]
    except (KeyError, TypeError) as exc:
        raise InstanceError(f"missing field: {exc}") from exc
    edges = []
    for row in edge_rows:
        if len(row) != 4:
            raise InstanceError(f"bad edge row {row!r}")
        e, u, v, w = row
        edges.append((e, u, v, _parse_weight(w)))
    g = build_plane_graph(n, edges, rotation, outer)
    anchors = [tf["face_dart"] for tf in doc.get("terminal_faces") or []]
    if not anchors:
        covers = compute_face_cover(g, terminals, g.face_count)
        anchors = [min(g.faces[f].darts) for f in covers[0]]
    return make_instance(g, terminals, anchors)


def parse_instance(text: str) -> MwcInstance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"invalid JSON: {exc}") from exc
    return instance_from_document(doc)


def renumber_dense(inst: MwcInstance) -> MwcInstance:
    """Relabel vertices as 0..N-1 and edges as 0..M-1 (for serialization)."""
    g = inst.graph
    vmap = {v: i for i, v in enumerate(g.vertex_ids())}
    emap = {e: i for i, e in enumerate(g.edge_ids())}

    def dmap(d):
        return 2 * emap[edge_of(d)] + (d & 1)

    rot = {vmap[v]: tuple(dmap(d) for d in ds) for v, ds in g.rotation.items()}
    edges = {emap[e]: (vmap[u], vmap[v], w) for e, (u, v, w) in g.edges.items()}
    g2 = PlaneGraph(rot, edges, dmap(g.outer_dart))
    return make_instance(
        g2,
        [vmap[t] for t in inst.terminals],
        [dmap(tf.anchor) for tf in inst.terminal_faces],
        inst.transformed,
    )


# ---------------------------------------------------------------------------
# Face covers
# ---------------------------------------------------------------------------


def compute_face_cover(
    g: PlaneGraph, terminals: Iterable[int], k_max: int
) -> list[tuple[int, ...]]:
    """All minimal covers of the terminals by at most ``k_max`` faces,
    smallest covers first (brute-force subset search)."""
    terminals = sorted(set(terminals))
    faces_of: dict[int, set[int]] = {}
    for f in range(g.face_count):
        verts = {g.origin(d) for d in g.faces[f].darts}
        for t in terminals:
            if t in verts:
                faces_of.setdefault(t, set()).add(f)
    missing = [t for t in terminals if t not in faces_of]
    if missing:
        raise InstanceError(f"terminals {missing} lie on no face")
    candidates = sorted(set().union(*faces_of.values())) if terminals else []
    covers: list[tuple[int, ...]] = []
    for size in range(1, k_max + 1):
        for combo in itertools.combinations(candidates, size):
            cs = set(combo)
            if any(set(prev) <= cs for prev in covers):
                continue
            if all(faces_of[t] & cs for t in terminals):
                covers.append(tuple(combo))
        if covers and size >= max(len(c) for c in covers):
            # All minimal covers of larger sizes are supersets; continue
            # only while new minimal covers are still possible.
            pass
    if not covers:
        raise InstanceError(f"no face cover of size <= {k_max}")
    return covers


# ---------------------------------------------------------------------------
# Normalization
# ---------------------------------------------------------------------------


def normalize_weights(source) -> list[MwcInstance]:
    """Drop nonpositive edges, scale weights to integers, split components.

    Accepts an ``MwcInstance`` or a raw document dict (the latter is the
    only way to feed nonpositive weights through, since plane graphs insist
    on positive ones).  Returns one instance per connected component that
    contains a terminal; each gets a freshly computed minimal face cover.
    """
    if isinstance(source, MwcInstance):
        g = source.graph
        terminals = source.terminals
        old_k = source.k
        weights = {e: g.weight(e) for e in g.edges}
        structure = [(e, *g.endpoints(e)) for e in g.edges]
        n = g.vertex_count
        rotation = g.rotation
        outer = g.outer_dart
    else:
        doc = source
        weights = {}
        structure = []
        for row in doc["edges"]:
            e, u, v, w = row
            weights[e] = _parse_weight(w)
            structure.append((e, u, v))
        n = doc["vertices"]
        rotation = {v: tuple(doc["rotation"][v]) for v in range(n)}
        outer = doc["outer_face_dart"]
        terminals = tuple(sorted(doc["terminals"]))
        old_k = len(doc.get("terminal_faces") or []) or None

    doomed = {e for e, w in weights.items() if w != INFINITE and w <= 0}
    denoms = [
        w.denominator
        for w in weights.values()
        if isinstance(w, Fraction) and w > 0
    ]
    scale = 1
    for d in denoms:
        scale = scale * d // _gcd(scale, d)
    scaled = {}
    for e, w in weights.items():
        if e in doomed:
            continue
        if w == INFINITE:
            scaled[e] = INFINITE
        else:
            q = Fraction(w) * scale
            assert q.denominator == 1
            scaled[e] = int(q)
    host = PlaneGraph(
        rotation,
        {e: (u, v, scaled.get(e, 1)) for e, u, v in structure},
        outer,
    )
    if not host.is_connected:
        raise InstanceError("input graphs must be connected")
    parts = split_after_deletion(host, doomed) if doomed else [host]
    out = []
    for part in parts:
        part_terms = [t for t in terminals if t in part.rotation]
        if not part_terms:
            continue
        covers = compute_face_cover(part, part_terms, part.face_count)
        anchors = [min(part.faces[f].darts) for f in covers[0]]
        inst = make_instance(part, part_terms, anchors)
        if old_k is not None and inst.k > old_k:
            inst = MwcInstance(
                inst.graph, inst.terminals, inst.terminal_faces, inst.transformed
            )
            # Face cover grew past the original bound; callers treat the
            # instance as fresh (k is whatever the new minimum cover is).
        out.append(inst)
    return out


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


# ---------------------------------------------------------------------------
# The structural transformation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TransformRecord:
    """Provenance of a transformation, sufficient to invert optima."""

    original: MwcInstance
    transformed: MwcInstance
    subdivision_of: dict  # original edge -> (half1, half2) in the prepared graph
    cycle_edges: dict  # cover position -> tuple of new boundary edge ids
    copy_of: dict  # prepared edge -> id of its parallel copy
    triangulation_edges: frozenset  # all edges added while triangulating
    additive_shift: int  # sum of p over plural faces
    n_prepared: int  # vertex count after the terminal-cycle step

    @property
    def scale(self) -> int:
        return 6 * self.n_prepared


def _locate_face_by_dart(g: PlaneGraph, dart: int) -> int:
    return g.face_of_dart(dart)


def transform_instance(inst: MwcInstance) -> tuple[MwcInstance, TransformRecord]:
    """Produce the equivalent structured instance.

    Step 1 rings every terminal face with unit-weight edges between
    consecutive terminals (subdividing pre-existing consecutive-terminal
    edges first).  Step 2 adds a parallel copy of every edge, both copies
    at ``3n`` times the old weight.  Step 3 triangulates every non-terminal
    face with doubled unit-weight edges.
    """
    g = inst.graph
    anchors = {i: tf.anchor for i, tf in enumerate(inst.terminal_faces)}
    orderings = {i: tf.terminals for i, tf in enumerate(inst.terminal_faces)}

    subdivision_of: dict[int, tuple[int, int]] = {}
    dart_alias: dict[int, int] = {}

    def alias(d):
        while d in dart_alias:
            d = dart_alias[d]
        return d

    # -- step 1: terminal-face cycles --------------------------------------
    cycle_edges: dict[int, tuple[int, ...]] = {}
    for i in sorted(anchors):
        terms = orderings[i]
        p = len(terms)
        # Subdivide existing edges between cyclically consecutive terminals.
        pairs = {
            frozenset((terms[j], terms[(j + 1) % p]))
            for j in range(p)
            if p > 1 or terms[j] == terms[(j + 1) % p]
        }
        if p == 1:
            pairs = {frozenset((terms[0],))}
        for e in sorted(g.edges):
            u, v, w = g.edges[e]
            if frozenset((u, v)) in pairs:
                a, b = darts_of(e)
                g, e1, e2, _ = subdivide_edge(g, e)
                subdivision_of[e] = (e1, e2)
                dart_alias[a] = 2 * e1
                dart_alias[b] = 2 * e2 + 1
        face = g.face_of_dart(alias(anchors[i]))
        walk = g.faces[face].darts
        start = walk.index(min(walk))
        leave: dict[int, int] = {}
        for s in range(len(walk)):
            d = walk[(start + s) % len(walk)]
            v = g.origin(d)
            if v in terms and v not in leave:
                leave[v] = d
        new_ids = []
        first_u_dart = None
        for j in range(p):
            u = terms[j]
            v = terms[(j + 1) % p]
            if p == 1:
                g, ne = add_edge_in_face(g, leave[u], leave[u], 1)
            elif j < p - 1:
                g, ne = add_edge_in_face(g, leave[u], leave[v], 1)
            else:
                g, ne = add_edge_in_face(g, leave[u], first_u_dart, 1)
            if first_u_dart is None:
                first_u_dart = 2 * ne
            new_ids.append(ne)
        cycle_edges[i] = tuple(new_ids)
        # The ring face is bounded by exactly the new edges.
        ring_faces = [
            f
            for f in g.faces
            if {edge_of(d) for d in f.darts} == set(new_ids)
            and f.length == p
        ]
        if len(ring_faces) != 1:
            raise AssertionError("terminal ring face not found")
        anchors[i] = min(ring_faces[0].darts)

    n_prepared = g.vertex_count
    prepared_edges = tuple(g.edges)

    # -- step 2: duplicate everything at scaled weight ----------------------
    factor = 3 * n_prepared
    g = g.with_weights({e: factor * g.weight(e) for e in g.edges})
    copy_of: dict[int, int] = {}
    for e in prepared_edges:
        a, b = darts_of(e)
        g, ne = duplicate_edge(g, e)
        copy_of[e] = ne
        # The copy takes over the walk position of dart b.
        dart_alias[b] = 2 * ne + 1
    for i in sorted(anchors):
        anchors[i] = alias(anchors[i])

    # -- step 3: triangulate non-terminal faces -----------------------------
    terminal_face_ids = {g.face_of_dart(anchors[i]) for i in anchors}
    tri_edges: list[int] = []
    work = [
        f.darts
        for f in g.faces
        if f.index not in terminal_face_ids and f.length >= 4
    ]
    for walk in work:
        walk = list(walk)
        start = walk.index(min(walk))
        walk = walk[start:] + walk[:start]
        apex_corner = walk[0]
        # Fan chords from the apex corner to every corner except the two
        # adjacent ones; each chord is immediately doubled.
        for j in range(2, len(walk) - 1):
            g, ch = add_edge_in_face(g, apex_corner, walk[j], 1)
            g, ch2 = duplicate_edge(g, ch)
            tri_edges.extend((ch, ch2))
            apex_corner = 2 * ch
    out = make_instance(
        g,
        inst.terminals,
        [anchors[i] for i in sorted(anchors)],
        transformed=True,
    )
    if [out.face_index(tf) for tf in out.terminal_faces] != [
        g.face_of_dart(anchors[i]) for i in sorted(anchors)
    ]:
        raise AssertionError("terminal faces lost during transformation")
    plural_shift = sum(
        len(orderings[i]) for i in orderings if len(orderings[i]) > 1
    )
    record = TransformRecord(
        original=inst,
        transformed=out,
        subdivision_of=subdivision_of,
        cycle_edges=cycle_edges,
        copy_of=copy_of,
        triangulation_edges=frozenset(tri_edges),
        additive_shift=plural_shift,
        n_prepared=n_prepared,
    )
    return out, record


def transformed_predicates(inst: MwcInstance) -> dict[str, bool]:
    """The five structural requirements on a transformed instance."""
    g = inst.graph
    tf_ids = [inst.face_index(tf) for tf in inst.terminal_faces]
    tf_set = set(tf_ids)
    terminals = set(inst.terminals)
    vertex_sets = [set(face_walk_vertices(g, f)) for f in tf_ids]
    disjoint = all(
        not (vertex_sets[i] & vertex_sets[j])
        for i in range(len(vertex_sets))
        for j in range(i + 1, len(vertex_sets))
    )
    all_terminal = all(vs <= terminals for vs in vertex_sets)
    short_faces = all(
        f.length <= 3 for f in g.faces if f.index not in tf_set
    )
    special = [
        f.index
        for f in g.faces
        if f.index in tf_set or f.length == 3
    ]
    only_digon_neighbours = all(
        g.faces[g.face_of_dart(twin(d))].length == 2
        for f in special
        for d in g.faces[f].darts
        if g.face_of_dart(twin(d)) != f
    )
    return {
        "bridgeless": not bridge_blocks(g).bridges,
        "terminal_faces_vertex_disjoint": disjoint,
        "terminal_faces_all_terminal": all_terminal,
        "other_faces_short": short_faces,
        "special_faces_see_only_digons": only_digon_neighbours,
    }


def is_transformed(inst: MwcInstance) -> bool:
    return all(transformed_predicates(inst).values())


# ---------------------------------------------------------------------------
# Optimum recovery
# ---------------------------------------------------------------------------


def recover_optimum(record: TransformRecord, transformed_cut: Iterable[int]):
    """Map a minimal multiway cut of the transformed instance back.

    The cut must contain both or neither edge of every parallel pair; the
    recovered cut consists of the original edges whose pair was selected
    (subdivision halves map back to their source edge).
    """
    from .dual_tools import make_cut_solution, verify_multiway_cut, check_minimal

    cut = set(transformed_cut)
    t_inst = record.transformed
    if not verify_multiway_cut(t_inst, cut):
        raise InstanceError("input is not a multiway cut of the transformed instance")
    if not check_minimal(t_inst, cut):
        raise InstanceError("input cut is not inclusion-minimal")
    selected = set()
    for e, e2 in record.copy_of.items():
        has, has2 = e in cut, e2 in cut
        if has != has2:
            raise InstanceError(
                f"minimal cut selects exactly one copy of edge pair ({e}, {e2})"
            )
        if has:
            selected.add(e)
    back = set()
    halves = {}
    for orig, (h1, h2) in record.subdivision_of.items():
        halves[h1] = orig
        halves[h2] = orig
    ring = {e for ids in record.cycle_edges.values() for e in ids}
    for e in selected:
        if e in ring:
            continue
        orig = halves.get(e, e)
        if orig in back and e in halves:
            raise InstanceError("minimal cut selects both halves of a subdivision")
        back.add(orig)
    return make_cut_solution(record.original, back)
