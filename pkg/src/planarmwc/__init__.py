"""Exact solver toolkit for edge multiway cut on plane graphs.

The solver is parameterized by the number of faces jointly covering all
terminals.  Core layers: combinatorial plane multigraphs, problem
instances with a weight-preserving structural transformation, augmented
duals and cut audits, Steiner-tree engines, homotopy-constrained shortest
paths, the face-count-parameterized exact solver, and brute-force oracles
for validation.
"""

from .plane_graph import (
    INFINITE,
    PlaneGraph,
    build_plane_graph,
    bridge_blocks,
    dual,
    trace_faces,
)

__all__ = [
    "INFINITE",
    "PlaneGraph",
    "build_plane_graph",
    "bridge_blocks",
    "dual",
    "trace_faces",
]

__version__ = "0.1.0"
