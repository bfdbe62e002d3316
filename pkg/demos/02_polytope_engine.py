"""Tour of the polytope engine: vertex enumeration, adjacency, two volumes.

The engine works on small halfspace systems {x : A x + b >= 0}.  Vertices
come from exhaustive subset intersection, adjacency from shared tight rows,
and volumes from two independent algorithms (triangulation and the
vertex-sum formula for simple polytopes) that must agree.
"""

import math

import numpy as np

from entvol import (
    HalfspaceSystem,
    VertexSet,
    brion_volume,
    canonicalize,
    enumerate_vertices,
    is_simple,
    vertex_adjacency,
    volume_triangulation,
)
from entvol.bipartite import (
    accessible_hrep,
    source_polytope_adjacency,
    source_polytope_vertices,
    source_volume,
)

print("=== A unit square from its halfspaces ===")
square = HalfspaceSystem(
    np.array([[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]]),
    np.array([0.0, 0.0, 1.0, 1.0]),
)
V = enumerate_vertices(square)
adj = vertex_adjacency(square, V)
print("vertices:", V.vertices.tolist())
print("neighbors per vertex:", [len(n) for n in adj], "-> simple:", is_simple(square, V, adj))
print("triangulation volume:", volume_triangulation(V)[0])
print("vertex-sum volume:   ", brion_volume(V, adj, xi=np.array([1.0, 2.0])))

print("\n=== Accessible polytopes and their vertex counts ===")
for lam_list in ([0.30, 0.27, 0.24, 0.19], [0.4, 0.3, 0.2, 0.1]):
    lam = canonicalize(lam_list)
    V = enumerate_vertices(accessible_hrep(lam))
    vol, dim = volume_triangulation(V)
    print(f"  {lam.components}: {V.n} vertices, projected volume {vol:.8f} (dim {dim})")

print("\n=== The permutation hull behind the source volume ===")
lam = canonicalize([0.5, 0.3, 0.2])
verts = source_polytope_vertices(lam)
adj = source_polytope_adjacency(lam.d)
print(f"hull of all {len(verts)} permutations of {lam.components}")
mu = brion_volume(verts, adj)
tri, dim = volume_triangulation(VertexSet(verts))
print(f"  vertex-sum volume    = {mu:.12f}")
print(f"  triangulation volume = {tri:.12f}  (dim {dim})")
print(f"  closed form * d!     = {source_volume(lam) * math.factorial(lam.d):.12f}")

print("\n=== Degenerate states break simplicity but not the closed form ===")
deg = canonicalize([0.4, 0.2, 0.2, 0.2])
verts = source_polytope_vertices(deg)
tri, dim = volume_triangulation(VertexSet(verts))
print(f"  {deg.components}: hull volume {tri:.10f} (dim {dim})")
print(f"  closed form * d!   : {source_volume(deg) * math.factorial(deg.d):.10f}")
