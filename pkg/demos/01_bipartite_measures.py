"""Tour of the bipartite measures: majorization, source and accessible volumes.

Every bipartite pure state is represented by its sorted Schmidt vector; a
state converts into another by deterministic LOCC exactly when its vector is
majorized by the target's.  The fraction of states that can reach a given
state (source volume) and the fraction it can reach (accessible volume) turn
into two operational entanglement measures.
"""

import numpy as np

from entvol import (
    accessible_entanglement,
    accessible_entanglement_k,
    accessible_vertices,
    canonicalize,
    guaranteed_vertices,
    majorizes,
    max_entangled_accessible,
    maximally_entangled,
    separable,
    source_entanglement,
    source_entanglement_k,
    source_volume,
)

print("=== Majorization decides convertibility ===")
a = canonicalize([0.6, 0.4])
b = canonicalize([0.7, 0.3])
print(f"{a.components} -> {b.components}: {majorizes(b, a)}")
print(f"{b.components} -> {a.components}: {majorizes(a, b)}")

print("\n=== Two qubits: both measures coincide ===")
for l1 in (0.5, 0.6, 0.75, 0.9, 1.0):
    lam = canonicalize([l1, 1 - l1])
    es = source_entanglement(lam).entanglement
    ea = accessible_entanglement(lam).entanglement
    print(f"  lambda1 = {l1:4.2f}:  E_s = {es:.6f}   E_a = {ea:.6f}   2(1-l1) = {2 * (1 - l1):.6f}")

print("\n=== The extremes ===")
for d in (2, 3, 4, 5):
    sep = separable(d)
    flat = maximally_entangled(d)
    print(f"  d={d}: V_s(separable) = {source_volume(sep):.8f}"
          f"   V_s(flat) = {source_volume(flat):.2e}"
          f"   E_a(flat) = {accessible_entanglement(flat).entanglement:.6f}")

print("\n=== A rank-4 example ===")
lam = canonicalize([0.4, 0.3, 0.2, 0.1])
print(f"state {lam.components}")
print(f"  E_s = {source_entanglement(lam).entanglement:.6f}")
print(f"  E_a = {accessible_entanglement(lam).entanglement:.6f}  (= 87/125)")
print(f"  accessible polytope has {accessible_vertices(lam).n} vertices")
print("  guaranteed vertices:", [v.components for v in guaranteed_vertices(lam)])

print("\n=== Reaching flat states of lower rank ===")
for lam_list in ([0.6, 0.27, 0.13], [0.47, 0.36, 0.17]):
    lam = canonicalize(lam_list)
    ok = max_entangled_accessible(lam, 2)
    ea2 = accessible_entanglement_k(lam, 2).entanglement
    print(f"  {lam.components}: flat rank-2 reachable = {ok},  E_a^2 = {ea2:.6f}")

print("\n=== The embedded-source family ===")
lam = canonicalize([0.5, 0.3, 0.2])
for k in (3, 4, 5):
    rep = source_entanglement_k(lam, k)
    print(f"  E_s^{k} = {rep.entanglement:.8f}  (volume dim {rep.dimension})")
