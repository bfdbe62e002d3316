"""Every closed form in the package against an independent sampling estimate.

The oracles know nothing about the formulas: they draw sorted probability
vectors uniformly (or points in a box) and count majorization hits, then
scale by the known region volume.  Agreement within a few error bars on
every quantity is the strongest end-to-end check the package has.
"""

import math

import numpy as np

from entvol import (
    McConfig,
    accessible_volume,
    canonicalize,
    mc_accessible_volume,
    mc_region_volume,
    mc_source_volume,
    source_volume,
)
from entvol.fourqubit import caseiii_accessible_mc

rng = np.random.default_rng(42)
cfg = McConfig(samples=500_000, seed=33)

print("=== Source and accessible volumes, random states ===")
print(f"{'state':34s} {'quantity':10s} {'sampled':>12s} {'exact':>12s} {'pull':>6s}")
for d in (2, 3, 4):
    for _ in range(3):
        lam = canonicalize(rng.dirichlet(np.ones(d)))
        label = "(" + ", ".join(f"{x:.3f}" for x in lam.components) + ")"
        src = mc_source_volume(lam, cfg)
        exact = source_volume(lam)
        pull = abs(src.estimate - exact) / src.stderr if src.stderr else 0.0
        print(f"{label:34s} {'source':10s} {src.estimate:12.6f} {exact:12.6f} {pull:6.2f}")
        acc = mc_accessible_volume(lam, cfg)
        exact = accessible_volume(lam)[0]
        pull = abs(acc.estimate - exact) / acc.stderr if acc.stderr else 0.0
        print(f"{label:34s} {'accessible':10s} {acc.estimate:12.6f} {exact:12.6f} {pull:6.2f}")

print("\n=== Generic box regions ===")
ball = mc_region_volume(lambda p: (p ** 2).sum(axis=1) < 0.25,
                        np.full(3, -0.5), np.full(3, 0.5), cfg)
print(f"ball radius 1/2 in the unit cube: {ball.estimate:.6f}  (pi/6 = {math.pi / 6:.6f})")

print("\n=== The four-qubit numeric region shrinks toward the half ball ===")
for scale in (0.2, 0.05, 0.001):
    gam = np.full(3, scale)
    res = caseiii_accessible_mc(gam, McConfig(samples=1_000_000, seed=5))
    print(f"  gamma = {scale:5.3f} * (1,1,1): volume = {res.estimate:.6f} "
          f"+- {res.stderr:.6f}   (pi/12 = {math.pi / 12:.6f})")

print("\n=== Reproducibility ===")
lam = canonicalize([0.45, 0.35, 0.2])
a = mc_source_volume(lam, cfg)
b = mc_source_volume(lam, cfg)
print(f"same seed, same estimate: {a.estimate == b.estimate}")
