"""
Cell memory reshapes the dynamics
=================================

The same rule and the same seed, run under the four memory models.  A
cell's *trait* state -- what the rule actually sees -- can be its raw
state (ahistoric), the majority of its whole history, the majority of a
trailing window, or a geometrically discounted charge.
"""

from pathlib import Path

import numpy as np

from actinca import (
    Ahistoric,
    GeometricMemory,
    MajorityMemory,
    RandomHalf,
    TrailingMajority,
    rule_from_decimal,
    run,
)
from actinca.cli import RenderSpec, render_spacetime

OUT = Path(__file__).parent / "out"
OUT.mkdir(exist_ok=True)

rule = rule_from_decimal(14, 9)
models = [
    ("ahistoric", Ahistoric()),
    ("majority_full", MajorityMemory()),
    ("majority_tau3", TrailingMajority(3)),
    ("alpha_0.6", GeometricMemory(0.6)),
]

for name, mem in models:
    pattern_a, pattern_b = run(rule, mem, RandomHalf(7), n=300, T=300)
    density = pattern_a.mean()
    print(f"{name:14s} chain-a density {density:.3f}")
    ppm = render_spacetime((pattern_a, pattern_b), RenderSpec(layout="chain_a_only"))
    (OUT / f"memory_{name}.ppm").write_bytes(ppm)

# Degenerate parameters fall back to the memoryless automaton exactly:
# a discount of 0.5 or a 2-step window can never overturn the current
# state, so the trait always equals the raw state.
state = RandomHalf(7)
base = run(rule, Ahistoric(), state, n=100, T=100)
for mem in (GeometricMemory(0.5), TrailingMajority(2)):
    same = all(
        np.array_equal(x, y) for x, y in zip(base, run(rule, mem, state, n=100, T=100))
    )
    print(f"{mem} reduces to ahistoric: {same}")
