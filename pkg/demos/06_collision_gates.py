"""
Collision-based logic
=====================

Travelling localizations carry bits; what happens when they meet is a
logic gate.  Two R(7,4) gliders annihilate head-on (an AND-NOT style
gate), and a glider parked against an oscillator rewrites travelling
data into stationary data.

With geometric memory, R(14,24) turns single-cell seeds into glider
pairs whose fate flips with the seed separation: 48 cells apart they
reflect and survive, 51 apart they wipe each other out.
"""

from pathlib import Path

import numpy as np

from actinca import Ahistoric, GeometricMemory, rule_from_decimal, run
from actinca.cli import RenderSpec, collision_seed, parse_seed, render_spacetime

OUT = Path(__file__).parent / "out"
OUT.mkdir(exist_ok=True)


def first_zero(occupied):
    quiet = np.flatnonzero(occupied.sum(axis=1) == 0)
    return int(quiet[0]) if quiet.size else None


# Head-on annihilation: a right-mover and a left-mover, nothing left.
rule = rule_from_decimal(7, 4)
seed = parse_seed("[0011100000000000001,0100000000000001110]")
pattern_a, pattern_b = run(rule, Ahistoric(), seed, n=60, T=120)
print("annihilation gate: all quiet from t =", first_zero(pattern_a | pattern_b))
(OUT / "gate_annihilate.ppm").write_bytes(
    render_spacetime((pattern_a, pattern_b), RenderSpec(layout="stacked_both"))
)

# Glider stopped by an oscillator: activity persists but stops moving.
seed = parse_seed("[11100000000000001,00000010000000111]")
pattern_a, pattern_b = run(rule, Ahistoric(), seed, n=60, T=120)
tail = (pattern_a | pattern_b)[-20:]
print(
    "stop gate: activity still alive at t=119 in columns",
    np.flatnonzero(tail.any(axis=0)).tolist(),
)
(OUT / "gate_stop.ppm").write_bytes(
    render_spacetime((pattern_a, pattern_b), RenderSpec(layout="stacked_both"))
)

# Separation-controlled fate of memory-trimmed glider pairs.
rule = rule_from_decimal(14, 24)
for dist in (48, 51):
    pattern_a, pattern_b = run(
        rule, GeometricMemory(0.55), collision_seed(dist), n=700, T=650
    )
    act = (pattern_a | pattern_b).sum(axis=1)
    fate = "reflected survivors" if act[400] > 20 else "total annihilation"
    print(f"seeds {dist} apart: activity {act[400]:3d} columns at t=400 -> {fate}")
    (OUT / f"dichotomy_{dist}.ppm").write_bytes(
        render_spacetime((pattern_a, pattern_b), RenderSpec(layout="chain_a_only"))
    )

# CLI one-liner for the same experiment:
#   actinca collide --phi 14 --psi 24 --memory alpha:0.55 --distance 48 \
#       --n 700 --steps 650 --out collide48.csv --image collide48.ppm
