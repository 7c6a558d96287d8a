"""
A first filament run
====================

Encode a rule, evolve a two-chain ring from a single excited cell, and
save the space-time diagram as a plain PPM image.
"""

from pathlib import Path

from actinca import Ahistoric, SingleSite, rule_from_decimal, run
from actinca.cli import RenderSpec, render_spacetime

OUT = Path(__file__).parent / "out"
OUT.mkdir(exist_ok=True)

# Rules come as a pair of 5-bit lookup tables, one used while a cell is
# resting and one while it is excited, indexed by how many of the four
# neighbours (two on the same chain, two across) are excited.  R(7,4)
# reads: rest table 00111, excitation table 00100.
rule = rule_from_decimal(7, 4)
print("rule:", rule)
print("resting table :", rule.phi.bits)
print("excited table :", rule.psi.bits)

# One excited cell in the middle of chain a, no memory.
pattern_a, pattern_b = run(rule, Ahistoric(), SingleSite("a"), n=120, T=160)
print("chain a pattern:", pattern_a.shape, "active cells at the end:", pattern_a[-1].sum())

# The renderer stacks both chains (grey separator row) and emits binary PPM.
ppm = render_spacetime((pattern_a, pattern_b), RenderSpec(layout="stacked_both"))
path = OUT / "single_site_r7_4.ppm"
path.write_bytes(ppm)
print("wrote", path)

# The same thing through the command line:
#   actinca run --phi 7 --psi 4 --single-site --n 120 --steps 160 \
#       --out demos/out/single_site_r7_4.ppm
