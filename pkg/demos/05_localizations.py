"""
Still lifes, oscillators, gliders
=================================

Small seeds either die out, freeze, breathe in place, travel, or blow
up.  The classifier runs a seed on a ring big enough that nothing wraps,
waits out the transient, then looks for the smallest (period, shift)
after which the whole tail repeats.

The second half sweeps every five-cell seed of one rule and counts how a
tau=3 majority vote transforms each verdict.
"""

from actinca import (
    CLASS_KINDS,
    Ahistoric,
    ExplicitSeed,
    TrailingMajority,
    classify,
    five_cell_seeds,
    rule_from_decimal,
    taxonomy_sweep,
)

showcase = [
    ("dies out", 0, 0, ExplicitSeed("11111", "00000")),
    ("freezes", 0, 31, ExplicitSeed("10100", "01000")),
    ("breathes", 31, 0, ExplicitSeed("00100", "00000")),
    ("travels", 7, 4, ExplicitSeed("00001", "01110")),
    ("blows up", 14, 24, ExplicitSeed("00110", "01100")),
]
for blurb, phi, psi, seed in showcase:
    report = classify(rule_from_decimal(phi, psi), Ahistoric(), seed)
    print(f"R({phi:2d},{psi:2d}) [{seed.seed_a},{seed.seed_b}] {blurb:9s} -> {report.cls}")

# How does a trailing majority vote transform the localizations of one
# rule?  Rows are the memoryless verdicts, columns the tau=3 verdicts.
rule = rule_from_decimal(7, 4)
result = taxonomy_sweep([rule], TrailingMajority(3))
print(f"\nR(7,4), {len(five_cell_seeds())} five-cell seeds, tau=3:")
width = max(len(k) for k in CLASS_KINDS)
header = " ".join(f"{k[:7]:>7s}" for k in CLASS_KINDS)
print(f"{'':{width}s}  {header}")
for i, kind in enumerate(CLASS_KINDS):
    row = " ".join(f"{result.matrix[i, j]:7d}" for j in range(len(CLASS_KINDS)))
    print(f"{kind:{width}s}  {row}")

# Memory slows some of this rule's travellers down instead of stopping
# them: seeds whose pattern is stationary without memory but crawls one
# cell every four steps with it.
crawlers = [
    rec
    for rec in result.records
    if rec.before.cls.kind == "oscillator" and rec.after.cls.kind == "glider"
]
print(f"\noscillators that memory sets in motion: {len(crawlers)}")
for rec in crawlers[:3]:
    print(f"  [{rec.ic.seed_a},{rec.ic.seed_b}] -> {rec.after.cls}")
