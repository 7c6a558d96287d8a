"""
Block entropy across the rule space
===================================

Every space-time pattern is summarised by its census of 3x3 windows
(512 possible blocks): Shannon entropy H and Simpson diversity D.
Sweeping all 1024 rules and comparing memory models shows memory
generally pulling H down.

The full sweep takes a few minutes per memory model; this demo sweeps a
64-rule slice.  Swap ``rules=...`` for ``rules=None`` to run everything,
or use the CLI:

    actinca sweep --memory tau:3 --n 300 --steps 1000 --rng-seed 0 \
        --census a --out sweep_tau3.csv
"""

import io
from pathlib import Path

from actinca import (
    Ahistoric,
    TrailingMajority,
    enumerate_rules,
    sweep,
    write_sweep_csv,
)

OUT = Path(__file__).parent / "out"
OUT.mkdir(exist_ok=True)

rules = [r for r in enumerate_rules() if r.phi.decimal < 8 and r.psi.decimal < 8]

for name, mem in (("ahistoric", Ahistoric()), ("tau3", TrailingMajority(3))):
    rows = sweep(mem, n=300, T=1000, rng_seed=0, census_on="a", rules=rules)
    with open(OUT / f"sweep_{name}.csv", "w") as fh:
        write_sweep_csv(rows, mem, fh)

    ranked = sorted(rows, key=lambda row: row.entropy)
    print(f"--- {name} ({len(rows)} rules) ---")
    print("lowest H :", [(f"R({r.phi},{r.psi})", round(r.entropy, 3)) for r in ranked[:3]])
    print("highest H:", [(f"R({r.phi},{r.psi})", round(r.entropy, 3)) for r in ranked[-3:]])
