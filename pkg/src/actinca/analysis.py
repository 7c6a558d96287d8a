"""Global statistics over space-time patterns.

The census scans every overlapping 3x3 window of a T x n pattern, wrapping
columns (the chains are rings) but not rows, so there are (T-2)*n windows
with 512 possible block kinds.  Shannon entropy and Simpson diversity of
the block distribution summarise how structured a pattern is; sweeping
them over the whole 1024-rule space gives the entropy/diversity portrait
of the automaton family.  Damage experiments measure how far a single
flipped site propagates.
"""

from __future__ import annotations

import csv
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import IO, Iterable, Sequence

import numpy as np

from .engine import (
    MemoryModel,
    RandomHalf,
    _iter_states,
    init_state,
    memory_label,
    min_arc_width,
    run,
)
from .rulespace import Rule, enumerate_rules, rule_from_decimal, rule_index

__all__ = [
    "BlockCensus",
    "DamageReport",
    "ExcitabilityProfile",
    "SweepRow",
    "TRAVELLING_RULES",
    "STATIONARY_RULES",
    "block_census",
    "shannon_entropy",
    "simpson_diversity",
    "damage_experiment",
    "sweep",
    "excitability_profile",
    "write_sweep_csv",
    "write_damage_csv",
]

# Rule sets named for the localization families they support: the first
# group carries travelling localizations, the second stationary ones.  In
# every member a resting cell excites on a neighbour sum of 2.
TRAVELLING_RULES = tuple(
    rule_from_decimal(p, q) for p, q in ((7, 4), (5, 6), (6, 4), (12, 24))
)
STATIONARY_RULES = tuple(
    rule_from_decimal(p, q) for p, q in ((6, 20), (4, 5), (4, 4), (6, 16), (6, 18))
)


@dataclass
class BlockCensus:
    """Occurrence counts of the 512 possible 3x3 blocks.

    ``counts[key]`` is the number of windows whose bits, read row-major
    with the top-left cell most significant, encode ``key``.
    """

    counts: np.ndarray

    def __post_init__(self):
        self.counts = np.asarray(self.counts, dtype=np.int64)
        if self.counts.shape != (512,):
            raise ValueError(f"census needs 512 block counts, got shape {self.counts.shape}")
        if (self.counts < 0).any():
            raise ValueError("block counts cannot be negative")

    @property
    def total(self) -> int:
        """Number of windows scanned (eta)."""
        return int(self.counts.sum())


def _as_pattern(pattern) -> np.ndarray:
    arr = np.asarray(pattern)
    if arr.ndim != 2:
        raise ValueError(f"pattern must be a T x n matrix, got shape {arr.shape}")
    if arr.size and arr.max() > 1:
        raise ValueError("pattern cells must be 0 or 1")
    return arr.astype(np.uint16, copy=False)


def block_census(pattern) -> BlockCensus:
    """Count all 3x3 windows: columns wrap, rows do not."""
    arr = _as_pattern(pattern)
    T, n = arr.shape
    if T < 3:
        raise ValueError(f"census needs at least 3 rows, got {T}")
    wrapped = np.concatenate([arr, arr[:, :2]], axis=1)
    keys = np.zeros((T - 2, n), dtype=np.uint16)
    for r in range(3):
        for c in range(3):
            keys = (keys << 1) | wrapped[r : r + T - 2, c : c + n]
    return BlockCensus(np.bincount(keys.ravel(), minlength=512))


def shannon_entropy(census: BlockCensus) -> float:
    """Natural-log entropy of the block distribution, in [0, ln 512]."""
    eta = census.total
    if eta == 0:
        raise ValueError("cannot take the entropy of an empty census")
    p = census.counts[census.counts > 0] / eta
    return float(-(p * np.log(p)).sum())


def simpson_diversity(census: BlockCensus) -> float:
    """1 - sum of squared block frequencies, in [0, 1 - 1/512]."""
    eta = census.total
    if eta == 0:
        raise ValueError("cannot take the diversity of an empty census")
    p = census.counts / eta
    return float(1.0 - (p * p).sum())


# ---------------------------------------------------------------------------
# Damage spreading


@dataclass
class DamageReport:
    """Per-step divergence between a run and its single-site perturbation.

    ``cone_width_per_step`` measures the smallest circular arc containing
    every column where either chain differs.
    """

    hamming_per_step: np.ndarray
    cone_width_per_step: np.ndarray
    max_cone_width: int
    final_hamming: int
    base_patterns: tuple[np.ndarray, np.ndarray]
    perturbed_patterns: tuple[np.ndarray, np.ndarray]


def _run_from_arrays(rule, mem_model, a0, b0, T):
    pattern_a = np.empty((T, a0.shape[-1]), dtype=np.uint8)
    pattern_b = np.empty_like(pattern_a)
    for t, a, b in _iter_states(rule, mem_model, a0, b0, T):
        pattern_a[t] = a
        pattern_b[t] = b
    return pattern_a, pattern_b


def damage_experiment(
    rule: Rule,
    mem_model: MemoryModel,
    n: int,
    T: int,
    rng_seed: int,
    flip: bool = True,
) -> DamageReport:
    """Run twice from the same random start, the second with the centre
    cell of chain a reversed, and track how the difference spreads.

    ``flip=False`` reruns the identical start instead (sanity mode: every
    statistic must come out zero).
    """
    base = init_state(n, RandomHalf(rng_seed))
    a0 = base.chain_a.copy()
    if flip:
        a0[n // 2] ^= 1
    base_pat = _run_from_arrays(rule, mem_model, base.chain_a, base.chain_b, T)
    pert_pat = _run_from_arrays(rule, mem_model, a0, base.chain_b.copy(), T)
    diff_a = base_pat[0] ^ pert_pat[0]
    diff_b = base_pat[1] ^ pert_pat[1]
    hamming = diff_a.sum(axis=1, dtype=np.int64) + diff_b.sum(axis=1, dtype=np.int64)
    occupied = diff_a | diff_b
    widths = np.fromiter(
        (min_arc_width(row) for row in occupied), dtype=np.int64, count=T
    )
    return DamageReport(
        hamming_per_step=hamming,
        cone_width_per_step=widths,
        max_cone_width=int(widths.max()),
        final_hamming=int(hamming[-1]),
        base_patterns=base_pat,
        perturbed_patterns=pert_pat,
    )


# ---------------------------------------------------------------------------
# Rule-space sweep


@dataclass(frozen=True)
class SweepRow:
    phi: int
    psi: int
    entropy: float
    diversity: float


def _census_pattern(pattern_a, pattern_b, census_on: str) -> np.ndarray:
    if census_on == "a":
        return pattern_a
    if census_on == "b":
        return pattern_b
    if census_on == "stacked":
        return np.concatenate([pattern_a, pattern_b], axis=0)
    raise ValueError(f"census_on must be 'a', 'b' or 'stacked', got {census_on!r}")


def _sweep_one(args) -> SweepRow:
    phi, psi, mem_model, n, T, rng_seed, census_on = args
    rule = rule_from_decimal(phi, psi)
    # Per-rule generator: independent of scheduling order across workers.
    seed = rng_seed ^ rule_index(rule)
    pattern_a, pattern_b = run(rule, mem_model, RandomHalf(seed), n, T)
    census = block_census(_census_pattern(pattern_a, pattern_b, census_on))
    return SweepRow(phi, psi, shannon_entropy(census), simpson_diversity(census))


def sweep(
    mem_model: MemoryModel,
    n: int = 300,
    T: int = 1000,
    rng_seed: int = 0,
    census_on: str = "a",
    rules: Iterable[Rule] | None = None,
    jobs: int = 1,
) -> list[SweepRow]:
    """Entropy and diversity of one random-start run per rule.

    Covers all 1024 rules in lexicographic order unless ``rules`` narrows
    the set.  Each rule gets its own generator seed (rng_seed XOR rule
    index), so results do not depend on ``jobs``.
    """
    rule_list = list(enumerate_rules()) if rules is None else list(rules)
    work = [
        (r.phi.decimal, r.psi.decimal, mem_model, n, T, rng_seed, census_on)
        for r in rule_list
    ]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_sweep_one, work, chunksize=32))
    return [_sweep_one(w) for w in work]


def write_sweep_csv(rows: Sequence[SweepRow], mem_model: MemoryModel, out: IO[str]):
    """CSV with header phi,psi,memory,param,H,D (H and D to 6 decimals)."""
    name, param = memory_label(mem_model)
    writer = csv.writer(out)
    writer.writerow(["phi", "psi", "memory", "param", "H", "D"])
    for row in rows:
        writer.writerow(
            [row.phi, row.psi, name, param, f"{row.entropy:.6f}", f"{row.diversity:.6f}"]
        )


def write_damage_csv(report: DamageReport, out: IO[str]):
    """CSV with header t,hamming,cone_width; one row per time step."""
    writer = csv.writer(out)
    writer.writerow(["t", "hamming", "cone_width"])
    for t, (h, w) in enumerate(zip(report.hamming_per_step, report.cone_width_per_step)):
        writer.writerow([t, int(h), int(w)])


# ---------------------------------------------------------------------------
# Excitability profiles


@dataclass
class ExcitabilityProfile:
    """Fraction of rules in a set that excite for each neighbour sum 0..4.

    ``p_rest[k]`` is the share of rules whose resting cells excite on sum
    k; ``p_excited[k]`` the share whose excited cells stay excited.
    """

    p_rest: np.ndarray
    p_excited: np.ndarray


def excitability_profile(rules: Iterable[Rule]) -> ExcitabilityProfile:
    rule_list = list(rules)
    if not rule_list:
        raise ValueError("excitability profile needs at least one rule")
    phi_bits = np.array([r.phi.bits for r in rule_list], dtype=np.float64)
    psi_bits = np.array([r.psi.bits for r in rule_list], dtype=np.float64)
    return ExcitabilityProfile(phi_bits.mean(axis=0), psi_bits.mean(axis=0))
