"""Detection and classification of localized structures.

After a transient, a bounded pattern either dies out, freezes (still
life), breathes in place (oscillator), travels (glider), or keeps
growing.  The classifier looks for the smallest period p and ring shift d
such that every state in an observation window reappears p steps later
shifted by d; d = 0 separates stationary structures from gliders.
Patterns that fit none of those get an explicit "unresolved" verdict
rather than a forced class.

Comparing the verdicts of a memoryless run and a memory run of the same
seed gives the transformation taxonomy (e.g. glider -> oscillator).
"""

from __future__ import annotations

import csv
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import IO, Iterable, Sequence

import numpy as np

from .engine import (
    Ahistoric,
    ExplicitSeed,
    FilamentState,
    InitialCondition,
    MemoryModel,
    SingleSite,
    _iter_states,
    init_state,
    memory_label,
    min_arc_width,
)
from .rulespace import Rule, rule_from_decimal

__all__ = [
    "EXTINCT",
    "STILL_LIFE",
    "OSCILLATOR",
    "GLIDER",
    "EXPANDING",
    "UNRESOLVED",
    "CLASS_KINDS",
    "LOCALIZATION_RULES",
    "LocalizationClass",
    "LocalizationReport",
    "TransformationRecord",
    "TaxonomyResult",
    "support_width",
    "classify",
    "classify_batch",
    "transformation_pair",
    "five_cell_seeds",
    "taxonomy_sweep",
    "write_classification_csv",
]

EXTINCT = "extinct"
STILL_LIFE = "still_life"
OSCILLATOR = "oscillator"
GLIDER = "glider"
EXPANDING = "expanding"
UNRESOLVED = "unresolved"
CLASS_KINDS = (EXTINCT, STILL_LIFE, OSCILLATOR, GLIDER, EXPANDING, UNRESOLVED)

# The rules whose localization behaviour the taxonomy experiments cover:
# the stationary and travelling families plus R(14,24), whose spreading
# patterns memory trims down to gliders.
LOCALIZATION_RULES = tuple(
    rule_from_decimal(p, q)
    for p, q in (
        (6, 20), (4, 5), (4, 4), (6, 16), (6, 18),
        (7, 4), (5, 6), (6, 4), (12, 24), (14, 24),
    )
)

# Number of evenly spaced support-width checkpoints for the growth screen.
_GROWTH_CHECKPOINTS = 10


@dataclass(frozen=True)
class LocalizationClass:
    """Post-transient verdict; period/displacement only for repeating kinds."""

    kind: str
    period: int | None = None
    displacement: int | None = None

    def __post_init__(self):
        if self.kind not in CLASS_KINDS:
            raise ValueError(f"unknown class kind {self.kind!r}")
        if self.kind == STILL_LIFE and (self.period != 1 or self.displacement != 0):
            raise ValueError("a still life has period 1 and displacement 0")
        if self.kind == OSCILLATOR and (
            self.period is None or self.period < 2 or self.displacement != 0
        ):
            raise ValueError("an oscillator has period >= 2 and displacement 0")
        if self.kind == GLIDER and (
            self.period is None or self.period < 1 or not self.displacement
        ):
            raise ValueError("a glider has period >= 1 and nonzero displacement")
        if self.kind in (EXTINCT, EXPANDING, UNRESOLVED) and not (
            self.period is None and self.displacement is None
        ):
            raise ValueError(f"{self.kind} carries no period or displacement")

    @property
    def speed(self) -> float | None:
        """Cells per step, signed; positive moves toward higher indices."""
        if self.kind != GLIDER:
            return None
        return self.displacement / self.period

    def __str__(self) -> str:
        if self.kind == OSCILLATOR:
            return f"oscillator(p={self.period})"
        if self.kind == GLIDER:
            return f"glider(p={self.period},d={self.displacement:+d})"
        return self.kind


def _periodic_class(period: int, displacement: int) -> LocalizationClass:
    if displacement != 0:
        return LocalizationClass(GLIDER, period, displacement)
    if period == 1:
        return LocalizationClass(STILL_LIFE, 1, 0)
    return LocalizationClass(OSCILLATOR, period, 0)


@dataclass(frozen=True)
class LocalizationReport:
    """Verdict plus the per-chain supports at the final step."""

    cls: LocalizationClass
    support_a: int
    support_b: int

    @property
    def entrained(self) -> bool:
        """Both chains carry active cells at the end of the run."""
        return self.support_a > 0 and self.support_b > 0


def support_width(state: FilamentState, chain: str) -> int:
    """Minimal circular arc containing the active cells of one chain."""
    if chain == "a":
        return min_arc_width(state.chain_a)
    if chain == "b":
        return min_arc_width(state.chain_b)
    raise ValueError(f"chain must be 'a' or 'b', got {chain!r}")


# ---------------------------------------------------------------------------
# Batched run recording: everything the classifier needs, nothing more.


@dataclass
class _RunRecord:
    extinct: np.ndarray          # (B,) bool: both chains all-zero at some t
    window_a: np.ndarray         # (B, 2*p_max + 1, n) rows t_trans .. t_trans+2*p_max
    window_b: np.ndarray
    widths: np.ndarray           # (B, checkpoints) union support widths
    final_a: np.ndarray          # (B, n) rows at t = T-1
    final_b: np.ndarray
    n: int
    p_max: int


def _record_runs(rule, mem_model, a0, b0, T, t_trans, p_max) -> _RunRecord:
    B, n = a0.shape
    rows = 2 * p_max + 1
    checkpoints = np.unique(
        np.linspace(t_trans, T - 1, _GROWTH_CHECKPOINTS).round().astype(int)
    )
    rec = _RunRecord(
        extinct=np.zeros(B, dtype=bool),
        window_a=np.zeros((B, rows, n), dtype=np.uint8),
        window_b=np.zeros((B, rows, n), dtype=np.uint8),
        widths=np.zeros((B, checkpoints.size), dtype=np.int64),
        final_a=np.zeros((B, n), dtype=np.uint8),
        final_b=np.zeros((B, n), dtype=np.uint8),
        n=n,
        p_max=p_max,
    )
    checkpoint_of = {int(t): k for k, t in enumerate(checkpoints)}
    for t, a, b in _iter_states(rule, mem_model, a0, b0, T):
        dead = ~(a.any(axis=1) | b.any(axis=1))
        rec.extinct |= dead
        if t in checkpoint_of:
            occupied = a | b
            k = checkpoint_of[t]
            rec.widths[:, k] = [min_arc_width(row) for row in occupied]
        if t_trans <= t <= t_trans + 2 * p_max:
            rec.window_a[:, t - t_trans] = a
            rec.window_b[:, t - t_trans] = b
        if t == T - 1:
            rec.final_a[:] = a
            rec.final_b[:] = b
        if rec.extinct.all():
            break
    return rec


def _normalize_shift(d: int, n: int) -> int:
    """Map a ring shift into (-n/2, n/2]."""
    half = (n - 1) // 2
    return (d + half) % n - half


def _find_recurrence(rec: _RunRecord, k: int) -> tuple[int, int] | None:
    """Smallest (period, shift) repeating over the observation window.

    The window spans p_max + 1 reference rows; a candidate period p is
    accepted only if every reference row equals the row p steps later
    cyclically shifted by one common d on both chains.  Among valid shifts
    for the minimal period the smallest |d| wins, so stationary structures
    are never mistaken for gliders of a symmetric pattern.
    """
    Wa, Wb = rec.window_a[k], rec.window_b[k]
    n, p_max = rec.n, rec.p_max
    span = p_max + 1
    pop_a = Wa.sum(axis=1, dtype=np.int64)
    pop_b = Wb.sum(axis=1, dtype=np.int64)
    for p in range(1, p_max + 1):
        if not (pop_a[:span] == pop_a[p : p + span]).all():
            continue
        if not (pop_b[:span] == pop_b[p : p + span]).all():
            continue
        # Align a reference one-cell against the ones p steps later to get
        # the only shifts that could work.
        if pop_a[0] > 0:
            ref, tgt = Wa[0], Wa[p]
        elif pop_b[0] > 0:
            ref, tgt = Wb[0], Wb[p]
        else:
            continue  # window starts empty on both chains; not a localization
        anchor = int(np.flatnonzero(ref)[0])
        shifts = {_normalize_shift(int(q) - anchor, n) for q in np.flatnonzero(tgt)}
        for d in sorted(shifts, key=lambda s: (abs(s), s < 0)):
            if not np.array_equal(np.roll(Wa[:span], d, axis=1), Wa[p : p + span]):
                continue
            if not np.array_equal(np.roll(Wb[:span], d, axis=1), Wb[p : p + span]):
                continue
            return p, d
    return None


def _is_expanding(widths: np.ndarray, n: int) -> bool:
    """Linear-growth screen: monotone widening that ends beyond n/4."""
    return bool(
        widths[-1] > n // 4
        and widths[-1] > widths[0]
        and (np.diff(widths) >= 0).all()
    )


def _classify_record(rec: _RunRecord, k: int) -> LocalizationReport:
    if rec.extinct[k]:
        return LocalizationReport(LocalizationClass(EXTINCT), 0, 0)
    support_a = min_arc_width(rec.final_a[k])
    support_b = min_arc_width(rec.final_b[k])
    found = _find_recurrence(rec, k)
    if found is not None:
        return LocalizationReport(_periodic_class(*found), support_a, support_b)
    if _is_expanding(rec.widths[k], rec.n):
        return LocalizationReport(LocalizationClass(EXPANDING), support_a, support_b)
    return LocalizationReport(LocalizationClass(UNRESOLVED), support_a, support_b)


def _check_geometry(n, T, t_trans, p_max):
    if t_trans is None:
        t_trans = T // 2
    if n is None:
        n = 4 * T
    if p_max < 1:
        raise ValueError(f"need p_max >= 1, got {p_max}")
    if T <= t_trans + 2 * p_max:
        raise ValueError(
            f"need T > t_trans + 2*p_max, got T={T}, t_trans={t_trans}, p_max={p_max}"
        )
    return n, t_trans


def classify_batch(
    rule: Rule,
    mem_model: MemoryModel,
    ics: Sequence[InitialCondition],
    n: int | None = None,
    T: int = 400,
    t_trans: int | None = None,
    p_max: int = 60,
    chunk: int = 128,
) -> list[LocalizationReport]:
    """Classify many initial conditions of one rule in vectorised batches."""
    n, t_trans = _check_geometry(n, T, t_trans, p_max)
    reports: list[LocalizationReport] = []
    for lo in range(0, len(ics), chunk):
        group = ics[lo : lo + chunk]
        a0 = np.stack([init_state(n, ic).chain_a for ic in group])
        b0 = np.stack([init_state(n, ic).chain_b for ic in group])
        rec = _record_runs(rule, mem_model, a0, b0, T, t_trans, p_max)
        reports.extend(_classify_record(rec, k) for k in range(len(group)))
    return reports


def classify(
    rule: Rule,
    mem_model: MemoryModel,
    ic: InitialCondition,
    n: int | None = None,
    T: int = 400,
    t_trans: int | None = None,
    p_max: int = 60,
) -> LocalizationReport:
    """Classify the post-transient dynamics of one seeded run.

    The caller must pick n large enough that the pattern cannot interact
    with itself around the ring within T steps; the default n = 4*T is
    safe for any seed because fronts move at most one cell per step.
    """
    return classify_batch(rule, mem_model, [ic], n=n, T=T, t_trans=t_trans, p_max=p_max)[0]


def transformation_pair(
    rule: Rule,
    ic: InitialCondition,
    mem_model: MemoryModel,
    n: int | None = None,
    T: int = 400,
    t_trans: int | None = None,
    p_max: int = 60,
) -> tuple[LocalizationClass, LocalizationClass]:
    """(memoryless verdict, memory verdict) for the same seed."""
    kwargs = dict(n=n, T=T, t_trans=t_trans, p_max=p_max)
    before = classify(rule, Ahistoric(), ic, **kwargs)
    after = classify(rule, mem_model, ic, **kwargs)
    return before.cls, after.cls


# ---------------------------------------------------------------------------
# Taxonomy sweep over all five-cell seeds


def five_cell_seeds() -> list[ExplicitSeed]:
    """Every nonzero seed confined to a 5-unit window of the strand pair.

    1023 seeds: all assignments of the five chain-a cells and the five
    interleaved chain-b cells of a five-unit stretch of filament, except
    the empty one.
    """
    seeds = []
    for code in range(1, 1 << 10):
        seed_a = format(code >> 5, "05b")
        seed_b = format(code & 31, "05b")
        seeds.append(ExplicitSeed(seed_a, seed_b))
    return seeds


@dataclass(frozen=True)
class TransformationRecord:
    rule: Rule
    ic: ExplicitSeed
    before: LocalizationReport
    after: LocalizationReport


@dataclass
class TaxonomyResult:
    """Transition counts between memoryless and memory verdicts."""

    matrix: np.ndarray  # (6, 6) counts indexed by CLASS_KINDS order
    records: list[TransformationRecord]

    def count(self, from_kind: str, to_kind: str) -> int:
        return int(self.matrix[CLASS_KINDS.index(from_kind), CLASS_KINDS.index(to_kind)])


def _taxonomy_chunk(args):
    rule_dec, mem_model, seeds, n, T, t_trans, p_max = args
    rule = rule_from_decimal(*rule_dec)
    before = classify_batch(rule, Ahistoric(), seeds, n=n, T=T, t_trans=t_trans, p_max=p_max)
    after = classify_batch(rule, mem_model, seeds, n=n, T=T, t_trans=t_trans, p_max=p_max)
    return before, after


def taxonomy_sweep(
    rules: Iterable[Rule],
    mem_model: MemoryModel,
    seeds: Sequence[ExplicitSeed] | None = None,
    n: int | None = None,
    T: int = 400,
    t_trans: int | None = None,
    p_max: int = 60,
    jobs: int = 1,
) -> TaxonomyResult:
    """Count verdict transitions over all (rule, seed) pairs.

    Defaults to every five-cell seed.  Work is split per rule; the counts
    and record order are independent of ``jobs``.
    """
    rule_list = list(rules)
    if seeds is None:
        seeds = five_cell_seeds()
    work = [
        ((r.phi.decimal, r.psi.decimal), mem_model, seeds, n, T, t_trans, p_max)
        for r in rule_list
    ]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_taxonomy_chunk, work))
    else:
        results = [_taxonomy_chunk(w) for w in work]

    matrix = np.zeros((len(CLASS_KINDS), len(CLASS_KINDS)), dtype=np.int64)
    records = []
    for rule, (before, after) in zip(rule_list, results):
        for ic, rep_before, rep_after in zip(seeds, before, after):
            matrix[
                CLASS_KINDS.index(rep_before.cls.kind),
                CLASS_KINDS.index(rep_after.cls.kind),
            ] += 1
            records.append(TransformationRecord(rule, ic, rep_before, rep_after))
    return TaxonomyResult(matrix, records)


# ---------------------------------------------------------------------------


def _seed_strings(ic: InitialCondition) -> tuple[str, str]:
    if isinstance(ic, ExplicitSeed):
        return ic.seed_a, ic.seed_b
    if isinstance(ic, SingleSite):
        where = "centre" if ic.position is None else str(ic.position)
        return f"single:{ic.chain}@{where}", ""
    return f"random:{ic.rng_seed}", ""


def write_classification_csv(
    rows: Iterable[tuple[Rule, MemoryModel, InitialCondition, LocalizationReport]],
    out: IO[str],
):
    """CSV rows phi,psi,memory,param,seed_a,seed_b,class,period,displacement,
    support_a,support_b,entrained."""
    writer = csv.writer(out)
    writer.writerow(
        [
            "phi", "psi", "memory", "param", "seed_a", "seed_b",
            "class", "period", "displacement", "support_a", "support_b", "entrained",
        ]
    )
    for rule, model, ic, report in rows:
        name, param = memory_label(model)
        seed_a, seed_b = _seed_strings(ic)
        cls = report.cls
        writer.writerow(
            [
                rule.phi.decimal,
                rule.psi.decimal,
                name,
                param,
                seed_a,
                seed_b,
                cls.kind,
                "" if cls.period is None else cls.period,
                "" if cls.displacement is None else cls.displacement,
                report.support_a,
                report.support_b,
                "true" if report.entrained else "false",
            ]
        )
