"""Two-chain lattice state, memory models, and the synchronous update loop.

The automaton is a pair of binary rings of equal length n.  Every cell
reads four neighbours: its two same-chain neighbours plus two staggered
cells on the other chain (chain a reads the opposite cells at offsets
{i-1, i}, chain b at {i, i+1}).  The transition rule is semi-totalistic:
the new state is ``phi(sum)`` for a resting cell and ``psi(sum)`` for an
excited one.

With memory enabled, cells feed *trait* states into the rule instead of
raw states.  The trait summarises a cell's whole history: the mode of all
past states, the mode of a trailing window of the last tau states, or a
geometrically discounted charge ``w = state + alpha * w`` compared against
half its normaliser.  Ties always resolve to the cell's current raw state,
so a trailing window of tau <= 2 and a memory factor alpha <= 0.5 both
collapse to the memoryless automaton.

Raw states, not traits, are what a run records: the traits only steer the
transition.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Union

import numpy as np

from .rulespace import Rule

__all__ = [
    "FilamentState",
    "Ahistoric",
    "MajorityMemory",
    "TrailingMajority",
    "GeometricMemory",
    "MemoryModel",
    "memory_label",
    "RandomHalf",
    "SingleSite",
    "ExplicitSeed",
    "InitialCondition",
    "TRAIT_TIE_EPS",
    "init_state",
    "init_memory",
    "update_memory",
    "trait_states",
    "step",
    "run",
    "min_arc_width",
]

# Tolerance for the "charge equals half the normaliser" tie branch of
# geometric memory.  Exact equality only arises at alpha = 1 or degenerate
# histories; accumulated float error stays far below this at practical run
# lengths.
TRAIT_TIE_EPS = 1e-9


def _as_chain(values, n: int | None = None) -> np.ndarray:
    arr = np.asarray(values, dtype=np.uint8)
    if arr.ndim != 1:
        raise ValueError(f"chain must be one-dimensional, got shape {arr.shape}")
    if n is not None and arr.shape[0] != n:
        raise ValueError(f"chain length {arr.shape[0]} != {n}")
    if arr.size and arr.max() > 1:
        raise ValueError("chain cells must be 0 or 1")
    return arr


@dataclass
class FilamentState:
    """States of both rings at one instant: ``chain_a`` and ``chain_b``."""

    chain_a: np.ndarray
    chain_b: np.ndarray

    def __post_init__(self):
        self.chain_a = _as_chain(self.chain_a)
        self.chain_b = _as_chain(self.chain_b, self.chain_a.shape[0])
        if self.n < 3:
            raise ValueError(f"need at least 3 cells per chain, got {self.n}")

    @property
    def n(self) -> int:
        return self.chain_a.shape[0]


# ---------------------------------------------------------------------------
# Memory models (immutable descriptions of how traits are formed)


@dataclass(frozen=True)
class Ahistoric:
    """No memory: the trait is the current raw state."""


@dataclass(frozen=True)
class MajorityMemory:
    """Trait is the mode of all past states; ties go to the current state."""


@dataclass(frozen=True)
class TrailingMajority:
    """Trait is the mode of the last ``tau`` states; ties go to the current state."""

    tau: int

    def __post_init__(self):
        if not isinstance(self.tau, int) or self.tau < 1:
            raise ValueError(f"tau must be an integer >= 1, got {self.tau}")


@dataclass(frozen=True)
class GeometricMemory:
    """Geometrically discounted charge ``w = state + alpha * w``.

    The trait compares 2w against the normaliser (the charge of an
    all-ones history); alpha in [0, 1], with alpha = 1 weighting all past
    states equally and alpha <= 0.5 reducing to the ahistoric automaton.
    """

    alpha: float

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must be in [0, 1], got {self.alpha}")


MemoryModel = Union[Ahistoric, MajorityMemory, TrailingMajority, GeometricMemory]


def memory_label(model: MemoryModel) -> tuple[str, str]:
    """(name, parameter) strings used in CSV output and CLI flags."""
    if isinstance(model, Ahistoric):
        return "ahistoric", ""
    if isinstance(model, MajorityMemory):
        return "majority", ""
    if isinstance(model, TrailingMajority):
        return "tau", str(model.tau)
    if isinstance(model, GeometricMemory):
        return "alpha", repr(model.alpha)
    raise TypeError(f"not a memory model: {model!r}")


# ---------------------------------------------------------------------------
# Initial conditions


@dataclass(frozen=True)
class RandomHalf:
    """Both chains i.i.d. Bernoulli(1/2) from a seeded generator."""

    rng_seed: int


@dataclass(frozen=True)
class SingleSite:
    """Exactly one excited cell; ``position=None`` means the centre."""

    chain: str = "a"
    position: int | None = None

    def __post_init__(self):
        if self.chain not in ("a", "b"):
            raise ValueError(f"chain must be 'a' or 'b', got {self.chain!r}")


@dataclass(frozen=True)
class ExplicitSeed:
    """Two equal-length binary strings, placed centred on the rings.

    The strings use the strand-pair notation of seed labels: character k
    of ``seed_b`` names the opposite-chain cell lying *between* chain-a
    cells k and k+1.  In lattice coordinates (where cell i of chain b sits
    between chain-a cells i-1 and i) that is column k+1, so the chain-b
    string lands one column to the right of the chain-a string.
    """

    seed_a: str
    seed_b: str

    def __post_init__(self):
        for name, s in (("seed_a", self.seed_a), ("seed_b", self.seed_b)):
            bad = next((k for k, c in enumerate(s) if c not in "01"), None)
            if bad is not None:
                raise ValueError(f"{name} has illegal character {s[bad]!r} at position {bad}")
        if len(self.seed_a) != len(self.seed_b):
            raise ValueError(
                f"seed strings differ in length: {len(self.seed_a)} vs {len(self.seed_b)}"
            )


InitialCondition = Union[RandomHalf, SingleSite, ExplicitSeed, FilamentState]


def init_state(n: int, ic: InitialCondition) -> FilamentState:
    """Materialise an initial condition on rings of length ``n``."""
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    if isinstance(ic, FilamentState):
        if ic.n != n:
            raise ValueError(f"state has {ic.n} cells per chain, expected {n}")
        return FilamentState(ic.chain_a.copy(), ic.chain_b.copy())
    if isinstance(ic, RandomHalf):
        rng = np.random.default_rng(ic.rng_seed)
        a = rng.integers(0, 2, size=n, dtype=np.uint8)
        b = rng.integers(0, 2, size=n, dtype=np.uint8)
        return FilamentState(a, b)
    if isinstance(ic, SingleSite):
        a = np.zeros(n, dtype=np.uint8)
        b = np.zeros(n, dtype=np.uint8)
        pos = n // 2 if ic.position is None else ic.position
        if not 0 <= pos < n:
            raise ValueError(f"site position {pos} outside [0, {n})")
        (a if ic.chain == "a" else b)[pos] = 1
        return FilamentState(a, b)
    if isinstance(ic, ExplicitSeed):
        width = len(ic.seed_a)
        if width > n:
            raise ValueError(f"seed of width {width} does not fit in n={n}")
        a = np.zeros(n, dtype=np.uint8)
        b = np.zeros(n, dtype=np.uint8)
        start = (n - width) // 2
        for k, c in enumerate(ic.seed_a):
            a[(start + k) % n] = int(c)
        for k, c in enumerate(ic.seed_b):
            # One column right of chain a: the strand stagger (see
            # ExplicitSeed).
            b[(start + k + 1) % n] = int(c)
        return FilamentState(a, b)
    raise TypeError(f"not an initial condition: {ic!r}")


# ---------------------------------------------------------------------------
# Per-cell memory accumulators

# All accumulators accept state arrays of shape (..., n) so that a stack of
# independent runs can be advanced as one batch; the public API uses plain
# (n,) chains.


def _tie_trait(twice_charge, level, current, eps=0.0) -> np.ndarray:
    """1 where 2*charge > level, 0 where below, current state on a tie."""
    hi = twice_charge > level + eps
    lo = twice_charge < level - eps
    s = hi.astype(np.uint8)
    tie = ~(hi | lo)
    if tie.any():
        s[tie] = current[tie]
    return s


class AhistoricMemory:
    """Stores only the current raw states."""

    def __init__(self, a, b):
        self.current = (a, b)

    def record(self, a, b):
        self.current = (a, b)

    def traits(self):
        return self.current


class CountMemory:
    """Unlimited majority: per-cell counts of past ones versus steps seen."""

    def __init__(self, a, b):
        self.ones_a = a.astype(np.int64)
        self.ones_b = b.astype(np.int64)
        self.steps = 1
        self.current = (a, b)

    def record(self, a, b):
        self.ones_a += a
        self.ones_b += b
        self.steps += 1
        self.current = (a, b)

    def traits(self):
        ca, cb = self.current
        return (
            _tie_trait(2 * self.ones_a, self.steps, ca),
            _tie_trait(2 * self.ones_b, self.steps, cb),
        )


class WindowMemory:
    """Trailing majority over the last ``tau`` states (ring buffer per cell).

    Before tau states exist the mode is taken over everything recorded so
    far, which keeps the first two traits equal to the raw states.
    """

    def __init__(self, tau, a, b):
        self.tau = tau
        self.window_a = np.zeros((tau,) + a.shape, dtype=np.uint8)
        self.window_b = np.zeros((tau,) + b.shape, dtype=np.uint8)
        self.window_a[0] = a
        self.window_b[0] = b
        self.sum_a = a.astype(np.int32)
        self.sum_b = b.astype(np.int32)
        self.steps = 1
        self.current = (a, b)

    def record(self, a, b):
        pos = self.steps % self.tau
        if self.steps >= self.tau:  # evict the oldest entry
            self.sum_a -= self.window_a[pos]
            self.sum_b -= self.window_b[pos]
        self.window_a[pos] = a
        self.window_b[pos] = b
        self.sum_a += a
        self.sum_b += b
        self.steps += 1
        self.current = (a, b)

    def traits(self):
        width = min(self.steps, self.tau)
        ca, cb = self.current
        return (
            _tie_trait(2 * self.sum_a, width, ca),
            _tie_trait(2 * self.sum_b, width, cb),
        )


class ChargeMemory:
    """Geometric discounting: one real charge per cell, shared normaliser."""

    def __init__(self, alpha, a, b):
        self.alpha = alpha
        self.charge_a = a.astype(np.float64)
        self.charge_b = b.astype(np.float64)
        self.norm = 1.0
        self.current = (a, b)

    def record(self, a, b):
        self.charge_a = a + self.alpha * self.charge_a
        self.charge_b = b + self.alpha * self.charge_b
        self.norm = 1.0 + self.alpha * self.norm
        self.current = (a, b)

    def traits(self):
        ca, cb = self.current
        return (
            _tie_trait(2 * self.charge_a, self.norm, ca, TRAIT_TIE_EPS),
            _tie_trait(2 * self.charge_b, self.norm, cb, TRAIT_TIE_EPS),
        )


Memory = Union[AhistoricMemory, CountMemory, WindowMemory, ChargeMemory]


def _make_memory(model: MemoryModel, a: np.ndarray, b: np.ndarray) -> Memory:
    if isinstance(model, Ahistoric):
        return AhistoricMemory(a, b)
    if isinstance(model, MajorityMemory):
        return CountMemory(a, b)
    if isinstance(model, TrailingMajority):
        return WindowMemory(model.tau, a, b)
    if isinstance(model, GeometricMemory):
        return ChargeMemory(model.alpha, a, b)
    raise TypeError(f"not a memory model: {model!r}")


def init_memory(model: MemoryModel, state: FilamentState) -> Memory:
    """Start a memory accumulator with ``state`` as the first recorded entry."""
    return _make_memory(model, state.chain_a, state.chain_b)


def update_memory(mem: Memory, new_state: FilamentState) -> Memory:
    """Fold the new raw states into the accumulator (mutates and returns it)."""
    mem.record(new_state.chain_a, new_state.chain_b)
    return mem


def trait_states(mem: Memory) -> tuple[np.ndarray, np.ndarray]:
    """Current trait chains (s_a, s_b) summarising each cell's history."""
    return mem.traits()


# ---------------------------------------------------------------------------
# Update rule


def _advance(s_a: np.ndarray, s_b: np.ndarray, table: np.ndarray):
    """One synchronous update of both rings from trait chains.

    Chain a cell i sums traits at a[i-1], a[i+1], b[i], b[i-1]; chain b
    cell i sums b[i-1], b[i+1], a[i], a[i+1] (note the staggered coupling).
    Indices wrap.  The cell's own trait picks phi (0) or psi (1).
    """
    a_left = np.roll(s_a, 1, axis=-1)
    a_right = np.roll(s_a, -1, axis=-1)
    b_left = np.roll(s_b, 1, axis=-1)
    b_right = np.roll(s_b, -1, axis=-1)
    total_a = a_left + a_right + s_b + b_left
    total_b = b_left + b_right + s_a + a_right
    return table[s_a, total_a], table[s_b, total_b]


def step(
    state: FilamentState,
    traits: tuple[np.ndarray, np.ndarray],
    rule: Rule,
) -> FilamentState:
    """Advance one step, branching on trait chains ``(s_a, s_b)``."""
    s_a = _as_chain(traits[0], state.n)
    s_b = _as_chain(traits[1], state.n)
    a, b = _advance(s_a, s_b, rule.table())
    return FilamentState(a, b)


def _iter_states(
    rule: Rule, model: MemoryModel, a0: np.ndarray, b0: np.ndarray, T: int
) -> Iterator[tuple[int, np.ndarray, np.ndarray]]:
    """Yield (t, a, b) raw states; row 0 is the initial configuration.

    ``a0``/``b0`` may be (n,) chains or an (runs, n) batch of independent
    runs advanced in lockstep.
    """
    table = rule.table()
    mem = _make_memory(model, a0, b0)
    yield 0, a0, b0
    for t in range(1, T):
        a, b = _advance(*mem.traits(), table)
        mem.record(a, b)
        yield t, a, b


def run(
    rule: Rule, mem_model: MemoryModel, ic: InitialCondition, n: int, T: int
) -> tuple[np.ndarray, np.ndarray]:
    """Evolve for T rows and return the (T, n) space-time pattern per chain.

    Row t holds raw states after t synchronous steps; memory is folded in
    after every step.  Deterministic given all arguments.
    """
    if T < 1:
        raise ValueError(f"need T >= 1, got {T}")
    state = init_state(n, ic)
    pattern_a = np.empty((T, n), dtype=np.uint8)
    pattern_b = np.empty((T, n), dtype=np.uint8)
    for t, a, b in _iter_states(rule, mem_model, state.chain_a, state.chain_b, T):
        pattern_a[t] = a
        pattern_b[t] = b
    return pattern_a, pattern_b


# ---------------------------------------------------------------------------


def min_arc_width(cells: np.ndarray) -> int:
    """Width of the smallest circular arc covering all active cells.

    0 for an empty chain; counts cells inclusively, so two adjacent ones
    have width 2 even when they straddle the wrap point.
    """
    cells = np.asarray(cells)
    ones = np.flatnonzero(cells)
    if ones.size == 0:
        return 0
    n = cells.shape[-1]
    if ones.size == n:
        return n
    gaps = np.diff(ones)
    wrap_gap = ones[0] + n - ones[-1]
    largest = max(int(gaps.max(initial=0)), int(wrap_gap))
    return n - largest + 1
