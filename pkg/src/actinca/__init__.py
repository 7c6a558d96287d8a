"""Two-chain binary automata for actin filaments, with cell-state memory.

A filament is a pair of coupled binary rings updated by semi-totalistic
rules R(phi, psi).  Cells may average their own history (majority votes
or geometrically discounted charge) before the rule consults them, which
reshapes the dynamics without changing the rule itself.  Submodules:

- ``rulespace``:    the 1024-rule family and its encodings
- ``engine``:       state evolution and the memory models
- ``analysis``:     block entropy/diversity sweeps and damage spreading
- ``localization``: still life / oscillator / glider classification
- ``cli``:          command-line front end (also ``python -m actinca.cli``)
"""

from .analysis import (
    STATIONARY_RULES,
    TRAVELLING_RULES,
    BlockCensus,
    DamageReport,
    ExcitabilityProfile,
    SweepRow,
    block_census,
    damage_experiment,
    excitability_profile,
    shannon_entropy,
    simpson_diversity,
    sweep,
    write_damage_csv,
    write_sweep_csv,
)
from .engine import (
    Ahistoric,
    ExplicitSeed,
    FilamentState,
    GeometricMemory,
    MajorityMemory,
    RandomHalf,
    SingleSite,
    TrailingMajority,
    init_state,
    min_arc_width,
    run,
    step,
)
from .localization import (
    CLASS_KINDS,
    LOCALIZATION_RULES,
    LocalizationClass,
    LocalizationReport,
    TaxonomyResult,
    TransformationRecord,
    classify,
    classify_batch,
    five_cell_seeds,
    support_width,
    taxonomy_sweep,
    transformation_pair,
    write_classification_csv,
)
from .rulespace import Rule, Subrule, enumerate_rules, rule_from_decimal, rule_to_decimal

__version__ = "0.1.0"

__all__ = [
    "Ahistoric",
    "BlockCensus",
    "CLASS_KINDS",
    "DamageReport",
    "ExcitabilityProfile",
    "ExplicitSeed",
    "FilamentState",
    "GeometricMemory",
    "LOCALIZATION_RULES",
    "LocalizationClass",
    "LocalizationReport",
    "MajorityMemory",
    "RandomHalf",
    "Rule",
    "STATIONARY_RULES",
    "SingleSite",
    "Subrule",
    "SweepRow",
    "TRAVELLING_RULES",
    "TaxonomyResult",
    "TrailingMajority",
    "TransformationRecord",
    "block_census",
    "classify",
    "classify_batch",
    "damage_experiment",
    "enumerate_rules",
    "excitability_profile",
    "five_cell_seeds",
    "init_state",
    "min_arc_width",
    "rule_from_decimal",
    "rule_to_decimal",
    "run",
    "shannon_entropy",
    "simpson_diversity",
    "step",
    "support_width",
    "sweep",
    "taxonomy_sweep",
    "transformation_pair",
    "write_classification_csv",
    "write_damage_csv",
    "write_sweep_csv",
    "__version__",
]
