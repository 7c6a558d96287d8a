"""Command-line surface: runs, sweeps, damage, classification, collisions.

Space-time output is a binary P6 pixmap, one pixel per cell with time
increasing downward: white background, black active cells, and (for
damage overlays) red wherever base and perturbed runs differ.  Tables go
out as CSV.  Exit code 0 on success, 2 on any input error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

import numpy as np

from . import analysis, localization
from .engine import (
    Ahistoric,
    ExplicitSeed,
    GeometricMemory,
    InitialCondition,
    MajorityMemory,
    MemoryModel,
    RandomHalf,
    SingleSite,
    TrailingMajority,
    run,
)
from .rulespace import Rule, rule_from_decimal

__all__ = [
    "SeedParseError",
    "RenderSpec",
    "parse_seed",
    "format_seed",
    "parse_memory",
    "collision_seed",
    "render_spacetime",
    "main",
]

_WHITE = (255, 255, 255)
_BLACK = (0, 0, 0)
_GRAY = (128, 128, 128)
_RED = (255, 0, 0)


class SeedParseError(ValueError):
    """Seed text rejected; ``position`` is the offending index in the text."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (position {position})")
        self.position = position


def parse_seed(text: str) -> ExplicitSeed:
    """Parse "[<bits>,<bits>]" into an explicit seed (brackets optional)."""
    stripped = text.strip()
    offset = len(text) - len(text.lstrip())
    if stripped.startswith("[") and stripped.endswith("]"):
        stripped = stripped[1:-1]
        offset += 1
    if "," not in stripped:
        raise SeedParseError("seed needs two comma-separated chains", offset + len(stripped))
    left, right = stripped.split(",", 1)
    parts = []
    for part in (left, right):
        clean = part.strip()
        start = offset + part.index(clean) if clean else offset
        for k, c in enumerate(clean):
            if c not in "01":
                raise SeedParseError(f"illegal seed character {c!r}", start + k)
        parts.append(clean)
        offset += len(part) + 1  # past the comma
    if len(parts[0]) != len(parts[1]):
        raise SeedParseError(
            f"chains differ in length: {len(parts[0])} vs {len(parts[1])}",
            len(text.rstrip()),
        )
    if not parts[0]:
        raise SeedParseError("seed chains are empty", 0)
    return ExplicitSeed(parts[0], parts[1])


def format_seed(seed: ExplicitSeed) -> str:
    return f"[{seed.seed_a},{seed.seed_b}]"


def parse_memory(text: str) -> MemoryModel:
    """Parse ahistoric | majority | tau:K | alpha:X."""
    name, _, param = text.partition(":")
    if name == "ahistoric" and not param:
        return Ahistoric()
    if name == "majority" and not param:
        return MajorityMemory()
    if name == "tau":
        try:
            return TrailingMajority(int(param))
        except ValueError as exc:
            raise ValueError(f"bad tau value in {text!r}: {exc}") from exc
    if name == "alpha":
        try:
            return GeometricMemory(float(param))
        except ValueError as exc:
            raise ValueError(f"bad alpha value in {text!r}: {exc}") from exc
    raise ValueError(
        f"unknown memory model {text!r} (want ahistoric, majority, tau:K or alpha:X)"
    )


def collision_seed(distance: int, seed: ExplicitSeed | None = None) -> ExplicitSeed:
    """Two copies of a seed with their reference cells ``distance`` apart.

    Without a seed, two single excited cells on chain a.  The combined
    strings centre on the ring like any explicit seed.
    """
    if distance < 1:
        raise ValueError(f"need distance >= 1, got {distance}")
    if seed is None:
        seed = ExplicitSeed("1", "0")
    width = len(seed.seed_a)
    if distance < width:
        raise ValueError(f"distance {distance} overlaps seeds of width {width}")
    gap = "0" * (distance - width)
    return ExplicitSeed(seed.seed_a + gap + seed.seed_a, seed.seed_b + gap + seed.seed_b)


# ---------------------------------------------------------------------------
# Rendering


@dataclass
class RenderSpec:
    """Layout 'chain_a_only' or 'stacked_both'; optional damage overlay."""

    layout: str = "stacked_both"
    damage_overlay: tuple[np.ndarray, np.ndarray] | None = None

    def __post_init__(self):
        if self.layout not in ("chain_a_only", "stacked_both"):
            raise ValueError(f"unknown layout {self.layout!r}")


def _paint(pattern: np.ndarray, damage: np.ndarray | None) -> np.ndarray:
    img = np.empty(pattern.shape + (3,), dtype=np.uint8)
    img[pattern == 0] = _WHITE
    img[pattern == 1] = _BLACK
    if damage is not None:
        img[damage != 0] = _RED
    return img


def render_spacetime(
    patterns: tuple[np.ndarray, np.ndarray], spec: RenderSpec | None = None
) -> bytes:
    """Render a pattern pair to a binary P6 pixmap (time goes down)."""
    spec = spec or RenderSpec()
    pattern_a = np.asarray(patterns[0], dtype=np.uint8)
    pattern_b = np.asarray(patterns[1], dtype=np.uint8)
    if pattern_a.ndim != 2 or pattern_a.shape != pattern_b.shape:
        raise ValueError("patterns must be two equal-shape T x n matrices")
    damage_a = damage_b = None
    if spec.damage_overlay is not None:
        over_a = np.asarray(spec.damage_overlay[0], dtype=np.uint8)
        over_b = np.asarray(spec.damage_overlay[1], dtype=np.uint8)
        if over_a.shape != pattern_a.shape or over_b.shape != pattern_b.shape:
            raise ValueError("damage overlay must match the pattern dimensions")
        damage_a = pattern_a ^ over_a
        damage_b = pattern_b ^ over_b
    T, n = pattern_a.shape
    if spec.layout == "chain_a_only":
        img = _paint(pattern_a, damage_a)
    else:
        separator = np.tile(np.array(_GRAY, dtype=np.uint8), (1, n, 1))
        img = np.concatenate(
            [_paint(pattern_a, damage_a), separator, _paint(pattern_b, damage_b)]
        )
    header = f"P6\n{img.shape[1]} {img.shape[0]}\n255\n".encode("ascii")
    return header + img.tobytes()


# ---------------------------------------------------------------------------
# Subcommands


def _add_rule_flags(parser):
    parser.add_argument("--phi", type=int, required=True, help="resting subrule code 0..31")
    parser.add_argument("--psi", type=int, required=True, help="excited subrule code 0..31")


def _add_common_flags(parser, n_default=None, steps_default=None):
    parser.add_argument(
        "--memory",
        default="ahistoric",
        help="memory model: ahistoric | majority | tau:K | alpha:X",
    )
    parser.add_argument("--n", type=int, default=n_default, help="cells per chain")
    parser.add_argument("--steps", type=int, default=steps_default, help="rows to evolve")
    parser.add_argument("--rng-seed", type=int, default=None, help="generator seed")
    parser.add_argument("--out", default=None, help="output path")


def _ic_from_args(args) -> InitialCondition:
    if getattr(args, "seed", None):
        return parse_seed(args.seed)
    if getattr(args, "single_site", False):
        return SingleSite()
    if args.rng_seed is None:
        raise ValueError("random starts need an explicit --rng-seed")
    return RandomHalf(args.rng_seed)


def _open_out(args):
    if args.out in (None, "-"):
        return sys.stdout, False
    return open(args.out, "w", newline=""), True


def _write_table(args, writer_fn):
    out, close = _open_out(args)
    try:
        writer_fn(out)
    finally:
        if close:
            out.close()


def _cmd_run(args) -> int:
    rule = rule_from_decimal(args.phi, args.psi)
    ic = _ic_from_args(args)
    patterns = run(rule, parse_memory(args.memory), ic, args.n, args.steps)
    layout = "chain_a_only" if args.layout == "a" else "stacked_both"
    if not args.out:
        raise ValueError("run needs --out for the image")
    with open(args.out, "wb") as fh:
        fh.write(render_spacetime(patterns, RenderSpec(layout=layout)))
    return 0


def _cmd_sweep(args) -> int:
    if args.rng_seed is None:
        raise ValueError("sweep needs an explicit --rng-seed")
    model = parse_memory(args.memory)
    rows = analysis.sweep(
        model,
        n=args.n,
        T=args.steps,
        rng_seed=args.rng_seed,
        census_on=args.census,
        jobs=args.jobs,
    )
    _write_table(args, lambda out: analysis.write_sweep_csv(rows, model, out))
    return 0


def _cmd_damage(args) -> int:
    if args.rng_seed is None:
        raise ValueError("damage needs an explicit --rng-seed")
    rule = rule_from_decimal(args.phi, args.psi)
    report = analysis.damage_experiment(
        rule, parse_memory(args.memory), args.n, args.steps, args.rng_seed
    )
    _write_table(args, lambda out: analysis.write_damage_csv(report, out))
    if args.image:
        spec = RenderSpec(layout="stacked_both", damage_overlay=report.perturbed_patterns)
        with open(args.image, "wb") as fh:
            fh.write(render_spacetime(report.base_patterns, spec))
    return 0


def _cmd_classify(args) -> int:
    rule = rule_from_decimal(args.phi, args.psi)
    model = parse_memory(args.memory)
    ic = _ic_from_args(args)
    report = localization.classify(
        rule, model, ic, n=args.n, T=args.steps, t_trans=args.t_trans, p_max=args.p_max
    )
    _write_table(
        args,
        lambda out: localization.write_classification_csv([(rule, model, ic, report)], out),
    )
    return 0


def _cmd_taxonomy(args) -> int:
    model = parse_memory(args.memory)
    rules = (
        localization.LOCALIZATION_RULES
        if args.rules is None
        else [rule_from_decimal(*_parse_rule_pair(p)) for p in args.rules.split(";")]
    )
    result = localization.taxonomy_sweep(
        rules,
        model,
        n=args.n,
        T=args.steps,
        t_trans=args.t_trans,
        p_max=args.p_max,
        jobs=args.jobs,
    )

    def write(out):
        out.write("from_class,to_class,count\n")
        for i, src in enumerate(localization.CLASS_KINDS):
            for j, dst in enumerate(localization.CLASS_KINDS):
                out.write(f"{src},{dst},{result.matrix[i, j]}\n")

    _write_table(args, write)
    if args.details:
        with open(args.details, "w", newline="") as fh:
            localization.write_classification_csv(
                [
                    (rec.rule, model, rec.ic, rec.after)
                    for rec in result.records
                ],
                fh,
            )
    return 0


def _parse_rule_pair(text: str) -> tuple[int, int]:
    try:
        phi, psi = text.split(",")
        return int(phi), int(psi)
    except ValueError as exc:
        raise ValueError(f"bad rule {text!r}, want 'phi,psi'") from exc


def _cmd_profile(args) -> int:
    if args.rules:
        rules = [rule_from_decimal(*_parse_rule_pair(p)) for p in args.rules.split(";")]
    elif args.set == "travelling":
        rules = list(analysis.TRAVELLING_RULES)
    else:
        rules = list(analysis.STATIONARY_RULES)
    profile = analysis.excitability_profile(rules)

    def write(out):
        out.write("neighbours,p_rest,p_excited\n")
        for k in range(5):
            out.write(f"{k},{profile.p_rest[k]:.6f},{profile.p_excited[k]:.6f}\n")

    _write_table(args, write)
    return 0


def _cmd_collide(args) -> int:
    rule = rule_from_decimal(args.phi, args.psi)
    model = parse_memory(args.memory)
    base = parse_seed(args.seed) if args.seed else None
    ic = collision_seed(args.distance, base)
    patterns = run(rule, model, ic, args.n, args.steps)

    def write(out):
        out.write("t,active_a,active_b\n")
        for t in range(args.steps):
            out.write(
                f"{t},{int(patterns[0][t].sum())},{int(patterns[1][t].sum())}\n"
            )

    _write_table(args, write)
    if args.image:
        with open(args.image, "wb") as fh:
            fh.write(render_spacetime(patterns, RenderSpec(layout="stacked_both")))
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="actinca",
        description="Two-chain actin automata: simulation and analysis.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="evolve one rule and write a space-time image")
    _add_rule_flags(p)
    _add_common_flags(p, n_default=300, steps_default=150)
    p.add_argument("--seed", default=None, help='explicit seed "[bits,bits]"')
    p.add_argument("--single-site", action="store_true", help="one active centre cell")
    p.add_argument("--layout", choices=("a", "stacked"), default="stacked")
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("sweep", help="entropy/diversity of every rule, as CSV")
    _add_common_flags(p, n_default=300, steps_default=1000)
    p.add_argument("--census", choices=("a", "b", "stacked"), default="a")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("damage", help="single-site perturbation experiment, as CSV")
    _add_rule_flags(p)
    _add_common_flags(p, n_default=300, steps_default=150)
    p.add_argument("--image", default=None, help="optional P6 with red damage pixels")
    p.set_defaults(func=_cmd_damage)

    p = sub.add_parser("classify", help="localization verdict for one seed")
    _add_rule_flags(p)
    _add_common_flags(p, n_default=None, steps_default=400)
    p.add_argument("--seed", default=None, help='explicit seed "[bits,bits]"')
    p.add_argument("--single-site", action="store_true")
    p.add_argument("--t-trans", type=int, default=None)
    p.add_argument("--p-max", type=int, default=60)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("taxonomy", help="verdict transition counts over 5-cell seeds")
    _add_common_flags(p, n_default=None, steps_default=400)
    p.add_argument("--rules", default=None, help='semicolon list "phi,psi;phi,psi"')
    p.add_argument("--t-trans", type=int, default=None)
    p.add_argument("--p-max", type=int, default=60)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--details", default=None, help="per-seed classification CSV")
    p.set_defaults(func=_cmd_taxonomy)

    p = sub.add_parser("profile", help="excitability profile of a rule set")
    p.add_argument("--set", choices=("travelling", "stationary"), default="travelling")
    p.add_argument("--rules", default=None, help='semicolon list "phi,psi;phi,psi"')
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_profile)

    p = sub.add_parser("collide", help="two seeds launched a given distance apart")
    _add_rule_flags(p)
    _add_common_flags(p, n_default=300, steps_default=400)
    p.add_argument("--distance", type=int, required=True)
    p.add_argument("--seed", default=None, help="seed to duplicate (default single sites)")
    p.add_argument("--image", default=None)
    p.set_defaults(func=_cmd_collide)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
