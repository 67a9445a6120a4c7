"""Command-line driver: random field -> majority-rule actions -> PGM snapshots + trace CSV.

Exit codes: 0 success, 1 usage error, 2 runtime or I/O error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .analysis import build_report, write_csv
from .automaton import DEFAULT_CYCLE_WINDOW, FixedPoint, MajorityRule, field_at, run
from .exceptions import LizardSkinError
from .field import Field, InitSpec, random_field
from .lattice import Boundary, LatticeKind, LatticeSpec, QuadNeighborhood
from .render import RenderConfig, render, write_pgm

log = logging.getLogger(__name__)

EXIT_OK, EXIT_USAGE, EXIT_RUNTIME = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    lattice: LatticeSpec
    init: InitSpec
    max_actions: int = 10
    snapshots: tuple[int, ...] = (0, 1, 2, 10)
    cell_px: int = 6
    out: Path = Path("out")
    cycle_window: int = DEFAULT_CYCLE_WINDOW

    def __post_init__(self):
        if self.max_actions < 1:
            raise UsageError(f"--actions must be >= 1, got {self.max_actions}")
        bad = [s for s in self.snapshots if not 0 <= s <= self.max_actions]
        if bad:
            raise UsageError(f"snapshot indices {bad} outside [0, {self.max_actions}]")
        if self.cell_px < 1:
            raise UsageError(f"--cell-px must be >= 1, got {self.cell_px}")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(sorted({int(tok) for tok in text.split(",") if tok.strip()}))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers: {text!r}")


def _float_list(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(tok) for tok in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of numbers: {text!r}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(
        prog="lizardskin",
        description="Evolve a seeded random field with the majority-rule cellular automaton.",
        allow_abbrev=False,
    )
    p.add_argument("--lattice", choices=["hex", "quad"], default="hex")
    p.add_argument("--width", type=int, default=100)
    p.add_argument("--height", type=int, default=100)
    p.add_argument("--boundary", choices=["periodic", "clamped"], default="periodic")
    p.add_argument("--quad-neighborhood", choices=["vn4", "moore8"], default="vn4")
    p.add_argument("--states", type=int, default=2, help="alphabet size k")
    p.add_argument("--p1", type=float, default=0.5, help="probability of state 1 (k = 2)")
    p.add_argument("--probs", type=_float_list, help="comma list of k state probabilities")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--actions", type=int, default=10, help="maximum number of CA actions")
    p.add_argument("--snapshots", type=_int_list, default=(0, 1, 2, 10),
                   help="comma list of action indices to render (0 = initial field)")
    p.add_argument("--cell-px", type=int, default=6,
                   help="square edge (quad) or hexagon circumradius (hex) in pixels")
    p.add_argument("--out", type=Path, default=Path("out"), help="output directory")
    return p


def parse_args(argv: Sequence[str] | None = None) -> RunConfig:
    """Parse ``argv`` into a validated config; usage errors exit with status 1."""
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        if ns.probs is not None:
            probs = ns.probs
        elif ns.states == 2:
            probs = (1.0 - ns.p1, ns.p1)
        else:
            probs = (1.0 / ns.states,) * ns.states
        lattice = LatticeSpec(
            LatticeKind(ns.lattice),
            ns.width,
            ns.height,
            Boundary(ns.boundary),
            QuadNeighborhood(ns.quad_neighborhood),
        )
        init = InitSpec(ns.states, probs, ns.seed)
        return RunConfig(lattice, init, ns.actions, ns.snapshots, ns.cell_px, ns.out)
    except (LizardSkinError, UsageError) as exc:
        parser.error(str(exc))


def _summary(cfg: RunConfig, trace, substituted: dict[int, str]) -> str:
    lat, init = cfg.lattice, cfg.init
    lines = [
        f"lattice: {lat.kind.value}",
        f"width: {lat.width}",
        f"height: {lat.height}",
        f"boundary: {lat.boundary.value}",
    ]
    if lat.kind is LatticeKind.QUADRATIC:
        lines.append(f"quad_neighborhood: {lat.quad_neighborhood.value}")
    lines += [
        "rule: majority",
        f"states: {init.k}",
        "probabilities: " + ",".join(repr(p) for p in init.probabilities),
        f"seed: {init.seed}",
        f"max_actions: {cfg.max_actions}",
        f"cell_px: {cfg.cell_px}",
        f"cycle_window: {cfg.cycle_window}",
        f"termination: {trace.termination.describe()}",
        f"actions_executed: {trace.actions}",
        f"cumulative_n: {trace.cumulative[-1]}",
        "snapshots: " + ",".join(str(a) for a in cfg.snapshots),
    ]
    lines += [f"substituted_snapshot: {a} {why}" for a, why in sorted(substituted.items())]
    return "\n".join(lines) + "\n"


def run_pipeline(cfg: RunConfig, initial_field: Field | None = None) -> int:
    """Run the automaton and write ``pattern_A####.pgm``, ``trace.csv`` and ``run.txt``.

    ``initial_field`` replaces the seeded random field (used by tests to
    inject hand-built configurations such as a checkerboard).
    """
    f0 = initial_field if initial_field is not None else random_field(cfg.lattice, cfg.init)
    rule = MajorityRule()
    trace, snapshots = run(
        f0, cfg.lattice, rule, cfg.max_actions, cfg.snapshots, cfg.cycle_window
    )
    substituted = {}
    for a in cfg.snapshots:
        if a not in snapshots:
            snapshots[a] = field_at(trace, a, cfg.lattice, rule)
            origin = "fixed point" if isinstance(trace.termination, FixedPoint) else "cycle"
            substituted[a] = f"from {origin} ({trace.termination.describe()})"

    render_cfg = RenderConfig(cfg.cell_px)
    try:
        cfg.out.mkdir(parents=True, exist_ok=True)
        for a in sorted(snapshots):
            write_pgm(render(snapshots[a], render_cfg), cfg.out / f"pattern_A{a:04d}.pgm")
        meta = {
            "lattice": cfg.lattice.describe(),
            "rule": rule.name,
            "states": cfg.init.k,
            "probabilities": ",".join(repr(p) for p in cfg.init.probabilities),
            "seed": cfg.init.seed,
        }
        write_csv(build_report(trace, meta), cfg.out / "trace.csv")
        with open(cfg.out / "run.txt", "w", encoding="utf-8", newline="\n") as fh:
            fh.write(_summary(cfg, trace, substituted))
    except OSError as exc:
        log.error("cannot write outputs to %s: %s", cfg.out, exc)
        return EXIT_RUNTIME
    log.info("%s after %d actions", trace.termination.describe(), trace.actions)
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(name)s: %(message)s")
    cfg = parse_args(argv)
    try:
        return run_pipeline(cfg)
    except LizardSkinError as exc:
        print(f"lizardskin: error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
