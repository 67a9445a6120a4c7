"""Majority-rule cellular automata that turn random fields into labyrinthine patterns."""

from .analysis import ConvergenceReport, build_report, read_csv, write_csv
from .automaton import (
    BudgetExhausted,
    Cycle,
    FixedPoint,
    MajorityRule,
    Rule,
    RunTrace,
    majority_next_state,
    run,
    step,
)
from .estimator import MajorityPatternTransformer
from .field import (
    Field,
    InitSpec,
    checkerboard,
    digest,
    from_states,
    hamming,
    random_field,
    relabel,
    translate,
    uniform_field,
)
from .lattice import (
    Boundary,
    CellIndex,
    LatticeKind,
    LatticeSpec,
    QuadNeighborhood,
    build_lattice,
    cell_count,
    neighbors,
)
from .render import Raster, RenderConfig, render, render_hex, render_quad, write_pgm

__version__ = "0.1.0"

__all__ = [
    "Boundary", "BudgetExhausted", "CellIndex", "ConvergenceReport", "Cycle", "Field",
    "FixedPoint", "InitSpec", "LatticeKind", "LatticeSpec", "MajorityPatternTransformer",
    "MajorityRule", "QuadNeighborhood", "Raster", "RenderConfig", "Rule", "RunTrace",
    "build_lattice", "build_report", "cell_count", "checkerboard", "digest", "from_states",
    "hamming", "majority_next_state", "neighbors", "random_field", "read_csv", "relabel",
    "render", "render_hex", "render_quad", "run", "step", "translate", "uniform_field",
    "write_csv", "write_pgm",
]
