"""Cell-state fields, seeded random initial fields and comparison helpers."""

from __future__ import annotations

import hashlib
import math
import struct
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .exceptions import (
    InvalidProbabilitiesError,
    NotAPermutationError,
    ShapeMismatchError,
    StateOutOfRangeError,
)
from .lattice import Boundary, LatticeKind, LatticeSpec, QuadNeighborhood, translate_cell

PROBABILITY_TOLERANCE = 1e-9
SEED_BITS = 64


def _state_dtype(k: int) -> np.dtype:
    return np.dtype(np.uint8) if k <= 256 else np.dtype(np.uint32)


@dataclass(frozen=True, eq=False)
class Field:
    """One state per cell, stored flat in row-major order.

    The ``states`` array is read-only; every transformation builds a new
    field. Use :func:`from_states` to construct one from arbitrary input.
    """

    lattice: LatticeSpec
    states: np.ndarray
    k: int = 2

    def __post_init__(self):
        if self.k < 2:
            raise StateOutOfRangeError(f"alphabet size must be >= 2, got {self.k}")
        arr = np.asarray(self.states)
        if arr.ndim != 1 or arr.size != self.lattice.cell_count:
            raise ShapeMismatchError(
                f"expected {self.lattice.cell_count} states for {self.lattice.describe()}, "
                f"got array of shape {arr.shape}"
            )
        if arr.dtype.kind not in "iu":
            raise StateOutOfRangeError(f"states must be integers, got dtype {arr.dtype}")
        if arr.size and (arr.min() < 0 or arr.max() >= self.k):
            raise StateOutOfRangeError(f"states must lie in [0, {self.k})")
        arr = arr.astype(_state_dtype(self.k), copy=True)
        arr.setflags(write=False)
        object.__setattr__(self, "states", arr)

    @property
    def grid(self) -> np.ndarray:
        """Read-only ``(height, width)`` view of the states."""
        return self.states.reshape(self.lattice.shape)

    def __getitem__(self, cell: tuple[int, int]) -> int:
        col, row = cell
        return int(self.states[row * self.lattice.width + col])

    def __eq__(self, other):
        if not isinstance(other, Field):
            return NotImplemented
        return (
            self.lattice == other.lattice
            and self.k == other.k
            and np.array_equal(self.states, other.states)
        )

    def __hash__(self):
        return hash(digest(self))

    def __repr__(self):
        return f"Field({self.lattice.describe()}, k={self.k}, digest={digest(self)[:12]})"


def from_states(lattice: LatticeSpec, states: Iterable[int] | np.ndarray, k: int = 2) -> Field:
    """Build a field from a flat or ``(height, width)`` array of states."""
    arr = np.asarray(states)
    if arr.ndim == 2:
        if arr.shape != lattice.shape:
            raise ShapeMismatchError(f"grid shape {arr.shape} != lattice shape {lattice.shape}")
        arr = arr.ravel()
    return Field(lattice, arr, k)


def uniform_field(lattice: LatticeSpec, state: int = 0, k: int = 2) -> Field:
    return Field(lattice, np.full(lattice.cell_count, state, dtype=np.int64), k)


def checkerboard(lattice: LatticeSpec, k: int = 2) -> Field:
    """Two-state checkerboard: state ``(col + row) % 2``."""
    rows, cols = np.indices(lattice.shape)
    return from_states(lattice, (rows + cols) % 2, k)


@dataclass(frozen=True)
class InitSpec:
    """Parameters of the i.i.d. categorical initial field."""

    k: int = 2
    probabilities: tuple[float, ...] = (0.5, 0.5)
    seed: int = 0

    def __post_init__(self):
        probs = tuple(float(p) for p in self.probabilities)
        object.__setattr__(self, "probabilities", probs)
        if self.k < 2:
            raise InvalidProbabilitiesError(f"alphabet size must be >= 2, got {self.k}")
        if len(probs) != self.k:
            raise InvalidProbabilitiesError(f"need {self.k} probabilities, got {len(probs)}")
        if any(not math.isfinite(p) or p < 0 for p in probs):
            raise InvalidProbabilitiesError(f"probabilities must be finite and >= 0: {probs}")
        if abs(math.fsum(probs) - 1.0) > PROBABILITY_TOLERANCE:
            raise InvalidProbabilitiesError(f"probabilities sum to {math.fsum(probs)!r}, not 1")
        if not 0 <= int(self.seed) < 2**SEED_BITS:
            raise InvalidProbabilitiesError(f"seed must be an unsigned 64-bit integer: {self.seed}")
        object.__setattr__(self, "seed", int(self.seed))

    @classmethod
    def binary(cls, p1: float = 0.5, seed: int = 0) -> InitSpec:
        return cls(2, (1.0 - p1, p1), seed)


def sample_categorical(uniforms: np.ndarray, probabilities: Sequence[float]) -> np.ndarray:
    """Map uniforms in [0, 1) to states with the cumulative-weight bucket rule.

    A draw ``u`` selects the smallest state ``v`` with ``u < cumsum(p)[v]``.
    Rounding can leave the total slightly below 1; draws above it fall into
    the last state with nonzero weight.
    """
    probs = np.asarray(probabilities, dtype=np.float64)
    cumulative = np.cumsum(probs)
    states = np.searchsorted(cumulative, uniforms, side="right")
    last = int(np.flatnonzero(probs > 0)[-1])
    return np.minimum(states, last)


def random_field(lattice: LatticeSpec, init: InitSpec) -> Field:
    """I.i.d. categorical field, reproducible from ``init.seed``.

    One float64 is drawn per cell, in row-major order, from
    ``numpy.random.Generator(numpy.random.PCG64(seed)).random``.
    """
    rng = np.random.Generator(np.random.PCG64(init.seed))
    uniforms = rng.random(lattice.cell_count)
    return Field(lattice, sample_categorical(uniforms, init.probabilities), init.k)


def _check_compatible(a: Field, b: Field) -> None:
    if a.lattice.shape != b.lattice.shape or a.k != b.k:
        raise ShapeMismatchError(
            f"fields differ in shape or alphabet: {a.lattice.shape}/k={a.k} "
            f"vs {b.lattice.shape}/k={b.k}"
        )


def hamming(a: Field, b: Field) -> int:
    _check_compatible(a, b)
    return int(np.count_nonzero(a.states != b.states))


def digest(f: Field) -> str:
    """SHA-256 hex digest of ``(width, height, k, states)``."""
    h = hashlib.sha256()
    h.update(struct.pack("<QQQ", f.lattice.width, f.lattice.height, f.k))
    h.update(f.states.astype("<u4").tobytes())
    return h.hexdigest()


def relabel(f: Field, perm: Sequence[int]) -> Field:
    perm_arr = np.asarray(perm)
    if perm_arr.shape != (f.k,) or sorted(perm_arr.tolist()) != list(range(f.k)):
        raise NotAPermutationError(f"{list(perm)} is not a permutation of range({f.k})")
    return Field(f.lattice, perm_arr[f.states], f.k)


def inverse_permutation(perm: Sequence[int]) -> list[int]:
    inv = [0] * len(perm)
    for i, p in enumerate(perm):
        inv[p] = i
    return inv


def translate(f: Field, dcol: int, drow: int) -> Field:
    """Shift a field on a periodic lattice so that cell ``c`` moves to ``c + d``."""
    lat = f.lattice
    out = np.empty_like(f.states)
    for row in range(lat.height):
        for col in range(lat.width):
            c, r = translate_cell(lat, (col, row), dcol, drow)
            out[r * lat.width + c] = f.states[row * lat.width + col]
    return Field(lat, out, f.k)


# -- plain-text snapshot format -------------------------------------------------


def to_text(f: Field) -> str:
    """``width height k`` header, then one line of states per row."""
    lines = [f"{f.lattice.width} {f.lattice.height} {f.k}"]
    lines += [" ".join(str(int(v)) for v in row) for row in f.grid]
    return "\n".join(lines) + "\n"


def from_text(
    text: str,
    kind: LatticeKind | str = LatticeKind.QUADRATIC,
    boundary: Boundary | str = Boundary.PERIODIC,
    quad_neighborhood: QuadNeighborhood | str = QuadNeighborhood.VON_NEUMANN4,
) -> Field:
    """Parse :func:`to_text` output; the lattice options are not stored in the file."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ShapeMismatchError("empty field snapshot")
    width, height, k = (int(tok) for tok in lines[0].split())
    rows = [[int(tok) for tok in ln.split()] for ln in lines[1:]]
    if len(rows) != height or any(len(r) != width for r in rows):
        raise ShapeMismatchError(f"snapshot body does not match header {width}x{height}")
    lattice = LatticeSpec(LatticeKind(kind), width, height, Boundary(boundary), quad_neighborhood)
    return from_states(lattice, np.array(rows, dtype=np.int64), k)
