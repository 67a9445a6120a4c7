"""Lattice geometry: hexagonal (odd-r, pointy-top) and quadratic grids.

Cells are addressed by ``(col, row)`` and stored row-major, so the flat
index of a cell is ``row * width + col``.

In the odd-r layout every odd row is shifted half a cell to the right,
which makes the neighbour offsets depend on row parity::

    row 0:   0   1   2   3
    row 1:     0   1   2   3
    row 2:   0   1   2   3
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .exceptions import CellOutOfBoundsError, InvalidLatticeError


class LatticeKind(str, enum.Enum):
    HEXAGONAL = "hex"
    QUADRATIC = "quad"


class Boundary(str, enum.Enum):
    PERIODIC = "periodic"
    CLAMPED = "clamped"


class QuadNeighborhood(str, enum.Enum):
    VON_NEUMANN4 = "vn4"
    MOORE8 = "moore8"


class CellIndex(NamedTuple):
    col: int
    row: int


# (dcol, drow) offsets; the order is part of the public contract.
HEX_OFFSETS_EVEN_ROW = ((-1, 0), (1, 0), (-1, -1), (0, -1), (-1, 1), (0, 1))
HEX_OFFSETS_ODD_ROW = ((-1, 0), (1, 0), (0, -1), (1, -1), (0, 1), (1, 1))
VON_NEUMANN4_OFFSETS = ((-1, 0), (1, 0), (0, -1), (0, 1))
MOORE8_OFFSETS = VON_NEUMANN4_OFFSETS + ((-1, -1), (1, -1), (-1, 1), (1, 1))


@dataclass(frozen=True)
class LatticeSpec:
    """Validated lattice description.

    ``quad_neighborhood`` is carried for quadratic lattices only; hexagonal
    lattices always use the six nearest cells and normalise it to
    ``VON_NEUMANN4`` so that equal geometries compare equal.
    """

    kind: LatticeKind
    width: int
    height: int
    boundary: Boundary = Boundary.PERIODIC
    quad_neighborhood: QuadNeighborhood = QuadNeighborhood.VON_NEUMANN4

    def __post_init__(self):
        object.__setattr__(self, "kind", LatticeKind(self.kind))
        object.__setattr__(self, "boundary", Boundary(self.boundary))
        object.__setattr__(self, "quad_neighborhood", QuadNeighborhood(self.quad_neighborhood))
        if self.kind is LatticeKind.HEXAGONAL:
            object.__setattr__(self, "quad_neighborhood", QuadNeighborhood.VON_NEUMANN4)
        for name in ("width", "height"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
                raise InvalidLatticeError(f"{name} must be an integer, got {value!r}")
            if value < 2:
                raise InvalidLatticeError(f"dimension too small: {name}={value} (minimum is 2)")
            object.__setattr__(self, name, int(value))
        if (
            self.kind is LatticeKind.HEXAGONAL
            and self.boundary is Boundary.PERIODIC
            and self.height % 2
        ):
            raise InvalidLatticeError(
                f"hexagonal periodic lattice needs an even height, got {self.height}"
            )

    @property
    def shape(self) -> tuple[int, int]:
        """Array shape ``(height, width)`` of a field on this lattice."""
        return (self.height, self.width)

    @property
    def cell_count(self) -> int:
        return self.width * self.height

    @property
    def max_degree(self) -> int:
        if self.kind is LatticeKind.HEXAGONAL:
            return 6
        return 4 if self.quad_neighborhood is QuadNeighborhood.VON_NEUMANN4 else 8

    def describe(self) -> str:
        """Short human-readable descriptor, e.g. ``hex 100x100 periodic``."""
        text = f"{self.kind.value} {self.width}x{self.height} {self.boundary.value}"
        if self.kind is LatticeKind.QUADRATIC:
            text += f" {self.quad_neighborhood.value}"
        return text


def build_lattice(
    kind: LatticeKind | str,
    width: int,
    height: int,
    boundary: Boundary | str = Boundary.PERIODIC,
    quad_neighborhood: QuadNeighborhood | str = QuadNeighborhood.VON_NEUMANN4,
) -> LatticeSpec:
    return LatticeSpec(kind, width, height, boundary, quad_neighborhood)


def cell_count(lattice: LatticeSpec) -> int:
    return lattice.cell_count


def offsets_for(lattice: LatticeSpec, row: int) -> tuple[tuple[int, int], ...]:
    if lattice.kind is LatticeKind.HEXAGONAL:
        return HEX_OFFSETS_ODD_ROW if row % 2 else HEX_OFFSETS_EVEN_ROW
    if lattice.quad_neighborhood is QuadNeighborhood.MOORE8:
        return MOORE8_OFFSETS
    return VON_NEUMANN4_OFFSETS


def neighbors(lattice: LatticeSpec, cell: tuple[int, int]) -> list[CellIndex]:
    """Neighbourhood of ``cell`` with the centre excluded.

    Periodic lattices wrap coordinates; clamped lattices drop out-of-bounds
    neighbours, so corner and edge cells get shorter lists.
    """
    col, row = cell
    if not (0 <= col < lattice.width and 0 <= row < lattice.height):
        raise CellOutOfBoundsError(f"cell {tuple(cell)} outside {lattice.width}x{lattice.height}")
    out = []
    periodic = lattice.boundary is Boundary.PERIODIC
    for dc, dr in offsets_for(lattice, row):
        c, r = col + dc, row + dr
        if periodic:
            c %= lattice.width
            r %= lattice.height
        elif not (0 <= c < lattice.width and 0 <= r < lattice.height):
            continue
        out.append(CellIndex(c, r))
    return out


@lru_cache(maxsize=64)
def neighbor_table(lattice: LatticeSpec) -> np.ndarray:
    """Flat-index neighbour table of shape ``(cell_count, max_degree)``.

    Row ``i`` lists the flat indices of ``neighbors`` of cell ``i`` in the
    same order; clamped lattices pad the missing slots with ``-1``. The
    returned array is read-only and shared between callers.
    """
    w, h = lattice.width, lattice.height
    rows, cols = np.divmod(np.arange(w * h), w)
    table = np.full((w * h, lattice.max_degree), -1, dtype=np.intp)
    periodic = lattice.boundary is Boundary.PERIODIC
    for parity in (0, 1):
        sel = rows % 2 == parity
        r0, c0 = rows[sel], cols[sel]
        slots = np.full((sel.sum(), lattice.max_degree), -1, dtype=np.intp)
        for j, (dc, dr) in enumerate(offsets_for(lattice, parity)):
            c, r = c0 + dc, r0 + dr
            if periodic:
                slots[:, j] = (r % h) * w + (c % w)
            else:
                ok = (c >= 0) & (c < w) & (r >= 0) & (r < h)
                slots[ok, j] = r[ok] * w + c[ok]
        if not periodic:
            # compact so that valid entries keep their offset order at the front
            order = np.argsort(slots < 0, axis=1, kind="stable")
            slots = np.take_along_axis(slots, order, axis=1)
        table[sel] = slots
    table.setflags(write=False)
    return table


def translate_cell(lattice: LatticeSpec, cell: tuple[int, int], dcol: int, drow: int) -> CellIndex:
    """Apply a lattice translation on a periodic lattice.

    On the quadratic lattice this is a plain modular shift. On the hex
    lattice a one-row step moves odd rows half a cell further right than
    even rows, so the column shift picks up a parity-dependent carry.
    """
    col, row = cell
    if lattice.kind is LatticeKind.HEXAGONAL:
        # doubled x-coordinate: 2*col + row parity is linear under translation
        x2 = 2 * col + (row % 2) + 2 * dcol + drow
        row = row + drow
        col = (x2 - (row % 2)) // 2
    else:
        col, row = col + dcol, row + drow
    return CellIndex(col % lattice.width, row % lattice.height)
