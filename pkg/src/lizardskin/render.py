"""Grayscale rasterisation of fields and binary PGM output.

Quadratic cells become solid squares. Hexagonal cells are pointy-top
hexagons laid out odd-r; each pixel takes the state of the nearest cell
centre, which rasterises the hexagonal Voronoi tessellation exactly.
Pixel ``(x, y)`` is sampled at its centre ``(x + 0.5, y + 0.5)``.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import BinaryIO, Mapping, Union

import numpy as np

from .exceptions import StateOutOfRangeError, WrongLatticeKindError
from .field import Field
from .lattice import LatticeKind

BACKGROUND = 255
SQRT3 = math.sqrt(3.0)


@dataclass(frozen=True, eq=False)
class Raster:
    """Row-major 8-bit grayscale image; 0 is black, 255 white."""

    width_px: int
    height_px: int
    pixels: np.ndarray

    def __post_init__(self):
        arr = np.ascontiguousarray(self.pixels, dtype=np.uint8).reshape(-1)
        if arr.size != self.width_px * self.height_px:
            raise ValueError(
                f"{arr.size} pixels do not fill a {self.width_px}x{self.height_px} raster"
            )
        arr.setflags(write=False)
        object.__setattr__(self, "pixels", arr)

    @property
    def image(self) -> np.ndarray:
        return self.pixels.reshape(self.height_px, self.width_px)

    def __eq__(self, other):
        if not isinstance(other, Raster):
            return NotImplemented
        return self.image.shape == other.image.shape and np.array_equal(self.pixels, other.pixels)

    __hash__ = None


def default_palette(k: int) -> dict[int, int]:
    """Evenly spaced grays from white (state 0) to black (state k - 1)."""
    return {v: round(255 * (1 - v / (k - 1))) for v in range(k)}


@dataclass(frozen=True)
class RenderConfig:
    cell_px: int = 6
    palette: Mapping[int, int] | None = None

    def __post_init__(self):
        if self.cell_px < 1:
            raise ValueError(f"cell_px must be >= 1, got {self.cell_px}")

    def lut(self, k: int) -> np.ndarray:
        palette = self.palette if self.palette is not None else default_palette(k)
        missing = [v for v in range(k) if v not in palette]
        if missing:
            raise StateOutOfRangeError(f"palette has no gray for states {missing}")
        return np.array([palette[v] for v in range(k)], dtype=np.uint8)


def render_quad(f: Field, cfg: RenderConfig = RenderConfig()) -> Raster:
    if f.lattice.kind is not LatticeKind.QUADRATIC:
        raise WrongLatticeKindError("render_quad needs a quadratic lattice")
    grays = cfg.lut(f.k)[f.grid]
    block = np.ones((cfg.cell_px, cfg.cell_px), dtype=np.uint8)
    img = np.kron(grays, block)
    return Raster(img.shape[1], img.shape[0], img)


def hex_raster_size(width: int, height: int, cell_px: int) -> tuple[int, int]:
    margin = cell_px
    return (
        math.ceil(cell_px * SQRT3 * (width + 0.5) + 2 * margin),
        math.ceil(cell_px * (1.5 * height + 0.5) + 2 * margin),
    )


def hex_center(col: int, row: int, cell_px: int) -> tuple[float, float]:
    margin = cell_px
    return (
        cell_px * SQRT3 * (col + 0.5 * (row % 2)) + margin,
        cell_px * 1.5 * row + margin,
    )


def hex_owner(width: int, height: int, cell_px: int) -> np.ndarray:
    """Flat cell index owning each pixel, or ``-1`` for background.

    A pixel belongs to its nearest cell centre (ties: smaller row, then
    smaller column) when it also lies inside that cell's hexagon; pixels
    outside every hexagon are background.
    """
    R = float(cell_px)
    margin = R
    w_px, h_px = hex_raster_size(width, height, cell_px)
    y = (np.arange(h_px, dtype=np.float64) + 0.5)[:, None]
    x = (np.arange(w_px, dtype=np.float64) + 0.5)[None, :]
    y, x = np.broadcast_arrays(y, x)

    row_guess = np.rint((y - margin) / (1.5 * R)).astype(np.int64)
    best_d2 = np.full(y.shape, np.inf)
    best_col = np.full(y.shape, -1, dtype=np.int64)
    best_row = np.full(y.shape, -1, dtype=np.int64)
    # candidates visited in (row, col) order so strict '<' keeps the tie rule
    for dr in (-1, 0, 1):
        row = row_guess + dr
        col_guess = np.rint((x - margin) / (SQRT3 * R) - 0.5 * (row % 2)).astype(np.int64)
        for dc in (-1, 0, 1):
            col = col_guess + dc
            cx = R * SQRT3 * (col + 0.5 * (row % 2)) + margin
            cy = R * 1.5 * row + margin
            d2 = (x - cx) ** 2 + (y - cy) ** 2
            ok = (row >= 0) & (row < height) & (col >= 0) & (col < width)
            better = ok & (
                (d2 < best_d2)
                | ((d2 == best_d2) & ((row < best_row) | ((row == best_row) & (col < best_col))))
            )
            best_d2 = np.where(better, d2, best_d2)
            best_col = np.where(better, col, best_col)
            best_row = np.where(better, row, best_row)

    has = best_row >= 0
    cx = R * SQRT3 * (best_col + 0.5 * (best_row % 2)) + margin
    cy = R * 1.5 * best_row + margin
    dx, dy = np.abs(x - cx), np.abs(y - cy)
    apothem = 0.5 * SQRT3 * R
    eps = 1e-9 * R
    inside = has & (dx <= apothem + eps) & (0.5 * dx + 0.5 * SQRT3 * dy <= apothem + eps)
    return np.where(inside, best_row * width + best_col, -1)


def render_hex(f: Field, cfg: RenderConfig = RenderConfig()) -> Raster:
    if f.lattice.kind is not LatticeKind.HEXAGONAL:
        raise WrongLatticeKindError("render_hex needs a hexagonal lattice")
    owner = hex_owner(f.lattice.width, f.lattice.height, cfg.cell_px)
    grays = cfg.lut(f.k)[f.states]
    img = np.where(owner >= 0, grays[np.maximum(owner, 0)], BACKGROUND).astype(np.uint8)
    return Raster(img.shape[1], img.shape[0], img)


def render(f: Field, cfg: RenderConfig = RenderConfig()) -> Raster:
    """Dispatch on lattice kind."""
    if f.lattice.kind is LatticeKind.HEXAGONAL:
        return render_hex(f, cfg)
    return render_quad(f, cfg)


def pgm_bytes(r: Raster) -> bytes:
    return f"P5\n{r.width_px} {r.height_px}\n255\n".encode("ascii") + r.pixels.tobytes()


def write_pgm(r: Raster, destination: Union[str, "os.PathLike[str]", BinaryIO]) -> None:
    data = pgm_bytes(r)
    if hasattr(destination, "write"):
        destination.write(data)
        return
    with open(destination, "wb") as fh:
        fh.write(data)


def read_pgm(source: Union[str, "os.PathLike[str]"]) -> Raster:
    """Read back the exact P5 layout written by :func:`write_pgm`."""
    with open(source, "rb") as fh:
        data = fh.read()
    magic, dims, maxval, body = data.split(b"\n", 3)
    if magic != b"P5" or maxval != b"255":
        raise ValueError("not an 8-bit binary PGM written by this package")
    w, h = (int(t) for t in dims.split())
    return Raster(w, h, np.frombuffer(body, dtype=np.uint8))
