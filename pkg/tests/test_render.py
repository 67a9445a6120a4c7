import math

import numpy as np
import pytest

from lizardskin.exceptions import StateOutOfRangeError, WrongLatticeKindError
from lizardskin.field import InitSpec, from_states, random_field, uniform_field
from lizardskin.lattice import build_lattice
from lizardskin.render import (
    Raster,
    RenderConfig,
    default_palette,
    hex_center,
    hex_owner,
    hex_raster_size,
    pgm_bytes,
    read_pgm,
    render,
    render_hex,
    render_quad,
    write_pgm,
)

QUAD2 = build_lattice("quad", 2, 2)


def test_quad_one_pixel_per_cell():
    r = render_quad(from_states(QUAD2, [[0, 1], [1, 0]]), RenderConfig(1))
    assert (r.width_px, r.height_px) == (2, 2)
    assert r.image.tolist() == [[255, 0], [0, 255]]


def test_quad_all_ones_black():
    r = render_quad(uniform_field(build_lattice("quad", 4, 4), 1), RenderConfig(3))
    assert r.image.shape == (12, 12)
    assert not r.pixels.any()


def test_quad_scaling_law():
    f = random_field(build_lattice("quad", 7, 5, "clamped"), InitSpec.binary(0.5, 3))
    one = render_quad(f, RenderConfig(1)).image
    two = render_quad(f, RenderConfig(2)).image
    assert np.array_equal(two, one.repeat(2, axis=0).repeat(2, axis=1))


def test_quad_dark_pixel_count():
    f = random_field(build_lattice("quad", 9, 9), InitSpec.binary(0.4, 1))
    r = render_quad(f, RenderConfig(4))
    assert np.count_nonzero(r.pixels == 0) == 16 * int(f.states.sum())


def test_wrong_kind():
    with pytest.raises(WrongLatticeKindError):
        render_quad(uniform_field(build_lattice("hex", 2, 2)))
    with pytest.raises(WrongLatticeKindError):
        render_hex(uniform_field(QUAD2))


def test_palette():
    assert default_palette(2) == {0: 255, 1: 0}
    assert default_palette(3) == {0: 255, 1: 128, 2: 0}
    f = from_states(QUAD2, [[0, 1], [2, 2]], k=3)
    assert render_quad(f, RenderConfig(1)).image.tolist() == [[255, 128], [0, 0]]
    custom = RenderConfig(1, palette={0: 10, 1: 20, 2: 30})
    assert render_quad(f, custom).image.tolist() == [[10, 20], [30, 30]]
    with pytest.raises(StateOutOfRangeError):
        render_quad(f, RenderConfig(1, palette={0: 0, 1: 255}))


def test_hex_all_white():
    r = render_hex(uniform_field(build_lattice("hex", 2, 2)), RenderConfig(5))
    assert np.all(r.pixels == 255)
    assert (r.width_px, r.height_px) == hex_raster_size(2, 2, 5)


def test_hex_raster_size_formula():
    assert hex_raster_size(100, 100, 6) == (
        math.ceil(6 * math.sqrt(3) * 100.5 + 12),
        math.ceil(6 * 150.5 + 12),
    )


@pytest.mark.parametrize("dark", [(0, 0), (1, 0), (0, 1), (1, 1)])
@pytest.mark.parametrize("cell_px", [3, 6, 11])
def test_hex_single_dark_cell_centroid(dark, cell_px):
    lat = build_lattice("hex", 2, 2)
    grid = np.zeros((2, 2), dtype=int)
    grid[dark[1], dark[0]] = 1
    img = render_hex(from_states(lat, grid), RenderConfig(cell_px)).image
    ys, xs = np.nonzero(img == 0)
    assert ys.size > 0
    # single 4-connected region
    seen, todo = set(), [(ys[0], xs[0])]
    dark_px = set(zip(ys.tolist(), xs.tolist()))
    while todo:
        p = todo.pop()
        if p in seen or p not in dark_px:
            continue
        seen.add(p)
        y, x = p
        todo += [(y + 1, x), (y - 1, x), (y, x + 1), (y, x - 1)]
    assert seen == dark_px
    cx, cy = hex_center(*dark, cell_px)
    assert abs((xs + 0.5).mean() - cx) <= 1.0
    assert abs((ys + 0.5).mean() - cy) <= 1.0


def brute_force_owner(width, height, cell_px):
    """Nearest centre over real cells plus a ring of virtual cells; virtual wins -> background."""
    w_px, h_px = hex_raster_size(width, height, cell_px)
    centers = []
    for row in range(-1, height + 1):
        for col in range(-1, width + 1):
            cy = cell_px * 1.5 * row + cell_px
            cx = cell_px * math.sqrt(3) * (col + 0.5 * (row % 2)) + cell_px
            real = 0 <= row < height and 0 <= col < width
            centers.append((row, col, cx, cy, real))
    out = np.full((h_px, w_px), -1)
    for py in range(h_px):
        for px in range(w_px):
            x, y = px + 0.5, py + 0.5
            best = min(centers, key=lambda c: ((x - c[2]) ** 2 + (y - c[3]) ** 2, c[0], c[1]))
            if best[4]:
                out[py, px] = best[0] * width + best[1]
    return out


@pytest.mark.parametrize("dims", [(2, 2, 4), (3, 4, 5), (4, 3, 3), (5, 4, 7)])
def test_hex_owner_matches_brute_force(dims):
    assert np.array_equal(hex_owner(*dims), brute_force_owner(*dims))


@pytest.mark.parametrize("cell_px", [6, 10, 16])
def test_hex_interior_cell_area(cell_px):
    width, height = 8, 8
    owner = hex_owner(width, height, cell_px)
    counts = np.bincount(owner[owner >= 0], minlength=width * height).reshape(height, width)
    ideal = 1.5 * math.sqrt(3) * cell_px**2
    interior = counts[1:-1, 1:-1]
    assert np.all(np.abs(interior - ideal) <= 0.05 * ideal)
    # every cell owns some pixels, and partition is exhaustive over owned pixels
    assert counts.min() > 0 and counts.sum() == np.count_nonzero(owner >= 0)


def test_hex_dark_pixels_track_cells():
    lat = build_lattice("hex", 10, 10)
    f = random_field(lat, InitSpec.binary(0.5, 4))
    cfg = RenderConfig(8)
    img = render_hex(f, cfg).image
    owner = hex_owner(10, 10, 8)
    assert np.array_equal(img == 0, (owner >= 0) & (f.states[np.maximum(owner, 0)] == 1))


def test_render_deterministic():
    lat = build_lattice("hex", 12, 12)
    f = random_field(lat, InitSpec.binary(0.5, 2))
    assert pgm_bytes(render(f)) == pgm_bytes(render(f))


def test_pgm_golden_1x1(tmp_path):
    path = tmp_path / "a.pgm"
    write_pgm(Raster(1, 1, [0]), path)
    assert path.read_bytes() == b"P5\n1 1\n255\n\x00"


def test_pgm_golden_2x1(tmp_path):
    path = tmp_path / "b.pgm"
    write_pgm(Raster(2, 1, [0, 255]), path)
    assert path.read_bytes() == b"P5\n2 1\n255\n\x00\xff"


def test_pgm_size_and_round_trip(tmp_path):
    f = random_field(build_lattice("quad", 9, 4), InitSpec.binary(0.5, 0))
    r = render(f, RenderConfig(3))
    path = tmp_path / "c.pgm"
    write_pgm(r, path)
    header = f"P5\n{r.width_px} {r.height_px}\n255\n".encode()
    assert path.stat().st_size == len(header) + r.width_px * r.height_px
    assert read_pgm(path) == r


def test_raster_validation():
    with pytest.raises(ValueError):
        Raster(2, 2, [0, 0, 0])
