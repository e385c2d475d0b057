"""Position-space densities over space-time grids ("quantum carpets").

The wavefunction is assembled in the oscillator eigenbasis: psi(x, t) =
sum_n c_n e^{-i chi E(n) t} phi_n(x), with phi_n the normalized Hermite
functions. The recurrence

    phi_{n+1} = sqrt(2/(n+1)) x phi_n - sqrt(n/(n+1)) phi_{n-1}

works on the normalized functions directly, so no factorial ever appears
and n up to a few hundred is routine. Densities |psi|^2 filled row by row
over a time grid give the carpet; helper exports render it as CSV or as an
8-bit PGM image normalized over the whole grid (fractional-revival rows
come out dimmer, as they should).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fock import CoherentLabel, coherent_amplitudes
from .spectra import Spectrum, revival_time

#: Fraction of the row maximum above which a grid cell belongs to a lobe.
LOBE_THRESHOLD = 0.1


@dataclass(frozen=True)
class CarpetGrid:
    """Space-time density grid: nt rows (time) by nx columns (position)."""

    x_min: float
    x_max: float
    nx: int
    t_min: float
    t_max: float
    nt: int
    density: np.ndarray

    def __post_init__(self) -> None:
        if self.nx < 2 or self.nt < 2:
            raise ValueError("a carpet needs at least a 2 x 2 grid")
        if not (self.x_max > self.x_min and self.t_max > self.t_min):
            raise ValueError("grid extents must be increasing")
        dens = np.asarray(self.density, dtype=np.float64).copy()
        if dens.shape != (self.nt, self.nx):
            raise ValueError(
                f"density shape {dens.shape} does not match (nt, nx) = "
                f"({self.nt}, {self.nx})"
            )
        if np.any(dens < 0.0):
            raise ValueError("densities cannot be negative")
        dens.setflags(write=False)
        object.__setattr__(self, "density", dens)

    def x_axis(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.nx)

    def t_axis(self) -> np.ndarray:
        return np.linspace(self.t_min, self.t_max, self.nt)

    def row_integrals(self) -> np.ndarray:
        """Trapezoid quadrature of every row over [x_min, x_max]."""
        dx = (self.x_max - self.x_min) / (self.nx - 1)
        interior = self.density.sum(axis=1)
        edges = 0.5 * (self.density[:, 0] + self.density[:, -1])
        return dx * (interior - edges)

    def row_nearest(self, t: float) -> int:
        """Index of the row whose time is closest to t."""
        return int(np.argmin(np.abs(self.t_axis() - t)))


def hermite_functions(x: np.ndarray, n_max: int) -> np.ndarray:
    """Normalized oscillator eigenfunctions phi_0..phi_{n_max} on the grid x.

    Returns shape (n_max + 1, len(x)). phi_0 = pi^{-1/4} e^{-x^2/2}; the
    two-term recurrence above fills the rest.
    """
    x = np.asarray(x, dtype=np.float64)
    out = np.zeros((n_max + 1, x.size), dtype=np.float64)
    out[0] = math.pi ** -0.25 * np.exp(-0.5 * x * x)
    if n_max >= 1:
        out[1] = math.sqrt(2.0) * x * out[0]
    for n in range(1, n_max):
        out[n + 1] = math.sqrt(2.0 / (n + 1)) * x * out[n] - math.sqrt(
            n / (n + 1.0)
        ) * out[n - 1]
    return out


def position_wavefunction(
    label: CoherentLabel,
    x: float | np.ndarray,
    t: float,
    spectrum: Spectrum,
    truncation: int | None = None,
) -> complex | np.ndarray:
    """psi(x, t) for a coherent state evolved under the spectrum's phases.

    x may be a scalar or a 1-d grid; the result matches its shape.
    """
    scalar = np.isscalar(x)
    grid = np.atleast_1d(np.asarray(x, dtype=np.float64))
    state = coherent_amplitudes(label, truncation)
    n_max = state.truncation
    phases = np.exp(-1j * spectrum.chi * spectrum.energies(n_max) * t)
    psi = (state.amplitudes * phases) @ hermite_functions(grid, n_max)
    return complex(psi[0]) if scalar else psi


def default_window(label: CoherentLabel) -> tuple[float, float]:
    """Symmetric x window: [-6, 6], widened to cover <x> excursions + 6 sigma.

    A coherent state's position spread is 1/sqrt(2) and its center never
    leaves the circle of radius sqrt(2)|alpha|, so half-width
    sqrt(2)|alpha| + 6/sqrt(2) keeps every sub-packet inside with room
    to spare.
    """
    half = max(6.0, math.sqrt(2.0) * label.radius + 6.0 / math.sqrt(2.0))
    return -half, half


def carpet(
    label: CoherentLabel,
    spectrum: Spectrum,
    x_min: float | None = None,
    x_max: float | None = None,
    nx: int = 400,
    t_min: float = 0.0,
    t_max: float | None = None,
    nt: int = 400,
    truncation: int | None = None,
) -> CarpetGrid:
    """Fill the |psi(x, t)|^2 grid row by row.

    t_max defaults to one revival period; an aperiodic custom spectrum has
    none, so it must be given explicitly there.
    """
    if x_min is None or x_max is None:
        lo, hi = default_window(label)
        x_min = lo if x_min is None else x_min
        x_max = hi if x_max is None else x_max
    if t_max is None:
        period = revival_time(spectrum)
        if period is None:
            raise ValueError(
                "aperiodic spectrum: pass t_max explicitly"
            )
        t_max = period
    times = np.linspace(t_min, t_max, nt)
    grid = np.linspace(x_min, x_max, nx)
    state = coherent_amplitudes(label, truncation)
    n_max = state.truncation
    table = hermite_functions(grid, n_max)
    energies = spectrum.energies(n_max)
    # One phase matrix covers all rows; (nt, N+1) x (N+1, nx) in one product.
    phases = np.exp(-1j * spectrum.chi * np.outer(times, energies))
    psi = (phases * state.amplitudes) @ table
    density = (psi.real**2 + psi.imag**2)
    return CarpetGrid(
        x_min=float(x_min),
        x_max=float(x_max),
        nx=nx,
        t_min=float(t_min),
        t_max=float(t_max),
        nt=nt,
        density=density,
    )


def count_lobes(row: np.ndarray, threshold: float = LOBE_THRESHOLD) -> int:
    """Number of connected runs along x that rise above threshold * row max.

    This is the quantitative stand-in for counting sub-images by eye: a
    two-packet cat shows two runs, a three-packet cat three, provided the
    packets are separated in position.
    """
    row = np.asarray(row, dtype=np.float64)
    peak = float(row.max(initial=0.0))
    if peak <= 0.0:
        return 0
    mask = row > threshold * peak
    # A run starts wherever the mask turns on.
    starts = np.count_nonzero(mask[1:] & ~mask[:-1]) + int(mask[0])
    return int(starts)


def grid_to_csv(grid: CarpetGrid, chi: float) -> str:
    """Row-major CSV: header carries the x axis, each row is one time slice.

    Columns: t, chi_t_over_pi, then one density column per grid x. Values
    print with 17 significant digits so parsing the file back reproduces
    the float64 grid exactly.
    """
    header = ["t", "chi_t_over_pi"] + [
        "x=" + format(x, ".17g") for x in grid.x_axis()
    ]
    lines = [",".join(header)]
    for t, row in zip(grid.t_axis(), grid.density):
        cells = [format(t, ".17g"), format(chi * t / math.pi, ".17g")]
        cells.extend(format(v, ".17g") for v in row)
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def grid_to_pgm(grid: CarpetGrid) -> bytes:
    """8-bit binary PGM (P5), normalized to 0..255 over the whole grid.

    Whole-grid normalization (not per row) keeps fractional-revival rows
    dimmer than the full revivals.
    """
    peak = float(grid.density.max(initial=0.0))
    if peak <= 0.0:
        levels = np.zeros_like(grid.density, dtype=np.uint8)
    else:
        levels = np.rint(grid.density * (255.0 / peak)).astype(np.uint8)
    header = f"P5\n{grid.nx} {grid.nt}\n255\n".encode("ascii")
    return header + levels.tobytes()
