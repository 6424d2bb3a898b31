"""Driving noise for the chemostat models: Wiener and Ornstein-Uhlenbeck paths.

Paths are sampled on uniform time grids with a counter-based generator
(Philox) keyed by the seed, so regeneration is bit-exact and independent of
execution order.  The O-U path uses the exact stationary AR(1) discretization,
not an Euler scheme, so the noise itself carries no discretization error.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np
from scipy.signal import lfilter

WIENER = "wiener"
ORNSTEIN_UHLENBECK = "ornstein-uhlenbeck"
DILUTION = "dilution"


class NoiseError(ValueError):
    """Invalid grid, parameters or path input."""


@dataclass(frozen=True)
class TimeGrid:
    """Uniform grid t0 + k*dt for k = 0..n_steps."""

    t0: float
    dt: float
    n_steps: int

    def __post_init__(self):
        if not self.dt > 0:
            raise NoiseError(f"dt must be > 0, got {self.dt}")
        if self.n_steps < 1:
            raise NoiseError(f"n_steps must be >= 1, got {self.n_steps}")

    @classmethod
    def from_span(cls, t_end: float, dt: float, t0: float = 0.0) -> "TimeGrid":
        n = int(round((t_end - t0) / dt))
        return cls(t0=t0, dt=dt, n_steps=max(n, 1))

    @property
    def t_end(self) -> float:
        return self.t0 + self.dt * self.n_steps

    @property
    def span(self) -> float:
        return self.dt * self.n_steps

    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.n_steps + 1)

    def refined(self, factor: int = 2) -> "TimeGrid":
        return TimeGrid(self.t0, self.dt / factor, self.n_steps * factor)


@dataclass(frozen=True)
class OUParams:
    """Mean-reversion rate and volatility of the O-U process."""

    beta: float
    gamma: float

    def __post_init__(self):
        if not self.beta > 0:
            raise NoiseError(f"beta must be > 0, got {self.beta}")
        if not self.gamma > 0:
            raise NoiseError(f"gamma must be > 0, got {self.gamma}")

    @property
    def stationary_std(self) -> float:
        return self.gamma / np.sqrt(2.0 * self.beta)


@dataclass(frozen=True)
class NoisePath:
    """One realization of a driving process on a uniform grid."""

    grid: TimeGrid
    values: np.ndarray
    kind: str
    seed: int
    params: OUParams | None = field(default=None)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.shape != (self.grid.n_steps + 1,):
            raise NoiseError(
                f"path needs {self.grid.n_steps + 1} values, got {values.shape}"
            )
        object.__setattr__(self, "values", values)

    def at(self, t) -> np.ndarray:
        """Linear interpolation of the path at arbitrary times inside the grid."""
        return np.interp(t, self.grid.times(), self.values)

    def increments(self) -> np.ndarray:
        return np.diff(self.values)


@dataclass(frozen=True)
class ErgodicStats:
    time_avg: float
    time_avg_abs: float
    sup_abs: float
    final_over_t: float


@dataclass(frozen=True)
class BandReport:
    """Per-path verification that the dilution stays inside (b1, b2)."""

    fraction_inside: float
    n_violations: int
    first_violation_time: float | None

    @property
    def certified(self) -> bool:
        return self.n_violations == 0


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=np.uint64(seed)))


def sample_wiener_path(seed: int, grid: TimeGrid) -> NoisePath:
    """Standard Wiener path: starts at 0, independent N(0, dt) increments."""
    rng = _rng(seed)
    dw = rng.standard_normal(grid.n_steps) * np.sqrt(grid.dt)
    values = np.empty(grid.n_steps + 1)
    values[0] = 0.0
    np.cumsum(dw, out=values[1:])
    return NoisePath(grid=grid, values=values, kind=WIENER, seed=seed)


def sample_ou_path(params: OUParams, seed: int, grid: TimeGrid) -> NoisePath:
    """Stationary O-U path via the exact AR(1) recursion.

    z0 ~ N(0, gamma^2 / (2 beta)) and
    z_{k+1} = z_k e^{-beta dt} + gamma sqrt((1 - e^{-2 beta dt}) / (2 beta)) xi_k.
    """
    rng = _rng(seed)
    phi = np.exp(-params.beta * grid.dt)
    sd_stat = params.stationary_std
    sd_step = sd_stat * np.sqrt(1.0 - phi * phi)
    xi = rng.standard_normal(grid.n_steps + 1)
    z0 = sd_stat * xi[0]
    # z_k = phi z_{k-1} + sd_step xi_k is a linear recursion; lfilter runs it in C.
    tail, _ = lfilter([1.0], [1.0, -phi], sd_step * xi[1:], zi=np.array([phi * z0]))
    values = np.concatenate(([z0], tail))
    return NoisePath(grid=grid, values=values, kind=ORNSTEIN_UHLENBECK, seed=seed,
                     params=params)


def ergodic_stats(path: NoisePath) -> ErgodicStats:
    """Trapezoidal time averages and sup over the full grid."""
    z = path.values
    span = path.grid.span
    time_avg = float(np.trapezoid(z, dx=path.grid.dt) / span)
    time_avg_abs = float(np.trapezoid(np.abs(z), dx=path.grid.dt) / span)
    return ErgodicStats(
        time_avg=time_avg,
        time_avg_abs=time_avg_abs,
        sup_abs=float(np.max(np.abs(z))),
        final_over_t=float(abs(z[-1]) / span),
    )


def perturbed_dilution(path: NoisePath, D: float, alpha: float) -> NoisePath:
    """Pointwise dilution input D + alpha * z(t) driven by the given path."""
    if alpha < 0:
        raise NoiseError(f"alpha must be >= 0, got {alpha}")
    if not D > 0:
        raise NoiseError(f"D must be > 0, got {D}")
    return replace(path, values=D + alpha * path.values, kind=DILUTION)


def check_dilution_band(dilution: NoisePath, b1: float, b2: float) -> BandReport:
    """Exact count of grid points of the dilution path outside (b1, b2)."""
    if not 0 < b1 < b2:
        raise NoiseError(f"need 0 < b1 < b2, got b1={b1}, b2={b2}")
    v = dilution.values
    outside = (v <= b1) | (v >= b2)
    n_bad = int(np.count_nonzero(outside))
    first = None
    if n_bad:
        k = int(np.argmax(outside))
        first = float(dilution.grid.t0 + k * dilution.grid.dt)
    return BandReport(
        fraction_inside=1.0 - n_bad / v.size,
        n_violations=n_bad,
        first_violation_time=first,
    )
