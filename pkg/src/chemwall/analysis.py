"""Closed-form long-run bounds, regime classification and pathwise checks.

Everything here is deterministic: the bounds depend only on the parameters and
on the assumed dilution band (b1, b2), never on a noise realization.  Pathwise
checks verify that simulated trajectories actually respect those bounds, and
carry a ``band_certified`` flag: a Gaussian driving process is unbounded, so
the band assumption is verified per path rather than taken on faith.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, asdict, field

import numpy as np

from .models import ChemostatParams
from .noise import NoisePath, OUParams, check_dilution_band
from .integrators import (
    Trajectory,
    COORDS_BIOMASS_PROPORTION,
    COORDS_ORIGINAL,
)

EXTINCTION = "extinction"
PERSISTENCE = "persistence"
INDETERMINATE = "indeterminate"

# 99.9% two-sided quantile of the standard normal, used by the auto band.
_Q999 = 3.29


class BandError(ValueError):
    """Invalid dilution band for the requested computation."""


@dataclass(frozen=True)
class DilutionBand:
    b1: float
    b2: float

    def __post_init__(self):
        if not 0 < self.b1 < self.b2:
            raise BandError(f"need 0 < b1 < b2, got ({self.b1}, {self.b2})")

    def brackets(self, D: float) -> bool:
        return self.b1 < D < self.b2


def auto_band(p: ChemostatParams, noise: OUParams | None) -> DilutionBand:
    """Default band D +/- alpha*q with q the 99.9% quantile of |z| at stationarity.

    Degenerates to a hair-width band around D when alpha = 0 or no noise is
    configured.
    """
    if noise is None or p.alpha == 0.0:
        half = max(1e-9, 1e-9 * p.D)
    else:
        half = p.alpha * _Q999 * noise.stationary_std
    if half >= p.D:
        raise BandError(
            f"auto band (D +/- {half:.4g}) leaves the positive axis; "
            "pass an explicit band")
    return DilutionBand(p.D - half, p.D + half)


@dataclass(frozen=True)
class BoundsReport:
    """All closed-form long-run constants for one (params, band) pair."""

    vartheta: float          # decay rate min(b1, nu) of the comparison variable
    p_radius: float          # attracting radius for p = s + (m/c)(x1+x2)
    xi_l: float              # lower limit of the biomass proportion
    xi_u: float              # upper limit of the biomass proportion
    z_l: float               # lower limit of z = c*s + m*x
    z_u: float               # upper limit of z = c*s + m*x
    x_tilde: float           # total-biomass floor (meaningful under persistence)
    s_tilde: float           # substrate floor (meaningful under persistence)
    x1_floor: float          # xi_l * x_tilde
    x2_floor: float          # (1 - xi_u) * x_tilde
    sharpening_n: int | None = None
    x_tilde_n: float | None = None
    s_tilde_n: float | None = None
    params: ChemostatParams | None = field(default=None, compare=False)
    band: DilutionBand | None = field(default=None, compare=False)

    def to_dict(self) -> dict:
        d = asdict(self)
        d.pop("params")
        band = d.pop("band")
        if band is not None:
            d["b1"], d["b2"] = band["b1"], band["b2"]
        return d

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


@dataclass(frozen=True)
class RegimeClassification:
    verdict: str
    extinction_lhs: float    # nu + D * xi_l
    extinction_rhs: float    # c
    persistence_lhs: float   # nu + b2
    persistence_rhs: float   # z_l / (a + z_u / c)

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


@dataclass(frozen=True)
class EnvelopeReport:
    band_certified: bool
    p_bound_ok: bool
    p_max_violation: float
    xi_envelope_ok: bool
    xi_max_violation: float
    xi_band_entry_time: float | None
    z_band_entry_time: float | None
    floors_ok_after: float | None


@dataclass(frozen=True)
class PositivityReport:
    min_s: float
    min_state: float
    negative_intervals: tuple
    s_above_neg_a: bool


def attractor_bounds(p: ChemostatParams, band: DilutionBand,
                     sharpening_n: int | None = None) -> BoundsReport:
    """Evaluate every closed-form constant for the random model.

    Raises :class:`BandError` when b2 + nu - (c*b*nu/m)*xi_l <= 0, in which
    case the z lower bound is not defined.
    """
    b1, b2 = band.b1, band.b2
    vartheta = min(b1, p.nu)
    xi_l = p.r2 / (b2 + p.r1 + p.r2)
    xi_u = (b1 + p.r2) / (b1 + p.r1 + p.r2)
    denom = b2 + p.nu - (p.c * p.b * p.nu / p.m) * xi_l
    if denom <= 0:
        raise BandError(
            f"b2 + nu - (c*b*nu/m)*xi_l = {denom:.4g} <= 0; z lower bound undefined")
    z_l = p.c * p.s_in * b1 / denom
    z_u = p.c * p.s_in * b2 / (xi_l * b1)
    x_tilde = (z_l - (p.nu + b2) * (p.a + z_u / p.c)) / (p.m + p.c)
    s_tilde = b1 * p.s_in / (b2 + 2.0 * z_u / p.a)
    x_tilde_n = s_tilde_n = None
    if sharpening_n is not None:
        n = int(sharpening_n)
        if n < 1:
            raise ValueError(f"sharpening_n must be >= 1, got {sharpening_n}")
        x_tilde_n = (z_l - (p.nu + b2) * (p.a + z_u / p.c)) / (p.m + p.c / n)
        s_tilde_n = b1 * p.s_in / (b2 + (z_u / p.a) * (1.0 + 1.0 / n))
    return BoundsReport(
        vartheta=vartheta,
        p_radius=p.s_in * b2 / vartheta,
        xi_l=xi_l, xi_u=xi_u, z_l=z_l, z_u=z_u,
        x_tilde=x_tilde, s_tilde=s_tilde,
        x1_floor=xi_l * x_tilde, x2_floor=(1.0 - xi_u) * x_tilde,
        sharpening_n=sharpening_n, x_tilde_n=x_tilde_n, s_tilde_n=s_tilde_n,
        params=p, band=band,
    )


def classify_regime(p: ChemostatParams, band: DilutionBand) -> RegimeClassification:
    """Apply the two sufficient inequalities; neither holding is a valid outcome."""
    bounds = attractor_bounds(p, band)
    ext_lhs = p.nu + p.D * bounds.xi_l
    per_lhs = p.nu + band.b2
    per_rhs = bounds.z_l / (p.a + bounds.z_u / p.c)
    if ext_lhs > p.c:
        verdict = EXTINCTION
    elif per_lhs < per_rhs:
        verdict = PERSISTENCE
    else:
        verdict = INDETERMINATE
    return RegimeClassification(
        verdict=verdict,
        extinction_lhs=ext_lhs, extinction_rhs=p.c,
        persistence_lhs=per_lhs, persistence_rhs=per_rhs,
    )


def p_envelope(t: np.ndarray, p0: float, p: ChemostatParams,
               band: DilutionBand) -> np.ndarray:
    """Exponential envelope of the comparison variable p = s + (m/c)(x1+x2)."""
    vartheta = min(band.b1, p.nu)
    decay = np.exp(-vartheta * t)
    return p0 * decay + (p.s_in * band.b2 / vartheta) * (1.0 - decay)


def xi_envelopes(t: np.ndarray, xi0: float, p: ChemostatParams,
                 band: DilutionBand) -> tuple[np.ndarray, np.ndarray]:
    """Lower and upper exponential envelopes of the proportion dynamics."""
    rl = band.b2 + p.r1 + p.r2
    ru = band.b1 + p.r1 + p.r2
    xi_l = p.r2 / rl
    xi_u = (band.b1 + p.r2) / ru
    lower = xi0 * np.exp(-rl * t) + xi_l * (1.0 - np.exp(-rl * t))
    upper = xi0 * np.exp(-ru * t) + xi_u * (1.0 - np.exp(-ru * t))
    return lower, upper


def extinction_decay_envelope(traj: Trajectory, bounds: BoundsReport,
                              ou_path: NoisePath) -> np.ndarray:
    """Pathwise decay bound for the total biomass.

    x(t) <= x(0) * exp(-(nu + D*xi_l - c) t - alpha * xi_l * int_0^t z ds),
    with the integral of the stored noise path evaluated by the trapezoid
    rule, keeping the bound sharp along the realization.
    """
    p = bounds.params
    t = traj.times()
    z = ou_path.at(t)
    integral = np.concatenate(
        ([0.0], np.cumsum(0.5 * (z[1:] + z[:-1]) * np.diff(t))))
    x0 = _series_x(traj)[0]
    rate = p.nu + p.D * bounds.xi_l - p.c
    return x0 * np.exp(-rate * (t - t[0]) - p.alpha * bounds.xi_l * integral)


def _series_sxi(traj: Trajectory):
    """Extract (s, total biomass, proportion) series from either coordinate set."""
    if traj.coords == COORDS_ORIGINAL:
        s = traj.component(0)
        x1, x2 = traj.component(1), traj.component(2)
        x = x1 + x2
        with np.errstate(invalid="ignore", divide="ignore"):
            xi = np.where(x > 0, x1 / np.where(x > 0, x, 1.0), np.nan)
        return s, x, xi
    if traj.coords == COORDS_BIOMASS_PROPORTION:
        return traj.component(0), traj.component(1), traj.component(2)
    raise ValueError(f"unsupported coordinates {traj.coords!r}")


def _series_x(traj: Trajectory) -> np.ndarray:
    return _series_sxi(traj)[1]


def _settled_from(ok: np.ndarray, t: np.ndarray) -> float | None:
    """First time from which a pointwise condition holds for the rest of the run."""
    if not ok[-1]:
        return None
    bad = np.flatnonzero(~ok)
    idx = 0 if bad.size == 0 else int(bad[-1]) + 1
    return float(t[idx])


def check_envelopes(traj: Trajectory, bounds: BoundsReport,
                    dilution: NoisePath, eps: float = 1e-6,
                    entry_rtol: float = 1e-3) -> EnvelopeReport:
    """Verify the pathwise envelopes and band-entry statements on one trajectory.

    ``eps`` is the absolute tolerance of the exponential-envelope checks;
    ``entry_rtol`` the relative widening used for asymptotic band entry.
    The report is only meaningful when ``band_certified`` is true.
    """
    p, band = bounds.params, bounds.band
    if p is None or band is None:
        raise ValueError("bounds report does not carry its params/band")
    certified = check_dilution_band(dilution, band.b1, band.b2).certified
    t = traj.times()
    tau = t - t[0]
    s, x, xi = _series_sxi(traj)

    pv = s + (p.m / p.c) * x
    env = p_envelope(tau, pv[0], p, band)
    p_viol = float(np.max(pv - env))

    lower, upper = xi_envelopes(tau, xi[0], p, band)
    xi_viol = float(np.max(np.maximum(lower - xi, xi - upper)))

    xi_ok = (xi >= bounds.xi_l - entry_rtol) & (xi <= bounds.xi_u + entry_rtol)
    xi_entry = _settled_from(xi_ok, t)

    z = p.c * s + p.m * x
    z_lo = bounds.z_l * (1.0 - entry_rtol)
    z_hi = bounds.z_u * (1.0 + entry_rtol)
    z_entry = _settled_from((z >= z_lo) & (z <= z_hi), t)

    floors = (x > bounds.x_tilde) & (s > bounds.s_tilde)
    floors_after = _settled_from(floors, t)

    return EnvelopeReport(
        band_certified=certified,
        p_bound_ok=p_viol <= eps,
        p_max_violation=p_viol,
        xi_envelope_ok=xi_viol <= eps,
        xi_max_violation=xi_viol,
        xi_band_entry_time=xi_entry,
        z_band_entry_time=z_entry,
        floors_ok_after=floors_after,
    )


def positivity_diagnostics(traj: Trajectory, p: ChemostatParams) -> PositivityReport:
    """Zero crossings and the hard s > -a floor of one trajectory.

    For random-model (O-U) trajectories the report must be trivially clean;
    Wiener-model substrate may go negative but never reaches -a.
    """
    if traj.coords != COORDS_ORIGINAL:
        raise ValueError("positivity diagnostics need original coordinates")
    t = traj.times()
    s = traj.component(0)
    neg = s < 0.0
    intervals = []
    edges = np.flatnonzero(np.diff(neg.astype(int)))
    starts = [0] if neg[0] else []
    starts += [int(i) + 1 for i in edges if not neg[i] and neg[i + 1]]
    ends = [int(i) for i in edges if neg[i] and not neg[i + 1]]
    for i, start in enumerate(starts):
        end = ends[i] if i < len(ends) else len(s) - 1
        intervals.append((float(t[start]), float(t[end])))
    return PositivityReport(
        min_s=float(np.min(s)),
        min_state=float(np.min(traj.states)),
        negative_intervals=tuple(intervals),
        s_above_neg_a=bool(np.min(s) > -p.a),
    )


def sigma_positivity_condition(xi, z, p: ChemostatParams) -> np.ndarray:
    """Pointwise condition under which the transformed substrate stays positive.

    e^{alpha z} <= (b*nu*xi*(a+s_in)/(m*s_in) - xi) / (1 - xi); returns a
    boolean array (False wherever the condition fails or xi = 1).
    """
    xi = np.asarray(xi, dtype=float)
    z = np.asarray(z, dtype=float)
    lhs = np.exp(p.alpha * z)
    num = p.b * p.nu * xi * (p.a + p.s_in) / (p.m * p.s_in) - xi
    with np.errstate(divide="ignore", invalid="ignore"):
        rhs = num / (1.0 - xi)
    return np.where(xi < 1.0, lhs <= rhs, False)
