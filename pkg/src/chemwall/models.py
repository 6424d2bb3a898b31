"""Parameter sets, right-hand sides and coordinate transforms.

Three variants of the wall-growth chemostat are covered:

* the deterministic model,
* the random model, where the dilution rate is D + alpha * z(t) with z an
  O-U value supplied per evaluation,
* the Wiener-driven stochastic model in Ito and Stratonovich form.

All right-hand sides are pure functions of (state, params, z) and accept
either a single state of shape (3,) or a batch with states on the last axis.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np


class ParamError(ValueError):
    """A parameter violates a hard positivity/range requirement."""


class SingularStateError(ValueError):
    """Monod denominator hit zero (s = -a); the integration is invalid."""


class ProportionUndefinedError(ValueError):
    """Biomass proportion requested at zero total biomass."""


class AssumptionWarning(UserWarning):
    """A standing modeling assumption (c <= m, b <= 1) is violated.

    Published figure parameter sets do this; runs proceed under warning.
    """


@dataclass(frozen=True)
class ChemostatParams:
    """Biological/operational constants plus the noise amplitude alpha."""

    s_in: float   # input nutrient concentration
    D: float      # dilution rate
    a: float      # Monod half-saturation constant
    m: float      # maximal consumption rate
    b: float      # recycled fraction of dead biomass
    nu: float     # collective death rate
    c: float      # growth rate
    r1: float     # wall attachment rate
    r2: float     # wall detachment rate
    alpha: float = 0.0  # noise amplitude

    def with_changes(self, **kw) -> "ChemostatParams":
        d = self.__dict__.copy()
        d.update(kw)
        return ChemostatParams(**d)


def validate_params(p: ChemostatParams) -> ChemostatParams:
    """Check ranges; hard violations raise, assumption violations warn.

    Hard errors: non-positive rates/concentrations, b <= 0, alpha < 0.
    Warnings (run proceeds): c > m and b > 1, both of which appear in
    published figure parameter sets.
    """
    positive = ["s_in", "D", "a", "m", "nu", "c", "r1", "r2"]
    for name in positive:
        v = getattr(p, name)
        if not v > 0:
            raise ParamError(f"{name} must be > 0, got {v}")
    if not p.b > 0:
        raise ParamError(f"b must be > 0, got {p.b}")
    if p.alpha < 0:
        raise ParamError(f"alpha must be >= 0, got {p.alpha}")
    if p.c > p.m:
        warnings.warn(
            f"c = {p.c} exceeds m = {p.m}; the standing assumption c <= m "
            "fails and derived bounds may not apply",
            AssumptionWarning, stacklevel=2)
    if p.b > 1:
        warnings.warn(
            f"b = {p.b} exceeds 1; the standing assumption b <= 1 fails",
            AssumptionWarning, stacklevel=2)
    return p


def _split3(state):
    state = np.asarray(state, dtype=float)
    return state[..., 0], state[..., 1], state[..., 2]


def _monod(s, a):
    den = a + s
    if np.any(den == 0.0):
        raise SingularStateError("state hit s = -a; Monod term is singular")
    return s / den


def rhs_random(state, p: ChemostatParams, z) -> np.ndarray:
    """Random model: dilution D + alpha*z with the supplied O-U value z."""
    s, x1, x2 = _split3(state)
    dil = p.D + p.alpha * np.asarray(z, dtype=float)
    mu = _monod(s, p.a)
    ds = dil * (p.s_in - s) - p.m * mu * x1 - p.m * mu * x2 + p.b * p.nu * x1
    dx1 = -(p.nu + dil) * x1 + p.c * mu * x1 - p.r1 * x1 + p.r2 * x2
    dx2 = -p.nu * x2 + p.c * mu * x2 + p.r1 * x1 - p.r2 * x2
    return np.stack(np.broadcast_arrays(ds, dx1, dx2), axis=-1)


def rhs_deterministic(state, p: ChemostatParams) -> np.ndarray:
    """Unperturbed model: the random right-hand side at z = 0, alpha ignored."""
    return rhs_random(state, p.with_changes(alpha=0.0), 0.0)


def rhs_random_bp(state, p: ChemostatParams, z) -> np.ndarray:
    """Random model in (s, total biomass x, proportion xi) coordinates.

    The xi equation is uncoupled from (s, x).
    """
    state = np.asarray(state, dtype=float)
    s, x, xi = state[..., 0], state[..., 1], state[..., 2]
    dil = p.D + p.alpha * np.asarray(z, dtype=float)
    mu = _monod(s, p.a)
    ds = dil * (p.s_in - s) - p.m * mu * x + p.b * p.nu * xi * x
    dx = -p.nu * x - dil * xi * x + p.c * mu * x
    dxi = -dil * xi * (1.0 - xi) - p.r1 * xi + p.r2 * (1.0 - xi)
    return np.stack(np.broadcast_arrays(ds, dx, dxi), axis=-1)


def drift_diffusion_ito(state, p: ChemostatParams):
    """Ito form: deterministic drift plus diffusion (a(s_in-s), -a*x1, 0)."""
    s, x1, x2 = _split3(state)
    drift = rhs_deterministic(state, p)
    zero = np.zeros_like(x2)
    diffusion = np.stack(
        np.broadcast_arrays(p.alpha * (p.s_in - s), -p.alpha * x1, zero), axis=-1)
    return drift, diffusion


def drift_stratonovich(state, p: ChemostatParams) -> np.ndarray:
    """Stratonovich drift: D replaced by D + alpha^2/2 in the s and x1 equations.

    The diffusion is shared with the Ito form.
    """
    d_bar = p.D + 0.5 * p.alpha ** 2
    return rhs_deterministic(state, p.with_changes(D=d_bar))


def rhs_sigma_kappa(state, p: ChemostatParams, z) -> np.ndarray:
    """Wiener model rewritten as a random system in (sigma, kappa1, kappa2).

    The exponential rescaling of :func:`to_sigma_kappa` removes the white
    noise: what remains is an ordinary system driven pathwise by a unit
    mean-reversion, unit-volatility O-U value z built from the same Wiener
    path, with the Stratonovich-corrected dilution D + alpha^2/2.  Solutions
    map back through :func:`from_sigma_kappa` and keep s > -a, which direct
    SDE stepping cannot guarantee.
    """
    state = np.asarray(state, dtype=float)
    sg, k1, k2 = state[..., 0], state[..., 1], state[..., 2]
    z = np.asarray(z, dtype=float)
    e_m = np.exp(-p.alpha * z)
    e_p = np.exp(p.alpha * z)
    d_bar = p.D + 0.5 * p.alpha ** 2
    mu = _monod(p.s_in + sg * e_m, p.a)
    dsg = -(d_bar + p.alpha * z) * sg - p.m * mu * k1 \
        - p.m * mu * k2 * e_p + p.b * p.nu * k1
    dk1 = -(p.nu + d_bar + p.alpha * z) * k1 + p.c * mu * k1 \
        - p.r1 * k1 + p.r2 * k2 * e_p
    dk2 = -p.nu * k2 + p.c * mu * k2 + p.r1 * k1 * e_m - p.r2 * k2
    return np.stack(np.broadcast_arrays(dsg, dk1, dk2), axis=-1)


def to_biomass_proportion(state) -> np.ndarray:
    """(s, x1, x2) -> (s, x, xi) with x = x1 + x2 and xi = x1/x."""
    s, x1, x2 = _split3(state)
    x = x1 + x2
    if np.any(x == 0.0):
        raise ProportionUndefinedError("proportion undefined at zero biomass")
    return np.stack(np.broadcast_arrays(s, x, x1 / x), axis=-1)


def from_biomass_proportion(state) -> np.ndarray:
    """(s, x, xi) -> (s, x1, x2) with x1 = xi*x, x2 = (1-xi)*x."""
    state = np.asarray(state, dtype=float)
    s, x, xi = state[..., 0], state[..., 1], state[..., 2]
    return np.stack(np.broadcast_arrays(s, xi * x, (1.0 - xi) * x), axis=-1)


def to_sigma_kappa(state, z, alpha: float, s_in: float) -> np.ndarray:
    """Exponential rescaling that turns the Stratonovich system into a random one.

    sigma = (s - s_in) e^{alpha z},  kappa1 = x1 e^{alpha z},  kappa2 = x2.
    """
    s, x1, x2 = _split3(state)
    e = np.exp(alpha * np.asarray(z, dtype=float))
    return np.stack(np.broadcast_arrays((s - s_in) * e, x1 * e, x2), axis=-1)


def from_sigma_kappa(state, z, alpha: float, s_in: float) -> np.ndarray:
    """Inverse of :func:`to_sigma_kappa`."""
    state = np.asarray(state, dtype=float)
    sigma, k1, k2 = state[..., 0], state[..., 1], state[..., 2]
    e = np.exp(-alpha * np.asarray(z, dtype=float))
    return np.stack(np.broadcast_arrays(sigma * e + s_in, k1 * e, k2), axis=-1)
