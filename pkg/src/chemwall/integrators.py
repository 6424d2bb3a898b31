"""Fixed-step time integration for the three model variants.

* ``integrate_pathwise``: classical RK4 for the random (O-U driven) ODE, with
  the noise path sampled on its own (finer) grid and linearly interpolated at
  the half-step stage times.
* ``integrate_em_ito``: Euler-Maruyama for the Ito SDE.
* ``integrate_heun_stratonovich``: stochastic Heun (predictor-corrector) for
  the Stratonovich SDE.

Every scheme is deterministic given (noise path, init, grid); there is no
adaptivity and no clamping of near-zero states.  NaN/overflow raises
:class:`BlowUpError` with the last valid time, and the stochastic schemes
treat s <= -a as a hard singularity when the Monod constant is supplied.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import models
from .noise import NoisePath, TimeGrid

COORDS_ORIGINAL = "original"
COORDS_BIOMASS_PROPORTION = "biomass-proportion"
COORDS_SIGMA_KAPPA = "sigma-kappa"

SCHEME_RK4 = "rk4-pathwise"
SCHEME_EM = "euler-maruyama"
SCHEME_HEUN = "heun-stratonovich"

_BLOWUP_LIMIT = 1e12


class BlowUpError(RuntimeError):
    """State left the finite range; dt too large or parameters invalid."""

    def __init__(self, t_last: float):
        super().__init__(f"state blew up; last valid time t = {t_last:.6g}")
        self.t_last = t_last


class SingularityError(RuntimeError):
    """A stochastic trajectory reached s <= -a."""

    def __init__(self, t: float):
        super().__init__(f"trajectory reached s <= -a at t = {t:.6g}")
        self.t = t


@dataclass(frozen=True)
class Trajectory:
    """Time-indexed states of one realization.

    ``states`` has shape (n_steps + 1, 3) for a single run, or
    (n_steps + 1, k, 3) for k initial conditions sharing one noise path.
    """

    grid: TimeGrid
    states: np.ndarray
    coords: str = COORDS_ORIGINAL
    scheme: str = SCHEME_RK4
    noise_ref: dict | None = field(default=None)

    def times(self) -> np.ndarray:
        return self.grid.times()

    def component(self, i: int) -> np.ndarray:
        return self.states[..., i]

    @property
    def final(self) -> np.ndarray:
        return self.states[-1]


def _check_finite(y: np.ndarray, t: float):
    if not np.all(np.isfinite(y)) or np.max(np.abs(y)) > _BLOWUP_LIMIT:
        raise BlowUpError(t)


def _noise_ref(noise: NoisePath) -> dict:
    ref = {"seed": noise.seed, "kind": noise.kind}
    if noise.params is not None:
        ref["beta"] = noise.params.beta
        ref["gamma"] = noise.params.gamma
    return ref


def integrate_pathwise(rhs, noise: NoisePath, init, grid: TimeGrid, params,
                       coords: str = COORDS_ORIGINAL) -> Trajectory:
    """RK4 along one noise realization.

    ``rhs(state, params, z)`` is evaluated with the noise value interpolated
    at the stage times.  The noise grid must cover the integration grid.
    """
    if noise.grid.t0 > grid.t0 + 1e-12 or noise.grid.t_end < grid.t_end - 1e-12:
        raise ValueError("noise path does not cover the integration grid")
    y = np.array(init, dtype=float)
    times = grid.times()
    z_node = noise.at(times)
    z_half = noise.at(times[:-1] + 0.5 * grid.dt)
    dt = grid.dt
    if y.shape == (3,) and rhs is models.rhs_random:
        out = _rk4_random_scalar(params, y, z_node, z_half, dt, grid.n_steps,
                                 times)
        return Trajectory(grid=grid, states=out, coords=coords,
                          scheme=SCHEME_RK4, noise_ref=_noise_ref(noise))
    if y.shape == (3,) and rhs is models.rhs_sigma_kappa:
        out = _rk4_sigma_kappa_scalar(params, y, z_node, z_half, dt,
                                      grid.n_steps, times)
        return Trajectory(grid=grid, states=out, coords=coords,
                          scheme=SCHEME_RK4, noise_ref=_noise_ref(noise))
    out = np.empty((grid.n_steps + 1,) + y.shape)
    out[0] = y
    for k in range(grid.n_steps):
        z0, zh, z1 = z_node[k], z_half[k], z_node[k + 1]
        k1 = rhs(y, params, z0)
        k2 = rhs(y + 0.5 * dt * k1, params, zh)
        k3 = rhs(y + 0.5 * dt * k2, params, zh)
        k4 = rhs(y + dt * k3, params, z1)
        y = y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        _check_finite(y, times[k])
        out[k + 1] = y
    return Trajectory(grid=grid, states=out, coords=coords, scheme=SCHEME_RK4,
                      noise_ref=_noise_ref(noise))


def _rk4_random_scalar(p, init, z_node, z_half, dt, n_steps, times):
    """Scalar-arithmetic RK4 for the random chemostat right-hand side.

    Same scheme as the generic loop; avoids per-stage numpy dispatch overhead
    for the common single-trajectory case.
    """
    s_in, D, a = p.s_in, p.D, p.a
    m, b, nu, c = p.m, p.b, p.nu, p.c
    r1, r2, alpha = p.r1, p.r2, p.alpha
    bnu = b * nu

    def f(s, x1, x2, z):
        den = a + s
        if den == 0.0:
            raise models.SingularStateError(
                "state hit s = -a; Monod term is singular")
        dil = D + alpha * z
        mu = s / den
        ds = dil * (s_in - s) - m * mu * x1 - m * mu * x2 + bnu * x1
        dx1 = -(nu + dil) * x1 + c * mu * x1 - r1 * x1 + r2 * x2
        dx2 = -nu * x2 + c * mu * x2 + r1 * x1 - r2 * x2
        return ds, dx1, dx2

    z_node = z_node.tolist()
    z_half = z_half.tolist()
    out = np.empty((n_steps + 1, 3))
    s, x1, x2 = float(init[0]), float(init[1]), float(init[2])
    out[0] = (s, x1, x2)
    half = 0.5 * dt
    sixth = dt / 6.0
    limit = _BLOWUP_LIMIT
    for k in range(n_steps):
        z0, zh, z1 = z_node[k], z_half[k], z_node[k + 1]
        a1, b1_, c1 = f(s, x1, x2, z0)
        a2, b2_, c2 = f(s + half * a1, x1 + half * b1_, x2 + half * c1, zh)
        a3, b3_, c3 = f(s + half * a2, x1 + half * b2_, x2 + half * c2, zh)
        a4, b4_, c4 = f(s + dt * a3, x1 + dt * b3_, x2 + dt * c3, z1)
        s = s + sixth * (a1 + 2.0 * a2 + 2.0 * a3 + a4)
        x1 = x1 + sixth * (b1_ + 2.0 * b2_ + 2.0 * b3_ + b4_)
        x2 = x2 + sixth * (c1 + 2.0 * c2 + 2.0 * c3 + c4)
        if not (abs(s) <= limit and abs(x1) <= limit and abs(x2) <= limit):
            raise BlowUpError(times[k])
        out[k + 1] = (s, x1, x2)
    return out


def _rk4_sigma_kappa_scalar(p, init, z_node, z_half, dt, n_steps, times):
    """Scalar-arithmetic RK4 for the exponentially rescaled Wiener model.

    Mirrors models.rhs_sigma_kappa; the exponentials of the noise values are
    hoisted out of the stage loop.
    """
    s_in, a = p.s_in, p.a
    m, b, nu, c = p.m, p.b, p.nu, p.c
    r1, r2, alpha = p.r1, p.r2, p.alpha
    d_bar = p.D + 0.5 * alpha ** 2
    bnu = b * nu

    def f(sg, k1, k2, az, em, ep):
        s = s_in + sg * em
        den = a + s
        if den == 0.0:
            raise models.SingularStateError(
                "state hit s = -a; Monod term is singular")
        mu = s / den
        dsg = -(d_bar + az) * sg - m * mu * k1 - m * mu * k2 * ep + bnu * k1
        dk1 = -(nu + d_bar + az) * k1 + c * mu * k1 - r1 * k1 + r2 * k2 * ep
        dk2 = -nu * k2 + c * mu * k2 + r1 * k1 * em - r2 * k2
        return dsg, dk1, dk2

    az_node = (alpha * np.asarray(z_node)).tolist()
    az_half = (alpha * np.asarray(z_half)).tolist()
    em_node = np.exp(-alpha * np.asarray(z_node)).tolist()
    em_half = np.exp(-alpha * np.asarray(z_half)).tolist()
    ep_node = np.exp(alpha * np.asarray(z_node)).tolist()
    ep_half = np.exp(alpha * np.asarray(z_half)).tolist()
    out = np.empty((n_steps + 1, 3))
    sg, k1, k2 = float(init[0]), float(init[1]), float(init[2])
    out[0] = (sg, k1, k2)
    half = 0.5 * dt
    sixth = dt / 6.0
    limit = _BLOWUP_LIMIT
    for k in range(n_steps):
        az0, azh, az1 = az_node[k], az_half[k], az_node[k + 1]
        em0, emh, em1 = em_node[k], em_half[k], em_node[k + 1]
        ep0, eph, ep1 = ep_node[k], ep_half[k], ep_node[k + 1]
        a1, b1_, c1 = f(sg, k1, k2, az0, em0, ep0)
        a2, b2_, c2 = f(sg + half * a1, k1 + half * b1_, k2 + half * c1,
                        azh, emh, eph)
        a3, b3_, c3 = f(sg + half * a2, k1 + half * b2_, k2 + half * c2,
                        azh, emh, eph)
        a4, b4_, c4 = f(sg + dt * a3, k1 + dt * b3_, k2 + dt * c3,
                        az1, em1, ep1)
        sg = sg + sixth * (a1 + 2.0 * a2 + 2.0 * a3 + a4)
        k1_new = k1 + sixth * (b1_ + 2.0 * b2_ + 2.0 * b3_ + b4_)
        k2 = k2 + sixth * (c1 + 2.0 * c2 + 2.0 * c3 + c4)
        k1 = k1_new
        if not (abs(sg) <= limit and abs(k1) <= limit and abs(k2) <= limit):
            raise BlowUpError(times[k])
        out[k + 1] = (sg, k1, k2)
    return out


def _as_batch(init):
    y = np.array(init, dtype=float)
    squeeze = y.ndim == 1
    if squeeze:
        y = y[None, :]
    return y, squeeze


_FAIL_NONE = 0
_FAIL_BLOWUP = 1
_FAIL_SINGULAR = 2


def _sde_batch(stepper, y: np.ndarray, dW: np.ndarray, grid: TimeGrid,
               a: float | None, keep_path: bool):
    """Advance a batch of SDE paths, freezing any path that fails.

    ``stepper(y, dw)`` returns (y_next, singular_mask) for the whole batch.
    A path that produces non-finite values, exceeds the overflow limit, or
    crosses s <= -a stops evolving; its failure kind and time are recorded so
    one diverging path never aborts the rest.
    """
    n_paths = y.shape[0]
    failed = np.zeros(n_paths, dtype=np.int8)
    fail_time = np.full(n_paths, np.nan)
    times = grid.times()
    out = np.empty((grid.n_steps + 1,) + y.shape) if keep_path else None
    if keep_path:
        out[0] = y
    for k in range(grid.n_steps):
        with np.errstate(all="ignore"):
            y_new, singular = stepper(y, dW[:, k, None])
        if a is not None:
            singular = singular | (y_new[:, 0] <= -a)
        finite = np.isfinite(y_new).all(axis=1)
        blown = ~finite | (np.abs(np.where(finite[:, None], y_new, 0.0))
                           .max(axis=1) > _BLOWUP_LIMIT)
        bad = blown | singular
        newly = bad & (failed == _FAIL_NONE)
        if newly.any():
            fail_time[newly] = times[k + 1]
            failed[newly & singular] = _FAIL_SINGULAR
            failed[newly & blown & ~singular] = _FAIL_BLOWUP
        alive = failed == _FAIL_NONE
        y = np.where(alive[:, None], y_new, y)
        if keep_path:
            out[k + 1] = y
        if not alive.any():
            if keep_path:
                out[k + 2:] = y
            break
    return (out if keep_path else y), failed, fail_time


def _em_stepper(drift_diffusion, dt, a):
    def step(y, dw):
        f, g = drift_diffusion(y)
        return y + f * dt + g * dw, np.zeros(y.shape[0], dtype=bool)
    return step


def _heun_stepper(drift_strat, diffusion, dt, a):
    def step(y, dw):
        f0 = drift_strat(y)
        g0 = diffusion(y)
        y_pred = y + f0 * dt + g0 * dw
        singular = (y_pred[:, 0] <= -a) if a is not None \
            else np.zeros(y.shape[0], dtype=bool)
        f1 = drift_strat(y_pred)
        g1 = diffusion(y_pred)
        return y + 0.5 * dt * (f0 + f1) + 0.5 * dw * (g0 + g1), singular
    return step


def _raise_on_failure(failed, fail_time):
    if failed[0] == _FAIL_SINGULAR:
        raise SingularityError(float(fail_time[0]))
    if failed[0] == _FAIL_BLOWUP:
        raise BlowUpError(float(fail_time[0]))


def integrate_em_ito(drift_diffusion, wiener: NoisePath, init, grid: TimeGrid,
                     a: float | None = None) -> Trajectory:
    """Euler-Maruyama on the Ito form along one Wiener path.

    ``drift_diffusion(state) -> (drift, diffusion)``; the Wiener path must be
    sampled on the integration grid.
    """
    if wiener.grid != grid:
        raise ValueError("wiener path must be sampled on the integration grid")
    y, _ = _as_batch(init)
    dW = wiener.increments()[None, :]
    states, failed, fail_time = _sde_batch(
        _em_stepper(drift_diffusion, grid.dt, a), y, dW, grid, a,
        keep_path=True)
    _raise_on_failure(failed, fail_time)
    return Trajectory(grid=grid, states=states[:, 0, :], scheme=SCHEME_EM,
                      noise_ref=_noise_ref(wiener))


def integrate_heun_stratonovich(drift_strat, diffusion, wiener: NoisePath,
                                init, grid: TimeGrid,
                                a: float | None = None) -> Trajectory:
    """Stochastic Heun on the Stratonovich form along one Wiener path."""
    if wiener.grid != grid:
        raise ValueError("wiener path must be sampled on the integration grid")
    y, _ = _as_batch(init)
    dW = wiener.increments()[None, :]
    states, failed, fail_time = _sde_batch(
        _heun_stepper(drift_strat, diffusion, grid.dt, a), y, dW, grid, a,
        keep_path=True)
    _raise_on_failure(failed, fail_time)
    return Trajectory(grid=grid, states=states[:, 0, :], scheme=SCHEME_HEUN,
                      noise_ref=_noise_ref(wiener))


def _spread(init, n_paths):
    y, _ = _as_batch(init)
    if y.shape[0] == 1 and n_paths > 1:
        y = np.repeat(y, n_paths, axis=0)
    return y


def em_batch(drift_diffusion, init, grid: TimeGrid, dW: np.ndarray,
             a: float | None = None, keep_path: bool = False):
    """Euler-Maruyama over a whole batch of Wiener increment rows at once.

    ``dW`` has shape (n_paths, n_steps); ``init`` is one state shared by all
    paths or an (n_paths, 3) array.  Returns (states, failed, fail_time)
    where ``failed`` is 0/1/2 for ok/blow-up/singularity per path and frozen
    states mark failed paths.  With ``keep_path`` false only terminal states
    are kept.
    """
    y = _spread(init, dW.shape[0])
    return _sde_batch(_em_stepper(drift_diffusion, grid.dt, a), y, dW, grid,
                      a, keep_path=keep_path)


def heun_batch(drift_strat, diffusion, init, grid: TimeGrid, dW: np.ndarray,
               a: float | None = None, keep_path: bool = False):
    """Stochastic Heun over a whole batch; same conventions as em_batch."""
    y = _spread(init, dW.shape[0])
    return _sde_batch(_heun_stepper(drift_strat, diffusion, grid.dt, a), y,
                      dW, grid, a, keep_path=keep_path)


def integrate_euler_deterministic(rhs0, init, grid: TimeGrid) -> Trajectory:
    """Forward Euler for an unforced right-hand side ``rhs0(state)``."""
    y = np.array(init, dtype=float)
    out = np.empty((grid.n_steps + 1,) + y.shape)
    out[0] = y
    for k in range(grid.n_steps):
        y = y + rhs0(y) * grid.dt
        _check_finite(y, grid.t0 + k * grid.dt)
        out[k + 1] = y
    return Trajectory(grid=grid, states=out, scheme="euler-deterministic")


def integrate_heun_deterministic(rhs0, init, grid: TimeGrid) -> Trajectory:
    """Deterministic Heun (trapezoidal predictor-corrector)."""
    y = np.array(init, dtype=float)
    out = np.empty((grid.n_steps + 1,) + y.shape)
    out[0] = y
    for k in range(grid.n_steps):
        f0 = rhs0(y)
        y_pred = y + f0 * grid.dt
        y = y + 0.5 * grid.dt * (f0 + rhs0(y_pred))
        _check_finite(y, grid.t0 + k * grid.dt)
        out[k + 1] = y
    return Trajectory(grid=grid, states=out, scheme="heun-deterministic")
