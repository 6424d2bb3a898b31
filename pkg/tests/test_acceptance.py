"""End-to-end acceptance gate.

Each test covers one published-behavior criterion; the terminal summary
(see conftest.py) prints one PASS/FAIL line per criterion.
"""

import math
import os
from dataclasses import replace

import numpy as np
import pytest

from chemwall import harness
from chemwall.analysis import (
    BandError,
    DilutionBand,
    attractor_bounds,
    classify_regime,
    extinction_decay_envelope,
)
from chemwall.integrators import (
    COORDS_BIOMASS_PROPORTION,
    em_batch,
    heun_batch,
    integrate_em_ito,
    integrate_euler_deterministic,
    integrate_heun_deterministic,
    integrate_heun_stratonovich,
    integrate_pathwise,
)
from chemwall.models import (
    ChemostatParams,
    drift_diffusion_ito,
    drift_stratonovich,
    from_biomass_proportion,
    from_sigma_kappa,
    rhs_random,
    rhs_random_bp,
    to_biomass_proportion,
    to_sigma_kappa,
)
from chemwall.noise import (
    NoisePath,
    ORNSTEIN_UHLENBECK,
    OUParams,
    TimeGrid,
    check_dilution_band,
    ergodic_stats,
    perturbed_dilution,
    sample_ou_path,
    sample_wiener_path,
)

from oracle_bounds import oracle_constants, oracle_sharpened, oracle_verdict

PERSIST = ChemostatParams(s_in=100.0, D=1.0, a=0.1, m=10.0, b=1.0, nu=0.1,
                          c=10.0, r1=0.001, r2=1000.0, alpha=0.05)
PERSIST_BAND = DilutionBand(0.9, 1.1)


@pytest.fixture(scope="module")
def fig4_result():
    return harness.run_scenario(harness.preset("fig4", seeds=tuple(range(20))))


@pytest.fixture(scope="module")
def fig6_result():
    return harness.run_scenario(harness.preset("fig6", seeds=tuple(range(20))))


@pytest.fixture(scope="module")
def fig9_result():
    return harness.run_scenario(harness.preset("fig9", seeds=tuple(range(50))))


def test_01_ou_single_path_statistics():
    params = OUParams(beta=1.0, gamma=0.2)
    grid = TimeGrid.from_span(t_end=5000.0, dt=1e-3)
    path = sample_ou_path(params, 0, grid)
    stats = ergodic_stats(path)
    assert abs(stats.time_avg) < 0.02
    expected_abs = params.gamma * math.sqrt(1.0 / (math.pi * params.beta))
    assert abs(stats.time_avg_abs - expected_abs) / expected_abs < 0.1
    z = path.values
    phi_hat = np.corrcoef(z[:-1], z[1:])[0, 1]
    phi = math.exp(-params.beta * grid.dt)
    se = math.sqrt((1.0 - phi * phi) / (z.size - 1))
    assert abs(phi_hat - phi) < 3.0 * se


def test_02_mean_reversion_flattens_excursions():
    grid = TimeGrid.from_span(t_end=10.0, dt=1e-3)
    mean_sup = []
    for beta in (1.0, 10.0, 100.0):
        params = OUParams(beta=beta, gamma=0.2)
        sups = [ergodic_stats(sample_ou_path(params, seed, grid)).sup_abs
                for seed in range(50)]
        mean_sup.append(np.mean(sups))
    assert mean_sup[0] > mean_sup[1] > mean_sup[2]


def _certified_seeds(cfg, band, n_wanted, max_tries=40):
    """Seeds whose dilution path stays inside the band; init-independent."""
    fine = cfg.grid.refined(harness.NOISE_REFINEMENT)
    out = []
    for seed in range(max_tries):
        z = sample_ou_path(cfg.noise, seed, fine)
        dil = perturbed_dilution(z, cfg.params.D, cfg.params.alpha)
        if check_dilution_band(dil, band.b1, band.b2).certified:
            out.append(seed)
            if len(out) == n_wanted:
                return out
    raise AssertionError(f"only {len(out)} certified seeds in {max_tries}")


def test_03_positivity_from_random_initial_conditions():
    rng = np.random.Generator(np.random.Philox(key=303))
    n_checked = 0
    for name in ("fig4", "fig6"):
        cfg = harness.preset(name)
        band = harness.resolve_band(cfg)
        seeds = _certified_seeds(cfg, band, 5)
        inits = rng.uniform(0.2, 5.0, size=(10, 3))
        for init in inits:
            res = harness.run_scenario(
                replace(cfg, init=tuple(init), seeds=tuple(seeds)))
            for r in res.seed_results:
                assert r.completed, r.error
                assert r.envelope.band_certified
                assert r.positivity.min_state >= -1e-9
                n_checked += 1
    assert n_checked == 100


def test_04_absorbing_bound_holds_pathwise(fig4_result, fig6_result):
    n_certified = 0
    for res in (fig4_result, fig6_result):
        for r in res.completed():
            if not r.envelope.band_certified:
                continue
            n_certified += 1
            assert r.envelope.p_bound_ok
            assert r.envelope.p_max_violation <= 1e-6
    assert n_certified >= 10


def test_05_proportion_envelopes_and_band(fig4_result, fig6_result):
    n_certified = 0
    for res in (fig4_result, fig6_result):
        bounds = res.bounds
        for r in res.completed():
            if not r.envelope.band_certified:
                continue
            n_certified += 1
            assert r.envelope.xi_envelope_ok
            assert r.envelope.xi_max_violation <= 1e-6
            t = r.trajectory.times()
            tail = t >= t[0] + 0.8 * (t[-1] - t[0])
            x1 = r.trajectory.component(1)[tail]
            x2 = r.trajectory.component(2)[tail]
            xi = x1 / (x1 + x2)
            assert xi.min() >= bounds.xi_l - 1e-3
            assert xi.max() <= bounds.xi_u + 1e-3
    assert n_certified >= 10


def _draw_case(rng):
    u = rng.uniform(size=10)
    kw = dict(
        s_in=10.0 ** (-1.0 + 3.0 * u[0]),
        D=10.0 ** (-1.0 + 2.0 * u[1]),
        a=10.0 ** (-2.0 + 3.0 * u[2]),
        m=10.0 ** (-1.0 + 2.0 * u[3]),
        b=0.1 + 1.4 * u[4],
        nu=10.0 ** (-2.0 + 3.0 * u[5]),
        c=10.0 ** (-1.0 + 2.0 * u[6]),
        r1=10.0 ** (-3.0 + 4.0 * u[7]),
        r2=10.0 ** (-3.0 + 6.0 * u[8]),
    )
    rel = 0.05 + 0.45 * u[9]
    return kw, DilutionBand((1.0 - rel) * kw["D"], (1.0 + rel) * kw["D"])


def _check_case(kw, band):
    """Compare library bounds against the oracle; True when defined."""
    p = ChemostatParams(alpha=0.0, **kw)
    try:
        want = oracle_constants(**kw, b1=band.b1, b2=band.b2)
    except ValueError:
        want = None
    try:
        got = attractor_bounds(p, band)
    except BandError:
        got = None
    assert (want is None) == (got is None)
    if want is None:
        return False, False
    for key, val in want.items():
        assert math.isclose(getattr(got, key), val,
                            rel_tol=1e-12, abs_tol=1e-12), key
    verdict = classify_regime(p, band).verdict
    assert verdict == oracle_verdict(**kw, b1=band.b1, b2=band.b2)
    if verdict == "persistence":
        assert got.x_tilde < got.z_l / kw["m"]
        assert got.s_tilde < got.z_l / kw["c"]
        for n in (2, 10):
            sharp = attractor_bounds(p, band, sharpening_n=n)
            want_n = oracle_sharpened(**kw, b1=band.b1, b2=band.b2, n=n)
            assert math.isclose(sharp.x_tilde_n, want_n["x_tilde_n"],
                                rel_tol=1e-12, abs_tol=1e-12)
            assert math.isclose(sharp.s_tilde_n, want_n["s_tilde_n"],
                                rel_tol=1e-12, abs_tol=1e-12)
            assert sharp.x_tilde_n > got.x_tilde
            assert sharp.s_tilde_n > got.s_tilde
    return True, verdict == "persistence"


def test_06_bounds_match_independent_oracle():
    rng = np.random.Generator(np.random.Philox(key=606))
    persist_kw = {k: getattr(PERSIST, k)
                  for k in ("s_in", "D", "a", "m", "b", "nu", "c", "r1", "r2")}
    n_defined, n_persistent = _check_case(persist_kw, PERSIST_BAND)
    assert n_persistent
    n_defined = int(n_defined)
    n_persistent = 1
    while n_defined < 1000:
        kw, band = _draw_case(rng)
        defined, persistent = _check_case(kw, band)
        n_defined += defined
        n_persistent += persistent
    assert n_persistent >= 1


def test_07_persistence_and_extinction_regimes(fig4_result, fig6_result):
    assert len(fig4_result.completed()) == 20
    for r in fig4_result.completed():
        t = r.trajectory.times()
        late = t >= 10.0
        assert r.trajectory.component(1)[late].min() > 0.01
        assert r.trajectory.component(2)[late].min() > 0.01
    assert len(fig6_result.completed()) == 20
    for r in fig6_result.completed():
        final = r.trajectory.final
        assert final[1] < 1e-2 and final[2] < 1e-2
        x_total = r.trajectory.component(1) + r.trajectory.component(2)
        env = extinction_decay_envelope(r.trajectory, fig6_result.bounds,
                                        r.noise_path)
        assert np.all(x_total <= 2.0 * env + 1e-12)


def test_08_wiener_model_drawbacks(fig9_result):
    a = fig9_result.config.params.a
    done = fig9_result.completed()
    n_negative = sum(r.trajectory.component(0).min() < 0.0 for r in done)
    assert n_negative >= 25  # at least half of the 50 seeds
    for r in done:
        assert r.trajectory.component(0).min() > -a
    fig8 = harness.run_scenario(harness.preset("fig8"))
    r = fig8.seed_results[0]
    assert r.completed, r.error
    assert r.trajectory.final[1] < 1e-2 and r.trajectory.final[2] < 1e-2
    assert r.trajectory.states.min() >= 0.0


def test_09_coordinate_transform_commutation():
    cfg = harness.preset("fig4")
    grid = cfg.grid
    noise = sample_ou_path(cfg.noise, 0, grid.refined(harness.NOISE_REFINEMENT))
    direct = integrate_pathwise(rhs_random, noise, cfg.init, grid, cfg.params)
    bp = integrate_pathwise(rhs_random_bp, noise,
                            to_biomass_proportion(cfg.init), grid, cfg.params,
                            coords=COORDS_BIOMASS_PROPORTION)
    mapped = from_biomass_proportion(bp.states)
    rel = np.abs(mapped - direct.states) / np.maximum(np.abs(direct.states),
                                                      1e-12)
    assert rel.max() < 1e-6
    # exponential-rescaling round trip at every node of the trajectory
    p = cfg.params
    z = noise.at(grid.times())
    rt = from_sigma_kappa(to_sigma_kappa(direct.states, z, p.alpha, p.s_in),
                          z, p.alpha, p.s_in)
    err = np.abs(rt - direct.states) / np.maximum(np.abs(direct.states), 1.0)
    assert err.max() < 1e-12


def test_10_ito_heun_schemes_agree_in_mean():
    p = harness.preset("fig8").params
    init = harness.preset("fig8").init
    grid = TimeGrid.from_span(t_end=5.0, dt=1e-3)
    n = 10_000
    rng = np.random.Generator(np.random.Philox(key=1010))
    dW = rng.normal(0.0, np.sqrt(grid.dt), size=(n, grid.n_steps))
    em, f_em, _ = em_batch(lambda y: drift_diffusion_ito(y, p), init, grid,
                           dW, a=p.a)
    hh, f_hh, _ = heun_batch(lambda y: drift_stratonovich(y, p),
                             lambda y: drift_diffusion_ito(y, p)[1],
                             init, grid, dW, a=p.a)
    assert not f_em.any() and not f_hh.any()
    for j in (0, 1):  # substrate and planktonic biomass
        se = math.hypot(em[:, j].std(ddof=1), hh[:, j].std(ddof=1)) / math.sqrt(n)
        assert abs(em[:, j].mean() - hh[:, j].mean()) < 3.0 * se


def test_11_zero_noise_degeneration():
    # pathwise RK4: the random model with alpha = 0 rides any noise path
    # straight down to the deterministic solution
    cfg = harness.preset("fig4", t_end=5.0)
    p0 = cfg.params.with_changes(alpha=0.0)
    ou = harness.run_scenario(replace(cfg, params=p0)).seed_results[0]
    det = harness.run_scenario(
        replace(cfg, params=p0, model=harness.MODEL_DETERMINISTIC))
    diff = np.abs(ou.trajectory.states - det.seed_results[0].trajectory.states)
    assert diff.max() < 1e-8

    # Wiener model via the exponential rescaling, same collapse
    w_cfg = harness.preset("fig8", t_end=5.0)
    pw0 = w_cfg.params.with_changes(alpha=0.0)
    strat = harness.run_scenario(replace(w_cfg, params=pw0)).seed_results[0]
    fine = w_cfg.grid.refined(harness.NOISE_REFINEMENT)
    zero = NoisePath(grid=fine, values=np.zeros(fine.n_steps + 1),
                     kind=ORNSTEIN_UHLENBECK, seed=0)
    det_w = integrate_pathwise(rhs_random, zero, w_cfg.init, w_cfg.grid, pw0)
    assert np.abs(strat.trajectory.states - det_w.states).max() < 1e-8

    # Euler schemes: exact coincidence with their deterministic counterparts
    grid = TimeGrid.from_span(t_end=2.0, dt=1e-3)
    w = sample_wiener_path(0, grid)
    em = integrate_em_ito(lambda y: drift_diffusion_ito(y, pw0), w,
                          w_cfg.init, grid)
    fe = integrate_euler_deterministic(
        lambda y: drift_diffusion_ito(y, pw0)[0], w_cfg.init, grid)
    np.testing.assert_array_equal(em.states, fe.states)
    sh = integrate_heun_stratonovich(
        lambda y: drift_stratonovich(y, pw0),
        lambda y: drift_diffusion_ito(y, pw0)[1], w, w_cfg.init, grid)
    dh = integrate_heun_deterministic(
        lambda y: drift_stratonovich(y, pw0), w_cfg.init, grid)
    np.testing.assert_array_equal(sh.states, dh.states)


def test_12_ensemble_artifacts_are_bit_identical(tmp_path):
    out_a, out_b = str(tmp_path / "a"), str(tmp_path / "b")
    cfg = harness.preset("fig4", t_end=1.0)
    harness.run_ensemble(replace(cfg, output_dir=out_a), 3, master_seed=5)
    harness.run_ensemble(replace(cfg, output_dir=out_b), 3, master_seed=5)
    names = sorted(os.listdir(out_a))
    assert names == sorted(os.listdir(out_b)) and names
    for fname in names:
        with open(os.path.join(out_a, fname), "rb") as fa, \
                open(os.path.join(out_b, fname), "rb") as fb:
            assert fa.read() == fb.read(), fname
