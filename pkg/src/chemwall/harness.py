"""Scenario configuration, figure presets, ensemble execution and export.

Configs are flat ``key = value`` text files with ``#`` comments and sections
``[model]``, ``[noise]``, ``[band]``, ``[init]``, ``[grid]``, ``[output]``.
The ``preset`` key in ``[model]`` expands one of the named experiment presets
(fig4 .. fig13); any explicitly given key overrides the preset value.

Reproducibility contract: a run is a pure function of (config, seeds); the
per-member seeds of an ensemble are derived from the master seed with
``numpy.random.SeedSequence`` and never from time or OS entropy.
"""

from __future__ import annotations

import configparser
import json
import os
from dataclasses import dataclass, field, replace

import numpy as np

from . import analysis, integrators, models, noise as noise_mod
from .analysis import (
    BoundsReport,
    DilutionBand,
    EnvelopeReport,
    PositivityReport,
    RegimeClassification,
    attractor_bounds,
    auto_band,
    check_envelopes,
    classify_regime,
    positivity_diagnostics,
)
from .integrators import (
    SCHEME_EM,
    BlowUpError,
    SingularityError,
    Trajectory,
    em_batch,
    integrate_pathwise,
)
from .models import ChemostatParams, drift_diffusion_ito, rhs_random, \
    validate_params
from .noise import NoisePath, OUParams, TimeGrid, perturbed_dilution, \
    sample_ou_path, sample_wiener_path

MODEL_DETERMINISTIC = "deterministic"
MODEL_RANDOM_OU = "random-ou"
MODEL_ITO = "stochastic-ito"
MODEL_STRATONOVICH = "stochastic-stratonovich"

_MODELS = (MODEL_DETERMINISTIC, MODEL_RANDOM_OU, MODEL_ITO, MODEL_STRATONOVICH)

# Noise path resolution relative to the ODE grid for the random model.
NOISE_REFINEMENT = 2

_FLOAT_FMT = "%.17g"


class ConfigError(ValueError):
    """Malformed or inconsistent scenario configuration."""


@dataclass(frozen=True)
class ScenarioConfig:
    model: str
    params: ChemostatParams
    init: tuple[float, float, float]
    grid: TimeGrid
    noise: OUParams | None = None
    band: DilutionBand | None = None      # None -> auto band
    seeds: tuple[int, ...] = (0,)
    output_dir: str | None = None
    output_format: str = "csv"
    name: str = "scenario"
    compare_betas: tuple[float, ...] = (1.0, 2.0)

    def __post_init__(self):
        if self.model not in _MODELS:
            raise ConfigError(f"unknown model {self.model!r}; one of {_MODELS}")
        if self.model == MODEL_RANDOM_OU and self.noise is None:
            raise ConfigError("model random-ou requires a [noise] section "
                              "with beta and gamma")
        if self.model != MODEL_DETERMINISTIC and not self.seeds:
            raise ConfigError("non-deterministic models need at least one seed")
        if self.output_format not in ("csv", "json"):
            raise ConfigError(f"unknown output format {self.output_format!r}")


@dataclass(frozen=True)
class SeedResult:
    seed: int
    trajectory: Trajectory | None
    error: str | None = None
    envelope: EnvelopeReport | None = None
    positivity: PositivityReport | None = None
    noise_path: NoisePath | None = None
    dilution: NoisePath | None = None

    @property
    def completed(self) -> bool:
        return self.trajectory is not None


@dataclass(frozen=True)
class ScenarioResult:
    config: ScenarioConfig
    band: DilutionBand
    bounds: BoundsReport
    classification: RegimeClassification
    seed_results: tuple[SeedResult, ...]

    def completed(self) -> list[SeedResult]:
        return [r for r in self.seed_results if r.completed]


@dataclass(frozen=True)
class EnsembleSummary:
    config: ScenarioConfig
    master_seed: int
    seeds: tuple[int, ...]
    terminal_states: dict
    mean_series: np.ndarray
    min_series: np.ndarray
    max_series: np.ndarray
    verdict: str
    envelope_pass_rate: float | None
    band_certification_rate: float | None
    n_failed: int
    failures: dict = field(default_factory=dict)


# --------------------------------------------------------------------------
# Presets reproducing the published experiments.

def _p(**kw) -> dict:
    return kw


_FIG4_PARAMS = _p(s_in=4.0, D=2.0, a=1.6, m=2.0, b=0.5, nu=1.2, c=3.0,
                  r1=0.2, r2=0.4)
_FIG6_PARAMS = _p(s_in=4.0, D=1.5, a=1.6, m=2.0, b=1.0, nu=1.7, c=2.4,
                  r1=0.6, r2=0.4)
# The Wiener-model experiment family shares these constants; c is not restated
# for the last two figures and defaults to the value of the preceding runs.
_WIENER_BASE = _p(s_in=1.0, D=3.0, a=0.6, m=3.0, r1=0.6, r2=0.4, c=1.5)

_PRESETS: dict[str, dict] = {
    "fig4": dict(model=MODEL_RANDOM_OU, params=_p(**_FIG4_PARAMS, alpha=0.5),
                 noise=(1.0, 0.2), init=(2.5, 2.0, 2.0)),
    "fig5": dict(model=MODEL_RANDOM_OU, params=_p(**_FIG4_PARAMS, alpha=2.0),
                 noise=(4.0, 0.7), init=(2.5, 2.0, 2.0)),
    "fig6": dict(model=MODEL_RANDOM_OU, params=_p(**_FIG6_PARAMS, alpha=0.5),
                 noise=(1.0, 0.2), init=(2.5, 2.0, 2.0)),
    "fig7": dict(model=MODEL_RANDOM_OU, params=_p(**_FIG6_PARAMS, alpha=2.0),
                 noise=(4.0, 0.7), init=(2.5, 2.0, 2.0)),
    "fig8": dict(model=MODEL_STRATONOVICH,
                 params=_p(**_WIENER_BASE, b=0.5, nu=1.2, alpha=0.5),
                 init=(5.0, 2.5, 2.5)),
    "fig9": dict(model=MODEL_STRATONOVICH,
                 params=_p(**_WIENER_BASE, b=2.0, nu=0.2, alpha=1.5),
                 init=(5.0, 2.5, 2.5)),
    "fig10": dict(model=MODEL_STRATONOVICH,
                  params=_p(**_WIENER_BASE, b=2.0, nu=0.2, alpha=0.5),
                  init=(5.0, 2.5, 2.5)),
    "fig11": dict(model=MODEL_STRATONOVICH,
                  params=_p(**_WIENER_BASE, b=0.5, nu=1.2, alpha=1.5),
                  init=(5.0, 2.5, 2.5)),
    "fig12": dict(model=MODEL_RANDOM_OU, params=_p(**_FIG4_PARAMS, alpha=0.8),
                  noise=(1.0, 0.7), init=(2.5, 2.0, 2.0),
                  compare_betas=(1.0, 2.0)),
    "fig13": dict(model=MODEL_RANDOM_OU, params=_p(**_FIG6_PARAMS, alpha=1.5),
                  noise=(1.0, 0.7), init=(2.5, 2.0, 2.0),
                  compare_betas=(1.0, 2.0)),
}

PRESET_NAMES = tuple(sorted(_PRESETS))


def preset(name: str, dt: float = 1e-3, t_end: float = 20.0,
           seeds=(0,)) -> ScenarioConfig:
    """Build a ScenarioConfig for one of the published experiment presets."""
    if name not in _PRESETS:
        raise ConfigError(f"unknown preset {name!r}; one of {PRESET_NAMES}")
    spec = _PRESETS[name]
    ou = spec.get("noise")
    import warnings
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", models.AssumptionWarning)
        params = validate_params(ChemostatParams(**spec["params"]))
    return ScenarioConfig(
        model=spec["model"],
        params=params,
        noise=OUParams(*ou) if ou else None,
        init=tuple(spec["init"]),
        grid=TimeGrid.from_span(t_end=t_end, dt=dt),
        seeds=tuple(seeds),
        name=name,
        compare_betas=tuple(spec.get("compare_betas", (1.0, 2.0))),
    )


# --------------------------------------------------------------------------
# Config files.

_PARAM_KEYS = ("s_in", "D", "a", "m", "b", "nu", "c", "r1", "r2", "alpha")


def load_config(path: str) -> ScenarioConfig:
    """Parse and validate a scenario config file, filling defaults.

    Defaults: dt = 1e-3, t_end = 20, t0 = 0, auto band, seeds = (0,).
    """
    cp = configparser.ConfigParser(inline_comment_prefixes=("#",))
    with open(path) as fh:
        cp.read_file(fh, source=path)

    base: dict = {}
    sec = cp["model"] if cp.has_section("model") else {}
    if "preset" in sec:
        base = dict(_PRESETS[sec["preset"]]) if sec["preset"] in _PRESETS else None
        if base is None:
            raise ConfigError(f"unknown preset {sec['preset']!r} in {path}")

    model = sec.get("model", base.get("model") if base else None)
    if model is None:
        raise ConfigError(f"{path}: [model] must name a model or a preset")
    model = model.strip().lower()

    pdict = dict(base.get("params", {})) if base else {}
    for key in _PARAM_KEYS:
        if key in sec:
            pdict[key] = float(sec[key])
    missing = [k for k in _PARAM_KEYS[:-1] if k not in pdict]
    if missing:
        raise ConfigError(f"{path}: missing model parameters {missing}")
    pdict.setdefault("alpha", 0.0)
    params = validate_params(ChemostatParams(**pdict))

    ou = None
    if cp.has_section("noise"):
        nsec = cp["noise"]
        ou = OUParams(beta=float(nsec["beta"]), gamma=float(nsec["gamma"]))
    elif base and base.get("noise"):
        ou = OUParams(*base["noise"])

    band = None
    if cp.has_section("band"):
        bsec = cp["band"]
        if not bsec.getboolean("auto", fallback=False):
            band = DilutionBand(b1=float(bsec["b1"]), b2=float(bsec["b2"]))

    if cp.has_section("init"):
        isec = cp["init"]
        init = (float(isec["s"]), float(isec["x1"]), float(isec["x2"]))
    elif base and "init" in base:
        init = tuple(base["init"])
    else:
        raise ConfigError(f"{path}: missing [init] section")

    gsec = cp["grid"] if cp.has_section("grid") else {}
    grid = TimeGrid.from_span(
        t_end=float(gsec.get("t_end", 20.0)),
        dt=float(gsec.get("dt", 1e-3)),
        t0=float(gsec.get("t0", 0.0)),
    )

    seeds = (0,)
    if "seeds" in sec:
        seeds = tuple(int(tok) for tok in sec["seeds"].replace(",", " ").split())

    out_dir, out_fmt = None, "csv"
    if cp.has_section("output"):
        osec = cp["output"]
        out_dir = osec.get("dir", None)
        out_fmt = osec.get("format", "csv").strip().lower()

    return ScenarioConfig(
        model=model, params=params, noise=ou, band=band, init=init,
        grid=grid, seeds=seeds, output_dir=out_dir, output_format=out_fmt,
        name=sec.get("preset", os.path.splitext(os.path.basename(path))[0]),
        compare_betas=tuple(base.get("compare_betas", (1.0, 2.0))) if base
        else (1.0, 2.0),
    )


# --------------------------------------------------------------------------
# Execution.

def resolve_band(cfg: ScenarioConfig) -> DilutionBand:
    return cfg.band if cfg.band is not None else auto_band(cfg.params, cfg.noise)


def _run_one_seed(cfg: ScenarioConfig, band: DilutionBand, bounds: BoundsReport,
                  seed: int) -> SeedResult:
    p = cfg.params
    grid = cfg.grid
    try:
        if cfg.model in (MODEL_DETERMINISTIC, MODEL_RANDOM_OU):
            fine = grid.refined(NOISE_REFINEMENT)
            if cfg.model == MODEL_DETERMINISTIC:
                zpath = NoisePath(grid=fine, values=np.zeros(fine.n_steps + 1),
                                  kind=noise_mod.ORNSTEIN_UHLENBECK, seed=seed)
                p_eff = p.with_changes(alpha=0.0)
            else:
                zpath = sample_ou_path(cfg.noise, seed, fine)
                p_eff = p
            dilution = perturbed_dilution(zpath, p.D, p_eff.alpha)
            traj = integrate_pathwise(rhs_random, zpath, cfg.init, grid, p_eff)
            envelope = check_envelopes(traj, bounds, dilution)
            positivity = positivity_diagnostics(traj, p)
            return SeedResult(seed=seed, trajectory=traj, envelope=envelope,
                              positivity=positivity, noise_path=zpath,
                              dilution=dilution)
        raise ConfigError(f"unhandled model {cfg.model!r}")
    except (BlowUpError, SingularityError, models.SingularStateError) as exc:
        return SeedResult(seed=seed, trajectory=None, error=str(exc))


def _run_ito_seeds(cfg: ScenarioConfig,
                   seeds: tuple[int, ...]) -> tuple[SeedResult, ...]:
    """All Ito-sense seeds advance together as one Euler-Maruyama batch."""
    p = cfg.params
    grid = cfg.grid
    paths = [sample_wiener_path(s, grid) for s in seeds]
    dW = np.stack([w.increments() for w in paths])
    states, failed, fail_time = em_batch(
        lambda y: drift_diffusion_ito(y, p), cfg.init, grid, dW, a=p.a,
        keep_path=True)
    results = []
    for i, seed in enumerate(seeds):
        if failed[i]:
            kind = ("trajectory reached s <= -a" if failed[i] == 2
                    else "state blew up")
            results.append(SeedResult(
                seed=seed, trajectory=None,
                error=f"{kind} at t = {fail_time[i]:.6g}"))
            continue
        traj = Trajectory(grid=grid, states=states[:, i, :], scheme=SCHEME_EM,
                          noise_ref={"seed": seed, "kind": paths[i].kind})
        results.append(SeedResult(seed=seed, trajectory=traj,
                                  positivity=positivity_diagnostics(traj, p),
                                  noise_path=paths[i]))
    return tuple(results)


# The Stratonovich conversion process: unit mean reversion, unit volatility.
_CONVERSION_OU = OUParams(beta=1.0, gamma=1.0)


def _run_strat_seed(cfg: ScenarioConfig, seed: int) -> SeedResult:
    """One Stratonovich-sense seed via the exponential rescaling.

    The white noise is absorbed into an O-U value entering the coefficients,
    leaving a random system integrated pathwise with RK4.  Unlike direct SDE
    stepping, the recovered substrate keeps its s > -a barrier because no
    additive noise kick can step across the singular set.
    """
    p = cfg.params
    grid = cfg.grid
    try:
        fine = grid.refined(NOISE_REFINEMENT)
        zpath = sample_ou_path(_CONVERSION_OU, seed, fine)
        init_t = models.to_sigma_kappa(cfg.init, zpath.values[0], p.alpha,
                                       p.s_in)
        traj_t = integrate_pathwise(models.rhs_sigma_kappa, zpath, init_t,
                                    grid, p,
                                    coords=integrators.COORDS_SIGMA_KAPPA)
        z_nodes = zpath.at(grid.times())
        states = models.from_sigma_kappa(traj_t.states, z_nodes, p.alpha,
                                         p.s_in)
        crossed = states[:, 0] <= -p.a
        if crossed.any():
            raise SingularityError(float(grid.times()[np.argmax(crossed)]))
        traj = Trajectory(grid=grid, states=states, scheme=traj_t.scheme,
                          noise_ref=traj_t.noise_ref)
        return SeedResult(seed=seed, trajectory=traj,
                          positivity=positivity_diagnostics(traj, p),
                          noise_path=zpath)
    except (BlowUpError, SingularityError, models.SingularStateError) as exc:
        return SeedResult(seed=seed, trajectory=None, error=str(exc))


def _run_stochastic_seeds(cfg: ScenarioConfig,
                          seeds: tuple[int, ...]) -> tuple[SeedResult, ...]:
    if cfg.model == MODEL_ITO:
        return _run_ito_seeds(cfg, seeds)
    return tuple(_run_strat_seed(cfg, s) for s in seeds)


def run_scenario(cfg: ScenarioConfig) -> ScenarioResult:
    """Run every seed of a scenario, analyze, and optionally write outputs.

    A diverging seed is reported in its SeedResult and never aborts the rest.
    """
    band = resolve_band(cfg)
    bounds = attractor_bounds(cfg.params, band)
    classification = classify_regime(cfg.params, band)
    seeds = cfg.seeds if cfg.model != MODEL_DETERMINISTIC else cfg.seeds[:1]
    if cfg.model in (MODEL_ITO, MODEL_STRATONOVICH):
        results = _run_stochastic_seeds(cfg, seeds)
    else:
        results = tuple(_run_one_seed(cfg, band, bounds, s) for s in seeds)
    out = ScenarioResult(config=cfg, band=band, bounds=bounds,
                         classification=classification, seed_results=results)
    if cfg.output_dir is not None:
        write_scenario_outputs(out, cfg.output_dir, cfg.output_format)
    return out


def derive_seeds(master_seed: int, n: int) -> tuple[int, ...]:
    """Deterministic master-seed to member-seed split via SeedSequence."""
    state = np.random.SeedSequence(master_seed).generate_state(n, dtype=np.uint64)
    return tuple(int(s) for s in state)


def run_ensemble(cfg: ScenarioConfig, n: int, master_seed: int = 0) -> EnsembleSummary:
    """Monte-Carlo wrapper over run_scenario with derived seeds.

    Statistics are computed over completed trajectories only; failures are
    counted and reported separately.
    """
    if n < 1:
        raise ValueError(f"ensemble size must be >= 1, got {n}")
    seeds = derive_seeds(master_seed, n)
    result = run_scenario(replace(cfg, seeds=seeds, output_dir=None))
    done = result.completed()
    if done:
        stack = np.stack([r.trajectory.states for r in done])
        mean_series = stack.mean(axis=0)
        min_series = stack.min(axis=0)
        max_series = stack.max(axis=0)
    else:
        shape = (cfg.grid.n_steps + 1, 3)
        mean_series = min_series = max_series = np.full(shape, np.nan)
    env_rate = cert_rate = None
    envs = [r.envelope for r in done if r.envelope is not None]
    if envs:
        cert_rate = float(np.mean([e.band_certified for e in envs]))
        certified = [e for e in envs if e.band_certified]
        if certified:
            env_rate = float(np.mean([e.p_bound_ok and e.xi_envelope_ok
                                      for e in certified]))
    summary = EnsembleSummary(
        config=cfg, master_seed=master_seed, seeds=seeds,
        terminal_states={r.seed: tuple(map(float, r.trajectory.final))
                         for r in done},
        mean_series=mean_series, min_series=min_series, max_series=max_series,
        verdict=result.classification.verdict,
        envelope_pass_rate=env_rate, band_certification_rate=cert_rate,
        n_failed=len(seeds) - len(done),
        failures={r.seed: r.error for r in result.seed_results if not r.completed},
    )
    if cfg.output_dir is not None:
        write_ensemble_outputs(summary, cfg.output_dir)
    return summary


# --------------------------------------------------------------------------
# Export.

def export_trajectory(traj: Trajectory, path: str, fmt: str = "csv",
                      z: np.ndarray | None = None,
                      dilution: np.ndarray | None = None) -> None:
    """Write one trajectory; floats carry 17 significant digits."""
    t = traj.times()
    cols = [("t", t), ("s", traj.component(0)), ("x1", traj.component(1)),
            ("x2", traj.component(2))]
    if z is not None:
        cols.append(("z", np.asarray(z)))
    if dilution is not None:
        cols.append(("dilution", np.asarray(dilution)))
    if fmt == "csv":
        header = ",".join(name for name, _ in cols)
        data = np.column_stack([v for _, v in cols])
        np.savetxt(path, data, fmt=_FLOAT_FMT, delimiter=",", header=header,
                   comments="")
    elif fmt == "json":
        obj = {name: [float(_FLOAT_FMT % v) for v in values]
               for name, values in cols}
        obj["scheme"] = traj.scheme
        obj["coords"] = traj.coords
        with open(path, "w") as fh:
            json.dump(obj, fh)
    else:
        raise ValueError(f"unknown format {fmt!r}")


def load_trajectory_csv(path: str, grid: TimeGrid | None = None) -> Trajectory:
    """Read back a CSV written by export_trajectory."""
    data = np.loadtxt(path, delimiter=",", skiprows=1)
    t = data[:, 0]
    if grid is None:
        grid = TimeGrid(t0=float(t[0]), dt=float(t[1] - t[0]),
                        n_steps=len(t) - 1)
    return Trajectory(grid=grid, states=data[:, 1:4])


def write_scenario_outputs(result: ScenarioResult, out_dir: str,
                           fmt: str = "csv") -> None:
    os.makedirs(out_dir, exist_ok=True)
    ext = "csv" if fmt == "csv" else "json"
    for r in result.seed_results:
        if not r.completed:
            continue
        z = r.noise_path.at(r.trajectory.times()) if r.noise_path else None
        dil = r.dilution.at(r.trajectory.times()) if r.dilution else None
        export_trajectory(
            r.trajectory,
            os.path.join(out_dir, f"{result.config.name}_seed{r.seed}.{ext}"),
            fmt=fmt, z=z, dilution=dil)
    with open(os.path.join(out_dir, f"{result.config.name}_analysis.json"),
              "w") as fh:
        json.dump({
            "bounds": result.bounds.to_dict(),
            "classification": result.classification.to_dict(),
            "failures": {r.seed: r.error for r in result.seed_results
                         if not r.completed},
        }, fh, sort_keys=True, indent=2)


def write_ensemble_outputs(summary: EnsembleSummary, out_dir: str) -> None:
    os.makedirs(out_dir, exist_ok=True)
    name = summary.config.name
    t = summary.config.grid.times()
    cols = [t]
    header = ["t"]
    for label, series in (("mean", summary.mean_series),
                          ("min", summary.min_series),
                          ("max", summary.max_series)):
        for j, comp in enumerate(("s", "x1", "x2")):
            cols.append(series[:, j])
            header.append(f"{label}_{comp}")
    np.savetxt(os.path.join(out_dir, f"{name}_ensemble.csv"),
               np.column_stack(cols), fmt=_FLOAT_FMT, delimiter=",",
               header=",".join(header), comments="")
    payload = {
        "master_seed": summary.master_seed,
        "seeds": list(summary.seeds),
        "verdict": summary.verdict,
        "terminal_states": {str(k): list(v)
                            for k, v in summary.terminal_states.items()},
        "envelope_pass_rate": summary.envelope_pass_rate,
        "band_certification_rate": summary.band_certification_rate,
        "n_failed": summary.n_failed,
        "failures": {str(k): v for k, v in summary.failures.items()},
    }
    with open(os.path.join(out_dir, f"{name}_ensemble.json"), "w") as fh:
        json.dump(payload, fh, sort_keys=True, indent=2)


# --------------------------------------------------------------------------
# Model comparison (deterministic vs O-U vs Wiener on matched parameters).

def compare_models(cfg_random: ScenarioConfig, cfg_stochastic: ScenarioConfig,
                   out_path: str | None = None, seed: int = 0) -> dict:
    """Side-by-side runs: deterministic, O-U per compare beta, Wiener both senses.

    The two configs must share the biological parameters and the grid; they
    may differ in noise amplitude and model kind.
    """
    pr, ps = cfg_random.params, cfg_stochastic.params
    for key in ("s_in", "D", "a", "m", "b", "nu", "c", "r1", "r2"):
        if getattr(pr, key) != getattr(ps, key):
            raise ConfigError(f"configs differ in parameter {key}")
    if cfg_random.grid != cfg_stochastic.grid:
        raise ConfigError("configs must share the time grid")
    if cfg_random.noise is None:
        raise ConfigError("the random config needs O-U noise parameters")

    grid = cfg_random.grid
    runs: dict[str, Trajectory] = {}
    det_cfg = replace(cfg_random, model=MODEL_DETERMINISTIC, band=None,
                      output_dir=None)
    runs["det"] = run_scenario(det_cfg).seed_results[0].trajectory
    for beta in cfg_random.compare_betas:
        ou_cfg = replace(cfg_random, noise=OUParams(beta, cfg_random.noise.gamma),
                         seeds=(seed,), band=None, output_dir=None)
        label = f"ou_b{beta:g}"
        runs[label] = run_scenario(ou_cfg).seed_results[0].trajectory
    for label, model in (("wiener_strat", MODEL_STRATONOVICH),
                         ("wiener_ito", MODEL_ITO)):
        w_cfg = replace(cfg_stochastic, model=model, seeds=(seed,), band=None,
                        output_dir=None)
        runs[label] = run_scenario(w_cfg).seed_results[0].trajectory

    if out_path is not None:
        header = ["t"]
        cols = [grid.times()]
        for label, traj in runs.items():
            for j, comp in enumerate(("s", "x1", "x2")):
                header.append(f"{label}_{comp}")
                cols.append(traj.component(j))
        np.savetxt(out_path, np.column_stack(cols), fmt=_FLOAT_FMT,
                   delimiter=",", header=",".join(header), comments="")
    return runs


def compare_from_preset(name: str, out_path: str | None = None,
                        seed: int = 0, dt: float = 1e-3,
                        t_end: float = 20.0) -> dict:
    """Run the comparison experiment of a fig12/fig13 style preset."""
    cfg = preset(name, dt=dt, t_end=t_end)
    stoch = replace(cfg, model=MODEL_STRATONOVICH)
    return compare_models(cfg, stoch, out_path=out_path, seed=seed)
