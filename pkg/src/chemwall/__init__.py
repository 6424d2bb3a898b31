"""Pathwise simulation and analysis of chemostat models with wall growth
under bounded Ornstein-Uhlenbeck or Wiener dilution noise."""

from .noise import (
    TimeGrid,
    OUParams,
    NoisePath,
    ErgodicStats,
    BandReport,
    sample_wiener_path,
    sample_ou_path,
    ergodic_stats,
    perturbed_dilution,
    check_dilution_band,
)
from .models import (
    ChemostatParams,
    validate_params,
    rhs_deterministic,
    rhs_random,
    rhs_random_bp,
    rhs_sigma_kappa,
    drift_diffusion_ito,
    drift_stratonovich,
    to_biomass_proportion,
    from_biomass_proportion,
    to_sigma_kappa,
    from_sigma_kappa,
)
from .integrators import (
    Trajectory,
    integrate_pathwise,
    integrate_em_ito,
    integrate_heun_stratonovich,
    em_batch,
    heun_batch,
)
from .analysis import (
    DilutionBand,
    BoundsReport,
    RegimeClassification,
    EnvelopeReport,
    attractor_bounds,
    auto_band,
    classify_regime,
    check_envelopes,
    positivity_diagnostics,
)
from .harness import (
    ScenarioConfig,
    load_config,
    preset,
    run_scenario,
    run_ensemble,
    compare_models,
    compare_from_preset,
    export_trajectory,
)

__version__ = "0.1.0"
