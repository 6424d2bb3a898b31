"""Command line entry points.

Subcommands: ou-sample, simulate, ensemble, bounds, classify, compare.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace

import numpy as np

from . import harness
from .analysis import DilutionBand, attractor_bounds, classify_regime
from .noise import OUParams, TimeGrid, sample_ou_path


def _add_config_arg(p):
    p.add_argument("--config", help="scenario config file")
    p.add_argument("--preset", help="preset name instead of a config file",
                   choices=harness.PRESET_NAMES)


def _load(args) -> harness.ScenarioConfig:
    if args.config:
        cfg = harness.load_config(args.config)
    elif args.preset:
        cfg = harness.preset(args.preset)
    else:
        raise SystemExit("one of --config/--preset is required")
    return cfg


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="chemwall",
        description="Chemostat-with-wall-growth simulation and analysis")
    sub = parser.add_subparsers(dest="command", required=True)

    p_ou = sub.add_parser("ou-sample", help="emit one O-U path as CSV")
    p_ou.add_argument("--beta", type=float, required=True)
    p_ou.add_argument("--gamma", type=float, required=True)
    p_ou.add_argument("--seed", type=int, default=0)
    p_ou.add_argument("--t-end", type=float, default=10.0)
    p_ou.add_argument("--dt", type=float, default=1e-3)
    p_ou.add_argument("--out", required=True)

    p_sim = sub.add_parser("simulate", help="run one scenario")
    _add_config_arg(p_sim)
    p_sim.add_argument("--seed", type=int, default=None,
                       help="override the config seeds with a single seed")
    p_sim.add_argument("--out", default=None, help="output directory")

    p_ens = sub.add_parser("ensemble", help="run a seed ensemble")
    _add_config_arg(p_ens)
    p_ens.add_argument("--n", type=int, required=True)
    p_ens.add_argument("--master-seed", type=int, default=0)
    p_ens.add_argument("--out", default=None, help="output directory")

    p_bounds = sub.add_parser("bounds", help="closed-form long-run bounds")
    _add_config_arg(p_bounds)
    p_bounds.add_argument("--b1", type=float, default=None)
    p_bounds.add_argument("--b2", type=float, default=None)

    p_cls = sub.add_parser("classify", help="extinction/persistence verdict")
    _add_config_arg(p_cls)
    p_cls.add_argument("--b1", type=float, default=None)
    p_cls.add_argument("--b2", type=float, default=None)

    p_cmp = sub.add_parser("compare", help="deterministic vs O-U vs Wiener runs")
    p_cmp.add_argument("--config-a", help="random-model config")
    p_cmp.add_argument("--config-b", help="stochastic-model config")
    p_cmp.add_argument("--preset", choices=("fig12", "fig13"),
                       help="comparison preset instead of two configs")
    p_cmp.add_argument("--seed", type=int, default=0)
    p_cmp.add_argument("--out", required=True, help="aligned CSV path")

    args = parser.parse_args(argv)

    if args.command == "ou-sample":
        grid = TimeGrid.from_span(t_end=args.t_end, dt=args.dt)
        path = sample_ou_path(OUParams(args.beta, args.gamma), args.seed, grid)
        np.savetxt(args.out, np.column_stack([grid.times(), path.values]),
                   fmt="%.17g", delimiter=",", header="t,z", comments="")
        return 0

    if args.command == "simulate":
        cfg = _load(args)
        if args.seed is not None:
            cfg = replace(cfg, seeds=(args.seed,))
        if args.out is not None:
            cfg = replace(cfg, output_dir=args.out)
        result = harness.run_scenario(cfg)
        print(json.dumps({
            "verdict": result.classification.verdict,
            "band": [result.band.b1, result.band.b2],
            "completed": len(result.completed()),
            "failed": len(result.seed_results) - len(result.completed()),
        }, indent=2))
        return 0

    if args.command == "ensemble":
        cfg = _load(args)
        if args.out is not None:
            cfg = replace(cfg, output_dir=args.out)
        summary = harness.run_ensemble(cfg, args.n, master_seed=args.master_seed)
        print(json.dumps({
            "verdict": summary.verdict,
            "n": args.n,
            "n_failed": summary.n_failed,
            "band_certification_rate": summary.band_certification_rate,
            "envelope_pass_rate": summary.envelope_pass_rate,
        }, indent=2))
        return 0

    if args.command in ("bounds", "classify"):
        cfg = _load(args)
        if args.b1 is not None and args.b2 is not None:
            band = DilutionBand(args.b1, args.b2)
        else:
            band = harness.resolve_band(cfg)
        if args.command == "bounds":
            print(attractor_bounds(cfg.params, band).to_json(indent=2,
                                                             sort_keys=True))
        else:
            print(classify_regime(cfg.params, band).to_json(indent=2,
                                                            sort_keys=True))
        return 0

    if args.command == "compare":
        if args.preset:
            harness.compare_from_preset(args.preset, out_path=args.out,
                                        seed=args.seed)
        else:
            if not (args.config_a and args.config_b):
                raise SystemExit("compare needs --preset or both configs")
            cfg_a = harness.load_config(args.config_a)
            cfg_b = harness.load_config(args.config_b)
            harness.compare_models(cfg_a, cfg_b, out_path=args.out,
                                   seed=args.seed)
        print(f"wrote {args.out}")
        return 0

    return 1


if __name__ == "__main__":
    sys.exit(main())
