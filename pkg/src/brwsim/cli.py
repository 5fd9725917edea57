"""Command-line front end: config ingestion, run orchestration, CSV emission.

Subcommands: modes, jsa, channels, rate, optimize, sensitivity.
Exit codes: 0 success, 1 config/validation error, 2 numerical/solver failure.
Config files are strict YAML (unknown keys rejected) with a schema_version
field; `--config` also accepts the name of a packaged config ("reference").
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np
import yaml

from . import spdc, wdm
from .dispersion import SolverSettings
from .errors import SolverError, ValidationError
from .modesolver import LayerStack, dump_profile_csv
from .optimizer import DesignSpace, GaConfig, evaluate_fitness, run_ga
from .pipeline import SimulationParams, evaluate_design, ridge_mode_profiles

SCHEMA_VERSION = 1

_SCHEMA = {
    "schema_version": int,
    "stack": {
        "core": {"x": float, "thickness_nm": float},
        "bilayer": [{"x": float, "thickness_nm": float}],
        "bilayers_per_side": int,
        "ridge_width_nm": float,
        "length_mm": float,
    },
    "pump": {"wavelength_nm": float, "polarization": str},
    "solver": {"lateral_contrast": float, "use_ridge": bool, "temperature_k": float},
    "grids": {
        "jsa_span_thz": float,
        "jsa_samples": int,
        "dispersion_samples": int,
        "dispersion_band_um": [float],
        "channel_substeps": int,
        "grid_refinement": int,
    },
    "channels": {"spacing_ghz": float, "width_ghz": float, "n_max": int},
    "coupling": {"chi2_pm_per_v": float, "fiber_mfd_um": float},
    "ga": {
        "population": int, "generations": int, "seed": int,
        "crossover_rate": float, "mutation_rate": float,
        "mutation_sigma_frac": float, "tournament": int, "elite": int,
        "threads": int, "rel_bounds": float, "freeze": [str],
    },
    "output_dir": str,
}


def _check_keys(data, schema, path="config"):
    """Strict recursive validation: unknown keys and scalar types rejected."""
    if isinstance(schema, dict):
        if not isinstance(data, dict):
            raise ValidationError(f"{path}: expected a mapping")
        for key in data:
            if key not in schema:
                raise ValidationError(f"{path}: unknown key {key!r}")
        for key, value in data.items():
            _check_keys(value, schema[key], f"{path}.{key}")
    elif isinstance(schema, list):
        if not isinstance(data, list):
            raise ValidationError(f"{path}: expected a list")
        for i, item in enumerate(data):
            _check_keys(item, schema[0], f"{path}[{i}]")
    else:
        if schema is float:
            if not isinstance(data, (int, float)) or isinstance(data, bool):
                raise ValidationError(f"{path}: expected a number, got {data!r}")
        elif schema is int:
            if not isinstance(data, int) or isinstance(data, bool):
                raise ValidationError(f"{path}: expected an integer, got {data!r}")
        elif schema is bool:
            if not isinstance(data, bool):
                raise ValidationError(f"{path}: expected a boolean, got {data!r}")
        elif schema is str:
            if not isinstance(data, str):
                raise ValidationError(f"{path}: expected a string, got {data!r}")


@dataclass(frozen=True)
class RunConfig:
    """Validated run description: geometry, solver knobs, grids, GA settings."""

    stack: LayerStack
    settings: SolverSettings
    params: SimulationParams
    ga: GaConfig
    ga_rel_bounds: float
    ga_freeze: tuple[str, ...]
    output_dir: str

    @classmethod
    def from_mapping(cls, data: dict) -> "RunConfig":
        _check_keys(data, _SCHEMA)
        version = data.get("schema_version")
        if version != SCHEMA_VERSION:
            raise ValidationError(f"config schema_version must be {SCHEMA_VERSION}")
        if "stack" not in data:
            raise ValidationError("config is missing the stack section")
        st = data["stack"]
        for req in ("core", "bilayer"):
            if req not in st:
                raise ValidationError(f"config.stack is missing {req!r}")
        if len(st["bilayer"]) != 2:
            raise ValidationError("config.stack.bilayer must list exactly two layers")
        stack = LayerStack.symmetric(
            core=(float(st["core"]["x"]), float(st["core"]["thickness_nm"])),
            bilayer=tuple((float(b["x"]), float(b["thickness_nm"]))
                          for b in st["bilayer"]),
            bilayers_per_side=int(st.get("bilayers_per_side", 8)),
            ridge_width_nm=float(st.get("ridge_width_nm", 1770.0)),
            length_mm=float(st.get("length_mm", 1.0)))
        so = data.get("solver", {})
        settings = SolverSettings(
            lateral_contrast=float(so.get("lateral_contrast", 0.05)),
            use_ridge=bool(so.get("use_ridge", True)),
            temperature_k=float(so.get("temperature_k", 295.0)))
        pu = data.get("pump", {})
        gr = data.get("grids", {})
        ch = data.get("channels", {})
        co = data.get("coupling", {})
        band = gr.get("dispersion_band_um", [1.36, 1.81])
        if len(band) != 2:
            raise ValidationError("grids.dispersion_band_um must hold [lo, hi]")
        params = SimulationParams(
            pump_wavelength_nm=float(pu.get("wavelength_nm", 775.1)),
            pump_polarization=str(pu.get("polarization", "TM")),
            jsa_span_thz=float(gr.get("jsa_span_thz", 25.0)),
            jsa_samples=int(gr.get("jsa_samples", 2 ** 12 + 1)),
            channel_spacing_ghz=float(ch.get("spacing_ghz", 50.0)),
            channel_width_ghz=float(ch.get("width_ghz", 50.0)),
            n_max=int(ch.get("n_max", 220)),
            channel_substeps=int(gr.get("channel_substeps", 8)),
            chi2_pm_per_v=float(co.get("chi2_pm_per_v", spdc.DEFAULT_CHI2_PM_PER_V)),
            fiber_mfd_um=float(co.get("fiber_mfd_um", 10.4)),
            dispersion_samples=int(gr.get("dispersion_samples", 121)),
            dispersion_band_um=(float(band[0]), float(band[1])),
            grid_refinement=int(gr.get("grid_refinement", 1)))
        ga_map = data.get("ga", {})
        ga = GaConfig(
            population=int(ga_map.get("population", 32)),
            generations=int(ga_map.get("generations", 24)),
            crossover_rate=float(ga_map.get("crossover_rate", 0.9)),
            mutation_rate=float(ga_map.get("mutation_rate", 0.1)),
            mutation_sigma_frac=float(ga_map.get("mutation_sigma_frac", 0.02)),
            tournament=int(ga_map.get("tournament", 3)),
            elite=int(ga_map.get("elite", 2)),
            seed=int(ga_map.get("seed", 12345)),
            threads=int(ga_map.get("threads", 1)))
        return cls(stack=stack, settings=settings, params=params, ga=ga,
                   ga_rel_bounds=float(ga_map.get("rel_bounds", 0.15)),
                   ga_freeze=tuple(ga_map.get("freeze", ["ridge_width"])),
                   output_dir=str(data.get("output_dir", "out")))

    @classmethod
    def load(cls, source: str) -> "RunConfig":
        return cls.from_mapping(_load_yaml(source))

    def to_mapping(self) -> dict:
        core, (b1, b2) = self.stack.core, self.stack.bilayer
        return {
            "schema_version": SCHEMA_VERSION,
            "stack": {
                "core": {"x": core.x, "thickness_nm": core.thickness_nm},
                "bilayer": [
                    {"x": b1.x, "thickness_nm": b1.thickness_nm},
                    {"x": b2.x, "thickness_nm": b2.thickness_nm},
                ],
                "bilayers_per_side": self.stack.bilayers_per_side,
                "ridge_width_nm": self.stack.ridge_width_nm,
                "length_mm": self.stack.length_mm,
            },
            "pump": {
                "wavelength_nm": self.params.pump_wavelength_nm,
                "polarization": self.params.pump_polarization,
            },
            "solver": {
                "lateral_contrast": self.settings.lateral_contrast,
                "use_ridge": self.settings.use_ridge,
                "temperature_k": self.settings.temperature_k,
            },
            "grids": {
                "jsa_span_thz": self.params.jsa_span_thz,
                "jsa_samples": self.params.jsa_samples,
                "dispersion_samples": self.params.dispersion_samples,
                "dispersion_band_um": list(self.params.dispersion_band_um),
                "channel_substeps": self.params.channel_substeps,
                "grid_refinement": self.params.grid_refinement,
            },
            "channels": {
                "spacing_ghz": self.params.channel_spacing_ghz,
                "width_ghz": self.params.channel_width_ghz,
                "n_max": self.params.n_max,
            },
            "coupling": {
                "chi2_pm_per_v": self.params.chi2_pm_per_v,
                "fiber_mfd_um": self.params.fiber_mfd_um,
            },
            "ga": {
                "population": self.ga.population,
                "generations": self.ga.generations,
                "seed": self.ga.seed,
                "rel_bounds": self.ga_rel_bounds,
                "freeze": list(self.ga_freeze),
            },
            "output_dir": self.output_dir,
        }


def _load_yaml(source: str) -> dict:
    path = Path(source)
    if not path.exists() and os.sep not in source and source.isidentifier():
        ref = resources.files("brwsim").joinpath(f"data/{source}.yaml")
        if ref.is_file():
            return yaml.safe_load(ref.read_text(encoding="utf-8"))
        raise ValidationError(f"no config file or packaged config named {source!r}")
    if not path.exists():
        raise ValidationError(f"config file not found: {source}")
    data = yaml.safe_load(path.read_text(encoding="utf-8"))
    if not isinstance(data, dict):
        raise ValidationError("config root must be a mapping")
    return data


# ---------------------------------------------------------------------------
# subcommands

def _fmt(x: float) -> str:
    return f"{x:.9g}"


def cmd_modes(cfg: RunConfig, out: Path) -> int:
    lam_p = 1e-3 * cfg.params.pump_wavelength_nm
    profiles = ridge_mode_profiles(cfg.stack, lam_p, 2.0 * lam_p, cfg.settings)
    core_half_um = 0.5e-3 * cfg.stack.core.thickness_nm
    b1, b2 = cfg.stack.bilayer
    inner_um = core_half_um + 1e-3 * (b1.thickness_nm + b2.thickness_nm)
    print("mode,polarization,class,wavelength_nm,n_eff_vertical,n_eff,confinement_core_1bl")
    for tag in ("pump", "signal", "idler"):
        mode, prof = profiles[tag]
        conf = mode.power_fraction(inner_um)
        print(",".join([tag, mode.polarization, mode.mode_class,
                        _fmt(1e3 * mode.wavelength_um), _fmt(mode.n_eff),
                        _fmt(prof.n_eff), _fmt(conf)]))
        dump_profile_csv(out / f"{tag}_profile_vertical.csv", mode.grid_um, mode.field)
        dump_profile_csv(out / f"{tag}_profile_lateral.csv", prof.x_um, prof.x_field)
    return 0


def cmd_jsa(cfg: RunConfig, out: Path) -> int:
    ev = evaluate_design(cfg.stack, cfg.settings, cfg.params)
    ev.jsa.dump_csv(out / "jsa.csv")
    print(f"fwhm_nm {_fmt(ev.fwhm_nm)}")
    print(f"delta_k0_rad_per_m {_fmt(ev.delta_k0)}")
    return 0


def cmd_channels(cfg: RunConfig, out: Path) -> int:
    ev = evaluate_design(cfg.stack, cfg.settings, cfg.params, with_coupling=True)
    ev.report.dump_csv(out / "channels.csv")
    for c_min, count in ((0.90, ev.channels_above_090),
                         (0.95, ev.channels_above_095),
                         (0.99, ev.channels_above_099)):
        contiguous = wdm.channels_above(ev.report, c_min).contiguous
        print(f"channels_above_{c_min:.2f} total {count} contiguous {contiguous}")
    return 0


def cmd_rate(cfg: RunConfig, out: Path) -> int:
    ev = evaluate_design(cfg.stack, cfg.settings, cfg.params, with_coupling=True)
    c = ev.coupling
    rows = [("emission_rate_per_s_mw", c.emission_rate_per_s_mw),
            ("sigma_sqrt_s_per_m", c.sigma),
            ("a_eff_um2", c.a_eff_um2),
            ("gamma_per_m", c.gamma_per_m),
            ("eta_signal", c.eta_signal),
            ("eta_idler", c.eta_idler)]
    with open(out / "rate.csv", "w", encoding="utf-8") as fh:
        fh.write("quantity,value\n")
        for name, value in rows:
            fh.write(f"{name},{_fmt(value)}\n")
    for name, value in rows:
        print(f"{name} {_fmt(value)}")
    return 0


def cmd_optimize(cfg: RunConfig, out: Path, sphere_benchmark: bool = False) -> int:
    if sphere_benchmark:
        space = DesignSpace(names=tuple(f"g{i}" for i in range(5)),
                            lower=np.full(5, -1.0), upper=np.full(5, 1.0))
        result = run_ga(space, cfg.ga,
                        fitness_fn=lambda g: float(np.sum(np.square(g))))
        result.dump_trace_csv(out / "convergence.csv")
        print(f"sphere_best_fitness {_fmt(result.best_fitness.scalar)}")
        return 0
    space = DesignSpace.centered(cfg.stack, rel=cfg.ga_rel_bounds,
                                 freeze=cfg.ga_freeze,
                                 pump_wavelength_nm=cfg.params.pump_wavelength_nm)
    result = run_ga(space, cfg.ga, settings=cfg.settings)
    result.dump_trace_csv(out / "convergence.csv")
    best_stack = space.to_stack(result.best_genes)
    best_cfg = RunConfig(stack=best_stack, settings=cfg.settings, params=cfg.params,
                         ga=cfg.ga, ga_rel_bounds=cfg.ga_rel_bounds,
                         ga_freeze=cfg.ga_freeze, output_dir=cfg.output_dir)
    with open(out / "best_design.yaml", "w", encoding="utf-8") as fh:
        yaml.safe_dump(best_cfg.to_mapping(), fh, sort_keys=False)
    fit = result.best_fitness
    print(f"best_fitness {_fmt(fit.scalar)}")
    print(f"best_phase_residual_rad_per_m {_fmt(fit.phase_residual_rad_m)}")
    print(f"best_group_mismatch_ns_per_m {_fmt(fit.group_mismatch_ns_m)}")
    return 0


def cmd_sensitivity(cfg: RunConfig, out: Path, parameter: str,
                    deltas: list[float]) -> int:
    if parameter not in ("t_c", "t_1", "t_2", "x_c", "x_1", "x_2", "ridge_width"):
        raise ValidationError(f"unknown sensitivity parameter {parameter!r}")
    rows = spdc.sensitivity_scan(cfg.stack, parameter, deltas,
                                 settings=cfg.settings, config=cfg.params)
    spdc.dump_sensitivity_csv(out / "sensitivity.csv", parameter, rows)
    print("parameter,delta,value,delta_k0_rad_per_m,center_shift_nm,fwhm_nm,channels_c90")
    for r in rows:
        print(",".join([parameter, _fmt(r.delta), _fmt(r.value),
                        _fmt(r.delta_k0_rad_m), _fmt(r.center_shift_nm),
                        _fmt(r.fwhm_nm), str(r.channels_c90)]))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="brwsim",
        description="Type-II SPDC in Bragg reflection waveguides: modes, joint "
                    "spectra, WDM entanglement metrics, design search.")
    ap.add_argument("--config", default="reference",
                    help="YAML config path or packaged config name (default: reference)")
    ap.add_argument("--out", default=None, help="output directory (default from config)")
    ap.add_argument("--seed", type=int, default=None, help="override the GA seed")
    ap.add_argument("--threads", type=int, default=None,
                    help="parallel fitness evaluations in the optimizer")
    sub = ap.add_subparsers(dest="command", required=True)
    sub.add_parser("modes", help="solve pump/signal/idler modes and dump profiles")
    sub.add_parser("jsa", help="joint spectral amplitude CSV and bandwidth")
    sub.add_parser("channels", help="per-channel entanglement report and counts")
    sub.add_parser("rate", help="coupling strength, effective area, emission rate")
    opt = sub.add_parser("optimize", help="genetic-algorithm design search")
    opt.add_argument("--sphere-benchmark", action="store_true",
                     help="run the convex benchmark objective instead of the waveguide")
    sen = sub.add_parser("sensitivity", help="fabrication-sensitivity scan")
    sen.add_argument("--parameter", required=True,
                     help="one of t_c, t_1, t_2, x_c, x_1, x_2, ridge_width")
    sen.add_argument("--deltas", required=True,
                     help="comma-separated relative perturbations, e.g. 0.1,-0.1")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig.load(args.config)
        if args.seed is not None or args.threads is not None:
            ga = GaConfig(population=cfg.ga.population, generations=cfg.ga.generations,
                          crossover_rate=cfg.ga.crossover_rate,
                          mutation_rate=cfg.ga.mutation_rate,
                          mutation_sigma_frac=cfg.ga.mutation_sigma_frac,
                          tournament=cfg.ga.tournament, elite=cfg.ga.elite,
                          seed=cfg.ga.seed if args.seed is None else args.seed,
                          threads=cfg.ga.threads if args.threads is None else args.threads)
            cfg = RunConfig(stack=cfg.stack, settings=cfg.settings, params=cfg.params,
                            ga=ga, ga_rel_bounds=cfg.ga_rel_bounds,
                            ga_freeze=cfg.ga_freeze, output_dir=cfg.output_dir)
        out = Path(args.out if args.out is not None else cfg.output_dir)
        out.mkdir(parents=True, exist_ok=True)
        if args.command == "modes":
            return cmd_modes(cfg, out)
        if args.command == "jsa":
            return cmd_jsa(cfg, out)
        if args.command == "channels":
            return cmd_channels(cfg, out)
        if args.command == "rate":
            return cmd_rate(cfg, out)
        if args.command == "optimize":
            return cmd_optimize(cfg, out, sphere_benchmark=args.sphere_benchmark)
        if args.command == "sensitivity":
            deltas = [float(tok) for tok in args.deltas.split(",") if tok.strip()]
            return cmd_sensitivity(cfg, out, args.parameter, deltas)
        raise ValidationError(f"unknown command {args.command!r}")
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SolverError as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
