"""Elitist generational GA over the stack parameters.

Objective: phase matching at the target pump together with signal/idler
group-velocity matching at degeneracy.  Fitness evaluation touches the mode
solver only at the degenerate point (three wavelengths per polarization), so
the inner loop stays cheap; full joint spectra are computed for final
candidates only.

Determinism: all stochastic operators draw from a single seeded Generator in
a fixed sequential order, and fitness evaluation is pure, so identical seeds
give identical traces regardless of evaluation parallelism.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .dispersion import ModeSpec, SolverSettings, _solve_n_eff, pump_beta
from .errors import SolverError, ValidationError
from .modesolver import LayerStack

C_M_PER_S = 299792458.0
TWO_PI = 2.0 * np.pi

#: canonical gene order
GENE_NAMES = ("t_c", "t_1", "t_2", "x_c", "x_1", "x_2", "ridge_width")
#: frequency step for the group-slope differences inside the GA
GA_SLOPE_STEP_RAD_S = TWO_PI * 50e9


@dataclass(frozen=True)
class DesignSpace:
    """Box-bounded real gene vector, optionally with frozen parameters."""

    names: tuple[str, ...]
    lower: np.ndarray
    upper: np.ndarray
    frozen: dict = field(default_factory=dict)
    template: Optional[LayerStack] = None
    pump_wavelength_nm: float = 775.1

    def __post_init__(self):
        lo = np.asarray(self.lower, dtype=float)
        hi = np.asarray(self.upper, dtype=float)
        if lo.shape != hi.shape or lo.ndim != 1 or lo.size != len(self.names):
            raise ValidationError("bounds must match the gene list")
        if not np.all(np.isfinite(lo)) or not np.all(np.isfinite(hi)):
            raise ValidationError("bounds must be finite")
        if np.any(lo >= hi):
            raise ValidationError("each lower bound must sit below its upper bound")
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    @classmethod
    def centered(cls, stack: LayerStack, rel: float = 0.15,
                 freeze: Sequence[str] = ("ridge_width",),
                 pump_wavelength_nm: float = 775.1) -> "DesignSpace":
        """Bounds at +-rel around an existing stack; x capped to [0, 1]."""
        names, lo, hi, frozen = [], [], [], {}
        for name in GENE_NAMES:
            value = stack.parameter(name)
            if name in freeze:
                frozen[name] = value
                continue
            names.append(name)
            a, b = value * (1.0 - rel), value * (1.0 + rel)
            if name.startswith("x"):
                a, b = max(a, 0.0), min(b, 1.0)
            lo.append(a)
            hi.append(b)
        return cls(names=tuple(names), lower=np.array(lo), upper=np.array(hi),
                   frozen=frozen, template=stack,
                   pump_wavelength_nm=pump_wavelength_nm)

    def clip(self, genes: np.ndarray) -> np.ndarray:
        return np.minimum(np.maximum(genes, self.lower), self.upper)

    def sample(self, rng: np.random.Generator) -> np.ndarray:
        return self.lower + rng.random(self.lower.size) * (self.upper - self.lower)

    def to_stack(self, genes: np.ndarray) -> LayerStack:
        if self.template is None:
            raise ValidationError("design space has no stack template")
        stack = self.template
        for name, value in zip(self.names, genes):
            stack = stack.with_parameter(name, float(value))
        for name, value in self.frozen.items():
            stack = stack.with_parameter(name, float(value))
        return stack


@dataclass(frozen=True)
class Fitness:
    """Phase-match residual and group walk-off, scalarized for ranking."""

    phase_residual_rad_m: float
    group_mismatch_ns_m: float
    feasible: bool
    scalar: float

    @staticmethod
    def infeasible() -> "Fitness":
        return Fitness(phase_residual_rad_m=np.inf, group_mismatch_ns_m=np.inf,
                       feasible=False, scalar=np.inf)


#: scalarization weights: one phase-match fringe ~ 0.1 ns/m of walk-off
PHASE_WEIGHT = 1.0
WALKOFF_WEIGHT = 10.0


def evaluate_fitness(genes: np.ndarray, space: DesignSpace,
                     settings: Optional[SolverSettings] = None) -> Fitness:
    """Deterministic degenerate-point figure of merit for one gene vector."""
    settings = settings or SolverSettings()
    try:
        stack = space.to_stack(np.asarray(genes, dtype=float))
    except ValidationError:
        return Fitness.infeasible()
    lam_p = 1e-3 * space.pump_wavelength_nm
    omega0 = TWO_PI * C_M_PER_S / (2.0 * lam_p * 1e-6)
    try:
        bp, _ = pump_beta(stack, lam_p, settings)
        slopes = {}
        betas0 = {}
        for pol in ("TE", "TM"):
            spec = ModeSpec(pol, "tir")
            previous = None
            beta_at = {}
            for om in (omega0 - GA_SLOPE_STEP_RAD_S, omega0,
                       omega0 + GA_SLOPE_STEP_RAD_S):
                lam = TWO_PI * C_M_PER_S / om * 1e6
                n = _solve_n_eff(stack, lam, spec, settings, previous)
                previous = n
                beta_at[om] = n * om / C_M_PER_S
            slopes[pol] = (beta_at[omega0 + GA_SLOPE_STEP_RAD_S]
                           - beta_at[omega0 - GA_SLOPE_STEP_RAD_S]) \
                / (2.0 * GA_SLOPE_STEP_RAD_S) * 1e9
            betas0[pol] = beta_at[omega0]
    except SolverError:
        return Fitness.infeasible()
    dk0 = bp - betas0["TE"] - betas0["TM"]
    mismatch = abs(slopes["TE"] - slopes["TM"])
    length_m = 1e-3 * stack.length_mm
    scalar = (PHASE_WEIGHT * abs(dk0) / (TWO_PI / length_m)
              + WALKOFF_WEIGHT * mismatch)
    return Fitness(phase_residual_rad_m=abs(dk0), group_mismatch_ns_m=mismatch,
                   feasible=True, scalar=float(scalar))


@dataclass(frozen=True)
class GaConfig:
    population: int = 32
    generations: int = 40
    crossover_rate: float = 0.9
    mutation_rate: float = 0.1
    mutation_sigma_frac: float = 0.02
    tournament: int = 3
    elite: int = 2
    seed: int = 12345
    threads: int = 1
    init_retries: int = 10

    def __post_init__(self):
        if self.population < 8:
            raise ValidationError("population must be >= 8")
        if self.generations < 1:
            raise ValidationError("generations must be >= 1")
        if self.elite >= self.population:
            raise ValidationError("elite count must be below the population size")


@dataclass(frozen=True)
class GaResult:
    best_genes: np.ndarray
    best_fitness: Fitness
    trace: tuple[tuple[int, float, float], ...]   # (generation, best, mean)
    evaluations: int

    def dump_trace_csv(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("generation,best_fitness,mean_fitness\n")
            for gen, best, mean in self.trace:
                fh.write(f"{gen},{best:.9g},{mean:.9g}\n")


def run_ga(space: DesignSpace, config: GaConfig = GaConfig(),
           settings: Optional[SolverSettings] = None,
           fitness_fn: Optional[Callable[[np.ndarray], float]] = None) -> GaResult:
    """Elitist generational GA: tournament selection, blend crossover,
    per-gene Gaussian mutation.  `fitness_fn` (genes -> scalar) replaces the
    waveguide objective for benchmark problems."""
    rng = np.random.default_rng(config.seed)

    if fitness_fn is None:
        def evaluate(g):
            return evaluate_fitness(g, space, settings)
    else:
        def evaluate(g):
            return Fitness(phase_residual_rad_m=np.nan, group_mismatch_ns_m=np.nan,
                           feasible=True, scalar=float(fitness_fn(g)))

    def evaluate_all(pop):
        if config.threads > 1:
            with ThreadPoolExecutor(max_workers=config.threads) as pool:
                return list(pool.map(evaluate, pop))
        return [evaluate(g) for g in pop]

    pop = None
    for attempt in range(config.init_retries):
        candidate = [space.sample(rng) for _ in range(config.population)]
        fits = evaluate_all(candidate)
        if any(f.feasible for f in fits):
            pop = candidate
            break
    if pop is None:
        raise SolverError("no feasible design found in the initial sampling retries")

    evaluations = config.population * (attempt + 1)
    trace = []
    best_genes = None
    best_fit = Fitness.infeasible()
    n_genes = space.lower.size

    for gen in range(config.generations):
        order = sorted(range(len(pop)), key=lambda i: fits[i].scalar)
        if fits[order[0]].scalar < best_fit.scalar:
            best_fit = fits[order[0]]
            best_genes = pop[order[0]].copy()
        finite = [f.scalar for f in fits if np.isfinite(f.scalar)]
        mean = float(np.mean(finite)) if finite else np.inf
        trace.append((gen, float(best_fit.scalar), mean))
        if gen == config.generations - 1:
            break

        def tournament():
            picks = rng.integers(0, len(pop), size=config.tournament)
            winner = min(picks, key=lambda i: fits[i].scalar)
            return pop[winner]

        children = [pop[i].copy() for i in order[:config.elite]]
        while len(children) < config.population:
            p1, p2 = tournament(), tournament()
            if rng.random() < config.crossover_rate:
                u = rng.random(n_genes)
                c1 = u * p1 + (1.0 - u) * p2
                c2 = (1.0 - u) * p1 + u * p2
            else:
                c1, c2 = p1.copy(), p2.copy()
            for child in (c1, c2):
                if len(children) >= config.population:
                    break
                mask = rng.random(n_genes) < config.mutation_rate
                noise = rng.normal(0.0, 1.0, n_genes)
                sigma = config.mutation_sigma_frac * (space.upper - space.lower)
                child = space.clip(child + mask * sigma * noise)
                children.append(child)
        pop = children
        fits = evaluate_all(pop)
        evaluations += config.population

    return GaResult(best_genes=best_genes, best_fitness=best_fit,
                    trace=tuple(trace), evaluations=evaluations)
