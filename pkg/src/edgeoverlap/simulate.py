"""Monte Carlo validation of the closed-form overlap moments.

For each connection probability on a grid, many graphs are generated, the
mean and population variance of per-edge overlap are computed per
realization over its defined edges, and those statistics are averaged
across realizations. Realizations with zero defined edges are counted and
excluded. Results are bit-reproducible for a fixed spec regardless of the
worker count: every realization derives its own seed from
(master_seed, p index, realization index) and lands in a preassigned slot,
so the reduction order is fixed.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import IO

import numpy as np

from .errors import DomainError
from .generators import generate_directed_er, generate_er, generate_wrg
from .metrics import overlap_arrays
from .nullmodels import Approach, NullSpec, Variant, moments

__all__ = [
    "SimulationSpec",
    "CellSummary",
    "SimulationSummary",
    "ComparisonRow",
    "realization_seed",
    "run_simulation",
    "compare_to_theory",
    "write_simulation_csv",
]

_GENERATOR = {
    Variant.UNWEIGHTED: generate_er,
    Variant.WEIGHTED: generate_wrg,
    Variant.DIRECTED: generate_directed_er,
}


@dataclass(frozen=True)
class SimulationSpec:
    variant: Variant
    n: int
    p_grid: tuple[float, ...]
    realizations: int
    master_seed: int

    def __post_init__(self):
        if self.realizations < 1:
            raise DomainError("realizations must be positive")
        for p in self.p_grid:
            if not 0.0 < p < 1.0:
                raise DomainError(f"p must lie in (0, 1), got {p}")
            if self.n * p <= 1.0:
                raise DomainError(
                    f"average degree n*p must exceed 1, got {self.n * p:g}")


@dataclass(frozen=True)
class CellSummary:
    """Ensemble statistics for one grid probability."""

    p: float
    avg_degree: float
    realizations: int
    degenerate: int
    mean_of_means: float | None
    mean_of_variances: float | None
    mean_defined_edges: float
    mean_undefined_edges: float


@dataclass(frozen=True)
class SimulationSummary:
    spec: SimulationSpec
    cells: tuple[CellSummary, ...]


@dataclass(frozen=True)
class ComparisonRow:
    """Simulated versus theoretical moments at one grid probability."""

    p: float
    avg_degree: float
    sim_mean: float | None
    sim_var: float | None
    theory_mean: float | None
    theory_var: float | None
    mean_rel_err: float | None
    var_rel_err: float | None
    theory_error: str | None = None


def realization_seed(master_seed: int, p_index: int, realization: int) -> int:
    """Stable per-realization seed; independent of execution order."""
    ss = np.random.SeedSequence(entropy=(master_seed, p_index, realization))
    return int(ss.generate_state(1, np.uint64)[0])


def _one_realization(variant: Variant, n: int, p: float, seed: int):
    g = _GENERATOR[variant](n, p, seed)
    arrays = overlap_arrays(g)
    values = arrays.defined_values
    defined = len(values)
    undefined = len(arrays.value) - defined
    if defined == 0:
        return (np.nan, np.nan, 0, undefined)
    return (float(values.mean()), float(values.var()), defined, undefined)


def run_simulation(spec: SimulationSpec, threads: int | None = None) -> SimulationSummary:
    """Run the full (p, realization) grid and aggregate per cell."""
    cells = []
    workers = threads if threads else (os.cpu_count() or 1)
    for p_index, p in enumerate(spec.p_grid):
        r = spec.realizations
        means = np.empty(r)
        variances = np.empty(r)
        defined = np.empty(r)
        undefined = np.empty(r)

        def work(k: int, _p=p, _idx=p_index):
            seed = realization_seed(spec.master_seed, _idx, k)
            return k, _one_realization(spec.variant, spec.n, _p, seed)

        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(work, range(r)))
        else:
            results = [work(k) for k in range(r)]
        for k, (m, v, d, u) in results:
            means[k], variances[k], defined[k], undefined[k] = m, v, d, u

        ok = defined > 0
        used = int(ok.sum())
        cells.append(CellSummary(
            p=p,
            avg_degree=spec.n * p,
            realizations=r,
            degenerate=r - used,
            mean_of_means=float(means[ok].mean()) if used else None,
            mean_of_variances=float(variances[ok].mean()) if used else None,
            mean_defined_edges=float(defined.mean()),
            mean_undefined_edges=float(undefined.mean()),
        ))
    return SimulationSummary(spec=spec, cells=tuple(cells))


def _theory(variant: Variant, approach: Approach, n: int, p: float):
    try:
        m = moments(NullSpec(variant=variant, approach=approach, n=n, p=p))
        return m.mean, m.variance, None
    except DomainError as exc:
        return None, None, str(exc)


def compare_to_theory(summary: SimulationSummary,
                      approach: Approach) -> tuple[ComparisonRow, ...]:
    """Per grid point: simulated and theoretical moments, relative errors.

    A theory domain error at some p yields a marked row, not a crash.
    Relative errors are signed, (simulated - theory) / theory.
    """
    spec = summary.spec
    rows = []
    for cell in summary.cells:
        t_mean, t_var, err = _theory(spec.variant, approach, spec.n, cell.p)
        mean_rel = var_rel = None
        if err is None and cell.mean_of_means is not None:
            mean_rel = (cell.mean_of_means - t_mean) / t_mean
            var_rel = (cell.mean_of_variances - t_var) / t_var
        rows.append(ComparisonRow(
            p=cell.p, avg_degree=cell.avg_degree,
            sim_mean=cell.mean_of_means, sim_var=cell.mean_of_variances,
            theory_mean=t_mean, theory_var=t_var,
            mean_rel_err=mean_rel, var_rel_err=var_rel, theory_error=err))
    return tuple(rows)


def _fmt(x) -> str:
    return "" if x is None else repr(float(x))


def write_simulation_csv(dest, summary: SimulationSummary,
                         approaches: tuple[Approach, ...] = (Approach.TAYLOR,
                                                             Approach.FIXED_DENOMINATOR)) -> None:
    """Tidy per-cell CSV with simulated and theoretical moments.

    Columns: variant,n,p,np,reps,sim_mean,sim_var,theory_mean_a1,
    theory_var_a1,theory_mean_a2,theory_var_a2. Theory cells left empty
    where the requested approach is disabled or out of domain.
    """
    spec = summary.spec
    own = isinstance(dest, (str, Path))
    fh: IO[str] = open(dest, "w", encoding="utf-8", newline="") if own else dest
    try:
        fh.write("variant,n,p,np,reps,sim_mean,sim_var,"
                 "theory_mean_a1,theory_var_a1,theory_mean_a2,theory_var_a2\n")
        for cell in summary.cells:
            fields = [spec.variant.value, str(spec.n), repr(cell.p),
                      repr(cell.avg_degree), str(cell.realizations),
                      _fmt(cell.mean_of_means), _fmt(cell.mean_of_variances)]
            for approach in (Approach.TAYLOR, Approach.FIXED_DENOMINATOR):
                if approach in approaches:
                    t_mean, t_var, _ = _theory(spec.variant, approach,
                                               spec.n, cell.p)
                    fields += [_fmt(t_mean), _fmt(t_var)]
                else:
                    fields += ["", ""]
            fh.write(",".join(fields) + "\n")
    finally:
        if own:
            fh.close()
