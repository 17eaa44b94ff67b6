"""Parameter-sweep harness: grid runs, aggregation, best-region extraction
and the distance-to-criticality metric.

Cell seeds derive from ``SeedSequence([master_seed, function_index,
omega_index, alpha_index, repetition])``, so results are bit-identical
regardless of execution order or the number of worker processes.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .benchmarks import BenchmarkFunction, suite
from .dynamics import SwarmParams
from .pso import optimize
from .stability import RATIO_EQUAL, RATIO_SOCIAL_ONLY, CriticalCurve, split_alpha

__all__ = [
    "SweepConfig",
    "CellStats",
    "SweepGrid",
    "DistanceStats",
    "run_sweep",
    "aggregate_heatmap",
    "best_region",
    "distance_to_curve",
]


def _default_omegas() -> np.ndarray:
    return np.round(np.arange(-1.1, 1.1 + 1e-9, 0.1), 10)


def _default_alphas() -> np.ndarray:
    return np.round(np.arange(0.25, 5.0 + 1e-9, 0.25), 10)


@dataclass(frozen=True)
class SweepConfig:
    """Sweep protocol: parameter grids, budget, suite and master seed.

    The production protocol records the best cost after 200, 2000 or 20000
    iterations with 100 repetitions per cell; desk-scale runs shrink both.
    ``functions=None`` resolves to the full benchmark suite at ``dim``.
    """

    omega_values: np.ndarray = field(default_factory=_default_omegas)
    alpha_values: np.ndarray = field(default_factory=_default_alphas)
    split: str = RATIO_EQUAL
    iterations: int = 2000
    repetitions: int = 100
    functions: tuple[BenchmarkFunction, ...] | None = None
    n_particles: int = 25
    dim: int = 10
    master_seed: int = 0

    def __post_init__(self):
        for name in ("omega_values", "alpha_values"):
            grid = np.asarray(getattr(self, name), dtype=float)
            if grid.size == 0:
                raise ValueError(f"{name} must be non-empty")
            if np.any(np.diff(grid) <= 0):
                raise ValueError(f"{name} must be strictly increasing")
            object.__setattr__(self, name, grid)
        if self.split not in (RATIO_EQUAL, RATIO_SOCIAL_ONLY):
            raise ValueError(f"unknown split {self.split!r}")
        if self.iterations < 0 or self.repetitions < 1:
            raise ValueError("iterations must be >= 0 and repetitions >= 1")
        if self.functions is not None:
            object.__setattr__(self, "functions", tuple(self.functions))

    def resolve_functions(self) -> tuple[BenchmarkFunction, ...]:
        if self.functions is not None:
            return self.functions
        return tuple(suite(self.dim, seed=self.master_seed))


@dataclass(frozen=True)
class CellStats:
    """Aggregated repetitions of one (function, omega, alpha) cell."""

    function: str
    omega: float
    alpha: float
    iterations: int
    mean_best_cost: float
    median_best_cost: float
    divergence_fraction: float
    repetitions: int


@dataclass(frozen=True)
class SweepGrid:
    """All cell records of one sweep, in fixed (function, omega, alpha)
    order."""

    cells: tuple[CellStats, ...]
    omega_values: np.ndarray
    alpha_values: np.ndarray
    function_labels: tuple[str, ...]

    def to_csv(self, path, metadata: dict | None = None) -> None:
        from .io import write_csv

        rows = [
            (
                c.function,
                c.omega,
                c.alpha,
                c.iterations,
                c.mean_best_cost,
                c.median_best_cost,
                c.divergence_fraction,
                c.repetitions,
            )
            for c in self.cells
        ]
        header = [
            "function",
            "omega",
            "alpha",
            "iterations",
            "mean_best_cost",
            "median_best_cost",
            "divergence_fraction",
            "repetitions",
        ]
        write_csv(path, header, rows, metadata)

    @classmethod
    def from_csv(cls, path) -> "SweepGrid":
        from .io import read_csv

        _, header, rows = read_csv(path)
        expected = [
            "function",
            "omega",
            "alpha",
            "iterations",
            "mean_best_cost",
            "median_best_cost",
            "divergence_fraction",
            "repetitions",
        ]
        if header != expected:
            raise ValueError(f"unexpected sweep header {header}")
        cells = tuple(
            CellStats(
                function=r[0],
                omega=float(r[1]),
                alpha=float(r[2]),
                iterations=int(r[3]),
                mean_best_cost=float(r[4]),
                median_best_cost=float(r[5]),
                divergence_fraction=float(r[6]),
                repetitions=int(r[7]),
            )
            for r in rows
        )
        omegas = np.array(sorted({c.omega for c in cells}))
        alphas = np.array(sorted({c.alpha for c in cells}))
        labels = tuple(dict.fromkeys(c.function for c in cells))
        return cls(cells, omegas, alphas, labels)


def _run_cell(args):
    (fn, fn_idx, omega, i_w, alpha, i_a, split, iterations, n_particles, dim, reps, master) = args
    alpha1, alpha2 = split_alpha(alpha, split)
    params = SwarmParams(
        omega=omega, alpha1=alpha1, alpha2=alpha2, n_particles=n_particles, dim=dim
    )
    best = np.empty(reps)
    diverged = 0
    for rep in range(reps):
        seed = np.random.SeedSequence([master, fn_idx, i_w, i_a, rep])
        result = optimize(fn, params, iterations, bounds=fn.domain, seed=seed)
        best[rep] = result.best_cost
        diverged += result.diverged
    return CellStats(
        function=fn.label,
        omega=omega,
        alpha=alpha,
        iterations=iterations,
        mean_best_cost=float(best.mean()),
        median_best_cost=float(np.median(best)),
        divergence_fraction=diverged / reps,
        repetitions=reps,
    )


def run_sweep(config: SweepConfig, jobs: int = 1) -> SweepGrid:
    """Run the full grid; deterministic for a fixed master seed and
    independent of ``jobs``.

    Diverged repetitions report the best cost found before divergence, so
    cell means stay finite.
    """
    functions = config.resolve_functions()
    tasks = []
    for fn_idx, fn in enumerate(functions):
        for i_w, omega in enumerate(config.omega_values):
            for i_a, alpha in enumerate(config.alpha_values):
                tasks.append(
                    (
                        fn,
                        fn_idx,
                        float(omega),
                        i_w,
                        float(alpha),
                        i_a,
                        config.split,
                        config.iterations,
                        config.n_particles,
                        config.dim,
                        config.repetitions,
                        config.master_seed,
                    )
                )
    if jobs <= 1:
        cells = [_run_cell(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            cells = list(pool.map(_run_cell, tasks, chunksize=8))
    return SweepGrid(
        cells=tuple(cells),
        omega_values=np.asarray(config.omega_values, dtype=float),
        alpha_values=np.asarray(config.alpha_values, dtype=float),
        function_labels=tuple(fn.label for fn in functions),
    )


def aggregate_heatmap(grid: SweepGrid) -> list[tuple[float, float, float]]:
    """Average cells across functions after per-function min-max
    normalisation of the log mean cost.

    Returns (omega, alpha, normalized_cost) tuples in grid order, with
    normalised cost in [0, 1] (0 = best cell of every function).
    """
    if not grid.cells:
        raise ValueError("empty sweep grid")
    acc: dict[tuple[float, float], list[float]] = {}
    for label in grid.function_labels:
        rows = [c for c in grid.cells if c.function == label]
        # floor at 1e-12: costs below that are solved to machine noise and
        # must not stretch the log scale
        logs = np.log10(np.array([c.mean_best_cost for c in rows]) + 1e-12)
        lo, hi = logs.min(), logs.max()
        norm = np.zeros_like(logs) if hi == lo else (logs - lo) / (hi - lo)
        for c, v in zip(rows, norm):
            acc.setdefault((c.omega, c.alpha), []).append(float(v))
    out = []
    for omega in grid.omega_values:
        for alpha in grid.alpha_values:
            vals = acc.get((float(omega), float(alpha)), [])
            if vals:
                out.append((float(omega), float(alpha), float(np.mean(vals))))
    return out


def heatmap_to_csv(heatmap, path, metadata: dict | None = None) -> None:
    from .io import write_csv

    write_csv(path, ["omega", "alpha", "normalized_cost"], heatmap, metadata)


def best_region(grid: SweepGrid, quantile: float = 0.1) -> list[tuple[float, float, float]]:
    """Cells whose normalised aggregate cost falls in the best quantile.

    ``quantile`` in (0, 1]; 1.0 returns every cell (documented boundary
    behaviour).  Raises on an empty grid.
    """
    if not 0.0 < quantile <= 1.0:
        raise ValueError("quantile must lie in (0, 1]")
    heatmap = aggregate_heatmap(grid)
    values = np.array([h[2] for h in heatmap])
    threshold = np.quantile(values, quantile)
    return [h for h in heatmap if h[2] <= threshold]


@dataclass(frozen=True)
class DistanceStats:
    """Summary of |alpha - alpha_critical(omega)| over a set of cells."""

    mean: float
    median: float
    max: float
    count: int
    skipped: int


def distance_to_curve(cells, curve: CriticalCurve) -> DistanceStats:
    """Distance of cells to the interpolated critical curve.

    Cells whose omega falls where the curve is unresolved (``NO_CROSSING``
    or outside the resolved range) are skipped and counted.
    """
    distances = []
    skipped = 0
    for cell in cells:
        omega, alpha = float(cell[0]), float(cell[1])
        a_c = curve.interpolate(omega)
        if math.isnan(a_c):
            skipped += 1
            continue
        distances.append(abs(alpha - a_c))
    if not distances:
        return DistanceStats(math.nan, math.nan, math.nan, 0, skipped)
    arr = np.array(distances)
    return DistanceStats(
        mean=float(arr.mean()),
        median=float(np.median(arr)),
        max=float(arr.max()),
        count=len(distances),
        skipped=skipped,
    )
