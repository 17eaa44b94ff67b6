"""Stability analysis of the randomised particle dynamics.

Estimates the top Lyapunov exponent of the random matrix product governing
one-particle motion, the stationary angular measure on the unit circle, the
escape-probability diagnostic, the critical curve where the exponent
vanishes, and the finite-time scaling experiments with distinct personal and
global best positions.

All estimators are Monte-Carlo: the orbit average of the renormalised
random product converges to the double integral over the angular measure
and the matrix set by ergodicity.  Every function takes an explicit seed
and is bit-reproducible for a fixed seed, independent of execution order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "NumericOverflowError",
    "LyapunovEstimate",
    "AngularHistogram",
    "CriticalPoint",
    "CriticalCurve",
    "EscapeStats",
    "ScalingConfig",
    "RATIO_EQUAL",
    "RATIO_SOCIAL_ONLY",
    "STATUS_OK",
    "STATUS_NO_CROSSING",
    "STATUS_UNRESOLVED",
    "split_alpha",
    "lyapunov_exponent",
    "lyapunov_pair",
    "stationary_distribution",
    "pushforward",
    "escape_probability",
    "critical_alpha",
    "critical_curve",
    "finite_time_lyapunov",
    "neutral_alpha",
    "neutral_stability_curve",
]

RATIO_EQUAL = "equal"
RATIO_SOCIAL_ONLY = "social_only"

STATUS_OK = "OK"
STATUS_NO_CROSSING = "NO_CROSSING"
STATUS_UNRESOLVED = "UNRESOLVED"

METHOD_LYAPUNOV = "LYAPUNOV_BISECTION"
METHOD_ESCAPE = "ESCAPE_EQUALITY"


class NumericOverflowError(RuntimeError):
    """Raised when a trajectory leaves the representable floating range."""

    def __init__(self, message: str, step: int | None = None):
        super().__init__(message)
        self.step = step


@dataclass(frozen=True)
class LyapunovEstimate:
    """Monte-Carlo estimate of the top Lyapunov exponent (nats per step)."""

    value: float
    std_error: float
    steps: int
    trials: int
    burn_in: int


@dataclass(frozen=True)
class AngularHistogram:
    """Histogram of the stationary angular measure on [0, 2*pi).

    The angle of a unit phase vector (x, v) is ``atan2(v, x)`` mapped to
    [0, 2*pi).  Masses sum to one.
    """

    mass: np.ndarray
    samples: int

    def __post_init__(self):
        m = np.array(self.mass, dtype=float, copy=True)
        m.setflags(write=False)
        object.__setattr__(self, "mass", m)

    @property
    def bins(self) -> int:
        return self.mass.size

    @property
    def bin_centers(self) -> np.ndarray:
        return (np.arange(self.bins) + 0.5) * (2.0 * np.pi / self.bins)

    def to_csv(self, path, metadata: dict | None = None) -> None:
        from .io import write_csv

        rows = [(c, m) for c, m in zip(self.bin_centers, self.mass)]
        write_csv(path, ["bin_center_rad", "mass"], rows, metadata)


@dataclass(frozen=True)
class CriticalPoint:
    """One resolved (or unresolved) point of a critical curve."""

    omega: float
    alpha: float
    std_error: float
    status: str = STATUS_OK


@dataclass(frozen=True)
class CriticalCurve:
    """Critical combined weight as a function of the inertia weight."""

    points: tuple[CriticalPoint, ...]
    ratio: str
    method: str

    def __post_init__(self):
        omegas = [p.omega for p in self.points]
        if any(b <= a for a, b in zip(omegas, omegas[1:])):
            raise ValueError("curve omegas must be strictly increasing")
        object.__setattr__(self, "points", tuple(self.points))

    def resolved(self) -> list[CriticalPoint]:
        return [p for p in self.points if p.status == STATUS_OK]

    def interpolate(self, omega: float) -> float:
        """Linear interpolation of alpha_critical; NaN outside the resolved
        range."""
        pts = self.resolved()
        if len(pts) < 1:
            return math.nan
        xs = np.array([p.omega for p in pts])
        ys = np.array([p.alpha for p in pts])
        if omega < xs[0] or omega > xs[-1]:
            return math.nan
        return float(np.interp(omega, xs, ys))

    def to_csv(self, path, metadata: dict | None = None) -> None:
        from .io import write_csv

        rows = [(p.omega, p.alpha, p.std_error, p.status) for p in self.points]
        write_csv(path, ["omega", "alpha_critical", "std_error", "status"], rows, metadata)


@dataclass(frozen=True)
class EscapeStats:
    """Outcome fractions of the inner/outer radius first-passage experiment."""

    p_converged: float
    p_escaped: float
    p_undecided: float
    trials: int
    r_in: float = 1e-6
    r_out: float = 1e6
    max_steps: int = 1_000_000


@dataclass(frozen=True)
class ScalingConfig:
    """Configuration of the scaled finite-time stability experiment.

    ``kappa`` multiplies the best positions ``p`` and ``g``; trajectories
    start from the unit circle in phase space.
    """

    kappa: float
    p: float = 0.1
    g: float = 0.0
    iterations: int = 200
    repetitions: int = 100_000

    def __post_init__(self):
        if self.kappa <= 0:
            raise ValueError("kappa must be positive")


def split_alpha(alpha: float, ratio: str) -> tuple[float, float]:
    """Split a combined weight into (alpha1, alpha2) per the ratio mode."""
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    if ratio == RATIO_EQUAL:
        return alpha / 2.0, alpha / 2.0
    if ratio == RATIO_SOCIAL_ONLY:
        return 0.0, alpha
    raise ValueError(f"unknown ratio {ratio!r}")


def _rng(seed) -> np.random.Generator:
    return np.random.default_rng(seed)


def _draw_weights(rng, alpha1, alpha2, n, fixed_r):
    """Per-trial combined weights alpha*r for one step."""
    if fixed_r is not None:
        return np.full(n, (alpha1 + alpha2) * fixed_r)
    u1 = rng.random(n)
    u2 = rng.random(n)
    return alpha1 * u1 + alpha2 * u2


def lyapunov_exponent(
    omega: float,
    alpha1: float,
    alpha2: float,
    steps: int = 100_000,
    trials: int = 32,
    burn_in: int = 1000,
    seed=None,
    fixed_r: float | None = None,
) -> LyapunovEstimate:
    """Estimate the top Lyapunov exponent of the random product.

    Iterates ``a <- M a / ||M a||`` with a fresh random matrix each step,
    accumulating ``log ||M a||`` after the burn-in; the estimate averages
    over steps and independent trials started from random directions, and
    the standard error is taken across trials.

    Parameters
    ----------
    omega, alpha1, alpha2 : float
        Dynamics parameters; ``alpha1 + alpha2 > 0`` with both nonnegative.
    steps, trials, burn_in : int
        Monte-Carlo budget; at least 1000 steps and 10 trials are
        recommended for production estimates.
    seed : int, SeedSequence or Generator, optional
    fixed_r : float, optional
        Degenerate-distribution hook replacing the random weight by a
        constant, used to validate against deterministic eigenvalue
        analysis.

    Raises
    ------
    NumericOverflowError
        If renormalisation produces a non-finite norm (not expected; the
        orbit is renormalised every step).
    """
    if trials < 1 or steps < 1:
        raise ValueError("steps and trials must be >= 1")
    rng = _rng(seed)
    theta = rng.uniform(0.0, 2.0 * np.pi, trials)
    x = np.cos(theta)
    v = np.sin(theta)
    acc = np.zeros(trials)
    for k in range(burn_in + steps):
        ar = _draw_weights(rng, alpha1, alpha2, trials, fixed_r)
        v_new = omega * v - ar * x
        x_new = v_new + x
        norm = np.hypot(v_new, x_new)
        if not np.isfinite(norm).all() or np.any(norm == 0.0):
            raise NumericOverflowError("renormalisation failed", step=k)
        if k >= burn_in:
            acc += np.log(norm)
        v = v_new / norm
        x = x_new / norm
    per_trial = acc / steps
    value = float(per_trial.mean())
    std_error = float(per_trial.std(ddof=1) / np.sqrt(trials)) if trials > 1 else 0.0
    return LyapunovEstimate(value, std_error, steps, trials, burn_in)


def lyapunov_pair(
    omega: float,
    alpha1: float,
    alpha2: float,
    steps: int = 100_000,
    trials: int = 32,
    burn_in: int = 1000,
    seed=None,
    fixed_r: float | None = None,
) -> tuple[LyapunovEstimate, LyapunovEstimate]:
    """Estimate both Lyapunov exponents via per-step orthonormalisation.

    A two-frame is propagated and Gram-Schmidt orthonormalised every step;
    the log norms of the two legs accumulate into the two exponents.  Their
    sum equals ``log |omega|`` (the determinant identity) up to rounding.
    ``omega = 0`` makes every matrix singular, so the second exponent is
    the ``-inf`` sentinel.
    """
    if omega == 0.0:
        top = lyapunov_exponent(omega, alpha1, alpha2, steps, trials, burn_in, seed, fixed_r)
        bottom = LyapunovEstimate(-math.inf, 0.0, steps, trials, burn_in)
        return top, bottom
    if trials < 1 or steps < 1:
        raise ValueError("steps and trials must be >= 1")
    rng = _rng(seed)
    theta = rng.uniform(0.0, 2.0 * np.pi, trials)
    c, s = np.cos(theta), np.sin(theta)
    # orthonormal frame per trial: q1 = (c, s), q2 = (-s, c) in (v, x)
    q1v, q1x = c, s
    q2v, q2x = -s, c
    acc1 = np.zeros(trials)
    acc2 = np.zeros(trials)
    for k in range(burn_in + steps):
        ar = _draw_weights(rng, alpha1, alpha2, trials, fixed_r)
        w1v = omega * q1v - ar * q1x
        w1x = w1v + q1x
        w2v = omega * q2v - ar * q2x
        w2x = w2v + q2x
        n1 = np.hypot(w1v, w1x)
        if not np.isfinite(n1).all() or np.any(n1 == 0.0):
            raise NumericOverflowError("renormalisation failed", step=k)
        e1v, e1x = w1v / n1, w1x / n1
        proj = e1v * w2v + e1x * w2x
        w2v = w2v - proj * e1v
        w2x = w2x - proj * e1x
        n2 = np.hypot(w2v, w2x)
        if not np.isfinite(n2).all() or np.any(n2 == 0.0):
            raise NumericOverflowError("orthonormalisation collapsed", step=k)
        if k >= burn_in:
            acc1 += np.log(n1)
            acc2 += np.log(n2)
        q1v, q1x = e1v, e1x
        q2v, q2x = w2v / n2, w2x / n2
    lam1 = acc1 / steps
    lam2 = acc2 / steps
    se = lambda a: float(a.std(ddof=1) / np.sqrt(trials)) if trials > 1 else 0.0
    return (
        LyapunovEstimate(float(lam1.mean()), se(lam1), steps, trials, burn_in),
        LyapunovEstimate(float(lam2.mean()), se(lam2), steps, trials, burn_in),
    )


def stationary_distribution(
    omega: float,
    alpha1: float,
    alpha2: float,
    bins: int = 128,
    samples: int = 1_000_000,
    burn_in: int = 1000,
    n_chains: int = 8,
    seed=None,
) -> AngularHistogram:
    """Estimate the stationary measure of the direction process.

    Runs ``n_chains`` renormalised orbits from independent random angles
    (pooling chains covers the at-most-two ergodic components that occur
    where no matrix in the set has complex eigenvalues), records the angle
    ``atan2(v, x)`` after burn-in, and bins the pooled angles on [0, 2*pi).
    """
    if bins < 64:
        raise ValueError("bins must be >= 64")
    if n_chains < 2:
        raise ValueError("n_chains must be >= 2")
    if samples < n_chains:
        raise ValueError("samples must be >= n_chains")
    rng = _rng(seed)
    theta = rng.uniform(0.0, 2.0 * np.pi, n_chains)
    x = np.cos(theta)
    v = np.sin(theta)
    per_chain = -(-samples // n_chains)
    angles = np.empty((per_chain, n_chains))
    for k in range(burn_in + per_chain):
        ar = _draw_weights(rng, alpha1, alpha2, n_chains, None)
        v_new = omega * v - ar * x
        x_new = v_new + x
        norm = np.hypot(v_new, x_new)
        v = v_new / norm
        x = x_new / norm
        if k >= burn_in:
            angles[k - burn_in] = np.arctan2(v, x)
    pooled = np.mod(angles.ravel()[:samples], 2.0 * np.pi)
    counts, _ = np.histogram(pooled, bins=bins, range=(0.0, 2.0 * np.pi))
    return AngularHistogram(mass=counts / counts.sum(), samples=samples)


def pushforward(
    hist: AngularHistogram,
    omega: float,
    alpha1: float,
    alpha2: float,
    draws: int = 4000,
    seed=None,
) -> AngularHistogram:
    """Push an angular histogram through one random step.

    Each bin centre is mapped through ``draws`` independent random matrices
    and its mass redistributed to the image bins.  For the stationary
    measure the result reproduces the input up to discretisation and
    Monte-Carlo error.
    """
    rng = _rng(seed)
    bins = hist.bins
    centers = hist.bin_centers
    x = np.cos(centers)
    v = np.sin(centers)
    out = np.zeros(bins)
    for _ in range(draws):
        ar = _draw_weights(rng, alpha1, alpha2, bins, None)
        v_new = omega * v - ar * x
        x_new = v_new + x
        ang = np.mod(np.arctan2(v_new, x_new), 2.0 * np.pi)
        idx = np.minimum((ang * (bins / (2.0 * np.pi))).astype(np.intp), bins - 1)
        np.add.at(out, idx, hist.mass)
    return AngularHistogram(mass=out / draws, samples=hist.samples)


def escape_probability(
    omega: float,
    alpha1: float,
    alpha2: float,
    r_in: float = 1e-6,
    r_out: float = 1e6,
    max_steps: int = 1_000_000,
    trials: int = 10_000,
    seed=None,
) -> EscapeStats:
    """First-passage fractions from the unit circle to the inner or outer
    radius.

    Trials start at random angles on the unit circle of the (x, v) plane
    and iterate the homogeneous dynamics until the phase norm first drops
    to ``r_in`` (converged) or reaches ``r_out`` (escaped); trials hitting
    the step cap count as undecided.
    """
    if not (r_in < 1.0 < r_out):
        raise ValueError("require r_in < 1 < r_out")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = _rng(seed)
    theta = rng.uniform(0.0, 2.0 * np.pi, trials)
    x = np.cos(theta)
    v = np.sin(theta)
    n_conv = 0
    n_esc = 0
    rin2 = r_in * r_in
    rout2 = r_out * r_out
    for _ in range(max_steps):
        if x.size == 0:
            break
        ar = _draw_weights(rng, alpha1, alpha2, x.size, None)
        v = omega * v - ar * x
        x = v + x
        norm2 = v * v + x * x
        conv = norm2 <= rin2
        esc = norm2 >= rout2
        n_conv += int(conv.sum())
        n_esc += int(esc.sum())
        keep = ~(conv | esc)
        if not keep.all():
            v = v[keep]
            x = x[keep]
    n_und = trials - n_conv - n_esc
    return EscapeStats(
        p_converged=n_conv / trials,
        p_escaped=n_esc / trials,
        p_undecided=n_und / trials,
        trials=trials,
        r_in=r_in,
        r_out=r_out,
        max_steps=max_steps,
    )


def _significant_probe(probe, max_level: int):
    """Grow the budget until the probe separates from zero at 3 sigma."""
    value = se = 0.0
    for level in range(max_level + 1):
        value, se = probe(level)
        if se == 0.0 or abs(value) > 3.0 * se:
            return value, se, True
    return value, se, False


def _stochastic_bisect(probe_at, lo, hi, tolerance, omega, max_level, max_evals=48):
    """Bisect a noisy sign function; negative means inside the stable set.

    ``probe_at(alpha, level) -> (value, std_error)``.  Bracket endpoints
    must be sign-significant before bisection.  Far from the root probes
    separate from zero at the base budget; near the root the budget grows
    until the midpoint estimate is statistically consistent with zero,
    which at the default budgets resolves the root to about ``tolerance``
    (the returned std_error reports the achieved half-bracket).  If the
    probe is still significant on a bracket 8x finer than the tolerance
    (possible only at extreme budgets) the midpoint is accepted as is.
    """
    v_lo, se_lo, sig_lo = _significant_probe(lambda l: probe_at(lo, l), max_level)
    if not sig_lo:
        return CriticalPoint(omega, math.nan, math.nan, STATUS_UNRESOLVED)
    if v_lo > 0:
        return CriticalPoint(omega, math.nan, math.nan, STATUS_NO_CROSSING)
    v_hi, se_hi, sig_hi = _significant_probe(lambda l: probe_at(hi, l), max_level)
    if not sig_hi:
        return CriticalPoint(omega, math.nan, math.nan, STATUS_UNRESOLVED)
    if v_hi < 0:
        return CriticalPoint(omega, math.nan, math.nan, STATUS_NO_CROSSING)
    evals = 0
    while True:
        mid = 0.5 * (lo + hi)
        value, se, sig = _significant_probe(lambda l: probe_at(mid, l), max_level)
        evals += 1
        if not sig:
            # statistically at the root at full budget: |value| <= 3*se
            return CriticalPoint(omega, mid, 0.5 * (hi - lo), STATUS_OK)
        if value < 0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= tolerance / 8.0:
            return CriticalPoint(omega, 0.5 * (lo + hi), 0.5 * (hi - lo), STATUS_OK)
        if evals >= max_evals:
            return CriticalPoint(omega, math.nan, math.nan, STATUS_UNRESOLVED)


def critical_alpha(
    omega: float,
    ratio: str = RATIO_EQUAL,
    tolerance: float = 0.02,
    seed=None,
    method: str = "lyapunov",
    alpha_lo: float = 0.05,
    alpha_max: float = 8.0,
    steps: int = 10_000,
    trials: int = 16,
    burn_in: int = 1000,
    escape_trials: int = 10_000,
    escape_max_steps: int = 20_000,
    max_level: int = 3,
) -> CriticalPoint:
    """Locate the combined weight where the dynamics is marginally stable.

    Stochastic bisection on the bracket ``(alpha_lo, alpha_max]``; with
    ``method="lyapunov"`` the sign probe is the Lyapunov estimate, with
    ``method="escape"`` it is the difference between escape and
    convergence probabilities.  A bracket endpoint must show a 3-sigma
    significant sign before bisection; the per-probe budget doubles up to
    ``max_level`` times near the root.

    Returns a :class:`CriticalPoint` whose status is ``NO_CROSSING`` if no
    significant sign change exists in the bracket and ``UNRESOLVED`` if the
    adaptive budget cannot separate the probe from zero (expected near
    ``omega = +-1``).
    """
    if tolerance < 0.01:
        raise ValueError("tolerance must be >= 0.01")
    if method not in ("lyapunov", "escape"):
        raise ValueError(f"unknown method {method!r}")
    ss = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)

    def probe_at(alpha, level):
        a1, a2 = split_alpha(alpha, ratio)
        child = ss.spawn(1)[0]
        if method == "lyapunov":
            est = lyapunov_exponent(
                omega, a1, a2, steps=steps * 2**level, trials=trials, burn_in=burn_in, seed=child
            )
            return est.value, est.std_error
        st = escape_probability(
            omega,
            a1,
            a2,
            max_steps=escape_max_steps,
            trials=escape_trials * 2**level,
            seed=child,
        )
        diff = st.p_escaped - st.p_converged
        var = (st.p_escaped + st.p_converged - diff * diff) / st.trials
        return diff, math.sqrt(max(var, 0.0))

    return _stochastic_bisect(probe_at, alpha_lo, alpha_max, tolerance, omega, max_level)


def critical_curve(
    omega_grid,
    ratio: str = RATIO_EQUAL,
    tolerance: float = 0.02,
    seed=None,
    method: str = "lyapunov",
    **budgets,
) -> CriticalCurve:
    """Solve for the critical weight on a grid of inertia values.

    Per-point failures never abort the curve; unresolved points carry
    their status markers.  Grid values must be strictly increasing and
    lie within [-1.1, 1.1].
    """
    omegas = [float(w) for w in omega_grid]
    if not omegas:
        raise ValueError("omega_grid must be non-empty")
    if any(b <= a for a, b in zip(omegas, omegas[1:])):
        raise ValueError("omega_grid must be strictly increasing")
    if any(abs(w) > 1.1 + 1e-12 for w in omegas):
        raise ValueError("omega_grid must lie within [-1.1, 1.1]")
    ss = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    children = ss.spawn(len(omegas))
    points = []
    for w, child in zip(omegas, children):
        points.append(
            critical_alpha(
                w, ratio=ratio, tolerance=tolerance, seed=child, method=method, **budgets
            )
        )
    method_name = METHOD_LYAPUNOV if method == "lyapunov" else METHOD_ESCAPE
    return CriticalCurve(points=tuple(points), ratio=ratio, method=method_name)


def finite_time_lyapunov(
    omega: float,
    alpha1: float,
    alpha2: float,
    z0_scale: float = 1.0,
    p: float = 0.0,
    g: float = 0.0,
    steps: int = 200,
    repetitions: int = 1000,
    seed=None,
) -> float:
    """Finite-time growth estimate ``log(<||(x_t, v_t)||>) / t`` for the
    one-dimensional affine dynamics with fixed best positions.

    Trajectories start from the circle of radius ``z0_scale``; the norm is
    averaged over repetitions before taking the log.  Scaling ``z0_scale``,
    ``p`` and ``g`` jointly by ``kappa`` shifts the result by exactly
    ``log(kappa) / steps`` for the same seed.  With ``p = g = 0`` the
    computation runs on the renormalised orbit in log space (immune to
    underflow) and converges to the asymptotic exponent for large ``t``.

    Raises
    ------
    NumericOverflowError
        When a trajectory leaves the floating range; carries the step
        index reached.
    """
    if steps < 1 or repetitions < 1:
        raise ValueError("steps and repetitions must be >= 1")
    rng = _rng(seed)
    theta = rng.uniform(0.0, 2.0 * np.pi, repetitions)
    if p == 0.0 and g == 0.0:
        # homogeneous case: track per-repetition log norms exactly
        x = np.cos(theta)
        v = np.sin(theta)
        ell = np.zeros(repetitions)
        for k in range(steps):
            u1 = rng.random(repetitions)
            u2 = rng.random(repetitions)
            ar = alpha1 * u1 + alpha2 * u2
            v_new = omega * v - ar * x
            x_new = v_new + x
            norm = np.hypot(v_new, x_new)
            if not np.isfinite(norm).all() or np.any(norm == 0.0):
                raise NumericOverflowError("trajectory left floating range", step=k)
            ell += np.log(norm)
            v = v_new / norm
            x = x_new / norm
        ell += np.log(z0_scale)
        m = ell.max()
        return float((m + np.log(np.mean(np.exp(ell - m)))) / steps)
    x = z0_scale * np.cos(theta)
    v = z0_scale * np.sin(theta)
    for k in range(steps):
        u1 = rng.random(repetitions)
        u2 = rng.random(repetitions)
        with np.errstate(over="ignore", invalid="ignore"):
            v = omega * v + alpha1 * u1 * (p - x) + alpha2 * u2 * (g - x)
            x = x + v
        if not (np.isfinite(v).all() and np.isfinite(x).all()):
            raise NumericOverflowError("trajectory left floating range", step=k)
    return float(np.log(np.mean(np.hypot(x, v))) / steps)


def _neutral_fractions(
    omega, alpha1, alpha2, p_eff, g_eff, iterations, repetitions, r_in, r_out, rng
):
    """Convergence/divergence fractions of the scaled affine experiment.

    Trajectories start on the unit circle.  Convergence: the position
    distance to the segment between the (scaled) best positions drops
    below ``r_in * |p - g|``; with coincident bests the criterion
    degenerates to the phase norm dropping below ``r_in``, matching the
    escape experiment.  Divergence: phase norm reaches ``r_out``.
    """
    theta = rng.uniform(0.0, 2.0 * np.pi, repetitions)
    x = np.cos(theta)
    v = np.sin(theta)
    seg_lo = min(p_eff, g_eff)
    seg_hi = max(p_eff, g_eff)
    width = seg_hi - seg_lo
    degenerate = width == 0.0
    n_conv = 0
    n_div = 0
    for _ in range(iterations):
        if x.size == 0:
            break
        u1 = rng.random(x.size)
        u2 = rng.random(x.size)
        v = omega * v + alpha1 * u1 * (p_eff - x) + alpha2 * u2 * (g_eff - x)
        x = x + v
        norm = np.hypot(x, v)
        if degenerate:
            conv = norm <= r_in
        else:
            dist = np.maximum(np.maximum(seg_lo - x, x - seg_hi), 0.0)
            conv = dist <= r_in * width
        div = norm >= r_out
        n_conv += int((conv & ~div).sum())
        n_div += int((div & ~conv).sum())
        keep = ~(conv | div)
        if not keep.all():
            v = v[keep]
            x = x[keep]
    return n_conv / repetitions, n_div / repetitions


def neutral_alpha(
    omega: float,
    config: ScalingConfig,
    ratio: str = RATIO_EQUAL,
    tolerance: float = 0.02,
    seed=None,
    r_in: float = 1e-6,
    r_out: float = 1e6,
    alpha_lo: float = 0.25,
    alpha_max: float = 8.0,
    max_level: int = 2,
) -> CriticalPoint:
    """Boundary weight where convergence and divergence fractions are equal
    in the scaled finite-time experiment."""
    if tolerance < 0.01:
        raise ValueError("tolerance must be >= 0.01")
    ss = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    p_eff = config.kappa * config.p
    g_eff = config.kappa * config.g

    def probe_at(alpha, level):
        a1, a2 = split_alpha(alpha, ratio)
        child = ss.spawn(1)[0]
        reps = config.repetitions * 2**level
        p_conv, p_div = _neutral_fractions(
            omega, a1, a2, p_eff, g_eff, config.iterations, reps, r_in, r_out, _rng(child)
        )
        diff = p_div - p_conv
        var = (p_div + p_conv - diff * diff) / reps
        return diff, math.sqrt(max(var, 0.0))

    return _stochastic_bisect(probe_at, alpha_lo, alpha_max, tolerance, omega, max_level)


def neutral_stability_curve(
    config: ScalingConfig,
    omega_grid,
    tolerance: float = 0.02,
    seed=None,
    ratio: str = RATIO_EQUAL,
    **kwargs,
) -> CriticalCurve:
    """Neutral-stability boundary over an inertia grid for one scaling
    configuration.  Point failures are carried as status markers."""
    omegas = [float(w) for w in omega_grid]
    if not omegas:
        raise ValueError("omega_grid must be non-empty")
    if any(b <= a for a, b in zip(omegas, omegas[1:])):
        raise ValueError("omega_grid must be strictly increasing")
    ss = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    children = ss.spawn(len(omegas))
    points = [
        neutral_alpha(w, config, ratio=ratio, tolerance=tolerance, seed=child, **kwargs)
        for w, child in zip(omegas, children)
    ]
    return CriticalCurve(points=tuple(points), ratio=ratio, method=METHOD_ESCAPE)
