"""Monte Carlo validation of the tail decay rate.

Crude Monte Carlo at moderate levels u: simulate paths on a grid, count
paths whose minimum over the nodes exceeds u, and watch the normalized
log-probability log p / u^2 drift toward the theoretical rate
-1 / (2 sigma*^2).

Draws are counter-based: trial i consumes a fixed, pre-assigned block of
the Philox stream keyed by the seed, and normals come from Box-Muller on
those uniforms (fixed consumption, no rejection).  Estimates therefore do
not depend on batch size or evaluation schedule, and reruns with the same
seed are bit-for-bit identical.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import FactorizationError
from .measures import Grid
from .solver import DiscretizedProblem, discretize

__all__ = [
    "LdpEstimate",
    "factorize",
    "normal_block",
    "sample_paths",
    "estimate_tail",
    "ldp_curve",
]

_MAX_JITTER = 1e-6
_BASE_JITTER = 1e-12
# paths per simulation batch are sized to keep the working set near 32 MB
_BATCH_DOUBLES = 4_000_000


def factorize(problem, jitter=0.0):
    """Lower Cholesky factor of the covariance matrix, with jitter escalation.

    Tries the requested diagonal jitter first, then escalates tenfold from
    1e-12 up to 1e-6 before giving up with FactorizationError.  Returns
    (factor, jitter_used).
    """
    matrix = problem.matrix
    n = matrix.shape[0]
    jitters = [jitter]
    j = max(_BASE_JITTER, 10.0 * jitter)
    while j <= _MAX_JITTER:
        jitters.append(j)
        j *= 10.0
    for j in jitters:
        try:
            factor = np.linalg.cholesky(matrix + j * np.eye(n))
        except np.linalg.LinAlgError:
            continue
        return factor, j
    raise FactorizationError(
        f"covariance matrix is not positive definite even with jitter {_MAX_JITTER}"
    )


def normal_block(seed, start_trial, trials, draws_per_trial):
    """Standard normals for trials [start_trial, start_trial + trials).

    Trial i owns uniforms [i * stride, (i+1) * stride) of the Philox
    stream keyed by seed, with stride = draws_per_trial rounded up to
    even; Box-Muller turns each uniform pair into two normals.  The
    mapping from (seed, trial, coordinate) to value is fixed, so any
    batching schedule produces identical numbers.
    """
    # stride must be a whole number of Philox counter blocks (4 words of
    # 64 bits, one word per uniform) so trials map to disjoint counter
    # ranges; advance() steps the counter in whole blocks
    stride = 4 * ((draws_per_trial + 3) // 4)
    bits = np.random.Philox(key=seed)
    bits.advance(start_trial * (stride // 4))
    u = np.random.Generator(bits).random((trials, stride))
    u1 = np.maximum(u[:, 0::2], 2.0**-53)  # Box-Muller needs log(u1) finite
    u2 = u[:, 1::2]
    r = np.sqrt(-2.0 * np.log(u1))
    z = np.empty((trials, stride))
    z[:, 0::2] = r * np.cos(2.0 * np.pi * u2)
    z[:, 1::2] = r * np.sin(2.0 * np.pi * u2)
    return z[:, :draws_per_trial]


def _simulation_factor(kernel, interval, n):
    a, b = interval
    if n == 1:
        # degenerate single-node grid at the midpoint; bypasses Grid which
        # requires two nodes
        mid = 0.5 * (a + b)
        problem = DiscretizedProblem(grid=None, matrix=np.array([[kernel.cov(mid, mid)]]))
        factor, _ = factorize(problem)
        return factor
    factor, _ = factorize(discretize(kernel, Grid(a, b, n)))
    return factor


def sample_paths(kernel, interval, n, trials, seed=0):
    """Simulate `trials` paths on n grid nodes; rows are paths."""
    if trials < 1:
        raise ValueError("trials must be positive")
    factor = _simulation_factor(kernel, interval, n)
    out = np.empty((trials, n))
    batch = max(1, _BATCH_DOUBLES // max(n, 1))
    for start in range(0, trials, batch):
        m = min(batch, trials - start)
        z = normal_block(seed, start, m, n)
        np.matmul(z, factor.T, out=out[start : start + m])
    return out


def _path_minima(kernel, interval, n, trials, seed):
    factor = _simulation_factor(kernel, interval, n)
    minima = np.empty(trials)
    batch = max(1, _BATCH_DOUBLES // max(n, 1))
    for start in range(0, trials, batch):
        m = min(batch, trials - start)
        z = normal_block(seed, start, m, n)
        x = z @ factor.T
        minima[start : start + m] = x.min(axis=1)
    return minima


def estimate_tail(kernel, interval, n, u, trials, seed=0):
    """Crude MC estimate of P(min over the grid nodes > u).

    Returns (p_hat, hits).  u may be zero (useful as a symmetry sanity
    check); the grid may degenerate to a single midpoint node with n=1.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    if u < 0.0:
        raise ValueError(f"level must be nonnegative, got {u}")
    minima = _path_minima(kernel, interval, n, trials, seed)
    hits = int(np.count_nonzero(minima > u))
    return hits / trials, hits


@dataclass(frozen=True, eq=False)
class LdpEstimate:
    """Tail estimates for a list of levels, sharing one set of paths.

    For levels with zero hits, log_p falls back to log(1/trials) and the
    level is flagged.  ci_halfwidth is the 95% normal-approximation
    halfwidth on the log scale, infinite for zero-hit levels.
    """

    interval: tuple
    n: int
    trials: int
    seed: int
    u: np.ndarray
    hits: np.ndarray
    p_hat: np.ndarray
    log_p_over_u2: np.ndarray
    ci_halfwidth: np.ndarray
    flagged: np.ndarray
    theoretical_rate: float | None = None


def ldp_curve(kernel, interval, n, u_list, trials, seed=0, sigma_sq=None):
    """Normalized log tail probabilities along increasing levels.

    All levels share one simulated sample set (common random numbers), so
    p_hat is exactly nonincreasing in u.  Pass sigma_sq to attach the
    theoretical limit -1 / (2 sigma_sq) for reporting.
    """
    u = np.asarray(list(u_list), dtype=float)
    if u.size == 0:
        raise ValueError("u_list must not be empty")
    if np.any(u <= 0.0):
        raise ValueError("levels must be positive")
    if np.any(np.diff(u) <= 0.0):
        raise ValueError("levels must be strictly increasing")
    if trials < 1:
        raise ValueError("trials must be positive")
    minima = _path_minima(kernel, interval, n, trials, seed)
    hits = np.array([int(np.count_nonzero(minima > lev)) for lev in u])
    p_hat = hits / trials
    flagged = hits == 0
    safe_p = np.where(flagged, 1.0 / trials, p_hat)
    log_p = np.log(safe_p)
    # delta method: sd(log p_hat) ~ sqrt((1 - p) / (p * trials))
    with np.errstate(divide="ignore"):
        sd = np.sqrt((1.0 - safe_p) / (safe_p * trials))
    ci = np.where(flagged, np.inf, 1.96 * sd)
    theo = None if sigma_sq is None else -1.0 / (2.0 * sigma_sq)
    return LdpEstimate(
        interval=(float(interval[0]), float(interval[1])),
        n=n,
        trials=trials,
        seed=seed,
        u=u,
        hits=hits,
        p_hat=p_hat,
        log_p_over_u2=log_p / u**2,
        ci_halfwidth=ci,
        flagged=flagged,
        theoretical_rate=theo,
    )
