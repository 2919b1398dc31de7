"""Frank-Wolfe minimization of the covariance energy on the simplex.

Discretizing the interval turns the measure problem into the quadratic
program

    minimize  w' M w   over the probability simplex,

with M the covariance matrix on the grid nodes.  Frank-Wolfe fits the
problem shape: iterates stay probability vectors, each step moves toward
a single vertex (a Dirac measure at one node), and the stopping quantity

    equilibrium_gap = <g, w> - min_i g_i,      g = 2 M w

is exactly twice the violation of the equilibrium optimality condition,
so the certificate the solver reports is the quantity the theory pins down.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EmptyMeasureError
from .measures import DiscreteMeasure, Grid

__all__ = ["DiscretizedProblem", "SolverResult", "discretize", "solve", "extract_measure"]

# refresh the maintained gradient to cap floating-point drift on long runs
_REFRESH_EVERY = 8192


@dataclass(frozen=True, eq=False)
class DiscretizedProblem:
    """Grid plus the symmetrized covariance matrix on its nodes."""

    grid: Grid
    matrix: np.ndarray


def discretize(kernel, grid):
    """Evaluate the kernel on grid x grid and symmetrize at rounding level."""
    t = grid.nodes
    matrix = np.asarray(kernel.cov(t[:, None], t[None, :]), dtype=float)
    matrix = 0.5 * (matrix + matrix.T)
    matrix.flags.writeable = False
    return DiscretizedProblem(grid=grid, matrix=matrix)


@dataclass(frozen=True, eq=False)
class SolverResult:
    """Final iterate with its optimality certificate.

    converged is True exactly when equilibrium_gap <= the requested
    tolerance; hitting max_iter first leaves converged False and the
    caller decides what to do with the (still feasible) weights.
    energy_trace is populated only when solve(..., history=True).
    """

    weights: np.ndarray
    energy: float
    equilibrium_gap: float
    iterations: int
    converged: bool
    energy_trace: np.ndarray | None = None


def solve(problem, tol=1e-9, max_iter=200_000, history=False):
    """Frank-Wolfe with exact line search from the uniform start.

    Each iteration moves toward the vertex with the smallest gradient
    entry (lowest index on ties), with the exact minimizing step clamped
    to [0, 1].  Energy never increases from one iteration to the next.
    """
    if tol <= 0.0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    if max_iter < 1:
        raise ValueError(f"max_iter must be at least 1, got {max_iter}")
    M = problem.matrix
    n = M.shape[0]
    w = np.full(n, 1.0 / n)
    g = 2.0 * (M @ w)
    energy = 0.5 * float(w @ g)
    trace = [energy] if history else None

    iterations = 0
    converged = False
    for k in range(max_iter):
        i = int(np.argmin(g))
        # <g, w> = 2 w'Mw, so the gap needs no extra dot product
        gap = 2.0 * energy - float(g[i])
        if gap <= tol:
            converged = True
            break
        # along d = e_i - w:  d'Mw = -gap/2,  d'Md = M_ii - g_i + energy
        curvature = float(M[i, i]) - float(g[i]) + energy
        if curvature <= 0.0:
            lam = 1.0
        else:
            lam = min(1.0, gap / (2.0 * curvature))
        energy += lam * (lam * curvature - gap)
        w *= 1.0 - lam
        w[i] += lam
        g *= 1.0 - lam
        g += (2.0 * lam) * M[:, i]
        iterations = k + 1
        if trace is not None:
            trace.append(energy)
        if iterations % _REFRESH_EVERY == 0:
            g = 2.0 * (M @ w)

    # fresh certificate for the returned iterate
    g = 2.0 * (M @ w)
    final_energy = 0.5 * float(w @ g)
    final_gap = float(w @ g) - float(np.min(g))
    if not converged:
        converged = final_gap <= tol
    w.flags.writeable = False
    return SolverResult(
        weights=w,
        energy=final_energy,
        equilibrium_gap=final_gap,
        iterations=iterations,
        converged=converged,
        energy_trace=None if trace is None else np.asarray(trace),
    )


def extract_measure(result, grid, prune=1e-4):
    """Turn solver weights into a sparse measure.

    Nodes with weight <= prune are dropped, the survivors are renormalized,
    and runs of grid-adjacent survivors collapse to a single atom at their
    weight-weighted centroid.  prune must lie in [0, 0.01]; pruning
    everything raises EmptyMeasureError.
    """
    if not 0.0 <= prune <= 0.01:
        raise ValueError(f"prune must lie in [0, 0.01], got {prune}")
    w = np.asarray(result.weights, dtype=float)
    nodes = grid.nodes
    keep = np.flatnonzero(w > prune)
    if keep.size == 0:
        raise EmptyMeasureError("every node weight fell at or below the threshold")
    w = w[keep] / np.sum(w[keep])

    locations, weights = [], []
    run_w = w[0]
    run_x = nodes[keep[0]] * w[0]
    for prev, idx, wx in zip(keep[:-1], keep[1:], w[1:]):
        if idx - prev == 1:
            run_w += wx
            run_x += nodes[idx] * wx
        else:
            locations.append(run_x / run_w)
            weights.append(run_w)
            run_w = wx
            run_x = nodes[idx] * wx
    locations.append(run_x / run_w)
    weights.append(run_w)
    return DiscreteMeasure(np.array(locations), np.array(weights))
