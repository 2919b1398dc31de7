"""Covariance kernels for centered Gaussian processes on the half line.

The catalogue covers the processes the closed-form theory speaks about:

* ``BrownianMotion``            R(s, t) = min(s, t)
* ``FractionalBM(H)``           R(s, t) = (t^{2H} + s^{2H} - |t - s|^{2H}) / 2
* ``FractionalGaussianNoise``   stationary lag-h increments of fractional
  Brownian motion, Gamma(tau) = (|tau-h|^{2H} - 2|tau|^{2H} + |tau+h|^{2H}) / 2
* ``IncrementOf(base, h)``      lag-h increments of any pinned base process
  with stationary increments, via the variance function of the base
* ``Tabulated(nodes, matrix)``  kernels known only numerically on a grid

Increment kernels expose the one-sided function f(t) = V(t+h) - V(t), where
V is the even extension of the base variance function.  The stationary
covariance then decomposes as Gamma(t - s) = (f(t-s) + f(s-t)) / 2, which is
what the structural audits differentiate and sign-check.

Examples
--------
>>> k = FractionalGaussianNoise(H=0.75, h=1.0)
>>> round(k.gamma(1.0), 6)
0.414214
>>> IncrementOf(FractionalBM(0.75), 1.0).gamma(1.0) == k.gamma(1.0)
True
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DomainError,
    GridError,
    SingularityError,
    StationarityError,
)

__all__ = [
    "Kernel",
    "BrownianMotion",
    "FractionalBM",
    "FractionalGaussianNoise",
    "IncrementOf",
    "Tabulated",
    "eval_covariance",
    "gamma",
    "increment_function",
    "increment_function_d1",
    "increment_function_d2",
    "decomposition_residual",
]


def _astuple(x):
    """Return (array, was_scalar) for array_like input."""
    arr = np.asarray(x, dtype=float)
    return arr, arr.ndim == 0


def _ret(arr, scalar):
    return float(arr) if scalar else arr


def _check_nonnegative(*arrays):
    for arr in arrays:
        if np.any(arr < 0.0):
            raise DomainError("process is defined for nonnegative times only")


def _power_d1(t, h, H):
    # d/dt (|t+h|^{2H} - |t|^{2H}); singular at t in {0, -h} when 2H < 1,
    # and treated as singular there for every H (kinks/removable points).
    e = 2.0 * H - 1.0
    return 2.0 * H * (
        np.sign(t + h) * np.abs(t + h) ** e - np.sign(t) * np.abs(t) ** e
    )


def _power_d2(t, h, H):
    e = 2.0 * H - 2.0
    return 2.0 * H * (2.0 * H - 1.0) * (np.abs(t + h) ** e - np.abs(t) ** e)


def _check_not_singular(t, h):
    if np.any(t == 0.0) or np.any(t == -h):
        raise SingularityError(
            f"derivative of the increment function is singular at t in {{0, {-h}}}"
        )


class Kernel:
    """Base class. Subclasses provide cov(); stationary ones also gamma()."""

    stationary = False
    # True when the process has stationary increments / is pinned to 0 at
    # the origin; both are needed for the increment construction.
    stationary_increments = False
    pinned_origin = False

    def cov(self, s, t):
        raise NotImplementedError

    def gamma(self, tau):
        raise StationarityError(f"{type(self).__name__} is not stationary")

    def variance(self, t):
        """E[X(t)^2] along the diagonal."""
        s, scalar = _astuple(t)
        return _ret(np.asarray(self.cov(s, s)), scalar)


@dataclass(frozen=True)
class BrownianMotion(Kernel):
    """Standard Brownian motion: R(s, t) = min(s, t) on [0, inf)."""

    stationary = False
    stationary_increments = True
    pinned_origin = True

    def cov(self, s, t):
        s, sc1 = _astuple(s)
        t, sc2 = _astuple(t)
        _check_nonnegative(s, t)
        return _ret(np.minimum(s, t), sc1 and sc2)

    def variance(self, t):
        t, scalar = _astuple(t)
        _check_nonnegative(t)
        return _ret(np.abs(t), scalar)

    def _variance_even(self, t):
        return np.abs(t)

    def _power_exponent(self):
        # variance |t|^{2H} with H = 1/2
        return 0.5


@dataclass(frozen=True)
class FractionalBM(Kernel):
    """Fractional Brownian motion with Hurst index H in (0, 1).

    R(s, t) = (t^{2H} + s^{2H} - |t - s|^{2H}) / 2 for s, t >= 0.  The
    process is pinned at zero, self-similar, and has stationary increments;
    H = 1/2 reduces exactly to Brownian motion and is special-cased so the
    two kernels evaluate identically.
    """

    H: float

    stationary = False
    stationary_increments = True
    pinned_origin = True

    def __post_init__(self):
        if not 0.0 < self.H < 1.0:
            raise ValueError(f"Hurst index must lie in (0, 1), got {self.H}")

    def cov(self, s, t):
        s, sc1 = _astuple(s)
        t, sc2 = _astuple(t)
        _check_nonnegative(s, t)
        if self.H == 0.5:
            out = np.minimum(s, t)
        else:
            e = 2.0 * self.H
            out = 0.5 * (s**e + t**e - np.abs(s - t) ** e)
        return _ret(np.asarray(out), sc1 and sc2)

    def variance(self, t):
        t, scalar = _astuple(t)
        _check_nonnegative(t)
        return _ret(np.abs(t) ** (2.0 * self.H), scalar)

    def _variance_even(self, t):
        return np.abs(t) ** (2.0 * self.H)

    def _power_exponent(self):
        return self.H


@dataclass(frozen=True)
class FractionalGaussianNoise(Kernel):
    """Lag-h increments of fractional Brownian motion, as a stationary kernel.

    Gamma(tau) = (|tau - h|^{2H} - 2 |tau|^{2H} + |tau + h|^{2H}) / 2

    The one-sided increment function and its derivatives are analytic:

        f(t)   = |t + h|^{2H} - |t|^{2H}
        f'(t)  = 2H (sgn(t+h) |t+h|^{2H-1} - sgn(t) |t|^{2H-1})
        f''(t) = 2H (2H-1) (|t+h|^{2H-2} - |t|^{2H-2})

    f' and f'' are singular at t in {0, -h}; evaluation there raises
    :class:`SingularityError`.  H = 1/2 degenerates to the triangular
    autocovariance max(h - |tau|, 0).
    """

    H: float
    h: float

    stationary = True
    stationary_increments = True
    pinned_origin = False

    def __post_init__(self):
        if not 0.0 < self.H < 1.0:
            raise ValueError(f"Hurst index must lie in (0, 1), got {self.H}")
        if not self.h > 0.0:
            raise ValueError(f"lag must be positive, got {self.h}")

    def gamma(self, tau):
        tau, scalar = _astuple(tau)
        e = 2.0 * self.H
        out = 0.5 * (
            np.abs(tau - self.h) ** e
            - 2.0 * np.abs(tau) ** e
            + np.abs(tau + self.h) ** e
        )
        return _ret(out, scalar)

    def cov(self, s, t):
        s, sc1 = _astuple(s)
        t, sc2 = _astuple(t)
        return _ret(np.asarray(self.gamma(t - s)), sc1 and sc2)

    def variance(self, t):
        t, scalar = _astuple(t)
        out = np.full_like(t, self.h ** (2.0 * self.H))
        return _ret(out, scalar)

    def increment(self, t):
        t, scalar = _astuple(t)
        e = 2.0 * self.H
        return _ret(np.abs(t + self.h) ** e - np.abs(t) ** e, scalar)

    def increment_d1(self, t):
        t, scalar = _astuple(t)
        _check_not_singular(t, self.h)
        return _ret(_power_d1(t, self.h, self.H), scalar)

    def increment_d2(self, t):
        t, scalar = _astuple(t)
        _check_not_singular(t, self.h)
        return _ret(_power_d2(t, self.h, self.H), scalar)


@dataclass(frozen=True)
class IncrementOf(Kernel):
    """Stationary kernel of X(t) = Y(t + h) - Y(t) for a pinned base Y.

    The base must be pinned at the origin and have stationary increments
    (BrownianMotion and FractionalBM qualify); then with V the even
    extension of the base variance, Gamma(tau) = (f(tau) + f(-tau)) / 2
    for f(t) = V(t + h) - V(t).

    Derivatives of f are analytic when the base variance is a power law
    and fall back to central finite differences otherwise.
    """

    base: Kernel
    h: float

    stationary = True
    stationary_increments = True
    pinned_origin = False

    def __post_init__(self):
        if not self.h > 0.0:
            raise ValueError(f"lag must be positive, got {self.h}")
        if not (self.base.stationary_increments and self.base.pinned_origin):
            raise StationarityError(
                "IncrementOf requires a base pinned at the origin with "
                f"stationary increments; {type(self.base).__name__} is not"
            )

    def increment(self, t):
        t, scalar = _astuple(t)
        v = getattr(self.base, "_variance_even", None)
        if v is None:
            v = lambda x: self.base.variance(np.abs(x))  # noqa: E731
        return _ret(v(t + self.h) - v(t), scalar)

    def gamma(self, tau):
        tau, scalar = _astuple(tau)
        out = 0.5 * (self.increment(tau) + self.increment(-tau))
        return _ret(np.asarray(out), scalar)

    def cov(self, s, t):
        s, sc1 = _astuple(s)
        t, sc2 = _astuple(t)
        return _ret(np.asarray(self.gamma(t - s)), sc1 and sc2)

    def variance(self, t):
        t, scalar = _astuple(t)
        out = np.full_like(t, self.gamma(0.0))
        return _ret(out, scalar)

    def increment_d1(self, t):
        t, scalar = _astuple(t)
        if hasattr(self.base, "_power_exponent"):
            _check_not_singular(t, self.h)
            return _ret(_power_d1(t, self.h, self.base._power_exponent()), scalar)
        return _ret(self._fd(t, order=1), scalar)

    def increment_d2(self, t):
        t, scalar = _astuple(t)
        if hasattr(self.base, "_power_exponent"):
            _check_not_singular(t, self.h)
            return _ret(_power_d2(t, self.h, self.base._power_exponent()), scalar)
        return _ret(self._fd(t, order=2), scalar)

    def _fd(self, t, order):
        # central differences; step grows with |t| to keep cancellation in check
        step = np.maximum(1e-5, 1e-7 * np.abs(t))
        up = self.increment(t + step)
        dn = self.increment(t - step)
        if order == 1:
            return (up - dn) / (2.0 * step)
        mid = self.increment(t)
        return (up - 2.0 * mid + dn) / step**2


class Tabulated(Kernel):
    """Kernel known only on a fixed grid of nodes.

    Queries must hit a node (within 1e-12 of the node span); anything else
    raises :class:`GridError`.  The matrix must be symmetric within 1e-12.
    """

    stationary = False
    stationary_increments = False
    pinned_origin = False

    def __init__(self, nodes, matrix):
        nodes = np.asarray(getattr(nodes, "nodes", nodes), dtype=float)
        matrix = np.asarray(matrix, dtype=float)
        if nodes.ndim != 1 or nodes.size < 1:
            raise GridError("tabulated nodes must form a nonempty 1-D array")
        if np.any(np.diff(nodes) <= 0.0):
            raise GridError("tabulated nodes must be strictly increasing")
        if matrix.shape != (nodes.size, nodes.size):
            raise GridError(
                f"matrix shape {matrix.shape} does not match {nodes.size} nodes"
            )
        if not np.all(np.isfinite(matrix)):
            raise ValueError("tabulated matrix contains non-finite entries")
        if np.max(np.abs(matrix - matrix.T), initial=0.0) > 1e-12:
            raise ValueError("tabulated matrix is not symmetric within 1e-12")
        self.nodes = nodes
        self.matrix = matrix
        span = nodes[-1] - nodes[0] if nodes.size > 1 else 1.0
        self._tol = 1e-12 * max(span, 1.0)

    def _index(self, x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        idx = np.clip(np.searchsorted(self.nodes, x), 0, self.nodes.size - 1)
        left = np.maximum(idx - 1, 0)
        idx = np.where(
            np.abs(x - self.nodes[left]) < np.abs(x - self.nodes[idx]), left, idx
        )
        if np.any(np.abs(x - self.nodes[idx]) > self._tol):
            bad = x[np.abs(x - self.nodes[idx]) > self._tol][0]
            raise GridError(f"query point {bad} is not a tabulated node")
        return idx

    def cov(self, s, t):
        s_arr, sc1 = _astuple(s)
        t_arr, sc2 = _astuple(t)
        s_b, t_b = np.broadcast_arrays(s_arr, t_arr)
        i = self._index(s_b.ravel()).reshape(s_b.shape)
        j = self._index(t_b.ravel()).reshape(t_b.shape)
        return _ret(self.matrix[i, j], sc1 and sc2)


def eval_covariance(kernel, s, t):
    """R(s, t) for any catalogue kernel; broadcasts over array input."""
    return kernel.cov(s, t)


def gamma(kernel, tau):
    """Stationary autocovariance Gamma(tau); StationarityError otherwise."""
    return kernel.gamma(tau)


def _require_increment(kernel):
    if not hasattr(kernel, "increment"):
        raise TypeError(
            f"{type(kernel).__name__} has no one-sided increment function"
        )


def increment_function(kernel, t):
    """One-sided increment function f(t) = V(t + h) - V(t)."""
    _require_increment(kernel)
    return kernel.increment(t)


def increment_function_d1(kernel, t):
    """First derivative of f; singular at t in {0, -h} for analytic forms."""
    _require_increment(kernel)
    return kernel.increment_d1(t)


def increment_function_d2(kernel, t):
    """Second derivative of f; singular at t in {0, -h} for analytic forms."""
    _require_increment(kernel)
    return kernel.increment_d2(t)


def decomposition_residual(base, h, s, t):
    """Gap between the four-term increment covariance and its half-sum form.

    For Y pinned at the origin with stationary increments and
    X(t) = Y(t+h) - Y(t):

        E[X(s) X(t)] = R_Y(s+h, t+h) - R_Y(s, t+h) - R_Y(t, s+h) + R_Y(s, t)

    must equal (f(t-s) + f(s-t)) / 2.  Returns |difference|, which should
    sit at rounding level for every valid base.
    """
    inc = IncrementOf(base, h)
    four = (
        base.cov(s + h, t + h)
        - base.cov(s, t + h)
        - base.cov(t, s + h)
        + base.cov(s, t)
    )
    return abs(four - inc.gamma(t - s))
