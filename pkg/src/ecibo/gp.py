"""Gaussian process regression with an isotropic squared-exponential kernel.

The model has a constant prior mean and one length-scale shared by all
dimensions. Inputs are mapped to the unit cube by the box bounds and outputs
are standardized before fitting. The mean and process variance are profiled
out of the likelihood in closed form, which leaves a one-dimensional search
over the length-scale.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import cho_solve, cholesky, solve_triangular
from scipy.spatial.distance import cdist

from .exceptions import (
    DuplicatePointError,
    InsufficientDataError,
    InvalidArgumentError,
    ModelSingularError,
)

LENGTH_SCALE_BOUNDS = (0.01, 100.0)
DEFAULT_NUGGET = 1e-10
MAX_NUGGET = 1e-4
GRID_SIZE = 21
GOLDEN_TOL = 1e-5  # in log10(length_scale)
DUPLICATE_TOL = 1e-10

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def as_bounds(bounds) -> np.ndarray:
    """Coerce ``bounds`` to a float ``(d, 2)`` array with ``a <= b``."""
    b = np.atleast_2d(np.asarray(bounds, dtype=float))
    if b.ndim != 2 or b.shape[1] != 2:
        raise InvalidArgumentError(f"bounds must have shape (d, 2), got {b.shape}")
    if not np.all(np.isfinite(b)):
        raise InvalidArgumentError("bounds must be finite")
    if np.any(b[:, 0] > b[:, 1]):
        raise InvalidArgumentError("lower bound exceeds upper bound")
    return b


def normalize(x, bounds) -> np.ndarray:
    """Map points in original units to the unit cube."""
    lo, hi = bounds[:, 0], bounds[:, 1]
    width = np.where(hi > lo, hi - lo, 1.0)
    return (np.asarray(x, dtype=float) - lo) / width


class Dataset:
    """Archive of evaluated points and their objective values.

    Points are kept in original units. Adding a point that lies within
    ``DUPLICATE_TOL`` (Euclidean, in normalized space) of an archived point
    raises :class:`DuplicatePointError`.
    """

    def __init__(self, bounds, points=None, values=None):
        self.bounds = as_bounds(bounds)
        self._x = []
        self._f = []
        if points is not None:
            for x, f in zip(np.atleast_2d(points), np.ravel(values)):
                self.add(x, f)

    @property
    def d(self) -> int:
        return self.bounds.shape[0]

    def __len__(self) -> int:
        return len(self._f)

    @property
    def points(self) -> np.ndarray:
        return np.array(self._x, dtype=float).reshape(len(self._x), self.d)

    @property
    def values(self) -> np.ndarray:
        return np.array(self._f, dtype=float)

    def normalized_points(self) -> np.ndarray:
        return normalize(self.points, self.bounds)

    def contains(self, x) -> bool:
        """True if ``x`` duplicates an archived point."""
        if not self._x:
            return False
        dist = np.linalg.norm(self.normalized_points() - normalize(x, self.bounds), axis=1)
        return bool(np.min(dist) <= DUPLICATE_TOL)

    def add(self, x, f) -> None:
        x = np.asarray(x, dtype=float).ravel()
        if x.shape != (self.d,):
            raise InvalidArgumentError(f"expected a {self.d}-vector, got shape {x.shape}")
        if not np.all(np.isfinite(x)):
            raise InvalidArgumentError("point must be finite")
        if np.any(x < self.bounds[:, 0]) or np.any(x > self.bounds[:, 1]):
            raise InvalidArgumentError("point lies outside the bounds")
        if self.contains(x):
            raise DuplicatePointError("point duplicates an archived sample")
        self._x.append(x.copy())
        self._f.append(float(f))


@dataclass(frozen=True)
class KernelParams:
    length_scale: float
    variance: float

    def __post_init__(self):
        if not self.length_scale > 0:
            raise InvalidArgumentError(f"length_scale must be positive, got {self.length_scale}")
        if not self.variance >= 0:
            raise InvalidArgumentError(f"variance must be nonnegative, got {self.variance}")


def se_kernel(u, v, params: KernelParams) -> float:
    """Squared-exponential covariance ``s2 * exp(-|u - v|^2 / (2 l^2))``."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if not (np.all(np.isfinite(u)) and np.all(np.isfinite(v))):
        raise InvalidArgumentError("kernel inputs must be finite")
    sq = float(np.sum((u - v) ** 2))
    return params.variance * math.exp(-sq / (2.0 * params.length_scale**2))


def correlation(a, b, length_scale: float) -> np.ndarray:
    """Matrix of unit-variance SE correlations between rows of ``a`` and ``b``."""
    return np.exp(-cdist(a, b, "sqeuclidean") / (2.0 * length_scale**2))


def _factorize(sqdist, length_scale, nugget):
    n = sqdist.shape[0]
    r = np.exp(-sqdist / (2.0 * length_scale**2))
    while nugget <= MAX_NUGGET * (1 + 1e-12):
        try:
            chol = cholesky(r + nugget * np.eye(n), lower=True, check_finite=False)
        except np.linalg.LinAlgError:
            nugget *= 10.0
            continue
        if np.all(np.diag(chol) > 0):
            return chol, nugget
        nugget *= 10.0
    raise ModelSingularError(
        f"correlation matrix is not positive definite for length_scale={length_scale:g} "
        f"even with nugget {MAX_NUGGET:g}"
    )


def _profile(sqdist, y, length_scale, nugget):
    chol, nugget = _factorize(sqdist, length_scale, nugget)
    n = sqdist.shape[0]
    ones = np.ones(n)
    rinv_1, rinv_y = cho_solve((chol, True), np.column_stack([ones, y]), check_finite=False).T
    m_hat = float(ones @ rinv_y / (ones @ rinv_1))
    resid = y - m_hat
    weights = cho_solve((chol, True), resid, check_finite=False)
    s2_hat = max(float(resid @ weights) / n, 0.0)
    logdet = 2.0 * float(np.sum(np.log(np.diag(chol))))
    if s2_hat > 0:
        loglik = -0.5 * n * math.log(s2_hat) - 0.5 * logdet
    else:
        loglik = math.inf
    return loglik, m_hat, s2_hat, chol, weights, nugget


def concentrated_log_likelihood(x, y, length_scale, nugget=DEFAULT_NUGGET):
    """Profiled log marginal likelihood at a given length-scale.

    Parameters
    ----------
    x : (n, d) array
        Inputs, already normalized to the unit cube.
    y : (n,) array
        Outputs.
    length_scale : float
        Kernel length-scale in ``[0.01, 100]``.
    nugget : float
        Initial diagonal jitter; escalated by 10x on factorization failure.

    Returns
    -------
    (loglik, m_hat, s2_hat)
        ``loglik`` omits the additive constant. ``m_hat`` is the generalized
        least squares mean and ``s2_hat`` the ML process variance. If the
        residual is exactly zero, ``loglik`` is ``inf``.
    """
    x = np.atleast_2d(np.asarray(x, dtype=float))
    y = np.asarray(y, dtype=float).ravel()
    if x.shape[0] < 2:
        raise InsufficientDataError("need at least two samples")
    lo, hi = LENGTH_SCALE_BOUNDS
    if not lo <= length_scale <= hi:
        raise InvalidArgumentError(f"length_scale {length_scale} outside [{lo}, {hi}]")
    loglik, m_hat, s2_hat, *_ = _profile(cdist(x, x, "sqeuclidean"), y, length_scale, nugget)
    return loglik, m_hat, s2_hat


@dataclass(frozen=True, eq=False)
class GpModel:
    """Fitted posterior. Immutable; safe to share between threads."""

    bounds: np.ndarray
    x: np.ndarray  # normalized inputs
    y: np.ndarray  # standardized outputs
    shift: float
    scale: float
    params: KernelParams  # variance in standardized units
    mean: float  # standardized units
    chol: np.ndarray  # lower factor of R + nugget*I, R the correlation matrix
    weights: np.ndarray
    nugget: float
    loglik: float

    @property
    def d(self) -> int:
        return self.bounds.shape[0]

    @property
    def n(self) -> int:
        return self.x.shape[0]

    @property
    def prior_mean(self) -> float:
        """Constant prior mean in objective units."""
        return self.mean * self.scale + self.shift

    @property
    def prior_std(self) -> float:
        """Prior standard deviation in objective units."""
        return math.sqrt(self.params.variance) * self.scale

    def covariance_matrix(self) -> np.ndarray:
        """``K + nugget*I`` in standardized units."""
        r = correlation(self.x, self.x, self.params.length_scale)
        return self.params.variance * (r + self.nugget * np.eye(self.n))


def _golden_max(func, a, b, tol):
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = func(c), func(d)
    while abs(b - a) > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = func(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = func(d)
    return (c, fc) if fc >= fd else (d, fd)


def fit(data: Dataset, nugget: float = DEFAULT_NUGGET, restarts: int = 1) -> GpModel:
    """Fit the GP to ``data`` by maximizing the concentrated likelihood.

    The length-scale is searched on a 21-point log grid over ``[0.01, 100]``;
    the ``restarts`` best grid cells are then refined by golden-section
    search in ``log10`` space.
    """
    if len(data) < 2:
        raise InsufficientDataError(f"need at least two samples, got {len(data)}")
    x = data.normalized_points()
    raw = data.values
    shift = float(np.mean(raw))
    scale = float(np.std(raw))
    if not scale > 0 or not np.isfinite(scale):
        scale = 1.0
    y = (raw - shift) / scale
    sqdist = cdist(x, x, "sqeuclidean")

    lo, hi = np.log10(LENGTH_SCALE_BOUNDS)

    def objective(log_l):
        try:
            return _profile(sqdist, y, 10.0**log_l, nugget)[0]
        except ModelSingularError:
            return -math.inf

    if np.ptp(y) == 0.0:
        best_log_l = 0.0
    else:
        grid = np.linspace(lo, hi, GRID_SIZE)
        values = np.array([objective(g) for g in grid])
        if not np.any(np.isfinite(values)):
            raise ModelSingularError("no length-scale on the grid gives a factorizable matrix")
        order = np.argsort(-values, kind="stable")[: max(1, restarts)]
        best_log_l, best_val = grid[order[0]], values[order[0]]
        for i in order:
            a, b = grid[max(i - 1, 0)], grid[min(i + 1, GRID_SIZE - 1)]
            cand, val = _golden_max(objective, a, b, GOLDEN_TOL)
            if val > best_val:
                best_log_l, best_val = cand, val

    length_scale = float(np.clip(10.0**best_log_l, *LENGTH_SCALE_BOUNDS))
    loglik, m_hat, s2_hat, chol, weights, used = _profile(sqdist, y, length_scale, nugget)
    return GpModel(
        bounds=data.bounds.copy(),
        x=x,
        y=y,
        shift=shift,
        scale=scale,
        params=KernelParams(length_scale, s2_hat),
        mean=m_hat,
        chol=chol,
        weights=weights,
        nugget=used,
        loglik=loglik,
    )


def predict_many(model: GpModel, x):
    """Posterior mean and standard deviation at each row of ``x``.

    ``x`` is in original units. Returns two ``(q,)`` arrays in objective units.
    Negative variances from roundoff are clamped to zero.
    """
    x = np.atleast_2d(np.asarray(x, dtype=float))
    if x.shape[1] != model.d:
        raise InvalidArgumentError(f"expected {model.d} columns, got {x.shape[1]}")
    if not np.all(np.isfinite(x)):
        raise InvalidArgumentError("query points must be finite")
    xn = normalize(x, model.bounds)
    r = correlation(xn, model.x, model.params.length_scale)
    mu = model.mean + r @ model.weights
    v = solve_triangular(model.chol, r.T, lower=True, check_finite=False)
    var = model.params.variance * (1.0 - np.sum(v * v, axis=0))
    sigma = np.sqrt(np.maximum(var, 0.0))
    return mu * model.scale + model.shift, sigma * model.scale


def predict(model: GpModel, x):
    """Posterior ``(mu, sigma)`` at a single point ``x``."""
    x = np.asarray(x, dtype=float).ravel()
    mu, sigma = predict_many(model, x[None, :])
    return float(mu[0]), float(sigma[0])
