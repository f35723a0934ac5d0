"""Expected improvement and its one-coordinate restriction."""

from dataclasses import dataclass

import numpy as np
from scipy.special import erfc

from .exceptions import InvalidArgumentError
from .gp import GpModel, predict_many

_SQRT2 = np.sqrt(2.0)
_INV_SQRT_2PI = 1.0 / np.sqrt(2.0 * np.pi)


def norm_cdf(z):
    return 0.5 * erfc(-np.asarray(z, dtype=float) / _SQRT2)


def norm_pdf(z):
    z = np.asarray(z, dtype=float)
    return _INV_SQRT_2PI * np.exp(-0.5 * z * z)


@dataclass(frozen=True)
class Incumbent:
    """Best evaluated point so far (first argmin under ties)."""

    x: np.ndarray
    f: float

    @classmethod
    def from_data(cls, points, values) -> "Incumbent":
        values = np.asarray(values, dtype=float)
        i = int(np.argmin(values))
        return cls(np.array(points[i], dtype=float), float(values[i]))


def expected_improvement(mu, sigma, f_best):
    """Closed-form EI for minimization.

    Vectorized over ``mu`` and ``sigma``. Where ``sigma == 0`` the analytic
    limit ``max(f_best - mu, 0)`` is returned.
    """
    mu = np.asarray(mu, dtype=float)
    sigma = np.asarray(sigma, dtype=float)
    if np.any(sigma < 0):
        raise InvalidArgumentError("sigma must be nonnegative")
    improve = f_best - mu
    positive = sigma > 0
    safe = np.where(positive, sigma, 1.0)
    with np.errstate(over="ignore"):
        z = improve / safe
        ei = improve * norm_cdf(z) + safe * norm_pdf(z)
    ei = np.where(positive, ei, np.maximum(improve, 0.0))
    ei = np.maximum(ei, 0.0)
    return float(ei) if ei.ndim == 0 else ei


def slice_points(inc: Incumbent, coord: int, t) -> np.ndarray:
    """Copies of the incumbent with coordinate ``coord`` replaced by each ``t``."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    z = np.repeat(inc.x[None, :], t.size, axis=0)
    z[:, coord] = t
    return z


def eci(model: GpModel, inc: Incumbent, coord: int, t):
    """Expected coordinate improvement along axis ``coord`` (0-based).

    This is EI evaluated on the axis-aligned line through ``inc.x``. ``t`` may
    be a scalar or an array of positions along that axis.
    """
    if not 0 <= coord < model.d:
        raise InvalidArgumentError(f"coordinate {coord} out of range for d={model.d}")
    scalar = np.ndim(t) == 0
    mu, sigma = predict_many(model, slice_points(inc, coord, t))
    ei = expected_improvement(mu, sigma, inc.f)
    return float(ei[0]) if scalar else ei


def ei_surface(model: GpModel, inc: Incumbent, x):
    """Full EI at each row of ``x``."""
    mu, sigma = predict_many(model, x)
    return expected_improvement(mu, sigma, inc.f)
