"""Latin hypercube initial designs."""

import numpy as np

from .exceptions import InvalidArgumentError
from .gp import as_bounds


def latin_hypercube(n: int, bounds, rng) -> np.ndarray:
    """Random-permutation Latin hypercube of ``n`` points in a box.

    Each dimension is cut into ``n`` equal strata and receives exactly one
    point per stratum, placed uniformly inside it. Strata are assigned by an
    independent random permutation per dimension. Dimensions with
    ``a == b`` collapse to that value.

    Returns an ``(n, d)`` array in original units.
    """
    if n < 1:
        raise InvalidArgumentError(f"n must be at least 1, got {n}")
    b = as_bounds(bounds)
    d = b.shape[0]
    strata = np.stack([rng.permutation(n) for _ in range(d)], axis=1)
    unit = (strata + rng.random((n, d))) / n
    x = b[:, 0] + unit * (b[:, 1] - b[:, 0])
    return np.clip(x, b[:, 0], b[:, 1])
