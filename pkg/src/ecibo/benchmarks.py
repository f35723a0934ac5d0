"""Analytical test problems.

Standard forms and boxes (the same box in every dimension):

- ``ellipsoid``: sum_i i * x_i^2 on [-5.12, 5.12]
- ``rosenbrock``: sum_i 100 (x_{i+1} - x_i^2)^2 + (1 - x_i)^2 on [-2.048, 2.048]
- ``ackley``: a = 20, b = 0.2, c = 2 pi on [-32.768, 32.768]
- ``griewank``: 1 + sum x_i^2 / 4000 - prod cos(x_i / sqrt(i)) on [-600, 600]
- ``rastrigin``: 10 d + sum (x_i^2 - 10 cos(2 pi x_i)) on [-5.12, 5.12]
- ``three_hump_camel``: 2 x1^2 - 1.05 x1^4 + x1^6 / 6 + x1 x2 + x2^2 on [-2, 2], d = 2
- ``sine_demo``: sin(x) on [0, 2 pi], d = 1
"""

import threading
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .exceptions import InvalidArgumentError


def ellipsoid(x):
    x = np.asarray(x, dtype=float)
    return float(np.sum(np.arange(1, x.size + 1) * x * x))


def rosenbrock(x):
    x = np.asarray(x, dtype=float)
    return float(np.sum(100.0 * (x[1:] - x[:-1] ** 2) ** 2 + (1.0 - x[:-1]) ** 2))


def ackley(x, a=20.0, b=0.2, c=2.0 * np.pi):
    x = np.asarray(x, dtype=float)
    d = x.size
    return float(
        -a * np.exp(-b * np.sqrt(np.sum(x * x) / d))
        - np.exp(np.sum(np.cos(c * x)) / d)
        + a
        + np.e
    )


def griewank(x):
    x = np.asarray(x, dtype=float)
    i = np.arange(1, x.size + 1)
    return float(1.0 + np.sum(x * x) / 4000.0 - np.prod(np.cos(x / np.sqrt(i))))


def rastrigin(x):
    x = np.asarray(x, dtype=float)
    return float(10.0 * x.size + np.sum(x * x - 10.0 * np.cos(2.0 * np.pi * x)))


def three_hump_camel(x):
    x1, x2 = np.asarray(x, dtype=float)
    return float(2.0 * x1**2 - 1.05 * x1**4 + x1**6 / 6.0 + x1 * x2 + x2**2)


def sine_demo(x):
    return float(np.sin(np.asarray(x, dtype=float)[0]))


# id -> (function, box, fixed dimension, minimum dimension)
_REGISTRY = {
    "ellipsoid": (ellipsoid, (-5.12, 5.12), None, 1),
    "rosenbrock": (rosenbrock, (-2.048, 2.048), None, 2),
    "ackley": (ackley, (-32.768, 32.768), None, 1),
    "griewank": (griewank, (-600.0, 600.0), None, 1),
    "rastrigin": (rastrigin, (-5.12, 5.12), None, 1),
    "three_hump_camel": (three_hump_camel, (-2.0, 2.0), 2, 2),
    "sine_demo": (sine_demo, (0.0, 2.0 * np.pi), 1, 1),
}

PROBLEM_IDS = tuple(_REGISTRY)


@dataclass(eq=False)
class Problem:
    """A box-bounded black-box objective with an evaluation counter."""

    id: str
    d: int
    bounds: np.ndarray
    func: Callable = field(repr=False)
    evaluations: int = 0
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def evaluate(self, x) -> float:
        x = np.asarray(x, dtype=float).ravel()
        if x.shape != (self.d,):
            raise InvalidArgumentError(f"{self.id} expects a {self.d}-vector, got shape {x.shape}")
        if not np.all(np.isfinite(x)):
            raise InvalidArgumentError("x must be finite")
        value = self.func(x)
        with self._lock:
            self.evaluations += 1
        return value

    __call__ = evaluate


def make_problem(id: str, d: int) -> Problem:
    """Build a benchmark problem by id and dimension."""
    if id not in _REGISTRY:
        raise InvalidArgumentError(f"unknown problem {id!r}; choose from {', '.join(PROBLEM_IDS)}")
    func, (lo, hi), fixed, dmin = _REGISTRY[id]
    if fixed is not None and d != fixed:
        raise InvalidArgumentError(f"{id} is defined only for d={fixed}")
    if d < dmin:
        raise InvalidArgumentError(f"{id} needs d >= {dmin}")
    bounds = np.tile([lo, hi], (d, 1)).astype(float)
    return Problem(id=id, d=d, bounds=bounds, func=func)


def evaluate(problem: Problem, x) -> float:
    return problem.evaluate(x)
