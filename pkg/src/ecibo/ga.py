"""Real-coded genetic algorithm used to maximize acquisition functions.

Tournament selection, simulated binary crossover (SBX) and bounded
polynomial mutation, with generational replacement and an elite of one.
"""

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .exceptions import InvalidArgumentError
from .gp import as_bounds
from .rng import as_generator


@dataclass(frozen=True)
class GaConfig:
    pop_size: int
    max_gen: int
    eta_crossover: float = 20.0
    eta_mutation: float = 20.0
    p_crossover: float = 0.9
    p_mutation: Optional[float] = None  # None means 1/k
    tournament_size: int = 2
    seed: Optional[int] = None

    def __post_init__(self):
        if self.pop_size < 2:
            raise InvalidArgumentError("pop_size must be at least 2")
        if self.max_gen < 1:
            raise InvalidArgumentError("max_gen must be at least 1")
        if self.tournament_size < 1:
            raise InvalidArgumentError("tournament_size must be at least 1")

    @property
    def evaluations(self) -> int:
        """Objective evaluations consumed by one :func:`ga_maximize` call."""
        return self.pop_size * (self.max_gen + 1)

    @classmethod
    def full(cls, d: int, **kw) -> "GaConfig":
        """Settings for maximizing EI over the whole box: pop 2d, 100 generations."""
        return cls(pop_size=max(2, 2 * d), max_gen=100, **kw)

    @classmethod
    def line(cls, **kw) -> "GaConfig":
        """Settings for one-dimensional searches: pop 10, 20 generations."""
        return cls(pop_size=10, max_gen=20, **kw)


def sbx_crossover(p1, p2, eta, bounds, rng, clip=True):
    """Simulated binary crossover of two parents.

    Each variable draws its own spread factor. With ``clip=False`` the raw
    children are returned; they always satisfy ``c1 + c2 == p1 + p2``.
    """
    p1 = np.asarray(p1, dtype=float)
    p2 = np.asarray(p2, dtype=float)
    u = rng.random(p1.shape)
    beta = np.where(
        u <= 0.5,
        (2.0 * u) ** (1.0 / (eta + 1.0)),
        (1.0 / (2.0 * (1.0 - u))) ** (1.0 / (eta + 1.0)),
    )
    mid = 0.5 * (p1 + p2)
    half = 0.5 * beta * (p1 - p2)
    c1, c2 = mid + half, mid - half
    if clip:
        b = as_bounds(bounds)
        c1 = np.clip(c1, b[:, 0], b[:, 1])
        c2 = np.clip(c2, b[:, 0], b[:, 1])
    return c1, c2


def polynomial_delta(x, lo, hi, u, eta):
    """Bounded polynomial-mutation step for draws ``u`` (zero at ``u = 0.5``)."""
    width = hi - lo
    safe = np.where(width > 0, width, 1.0)
    d1 = (x - lo) / safe
    d2 = (hi - x) / safe
    power = 1.0 / (eta + 1.0)
    lower = u < 0.5
    val_lo = 2.0 * u + (1.0 - 2.0 * u) * (1.0 - d1) ** (eta + 1.0)
    val_hi = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * (1.0 - d2) ** (eta + 1.0)
    dq = np.where(lower, val_lo**power - 1.0, 1.0 - val_hi**power)
    return np.where(width > 0, dq * width, 0.0)


def polynomial_mutation(x, eta, p_mut, bounds, rng):
    """Mutate each variable with probability ``p_mut``; result stays in bounds."""
    b = as_bounds(bounds)
    x = np.asarray(x, dtype=float)
    mask = rng.random(x.shape) < p_mut
    u = rng.random(x.shape)
    lo = np.broadcast_to(b[:, 0], x.shape)
    hi = np.broadcast_to(b[:, 1], x.shape)
    out = x.copy()
    out[mask] += polynomial_delta(x[mask], lo[mask], hi[mask], u[mask], eta)
    return np.clip(out, lo, hi)


def _tournament(fitness, k, m, rng):
    cand = rng.integers(0, fitness.size, size=(m, k))
    f = fitness[cand]
    top = f.max(axis=1, keepdims=True)
    return np.where(f == top, cand, fitness.size).min(axis=1)


def tournament_select(fitness, k, rng) -> int:
    """Index of the fittest of ``k`` candidates drawn with replacement.

    Ties go to the lowest index.
    """
    fitness = np.asarray(fitness, dtype=float)
    if fitness.size == 0:
        raise InvalidArgumentError("empty population")
    return int(_tournament(fitness, k, 1, rng)[0])


def _clean(values):
    values = np.asarray(values, dtype=float).ravel()
    return np.where(np.isfinite(values), values, -np.inf)


def ga_maximize(
    objective: Callable,
    bounds,
    cfg: GaConfig,
    rng=None,
    vectorized: bool = False,
    history: Optional[list] = None,
):
    """Maximize ``objective`` over a box.

    Parameters
    ----------
    objective : callable
        Maps a k-vector to a float, or, with ``vectorized=True``, a
        ``(p, k)`` array to ``p`` floats. Non-finite values count as ``-inf``.
    bounds : (k, 2) array-like
    cfg : GaConfig
    rng : Generator, int or None
        Falls back to ``cfg.seed`` when omitted.
    history : list, optional
        If given, receives the best-so-far fitness after every generation
        (including the initial population) and a copy of each population.

    Returns
    -------
    (x, value)
        Best individual ever evaluated. Exactly
        ``cfg.pop_size * (cfg.max_gen + 1)`` objective evaluations are made.
    """
    b = as_bounds(bounds)
    rng = as_generator(cfg.seed if rng is None else rng)
    k = b.shape[0]
    lo, hi = b[:, 0], b[:, 1]
    p = cfg.pop_size
    p_mut = 1.0 / k if cfg.p_mutation is None else cfg.p_mutation

    def evaluate(pop):
        if vectorized:
            return _clean(objective(pop))
        return _clean([objective(ind) for ind in pop])

    pop = lo + rng.random((p, k)) * (hi - lo)
    fit = evaluate(pop)
    i = int(np.argmax(fit))
    best_x, best_f = pop[i].copy(), fit[i]
    if history is not None:
        history.append((best_f, pop.copy()))

    for _ in range(cfg.max_gen):
        n_pairs = (p + 1) // 2
        parents = _tournament(fit, cfg.tournament_size, 2 * n_pairs, rng)
        a, c = pop[parents[:n_pairs]], pop[parents[n_pairs:]]
        cross = rng.random(n_pairs) < cfg.p_crossover
        ca, cc = sbx_crossover(a, c, cfg.eta_crossover, b, rng)
        a = np.where(cross[:, None], ca, a)
        c = np.where(cross[:, None], cc, c)
        children = np.empty_like(pop)
        children[0::2] = a
        children[1::2] = c[: p // 2]
        children = polynomial_mutation(children, cfg.eta_mutation, p_mut, b, rng)
        child_fit = evaluate(children)
        i = int(np.argmax(child_fit))
        if child_fit[i] > best_f:
            best_x, best_f = children[i].copy(), child_fit[i]
        else:
            # elitism: best-so-far replaces the worst child
            w = int(np.argmin(child_fit))
            children[w], child_fit[w] = best_x, best_f
        pop, fit = children, child_fit
        if history is not None:
            history.append((best_f, pop.copy()))

    return best_x, float(best_f)
