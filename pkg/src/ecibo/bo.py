"""Optimization drivers: standard BO, ECI-BO and CoordinateLineBO.

All three share the same loop: Latin hypercube initial design, GP fit on the
whole archive, acquisition maximization with the GA, one expensive
evaluation, incumbent update. They differ only in how the infill is chosen.

- ``bo`` maximizes EI over the full box.
- ``eci-bo`` sweeps over all coordinates, ordered by descending maximal
  ECI, moving the incumbent along one coordinate per evaluation.
- ``coordinate-line-bo`` moves the incumbent along a uniformly random
  coordinate per evaluation.
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, List, Optional, Tuple

import numpy as np

from . import rng as rngs
from .acquisition import Incumbent, eci, ei_surface
from .benchmarks import Problem
from .doe import latin_hypercube
from .exceptions import InvalidArgumentError, ModelSingularError
from .ga import GaConfig, ga_maximize
from .gp import DEFAULT_NUGGET, Dataset, GpModel, fit

log = logging.getLogger(__name__)

BO = "bo"
ECI_BO = "eci-bo"
COORDINATE_LINE_BO = "coordinate-line-bo"
ALGORITHMS = (BO, ECI_BO, COORDINATE_LINE_BO)


@dataclass(frozen=True)
class BoConfig:
    """Settings shared by the drivers.

    ``ga_full`` defaults to ``GaConfig.full(d)`` (population 2d, 100
    generations) for the problem at hand. ``threads`` only affects how the
    maximal-ECI searches are scheduled, never the result.
    """

    n_init: int
    n_max: int
    seed: int = 0
    ga_full: Optional[GaConfig] = None
    ga_1d: GaConfig = field(default_factory=GaConfig.line)
    nugget: float = DEFAULT_NUGGET
    fit_restarts: int = 1
    threads: int = 1

    def __post_init__(self):
        if self.n_init < 2:
            raise InvalidArgumentError(f"n_init must be at least 2, got {self.n_init}")
        if self.n_max < self.n_init:
            raise InvalidArgumentError(f"n_max ({self.n_max}) is smaller than n_init ({self.n_init})")
        if self.seed < 0:
            raise InvalidArgumentError("seed must be nonnegative")

    def full_ga(self, d: int) -> GaConfig:
        return self.ga_full if self.ga_full is not None else GaConfig.full(d)

    def snapshot(self, d: int) -> dict:
        return {
            "n_init": self.n_init,
            "n_max": self.n_max,
            "seed": self.seed,
            "nugget": self.nugget,
            "fit_restarts": self.fit_restarts,
            "ga_full": asdict(self.full_ga(d)),
            "ga_1d": asdict(self.ga_1d),
        }


@dataclass(frozen=True)
class CoordinateOrder:
    """Coordinates (0-based) sorted by descending maximal ECI.

    ``max_values[i]`` is the maximal ECI of coordinate ``i``;
    ``max_values[order]`` is nonincreasing.
    """

    order: np.ndarray
    max_values: np.ndarray
    maximizers: np.ndarray

    @property
    def sorted_values(self) -> np.ndarray:
        return self.max_values[self.order]


def order_from_values(values) -> np.ndarray:
    """Stable descending argsort; equal values keep the lower index first."""
    values = np.asarray(values, dtype=float)
    return np.argsort(-values, kind="stable")


@dataclass
class RunRecord:
    """Per-evaluation log of one optimization run.

    ``coords[i]`` is the coordinate moved to produce evaluation ``i`` (``-1``
    for design points and full-space infills). ``orders`` pairs each
    coordinate order with the number of evaluations done when it was
    computed. ``fallbacks`` lists evaluation indices whose proposed infill
    duplicated an archived point and was replaced by a random point.
    """

    algorithm: str
    problem: str
    d: int
    x: np.ndarray
    f: np.ndarray
    best_f: np.ndarray
    coords: np.ndarray
    run: int = 0
    orders: List[Tuple[int, CoordinateOrder]] = field(default_factory=list)
    fallbacks: List[int] = field(default_factory=list)
    config: dict = field(default_factory=dict)
    status: str = "ok"
    message: str = ""
    wall_time: float = 0.0

    @property
    def n(self) -> int:
        return self.f.size

    @property
    def failed(self) -> bool:
        return self.status != "ok"

    @property
    def final_best(self) -> float:
        return float(self.best_f[-1])

    @property
    def incumbent(self) -> Incumbent:
        return Incumbent.from_data(self.x, self.f)

    def same_trajectory(self, other: "RunRecord") -> bool:
        """Bit-for-bit equality of everything except wall time."""
        return (
            self.algorithm == other.algorithm
            and self.status == other.status
            and np.array_equal(self.x, other.x)
            and np.array_equal(self.f, other.f)
            and np.array_equal(self.best_f, other.best_f)
            and np.array_equal(self.coords, other.coords)
            and self.fallbacks == other.fallbacks
            and len(self.orders) == len(other.orders)
            and all(
                a[0] == b[0]
                and np.array_equal(a[1].order, b[1].order)
                and np.array_equal(a[1].max_values, b[1].max_values)
                for a, b in zip(self.orders, other.orders)
            )
        )


class _Run:
    """Archive, incumbent and bookkeeping shared by the drivers."""

    def __init__(self, problem: Problem, cfg: BoConfig, algorithm: str):
        self.problem = problem
        self.cfg = cfg
        self.algorithm = algorithm
        self.key = rngs.algorithm_key(algorithm)
        self.data = Dataset(problem.bounds)
        self.best_f: List[float] = []
        self.coords: List[int] = []
        self.orders: List[Tuple[int, CoordinateOrder]] = []
        self.fallbacks: List[int] = []
        self.best_index = -1
        self.status, self.message = "ok", ""
        self.fallback_rng = rngs.stream(cfg.seed, rngs.ALGORITHM, self.key, rngs.FALLBACK)
        self.t0 = time.perf_counter()

    @property
    def n(self) -> int:
        return len(self.data)

    @property
    def bounds(self) -> np.ndarray:
        return self.problem.bounds

    @property
    def incumbent(self) -> Incumbent:
        return Incumbent(self.data.points[self.best_index], self.data.values[self.best_index])

    def stream(self, *keys) -> np.random.Generator:
        return rngs.stream(self.cfg.seed, rngs.ALGORITHM, self.key, *keys)

    def evaluate(self, x, coord: int = -1) -> float:
        x = np.clip(np.asarray(x, dtype=float), self.bounds[:, 0], self.bounds[:, 1])
        if self.data.contains(x):
            log.info("%s: eval %d duplicates an archived point, using a random point", self.algorithm, self.n + 1)
            self.fallbacks.append(self.n)
            lo, hi = self.bounds[:, 0], self.bounds[:, 1]
            while self.data.contains(x):
                x = lo + self.fallback_rng.random(lo.size) * (hi - lo)
        f = self.problem.evaluate(x)
        self.data.add(x, f)
        if self.best_index < 0 or f < self.data.values[self.best_index]:
            self.best_index = self.n - 1
        self.best_f.append(float(self.data.values[self.best_index]))
        self.coords.append(coord)
        return f

    def initial_design(self) -> None:
        design = latin_hypercube(self.cfg.n_init, self.bounds, rngs.stream(self.cfg.seed, rngs.DOE))
        for x in design:
            self.evaluate(x)

    def fit(self) -> GpModel:
        return fit(self.data, nugget=self.cfg.nugget, restarts=self.cfg.fit_restarts)

    def fail(self, exc: Exception) -> None:
        log.warning("%s aborted after %d evaluations: %s", self.algorithm, self.n, exc)
        self.status, self.message = "failed", f"{type(exc).__name__}: {exc}"

    def record(self) -> RunRecord:
        return RunRecord(
            algorithm=self.algorithm,
            problem=self.problem.id,
            d=self.problem.d,
            x=self.data.points,
            f=self.data.values,
            best_f=np.array(self.best_f),
            coords=np.array(self.coords, dtype=int),
            orders=self.orders,
            fallbacks=self.fallbacks,
            config=self.cfg.snapshot(self.problem.d),
            status=self.status,
            message=self.message,
            wall_time=time.perf_counter() - self.t0,
        )


def maximize_eci(model: GpModel, inc: Incumbent, coord: int, ga_cfg: GaConfig, rng) -> Tuple[float, float]:
    """Maximize ECI along ``coord`` with the GA; returns ``(t, ECI(t))``."""
    bounds = model.bounds[coord : coord + 1]
    t, value = ga_maximize(
        lambda pop: eci(model, inc, coord, pop[:, 0]),
        bounds,
        ga_cfg,
        rng=rng,
        vectorized=True,
    )
    return float(t[0]), value


def compute_coordinate_order(
    model: GpModel,
    inc: Incumbent,
    cfg: BoConfig,
    rngs_per_coord: Optional[list] = None,
    line_search: Optional[Callable] = None,
) -> CoordinateOrder:
    """Maximize ECI along every coordinate and sort coordinates by the maxima.

    Each coordinate gets its own random stream, so the result does not
    depend on ``cfg.threads``. ``line_search(coord, rng) -> (t, value)``
    replaces the GA search when given.
    """
    d = model.d
    if rngs_per_coord is None:
        rngs_per_coord = [rngs.stream(cfg.seed, rngs.ORDERING, i) for i in range(d)]
    if line_search is None:

        def line_search(i, g):
            return maximize_eci(model, inc, i, cfg.ga_1d, g)

    if cfg.threads > 1 and d > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            results = list(pool.map(line_search, range(d), rngs_per_coord))
    else:
        results = [line_search(i, g) for i, g in zip(range(d), rngs_per_coord)]
    maximizers = np.array([r[0] for r in results], dtype=float)
    values = np.array([r[1] for r in results], dtype=float)
    return CoordinateOrder(order=order_from_values(values), max_values=values, maximizers=maximizers)


def run_standard_bo(problem: Problem, cfg: BoConfig) -> RunRecord:
    """EI-driven BO with the acquisition maximized over the full box."""
    run = _Run(problem, cfg, BO)
    run.initial_design()
    ga_cfg = cfg.full_ga(problem.d)
    ga_rng = run.stream(rngs.GA)
    try:
        while run.n < cfg.n_max:
            model = run.fit()
            inc = run.incumbent
            x, _ = ga_maximize(
                lambda pop: ei_surface(model, inc, pop), run.bounds, ga_cfg, rng=ga_rng, vectorized=True
            )
            run.evaluate(x)
    except ModelSingularError as exc:
        run.fail(exc)
    return run.record()


def _move_along(run: _Run, model: GpModel, coord: int, ga_rng) -> None:
    inc = run.incumbent
    t, _ = maximize_eci(model, inc, coord, run.cfg.ga_1d, ga_rng)
    z = inc.x.copy()
    z[coord] = t
    run.evaluate(z, coord)


def run_eci_bo(problem: Problem, cfg: BoConfig) -> RunRecord:
    """ECI-BO: coordinate sweeps ordered by descending maximal ECI.

    The GP used for ordering is fitted at the start of the sweep and reused
    for the first coordinate step, since no data has been added in between.
    """
    run = _Run(problem, cfg, ECI_BO)
    run.initial_design()
    ga_rng = run.stream(rngs.GA)
    sweep = 0
    try:
        while run.n < cfg.n_max:
            model = run.fit()
            streams = [run.stream(rngs.ORDERING, sweep, i) for i in range(problem.d)]
            order = compute_coordinate_order(model, run.incumbent, cfg, streams)
            run.orders.append((run.n, order))
            for coord in order.order:
                if run.n >= cfg.n_max:
                    break
                if model is None:
                    model = run.fit()
                _move_along(run, model, int(coord), ga_rng)
                model = None
            sweep += 1
    except ModelSingularError as exc:
        run.fail(exc)
    return run.record()


def choose_random_coordinate(d: int, rng) -> int:
    return int(rng.integers(0, d))


def run_coordinate_line_bo(problem: Problem, cfg: BoConfig) -> RunRecord:
    """Baseline moving the incumbent along a uniformly random coordinate."""
    run = _Run(problem, cfg, COORDINATE_LINE_BO)
    run.initial_design()
    ga_rng = run.stream(rngs.GA)
    coord_rng = run.stream(rngs.COORDINATE)
    try:
        while run.n < cfg.n_max:
            coord = choose_random_coordinate(problem.d, coord_rng)
            model = run.fit()
            _move_along(run, model, coord, ga_rng)
    except ModelSingularError as exc:
        run.fail(exc)
    return run.record()


DRIVERS = {
    BO: run_standard_bo,
    ECI_BO: run_eci_bo,
    COORDINATE_LINE_BO: run_coordinate_line_bo,
}


def run_algorithm(name: str, problem: Problem, cfg: BoConfig) -> RunRecord:
    if name not in DRIVERS:
        raise InvalidArgumentError(f"unknown algorithm {name!r}; choose from {', '.join(ALGORITHMS)}")
    return DRIVERS[name](problem, cfg)
