"""
Three optimizers on the three-hump camel
========================================

Ten Latin hypercube points followed by four infill points, once with
standard BO, once with ECI-BO and once with random-coordinate line BO.
All three start from the same design because the design only depends on
the seed.
"""

import numpy as np

from ecibo import BoConfig, make_problem, run_coordinate_line_bo, run_eci_bo, run_standard_bo

cfg = BoConfig(n_init=10, n_max=14, seed=0)

for run in (run_standard_bo, run_eci_bo, run_coordinate_line_bo):
    problem = make_problem("three_hump_camel", 2)
    rec = run(problem, cfg)
    print(f"\n{rec.algorithm}: best f after the design {rec.best_f[cfg.n_init - 1]:.4f}")
    for i in range(cfg.n_init, rec.n):
        moved = "all" if rec.coords[i] < 0 else f"x{rec.coords[i] + 1}"
        print(f"  eval {i + 1:2d}  moved {moved:>3}  x = {np.round(rec.x[i], 4)}  f = {rec.f[i]:9.4f}  best = {rec.best_f[i]:.4f}")
    for n_done, order in rec.orders:
        print(f"  sweep after {n_done} evaluations, order {(order.order + 1).tolist()}")
