"""
A small campaign with the harness
=================================

Three seeds of ECI-BO and standard BO on the 6-D Ellipsoid, written to a
temporary directory, then summarized and compared the same way the
``ecibo summarize`` and ``ecibo compare`` commands do.
"""

import tempfile

from ecibo.harness import ExperimentConfig, run_experiment

with tempfile.TemporaryDirectory() as out:
    cfg = ExperimentConfig(problem="ellipsoid", dim=6, algorithms=["eci-bo", "bo"], n_init=20, n_max=50,
                           runs=3, seed=1, out=out)
    summary = run_experiment(cfg)

for name, s in sorted(summary["stats"].items()):
    print(f"{name:<8} median final best {s['median']:.4e}  (min {s['min']:.4e}, max {s['max']:.4e})")

# with three pairs the smallest exact two-sided p is 0.25, so only "similar" is possible
for t in summary["tests"]:
    print(f"{t['a']} vs {t['b']}: W = {t['statistic']:g}, p = {t['p_value']:.3f}, {t['a']} is {t['verdict']}")
