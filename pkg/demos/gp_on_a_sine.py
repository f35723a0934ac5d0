"""
Fitting the Gaussian process to a sine wave
===========================================

Seven samples of sin(x) on [0, 2π], a fitted model, and its predictions
between the samples.
"""

import numpy as np

from ecibo import Dataset, fit, predict_many

x = np.linspace(0.3, 2 * np.pi - 0.3, 7)
data = Dataset([[0.0, 2 * np.pi]], x[:, None], np.sin(x))

# the length-scale is chosen by maximizing the concentrated likelihood
model = fit(data)
print(f"length-scale (unit box) {model.params.length_scale:.4f}")
print(f"process variance        {model.params.variance:.4f}")
print(f"log-likelihood          {model.loglik:.4f}")

# the posterior mean interpolates and sigma shrinks to ~0 at the samples
q = np.linspace(0, 2 * np.pi, 13)
mu, sigma = predict_many(model, q[:, None])
print(f"\n{'x':>6} {'sin(x)':>9} {'mean':>9} {'sigma':>9}")
for qi, m, s in zip(q, mu, sigma):
    print(f"{qi:6.3f} {np.sin(qi):9.4f} {m:9.4f} {s:9.2e}")
