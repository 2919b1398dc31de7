"""Tour of the closed-form minimum-energy measures.

Three templates cover the catalogue: a point mass at the left endpoint
for pinned processes with nonnegatively correlated increments, an
endpoint pair for stationary increment kernels on short intervals, and
an endpoint pair plus one interior atom when the interval is exactly
twice the lag.
"""

import numpy as np

from gaussmin import (
    FractionalBM,
    FractionalGaussianNoise,
    Grid,
    c_star,
    check_optimality,
    dirac,
    energy,
    rate,
    three_point,
    two_point,
)

# pinned process: the whole problem collapses to the left endpoint
fbm = FractionalBM(0.75)
mu = dirac(1.0)
e = energy(fbm, mu)
print(f"fBm H=0.75 on [1, 2]: sigma*^2 = {e:.12f}, rate = {rate(e):+.6f}")
print(f"  (equals a^(2H) = {1.0 ** 1.5})")

# short interval: half the mass on each endpoint
fgn = FractionalGaussianNoise(0.75, 1.0)
for b in (0.25, 0.5, 1.0):
    mu = two_point(0.0, b)
    e = energy(fgn, mu)
    rep = check_optimality(fgn, mu, Grid(0.0, b, 401))
    print(f"fGn H=0.75 on [0, {b}]: sigma*^2 = {e:.12f}  verified={rep.passed}")

# interval of twice the lag: an interior atom appears with weight
# C/(2+C) relative to the endpoints
C = c_star(fgn, 1.0)
mu3 = three_point(0.0, 1.0, C)
e3 = energy(fgn, mu3)
rep3 = check_optimality(fgn, mu3, Grid(0.0, 2.0, 401))
print(f"\nfGn H=0.75 on [0, 2]: interior weight coefficient C = {C:.12f}")
print(f"  atoms at {mu3.locations.tolist()} with weights "
      f"{np.round(mu3.weights, 6).tolist()}")
print(f"  sigma*^2 = {e3:.12f}, rate = {rate(e3):+.6f}, verified={rep3.passed}")

# the potential is flat at the optimum: equal at every atom, larger
# nowhere on the grid
print(f"  support deviation {rep3.support_deviation:.2e}, "
      f"global slack {rep3.global_slack:+.2e}")
