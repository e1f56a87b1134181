# Two thieves, one line.  Measure 1 is uniform on [0, 4]; measure 2 is uniform
# on [0, 1] and [2, 3].  Two cuts should split both fairly.

from fractions import Fraction

import numpy as np

from chessboard_bisect.measures import PiecewiseUniform1D, smoothed_uniform_cloud
from chessboard_bisect.solver import SolveConfig, solve

bandwidth = 0.01
measures = [smoothed_uniform_cloud([(0, 4)], bandwidth),
            smoothed_uniform_cloud([(0, 1), (2, 3)], bandwidth)]

rep = solve(measures, k=2, cfg=SolveConfig(seed=0))
print("cuts:", np.round(rep.result.cuts, 5), "residual:", rep.result.residual)

# The answer is not unique: any pair {x, x + 2} with 0 <= x <= 2 works in the
# exact model, and different seeds land on different members of that family.
exact = [PiecewiseUniform1D.uniform([(0, 4)]), PiecewiseUniform1D.uniform([(0, 1), (2, 3)])]
for x in (Fraction(0), Fraction(1, 2), Fraction(1), Fraction(7, 4)):
    print(x, [mu.chessboard_imbalance([x, x + 2]) for mu in exact])

for seed in range(4):
    r = solve(measures, 2, SolveConfig(seed=seed)).result
    # cuts are offsets along the direction, which may point either way
    print("seed", seed, np.round(np.sort(r.direction[0] * np.array(r.cuts)), 4))
