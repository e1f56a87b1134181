# Three point clouds in the plane, two parallel lines.  S(3, 2) = 3 is odd, so a
# chessboard bisection exists; the solver finds one and an independent
# re-integration checks it.

import numpy as np

from chessboard_bisect import SolveConfig, WeightedCloud, solve, validate
from chessboard_bisect.testmap import TestPoint, decode_zero, eval_test_map, first_factor_action

rng = np.random.default_rng(42)
clouds = [WeightedCloud(rng.normal(size=2) + rng.normal(size=(20, 2)), np.ones(20), 0.3)
          for _ in range(3)]

rep = solve(clouds, k=2, cfg=SolveConfig(seed=1))
r = rep.result
print("ok:", rep.ok, "restarts used:", len(rep.attempts))
print("direction:", np.round(r.direction, 4))
print("cuts along it:", np.round(r.cuts, 4))
print("imbalances:", r.imbalances)
print("validated:", validate(clouds, r).passed)

# the two symmetries of the test map
tp = TestPoint(r.direction, np.array([0.6, 0.8]))
f = eval_test_map(clouds, tp)
print(np.abs(eval_test_map(clouds, TestPoint(tp.v, -tp.n)) + f).max())
print(np.abs(eval_test_map(clouds, TestPoint(-tp.v, first_factor_action(tp.n))) - f).max())

# flipping n swaps the colours and keeps the cuts
flip = decode_zero(clouds, TestPoint(r.direction, -r.n))
print(np.round(flip.cuts, 4), np.round(flip.imbalances, 12))
