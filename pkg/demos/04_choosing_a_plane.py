# Four clouds in R^3.  For every plane V we project the clouds onto V; the
# search looks for a plane and two parallel lines inside it that bisect all
# four projections.  S(4, 2) = 7 is odd, so such a plane exists.

import numpy as np

from chessboard_bisect import ProjectionAssignment, SolveConfig, WeightedCloud, assign_search
from chessboard_bisect.grasssearch import validate_assignment

rng = np.random.default_rng(8)
clouds = [WeightedCloud(rng.normal(size=3) + rng.normal(size=(20, 3)), np.ones(20), 0.3)
          for _ in range(4)]
assignments = [ProjectionAssignment(c) for c in clouds]

rep = assign_search(assignments, d=2, k=2, cfg=SolveConfig(seed=8, residual_tol=1e-5))
print("ok:", rep.ok, "certificate:", rep.certificate["certified"])
print("frame rows (an orthonormal basis of V):")
print(np.round(rep.frame, 4))
print("normal of V:", np.round(np.cross(*rep.frame), 4))
print("cuts:", np.round(rep.result.cuts, 4), "residual:", rep.result.residual)
print("validated:", validate_assignment(assignments, rep.frame, rep.result, 1e-5).passed)
