import numpy as np
import pytest
from scipy.stats import special_ortho_group

from chessboard_bisect.grasssearch import (
    Grassmannian, ProjectionAssignment, assign_search, complement, frame_starts, polar, restrict,
    validate_assignment,
)
from chessboard_bisect.measures import WeightedCloud
from chessboard_bisect.solver import SolveConfig, solve, validate
from chessboard_bisect.testmap import BisectionResult, TestPoint, decode_zero

from conftest import gaussian_clouds


@pytest.fixture(scope="module")
def r3_search():
    rng = np.random.default_rng(8)
    assigns = [ProjectionAssignment(c) for c in gaussian_clouds(rng, 4, 3)]
    return assigns, assign_search(assigns, 2, 2, SolveConfig(seed=1))


def test_coordinate_frame_truncates(rng):
    c = WeightedCloud(rng.normal(size=(5, 3)), np.ones(5), 0.2)
    r = restrict(ProjectionAssignment(c), np.eye(3)[:2])
    assert np.array_equal(r.points, c.points[:, :2])
    assert r.bandwidth == c.bandwidth and np.array_equal(r.weights, c.weights)


def test_orthogonal_point_projects_to_origin():
    c = WeightedCloud([[0.0, 0.0, 4.0]], [1.0], 0.2)
    assert np.allclose(restrict(ProjectionAssignment(c), np.eye(3)[:2]).points, 0.0)


def test_rotation_within_plane_is_rigid(rng):
    c = WeightedCloud(rng.normal(size=(6, 3)), np.ones(6), 0.2)
    F = polar(rng.normal(size=(2, 3)))
    R = special_ortho_group.rvs(2, random_state=3)
    a = restrict(ProjectionAssignment(c), F).points
    b = restrict(ProjectionAssignment(c), R @ F).points
    assert np.allclose(b, a @ R.T, atol=1e-13)


def test_non_orthonormal_frame_rejected(rng):
    c = WeightedCloud(rng.normal(size=(3, 3)), np.ones(3), 0.2)
    with pytest.raises(ValueError):
        restrict(ProjectionAssignment(c), np.array([[1.0, 0.0, 0.0], [1.0, 1.0, 0.0]]))


def test_charts_and_starts(rng):
    F = polar(rng.normal(size=(2, 4)))
    C = complement(F)
    assert np.allclose(F @ C.T, 0, atol=1e-13)
    dim, phi = Grassmannian().chart(F)
    assert dim == 4
    G = phi(0.1 * rng.normal(size=4))
    assert np.allclose(G @ G.T, np.eye(2), atol=1e-13)
    for frame, v, n in frame_starts(2, 3, 2, 5, seed=0):
        assert np.allclose(frame @ frame.T, np.eye(2), atol=1e-13)
        assert abs(np.linalg.norm(v) - 1) < 1e-14 and abs(np.linalg.norm(n) - 1) < 1e-14


def test_plane_search_in_r3(r3_search):
    assigns, rep = r3_search
    assert rep.ok and rep.result.residual <= 1e-5
    assert len(rep.result.cuts) <= 2
    assert validate_assignment(assigns, rep.frame, rep.result, 1e-5).passed
    assert rep.certificate["certified"] is True
    assert "frame" in rep.to_json_dict()


def test_gauge_invariance(r3_search):
    assigns, rep = r3_search
    R = special_ortho_group.rvs(2, random_state=11)
    r = rep.result
    rotated = BisectionResult(R @ r.direction, r.n, r.a_v, r.alpha, r.p_coeffs, r.cuts,
                              r.imbalances, r.residual)
    clouds = [a.restrict(R @ rep.frame) for a in assigns]
    assert abs(validate(clouds, rotated).residual - validate_assignment(assigns, rep.frame, r).residual) < 1e-9


def test_m_zero_matches_solver(rng):
    clouds = gaussian_clouds(rng, 3, 2)
    cfg = SolveConfig(seed=2)
    a = assign_search([ProjectionAssignment(c) for c in clouds], 2, 2, cfg)
    s = solve(clouds, 2, cfg)
    ja, js = a.to_json_dict(), s.to_json_dict()
    ja.pop("frame")
    assert ja == js


def test_rotationally_symmetric_assignments(rng):
    # centrally symmetric ambient clouds: on the coordinate plane a line through 0 bisects all
    assigns = []
    for _ in range(4):
        pts = rng.normal(size=(6, 3)) * rng.uniform(0.5, 2.0)
        assigns.append(ProjectionAssignment(WeightedCloud(np.vstack([pts, -pts]), np.ones(12), 0.3)))
    frame = np.eye(3)[:2]
    clouds = [a.restrict(frame) for a in assigns]
    res = decode_zero(clouds, TestPoint(np.array([1.0, 0.0]), np.array([1.0, 0.0])))
    assert len(res.cuts) == 1 and abs(res.cuts[0]) < 1e-12
    assert validate_assignment(assigns, frame, res).passed


def test_dimension_checks(rng):
    a = ProjectionAssignment(gaussian_clouds(rng, 1, 3)[0])
    b = ProjectionAssignment(gaussian_clouds(rng, 1, 2)[0])
    with pytest.raises(ValueError):
        assign_search([a, b], 2, 1)
    with pytest.raises(ValueError):
        assign_search([a, a], 4, 1)
