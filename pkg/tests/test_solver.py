import warnings

import numpy as np
import pytest

from chessboard_bisect.measures import WeightedCloud
from chessboard_bisect.solver import (
    SolveConfig, newton_on_spheres, solve, sphere_starts, tangent_basis, validate,
)
from chessboard_bisect.testmap import BisectionResult, TestPoint, decode_zero

from conftest import gaussian_clouds, necklace_measures, random_unit


@pytest.fixture(scope="module")
def d2k2():
    rng = np.random.default_rng(3)
    clouds = gaussian_clouds(rng, 3, 2)
    return clouds, solve(clouds, 2, SolveConfig(seed=5))


def test_config_validation():
    with pytest.raises(ValueError):
        SolveConfig(residual_tol=0)
    with pytest.raises(ValueError):
        SolveConfig(restarts=0)


def test_tangent_basis_is_orthonormal_complement(rng):
    for dim in (1, 2, 3, 5):
        x = random_unit(rng, dim)
        B = tangent_basis(x)
        assert B.shape == (dim, dim - 1)
        assert np.allclose(B.T @ B, np.eye(dim - 1), atol=1e-14)
        assert np.allclose(x @ B, 0, atol=1e-14)


def test_starts_are_unit_and_seeded():
    a = sphere_starts([2, 3], 8, seed=1)
    b = sphere_starts([2, 3], 8, seed=1)
    assert all(np.array_equal(x, y) for s, t in zip(a, b) for x, y in zip(s, t))
    assert all(abs(np.linalg.norm(x) - 1) < 1e-14 for s in a for x in s)


def test_newton_finds_sphere_point():
    # zero of x_1 - x_2 on the circle, from a nearby start
    F = lambda pt: np.array([pt[0][0] - pt[0][1]])
    x, res, its, status = newton_on_spheres(F, [np.array([1.0, 0.0])], SolveConfig(), 1e-12)
    assert status == "converged" and res <= 1e-12
    assert abs(abs(x[0][0]) - np.sqrt(0.5)) < 1e-10


def test_symmetric_measure_with_one_cut(rng):
    pts = rng.normal(size=(10, 2))
    c = WeightedCloud(np.vstack([pts, -pts]), np.ones(20), 0.3)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        rep = solve([c], 1)
    assert rep.ok
    assert len(rep.result.cuts) == 1 and abs(rep.result.cuts[0]) < 1e-9
    assert rep.result.residual < 1e-9


def test_necklace_cuts_bisect_both(necklace):
    from fractions import Fraction
    from chessboard_bisect.measures import PiecewiseUniform1D
    rep = solve(necklace, 2)
    assert rep.ok and len(rep.result.cuts) == 2
    a, b = rep.result.cuts
    # every pair {x, x + 2} with 0 <= x <= 2 bisects the unsmoothed pair
    assert abs((b - a) - 2.0) < 0.02 and -0.02 <= a <= 2.02
    for mu in (PiecewiseUniform1D.uniform([(0, 4)]), PiecewiseUniform1D.uniform([(0, 1), (2, 3)])):
        imb = mu.chessboard_imbalance([Fraction(a), Fraction(b)])
        assert abs(float(imb)) / float(mu.total_mass) < 0.02


def test_random_instance(d2k2):
    clouds, rep = d2k2
    assert rep.ok and rep.result.residual <= 1e-6
    assert validate(clouds, rep.result).passed
    assert rep.certificate["certified"] is True


def test_determinism(d2k2):
    clouds, rep = d2k2
    again = solve(clouds, 2, SolveConfig(seed=5))
    assert again.to_json_dict() == rep.to_json_dict()


def test_threads_do_not_change_answer(d2k2):
    clouds, rep = d2k2
    threaded = solve(clouds, 2, SolveConfig(seed=5, threads=4))
    assert threaded.to_json_dict() == rep.to_json_dict()


def test_antipodal_swap(d2k2):
    clouds, rep = d2k2
    r = rep.result
    flipped = decode_zero(clouds, TestPoint(r.direction, -r.n))
    assert np.allclose(flipped.cuts, r.cuts, atol=1e-12)
    assert np.allclose(flipped.imbalances, -r.imbalances, atol=1e-9)
    assert validate(clouds, flipped).passed


def test_wrong_cut_fails_validation(d2k2):
    clouds, rep = d2k2
    r = rep.result
    bad = BisectionResult(r.direction, r.n, r.a_v, r.alpha, r.p_coeffs,
                          [r.cuts[0] + 0.3, *r.cuts[1:]], r.imbalances, r.residual)
    out = validate(clouds, bad)
    assert not out.passed
    assert out.residual > 1e-3 or not out.polynomial_consistent


def test_fewer_real_roots_validated_on_reduced_cuts(rng):
    pts = rng.normal(size=(8, 1))
    c = WeightedCloud(np.vstack([pts, -pts]), np.ones(16), 0.3)
    p = np.array([0.0, 1.0, 0.0, 1.0])  # t^3 + t: one real root
    res = BisectionResult(np.array([1.0]), np.array([1.0, 0.0, 1.0]) / np.sqrt(2), 0.0, 0.0,
                          p, [0.0], np.zeros(1), 0.0)
    out = validate([c], res)
    assert out.passed and out.polynomial_consistent


def test_failure_report():
    # two tight blobs on a line cannot both be halved by one point
    a = WeightedCloud([[0.0]], [1.0], 0.05)
    b = WeightedCloud([[3.0]], [1.0], 0.05)
    with pytest.warns(UserWarning):
        rep = solve([a, b], 1, SolveConfig(restarts=3))
    assert not rep.ok
    assert len(rep.attempts) == 3
    assert rep.best_residual > 0.5
    obj = rep.to_json_dict()
    assert obj["failure"]["best_residual"] == rep.best_residual
    assert len(obj["failure"]["attempts"]) == 3


def test_input_checks(rng):
    with pytest.raises(ValueError):
        solve([], 2)
    with pytest.raises(ValueError):
        solve([gaussian_clouds(rng, 1, 2)[0], gaussian_clouds(rng, 1, 3)[0]], 1)
