from pathlib import Path

import pytest

from chessboard_bisect.certifier import (
    CSV_COLUMNS, IndexProblem, certify, grid, ideal_member, involution, parity_table,
    step_problem, step_transform_member, table_csv,
)
from chessboard_bisect.ideal import DegreeOverflowError
from chessboard_bisect.parity import stirling2


def test_membership_examples():
    assert ideal_member(1, 2, 0) == 0
    assert ideal_member(1, 1, 0) == 0
    assert ideal_member(2, 3, 0) == 1


def test_certificate_examples():
    assert certify(2, 2, 1).certified == 1
    assert certify(2, 3, 0).certified == 0
    for d in range(1, 4):
        for m in range(0, 3):
            assert certify(d, 1, m).certified == 1


def test_step_examples():
    assert step_transform_member(1, 2, 0, 1) == 0
    assert step_transform_member(2, 3, 0, 3) == 1


def test_step_three_target_vanishes_when_binomial_even():
    _, target, _ = step_problem(2, 3, 0, 3)
    assert not target


def test_involution_is_an_involution():
    pres, target, gens = step_problem(2, 2, 1, 1)
    t2 = pres.ring.gen("t2")
    assert involution(involution(t2 ** 3)) == t2 ** 3
    assert involution(t2) == pres.ring.gen("t1") + t2


def test_problem_validation():
    with pytest.raises(ValueError):
        IndexProblem(0, 1, 0)
    with pytest.raises(ValueError):
        IndexProblem(1, 0, 0)
    with pytest.raises(ValueError):
        IndexProblem(1, 1, -1)
    p = IndexProblem(2, 5, 1)
    assert (p.a, p.b, p.n, p.target_exp) == (3, 2, 7, 6)


def test_degree_cap():
    with pytest.raises(DegreeOverflowError):
        ideal_member(4, 6, 3, cap=8)


def test_grid_order_and_size():
    g = grid(4, 6, 3)
    assert len(g) == 96
    assert g[:3] == [(1, 1, 0), (1, 1, 1), (1, 1, 2)]
    assert grid(0, 6, 3) == []


def test_default_grid_consistent():
    certs = parity_table(4, 6, 3)
    assert all(c.consistent for c in certs)
    assert all(c.step_chain[:3] == (c.member,) * 3 for c in certs)
    assert not any(c.step_chain[3] for c in certs)


def test_m_zero_rows_follow_stirling_parity():
    for c in parity_table(4, 6, 0):
        p = c.problem
        assert c.certified == stirling2(p.d + p.k - 1, p.k) % 2


def test_parallel_table_identical():
    assert parity_table(2, 3, 1, workers=2) == parity_table(2, 3, 1)


def test_empty_table_is_header_only():
    assert table_csv(parity_table(0, 6, 3)) == ",".join(CSV_COLUMNS) + "\n"


def test_csv_golden():
    golden = Path(__file__).parent / "golden" / "table_2_3_1.csv"
    assert table_csv(parity_table(2, 3, 1)) == golden.read_text()


def test_certificate_json_form():
    assert certify(2, 2, 1).to_dict() == {
        "d": 2, "k": 2, "m": 1, "n": 4, "member": 0, "certified": True,
        "stirling_parity": 1, "consistent": True, "step_chain": [0, 0, 0, 0],
    }
