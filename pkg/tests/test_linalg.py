from voacheck import linalg
from voacheck.scalars import Scalar, as_scalar


def m(rows):
    return [[as_scalar(x) for x in r] for r in rows]


def test_det_and_inverse():
    A = m([[1, 2], [3, 4]])
    assert linalg.det(A) == -2
    inv = linalg.inverse(A)
    assert inv[0][0] == -2 and inv[1][1] == Scalar(-1, 0) / 2


def test_nullspace_and_rank():
    A = m([[1, 1, 0], [0, 0, 1]])
    assert linalg.rank(A, 3) == 2
    (v,) = linalg.nullspace(A, 3)
    assert [sum(a * x for a, x in zip(row, v)) for row in A] == [0, 0]


def test_solve_inconsistent_is_none():
    A = m([[1, 1], [1, 1]])
    assert linalg.solve(A, [as_scalar(1), as_scalar(2)]) is None
    assert linalg.solve(A, [as_scalar(2), as_scalar(2)]) is not None
