from fractions import Fraction

import pytest

from voacheck import dhat
from voacheck.dhat import DOElement, RealizationConfig
from voacheck.freefields import FockState


def test_heisenberg_cocycle():
    br = dhat.dhat_bracket(DOElement.J(0, 1), DOElement.J(0, -1))
    assert not br.terms and br.central == 1


def test_antisymmetry_and_jacobi():
    x, y = DOElement.J(2, 1), DOElement.J(1, -2)
    assert dhat.dhat_bracket(x, y) == dhat.dhat_bracket(y, x) * -1
    assert all(ok for *_, ok in dhat.check_jacobi(20, seed=3))


def test_basis_convert_roundtrip():
    for l in range(4):
        for k in (-2, 0, 3):
            back = {}
            for m, a in dhat.basis_convert(l, k, "J->L").items():
                for n, b in dhat.basis_convert(m, k, "L->J").items():
                    back[n] = back.get(n, 0) + a * b
            assert {n: v for n, v in back.items() if v} == {l: 1}


def test_central_constant():
    assert dhat.central_constant(0, 0) == 0
    assert dhat.central_constant(0, 1) == -1
    assert dhat.central_constant(1, 2) == Fraction(-1)


def test_heisenberg_realized():
    cfg = RealizationConfig(0, 2, 2)
    vac = FockState.vacuum()
    r1, rm1 = dhat.realize_mode(0, 1, cfg), dhat.realize_mode(0, -1, cfg)
    assert r1.apply(rm1.apply(vac)) - rm1.apply(r1.apply(vac)) == vac * -1


def test_window_enforced():
    with pytest.raises(ValueError):
        dhat.realize_mode(0, 5, RealizationConfig(0, 2, 2))


@pytest.mark.parametrize("s", [0, 1, -1])
def test_representation_small(s):
    cfg = RealizationConfig(s, 3, 2)
    res = dhat.verify_representation(cfg=cfg, max_l=2)
    assert all(r.passed for r in res)
    assert {r.solved_central for r in res if r.solved_central is not None} == {-1}
