import pytest

from voacheck import freefields as ff
from voacheck import w3
from voacheck.freefields import FockState


def test_constants():
    assert w3.BETA == w3.as_scalar(4) / 3
    assert w3.CENTRAL_CHARGE == -2


def test_zero_modes_on_generators():
    v = FockState.from_modes([("b", -2)])
    assert w3.L(0, v) == v * 2
    assert w3.Wt(0, v) == v * 4
    u = FockState.from_modes([("c", -3)])
    assert w3.Wt(0, u) == u * -9


@pytest.mark.parametrize("m,n", [(1, -1), (2, -2), (3, -1), (-2, 1), (0, 0)])
def test_relations_low_level(m, n):
    for r in w3.check_w3_relations(m, n, 4):
        assert r.passed and r.via_ope, r


def test_lambda_on_vacuum():
    # Lambda_0 on the vacuum: only the L_k L_{-k} tail can act, and it vanishes
    assert w3.lambda_mode(0, FockState.vacuum()) == 0


def test_virasoro_central_text():
    ok, text = w3.virasoro_central_example(4)
    assert ok and text == "[L_2, L_-2] = 4 L_0 - 1"


def test_opes():
    assert all(c.passed for c in w3.check_w3_opes())
    opes, fams = w3.check_zero_modes(3, 3)
    assert all(c.passed for c in opes)
    assert len(fams) == 8 and all(f.passed for f in fams)


def test_singular_scan():
    assert w3.scan_singular_vectors("Fbar^0", 5, 3) == {}
    scan = w3.scan_singular_vectors("F^-1", 3, 3)
    assert list(scan) == [0]
    assert scan[0] == [ff.apply_mode(("b", 0), FockState.vacuum())]


def test_cyclicity_and_nonsplit():
    r = w3.cyclicity_check(0, 5)
    assert r.passed and r.span_dims[4] == 3
    ns = w3.nonsplit_check(0, 2, 1)
    assert ns.certificate and not ns.feasible
