from voacheck import freefields as ff
from voacheck.freefields import FockState


def vac(alpha=0):
    return FockState.vacuum(alpha)


def test_fermion_anticommutation():
    bc = FockState.from_modes([("b", -1), ("c", -1)])
    cb = FockState.from_modes([("c", -1), ("b", -1)])
    assert bc == -cb
    assert FockState.from_modes([("b", -1), ("b", -1)]) == 0
    assert ff.apply_mode(("b", 1), FockState.from_modes([("c", -1)])) == vac()
    assert ff.apply_modes([("c", 0), ("b", 0)], vac()) == vac()


def test_vacuum_annihilators():
    for mode in (("b", 1), ("c", 0), ("beta", 1), ("gamma", 0), ("j", 1)):
        assert ff.apply_mode(mode, vac()) == 0
    # j(0) measures the momentum
    assert ff.apply_mode(("j", 0), vac(3)) == vac(3) * 3


def test_beta_gamma_bracket():
    v = FockState.from_modes([("beta", 0)])
    # [gamma(m), beta(n)] = delta_{m+n,0}
    assert ff.commutator_on(("gamma", 0), ("beta", 0), vac()) == vac()
    assert ff.apply_mode(("gamma", 0), v) == vac()


def test_heisenberg():
    v = FockState.from_modes([("j", -2)])
    assert ff.apply_mode(("j", 2), v) == vac() * 2


def test_graded_dims():
    assert [ff.graded_dim("Fbar^0", d) for d in range(5)] == [1, 0, 1, 2, 3]
    assert [ff.graded_dim("F^-1", d) for d in range(3)] == [1, 1, 2]
    assert ff.graded_dim("H", 4) == 5


def test_key_roundtrip():
    key, c = ff.parse_key("b(-2) c(-1)")
    assert c == 1
    assert ff.parse_key(ff.render_key(key))[0] == key
