from fractions import Fraction

from voacheck import bosonization as bz
from voacheck.freefields import FockState
from voacheck.parser import parse_expr


def test_vertex_operator_on_vacuum():
    # X_eta(z) on |a> starts at z^0 with E_- = 1 + eta j(-1) z + ...
    v = FockState.vacuum(0)
    assert bz.vertex_mode_apply(1, 0, v) == FockState.vacuum(1)


def test_fms_small_consistency():
    r = bz.check_fms_consistency(max_level=2, modes=2)
    assert r.passed and r.checks > 0


def test_current_and_boson_fermion():
    assert bz.j_equals_current(max_level=2, modes=2)
    assert not bz.boson_fermion_check(max_level=2, modes=2)["failures"]


def test_offset_and_embedding():
    assert [bz.level_offset(l) for l in (-2, -1, 0, 1, 2)] == [3, 1, 0, 0, 1]
    for l in (-1, 0, 1):
        for d in range(4):
            assert bz.check_embedding(l, d).passed


def test_pj_polynomials():
    assert bz.pj_polynomial(1) == parse_expr("-i j")
    assert bz.pj_polynomial(2) == parse_expr("-i d^1 j - :j j:")
    assert bz.pj_polynomial(3) == parse_expr("-i d^2 j - 3 :j d^1 j: + i :j j j:")


def test_constants():
    assert bz.printed_cn(2) == Fraction(-5, 3)
    assert bz.derived_cn(2) == Fraction(-1, 3)
    assert bz.derived_cn(3) == Fraction(-1, 4)
    assert bz.derived_cn(1) == bz.printed_cn(1)


def test_lemma2_low_orders():
    assert bz.lemma2_derive(0) == parse_expr("i j")
    assert bz.lemma2_derive(1) == parse_expr(":d^1 b c: + 1/2 :j j: + 1/2*i d^1 j")
    rec = bz.lemma2_expand(1, charges=range(-1, 2), max_level=3, modes=2)
    assert rec.state_check


def test_lemma3():
    assert bz.lemma3_rewrite(1, 0).render() == "T"
    for i, j in ((2, 0), (1, 1), (2, 1)):
        r = bz.verify_rewrite(i, j, max_level=4, modes=1)
        assert r.symbolic and r.state_check
    assert [bz.claim_determinant(n) for n in (2, 3, 4)] == [1, Fraction(5, 6), Fraction(3, 4)]
