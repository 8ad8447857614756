from fractions import Fraction

from voacheck import freefields as ff
from voacheck import wick
from voacheck.freefields import FockState
from voacheck.wick import CompositeField, T_FIELD, WT_FIELD

b, c, j = (CompositeField.field(x) for x in ("b", "c", "j"))
beta, gamma = CompositeField.field("beta"), CompositeField.field("gamma")


def poles(A, B):
    return wick.ope_singular(A, B).poles


def test_basic_contractions():
    assert poles(b, c) == {1: CompositeField.constant(1)}
    assert poles(c, b) == {1: CompositeField.constant(1)}
    assert poles(beta, gamma) == {1: CompositeField.constant(-1)}
    assert poles(gamma, beta) == {1: CompositeField.constant(1)}
    assert poles(j, j) == {2: CompositeField.constant(1)}
    assert poles(b, b) == {}


def test_derivative_contraction():
    # d b(z) c(w) ~ -1/(z-w)^2
    assert poles(wick.derive(b), c) == {2: CompositeField.constant(-1)}


def test_stress_tensor_ope():
    P = poles(T_FIELD, T_FIELD)
    assert P[4] == CompositeField.constant(-1)
    assert P[2] == T_FIELD * 2
    assert P[1] == wick.derive(T_FIELD)


def test_right_nested_normal_product():
    got = wick.normal_product(T_FIELD, wick.bc_monomial(1, 0))
    want = wick.bc_monomial(1, 2) * Fraction(1, 2) + wick.bc_monomial(3, 0) * Fraction(1, 2)
    assert got == want


def test_weights_and_parity():
    assert T_FIELD.weight == 2 and WT_FIELD.weight == 3
    assert b.parity == 1 and T_FIELD.parity == 0


def test_mode_action_L0_on_states():
    v = FockState.from_modes([("b", -2), ("c", -1)])
    assert wick.mode_action(T_FIELD, 0, v) == v * 3


def test_cross_oracle_small():
    for A, B in ((T_FIELD, WT_FIELD), (b, c), (WT_FIELD, c), (j, j)):
        for m in range(-2, 3):
            for n in range(-2, 3):
                ms = wick.commutator_via_ope(A, B, m, n)
                keys = ff.n0_keys(2, range(-1, 2)) if A is j else ff.all_f_keys(3)
                for key in keys:
                    v = FockState.basis(key)
                    assert ms.apply(v) == wick.supercommutator_on(A, m, B, n, v)


def test_corrupted_table_changes_ope_and_restores():
    with wick.contraction_table(wick.CORRUPTED_CONTRACTIONS):
        assert poles(b, c) == {1: CompositeField.constant(-1)}
        assert poles(T_FIELD, T_FIELD)[2] != T_FIELD * 2
    assert poles(T_FIELD, T_FIELD)[2] == T_FIELD * 2


def test_gbinom():
    assert wick.gbinom(-1, 2) == 1
    assert wick.gbinom(4, 2) == 6
    assert wick.gbinom(3, -1) == 0
