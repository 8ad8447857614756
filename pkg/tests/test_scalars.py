from fractions import Fraction

import pytest

from voacheck.scalars import CharacterSeries, LaurentPoly, Scalar, as_scalar, series_mul


def test_gaussian_arithmetic():
    a = Scalar(1, 1)
    assert a * Scalar(1, -1) == 2
    assert Scalar(0, 1) ** 2 == -1
    assert (a / a) == 1
    assert Scalar(Fraction(1, 2)) + Scalar(Fraction(1, 3)) == Scalar(Fraction(5, 6))
    assert a.inverse() == Scalar(Fraction(1, 2), Fraction(-1, 2))


def test_text_and_parse_roundtrip():
    for s in (Scalar(3), Scalar(0, Fraction(1, 2)), Scalar(Fraction(-2, 3), 5), Scalar(0)):
        assert Scalar.parse(s.text(compact=True)) == s
    assert Scalar.parse("1/2*i") == Scalar(0, Fraction(1, 2))


def test_hash_consistent_with_equality():
    assert hash(Scalar(4)) == hash(as_scalar(Fraction(8, 2)))
    assert len({Scalar(1, 0), as_scalar(1), Scalar(0, 1)}) == 2


def test_zero_division():
    with pytest.raises(ZeroDivisionError):
        Scalar(1) / Scalar(0)


def test_laurent_and_series():
    p = LaurentPoly({1: 1, -1: 1})
    assert (p * p).coeffs == {2: 1, 0: 2, -2: 1}
    one = CharacterSeries.one(3)
    x = CharacterSeries.monomial(3, z=1, q=2, p=4)
    sq = series_mul(one + x, one + x)
    assert sq.coefficient(1, 2, 4) == 2
    # q^4 is beyond the truncation
    assert sq.coefficient(2, 4, 8) == 0
