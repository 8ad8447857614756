from voacheck import characters as ch


def test_grading_of():
    g = ch.grading_of((("b", -2), ("c", -1)))
    assert (g.charge, g.level, g.wgrade) == (0, 3, 3)


def test_sector_zero_through_q3():
    comp = ch.extract_component(ch.product_formula(3), 0)
    assert comp.lines() == ["z^0 q^0 p^0 : 1", "z^0 q^2 p^0 : 1", "z^0 q^3 p^-3 : 1", "z^0 q^3 p^3 : 1"]
    assert ch.enumerate_character("Fbar^0", 3) == comp


def test_products_match_enumeration():
    for variant, space in (("barred", "Fbar"), ("full", "F")):
        assert ch.compare_series(ch.enumerate_character(space, 7), ch.product_formula(7, variant)).passed


def test_full_is_one_plus_z_times_barred():
    D = 5
    z = ch.CharacterSeries.monomial(D, 1)
    one = ch.CharacterSeries.one(D)
    assert ch.product_formula(D, "full") == (one + z) * ch.product_formula(D)


def test_resum_and_flip():
    s = ch.product_formula(6)
    assert ch.resum(s, range(-6, 7)) == s
    assert ch.flip(s) == s
    assert not ch.extract_component(s, 9).terms


def test_virasoro_specialization():
    assert [str(x) for x in ch.jacobi_sum_formula(0, 3)] == ["1", "0", "1", "2"]
    for l in (-1, 0, 2):
        assert ch.virasoro_specialization(l, 8).passed
    assert ch.virasoro_specialization(1, 8).enumerated == ch.virasoro_specialization(-1, 8).enumerated


def test_diagonality():
    assert ch.diagonality_witness(5)
