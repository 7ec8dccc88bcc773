import pytest

from h4kit import charclass, oracle
from h4kit.charclass import Spectrum
from h4kit.exactalg import AbelianGroup
from h4kit.oracle import OracleError


def cyclic_series(n):
    return [oracle.cyclic_cohomology(n, k) for k in range(6)]


@pytest.mark.parametrize("n", range(1, 13))
def test_bar_matches_cyclic_closed_form(n):
    g = oracle.cyclic_group(n)
    for k in range(5 if n <= 6 else 4, 5):
        assert oracle.bar_cohomology(g, k) == oracle.cyclic_cohomology(n, k)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_bar_low_degrees(n):
    g = oracle.cyclic_group(n)
    for k in range(4):
        assert oracle.bar_cohomology(g, k) == oracle.cyclic_cohomology(n, k)


def test_cyclic_closed_form():
    assert oracle.cyclic_cohomology(8, 4) == AbelianGroup.cyclic(8)
    assert oracle.cyclic_cohomology(24, 2) == AbelianGroup.cyclic(24)
    assert oracle.cyclic_cohomology(5, 3).is_trivial
    assert oracle.cyclic_cohomology(7, 0) == AbelianGroup(free_rank=1)


def test_q8_pin():
    q8 = oracle.build_extraspecial(2, 1, "minus")
    assert q8.order == 8
    assert sum(1 for x in range(8) if q8.element_order(x) == 2) == 1
    assert oracle.bar_cohomology(q8, 4) == AbelianGroup.cyclic(8)


def test_d8_has_five_involutions():
    d8 = oracle.build_extraspecial(2, 1, "plus")
    assert sum(1 for x in range(8) if q_order(d8, x) == 2) == 5


def q_order(g, x):
    return g.element_order(x)


def test_klein_four():
    v = oracle.elementary_abelian_group(2, 2)
    assert oracle.bar_cohomology(v, 4) == AbelianGroup.elementary(2, 3)


def test_klein_four_matches_kunneth():
    assert oracle.kunneth_h4(cyclic_series(2), cyclic_series(2)) == AbelianGroup.elementary(2, 3)


def test_product_of_coprime_cyclics_matches_kunneth():
    g = oracle.cyclic_group(2).direct_product(oracle.cyclic_group(3))
    assert oracle.bar_cohomology(g, 4) == oracle.kunneth_h4(cyclic_series(2), cyclic_series(3))


def test_nine_element_group_needs_override():
    g = oracle.elementary_abelian_group(3, 2)
    assert oracle.bar_cohomology(g, 4) == AbelianGroup.elementary(3, 3)
    with pytest.raises(OracleError):
        oracle.bar_cohomology(oracle.cyclic_group(13), 4)
    assert oracle.bar_cohomology(oracle.cyclic_group(13), 2, cap=oracle.OVERRIDE_CAP) == AbelianGroup.cyclic(13)


@pytest.mark.parametrize("maker", [lambda: oracle.cyclic_group(6), lambda: oracle.build_extraspecial(2, 1, "minus")])
def test_d_squared_zero(maker):
    assert oracle.complex_slice(maker()).check()


def test_invalid_tables():
    with pytest.raises(OracleError):
        oracle.MultTable(((0, 1), (0, 1)))
    with pytest.raises(OracleError):
        oracle.MultTable.from_text("2\n0 1 1\n")
    # a Latin square that is not associative
    with pytest.raises(OracleError):
        oracle.MultTable(((0, 1, 2, 3, 4), (1, 0, 3, 4, 2), (2, 4, 0, 1, 3), (3, 2, 4, 0, 1), (4, 3, 1, 2, 0)))


def test_extraspecial_exponent_three():
    g = oracle.build_extraspecial(3, 1)
    assert g.order == 27 and g.exponent() == 3


def test_restriction_along_identity_inclusion():
    g = oracle.cyclic_group(6)
    b = oracle.h4_basis(g)
    grp, coords, orders = oracle.restriction_on_h4(g, range(6), b.generator(0))
    assert grp == AbelianGroup.cyclic(6) and coords == (1,) and orders == [6]


def test_q8_generator_restricted_to_center_is_nonzero():
    # charclass: the 2-dim rep of Q8 has center acting by -1, spectrum {1: 2} mod 2, c2 = 1
    assert charclass.chern_restriction(Spectrum(2, {1: 2})).c2 == 1
    q8 = oracle.build_extraspecial(2, 1, "minus")
    b = oracle.h4_basis(q8)
    grp, coords, _ = oracle.restriction_on_h4(q8, q8.center(), b.generator(0))
    assert grp == AbelianGroup.cyclic(2) and coords == (1,)


def test_cyclic_generator_restricted_to_index_two():
    # t restricts to the generator of H^2(Z/2), so t^2 restricts to the nonzero class
    assert charclass.chern_restriction(Spectrum(2, {1: 2})).c2 == 1
    c4 = oracle.cyclic_group(4)
    b = oracle.h4_basis(c4)
    grp, coords, _ = oracle.restriction_on_h4(c4, [0, 2], b.generator(0))
    assert coords == (1,)


def test_restriction_rejects_non_cocycle():
    g = oracle.cyclic_group(3)
    b = oracle.h4_basis(g)
    with pytest.raises(OracleError):
        oracle.restriction_on_h4(g, [0], {b.tuples[0]: 1})


def test_mult_table_text_round_trip():
    g = oracle.build_extraspecial(2, 1, "plus")
    assert oracle.MultTable.from_text(g.to_text()).table == g.table
