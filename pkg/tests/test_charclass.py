import pytest

from h4kit import charclass as cc, chartab
from h4kit.charclass import ChernPair, CharClassError, Spectrum

PERM_8A = Spectrum(8, {0: 3, 1: 1, 2: 1, 3: 1, 4: 2, 5: 1, 6: 1, 7: 1})
O7_4A = Spectrum(4, {0: 25, 1: 25, 2: 30, 3: 25})
HE_4A = Spectrum(4, {0: 1938, 1: 1890, 2: 1932, 3: 1890})
M22_4C = Spectrum(4, {0: 50, 1: 55, 2: 50, 3: 55})


@pytest.mark.parametrize(
    "spec, c2, order",
    [(PERM_8A, 2, 4), (O7_4A, 3, 4), (HE_4A, 2, 2), (M22_4C, 1, 4)],
)
def test_chern_restrictions(spec, c2, order):
    cp = cc.chern_restriction(spec)
    assert cp.c2 == c2 and cp.c2_class.order == order


def test_whitney_prop_examples():
    c = ChernPair(120, 0, 1)
    three = cc.whitney_c2([c, ChernPair(120, 0, 49), ChernPair(120, 0, 49)])
    assert three.c2 == 99 and three.c2_class.order == 40
    s3 = cc.su2_symmetric_power_c2(3)
    two = cc.whitney_c2([c, ChernPair(120, 0, s3)])
    assert two.c2 == 11 and two.c2_class.order == 120


def test_whitney_trivial_summand():
    a = ChernPair(12, 5, 7)
    assert cc.whitney_c2([a, ChernPair(12, 0, 0)]) == a


def test_whitney_modulus_mismatch():
    with pytest.raises(CharClassError):
        cc.whitney_c2([ChernPair(4, 1, 0), ChernPair(8, 1, 0)])


def test_su2_symmetric_powers():
    assert [cc.su2_symmetric_power_c2(n) for n in range(6)] == [0, 1, 4, 10, 20, 35]


def test_p1_examples():
    assert cc.p1_restriction(PERM_8A).value == 6
    assert cc.p1_restriction(Spectrum(8, {0: 5})).value == 0
    assert cc.p1_restriction(Spectrum(9, {2: 1, 7: 1})).value == 4


def test_p1_is_minus_c2_of_complexification():
    for s in (PERM_8A, O7_4A, HE_4A, M22_4C):
        assert (cc.p1_restriction(s).value + cc.chern_restriction(s).c2) % s.modulus == 0


def test_p1_rejects_asymmetric():
    with pytest.raises(CharClassError):
        cc.p1_restriction(Spectrum(4, {1: 1}))


def test_phalf_m11():
    cls, cert = cc.phalf_restriction(PERM_8A, 8)
    assert (cls.value, cls.order) == (7, 8)
    assert cert.agrees and cert.assignments > 1


def test_phalf_he():
    cls, cert = cc.phalf_restriction(HE_4A, 4)
    assert cls.order == 4 and cert.agrees


def test_phalf_trivial():
    cls, _ = cc.phalf_restriction(Spectrum(6, {0: 4}), 6)
    assert cls.value == 0


def test_phalf_no_spin_lift():
    # one rotation plane with odd rotation at lift order n: every lift has odd sum
    with pytest.raises(CharClassError):
        cc.phalf_restriction(Spectrum(4, {1: 1, 3: 1}), 4)


def test_phalf_lift_order_range():
    with pytest.raises(CharClassError):
        cc.phalf_restriction(PERM_8A, 24)


def test_doubling_identity_on_bundled_real_spectra():
    checked = 0
    for name in chartab.bundled_names() + ["C6", "C8"]:
        t = chartab.resolve_table(name)
        for ch in t.irreducibles + t.reducibles:
            for c in range(1, len(t.classes)):
                s = chartab.eigenvalue_multiset(ch, t, c)
                if not s.is_real_symmetric:
                    continue
                for nt in (s.modulus, 2 * s.modulus):
                    try:
                        half, cert = cc.phalf_restriction(s, nt)
                    except CharClassError as exc:
                        assert "no spin lift" in str(exc)
                        continue
                    assert cert.agrees
                    p1 = cc.p1_restriction(s).pullback(nt)
                    assert 2 * half == p1
                    checked += 1
    assert checked > 20


def test_cup_squares():
    assert cc.cup_square_generators(24) == ([1], [5, 7, 11, 13, 17, 19, 23])
    assert cc.cup_square_generators(3) == ([1], [2])
    assert cc.cup_square_generators(4) == ([1], [3])
    assert cc.t2_label(3, 2) == "-t^2" and cc.t2_label(4, 3) == "-t^2"


def test_spectrum_normalizes():
    s = Spectrum(4, {5: 2, 1: 1, 2: 0})
    assert s.as_dict() == {1: 3}
    with pytest.raises(CharClassError):
        Spectrum(4, {1: -1})


def test_symmetric_spectrum_has_equal_c2_with_conjugate():
    for s in (PERM_8A, O7_4A, HE_4A):
        assert cc.chern_restriction(s) == cc.chern_restriction(s.conjugate())
