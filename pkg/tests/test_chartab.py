import copy
import json

import pytest

from h4kit import chartab
from h4kit.chartab import TableError

SL25 = json.loads((chartab.DATA_DIR / "sl2_5.json").read_text())


def test_cyclic_table_shapes():
    t = chartab.bundled_table("C8")
    assert len(t.classes) == 8 and len(t.irreducibles) == 8
    assert all(ch.degree == 1 for ch in t.irreducibles)
    assert len(chartab.classes_of_order(t, 8)) == 4


def test_sl25_degrees():
    t = chartab.load_table(SL25)
    assert len(t.classes) == 9
    assert sorted(ch.degree for ch in t.irreducibles) == [1, 2, 2, 3, 3, 4, 4, 5, 6]


def test_forged_class_size_fails_orthogonality():
    doc = copy.deepcopy(SL25)
    doc["classes"][2]["size"], doc["classes"][3]["size"] = 20, 30
    with pytest.raises(TableError, match="orthogonality"):
        chartab.load_table(doc)


def test_class_sizes_must_sum_to_order():
    doc = copy.deepcopy(SL25)
    doc["classes"][2]["size"] = 31
    with pytest.raises(TableError):
        chartab.load_table(doc)


def test_missing_power_map_rejected():
    doc = copy.deepcopy(SL25)
    del doc["powermaps"]["5"]
    with pytest.raises(TableError):
        chartab.load_table(doc)


def test_power_map_order_consistency():
    doc = copy.deepcopy(SL25)
    doc["powermaps"]["2"][2] = 0  # 4a squared must have order 2
    with pytest.raises(TableError):
        chartab.load_table(doc)


def test_power_values():
    he = chartab.bundled_table("he_partial")
    chi = he.character("chi19")
    assert chartab.power_value(chi, he, "4a", 2).rational_value() == 90
    assert chartab.power_value(chi, he, "4a", 0).rational_value() == chi.degree
    o7 = chartab.bundled_table("o7_3_partial")
    assert chartab.power_value(o7.character("chi105"), o7, "4a", 2).rational_value() == 5


@pytest.mark.parametrize(
    "table, char, cls, expected",
    [
        ("o7_3_partial", "chi105", "4a", {0: 25, 1: 25, 2: 30, 3: 25}),
        ("he_partial", "chi19", "4a", {0: 1938, 1: 1890, 2: 1932, 3: 1890}),
        ("2m22_partial", "chi210", "4c", {0: 50, 1: 55, 2: 50, 3: 55}),
        ("m11", "perm", "8a", {0: 3, 1: 1, 2: 1, 3: 1, 4: 2, 5: 1, 6: 1, 7: 1}),
    ],
)
def test_eigenvalue_multisets(table, char, cls, expected):
    t = chartab.bundled_table(table)
    s = chartab.eigenvalue_multiset(t.character(char), t, cls)
    assert s.as_dict() == expected


def test_trivial_character_spectrum():
    t = chartab.bundled_table("m11")
    s = chartab.eigenvalue_multiset(t.character("chi1"), t, "11a")
    assert s.modulus == 11 and s.as_dict() == {0: 1}


def test_linear_characters_have_single_eigenvalue():
    t = chartab.bundled_table("C12")
    for ch in t.irreducibles:
        for c in range(len(t.classes)):
            assert chartab.eigenvalue_multiset(ch, t, c).degree == 1


def test_fs_indicators():
    sl = chartab.bundled_table("sl2_5")
    assert chartab.fs_indicator(sl.character("1"), sl) == 1
    assert chartab.fs_indicator(sl.character("pi"), sl) == -1
    m11 = chartab.bundled_table("m11")
    assert chartab.fs_indicator(m11.character("chi2"), m11) == 1
    assert chartab.decompose(m11, m11.character("perm"))[:2] == [1, 1]


def test_indicator_zero_characters_pair_with_conjugates():
    for name in ("m11", "sl2_5", "q8", "2d8", "C7"):
        t = chartab.bundled_table(name)
        for ch in t.irreducibles:
            if chartab.fs_indicator(ch, t) == 0:
                conj = tuple(v.conjugate() for v in ch.values)
                others = [o for o in t.irreducibles if o.values == conj]
                assert others and others[0] != ch
                assert chartab.fs_indicator(others[0], t) == 0


def test_indicator_needs_complete_table():
    he = chartab.bundled_table("he_partial")
    with pytest.raises(TableError):
        chartab.fs_indicator(he.character("chi19"), he)


def test_classes_of_order():
    m11 = chartab.bundled_table("m11")
    assert chartab.classes_of_order(m11, 11) == ["11a", "11b"]
    assert chartab.classes_of_order(chartab.bundled_table("sl2_5"), 7) == []


def test_unknown_names():
    m11 = chartab.bundled_table("m11")
    with pytest.raises(TableError):
        m11.character("chi99")
    with pytest.raises(TableError):
        m11.class_index("7a")
    with pytest.raises(TableError):
        chartab.bundled_table("nonexistent")
