import json

import pytest

from h4kit import ledger as L
from h4kit import oracle
from h4kit.exactalg import AbelianGroup
from h4kit.ledger import ClassRef, Ledger, LedgerContradiction, LedgerError


def conclusions(name):
    return {(c.subject, c.prime): c for c in L.run_case(name).conclusions}


def test_m11():
    r = L.run_case("m11")
    c = conclusions("m11")
    assert c[("M11", None)].group == AbelianGroup.cyclic(8)
    assert len(r.ledger.external_facts()) == 1
    assert c[("M11", 11)].group.is_trivial and c[("M11", 5)].group.is_trivial


def test_m22_cover_chain():
    c = conclusions("m22")
    for name, n in [("2.M22", 4), ("3.M22", 3), ("4.M22", 8), ("6.M22", 12), ("12.M22", 24)]:
        assert c[(name, None)].status == "equals"
        assert c[(name, None)].group == AbelianGroup.cyclic(n)


def test_dempwolff():
    c = conclusions("dempwolff")[("2^5.GL_5(2)", None)]
    assert c.group == AbelianGroup.cyclic(24)


def test_co3_squeeze():
    c = conclusions("co3")[("Co3", 2)]
    assert c.upper == 2 and c.status == "interval"


def test_g2_5_and_suz_primes_vanish():
    for name, subject, primes in [("g2_5", "G2(5)", (7, 31)), ("suz", "Suz", (3, 5))]:
        c = conclusions(name)
        for p in primes:
            assert c[(subject, p)].group.is_trivial


@pytest.mark.parametrize("name,group", [("c8", "C8"), ("c2xc2", "C2xC2")])
def test_mechanized_cases_agree_with_oracle(name, group):
    r = L.run_case(name)
    assert r.fully_mechanized
    value = r.conclusions[0].group
    g = oracle.cyclic_group(8) if name == "c8" else oracle.elementary_abelian_group(2, 2)
    assert oracle.bar_cohomology(g, 4) == value


@pytest.mark.parametrize("name", L.bundled_cases())
def test_replay_is_byte_identical(name):
    a = json.dumps(L.run_case(name).to_json(), sort_keys=True)
    b = json.dumps(L.run_case(name).to_json(), sort_keys=True)
    assert a == b


def test_case_digest_tracks_content():
    doc = L.load_case("m11")
    d0 = L.case_digest(doc)
    doc["name"] = "other"
    assert L.case_digest(doc) != d0


def ledger_with(*groups):
    lg = Ledger()
    for g in groups:
        lg.declare_group(g)
    return lg


def test_contradiction_lists_both_sides():
    lg = ledger_with("G")
    up = lg.rule_external("G", "order_divides", 4, "external: upper")
    with pytest.raises(LedgerContradiction) as exc:
        lg.rule_external("G", "order_divisible_by", 8, "external: lower")
    ids = {f.id for f in exc.value.facts}
    assert up.id in ids and len(ids) == 2


def test_contradicting_equals():
    lg = ledger_with("G")
    lg.rule_external("G", "equals", [4], "external: one")
    with pytest.raises(LedgerContradiction):
        lg.rule_external("G", "equals", [2], "external: two")


def test_cyclic_against_noncyclic_summand():
    lg = ledger_with("G")
    lg.rule_external("G", "order_divisible_by", 4, "external: lower", prime=2)
    lg.rule_external("G", "cyclic", None, "external: cyclic", prime=2)
    with pytest.raises(LedgerContradiction):
        lg.rule_external("G", "is_summand_of", [2, 2], "external: summand", prime=2)


def test_monotone_refinement():
    lg = ledger_with("G")
    lg.rule_external("G", "order_divides", 16, "external: a", prime=2)
    first = lg.conclude("G", 2)
    lg.rule_external("G", "order_divisible_by", 4, "external: b", prime=2)
    second = lg.conclude("G", 2)
    assert first.lower <= second.lower and second.upper <= first.upper
    lg.rule_external("G", "cyclic", None, "external: c", prime=2)
    lg.rule_external("G", "exponent_divides", 4, "external: d", prime=2)
    assert lg.conclude("G", 2).group == AbelianGroup.cyclic(4)


def test_single_order_several_types():
    lg = ledger_with("G")
    lg.rule_external("G", "order_divides", 4, "external: a", prime=2)
    lg.rule_external("G", "order_divisible_by", 4, "external: b", prime=2)
    c = lg.conclude("G", 2)
    assert c.status == "order" and c.lower == c.upper == 4 and len(c.candidates) == 2


def test_no_bounds_is_an_open_interval():
    lg = ledger_with("G")
    c = lg.conclude("G")
    assert c.status == "interval" and c.upper is None


def test_unknown_group_and_premise():
    lg = ledger_with("G")
    with pytest.raises(LedgerError):
        lg.add("H", 2, "order_divides", 2, "test")
    with pytest.raises(LedgerError):
        lg.add("G", 2, "order_divides", 2, "test", premises=["F99"])


def test_external_needs_citation():
    with pytest.raises(LedgerError):
        ledger_with("G").rule_external("G", "order_divides", 2, "")


def test_summand_needs_sylow_declaration():
    lg = ledger_with("G", "S")
    lg.rule_external("S", "equals", [8], "external: S", prime=2)
    with pytest.raises(LedgerError):
        lg.rule_summand("G", "S", 2)
    lg.declare_sylow("G", "S", 2)
    [f] = [f for f in lg.rule_summand("G", "S", 2) if f.kind == "order_divides"]
    assert f.value == 8


def test_large_primes_abstains_with_many_classes():
    lg = ledger_with("J2")
    cc = lg.rule_external("J2", "class_count", 4, "external: four classes of order 5", prime=5)
    assert lg.rule_large_primes("J2", 5, sylow_shape="p x p", class_count=cc.id) == []
    assert lg.abstentions and lg.abstentions[0]["prime"] == 5


def test_large_primes_fires_with_few_classes():
    lg = ledger_with("G")
    cc = lg.rule_external("G", "class_count", 2, "external: two classes of order 7", prime=7)
    [f] = lg.rule_large_primes("G", 7, sylow_shape="p", class_count=cc.id)
    assert f.kind == "equals" and f.value.is_trivial


def test_large_primes_needs_shape():
    lg = ledger_with("G")
    with pytest.raises(LedgerError):
        lg.rule_large_primes("G", 11, table="m11")


def test_central_character_abstains_at_two():
    lg = ledger_with("J")
    assert lg.rule_central_character("J", "E", 2, 3, "x", [1]) == []
    assert lg.abstentions[0]["prime"] == 2


def test_omega7_class_lower_bound():
    lg = ledger_with("O7(3)")
    lg.declare_class(ClassRef("c", "O7(3)", "o7_3_partial", "chi105", "4a", "c2", None, "c2(V105)", None))
    [f] = lg.rule_class_lower_bound("c")
    assert f.kind == "class_order_divisible_by" and f.value == 4
    assert lg.conclude("O7(3)", 2).lower == 4


def test_trivial_restriction_abstains():
    lg = ledger_with("M11")
    lg.declare_class(ClassRef("c", "M11", "m11", "chi1", "2a", "c2", None, "c2(1)", None))
    assert lg.rule_class_lower_bound("c") == []
    assert lg.abstentions


def test_phalf_needs_spin():
    lg = ledger_with("G")
    lg.declare_class(ClassRef("c", "G", "m11", "perm", "8a", "phalf", 8, "p1/2", None))
    with pytest.raises(LedgerError):
        lg.rule_class_lower_bound("c")


def make_cover(p, h2=None):
    lg = Ledger()
    lg.declare_group("G", [], [h2 or p])
    lg.declare_group("nG", [])
    lg.declare_cover("nG", "G", p)
    lg.rule_external("G", "equals", [], "external: H^4(G) = 0")
    return lg


def test_cover_without_lower_bound_is_interval():
    lg = make_cover(3)
    lg.rule_cover("nG")
    c = lg.conclude("nG")
    assert c.status == "interval" and (c.lower, c.upper) == (1, 3)


def test_cover_with_lower_bound_pins_order():
    lg = make_cover(3)
    lg.rule_cover("nG")
    lg.rule_external("nG", "class_order_divisible_by", 3, "external: class", label="x")
    assert lg.conclude("nG").group == AbelianGroup.cyclic(3)


def test_cover_needs_declared_homology():
    lg = Ledger()
    lg.declare_group("G")
    lg.declare_group("nG")
    lg.declare_cover("nG", "G", 2)
    with pytest.raises(LedgerError):
        lg.rule_cover("nG")


def test_unknown_rule_in_case():
    doc = {"declare": {"groups": [{"id": "G"}]}, "apply": [{"rule": "magic"}]}
    with pytest.raises(LedgerError):
        L.run_case(doc)


def test_bad_rule_arguments_in_case():
    doc = {"declare": {"groups": [{"id": "G"}]}, "apply": [{"rule": "oracle", "nope": 1}]}
    with pytest.raises(LedgerError):
        L.run_case(doc)


def test_injected_contradiction_in_case():
    doc = L.load_case("m11")
    doc["declare"]["assert_external"].append(
        {"subject": "M11", "kind": "order_divides", "value": 4, "citation": "external: wrong bound"})
    with pytest.raises(LedgerContradiction):
        L.run_case(doc)


def test_tree_nests_premises():
    r = L.run_case("m22")
    lg = r.ledger
    top = [f for f in lg.facts if f.subject == "4.M22" and f.premises][-1]
    tree = lg.tree(top.id)
    assert tree["id"] == top.id and tree["premises"]
