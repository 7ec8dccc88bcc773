from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from h4kit import chartab, charclass, pgroups
from h4kit.charclass import Spectrum
from h4kit.exactalg import AbelianGroup, CycInt, FpMatrix, IntMatrix
from h4kit.exactalg.intmatrix import cokernel_group, smith_normal_form
from h4kit.ledger import Ledger, LedgerContradiction
from h4kit.pgroups.cohomology import gl_generators
from h4kit.pgroups.extraspecial import extraspecial_multiply
from h4kit.pgroups.forms import monomial, poly_add, poly_mul, sq1
from h4kit.pgroups.module import alt_matrix, dual_matrix, load_module, module_functor, sym2_matrix

DATA = Path(pgroups.__file__).parent.parent / "data"


@st.composite
def spectra(draw, modulus=None):
    n = modulus or draw(st.integers(1, 24))
    mults = draw(st.dictionaries(st.integers(0, n - 1), st.integers(0, 6), max_size=6))
    return Spectrum(n, mults)


@st.composite
def spectrum_triples(draw):
    n = draw(st.integers(1, 24))
    return tuple(draw(spectra(n)) for _ in range(3))


# Whitney sum

@settings(max_examples=1000)
@given(spectrum_triples())
def test_whitney_associative_commutative(triple):
    a, b, c = (charclass.chern_restriction(s) for s in triple)
    w = charclass.whitney_c2
    assert w([w([a, b]), c]) == w([a, w([b, c])])
    assert w([a, b]) == w([b, a])


@settings(max_examples=1000)
@given(spectrum_triples())
def test_whitney_matches_direct_sum(triple):
    a, b, c = triple
    whole = charclass.chern_restriction(a + b + c)
    assert charclass.whitney_c2([charclass.chern_restriction(s) for s in triple]) == whole


@settings(max_examples=300)
@given(spectra())
def test_conjugate_spectrum_has_same_c2(s):
    # c2 of the dual representation equals c2 (c2 has even degree)
    assert charclass.chern_restriction(s.conjugate()).c2 == charclass.chern_restriction(s).c2


# DFT round trip

def table_class_pairs():
    for name in chartab.bundled_names():
        t = chartab.resolve_table(name)
        for ch in t.irreducibles + t.reducibles:
            for c in t.classes:
                yield pytest.param(name, ch.label, c.name, id=f"{name}-{ch.label}-{c.name}")


@pytest.mark.parametrize("name,char,cls", list(table_class_pairs()))
def test_dft_round_trip(name, char, cls):
    t = chartab.resolve_table(name)
    ch = t.character(char)
    s = chartab.eigenvalue_multiset(ch, t, cls)
    n = s.modulus
    assert s.degree == ch.degree
    for k in range(n):
        expected = chartab.power_value(ch, t, cls, k)
        rebuilt = CycInt.integer(0, n)
        for j, m in s.multiplicities:
            rebuilt = rebuilt + CycInt.root(n, (j * k) % n, m)
        assert rebuilt == expected


# functor homomorphism

def words(ngens):
    return st.lists(st.integers(-ngens, ngens - 1), min_size=1, max_size=8)


def word_matrix(gens, w):
    out = FpMatrix.identity(gens[0].p, gens[0].rows)
    for a in w:
        out = out @ (gens[a] if a >= 0 else gens[-a - 1].inverse())
    return out


GL33 = gl_generators(3, 3)
GL42 = gl_generators(2, 4)
MATRIX_FUNCTORS = {"dual": dual_matrix, "sym2": sym2_matrix, "alt2": lambda g: alt_matrix(g, 2),
                   "alt3": lambda g: alt_matrix(g, 3)}


@pytest.mark.parametrize("functor", sorted(MATRIX_FUNCTORS))
@pytest.mark.parametrize("gens", [GL33, GL42], ids=["GL3(3)", "GL4(2)"])
@settings(max_examples=200)
@given(data=st.data())
def test_matrix_functor_homomorphism(functor, gens, data):
    f = MATRIX_FUNCTORS[functor]
    u = word_matrix(gens, data.draw(words(len(gens))))
    v = word_matrix(gens, data.draw(words(len(gens))))
    assert f(u @ v) == f(u) @ f(v)


OMEGA7 = load_module(DATA / "matrices" / "omega7_3_local.txt")
OMEGA7_DUAL = module_functor("dual", OMEGA7)


@pytest.mark.parametrize("functor", ["omega_complement", "quotient_by_wedge", "tensor_line"])
@settings(max_examples=200)
@given(data=st.data())
def test_quotient_functor_homomorphism(functor, data):
    from h4kit.pgroups.module import ModuleWithAction, find_invariant_line

    gens = OMEGA7_DUAL.generators
    u = word_matrix(gens, data.draw(words(len(gens))))
    v = word_matrix(gens, data.draw(words(len(gens))))
    m = ModuleWithAction(3, OMEGA7_DUAL.dimension, (u, v, u @ v))
    omega = find_invariant_line(OMEGA7_DUAL)
    out = module_functor(functor, m, {"omega": omega}).generators
    assert out[2] == out[0] @ out[1]


# Smith normal form

@st.composite
def sparse_matrices(draw):
    r, c = draw(st.integers(1, 7)), draw(st.integers(1, 7))
    cells = draw(st.dictionaries(st.tuples(st.integers(0, r - 1), st.integers(0, c - 1)),
                                 st.integers(-9, 9), max_size=r * c // 2 + 1))
    return IntMatrix(r, c, cells)


@settings(max_examples=300)
@given(sparse_matrices())
def test_snf_remultiplies(m):
    res = smith_normal_form(m)
    r, c = m.shape
    assert res.left @ m @ res.right == IntMatrix.diagonal(list(res.diagonal), r, c)
    nz = [d for d in res.diagonal if d]
    assert all(d > 0 for d in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))


@st.composite
def unimodular(draw, n):
    rows = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(draw(st.integers(0, 6))):
        i, j = draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1))
        if i != j:
            f = draw(st.integers(-3, 3))
            rows[i] = [a + f * b for a, b in zip(rows[i], rows[j])]
    return IntMatrix.from_dense(rows, n)


@settings(max_examples=300)
@given(data=st.data())
def test_cokernel_invariant_under_unimodular_change(data):
    m = data.draw(sparse_matrices())
    r, c = m.shape
    u, v = data.draw(unimodular(r)), data.draw(unimodular(c))
    assert cokernel_group(u @ m @ v) == cokernel_group(m)


# ledger

@st.composite
def true_facts(draw):
    parts = draw(st.lists(st.integers(1, 3), min_size=0, max_size=3))
    truth = AbelianGroup.from_orders([2 ** e for e in parts])
    order, exp = truth.order, truth.exponent or 1
    pool = [("order_divides", order * draw(st.sampled_from([1, 2, 4]))),
            ("order_divisible_by", order // draw(st.sampled_from([1, 2])) if order > 1 else 1),
            ("exponent_divides", exp * draw(st.sampled_from([1, 2]))),
            ("is_summand_of", truth.direct_sum(AbelianGroup.cyclic(draw(st.sampled_from([1, 2, 4])))))]
    if exp > 1:
        pool.append(("exponent_divisible_by", exp))
    if truth.is_cyclic:
        pool.append(("cyclic", None))
    facts = draw(st.permutations(pool))
    return truth, facts


def add(lg, kind, value):
    if isinstance(value, AbelianGroup):
        value = value.to_json()
    lg.rule_external("G", kind, value, "external: generated", prime=2)


@settings(max_examples=300)
@given(true_facts())
def test_ledger_monotone_and_sound(case):
    truth, facts = case
    lg = Ledger()
    lg.declare_group("G")
    add(lg, *facts[0])
    prev = lg.conclude("G", 2)
    for kind, value in facts[1:]:
        add(lg, kind, value)
        cur = lg.conclude("G", 2)
        assert cur.lower >= prev.lower
        if prev.upper is not None:
            assert cur.upper is not None and cur.upper <= prev.upper
        if prev.candidates is not None:
            assert set(cur.candidates) <= set(prev.candidates)
        prev = cur
    if prev.candidates is not None:
        assert truth in prev.candidates
    assert prev.lower <= truth.order


@settings(max_examples=300)
@given(true_facts(), st.integers(1, 4))
def test_ledger_detects_contradiction(case, shrink):
    truth, facts = case
    lg = Ledger()
    lg.declare_group("G")
    for kind, value in facts:
        add(lg, kind, value)
    add(lg, "order_divisible_by", truth.order)
    add(lg, "order_divides", truth.order)
    with pytest.raises(LedgerContradiction) as exc:
        add(lg, "order_divisible_by", truth.order * 2 ** shrink)
    assert exc.value.facts


# Sq^1 over F_2

@st.composite
def polys(draw, n=3):
    mons = draw(st.lists(st.lists(st.integers(0, n - 1), min_size=0, max_size=3), max_size=5))
    out = {}
    for idx in mons:
        out = poly_add(out, monomial(n, *idx))
    return out


@settings(max_examples=300)
@given(polys(), polys())
def test_sq1_leibniz(f, g):
    assert sq1(poly_mul(f, g)) == poly_add(poly_mul(sq1(f), g), poly_mul(f, sq1(g)))


@settings(max_examples=300)
@given(polys())
def test_sq1_squares_to_zero(f):
    assert sq1(sq1(f)) == {}


# extraspecial law

@st.composite
def extraspecial_triples(draw):
    p = draw(st.sampled_from([2, 3, 5]))
    n = draw(st.integers(1, 4))
    omega = [[draw(st.integers(0, p - 1)) for _ in range(n)] for _ in range(n)]
    elt = st.tuples(st.integers(0, p - 1), st.tuples(*[st.integers(0, p - 1)] * n))
    return p, omega, draw(elt), draw(elt), draw(elt)


@settings(max_examples=500)
@given(extraspecial_triples())
def test_extraspecial_associative(t):
    p, omega, x, y, z = t
    mul = lambda a, b: extraspecial_multiply(p, omega, a, b)  # noqa: E731
    assert mul(mul(x, y), z) == mul(x, mul(y, z))
