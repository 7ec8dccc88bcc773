import pytest

from h4kit.exactalg import (
    AbelianGroup,
    CycInt,
    FpMatrix,
    IntMatrix,
    cokernel_group,
    cyc_canonical,
    integer_kernel,
    kernel_mod_p,
    primary_part,
    smith_normal_form,
)


def test_snf_coprime_diagonal():
    assert smith_normal_form(IntMatrix.diagonal([2, 3])).diagonal == (1, 6)


def test_snf_zero_matrix():
    assert smith_normal_form(IntMatrix(2, 2)).diagonal == (0, 0)


def test_snf_transforms_remultiply():
    m = IntMatrix.from_dense([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    r = smith_normal_form(m)
    assert r.left @ m @ r.right == IntMatrix.diagonal(list(r.diagonal), 3, 3)
    assert r.diagonal == (2, 6, 12)


@pytest.mark.parametrize(
    "dense, rows, expected",
    [([[8]], None, AbelianGroup.cyclic(8)), ([[2, 0], [0, 3]], None, AbelianGroup.cyclic(6))],
)
def test_cokernel_small(dense, rows, expected):
    assert cokernel_group(IntMatrix.from_dense(dense)) == expected


def test_cokernel_of_empty_map_is_free():
    g = cokernel_group(IntMatrix(2, 0))
    assert g.free_rank == 2 and not g.invariant_factors


def test_abelian_group_normal_form_and_text():
    g = AbelianGroup.from_orders([2, 2, 2, 8])
    assert g.invariant_factors == (2, 2, 2, 8)
    assert str(g) == "2^3 x 8"
    assert str(AbelianGroup()) == "1"
    assert AbelianGroup.from_orders([4, 6]).invariant_factors == (2, 12)


def test_invariant_factor_divisibility_enforced():
    with pytest.raises(ValueError):
        AbelianGroup((4, 6))
    with pytest.raises(ValueError):
        AbelianGroup((1,))


@pytest.mark.parametrize(
    "orders, p, expected",
    [([2, 24], 2, [2, 8]), ([12], 5, []), ([8, 24], 3, [3])],
)
def test_primary_part(orders, p, expected):
    assert primary_part(AbelianGroup.from_orders(orders), p) == AbelianGroup.from_orders(expected)


def test_primary_part_rejects_free():
    with pytest.raises(ValueError):
        primary_part(AbelianGroup(free_rank=1), 2)


def test_primary_parts_reassemble():
    g = AbelianGroup.from_orders([2, 24, 360])
    total = AbelianGroup()
    for p in (2, 3, 5):
        total = total.direct_sum(g.primary_part(p))
    assert total == g


def test_summand_relation():
    two_eight = AbelianGroup.from_orders([2, 8])
    assert AbelianGroup.cyclic(2).is_summand_of(two_eight)
    assert AbelianGroup.cyclic(8).is_summand_of(two_eight)
    assert not AbelianGroup.cyclic(4).is_summand_of(two_eight)


def test_cyc_canonical_vanishing_sums():
    x = CycInt.root(3, 0) + CycInt.root(3, 1) + CycInt.root(3, 2)
    canon, flag, value = cyc_canonical(x)
    assert flag and value == 0 and canon.is_zero()
    _, flag, value = cyc_canonical(CycInt.root(4, 1) + CycInt.root(4, 3))
    assert flag and value == 0


def test_cyc_canonical_primitive_root_is_irrational():
    canon, flag, value = cyc_canonical(CycInt.root(8, 1))
    assert not flag and value is None and not canon.is_zero()


def test_cycint_arithmetic():
    z = CycInt.root(8, 1)
    assert z * z == CycInt.root(4, 1)
    assert (z * z * z * z).rational_value() == -1
    assert (CycInt.root(3, 1) + CycInt.root(3, 2)).rational_value() == -1


def test_kernel_mod_p_examples():
    assert kernel_mod_p(FpMatrix.identity(3, 3)) == []
    assert len(kernel_mod_p(FpMatrix.zeros(2, 2, 4))) == 4


def test_fpmatrix_inverse():
    m = FpMatrix(5, [[1, 2], [3, 4]])
    assert m @ m.inverse() == FpMatrix.identity(5, 2)


def test_integer_kernel_columns_are_killed():
    m = IntMatrix.from_dense([[1, 2, 3], [2, 4, 6]])
    k = integer_kernel(m)
    assert k.shape == (3, 2)
    assert (m @ k).is_zero()
