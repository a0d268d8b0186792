"""Partition combinatorics against brute-force tableau and character oracles."""

import pytest

from p3bundles import canonical, dual_partition, lr_tensor, pieri_row, weyl_dim
from p3bundles.errors import InvalidInputError

from oracles import horizontal_strip_additions, ssyt_count, tensor_by_characters


def partitions_up_to(max_part, max_rows):
    out = [()]

    def rec(prefix, prev):
        for v in range(1, prev + 1):
            cand = prefix + (v,)
            if len(cand) <= max_rows:
                out.append(cand)
                rec(cand, v)

    rec((), max_part)
    return out


def test_canonical_strips_zeros_and_validates():
    assert canonical((3, 1, 0, 0)) == (3, 1)
    assert canonical(()) == ()
    with pytest.raises(InvalidInputError):
        canonical((1, 2))
    with pytest.raises(InvalidInputError):
        canonical((1, -1))


def test_weyl_dim_examples():
    assert weyl_dim((), 3) == 1
    assert weyl_dim((1,), 3) == 3
    assert weyl_dim((2, 1), 3) == 8
    assert weyl_dim((2, 1), 4) == 20


def test_weyl_dim_rejects_too_many_parts():
    with pytest.raises(InvalidInputError):
        weyl_dim((1, 1, 1, 1), 3)


@pytest.mark.parametrize("n", [3, 4])
def test_weyl_dim_matches_tableau_count(n):
    for lam in partitions_up_to(4, n):
        assert weyl_dim(lam, n) == ssyt_count(lam, n), lam


def test_pieri_examples():
    assert dict(pieri_row((1,), 1, 3)) == {(2,): 1, (1, 1): 1}
    assert dict(pieri_row((), 5, 3)) == {(5,): 1}
    assert dict(pieri_row((2, 1), 2, 3)) == {
        (4, 1): 1,
        (3, 2): 1,
        (3, 1, 1): 1,
        (2, 2, 1): 1,
    }


def test_pieri_matches_strip_enumeration():
    for lam in partitions_up_to(3, 3):
        for q in range(4):
            got = pieri_row(lam, q, 4)
            assert set(got) == horizontal_strip_additions(lam, q, 4)
            assert all(m == 1 for m in got.values())


@pytest.mark.parametrize("n", [3, 4])
def test_pieri_dimension_identity(n):
    for lam in partitions_up_to(3, n):
        for q in range(4):
            total = sum(weyl_dim(nu, n) * m for nu, m in pieri_row(lam, q, n).items())
            assert total == weyl_dim(lam, n) * weyl_dim((q,), n)


def test_lr_examples():
    assert dict(lr_tensor((3, 1), (), 3)) == {(3, 1): 1}
    assert dict(lr_tensor((1,), (1,), 3)) == {(2,): 1, (1, 1): 1}
    # the four-row shape is cut by max_rows=3
    assert dict(lr_tensor((1, 1), (1, 1), 3)) == {(2, 2): 1, (2, 1, 1): 1}
    assert dict(lr_tensor((1, 1), (1, 1), 4)) == {
        (2, 2): 1,
        (2, 1, 1): 1,
        (1, 1, 1, 1): 1,
    }


@pytest.mark.parametrize("n", [3, 4])
def test_lr_against_character_products(n):
    shapes = [s for s in partitions_up_to(2, min(n, 3)) if sum(s) <= 4]
    for lam in shapes:
        for mu in shapes:
            got = {k: v for k, v in lr_tensor(lam, mu, n).items()}
            want = tensor_by_characters(lam, mu, n)
            assert got == want, (lam, mu, n)


def test_lr_symmetry_and_dimension_identity():
    shapes = [(), (1,), (2,), (1, 1), (2, 1), (2, 2), (3, 1)]
    for lam in shapes:
        for mu in shapes:
            ab = lr_tensor(lam, mu, 3)
            ba = lr_tensor(mu, lam, 3)
            assert ab == ba
            total = sum(weyl_dim(nu, 3) * m for nu, m in ab.items())
            assert total == weyl_dim(lam, 3) * weyl_dim(mu, 3)


def test_pieri_equals_lr_single_row():
    for lam in [(), (1,), (2, 1), (3, 2, 1)]:
        for q in range(4):
            assert pieri_row(lam, q, 4) == lr_tensor(lam, (q,), 4)


def test_dual_partition_examples():
    assert dual_partition((), 4) == ()
    assert dual_partition((1,), 4) == (1, 1, 1)
    assert dual_partition((2, 1), 4) == (2, 2, 1)


def test_dual_partition_involution():
    for lam in partitions_up_to(4, 4):
        assert dual_partition(dual_partition(lam, 4), 4) == lam
        d = dual_partition(lam, 4)
        assert weyl_dim(d, 4) == weyl_dim(lam, 4)
