import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ainfty.linalg import SparseMatrix, Span, kernel_basis, quotient_basis, rank, rref, solve, \
    subquotient_cohomology
from ainfty.scalars import GF, QQ, ModP, field_from_name


def matrices(field, max_dim=4, coeffs=st.integers(-3, 3)):
    return st.integers(1, max_dim).flatmap(
        lambda r: st.integers(1, max_dim).flatmap(
            lambda c: st.lists(st.lists(coeffs, min_size=c, max_size=c), min_size=r, max_size=r)))


def brute_rank(rows, p):
    """log_p of the number of distinct images, enumerated over F_p."""
    cols = len(rows[0])
    images = set()
    for x in itertools.product(range(p), repeat=cols):
        images.add(tuple(sum(a * b for a, b in zip(row, x)) % p for row in rows))
    n, r = len(images), 0
    while n > 1:
        n //= p
        r += 1
    return r


@given(matrices(QQ))
def test_rank_plus_nullity(rows):
    m = SparseMatrix.from_rows(rows)
    ker = kernel_basis(m)
    assert rank(m) + len(ker) == m.cols
    for z in ker:
        assert not any(m.matvec(z))


@pytest.mark.parametrize("p", [2, 3])
@given(data=st.data())
def test_rank_matches_enumeration_over_small_fields(p, data):
    rows = data.draw(matrices(GF(p), max_dim=3, coeffs=st.integers(0, p - 1)))
    assert rank(SparseMatrix.from_rows(rows, GF(p))) == brute_rank(rows, p)


@given(matrices(QQ), st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_solve_consistent_systems(rows, x0):
    m = SparseMatrix.from_rows(rows)
    x0 = x0[:m.cols]
    b = m.matvec(x0)
    x = solve(m, b)
    assert x is not None and m.matvec(x) == b


def test_solve_inconsistent():
    m = SparseMatrix.from_rows([[1, 1], [2, 2]])
    assert solve(m, [1, 3]) is None


def test_rref_is_reduced():
    r, piv = rref(SparseMatrix.from_rows([[2, 4, 1], [1, 2, 0], [0, 0, 3]]))
    assert piv == [0, 2]
    dense = r.to_dense()
    assert dense[0][0] == 1 and dense[1][2] == 1 and dense[1][0] == 0


def test_quotient_basis_complements():
    q = quotient_basis([[1, 1, 0], [0, 1, 1]], 3)
    assert len(q) == 1


def test_span_reduce_tracks_combination():
    s = Span(QQ, track=True)
    s.add({"a": 1, "b": 1}, tag="u")
    s.add({"b": 1}, tag="v")
    rem, combo = s.reduce({"a": 2, "b": 5})
    assert not rem
    assert combo == {"u": 2, "v": 3}
    assert not s.contains({"c": 1})


def test_subquotient_cohomology_of_a_small_complex():
    # x0 -> y1, with the subcomplex spanned by y1 in degree 1
    dims = subquotient_cohomology({0: ["x"], 1: ["y"]}, lambda b: {"y": 1} if b == "x" else {},
                                  {1: [{"y": 1}]}, QQ)
    assert dims.get(0, 0) == 1 and dims.get(1, 0) == 0


def test_modp_arithmetic():
    a, b = ModP(3, 7), ModP(5, 7)
    assert a * b == ModP(1, 7)
    assert (a / b) * b == a
    assert GF(7).format(GF(7)(-1)) == "6"
    assert field_from_name("Fp:7") == GF(7)
    assert QQ.format(Fraction(-2, 4)) == "-1/2"
    with pytest.raises(ValueError):
        field_from_name("R")
