from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spinorkit.errors import BadShape, NonResidue, NotPrime, NotSkew, ParseError
from spinorkit.field import GF, QQ, Field, parse_field
from spinorkit.linalg import (
    determinant,
    identity,
    intersect_subspaces,
    inverse,
    kernel_basis,
    matmul,
    pfaffian,
    random_skew,
    rank,
    row_reduce,
    scalar_sqrt,
    skew_from_upper,
    sub_pfaffian_vector,
    zeros,
)
from spinorkit.poly import Form, parse_forms

FIELDS = [QQ, GF(2), GF(5), GF(7), GF(11)]


def test_field_parsing():
    assert parse_field("Q") == QQ
    assert parse_field("Fp:7") == GF(7)
    with pytest.raises(NotPrime):
        parse_field("Fp:9")
    with pytest.raises(NotPrime):
        Field(1 << 17)


def test_scalar_format_round_trip():
    assert QQ.format_scalar(Fraction(-3, 4)) == "-3/4"
    assert QQ.parse_scalar("-3/4") == Fraction(-3, 4)
    assert GF(7).parse_scalar("1/2") == 4
    with pytest.raises(ParseError):
        QQ.parse_scalar("x")


@pytest.mark.parametrize("F", FIELDS)
def test_rref_identity_and_zero(F):
    rref, rk, piv = row_reduce(identity(3, F), F)
    assert rref == identity(3, F) and rk == 3 and piv == [0, 1, 2]
    rref, rk, piv = row_reduce(zeros(2, 4, F), F)
    assert rref == zeros(2, 4, F) and rk == 0 and piv == []


def test_ragged_matrix_rejected():
    with pytest.raises(BadShape):
        row_reduce([[1, 2], [3]], QQ)


@pytest.mark.parametrize("F", FIELDS)
def test_kernel_trivial_cases(F):
    assert kernel_basis(identity(4, F), F) == []
    ker = kernel_basis(zeros(3, 3, F), F)
    assert rank(ker, F) == 3


def test_kernel_of_rank_two_skew():
    F = QQ
    m = skew_from_upper({(0, 1): 1}, 5, F)
    ker = kernel_basis(m, F)
    assert len(ker) == 3
    e = identity(5, F)
    assert rank(ker + e[2:], F) == 3
    assert all(not any(r) for r in matmul(m, [list(c) for c in zip(*ker)], F))


@pytest.mark.parametrize("F", [QQ, GF(7)])
def test_intersections(F):
    e = identity(3, F)
    inter = intersect_subspaces([e[0], e[1]], [e[1], e[2]], F)
    assert inter == [e[1]]
    u = [[1, 2, 0], [0, 1, 1]]
    assert rank(intersect_subspaces(u, u, F), F) == 2


def test_pfaffian_small_cases():
    F = QQ
    a = Fraction(5, 3)
    assert pfaffian([[0, a], [-a, 0]], F) == a
    vals = {(0, 1): 2, (0, 2): 3, (0, 3): 5, (1, 2): 7, (1, 3): 11, (2, 3): 13}
    m = skew_from_upper(vals, 4, F)
    assert pfaffian(m, F) == 2 * 13 - 3 * 11 + 5 * 7


def test_pfaffian_rejects_non_skew():
    with pytest.raises(NotSkew):
        pfaffian([[0, 1], [1, 0]], QQ)


def test_sub_pfaffians_vanish_on_rank_two():
    F = GF(7)
    assert sub_pfaffian_vector(zeros(5, 5, F), F) == [0] * 5
    assert sub_pfaffian_vector(skew_from_upper({(0, 1): 1}, 5, F), F) == [0] * 5
    with pytest.raises(BadShape):
        sub_pfaffian_vector(zeros(4, 4, F), F)


def test_square_roots():
    assert scalar_sqrt(Fraction(9, 4), QQ) == Fraction(3, 2)
    assert scalar_sqrt(2, GF(7)) == 3
    with pytest.raises(NonResidue):
        scalar_sqrt(3, GF(7))
    with pytest.raises(NonResidue):
        scalar_sqrt(2, QQ)


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10**6), half=st.integers(1, 4), p=st.sampled_from([0, 3, 11]))
def test_pfaffian_squared_is_determinant(seed, half, p):
    F = Field(p)
    m = random_skew(2 * half, F, random.Random(seed))
    pf = pfaffian(m, F)
    assert F(pf * pf) == determinant(m, F)


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10**6), n=st.integers(1, 6), m=st.integers(1, 6), p=st.sampled_from([0, 2, 7]))
def test_rank_nullity(seed, n, m, p):
    F = Field(p)
    rng = random.Random(seed)
    a = [[F.random(rng) if rng.random() < 0.6 else F.zero for _ in range(m)] for _ in range(n)]
    ker = kernel_basis(a, F, m)
    assert rank(a, F) + len(ker) == m
    for v in ker:
        assert all(not F(sum(x * y for x, y in zip(row, v))) for row in a)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**6), p=st.sampled_from([0, 5, 13]))
def test_inverse(seed, p):
    F = Field(p)
    rng = random.Random(seed)
    a = [[F.random(rng) for _ in range(4)] for _ in range(4)]
    if not determinant(a, F):
        return
    assert matmul(a, inverse(a, F), F) == identity(4, F)


def test_forms_parse_and_evaluate():
    F = QQ
    q, l = parse_forms("z0*z1 - 2*z2^2, z0 + z2", 3, F)
    assert q.degree == 2 and l.degree == 1
    assert q([1, 3, 1]) == 1
    assert (q * l).degree == 3
    with pytest.raises(ParseError):
        parse_forms("z0*z1 + z2", 3, F)


def test_form_substitution_and_gradient():
    F = GF(7)
    q = Form.var(F, 2, 0) * Form.var(F, 2, 1)
    assert q.gradient([2, 3]) == [3, 2]
    swapped = q.substitute([[0, 1], [1, 0]])
    assert swapped.terms == q.terms
