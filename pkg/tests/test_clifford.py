from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spinorkit.clifford import (
    EVEN,
    ODD,
    HalfSpinor,
    IsotropicSubspace,
    adapted_frame,
    annihilator,
    beta_matrix,
    beta_pair,
    clifford_act,
    coordinate_subspace,
    format_spinor,
    intersection_dim,
    is_pure,
    parse_spinor,
    pure_spinor,
    q_form,
    random_isometry,
    random_isotropic,
    random_spinor,
    subspace_of_spinor,
    u_infinity,
    u_zero,
)
from spinorkit.errors import NotMaximalIsotropic, ParityMismatch, ParseError, ZeroSpinor
from spinorkit.field import GF, QQ, Field
from spinorkit.linalg import rank

FIELDS = [QQ, GF(5), GF(7), GF(11)]


def _basis_vector(i):
    v = [0] * 10
    v[i] = 1
    return v


def test_coordinate_spinors():
    F = QQ
    s0 = pure_spinor(u_zero(F))
    assert s0.parity == EVEN and s0.coeff(()) == 1 and sum(1 for c in s0.coeffs if c) == 1
    sinf = pure_spinor(u_infinity(F))
    assert sinf.parity == ODD and sinf.coeff((1, 2, 3, 4, 5)) and sum(1 for c in sinf.coeffs if c) == 1


def test_clifford_action_on_vacuum():
    F = QQ
    one = HalfSpinor.monomial(F, ())
    e1 = clifford_act(_basis_vector(5), one)
    assert e1 == HalfSpinor.monomial(F, (1,))
    assert clifford_act(_basis_vector(0), one).is_zero()
    assert clifford_act(_basis_vector(0), e1) == one


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**6), p=st.sampled_from([0, 5, 7]))
def test_action_squares_to_quadratic_form(seed, p):
    F = Field(p)
    rng = random.Random(seed)
    u = [F.random(rng) for _ in range(10)]
    s = random_spinor(F, rng, rng.randrange(2))
    twice = clifford_act(u, clifford_act(u, s))
    assert twice == s.scaled(q_form(u, F))


def test_beta_examples_and_parity():
    F = QQ
    one = HalfSpinor.monomial(F, ())
    top = HalfSpinor.monomial(F, (1, 2, 3, 4, 5))
    assert beta_pair(one, top) == 1
    assert beta_pair(HalfSpinor.monomial(F, (2, 3)), HalfSpinor.monomial(F, (1, 4, 5)))
    assert not beta_pair(HalfSpinor.monomial(F, (2, 3)), HalfSpinor.monomial(F, (2, 4, 5)))
    with pytest.raises(ParityMismatch):
        beta_pair(one, one)


def test_beta_is_nondegenerate():
    F = GF(7)
    assert rank(beta_matrix(F), F) == 16


@pytest.mark.parametrize("F", FIELDS)
def test_pure_spinor_round_trip(F):
    rng = random.Random(11)
    for _ in range(15):
        U = random_isotropic(F, rng)
        s = pure_spinor(U)
        assert s.parity == U.parity
        for u in U.rows:
            assert clifford_act(u, s).is_zero()
        ann, pure = annihilator(s)
        assert pure and IsotropicSubspace(F, ann) == U
        assert subspace_of_spinor(s) == U


def test_impure_spinor():
    F = QQ
    s = HalfSpinor.monomial(F, (1, 2)) + HalfSpinor.monomial(F, (3, 4))
    ann, pure = annihilator(s)
    assert not pure and len(ann) < 5
    assert not is_pure(s)
    with pytest.raises(ZeroSpinor):
        annihilator(HalfSpinor(F, EVEN, [0] * 16))


def test_intersection_dims():
    F = QQ
    assert intersection_dim(u_zero(F), u_infinity(F)) == 0
    assert intersection_dim(u_infinity(F), u_infinity(F)) == 5
    assert intersection_dim(u_infinity(F), coordinate_subspace(F, [2, 3, 4, 5])) == 4


def test_subspace_validation():
    F = QQ
    with pytest.raises(NotMaximalIsotropic):
        IsotropicSubspace(F, [_basis_vector(i) for i in range(4)])
    rows = [_basis_vector(i) for i in range(4)] + [_basis_vector(0)]
    with pytest.raises(NotMaximalIsotropic):
        IsotropicSubspace(F, rows)
    bad = [_basis_vector(i) for i in range(4)] + [[0] * 4 + [1] + [0] * 4 + [1]]
    with pytest.raises(NotMaximalIsotropic):
        IsotropicSubspace(F, bad)


def test_isometries_preserve_q():
    F = GF(11)
    rng = random.Random(3)
    g = random_isometry(F, rng)
    for _ in range(10):
        u = [F.random(rng) for _ in range(10)]
        gu = [F(sum(g[i][j] * u[j] for j in range(10))) for i in range(10)]
        assert q_form(gu, F) == q_form(u, F)


def test_adapted_frame_sends_w_to_top():
    F = GF(7)
    rng = random.Random(5)
    w = pure_spinor(random_isotropic(F, rng, ODD))
    fr = adapted_frame(w)
    assert fr.to_frame(w).proportional(HalfSpinor.monomial(F, (1, 2, 3, 4, 5)))


def test_spinor_text_round_trip():
    F = QQ
    s = random_spinor(F, random.Random(1), ODD)
    assert parse_spinor(format_spinor(s), F) == s
    with pytest.raises(ParseError):
        parse_spinor("even: 1@{1}", F)
    with pytest.raises(ParseError):
        parse_spinor("1@{}", F)
