from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spinorkit.clifford import EVEN, ODD, HalfSpinor, coordinate_subspace, pure_spinor, u_infinity, u_zero
from spinorkit.errors import BadProbe, Char2Unsupported, NotOnSigma, NotPure, WrongComponent
from spinorkit.field import GF, QQ, Field
from spinorkit.linalg import random_skew, skew_from_upper, zeros
from spinorkit.results import PositiveDimensional
from spinorkit.sigma import (
    QUADRIC_NAMES,
    SigmaPoint,
    beta_membership,
    complete_isotropic,
    embed_alt,
    format_point,
    hyperplane_form,
    incidence_dim,
    is_tangent,
    is_tangent_dual,
    jacobian_tangent,
    multiplicity_probe,
    on_sigma,
    parse_point,
    point_of_spinor,
    point_to_subspace,
    quadrics_eval,
    random_hyperplane_point,
    random_incident_pair,
    random_sigma_point,
    random_tangent_point,
    sigma_minus_quadrics,
    spinor_of_point,
    standard_w,
    subspace_to_point,
    tangency_locus,
    x_index,
    y_index,
)


def _point(F, u=0, x=None, y=None):
    coords = [0] * 16
    coords[0] = u
    for (i, j), v in (x or {}).items():
        coords[x_index(i, j)] = v
    for m, v in (y or {}).items():
        coords[y_index(m)] = v
    return SigmaPoint(F, coords)


def test_embed_examples():
    F = QQ
    assert embed_alt(zeros(5, 5, F), F) == _point(F, u=1)
    a = skew_from_upper({(0, 1): 1}, 5, F)
    assert embed_alt(a, F) == _point(F, u=1, x={(1, 2): 1})


def test_quadric_examples():
    F = QQ
    vals = quadrics_eval(_point(F, u=1, y={1: 1}))
    assert dict(zip(QUADRIC_NAMES, vals))["q1+"] == 1
    assert sum(1 for v in vals if v) == 1
    assert not any(quadrics_eval(_point(F, x={(1, 2): 1}, y={5: 1})))


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 10**6), p=st.sampled_from([0, 3, 7]))
def test_embedding_lands_on_sigma(seed, p):
    F = Field(p)
    pt = embed_alt(random_skew(5, F, random.Random(seed)), F)
    assert on_sigma(pt)


@pytest.mark.parametrize("F", [QQ, GF(5)])
def test_point_subspace_round_trip(F):
    rng = random.Random(2)
    for _ in range(10):
        pt = random_sigma_point(F, rng)
        assert subspace_to_point(point_to_subspace(pt)) == pt
        assert point_of_spinor(spinor_of_point(pt)) == pt


def test_embedding_matches_pure_spinor_of_graph():
    F = QQ
    assert subspace_to_point(u_zero(F)) == _point(F, u=1)
    with pytest.raises(WrongComponent):
        subspace_to_point(u_infinity(F))


def test_jacobian_rank_is_five():
    F = GF(7)
    rng = random.Random(4)
    for _ in range(5):
        _, rk, ker = jacobian_tangent(random_sigma_point(F, rng))
        assert rk == 5 and len(ker) == 11


def test_off_sigma_rejected():
    F = QQ
    with pytest.raises(NotOnSigma):
        jacobian_tangent(_point(F, u=1, y={1: 1}))


def test_incidence_examples():
    F = QQ
    assert incidence_dim(u_zero(F), u_infinity(F)) == 0
    assert incidence_dim(u_infinity(F), u_infinity(F)) == 5


def test_membership_examples():
    F = QQ
    w = standard_w(F)
    assert not beta_membership(_point(F, u=1), w)
    assert beta_membership(_point(F, x={(1, 2): 1}, y={5: 1}), w)
    form = hyperplane_form(w)
    assert form[0] and not any(form[1:])


def test_impure_w_rejected():
    F = QQ
    w = HalfSpinor.monomial(F, (1,)) + HalfSpinor.monomial(F, (2, 3, 4))
    with pytest.raises(NotPure):
        beta_membership(_point(F, u=1), w)


def test_tangency_locus_of_standard_w():
    F = QQ
    locus = tangency_locus(standard_w(F))
    got = {pt.coords for pt in locus.points}
    want = {_point(F, y={m: 1}).coords for m in range(1, 6)}
    assert got == want


def test_complete_isotropic_examples():
    F = QQ
    h = u_infinity(F).rows[1:]
    assert complete_isotropic(h, ODD, F) == u_infinity(F)
    assert complete_isotropic(h, EVEN, F) == coordinate_subspace(F, [2, 3, 4, 5])
    with pytest.raises(Char2Unsupported):
        complete_isotropic(u_infinity(GF(2)).rows[1:], ODD, GF(2))


def test_multiplicity_probe_orders():
    F = GF(32003)
    rng = random.Random(9)
    w = standard_w(F)
    locus = tangency_locus(w)
    for _ in range(5):
        c = locus.span_point([F.random(rng) for _ in range(5)])
        assert multiplicity_probe(c, w, random_tangent_point(c, rng)) == 2
        smooth = random_hyperplane_point(F, rng, 2)
        assert multiplicity_probe(smooth, w, random_tangent_point(smooth, rng)) == 1


def test_probe_inside_tangency_locus_is_positive_dimensional():
    F = QQ
    w = standard_w(F)
    c, d = _point(F, y={1: 1}), _point(F, y={2: 1})
    assert multiplicity_probe(c, w, d) is PositiveDimensional


def test_probe_must_be_tangent():
    F = QQ
    w = standard_w(F)
    c = _point(F, y={1: 1})
    with pytest.raises(BadProbe):
        multiplicity_probe(c, w, _point(F, u=1))


@pytest.mark.parametrize("dim", [0, 2, 4])
def test_reflexivity_of_tangency(dim):
    F = GF(7)
    rng = random.Random(dim)
    for _ in range(10):
        Uc, Uw = random_incident_pair(F, rng, dim)
        c, w = subspace_to_point(Uc), pure_spinor(Uw)
        assert incidence_dim(Uc, Uw) == dim
        assert beta_membership(c, w) == (dim > 0)
        assert is_tangent(c, w) == is_tangent_dual(w, c) == (dim == 4)


def test_sigma_minus_contains_odd_pure_spinors():
    F = GF(5)
    rng = random.Random(1)
    from spinorkit.clifford import random_isotropic

    qs = sigma_minus_quadrics(F)
    for _ in range(5):
        s = pure_spinor(random_isotropic(F, rng, ODD))
        assert not any(q(list(s.coeffs)) for q in qs)


def test_point_text_round_trip():
    F = QQ
    pt = embed_alt(random_skew(5, F, random.Random(0)), F)
    assert parse_point(format_point(pt), F) == pt
