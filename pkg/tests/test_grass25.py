from __future__ import annotations

import random

import pytest

from spinorkit.clifford import pure_spinor
from spinorkit.errors import CenterOfProjection, DegeneratePlane, NotInSection, NotOnGrassmannian, ZeroForm
from spinorkit.field import GF, QQ
from spinorkit.grass25 import (
    STANDARD_LINEAR,
    PluckerPoint,
    format_plucker,
    grass_relations,
    kernel_fiber,
    m_pfaffians,
    on_grassmannian,
    parse_plucker,
    plane_of_plucker,
    plucker_of_plane,
    project_pi_w,
    sigma11_test,
    zero_section_system,
)
from spinorkit.linalg import kernel_basis, rank
from spinorkit.sigma import (
    QUADRIC_NAMES,
    SigmaPoint,
    random_hyperplane_point,
    random_incident_pair,
    sigma_quadrics,
    standard_w,
    subspace_to_point,
    x_index,
    y_index,
)


def _plucker(F, **vals):
    coords = [0] * 10
    for name, v in vals.items():
        coords[x_index(int(name[1]), int(name[2])) - 1] = v
    return PluckerPoint(F, coords)


def _c0(F):
    coords = [0] * 16
    coords[x_index(1, 2)] = 1
    coords[y_index(5)] = 1
    return SigmaPoint(F, coords)


def test_plucker_examples():
    F = QQ
    assert plucker_of_plane([[1, 0, 0, 0, 0], [0, 1, 0, 0, 0]], F) == _plucker(F, x12=1)
    assert plucker_of_plane([[1, 0, 1, 0, 0], [0, 1, 0, 0, 0]], F) == _plucker(F, x12=1, x23=-1)
    with pytest.raises(DegeneratePlane):
        plucker_of_plane([[1, 0, 0, 0, 0], [2, 0, 0, 0, 0]], F)


def test_relations():
    F = GF(7)
    rng = random.Random(0)
    for _ in range(20):
        basis = [[F.random(rng) for _ in range(5)] for _ in range(2)]
        if rank(basis, F) == 2:
            assert not any(grass_relations(plucker_of_plane(basis, F)))
    assert grass_relations(_plucker(F, x12=1, x34=1)).count(0) < 5


def test_plane_of_plucker():
    F = QQ
    plane = plane_of_plucker(_plucker(F, x12=1))
    assert plucker_of_plane(plane, F) == _plucker(F, x12=1)
    with pytest.raises(NotOnGrassmannian):
        plane_of_plucker(_plucker(F, x12=1, x34=1))


def test_plane_of_plucker_round_trip():
    F = GF(11)
    rng = random.Random(1)
    for _ in range(20):
        basis = [[F.random(rng) for _ in range(5)] for _ in range(2)]
        if rank(basis, F) < 2:
            continue
        p = plucker_of_plane(basis, F)
        assert rank(plane_of_plucker(p) + basis, F) == 2


def test_plucker_text_round_trip():
    F = QQ
    p = _plucker(F, x12=1, x23=-1)
    assert parse_plucker(format_plucker(p), F) == p


def test_sigma11_examples():
    F = QQ
    p = _plucker(F, x12=1)
    assert sigma11_test(p, [0, 0, 0, 0, 1])
    assert not sigma11_test(_plucker(F, x15=1), [0, 0, 0, 0, 1])


def test_projection_examples():
    F = QQ
    w = standard_w(F)
    assert project_pi_w(_c0(F), w) == _plucker(F, x12=1)
    u_only = SigmaPoint(F, [1] + [0] * 15)
    with pytest.raises(NotInSection):
        project_pi_w(u_only, w)
    centre = SigmaPoint(F, [0] * 11 + [1, 0, 0, 0, 0])
    with pytest.raises(CenterOfProjection):
        project_pi_w(centre, w)


def test_kernel_fiber_example():
    F = QQ
    fib = kernel_fiber(_c0(F), standard_w(F))
    want = [[0] * 7 + [1, 0, 0], [0] * 8 + [1, 0], [0] * 9 + [1]]
    assert len(fib) == 3 and rank(fib + want, F) == 3


def test_projection_lands_on_grassmannian():
    F = GF(7)
    rng = random.Random(2)
    for _ in range(20):
        Uc, Uw = random_incident_pair(F, rng, 2)
        assert on_grassmannian(project_pi_w(subspace_to_point(Uc), pure_spinor(Uw)))


def test_zl_standard_system():
    F = QQ
    sys = zero_section_system([0, 0, 0, 0, 1], standard_w(F))
    for row, k in zip(sys.linear, STANDARD_LINEAR):
        assert [i for i, v in enumerate(row) if v] == [k] and row[k] == 1
    qs = dict(zip(QUADRIC_NAMES, sigma_quadrics(F)))
    for got, name in zip(sys.quadrics, ("q5+", "q1-", "q2-", "q3-", "q4-")):
        assert got.terms == qs[name].drop_variables(STANDARD_LINEAR).terms


def test_zl_rejects_zero_form():
    with pytest.raises(ZeroForm):
        zero_section_system([0] * 5, standard_w(QQ))


def test_m_pfaffians_match_the_system():
    F = QQ
    sys = zero_section_system([0, 0, 0, 0, 1], standard_w(F))
    pfs = [pf.drop_variables(STANDARD_LINEAR) for pf in m_pfaffians(F)]
    for q in sys.quadrics:
        assert any(q.terms == pf.terms or q.terms == (-pf).terms for pf in pfs)


def _ell_vanishing_on(p, F, rng):
    ker = kernel_basis(plane_of_plucker(p), F, 5)
    coeffs = [F.random(rng) for _ in ker]
    return [F(sum(a * v[i] for a, v in zip(coeffs, ker))) for i in range(5)]


@pytest.mark.parametrize("standard", [True, False])
def test_zl_membership_matches_schubert_condition(standard):
    F = GF(7)
    rng = random.Random(3)
    positives = 0
    for i in range(30):
        if standard:
            w, c = standard_w(F), random_hyperplane_point(F, rng, 2)
        else:
            Uc, Uw = random_incident_pair(F, rng, 2)
            w, c = pure_spinor(Uw), subspace_to_point(Uc)
        p = project_pi_w(c, w)
        ell = _ell_vanishing_on(p, F, rng) if i % 2 else [F.random(rng) for _ in range(5)]
        if not any(ell):
            continue
        expected = sigma11_test(p, ell)
        positives += expected
        assert zero_section_system(ell, w).contains(c) == expected
    assert positives > 0
