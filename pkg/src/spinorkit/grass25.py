"""G(2,5) in Plücker coordinates and the projection of a hyperplane section onto it.

Plücker coordinates use the same (i < j) order as the x-block of a point of
P^15, so for the standard w the projection π_w is literally the slice
``c ↦ X̂(c)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .clifford import (
    EVEN,
    MASKS,
    HalfSpinor,
    IsotropicSubspace,
    adapted_frame,
    mask_indices,
)
from .errors import (
    BadShape,
    CenterOfProjection,
    DegeneratePlane,
    NotInSection,
    NotOnGrassmannian,
    ParseError,
    ZeroForm,
)
from .field import Field
from .linalg import (
    determinant,
    intersect_subspaces,
    kernel_basis,
    rank,
    row_reduce,
    solve,
    transpose,
)
from .poly import Form
from .sigma import (
    PAIR_POS,
    PAIRS,
    QUADRIC_NAMES,
    SigmaPoint,
    _require_on_sigma,
    _require_pure_odd,
    coords_of_spinor,
    point_to_subspace,
    sigma_quadrics,
    spinor_of_coords,
    spinor_of_point,
    x_index,
    y_index,
)
from .clifford import beta_pair


class PluckerPoint:
    """Ten homogeneous coordinates x_ij (i < j), first nonzero one scaled to 1."""

    __slots__ = ("field", "coords")

    def __init__(self, field: Field, coords):
        coords = [field(c) for c in coords]
        if len(coords) != 10:
            raise BadShape("a Plücker point has 10 coordinates")
        for c in coords:
            if c:
                inv = field.inv(c)
                coords = [field(x * inv) for x in coords]
                break
        else:
            raise DegeneratePlane("all Plücker coordinates vanish")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coords", tuple(coords))

    def __setattr__(self, name, value):
        raise AttributeError("PluckerPoint is immutable")

    def __getitem__(self, pair: tuple[int, int]):
        """Coordinate p_ij for 1-based i, j (skew-extended)."""
        i, j = pair
        if i == j:
            return self.field.zero
        if i < j:
            return self.coords[PAIR_POS[(i, j)]]
        return self.field.neg(self.coords[PAIR_POS[(j, i)]])

    def matrix(self) -> list[list]:
        return [[self[(i, j)] for j in range(1, 6)] for i in range(1, 6)]

    def __eq__(self, other):
        return isinstance(other, PluckerPoint) and self.field == other.field and self.coords == other.coords

    def __hash__(self):
        return hash((self.field, self.coords))

    def __repr__(self):
        return f"PluckerPoint({format_plucker(self)})"


def format_plucker(p: PluckerPoint) -> str:
    return " ".join(p.field.format_scalar(c) for c in p.coords)


def parse_plucker(text: str, F: Field) -> PluckerPoint:
    toks = text.split()
    if len(toks) != 10:
        raise ParseError("a Plücker point needs 10 coordinates")
    try:
        return PluckerPoint(F, [F.parse_scalar(t) for t in toks])
    except DegeneratePlane as exc:
        raise ParseError(str(exc)) from exc


def plucker_of_plane(basis, F: Field) -> PluckerPoint:
    """2x2 minors p_ij = a_i b_j - a_j b_i of a 2x5 basis (a; b)."""
    if len(basis) != 2 or any(len(r) != 5 for r in basis):
        raise BadShape("a plane in a 5-space needs a 2x5 basis")
    a, b = ([F(x) for x in r] for r in basis)
    minors = [F(a[i - 1] * b[j - 1] - a[j - 1] * b[i - 1]) for i, j in PAIRS]
    if not any(minors):
        raise DegeneratePlane("basis has rank < 2")
    return PluckerPoint(F, minors)


def grass_relations(p: PluckerPoint) -> list:
    """The five 4x4 Pfaffians of the skew matrix (p_ij); all zero iff p ∈ G(2,5)."""
    from .linalg import sub_pfaffian_vector

    return sub_pfaffian_vector(p.matrix(), p.field)


def on_grassmannian(p: PluckerPoint) -> bool:
    return not any(grass_relations(p))


def plane_of_plucker(p: PluckerPoint) -> list[list]:
    """A 2x5 basis of the plane of p.

    With (i, j) the index pair of the first nonzero coordinate, the rows are the
    contractions v_i = Σ_k p_ik e_k and v_j, whose wedge is p_ij · p.
    """
    if not on_grassmannian(p):
        raise NotOnGrassmannian(f"{format_plucker(p)} is not decomposable")
    k = next(n for n, c in enumerate(p.coords) if c)
    i, j = PAIRS[k]
    m = p.matrix()
    return [list(m[i - 1]), list(m[j - 1])]


def sigma11_test(p: PluckerPoint, L) -> bool:
    """Is the plane of p contained in ker L? (Σ_j p_ij L_j = 0 for every i.)"""
    if not on_grassmannian(p):
        raise NotOnGrassmannian(f"{format_plucker(p)} is not decomposable")
    F = p.field
    L = [F(x) for x in L]
    m = p.matrix()
    return all(not F(sum(m[i][j] * L[j] for j in range(5))) for i in range(5))


# -- the projection π_w -----------------------------------------------------------

def _intersection_in_w(c: SigmaPoint, w: HalfSpinor):
    _require_on_sigma(c)
    Uw = _require_pure_odd(w)
    if beta_pair(spinor_of_point(c), w):
        raise NotInSection("c is not on the hyperplane section H_w")
    Uc = point_to_subspace(c)
    inter = intersect_subspaces(Uc.rows, Uw.rows, c.field, 10)
    if len(inter) == 4:
        raise CenterOfProjection("c lies in the tangency locus of w")
    basis = transpose(Uw.rows)
    coords = [solve(basis, v, c.field) for v in inter]
    return Uw, inter, coords


def project_pi_w(c: SigmaPoint, w: HalfSpinor) -> PluckerPoint:
    """Plücker point of U_c ∩ U_w in the row-reduced basis of U_w."""
    _, _, coords = _intersection_in_w(c, w)
    return plucker_of_plane(coords, c.field)


def plane_in_w(c: SigmaPoint, w: HalfSpinor) -> list[list]:
    """Row-reduced basis of U_c ∩ U_w as vectors of V."""
    return _intersection_in_w(c, w)[1]


def frame_coords(c: SigmaPoint, w: HalfSpinor) -> list:
    """Coordinates (u', x', y') of c in the frame adapted to w; for w = e_12345 these are c's own."""
    fr = adapted_frame(w)
    return coords_of_spinor(fr.to_frame(spinor_of_point(c)))


def kernel_fiber(c: SigmaPoint, w: HalfSpinor) -> list[list]:
    """Kernel of the X̂-block of c in the frame adapted to w, as a 3-dim subspace of U_w ⊂ V.

    The y-block of c in that frame lies in it.
    """
    _intersection_in_w(c, w)  # validates and rejects the centre
    F = c.field
    fc = frame_coords(c, w)
    xhat = [[F.zero] * 5 for _ in range(5)]
    for k, (i, j) in enumerate(PAIRS):
        xhat[i - 1][j - 1] = fc[1 + k]
        xhat[j - 1][i - 1] = F.neg(fc[1 + k])
    ker = kernel_basis(xhat, F, 5)
    f = _require_pure_odd(w).rows
    return [[F(sum(v[k] * f[k][n] for k in range(5))) for n in range(10)] for v in ker]


def fiber_coordinates(c: SigmaPoint, w: HalfSpinor):
    """(kernel basis in U_w-coordinates, y-block) in the frame adapted to w."""
    F = c.field
    fc = frame_coords(c, w)
    xhat = [[F.zero] * 5 for _ in range(5)]
    for k, (i, j) in enumerate(PAIRS):
        xhat[i - 1][j - 1] = fc[1 + k]
        xhat[j - 1][i - 1] = F.neg(fc[1 + k])
    return kernel_basis(xhat, F, 5), fc[11:16]


# -- the Z_ℓ system -------------------------------------------------------------

STANDARD_LINEAR = (0, x_index(1, 5), x_index(2, 5), x_index(3, 5), x_index(4, 5))
STANDARD_QUADRICS = ("q5+", "q1-", "q2-", "q3-", "q4-")


@dataclass(frozen=True)
class ZLSystem:
    """Five linear and five quadratic forms on the 16 coordinates cutting Z_ℓ."""

    field: Field
    linear: tuple  # of 16-vectors
    quadrics: tuple  # of Forms in 16 variables

    def contains(self, c: SigmaPoint) -> bool:
        F = self.field
        if any(F(sum(a * b for a, b in zip(row, c.coords))) for row in self.linear):
            return False
        return not any(q(c.coords) for q in self.quadrics)


def _wedge_power_matrix(h, F: Field) -> list[list]:
    """16x16 action of Λ^even h on even-mask coefficients: c'_I = Σ_J det(h[I, J]) c_J."""
    masks = MASKS[EVEN]
    out = []
    for mi in masks:
        ri = [i - 1 for i in mask_indices(mi)]
        row = []
        for mj in masks:
            cj = [j - 1 for j in mask_indices(mj)]
            if len(ri) != len(cj):
                row.append(F.zero)
            elif not ri:
                row.append(F.one)
            else:
                row.append(determinant([[h[a][b] for b in cj] for a in ri], F))
        out.append(row)
    return out


def _coords_matrix(F: Field, to_spinor: bool) -> list[list]:
    # (u, x, y) <-> even mask coefficients, as a signed permutation matrix
    cols = []
    for k in range(16):
        e = [0] * 16
        e[k] = 1
        cols.append(list(spinor_of_coords(e, F).coeffs))
    m = transpose(cols)  # mask coeffs = m . coords
    return m if to_spinor else transpose(m)  # signed permutation: inverse = transpose


def complete_covector(ell, F: Field) -> list[list]:
    """An invertible 5x5 matrix with ell as last row; the other rows are standard covectors, leftmost first."""
    ell = [F(x) for x in ell]
    if not any(ell):
        raise ZeroForm("the linear form is zero")
    rows: list = []
    for i in range(5):
        e = [F.zero] * 5
        e[i] = F.one
        if rank(rows + [e, ell], F) == len(rows) + 2:
            rows.append(e)
        if len(rows) == 4:
            break
    return rows + [ell]


def frame_change_matrix(w: HalfSpinor, ell) -> list[list]:
    """16x16 matrix A taking a point's coordinates to the frame where w is standard and ell is x_5."""
    F = w.field
    _require_pure_odd(w)
    h = complete_covector(ell, F)
    fr = adapted_frame(w)
    to_mask = _coords_matrix(F, True)
    from_mask = _coords_matrix(F, False)
    if fr.vacuum_parity != EVEN:  # pragma: no cover - W is transversal to an odd U_w
        raise NotInSection("unexpected frame parity")
    inv = [list(r) for r in fr.inv_even]
    wedge = _wedge_power_matrix(h, F)
    from .linalg import matmul

    return matmul(from_mask, matmul(wedge, matmul(inv, to_mask, F), F), F)


@lru_cache(maxsize=None)
def _standard_quadrics(F: Field) -> tuple:
    qs = dict(zip(QUADRIC_NAMES, sigma_quadrics(F)))
    return tuple(qs[name].drop_variables(STANDARD_LINEAR) for name in STANDARD_QUADRICS)


def zero_section_system(ell, w: HalfSpinor) -> ZLSystem:
    """Equations of the closure of {c ∈ H_w : U_c ∩ U_w ⊂ ker ell}.

    For w = e_12345 and ell = x_5 these are u = x15 = x25 = x35 = x45 = 0 together
    with q5+, q1-, q2-, q3-, q4- restricted to that subspace. A general (ell, w)
    is reduced to that case by the frame adapted to w and a change of basis of
    U_w sending ell to the last coordinate.
    """
    F = w.field
    A = frame_change_matrix(w, ell)
    linear = tuple(tuple(A[k]) for k in STANDARD_LINEAR)
    quads = tuple(q.substitute(A) for q in _standard_quadrics(F))
    return ZLSystem(F, linear, quads)


# -- the matrix M of quadratic Pfaffians --------------------------------------------

def _pfaffian_forms(m, idx):
    if not idx:
        return None
    first = idx[0]
    total = None
    for k in range(1, len(idx)):
        a = m[first][idx[k]]
        if a.is_zero():
            continue
        rest = idx[1:k] + idx[k + 1:]
        sub = _pfaffian_forms(m, rest)
        term = a if sub is None else a * sub
        if k % 2 == 0:
            term = -term
        total = term if total is None else total + term
    return total


def matrix_m(F: Field) -> list[list]:
    """The skew matrix of linear forms in (u, x, y) whose 4x4 Pfaffians cut the cone over G(2,5)."""
    def y(m, s=1):
        return Form.var(F, 16, y_index(m), s)

    def x(i, j, s=1):
        return Form.var(F, 16, x_index(i, j), s)

    z = Form(F, 16)
    rows = [
        [z, y(1, -1), y(2), y(3, -1), y(4)],
        [y(1), z, x(3, 4), x(2, 4), x(2, 3)],
        [y(2, -1), x(3, 4, -1), z, x(1, 4), x(1, 3)],
        [y(3), x(2, 4, -1), x(1, 4, -1), z, x(1, 2)],
        [y(4, -1), x(2, 3, -1), x(1, 3, -1), x(1, 2, -1), z],
    ]
    return rows


def m_pfaffians(F: Field) -> list[Form]:
    """Pfaffians of M with row and column i removed, i = 1..5 (no extra sign)."""
    m = matrix_m(F)
    out = []
    for i in range(5):
        idx = tuple(k for k in range(5) if k != i)
        pf = _pfaffian_forms(m, idx)
        out.append(pf if pf is not None else Form(F, 16))
    return out
