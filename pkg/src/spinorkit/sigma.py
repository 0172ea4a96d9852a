"""The spinor tenfold Σ ⊂ P^15 in the coordinates (u : x_ij : y_k).

Coordinate order: ``u; x12 x13 x14 x15 x23 x24 x25 x34 x35 x45; y1 .. y5``.

Identification with S+ = Λ^even U∞: the mask ∅ is u, the mask {i,j} is x_ij,
and the mask [5]∖{m} carries (-1)^m y_m. With this sign the graph spinor
exp(Σ G_ij e_ij) is exactly embed_alt(G).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .clifford import (
    BETA_SIGN,
    EVEN,
    MASK_POS,
    MASKS,
    ODD,
    FULL,
    HalfSpinor,
    IsotropicSubspace,
    act_full,
    annihilator,
    b_form,
    beta_pair,
    coordinate_subspace,
    indices_mask,
    intersection_dim,
    pure_spinor,
    q_form,
    subspace_of_spinor,
    toggle_full,
    transversal_twist,
)
from .errors import (
    BadProbe,
    BadShape,
    Char2Unsupported,
    FieldMismatch,
    NonResidue,
    NotInSection,
    NotMaximalIsotropic,
    NotOnSigma,
    NotPure,
    NotSplitOverField,
    ParseError,
    WrongComponent,
)
from .field import Field
from .linalg import (
    check_skew,
    kernel_basis,
    principal_pfaffian,
    rank,
    row_reduce,
    scalar_sqrt,
    solve,
    sub_pfaffian_vector,
    transpose,
)
from .poly import Form
from .results import PositiveDimensional

PAIRS = ((1, 2), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5), (3, 4), (3, 5), (4, 5))
PAIR_POS = {pair: k for k, pair in enumerate(PAIRS)}

COORD_NAMES = ("u",) + tuple(f"x{i}{j}" for i, j in PAIRS) + tuple(f"y{m}" for m in range(1, 6))
COORD_INDEX = {name: k for k, name in enumerate(COORD_NAMES)}


def x_index(i: int, j: int) -> int:
    """Coordinate index of x_ij (1-based i < j)."""
    return 1 + PAIR_POS[(i, j)]


def y_index(m: int) -> int:
    return 10 + m


# The ten defining quadrics, verbatim from the standard display.
QUADRIC_TEXT = (
    ("q1+", "u*y1 + x23*x45 - x24*x35 + x34*x25"),
    ("q2+", "u*y2 - x13*x45 + x14*x35 - x34*x15"),
    ("q3+", "u*y3 + x12*x45 - x14*x25 + x24*x15"),
    ("q4+", "u*y4 - x12*x35 + x13*x25 - x23*x15"),
    ("q5+", "u*y5 + x12*x34 - x13*x24 + x23*x14"),
    ("q1-", "x12*y2 + x13*y3 + x14*y4 + x15*y5"),
    ("q2-", "-x12*y1 + x23*y3 + x24*y4 + x25*y5"),
    ("q3-", "-x13*y1 - x23*y2 + x34*y4 + x35*y5"),
    ("q4-", "-x14*y1 - x24*y2 - x34*y3 + x45*y5"),
    ("q5-", "-x15*y1 - x25*y2 - x35*y3 - x45*y4"),
)
QUADRIC_NAMES = tuple(name for name, _ in QUADRIC_TEXT)

_TERM = re.compile(r"([+-]?)\s*([a-z]\d*)\*([a-z]\d*)")


def _parse_quadric(text: str):
    triples = []
    for sign, a, b in _TERM.findall(text.replace(" ", "")):
        triples.append((-1 if sign == "-" else 1, COORD_INDEX[a], COORD_INDEX[b]))
    return tuple(triples)


QUADRIC_TERMS = tuple(_parse_quadric(t) for _, t in QUADRIC_TEXT)


@lru_cache(maxsize=None)
def sigma_quadrics(F: Field) -> tuple[Form, ...]:
    return tuple(Form.quadric(F, 16, terms) for terms in QUADRIC_TERMS)


# -- points --------------------------------------------------------------------

class SigmaPoint:
    """A point of P^15, canonically scaled (first nonzero coordinate 1).

    The name reflects its main use; membership in Σ is not enforced here.
    """

    __slots__ = ("field", "coords")

    def __init__(self, field: Field, coords):
        coords = [field(c) for c in coords]
        if len(coords) != 16:
            raise BadShape("a point of P^15 has 16 coordinates")
        for c in coords:
            if c:
                inv = field.inv(c)
                coords = [field(x * inv) for x in coords]
                break
        else:
            raise ValueError("the zero vector is not a projective point")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coords", tuple(coords))

    def __setattr__(self, name, value):
        raise AttributeError("SigmaPoint is immutable")

    @classmethod
    def from_parts(cls, field: Field, u, x, y) -> "SigmaPoint":
        """``x`` is either the 10-list in PAIRS order or a 5x5 skew matrix."""
        if len(x) == 5:
            x = [x[i - 1][j - 1] for i, j in PAIRS]
        return cls(field, [u, *x, *y])

    @property
    def u(self):
        return self.coords[0]

    @property
    def x(self) -> tuple:
        return self.coords[1:11]

    @property
    def y(self) -> tuple:
        return self.coords[11:16]

    @property
    def X(self) -> list[list]:
        F = self.field
        m = [[F.zero] * 5 for _ in range(5)]
        for k, (i, j) in enumerate(PAIRS):
            m[i - 1][j - 1] = self.x[k]
            m[j - 1][i - 1] = F.neg(self.x[k])
        return m

    def __eq__(self, other):
        return isinstance(other, SigmaPoint) and self.field == other.field and self.coords == other.coords

    def __hash__(self):
        return hash((self.field, self.coords))

    def __repr__(self):
        return f"SigmaPoint({format_point(self)})"


def format_point(pt: SigmaPoint) -> str:
    f = pt.field.format_scalar
    return "{}; {}; {}".format(f(pt.u), " ".join(map(f, pt.x)), " ".join(map(f, pt.y)))


def parse_point(text: str, F: Field) -> SigmaPoint:
    parts = text.strip().split(";")
    if len(parts) != 3:
        raise ParseError("point format is 'u; x12 .. x45; y1 .. y5'")
    u, x, y = (p.split() for p in parts)
    if len(u) != 1 or len(x) != 10 or len(y) != 5:
        raise ParseError("point needs 1 + 10 + 5 coordinates")
    vals = [F.parse_scalar(t) for t in u + x + y]
    try:
        return SigmaPoint(F, vals)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


# -- S+ identification --------------------------------------------------------------

def _y_mask(m: int) -> int:
    return FULL ^ (1 << (m - 1))


def _y_sign(m: int) -> int:
    return -1 if m % 2 else 1


@lru_cache(maxsize=None)
def _coord_to_mask():
    # (mask, sign) for each of the 16 point coordinates
    out = [(0, 1)]
    out += [(indices_mask(pair), 1) for pair in PAIRS]
    out += [(_y_mask(m), _y_sign(m)) for m in range(1, 6)]
    return tuple(out)


def spinor_of_coords(coords, F: Field) -> HalfSpinor:
    c = [F.zero] * 16
    for k, (mask, sign) in enumerate(_coord_to_mask()):
        v = coords[k]
        c[MASK_POS[EVEN][mask]] = F.neg(v) if sign < 0 else v
    return HalfSpinor(F, EVEN, c)


def spinor_of_point(pt: SigmaPoint) -> HalfSpinor:
    return spinor_of_coords(pt.coords, pt.field)


def coords_of_spinor(s: HalfSpinor) -> list:
    if s.parity != EVEN:
        raise WrongComponent("points of Σ correspond to even spinors")
    F = s.field
    out = []
    for mask, sign in _coord_to_mask():
        v = s.coeffs[MASK_POS[EVEN][mask]]
        out.append(F.neg(v) if sign < 0 else v)
    return out


def point_of_spinor(s: HalfSpinor) -> SigmaPoint:
    return SigmaPoint(s.field, coords_of_spinor(s))


@lru_cache(maxsize=None)
def odd_to_even_matrix(F: Field) -> tuple:
    """16x16 matrix taking odd mask coefficients to (u, x, y) coordinates.

    It is φ_v for v = e_5 + e_-5 followed by the S+ identification; it maps
    the odd pure spinors (Σ^-) onto Σ.
    """
    cols = []
    for m in MASKS[ODD]:
        vec = [F.zero] * 32
        vec[m] = F.one
        even = HalfSpinor.from_full(F, toggle_full(5, vec, F), EVEN)
        cols.append(coords_of_spinor(even))
    return tuple(tuple(r) for r in transpose(cols))


@lru_cache(maxsize=None)
def sigma_minus_quadrics(F: Field) -> tuple[Form, ...]:
    """Quadrics cutting Σ^- ⊂ P(S^-) in odd mask coordinates."""
    m = [list(r) for r in odd_to_even_matrix(F)]
    return tuple(q.substitute(m) for q in sigma_quadrics(F))


# -- quadrics, membership, Jacobian ---------------------------------------------

def quadrics_eval_coords(coords, F: Field) -> list:
    out = []
    for terms in QUADRIC_TERMS:
        s = 0
        for c, a, b in terms:
            s += c * coords[a] * coords[b]
        out.append(F(s))
    return out


def quadrics_eval(pt: SigmaPoint) -> list:
    """Values of (q1+, ..., q5+, q1-, ..., q5-) at pt."""
    return quadrics_eval_coords(pt.coords, pt.field)


def on_sigma(pt: SigmaPoint) -> bool:
    return not any(quadrics_eval(pt))


def _require_on_sigma(pt: SigmaPoint):
    if not on_sigma(pt):
        raise NotOnSigma(f"{format_point(pt)} is not on Σ")


def jacobian_coords(coords, F: Field) -> list[list]:
    rows = []
    for terms in QUADRIC_TERMS:
        row = [0] * 16
        for c, a, b in terms:
            row[a] += c * coords[b]
            row[b] += c * coords[a]
        rows.append([F(v) for v in row])
    return rows


def jacobian_tangent(pt: SigmaPoint):
    """Jacobian of the ten quadrics at pt, its rank, and a basis of its kernel.

    At every point of Σ the rank is 5 and the kernel (the affine tangent
    space) is 11-dimensional.
    """
    _require_on_sigma(pt)
    jac = jacobian_coords(pt.coords, pt.field)
    ker = kernel_basis(jac, pt.field, 16)
    return jac, rank(jac, pt.field), ker


def embed_alt(a, F: Field) -> SigmaPoint:
    """j(A) = (1 : A : Pf-vector(A)) for a 5x5 skew matrix A."""
    a = [[F(x) for x in row] for row in a]
    if len(a) != 5 or any(len(r) != 5 for r in a):
        raise BadShape("embed_alt needs a 5x5 matrix")
    check_skew(a, F)
    return SigmaPoint(F, [F.one] + [a[i - 1][j - 1] for i, j in PAIRS] + sub_pfaffian_vector(a, F))



# -- subspaces ---------------------------------------------------------------------

def point_to_subspace(pt: SigmaPoint) -> IsotropicSubspace:
    _require_on_sigma(pt)
    basis, pure = annihilator(spinor_of_point(pt))
    if not pure:
        raise NotOnSigma("spinor of the point is not pure")
    return IsotropicSubspace(pt.field, basis)


def subspace_to_point(U: IsotropicSubspace) -> SigmaPoint:
    s = pure_spinor(U)
    if s.parity != EVEN:
        raise WrongComponent("odd subspaces belong to Σ^-, not Σ")
    return point_of_spinor(s)


def incidence_dim(a: IsotropicSubspace, b: IsotropicSubspace) -> int:
    """Vector dimension of a ∩ b (0..5); projective dimension is one less."""
    return intersection_dim(a, b)


def _require_pure_odd(w: HalfSpinor) -> IsotropicSubspace:
    if w.parity != ODD:
        raise WrongComponent("w must be an odd spinor (a point of Σ^-)")
    basis, pure = annihilator(w)
    if not pure:
        raise NotPure(f"w is not pure (annihilator has dimension {len(basis)})")
    return IsotropicSubspace(w.field, basis)


def hyperplane_form(w: HalfSpinor) -> list:
    """Coefficients of c ↦ β(s_c, w) in the 16 point coordinates."""
    if w.parity != ODD:
        raise WrongComponent("hyperplanes of P^15 come from odd spinors")
    F = w.field
    out = []
    for k in range(16):
        e = [0] * 16
        e[k] = 1
        out.append(beta_pair(spinor_of_coords(e, F), w))
    return out


def beta_membership(c: SigmaPoint, w: HalfSpinor) -> bool:
    """Is c on the hyperplane section H_w, i.e. β(s_c, w) = 0?"""
    if c.field != w.field:
        raise FieldMismatch("point and spinor over different fields")
    _require_on_sigma(c)
    _require_pure_odd(w)
    return not beta_pair(spinor_of_point(c), w)


def standard_w(F: Field) -> HalfSpinor:
    """w0 = e1∧e2∧e3∧e4∧e5, whose hyperplane is {u = 0}."""
    return HalfSpinor.monomial(F, (1, 2, 3, 4, 5))


# -- isotropic completion and the tangency locus --------------------------------------

def complete_isotropic(h, parity: int, F: Field) -> IsotropicSubspace:
    """The maximal isotropic subspace of the given parity containing the isotropic 4-space h."""
    if F.p == 2:
        raise Char2Unsupported("completion needs division by 2")
    h = [[F(x) for x in r] for r in h]
    if rank(h, F) != 4 or len(h) != 4:
        raise NotMaximalIsotropic("h must have rank 4")
    for i, r in enumerate(h):
        if q_form(r, F) or any(b_form(r, r2, F) for r2 in h[i + 1:]):
            raise NotMaximalIsotropic("h is not isotropic")
    perp = kernel_basis([r[5:] + r[:5] for r in h], F, 10)  # B(x, h_k) = 0
    extra = []
    current = list(h)
    for v in perp:
        if rank(current + [v], F) > len(current):
            current.append(v)
            extra.append(v)
    a, b = extra
    qa, qb, bab = q_form(a, F), q_form(b, F), b_form(a, b, F)
    lines = []
    if not qa:
        lines.append(a)
        # q(s a + b) = s B(a,b) + q(b)
        s = F.div(F.neg(qb), bab)
        lines.append([F(s * x + y) for x, y in zip(a, b)])
    else:
        disc = F(bab * bab - 4 * qa * qb)
        try:
            root = scalar_sqrt(disc, F)
        except NonResidue as exc:
            raise NotSplitOverField("the quotient plane has no rational isotropic lines") from exc
        for sgn in (1, -1):
            s = F.div(F.neg(bab) + sgn * root, 2 * qa)
            lines.append([F(s * x + y) for x, y in zip(a, b)])
    for line in lines:
        U = IsotropicSubspace(F, h + [line])
        if U.parity == parity:
            return U
    raise NotMaximalIsotropic("no completion of the requested parity")  # pragma: no cover


@dataclass(frozen=True)
class TangencyLocus:
    """Five points spanning the linear P^4 along which H_w is tangent to Σ."""

    w: HalfSpinor
    points: tuple

    def span_point(self, coeffs) -> SigmaPoint:
        F = self.w.field
        vec = [F(sum(c * p.coords[k] for c, p in zip(coeffs, self.points))) for k in range(16)]
        return SigmaPoint(F, vec)


def tangency_locus(w: HalfSpinor) -> TangencyLocus:
    Uw = _require_pure_odd(w)
    rows = Uw.rows
    pts = []
    for i in range(5):
        h = rows[:i] + rows[i + 1:]
        pts.append(subspace_to_point(complete_isotropic(h, EVEN, w.field)))
    return TangencyLocus(w, tuple(pts))


# -- multiplicity probe -------------------------------------------------------------

def _spinor_coords_vec(pt: SigmaPoint) -> list:
    return spinor_of_point(pt).full()


def tangent_chart(pt: SigmaPoint):
    """Data for the chart of Σ centred at pt.

    Returns ``(s_c, W, tau)``: the full spinor of pt, a coordinate maximal
    isotropic W transversal to U_c, and for each pair i < j the spinor
    φ_{w_i} φ_{w_j} s_c. The tangent space of the affine cone at s_c is
    spanned by s_c and the ten tau's.
    """
    F = pt.field
    Uc = point_to_subspace(pt)
    twist = transversal_twist(Uc)
    W = coordinate_subspace(F, [i for i in range(1, 6) if i not in twist])
    s = _spinor_coords_vec(pt)
    wrows = W.rows
    tau = {}
    for i in range(5):
        for j in range(i + 1, 5):
            tau[(i, j)] = act_full(wrows[i], act_full(wrows[j], s, F), F)
    return s, wrows, tau


def multiplicity_probe(c: SigmaPoint, w: HalfSpinor, d: SigmaPoint):
    """Order of vanishing of the hyperplane form of w along Σ at c, in the direction of d.

    The line cd must be tangent to Σ at c. It is lifted to the curve
    ``exp(tA)·s_c ⊂ Σ`` (A ∈ Λ²W acting through the Clifford algebra, W a
    complement of U_c) whose tangent at c is the line, and the order at t = 0
    of ``β(exp(tA)s_c, w)`` is returned. For generic tangent directions this
    is the multiplicity of H_w at c: 2 on the tangency locus, 1 elsewhere.
    PositiveDimensional is returned when the form vanishes along the whole curve.
    """
    F = c.field
    if not (c.field == w.field == d.field):
        raise FieldMismatch("probe inputs over different fields")
    _require_pure_odd(w)
    _require_on_sigma(c)
    sc = spinor_of_point(c)
    if beta_pair(sc, w):
        raise NotInSection("c is not on the hyperplane section H_w")
    if d == c:
        raise BadProbe("the probe line needs a second point distinct from c")
    s, wrows, tau = tangent_chart(c)
    keys = sorted(tau)
    dvec = _spinor_coords_vec(d)
    cols = [s] + [tau[k] for k in keys]
    sol = solve(transpose(cols), dvec, F)
    if sol is None:
        raise BadProbe("the probe line is not tangent to Σ at c")
    a = [[F.zero] * 5 for _ in range(5)]
    for (i, j), coef in zip(keys, sol[1:]):
        a[i][j] = coef
        a[j][i] = F.neg(coef)
    # exp(tA) s = s + t A s + t^2 Σ_{|I|=4} Pf(a_I) φ_{w_I} s
    lin = [0] * 32
    for (i, j), coef in zip(keys, sol[1:]):
        if coef:
            for m in range(32):
                lin[m] += coef * tau[(i, j)][m]
    quad = [0] * 32
    memo: dict = {}
    for skip in range(5):
        idx = [k for k in range(5) if k != skip]
        pf = principal_pfaffian(a, idx, F, memo)
        if pf:
            vec = s
            for k in reversed(idx):
                vec = act_full(wrows[k], vec, F)
            for m in range(32):
                quad[m] += pf * vec[m]
    coeffs = []
    for vec in (s, lin, quad):
        coeffs.append(beta_pair(HalfSpinor.from_full(F, [F(x) for x in vec], EVEN), w))
    for order, val in enumerate(coeffs):
        if val:
            return order
    return PositiveDimensional


def random_tangent_point(c: SigmaPoint, rng) -> SigmaPoint:
    """A random point d ≠ c on a line through c tangent to Σ."""
    F = c.field
    _, _, ker = jacobian_tangent(c)
    while True:
        vec = [0] * 16
        for v in ker:
            a = F.random(rng)
            for k in range(16):
                vec[k] += a * v[k]
        vec = [F(x) for x in vec]
        if any(vec):
            d = SigmaPoint(F, vec)
            if d != c:
                return d


# -- random points ------------------------------------------------------------------

def random_sigma_point(F: Field, rng, chart: bool = False) -> SigmaPoint:
    from .clifford import random_isotropic
    from .linalg import random_skew

    if chart:
        return embed_alt(random_skew(5, F, rng), F)
    return subspace_to_point(random_isotropic(F, rng, EVEN))


def random_incident_pair(F: Field, rng, dim: int, g=None) -> tuple[IsotropicSubspace, IsotropicSubspace]:
    """(U_c even, U_w odd) with dim(U_c ∩ U_w) = dim, one of 0, 2, 4.

    Coordinate subspaces whose toggle sets differ in 5 - dim indices are moved
    by one common random isometry.
    """
    from .clifford import apply_isometry, random_isometry

    if dim not in (0, 2, 4):
        raise ValueError("an even and an odd subspace meet in dimension 0, 2 or 4")
    while True:
        tc = {i for i in range(1, 6) if rng.randrange(2)}
        if len(tc) % 2 == 0:
            break
    flip = set(rng.sample(range(1, 6), 5 - dim))
    tw = tc ^ flip
    if g is None:
        g = random_isometry(F, rng)
    uc = IsotropicSubspace(F, apply_isometry(g, coordinate_subspace(F, tc).rows, F), check=False)
    uw = IsotropicSubspace(F, apply_isometry(g, coordinate_subspace(F, tw).rows, F), check=False)
    return uc, uw


def random_hyperplane_point(F: Field, rng, dim: int = 2) -> SigmaPoint:
    """Random point c of H_w for the standard w with dim(U_c ∩ U∞) = dim (2 or 4)."""
    from .clifford import apply_isometry, random_parabolic

    if dim not in (2, 4):
        raise ValueError("points of the standard H_w meet U∞ in dimension 2 or 4")
    toggled = rng.sample(range(1, 6), dim)
    g = random_parabolic(F, rng)
    U = IsotropicSubspace(F, apply_isometry(g, coordinate_subspace(F, toggled).rows, F), check=False)
    return subspace_to_point(U)


# -- tangency through Jacobians (both sides) ---------------------------------------

def even_form(s: HalfSpinor) -> list:
    """Coefficients of t ↦ β(s, t) on odd mask coordinates, for an even spinor s."""
    if s.parity != EVEN:
        raise WrongComponent("hyperplanes of P(S^-) come from even spinors")
    F = s.field
    out = []
    for m in MASKS[ODD]:
        comp = FULL ^ m
        # β(s, t) = Σ_I sign(I) s_I t_{I^c}, I even
        out.append(F(BETA_SIGN[comp] * s.coeffs[MASK_POS[EVEN][comp]]))
    return out


def sigma_minus_jacobian(t: HalfSpinor) -> list[list]:
    if t.parity != ODD:
        raise WrongComponent("points of Σ^- are odd spinors")
    F = t.field
    return [q.gradient(t.coeffs) for q in sigma_minus_quadrics(F)]


def is_tangent(c: SigmaPoint, w: HalfSpinor) -> bool:
    """Is H_w singular at c? (Hyperplane gradient inside the span of the quadric gradients.)"""
    _require_on_sigma(c)
    if not beta_membership(c, w):
        return False
    jac = jacobian_coords(c.coords, c.field)
    return rank(jac + [hyperplane_form(w)], c.field) == rank(jac, c.field)


def is_tangent_dual(w: HalfSpinor, c: SigmaPoint) -> bool:
    """The mirrored test: is the hyperplane of c in P(S^-) tangent to Σ^- at w?"""
    _require_pure_odd(w)
    s = spinor_of_point(c)
    F = w.field
    if beta_pair(s, w):
        return False
    jac = sigma_minus_jacobian(w)
    return rank(jac + [even_form(s)], F) == rank(jac, F)
