"""Linear sections X = Σ ∩ P^{7+k}, their duals, and Mukai's quadric data.

A section on the ``+`` side lives in P(S+) with point coordinates (u, x, y)
and is cut by hyperplanes β(·, w_i) = 0 for odd spinors w_i. Its dual lives on
the ``-`` side: points are odd spinors in mask coordinates, the ambient is the
span of the w_i, and the cutting spinors are a basis of the original ambient.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from .clifford import (
    EVEN,
    ODD,
    HalfSpinor,
    format_spinor,
    parse_spinor,
    pure_spinor,
    random_isotropic,
    random_spinor,
)
from .errors import (
    BadK,
    BadSample,
    Char2Unsupported,
    DegeneratePlane,
    Inconclusive,
    IsotropyViolation,
    NotInSection,
    NotPure,
    ParseError,
    UnexpectedFiber,
    UnexpectedRelationSpace,
)
from .field import Field, parse_field
from .linalg import (
    in_span,
    inverse,
    kernel_basis,
    rank,
    row_space_basis,
    solve,
    transpose,
)
from .poly import Form, monomials
from .results import PositiveDimensional
from .sigma import (
    SigmaPoint,
    coords_of_spinor,
    even_form,
    hyperplane_form,
    jacobian_coords,
    sigma_minus_quadrics,
    sigma_quadrics,
    spinor_of_coords,
)

SECTION_HEADER = "spinorkit-section v1"
VALID_K = (-1, 0, 1)


def _check_k(k: int) -> None:
    if k not in VALID_K:
        raise BadK(f"k must be one of {VALID_K}, got {k}")


@dataclass(frozen=True)
class LinearSection:
    """Σ^± ∩ P^{7+k}, cut by 8 - k spinors of the opposite parity.

    ``ambient`` is the row-reduced basis of the common kernel of the cutting
    forms; its rows fix the coordinates t_0..t_{7+k} on P^{7+k}.
    """

    field: Field
    k: int
    side: str  # "+" or "-"
    cutting: tuple  # HalfSpinors
    seed: int | None = None
    ambient: tuple = dc_field(default=(), compare=False)

    def __post_init__(self):
        _check_k(self.k)
        if self.side not in ("+", "-"):
            raise ValueError("side must be '+' or '-'")
        want = ODD if self.side == "+" else EVEN
        if len(self.cutting) != 8 - self.k:
            raise BadK(f"k = {self.k} needs {8 - self.k} cutting spinors, got {len(self.cutting)}")
        if any(s.parity != want or s.field != self.field for s in self.cutting):
            raise ValueError("cutting spinors have the wrong parity or field")
        forms = self.forms
        if rank(forms, self.field) != len(forms):
            raise ValueError("cutting spinors are linearly dependent")
        ker = kernel_basis(forms, self.field, 16)
        object.__setattr__(self, "ambient", tuple(tuple(r) for r in row_space_basis(ker, self.field, 16)))

    @property
    def dim(self) -> int:
        return self.k + 2

    @property
    def ambient_dim(self) -> int:
        """Projective dimension 7 + k."""
        return 7 + self.k

    @property
    def forms(self) -> list[list]:
        if self.side == "+":
            return [hyperplane_form(w) for w in self.cutting]
        return [even_form(s) for s in self.cutting]

    def quadrics(self) -> tuple[Form, ...]:
        return sigma_quadrics(self.field) if self.side == "+" else sigma_minus_quadrics(self.field)

    def restricted_quadrics(self) -> list[Form]:
        cols = transpose([list(r) for r in self.ambient])
        return [q.substitute(cols) for q in self.quadrics()]

    def lift(self, t) -> list:
        """16 coordinates of the ambient point with coordinates t."""
        F = self.field
        return [F(sum(ti * row[a] for ti, row in zip(t, self.ambient))) for a in range(16)]

    def local_coords(self, coords) -> list | None:
        """Ambient coordinates t of a 16-vector, or None if it is outside P^{7+k}."""
        return solve(transpose([list(r) for r in self.ambient]), list(coords), self.field)

    def contains(self, coords) -> bool:
        F = self.field
        if any(F(sum(a * b for a, b in zip(f, coords))) for f in self.forms):
            return False
        return not any(q(coords) for q in self.quadrics())

    def spinor_of(self, coords) -> HalfSpinor:
        """The spinor of a 16-vector of this side."""
        if self.side == "+":
            return spinor_of_coords(list(coords), self.field)
        return HalfSpinor(self.field, ODD, coords)


def section_sample(k: int, F: Field, seed: int, pure: int = 0) -> LinearSection:
    """A random section of Σ; deterministic in (k, F, seed, pure).

    The first ``pure`` cutting spinors are pure, so they are points of the dual
    section usable as centres of projection.
    """
    _check_k(k)
    rng = random.Random(seed)
    cutting: list = []
    forms: list = []
    while len(cutting) < 8 - k:
        if len(cutting) < pure:
            w = pure_spinor(random_isotropic(F, rng, ODD))
        else:
            w = random_spinor(F, rng, ODD)
        f = hyperplane_form(w)
        if rank(forms + [f], F) == len(forms) + 1:
            cutting.append(w)
            forms.append(f)
    return LinearSection(F, k, "+", tuple(cutting), seed)


def forced_section(k: int, F: Field, rng, point: SigmaPoint, first=()) -> LinearSection:
    """A random section through ``point`` whose cutting spinors start with ``first``.

    Each extra cutting spinor is a random odd spinor pushed into the
    hyperplane {t : β(s_point, t) = 0}.
    """
    _check_k(k)
    s = spinor_of_coords(list(point.coords), F)
    cutting = list(first)
    forms = [hyperplane_form(w) for w in cutting]
    from .clifford import beta_pair

    pivot = None
    for m in range(16):
        e = [0] * 16
        e[m] = 1
        cand = HalfSpinor(F, ODD, e)
        if beta_pair(s, cand):
            pivot = cand
            break
    while len(cutting) < 8 - k:
        w = random_spinor(F, rng, ODD)
        val = beta_pair(s, w)
        if val:
            w = w + pivot.scaled(F.neg(F.div(val, beta_pair(s, pivot))))
        if w.is_zero():
            continue
        f = hyperplane_form(w)
        if rank(forms + [f], F) == len(forms) + 1:
            cutting.append(w)
            forms.append(f)
    return LinearSection(F, k, "+", tuple(cutting))


def dual_section(x: LinearSection) -> LinearSection:
    """The orthogonal section: ambient = span of the cutting spinors, cut by a basis of x's ambient."""
    F = x.field
    if x.side == "+":
        cutting = [spinor_of_coords(list(r), F) for r in x.ambient]
    else:
        cutting = [HalfSpinor(F, ODD, r) for r in x.ambient]
    return LinearSection(F, -x.k, "-" if x.side == "+" else "+", tuple(cutting), x.seed)


def cutting_span(x: LinearSection) -> list[list]:
    """Row-reduced span of the cutting spinors in the 16 coordinates of the dual side."""
    F = x.field
    if x.side == "+":
        rows = [list(w.coeffs) for w in x.cutting]
    else:
        rows = [coords_of_spinor(s) for s in x.cutting]
    return row_space_basis(rows, F, 16)


# -- smoothness --------------------------------------------------------------------

def jacobian_rank(x: LinearSection, coords) -> int:
    F = x.field
    if x.side == "+":
        jac = jacobian_coords(list(coords), F)
    else:
        jac = [q.gradient(list(coords)) for q in x.quadrics()]
    return rank(jac + x.forms, F)


def smooth_scan(x: LinearSection, points) -> list[dict]:
    """Per point: on_section, Jacobian rank of (quadrics + cutting forms), smooth flag.

    Smooth means rank 13 - k, the codimension of X in P^15. This is a check at
    rational points only.
    """
    out = []
    for pt in points:
        coords = list(pt.coords) if hasattr(pt, "coords") else list(pt)
        on = x.contains(coords)
        rk = jacobian_rank(x, coords) if on else None
        out.append({"on_section": on, "jacobian_rank": rk, "smooth": rk == 13 - x.k})
    return out


# -- Mukai's quadric space ------------------------------------------------------

def _eval_monomials(t, monos, F: Field) -> list:
    row = []
    for e in monos:
        v = 1
        for ti, k in zip(t, e):
            if k:
                v *= ti ** k
        row.append(F(v))
    return row


@dataclass(frozen=True)
class QuadricSpaceV:
    """Quadrics on P^{7+k} through the sampled points of X.

    ``conclusive`` holds when the space equals the span of the restricted
    Σ-quadrics: then it is exactly H^0(I_X(2)), since it is squeezed between
    the two.
    """

    section: LinearSection
    basis: tuple  # Forms in 8 + k variables
    sigma_rank: int
    n_samples: int
    undersampled: bool

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def conclusive(self) -> bool:
        return self.dim == self.sigma_rank


def quadrics_through(x: LinearSection, samples) -> QuadricSpaceV:
    """Kernel of the evaluation of degree-2 monomials at the sample points of X."""
    F = x.field
    n = 8 + x.k
    monos = monomials(n, 2)
    rows = []
    for pt in samples:
        coords = list(pt.coords) if hasattr(pt, "coords") else list(pt)
        if not x.contains(coords):
            raise BadSample("sample point is not on the section")
        t = x.local_coords(coords)
        rows.append(_eval_monomials(t, monos, F))
    ker = kernel_basis(rows, F, len(monos)) if rows else [
        [F.one if i == j else F.zero for j in range(len(monos))] for i in range(len(monos))
    ]
    basis = row_space_basis(ker, F, len(monos)) if ker else []
    sig = [q.coefficients(monos) for q in x.restricted_quadrics()]
    sig_rank = rank(sig, F)
    if basis and any(not in_span(basis, v, F) for v in sig if any(v)):
        raise BadSample("restricted Σ-quadrics do not vanish on the samples")
    forms = tuple(Form.from_vector(F, n, 2, v) for v in basis)
    return QuadricSpaceV(x, forms, sig_rank, len(rows), len(rows) < 3 * len(monos))


@dataclass(frozen=True)
class QVForm:
    """The quadratic relation among a basis q_1..q_n of V and the form it induces on V.

    ``relation`` is the symmetric matrix R with Σ R_ij q_i q_j = 0; it is a
    tensor in S^2 V, i.e. a quadratic form on V^*. The form q_V on V itself is
    its inverse ``gram``, and that is the form for which the U_p are isotropic.
    """

    field: Field
    relation: tuple
    gram: tuple

    def value(self, a, b):
        """q_V(a, b) for coefficient vectors a, b in the basis of V."""
        F = self.field
        g = self.gram
        return F(sum(a[i] * g[i][j] * b[j] for i in range(len(a)) for j in range(len(b))))

    def relation_value(self, vals):
        """Σ R_ij v_i v_j; zero when vals are the values of q_1..q_n at a point of the ambient space."""
        F = self.field
        r = self.relation
        n = len(vals)
        return F(sum(vals[i] * r[i][j] * vals[j] for i in range(n) for j in range(n)))


def quadric_relations(forms, F: Field) -> list[list]:
    """Kernel of (g_ij)_{i<=j} ↦ Σ g_ij q_i q_j, exact in quartic coefficients."""
    n = forms[0].nvars
    monos = monomials(n, 4)
    pairs = [(i, j) for i in range(len(forms)) for j in range(i, len(forms))]
    cols = [(forms[i] * forms[j]).coefficients(monos) for i, j in pairs]
    ker = kernel_basis(transpose(cols), F, len(pairs))
    return [dict(zip(pairs, v)) for v in ker]


def qv_relation(v: QuadricSpaceV, samples=None) -> QVForm:
    """The unique quadratic relation among the quadrics of V.

    ``samples`` (ambient 16-vectors) are optional and only re-check the
    relation numerically.
    """
    F = v.section.field
    if F.p == 2:
        raise Char2Unsupported("the Gram matrix needs division by 2")
    if not v.conclusive:
        raise Inconclusive(f"dim V = {v.dim} is not certified (Σ-quadrics span {v.sigma_rank})")
    rels = quadric_relations(list(v.basis), F)
    if len(rels) != 1:
        raise UnexpectedRelationSpace(f"relation space has dimension {len(rels)}")
    g = rels[0]
    d = v.dim
    half = F.inv(F(2))
    gram = [[F.zero] * d for _ in range(d)]  # relation matrix R
    for (i, j), c in g.items():
        if i == j:
            gram[i][i] = c
        else:
            gram[i][j] = gram[j][i] = F(c * half)
    try:
        dual = inverse(gram, F)
    except ZeroDivisionError as exc:
        raise UnexpectedRelationSpace("the relation is degenerate") from exc
    qv = QVForm(F, tuple(tuple(r) for r in gram), tuple(tuple(r) for r in dual))
    for pt in samples or ():
        coords = list(pt.coords) if hasattr(pt, "coords") else list(pt)
        t = v.section.local_coords(coords)
        if t is None:
            raise BadSample("sample point is outside the ambient space")
        vals = [q(t) for q in v.basis]
        if qv.relation_value(vals):
            raise UnexpectedRelationSpace("relation does not vanish at a sample point")
    return qv


def mukai_fiber(v: QuadricSpaceV, qv: QVForm, p) -> list[list]:
    """Coefficient vectors (in V's basis) of the quadrics singular at p; dimension 5, q_V-isotropic."""
    x = v.section
    F = x.field
    coords = list(p.coords) if hasattr(p, "coords") else list(p)
    if not x.contains(coords):
        raise BadSample("p is not on the section")
    t = x.local_coords(coords)
    rows = [[q(t) for q in v.basis]]
    for i in range(8 + x.k):
        rows.append([q.diff(i)(t) for q in v.basis])
    fiber = kernel_basis(rows, F, v.dim)
    if len(fiber) != 5:
        raise UnexpectedFiber(f"U_p has dimension {len(fiber)}")
    for a in fiber:
        for b in fiber:
            if qv.value(a, b):
                raise IsotropyViolation("U_p is not isotropic for q_V")
    return fiber


def rho_fiber(x: LinearSection, w: HalfSpinor, p: SigmaPoint) -> list[list]:
    """U_p ∩ U_w for w ∈ X̌ and p ∈ X not in the tangency locus of w."""
    from .clifford import is_pure
    from .grass25 import plane_in_w

    F = x.field
    if x.side != "+":
        raise ValueError("rho_fiber works with sections of Σ")
    if w.parity != ODD or not is_pure(w):
        raise NotPure("w must be a pure odd spinor")
    if not in_span(cutting_span(x), list(w.coeffs), F):
        raise NotInSection("w is not in the dual section")
    if not x.contains(list(p.coords)):
        raise NotInSection("p is not on the section")
    return plane_in_w(p, w)


# -- zero-dimensional lengths ---------------------------------------------------------

def hilbert_function(forms, nvars: int, degree: int, F: Field) -> int:
    """dim of the degree-d part of k[z]/(forms)."""
    monos = monomials(nvars, degree)
    index = {m: i for i, m in enumerate(monos)}
    rows = []
    for f in forms:
        d = f.degree
        if d is None or d > degree:
            continue
        for m in monomials(nvars, degree - d):
            row = [0] * len(monos)
            for e, c in f.terms.items():
                row[index[tuple(a + b for a, b in zip(e, m))]] = c
            rows.append(row)
    return len(monos) - (rank(rows, F) if rows else 0)


def scheme_length_0dim(forms, n: int, F: Field | None = None, window: int = 3, max_degree: int = 20):
    """Length of the subscheme of P^n cut by homogeneous forms, or PositiveDimensional.

    The Hilbert function is computed degree by degree; once it has been constant
    for ``window`` consecutive degrees (beyond the generator degrees) that
    constant is returned.
    """
    forms = [f for f in forms if not f.is_zero()]
    if F is None:
        F = forms[0].F if forms else Field(0)
    start = max((f.degree for f in forms), default=0)
    history: list[int] = []
    for d in range(max_degree + 1):
        h = hilbert_function(forms, n + 1, d, F)
        if d >= start:
            history.append(h)
            if h == 0:
                return 0
            if len(history) >= window and len(set(history[-window:])) == 1:
                return h
    return PositiveDimensional


def four_secant_probe(c1: SigmaPoint, c2: SigmaPoint, c3: SigmaPoint):
    """Length of Σ ∩ (plane through c1, c2, c3), or PositiveDimensional."""
    F = c1.field
    pts = [list(c.coords) for c in (c1, c2, c3)]
    if rank(pts, F) < 3:
        raise DegeneratePlane("the three points do not span a plane")
    cols = transpose(pts)  # coordinate a = Σ_i pts[i][a] s_i
    restricted = [q.substitute(cols) for q in sigma_quadrics(F)]
    return scheme_length_0dim(restricted, 2, F)


# -- file format -----------------------------------------------------------------

def format_section(x: LinearSection) -> str:
    lines = [
        SECTION_HEADER,
        f"field {x.field}",
        f"k {x.k}",
        f"side {x.side}",
        f"seed {'-' if x.seed is None else x.seed}",
    ]
    lines += [f"spinor {format_spinor(s)}" for s in x.cutting]
    return "\n".join(lines) + "\n"


def parse_section(text: str) -> LinearSection:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines or lines[0] != SECTION_HEADER:
        raise ParseError(f"section file must start with '{SECTION_HEADER}'")
    meta: dict = {}
    spinors: list[str] = []
    for ln in lines[1:]:
        key, _, rest = ln.partition(" ")
        if key == "spinor":
            spinors.append(rest)
        elif key in ("field", "k", "side", "seed"):
            meta[key] = rest.strip()
        else:
            raise ParseError(f"unknown section line {ln!r}")
    try:
        F = parse_field(meta["field"])
        k = int(meta["k"])
        side = meta.get("side", "+")
        seed = None if meta.get("seed", "-") == "-" else int(meta["seed"])
    except (KeyError, ValueError) as exc:
        raise ParseError(f"bad section header: {exc}") from exc
    cutting = tuple(parse_spinor(s, F) for s in spinors)
    try:
        return LinearSection(F, k, side, cutting, seed)
    except BadK:
        raise
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
