"""Spinors of the 10-dimensional split quadratic space.

V = U0 ⊕ U∞ with basis order (e_-1, ..., e_-5, e_1, ..., e_5), so a vector is a
10-list ``(a_1..a_5, b_1..b_5)``. The pairing is ``B(e_-i, e_j) = δ_ij`` and the
quadratic form is ``q(u) = Σ a_i b_i``, which is the normalisation for which the
Clifford action squares to ``q(u)·id``.

Spinors live in Λ•U∞. A monomial e_I (I = {i1 < ... < ip}) is the 5-bit mask
with bit ``i-1`` set for each i ∈ I. A half-spinor stores the 16 coefficients
of one parity, masks in increasing numeric order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import (
    FieldMismatch,
    NotMaximalIsotropic,
    ParityMismatch,
    ParseError,
    ZeroSpinor,
)
from .field import Field
from .linalg import (
    inverse,
    kernel_basis,
    principal_pfaffian,
    rank,
    row_reduce,
    row_space_basis,
    solve,
    transpose,
)

EVEN, ODD = 0, 1
FULL = 0b11111
MASKS = (
    tuple(m for m in range(32) if m.bit_count() % 2 == 0),
    tuple(m for m in range(32) if m.bit_count() % 2 == 1),
)
MASK_POS = ({m: i for i, m in enumerate(MASKS[0])}, {m: i for i, m in enumerate(MASKS[1])})


def mask_indices(mask: int) -> list[int]:
    """1-based indices of a mask, increasing."""
    return [i + 1 for i in range(5) if mask >> i & 1]


def indices_mask(indices) -> int:
    m = 0
    for i in indices:
        m |= 1 << (i - 1)
    return m


def _beta_sign(mask: int) -> int:
    comp = FULL ^ mask
    p = mask.bit_count()
    inversions = sum(1 for i in mask_indices(mask) for j in mask_indices(comp) if i > j)
    return -1 if (p * (p - 1) // 2 + inversions) % 2 else 1


BETA_SIGN = tuple(_beta_sign(m) for m in range(32))


class HalfSpinor:
    """16 coefficients of one parity. Immutable."""

    __slots__ = ("field", "parity", "coeffs")

    def __init__(self, field: Field, parity: int, coeffs):
        coeffs = tuple(field(c) for c in coeffs)
        if len(coeffs) != 16:
            raise ValueError("a half-spinor has exactly 16 coefficients")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "parity", parity)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("HalfSpinor is immutable")

    @classmethod
    def from_full(cls, field: Field, vec, parity: int | None = None) -> "HalfSpinor":
        if parity is None:
            even = any(vec[m] for m in MASKS[0])
            odd = any(vec[m] for m in MASKS[1])
            if even and odd:
                raise ParityMismatch("mixed-parity spinor")
            parity = ODD if odd else EVEN
        return cls(field, parity, [vec[m] for m in MASKS[parity]])

    @classmethod
    def monomial(cls, field: Field, indices, coeff=1) -> "HalfSpinor":
        mask = indices_mask(indices)
        parity = mask.bit_count() % 2
        c = [0] * 16
        c[MASK_POS[parity][mask]] = coeff
        return cls(field, parity, c)

    def full(self) -> list:
        out = [self.field.zero] * 32
        for m, c in zip(MASKS[self.parity], self.coeffs):
            out[m] = c
        return out

    def coeff(self, indices) -> object:
        mask = indices_mask(indices)
        if mask.bit_count() % 2 != self.parity:
            return self.field.zero
        return self.coeffs[MASK_POS[self.parity][mask]]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def normalized(self) -> "HalfSpinor":
        for c in self.coeffs:
            if c:
                inv = self.field.inv(c)
                return HalfSpinor(self.field, self.parity, [x * inv for x in self.coeffs])
        return self

    def scaled(self, a) -> "HalfSpinor":
        return HalfSpinor(self.field, self.parity, [a * x for x in self.coeffs])

    def __add__(self, other: "HalfSpinor") -> "HalfSpinor":
        _check_same(self, other)
        if self.parity != other.parity:
            raise ParityMismatch("cannot add spinors of different parity")
        return HalfSpinor(self.field, self.parity, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __eq__(self, other):
        return (
            isinstance(other, HalfSpinor)
            and self.field == other.field
            and self.parity == other.parity
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field, self.parity, self.coeffs))

    def proportional(self, other: "HalfSpinor") -> bool:
        return self.parity == other.parity and self.normalized() == other.normalized()

    def __repr__(self):
        return f"HalfSpinor({format_spinor(self)})"


def _check_same(*objs):
    fields = {o.field for o in objs}
    if len(fields) > 1:
        raise FieldMismatch(f"objects over different fields: {sorted(map(str, fields))}")


# -- the Clifford action -------------------------------------------------------

def _wedge_full(i: int, vec: list, out: list, coeff) -> None:
    # out += coeff * e_i ∧ vec
    bit = 1 << (i - 1)
    low = bit - 1
    for m in range(32):
        c = vec[m]
        if c and not m & bit:
            t = coeff * c
            out[m | bit] += -t if (m & low).bit_count() & 1 else t


def _contract_full(i: int, vec: list, out: list, coeff) -> None:
    # out += coeff * ι_{e_-i} vec
    bit = 1 << (i - 1)
    low = bit - 1
    for m in range(32):
        c = vec[m]
        if c and m & bit:
            t = coeff * c
            out[m ^ bit] += -t if (m & low).bit_count() & 1 else t


def act_full(u, vec: list, F: Field) -> list:
    """φ_u on a full 32-coefficient spinor."""
    out = [0] * 32
    for i in range(5):
        if u[i]:
            _contract_full(i + 1, vec, out, u[i])
        if u[5 + i]:
            _wedge_full(i + 1, vec, out, u[5 + i])
    return [F(x) for x in out]


def clifford_act(u, s: HalfSpinor) -> HalfSpinor:
    """φ_u(s): contraction by the U0-part plus wedge by the U∞-part; flips parity."""
    F = s.field
    u = [F(x) for x in u]
    if len(u) != 10:
        raise ValueError("u must be a 10-vector")
    return HalfSpinor.from_full(F, act_full(u, s.full(), F), 1 - s.parity)


def toggle_full(i: int, vec: list, F: Field) -> list:
    """φ_v for v = e_i + e_-i (q(v) = 1); toggles index i with signs."""
    u = [0] * 10
    u[i - 1] = 1
    u[5 + i - 1] = 1
    return act_full(u, vec, F)


def beta_pair(s: HalfSpinor, t: HalfSpinor):
    """β(s, t) = (-1)^{p(p-1)/2} (s ∧ t)_top summed over the homogeneous pieces of s."""
    _check_same(s, t)
    if s.parity == t.parity:
        raise ParityMismatch("β pairs spinors of opposite parity")
    F = s.field
    tf = t.full()
    total = 0
    for m, c in zip(MASKS[s.parity], s.coeffs):
        if c:
            d = tf[FULL ^ m]
            if d:
                total += BETA_SIGN[m] * c * d
    return F(total)


def beta_matrix(F: Field) -> list:
    """16x16 matrix of β on the monomial bases (even rows, odd columns)."""
    out = []
    for m in MASKS[0]:
        row = []
        for n in MASKS[1]:
            row.append(F(BETA_SIGN[m]) if n == FULL ^ m else F.zero)
        out.append(row)
    return out


# -- the quadratic space -------------------------------------------------------

def q_form(u, F: Field):
    return F(sum(u[i] * u[5 + i] for i in range(5)))


def b_form(u, v, F: Field):
    """Polarisation of q: B(u, v) = q(u+v) - q(u) - q(v), so B(e_-i, e_j) = δ_ij."""
    return F(sum(u[i] * v[5 + i] + u[5 + i] * v[i] for i in range(5)))


def _isotropic(rows, F) -> bool:
    for i, r in enumerate(rows):
        if q_form(r, F):
            return False
        for r2 in rows[i + 1:]:
            if b_form(r, r2, F):
                return False
    return True


class IsotropicSubspace:
    """A maximal isotropic subspace, stored by its row-reduced 5x10 basis."""

    __slots__ = ("field", "basis")

    def __init__(self, field: Field, rows, check: bool = True):
        rows = [[field(x) for x in r] for r in rows]
        if any(len(r) != 10 for r in rows):
            raise NotMaximalIsotropic("basis vectors must have 10 coordinates")
        rref, rk, _ = row_reduce(rows, field, 10)
        if rk != 5:
            raise NotMaximalIsotropic(f"rank {rk} != 5")
        basis = tuple(tuple(r) for r in rref[:5])
        if check and not _isotropic(basis, field):
            raise NotMaximalIsotropic("subspace is not isotropic")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "basis", basis)

    def __setattr__(self, name, value):
        raise AttributeError("IsotropicSubspace is immutable")

    @property
    def rows(self) -> list[list]:
        return [list(r) for r in self.basis]

    @property
    def infinity_dim(self) -> int:
        """dim(U ∩ U∞)."""
        return 5 - rank([r[:5] for r in self.basis], self.field)

    @property
    def parity(self) -> int:
        """EVEN for the component of U0, ODD for that of U∞."""
        return self.infinity_dim % 2

    def __eq__(self, other):
        return isinstance(other, IsotropicSubspace) and self.field == other.field and self.basis == other.basis

    def __hash__(self):
        return hash((self.field, self.basis))

    def __repr__(self):
        return f"IsotropicSubspace({self.field!r}, parity={'odd' if self.parity else 'even'})"


def coordinate_subspace(F: Field, toggled) -> IsotropicSubspace:
    """span{e_-i : i ∉ T} + span{e_i : i ∈ T}; parity |T| mod 2."""
    toggled = set(toggled)
    rows = []
    for i in range(1, 6):
        r = [0] * 10
        r[(i - 1) + (5 if i in toggled else 0)] = 1
        rows.append(r)
    return IsotropicSubspace(F, rows)


def u_zero(F: Field) -> IsotropicSubspace:
    return coordinate_subspace(F, ())


def u_infinity(F: Field) -> IsotropicSubspace:
    return coordinate_subspace(F, range(1, 6))


def _reflect_rows(rows, toggled, F):
    out = []
    for r in rows:
        r = list(r)
        for i in toggled:
            a, b = r[i - 1], r[4 + i]
            r[i - 1], r[4 + i] = F.neg(b), F.neg(a)
        out.append(r)
    return out


def transversal_twist(U: IsotropicSubspace) -> tuple[int, ...]:
    """Indices T such that reflecting U in the vectors e_i + e_-i (i ∈ T) makes it transversal to U∞.

    T is the complement of the leftmost independent columns of the U0-block.
    """
    _, _, pivots = row_reduce([r[:5] for r in U.basis], U.field, 5)
    piv = {c + 1 for c in pivots}
    return tuple(i for i in range(1, 6) if i not in piv)


def graph_matrix(U: IsotropicSubspace) -> list[list] | None:
    """If U ∩ U∞ = 0, the skew G with U = span{e_-i - Σ_j G_ij e_j}; otherwise None."""
    F = U.field
    rref, rk, pivots = row_reduce(U.rows, F, 10)
    if pivots[:5] != [0, 1, 2, 3, 4]:
        return None
    return [[F.neg(x) for x in r[5:]] for r in rref[:5]]


def exp_two_form(g, F: Field) -> list:
    """Full spinor exp(Σ_{i<j} g_ij e_i∧e_j) = Σ_I Pf(g_I) e_I, without factorials."""
    vec = [F.zero] * 32
    memo: dict = {}
    for m in MASKS[0]:
        idx = [i - 1 for i in mask_indices(m)]
        vec[m] = principal_pfaffian(g, idx, F, memo)
    return vec


def pure_spinor(U: IsotropicSubspace) -> HalfSpinor:
    """The pure spinor s_U, normalised with first nonzero coefficient 1.

    U is first reflected into graph position by :func:`transversal_twist`, the
    graph spinor is written down with sub-Pfaffians, and the reflections are
    undone by the corresponding Clifford operators.
    """
    F = U.field
    twist = transversal_twist(U)
    moved = IsotropicSubspace(F, _reflect_rows(U.rows, twist, F), check=False)
    g = graph_matrix(moved)
    if g is None:  # cannot happen for an isotropic U
        raise NotMaximalIsotropic("twisted subspace is not in graph position")
    vec = exp_two_form(g, F)
    for i in twist:
        vec = toggle_full(i, vec, F)
    return HalfSpinor.from_full(F, vec, len(twist) % 2).normalized()


def annihilator_matrix(s: HalfSpinor) -> list[list]:
    """Rows: opposite-parity coordinates of φ_u(s); columns: the 10 coordinates of u."""
    F = s.field
    vec = s.full()
    cols = []
    for k in range(10):
        u = [0] * 10
        u[k] = 1
        img = act_full(u, vec, F)
        cols.append([img[m] for m in MASKS[1 - s.parity]])
    return transpose(cols)


def annihilator(s: HalfSpinor) -> tuple[list[list], bool]:
    """Basis of {u : φ_u(s) = 0} (row-reduced) and whether s is pure."""
    if s.is_zero():
        raise ZeroSpinor("the zero spinor has no annihilator")
    F = s.field
    ker = kernel_basis(annihilator_matrix(s), F, 10)
    basis = row_space_basis(ker, F, 10) if ker else []
    return basis, len(basis) == 5


def is_pure(s: HalfSpinor) -> bool:
    return annihilator(s)[1]


def subspace_of_spinor(s: HalfSpinor) -> IsotropicSubspace:
    basis, pure = annihilator(s)
    if not pure:
        raise NotMaximalIsotropic(f"spinor is not pure (annihilator has dimension {len(basis)})")
    return IsotropicSubspace(s.field, basis)


def intersection_dim(a: IsotropicSubspace, b: IsotropicSubspace) -> int:
    _check_same(a, b)
    return 10 - rank(list(a.basis) + list(b.basis), a.field)


# -- random generation -------------------------------------------------------------

def apply_isometry(g, rows, F: Field):
    """Apply the 10x10 matrix g (acting on column vectors) to each row vector."""
    p = F.p
    out = []
    for r in rows:
        if p:
            out.append([sum(gi[k] * r[k] for k in range(10)) % p for gi in g])
        else:
            out.append([F(sum(gi[k] * r[k] for k in range(10))) for gi in g])
    return out


def random_isometry(F: Field, rng, rounds: int = 2) -> list[list]:
    """A random element of the identity component of O(q) built from unipotents and a Levi factor."""
    from .linalg import identity, matmul, random_skew

    g = identity(10, F)

    def upper(a):
        m = identity(10, F)
        for i in range(5):
            for j in range(5):
                m[5 + j][i] = a[i][j]  # b'_j += Σ_i a_ij a_i
        return m

    def lower(a):
        m = identity(10, F)
        for i in range(5):
            for j in range(5):
                m[j][5 + i] = a[i][j]  # a'_j += Σ_i a_ij b_i
        return m

    for _ in range(rounds):
        g = matmul(upper(random_skew(5, F, rng)), g, F)
        g = matmul(lower(random_skew(5, F, rng)), g, F)
    while True:
        m = [[F.random(rng) for _ in range(5)] for _ in range(5)]
        if rank(m, F) == 5:
            break
    minv_t = transpose(inverse(m, F))
    levi = [[F.zero] * 10 for _ in range(10)]
    for i in range(5):
        for j in range(5):
            levi[i][j] = minv_t[i][j]
            levi[5 + i][5 + j] = m[i][j]
    return matmul(levi, g, F)


def random_isotropic(F: Field, rng, parity: int | None = None, g=None) -> IsotropicSubspace:
    """Random maximal isotropic subspace: a random isometry applied to a coordinate one."""
    if parity is None:
        parity = rng.randrange(2)
    while True:
        toggled = [i for i in range(1, 6) if rng.randrange(2)]
        if len(toggled) % 2 == parity:
            break
    base = coordinate_subspace(F, toggled)
    if g is None:
        g = random_isometry(F, rng)
    return IsotropicSubspace(F, apply_isometry(g, base.rows, F), check=False)


def random_graph_subspace(F: Field, rng) -> tuple[IsotropicSubspace, list[list]]:
    """U = span{e_-i - Σ_j G_ij e_j} for a random skew G; returns (U, G)."""
    from .linalg import random_skew

    g = random_skew(5, F, rng)
    rows = []
    for i in range(5):
        r = [F.zero] * 10
        r[i] = F.one
        for j in range(5):
            r[5 + j] = F.neg(g[i][j])
        rows.append(r)
    return IsotropicSubspace(F, rows), g


def random_spinor(F: Field, rng, parity: int) -> HalfSpinor:
    while True:
        s = HalfSpinor(F, parity, [F.random(rng) for _ in range(16)])
        if not s.is_zero():
            return s


# -- adapted frames ------------------------------------------------------------------

@dataclass(frozen=True)
class AdaptedFrame:
    """Spinor coordinates adapted to a pure spinor w.

    With f_1..f_5 the row-reduced basis of U_w and a coordinate maximal
    isotropic W transversal to U_w, the map e_I ↦ φ_{f_I} s_W intertwines the
    Clifford actions, so it carries the standard frame (U0, U∞) to (W, U_w).
    ``to_frame`` expresses a spinor of the parity of s_W in the new frame.
    """

    field: Field
    basis: tuple  # rows f_1..f_5 of U_w
    complement: tuple  # rows of W
    vacuum_parity: int
    inv_even: tuple  # frame change on S^{vacuum parity}
    inv_odd: tuple

    def to_frame(self, s: HalfSpinor) -> HalfSpinor:
        F = self.field
        inv = self.inv_even if s.parity == self.vacuum_parity else self.inv_odd
        parity = 0 if s.parity == self.vacuum_parity else 1
        c = [F(sum(a * b for a, b in zip(row, s.coeffs))) for row in inv]
        return HalfSpinor(F, parity, c)

    def coords_of_vector(self, v) -> list:
        """Coordinates of a vector of U_w in the basis f_1..f_5 (None if not in U_w)."""
        return solve(transpose([list(r) for r in self.basis]), v, self.field)


def adapted_frame(w: HalfSpinor) -> AdaptedFrame:
    F = w.field
    Uw = subspace_of_spinor(w)
    f = Uw.rows
    # W transversal to U_w: the twist of U_w moves U∞ onto a complement
    twist = transversal_twist(Uw)
    W = coordinate_subspace(F, [i for i in range(1, 6) if i not in twist])
    if intersection_dim(W, Uw):
        raise NotMaximalIsotropic("no transversal coordinate complement found")
    vac = pure_spinor(W).full()
    vac_parity = W.parity

    def column(mask):
        vec = vac
        for i in reversed(mask_indices(mask)):
            vec = act_full(f[i - 1], vec, F)
        return vec

    mats = {}
    for parity in (0, 1):
        target = (vac_parity + parity) % 2
        cols = [[column(m)[n] for n in MASKS[target]] for m in MASKS[parity]]
        mats[parity] = tuple(tuple(r) for r in inverse(transpose(cols), F))
    return AdaptedFrame(F, tuple(map(tuple, f)), tuple(map(tuple, W.rows)), vac_parity, mats[0], mats[1])


# -- text format ------------------------------------------------------------------

def format_spinor(s: HalfSpinor) -> str:
    F = s.field
    parts = []
    for m, c in zip(MASKS[s.parity], s.coeffs):
        if c:
            parts.append(f"{F.format_scalar(c)}@{{{','.join(map(str, mask_indices(m)))}}}")
    head = "odd" if s.parity else "even"
    return f"{head}: " + " ".join(parts) if parts else f"{head}:"


_TERM = re.compile(r"^([^@\s]+)@\{([0-9,\s]*)\}$")


def parse_spinor(text: str, F: Field) -> HalfSpinor:
    """Parse ``parity: coeff@{i,j,...} ...``; omitted masks are zero."""
    try:
        head, body = text.split(":", 1)
    except ValueError as exc:
        raise ParseError("spinor text must start with 'even:' or 'odd:'") from exc
    head = head.strip().lower()
    if head not in ("even", "odd"):
        raise ParseError(f"bad parity {head!r}")
    parity = ODD if head == "odd" else EVEN
    coeffs = [F.zero] * 16
    for tok in body.split():
        mt = _TERM.match(tok)
        if not mt:
            raise ParseError(f"bad spinor term {tok!r}")
        idx = [int(x) for x in mt.group(2).replace(" ", "").split(",") if x]
        if any(i < 1 or i > 5 for i in idx) or len(set(idx)) != len(idx):
            raise ParseError(f"bad mask in {tok!r}")
        mask = indices_mask(idx)
        if mask.bit_count() % 2 != parity:
            raise ParseError(f"mask {{{','.join(map(str, idx))}}} has the wrong parity")
        pos = MASK_POS[parity][mask]
        coeffs[pos] = F(coeffs[pos] + F.parse_scalar(mt.group(1)))
    return HalfSpinor(F, parity, coeffs)


def random_parabolic(F: Field, rng) -> list[list]:
    """A random isometry fixing U∞: a unipotent b += A a (A skew) after a Levi factor."""
    from .linalg import identity, inverse, matmul, random_skew

    a = random_skew(5, F, rng)
    up = identity(10, F)
    for i in range(5):
        for j in range(5):
            up[5 + j][i] = a[i][j]
    while True:
        m = [[F.random(rng) for _ in range(5)] for _ in range(5)]
        if rank(m, F) == 5:
            break
    minv_t = transpose(inverse(m, F))
    levi = [[F.zero] * 10 for _ in range(10)]
    for i in range(5):
        for j in range(5):
            levi[i][j] = minv_t[i][j]
            levi[5 + i][5 + j] = m[i][j]
    return matmul(up, levi, F)
