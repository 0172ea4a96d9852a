"""Brute-force oracles over small prime fields.

Points of P^N(F_p) are enumerated in lexicographic order of their canonical
representatives (first nonzero coordinate 1). Index ranges of that order are
the unit of work, so chunked and process-parallel runs merge exactly.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import NotPrime, TooExpensive
from .field import GF, is_prime
from .sigma import PAIRS, QUADRIC_TERMS, PAIR_POS, SigmaPoint

DEFAULT_CHUNK = 1 << 19
SIGMA_BUDGET = 3 * 10**7
GRASS_BUDGET = 5 * 10**6
SECTION_BUDGET = 10**9


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")


def projective_size(N: int, p: int) -> int:
    return (p ** (N + 1) - 1) // (p - 1)


# -- point streams ----------------------------------------------------------------

class PointStream:
    """Restartable stream of P^N(F_p) in lexicographic order of canonical representatives.

    Points with leading 1 at position L form a block of p^(N-L) points; blocks
    come in the order L = N, N-1, ..., 0 and within a block the tail is counted
    in base p.
    """

    def __init__(self, N: int, p: int, cursor: int = 0):
        _check_prime(p)
        if not 0 <= N <= 15:
            raise ValueError("N must be between 0 and 15")
        self.N = N
        self.p = p
        self.total = projective_size(N, p)
        if not 0 <= cursor <= self.total:
            raise ValueError("cursor out of range")
        self.cursor = cursor

    def _block_start(self, L: int) -> int:
        return (self.p ** (self.N - L) - 1) // (self.p - 1)

    def _locate(self, index: int) -> tuple[int, int]:
        for L in range(self.N, -1, -1):
            start = self._block_start(L)
            if index < start + self.p ** (self.N - L):
                return L, index - start
        raise IndexError(index)

    def point_at(self, index: int) -> tuple[int, ...]:
        L, off = self._locate(index)
        tail = []
        for _ in range(self.N - L):
            off, d = divmod(off, self.p)
            tail.append(d)
        return (0,) * L + (1,) + tuple(reversed(tail))

    def array(self, start: int, stop: int) -> np.ndarray:
        """Points with indices in [start, stop) as an int64 array of shape (n, N+1)."""
        parts = []
        idx = start
        while idx < stop:
            L, off = self._locate(idx)
            block_end = self._block_start(L) + self.p ** (self.N - L)
            end = min(stop, block_end)
            n = end - idx
            out = np.zeros((n, self.N + 1), dtype=np.int64)
            out[:, L] = 1
            offs = np.arange(off, off + n, dtype=np.int64)
            for col in range(self.N, L, -1):
                out[:, col] = offs % self.p
                offs //= self.p
            parts.append(out)
            idx = end
        if not parts:
            return np.zeros((0, self.N + 1), dtype=np.int64)
        return np.concatenate(parts)

    def chunks(self, size: int = DEFAULT_CHUNK):
        """Yield (start index, array) pairs from the cursor on, advancing it."""
        while self.cursor < self.total:
            start = self.cursor
            stop = min(self.total, start + size)
            arr = self.array(start, stop)
            self.cursor = stop
            yield start, arr

    def __iter__(self):
        for _, arr in self.chunks():
            for row in arr:
                yield tuple(int(v) for v in row)

    def serialize(self) -> str:
        return f"N={self.N} p={self.p} cursor={self.cursor}"

    @classmethod
    def restore(cls, text: str) -> "PointStream":
        vals = dict(part.split("=") for part in text.split())
        return cls(int(vals["N"]), int(vals["p"]), int(vals["cursor"]))


def enum_projective(N: int, p: int, cursor: int = 0) -> PointStream:
    return PointStream(N, p, cursor)


def split_range(total: int, parts: int) -> list[tuple[int, int]]:
    step = -(-total // max(parts, 1))
    return [(a, min(total, a + step)) for a in range(0, total, step)]


# -- vectorised quadric tests -------------------------------------------------------

def _quadric_mask(z: np.ndarray, quadrics, p: int) -> np.ndarray:
    """Boolean mask of rows of z where every quadric (list of (c, a, b) terms) vanishes mod p.

    Each quadric is only evaluated on the rows that survived the previous ones.
    """
    alive = np.arange(z.shape[0])
    for terms in quadrics:
        if alive.size == 0:
            break
        sub = z[alive]
        acc = np.zeros(alive.size, dtype=np.int64)
        for c, a, b in terms:
            acc += (c % p) * sub[:, a] * sub[:, b]
        alive = alive[acc % p == 0]
    mask = np.zeros(z.shape[0], dtype=bool)
    mask[alive] = True
    return mask


def _form_terms(form) -> tuple:
    terms = []
    for e, c in form.terms.items():
        idx = [i for i, k in enumerate(e) for _ in range(k)]
        terms.append((int(c), idx[0], idx[1]))
    return tuple(terms)


GRASS_TERMS = tuple(
    (
        (1, PAIR_POS[(a, b)], PAIR_POS[(c, d)]),
        (-1, PAIR_POS[(a, c)], PAIR_POS[(b, d)]),
        (1, PAIR_POS[(a, d)], PAIR_POS[(b, c)]),
    )
    for a, b, c, d in ((2, 3, 4, 5), (1, 3, 4, 5), (1, 2, 4, 5), (1, 2, 3, 5), (1, 2, 3, 4))
)


def _count_job(args) -> tuple[int, int]:
    N, p, start, stop, quadrics, chunk = args
    stream = PointStream(N, p)
    total = chart = 0
    for a in range(start, stop, chunk):
        z = stream.array(a, min(stop, a + chunk))
        mask = _quadric_mask(z, quadrics, p)
        total += int(mask.sum())
        chart += int((mask & (z[:, 0] != 0)).sum())
    return total, chart


def _run_count(N, p, quadrics, workers, chunk):
    total = projective_size(N, p)
    ranges = split_range(total, max(1, workers) * 4 if workers > 1 else 1)
    jobs = [(N, p, a, b, quadrics, chunk) for a, b in ranges]
    if workers > 1:
        with ProcessPoolExecutor(workers) as ex:
            results = list(ex.map(_count_job, jobs))
    else:
        results = [_count_job(j) for j in jobs]
    return sum(r[0] for r in results), sum(r[1] for r in results)


@dataclass(frozen=True)
class CountReport:
    kind: str
    p: int
    count: int
    formula: int
    chart: int | None = None

    @property
    def match(self) -> bool:
        return self.count == self.formula

    def lines(self) -> list[str]:
        out = [f"count={self.count} formula={self.formula} match={'true' if self.match else 'false'}"]
        return out

    def as_dict(self) -> dict:
        d = {"kind": self.kind, "p": self.p, "count": self.count, "formula": self.formula, "match": self.match}
        if self.chart is not None:
            d["chart"] = self.chart
        return d


def sigma_formula(p: int) -> int:
    return math.prod(1 + p**i for i in range(1, 5))


def gaussian_binomial_5_2(p: int) -> int:
    return (p**5 - 1) * (p**4 - 1) // ((p**2 - 1) * (p - 1))


def count_sigma(p: int, force: bool = False, workers: int = 1, chunk: int = DEFAULT_CHUNK) -> CountReport:
    """Points of Σ over F_p by full enumeration of P^15(F_p)."""
    _check_prime(p)
    if projective_size(15, p) > SIGMA_BUDGET and not force:
        raise TooExpensive(f"P^15(F_{p}) has {projective_size(15, p)} points; use force")
    total, chart = _run_count(15, p, QUADRIC_TERMS, workers, chunk)
    return CountReport("sigma", p, total, sigma_formula(p), chart)


def count_grassmann(p: int, force: bool = False, workers: int = 1, chunk: int = DEFAULT_CHUNK) -> CountReport:
    """Decomposable points of P^9(F_p), i.e. F_p-points of G(2,5)."""
    _check_prime(p)
    if projective_size(9, p) > GRASS_BUDGET and not force:
        raise TooExpensive(f"P^9(F_{p}) has {projective_size(9, p)} points; use force")
    total, _ = _run_count(9, p, GRASS_TERMS, workers, chunk)
    return CountReport("grassmann", p, total, gaussian_binomial_5_2(p))


# -- section points ---------------------------------------------------------------

def _section_job(args):
    N, p, start, stop, basis, quadrics, chunk = args
    stream = PointStream(N, p)
    bmat = np.array(basis, dtype=np.float64)
    found = []
    for a in range(start, stop, chunk):
        t = stream.array(a, min(stop, a + chunk))
        z = (t.astype(np.float64) @ bmat).astype(np.int64) % p
        mask = _quadric_mask(z, quadrics, p)
        found.append(z[mask])
    return np.concatenate(found) if found else np.zeros((0, 16), dtype=np.int64)


def enum_section_points(x, force: bool = False, workers: int = 1, chunk: int = DEFAULT_CHUNK) -> list[SigmaPoint]:
    """All F_p-points of the section, in the enumeration order of its ambient coordinates."""
    F = x.field
    p = F.p
    if not p:
        raise ValueError("point enumeration needs a prime field")
    N = 7 + x.k
    total = projective_size(N, p)
    if total > SECTION_BUDGET and not force:
        raise TooExpensive(f"P^{N}(F_{p}) has {total} points; use force")
    quadrics = QUADRIC_TERMS if x.side == "+" else tuple(_form_terms(q) for q in x.quadrics())
    basis = [[int(v) for v in row] for row in x.ambient]
    ranges = split_range(total, workers * 4 if workers > 1 else 1)
    jobs = [(N, p, a, b, basis, quadrics, chunk) for a, b in ranges]
    if workers > 1:
        with ProcessPoolExecutor(workers) as ex:
            parts = list(ex.map(_section_job, jobs))
    else:
        parts = [_section_job(j) for j in jobs]
    return [SigmaPoint(F, [int(v) for v in row]) for part in parts for row in part]


# -- batched mod-p linear algebra for the incidence cross-check ---------------------------

def _inverse_table(p: int) -> np.ndarray:
    inv = np.zeros(p, dtype=np.int64)
    for x in range(1, p):
        inv[x] = pow(x, p - 2, p)
    return inv


def batch_rref(a: np.ndarray, p: int, ncols: int | None = None):
    """Row-reduce a stack of matrices mod p; returns (rref, ranks, pivot flags per column).

    Only the first ``ncols`` columns are used as pivot candidates.
    """
    a = a % p
    bsz, nrows, cols = a.shape
    if ncols is None:
        ncols = cols
    inv = _inverse_table(p)
    row = np.zeros(bsz, dtype=np.int64)
    pivots = np.zeros((bsz, ncols), dtype=bool)
    rows_idx = np.arange(nrows)
    for c in range(ncols):
        col = a[:, :, c]
        cand = (col != 0) & (rows_idx[None, :] >= row[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        idx = np.nonzero(has)[0]
        r0 = row[idx]
        pr = cand[idx].argmax(axis=1)
        top = a[idx, r0].copy()
        a[idx, r0] = a[idx, pr]
        a[idx, pr] = top
        prow = a[idx, r0] * inv[a[idx, r0, c]][:, None] % p
        a[idx, r0] = prow
        f = a[idx, :, c].copy()
        f[np.arange(idx.size), r0] = 0
        a[idx] = (a[idx] - f[:, :, None] * prow[:, None, :]) % p
        pivots[idx, c] = True
        row[idx] += 1
    return a, row, pivots


def _batch_matmul(a, b, p):
    return np.einsum("bij,bjk->bik", a, b) % p


def _random_skew(rng, bsz, p):
    s = rng.integers(0, p, size=(bsz, 5, 5))
    s = np.triu(s, 1)
    return (s - s.transpose(0, 2, 1)) % p


def batch_isometries(rng, bsz: int, p: int, rounds: int = 2) -> np.ndarray:
    """Random isometries of (F_p^10, q): unipotent rounds followed by a Levi factor."""
    eye = np.broadcast_to(np.eye(10, dtype=np.int64), (bsz, 10, 10))
    g = eye.copy()
    for _ in range(rounds):
        up = eye.copy()
        up[:, 5:, :5] = _random_skew(rng, bsz, p).transpose(0, 2, 1)  # b_j += Σ_i a_ij a_i
        g = _batch_matmul(up, g, p)
        lo = eye.copy()
        lo[:, :5, 5:] = _random_skew(rng, bsz, p).transpose(0, 2, 1)  # a_j += Σ_i a_ij b_i
        g = _batch_matmul(lo, g, p)
    m = rng.integers(0, p, size=(bsz, 5, 5))
    while True:
        aug = np.concatenate([m, np.broadcast_to(np.eye(5, dtype=np.int64), (bsz, 5, 5))], axis=2)
        red, rk, _ = batch_rref(aug, p, 5)
        bad = rk < 5
        if not bad.any():
            break
        m[bad] = rng.integers(0, p, size=(int(bad.sum()), 5, 5))
    minv_t = red[:, :, 5:].transpose(0, 2, 1)
    levi = np.zeros((bsz, 10, 10), dtype=np.int64)
    levi[:, :5, :5] = minv_t
    levi[:, 5:, 5:] = m
    return _batch_matmul(levi, g, p)


def _toggle_tables():
    tabs = []
    for i in range(1, 6):
        bit = 1 << (i - 1)
        low = bit - 1
        perm = np.array([n ^ bit for n in range(32)])
        sign = np.array([-1 if (n ^ bit) & low and bin((n ^ bit) & low).count("1") % 2 else 1 for n in range(32)])
        tabs.append((perm, sign))
    return tabs


_TOGGLES = _toggle_tables()
_EVEN2 = [(m, [i for i in range(5) if m >> i & 1]) for m in range(32) if bin(m).count("1") == 2]
_EVEN4 = [(m, [i for i in range(5) if m >> i & 1]) for m in range(32) if bin(m).count("1") == 4]


def batch_pure_spinors(rows: np.ndarray, p: int) -> np.ndarray:
    """Full 32-coefficient pure spinors of a stack of maximal isotropic bases (B, 5, 10).

    Same recipe as the exact path: reflect into graph position, write the
    graph spinor with Pfaffians, undo the reflections with Clifford operators.
    """
    bsz = rows.shape[0]
    _, _, piv = batch_rref(rows[:, :, :5].copy(), p)
    twist = ~piv  # (B, 5): indices reflected
    r = rows.copy()
    for i in range(5):
        sel = twist[:, i]
        a = r[sel, :, i].copy()
        r[sel, :, i] = (-r[sel, :, 5 + i]) % p
        r[sel, :, 5 + i] = (-a) % p
    red, _, _ = batch_rref(r, p, 5)
    g = (-red[:, :, 5:]) % p  # rows e_-i - Σ_j G_ij e_j
    vec = np.zeros((bsz, 32), dtype=np.int64)
    vec[:, 0] = 1
    for m, (i, j) in _EVEN2:
        vec[:, m] = g[:, i, j]
    for m, (a, b, c, d) in _EVEN4:
        vec[:, m] = (g[:, a, b] * g[:, c, d] - g[:, a, c] * g[:, b, d] + g[:, a, d] * g[:, b, c]) % p
    for i in range(5):
        sel = twist[:, i]
        if sel.any():
            perm, sign = _TOGGLES[i]
            vec[sel] = (vec[sel][:, perm] * sign) % p
    return vec


_BETA_SIGN = None


def _beta_signs():
    global _BETA_SIGN
    if _BETA_SIGN is None:
        from .clifford import BETA_SIGN

        _BETA_SIGN = np.array(BETA_SIGN, dtype=np.int64)
    return _BETA_SIGN


def batch_beta(s: np.ndarray, t: np.ndarray, p: int) -> np.ndarray:
    """β on full 32-vectors (the pairing only sees opposite-parity pieces)."""
    comp = 31 - np.arange(32)
    return (s * t[:, comp] * _beta_signs()).sum(axis=1) % p


def _coordinate_bases(toggles: np.ndarray) -> np.ndarray:
    """Column indices of e_-i (i ∉ T) or e_i (i ∈ T) for each sample."""
    return np.arange(5)[None, :] + 5 * toggles.astype(np.int64)


def _random_toggles(rng, bsz, parity):
    t = rng.integers(0, 2, size=(bsz, 5)).astype(bool)
    wrong = t.sum(axis=1) % 2 != parity
    t[wrong, 4] = ~t[wrong, 4]
    return t


@dataclass
class CrosscheckReport:
    p: int
    seed: int
    samples: int
    violations: int
    opposite_dims: dict
    same_dims: dict
    same_parity_violations: int
    spinor_mismatches: int
    spot_checks: int

    @property
    def ok(self) -> bool:
        return not (self.violations or self.same_parity_violations or self.spinor_mismatches)

    def as_dict(self) -> dict:
        return {
            "p": self.p,
            "seed": self.seed,
            "samples": self.samples,
            "violations": self.violations,
            "opposite_dims": {str(k): v for k, v in sorted(self.opposite_dims.items())},
            "same_dims": {str(k): v for k, v in sorted(self.same_dims.items())},
            "same_parity_violations": self.same_parity_violations,
            "spot_checks": self.spot_checks,
            "spinor_mismatches": self.spinor_mismatches,
            "ok": self.ok,
        }

    def lines(self) -> list[str]:
        out = [f"p={self.p}", f"seed={self.seed}", f"samples={self.samples}", f"violations={self.violations}"]
        for k, v in sorted(self.opposite_dims.items()):
            out.append(f"opposite_dim_{k}={v}")
        for k, v in sorted(self.same_dims.items()):
            out.append(f"same_dim_{k}={v}")
        out.append(f"same_parity_violations={self.same_parity_violations}")
        out.append(f"spot_checks={self.spot_checks}")
        out.append(f"spinor_mismatches={self.spinor_mismatches}")
        out.append(f"ok={'true' if self.ok else 'false'}")
        return out


def incidence_crosscheck(p: int, n_samples: int, seed: int, batch: int = 5000, spot_checks: int = 20) -> CrosscheckReport:
    """Check β(s_c, s_w) = 0 ⟺ dim(U_c ∩ U_w) ≥ 1 on sampled opposite-parity pairs.

    Half of each batch moves a coordinate pair (T_c even, T_w odd) by one common
    random isometry, which spreads the intersection dimension over 0, 2, 4; the
    other half uses independent isometries. Same-parity pairs are recorded too.
    A few samples are re-derived with the exact pure-spinor routine.
    """
    _check_prime(p)
    if p == 2:
        raise ValueError("the cross-check needs odd p")
    rng = np.random.default_rng(seed)
    violations = same_bad = mismatches = checked = 0
    opp: dict = {0: 0, 2: 0, 4: 0}
    same: dict = {1: 0, 3: 0, 5: 0}
    done = 0
    while done < n_samples:
        bsz = min(batch, n_samples - done)
        g1 = batch_isometries(rng, bsz, p)
        g2 = batch_isometries(rng, bsz, p)
        shared = rng.integers(0, 2, size=bsz).astype(bool)
        g2[shared] = g1[shared]
        tc = _random_toggles(rng, bsz, 0)
        tw = _random_toggles(rng, bsz, 1)
        td = _random_toggles(rng, bsz, 0)
        ar = np.arange(bsz)[:, None]
        uc = g1[ar, :, _coordinate_bases(tc)]  # (B, 5, 10): columns of g as rows
        uw = g2[ar, :, _coordinate_bases(tw)]
        ud = g2[ar, :, _coordinate_bases(td)]
        sc = batch_pure_spinors(uc, p)
        sw = batch_pure_spinors(uw, p)
        beta = batch_beta(sc, sw, p)
        _, rk, _ = batch_rref(np.concatenate([uc, uw], axis=1), p)
        dims = 10 - rk
        violations += int(((beta == 0) != (dims >= 1)).sum())
        for d in np.unique(dims):
            opp[int(d)] = opp.get(int(d), 0) + int((dims == d).sum())
        _, rk2, _ = batch_rref(np.concatenate([uc, ud], axis=1), p)
        dims2 = 10 - rk2
        same_bad += int((dims2 % 2 == 0).sum())
        for d in np.unique(dims2):
            same[int(d)] = same.get(int(d), 0) + int((dims2 == d).sum())
        if checked < spot_checks:
            mismatches += _spot_check(uc, sc, p, min(spot_checks - checked, bsz))
            checked += min(spot_checks - checked, bsz)
        done += bsz
    return CrosscheckReport(p, seed, n_samples, violations, opp, same, same_bad, mismatches, checked)


def _spot_check(rows, spinors, p, n) -> int:
    from .clifford import IsotropicSubspace, MASKS, pure_spinor

    F = GF(p)
    bad = 0
    for b in range(n):
        U = IsotropicSubspace(F, rows[b].tolist())
        s = pure_spinor(U)
        full = spinors[b].tolist()
        vec = [full[m] for m in MASKS[s.parity]]
        if any(full[m] for m in MASKS[1 - s.parity]):
            bad += 1
            continue
        from .clifford import HalfSpinor

        if not HalfSpinor(F, s.parity, vec).proportional(s):
            bad += 1
    return bad
