"""The verification battery behind ``spinorkit verify`` and the acceptance tests.

Each check returns a :class:`CheckResult`. Output is a function of the seed
and the sizes only; timings are never part of it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations

from .clifford import (
    EVEN,
    ODD,
    annihilator,
    clifford_act,
    pure_spinor,
    random_isotropic,
)
from .errors import SpinorkitError
from .field import GF, QQ
from .linalg import determinant, rank, random_skew, row_space_basis
from .results import PositiveDimensional
from .sigma import (
    QUADRIC_NAMES,
    SigmaPoint,
    embed_alt,
    is_tangent,
    is_tangent_dual,
    multiplicity_probe,
    on_sigma,
    random_hyperplane_point,
    random_incident_pair,
    random_tangent_point,
    sigma_quadrics,
    standard_w,
    subspace_to_point,
    tangency_locus,
)


@dataclass
class CheckResult:
    item: int
    name: str
    ok: bool
    detail: dict = field(default_factory=dict)

    def line(self) -> str:
        parts = [f"item={self.item}", f"name={self.name}", f"result={'pass' if self.ok else 'fail'}"]
        parts += [f"{k}={v}" for k, v in self.detail.items()]
        return " ".join(parts)

    def as_dict(self) -> dict:
        return {"item": self.item, "name": self.name, "ok": self.ok, **self.detail}


def _rng(seed: int, item: int) -> random.Random:
    return random.Random(f"{seed}:{item}")


# 1
def check_sigma_counts(primes=(2, 3), workers: int = 1) -> CheckResult:
    from .ffenum import count_sigma

    detail = {}
    ok = True
    for p in primes:
        rep = count_sigma(p, workers=workers)
        detail[f"count_{p}"] = rep.count
        detail[f"formula_{p}"] = rep.formula
        ok &= rep.match and rep.chart == p**10
    return CheckResult(1, "sigma_counts", ok, detail)


# 2
def check_embedding(seed: int, n_fp: int = 1000, n_q: int = 200) -> CheckResult:
    rng = _rng(seed, 2)
    bad = 0
    for F, n in ((GF(7), n_fp), (QQ, n_q)):
        for _ in range(n):
            if not on_sigma(embed_alt(random_skew(5, F, rng), F)):
                bad += 1
    return CheckResult(2, "embedding", bad == 0, {"samples": n_fp + n_q, "failures": bad})


# 3
def check_pure_spinor_roundtrip(seed: int, n: int = 500, fields=None) -> CheckResult:
    rng = _rng(seed, 3)
    fields = fields or (QQ, GF(5), GF(7), GF(11))
    bad = 0
    total = 0
    for F in fields:
        for i in range(n):
            U = random_isotropic(F, rng, i % 2)
            s = pure_spinor(U)
            total += 1
            if any(not clifford_act(u, s).is_zero() for u in U.rows):
                bad += 1
                continue
            basis, pure = annihilator(s)
            if not pure or row_space_basis(basis, F, 10) != U.rows or s.parity != U.parity:
                bad += 1
    return CheckResult(3, "pure_spinor_roundtrip", bad == 0, {"samples": total, "failures": bad})


# 4
def check_incidence(seed: int, n: int = 100_000, p: int = 5) -> CheckResult:
    from .ffenum import incidence_crosscheck

    rep = incidence_crosscheck(p, n, seed)
    detail = {"samples": n, "violations": rep.violations}
    for k, v in sorted(rep.opposite_dims.items()):
        detail[f"dim{k}"] = v
    detail["same_parity_violations"] = rep.same_parity_violations
    detail["spinor_mismatches"] = rep.spinor_mismatches
    return CheckResult(4, "incidence_beta", rep.ok, detail)


# 5
def check_hyperplane_structure(seed: int, n: int = 10_000, p: int = 7) -> CheckResult:
    from .grass25 import PluckerPoint, grass_relations, project_pi_w
    from .errors import CenterOfProjection

    rng = _rng(seed, 5)
    F = GF(p)
    w = standard_w(F)
    bad = 0
    ranks = {0: 0, 2: 0, 4: 0}
    for i in range(n):
        c = random_hyperplane_point(F, rng, 4 if i % 10 == 0 else 2)
        if c.u:
            bad += 1
            continue
        r = rank(c.X, F)
        ranks[r] = ranks.get(r, 0) + 1
        if r == 0:
            # tangency ⟺ X̂ = 0: the projection must refuse the point
            try:
                project_pi_w(c, w)
                bad += 1
            except CenterOfProjection:
                pass
            if not is_tangent(c, w):
                bad += 1
        elif r == 2:
            if is_tangent(c, w):
                bad += 1
            pl = project_pi_w(c, w)
            if any(grass_relations(pl)) or pl != PluckerPoint(F, c.x):
                bad += 1
        else:
            bad += 1
    detail = {"samples": n, "rank0": ranks.get(0, 0), "rank2": ranks.get(2, 0), "rank4": ranks.get(4, 0), "failures": bad}
    return CheckResult(5, "hyperplane_structure", bad == 0, detail)


# 6
def check_zl_identity() -> CheckResult:
    from .grass25 import STANDARD_LINEAR, STANDARD_QUADRICS, m_pfaffians, zero_section_system
    from .poly import monomials

    F = QQ
    w = standard_w(F)
    zl = zero_section_system([0, 0, 0, 0, 1], w)
    lin_ok = [tuple(i for i, v in enumerate(r) if v) for r in zl.linear] == [(k,) for k in STANDARD_LINEAR]
    monos = monomials(16, 2)
    restricted = [q.drop_variables(STANDARD_LINEAR).coefficients(monos) for q in sigma_quadrics(F)]
    system = [q.coefficients(monos) for q in zl.quadrics]
    span_ok = rank(restricted, F) == rank(system, F) == rank(restricted + system, F) == 5
    names = dict(zip(QUADRIC_NAMES, sigma_quadrics(F)))
    literal_ok = all(
        q == names[n].drop_variables(STANDARD_LINEAR) for q, n in zip(zl.quadrics, STANDARD_QUADRICS)
    )
    pf = m_pfaffians(F)
    pf_ok = all(any(q == f or q == -f for f in pf) for q in zl.quadrics)
    ok = lin_ok and span_ok and literal_ok and pf_ok
    return CheckResult(6, "zl_identity", ok, {"linear": lin_ok, "span": span_ok, "literal": literal_ok, "pfaffians": pf_ok})


# 7
def check_multiplicity(seed: int, n: int = 100, p: int = 32003) -> CheckResult:
    from .clifford import pure_spinor as ps

    rng = _rng(seed, 7)
    F = GF(p)
    orders = {}
    smooth_orders = {}
    for _ in range(n):
        Uc, Uw = random_incident_pair(F, rng, 2)
        w = ps(Uw)
        locus = tangency_locus(w)
        while True:
            coeffs = [F.random(rng) for _ in range(5)]
            if any(coeffs):
                break
        c = locus.span_point(coeffs)
        o = multiplicity_probe(c, w, random_tangent_point(c, rng))
        orders[str(o)] = orders.get(str(o), 0) + 1
        c2 = subspace_to_point(Uc)
        o2 = multiplicity_probe(c2, w, random_tangent_point(c2, rng))
        smooth_orders[str(o2)] = smooth_orders.get(str(o2), 0) + 1
    ok = orders == {"2": n} and smooth_orders == {"1": n}
    detail = {"lines": n}
    detail.update({f"tangency_order_{k}": v for k, v in sorted(orders.items())})
    detail.update({f"smooth_order_{k}": v for k, v in sorted(smooth_orders.items())})
    return CheckResult(7, "multiplicity", ok, detail)


# 8
def mukai_on_section(k: int, seed: int, p: int = 7, n_points: int = 20, retries: int = 5, log=None) -> dict:
    """Mukai data on one section; retries with derived seeds when the section is not generic."""
    from .ffenum import enum_section_points
    from .sections import mukai_fiber, qv_relation, quadrics_through, section_sample, smooth_scan

    F = GF(p)
    out = {"k": k, "seed": seed}
    for attempt in range(retries + 1):
        s = seed if attempt == 0 else seed * 1000 + attempt
        x = section_sample(k, F, s)
        pts = enum_section_points(x)
        scan = smooth_scan(x, pts)
        out.update({"used_seed": s, "points": len(pts), "attempt": attempt})
        if not all(r["smooth"] for r in scan):
            if log:
                log(f"k={k} seed={s}: singular rational point, retrying")
            out["status"] = "singular"
            continue
        v = quadrics_through(x, pts)
        out["dim_v"] = v.dim
        out["sigma_rank"] = v.sigma_rank
        if v.sigma_rank != 10:
            out["status"] = "degenerate"
            if log:
                log(f"k={k} seed={s}: restricted quadrics span {v.sigma_rank}, retrying")
            continue
        if not v.conclusive:
            out["status"] = "inconclusive"
            if log:
                log(f"k={k} seed={s}: {len(pts)} points leave dim V = {v.dim} uncertified, retrying")
            continue
        try:
            qv = qv_relation(v)
            out["relations"] = 1
            fibers = 0
            for pt in pts[:n_points]:
                mukai_fiber(v, qv, pt)
                fibers += 1
            out["fibers"] = fibers
            out["status"] = "ok" if fibers >= n_points else "few_points"
        except SpinorkitError as exc:
            out["status"] = exc.code
        if out["status"] == "ok":
            return out
        if log:
            log(f"k={k} seed={s}: {out['status']}, retrying")
    return out


def check_mukai(seed: int, ks=(-1, 0, 1), n_seeds: int = 20, p: int = 7, log=None) -> CheckResult:
    detail = {}
    ok = True
    for k in ks:
        good = 0
        statuses: dict = {}
        for j in range(n_seeds):
            res = mukai_on_section(k, seed * 100 + j, p, log=log)
            statuses[res["status"]] = statuses.get(res["status"], 0) + 1
            good += res["status"] == "ok"
        detail[f"k{k}_ok"] = f"{good}/{n_seeds}"
        for st, v in sorted(statuses.items()):
            if st != "ok":
                detail[f"k{k}_{st}"] = v
        ok &= good == n_seeds
    return CheckResult(8, "mukai", ok, detail)


# 9
def check_reflexivity(seed: int, n: int = 200, p: int = 7) -> CheckResult:
    from .clifford import pure_spinor as ps
    from .sigma import incidence_dim

    rng = _rng(seed, 9)
    F = GF(p)
    bad = tangent = 0
    for i in range(n):
        Uc, Uw = random_incident_pair(F, rng, (0, 2, 4)[i % 3])
        c, w = subspace_to_point(Uc), ps(Uw)
        a, b = is_tangent(c, w), is_tangent_dual(w, c)
        tangent += a
        if a != b or a != (incidence_dim(Uc, Uw) == 4):
            bad += 1
    return CheckResult(9, "reflexivity", bad == 0, {"pairs": n, "tangent": tangent, "failures": bad})


# 10
def check_four_secant(seed: int, n: int = 100) -> CheckResult:
    from .sections import four_secant_probe

    rng = _rng(seed, 10)
    F = QQ
    results: dict = {}
    bad = 0
    for i in range(n):
        if i % 10 == 9:
            # a plane inside a tangency P^4
            Uc, Uw = random_incident_pair(F, rng, 4)
            locus = tangency_locus(pure_spinor(Uw))
            pts = [locus.span_point([F.random(rng) for _ in range(5)]) for _ in range(3)]
            if rank([list(q.coords) for q in pts], F) < 3:
                continue
        else:
            pts = [embed_alt(random_skew(5, F, rng), F) for _ in range(3)]
        r = four_secant_probe(*pts)
        key = "pos" if r is PositiveDimensional else str(r)
        results[key] = results.get(key, 0) + 1
        if r is not PositiveDimensional and r >= 4:
            bad += 1
    detail = {"planes": sum(results.values())}
    detail.update({f"length_{k}": v for k, v in sorted(results.items())})
    return CheckResult(10, "four_secant", bad == 0, detail)


# 11
def check_grassmann_counts(primes=(2, 3, 5)) -> CheckResult:
    from .ffenum import count_grassmann

    detail = {}
    ok = True
    for p in primes:
        rep = count_grassmann(p)
        detail[f"count_{p}"] = rep.count
        detail[f"formula_{p}"] = rep.formula
        ok &= rep.match
    return CheckResult(11, "grassmann_counts", ok, detail)


# 12
def check_pfaffian_det(seed: int, n: int = 500) -> CheckResult:
    from .linalg import pfaffian

    rng = _rng(seed, 12)
    bad = 0
    for F in (GF(11), QQ):
        for i in range(n):
            size = 2 * (1 + i % 4)
            m = random_skew(size, F, rng)
            pf = pfaffian(m, F)
            if F(pf * pf) != determinant(m, F):
                bad += 1
    return CheckResult(12, "pfaffian_det", bad == 0, {"matrices": 2 * n, "failures": bad})


QUICK_SIZES = {"incidence": 10_000, "hyperplane": 1000, "embedding": (1000, 200), "roundtrip": 100, "lines": 100}


def run_battery(level: str, seed: int, log=None, workers: int = 1) -> list[CheckResult]:
    """``quick`` runs items 1-7 at reduced sample sizes; ``full`` runs 1-12 at acceptance sizes.

    ``workers`` only changes how the point counts are enumerated, never the output.
    """
    if level == "quick":
        q = QUICK_SIZES
        return [
            check_sigma_counts(workers=workers),
            check_embedding(seed, *q["embedding"]),
            check_pure_spinor_roundtrip(seed, q["roundtrip"]),
            check_incidence(seed, q["incidence"]),
            check_hyperplane_structure(seed, q["hyperplane"]),
            check_zl_identity(),
            check_multiplicity(seed, q["lines"]),
        ]
    if level == "full":
        return [
            check_sigma_counts(workers=workers),
            check_embedding(seed),
            check_pure_spinor_roundtrip(seed),
            check_incidence(seed),
            check_hyperplane_structure(seed),
            check_zl_identity(),
            check_multiplicity(seed),
            check_mukai(seed, log=log),
            check_reflexivity(seed),
            check_four_secant(seed),
            check_grassmann_counts(),
            check_pfaffian_det(seed),
        ]
    raise ValueError(f"unknown level {level!r}")
