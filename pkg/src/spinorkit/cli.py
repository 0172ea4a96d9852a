"""Command-line front end.

Exit codes: 0 success, 1 a ``verify`` check failed, 2 invalid input or a
violated precondition (one ``error: <code>: <reason>`` line on stderr).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from .clifford import (
    IsotropicSubspace,
    annihilator,
    format_spinor,
    parse_spinor,
    pure_spinor,
)
from .errors import SpinorkitError
from .field import Field, parse_field
from .linalg import format_matrix, parse_matrix
from .results import PositiveDimensional
from .sigma import (
    QUADRIC_NAMES,
    format_point,
    parse_point,
)


class CliError(SpinorkitError):
    code = "UsageError"


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # keep the one-line, exit-2 contract
        self.exit(2, f"error: UsageError: {message}\n")


def _field(args) -> Field:
    return parse_field(args.field)


def _seed(args) -> int:
    if args.seed is None:
        raise CliError("this command is randomized and needs --seed")
    return args.seed


def _text_arg(value: str | None, path: str | None, what: str) -> str:
    if value is not None:
        return value
    if path is not None:
        return Path(path).read_text()
    raise CliError(f"missing {what}")


def _scalar_list(F: Field, text: str) -> list:
    return [F.parse_scalar(t) for t in text.split()]


def _jsonable(v):
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if v is PositiveDimensional:
        return "PositiveDimensional"
    return v


class Output:
    """Collects key/value records and prints them as plain lines or one JSON object."""

    def __init__(self, as_json: bool):
        self.as_json = as_json
        self.data: dict = {}
        self.lines: list[str] = []

    def put(self, key: str, value, text: str | None = None):
        self.data[key] = value
        self.lines.append(f"{key}={text if text is not None else value}")

    def raw(self, line: str, key: str | None = None, value=None):
        self.lines.append(line)
        if key is not None:
            self.data[key] = value

    def emit(self):
        if self.as_json:
            print(json.dumps(_jsonable(self.data), sort_keys=True))
        else:
            for ln in self.lines:
                print(ln)


def _bool(b: bool) -> str:
    return "true" if b else "false"


# -- handlers ------------------------------------------------------------------------

def cmd_embed(args, out: Output):
    from .sigma import embed_alt

    F = _field(args)
    pt = embed_alt(parse_matrix(args.matrix, F), F)
    out.raw(format_point(pt), "point", format_point(pt))


def cmd_quadrics(args, out: Output):
    from .sigma import quadrics_eval

    F = _field(args)
    pt = parse_point(args.point, F)
    vals = quadrics_eval(pt)
    for name, v in zip(QUADRIC_NAMES, vals):
        out.put(name, F.format_scalar(v))
    out.put("on_sigma", not any(vals), _bool(not any(vals)))


def cmd_purespinor(args, out: Output):
    F = _field(args)
    U = IsotropicSubspace(F, parse_matrix(args.subspace, F))
    s = pure_spinor(U)
    out.put("parity", "odd" if s.parity else "even")
    out.raw(format_spinor(s), "spinor", format_spinor(s))


def cmd_annihilator(args, out: Output):
    F = _field(args)
    s = parse_spinor(args.spinor, F)
    basis, pure = annihilator(s)
    out.put("dim", len(basis))
    out.put("pure", pure, _bool(pure))
    out.put("basis", format_matrix(basis, F) if basis else "")


def cmd_incidence(args, out: Output):
    from .sigma import incidence_dim

    F = _field(args)
    a = IsotropicSubspace(F, parse_matrix(args.a, F))
    b = IsotropicSubspace(F, parse_matrix(args.b, F))
    out.put("dim", incidence_dim(a, b))


def cmd_membership(args, out: Output):
    from .clifford import beta_pair
    from .sigma import beta_membership, spinor_of_point

    F = _field(args)
    c = parse_point(args.point, F)
    w = parse_spinor(args.spinor, F)
    m = beta_membership(c, w)
    out.put("beta", F.format_scalar(beta_pair(spinor_of_point(c), w)))
    out.put("member", m, _bool(m))


def cmd_tangency(args, out: Output):
    from .sigma import tangency_locus

    F = _field(args)
    locus = tangency_locus(parse_spinor(args.spinor, F))
    pts = [format_point(p) for p in locus.points]
    out.data["points"] = pts
    for p in pts:
        out.lines.append(p)


def cmd_project(args, out: Output):
    from .grass25 import format_plucker, project_pi_w

    F = _field(args)
    pl = project_pi_w(parse_point(args.point, F), parse_spinor(args.spinor, F))
    out.raw(format_plucker(pl), "plucker", format_plucker(pl))


def cmd_fiber(args, out: Output):
    from .grass25 import kernel_fiber

    F = _field(args)
    basis = kernel_fiber(parse_point(args.point, F), parse_spinor(args.spinor, F))
    out.put("dim", len(basis))
    out.put("basis", format_matrix(basis, F))


def cmd_zl(args, out: Output):
    from .grass25 import zero_section_system

    F = _field(args)
    w = parse_spinor(args.spinor, F)
    zl = zero_section_system(_scalar_list(F, args.form), w)
    lin = [" ".join(F.format_scalar(c) for c in row) for row in zl.linear]
    quads = [_format_form(q) for q in zl.quadrics]
    out.data.update({"linear": lin, "quadrics": quads})
    out.lines += [f"linear {s}" for s in lin] + [f"quadric {s}" for s in quads]


def _format_form(q) -> str:
    from .sigma import COORD_NAMES

    F = q.F
    parts = []
    for e, c in sorted(q.terms.items(), reverse=True):
        mono = "*".join(COORD_NAMES[i] if k == 1 else f"{COORD_NAMES[i]}^{k}" for i, k in enumerate(e) if k)
        parts.append(f"{F.format_scalar(c)}*{mono}")
    return " + ".join(parts) if parts else "0"


# -- sections ---------------------------------------------------------------------

def _load_section(args):
    from .sections import parse_section

    return parse_section(_text_arg(None, args.input, "--input section file"))


def _write_or_print(text: str, args, out: Output, key="section"):
    if getattr(args, "output", None):
        Path(args.output).write_text(text)
        out.put("written", args.output)
    else:
        out.data[key] = text
        out.lines += text.rstrip("\n").split("\n")


def _section_points(x, args):
    from .ffenum import enum_section_points

    return enum_section_points(x, force=args.force, workers=args.workers)


def cmd_section(args, out: Output):
    from . import sections as S

    sub = args.section_cmd
    if sub == "sample":
        x = S.section_sample(args.k, _field(args), _seed(args), pure=args.pure)
        _write_or_print(S.format_section(x), args, out)
        return
    x = _load_section(args)
    if sub == "dual":
        _write_or_print(S.format_section(S.dual_section(x)), args, out)
        return
    pts = _section_points(x, args)
    if sub == "scan":
        rep = S.smooth_scan(x, pts)
        out.put("points", len(pts))
        out.put("smooth", sum(r["smooth"] for r in rep))
        ranks = sorted({r["jacobian_rank"] for r in rep if r["jacobian_rank"] is not None})
        out.put("ranks", ranks, ",".join(map(str, ranks)))
        out.put("note", "smoothness checked at rational points only")
        return
    v = S.quadrics_through(x, pts)
    if sub == "quadrics":
        out.put("points", len(pts))
        out.put("dim_v", v.dim)
        out.put("sigma_rank", v.sigma_rank)
        out.put("conclusive", v.conclusive, _bool(v.conclusive))
        out.put("undersampled", v.undersampled, _bool(v.undersampled))
        return
    qv = S.qv_relation(v)
    if sub == "qv":
        out.put("dim_v", v.dim)
        out.put("relations", 1)
        out.put("relation", format_matrix([list(r) for r in qv.relation], x.field))
        out.put("gram", format_matrix([list(r) for r in qv.gram], x.field))
        return
    if sub == "mukai":
        n = min(args.count, len(pts))
        records = []
        for p in pts[:n]:
            fib = S.mukai_fiber(v, qv, p)
            records.append({"point": format_point(p), "dim": len(fib), "isotropic": True})
            out.lines.append(f"point={format_point(p)} dim={len(fib)} isotropic=true")
        out.data["records"] = records
        out.put("fibers", n)
        return
    if sub == "rho":
        from .grass25 import format_plucker, plucker_of_plane, project_pi_w

        w = parse_spinor(args.spinor, x.field) if args.spinor else x.cutting[0]
        n = min(args.count, len(pts))
        records = []
        for p in pts[:n]:
            try:
                plane = S.rho_fiber(x, w, p)
                pl = plucker_of_plane(_plane_coords(plane, w), x.field)
                rec = {"point": format_point(p), "plucker": format_plucker(pl)}
                if pl != project_pi_w(p, w):
                    rec["mismatch"] = True
            except SpinorkitError as exc:
                rec = {"point": format_point(p), "error": exc.code}
            records.append(rec)
            out.lines.append(" ".join(f"{k}={val}" for k, val in rec.items()))
        out.data["records"] = records
        return
    raise CliError(f"unknown section command {sub}")  # pragma: no cover


def _plane_coords(plane, w):
    from .linalg import solve, transpose
    from .clifford import subspace_of_spinor

    F = w.field
    basis = transpose(subspace_of_spinor(w).rows)
    return [solve(basis, v, F) for v in plane]


def cmd_length(args, out: Output):
    from .poly import parse_forms
    from .sections import scheme_length_0dim

    F = _field(args)
    forms = parse_forms(args.forms, args.n + 1, F)
    res = scheme_length_0dim(forms, args.n, F, window=args.window)
    out.put("length", res, str(res))


def cmd_foursecant(args, out: Output):
    from .linalg import random_skew
    from .sections import four_secant_probe
    from .sigma import embed_alt

    F = _field(args)
    if args.points:
        pts = [parse_point(t, F) for t in args.points.split("|")]
        if len(pts) != 3:
            raise CliError("--points needs three points separated by '|'")
    else:
        rng = random.Random(_seed(args))
        pts = [embed_alt(random_skew(5, F, rng), F) for _ in range(3)]
    res = four_secant_probe(*pts)
    out.put("length", res, str(res))


def cmd_count(args, out: Output):
    from .ffenum import count_grassmann, count_sigma

    fn = count_sigma if args.count_cmd == "sigma" else count_grassmann
    rep = fn(args.p, force=args.force, workers=args.workers)
    out.data.update(rep.as_dict())
    out.lines += rep.lines()


def cmd_crosscheck(args, out: Output):
    from .ffenum import incidence_crosscheck

    rep = incidence_crosscheck(args.p, args.samples, _seed(args))
    out.data.update(rep.as_dict())
    out.lines += rep.lines()
    return 0 if rep.ok else 1


def cmd_verify(args, out: Output):
    from .verify import run_battery

    def log(msg):
        print(f"log: {msg}", file=sys.stderr)

    results = run_battery(args.level, _seed(args), log=log, workers=args.workers)
    out.data["checks"] = [r.as_dict() for r in results]
    out.lines += [r.line() for r in results]
    ok = all(r.ok for r in results)
    out.put("all_pass", ok, _bool(ok))
    return 0 if ok else 1


# -- parser ----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="Q", help="Q or Fp:<p>")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--json", action="store_true", help="print one JSON object")
    common.add_argument("--force", action="store_true", help="override enumeration budgets")
    common.add_argument("--workers", type=int, default=1, help="processes for enumeration")

    parser = _Parser(prog="spinorkit", description="Exact computations on the spinor tenfold.")
    verbs = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def verb(name, handler, help_text, options=True):
        sp = verbs.add_parser(name, parents=[common] if options else [], help=help_text)
        sp.set_defaults(handler=handler)
        return sp

    sp = verb("embed", cmd_embed, "(1 : A : Pf-vector(A)) for a 5x5 skew matrix")
    sp.add_argument("--matrix", required=True)
    sp = verb("quadrics", cmd_quadrics, "evaluate the ten quadrics at a point")
    sp.add_argument("--point", required=True)
    sp = verb("purespinor", cmd_purespinor, "pure spinor of a maximal isotropic subspace")
    sp.add_argument("--subspace", required=True, help="5x10 basis matrix")
    sp = verb("annihilator", cmd_annihilator, "annihilator of a half-spinor")
    sp.add_argument("--spinor", required=True)
    sp = verb("incidence", cmd_incidence, "dimension of the intersection of two isotropic subspaces")
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)
    sp = verb("membership", cmd_membership, "is the point on the hyperplane section of w")
    sp.add_argument("--point", required=True)
    sp.add_argument("--spinor", required=True)
    sp = verb("tangency", cmd_tangency, "five points spanning the tangency P^4 of w")
    sp.add_argument("--spinor", required=True)
    sp = verb("project", cmd_project, "projection of a point of H_w to G(2,5)")
    sp.add_argument("--point", required=True)
    sp.add_argument("--spinor", required=True)
    sp = verb("fiber", cmd_fiber, "kernel fiber of a point of H_w")
    sp.add_argument("--point", required=True)
    sp.add_argument("--spinor", required=True)
    sp = verb("zl-system", cmd_zl, "linear and quadratic equations of Z_l")
    sp.add_argument("--spinor", required=True)
    sp.add_argument("--form", required=True, help="five coefficients of the linear form on U_w")

    sp = verb("section", cmd_section, "linear sections", options=False)
    ssub = sp.add_subparsers(dest="section_cmd", required=True, parser_class=_Parser)
    for name in ("sample", "dual", "scan", "quadrics", "qv", "mukai", "rho"):
        s2 = ssub.add_parser(name, parents=[common])
        s2.add_argument("--output")
        if name == "sample":
            s2.add_argument("--k", type=int, required=True)
            s2.add_argument("--pure", type=int, default=0, help="number of pure cutting spinors")
        else:
            s2.add_argument("--input", required=True)
        if name in ("mukai", "rho"):
            s2.add_argument("--count", type=int, default=20)
        if name == "rho":
            s2.add_argument("--spinor")

    sp = verb("length", cmd_length, "length of a zero-dimensional scheme")
    sp.add_argument("--forms", required=True, help="comma-separated forms in z0..zn")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--window", type=int, default=3)
    sp = verb("foursecant", cmd_foursecant, "length of Σ ∩ a plane through three points")
    sp.add_argument("--points")

    sp = verb("count", cmd_count, "point counts by enumeration")
    sp.add_argument("count_cmd", choices=("sigma", "grassmann"))
    sp.add_argument("--p", type=int, required=True)

    sp = verb("crosscheck", cmd_crosscheck, "sampled β versus incidence cross-check")
    sp.add_argument("--p", type=int, default=5)
    sp.add_argument("--samples", type=int, default=100_000)

    sp = verb("verify", cmd_verify, "run the verification battery")
    sp.add_argument("--level", choices=("quick", "full"), default="quick")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Output(args.json)
    try:
        code = args.handler(args, out) or 0
    except (SpinorkitError, ZeroDivisionError, OSError) as exc:
        reason = str(exc) if isinstance(exc, SpinorkitError) else f"{type(exc).__name__}: {exc}"
        print(f"error: {reason}".replace("\n", " "), file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: ValueError: {exc}".replace("\n", " "), file=sys.stderr)
        return 2
    out.emit()
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
