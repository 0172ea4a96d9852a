"""Homogeneous polynomial forms with exact coefficients.

A :class:`Form` is a dict from exponent tuples to nonzero field elements. Only
what the quadric and Hilbert-function code needs is implemented: ring
operations, linear substitution, evaluation, partial derivatives and
coefficient vectors against a fixed monomial basis.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Iterable, Sequence

from .field import Field


@lru_cache(maxsize=None)
def monomials(nvars: int, degree: int) -> tuple[tuple[int, ...], ...]:
    """Exponent tuples of the given degree, in graded-lex order (x0 largest)."""
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(nvars: int, degree: int) -> dict:
    return {m: i for i, m in enumerate(monomials(nvars, degree))}


class Form:
    __slots__ = ("F", "nvars", "terms")

    def __init__(self, F: Field, nvars: int, terms: dict | None = None):
        self.F = F
        self.nvars = nvars
        self.terms = {}
        if terms:
            for e, c in terms.items():
                c = F(c)
                if c:
                    self.terms[tuple(e)] = c

    # -- constructors ---------------------------------------------------
    @classmethod
    def var(cls, F: Field, nvars: int, i: int, coeff=1) -> "Form":
        e = [0] * nvars
        e[i] = 1
        return cls(F, nvars, {tuple(e): coeff})

    @classmethod
    def linear(cls, F: Field, coeffs: Sequence) -> "Form":
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            if F(c):
                e = [0] * n
                e[i] = 1
                terms[tuple(e)] = c
        return cls(F, n, terms)

    @classmethod
    def quadric(cls, F: Field, nvars: int, entries: Iterable) -> "Form":
        """From ``(coeff, i, j)`` triples meaning ``coeff * z_i * z_j``."""
        terms: dict = {}
        for c, i, j in entries:
            e = [0] * nvars
            e[i] += 1
            e[j] += 1
            e = tuple(e)
            terms[e] = terms.get(e, 0) + c
        return cls(F, nvars, terms)

    @classmethod
    def from_vector(cls, F: Field, nvars: int, degree: int, vec: Sequence) -> "Form":
        return cls(F, nvars, dict(zip(monomials(nvars, degree), vec)))

    # -- queries --------------------------------------------------------
    @property
    def degree(self) -> int | None:
        for e in self.terms:
            return sum(e)
        return None

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, Form) and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "Form(0)"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(f"z{i}^{k}" if k > 1 else f"z{i}" for i, k in enumerate(e) if k)
            parts.append(f"{self.F.format_scalar(c)}*{mono}" if mono else self.F.format_scalar(c))
        return "Form(" + " + ".join(parts) + ")"

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other: "Form") -> "Form":
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return Form(self.F, self.nvars, terms)

    def __neg__(self) -> "Form":
        return Form(self.F, self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def scale(self, a) -> "Form":
        return Form(self.F, self.nvars, {e: a * c for e, c in self.terms.items()})

    def __mul__(self, other: "Form") -> "Form":
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return Form(self.F, self.nvars, terms)

    def __call__(self, point: Sequence):
        F = self.F
        total = 0
        for e, c in self.terms.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t = t * x ** k
            total += t
        return F(total)

    def diff(self, i: int) -> "Form":
        terms = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                e2 = list(e)
                e2[i] -= 1
                terms[tuple(e2)] = c * k
        return Form(self.F, self.nvars, terms)

    def gradient(self, point: Sequence) -> list:
        return [self.diff(i)(point) for i in range(self.nvars)]

    def substitute(self, columns: Sequence[Sequence]) -> "Form":
        """Compose with a linear map: ``z_a = sum_i columns[a][i] * t_i``.

        ``columns`` has one row per old variable, each of length ``m`` (new variables).
        """
        m = len(columns[0]) if columns else 0
        lin = [Form.linear(self.F, row) for row in columns]
        one = Form(self.F, m, {(0,) * m: 1})
        total = Form(self.F, m)
        for e, c in self.terms.items():
            t = one.scale(c)
            for a, k in enumerate(e):
                for _ in range(k):
                    t = t * lin[a]
            total = total + t
        return total

    def coefficients(self, monos: Sequence[tuple] | None = None) -> list:
        if monos is None:
            monos = monomials(self.nvars, self.degree or 0)
        z = self.F.zero
        return [self.terms.get(m, z) for m in monos]

    def drop_variables(self, variables: Iterable[int]) -> "Form":
        """Remove every term that involves one of ``variables`` (restriction to their zero set)."""
        vs = set(variables)
        return Form(self.F, self.nvars, {e: c for e, c in self.terms.items() if not any(e[v] for v in vs)})


_TERM_RE = None


def parse_forms(text: str, nvars: int, F: Field) -> list[Form]:
    """Parse comma-separated polynomials in z0..z{nvars-1}, e.g. ``"z0^2 - 3*z1*z2, z0*z1"``."""
    import re

    from .errors import ParseError

    global _TERM_RE
    if _TERM_RE is None:
        _TERM_RE = re.compile(r"([+-])?([^+-]+)")
    forms = []
    for chunk in text.split(","):
        body = chunk.replace(" ", "")
        if not body:
            continue
        terms: dict = {}
        for sign, term in _TERM_RE.findall(body):
            coeff = F.one
            e = [0] * nvars
            for factor in term.split("*"):
                base, _, power = factor.partition("^")
                k = int(power) if power else 1
                if base.startswith("z") and base[1:].isdigit():
                    i = int(base[1:])
                    if i >= nvars:
                        raise ParseError(f"variable {base} out of range")
                    e[i] += k
                else:
                    coeff = F(coeff * F.parse_scalar(base) ** k)
            if sign == "-":
                coeff = F.neg(coeff)
            key = tuple(e)
            terms[key] = terms.get(key, 0) + coeff
        f = Form(F, nvars, terms)
        degs = {sum(t) for t in f.terms}
        if len(degs) > 1:
            raise ParseError(f"form {chunk.strip()!r} is not homogeneous")
        forms.append(f)
    return forms
