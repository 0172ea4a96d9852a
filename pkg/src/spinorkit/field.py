"""Exact scalar fields: the rationals and prime fields F_p.

Scalars are plain Python objects so that arithmetic stays cheap:

* over Q a scalar is a :class:`fractions.Fraction` (always in lowest terms),
* over F_p a scalar is an ``int`` residue in ``[0, p)``.

Generic code does ordinary ``+ - *`` and then coerces the result back with
``F(x)``; division goes through :meth:`Field.inv` / :meth:`Field.div`.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import NotPrime, ParseError

MAX_PRIME = 1 << 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    for d in range(3, math.isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


class Field:
    """Either Q (``p == 0``) or the prime field F_p."""

    __slots__ = ("p",)

    def __init__(self, p: int = 0):
        if p:
            if not is_prime(p) or p >= MAX_PRIME:
                raise NotPrime(f"{p} is not a prime below 2^16")
        object.__setattr__(self, "p", p)

    def __setattr__(self, name, value):
        raise AttributeError("Field is immutable")

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    @property
    def char(self) -> int:
        return self.p

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "QQ" if self.p == 0 else f"GF({self.p})"

    def __str__(self):
        return "Q" if self.p == 0 else f"Fp:{self.p}"

    def __reduce__(self):
        return (Field, (self.p,))

    # -- coercion -------------------------------------------------------
    def __call__(self, x):
        if self.p:
            if isinstance(x, Fraction):
                return x.numerator * pow(x.denominator, -1, self.p) % self.p
            return int(x) % self.p
        if isinstance(x, Fraction):
            return x
        return Fraction(x)

    @property
    def zero(self):
        return 0 if self.p else Fraction(0)

    @property
    def one(self):
        return 1 if self.p else Fraction(1)

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("division by zero")
        if self.p:
            return pow(a, -1, self.p)
        return 1 / a

    def div(self, a, b):
        return self(a * self.inv(b))

    def neg(self, a):
        return (-a) % self.p if self.p else -a

    # -- randomness -----------------------------------------------------
    def random(self, rng, height: int = 6):
        """A random scalar; over Q a small-height fraction."""
        if self.p:
            return rng.randrange(self.p)
        num = rng.randint(-height, height)
        den = rng.choice((1, 1, 1, 2, 3))
        return Fraction(num, den)

    def random_nonzero(self, rng, height: int = 6):
        while True:
            x = self.random(rng, height)
            if x:
                return x

    # -- text -----------------------------------------------------------
    def parse_scalar(self, text: str):
        text = text.strip()
        try:
            if self.p:
                if "/" in text:
                    a, b = text.split("/")
                    return self(Fraction(int(a), int(b)))
                return self(int(text))
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad scalar {text!r}") from exc

    def format_scalar(self, x) -> str:
        if self.p:
            return str(int(x) % self.p)
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


def parse_field(text: str) -> Field:
    """Parse ``Q`` or ``Fp:<p>``."""
    text = text.strip()
    if text in ("Q", "QQ"):
        return QQ
    if text.startswith("Fp:"):
        try:
            p = int(text[3:])
        except ValueError as exc:
            raise ParseError(f"bad field spec {text!r}") from exc
        return Field(p)
    raise ParseError(f"bad field spec {text!r}; expected Q or Fp:<p>")
