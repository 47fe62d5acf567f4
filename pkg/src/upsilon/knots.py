"""Knot descriptions, their parser, and the number-theoretic helpers.

Knot expressions form a small tree language::

    expr := "unknot"
          | "torus(" int "," int ")"
          | "pretzel(" int ")"
          | "cable(" expr ";" int "," int ")"

Whitespace is insignificant; integers are decimal.  The semicolon separates
the companion expression of a cable from its winding parameters, which keeps
nesting unambiguous.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor, gcd
from typing import NamedTuple, Union

from .errors import KnotSyntaxError
from .semigroup import (
    FormalSemigroup,
    cable_semigroup,
    pretzel_semigroup,
    torus_semigroup,
    unknot_semigroup,
)


@dataclass(frozen=True)
class Unknot:
    def __str__(self):
        return "unknot"


@dataclass(frozen=True)
class Torus:
    p: int
    q: int

    def __post_init__(self):
        if self.p < 1 or self.q < 1:
            raise ValueError(f"torus parameters must be >= 1, got ({self.p}, {self.q})")
        if gcd(self.p, self.q) != 1:
            raise ValueError(f"torus parameters must be coprime, got ({self.p}, {self.q})")

    def __str__(self):
        return f"torus({self.p},{self.q})"


@dataclass(frozen=True)
class Pretzel:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"pretzel index must be >= 1, got {self.n}")

    def __str__(self):
        return f"pretzel({self.n})"


@dataclass(frozen=True)
class Cable:
    companion: "KnotExpr"
    p: int
    q: int

    def __post_init__(self):
        if self.p < 1 or self.q < 1:
            raise ValueError(f"cable parameters must be >= 1, got ({self.p}, {self.q})")
        if gcd(self.p, self.q) != 1:
            raise ValueError(f"cable parameters must be coprime, got ({self.p}, {self.q})")

    def __str__(self):
        return f"cable({self.companion};{self.p},{self.q})"


KnotExpr = Union[Unknot, Torus, Pretzel, Cable]


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message):
        raise KnotSyntaxError(message, self.text, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def expect(self, token: str):
        self.skip_ws()
        if not self.text.startswith(token, self.pos):
            self.error(f"expected '{token}'")
        self.pos += len(token)

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] == "-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start or self.text[start:self.pos] == "-":
            self.pos = start
            self.error("expected an integer")
        return int(self.text[start:self.pos])

    def word(self) -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isalpha():
            self.pos += 1
        if self.pos == start:
            self.error("expected a knot expression")
        return self.text[start:self.pos]

    def expr(self) -> KnotExpr:
        self.skip_ws()
        at = self.pos
        head = self.word()
        try:
            if head == "unknot":
                return Unknot()
            if head == "torus":
                self.expect("(")
                p = self.integer()
                self.expect(",")
                q = self.integer()
                self.expect(")")
                return Torus(p, q)
            if head == "pretzel":
                self.expect("(")
                n = self.integer()
                self.expect(")")
                return Pretzel(n)
            if head == "cable":
                self.expect("(")
                companion = self.expr()
                self.expect(";")
                p = self.integer()
                self.expect(",")
                q = self.integer()
                self.expect(")")
                return Cable(companion, p, q)
        except ValueError as exc:  # constructor rejected the parameters
            self.pos = at
            self.error(str(exc))
        self.pos = at
        self.error(f"unknown knot constructor '{head}'")


def parse_knot(text: str) -> KnotExpr:
    parser = _Parser(text)
    k = parser.expr()
    parser.skip_ws()
    if parser.pos != len(text):
        parser.error("trailing input after knot expression")
    return k


def genus(k: KnotExpr) -> int:
    """Seifert genus under the L-space assumption (half the Alexander degree)."""
    if isinstance(k, Unknot):
        return 0
    if isinstance(k, Torus):
        return (k.p - 1) * (k.q - 1) // 2
    if isinstance(k, Pretzel):
        return k.n + 2
    if isinstance(k, Cable):
        return k.p * genus(k.companion) + (k.p - 1) * (k.q - 1) // 2
    raise TypeError(f"not a knot expression: {k!r}")


class LSpaceCheck(NamedTuple):
    ok: bool
    reason: str

    def __bool__(self):
        return self.ok


def is_lspace(k: KnotExpr) -> LSpaceCheck:
    """Whether k is an L-space knot, with the failing level named if not.

    Unknots, positive torus knots and the pretzel family always qualify; a
    cable does iff its companion does and q >= (2g-1)p at that level.  A
    p = 1 cable is the companion itself and imposes no condition.
    """
    if isinstance(k, (Unknot, Torus, Pretzel)):
        return LSpaceCheck(True, "ok")
    if isinstance(k, Cable):
        inner = is_lspace(k.companion)
        if not inner:
            return inner
        if k.p == 1:
            return LSpaceCheck(True, "ok")
        g = genus(k.companion)
        need = (2 * g - 1) * k.p
        if k.q < need:
            return LSpaceCheck(
                False,
                f"{k}: requires q >= (2g-1)p = {need} for companion genus {g}, got q = {k.q}",
            )
        return LSpaceCheck(True, "ok")
    raise TypeError(f"not a knot expression: {k!r}")


def semigroup_of(k: KnotExpr) -> FormalSemigroup:
    if isinstance(k, Unknot):
        return unknot_semigroup()
    if isinstance(k, Torus):
        return torus_semigroup(k.p, k.q)
    if isinstance(k, Pretzel):
        return pretzel_semigroup(k.n)
    if isinstance(k, Cable):
        return cable_semigroup(semigroup_of(k.companion), k.p, k.q)
    raise TypeError(f"not a knot expression: {k!r}")


@dataclass(frozen=True)
class ContinuedFraction:
    """Non-negative continued fraction of q/p with its tail denominators.

    coefficients a_1..a_n satisfy q/p = a_1 + 1/(a_2 + 1/(... + 1/a_n));
    tail_denominators[i] is the denominator of [a_{i+1}, ..., a_n], so they
    obey p_{i-1} = a_i p_i + p_{i+1} with p_{n+1} = 0.
    """

    coefficients: tuple[int, ...]
    tail_denominators: tuple[int, ...]

    def value(self) -> Fraction:
        num, den = 1, 0
        for a in reversed(self.coefficients):
            num, den = a * num + den, num
        return Fraction(num, den)

    def coefficient_sum(self) -> int:
        return sum(self.coefficients)


def continued_fraction_of(coefficients) -> ContinuedFraction:
    """Build a ContinuedFraction from an explicit coefficient list."""
    coeffs = tuple(int(a) for a in coefficients)
    if not coeffs or any(a < 0 for a in coeffs) or any(a == 0 for a in coeffs[1:]):
        raise ValueError(f"invalid continued fraction coefficients {coeffs}")
    num, den = 1, 0
    tails = []
    for a in reversed(coeffs):
        num, den = a * num + den, num
        tails.append(num)
    # tails currently holds numerators of the suffixes, innermost first;
    # the denominator of suffix i is the numerator of suffix i+1.
    tails.reverse()
    denominators = tuple(tails[1:]) + (1,)
    return ContinuedFraction(coeffs, denominators)


def continued_fraction(q: int, p: int) -> ContinuedFraction:
    """Greedy (floor) non-negative expansion of q/p for coprime q, p."""
    if p < 1 or q < 1:
        raise ValueError(f"arguments must be positive, got ({q}, {p})")
    if gcd(p, q) != 1:
        raise ValueError(f"arguments must be coprime, got ({q}, {p})")
    coeffs = []
    a, b = q, p
    while b:
        coeffs.append(a // b)
        a, b = b, a % b
    cf = continued_fraction_of(coeffs)
    if cf.value() != Fraction(q, p):
        raise AssertionError(f"continued fraction of {q}/{p} failed to reconstruct")
    return cf


def sawtooth(x: Fraction) -> Fraction:
    """((x)): 0 at integers, else x - floor(x) - 1/2."""
    x = Fraction(x)
    if x.denominator == 1:
        return Fraction(0)
    return x - floor(x) - Fraction(1, 2)


def dedekind_sum(a: int, b: int) -> Fraction:
    """s(a, b) = sum over k in [1, b) of ((k/b)) ((ka/b)), exactly."""
    if b < 1:
        raise ValueError(f"modulus must be positive, got {b}")
    if gcd(a, b) != 1:
        raise ValueError(f"arguments must be coprime, got ({a}, {b})")
    total = Fraction(0)
    for k in range(1, b):
        total += sawtooth(Fraction(k, b)) * sawtooth(Fraction(k * a, b))
    return total


def signature_integral_torus(p: int, q: int) -> Fraction:
    """Circle integral of the torus-knot signature function, in closed form:
    -(1/3)(pq - p/q - q/p + 1/(pq))."""
    if p < 1 or q < 1:
        raise ValueError(f"arguments must be positive, got ({p}, {q})")
    if gcd(p, q) != 1:
        raise ValueError(f"arguments must be coprime, got ({p}, {q})")
    pq = Fraction(p * q)
    return -(pq - Fraction(p, q) - Fraction(q, p) + 1 / pq) / 3
