"""Exact arithmetic in Q[r], polynomials in the deformation parameter r.

Every structure constant the engine produces is a polynomial in r with
rational coefficients, so identities are certified once for a generic
parameter and specialised to rational values only when asked.  All
arithmetic is arbitrary-precision and exact; no floating point is used
anywhere in the package.
"""

from __future__ import annotations

import re
from fractions import Fraction

__all__ = [
    "Scalar",
    "ZERO",
    "ONE",
    "R",
    "scalar",
    "parse_scalar",
    "evaluate_at",
    "poly_exact_div",
    "poly_gcd",
]


class Scalar(tuple):
    """A polynomial in r, stored densely by ascending degree.

    Trailing zero coefficients are stripped on construction, so equal
    polynomials compare (and hash) equal and the zero polynomial is the
    empty tuple.  Coefficients are ints or Fractions.  Instances are
    immutable and safe to share between threads.

    Comparison with a bare int or Fraction treats it as a constant
    polynomial (hashes differ across types; never mix them as dict keys).
    """

    __slots__ = ()

    def __new__(cls, coeffs=()):
        coeffs = tuple(coeffs)
        end = len(coeffs)
        while end and not coeffs[end - 1]:
            end -= 1
        if end != len(coeffs):
            coeffs = coeffs[:end]
        return tuple.__new__(cls, coeffs)

    @classmethod
    def of(cls, value) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        if isinstance(value, (int, Fraction)):
            return cls((value,))
        raise TypeError(f"cannot interpret {value!r} as an element of Q[r]")

    @property
    def coeffs(self) -> dict:
        """Finitely supported map degree -> coefficient (zeros omitted)."""
        return {k: c for k, c in enumerate(self) if c}

    def degree(self) -> int:
        """Degree in r; -1 for the zero polynomial."""
        return len(self) - 1

    def is_zero(self) -> bool:
        return not self

    def is_constant(self) -> bool:
        return len(self) <= 1

    def constant_value(self):
        if len(self) > 1:
            raise ValueError(f"{self} is not constant in r")
        return self[0] if self else 0

    # -- ring operations ------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction)):
                other = Scalar((other,))
            else:
                return NotImplemented
        a, b = (self, other) if len(self) >= len(other) else (other, self)
        if not b:
            return a
        out = list(a)
        for k, c in enumerate(b):
            out[k] += c
        return Scalar(out)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction)):
                other = Scalar((other,))
            else:
                return NotImplemented
        return self.__add__(other.__neg__())

    def __rsub__(self, other):
        return (self.__neg__()).__add__(other)

    def __neg__(self):
        return Scalar(tuple(-c for c in self))

    def __mul__(self, other):
        if isinstance(other, Scalar):
            if not self or not other:
                return ZERO
            out = [0] * (len(self) + len(other) - 1)
            for k, c in enumerate(self):
                if not c:
                    continue
                for k2, c2 in enumerate(other):
                    if c2:
                        out[k + k2] += c * c2
            return Scalar(out)
        if isinstance(other, (int, Fraction)):
            if not other:
                return ZERO
            return Scalar(tuple(c * other for c in self))
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division of a polynomial by zero")
            inv = Fraction(1, 1) / other
            return Scalar(tuple(c * inv for c in self))
        return NotImplemented

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        out = ONE
        for _ in range(exponent):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, tuple):
            return tuple.__eq__(self, other)
        if isinstance(other, (int, Fraction)):
            return tuple.__eq__(self, Scalar((other,)))
        return NotImplemented

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    __hash__ = tuple.__hash__

    # -- evaluation and text ---------------------------------------------

    def evaluate(self, r0) -> Fraction:
        """Specialise the parameter: compute self(r0) exactly."""
        r0 = Fraction(r0)
        acc = Fraction(0)
        for c in reversed(self):
            acc = acc * r0 + c
        return acc

    def __str__(self):
        if not self:
            return "0"
        pieces = []
        for k in range(len(self) - 1, -1, -1):
            c = self[k]
            if not c:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                power = "r" if k == 1 else f"r^{k}"
                body = power if mag == 1 else f"{mag}*{power}"
            if not pieces:
                pieces.append(f"-{body}" if c < 0 else body)
            else:
                pieces.append(f" - {body}" if c < 0 else f" + {body}")
        return "".join(pieces)

    def __repr__(self):
        return f"Scalar({str(self)!r})"


ZERO = Scalar()
ONE = Scalar((1,))
R = Scalar((0, 1))


def scalar(value) -> Scalar:
    """Coerce an int, Fraction, or Scalar into the ring Q[r]."""
    return Scalar.of(value)


def evaluate_at(p, r0) -> Fraction:
    """Evaluate a polynomial at a rational point, exactly."""
    return Scalar.of(p).evaluate(r0)


_TERM_RE = re.compile(r"(-?)(?:(\d+(?:/\d+)?)\*?)?(r(?:\^(\d+))?)?$")


def parse_scalar(text: str) -> Scalar:
    """Parse textual polynomials such as "3/2*r^2 - 1", "2*r", "-7/3"."""
    squeezed = text.replace(" ", "")
    if not squeezed:
        raise ValueError("empty polynomial literal")
    tokens = [t for t in squeezed.replace("-", "+-").split("+") if t]
    if not tokens:
        raise ValueError(f"cannot parse polynomial literal {text!r}")
    coeffs: dict[int, Fraction] = {}
    for token in tokens:
        match = _TERM_RE.fullmatch(token)
        if not match or (match.group(2) is None and match.group(3) is None):
            raise ValueError(f"cannot parse polynomial literal {text!r}")
        sign = -1 if match.group(1) else 1
        coeff = Fraction(match.group(2)) if match.group(2) else Fraction(1)
        if match.group(3) is None:
            degree = 0
        elif match.group(4) is None:
            degree = 1
        else:
            degree = int(match.group(4))
        coeffs[degree] = coeffs.get(degree, Fraction(0)) + sign * coeff
    out = [0] * (max(coeffs) + 1)
    for degree, value in coeffs.items():
        out[degree] = int(value) if value.denominator == 1 else value
    return Scalar(out)


def poly_exact_div(a: Scalar, b: Scalar) -> Scalar:
    """Divide a by b in Q[r], requiring a zero remainder."""
    a = Scalar.of(a)
    b = Scalar.of(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    quot = [0] * max(len(a) - len(b) + 1, 0)
    lead = Fraction(b[-1])
    for k in range(len(rem) - len(b), -1, -1):
        top = rem[k + len(b) - 1]
        if not top:
            continue
        factor = Fraction(top) / lead
        quot[k] = int(factor) if factor.denominator == 1 else factor
        for t, c in enumerate(b):
            rem[k + t] -= factor * c
    if any(rem):
        raise ValueError(f"{a} is not divisible by {b} in Q[r]")
    return Scalar(quot)


def poly_gcd(a: Scalar, b: Scalar) -> Scalar:
    """Monic greatest common divisor in Q[r] (ZERO if both are zero)."""
    a = Scalar.of(a)
    b = Scalar.of(b)
    while b:
        a, b = b, _poly_mod(a, b)
    if not a:
        return ZERO
    lead = Fraction(a[-1])
    return Scalar(tuple(Fraction(c) / lead for c in a))


def _poly_mod(a: Scalar, b: Scalar) -> Scalar:
    rem = list(a)
    lead = Fraction(b[-1])
    for k in range(len(rem) - len(b), -1, -1):
        top = rem[k + len(b) - 1]
        if not top:
            continue
        factor = Fraction(top) / lead
        for t, c in enumerate(b):
            rem[k + t] -= factor * c
    return Scalar(rem)
