"""Quadratic oscillator generators and the deformed commutator.

The building blocks are modes v_i(m) of d independent oscillators obeying
[v_i(m), v_j(n)] = delta_{m+n,0} delta_{i,j} m after the central element is
set to 1.  A Generator is the quadratic element v[i,j](m,n) = v_i(m) v_j(n)
of the mode algebra; the canonical basis consists of v[i,j](m,n) with i < j
(any m, n) together with v[i,i](m,n) with m <= n.  Rewriting an arbitrary
quadratic into that basis can emit an additive constant, e.g.
v[i,i](m,-m) = v[i,i](-m,m) + m for m > 0.

The span of the canonical generators plus constants is closed under the
commutator.  Scaling the constant part of a commutator by the parameter r
gives the deformed bracket; both versions are exposed here.  All values are
immutable and all functions are pure, so everything is thread-safe.
"""

from __future__ import annotations

import re
from functools import lru_cache
from typing import NamedTuple

from .scalar import ONE, R, ZERO, Scalar

__all__ = [
    "Generator",
    "LieElement",
    "canonicalize",
    "bracket",
    "bracket_r",
    "parse_generator_literal",
]


class Generator(NamedTuple):
    """Canonical quadratic mode pair v[i,j](m,n)."""

    i: int
    j: int
    m: int
    n: int

    def degree(self) -> int:
        return -(self.m + self.n)

    def is_lowering(self) -> bool:
        """Both modes negative: the generator multiplies into the module basis."""
        return self.m < 0 and self.n < 0

    def is_canonical(self) -> bool:
        return self.i < self.j or (self.i == self.j and self.m <= self.n)

    def __str__(self):
        return f"v[{self.i},{self.j}]({self.m},{self.n})"


def _validate_index(value: int, d: int | None):
    if not isinstance(value, int) or value < 1 or (d is not None and value > d):
        top = d if d is not None else "d"
        raise ValueError(f"oscillator index {value} out of range 1..{top}")


def _join_signed(pieces) -> str:
    """Join formatted terms, folding a leading minus into the separator."""
    out = pieces[0]
    for piece in pieces[1:]:
        if piece.startswith("-"):
            out += f" - {piece[1:]}"
        else:
            out += f" + {piece}"
    return out


def _straighten(word, coeff, out):
    """Accumulate coeff times the normal form of a product of modes.

    A word is a tuple of (index, mode) pairs; the normal form sorts pairs
    weakly increasingly, picking up contraction terms from each swap.
    """
    for pos in range(len(word) - 1):
        x = word[pos]
        y = word[pos + 1]
        if x > y:
            swapped = word[:pos] + (y, x) + word[pos + 2 :]
            _straighten(swapped, coeff, out)
            if x[0] == y[0] and x[1] + y[1] == 0:
                _straighten(word[:pos] + word[pos + 2 :], coeff * x[1], out)
            return
    out[word] = out.get(word, 0) + coeff


class LieElement:
    """A finite Q[r]-combination of canonical generators plus a constant."""

    __slots__ = ("terms", "const")

    def __init__(self, terms=None, const=ZERO):
        tidy = {}
        if terms:
            for gen, coeff in terms.items():
                coeff = Scalar.of(coeff)
                if coeff:
                    if not gen.is_canonical():
                        raise ValueError(f"{gen} is not in canonical form")
                    tidy[gen] = coeff
        self.terms = tidy
        self.const = Scalar.of(const)

    @classmethod
    def zero(cls) -> "LieElement":
        return cls()

    @classmethod
    def from_generator(cls, gen: Generator, coeff=ONE) -> "LieElement":
        return cls({gen: Scalar.of(coeff)})

    @classmethod
    def constant(cls, value) -> "LieElement":
        return cls(None, Scalar.of(value))

    def is_zero(self) -> bool:
        return not self.terms and not self.const

    def scale(self, factor) -> "LieElement":
        factor = Scalar.of(factor)
        if not factor:
            return LieElement()
        out = LieElement()
        out.terms = {g: c * factor for g, c in self.terms.items()}
        out.const = self.const * factor
        return out

    def __add__(self, other):
        if not isinstance(other, LieElement):
            return NotImplemented
        acc = dict(self.terms)
        for gen, coeff in other.terms.items():
            total = acc.get(gen, ZERO) + coeff
            if total:
                acc[gen] = total
            else:
                acc.pop(gen, None)
        out = LieElement()
        out.terms = acc
        out.const = self.const + other.const
        return out

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        if not isinstance(other, LieElement):
            return NotImplemented
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, LieElement):
            return NotImplemented
        return self.terms == other.terms and self.const == other.const

    def specialize(self, r0) -> "LieElement":
        """Evaluate every coefficient at a rational parameter value."""
        out = LieElement()
        out.terms = {
            g: Scalar.of(value)
            for g, c in self.terms.items()
            if (value := c.evaluate(r0))
        }
        out.const = Scalar.of(self.const.evaluate(r0))
        return out

    def __str__(self):
        if self.is_zero():
            return "0"
        pieces = []
        for gen in sorted(self.terms, reverse=True):
            coeff = self.terms[gen]
            if coeff == ONE:
                pieces.append(str(gen))
            else:
                text = str(coeff)
                if len(coeff.coeffs) > 1:
                    text = f"({text})"
                pieces.append(f"{text}*{gen}")
        if self.const:
            text = str(self.const)
            if len(self.const.coeffs) > 1:
                text = f"({text})"
            pieces.append(text)
        return _join_signed(pieces)

    def __repr__(self):
        return f"LieElement({str(self)!r})"


def canonicalize(i: int, j: int, m: int, n: int, d: int | None = None) -> LieElement:
    """Rewrite a raw quadruple v[i,j](m,n) into the canonical basis.

    Swaps factors as needed (v[i,j](m,n) = v[j,i](n,m)) and emits the
    constant from v[i,i](m,-m) = v[i,i](-m,m) + m when m > 0.
    """
    _validate_index(i, d)
    _validate_index(j, d)
    return _canonical_element(i, j, m, n)


@lru_cache(maxsize=None)
def _canonical_element(i: int, j: int, m: int, n: int) -> LieElement:
    out: dict = {}
    _straighten(((i, m), (j, n)), 1, out)
    terms = {}
    const = 0
    for word, coeff in out.items():
        if not coeff:
            continue
        if word:
            (wi, wm), (wj, wn) = word
            terms[Generator(wi, wj, wm, wn)] = Scalar.of(coeff)
        else:
            const += coeff
    return LieElement(terms, Scalar.of(const))


@lru_cache(maxsize=None)
def _pair_bracket(g: Generator, h: Generator):
    """Commutator [g, h] of canonical generators via normal ordering.

    Returns (terms, const) with integer coefficients; the quartic parts of
    g h and h g cancel identically, leaving a quadratic plus a constant.
    """
    out: dict = {}
    wg = ((g.i, g.m), (g.j, g.n))
    wh = ((h.i, h.m), (h.j, h.n))
    _straighten(wg + wh, 1, out)
    _straighten(wh + wg, -1, out)
    terms = []
    const = 0
    for word, coeff in out.items():
        if not coeff:
            continue
        if len(word) == 4:
            raise AssertionError("quartic terms must cancel in a commutator")
        if len(word) == 2:
            (wi, wm), (wj, wn) = word
            terms.append((Generator(wi, wj, wm, wn), coeff))
        else:
            const += coeff
    return tuple(terms), const


def _as_element(x) -> LieElement:
    if isinstance(x, LieElement):
        return x
    if isinstance(x, Generator):
        if not x.is_canonical():
            raise ValueError(f"{x} is not in canonical form")
        return LieElement.from_generator(x)
    raise TypeError(f"expected a Generator or LieElement, got {type(x).__name__}")


def _bracket_impl(x, y, deform: bool) -> LieElement:
    x = _as_element(x)
    y = _as_element(y)
    acc: dict = {}
    const_weight = 0 * ONE
    for g1, c1 in x.terms.items():
        for g2, c2 in y.terms.items():
            coeff = c1 * c2
            terms, const = _pair_bracket(g1, g2)
            for gen, ct in terms:
                total = acc.get(gen, ZERO) + coeff * ct
                if total:
                    acc[gen] = total
                else:
                    acc.pop(gen, None)
            if const:
                const_weight = const_weight + coeff * const
    return LieElement(acc, const_weight * (R if deform else ONE))


def bracket(x, y) -> LieElement:
    """Plain commutator [x, y] (constants are central and drop out)."""
    return _bracket_impl(x, y, deform=False)


def bracket_r(x, y) -> LieElement:
    """Deformed bracket: the commutator with its constant part scaled by r."""
    return _bracket_impl(x, y, deform=True)


_GEN_RE = re.compile(
    r"v\[\s*(-?\d+)\s*,\s*(-?\d+)\s*\]\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)"
)


def parse_generator_literal(text: str) -> tuple[int, int, int, int]:
    """Parse "v[i,j](m,n)" into a raw quadruple (not yet canonical)."""
    match = _GEN_RE.fullmatch(text.strip())
    if not match:
        raise ValueError(f"cannot parse generator literal {text!r}")
    return tuple(int(g) for g in match.groups())
