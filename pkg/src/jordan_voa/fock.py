"""The induced vacuum module, its commuting-product basis, and gradings.

States are exact linear combinations of products of lowering generators
applied to a vacuum vector.  Lowering generators commute with one another,
so a basis monomial is a sorted multiset of canonical lowering generators
(sorted by the fixed lexicographic order on (i, j, m, n)).  A generator with
a nonnegative mode acts by commuting rightward past the factors with the
deformed bracket and annihilating the vacuum; constants act as scalars.

Degree grades a monomial by minus the sum of its modes.  The finer weight
grading counts how many times each lowering mode v_k(l) occurs among the
factors; the commuting operators h[k,l] = -(1/l) v[k,k](l,-l), l < 0, act
diagonally with those counts as eigenvalues.

The single-generator action is memoised.  Entries are computed from
immutable inputs and never mutated afterwards, so concurrent readers are
safe; at worst two threads briefly recompute the same value.
"""

from __future__ import annotations

from bisect import bisect_left
from typing import Iterable, Mapping

from .liealg import Generator, LieElement, _join_signed, _pair_bracket
from .scalar import ONE, R, ZERO, Scalar, parse_scalar

__all__ = [
    "MIXED",
    "PBWMonomial",
    "State",
    "Weight",
    "monomial",
    "monomial_degree",
    "monomial_weight",
    "act",
    "act_word",
    "degree_of",
    "weight_of",
    "weight_space_basis",
    "theta",
    "clear_action_cache",
]

MIXED = "mixed"

PBWMonomial = tuple  # tuple of lowering Generators, sorted ascending


def monomial(factors: Iterable[Generator], d: int | None = None) -> PBWMonomial:
    """Build a basis monomial from commuting lowering factors."""
    out = []
    for gen in factors:
        if not isinstance(gen, Generator):
            gen = Generator(*gen)
        if not gen.is_canonical():
            raise ValueError(f"{gen} is not in canonical form")
        if not gen.is_lowering():
            raise ValueError(f"{gen} is not a lowering generator")
        if d is not None and gen.j > d:
            raise ValueError(f"{gen} uses an oscillator index beyond d={d}")
        out.append(gen)
    return tuple(sorted(out))


def monomial_degree(mono: PBWMonomial) -> int:
    return -sum(g.m + g.n for g in mono)


def monomial_weight(mono: PBWMonomial) -> "Weight":
    counts: dict = {}
    for g in mono:
        counts[(g.i, g.m)] = counts.get((g.i, g.m), 0) + 1
        counts[(g.j, g.n)] = counts.get((g.j, g.n), 0) + 1
    return Weight(counts)


class Weight(object):
    """Finitely supported multiplicity map (k, l) -> count, l < 0."""

    __slots__ = ("_pairs",)

    def __init__(self, counts: Mapping | None = None):
        pairs = []
        if counts:
            for (k, l), count in counts.items():
                if count == 0:
                    continue
                if not (isinstance(count, int) and count > 0):
                    raise ValueError(f"weight multiplicity {count} must be a positive integer")
                if not (isinstance(k, int) and k >= 1 and isinstance(l, int) and l < 0):
                    raise ValueError(f"weight support ({k},{l}) needs k >= 1 and l < 0")
                pairs.append(((k, l), count))
        self._pairs = tuple(sorted(pairs))

    @classmethod
    def zero(cls) -> "Weight":
        return cls()

    @property
    def counts(self) -> dict:
        return dict(self._pairs)

    def count(self, k: int, l: int) -> int:
        for (pk, pl), c in self._pairs:
            if (pk, pl) == (k, l):
                return c
        return 0

    def is_zero(self) -> bool:
        return not self._pairs

    def total_degree(self) -> int:
        return sum(-l * c for (_, l), c in self._pairs)

    def support(self) -> list:
        return [kl for kl, _ in self._pairs]

    def theta(self) -> int:
        """Total multiplicity carried by oscillators other than the first."""
        return sum(c for (k, _), c in self._pairs if k >= 2)

    def shifted(self, deltas: Mapping) -> "Weight | None":
        """Add signed multiplicities; None if any count would go negative."""
        counts = self.counts
        for key, delta in deltas.items():
            counts[key] = counts.get(key, 0) + delta
            if counts[key] < 0:
                return None
            if counts[key] == 0:
                del counts[key]
        return Weight(counts)

    def __eq__(self, other):
        if not isinstance(other, Weight):
            return NotImplemented
        return self._pairs == other._pairs

    def __hash__(self):
        return hash(self._pairs)

    def __str__(self):
        if not self._pairs:
            return "0"
        return " + ".join(
            (f"Lam[{k},{l}]" if c == 1 else f"{c}*Lam[{k},{l}]")
            for (k, l), c in self._pairs
        )

    def __repr__(self):
        return f"Weight({str(self)!r})"


def theta(lam: Weight) -> int:
    """Multiplicity of a weight outside the first oscillator."""
    return lam.theta()


class State(object):
    """A finite Q[r]-linear combination of basis monomials."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | None = None):
        tidy = {}
        if terms:
            for mono, coeff in terms.items():
                coeff = Scalar.of(coeff)
                if coeff:
                    tidy[mono] = coeff
        self.terms = tidy

    @classmethod
    def zero(cls) -> "State":
        return cls()

    @classmethod
    def vacuum(cls) -> "State":
        return cls({(): ONE})

    @classmethod
    def from_monomial(cls, mono: PBWMonomial, coeff=ONE) -> "State":
        return cls({mono: Scalar.of(coeff)})

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, mono: PBWMonomial) -> Scalar:
        return self.terms.get(mono, ZERO)

    def scale(self, factor) -> "State":
        factor = Scalar.of(factor)
        if not factor:
            return State()
        out = State()
        out.terms = {m: c * factor for m, c in self.terms.items()}
        return out

    def __add__(self, other):
        if not isinstance(other, State):
            return NotImplemented
        acc = dict(self.terms)
        for mono, coeff in other.terms.items():
            total = acc.get(mono, ZERO) + coeff
            if total:
                acc[mono] = total
            else:
                acc.pop(mono, None)
        out = State()
        out.terms = acc
        return out

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        if not isinstance(other, State):
            return NotImplemented
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, State):
            return NotImplemented
        return self.terms == other.terms

    def specialize(self, r0) -> "State":
        """Evaluate every coefficient at a rational parameter value."""
        return State({m: Scalar.of(c.evaluate(r0)) for m, c in self.terms.items()})

    def degree(self):
        return degree_of(self)

    def weight(self):
        return weight_of(self)

    def to_json_obj(self) -> list:
        return [
            {"monomial": [list(g) for g in mono], "coeff": str(coeff)}
            for mono, coeff in sorted(self.terms.items())
        ]

    @classmethod
    def from_json_obj(cls, obj: list, d: int | None = None) -> "State":
        terms = {}
        for entry in obj:
            mono = monomial([Generator(*item) for item in entry["monomial"]], d=d)
            coeff = parse_scalar(entry["coeff"])
            terms[mono] = terms.get(mono, ZERO) + coeff
        return cls(terms)

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for mono in sorted(self.terms):
            coeff = self.terms[mono]
            body = "*".join(str(g) for g in mono) if mono else "1"
            if coeff == ONE:
                pieces.append(body)
            else:
                text = str(coeff)
                if len(coeff.coeffs) > 1:
                    text = f"({text})"
                pieces.append(f"{text}*{body}")
        return _join_signed(pieces)

    def __repr__(self):
        return f"State({str(self)!r})"


def degree_of(u: State):
    """Common degree of the support, or MIXED; the zero state has none."""
    if u.is_zero():
        raise ValueError("the zero state has no degree")
    degrees = {monomial_degree(m) for m in u.terms}
    return degrees.pop() if len(degrees) == 1 else MIXED


def weight_of(u: State):
    """Common weight of the support, or MIXED; the zero state has none."""
    if u.is_zero():
        raise ValueError("the zero state has no weight")
    weights = {monomial_weight(m) for m in u.terms}
    return weights.pop() if len(weights) == 1 else MIXED


# -- module action -----------------------------------------------------

_ACT_CACHE: dict = {}


def clear_action_cache():
    _ACT_CACHE.clear()


def _insert(mono: PBWMonomial, gen: Generator) -> PBWMonomial:
    pos = bisect_left(mono, gen)
    return mono[:pos] + (gen,) + mono[pos:]


def _add_into(acc: dict, mono: PBWMonomial, coeff: Scalar):
    cur = acc.get(mono)
    if cur is None:
        acc[mono] = coeff
    else:
        total = cur + coeff
        if total:
            acc[mono] = total
        else:
            del acc[mono]


def _act_gen(gen: Generator, mono: PBWMonomial) -> dict:
    """Action of one canonical generator on one basis monomial (memoised).

    Lowering generators multiply in; anything else is commuted rightward
    with the deformed bracket and annihilates the vacuum.  Callers must not
    mutate the returned dict.
    """
    key = (gen, mono)
    cached = _ACT_CACHE.get(key)
    if cached is not None:
        return cached
    if gen.m < 0 and gen.n < 0:
        result = {_insert(mono, gen): ONE}
    elif not mono:
        result = {}
    else:
        head = mono[0]
        rest = mono[1:]
        acc: dict = {}
        terms, const = _pair_bracket(gen, head)
        for g2, c2 in terms:
            for m2, s2 in _act_gen(g2, rest).items():
                _add_into(acc, m2, s2 * c2)
        if const:
            _add_into(acc, rest, R * const)
        for m2, s2 in _act_gen(gen, rest).items():
            _add_into(acc, _insert(m2, head), s2)
        result = acc
    _ACT_CACHE[key] = result
    return result


def act(x, u: State) -> State:
    """Module action of a Generator or LieElement on a state."""
    if isinstance(x, Generator):
        if not x.is_canonical():
            raise ValueError(f"{x} is not in canonical form")
        x = LieElement.from_generator(x)
    elif not isinstance(x, LieElement):
        raise TypeError(f"cannot act by {type(x).__name__}")
    acc: dict = {}
    for mono, cu in u.terms.items():
        for gen, cg in x.terms.items():
            coeff = cu * cg
            for m2, s2 in _act_gen(gen, mono).items():
                _add_into(acc, m2, s2 * coeff)
        if x.const:
            _add_into(acc, mono, cu * x.const)
    out = State()
    out.terms = acc
    return out


def act_word(xs: Iterable, u: State) -> State:
    """Compose actions right to left: the last element acts first."""
    out = u
    for x in reversed(list(xs)):
        out = act(x, out)
    return out


# -- weight space enumeration -------------------------------------------


def _pairings(symbols: tuple):
    """All ways to pair up a sorted multiset of (index, mode) symbols."""
    if not symbols:
        yield ()
        return
    first = symbols[0]
    seen = set()
    for pos in range(1, len(symbols)):
        partner = symbols[pos]
        if partner in seen:
            continue
        seen.add(partner)
        rest = symbols[1:pos] + symbols[pos + 1 :]
        for sub in _pairings(rest):
            yield ((first, partner),) + sub


def weight_space_basis(
    lam: Weight, d: int | None = None, restricted: bool = False
) -> list:
    """All basis monomials of weight exactly lam.

    Pairs the required multiset of lowering modes v_k(l) into quadratic
    factors in every possible way and deduplicates by canonical form.  With
    restricted=True only first-oscillator factors qualify, so any weight
    supported outside k=1 has an empty restricted basis.
    """
    symbols = []
    for (k, l), count in sorted(lam.counts.items()):
        if d is not None and k > d:
            raise ValueError(f"weight uses oscillator index {k} beyond d={d}")
        if restricted and k != 1:
            return []
        symbols.extend([(k, l)] * count)
    if len(symbols) % 2:
        return []
    found = set()
    for pairing in _pairings(tuple(symbols)):
        factors = []
        for (k1, l1), (k2, l2) in pairing:
            factors.append(Generator(k1, k2, l1, l2))
        found.add(tuple(sorted(factors)))
    return sorted(found)
