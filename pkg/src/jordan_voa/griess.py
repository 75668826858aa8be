"""Degree-2 structure constants and the symmetric-matrix Jordan check.

The degree-2 component is spanned by the states w[i,j] = (1/2) v[i,j](-1,-1)
applied to the vacuum, one for each unordered index pair.  The product of
two of them is the zero-mode sum L[i,j](0) applied to the partner, which
lands back in the span of the w basis with structure constants that are
rational and independent of r.

The resulting commutative algebra is isomorphic to the Jordan algebra of
d x d symmetric matrices under A . B = (AB + BA)/2; the verifier exhibits
the isomorphism through a diagonal rescaling of the natural basis
(w[i,i] -> c_diag E_ii, w[i,j] -> c_off (E_ij + E_ji)) and checks the full
polarized Jordan identity on basis quadruples, which in characteristic zero
is equivalent to the identity itself.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import isqrt

from .fock import State, Weight, weight_space_basis
from .liealg import Generator
from .virops import act_L

__all__ = [
    "GriessVerificationError",
    "GriessTable",
    "omega",
    "griess_product",
    "build_griess_table",
    "jordan_verify",
]

HALF = Fraction(1, 2)


class GriessVerificationError(RuntimeError):
    """A structural property guaranteed by the construction failed to verify."""


def omega(i: int, j: int) -> State:
    """Basis vector of the degree-2 component for the index pair {i, j}."""
    i, j = min(i, j), max(i, j)
    return State.from_monomial((Generator(i, j, -1, -1),), HALF)


def griess_product(i: int, j: int, k: int, l: int, d: int) -> State:
    """The degree-2 product w[i,j] . w[k,l] (zero mode of the first factor)."""
    for idx in (i, j, k, l):
        if idx < 1 or idx > d:
            raise ValueError(f"oscillator index {idx} out of range 1..{d}")
    return act_L(i, j, 0, omega(k, l), d=d)


class GriessTable:
    """Structure constants of the degree-2 algebra over the w basis."""

    def __init__(self, d: int):
        self.d = d
        self.basis = [(i, j) for i in range(1, d + 1) for j in range(i, d + 1)]
        self.index = {pair: pos for pos, pair in enumerate(self.basis)}
        self.products: dict = {}

    def product_vector(self, left, right) -> tuple:
        return self.products[(left, right)]

    def multiply(self, u: list, v: list) -> list:
        """Bilinear extension of the table to coordinate vectors."""
        out = [Fraction(0)] * len(self.basis)
        for a, ca in enumerate(u):
            if not ca:
                continue
            for b, cb in enumerate(v):
                if not cb:
                    continue
                vec = self.products[(self.basis[a], self.basis[b])]
                factor = ca * cb
                for pos, entry in enumerate(vec):
                    if entry:
                        out[pos] += factor * entry
        return out

    def to_json_obj(self) -> dict:
        return {
            "d": self.d,
            "basis": [list(p) for p in self.basis],
            "products": [
                {
                    "left": list(left),
                    "right": list(right),
                    "coords": [str(c) for c in vec],
                }
                for (left, right), vec in sorted(self.products.items())
            ],
        }


def _omega_coordinates(state: State, d: int) -> list:
    """Express a degree-2 state over the w basis; error if it leaves the span."""
    basis = [(i, j) for i in range(1, d + 1) for j in range(i, d + 1)]
    coords = [Fraction(0)] * len(basis)
    for mono, coeff in state.terms.items():
        if len(mono) != 1 or mono[0].m != -1 or mono[0].n != -1:
            raise GriessVerificationError(
                f"degree-2 product leaves the quadratic span: monomial {mono}"
            )
        if not coeff.is_constant():
            raise GriessVerificationError(
                f"degree-2 structure constant depends on r: {coeff}"
            )
        pair = (mono[0].i, mono[0].j)
        coords[basis.index(pair)] = Fraction(coeff.constant_value()) * 2
    return coords


def build_griess_table(d: int) -> GriessTable:
    """Compute all pairwise products and express them over the w basis."""
    table = GriessTable(d)
    for left in table.basis:
        for right in table.basis:
            product = griess_product(left[0], left[1], right[0], right[1], d)
            table.products[(left, right)] = tuple(_omega_coordinates(product, d))
    return table


def _sym_matrices(d: int, diag_scale: Fraction, off_scale: Fraction) -> dict:
    out = {}
    for i in range(1, d + 1):
        for j in range(i, d + 1):
            mat = [[Fraction(0)] * d for _ in range(d)]
            if i == j:
                mat[i - 1][i - 1] = diag_scale
            else:
                mat[i - 1][j - 1] = off_scale
                mat[j - 1][i - 1] = off_scale
            out[(i, j)] = mat
    return out


def _mat_jordan(a, b):
    d = len(a)
    out = [[Fraction(0)] * d for _ in range(d)]
    for r in range(d):
        for c in range(d):
            acc = Fraction(0)
            for t in range(d):
                acc += a[r][t] * b[t][c] + b[r][t] * a[t][c]
            out[r][c] = acc / 2
    return out


def _mat_scale_add(acc, mat, factor):
    for r in range(len(mat)):
        for c in range(len(mat)):
            acc[r][c] += factor * mat[r][c]


def _exact_sqrt(q: Fraction):
    if q < 0:
        return None
    q = Fraction(q)
    num = isqrt(q.numerator)
    den = isqrt(q.denominator)
    if num * num == q.numerator and den * den == q.denominator:
        return Fraction(num, den)
    return None


def jordan_verify(d: int) -> dict:
    """Verify commutativity, the Jordan identity, and the matrix isomorphism.

    Returns a report with the scaling factors found.  Raises
    GriessVerificationError if any structural property fails, since the
    construction guarantees all of them.
    """
    table = build_griess_table(d)
    dim = len(table.basis)

    degree_two = []
    for i in range(1, d + 1):
        for j in range(i, d + 1):
            lam = Weight({(i, -1): 2}) if i == j else Weight({(i, -1): 1, (j, -1): 1})
            degree_two.extend(weight_space_basis(lam, d=d))
    if len(degree_two) != dim:
        raise GriessVerificationError(
            f"degree-2 dimension {len(degree_two)} != d(d+1)/2 = {dim}"
        )

    for left in table.basis:
        for right in table.basis:
            if table.products[(left, right)] != table.products[(right, left)]:
                raise GriessVerificationError(
                    f"product of {left} and {right} is not commutative"
                )

    unit = [[Fraction(0)] * dim for _ in range(dim)]
    for pos in range(dim):
        unit[pos][pos] = Fraction(1)

    def polarized_jordan_defect(x, y, z, b):
        total = [Fraction(0)] * dim
        for p1, p2, p3 in itertools.permutations((x, y, z)):
            left = table.multiply(table.multiply(table.multiply(p1, p2), b), p3)
            right = table.multiply(table.multiply(p1, p2), table.multiply(b, p3))
            for pos in range(dim):
                total[pos] += left[pos] - right[pos]
        return total

    for x, y, z in itertools.combinations_with_replacement(range(dim), 3):
        for b in range(dim):
            defect = polarized_jordan_defect(unit[x], unit[y], unit[z], unit[b])
            if any(defect):
                raise GriessVerificationError(
                    f"Jordan identity fails on basis quadruple {(x, y, z, b)}"
                )

    # Diagonal scale: w[1,1].w[1,1] = gamma w[1,1] forces c_diag = gamma.
    first = table.basis.index((1, 1))
    gamma = table.products[((1, 1), (1, 1))][first]
    if not gamma:
        raise GriessVerificationError("diagonal square has no diagonal component")
    c_diag = gamma
    # Off-diagonal scale: w[1,2].w[1,2] = beta (w[1,1]+w[2,2]) forces
    # c_off^2 = beta * c_diag.
    pair = table.basis.index((1, 2))
    beta = table.products[((1, 2), (1, 2))][first]
    c_off = _exact_sqrt(beta * c_diag)
    if c_off is None or not c_off:
        raise GriessVerificationError("no rational off-diagonal scaling exists")

    matrices = _sym_matrices(d, c_diag, c_off)
    for left in table.basis:
        for right in table.basis:
            expected = _mat_jordan(matrices[left], matrices[right])
            actual = [[Fraction(0)] * d for _ in range(d)]
            for pos, entry in enumerate(table.products[(left, right)]):
                if entry:
                    _mat_scale_add(actual, matrices[table.basis[pos]], entry)
            if actual != expected:
                raise GriessVerificationError(
                    f"isomorphism fails on the pair {left}, {right}"
                )

    return {
        "d": d,
        "dimension": dim,
        "commutative": True,
        "jordan_identity": True,
        "diagonal_scale": c_diag,
        "off_diagonal_scale": c_off,
        "isomorphic_to_symmetric_matrices": True,
    }
