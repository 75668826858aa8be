"""Determinant vectors, singularity certification, and kernel search.

The determinant vector of size p is det(v(-s,-t))_{1<=s,t<=p} expanded over
permutations of the commuting first-oscillator lowering generators; its
nu-th power applied to the vacuum is the candidate singular vector for the
parameter value r = 1 - 2*nu + p.

A homogeneous state u of degree D is certified singular when every raising
generator (mode sum positive) with both modes in [-D, D] annihilates it.
Raising generators with a mode beyond D annihilate any degree-D state for
weight reasons, so the finite check is complete.  For the restricted
first-oscillator family the two slot orders name the same generator; for
mixed index pairs i < j the certified family keeps the slot order m <= n
(equivalently a nonnegative second mode, the order that provably kills the
restricted module).  The reversed-order mixed generators v[i,j](m,n) with
m > n > -m generally do NOT annihilate determinant vectors of size p >= 2;
pass strict=True to include them and observe the failure.

Kernel search runs over one weight space at a time: stack the raising
actions on the weight-space basis into an exact matrix and return its
nullspace, over Q for a rational parameter value or over Q(r) for the
generic parameter.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .fock import (
    MIXED,
    State,
    Weight,
    act,
    degree_of,
    weight_space_basis,
)
from .liealg import Generator
from .scalar import ONE, R, ZERO, Scalar, poly_gcd, poly_exact_div

__all__ = [
    "DetSpec",
    "KernelReport",
    "det_state",
    "det_power_state",
    "multiply_lowering",
    "raising_generators",
    "is_singular",
    "kernel_basis",
    "kernel_basis_poly",
    "singular_search",
    "restricted_weights",
    "expected_singular_pairs",
    "singular_sweep",
    "verify_det_lemmas",
]

GENERIC = "generic"


@dataclass(frozen=True)
class DetSpec:
    """A determinant power: matrix size p, exponent nu, parameter value."""

    p: int
    nu: int
    r0: object = GENERIC

    def certification_r(self) -> int:
        """The parameter value at which the vector is expected singular."""
        return 1 - 2 * self.nu + self.p

    def state(self) -> State:
        return det_power_state(self.p, self.nu)


@dataclass
class KernelReport:
    """Search result for one weight space at one parameter value."""

    weight: Weight
    r0: object
    basis_dim: int
    kernel_dim: int
    kernel_vectors: list = field(default_factory=list)


def _perm_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        pos = start
        while not seen[pos]:
            seen[pos] = True
            pos = perm[pos]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def det_state(p: int, indices=None) -> State:
    """Expand the determinant of (v(-s,-t)) over the given row/column labels."""
    if indices is None:
        if p < 1:
            raise ValueError("determinant size must be at least 1")
        indices = tuple(range(1, p + 1))
    else:
        indices = tuple(indices)
        if not indices:
            return State.vacuum()
    acc: dict = {}
    for perm in itertools.permutations(range(len(indices))):
        sign = _perm_sign(perm)
        factors = []
        for q, target in enumerate(perm):
            s, t = indices[q], indices[target]
            factors.append(Generator(1, 1, -max(s, t), -min(s, t)))
        mono = tuple(sorted(factors))
        acc[mono] = acc.get(mono, 0) + sign
    return State({mono: Scalar.of(c) for mono, c in acc.items() if c})


def multiply_lowering(a: State, b: State) -> State:
    """Product of two states whose factors are all lowering (they commute)."""
    acc: dict = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            merged = tuple(sorted(ma + mb))
            cur = acc.get(merged)
            total = ca * cb if cur is None else cur + ca * cb
            if total:
                acc[merged] = total
            elif cur is not None:
                del acc[merged]
    out = State()
    out.terms = acc
    return out


def det_power_state(p: int, nu: int) -> State:
    """The nu-th power of the size-p determinant applied to the vacuum."""
    if p < 1 or nu < 1:
        raise ValueError("determinant powers need p >= 1 and nu >= 1")
    base = det_state(p)
    out = base
    for _ in range(nu - 1):
        out = multiply_lowering(out, base)
    return out


def raising_generators(
    bound: int, d: int = 1, full_algebra: bool = False, strict: bool = False
) -> list:
    """Canonical generators with positive mode sum and modes within the bound.

    The default family takes m <= n for every index pair; for i < j that is
    the annihilation-certifiable slot order (second mode >= 1).  With
    strict=True the reversed-order mixed generators are included as well.
    """
    pairs = [(1, 1)]
    if full_algebra:
        pairs = [(i, j) for i in range(1, d + 1) for j in range(i, d + 1)]
    out = []
    for i, j in pairs:
        for m in range(-bound, bound + 1):
            for n in range(-bound, bound + 1):
                if m + n <= 0:
                    continue
                if m > n and (i == j or not strict):
                    continue
                out.append(Generator(i, j, m, n))
    return sorted(out)


def _state_is_zero_at(u: State, r0) -> bool:
    if r0 == GENERIC or r0 is None:
        return u.is_zero()
    return all(not c.evaluate(r0) for c in u.terms.values())


def is_singular(
    u: State,
    r0=GENERIC,
    d: int = 1,
    full_algebra: bool = False,
    index_bound: int | None = None,
    strict: bool = False,
):
    """Certify annihilation by the raising generators; returns (ok, witness).

    The witness on failure is the first violating generator together with
    its nonzero image (specialised when r0 is rational).
    """
    deg = degree_of(u)
    if deg == MIXED:
        raise ValueError("singularity is only defined for homogeneous states")
    bound = deg if index_bound is None else index_bound
    for gen in raising_generators(bound, d=d, full_algebra=full_algebra, strict=strict):
        image = act(gen, u)
        if not _state_is_zero_at(image, r0):
            witness = image if r0 in (GENERIC, None) else image.specialize(r0)
            return False, (gen, witness)
    return True, None


# -- exact nullspace ----------------------------------------------------


def _kernel_over_field(rows, ncols, zero, one):
    """Nullspace basis via Gauss-Jordan over any exact field."""
    mat = [list(row) for row in rows]
    pivots = []
    rank = 0
    for col in range(ncols):
        pivot_row = None
        for r in range(rank, len(mat)):
            if mat[r][col] != zero:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        mat[rank], mat[pivot_row] = mat[pivot_row], mat[rank]
        inv = one / mat[rank][col]
        mat[rank] = [inv * x for x in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col] != zero:
                factor = mat[r][col]
                mat[r] = [a - factor * b for a, b in zip(mat[r], mat[rank])]
        pivots.append(col)
        rank += 1
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [zero] * ncols
        vec[free] = one
        for row_idx, col in enumerate(pivots):
            vec[col] = -mat[row_idx][free]
        basis.append(vec)
    return basis


def kernel_basis(rows, ncols: int | None = None) -> list:
    """Exact rational nullspace of a rectangular matrix."""
    if ncols is None:
        if not rows:
            raise ValueError("pass ncols explicitly for an empty row list")
        ncols = len(rows[0])
    frac_rows = [[Fraction(x) for x in row] for row in rows]
    return _kernel_over_field(frac_rows, ncols, Fraction(0), Fraction(1))


class _RatFunc:
    """Minimal rational function num/den over Q[r], for generic kernels."""

    __slots__ = ("num", "den")

    def __init__(self, num: Scalar, den: Scalar = ONE):
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            num, den = ZERO, ONE
        else:
            g = poly_gcd(num, den)
            if g.degree() > 0:
                num = poly_exact_div(num, g)
                den = poly_exact_div(den, g)
            lead = Fraction(den[-1])
            num = num / lead
            den = den / lead
        self.num = num
        self.den = den

    def __eq__(self, other):
        if isinstance(other, _RatFunc):
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __add__(self, other):
        return _RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other):
        return _RatFunc(self.num * other.den - other.num * self.den, self.den * other.den)

    def __neg__(self):
        return _RatFunc(-self.num, self.den)

    def __mul__(self, other):
        return _RatFunc(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        if not other.num:
            raise ZeroDivisionError("division by the zero rational function")
        return _RatFunc(self.num * other.den, self.den * other.num)


def kernel_basis_poly(rows, ncols: int | None = None) -> list:
    """Nullspace over the field Q(r), returned as vectors of polynomials.

    Each vector is cleared of denominators and divided by the polynomial
    content, so the entries are coprime elements of Q[r].
    """
    if ncols is None:
        if not rows:
            raise ValueError("pass ncols explicitly for an empty row list")
        ncols = len(rows[0])
    rf_rows = [[_RatFunc(Scalar.of(x)) for x in row] for row in rows]
    basis = _kernel_over_field(rf_rows, ncols, _RatFunc(ZERO), _RatFunc(ONE))
    cleared = []
    for vec in basis:
        denominator = ONE
        for entry in vec:
            g = poly_gcd(denominator, entry.den)
            denominator = poly_exact_div(denominator * entry.den, g) if g else entry.den
        poly_vec = [
            entry.num * poly_exact_div(denominator, entry.den) for entry in vec
        ]
        content = ZERO
        for entry in poly_vec:
            content = poly_gcd(content, entry)
        if content.degree() > 0:
            poly_vec = [poly_exact_div(entry, content) for entry in poly_vec]
        cleared.append(poly_vec)
    return cleared


# -- weight-space search --------------------------------------------------

_MATRIX_CACHE: dict = {}


def _search_matrix(lam: Weight):
    """Symbolic raising-action matrix on the restricted weight-space basis."""
    cached = _MATRIX_CACHE.get(lam)
    if cached is not None:
        return cached
    basis = weight_space_basis(lam, restricted=True)
    rows = []
    if basis:
        depth = lam.total_degree()
        for gen in raising_generators(depth, d=1, full_algebra=False):
            images = [act(gen, State.from_monomial(mono)) for mono in basis]
            targets = sorted({m for img in images for m in img.terms})
            for target in targets:
                rows.append([img.coefficient(target) for img in images])
    result = (basis, rows)
    _MATRIX_CACHE[lam] = result
    return result


def singular_search(lam: Weight, r0) -> KernelReport:
    """Exact kernel of the stacked raising actions on one weight space.

    The weight must be supported on the first oscillator.  Kernel vectors
    are normalised to coefficient 1 (leading coefficient 1 for generic r)
    on their lexicographically smallest monomial, and each is re-certified
    through is_singular before being returned.
    """
    if any(k != 1 for (k, _) in lam.support()):
        raise ValueError("the search runs in the restricted module: weight must live on k=1")
    if lam.is_zero():
        raise ValueError("the search needs a nonzero weight")
    basis, rows = _search_matrix(lam)
    if not basis:
        return KernelReport(lam, r0, 0, 0, [])
    if r0 == GENERIC or r0 is None:
        vectors = kernel_basis_poly(rows, len(basis))
        r0 = GENERIC
    else:
        r0 = Fraction(r0)
        rational_rows = [[c.evaluate(r0) for c in row] for row in rows]
        vectors = kernel_basis(rational_rows, len(basis))
    states = []
    for vec in vectors:
        lead = next(c for c in vec if c)
        if isinstance(lead, Scalar):
            normalised = [entry / Fraction(lead[-1]) for entry in vec]
        else:
            normalised = [entry / lead for entry in vec]
        state = State({mono: Scalar.of(c) for mono, c in zip(basis, normalised) if c})
        ok, witness = is_singular(state, r0=r0, d=1, full_algebra=False)
        if not ok:
            raise RuntimeError(
                f"search produced a non-singular vector at weight {lam}: witness {witness[0]}"
            )
        states.append(state)
    return KernelReport(lam, r0, len(basis), len(states), states)


def restricted_weights(max_degree: int) -> list:
    """All nonzero first-oscillator weights of total degree <= max_degree."""
    out = []

    def collect(level: int, counts: dict, budget: int):
        if level > max_degree:
            if counts:
                out.append(Weight({(1, -l): c for l, c in counts.items()}))
            return
        for count in range(budget // level + 1):
            if count:
                counts[level] = count
            collect(level + 1, counts, budget - level * count)
            counts.pop(level, None)

    collect(1, {}, max_degree)
    return sorted(set(out), key=lambda w: (w.total_degree(), str(w)))


def expected_singular_pairs(r0: int, max_degree: int) -> dict:
    """Map weight -> (p, nu) for determinant powers certified at integer r0."""
    out = {}
    for p in range(1, max_degree + 1):
        for nu in range(1, max_degree + 1):
            if 1 - 2 * nu + p != r0:
                continue
            degree = nu * p * (p + 1)
            if degree > max_degree:
                continue
            lam = Weight({(1, -q): 2 * nu for q in range(1, p + 1)})
            out[lam] = (p, nu)
    return out


def _sweep_task(args):
    pairs, r0 = args
    lam = Weight(dict(pairs))
    return singular_search(lam, r0)


def singular_sweep(r_values, max_degree: int, workers: int = 1) -> list:
    """Run the kernel search over every restricted weight for each parameter."""
    weights = restricted_weights(max_degree)
    tasks = [
        (tuple(sorted(lam.counts.items())), r0) for r0 in r_values for lam in weights
    ]
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_sweep_task, tasks))
    else:
        reports = [_sweep_task(task) for task in tasks]
    return reports


# -- determinant commutation identities -----------------------------------


def verify_det_lemmas(p: int, index_bound: int, state_degree: int = 4) -> dict:
    """Check the determinant commutation and eigenvalue identities.

    (a) v(-m, n) commutes with multiplication by the determinant for
        1 <= m <= p, 0 <= n <= index_bound, n != m, applied to every
        restricted basis state of degree <= state_degree.
    (b) On u = det^nu1 applied to the vacuum (so the diagonal eigenvalue
        coefficient is alpha = 2*nu1),

        v(m,m) det u = 2 m^2 (2 alpha + r - p + 1) det^(m-minor) u
                       + det v(m,m) u

        symbolically in r, for 1 <= m <= p and nu1 <= 2.
    """
    if p > index_bound:
        raise ValueError("index_bound must be at least the determinant size")
    failures = []
    det = det_state(p)
    spanning = [()]
    for lam in restricted_weights(state_degree):
        spanning.extend(weight_space_basis(lam, restricted=True))
    for m in range(1, p + 1):
        for n in range(0, index_bound + 1):
            if n == m:
                continue
            gen_elem = Generator(1, 1, -m, n)
            for mono in spanning:
                u = State.from_monomial(mono)
                lhs = act(gen_elem, multiply_lowering(det, u))
                rhs = multiply_lowering(det, act(gen_elem, u))
                if lhs != rhs:
                    failures.append(
                        f"commutation fails for {gen_elem} on {State.from_monomial(mono)}"
                    )
    for nu1 in range(0, 3):
        u = State.vacuum() if nu1 == 0 else det_power_state(p, nu1)
        alpha = 2 * nu1
        for m in range(1, p + 1):
            minor = det_state(p, indices=[q for q in range(1, p + 1) if q != m])
            lhs = act(Generator(1, 1, m, m), multiply_lowering(det, u))
            scale = Scalar.of(2 * m * m) * (R + Scalar.of(2 * alpha - p + 1))
            rhs = multiply_lowering(minor, u).scale(scale) + multiply_lowering(
                det, act(Generator(1, 1, m, m), u)
            )
            if lhs != rhs:
                failures.append(f"eigenvalue identity fails for m={m}, nu1={nu1}")
    return {"p": p, "index_bound": index_bound, "passed": not failures, "failures": failures}
