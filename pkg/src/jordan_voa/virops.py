"""Mode-sum operators, closed-form vertex modes, and Virasoro probes.

The operator L[i,j](m) is the half-sum over h of v[i,j](m-h, h); for i = j
and m = 0 the normally ordered variant (1/2) v[i,i](0,0) + sum_{h>0}
v[i,i](-h,h) is used instead.  On a homogeneous state of degree D every
summand with a raising mode larger than D acts as zero, so the sum
truncates to h in [m - D, D]; callers may enlarge that window but never
shrink it, and results are window-independent.

Vertex modes of a mixed lowering pair v[i,j](m,n) (i != j, m, n < 0) applied
to the vacuum admit the closed binomial form

    (-1)^(-m-n) sum_k C(l+n-k, -m-1) C(k-n-1, -n-1) v[i,j](l+m+n+1-k, k)

for the mode of weight l; a recursive construction of the same mode through
commutators with L[i,i](-1) is provided as an independent cross-check.  The
diagonal mode sums satisfy the Virasoro relation with central charge d*r,
which the probe below measures directly.
"""

from __future__ import annotations

from fractions import Fraction

from .fock import MIXED, State, act, degree_of
from .liealg import canonicalize
from .scalar import R

__all__ = [
    "act_L",
    "act_L_total",
    "vertex_mode",
    "vertex_mode_by_recursion",
    "binom",
    "binomial_matrix_det",
    "virasoro_bracket_probe",
    "virasoro_central_term",
]

HALF = Fraction(1, 2)


def _homogeneous_degree(u: State) -> int:
    deg = degree_of(u)
    if deg == MIXED:
        raise ValueError("operator sums need a homogeneous input state")
    return deg


def _window(center: int, depth: int, override):
    lo, hi = center - depth, depth
    if override is None:
        return lo, hi
    olo, ohi = override
    if olo > lo or ohi < hi:
        raise ValueError(
            f"truncation window [{olo},{ohi}] must contain the sufficient range [{lo},{hi}]"
        )
    return olo, ohi


def act_L(i: int, j: int, m: int, u: State, window=None, d: int | None = None) -> State:
    """Apply the mode-sum operator L[i,j](m) to a homogeneous state."""
    if u.is_zero():
        return u
    depth = _homogeneous_degree(u)
    acc = State.zero()
    if i == j and m == 0:
        lo, hi = _window(0, depth, window)
        acc = acc + act(canonicalize(i, i, 0, 0, d), u).scale(HALF)
        for h in range(max(lo, 1), hi + 1):
            acc = acc + act(canonicalize(i, i, -h, h, d), u)
        return acc
    lo, hi = _window(m, depth, window)
    for h in range(lo, hi + 1):
        acc = acc + act(canonicalize(i, j, m - h, h, d), u)
    return acc.scale(HALF)


def act_L_total(m: int, u: State, d: int, window=None) -> State:
    """Sum of the diagonal mode operators: the full Virasoro mode of weight m."""
    acc = State.zero()
    for i in range(1, d + 1):
        acc = acc + act_L(i, i, m, u, window=window, d=d)
    return acc


def binom(a: int, k: int) -> int:
    """Generalized binomial coefficient C(a, k) for integer a, k >= 0."""
    if k < 0:
        return 0
    out = 1
    for t in range(k):
        out = out * (a - t) // (t + 1)
    return out


def vertex_mode(
    i: int, j: int, m: int, n: int, l: int, u: State, window=None, d: int | None = None
) -> State:
    """The weight-l vertex mode of v[i,j](m,n) applied to a homogeneous state.

    Uses the closed binomial formula, which holds for distinct oscillator
    indices and a lowering pair; other inputs are rejected.
    """
    if i == j:
        raise ValueError("the closed vertex-mode formula needs distinct oscillator indices")
    if m >= 0 or n >= 0:
        raise ValueError("vertex modes are taken of lowering pairs (m, n < 0)")
    if u.is_zero():
        return u
    depth = _homogeneous_degree(u)
    lo, hi = l + m + n + 1 - depth, depth
    if window is not None:
        olo, ohi = window
        if olo > lo or ohi < hi:
            raise ValueError(
                f"truncation window [{olo},{ohi}] must contain the sufficient range [{lo},{hi}]"
            )
        lo, hi = olo, ohi
    acc = State.zero()
    for k in range(lo, hi + 1):
        weight = binom(l + n - k, -m - 1) * binom(k - n - 1, -n - 1)
        if not weight:
            continue
        acc = acc + act(canonicalize(i, j, l + m + n + 1 - k, k, d), u).scale(weight)
    sign = 1 if (m + n) % 2 == 0 else -1
    return acc.scale(sign)


def vertex_mode_by_recursion(i: int, j: int, m: int, n: int, l: int, u: State) -> State:
    """Independent vertex-mode oracle built from commutators with L[i,i](-1).

    Base case: the mode of v[i,j](-1,-1) is twice the mode sum L[i,j](l-1).
    Each unit decrease of m costs one commutator with L[i,i](-1) and a
    factor 1/(-m-1); decreases of n are handled by swapping the two slots.
    """
    if i == j:
        raise ValueError("vertex modes are defined for distinct oscillator indices")
    if m >= 0 or n >= 0:
        raise ValueError("vertex modes are taken of lowering pairs (m, n < 0)")
    if (m, n) == (-1, -1):
        return act_L(i, j, l - 1, u).scale(2)
    if m == -1:
        return vertex_mode_by_recursion(j, i, n, m, l, u)
    inner = vertex_mode_by_recursion(i, j, m + 1, n, l, u)
    left = act_L(i, i, -1, inner) if not inner.is_zero() else inner
    lowered = act_L(i, i, -1, u)
    right = (
        vertex_mode_by_recursion(i, j, m + 1, n, l, lowered)
        if not lowered.is_zero()
        else lowered
    )
    return (left - right).scale(Fraction(1, -m - 1))


def binomial_matrix_det(L: int, M: int) -> Fraction:
    """Exact determinant of the M x M matrix with entries C(L+p-N, p-1)."""
    if M < 1:
        raise ValueError("matrix size must be at least 1")
    rows = [
        [Fraction(binom(L + p - N, p - 1)) for N in range(1, M + 1)]
        for p in range(1, M + 1)
    ]
    det = Fraction(1)
    for col in range(M):
        pivot_row = next((r for r in range(col, M) if rows[r][col]), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != col:
            rows[col], rows[pivot_row] = rows[pivot_row], rows[col]
            det = -det
        pivot = rows[col][col]
        det *= pivot
        for r in range(col + 1, M):
            factor = rows[r][col] / pivot
            if factor:
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[col])]
    return det


def virasoro_bracket_probe(m: int, n: int, u: State, d: int, window=None) -> State:
    """Measure [L(m), L(n)] - (m - n) L(m+n) on a homogeneous state.

    By the Virasoro relation with central charge d*r this must equal
    delta_{m+n,0} (m^3 - m)/12 * d*r times the input.
    """
    left = act_L_total(m, act_L_total(n, u, d, window=window), d, window=window)
    right = act_L_total(n, act_L_total(m, u, d, window=window), d, window=window)
    linear = act_L_total(m + n, u, d, window=window)
    return left - right - linear.scale(m - n)


def virasoro_central_term(m: int, n: int, u: State, d: int) -> State:
    """Expected probe value: delta_{m+n,0} (m^3 - m)/12 * d*r times the state."""
    if m + n != 0:
        return State.zero()
    return u.scale(R * (d * Fraction(m**3 - m, 12)))
