"""Module action, gradings, and weight-space enumeration."""

import itertools
import json
import random
from fractions import Fraction

import pytest

from jordan_voa.fock import (
    MIXED,
    State,
    Weight,
    act,
    act_word,
    degree_of,
    monomial,
    monomial_degree,
    monomial_weight,
    theta,
    weight_of,
    weight_space_basis,
)
from jordan_voa.liealg import Generator, bracket_r, canonicalize
from jordan_voa.scalar import R, Scalar

VAC = State.vacuum()


def gen_elem(i, j, m, n):
    return canonicalize(i, j, m, n)


def lowering_state(*quads):
    return State.from_monomial(monomial([Generator(*q) for q in quads]))


def test_act_diagonal_annihilator_small():
    # v(1,1) on v(-1,-1)|0> gives 2r |0>
    u = lowering_state((1, 1, -1, -1))
    assert act(gen_elem(1, 1, 1, 1), u) == VAC.scale(2 * R)


def test_act_raising_kills_vacuum():
    assert act(gen_elem(1, 2, 0, 5), VAC).is_zero()


def test_act_diagonal_annihilator_power():
    # v(2,2) on v(-2,-2)^2 |0>: coefficient 2 m^2 nu (r + 2 nu - 2) with m=nu=2
    u = lowering_state((1, 1, -2, -2), (1, 1, -2, -2))
    expected = lowering_state((1, 1, -2, -2)).scale(Scalar.of(16) * (R + 2))
    assert act(gen_elem(1, 1, 2, 2), u) == expected


def test_act_word_order_and_identity():
    assert act_word([], lowering_state((1, 1, -1, -1))) == lowering_state((1, 1, -1, -1))
    assert act_word([gen_elem(1, 1, 1, 1)], lowering_state((1, 1, -1, -1))) == VAC.scale(2 * R)
    # word composition is consistent with the bracket
    a = gen_elem(1, 1, 1, 2)
    b = gen_elem(1, 1, -2, -1)
    lhs = act_word([a, b], VAC) - act_word([b, a], VAC)
    assert lhs == act(bracket_r(a, b), VAC)


def test_constants_act_as_scalars():
    from jordan_voa.liealg import LieElement

    u = lowering_state((1, 1, -1, -1))
    assert act(LieElement.constant(R + 2), u) == u.scale(R + 2)


def test_degree_examples():
    assert degree_of(VAC) == 0
    assert degree_of(lowering_state((1, 2, -2, -1))) == 3
    assert degree_of(lowering_state((1, 1, -1, -1)) + VAC) == MIXED
    with pytest.raises(ValueError):
        degree_of(State.zero())


def test_weight_examples():
    assert weight_of(lowering_state((1, 1, -1, -1))) == Weight({(1, -1): 2})
    assert weight_of(lowering_state((1, 2, -2, -1))) == Weight({(1, -2): 1, (2, -1): 1})
    assert weight_of(VAC) == Weight.zero()
    assert weight_of(lowering_state((1, 1, -1, -1)) + VAC) == MIXED


def test_theta_examples():
    assert theta(Weight({(1, -1): 2})) == 0
    assert theta(Weight({(1, -2): 1, (2, -1): 1})) == 1
    assert theta(Weight({(2, -1): 2, (3, -2): 1})) == 3


def test_weight_space_basis_frozen_examples():
    basis = weight_space_basis(Weight({(1, -1): 2}), restricted=True)
    assert basis == [monomial([Generator(1, 1, -1, -1)])]
    basis = weight_space_basis(Weight({(1, -1): 2, (1, -2): 2}), restricted=True)
    assert sorted(basis) == sorted(
        [
            monomial([Generator(1, 1, -1, -1), Generator(1, 1, -2, -2)]),
            monomial([Generator(1, 1, -2, -1), Generator(1, 1, -2, -1)]),
        ]
    )
    assert weight_space_basis(Weight.zero()) == [()]


def test_weight_space_basis_odd_multiplicity_is_empty():
    assert weight_space_basis(Weight({(1, -1): 1})) == []
    assert weight_space_basis(Weight({(1, -1): 3})) == []


def test_restricted_basis_rejects_other_oscillators():
    assert weight_space_basis(Weight({(2, -1): 2}), restricted=True) == []


def _lowering_generators(max_degree, d):
    out = []
    for i in range(1, d + 1):
        for j in range(i, d + 1):
            for m in range(-max_degree + 1, 0):
                for n in range(-max_degree + 1, 0):
                    if i == j and m > n:
                        continue
                    g = Generator(i, j, m, n)
                    if g.degree() <= max_degree:
                        out.append(g)
    return out


def _all_monomials(max_degree, d):
    gens = sorted(_lowering_generators(max_degree, d))
    out = []

    def grow(start, current, budget):
        out.append(tuple(current))
        for pos in range(start, len(gens)):
            if gens[pos].degree() <= budget:
                current.append(gens[pos])
                grow(pos, current, budget - gens[pos].degree())
                current.pop()

    grow(0, [], max_degree)
    return out


def test_weight_space_basis_against_enumeration_oracle():
    """Independent oracle: enumerate all monomials by degree, filter by weight."""
    d = 2
    max_degree = 4
    monomials = _all_monomials(max_degree, d)
    by_weight = {}
    for mono in monomials:
        by_weight.setdefault(monomial_weight(mono), set()).add(mono)
    for lam, expected in by_weight.items():
        assert set(weight_space_basis(lam, d=d)) == expected
    # restricted variant against the same oracle
    for lam, expected in by_weight.items():
        restricted = {
            m for m in expected if all(g.i == 1 and g.j == 1 for g in m)
        }
        got = set(weight_space_basis(lam, d=d, restricted=True))
        if all(k == 1 for (k, _) in lam.support()):
            assert got == restricted
        else:
            assert got == set()


def test_diagonal_operators_act_with_weight_eigenvalues():
    """h[k,l] = -(1/l) v[k,k](l,-l) acts diagonally with the weight counts."""
    d = 2
    for mono in _all_monomials(6, d):
        u = State.from_monomial(mono)
        lam = monomial_weight(mono)
        for k in range(1, d + 1):
            for l in range(-6, 0):
                h_action = act(gen_elem(k, k, l, -l), u).scale(Fraction(-1, l))
                assert h_action == u.scale(lam.count(k, l)), (mono, k, l)


def _operator_weight_shift(g):
    shift = {}
    for idx, mode in ((g.i, g.m), (g.j, g.n)):
        if mode < 0:
            shift[(idx, mode)] = shift.get((idx, mode), 0) + 1
        elif mode > 0:
            shift[(idx, -mode)] = shift.get((idx, -mode), 0) - 1
    return shift


def test_action_is_graded_by_degree_and_weight():
    rng = random.Random(11)
    monomials = _all_monomials(4, 2)
    gens = [
        Generator(i, j, m, n)
        for i in range(1, 3)
        for j in range(i, 3)
        for m in range(-3, 4)
        for n in range(-3, 4)
        if i < j or m <= n
    ]
    for _ in range(300):
        mono = rng.choice(monomials)
        g = rng.choice(gens)
        u = State.from_monomial(mono)
        image = act(g, u)
        if image.is_zero():
            continue
        assert degree_of(image) == monomial_degree(mono) + g.degree()
        expected = monomial_weight(mono).shifted(_operator_weight_shift(g))
        assert expected is not None and weight_of(image) == expected


def test_representation_property_small_exhaustive():
    gens = [
        Generator(i, j, m, n)
        for i in range(1, 3)
        for j in range(i, 3)
        for m in range(-2, 3)
        for n in range(-2, 3)
        if i < j or m <= n
    ]
    states = [State.from_monomial(m) for m in _all_monomials(3, 2)]
    for x, y in itertools.combinations(gens, 2):
        direct = bracket_r(x, y)
        for u in states:
            assert act(direct, u) == act(x, act(y, u)) - act(y, act(x, u))


def test_cross_oscillator_generators_kill_restricted_module():
    """v[1,j](m,n) with n >= 0, and any raising v[i,j] with i,j >= 2, act as
    zero on states built from the first oscillator only."""
    restricted = [
        m for m in _all_monomials(6, 1) if all(g.i == 1 and g.j == 1 for g in m)
    ]
    for mono in restricted:
        u = State.from_monomial(mono)
        for m in range(-3, 4):
            for n in range(0, 4):
                assert act(gen_elem(1, 2, m, n), u).is_zero(), (mono, m, n)
        for m in range(-3, 4):
            for n in range(-3, 4):
                if m + n > 0 or m >= 0 or n >= 0:
                    assert act(gen_elem(2, 2, min(m, n), max(m, n)), u).is_zero()


def test_module_bottom_dimensions():
    # degree 0 is one-dimensional, degree 1 empty
    assert weight_space_basis(Weight.zero()) == [()]
    for d in (2, 3):
        degree_one = [
            weight_space_basis(Weight({(k, -1): 1}), d=d) for k in range(1, d + 1)
        ]
        assert all(basis == [] for basis in degree_one)


def test_state_json_round_trip():
    u = lowering_state((1, 1, -2, -1), (1, 2, -1, -1)).scale(R + Fraction(1, 2))
    blob = json.dumps(u.to_json_obj())
    assert State.from_json_obj(json.loads(blob)) == u


def test_monomial_validation():
    with pytest.raises(ValueError):
        monomial([Generator(1, 1, -1, 1)])  # not lowering
    with pytest.raises(ValueError):
        monomial([Generator(2, 1, -1, -1)])  # not canonical
    with pytest.raises(ValueError):
        monomial([Generator(1, 3, -1, -1)], d=2)  # index beyond d


def test_weight_validation():
    with pytest.raises(ValueError):
        Weight({(1, 1): 1})  # mode must be negative
    with pytest.raises(ValueError):
        Weight({(0, -1): 1})  # oscillator index from 1
    with pytest.raises(ValueError):
        Weight({(1, -1): -2})
