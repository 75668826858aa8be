"""Determinant vectors, kernel search, and singularity certification."""

from fractions import Fraction

import pytest

from jordan_voa.fock import State, Weight, act, monomial
from jordan_voa.liealg import Generator, canonicalize
from jordan_voa.scalar import ONE, R, Scalar
from jordan_voa.singular import (
    GENERIC,
    DetSpec,
    det_power_state,
    det_state,
    expected_singular_pairs,
    is_singular,
    kernel_basis,
    kernel_basis_poly,
    multiply_lowering,
    raising_generators,
    restricted_weights,
    singular_search,
    singular_sweep,
    verify_det_lemmas,
)

VAC = State.vacuum()


def gen_elem(i, j, m, n):
    return canonicalize(i, j, m, n)


def lowering_state(*quads):
    return State.from_monomial(monomial([Generator(*q) for q in quads]))


def test_det_state_size_one():
    assert det_state(1) == lowering_state((1, 1, -1, -1))
    assert det_power_state(1, 3) == lowering_state(
        (1, 1, -1, -1), (1, 1, -1, -1), (1, 1, -1, -1)
    )


def test_det_state_size_two_cofactor_oracle():
    # 2x2 cofactor expansion with the symmetric identification v(-1,-2)=v(-2,-1)
    expected = lowering_state((1, 1, -1, -1), (1, 1, -2, -2)) - lowering_state(
        (1, 1, -2, -1), (1, 1, -2, -1)
    )
    assert det_state(2) == expected


def test_det_state_size_three_terms():
    d3 = det_state(3)
    assert len(d3.terms) == 5
    assert d3.coefficient(
        monomial(
            [Generator(1, 1, -1, -1), Generator(1, 1, -2, -2), Generator(1, 1, -3, -3)]
        )
    ) == ONE
    assert d3.coefficient(
        monomial(
            [Generator(1, 1, -2, -1), Generator(1, 1, -3, -2), Generator(1, 1, -3, -1)]
        )
    ) == Scalar.of(2)


def test_multiply_lowering_is_commutative_product():
    a = det_state(2)
    b = lowering_state((1, 1, -1, -1))
    assert multiply_lowering(a, b) == multiply_lowering(b, a)
    assert multiply_lowering(a, VAC) == a


def test_det_spec():
    spec = DetSpec(2, 1)
    assert spec.certification_r() == 1
    assert spec.state() == det_state(2)


def test_is_singular_certification_example():
    ok, witness = is_singular(det_state(2), r0=Fraction(1), d=2, full_algebra=True)
    assert ok and witness is None


def test_is_singular_counterexample_with_witness():
    u = lowering_state((1, 1, -1, -1))
    ok, witness = is_singular(u, r0=Fraction(1))
    assert not ok
    gen, image = witness
    assert gen == Generator(1, 1, 1, 1)
    assert image == VAC.scale(2)


def test_is_singular_at_matching_parameter():
    ok, _ = is_singular(lowering_state((1, 1, -1, -1)), r0=Fraction(0))
    assert ok


def test_is_singular_rejects_inhomogeneous_input():
    with pytest.raises(ValueError):
        is_singular(VAC + lowering_state((1, 1, -1, -1)), r0=Fraction(0))


def test_reversed_mixed_generators_break_strict_certification():
    """The reversed-slot mixed generator v[1,2](2,-1) does not annihilate the
    size-2 determinant vector; the strict family therefore fails for p >= 2
    while the certifiable family passes.  Pins the engine-measured boundary."""
    u = det_state(2)
    ok, witness = is_singular(u, r0=Fraction(1), d=2, full_algebra=True, strict=True)
    assert not ok
    assert witness[0] == Generator(1, 2, 2, -1)
    image = act(Generator(1, 2, 2, -1), u)
    expected = lowering_state((1, 1, -1, -1), (1, 2, -2, -1)).scale(4) - lowering_state(
        (1, 1, -2, -1), (1, 2, -1, -1)
    ).scale(4)
    assert image == expected
    # size-1 determinant powers pass even the strict family
    ok, _ = is_singular(det_power_state(1, 2), r0=Fraction(-2), d=2,
                        full_algebra=True, strict=True)
    assert ok


def test_raising_generator_families():
    default = raising_generators(2, d=2, full_algebra=True)
    strict = raising_generators(2, d=2, full_algebra=True, strict=True)
    assert Generator(1, 2, 2, -1) in strict
    assert Generator(1, 2, 2, -1) not in default
    assert all(g.m + g.n > 0 for g in strict)
    restricted = raising_generators(2, d=1)
    assert all(g.i == g.j == 1 and g.m <= g.n for g in restricted)


def test_kernel_basis_trivial_cases():
    identity = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert kernel_basis(identity) == []
    zero_map = [[0, 0, 0], [0, 0, 0]]
    assert len(kernel_basis(zero_map)) == 3
    assert len(kernel_basis([[0]])) == 1
    assert kernel_basis([], ncols=2) == [
        [Fraction(1), Fraction(0)],
        [Fraction(0), Fraction(1)],
    ]


def test_kernel_basis_small_system():
    # x + y = 0 with a redundant row
    vectors = kernel_basis([[1, 1], [2, 2]])
    assert len(vectors) == 1
    x, y = vectors[0]
    assert x + y == 0 and (x, y) != (0, 0)


def test_kernel_basis_poly_generic():
    vectors = kernel_basis_poly([[R, R * R]])
    assert len(vectors) == 1
    x, y = vectors[0]
    assert (R * x + R * R * y).is_zero()
    assert kernel_basis_poly([[ONE, R], [R, R * R]], 2)  # rank 1, kernel dim 1
    assert kernel_basis_poly([[ONE, R], [R, ONE]], 2) == []  # generically full rank


def test_singular_search_spec_examples():
    lam = Weight({(1, -1): 2})
    assert singular_search(lam, Fraction(1, 2)).kernel_dim == 0
    report = singular_search(lam, Fraction(0))
    assert report.kernel_dim == 1 and report.basis_dim == 1
    assert report.kernel_vectors[0] == lowering_state((1, 1, -1, -1))

    lam2 = Weight({(1, -1): 2, (1, -2): 2})
    report2 = singular_search(lam2, Fraction(1))
    assert report2.kernel_dim == 1 and report2.basis_dim == 2
    found = report2.kernel_vectors[0]
    reference = det_state(2)
    lead = next(iter(sorted(found.terms)))
    scale = Fraction(reference.coefficient(lead).constant_value()) / Fraction(
        found.coefficient(lead).constant_value()
    )
    assert found.scale(scale) == reference


def test_singular_search_generic_is_empty():
    for lam in (Weight({(1, -1): 2}), Weight({(1, -1): 2, (1, -2): 2})):
        assert singular_search(lam, GENERIC).kernel_dim == 0


def test_singular_search_validates_weight():
    with pytest.raises(ValueError):
        singular_search(Weight({(2, -1): 2}), Fraction(0))
    with pytest.raises(ValueError):
        singular_search(Weight.zero(), Fraction(0))


def test_restricted_weights_enumeration():
    weights = restricted_weights(3)
    assert len(weights) == 6  # partitions of 1, 2, 3
    assert Weight({(1, -1): 1}) in weights
    assert Weight({(1, -3): 1}) in weights
    assert all(w.total_degree() <= 3 for w in weights)


def test_expected_singular_pairs():
    assert expected_singular_pairs(0, 6) == {Weight({(1, -1): 2}): (1, 1)}
    assert expected_singular_pairs(1, 6) == {
        Weight({(1, -1): 2, (1, -2): 2}): (2, 1)
    }
    assert expected_singular_pairs(-2, 6) == {Weight({(1, -1): 4}): (1, 2)}
    assert expected_singular_pairs(-1, 6) == {}
    assert expected_singular_pairs(2, 6) == {}


def test_verify_det_lemmas():
    for p in (1, 2):
        report = verify_det_lemmas(p, index_bound=p + 2, state_degree=3)
        assert report["passed"], report["failures"]
    with pytest.raises(ValueError):
        verify_det_lemmas(3, index_bound=2)


def test_det_eigenvalue_identity_frozen_instance():
    # v(2,2) det|0> = 8(r-1) v(-1,-1)|0> for the size-2 determinant
    lhs = act(gen_elem(1, 1, 2, 2), det_state(2))
    assert lhs == lowering_state((1, 1, -1, -1)).scale(Scalar.of(8) * (R - 1))


def test_certification_fails_off_relation():
    for p, nu in ((1, 1), (2, 1)):
        good = 1 - 2 * nu + p
        state = det_power_state(p, nu)
        for r0 in range(-3, 4):
            ok, _ = is_singular(state, r0=Fraction(r0), d=1)
            assert ok == (r0 == good), (p, nu, r0)


def test_singular_sweep_rows():
    reports = singular_sweep([Fraction(0), Fraction(1)], 4, workers=1)
    by_key = {(str(rep.r0), str(rep.weight)): rep for rep in reports}
    hit = by_key[("0", str(Weight({(1, -1): 2})))]
    assert hit.kernel_dim == 1
    assert all(
        rep.kernel_dim == 0
        for rep in reports
        if not (rep.r0 == 0 and rep.weight == Weight({(1, -1): 2}))
    )


def test_singular_sweep_worker_pool_matches_serial():
    serial = singular_sweep([Fraction(0)], 3, workers=1)
    pooled = singular_sweep([Fraction(0)], 3, workers=2)
    assert [(r.weight, r.basis_dim, r.kernel_dim) for r in serial] == [
        (r.weight, r.basis_dim, r.kernel_dim) for r in pooled
    ]
