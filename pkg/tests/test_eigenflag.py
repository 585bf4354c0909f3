import random
from fractions import Fraction

import pytest

from parastrata import (
    CoverSpec,
    ExactMatrix,
    FlagAutomorphism,
    ParabolicDatum,
    WeightedFlag,
    check_parabolic_morphism,
    cyclotomic_field,
    descend,
    fixed_point_shape,
    nested_eigenbasis,
    pushforward,
    pushforward_point,
    reduced_row_basis,
)

from util import random_flag_automorphism


def swap_flag():
    return WeightedFlag.of(
        2,
        [[[1, 0], [0, 1]], [[1, 1]]],
        [Fraction(1, 4), Fraction(1, 2)],
    )


def assert_valid_nested_eigenbasis(phi, flag, neb):
    field = flag.field
    for level, vecs in enumerate(neb.levels):
        # spanning: |B_i| = dim V_i and every vector lies in V_i
        assert len(vecs) == flag.dims[level]
        basis = flag.canonical_basis(level)
        span = reduced_row_basis(field, list(basis) + [ev.vector for ev in vecs])
        assert len(span) == len(basis)
        assert len(reduced_row_basis(field, [ev.vector for ev in vecs])) == len(vecs)
        # exact eigenvectors with the tagged eigenvalue
        for ev in vecs:
            assert ev.eigenvalue == field.zeta(ev.exponent)
            image = phi.matrix.apply(ev.vector)
            assert image == tuple(ev.eigenvalue * c for c in ev.vector)
    # nesting: B_{i+1} is a subset of B_i
    for shallow, deep in zip(neb.levels, neb.levels[1:]):
        assert set(deep) <= set(shallow)


# --- nested eigenbasis examples -------------------------------------------------


def test_nested_eigenbasis_swap():
    phi = FlagAutomorphism.of(2, [[0, 1], [1, 0]])
    flag = swap_flag()
    neb = nested_eigenbasis(phi, flag)
    field = flag.field
    one = field.one
    assert neb.levels[1] == ((( one, one), 0, field.zeta(0)),)
    vectors = {ev.vector for ev in neb.levels[0]}
    assert vectors == {(one, one), (one, -one)}
    assert_valid_nested_eigenbasis(phi, flag, neb)


def test_nested_eigenbasis_identity_map():
    phi = FlagAutomorphism.of(1, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    flag = WeightedFlag.of(
        1,
        [[[1, 0, 0], [0, 1, 0], [0, 0, 1]], [[1, 2, 0], [0, 0, 1]], [[0, 0, 1]]],
        [Fraction(0), Fraction(1, 3), Fraction(2, 3)],
    )
    neb = nested_eigenbasis(phi, flag)
    assert all(ev.exponent == 0 for lvl in neb.levels for ev in lvl)
    assert_valid_nested_eigenbasis(phi, flag, neb)


def test_nested_eigenbasis_diagonal_sign_flip():
    phi = FlagAutomorphism.of(2, [[1, 0, 0], [0, -1, 0], [0, 0, 1]])
    flag = WeightedFlag.of(
        2,
        [[[1, 0, 0], [0, 1, 0], [0, 0, 1]], [[1, 0, 1]]],
        [Fraction(1, 4), Fraction(1, 2)],
    )
    neb = nested_eigenbasis(phi, flag)
    field = flag.field
    one = field.one
    assert [ev.vector for ev in neb.levels[1]] == [(one, field.zero, one)]
    assert_valid_nested_eigenbasis(phi, flag, neb)


def test_nested_eigenbasis_rejects_non_invariant_flag():
    phi = FlagAutomorphism.of(2, [[0, 1], [1, 0]])
    flag = WeightedFlag.of(
        2,
        [[[1, 0], [0, 1]], [[1, 0]]],  # span{(1,0)} is not swap-invariant
        [Fraction(1, 4), Fraction(1, 2)],
    )
    with pytest.raises(ValueError):
        nested_eigenbasis(phi, flag)


def test_automorphism_order_checked():
    with pytest.raises(ValueError):
        FlagAutomorphism.of(2, [[1, 1], [0, 1]])  # unipotent, not order 2
    with pytest.raises(ValueError):
        FlagAutomorphism.of(3, [[0, 1], [1, 0]])  # order 2, not 3


# --- descent ---------------------------------------------------------------------


def test_descend_swap_example():
    phi = FlagAutomorphism.of(2, [[0, 1], [1, 0]])
    res = descend(phi, swap_flag(), 2)
    assert res.eigen_dims == (1, 1)
    assert res.matrix.entries == ((1, 0), (0, 1))
    q1, q2 = res.fiber_weights
    assert q1.entries == ((Fraction(1, 4), 1),)
    assert q2.entries == ((Fraction(1, 2), 1),)
    assert fixed_point_shape(res, 2, 2)


def test_descend_identity_degree_one():
    phi = FlagAutomorphism.of(1, [[1, 0], [0, 1]])
    flag = WeightedFlag.of(
        1,
        [[[1, 0], [0, 1]], [[1, 1]]],
        [Fraction(1, 4), Fraction(1, 2)],
    )
    res = descend(phi, flag, 1)
    assert res.eigen_dims == (2,)
    (fiber,) = res.fiber_weights
    assert fiber.weights == (Fraction(1, 4), Fraction(1, 2))
    assert fiber.multiplicities == (1, 1)


def test_descend_minus_identity():
    phi = FlagAutomorphism.of(2, [[-1, 0], [0, -1]])
    res = descend(phi, swap_flag(), 2)
    assert res.eigen_dims == (2, 0)
    q1, q2 = res.fiber_weights
    assert q1.weights == (Fraction(1, 4), Fraction(1, 2))
    assert q1.multiplicities == (1, 1)
    assert q2 is None
    assert not fixed_point_shape(res, 2, 2)


def test_descend_degree_must_match_order():
    phi = FlagAutomorphism.of(2, [[0, 1], [1, 0]])
    with pytest.raises(ValueError):
        descend(phi, swap_flag(), 4)


def test_fixed_point_shape_values():
    phi = FlagAutomorphism.of(2, [[0, 1], [1, 0]])
    res = descend(phi, swap_flag(), 2)
    assert fixed_point_shape(res, 2, 2)
    res2 = descend(FlagAutomorphism.of(2, [[-1, 0], [0, -1]]), swap_flag(), 2)
    assert not fixed_point_shape(res2, 2, 2)


def test_fixed_point_shape_three_fibers():
    # diag(1, zeta3, zeta3^2) twice over: dims (2, 2, 2) for r=6, d=3
    field = cyclotomic_field(3)
    z = field.zeta()
    entries = []
    diag = [field.one, z, z * z, field.one, z, z * z]
    for i in range(6):
        for j in range(6):
            entries.append(diag[i] if i == j else field.zero)
    phi = FlagAutomorphism(ExactMatrix(field, 6, 6, entries), 3)
    flag = WeightedFlag(
        3,
        [ExactMatrix.identity(field, 6)],
        [Fraction(1, 2)],
    )
    res = descend(phi, flag, 3)
    assert res.eigen_dims == (2, 2, 2)
    assert fixed_point_shape(res, 6, 3)


# --- morphism predicate ------------------------------------------------------------


def test_identity_is_strict_parabolic_endomorphism():
    flag = swap_flag()
    ident = ExactMatrix.identity(flag.field, 2)
    assert check_parabolic_morphism(flag, flag, ident, "strict")


def test_identity_fails_non_strict():
    flag = swap_flag()
    ident = ExactMatrix.identity(flag.field, 2)
    assert not check_parabolic_morphism(flag, flag, ident, "non-strict")


def test_zero_map_is_parabolic_either_way():
    flag = swap_flag()
    zero = ExactMatrix.zeros(flag.field, 2, 2)
    assert check_parabolic_morphism(flag, flag, zero, "strict")
    assert check_parabolic_morphism(flag, flag, zero, "non-strict")


def test_morphism_detects_weight_violation():
    field = cyclotomic_field(1)
    src = WeightedFlag.of(1, [[[1, 0], [0, 1]], [[0, 1]]], [Fraction(0), Fraction(3, 4)])
    dst = WeightedFlag.of(1, [[[1, 0], [0, 1]], [[1, 0]]], [Fraction(0), Fraction(1, 4)])
    # src weight 3/4 > dst weight 1/4 forces f(src V_2) inside dst V_3 = 0
    good = ExactMatrix.from_rows(field, [[1, 0], [0, 0]])
    bad = ExactMatrix.identity(field, 2)
    assert check_parabolic_morphism(src, dst, good, "strict")
    assert not check_parabolic_morphism(src, dst, bad, "strict")


def test_morphism_dimension_mismatch():
    flag = swap_flag()
    wide = ExactMatrix.zeros(flag.field, 2, 3)
    with pytest.raises(ValueError):
        check_parabolic_morphism(flag, flag, wide, "strict")
    with pytest.raises(ValueError):
        check_parabolic_morphism(flag, flag, ExactMatrix.identity(flag.field, 2), "sloppy")


# --- randomized structure and round trip ---------------------------------------------


def descent_matches_flag(res, flag, d):
    """Push the per-fiber data back through the degree-d merge and
    compare weights and dimension profile with the input flag."""
    merged = pushforward_point(res.fiber_weights)
    assert merged.weights == flag.weights
    assert merged.dimension_profile() == flag.dims


def test_descend_roundtrip_randomized():
    rng = random.Random(77)
    for _ in range(60):
        d = rng.choice([2, 3, 4])
        r = rng.randint(1, 6)
        phi, flag = random_flag_automorphism(rng, r, d)
        neb = nested_eigenbasis(phi, flag)
        assert_valid_nested_eigenbasis(phi, flag, neb)
        res = descend(phi, flag, d)
        assert sum(res.eigen_dims) == r
        assert res.matrix.col_sums() == flag.point_weights().multiplicities
        assert res.matrix.row_sums() == res.eigen_dims
        descent_matches_flag(res, flag, d)


def test_descend_uniform_shape_matrix_conditions():
    rng = random.Random(78)
    for _ in range(40):
        d = rng.choice([2, 3])
        r = d * rng.randint(1, 3)
        phi, flag = random_flag_automorphism(rng, r, d, uniform=True)
        res = descend(phi, flag, d)
        assert fixed_point_shape(res, r, d)
        q = r // d
        # condition (a): support read off the matrix is a valid index tuple
        for support in res.matrix.supports():
            assert support
            assert len(support) <= q
        # condition (b)
        assert res.matrix.row_sums() == (q,) * d
        assert res.matrix.col_sums() == flag.point_weights().multiplicities


def test_descend_full_datum_pushforward_when_uniform():
    rng = random.Random(79)
    for _ in range(30):
        d = rng.choice([2, 3])
        r = d * rng.randint(1, 3)
        phi, flag = random_flag_automorphism(rng, r, d, uniform=True)
        res = descend(phi, flag, d)
        cov = CoverSpec.of(d, {"p": [f"q{j}" for j in range(1, d + 1)]})
        datum = ParabolicDatum.of(
            r // d, 0, {f"q{j}": pw for j, pw in enumerate(res.fiber_weights, 1)}
        )
        pushed = pushforward(cov, datum)
        assert pushed.rank == r
        assert pushed.weights_at("p") == flag.point_weights()
