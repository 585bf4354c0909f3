"""Shared helpers for the test suite: seeded random generators for
parabolic data, covers, and finite-order flag automorphisms."""

from fractions import Fraction

from parastrata import (
    CoverSpec,
    ExactMatrix,
    FlagAutomorphism,
    ParabolicDatum,
    PointWeights,
    WeightedFlag,
    cyclotomic_field,
    inverse,
    rank,
)


def random_weights(rng, length, max_den=12):
    """Strictly increasing rationals in [0, 1)."""
    pool = sorted({Fraction(num, den) for den in range(2, max_den + 1) for num in range(den)})
    picks = rng.sample(pool, length)
    return sorted(picks)


def random_composition(rng, total, parts):
    """A composition of `total` into `parts` positive parts."""
    cuts = sorted(rng.sample(range(1, total), parts - 1)) if parts > 1 else []
    prev = 0
    out = []
    for c in cuts + [total]:
        out.append(c - prev)
        prev = c
    return out


def random_point_weights(rng, rank_value, max_len=3):
    length = rng.randint(1, min(max_len, rank_value))
    mults = random_composition(rng, rank_value, length)
    return PointWeights.of(random_weights(rng, length), mults)


def random_cover(rng, degree, n_base):
    fibers = {}
    for b in range(n_base):
        base = f"p{b + 1}"
        fibers[base] = [f"q{b + 1}_{j + 1}" for j in range(degree)]
    return CoverSpec.of(degree, fibers)


def random_total_datum(rng, cover, rank_value, max_len=3):
    degree = rng.randint(-5, 5)
    points = {q: random_point_weights(rng, rank_value, max_len) for q in cover.fiber_points}
    return ParabolicDatum.of(rank_value, degree, points)


def random_base_datum(rng, cover, rank_value, max_len=3):
    degree = rng.randint(-5, 5)
    points = {p: random_point_weights(rng, rank_value, max_len) for p in cover.base_points}
    return ParabolicDatum.of(rank_value, degree, points)


def random_invertible(rng, field, n, low=-3, high=3):
    while True:
        rows = [[rng.randint(low, high) for _ in range(n)] for _ in range(n)]
        m = ExactMatrix.from_rows(field, rows)
        if rank(m) == n:
            return m


def random_flag_automorphism(rng, r, d, max_len=3, uniform=False):
    """A pair (phi, flag) with phi**d = 1 and phi preserving the flag.

    Eigenvector columns come from a random invertible matrix; the flag
    subspaces are spanned by nested subsets of those columns, so the
    construction realizes every invariant-flag situation.  With
    ``uniform`` each eigenvalue exponent occurs exactly r/d times.
    """
    field = cyclotomic_field(d)
    if uniform:
        assert r % d == 0
        exponents = [e for e in range(d) for _ in range(r // d)]
        rng.shuffle(exponents)
    else:
        exponents = [rng.randrange(d) for _ in range(r)]
    p = random_invertible(rng, field, r)
    diag = ExactMatrix(
        field, r, r,
        [field.zeta(exponents[i]) if i == j else field.zero
         for i in range(r) for j in range(r)],
    )
    phi_matrix = p * diag * inverse(p)
    phi = FlagAutomorphism(phi_matrix, d)

    columns = [p.column(s) for s in range(r)]
    length = rng.randint(1, min(max_len, r))
    dims = [r] + sorted(rng.sample(range(1, r), length - 1), reverse=True)
    chain = [list(range(r))]
    for size in dims[1:]:
        chain.append(sorted(rng.sample(chain[-1], size)))
    subspaces = [
        ExactMatrix.from_rows(field, [columns[s] for s in subset]) for subset in chain
    ]
    weights = random_weights(rng, length)
    flag = WeightedFlag(d, subspaces, weights)
    return phi, flag
