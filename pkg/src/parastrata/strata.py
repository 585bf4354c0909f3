"""Fixed-point strata: index enumeration, margin-constrained
multiplicity matrices, and exact dimension/codimension accounting.

A stratum over a degree-d cover is indexed, at each marked point, by a
d-tuple of nonempty weight subsets of size at most r/d, together with a
d x l matrix of non-negative integers whose support matches the subsets
(condition a), whose rows each sum to r/d, and whose k-th column sums
to the k-th multiplicity (condition b).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping, Sequence

from .parabolic import ParabolicDatum, PointWeights


@dataclass(frozen=True)
class ModuliSpec:
    """Genus, rank, determinant-degree class and per-point weight data."""

    genus: int
    rank: int
    xi_degree: int
    delta: int
    points: tuple[tuple[str, PointWeights], ...]

    def __post_init__(self) -> None:
        if not isinstance(self.genus, int) or self.genus < 2:
            raise ValueError("genus must be an integer >= 2")
        if not isinstance(self.rank, int) or self.rank < 1:
            raise ValueError("rank must be a positive integer")
        if not isinstance(self.xi_degree, int):
            raise ValueError("determinant degree must be an integer")
        if self.delta != self.xi_degree % self.rank:
            raise ValueError("delta must equal the determinant degree mod the rank")
        prev = None
        seen = set()
        for pid, pw in self.points:
            if pid in seen or (prev is not None and pid < prev):
                raise ValueError("points must be sorted with distinct ids")
            seen.add(pid)
            prev = pid
            if pw.total_multiplicity() != self.rank:
                raise ValueError(
                    f"multiplicities at {pid!r} sum to {pw.total_multiplicity()}, expected rank {self.rank}"
                )

    @staticmethod
    def of(
        genus: int,
        rank: int,
        points: Mapping[str, PointWeights],
        xi_degree: int = 0,
        delta: int | None = None,
    ) -> "ModuliSpec":
        if delta is None:
            delta = xi_degree % rank
        return ModuliSpec(genus, rank, xi_degree, delta, tuple(sorted(points.items())))

    @property
    def point_ids(self) -> tuple[str, ...]:
        return tuple(pid for pid, _ in self.points)

    def weights_at(self, pid: str) -> PointWeights:
        for q, pw in self.points:
            if q == pid:
                return pw
        raise KeyError(pid)

    def datum(self, degree: int = 0) -> ParabolicDatum:
        return ParabolicDatum.of(self.rank, degree, dict(self.points))


@dataclass(frozen=True)
class StratumIndex:
    """Per point, a d-tuple of weight subsets (0-based index tuples)."""

    entries: tuple[tuple[str, tuple[tuple[int, ...], ...]], ...]

    def subsets_at(self, pid: str) -> tuple[tuple[int, ...], ...]:
        for q, subs in self.entries:
            if q == pid:
                return subs
        raise KeyError(pid)

    @property
    def point_ids(self) -> tuple[str, ...]:
        return tuple(pid for pid, _ in self.entries)


@dataclass(frozen=True)
class MultiplicityMatrix:
    """Rectangular block of non-negative integers, rows indexed by fiber
    position and columns by weight position."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if not self.entries:
            raise ValueError("matrix needs at least one row")
        width = len(self.entries[0])
        for row in self.entries:
            if len(row) != width:
                raise ValueError("ragged matrix")
            for v in row:
                if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                    raise ValueError(f"non-negative integer entry expected, got {v!r}")

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    def row_sums(self) -> tuple[int, ...]:
        return tuple(sum(r) for r in self.entries)

    def col_sums(self) -> tuple[int, ...]:
        return tuple(sum(r[k] for r in self.entries) for k in range(self.cols))

    def supports(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(k for k, v in enumerate(r) if v) for r in self.entries)


def _check_cover_degree(r: int, d: int) -> int:
    if not isinstance(d, int) or d < 2:
        raise ValueError("cover degree must be an integer >= 2")
    if r % d != 0:
        raise ValueError(f"cover degree {d} does not divide rank {r}")
    return r // d


def weight_subsets(pw: PointWeights, max_size: int) -> tuple[tuple[int, ...], ...]:
    """All nonempty subsets of the weight positions of size <= max_size,
    as sorted index tuples in lexicographic order."""
    n = pw.length
    subs = []
    for size in range(1, min(n, max_size) + 1):
        subs.extend(itertools.combinations(range(n), size))
    subs.sort()
    return tuple(subs)


def enumerate_stratum_indices(spec: ModuliSpec, d: int) -> Iterator[StratumIndex]:
    """All stratum indices, lazily, in lexicographic order.

    Per point there are |P|**d tuples where P collects the nonempty
    weight subsets of size at most r/d; across points the tuples are
    combined as a full product.
    """
    q = _check_cover_degree(spec.rank, d)
    per_point = []
    for pid, pw in spec.points:
        subs = weight_subsets(pw, q)
        per_point.append([(pid, t) for t in itertools.product(subs, repeat=d)])
    for combo in itertools.product(*per_point):
        yield StratumIndex(tuple(combo))


def enumerate_matrices(
    t_point: Sequence[tuple[int, ...]],
    m: PointWeights,
    r: int,
    d: int,
) -> Iterator[MultiplicityMatrix]:
    """All matrices for one point compatible with the given subset tuple.

    Conditions: entry (j, k) is nonzero exactly when k lies in the j-th
    subset; each row sums to r/d; column k sums to the k-th
    multiplicity.  Backtracks row by row with running margin bounds;
    rows are emitted in lexicographic (row-major) order.  The result
    may be empty.
    """
    q = _check_cover_degree(r, d)
    width = m.length
    mults = m.multiplicities
    supports = [tuple(sorted(set(s))) for s in t_point]
    if len(supports) != d:
        raise ValueError(f"expected {d} subsets, got {len(supports)}")
    for s in supports:
        if not s:
            raise ValueError("subsets must be nonempty")
        if len(s) > q:
            raise ValueError(f"subset of size {len(s)} exceeds r/d = {q}")
        for k in s:
            if not (0 <= k < width):
                raise ValueError(f"weight index {k} out of range")

    col_rem = list(mults)

    def margins_ok(next_row: int) -> bool:
        # each later row must place >= 1 on its support and can place at
        # most q - |support| + 1 on any single column
        lo = [0] * width
        hi = [0] * width
        for j in range(next_row, d):
            cap = q - len(supports[j]) + 1
            for k in supports[j]:
                lo[k] += 1
                hi[k] += cap
        for k in range(width):
            if not (lo[k] <= col_rem[k] <= hi[k]):
                return False
        return True

    def fill_row(support: tuple[int, ...], pos: int, remaining: int, row: list[int]):
        if pos == len(support):
            if remaining == 0:
                yield tuple(row)
            return
        k = support[pos]
        tail = len(support) - pos - 1
        top = min(col_rem[k], remaining - tail)
        for v in range(1, top + 1):
            row[k] = v
            yield from fill_row(support, pos + 1, remaining - v, row)
        row[k] = 0

    rows_acc: list[tuple[int, ...]] = []

    def rec(j: int) -> Iterator[MultiplicityMatrix]:
        if j == d:
            if all(v == 0 for v in col_rem):
                yield MultiplicityMatrix(tuple(rows_acc))
            return
        for row in fill_row(supports[j], 0, q, [0] * width):
            for k in supports[j]:
                col_rem[k] -= row[k]
            rows_acc.append(row)
            if margins_ok(j + 1):
                yield from rec(j + 1)
            rows_acc.pop()
            for k in supports[j]:
                col_rem[k] += row[k]

    yield from rec(0)


def matrix_to_multiplicity_system(
    mat: MultiplicityMatrix, weights: PointWeights
) -> tuple[PointWeights, ...]:
    """Per-fiber weighted multiplicities read off the rows of a matrix.

    Row j becomes the data at the j-th fiber point: weight k enters
    with multiplicity equal to the (j, k) entry whenever that entry is
    positive, in increasing weight order.
    """
    if mat.cols != weights.length:
        raise ValueError("matrix width does not match the number of weights")
    out = []
    for row in mat.entries:
        kept = [(weights.weights[k], v) for k, v in enumerate(row) if v]
        if not kept:
            raise ValueError("matrix row without positive entries")
        out.append(PointWeights(tuple(kept)))
    return tuple(out)


def flag_dimension(mults: Sequence[int]) -> int:
    """Dimension of the variety of flags with the given dimension drops:
    sum over i of m_i * (m_{i+1} + ... + m_l)."""
    ms = list(mults)
    for m in ms:
        if not isinstance(m, int) or isinstance(m, bool) or m < 1:
            raise ValueError(f"positive integer multiplicity expected, got {m!r}")
    total = 0
    suffix = sum(ms)
    for m in ms:
        suffix -= m
        total += m * suffix
    return total


def moduli_dimension(spec: ModuliSpec) -> int:
    """(r^2 - 1)(g - 1) plus the flag dimension at every marked point."""
    total = (spec.rank**2 - 1) * (spec.genus - 1)
    for _, pw in spec.points:
        total += flag_dimension(pw.multiplicities)
    return total


def _row_flag_term(row: Sequence[int]) -> int:
    kept = [v for v in row if v]
    return flag_dimension(kept) if kept else 0


def _check_matrix_margins(mat: MultiplicityMatrix, pw: PointWeights, q: int, d: int) -> None:
    if mat.rows != d:
        raise ValueError(f"matrix has {mat.rows} rows, expected {d}")
    if mat.cols != pw.length:
        raise ValueError("matrix width does not match the number of weights")
    if mat.row_sums() != (q,) * d:
        raise ValueError(f"rows must sum to {q}")
    if mat.col_sums() != pw.multiplicities:
        raise ValueError("columns must sum to the point multiplicities")


def stratum_dimension(
    spec: ModuliSpec, d: int, mats: Mapping[str, MultiplicityMatrix]
) -> int:
    """(g-1)(r^2/d - 1) plus, per point and fiber row, the flag
    dimension of the positive entries of that row."""
    q = _check_cover_degree(spec.rank, d)
    if set(mats) != set(spec.point_ids):
        raise ValueError("matrices must be given for exactly the marked points")
    total = (spec.genus - 1) * (spec.rank**2 // d - 1)
    for pid, pw in spec.points:
        mat = mats[pid]
        _check_matrix_margins(mat, pw, q, d)
        for row in mat.entries:
            total += _row_flag_term(row)
    return total


def enumerate_strata(
    spec: ModuliSpec, d: int
) -> Iterator[tuple[StratumIndex, dict[str, MultiplicityMatrix]]]:
    """All (index, matrix system) pairs, lazily; indices whose matrix
    collection is empty at some point are skipped."""
    for t in enumerate_stratum_indices(spec, d):
        per_point = []
        empty = False
        for pid, pw in spec.points:
            mats = list(enumerate_matrices(t.subsets_at(pid), pw, spec.rank, d))
            if not mats:
                empty = True
                break
            per_point.append((pid, mats))
        if empty:
            continue
        for combo in itertools.product(*(mats for _, mats in per_point)):
            yield t, {pid: mat for (pid, _), mat in zip(per_point, combo)}


@dataclass(frozen=True)
class CodimReport:
    """Exact dimension/codimension summary for one configuration."""

    genus: int
    rank: int
    cover_degree: int
    dim_moduli: int
    num_indices: int
    num_systems: int
    max_stratum_dim: int | None
    codim: int | None
    bound: Fraction
    meets_bound: bool
    codim_at_least_three: bool


def codim_report(spec: ModuliSpec, d: int) -> CodimReport:
    """Survey every stratum and compare the exact codimension against
    the analytic lower bound r^2 (g-1) (1 - 1/d).

    The per-point contributions are independent, so the maximum stratum
    dimension is assembled from per-point maxima; the stratum count is
    the product of the per-point counts.
    """
    q = _check_cover_degree(spec.rank, d)
    g, r = spec.genus, spec.rank
    dim_m = moduli_dimension(spec)
    base = (g - 1) * (r**2 // d - 1)

    num_indices = 1
    num_systems = 1
    point_maxima: list[int] = []
    nonempty = True
    for pid, pw in spec.points:
        subs = weight_subsets(pw, q)
        num_indices *= len(subs) ** d
        count = 0
        best: int | None = None
        for t in itertools.product(subs, repeat=d):
            for mat in enumerate_matrices(t, pw, r, d):
                count += 1
                term = sum(_row_flag_term(row) for row in mat.entries)
                if best is None or term > best:
                    best = term
        num_systems *= count
        if best is None:
            nonempty = False
        else:
            point_maxima.append(best)

    bound = Fraction(r * r * (g - 1) * (d - 1), d)
    if not nonempty:
        return CodimReport(
            g, r, d, dim_m, num_indices, 0, None, None, bound, True, True
        )
    max_dim = base + sum(point_maxima)
    codim = dim_m - max_dim
    return CodimReport(
        genus=g,
        rank=r,
        cover_degree=d,
        dim_moduli=dim_m,
        num_indices=num_indices,
        num_systems=num_systems,
        max_stratum_dim=max_dim,
        codim=codim,
        bound=bound,
        meets_bound=Fraction(codim) >= bound,
        codim_at_least_three=codim >= 3,
    )
