"""Exact flag linear algebra over cyclotomic fields: nested eigenbases
of finite-order flag automorphisms, descent of a weighted flag to
per-fiber data, and the weighted-flag morphism predicate.

A flag automorphism of order d is diagonalizable with eigenvalues among
the d-th roots of unity, so everything here happens inside Q(zeta_d);
for d <= 2 that field is just the rationals in a length-one power
basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .exact import (
    Cyclotomic,
    ExactMatrix,
    cyclotomic_field,
    kernel,
    reduced_row_basis,
)
from .parabolic import PointWeights
from .strata import MultiplicityMatrix

Vector = tuple


def _span_contains(field, basis_rows: Sequence[Vector], vectors: Sequence[Vector]) -> bool:
    if not vectors:
        return True
    canon = reduced_row_basis(field, basis_rows)
    extended = reduced_row_basis(field, list(canon) + list(vectors))
    return len(extended) == len(canon)


def _intersect(field, rows_a: Sequence[Vector], rows_b: Sequence[Vector], n: int) -> tuple[Vector, ...]:
    """Canonical basis of span(rows_a) intersected with span(rows_b)."""
    if not rows_a or not rows_b:
        return ()
    na, nb = len(rows_a), len(rows_b)
    # columns carry the coefficients: sum u_s a_s - sum v_t b_t = 0
    flat = []
    for i in range(n):
        flat.extend(rows_a[s][i] for s in range(na))
        flat.extend(-rows_b[t][i] for t in range(nb))
    m = ExactMatrix(field, n, na + nb, flat)
    vectors = []
    for kv in kernel(m):
        vec = [field.zero] * n
        for s in range(na):
            if kv[s]:
                for i in range(n):
                    vec[i] = vec[i] + kv[s] * rows_a[s][i]
        vectors.append(tuple(vec))
    return reduced_row_basis(field, vectors)


def _extend_basis(field, inner: Sequence[Vector], outer_basis: Sequence[Vector]) -> list[Vector]:
    """Extend a basis of a subspace to one of an enclosing space by
    greedily taking rows of the enclosing space's canonical basis."""
    echelon: list[list] = []

    def absorb(v: Vector) -> bool:
        w = list(v)
        for row in echelon:
            p = next(i for i, e in enumerate(row) if e)
            if w[p]:
                f = w[p]
                w = [a - f * b for a, b in zip(w, row)]
        for i, e in enumerate(w):
            if e:
                echelon.append([x / e for x in w])
                return True
        return False

    out = list(inner)
    for v in inner:
        if not absorb(v):
            raise ValueError("inner vectors are not independent")
    for v in outer_basis:
        if absorb(v):
            out.append(v)
    return out


class WeightedFlag:
    """Strictly decreasing chain of subspaces with increasing weights.

    The first subspace must be the whole ambient space; each subspace
    is given by a full-row-rank basis matrix over Q(zeta_d) and is
    checked to contain the next one.
    """

    __slots__ = ("field_order", "subspaces", "weights", "field", "dims", "_canon")

    def __init__(self, field_order: int, subspaces: Sequence[ExactMatrix], weights: Sequence[Fraction]):
        field = cyclotomic_field(field_order)
        subspaces = tuple(subspaces)
        weights = tuple(Fraction(w) for w in weights)
        if not subspaces:
            raise ValueError("a flag needs at least one subspace")
        if len(weights) != len(subspaces):
            raise ValueError("one weight per subspace is required")
        prev_w = None
        for w in weights:
            if not (0 <= w < 1):
                raise ValueError(f"weight {w} outside [0, 1)")
            if prev_w is not None and w <= prev_w:
                raise ValueError("weights must be strictly increasing")
            prev_w = w
        n = subspaces[0].cols
        canon = []
        dims = []
        for sub in subspaces:
            if sub.field != field:
                raise ValueError("subspace bases must live over the flag's cyclotomic field")
            if sub.cols != n:
                raise ValueError("subspace bases must share the ambient dimension")
            basis = reduced_row_basis(field, list(sub.iter_rows()))
            if len(basis) != sub.rows:
                raise ValueError("subspace basis rows are not independent")
            canon.append(basis)
            dims.append(len(basis))
        if dims[0] != n:
            raise ValueError("the first subspace must be the full ambient space")
        for i in range(len(canon) - 1):
            if dims[i + 1] >= dims[i]:
                raise ValueError("subspace dimensions must strictly decrease")
            if not _span_contains(field, canon[i], canon[i + 1]):
                raise ValueError("each subspace must contain the next one")
        if dims[-1] < 1:
            raise ValueError("the last subspace must be nonzero")
        self.field_order = field_order
        self.field = field
        self.subspaces = subspaces
        self.weights = weights
        self.dims = tuple(dims)
        self._canon = tuple(canon)

    @staticmethod
    def of(field_order: int, subspaces: Sequence[Sequence[Sequence]], weights) -> "WeightedFlag":
        field = cyclotomic_field(field_order)
        mats = [ExactMatrix.from_rows(field, rows) for rows in subspaces]
        return WeightedFlag(field_order, mats, weights)

    @property
    def ambient_dim(self) -> int:
        return self.subspaces[0].cols

    @property
    def length(self) -> int:
        return len(self.subspaces)

    def canonical_basis(self, level: int) -> tuple[Vector, ...]:
        """Canonical (reduced echelon) basis of the level-th subspace, 0-based."""
        return self._canon[level]

    def point_weights(self) -> PointWeights:
        mults = [self.dims[i] - (self.dims[i + 1] if i + 1 < self.length else 0)
                 for i in range(self.length)]
        return PointWeights.of(self.weights, mults)


class FlagAutomorphism:
    """Square matrix over Q(zeta_d) whose d-th power is the identity."""

    __slots__ = ("matrix", "order")

    def __init__(self, matrix: ExactMatrix, order: int):
        if matrix.rows != matrix.cols:
            raise ValueError("automorphism matrix must be square")
        field = cyclotomic_field(order)
        if matrix.field != field:
            raise ValueError("matrix must live over the order-d cyclotomic field")
        if not (matrix**order).is_identity():
            raise ValueError(f"matrix to the power {order} is not the identity")
        self.matrix = matrix
        self.order = order

    @staticmethod
    def of(order: int, rows: Sequence[Sequence]) -> "FlagAutomorphism":
        field = cyclotomic_field(order)
        return FlagAutomorphism(ExactMatrix.from_rows(field, rows), order)

    @property
    def dimension(self) -> int:
        return self.matrix.rows


class EigenVector(NamedTuple):
    vector: Vector
    exponent: int
    eigenvalue: Cyclotomic


@dataclass(frozen=True)
class NestedEigenbasis:
    """Bases B_1 >= B_2 >= ... of the flag subspaces, every vector an
    exact eigenvector tagged with its root-of-unity eigenvalue."""

    levels: tuple[tuple[EigenVector, ...], ...]

    def level_count(self, level: int, exponent: int) -> int:
        return sum(1 for ev in self.levels[level] if ev.exponent == exponent)


def _check_preserves_flag(phi: FlagAutomorphism, flag: WeightedFlag) -> None:
    if flag.field_order != phi.order:
        raise ValueError("flag and automorphism must share the same field order")
    if phi.dimension != flag.ambient_dim:
        raise ValueError("automorphism dimension does not match the flag")
    field = flag.field
    for level in range(flag.length):
        basis = flag.canonical_basis(level)
        images = [phi.matrix.apply(v) for v in basis]
        if not _span_contains(field, basis, images):
            raise ValueError("automorphism does not preserve the flag")


def nested_eigenbasis(phi: FlagAutomorphism, flag: WeightedFlag) -> NestedEigenbasis:
    """Eigenvector bases of every flag subspace, nested bottom-up.

    The deepest subspace is eigen-decomposed first; within each
    eigenvalue the basis of the intersection with the next subspace is
    extended deterministically through the chain.  Output order: by
    eigenvalue exponent, then deepest-level vectors first.
    """
    _check_preserves_flag(phi, flag)
    field = flag.field
    d = phi.order
    n = flag.ambient_dim
    ell = flag.length
    ident = ExactMatrix.identity(field, n)
    levels: list[list[EigenVector]] = [[] for _ in range(ell)]
    total = 0
    for exp in range(d):
        zeta = field.zeta(exp)
        eig = kernel(phi.matrix - ident.scaled(zeta))
        if not eig:
            continue
        total += len(eig)
        inter: list[tuple[Vector, ...]] = [eig]
        for level in range(1, ell):
            inter.append(_intersect(field, eig, flag.canonical_basis(level), n))
        chain: list[list[Vector]] = [[] for _ in range(ell)]
        chain[ell - 1] = list(inter[ell - 1])
        for level in range(ell - 2, -1, -1):
            chain[level] = _extend_basis(field, chain[level + 1], inter[level])
        for level in range(ell):
            levels[level].extend(EigenVector(v, exp, zeta) for v in chain[level])
    if total != n or any(len(levels[i]) != flag.dims[i] for i in range(ell)):
        raise ValueError("automorphism is not semisimple on the flag")
    return NestedEigenbasis(tuple(tuple(lv) for lv in levels))


@dataclass(frozen=True)
class DescentResult:
    """Per-fiber weighted data split off a flag along an automorphism.

    Fiber j (1-based, j in [1, d]) collects the eigenvectors with
    eigenvalue zeta_d**j; its weighted multiplicities are the dimension
    drops of the induced chain, zero drops discarded.  An eigenvalue
    that does not occur yields an empty fiber (None).
    """

    fiber_weights: tuple[PointWeights | None, ...]
    eigen_dims: tuple[int, ...]
    matrix: MultiplicityMatrix


def descend(phi: FlagAutomorphism, flag: WeightedFlag, d: int) -> DescentResult:
    if d != phi.order:
        raise ValueError("descent degree must equal the automorphism order")
    neb = nested_eigenbasis(phi, flag)
    ell = flag.length
    counts: dict[int, list[int]] = {}
    for level in range(ell):
        for ev in neb.levels[level]:
            counts.setdefault(ev.exponent, [0] * (ell + 1))[level] += 1
    fibers: list[PointWeights | None] = []
    dims: list[int] = []
    rows: list[tuple[int, ...]] = []
    for j in range(1, d + 1):
        exp = j % d
        per_level = counts.get(exp, [0] * (ell + 1))
        row = tuple(per_level[k] - per_level[k + 1] for k in range(ell))
        rows.append(row)
        dims.append(per_level[0])
        kept = [(flag.weights[k], row[k]) for k in range(ell) if row[k]]
        fibers.append(PointWeights(tuple(kept)) if kept else None)
    return DescentResult(tuple(fibers), tuple(dims), MultiplicityMatrix(tuple(rows)))


def fixed_point_shape(res: DescentResult, r: int, d: int) -> bool:
    """True when every eigenvalue contributes an eigenspace of dimension
    exactly r/d (in particular d must divide r)."""
    if len(res.eigen_dims) != d:
        raise ValueError("result does not match the given degree")
    return r % d == 0 and all(dim == r // d for dim in res.eigen_dims)


def check_parabolic_morphism(
    src: WeightedFlag,
    dst: WeightedFlag,
    f: ExactMatrix,
    convention: str = "strict",
) -> bool:
    """Does f send each source step into the next deeper target step
    whenever the source weight exceeds the target weight?

    Under the strict convention the trigger is alpha_i > beta_j, under
    the non-strict one alpha_i >= beta_j (which rules out the identity
    as an endomorphism of any nontrivial flag).  The step after the
    last one is the zero subspace.
    """
    if convention not in ("strict", "non-strict"):
        raise ValueError(f"unknown convention {convention!r}")
    if src.field_order != dst.field_order or f.field != src.field:
        raise ValueError("flags and map must share one field")
    if f.cols != src.ambient_dim or f.rows != dst.ambient_dim:
        raise ValueError("map shape does not match the flags")
    field = src.field
    strict = convention == "strict"
    for i, alpha in enumerate(src.weights):
        images = [f.apply(v) for v in src.canonical_basis(i)]
        for j, beta in enumerate(dst.weights):
            triggered = alpha > beta if strict else alpha >= beta
            if not triggered:
                continue
            target = dst.canonical_basis(j + 1) if j + 1 < dst.length else ()
            if not target:
                if any(any(c for c in img) for img in images):
                    return False
            elif not _span_contains(field, target, images):
                return False
    return True
