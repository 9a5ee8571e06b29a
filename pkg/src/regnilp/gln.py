"""Nilpotent matrix laboratory: Jordan types, commutants, bicommutants.

For a nilpotent ``n x n`` matrix the commutant (everything commuting with it)
and the bicommutant (everything commuting with the commutant) are exact
nullspace computations on the ``n^2``-dimensional matrix space.  The
bicommutant is the center of the commutant algebra, and comparing its
dimension against the dual-number tangent space of the commutant's unit group
makes center-of-centralizer smoothness a finite check.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .fields import Field
from .linalg import DenseMatrix, Subspace, unvec, vec


@dataclass(frozen=True)
class JordanType:
    """Partition of n indexing a nilpotent conjugacy class."""

    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.parts or any(p <= 0 for p in self.parts):
            raise ValueError("parts must be positive")
        if any(a < b for a, b in zip(self.parts, self.parts[1:])):
            raise ValueError("parts must be nonincreasing")

    @property
    def n(self) -> int:
        return sum(self.parts)

    def conjugate(self) -> tuple[int, ...]:
        return tuple(
            sum(1 for p in self.parts if p > i) for i in range(self.parts[0])
        )

    def commutant_dimension(self) -> int:
        """``sum (2i-1) * part_i`` over the nonincreasing parts."""
        return sum((2 * i + 1) * p for i, p in enumerate(self.parts))


def partitions(n: int) -> Iterator[JordanType]:
    """All partitions of n, nonincreasing parts, lexicographically descending."""

    def rec(remaining: int, cap: int) -> Iterator[tuple[int, ...]]:
        if remaining == 0:
            yield ()
            return
        for first in range(min(cap, remaining), 0, -1):
            for rest in rec(remaining - first, first):
                yield (first,) + rest

    for parts in rec(n, n):
        yield JordanType(parts)


def jordan_nilpotent(jt: JordanType, field: Field) -> DenseMatrix:
    """Block-diagonal nilpotent with superdiagonal ones per part."""
    n = jt.n
    z, o = field.zero(), field.one()
    rows = [[z] * n for _ in range(n)]
    offset = 0
    for part in jt.parts:
        for i in range(part - 1):
            rows[offset + i][offset + i + 1] = o
        offset += part
    return DenseMatrix.from_rows(field, rows)


def is_nilpotent(x: DenseMatrix) -> bool:
    return x.is_square() and (x ** x.rows).is_zero()


def nilpotency_index(x: DenseMatrix) -> int:
    """Least k with ``x**k == 0``; equals the degree of the minimal polynomial."""
    if not is_nilpotent(x):
        raise ValueError("matrix is not nilpotent")
    power = DenseMatrix.identity(x.field, x.rows)
    for k in range(x.rows + 1):
        if power.is_zero():
            return k
        power = power @ x
    return x.rows


def jordan_type_of_nilpotent(x: DenseMatrix) -> JordanType:
    """Jordan type from the exact rank sequence ``rank(x**k)``."""
    if not is_nilpotent(x):
        raise ValueError("matrix is not nilpotent")
    n = x.rows
    ranks = [n]
    power = DenseMatrix.identity(x.field, n)
    while ranks[-1] > 0:
        power = power @ x
        ranks.append(power.rank())
    # number of blocks of size >= k is rank(x^(k-1)) - rank(x^k)
    sizes: list[int] = []
    for k in range(1, len(ranks)):
        count_ge = ranks[k - 1] - ranks[k]
        sizes.append(count_ge)
    parts: list[int] = []
    for k, count_ge in enumerate(sizes, start=1):
        nxt = sizes[k] if k < len(sizes) else 0
        parts.extend([k] * (count_ge - nxt))
    return JordanType(tuple(sorted(parts, reverse=True)))


def _commutation_operator(x: DenseMatrix) -> DenseMatrix:
    """Matrix of ``M -> M X - X M`` on row-major vectorized matrices."""
    n = x.rows
    f = x.field
    z = f.zero()
    rows = []
    for i in range(n):
        for j in range(n):
            row = [z] * (n * n)
            # (MX)_{ij} = sum_b M_{ib} X_{bj};  (XM)_{ij} = sum_a X_{ia} M_{aj}
            for b in range(n):
                row[i * n + b] = f.add(row[i * n + b], x.data[b][j])
            for a in range(n):
                row[a * n + j] = f.sub(row[a * n + j], x.data[i][a])
            rows.append(tuple(row))
    return DenseMatrix.from_rows(f, rows)


def commutant(x: DenseMatrix) -> list[DenseMatrix]:
    """Canonical basis of ``{M : MX = XM}``.

    The dimension is cross-checked against the partition formula
    ``sum (2i-1) lambda_i`` for nilpotent input.
    """
    if not x.is_square():
        raise ValueError("square matrix required")
    ker = _commutation_operator(x).nullspace()
    basis = [unvec(x.field, x.rows, v) for v in ker.basis]
    if is_nilpotent(x):
        expected = jordan_type_of_nilpotent(x).commutant_dimension()
        if len(basis) != expected:
            raise RuntimeError(
                f"commutant dimension {len(basis)} != partition formula {expected}"
            )
    return basis


def commutant_of_all(mats: Sequence[DenseMatrix]) -> list[DenseMatrix]:
    """Canonical basis of the joint commutant of several matrices."""
    if not mats:
        raise ValueError("at least one matrix required")
    n = mats[0].rows
    f = mats[0].field
    rows: list[tuple] = []
    for m in mats:
        rows.extend(_commutation_operator(m).data)
    ker = DenseMatrix.from_rows(f, rows, cols=n * n).nullspace()
    return [unvec(f, n, v) for v in ker.basis]


def bicommutant(x: DenseMatrix) -> list[DenseMatrix]:
    """Everything commuting with the commutant of ``x``; equals ``K[x]``."""
    return commutant_of_all(commutant(x))


def matrix_span(mats: Sequence[DenseMatrix]) -> Subspace:
    if not mats:
        raise ValueError("at least one matrix required")
    f = mats[0].field
    n = mats[0].rows
    return Subspace.from_vectors(f, n * n, [vec(m) for m in mats])


def power_span(x: DenseMatrix, degree: int) -> Subspace:
    """Span of ``I, X, ..., X**(degree-1)``."""
    mats = []
    power = DenseMatrix.identity(x.field, x.rows)
    for _ in range(degree):
        mats.append(power)
        power = power @ x
    return matrix_span(mats)


@dataclass(frozen=True)
class CenterSmoothnessReport:
    """Three views of the center of a nilpotent matrix centralizer."""

    partition: tuple[int, ...]
    characteristic: int
    dim_algebra_center: int
    dim_lie_center_generic: int
    min_poly_degree: int
    contains_x: bool

    @property
    def smooth_verdict(self) -> bool:
        return self.dim_algebra_center == self.dim_lie_center_generic


def center_smoothness_report(jt: JordanType, field: Field) -> CenterSmoothnessReport:
    """Compare the bicommutant against the generic tangent space of the center.

    ``dim_algebra_center`` is the dimension of the bicommutant (the center of
    the commutant algebra, which is also the dimension of the centralizer's
    center as a variety, being the unit group of that algebra);
    ``dim_lie_center_generic`` is the dimension of the fixed-point tangent
    space computed from conjugation at a generic point.  Equality is the
    smoothness statement made literal.
    """
    from .families import lie_center_generic, unit_group_family

    x = jordan_nilpotent(jt, field)
    comm = commutant(x)
    bi = bicommutant(x)
    fam = unit_group_family(comm, name=f"units-of-commutant-{jt.parts}")
    lie_z = lie_center_generic(fam)
    span = matrix_span(bi)
    return CenterSmoothnessReport(
        partition=jt.parts,
        characteristic=field.p,
        dim_algebra_center=len(bi),
        dim_lie_center_generic=lie_z.dim,
        min_poly_degree=nilpotency_index(x),
        contains_x=span.contains(vec(x)),
    )
