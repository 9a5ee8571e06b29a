"""Polynomial isomorphisms from nilpotent to unipotent matrices.

The family ``X -> I + a_1 X + a_2 X^2 + ...`` with ``a_1`` invertible is a
conjugation-equivariant bijection between nilpotent and unipotent matrices.
Its differential at zero is computed honestly over dual numbers: tangent maps
come out as the eps part of evaluating the series on ``eps * Y``.
"""

from __future__ import annotations

from dataclasses import dataclass
from random import Random
from typing import Callable, Sequence

from .fields import Field, FieldScalar
from .gln import JordanType, is_nilpotent, jordan_nilpotent, jordan_type_of_nilpotent
from .linalg import DenseMatrix, DualMatrix, Subspace, vec


@dataclass(frozen=True)
class SpringerCoeffs:
    """Series coefficients ``a_1, a_2, ...`` with ``a_1`` invertible."""

    coeffs: tuple[FieldScalar, ...]

    def __post_init__(self) -> None:
        if not self.coeffs:
            raise ValueError("at least one coefficient required")
        if any(c.char != self.coeffs[0].char for c in self.coeffs):
            raise ValueError("coefficients of mixed characteristic")
        if self.coeffs[0].is_zero():
            raise ValueError("leading coefficient must be invertible")

    @classmethod
    def from_raw(cls, field: Field, values: Sequence) -> "SpringerCoeffs":
        return cls(tuple(field.scalar(v) for v in values))

    @property
    def field(self) -> Field:
        return self.coeffs[0].field

    @property
    def a1(self) -> FieldScalar:
        return self.coeffs[0]


def springer_apply(c: SpringerCoeffs, x: DenseMatrix) -> DenseMatrix:
    """``I + sum a_i x^i``; nilpotent input, unipotent output."""
    if not is_nilpotent(x):
        raise ValueError("input is not nilpotent")
    out = DenseMatrix.identity(x.field, x.rows)
    power = DenseMatrix.identity(x.field, x.rows)
    for a in c.coeffs:
        power = power @ x
        if power.is_zero():
            break
        out = out + power.scale(a.value)
    return out


def springer_invert(c: SpringerCoeffs, u: DenseMatrix) -> DenseMatrix:
    """The unique nilpotent ``x`` with ``springer_apply(c, x) == u``.

    Solved by a fixed-point iteration that is exact after ``n`` rounds: all
    iterates are polynomials in ``u - I``, and each round corrects one more
    order of the nilpotent filtration.
    """
    n = u.rows
    nil = u - DenseMatrix.identity(u.field, n)
    if not is_nilpotent(nil):
        raise ValueError("input is not unipotent")
    a1_inv = c.a1.inverse().value
    x = DenseMatrix.zeros(u.field, n, n)
    for _ in range(n):
        correction = nil
        power = x
        for a in c.coeffs[1:]:
            power = power @ x
            if power.is_zero():
                break
            correction = correction - power.scale(a.value)
        x = correction.scale(a1_inv)
    if springer_apply(c, x) != u:
        raise RuntimeError("inversion failed to round-trip")
    return x


def random_invertible(field: Field, n: int, rng: Random) -> DenseMatrix:
    while True:
        m = DenseMatrix.from_rows(field, [[field.rand(rng) for _ in range(n)] for _ in range(n)])
        if m.rank() == n:
            return m


def invert_matrix(m: DenseMatrix) -> DenseMatrix:
    f = m.field
    n = m.rows
    aug = [list(r) + [f.one() if i == j else f.zero() for j in range(n)] for i, r in enumerate(m.data)]
    from .linalg import _rref

    reduced, pivots = _rref(f, aug, 2 * n)
    if pivots[:n] != tuple(range(n)):
        raise ValueError("matrix is singular")
    return DenseMatrix.from_rows(f, [row[n:] for row in reduced[:n]])


def random_nilpotent(field: Field, n: int, rng: Random) -> DenseMatrix:
    strict = [
        [field.rand(rng) if j > i else field.zero() for j in range(n)]
        for i in range(n)
    ]
    g = random_invertible(field, n, rng)
    return g @ DenseMatrix.from_rows(field, strict) @ invert_matrix(g)


def equivariance_check(
    c: SpringerCoeffs,
    samples: int,
    n: int,
    field: Field,
    seed: int = 0,
    map_fn: Callable[[DenseMatrix], DenseMatrix] | None = None,
) -> bool:
    """Exact conjugation-equivariance on random (g, nilpotent) pairs."""
    if map_fn is None:
        map_fn = lambda m: springer_apply(c, m)
    rng = Random(seed)
    for _ in range(samples):
        g = random_invertible(field, n, rng)
        g_inv = invert_matrix(g)
        x = random_nilpotent(field, n, rng)
        if map_fn(g @ x @ g_inv) != g @ map_fn(x) @ g_inv:
            return False
    return True


def _dual_series(c: SpringerCoeffs, m: DualMatrix) -> DualMatrix:
    out = DualMatrix.identity(m.value.field, m.value.rows)
    power = DualMatrix.identity(m.value.field, m.value.rows)
    for a in c.coeffs:
        power = power @ m
        out = out + power.scale(a.value)
    return out


def tangent_matrix_at_zero(c: SpringerCoeffs, x_reg: DenseMatrix) -> DenseMatrix:
    """Differential at zero of the map restricted to the centralizer radical.

    For a regular nilpotent ``x`` the centralizer's unipotent-radical Lie
    algebra has basis ``x, x^2, ..., x^(n-1)``; each basis vector ``Y`` is
    pushed through the series over dual numbers as ``eps * Y`` and the eps
    part of the result, expanded in the same basis, gives one column.  The
    result is ``a_1`` times the identity.
    """
    n = x_reg.rows
    if jordan_type_of_nilpotent(x_reg) != JordanType((n,)):
        raise ValueError("tangent computation requires a regular nilpotent")
    field = x_reg.field
    basis = []
    power = DenseMatrix.identity(field, n)
    for _ in range(n - 1):
        power = power @ x_reg
        basis.append(power)
    span = Subspace.from_vectors(field, n * n, [vec(b) for b in basis])
    cols = []
    for y in basis:
        image = _dual_series(c, DualMatrix.epsilon_times(y)).deriv
        coords = span.coordinates_of(vec(image))
        if coords is None:
            raise RuntimeError("tangent image left the radical subalgebra")
        # coordinates are against the canonical RREF basis; re-express in powers
        cols.append(coords)
    # span.basis equals the power basis up to the canonical reduction; map back
    change = DenseMatrix.from_rows(field, [span.coordinates_of(vec(b)) for b in basis]).transpose()
    coord_mat = DenseMatrix.from_rows(field, cols).transpose()
    return invert_matrix(change) @ coord_mat


def curve_tangent(c: SpringerCoeffs, x: DenseMatrix) -> DenseMatrix:
    """Derivative at zero of ``t -> series(t x)``, computed at ``t = eps``."""
    if not is_nilpotent(x):
        raise ValueError("input is not nilpotent")
    return _dual_series(c, DualMatrix.epsilon_times(x)).deriv


@dataclass(frozen=True)
class ProductTangentReport:
    """Diagonal scalars of the tangent map on a two-factor product."""

    scalars: tuple
    is_scalar_multiple: bool


def product_tangent_scalars(n: int, m: int, alpha, beta, field: Field) -> ProductTangentReport:
    """Tangent scalars for ``(X, Y) -> (I + alpha X, I + beta Y)`` on gl_n x gl_m.

    Each factor contributes its leading coefficient with multiplicity
    (factor size - 1); the combined map is a scalar multiple of the identity
    exactly when the two scalars agree.
    """
    if n < 2 or m < 2:
        raise ValueError("factors must have size >= 2")
    ca = SpringerCoeffs.from_raw(field, [alpha])
    cb = SpringerCoeffs.from_raw(field, [beta])
    xa = jordan_nilpotent(JordanType((n,)), field)
    xb = jordan_nilpotent(JordanType((m,)), field)
    ta = tangent_matrix_at_zero(ca, xa)
    tb = tangent_matrix_at_zero(cb, xb)
    scalars = tuple(ta.data[i][i] for i in range(n - 1)) + tuple(
        tb.data[i][i] for i in range(m - 1)
    )
    return ProductTangentReport(tuple(sorted(scalars)), len(set(scalars)) == 1)


def regular_locus_check(n: int, field: Field, samples: int, seed: int = 0) -> bool:
    """Combinations ``sum a_i x^i`` are regular nilpotent iff ``a_1 != 0``.

    Random coefficient draws plus forced ``a_1 = 0`` draws; regularity is
    decided by the exact rank sequence.
    """
    rng = Random(seed)
    x = jordan_nilpotent(JordanType((n,)), field)
    powers = []
    power = DenseMatrix.identity(field, n)
    for _ in range(n - 1):
        power = power @ x
        powers.append(power)
    regular = JordanType((n,))
    for trial in range(samples):
        coeffs = [field.rand(rng) for _ in range(n - 1)]
        if trial % 3 == 2:
            coeffs[0] = field.zero()
        elif coeffs[0] == 0:
            coeffs[0] = field.one()
        y = DenseMatrix.zeros(field, n, n)
        for a, p in zip(coeffs, powers):
            y = y + p.scale(a)
        is_regular = jordan_type_of_nilpotent(y) == regular
        if is_regular != (coeffs[0] != 0):
            return False
    return True
