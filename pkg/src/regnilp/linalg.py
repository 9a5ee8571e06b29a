"""Dense exact linear algebra over F_p and Q.

Everything here is deterministic: Gaussian elimination always picks the first
nonzero entry in column order, so reduced row-echelon forms - and hence
:class:`Subspace` values - are canonical and reproducible across runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .fields import CharacteristicMismatch, Field, FieldScalar, Raw

Vector = tuple


def _check_same_field(a: Field, b: Field) -> None:
    if a != b:
        raise CharacteristicMismatch(f"field mismatch: {a} vs {b}")


@dataclass(frozen=True, eq=False)
class DenseMatrix:
    """Immutable dense matrix with raw entries over a single field."""

    field: Field
    rows: int
    cols: int
    data: tuple  # tuple of row tuples, raw values

    # -- constructors ---------------------------------------------------------

    @classmethod
    def from_rows(cls, field: Field, rows: Iterable[Iterable], cols: int | None = None) -> "DenseMatrix":
        data = []
        for row in rows:
            out = []
            for v in row:
                if isinstance(v, FieldScalar):
                    if v.char != field.p:
                        raise CharacteristicMismatch(
                            f"entry has characteristic {v.char}, matrix over {field}"
                        )
                    out.append(v.value)
                else:
                    out.append(field.coerce(v))
            data.append(tuple(out))
        if data:
            cols = len(data[0])
            if any(len(r) != cols for r in data):
                raise ValueError("ragged rows")
        elif cols is None:
            raise ValueError("column count required for a zero-row matrix")
        return cls(field, len(data), cols, tuple(data))

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "DenseMatrix":
        z = field.zero()
        return cls(field, rows, cols, tuple((z,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, field: Field, n: int) -> "DenseMatrix":
        z, o = field.zero(), field.one()
        return cls(field, n, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    # -- access ---------------------------------------------------------------

    def entry(self, i: int, j: int) -> FieldScalar:
        return FieldScalar(self.data[i][j], self.field.p)

    def row(self, i: int) -> Vector:
        return self.data[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.data)

    def is_zero(self) -> bool:
        return all(all(v == 0 for v in r) for r in self.data)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __eq__(self, other) -> bool:
        if not isinstance(other, DenseMatrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.field, self.data, self.cols))

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other: "DenseMatrix") -> "DenseMatrix":
        _check_same_field(self.field, other.field)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        f = self.field
        return DenseMatrix(
            f, self.rows, self.cols,
            tuple(tuple(f.add(a, b) for a, b in zip(ra, rb)) for ra, rb in zip(self.data, other.data)),
        )

    def __sub__(self, other: "DenseMatrix") -> "DenseMatrix":
        _check_same_field(self.field, other.field)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        f = self.field
        return DenseMatrix(
            f, self.rows, self.cols,
            tuple(tuple(f.sub(a, b) for a, b in zip(ra, rb)) for ra, rb in zip(self.data, other.data)),
        )

    def __neg__(self) -> "DenseMatrix":
        f = self.field
        return DenseMatrix(f, self.rows, self.cols, tuple(tuple(f.neg(v) for v in r) for r in self.data))

    def scale(self, c: Raw) -> "DenseMatrix":
        f = self.field
        c = f.coerce(c)
        return DenseMatrix(f, self.rows, self.cols, tuple(tuple(f.mul(c, v) for v in r) for r in self.data))

    def __matmul__(self, other: "DenseMatrix") -> "DenseMatrix":
        _check_same_field(self.field, other.field)
        if self.cols != other.rows:
            raise ValueError("shape mismatch for product")
        p = self.field.p
        bt = tuple(zip(*other.data)) if other.data else ((),) * other.cols
        out = []
        for r in self.data:
            if p:
                out.append(tuple(sum(a * b for a, b in zip(r, col)) % p for col in bt))
            else:
                out.append(tuple(sum((a * b for a, b in zip(r, col)), self.field.zero()) for col in bt))
        return DenseMatrix(self.field, self.rows, other.cols, tuple(out))

    __mul__ = __matmul__

    def __pow__(self, e: int) -> "DenseMatrix":
        if not self.is_square():
            raise ValueError("power of a non-square matrix")
        if e < 0:
            raise ValueError("negative matrix power")
        out = DenseMatrix.identity(self.field, self.rows)
        base = self
        while e:
            if e & 1:
                out = out @ base
            base = base @ base
            e >>= 1
        return out

    def transpose(self) -> "DenseMatrix":
        return DenseMatrix(self.field, self.cols, self.rows, tuple(zip(*self.data)) if self.data else ())

    def apply(self, vec: Sequence[Raw]) -> Vector:
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        f = self.field
        if f.p:
            return tuple(sum(a * b for a, b in zip(r, vec)) % f.p for r in self.data)
        return tuple(sum((a * b for a, b in zip(r, vec)), f.zero()) for r in self.data)

    # -- elimination ----------------------------------------------------------

    def rref(self) -> tuple["DenseMatrix", tuple[int, ...]]:
        rows, pivots = _rref(self.field, [list(r) for r in self.data], self.cols)
        return DenseMatrix(self.field, len(rows), self.cols, tuple(tuple(r) for r in rows)), pivots

    def rank(self) -> int:
        _, pivots = _rref(self.field, [list(r) for r in self.data], self.cols)
        return len(pivots)

    def nullspace(self) -> "Subspace":
        reduced, pivots = _rref(self.field, [list(r) for r in self.data], self.cols)
        f = self.field
        free = [j for j in range(self.cols) if j not in pivots]
        vectors = []
        for fc in free:
            v = [f.zero()] * self.cols
            v[fc] = f.one()
            for i, pc in enumerate(pivots):
                v[pc] = f.neg(reduced[i][fc])
            vectors.append(v)
        return Subspace.from_vectors(f, self.cols, vectors)


def _rref(field: Field, mat: list[list], cols: int) -> tuple[list[list], tuple[int, ...]]:
    """In-place reduced row echelon form; first-nonzero pivoting."""
    pivots: list[int] = []
    r = 0
    nrows = len(mat)
    for c in range(cols):
        pivot = next((i for i in range(r, nrows) if mat[i][c] != 0), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = field.inv(mat[r][c])
        if inv != 1:
            mat[r] = [field.mul(inv, v) for v in mat[r]]
        row_r = mat[r]
        for i in range(nrows):
            if i != r and mat[i][c] != 0:
                factor = mat[i][c]
                mat[i] = [field.sub(a, field.mul(factor, b)) for a, b in zip(mat[i], row_r)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    reduced = [row for row in mat if any(v != 0 for v in row)]
    return reduced, tuple(pivots)


def rank(m: DenseMatrix) -> int:
    return m.rank()


def nullspace(m: DenseMatrix) -> "Subspace":
    return m.nullspace()


@dataclass(frozen=True)
class Subspace:
    """A subspace of ``F^n`` held as a canonical reduced row-echelon basis.

    Two subspaces are equal iff their canonical bases coincide, so equality
    of results is decidable by ``==``.
    """

    field: Field
    ambient_dim: int
    basis: tuple  # tuple of row tuples, RREF
    pivots: tuple[int, ...]

    @classmethod
    def from_vectors(cls, field: Field, ambient_dim: int, vectors: Iterable[Iterable]) -> "Subspace":
        raw = [[field.coerce(v) for v in vec] for vec in vectors]
        for vec in raw:
            if len(vec) != ambient_dim:
                raise ValueError("vector length mismatch")
        reduced, pivots = _rref(field, raw, ambient_dim)
        return cls(field, ambient_dim, tuple(tuple(r) for r in reduced), pivots)

    @classmethod
    def full(cls, field: Field, ambient_dim: int) -> "Subspace":
        eye = DenseMatrix.identity(field, ambient_dim)
        return cls(field, ambient_dim, eye.data, tuple(range(ambient_dim)))

    @classmethod
    def zero(cls, field: Field, ambient_dim: int) -> "Subspace":
        return cls(field, ambient_dim, (), ())

    @property
    def dim(self) -> int:
        return len(self.basis)

    def residual(self, vec: Sequence[Raw]) -> Vector:
        """Remainder of ``vec`` after reduction by the basis; zero iff contained."""
        f = self.field
        v = [f.coerce(x) for x in vec]
        for row, pc in zip(self.basis, self.pivots):
            c = v[pc]
            if c != 0:
                v = [f.sub(a, f.mul(c, b)) for a, b in zip(v, row)]
        return tuple(v)

    def contains(self, vec: Sequence[Raw]) -> bool:
        return all(v == 0 for v in self.residual(vec))

    def coordinates_of(self, vec: Sequence[Raw]) -> Vector | None:
        """Coefficients of ``vec`` in the canonical basis, or None if outside."""
        f = self.field
        v = [f.coerce(x) for x in vec]
        coords = []
        for row, pc in zip(self.basis, self.pivots):
            c = v[pc]
            coords.append(c)
            if c != 0:
                v = [f.sub(a, f.mul(c, b)) for a, b in zip(v, row)]
        if any(x != 0 for x in v):
            return None
        return tuple(coords)

    def is_subspace_of(self, other: "Subspace") -> bool:
        return all(other.contains(row) for row in self.basis)

    def sum(self, other: "Subspace") -> "Subspace":
        _check_same_field(self.field, other.field)
        return Subspace.from_vectors(self.field, self.ambient_dim, list(self.basis) + list(other.basis))

    def intersection(self, other: "Subspace") -> "Subspace":
        _check_same_field(self.field, other.field)
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        if not self.basis or not other.basis:
            return Subspace.zero(self.field, self.ambient_dim)
        # Solve a*B1 = b*B2: kernel of the stacked coefficient map.
        d1, d2 = self.dim, other.dim
        f = self.field
        rows = []
        for c in range(self.ambient_dim):
            rows.append(
                tuple(self.basis[i][c] for i in range(d1))
                + tuple(f.neg(other.basis[j][c]) for j in range(d2))
            )
        ker = DenseMatrix.from_rows(f, rows).nullspace()
        vectors = []
        for coeff in ker.basis:
            a = coeff[:d1]
            vec = [f.zero()] * self.ambient_dim
            for ci, row in zip(a, self.basis):
                if ci != 0:
                    vec = [f.add(x, f.mul(ci, y)) for x, y in zip(vec, row)]
            vectors.append(vec)
        return Subspace.from_vectors(f, self.ambient_dim, vectors)

    def coordinate_intersection(self, indices: Sequence[int]) -> "Subspace":
        """Intersection with the coordinate subspace supported on ``indices``."""
        allowed = set(indices)
        outside = [c for c in range(self.ambient_dim) if c not in allowed]
        f = self.field
        if not self.basis:
            return self
        rows = [tuple(row[c] for row in self.basis) for c in outside]
        if rows:
            ker = DenseMatrix.from_rows(f, rows).nullspace()
            coeffs = ker.basis
        else:
            coeffs = DenseMatrix.identity(f, self.dim).data
        vectors = []
        for coeff in coeffs:
            vec = [f.zero()] * self.ambient_dim
            for ci, row in zip(coeff, self.basis):
                if ci != 0:
                    vec = [f.add(x, f.mul(ci, y)) for x, y in zip(vec, row)]
            vectors.append(vec)
        return Subspace.from_vectors(f, self.ambient_dim, vectors)

    def restricted_nullspace(self, m: DenseMatrix) -> "Subspace":
        """The subspace ``{v in self : m @ v = 0}``."""
        _check_same_field(self.field, m.field)
        if m.cols != self.ambient_dim:
            raise ValueError("operator shape mismatch")
        if not self.basis:
            return self
        f = self.field
        images = [m.apply(row) for row in self.basis]
        rows = [tuple(img[i] for img in images) for i in range(m.rows)]
        ker = DenseMatrix.from_rows(f, rows, cols=self.dim).nullspace()
        vectors = []
        for coeff in ker.basis:
            vec = [f.zero()] * self.ambient_dim
            for ci, row in zip(coeff, self.basis):
                if ci != 0:
                    vec = [f.add(x, f.mul(ci, y)) for x, y in zip(vec, row)]
            vectors.append(vec)
        return Subspace.from_vectors(f, self.ambient_dim, vectors)


@dataclass(frozen=True)
class DualMatrix:
    """Matrix over the dual numbers, held as a pair ``value + eps * deriv``."""

    value: DenseMatrix
    deriv: DenseMatrix

    def __post_init__(self) -> None:
        _check_same_field(self.value.field, self.deriv.field)
        if (self.value.rows, self.value.cols) != (self.deriv.rows, self.deriv.cols):
            raise ValueError("shape mismatch between value and eps parts")

    @classmethod
    def constant(cls, m: DenseMatrix) -> "DualMatrix":
        return cls(m, DenseMatrix.zeros(m.field, m.rows, m.cols))

    @classmethod
    def epsilon_times(cls, m: DenseMatrix) -> "DualMatrix":
        return cls(DenseMatrix.zeros(m.field, m.rows, m.cols), m)

    @classmethod
    def identity(cls, field: Field, n: int) -> "DualMatrix":
        return cls.constant(DenseMatrix.identity(field, n))

    def __add__(self, other: "DualMatrix") -> "DualMatrix":
        return DualMatrix(self.value + other.value, self.deriv + other.deriv)

    def __sub__(self, other: "DualMatrix") -> "DualMatrix":
        return DualMatrix(self.value - other.value, self.deriv - other.deriv)

    def __matmul__(self, other: "DualMatrix") -> "DualMatrix":
        return DualMatrix(
            self.value @ other.value,
            self.value @ other.deriv + self.deriv @ other.value,
        )

    __mul__ = __matmul__

    def scale(self, c: Raw) -> "DualMatrix":
        return DualMatrix(self.value.scale(c), self.deriv.scale(c))

    def __pow__(self, e: int) -> "DualMatrix":
        out = DualMatrix.identity(self.value.field, self.value.rows)
        base = self
        while e:
            if e & 1:
                out = out @ base
            base = base @ base
            e >>= 1
        return out


def vec(m: DenseMatrix) -> Vector:
    """Row-major flattening."""
    return tuple(v for row in m.data for v in row)


def unvec(field: Field, n: int, flat: Sequence[Raw]) -> DenseMatrix:
    if len(flat) != n * n:
        raise ValueError("length is not n*n")
    rows = [flat[i * n:(i + 1) * n] for i in range(n)]
    return DenseMatrix.from_rows(field, rows)


def solve(m: DenseMatrix, rhs: Sequence[Raw]) -> Vector | None:
    """One solution of ``m x = rhs``, or None if inconsistent."""
    f = m.field
    aug = [list(r) + [f.coerce(b)] for r, b in zip(m.data, rhs)]
    reduced, pivots = _rref(f, aug, m.cols + 1)
    if m.cols in pivots:
        return None
    x = [f.zero()] * m.cols
    for row, pc in zip(reduced, pivots):
        x[pc] = row[-1]
    return tuple(x)
