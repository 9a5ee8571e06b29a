"""Parametrized matrix group families and their generic-point invariants.

A :class:`GroupFamily` is a matrix scheme given by a generic element whose
entries are polynomials in named parameters.  Its Lie algebra is computed
honestly through dual numbers (evaluate at ``identity + eps * direction``),
and the tangent space of its center is cut out by imposing commutation with
the generic element and clearing every parameter-monomial coefficient.  The
reduced center is handled by a small exact solver for the linear and pure
Frobenius-power conditions such families produce.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Sequence

from .fields import DualScalar, Field, GF, Raw
from .genpoly import GenericPoly, generic_linear_extract, poly_mat_mul, poly_mat_sub
from .linalg import DenseMatrix, Subspace, solve, vec


class NotInvertible(ValueError):
    """The generic element is singular at the family's base point."""


class UnsupportedCenterSystem(ValueError):
    """The reduced-center conditions fall outside the decidable class."""


@dataclass(frozen=True, eq=False)
class GroupFamily:
    """A matrix group scheme presented by a parametrized generic element."""

    name: str
    parameter_names: tuple[str, ...]
    generic_element: tuple  # n x n grid of GenericPoly over parameter_names
    unit_constraints: tuple  # GenericPolys whose nonvanishing defines the family
    identity_params: dict  # parameter name -> raw value of the identity element
    field: Field

    @property
    def size(self) -> int:
        return len(self.generic_element)

    def at(self, values: dict) -> DenseMatrix:
        """Specialize the generic element at exact parameter values."""
        rows = []
        for row in self.generic_element:
            out = []
            for poly in row:
                v = poly.evaluate({k: self.field.scalar(x) for k, x in values.items()})
                out.append(v.value)
            rows.append(out)
        return DenseMatrix.from_rows(self.field, rows)

    def identity_matrix(self) -> DenseMatrix:
        return self.at(self.identity_params)


def _det_poly(entries: tuple, field: Field, variables: tuple[str, ...]) -> GenericPoly:
    """Leibniz determinant; meant for small n."""
    n = len(entries)
    total = GenericPoly.zero(field, variables)
    for perm in permutations(range(n)):
        sign = 1
        seen = list(perm)
        for i in range(n):
            for j in range(i + 1, n):
                if seen[i] > seen[j]:
                    sign = -sign
        term = GenericPoly.constant(field, variables, sign)
        for i in range(n):
            term = term * entries[i][perm[i]]
        total = total + term
    return total


def gl_family(n: int, field: Field) -> GroupFamily:
    """All of GL_n: one parameter per matrix entry."""
    names = tuple(f"x{i}{j}" for i in range(n) for j in range(n))
    entries = tuple(
        tuple(GenericPoly.variable(field, names, f"x{i}{j}") for j in range(n))
        for i in range(n)
    )
    constraints = (_det_poly(entries, field, names),) if n <= 4 else ()
    identity = {f"x{i}{j}": field.coerce(1 if i == j else 0) for i in range(n) for j in range(n)}
    return GroupFamily(f"GL{n}", names, entries, constraints, identity, field)


def frobenius_twist_family(p: int) -> GroupFamily:
    """The 3x3 family ``diag(t, t^p, 1)`` with a shear: entries t, t^p, s.

    Its center has a one-dimensional tangent space but no points besides the
    identity, so the center scheme is not smooth.
    """
    field = GF(p)
    names = ("t", "s")
    t = GenericPoly.variable(field, names, "t")
    tp = GenericPoly.variable(field, names, "t", power=p)
    s = GenericPoly.variable(field, names, "s")
    zero = GenericPoly.zero(field, names)
    one = GenericPoly.constant(field, names, 1)
    entries = (
        (t, zero, zero),
        (zero, tp, s),
        (zero, zero, one),
    )
    identity = {"t": field.coerce(1), "s": field.coerce(0)}
    return GroupFamily(f"frobenius-twist-p{p}", names, entries, (t,), identity, field)


def unit_group_family(basis: Sequence[DenseMatrix], name: str = "unit-group") -> GroupFamily:
    """Unit group of the matrix algebra spanned by ``basis``.

    The identity must lie in the span; its coordinates become the family's
    base point.
    """
    if not basis:
        raise ValueError("empty algebra basis")
    field = basis[0].field
    n = basis[0].rows
    d = len(basis)
    names = tuple(f"c{k}" for k in range(d))
    entries = []
    for i in range(n):
        row = []
        for j in range(n):
            poly = GenericPoly.zero(field, names)
            for k, b in enumerate(basis):
                if b.data[i][j] != 0:
                    poly = poly + GenericPoly.variable(field, names, names[k]).scale(b.data[i][j])
            row.append(poly)
        entries.append(tuple(row))
    coords_matrix = DenseMatrix.from_rows(field, [vec(b) for b in basis]).transpose()
    coords = solve(coords_matrix, vec(DenseMatrix.identity(field, n)))
    if coords is None:
        raise ValueError("identity is not in the span of the algebra basis")
    identity = {names[k]: coords[k] for k in range(d)}
    return GroupFamily(name, names, tuple(entries), (), identity, field)


def family_lie_algebra(fam: GroupFamily) -> Subspace:
    """Tangent space at the identity, via dual numbers.

    For each parameter direction the generic element is evaluated at
    ``identity + eps * direction`` over the dual numbers; the eps parts span
    the Lie algebra inside the n x n matrix space.
    """
    field = fam.field
    n = fam.size
    vectors = []
    for k, pname in enumerate(fam.parameter_names):
        assignment = {
            q: DualScalar.of(field, fam.identity_params[q], 1 if q == pname else 0)
            for q in fam.parameter_names
        }
        flat = []
        for row in fam.generic_element:
            for poly in row:
                val = poly.evaluate(assignment, lift=lambda c: DualScalar.constant(field, c))
                flat.append(val.b.value)
        vectors.append(flat)
    return Subspace.from_vectors(field, n * n, vectors)


def _reject_if_singular(fam: GroupFamily) -> None:
    ident = fam.identity_matrix()
    if ident.rank() < fam.size:
        raise NotInvertible(
            f"generic element of {fam.name} is singular at the base point"
        )


def lie_center_generic(fam: GroupFamily) -> Subspace:
    """Fixed points of the adjoint action at a generic point.

    Unknown ``Y`` ranges over the family's Lie algebra; the commutation
    ``g Y = Y g`` with ``g`` generic (denominators cleared by multiplying
    through by ``g``) is split into one exact linear condition per parameter
    monomial.  The solution is the tangent space of the center scheme, valid
    for every parameter specialization.
    """
    _reject_if_singular(fam)
    field = fam.field
    n = fam.size
    lie = family_lie_algebra(fam)
    d = lie.dim
    if d == 0:
        return Subspace.zero(field, n * n)
    unknowns = tuple(f"y{k}" for k in range(d))
    if set(unknowns) & set(fam.parameter_names):
        raise ValueError("parameter names collide with unknown names")
    allvars = fam.parameter_names + unknowns
    g = tuple(tuple(poly.extend(allvars) for poly in row) for row in fam.generic_element)
    y_entries = []
    for i in range(n):
        row = []
        for j in range(n):
            poly = GenericPoly.zero(field, allvars)
            for k in range(d):
                c = lie.basis[k][i * n + j]
                if c != 0:
                    poly = poly + GenericPoly.variable(field, allvars, unknowns[k]).scale(c)
            row.append(poly)
        y_entries.append(tuple(row))
    y = tuple(y_entries)
    conditions = [
        poly
        for row in poly_mat_sub(poly_mat_mul(g, y), poly_mat_mul(y, g))
        for poly in row
    ]
    system = generic_linear_extract(conditions, unknowns)
    coeff_kernel = system.nullspace()
    vectors = []
    for coeff in coeff_kernel.basis:
        flat = [field.zero()] * (n * n)
        for ck, basis_vec in zip(coeff, lie.basis):
            if ck != 0:
                flat = [field.add(a, field.mul(ck, b)) for a, b in zip(flat, basis_vec)]
        vectors.append(flat)
    return Subspace.from_vectors(field, n * n, vectors)


def _is_p_power(e: int, p: int) -> bool:
    if p == 0 or e < 1:
        return False
    while e % p == 0:
        e //= p
    return e == 1


def reduced_center_dimension(fam: GroupFamily) -> tuple[int, bool]:
    """Dimension of the reduced center of the family's abstract group.

    A second generic element (fresh parameter copies) is forced to commute
    with the generic element; coefficients of the original parameters give
    exact conditions on the copy.  Linear conditions go through Gaussian
    elimination; conditions pinning a pure ``p``-power of one variable have a
    unique root by Frobenius injectivity.  Returns ``(dimension, trivial)``
    where ``trivial`` says the only solution is the identity.
    """
    _reject_if_singular(fam)
    field = fam.field
    params = fam.parameter_names
    copies = tuple(f"u_{name}" for name in params)
    allvars = params + copies
    g = tuple(tuple(poly.extend(allvars) for poly in row) for row in fam.generic_element)
    h = tuple(
        tuple(poly.rename(dict(zip(params, copies))).extend(allvars) for poly in row)
        for row in fam.generic_element
    )
    raw_conditions = [
        poly
        for row in poly_mat_sub(poly_mat_mul(g, h), poly_mat_mul(h, g))
        for poly in row
        if not poly.is_zero()
    ]
    # split off the original-parameter monomials; conditions live on the copies
    param_slots = [allvars.index(v) for v in params]
    copy_slots = [allvars.index(v) for v in copies]
    conditions: dict[tuple, GenericPoly] = {}
    for ci, poly in enumerate(raw_conditions):
        buckets: dict[tuple, GenericPoly] = {}
        for mono, c in poly.coeffs.items():
            pkey = tuple(mono[s] for s in param_slots)
            ckey = tuple(mono[s] if s in copy_slots else 0 for s in range(len(allvars)))
            term = GenericPoly(allvars, {ckey: c}, field)
            buckets[pkey] = buckets.get(pkey, GenericPoly.zero(field, allvars)) + term
        for pkey, cond in buckets.items():
            if not cond.is_zero():
                conditions[(ci, pkey)] = cond

    pending = list(conditions.values())
    linear: list[GenericPoly] = []
    for cond in pending:
        if cond.degree_in(copies) <= 1:
            linear.append(cond)
            continue
        # pure power condition: a*u^e + b with e a power of the characteristic
        terms = [(m, c) for m, c in cond.coeffs.items() if any(m[s] for s in copy_slots)]
        const = [(m, c) for m, c in cond.coeffs.items() if not any(m[s] for s in copy_slots)]
        if len(terms) != 1:
            raise UnsupportedCenterSystem(f"cannot decide condition {cond!r}")
        mono, coeff = terms[0]
        live = [s for s in copy_slots if mono[s]]
        e = mono[live[0]]
        if len(live) != 1 or not _is_p_power(e, field.p):
            raise UnsupportedCenterSystem(f"cannot decide condition {cond!r}")
        if const and any(m != (0,) * len(allvars) for m, _ in const):
            raise UnsupportedCenterSystem(f"cannot decide condition {cond!r}")
        rhs = field.neg(const[0][1]) if const else field.zero()
        root = field.div(rhs, coeff)
        # residues satisfy root**p == root, so root is the unique e-th root
        check = root
        for _ in range(e - 1):
            check = field.mul(check, root)
        if check != field.div(rhs, coeff):
            raise UnsupportedCenterSystem("no Frobenius root for a power condition")
        var = allvars[live[0]]
        linear.append(
            GenericPoly.variable(field, allvars, var)
            - GenericPoly.constant(field, allvars, root)
        )

    # affine solve over the copy variables
    ncols = len(copies)
    rows = []
    rhs_col = []
    zero_mono = (0,) * len(allvars)
    for cond in linear:
        row = [field.zero()] * ncols
        const = field.zero()
        for mono, c in cond.coeffs.items():
            live = [s for s in copy_slots if mono[s]]
            if not live:
                if mono != zero_mono:
                    raise UnsupportedCenterSystem("parameter leaked into copy system")
                const = field.add(const, c)
                continue
            s = live[0]
            row[copy_slots.index(s)] = field.add(row[copy_slots.index(s)], c)
        rows.append(tuple(row))
        rhs_col.append(field.neg(const))
    matrix = DenseMatrix.from_rows(field, rows, cols=ncols)
    solution = solve(matrix, rhs_col)
    if solution is None:
        raise UnsupportedCenterSystem("center system inconsistent; identity must solve it")
    dim = ncols - matrix.rank()
    identity_vec = tuple(fam.identity_params[name] for name in params)
    trivial = dim == 0 and solution == identity_vec
    return dim, trivial


@dataclass(frozen=True)
class CenterSchemeReport:
    """Tangent dimension vs reduced dimension of a family's center."""

    family: str
    characteristic: int
    dim_lie_center: int
    dim_reduced_center: int

    @property
    def smooth(self) -> bool:
        return self.dim_lie_center == self.dim_reduced_center


def center_scheme_report(fam: GroupFamily) -> CenterSchemeReport:
    lie_dim = lie_center_generic(fam).dim
    red_dim, _ = reduced_center_dimension(fam)
    return CenterSchemeReport(fam.name, fam.field.p, lie_dim, red_dim)


def nonsmooth_center_report(p: int) -> CenterSchemeReport:
    """Center data for the Frobenius-twist family: tangent dim 1, reduced dim 0."""
    return center_scheme_report(frobenius_twist_family(p))
