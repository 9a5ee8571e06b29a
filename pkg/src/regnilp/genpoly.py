"""Multivariate polynomials over exact fields for generic-point computations.

A handful of named variables act as formal parameters ("the generic group
element") or as linear unknowns ("the tangent vector being solved for").
Requiring a polynomial identity to hold for every specialization of the
parameters is the same as requiring each parameter-monomial coefficient to
vanish; :func:`generic_linear_extract` turns that into an exact linear system
on the unknowns.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable, Iterable, Mapping, Sequence

from .fields import CharacteristicMismatch, Field, Raw
from .linalg import DenseMatrix

Monomial = tuple  # exponent per variable slot


class NonlinearConstraint(ValueError):
    """A constraint is not linear in the designated unknowns."""


@dataclass(frozen=True, eq=False)
class GenericPoly:
    """Polynomial with named variables; no zero coefficients are stored."""

    variables: tuple[str, ...]
    coeffs: dict = dc_field(default_factory=dict)  # Monomial -> raw value
    base: Field = dc_field(default_factory=Field)

    # -- constructors ----------------------------------------------------------

    @classmethod
    def zero(cls, base: Field, variables: Sequence[str]) -> "GenericPoly":
        return cls(tuple(variables), {}, base)

    @classmethod
    def constant(cls, base: Field, variables: Sequence[str], v: Raw) -> "GenericPoly":
        v = base.coerce(v)
        if v == 0:
            return cls.zero(base, variables)
        zero_mono = (0,) * len(variables)
        return cls(tuple(variables), {zero_mono: v}, base)

    @classmethod
    def variable(cls, base: Field, variables: Sequence[str], name: str, power: int = 1) -> "GenericPoly":
        variables = tuple(variables)
        idx = variables.index(name)
        mono = tuple(power if i == idx else 0 for i in range(len(variables)))
        return cls(variables, {mono: base.one()}, base)

    # -- plumbing ---------------------------------------------------------------

    def _compat(self, other: "GenericPoly") -> None:
        if self.base != other.base:
            raise CharacteristicMismatch(f"{self.base} vs {other.base}")
        if self.variables != other.variables:
            raise ValueError("polynomials live over different variable tuples")

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if not isinstance(other, GenericPoly):
            return NotImplemented
        return (
            self.base == other.base
            and self.variables == other.variables
            and self.coeffs == other.coeffs
        )

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        bits = []
        for mono in sorted(self.coeffs):
            parts = [str(self.coeffs[mono])]
            parts += [
                f"{v}^{e}" if e > 1 else v
                for v, e in zip(self.variables, mono)
                if e
            ]
            bits.append("*".join(parts))
        return " + ".join(bits)

    # -- ring operations ----------------------------------------------------------

    def __add__(self, other: "GenericPoly") -> "GenericPoly":
        self._compat(other)
        out = dict(self.coeffs)
        f = self.base
        for mono, c in other.coeffs.items():
            s = f.add(out.get(mono, f.zero()), c)
            if s == 0:
                out.pop(mono, None)
            else:
                out[mono] = s
        return GenericPoly(self.variables, out, f)

    def __neg__(self) -> "GenericPoly":
        f = self.base
        return GenericPoly(self.variables, {m: f.neg(c) for m, c in self.coeffs.items()}, f)

    def __sub__(self, other: "GenericPoly") -> "GenericPoly":
        return self + (-other)

    def __mul__(self, other: "GenericPoly") -> "GenericPoly":
        self._compat(other)
        f = self.base
        out: dict = {}
        for m1, c1 in self.coeffs.items():
            for m2, c2 in other.coeffs.items():
                mono = tuple(a + b for a, b in zip(m1, m2))
                s = f.add(out.get(mono, f.zero()), f.mul(c1, c2))
                if s == 0:
                    out.pop(mono, None)
                else:
                    out[mono] = s
        return GenericPoly(self.variables, out, f)

    def scale(self, c: Raw) -> "GenericPoly":
        f = self.base
        c = f.coerce(c)
        if c == 0:
            return GenericPoly.zero(f, self.variables)
        return GenericPoly(self.variables, {m: f.mul(c, v) for m, v in self.coeffs.items()}, f)

    # -- structure ----------------------------------------------------------------

    def degree_in(self, names: Iterable[str]) -> int:
        slots = [self.variables.index(n) for n in names]
        return max((sum(m[i] for i in slots) for m in self.coeffs), default=0)

    def extend(self, variables: Sequence[str]) -> "GenericPoly":
        """Reinterpret over a larger variable tuple (must contain the old one)."""
        variables = tuple(variables)
        positions = [variables.index(v) for v in self.variables]
        out = {}
        for mono, c in self.coeffs.items():
            big = [0] * len(variables)
            for pos, e in zip(positions, mono):
                big[pos] = e
            out[tuple(big)] = c
        return GenericPoly(variables, out, self.base)

    def rename(self, mapping: Mapping[str, str]) -> "GenericPoly":
        new_vars = tuple(mapping.get(v, v) for v in self.variables)
        if len(set(new_vars)) != len(new_vars):
            raise ValueError("variable renaming collides")
        return GenericPoly(new_vars, dict(self.coeffs), self.base)

    def substitute(self, name: str, value: Raw) -> "GenericPoly":
        """Partially evaluate one variable at an exact field value."""
        f = self.base
        idx = self.variables.index(name)
        value = f.coerce(value)
        out: dict = {}
        for mono, c in self.coeffs.items():
            e = mono[idx]
            scaled = c
            for _ in range(e):
                scaled = f.mul(scaled, value)
            if scaled == 0:
                continue
            new_mono = tuple(0 if i == idx else m for i, m in enumerate(mono))
            s = f.add(out.get(new_mono, f.zero()), scaled)
            if s == 0:
                out.pop(new_mono, None)
            else:
                out[new_mono] = s
        return GenericPoly(self.variables, out, f)

    def evaluate(self, assignment: Mapping[str, object], lift: Callable[[Raw], object] | None = None):
        """Evaluate in any commutative ring containing the base field.

        ``lift`` embeds raw coefficients into the target ring; it defaults to
        boxing into :class:`FieldScalar`.
        """
        if lift is None:
            lift = self.base.scalar
        total = None
        for mono, c in self.coeffs.items():
            term = lift(c)
            for var, e in zip(self.variables, mono):
                if e:
                    term = term * (assignment[var] ** e)
            total = term if total is None else total + term
        if total is None:
            return lift(self.base.zero())
        return total


# -- polynomial matrices --------------------------------------------------------


def poly_matrix(entries: Sequence[Sequence[GenericPoly]]) -> tuple:
    return tuple(tuple(row) for row in entries)


def poly_mat_mul(a: tuple, b: tuple) -> tuple:
    n, k, m = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = None
            for l in range(k):
                t = a[i][l] * b[l][j]
                acc = t if acc is None else acc + t
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def poly_mat_sub(a: tuple, b: tuple) -> tuple:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def generic_linear_extract(
    conditions: Sequence[GenericPoly],
    unknowns: Sequence[str],
) -> DenseMatrix:
    """Coefficient matrix of the linear system implied by ``conditions == 0``.

    Each condition must be linear (total degree <= 1) in the ``unknowns``;
    all other variables are treated as free parameters.  Requiring every
    parameter-monomial coefficient to vanish produces one matrix row per
    (condition, parameter-monomial) pair, so the nullspace of the result is
    exactly the set of unknown-assignments valid for every parameter
    specialization.
    """
    if not conditions:
        raise ValueError("at least one condition is required")
    unknowns = list(unknowns)
    base = conditions[0].base
    rows: list[tuple] = []
    for ci, poly in enumerate(conditions):
        if poly.base != base:
            raise CharacteristicMismatch("conditions over mixed fields")
        u_slots = {}
        for u in unknowns:
            if u in poly.variables:
                u_slots[poly.variables.index(u)] = unknowns.index(u)
        buckets: dict[Monomial, list] = {}
        for mono, c in poly.coeffs.items():
            u_deg = sum(mono[s] for s in u_slots)
            if u_deg > 1:
                raise NonlinearConstraint(
                    f"condition #{ci} ({poly!r}) is nonlinear in the unknowns"
                )
            param_mono = tuple(
                0 if i in u_slots else e for i, e in enumerate(mono)
            )
            row = buckets.setdefault(param_mono, [base.zero()] * (len(unknowns) + 1))
            if u_deg == 0:
                row[len(unknowns)] = base.add(row[len(unknowns)], c)
            else:
                slot = next(s for s in u_slots if mono[s] == 1)
                col = u_slots[slot]
                row[col] = base.add(row[col], c)
        for param_mono in sorted(buckets):
            row = buckets[param_mono]
            if row[len(unknowns)] != 0:
                raise ValueError(
                    f"condition #{ci} has an unknown-free term at parameter "
                    f"monomial {param_mono}; the system is not homogeneous"
                )
            coeffs = row[: len(unknowns)]
            if any(v != 0 for v in coeffs):
                rows.append(tuple(coeffs))
    return DenseMatrix.from_rows(base, rows, cols=len(unknowns))
