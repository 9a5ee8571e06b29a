"""Exact scalar arithmetic: prime fields, rationals, and dual numbers.

Values are carried in a "raw" form - canonical residues in ``[0, p)`` for
characteristic ``p``, :class:`~fractions.Fraction` in characteristic zero -
so that bulk linear algebra stays fast.  :class:`FieldScalar` boxes a raw
value together with its characteristic for the scalar-level API, and every
mixed-characteristic operation is rejected.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from random import Random
from typing import Union

Raw = Union[int, Fraction]


class CharacteristicMismatch(ValueError):
    """Operands live over fields of different characteristic."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Field:
    """``F_p`` for a prime ``p``, or the rationals when ``p == 0``."""

    p: int = 0

    def __post_init__(self) -> None:
        if self.p != 0 and not is_prime(self.p):
            raise ValueError(f"characteristic must be 0 or a prime, got {self.p}")

    def __repr__(self) -> str:
        return "QQ" if self.p == 0 else f"GF({self.p})"

    # -- raw-value arithmetic ------------------------------------------------

    def coerce(self, v: Raw) -> Raw:
        if self.p:
            return int(v) % self.p
        return v if isinstance(v, Fraction) else Fraction(v)

    def zero(self) -> Raw:
        return 0 if self.p else Fraction(0)

    def one(self) -> Raw:
        return 1 if self.p else Fraction(1)

    def add(self, a: Raw, b: Raw) -> Raw:
        return (a + b) % self.p if self.p else a + b

    def sub(self, a: Raw, b: Raw) -> Raw:
        return (a - b) % self.p if self.p else a - b

    def neg(self, a: Raw) -> Raw:
        return (-a) % self.p if self.p else -a

    def mul(self, a: Raw, b: Raw) -> Raw:
        return (a * b) % self.p if self.p else a * b

    def inv(self, a: Raw) -> Raw:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(a, self.p - 2, self.p)
        return Fraction(1) / a

    def div(self, a: Raw, b: Raw) -> Raw:
        return self.mul(a, self.inv(b))

    def rand(self, rng: Random) -> Raw:
        if self.p:
            return rng.randrange(self.p)
        return Fraction(rng.randint(-9, 9), rng.randint(1, 9))

    def scalar(self, v: Raw) -> "FieldScalar":
        return FieldScalar(self.coerce(v), self.p)


QQ = Field(0)


def GF(p: int) -> Field:
    if p == 0:
        raise ValueError("use QQ for characteristic zero")
    return Field(p)


@dataclass(frozen=True)
class FieldScalar:
    """An exact field element tagged with its characteristic."""

    value: Raw
    char: int = 0

    @property
    def field(self) -> Field:
        return Field(self.char)

    def _coerce(self, other) -> "FieldScalar":
        if isinstance(other, FieldScalar):
            if other.char != self.char:
                raise CharacteristicMismatch(
                    f"characteristic {self.char} vs {other.char}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.scalar(other)
        return NotImplemented

    def __add__(self, other) -> "FieldScalar":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldScalar(self.field.add(self.value, other.value), self.char)

    __radd__ = __add__

    def __sub__(self, other) -> "FieldScalar":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldScalar(self.field.sub(self.value, other.value), self.char)

    def __rsub__(self, other) -> "FieldScalar":
        return self._coerce(other) - self

    def __neg__(self) -> "FieldScalar":
        return FieldScalar(self.field.neg(self.value), self.char)

    def __mul__(self, other) -> "FieldScalar":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldScalar(self.field.mul(self.value, other.value), self.char)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "FieldScalar":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldScalar(self.field.div(self.value, other.value), self.char)

    def __pow__(self, e: int) -> "FieldScalar":
        if e < 0:
            return self.inverse() ** (-e)
        out = self.field.scalar(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def inverse(self) -> "FieldScalar":
        return FieldScalar(self.field.inv(self.value), self.char)

    def is_zero(self) -> bool:
        return self.value == 0

    def __repr__(self) -> str:
        return f"{self.value}" if self.char == 0 else f"{self.value} (mod {self.char})"


@dataclass(frozen=True)
class DualScalar:
    """Dual number ``a + b*eps`` with ``eps**2 == 0`` over an exact field."""

    a: FieldScalar
    b: FieldScalar

    def __post_init__(self) -> None:
        if self.a.char != self.b.char:
            raise CharacteristicMismatch("dual number parts disagree in characteristic")

    @classmethod
    def constant(cls, field: Field, v: Raw) -> "DualScalar":
        return cls(field.scalar(v), field.scalar(0))

    @classmethod
    def of(cls, field: Field, value: Raw, eps: Raw) -> "DualScalar":
        return cls(field.scalar(value), field.scalar(eps))

    @classmethod
    def epsilon(cls, field: Field) -> "DualScalar":
        return cls(field.scalar(0), field.scalar(1))

    def __add__(self, other: "DualScalar") -> "DualScalar":
        return DualScalar(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "DualScalar") -> "DualScalar":
        return DualScalar(self.a - other.a, self.b - other.b)

    def __neg__(self) -> "DualScalar":
        return DualScalar(-self.a, -self.b)

    def __mul__(self, other: "DualScalar") -> "DualScalar":
        return DualScalar(self.a * other.a, self.a * other.b + self.b * other.a)

    def __pow__(self, e: int) -> "DualScalar":
        if e < 0:
            return self.inverse() ** (-e)
        field = self.a.field
        out = DualScalar.constant(field, 1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def inverse(self) -> "DualScalar":
        # (a + b eps)^-1 = a^-1 - a^-2 b eps, valid when a != 0.
        ia = self.a.inverse()
        return DualScalar(ia, -(ia * ia * self.b))

    def is_zero(self) -> bool:
        return self.a.is_zero() and self.b.is_zero()

    def __repr__(self) -> str:
        return f"{self.a.value} + {self.b.value}e"
