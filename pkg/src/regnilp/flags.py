"""Complete-flag enumeration over small prime fields.

A nilpotent matrix preserves exactly one complete flag iff it is regular;
this module counts stabilized flags by explicit enumeration, with a hard
budget guard so nothing silently explodes.
"""

from __future__ import annotations

from itertools import product

from .fields import GF
from .gln import is_nilpotent
from .linalg import DenseMatrix, Subspace


class FlagBudgetExceeded(ValueError):
    """The complete-flag count is over the enumeration budget."""


FLAG_BUDGET = 1_000_000


def count_complete_flags(n: int, q: int) -> int:
    """Closed-form count ``prod_k (q^k - 1)/(q - 1)``."""
    total = 1
    for k in range(1, n + 1):
        total *= (q**k - 1) // (q - 1)
    return total


def flags_preserved(x: DenseMatrix, q: int) -> int:
    """Number of complete flags with ``x V_i ⊆ V_i`` for all i."""
    field = GF(q)
    if x.field != field:
        raise ValueError(f"matrix is over {x.field}, expected GF({q})")
    if not is_nilpotent(x):
        raise ValueError("input is not nilpotent")
    n = x.rows
    total = count_complete_flags(n, q)
    if total > FLAG_BUDGET:
        raise FlagBudgetExceeded(
            f"{total} complete flags exceed the budget of {FLAG_BUDGET}"
        )
    vectors = [v for v in product(range(q), repeat=n) if any(v)]

    def extend(space: Subspace) -> int:
        if space.dim == n:
            return 1
        seen = set()
        count = 0
        for v in vectors:
            if space.contains(v):
                continue
            bigger = Subspace.from_vectors(field, n, list(space.basis) + [v])
            key = bigger.basis
            if key in seen:
                continue
            seen.add(key)
            if all(bigger.contains(x.apply(row)) for row in bigger.basis):
                count += extend(bigger)
        return count

    return extend(Subspace.zero(field, n))
