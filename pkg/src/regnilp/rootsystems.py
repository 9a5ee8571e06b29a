"""Root systems of types A-G: positive roots, exponents, prime classification.

Roots are integer vectors in simple-root coordinates, so everything stays
exact; pairings against coroots are read off the Cartan matrix.  The only
floating-point computation in the whole package lives in
:func:`coxeter_spectrum_check`.
"""

from __future__ import annotations

import cmath
import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .fields import is_prime

Root = tuple  # integer coordinates in the simple-root basis

_LEGAL_RANKS = {
    "A": lambda r: r >= 1,
    "B": lambda r: r >= 2,
    "C": lambda r: r >= 3,
    "D": lambda r: r >= 4,
    "E": lambda r: r in (6, 7, 8),
    "F": lambda r: r == 4,
    "G": lambda r: r == 2,
}


class IllegalType(ValueError):
    """Not a legal (kind, rank) combination."""


class SpectrumSolverError(RuntimeError):
    """The numeric eigenvalue solver failed to converge."""


class PrimeClass(enum.Enum):
    BAD = "bad"
    GOOD_NOT_VERY_GOOD = "good-not-very-good"
    VERY_GOOD = "very-good"


def validate_kind_rank(kind: str, rank: int) -> None:
    check = _LEGAL_RANKS.get(kind)
    if check is None or not check(rank):
        raise IllegalType(f"no root system of type {kind}{rank}")


def cartan_matrix(kind: str, rank: int) -> tuple[tuple[int, ...], ...]:
    """Cartan matrix with entries ``A[i][j] = <alpha_j, alpha_i-coroot>``."""
    validate_kind_rank(kind, rank)
    a = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        a[i][i] = 2

    def edge(i: int, j: int, aij: int = -1, aji: int = -1) -> None:
        a[i][j] = aij
        a[j][i] = aji

    if kind in ("A", "B", "C"):
        for i in range(rank - 2):
            edge(i, i + 1)
        if rank >= 2:
            if kind == "A":
                edge(rank - 2, rank - 1)
            elif kind == "B":
                # last simple root short
                edge(rank - 2, rank - 1, aij=-1, aji=-2)
            else:
                # last simple root long
                edge(rank - 2, rank - 1, aij=-2, aji=-1)
    elif kind == "D":
        for i in range(rank - 2):
            edge(i, i + 1)
        edge(rank - 3, rank - 1)
    elif kind == "E":
        for i, j in [(0, 2), (2, 3), (3, 4), (4, 5), (1, 3)]:
            edge(i, j)
        if rank >= 7:
            edge(5, 6)
        if rank == 8:
            edge(6, 7)
    elif kind == "F":
        edge(0, 1)
        edge(1, 2, aij=-1, aji=-2)
        edge(2, 3)
    elif kind == "G":
        edge(0, 1, aij=-3, aji=-1)
    return tuple(tuple(row) for row in a)


_POSITIVE_ROOT_COUNTS = {
    "A": lambda r: r * (r + 1) // 2,
    "B": lambda r: r * r,
    "C": lambda r: r * r,
    "D": lambda r: r * (r - 1),
    "E": lambda r: {6: 36, 7: 63, 8: 120}[r],
    "F": lambda r: 24,
    "G": lambda r: 6,
}


@dataclass(frozen=True)
class RootSystem:
    kind: str
    rank: int
    cartan: tuple[tuple[int, ...], ...]
    positive_roots: tuple[Root, ...]  # sorted by (height, lex)

    @property
    def name(self) -> str:
        return f"{self.kind}{self.rank}"

    @property
    def num_positive(self) -> int:
        return len(self.positive_roots)

    def height(self, root: Root) -> int:
        return sum(root)

    def pairing(self, root: Sequence[int], i: int) -> int:
        """``<root, alpha_i-coroot>`` via the Cartan matrix."""
        return sum(c * a for c, a in zip(root, self.cartan[i]))

    def is_root(self, v: Sequence[int]) -> bool:
        t = tuple(v)
        neg = tuple(-c for c in t)
        s = set(self.positive_roots)
        return t in s or neg in s

    def root_index(self, root: Root) -> int:
        return self.positive_roots.index(root)

    def simple_root_lengths(self) -> tuple[Fraction, ...]:
        """Half-norms ``d_i = (alpha_i, alpha_i)/2``, shortest normalized to 1."""
        r = self.rank
        d: list[Fraction | None] = [None] * r
        d[0] = Fraction(1)
        stack = [0]
        while stack:
            i = stack.pop()
            for j in range(r):
                if i != j and self.cartan[i][j] != 0 and d[j] is None:
                    # d_i * A[i][j] = d_j * A[j][i]
                    d[j] = d[i] * self.cartan[i][j] / self.cartan[j][i]
                    stack.append(j)
        if any(x is None for x in d):
            raise ValueError("disconnected Dynkin diagram")
        lo = min(d)  # type: ignore[type-var]
        return tuple(x / lo for x in d)  # type: ignore[operator]

    def gram(self) -> tuple[tuple[Fraction, ...], ...]:
        """Inner products ``(alpha_i, alpha_j) = d_i * A[i][j]``."""
        d = self.simple_root_lengths()
        return tuple(
            tuple(d[i] * self.cartan[i][j] for j in range(self.rank))
            for i in range(self.rank)
        )

    def inner(self, x: Sequence[int], y: Sequence[int]) -> Fraction:
        g = self.gram()
        return sum(
            (x[i] * y[j] * g[i][j] for i in range(self.rank) for j in range(self.rank)),
            Fraction(0),
        )


@lru_cache(maxsize=None)
def build_root_system(kind: str, rank: int) -> RootSystem:
    """Positive roots via closure under simple-root addition (root strings)."""
    validate_kind_rank(kind, rank)
    cartan = cartan_matrix(kind, rank)
    simples = [tuple(1 if j == i else 0 for j in range(rank)) for i in range(rank)]
    roots = set(simples)
    level = list(simples)
    while level:
        nxt = []
        for gamma in level:
            for i in range(rank):
                cand = tuple(c + s for c, s in zip(gamma, simples[i]))
                if cand in roots:
                    continue
                # alpha_i-string through gamma: q = p - <gamma, alpha_i-coroot>
                p = 0
                probe = tuple(c - s for c, s in zip(gamma, simples[i]))
                while probe in roots or tuple(-c for c in probe) in roots:
                    p += 1
                    probe = tuple(c - s for c, s in zip(probe, simples[i]))
                pairing = sum(c * a for c, a in zip(gamma, cartan[i]))
                if p - pairing > 0:
                    roots.add(cand)
                    nxt.append(cand)
        level = nxt
    ordered = tuple(sorted(roots, key=lambda v: (sum(v), v)))
    rs = RootSystem(kind, rank, cartan, ordered)
    expected = _POSITIVE_ROOT_COUNTS[kind](rank)
    if len(ordered) != expected:
        raise RuntimeError(
            f"{kind}{rank}: built {len(ordered)} positive roots, expected {expected}"
        )
    return rs


@dataclass(frozen=True)
class ExponentData:
    exponents: tuple[int, ...]  # nondecreasing
    degrees: tuple[int, ...]
    coxeter_number: int


def exponents_by_height(rs: RootSystem) -> ExponentData:
    """Exponents as the dual partition of the height distribution."""
    heights = [rs.height(g) for g in rs.positive_roots]
    max_h = max(heights)
    m = [0] * (max_h + 1)
    for h in heights:
        m[h] += 1
    # dual partition of (m_1, m_2, ...) read as a partition
    exps = sorted(
        (sum(1 for h in range(1, max_h + 1) if m[h] >= k) for k in range(1, m[1] + 1)),
    )
    h = max_h + 1
    return ExponentData(tuple(exps), tuple(k + 1 for k in exps), h)


def simple_reflection_matrix(rs: RootSystem, i: int) -> tuple[tuple[int, ...], ...]:
    """Matrix of the i-th simple reflection on simple-root coordinates."""
    r = rs.rank
    rows = []
    for k in range(r):
        if k != i:
            rows.append(tuple(1 if j == k else 0 for j in range(r)))
        else:
            rows.append(tuple((1 if j == i else 0) - rs.cartan[i][j] for j in range(r)))
    return tuple(rows)


def coxeter_spectrum_check(rs: RootSystem, tol: float = 1e-8) -> bool:
    """Match the Coxeter element spectrum against ``exp(2*pi*i*k_j/h)``.

    The Coxeter element is fixed as the product of simple reflections in
    index order; its eigenvalues are computed in floating point and matched
    by sorting both multisets along the unit circle.
    """
    data = exponents_by_height(rs)
    mat = np.eye(rs.rank)
    for i in range(rs.rank):
        mat = mat @ np.array(simple_reflection_matrix(rs, i), dtype=float)
    try:
        eig = np.linalg.eigvals(mat)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - solver hiccup
        raise SpectrumSolverError(str(exc)) from exc
    h = data.coxeter_number
    targets = sorted(
        (cmath.exp(2j * cmath.pi * k / h) for k in data.exponents),
        key=lambda z: (cmath.phase(z) % (2 * cmath.pi)),
    )
    got = sorted(eig, key=lambda z: (cmath.phase(z) % (2 * cmath.pi)))
    return all(abs(a - b) <= tol for a, b in zip(got, targets))


def weyl_group_order(rs: RootSystem, max_rank: int = 4) -> int:
    """Order of the Weyl group by explicit closure (small rank only)."""
    if rs.rank > max_rank:
        raise ValueError(f"explicit Weyl enumeration limited to rank <= {max_rank}")
    gens = [simple_reflection_matrix(rs, i) for i in range(rs.rank)]

    def mul(a, b):
        return tuple(
            tuple(sum(a[i][k] * b[k][j] for k in range(rs.rank)) for j in range(rs.rank))
            for i in range(rs.rank)
        )

    ident = tuple(tuple(1 if i == j else 0 for j in range(rs.rank)) for i in range(rs.rank))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for w in frontier:
            for g in gens:
                wg = mul(w, g)
                if wg not in seen:
                    seen.add(wg)
                    nxt.append(wg)
        frontier = nxt
    return len(seen)


def classify_prime(kind: str, rank: int, p: int) -> PrimeClass:
    """Bad / good / very good classification of a prime for a root system type."""
    validate_kind_rank(kind, rank)
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    bad = (
        (p == 2 and kind != "A")
        or (p == 3 and kind in ("G", "F", "E"))
        or (p == 5 and kind == "E" and rank == 8)
    )
    if bad:
        return PrimeClass.BAD
    if kind == "A" and (rank + 1) % p == 0:
        return PrimeClass.GOOD_NOT_VERY_GOOD
    return PrimeClass.VERY_GOOD
