"""Centralizers, iterated kernels, normalizers, and their weight multisets.

All computations are exact nullspace/elimination problems inside a
:class:`~regnilp.chevalley.ChevalleyAlgebra`; the aggregate
:class:`RegularReport` collects every dimension and weight-multiset identity
expected of a regular nilpotent element and records a verdict per check
without ever aborting - at a bad prime the failures are data.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .chevalley import (
    ChevalleyAlgebra,
    CocharacterGrading,
    build_chevalley,
    canonical_grading,
    reduce_mod,
    regular_nilpotent,
)
from .linalg import DenseMatrix, Subspace
from .rootsystems import build_root_system, classify_prime, exponents_by_height


class NotGraded(ValueError):
    """A subspace is not the sum of its weight-space intersections."""


def lie_centralizer(alg: ChevalleyAlgebra, x: Sequence) -> Subspace:
    """Kernel of ``ad(x)``."""
    return alg.ad_matrix(tuple(x)).nullspace()


def ker_ad_power(alg: ChevalleyAlgebra, x: Sequence, k: int) -> Subspace:
    """Kernel of ``ad(x)**k``."""
    if k < 1:
        raise ValueError("power must be >= 1")
    return (alg.ad_matrix(tuple(x)) ** k).nullspace()


def lie_normalizer(alg: ChevalleyAlgebra, s: Subspace) -> Subspace:
    """``{y : [y, s] contained in s}`` for a subspace ``s``.

    Membership of ``[y, s_j]`` in ``s`` is imposed by reducing against the
    canonical basis of ``s`` and requiring the non-pivot coordinates of the
    remainder to vanish.
    """
    f = alg.field
    n = alg.dim
    if s.ambient_dim != n:
        raise ValueError("subspace does not live in the algebra")
    nonpivot = [c for c in range(n) if c not in s.pivots]
    rows = []
    for basis_vec in s.basis:
        # y -> [y, s_j] = -ad(s_j) y
        m = (-alg.ad_matrix(basis_vec)).data
        for c in nonpivot:
            row = list(m[c])
            for coeff_row, pc in zip(s.basis, s.pivots):
                factor = coeff_row[c]
                if factor != 0:
                    row = [f.sub(a, f.mul(factor, b)) for a, b in zip(row, m[pc])]
            rows.append(tuple(row))
    if not rows:
        return Subspace.full(f, n)
    return DenseMatrix.from_rows(f, rows, cols=n).nullspace()


def lie_center(alg: ChevalleyAlgebra) -> Subspace:
    """Simultaneous kernel of every ``ad(basis vector)``."""
    space = Subspace.full(alg.field, alg.dim)
    for i in range(alg.dim):
        if space.dim == 0:
            break
        space = space.restricted_nullspace(alg.ad_matrix(alg.basis_vector(i)))
    return space


def weight_multiset(s: Subspace, grading: CocharacterGrading) -> tuple[int, ...]:
    """Sorted weights of a graded subspace, with multiplicity.

    Raises :class:`NotGraded` if ``s`` is not the direct sum of its
    intersections with the weight spaces.
    """
    if s.ambient_dim != len(grading.weights):
        raise ValueError("grading is incompatible with the ambient space")
    out: list[int] = []
    total = 0
    for w in grading.support:
        piece = s.coordinate_intersection(grading.indices_of(w))
        total += piece.dim
        out.extend([w] * piece.dim)
    if total != s.dim:
        raise NotGraded("subspace is not homogeneous for the grading")
    return tuple(sorted(out))


def multiset_difference(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    out = list(a)
    for x in b:
        out.remove(x)
    return tuple(sorted(out))


@dataclass(frozen=True)
class RegularReport:
    """All regular-centralizer facts for one (type, rank, prime) cell."""

    kind: str
    rank: int
    p: int
    prime_class: str
    dim_c: int
    dim_ker_ad2: int
    dim_n: int
    dim_lie_center: int
    weights_c: tuple[int, ...]
    weights_n: tuple[int, ...]
    weights_n_mod_c: tuple[int, ...]
    expected_exponents: tuple[int, ...]
    centralizer_abelian: bool
    x_in_centralizer: bool
    x_spans_weight_two: bool
    containment_chain: bool
    verdicts: dict = dc_field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.verdicts.values())

    def recompute_verdicts(self) -> dict:
        r = self.rank
        k = self.expected_exponents
        expected_wc = tuple(sorted(2 * ki for ki in k))
        expected_q = tuple(sorted([0] + [2 * ki - 2 for ki in k[1:]]))
        return {
            "centralizer_dim": self.dim_c == r,
            "ker_ad_square_dim": self.dim_ker_ad2 == 2 * r,
            "normalizer_dim": self.dim_n == 2 * r + self.dim_lie_center,
            "centralizer_weights": self.weights_c == expected_wc,
            "quotient_weights": self.weights_n_mod_c == expected_q,
            "weight_two_multiplicity": self.weights_c.count(2) == 1,
            "normalizer_weights_nonnegative": all(w > 0 for w in self.weights_n if w != 0),
            "normalizer_zero_weight_dim": self.weights_n.count(0) == 1 + self.dim_lie_center,
            "centralizer_abelian": self.centralizer_abelian,
            "x_in_centralizer": self.x_in_centralizer,
            "x_spans_weight_two": self.x_spans_weight_two,
            "containment_chain": self.containment_chain,
        }


def regular_report(kind: str, rank: int, p: int) -> RegularReport:
    """Run the whole regular-nilpotent pipeline for one grid cell."""
    rs = build_root_system(kind, rank)
    alg = reduce_mod(build_chevalley(rs), p)
    grading = canonical_grading(alg)
    x = regular_nilpotent(alg)
    cent = lie_centralizer(alg, x)
    k2 = ker_ad_power(alg, x, 2)
    norm = lie_normalizer(alg, cent)
    center = lie_center(alg)
    wc = weight_multiset(cent, grading)
    wn = weight_multiset(norm, grading)
    wq = multiset_difference(wn, wc)
    exps = exponents_by_height(rs).exponents

    abelian = all(
        all(v == 0 for v in alg.bracket(a, b))
        for i, a in enumerate(cent.basis)
        for b in cent.basis[i + 1:]
    )
    x_in_c = cent.contains(x)
    w2 = cent.coordinate_intersection(grading.indices_of(2))
    x_spans = w2.dim == 1 and w2.contains(x)
    chain = cent.is_subspace_of(norm) and norm.is_subspace_of(k2)

    report = RegularReport(
        kind=kind,
        rank=rank,
        p=p,
        prime_class=classify_prime(kind, rank, p).value,
        dim_c=cent.dim,
        dim_ker_ad2=k2.dim,
        dim_n=norm.dim,
        dim_lie_center=center.dim,
        weights_c=wc,
        weights_n=wn,
        weights_n_mod_c=wq,
        expected_exponents=exps,
        centralizer_abelian=abelian,
        x_in_centralizer=x_in_c,
        x_spans_weight_two=x_spans,
        containment_chain=chain,
    )
    report.verdicts.update(report.recompute_verdicts())
    return report
