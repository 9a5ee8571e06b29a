"""Integral Chevalley-basis Lie algebras and their reductions mod p.

The basis is ``h_1..h_r`` followed by root vectors for the positive roots and
then the negative roots, both in (height, lex) order.  Structure constants are
built over the integers with the extraspecial-pair sign convention and then
verified in place: bracket antisymmetry, the root-string bound on |N|, and the
Jacobi identity (exhaustive through rank 4, sampled above).  Reduction mod p
is coefficient-wise and re-verified.
"""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .fields import Field, QQ, Raw, is_prime
from .linalg import DenseMatrix, Subspace
from .rootsystems import PrimeClass, Root, RootSystem, build_root_system, classify_prime

JACOBI_EXHAUSTIVE_MAX_RANK = 4
JACOBI_SAMPLES = 10_000


class InvalidStructure(RuntimeError):
    """Structure-constant consistency check failed."""


class BadPrimeWarning(UserWarning):
    """A construction was requested at a characteristic that is not very good."""


def _root_half_norms(rs: RootSystem) -> dict[Root, Fraction]:
    gram = rs.gram()
    out = {}
    for gamma in rs.positive_roots:
        n2 = sum(
            (gamma[i] * gamma[j] * gram[i][j] for i in range(rs.rank) for j in range(rs.rank)),
            Fraction(0),
        )
        out[gamma] = n2 / 2
    return out


def _coroot_coordinates(rs: RootSystem, gamma: Root, half_norms) -> tuple[int, ...]:
    """Coordinates of the coroot of ``gamma`` in the simple coroots."""
    d = rs.simple_root_lengths()
    dg = half_norms[gamma]
    out = []
    for i in range(rs.rank):
        c = Fraction(gamma[i]) * d[i] / dg
        if c.denominator != 1:
            raise InvalidStructure(f"non-integral coroot coordinate for {gamma}")
        out.append(int(c))
    return tuple(out)


def _string_length(rs: RootSystem, alpha: Root, beta: Root) -> int:
    """``max k`` with ``beta - k*alpha`` a root."""
    k = 0
    probe = tuple(b - a for a, b in zip(alpha, beta))
    while rs.is_root(probe):
        k += 1
        probe = tuple(p - a for p, a in zip(probe, alpha))
    return k


def _positive_pair_constants(rs: RootSystem, half_norms) -> dict[tuple[int, int], int]:
    """Structure constants N for ordered positive-root pairs (a < b).

    The extraspecial pair of each non-simple positive root gets ``+(p+1)``;
    every other special pair is forced by the Jacobi identity relative to it.
    """
    roots = rs.positive_roots
    index = {g: i for i, g in enumerate(roots)}
    npos: dict[tuple[int, int], int] = {}

    def lookup(i: int, j: int) -> int:
        if (i, j) in npos:
            return npos[(i, j)]
        return -npos[(j, i)]

    def n_pos_neg(ai: int, mi: int) -> Fraction:
        """N(alpha, -mu) for positive roots alpha=roots[ai], mu=roots[mi]."""
        alpha, mu = roots[ai], roots[mi]
        diff = tuple(a - m for a, m in zip(alpha, mu))
        if all(v == 0 for v in diff):
            raise ValueError("pair sums to zero; handled by the coroot bracket")
        if diff in index:  # alpha = mu + delta
            delta = diff
            return -(half_norms[delta] / half_norms[alpha]) * lookup(index[mu], index[delta])
        ndiff = tuple(-v for v in diff)
        if ndiff in index:  # mu = alpha + nu
            nu = ndiff
            return -(half_norms[nu] / half_norms[mu]) * lookup(index[alpha], index[nu])
        return Fraction(0)

    for gi, gamma in enumerate(roots):
        if rs.height(gamma) < 2:
            continue
        pairs = [
            (a, b)
            for a in range(gi)
            for b in range(a + 1, gi)
            if tuple(x + y for x, y in zip(roots[a], roots[b])) == gamma
        ]
        pairs.sort()
        if not pairs:
            raise InvalidStructure(f"no special pair sums to {gamma}")
        a1, b1 = pairs[0]
        p1 = _string_length(rs, roots[a1], roots[b1])
        npos[(a1, b1)] = p1 + 1
        if len(pairs) == 1:
            continue
        # N(gamma, -alpha1) scales the extraspecial constant
        denom = -(half_norms[roots[b1]] / half_norms[gamma]) * npos[(a1, b1)]
        for a, b in pairs[1:]:
            alpha, beta = roots[a], roots[b]
            term = Fraction(0)
            d1 = tuple(x - y for x, y in zip(alpha, roots[a1]))
            if d1 in index:
                # N(-alpha1, alpha) * N(alpha - alpha1, beta)
                n_na1_a = -n_pos_neg(a, a1)
                term += n_na1_a * lookup(index[d1], b)
            d2 = tuple(x - y for x, y in zip(beta, roots[a1]))
            if d2 in index:
                # N(beta, -alpha1) * N(beta - alpha1, alpha)
                term += n_pos_neg(b, a1) * lookup(index[d2], a)
            val = -term / denom
            if val.denominator != 1:
                raise InvalidStructure(f"non-integral constant for pair {alpha}, {beta}")
            npos[(a, b)] = int(val)
            expect = _string_length(rs, alpha, beta) + 1
            if abs(npos[(a, b)]) != expect:
                raise InvalidStructure(
                    f"|N| for pair {alpha}, {beta} is {abs(npos[(a, b)])}, "
                    f"root string demands {expect}"
                )
    return npos


@dataclass(frozen=True, eq=False)
class CocharacterGrading:
    """Integer weight per basis vector for the doubled-height cocharacter."""

    weights: tuple[int, ...]

    def indices_of(self, w: int) -> tuple[int, ...]:
        return tuple(i for i, x in enumerate(self.weights) if x == w)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.weights)))


@dataclass(frozen=True, eq=False)
class ChevalleyAlgebra:
    """Lie algebra with integral structure constants over Q or F_p."""

    rs: RootSystem
    field: Field
    table: dict  # (i, j) -> tuple of (k, raw coeff); antisymmetric, sparse

    @property
    def rank(self) -> int:
        return self.rs.rank

    @property
    def num_positive(self) -> int:
        return self.rs.num_positive

    @property
    def dim(self) -> int:
        return self.rs.rank + 2 * self.rs.num_positive

    def h_index(self, i: int) -> int:
        return i

    def e_index(self, k: int) -> int:
        return self.rank + k

    def f_index(self, k: int) -> int:
        return self.rank + self.num_positive + k

    def basis_label(self, i: int) -> str:
        r, m = self.rank, self.num_positive
        if i < r:
            return f"h{i + 1}"
        if i < r + m:
            return f"e{self.rs.positive_roots[i - r]}"
        return f"f{self.rs.positive_roots[i - r - m]}"

    def basis_root(self, i: int) -> tuple[int, ...] | None:
        """Signed root coordinates of a root vector, None for Cartan basis."""
        r, m = self.rank, self.num_positive
        if i < r:
            return None
        if i < r + m:
            return self.rs.positive_roots[i - r]
        return tuple(-c for c in self.rs.positive_roots[i - r - m])

    def basis_vector(self, i: int) -> tuple:
        z, o = self.field.zero(), self.field.one()
        return tuple(o if j == i else z for j in range(self.dim))

    def bracket_basis(self, i: int, j: int) -> tuple:
        return self.table.get((i, j), ())

    def bracket(self, u, v) -> tuple:
        f = self.field
        acc = [f.zero()] * self.dim
        for i, ci in enumerate(u):
            if ci == 0:
                continue
            for j, cj in enumerate(v):
                if cj == 0:
                    continue
                for k, c in self.table.get((i, j), ()):
                    acc[k] = f.add(acc[k], f.mul(f.mul(ci, cj), c))
        return tuple(acc)

    def ad_matrix(self, v) -> DenseMatrix:
        """Matrix of ``y -> [v, y]`` in the basis (columns indexed by y)."""
        f = self.field
        n = self.dim
        cols = [[f.zero()] * n for _ in range(n)]
        for i, ci in enumerate(v):
            if ci == 0:
                continue
            for (a, j), terms in self.table.items():
                if a != i:
                    continue
                col = cols[j]
                for k, c in terms:
                    col[k] = f.add(col[k], f.mul(ci, c))
        rows = [tuple(cols[j][k] for j in range(n)) for k in range(n)]
        return DenseMatrix(f, n, n, tuple(rows))


def _assemble_table(rs: RootSystem) -> dict:
    half_norms = _root_half_norms(rs)
    npos = _positive_pair_constants(rs, half_norms)
    roots = rs.positive_roots
    index = {g: i for i, g in enumerate(roots)}
    r, m = rs.rank, len(roots)

    def signed_coords(s: int, k: int) -> tuple[int, ...]:
        return roots[k] if s > 0 else tuple(-c for c in roots[k])

    def lookup_pos(i: int, j: int) -> int:
        if (i, j) in npos:
            return npos[(i, j)]
        if (j, i) in npos:
            return -npos[(j, i)]
        raise KeyError((i, j))

    def n_signed(s1: int, i1: int, s2: int, i2: int) -> int:
        """N over arbitrary sign pairs whose sum is a root."""
        if s1 > 0 and s2 > 0:
            return lookup_pos(i1, i2)
        if s1 < 0 and s2 < 0:
            return -lookup_pos(i1, i2)
        if s1 > 0:
            ai, mi = i1, i2
            sign = 1
        else:
            ai, mi = i2, i1
            sign = -1
        alpha, mu = roots[ai], roots[mi]
        diff = tuple(a - b for a, b in zip(alpha, mu))
        if diff in index:
            delta = diff
            val = -(half_norms[delta] / half_norms[alpha]) * lookup_pos(index[mu], index[delta])
        else:
            nu = tuple(-v for v in diff)
            val = -(half_norms[nu] / half_norms[mu]) * lookup_pos(index[alpha], index[nu])
        if val.denominator != 1:
            raise InvalidStructure("mixed-sign constant is not integral")
        return sign * int(val)

    def basis_index(s: int, k: int) -> int:
        return r + k if s > 0 else r + m + k

    table: dict = {}

    def put(i: int, j: int, entries) -> None:
        entries = tuple((k, c) for k, c in entries if c != 0)
        if entries:
            table[(i, j)] = entries
            table[(j, i)] = tuple((k, -c) for k, c in entries)

    # [h_i, e_{+-gamma}]
    for i in range(r):
        for k, gamma in enumerate(roots):
            pairing = rs.pairing(gamma, i)
            if pairing:
                put(i, basis_index(+1, k), [(basis_index(+1, k), pairing)])
                put(i, basis_index(-1, k), [(basis_index(-1, k), -pairing)])

    # [e_gamma, e_{-gamma}] = h_gamma
    for k, gamma in enumerate(roots):
        coroot = _coroot_coordinates(rs, gamma, half_norms)
        put(basis_index(+1, k), basis_index(-1, k), list(enumerate(coroot)))

    # [e_x, e_y] for x + y != 0
    signed = [(s, k) for s in (+1, -1) for k in range(m)]
    for s1, k1 in signed:
        for s2, k2 in signed:
            b1, b2 = basis_index(s1, k1), basis_index(s2, k2)
            if b1 >= b2:
                continue
            total = tuple(a + b for a, b in zip(signed_coords(s1, k1), signed_coords(s2, k2)))
            if all(v == 0 for v in total):
                continue  # coroot case above
            if total in index:
                put(b1, b2, [(basis_index(+1, index[total]), n_signed(s1, k1, s2, k2))])
            else:
                ntotal = tuple(-v for v in total)
                if ntotal in index:
                    put(b1, b2, [(basis_index(-1, index[ntotal]), n_signed(s1, k1, s2, k2))])
    return table


def check_jacobi(alg: ChevalleyAlgebra, samples: int = JACOBI_SAMPLES, seed: int = 0) -> None:
    """Verify the Jacobi identity; exhaustive through rank 4, sampled above.

    Raises :class:`InvalidStructure` naming the offending triple.
    """
    n = alg.dim
    p = alg.field.p

    def expand(i: int, j: int, k: int):
        acc: dict[int, int] = {}
        for pair in ((i, j, k), (j, k, i), (k, i, j)):
            for mid, c1 in alg.table.get((pair[0], pair[1]), ()):
                for out, c2 in alg.table.get((mid, pair[2]), ()):
                    acc[out] = acc.get(out, 0) + c1 * c2
        return acc

    def ok(acc) -> bool:
        if p:
            return all(v % p == 0 for v in acc.values())
        return all(v == 0 for v in acc.values())

    if alg.rank <= JACOBI_EXHAUSTIVE_MAX_RANK:
        triples = (
            (i, j, k)
            for i in range(n)
            for j in range(i + 1, n)
            for k in range(j + 1, n)
        )
    else:
        rng = random.Random(seed)
        triples = (
            tuple(sorted(rng.sample(range(n), 3))) for _ in range(samples)
        )
    for i, j, k in triples:
        if not ok(expand(i, j, k)):
            raise InvalidStructure(
                f"Jacobi identity fails on ({alg.basis_label(i)}, "
                f"{alg.basis_label(j)}, {alg.basis_label(k)})"
            )


def _check_antisymmetry(alg: ChevalleyAlgebra) -> None:
    for (i, j), entries in alg.table.items():
        flipped = dict(alg.table.get((j, i), ()))
        for k, c in entries:
            if flipped.get(k, 0) != alg.field.neg(c) if alg.field.p else flipped.get(k, 0) != -c:
                raise InvalidStructure(
                    f"antisymmetry fails on ({alg.basis_label(i)}, {alg.basis_label(j)})"
                )


@lru_cache(maxsize=None)
def _build_chevalley_cached(kind: str, rank: int) -> ChevalleyAlgebra:
    rs = build_root_system(kind, rank)
    table = _assemble_table(rs)
    alg = ChevalleyAlgebra(rs, QQ, table)
    _check_antisymmetry(alg)
    check_jacobi(alg)
    return alg


def build_chevalley(rs: RootSystem) -> ChevalleyAlgebra:
    """Characteristic-zero algebra with integer structure constants."""
    return _build_chevalley_cached(rs.kind, rs.rank)


def reduce_mod(alg: ChevalleyAlgebra, p: int) -> ChevalleyAlgebra:
    """Coefficient-wise reduction to F_p, with invariants re-verified."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if alg.field.p != 0:
        raise ValueError("reduce_mod expects a characteristic-zero algebra")
    field = Field(p)
    table = {}
    for key, entries in alg.table.items():
        reduced = tuple((k, c % p) for k, c in entries if c % p != 0)
        if reduced:
            table[key] = reduced
    out = ChevalleyAlgebra(alg.rs, field, table)
    check_jacobi(out)
    grading = canonical_grading(out)  # re-verifies gradedness over F_p
    del grading
    return out


def regular_nilpotent(alg: ChevalleyAlgebra) -> tuple:
    """Sum of the simple-root vectors, ``X = sum_alpha e_alpha``."""
    if alg.field.p:
        cls = classify_prime(alg.rs.kind, alg.rs.rank, alg.field.p)
        if cls is not PrimeClass.VERY_GOOD:
            warnings.warn(
                f"characteristic {alg.field.p} is {cls.value} for {alg.rs.name}; "
                "regularity checks may fail",
                BadPrimeWarning,
                stacklevel=2,
            )
    f = alg.field
    vec = [f.zero()] * alg.dim
    for k, gamma in enumerate(alg.rs.positive_roots):
        if alg.rs.height(gamma) == 1:
            vec[alg.e_index(k)] = f.one()
    return tuple(vec)


def canonical_grading(alg: ChevalleyAlgebra) -> CocharacterGrading:
    """Grading by the sum-of-positive-coroots cocharacter: weight 2 x height.

    The weight of each root vector is recomputed as the sum of its pairings
    against all positive coroots and must equal twice the height; the bracket
    table is then checked to be graded.
    """
    rs = alg.rs
    half_norms = _root_half_norms(rs)
    gram = rs.gram()

    def pairing_against_coroot(gamma: Root, beta: Root) -> Fraction:
        inner = sum(
            (gamma[i] * beta[j] * gram[i][j] for i in range(rs.rank) for j in range(rs.rank)),
            Fraction(0),
        )
        return inner / half_norms[beta]

    weights = [0] * alg.dim
    for k, gamma in enumerate(rs.positive_roots):
        total = sum((pairing_against_coroot(gamma, beta) for beta in rs.positive_roots), Fraction(0))
        if total.denominator != 1 or int(total) != 2 * rs.height(gamma):
            raise InvalidStructure(
                f"coroot-sum weight of {gamma} is {total}, expected {2 * rs.height(gamma)}"
            )
        weights[alg.e_index(k)] = int(total)
        weights[alg.f_index(k)] = -int(total)
    grading = CocharacterGrading(tuple(weights))
    for (i, j), entries in alg.table.items():
        w = weights[i] + weights[j]
        for k, _ in entries:
            if weights[k] != w:
                raise InvalidStructure(
                    f"bracket of {alg.basis_label(i)}, {alg.basis_label(j)} "
                    "is not graded"
                )
    return grading


def weight_spaces(alg: ChevalleyAlgebra, grading: CocharacterGrading) -> dict[int, Subspace]:
    """Partition of the basis by weight; dimensions sum to dim g."""
    if len(grading.weights) != alg.dim:
        raise ValueError("grading is incompatible with the algebra basis")
    out: dict[int, Subspace] = {}
    for w in grading.support:
        idx = grading.indices_of(w)
        vectors = [alg.basis_vector(i) for i in idx]
        out[w] = Subspace.from_vectors(alg.field, alg.dim, vectors)
    return out
