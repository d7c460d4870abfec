"""Two-column Young shapes and the representation theory behind the optimal
decomposability test.

Provides hook-content dimensions of GL(n) irreducibles, the exact integer
identities splitting the tensor square of an exterior power into two-column
components, symmetric-group characters via the Murnaghan-Nakayama recursion,
character-weighted isotypic probes of P (x) P, and the explicit coefficient
family of the projection of P (x) P onto the shape with column heights
(grade+2, grade-2).

Partitions are plain tuples of weakly decreasing positive row lengths.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, combinations_with_replacement, permutations, product
from math import comb, factorial
from typing import Iterator, Sequence

from .multivector import (
    Coeff,
    InputError,
    Multivector,
    indices_of,
    shuffle_sign,
    sorted_mask,
    wedge_terms,
)


def comb0(n: int, k: int) -> int:
    """Binomial coefficient, 0 outside the valid range."""
    return comb(n, k) if 0 <= k <= n else 0


# -- shapes and dimensions -----------------------------------------------------


@dataclass(frozen=True)
class TwoColumnShape:
    """Young shape with two columns of heights first_col >= second_col >= 0."""

    first_col: int
    second_col: int

    def __post_init__(self):
        if not (0 <= self.second_col <= self.first_col):
            raise InputError(
                f"column heights must satisfy first >= second >= 0, "
                f"got ({self.first_col}, {self.second_col})"
            )

    def partition(self) -> tuple[int, ...]:
        """Row lengths: 2 repeated second_col times, then 1s."""
        return (2,) * self.second_col + (1,) * (self.first_col - self.second_col)

    @property
    def cells(self) -> int:
        return self.first_col + self.second_col

    def __str__(self) -> str:
        return f"Y[{self.first_col},{self.second_col}]"


def _as_partition(shape) -> tuple[int, ...]:
    if isinstance(shape, TwoColumnShape):
        return shape.partition()
    part = tuple(shape)
    if any(not isinstance(x, int) or x < 1 for x in part):
        raise InputError(f"partition rows must be positive integers, got {part}")
    if any(a < b for a, b in zip(part, part[1:])):
        raise InputError(f"partition rows must be weakly decreasing, got {part}")
    return part


def conjugate(part: Sequence[int]) -> tuple[int, ...]:
    part = tuple(part)
    if not part:
        return ()
    return tuple(sum(1 for r in part if r > j) for j in range(part[0]))


def hook_lengths(part: Sequence[int]) -> list[list[int]]:
    part = tuple(part)
    conj = conjugate(part)
    return [
        [part[i] - j + conj[j] - i - 1 for j in range(part[i])]
        for i in range(len(part))
    ]


def standard_tableaux_count(shape) -> int:
    """Number of standard Young tableaux, by the hook length formula."""
    part = _as_partition(shape)
    m = sum(part)
    denom = 1
    for row in hook_lengths(part):
        for h in row:
            denom *= h
    return factorial(m) // denom


def young_dim(n: int, shape) -> int:
    """Dimension of the GL(n) irreducible of the given shape.

    Hook-content product: prod over cells of (n + col - row) / hook, taken
    as one exact integer quotient at the end.  Zero when the shape has more
    than n rows.
    """
    if n < 1:
        raise InputError(f"n must be >= 1, got {n}")
    part = _as_partition(shape)
    num = 1
    for i in range(len(part)):
        for j in range(part[i]):
            num *= n + j - i
    if num == 0:
        return 0
    den = 1
    for row in hook_lengths(part):
        for h in row:
            den *= h
    assert num % den == 0
    return num // den


@dataclass(frozen=True)
class DimensionIdentity:
    name: str
    lhs: int
    rhs: int

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs


@dataclass(frozen=True)
class SquareDecompositionReport:
    """The tensor square of Lambda^s(Q^n) split into two-column components."""

    n: int
    s: int
    dims: tuple[tuple[TwoColumnShape, int], ...]
    identities: tuple[DimensionIdentity, ...]

    @property
    def passed(self) -> bool:
        return all(i.ok for i in self.identities)


def verify_square_decomposition(n: int, s: int) -> SquareDecompositionReport:
    """Check the exact dimension identities of the tensor-square splitting.

    Lambda^s (x) Lambda^s decomposes into the shapes with column heights
    (s+j, s-j); even j gives the symmetric square, odd j the antisymmetric
    one, and dropping the leading terms matches Lambda^(s+1) (x) Lambda^(s-1)
    and Lambda^(s+2) (x) Lambda^(s-2).
    """
    if not (1 <= s <= n):
        raise InputError(f"need 1 <= s <= n, got s={s}, n={n}")
    shapes = [TwoColumnShape(s + j, s - j) for j in range(s + 1)]
    dims = tuple((sh, young_dim(n, sh)) for sh in shapes)
    vals = [d for _, d in dims]
    c = comb(n, s)
    identities = (
        DimensionIdentity("total = C(n,s)^2", sum(vals), c * c),
        DimensionIdentity("even tail = C(n,s)(C(n,s)+1)/2", sum(vals[0::2]), c * (c + 1) // 2),
        DimensionIdentity("odd tail = C(n,s)(C(n,s)-1)/2", sum(vals[1::2]), c * (c - 1) // 2),
        DimensionIdentity(
            "tail j>=1 = C(n,s+1)C(n,s-1)", sum(vals[1:]), comb0(n, s + 1) * comb0(n, s - 1)
        ),
        DimensionIdentity(
            "tail j>=2 = C(n,s+2)C(n,s-2)", sum(vals[2:]), comb0(n, s + 2) * comb0(n, s - 2)
        ),
    )
    return SquareDecompositionReport(n, s, dims, identities)


# -- symmetric group characters --------------------------------------------------


def partitions(m: int) -> Iterator[tuple[int, ...]]:
    """All partitions of m, in decreasing lexicographic order."""
    if m == 0:
        yield ()
        return

    def rec(remaining: int, cap: int, prefix: tuple[int, ...]):
        if remaining == 0:
            yield prefix
            return
        for part in range(min(cap, remaining), 0, -1):
            yield from rec(remaining - part, part, prefix + (part,))

    yield from rec(m, m, ())


def conjugacy_class_size(cls: Sequence[int]) -> int:
    """Size of the conjugacy class of the given cycle type in S_m."""
    cls = tuple(cls)
    m = sum(cls)
    z = 1
    for k in set(cls):
        mult = cls.count(k)
        z *= k**mult * factorial(mult)
    return factorial(m) // z


@lru_cache(maxsize=None)
def _mn(shape: tuple[int, ...], parts: tuple[int, ...]) -> int:
    """Murnaghan-Nakayama recursion on the first class part."""
    if not parts:
        return 1
    t = parts[0]
    r = len(shape)
    betas = [shape[i] + r - 1 - i for i in range(r)]
    total = 0
    beta_set = set(betas)
    for i, b in enumerate(betas):
        nb = b - t
        if nb < 0 or nb in beta_set:
            continue
        # strip height parity = rows crossed between removal and landing spot
        crossed = sum(1 for j, x in enumerate(betas) if j != i and nb < x < b)
        new_betas = sorted((x for j, x in enumerate(betas) if j != i), reverse=True)
        new_betas.append(nb)
        new_betas.sort(reverse=True)
        new_shape = tuple(
            nbv - (r - 1 - idx) for idx, nbv in enumerate(new_betas)
        )
        new_shape = tuple(x for x in new_shape if x > 0)
        term = _mn(new_shape, parts[1:])
        total += -term if crossed & 1 else term
    return total


def sn_character(shape, cls) -> int:
    """Irreducible character of S_m: shape indexes the irreducible, cls the class."""
    shape = _as_partition(shape)
    cls = _as_partition(cls)
    if sum(shape) != sum(cls):
        raise InputError(
            f"partitions must have equal size, got {sum(shape)} and {sum(cls)}"
        )
    return _mn(shape, tuple(sorted(cls, reverse=True)))


# -- isotypic probes of P (x) P --------------------------------------------------


def _cycle_type(perm: Sequence[int]) -> tuple[int, ...]:
    seen = [False] * len(perm)
    cycles = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        p = start
        while not seen[p]:
            seen[p] = True
            p = perm[p]
            length += 1
        cycles.append(length)
    cycles.sort(reverse=True)
    return tuple(cycles)


@lru_cache(maxsize=None)
def _signed_perms(s: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    out = []
    for perm in permutations(range(s)):
        inv = sum(
            1 for a in range(s) for b in range(a + 1, s) if perm[a] > perm[b]
        )
        out.append((perm, -1 if inv & 1 else 1))
    return tuple(out)


@lru_cache(maxsize=None)
def _subset_weights(s: int, part: tuple[int, ...]) -> dict[tuple[int, ...], int]:
    """For each s-subset I of the 2s tensor slots, the character-weighted sum
    over permutations mapping the first block onto I, with both blocks
    antisymmetrized.  Reduces the central projector to one integer per subset.
    """
    m = 2 * s
    chars = {cls: sn_character(part, cls) for cls in partitions(m)}
    signed = _signed_perms(s)
    weights: dict[tuple[int, ...], int] = {}
    positions = tuple(range(m))
    for subset in combinations(positions, s):
        comp = tuple(x for x in positions if x not in subset)
        total = 0
        for p1, s1 in signed:
            first = [subset[p1[i]] for i in range(s)]
            for p2, s2 in signed:
                sigma = first + [comp[p2[i]] for i in range(s)]
                total += s1 * s2 * chars[_cycle_type(sigma)]
        weights[subset] = total
    return weights


def isotypic_probe(
    P: Multivector, shape: TwoColumnShape, probes: Sequence[Multivector]
) -> Fraction:
    """Evaluate the isotypic projection of P (x) P at a tuple of 2s covectors.

    Applies the central character idempotent of the shape to the 2s-linear
    form (xi_1, ..., xi_2s) -> <xi_1 ^ ... ^ xi_s, P> <xi_(s+1) ^ ... , P>.
    A nonzero return certifies that the component of P (x) P in the shape's
    isotypic subspace is nonzero.
    """
    if P.dual:
        raise InputError("probe target must be a vector")
    s = P.grade
    if s < 1:
        raise InputError("probe target must have grade >= 1")
    if shape.cells != 2 * s:
        raise InputError(
            f"shape has {shape.cells} cells, expected {2 * s} for a grade-{s} vector"
        )
    probes = list(probes)
    if len(probes) != 2 * s:
        raise InputError(f"need {2 * s} probe covectors, got {len(probes)}")
    for i, xi in enumerate(probes):
        if not xi.dual or xi.grade != 1 or xi.dim != P.dim:
            raise InputError(f"probe {i} must be a grade-1 covector of dim {P.dim}")

    part = shape.partition()
    weights = _subset_weights(s, part)

    # G[I] = <wedge of probes at positions I, P>, with prefix-shared wedges.
    prefix: dict[tuple[int, ...], dict[int, Coeff]] = {(): {0: 1}}

    def chain(I: tuple[int, ...]) -> dict[int, Coeff]:
        cached = prefix.get(I)
        if cached is None:
            cached = wedge_terms(chain(I[:-1]), probes[I[-1]].terms)
            prefix[I] = cached
        return cached

    g: dict[tuple[int, ...], Coeff] = {}
    for subset in weights:
        terms = chain(subset)
        g[subset] = sum(c * P.terms[m] for m, c in terms.items() if m in P.terms)

    total: Coeff = 0
    positions = tuple(range(2 * s))
    for subset, w in weights.items():
        if not w:
            continue
        comp = tuple(x for x in positions if x not in subset)
        gi = g[subset]
        if gi:
            gc = g[comp]
            if gc:
                total += w * gi * gc
    fdim = standard_tableaux_count(part)
    return Fraction(fdim) * total / factorial(2 * s)


# -- projection of P (x) P onto column heights (s+2, s-2) -------------------------


def iter_projection_blocks(
    P: Multivector,
) -> Iterator[tuple[tuple[tuple[int, int], ...], dict[int, Coeff], int]]:
    """Blocks of projection coefficients, one per tuple of symmetrized pairs.

    Yields (pairs, block, denom) where ``pairs`` is a lexicographically
    increasing tuple of s-2 index pairs (a <= b), ``block`` maps each 4-subset
    mask {c<d<e<f} to the unnormalized skew coefficient, and the projection
    coefficient at (pairs, subset) equals block[subset] / denom.

    The skew over the four indices of the product of two pair-contracted
    2-forms is exactly their wedge, so each block is a sum of sparse wedges;
    pair tuples are emitted in lexicographic order and coefficients inside a
    block in index order, which fixes the "first witness" reported upstream.
    """
    if P.dual:
        raise InputError("projection target must be a vector")
    s = P.grade
    if s < 2:
        raise InputError(f"projection needs grade >= 2, got {s}")
    n = P.dim
    k = s - 2
    if k == 0:
        yield (), wedge_terms(P.terms, P.terms), 6
        return

    # D[u] = 2-form with components P(u_1, ..., u_k, x, y) for ordered u.
    d: dict[tuple[int, ...], dict[int, Coeff]] = {}
    for kmask, c in P.terms.items():
        idx = indices_of(kmask)
        for xy in combinations(idx, 2):
            xymask = (1 << (xy[0] - 1)) | (1 << (xy[1] - 1))
            rest = tuple(i for i in idx if i not in xy)
            for u in permutations(rest):
                _, sign = sorted_mask(u + xy)
                d.setdefault(u, {})[xymask] = sign * c

    pair_list = [(a, b) for a in range(1, n + 1) for b in range(a, n + 1)]
    denom = 3 * (1 << k)
    for pairs in combinations_with_replacement(pair_list, k):
        block: dict[int, Coeff] = {}
        # Sum over pair-side assignments; eps and its complement combine into
        # one wedge of the two contracted 2-forms, so fix the first choice.
        for eps in product((0, 1), repeat=k - 1):
            full = (0,) + eps
            u = tuple(pairs[j][full[j]] for j in range(k))
            v = tuple(pairs[j][1 - full[j]] for j in range(k))
            du = d.get(u)
            if not du:
                continue
            dv = d.get(v)
            if not dv:
                continue
            for ma, ca in du.items():
                for mb, cb in dv.items():
                    if ma & mb:
                        continue
                    mm = ma | mb
                    val = block.get(mm, 0) + (
                        ca * cb if shuffle_sign(ma, mb) > 0 else -ca * cb
                    )
                    if val:
                        block[mm] = val
                    elif mm in block:
                        del block[mm]
        yield pairs, block, denom


def project_tensor_square(
    P: Multivector,
) -> dict[tuple[tuple[tuple[int, int], ...], tuple[int, ...]], Fraction]:
    """Nonzero coefficients of the projection of P (x) P onto the shape with
    column heights (grade+2, grade-2), indexed by (pair tuple, 4-subset).

    The map is empty exactly when the component vanishes, i.e. exactly when
    the vector is decomposable (for grade >= 2).
    """
    out: dict[tuple[tuple[tuple[int, int], ...], tuple[int, ...]], Fraction] = {}
    for pairs, block, denom in iter_projection_blocks(P):
        for mask in sorted(block, key=indices_of):
            out[(pairs, indices_of(mask))] = Fraction(block[mask], denom)
    return out


__all__ = [
    "TwoColumnShape",
    "DimensionIdentity",
    "SquareDecompositionReport",
    "comb0",
    "conjugate",
    "hook_lengths",
    "standard_tableaux_count",
    "young_dim",
    "verify_square_decomposition",
    "partitions",
    "conjugacy_class_size",
    "sn_character",
    "isotypic_probe",
    "iter_projection_blocks",
    "project_tensor_square",
]
