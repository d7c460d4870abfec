"""Sparse exterior algebra over exact rational scalars.

A :class:`Multivector` is a grade-homogeneous element of the exterior power
Lambda^k(Q^n), stored as a map from basis index subsets to nonzero rational
coefficients.  Index subsets are encoded as bitmasks (bit i-1 <-> basis
index i, indices 1-based, n <= 64), which makes shuffle signs cheap popcount
arithmetic.  Covectors (elements of the dual exterior power) reuse the same
structure with ``dual=True``; operations that mix the two spaces check the
flag.

Coefficients are ``int`` or ``fractions.Fraction``; floats are rejected, so
every operation is exact and zero tests are decidable.  Instances are treated
as immutable: no operation mutates its inputs, and values may be shared
freely between threads.

Sign conventions.  The wedge of basis subsets S and T (disjoint) carries the
parity of the shuffle sorting S followed by T.  The pairing is the plain
determinant pairing <e^S, e_T> = delta(S, T), with no 1/k! factors.  The
interior product is the adjoint of wedging on the dual side,

    <interior(phi, P), theta> = <P, phi ^ theta>,

and ``contract_into`` is the adjoint of wedging on the primal side,

    <contract_into(P, psi), Q> = <psi, P ^ Q>.

These choices keep all structure constants integral and make the duality
identity checked in :mod:`plk.criteria` hold with sign (-1)**(grade-1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Sequence

Coeff = int | Fraction


class InputError(ValueError):
    """Malformed or incompatible operand."""


def mask_of(indices: Iterable[int]) -> int:
    """Bitmask of a set of distinct 1-based indices."""
    mask = 0
    for i in indices:
        if i < 1:
            raise InputError(f"indices must be >= 1, got {i}")
        bit = 1 << (i - 1)
        if mask & bit:
            raise InputError(f"repeated index {i}")
        mask |= bit
    return mask


def indices_of(mask: int) -> tuple[int, ...]:
    """Increasing 1-based indices of a bitmask."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length())
        mask ^= low
    return tuple(out)


def shuffle_sign(a: int, b: int) -> int:
    """Sign of sorting the concatenation of two disjoint index masks.

    Equals (-1)**inv where inv counts pairs (x in a, y in b) with x > y.
    """
    sign = 1
    while b:
        low = b & -b
        if (a >> low.bit_length()).bit_count() & 1:
            sign = -sign
        b ^= low
    return sign


def sorted_mask(indices: Sequence[int]) -> tuple[int, int]:
    """(mask, sign) of an arbitrary index sequence; sign 0 on a repeat.

    The sign is the parity of the permutation sorting the sequence, i.e. the
    coefficient relating e_{i1} ^ ... ^ e_{ik} to the sorted basis element.
    """
    mask = 0
    sign = 1
    for i in indices:
        bit = 1 << (i - 1)
        if mask & bit:
            return 0, 0
        if (mask >> i).bit_count() & 1:
            sign = -sign
        mask |= bit
    return mask, sign


def _check_coeff(c: Coeff) -> None:
    if isinstance(c, bool) or not isinstance(c, (int, Fraction)):
        raise InputError(f"coefficients must be int or Fraction, got {c!r}")


class Multivector:
    """Grade-homogeneous sparse multivector (or covector, with dual=True).

    ``terms`` maps basis subset bitmasks to nonzero coefficients.  Grades
    above ``dim`` are permitted only for the zero multivector, so wedge
    chains past the top grade stay total.
    """

    __slots__ = ("dim", "grade", "dual", "terms")

    def __init__(
        self,
        dim: int,
        grade: int,
        terms: Mapping[int, Coeff] | None = None,
        dual: bool = False,
    ):
        if not isinstance(dim, int) or not (1 <= dim <= 64):
            raise InputError(f"dim must be an integer in [1, 64], got {dim}")
        if not isinstance(grade, int) or grade < 0:
            raise InputError(f"grade must be a nonnegative integer, got {grade}")
        clean: dict[int, Coeff] = {}
        top = 1 << dim
        for mask, c in (terms or {}).items():
            if not isinstance(mask, int) or mask < 0 or mask >= top:
                raise InputError(f"index set {mask!r} out of range for dim {dim}")
            if mask.bit_count() != grade:
                raise InputError(
                    f"index set {indices_of(mask)} has size {mask.bit_count()}, "
                    f"expected grade {grade}"
                )
            _check_coeff(c)
            if c:
                clean[mask] = c
        if grade > dim and clean:
            raise InputError(f"grade {grade} exceeds dim {dim}")
        self.dim = dim
        self.grade = grade
        self.dual = bool(dual)
        self.terms = clean

    # -- construction helpers ------------------------------------------------

    @classmethod
    def zero(cls, dim: int, grade: int, dual: bool = False) -> "Multivector":
        return cls(dim, grade, {}, dual)

    @classmethod
    def scalar(cls, dim: int, value: Coeff, dual: bool = False) -> "Multivector":
        return cls(dim, 0, {0: value}, dual)

    @classmethod
    def basis(cls, dim: int, indices: Sequence[int], dual: bool = False) -> "Multivector":
        """Basis element e_{i1,...,ik} (indices strictly increasing)."""
        idx = tuple(indices)
        if any(a >= b for a, b in zip(idx, idx[1:])):
            raise InputError(f"indices must be strictly increasing, got {idx}")
        return cls(dim, len(idx), {mask_of(idx): 1}, dual)

    @classmethod
    def from_terms(
        cls,
        dim: int,
        grade: int,
        pairs: Iterable[tuple[Sequence[int], Coeff]],
        dual: bool = False,
    ) -> "Multivector":
        """Build from (indices, coeff) pairs; indices strictly increasing."""
        terms: dict[int, Coeff] = {}
        for idx, c in pairs:
            idx = tuple(idx)
            if any(a >= b for a, b in zip(idx, idx[1:])):
                raise InputError(f"indices must be strictly increasing, got {idx}")
            mask = mask_of(idx)
            if mask in terms:
                raise InputError(f"duplicate index set {idx}")
            _check_coeff(c)
            terms[mask] = c
        return cls(dim, grade, terms, dual)

    # -- inspection ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, indices: Sequence[int]) -> Coeff:
        """Coefficient of the given (strictly increasing) basis subset."""
        return self.terms.get(mask_of(indices), 0)

    def items(self) -> list[tuple[tuple[int, ...], Coeff]]:
        """(indices, coeff) pairs sorted by index tuple."""
        out = [(indices_of(m), c) for m, c in self.terms.items()]
        out.sort(key=lambda t: t[0])
        return out

    # -- algebra -------------------------------------------------------------

    def _compatible(self, other: "Multivector") -> None:
        if not isinstance(other, Multivector):
            raise InputError(f"expected a Multivector, got {type(other).__name__}")
        if self.dim != other.dim:
            raise InputError(f"dimension mismatch: {self.dim} vs {other.dim}")
        if self.dual != other.dual:
            raise InputError("cannot mix vectors and covectors here")

    def __add__(self, other: "Multivector") -> "Multivector":
        self._compatible(other)
        if self.grade != other.grade:
            raise InputError(f"grade mismatch: {self.grade} vs {other.grade}")
        terms = dict(self.terms)
        for m, c in other.terms.items():
            v = terms.get(m, 0) + c
            if v:
                terms[m] = v
            elif m in terms:
                del terms[m]
        return Multivector(self.dim, self.grade, terms, self.dual)

    def __sub__(self, other: "Multivector") -> "Multivector":
        return self + (-other)

    def __neg__(self) -> "Multivector":
        return Multivector(
            self.dim, self.grade, {m: -c for m, c in self.terms.items()}, self.dual
        )

    def __mul__(self, c: Coeff) -> "Multivector":
        _check_coeff(c)
        if not c:
            return Multivector.zero(self.dim, self.grade, self.dual)
        return Multivector(
            self.dim, self.grade, {m: c * v for m, v in self.terms.items()}, self.dual
        )

    __rmul__ = __mul__

    def wedge(self, other: "Multivector") -> "Multivector":
        return wedge(self, other)

    __xor__ = wedge

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Multivector):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.grade == other.grade
            and self.dual == other.dual
            and self.terms == other.terms
        )

    __hash__ = None  # mutable dict inside; not hashable

    def __repr__(self) -> str:
        kind = "covector" if self.dual else "vector"
        return f"<{self} ({kind}, dim={self.dim}, grade={self.grade})>"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        sym = "e^" if self.dual else "e_"
        parts = []
        for idx, c in self.items():
            base = "1" if not idx else sym + "{" + ",".join(map(str, idx)) + "}"
            if not idx:
                body = str(c)
            elif c == 1:
                body = base
            elif c == -1:
                body = "-" + base
            else:
                body = f"{c}*{base}"
            parts.append(body)
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out


# -- term-level kernels (no validation; used by hot loops) --------------------


def wedge_terms(a: Mapping[int, Coeff], b: Mapping[int, Coeff]) -> dict[int, Coeff]:
    out: dict[int, Coeff] = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            if ma & mb:
                continue
            m = ma | mb
            v = out.get(m, 0) + (ca * cb if shuffle_sign(ma, mb) > 0 else -ca * cb)
            if v:
                out[m] = v
            elif m in out:
                del out[m]
    return out


def interior_terms(phi: Mapping[int, Coeff], p: Mapping[int, Coeff]) -> dict[int, Coeff]:
    """Terms of interior(phi, p): contract each subset of phi out of p."""
    out: dict[int, Coeff] = {}
    for mph, cph in phi.items():
        for mp, cp in p.items():
            if mph & mp != mph:
                continue
            rest = mp ^ mph
            v = out.get(rest, 0) + (
                cph * cp if shuffle_sign(mph, rest) > 0 else -cph * cp
            )
            if v:
                out[rest] = v
            elif rest in out:
                del out[rest]
    return out


def contract_terms(p: Mapping[int, Coeff], psi: Mapping[int, Coeff]) -> dict[int, Coeff]:
    """Terms of contract_into(p, psi): remove p's subsets from psi's."""
    out: dict[int, Coeff] = {}
    for mp, cp in p.items():
        for mps, cps in psi.items():
            if mp & mps != mp:
                continue
            rest = mps ^ mp
            v = out.get(rest, 0) + (
                cp * cps if shuffle_sign(mp, rest) > 0 else -cp * cps
            )
            if v:
                out[rest] = v
            elif rest in out:
                del out[rest]
    return out


# -- public operations ---------------------------------------------------------


def wedge(a: Multivector, b: Multivector) -> Multivector:
    """Exterior product; zero (of grade j+k) past the top grade."""
    a._compatible(b)
    grade = a.grade + b.grade
    if grade > a.dim:
        return Multivector.zero(a.dim, grade, a.dual)
    return Multivector(a.dim, grade, wedge_terms(a.terms, b.terms), a.dual)


def pairing(psi: Multivector, p: Multivector) -> Coeff:
    """Determinant pairing <psi, p> of a covector with a vector of equal grade."""
    if not psi.dual or p.dual:
        raise InputError("pairing takes (covector, vector)")
    if psi.dim != p.dim:
        raise InputError(f"dimension mismatch: {psi.dim} vs {p.dim}")
    if psi.grade != p.grade:
        raise InputError(f"grade mismatch: {psi.grade} vs {p.grade}")
    total: Coeff = 0
    small, big = (psi.terms, p.terms) if len(psi.terms) <= len(p.terms) else (p.terms, psi.terms)
    for m, c in small.items():
        other = big.get(m)
        if other is not None:
            total += c * other
    return total


def interior(phi: Multivector, p: Multivector) -> Multivector:
    """Interior product i(phi)p, the adjoint of phi ^ . on the dual side."""
    if not phi.dual or p.dual:
        raise InputError("interior takes (covector, vector)")
    if phi.dim != p.dim:
        raise InputError(f"dimension mismatch: {phi.dim} vs {p.dim}")
    if phi.grade > p.grade:
        raise InputError(
            f"covector grade {phi.grade} exceeds vector grade {p.grade}"
        )
    return Multivector(p.dim, p.grade - phi.grade, interior_terms(phi.terms, p.terms))


def contract_into(p: Multivector, psi: Multivector) -> Multivector:
    """The covector i_p(psi), adjoint of p ^ . on the primal side."""
    if p.dual or not psi.dual:
        raise InputError("contract_into takes (vector, covector)")
    if p.dim != psi.dim:
        raise InputError(f"dimension mismatch: {p.dim} vs {psi.dim}")
    if psi.grade < p.grade:
        raise InputError(
            f"covector grade {psi.grade} below vector grade {p.grade}"
        )
    return Multivector(
        p.dim, psi.grade - p.grade, contract_terms(p.terms, psi.terms), dual=True
    )


def sharp(p: Multivector, phi: Multivector) -> Multivector:
    """The vector interior(phi, p) for a covector of grade p.grade - 1.

    Ranging phi over all such covectors sweeps out the support space of p.
    """
    if p.grade < 1:
        raise InputError("sharp needs grade >= 1")
    if phi.grade != p.grade - 1:
        raise InputError(
            f"covector grade must be {p.grade - 1}, got {phi.grade}"
        )
    return interior(phi, p)


@dataclass(frozen=True)
class SupportSpace:
    """Row-echelon basis of the minimal subspace U with p in Lambda^grade(U)."""

    dim: int
    basis: tuple[Multivector, ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def coordinate_rows(self) -> list[list[Coeff]]:
        return [[v.terms.get(1 << i, 0) for i in range(self.dim)] for v in self.basis]


def support_space(p: Multivector) -> SupportSpace:
    """Echelonized basis of span{ sharp(p, e^S) : |S| = grade - 1 }.

    Every subspace U with p in Lambda^grade(U) contains the result; p is
    decomposable exactly when the rank equals the grade.
    """
    from . import linalg

    if p.dual:
        raise InputError("support space is defined for vectors")
    s = p.grade
    if s == 0 or p.is_zero():
        return SupportSpace(p.dim, ())
    gens: set[int] = set()
    for kmask in p.terms:
        for sub in combinations(indices_of(kmask), s - 1):
            gens.add(mask_of(sub))
    rows = []
    for smask in gens:
        img = interior_terms({smask: 1}, p.terms)
        if img:
            rows.append([img.get(1 << i, 0) for i in range(p.dim)])
    reduced, _ = linalg.rref(rows)
    basis = tuple(
        Multivector(p.dim, 1, {1 << i: c for i, c in enumerate(row) if c})
        for row in reduced
    )
    return SupportSpace(p.dim, basis)


def basis_subsets(n: int, r: int) -> Iterator[tuple[int, ...]]:
    """Strictly increasing r-subsets of 1..n in lexicographic order."""
    return combinations(range(1, n + 1), r)
