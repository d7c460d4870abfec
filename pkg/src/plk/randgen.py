"""Seeded generators for structured and random test instances.

Everything takes an explicit ``random.Random`` so callers control
reproducibility; coefficients are integers drawn from [-bound, bound].
"""

from __future__ import annotations

import random
from itertools import combinations
from math import comb

from .criteria import InvariantViolation, from_factors, is_simple_oracle
from .multivector import Coeff, InputError, Multivector, mask_of


def random_vector(
    rng: random.Random, dim: int, bound: int = 10, dual: bool = False
) -> Multivector:
    """Random nonzero grade-1 (co)vector with integer coordinates."""
    while True:
        terms = {1 << i: rng.randint(-bound, bound) for i in range(dim)}
        terms = {m: c for m, c in terms.items() if c}
        if terms:
            return Multivector(dim, 1, terms, dual)


def random_multivector(
    rng: random.Random,
    dim: int,
    grade: int,
    bound: int = 10,
    max_terms: int | None = None,
) -> Multivector:
    """Random nonzero multivector with a random sparse support."""
    total = comb(dim, grade)
    if total == 0:
        raise InputError(f"no grade-{grade} basis elements in dimension {dim}")
    cap = min(max_terms or total, total)
    masks = [mask_of(c) for c in combinations(range(1, dim + 1), grade)]
    nterms = rng.randint(1, cap)
    chosen = rng.sample(masks, nterms)
    terms: dict[int, Coeff] = {}
    for m in chosen:
        c = 0
        while not c:
            c = rng.randint(-bound, bound)
        terms[m] = c
    return Multivector(dim, grade, terms)


def random_simple(
    rng: random.Random, dim: int, grade: int, bound: int = 10
) -> Multivector:
    """Random nonzero decomposable multivector, as a wedge of random vectors."""
    if grade == 0:
        value = 0
        while not value:
            value = rng.randint(-bound, bound)
        return Multivector.scalar(dim, value)
    while True:
        p = from_factors([random_vector(rng, dim, bound) for _ in range(grade)])
        if not p.is_zero():
            return p


def random_nonsimple(
    rng: random.Random, dim: int, grade: int, bound: int = 10, max_tries: int = 10_000
) -> Multivector:
    """Random non-decomposable multivector, by rejection against the oracle.

    Grades 0, 1, dim-1 and dim admit no such multivector and are rejected.
    """
    if grade <= 1 or grade >= dim - 1:
        raise InputError(
            f"every multivector of grade {grade} in dimension {dim} is "
            "decomposable; cannot generate a non-decomposable one"
        )
    for _ in range(max_tries):
        p = random_multivector(rng, dim, grade, bound)
        if not is_simple_oracle(p):
            return p
    # Rejection at legal (dim, grade) succeeds almost surely within a few
    # draws; exhausting the cap indicates a bug rather than bad luck.
    raise InvariantViolation(
        f"no non-decomposable multivector found in {max_tries} draws"
    )  # pragma: no cover
