"""Exact linear algebra over the prime field F_p.

Vectors are immutable coordinate tuples with entries reduced into [0, p).
Lines (projective points) are represented by the unique generator whose
first nonzero coordinate is 1, which makes equality and enumeration order
well defined.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import InputError


def is_prime(p):
    """Deterministic trial-division primality check (desk-scale p)."""
    if p < 2:
        return False
    if p in (2, 3):
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True, order=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise InputError(f"not a prime: {self.p}")


@dataclass(frozen=True, order=True)
class FpVector:
    """A vector in F_p^n; coords are ints in [0, p), reduced by the caller."""

    coords: tuple

    @property
    def n(self):
        return len(self.coords)

    def is_zero(self):
        return not any(self.coords)

    def __str__(self):
        return "(" + ",".join(map(str, self.coords)) + ")"


@dataclass(frozen=True, order=True)
class FpLine:
    """A line through the origin; generator has first nonzero coordinate 1."""

    generator: FpVector

    @property
    def n(self):
        return self.generator.n

    def __str__(self):
        return "[" + ",".join(map(str, self.generator.coords)) + "]"


def fp_vector(coords, field):
    """Build an FpVector, reducing each coordinate mod p."""
    return FpVector(tuple(int(c) % field.p for c in coords))


def _common_dimension(vectors):
    dims = {v.n for v in vectors}
    if len(dims) > 1:
        raise InputError(f"ambient dimension mismatch: {sorted(dims)}")
    return dims.pop() if dims else 0


def _echelon_insert(basis, vec, p):
    """Reduce vec against an echelon basis (rows with leading 1, sorted by
    pivot column).  Returns the extended basis, or None if vec is in the span.
    """
    row = list(vec)
    for pivot_col, brow in basis:
        c = row[pivot_col]
        if c:
            row = [(a - c * b) % p for a, b in zip(row, brow)]
    for col, c in enumerate(row):
        if c:
            inv = pow(c, -1, p)
            row = tuple((a * inv) % p for a in row)
            out = list(basis)
            out.append((col, row))
            out.sort()
            return tuple(out)
    return None


def echelon_basis(rows, p):
    """Echelon basis (tuple of (pivot_col, row)) of the span of integer rows."""
    basis = ()
    for r in rows:
        ext = _echelon_insert(basis, [c % p for c in r], p)
        if ext is not None:
            basis = ext
    return basis


def in_span(basis, coords, p):
    """True iff coords lies in the span of an echelon basis."""
    return _echelon_insert(basis, [c % p for c in coords], p) is None


def rank_fp(vectors, field):
    """Rank of the span of the given vectors, by Gaussian elimination mod p."""
    vectors = list(vectors)
    _common_dimension(vectors)
    return len(echelon_basis((v.coords for v in vectors), field.p))


def is_unimodular_fp(vectors, field):
    """True iff the vectors are linearly independent (duplicates force False)."""
    vectors = list(vectors)
    _common_dimension(vectors)
    if len(set(vectors)) < len(vectors):
        return False
    return rank_fp(vectors, field) == len(vectors)


def line_canonical_fp(v, field):
    """The line through v, represented by the scalar multiple of v whose
    first nonzero coordinate is 1."""
    if v.is_zero():
        raise InputError("zero vector spans no line")
    p = field.p
    first = next(c for c in v.coords if c % p)
    inv = pow(first % p, -1, p)
    return FpLine(FpVector(tuple((c * inv) % p for c in v.coords)))


def enumerate_vectors_fp(n, field):
    """All nonzero vectors of F_p^n in lexicographic coordinate order."""
    if n < 1:
        raise InputError(f"ambient dimension must be >= 1, got {n}")
    p = field.p
    return tuple(
        FpVector(c) for c in product(range(p), repeat=n) if any(c)
    )


def enumerate_lines_fp(n, field):
    """All lines of F_p^n exactly once, ordered lexicographically by
    canonical generator; the count is (p^n - 1)/(p - 1)."""
    if n < 1:
        raise InputError(f"ambient dimension must be >= 1, got {n}")
    p = field.p
    lines = []
    for first in range(n):
        for rest in product(range(p), repeat=n - first - 1):
            lines.append(FpLine(FpVector((0,) * first + (1,) + rest)))
    lines.sort(key=lambda l: l.generator.coords)
    return tuple(lines)
