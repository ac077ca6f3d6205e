"""Integer-lattice side: unimodularity over Z, the canonical line order,
truncated universal complexes over Z, the explicit critical family, and
quasitoric pair validation.

A line in Z^n is a rank-1 direct summand; it has two generators and is
represented by the primitive one whose first nonzero coordinate is positive.
Lines are well-ordered by 1-norm of the generator, ties broken from the last
coordinate downward; truncating by 1-norm therefore takes order ideals of
that well-order.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import gcd

from .errors import InputError, ResourceLimitError
from .homology import IntMatrix, smith_normal_form
from .scomplex import SimplicialComplex


@dataclass(frozen=True, order=True)
class ZVector:
    coords: tuple

    @property
    def n(self):
        return len(self.coords)

    def norm1(self):
        return sum(abs(c) for c in self.coords)

    def __str__(self):
        return "(" + ",".join(map(str, self.coords)) + ")"


@dataclass(frozen=True)
class ZLine:
    generator: ZVector  # primitive, first nonzero coordinate positive

    @property
    def n(self):
        return self.generator.n

    def __str__(self):
        return "[" + ",".join(map(str, self.generator.coords)) + "]"


def z_line(coords):
    """The line through an integer vector: divide out the gcd and normalize
    the sign of the first nonzero coordinate."""
    c = tuple(int(x) for x in coords)
    if not any(c):
        raise InputError("zero vector spans no line")
    g = 0
    for x in c:
        g = gcd(g, x)
    c = tuple(x // g for x in c)
    first = next(x for x in c if x)
    if first < 0:
        c = tuple(-x for x in c)
    return ZLine(ZVector(c))


def is_primitive(v):
    g = 0
    for x in v.coords:
        g = gcd(g, x)
    return g == 1


def is_unimodular_z(vectors):
    """True iff the vectors span a direct summand of rank equal to their
    number: Smith normal form all ones."""
    vectors = list(vectors)
    dims = {v.n for v in vectors}
    if len(dims) > 1:
        raise InputError(f"ambient dimension mismatch: {sorted(dims)}")
    if not vectors:
        return True
    snf = smith_normal_form(IntMatrix.from_rows([v.coords for v in vectors]))
    return snf.rank == len(vectors) and all(d == 1 for d in snf.diagonal)


# -- the line well-order ------------------------------------------------------


def z_line_key(line):
    """Primary key 1-norm; ties compared from the last coordinate downward."""
    g = line.generator.coords
    return (sum(abs(c) for c in g), tuple(reversed(g)))


def compare_z_lines(a, b):
    """-1, 0, or 1; a strict total order on lines of fixed ambient dimension."""
    if a.n != b.n:
        raise InputError("lines live in different ambient dimensions")
    ka, kb = z_line_key(a), z_line_key(b)
    return -1 if ka < kb else (0 if ka == kb else 1)


def _primitive_vectors(n, max_norm, positive_first=True):
    out = []
    for c in product(range(-max_norm, max_norm + 1), repeat=n):
        if not any(c) or sum(abs(x) for x in c) > max_norm:
            continue
        v = ZVector(c)
        if not is_primitive(v):
            continue
        if positive_first and next(x for x in c if x) < 0:
            continue
        out.append(v)
    return out


def enumerate_z_lines(n, max_norm):
    """All lines with generator 1-norm <= max_norm, in the well-order;
    growing max_norm only appends."""
    if n < 1 or max_norm < 1:
        raise InputError("need n >= 1 and max_norm >= 1")
    lines = [ZLine(v) for v in _primitive_vectors(n, max_norm)]
    lines.sort(key=z_line_key)
    return tuple(lines)


def enumerate_z_vectors(n, max_norm):
    """All primitive vectors (both signs) with 1-norm <= max_norm, ordered
    by the same key as lines."""
    vecs = _primitive_vectors(n, max_norm, positive_first=False)
    vecs.sort(key=lambda v: (v.norm1(), tuple(reversed(v.coords))))
    return tuple(vecs)


def build_truncated_universal_z(variant, n, max_norm, budget=10**6):
    """Full subcomplex of X(Z^n) or K(Z^n) on the vertices within the norm
    bound.  Every simplex is checked unimodular over Z."""
    if variant not in ("X", "K"):
        raise InputError(f"variant must be 'X' or 'K', got {variant!r}")
    if variant == "K":
        labels_seq = enumerate_z_lines(n, max_norm)
        gens = [l.generator for l in labels_seq]
    else:
        labels_seq = enumerate_z_vectors(n, max_norm)
        gens = list(labels_seq)
    m = len(labels_seq)
    by_dim = [set((i,) for i in range(m))]
    frontier = [(i,) for i in range(m)]
    count = m
    for _ in range(1, n):
        level = set()
        nxt = []
        for simp in frontier:
            for j in range(simp[-1] + 1, m):
                if is_unimodular_z([gens[v] for v in simp] + [gens[j]]):
                    new = simp + (j,)
                    level.add(new)
                    nxt.append(new)
                    count += 1
                    if count > budget:
                        raise ResourceLimitError(
                            f"truncated {variant}(Z^{n}), max_norm={max_norm} "
                            f"exceeds simplex budget {budget}"
                        )
        by_dim.append(level)
        frontier = nxt
    labels = {i: lab for i, lab in enumerate(labels_seq)}
    meta = {"ring": "z", "variant": variant, "n": n, "max_norm": max_norm}
    return SimplicialComplex(by_dim, labels, meta)


def critical_family_sigma(n, k):
    """The explicit unimodular (n-1)-simplex family sigma_k, as lines:
    {L(e_1 + k e_2), L(2 e_1 + (2k-1) e_2), L(e_1 + e_3), ..., L(e_1 + e_n)}."""
    if n < 2 or k < 1:
        raise InputError("need n >= 2 and k >= 1")
    gens = []
    gens.append((1, k) + (0,) * (n - 2))
    gens.append((2, 2 * k - 1) + (0,) * (n - 2))
    for j in range(2, n):
        gens.append(tuple(1 if i == 0 or i == j else 0 for i in range(n)))
    lines = tuple(z_line(g) for g in gens)
    if not is_unimodular_z([l.generator for l in lines]):
        raise AssertionError(f"sigma_{k} in Z^{n} is not unimodular")
    if len(lines) != n:
        raise AssertionError("sigma_k has the wrong dimension")
    return lines


# -- quasitoric pairs ---------------------------------------------------------


@dataclass(frozen=True)
class QuasitoricPair:
    dual_complex: SimplicialComplex  # boundary complex P* of a simple polytope
    lam: tuple  # n rows x m columns of ints, one column per vertex of P*

    @property
    def n(self):
        return len(self.lam)

    @property
    def m(self):
        return len(self.lam[0]) if self.lam else 0

    def column(self, j):
        return ZVector(tuple(row[j] for row in self.lam))


def _pair_shape_check(pair):
    K = pair.dual_complex
    if not K.is_pure() or K.dim != pair.n - 1:
        raise InputError(
            f"dual complex must be pure of dimension n-1 = {pair.n - 1}"
        )
    if pair.m != K.n_vertices:
        raise InputError(
            f"matrix has {pair.m} columns but the dual complex has "
            f"{K.n_vertices} vertices"
        )


def validate_quasitoric_pair(pair):
    """True iff for every facet of the dual complex the n x n minor of the
    characteristic matrix on its columns has determinant +-1.  On failure
    returns the first offending facet as witness."""
    _pair_shape_check(pair)
    verts = pair.dual_complex.vertices()
    col_of = {v: j for j, v in enumerate(verts)}
    for facet in pair.dual_complex.facets():
        cols = [pair.column(col_of[v]) for v in facet]
        if not is_unimodular_z(cols):
            return False, facet
    return True, None


def pair_to_simplicial_map(pair):
    """Vertex assignment of the induced nondegenerate map into X(Z^n):
    vertex i of the dual complex goes to column i."""
    ok, witness = validate_quasitoric_pair(pair)
    if not ok:
        raise InputError(f"invalid quasitoric pair; facet {witness} fails the minor test")
    verts = pair.dual_complex.vertices()
    return {v: pair.column(j) for j, v in enumerate(verts)}


def parse_quasitoric_pair(text):
    """Pair file: a facet-list block for P*, a blank line, then n rows of m
    whitespace-separated integers (columns in sorted vertex-label order)."""
    from .scomplex import parse_facet_list

    lines = text.splitlines()
    split = None
    seen_content = False
    for i, line in enumerate(lines):
        stripped = line.split("#", 1)[0].strip()
        if stripped:
            seen_content = True
        elif seen_content:
            split = i
            break
    if split is None:
        raise InputError("pair file needs a blank line between facets and matrix")
    K = parse_facet_list("\n".join(lines[:split]))
    rows = []
    for line in lines[split:]:
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        try:
            rows.append(tuple(int(t) for t in stripped.split()))
        except ValueError as exc:
            raise InputError(f"bad matrix row: {line!r}") from exc
    if not rows or len({len(r) for r in rows}) != 1:
        raise InputError("matrix block missing or ragged")
    return QuasitoricPair(K, tuple(rows))
