"""Shelling verification, the inductive shelling of the universal complexes
over F_p, and shiftedness testing.

The constructed shelling groups facets of the n-dimensional complex by
their set of vertices outside the (n-1)-dimensional subcomplex (the "new"
vertices), orders groups by size of that set and then lexicographically,
and orders each group by a recursively constructed shelling of the link of
the subspace the new vertices cut out of the old coordinate hyperplane.
The verifier, not the construction, is the ground truth.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from itertools import combinations

from .errors import InputError, ResourceLimitError
from .fplin import (
    FpLine,
    FpVector,
    PrimeField,
    echelon_basis,
    line_canonical_fp,
    _echelon_insert,
)
from .universal_fp import UniversalKind, build_universal


@dataclass(frozen=True)
class ShellingOrder:
    facets: tuple  # ordered simplices (vertex-id tuples), each facet once


def verify_shelling(K, order):
    """Check the shelling condition: for each k >= 2 the maximal faces of
    the intersection of facet k with the union of the earlier ones all have
    cardinality |F_k| - 1.  Returns (True, None) or (False, k) with the
    first failing 1-based index."""
    if not K.is_pure():
        raise InputError("shellings are defined for pure complexes")
    facets = K.facets()
    forder = [tuple(f) for f in order.facets]
    if len(set(forder)) != len(forder) or sorted(forder) != facets:
        raise InputError("order must cover every facet exactly once")
    prev = []
    for k, F in enumerate(forder):
        if k:
            fs = set(F)
            inters = {tuple(sorted(fs & g)) for g in prev}
            maximal = [
                s for s in inters
                if not any(s != t and set(s) < set(t) for t in inters)
            ]
            if any(len(s) != len(F) - 1 for s in maximal):
                return False, k + 1
        prev.append(set(F))
    return True, None


# -- inductive construction over F_p ----------------------------------------


def _coords(label):
    return label.generator.coords if isinstance(label, FpLine) else label.coords


def _vertex_labels(variant, p, n):
    from .fplin import enumerate_lines_fp, enumerate_vectors_fp

    field = PrimeField(p)
    if variant == "K":
        return enumerate_lines_fp(n, field)
    return enumerate_vectors_fp(n, field)


def _rank(rows, p):
    return len(echelon_basis(rows, p))


def _hyperplane_intersection_basis(rows, p):
    """Basis of (row space) intersected with {last coordinate = 0}, as
    echelon rows with the last coordinate dropped."""
    basis = [list(r) for _, r in echelon_basis(rows, p)]
    carriers = [r for r in basis if r[-1]]
    flat = [r for r in basis if not r[-1]]
    if carriers:
        u = carriers[0]
        inv = pow(u[-1], -1, p)
        for r in carriers[1:]:
            f = (r[-1] * inv) % p
            flat.append([(a - f * b) % p for a, b in zip(r, u)])
    trunc = [tuple(r[:-1]) for r in flat]
    return [r for _, r in echelon_basis(trunc, p)]


def _completion_matrix(basis_rows, p, size):
    """Invertible size x size matrix whose first columns are the given
    vectors, completed greedily by standard basis vectors."""
    cols = [tuple(b) for b in basis_rows]
    ech = echelon_basis(cols, p)
    for t in range(size):
        if len(cols) == size:
            break
        e = tuple(1 if i == t else 0 for i in range(size))
        ext = _echelon_insert(ech, e, p)
        if ext is not None:
            ech = ext
            cols.append(e)
    return cols  # column vectors


def _apply_columns(cols, vec, p):
    size = len(cols[0])
    out = [0] * size
    for w, col in zip(vec, cols):
        if w:
            for i in range(size):
                out[i] = (out[i] + w * col[i]) % p
    return tuple(out)


def _transport_label(variant, cols, label, p):
    image = _apply_columns(cols, _coords(label), p)
    if variant == "K":
        return line_canonical_fp(FpVector(image), PrimeField(p))
    return FpVector(image)


def _embed_label(variant, label):
    coords = _coords(label) + (0,)
    return FpLine(FpVector(coords)) if variant == "K" else FpVector(coords)


def _shell_labels(variant, p, amb, d, memo):
    """Ordered facets of the link of span(e_1..e_d) inside the universal
    complex on F_p^amb, as tuples of labels."""
    key = (variant, p, amb, d)
    if key in memo:
        return memo[key]
    if d >= amb:
        memo[key] = ()
        return ()
    all_labels = _vertex_labels(variant, p, amb)
    if d == amb - 1:
        out = tuple((lab,) for lab in all_labels if any(_coords(lab)[d:]))
        memo[key] = out
        return out

    std = [tuple(1 if i == j else 0 for i in range(amb)) for j in range(d)]
    v1 = [lab for lab in all_labels if _coords(lab)[-1]]
    out = []
    for i in range(1, amb - d + 1):
        for combo in combinations(v1, i):
            rows = std + [_coords(lab) for lab in combo]
            if _rank(rows, p) != d + i:
                continue
            if i < amb - d:
                wbasis = _hyperplane_intersection_basis(rows, p)
                k = d + i - 1
                if len(wbasis) != k:
                    raise AssertionError("old-subspace intersection has wrong rank")
                cols = _completion_matrix(wbasis, p, amb - 1)
                for facet in _shell_labels(variant, p, amb - 1, k, memo):
                    moved = tuple(
                        _embed_label(variant, _transport_label(variant, cols, lab, p))
                        for lab in facet
                    )
                    out.append(tuple(sorted(moved + combo)))
            else:
                out.append(tuple(sorted(combo)))
    memo[key] = tuple(out)
    return memo[key]


def construct_shelling_fp(kind, built=None):
    """The inductive shelling order for X/K(F_p^n); the output is verified
    and a failure is a hard error carrying the counterexample index."""
    if built is None:
        built = build_universal(kind)
    label_facets = _shell_labels(kind.variant, kind.p, kind.n, 0, {})
    vid = {lab: v for v, lab in built.labels.items()}
    order = ShellingOrder(
        tuple(tuple(sorted(vid[lab] for lab in f)) for f in label_facets)
    )
    ok, idx = verify_shelling(built, order)
    if not ok:
        raise AssertionError(
            f"constructed order for {kind} fails the shelling condition at facet {idx}"
        )
    return order


# -- shiftedness -------------------------------------------------------------


def is_shifted(K, max_vertices=10):
    """Decide whether some vertex labeling makes K closed under replacing a
    vertex of a simplex by one with a smaller label.

    Replacement closure on all simplices reduces to closure on facets, and
    whether labels can be chosen at all reduces to precedence constraints:
    if replacing v by u in some facet leaves the complex, u must get a
    larger label than v.  K is shifted iff the constraint digraph is
    acyclic; a witness labeling is read off a topological order."""
    verts = K.vertices()
    if len(verts) > max_vertices:
        raise ResourceLimitError(
            f"{len(verts)} vertices exceeds the shiftedness cap {max_vertices}; "
            "restrict to a vertex orbit sample and retry"
        )
    facets = [set(f) for f in K.facets()]
    after = {v: set() for v in verts}  # v -> vertices that must get larger labels
    for v in verts:
        holding = [f for f in facets if v in f]
        for u in verts:
            if u == v:
                continue
            for f in holding:
                if u in f:
                    continue
                if tuple(sorted((f - {v}) | {u})) not in K:
                    after[v].add(u)
                    break
    indeg = {v: 0 for v in verts}
    for outs in after.values():
        for u in outs:
            indeg[u] += 1
    heap = [v for v in verts if indeg[v] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        v = heapq.heappop(heap)
        order.append(v)
        for u in sorted(after[v]):
            indeg[u] -= 1
            if indeg[u] == 0:
                heapq.heappush(heap, u)
    if len(order) < len(verts):
        return False, None
    return True, {v: i + 1 for i, v in enumerate(order)}
