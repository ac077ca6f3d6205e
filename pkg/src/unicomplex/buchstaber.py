"""Buchstaber invariant machinery: exact chromatic numbers, the closed
formula for graphs, general bounds, direct nondegenerate-map search, and
the bound functions for maps between universal complexes.

s_{F_p}(K) = m - r where r is the least rank with a nondegenerate simplicial
map K -> K(F_p^r).  For graphs this reduces to a ceiling logarithm of the
chromatic number, which gives the cross-validation target for the searcher.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError, ResourceLimitError
from .fplin import PrimeField, enumerate_lines_fp, is_unimodular_fp
from .scomplex import SimplicialComplex

SEARCH_VERTEX_CAP = 12
SEARCH_RANK_CAP = 4
COLORING_VERTEX_CAP = 24


def ceil_log(base, x):
    """Smallest k >= 0 with base**k >= x, by integer exponentiation."""
    if x < 1:
        raise InputError(f"ceil_log needs x >= 1, got {x}")
    k = 0
    power = 1
    while power < x:
        power *= base
        k += 1
    return k


# -- chromatic number ---------------------------------------------------------


def _adjacency(K):
    adj = {v: set() for v in K.vertices()}
    for a, b in K.simplices_of_dim(1):
        adj[a].add(b)
        adj[b].add(a)
    return adj


def _greedy_clique(adj, order):
    clique = []
    for v in order:
        if all(v in adj[u] for u in clique):
            clique.append(v)
    return clique


def chromatic_number(K, max_vertices=COLORING_VERTEX_CAP):
    """Exact chromatic number of the 1-skeleton with a witness coloring,
    by branch and bound over vertex colorings."""
    verts = K.vertices()
    if len(verts) > max_vertices:
        raise ResourceLimitError(
            f"{len(verts)} vertices exceeds the coloring cap {max_vertices}"
        )
    if not verts:
        return 0, {}
    adj = _adjacency(K)
    order = sorted(verts, key=lambda v: (-len(adj[v]), v))
    lower = len(_greedy_clique(adj, order))

    # greedy upper bound and witness
    best = {}
    for v in order:
        used = {best[u] for u in adj[v] if u in best}
        c = 0
        while c in used:
            c += 1
        best[v] = c
    upper = max(best.values()) + 1

    def try_k(k):
        coloring = {}

        def place(idx, used):
            if idx == len(order):
                return True
            v = order[idx]
            forbidden = {coloring[u] for u in adj[v] if u in coloring}
            for c in range(min(used + 1, k)):
                if c in forbidden:
                    continue
                coloring[v] = c
                if place(idx + 1, max(used, c + 1)):
                    return True
                del coloring[v]
            return False

        return dict(coloring) if place(0, 0) else None

    k = lower
    while k < upper:
        witness = try_k(k)
        if witness is not None:
            return k, witness
        k += 1
    return upper, best


def s_fp_graph(K, p):
    """The closed formula for simple graphs: m - ceil(log_p((p-1)*gamma + 1))."""
    if K.dim > 1:
        raise InputError("the graph formula applies to complexes of dimension <= 1")
    PrimeField(p)
    gamma, _ = chromatic_number(K)
    m = K.n_vertices
    return m - ceil_log(p, (p - 1) * gamma + 1)


# -- direct search for nondegenerate maps ------------------------------------


@dataclass(frozen=True)
class NondegenerateMap:
    assignment: dict  # source vertex id -> target line index

    def __getitem__(self, v):
        return self.assignment[v]


def is_nondegenerate_map(source, vmap, line_labels, field):
    """Check that every facet of the source maps to pairwise distinct lines
    forming a unimodular set."""
    for f in source.facets():
        imgs = [line_labels[vmap[v]] for v in f]
        if len({i.generator for i in imgs}) != len(imgs):
            return False
        if not is_unimodular_fp([i.generator for i in imgs], field):
            return False
    return True


def min_rank_search(K, p, r_max=SEARCH_RANK_CAP):
    """Least r <= r_max admitting a nondegenerate map K -> K(F_p^r), by
    backtracking over vertex assignments to lines; returns (r, map) or
    (None, None).  The first vertex is pinned to the first line (the target
    symmetry group is transitive on lines), later candidates are tried in
    canonical order, so the witness is deterministic."""
    PrimeField(p)
    verts = K.vertices()
    if len(verts) > SEARCH_VERTEX_CAP:
        raise ResourceLimitError(
            f"{len(verts)} vertices exceeds the search cap {SEARCH_VERTEX_CAP}"
        )
    if r_max > SEARCH_RANK_CAP:
        raise ResourceLimitError(f"r_max {r_max} exceeds the cap {SEARCH_RANK_CAP}")
    if not verts:
        return None, None
    field = PrimeField(p)
    facets = [tuple(f) for f in K.facets()]
    facets_with = {v: [f for f in facets if v in f] for v in verts}

    for r in range(1, r_max + 1):
        lines = enumerate_lines_fp(r, field)
        gens = [l.generator for l in lines]
        assign = {}

        def consistent(v):
            for f in facets_with[v]:
                placed = [assign[u] for u in f if u in assign]
                if len(set(placed)) != len(placed):
                    return False
                if not is_unimodular_fp([gens[i] for i in placed], field):
                    return False
            return True

        def place(idx):
            if idx == len(verts):
                return True
            v = verts[idx]
            candidates = [0] if idx == 0 else range(len(lines))
            for c in candidates:
                assign[v] = c
                if consistent(v) and place(idx + 1):
                    return True
                del assign[v]
            return False

        if place(0):
            vmap = dict(assign)
            if not is_nondegenerate_map(K, vmap, lines, field):
                raise AssertionError("search produced a degenerate map")
            return r, NondegenerateMap(vmap)
    return None, None


# -- bounds -------------------------------------------------------------------


@dataclass(frozen=True)
class BuchstaberReport:
    m: int
    gamma: int
    lower: int  # m - gamma
    upper_dim: int  # m - dim K - 1
    upper_log: int  # m - ceil(log_p((p-1) gamma + 1))
    p: int
    s_fp: int | None
    method: str  # "formula" | "search" | "bounds-only"


def buchstaber_bounds(K, p):
    """All bounds, plus the exact s_{F_p} when the complex is a graph (the
    closed formula) or small enough to search.  The chain
    lower <= s_fp <= upper bounds is asserted whenever s_fp is computed."""
    PrimeField(p)
    if K.n_vertices == 0:
        raise InputError("bounds need at least one vertex")
    m = K.n_vertices
    gamma, _ = chromatic_number(K)
    lower = m - gamma
    upper_dim = m - K.dim - 1
    upper_log = m - ceil_log(p, (p - 1) * gamma + 1)
    s_fp = None
    method = "bounds-only"
    if K.dim <= 1:
        s_fp = s_fp_graph(K, p)
        method = "formula"
    elif m <= SEARCH_VERTEX_CAP and gamma <= SEARCH_RANK_CAP:
        r, _ = min_rank_search(K, p, r_max=min(gamma, SEARCH_RANK_CAP))
        if r is not None:
            s_fp = m - r
            method = "search"
    if s_fp is not None:
        if not (lower <= s_fp <= upper_dim and s_fp <= upper_log):
            raise AssertionError(
                f"bound chain violated: {lower} <= {s_fp} <= "
                f"{upper_dim}, log bound {upper_log}"
            )
    return BuchstaberReport(m, gamma, lower, upper_dim, upper_log, p, s_fp, method)


@dataclass(frozen=True)
class ZetaThetaBounds:
    p: int
    q: int
    n: int
    zeta_lower: int
    zeta_upper: int
    theta_lower: int
    theta_upper: int
    monotone_next: bool


def _zeta_lower(p, q, n):
    f0 = (p**n - 1) // (p - 1)
    return ceil_log(q, (q - 1) * f0 + 1)


def zeta_theta_bounds(p, q, n):
    """Exact bounds for the least rank of a universal-complex target over
    F_q (zeta) or Z (theta) receiving K(F_p^n) nondegenerately; the theta
    lower bound takes q = 2, where it is sharpest.  The monotone flag
    re-evaluates at n+1 and checks all four bounds are nondecreasing."""
    PrimeField(p)
    PrimeField(q)
    if n < 1:
        raise InputError("n must be >= 1")
    f0 = (p**n - 1) // (p - 1)
    bounds = (
        _zeta_lower(p, q, n),
        f0,
        _zeta_lower(p, 2, n),
        f0,
    )
    f0_next = (p ** (n + 1) - 1) // (p - 1)
    nxt = (
        _zeta_lower(p, q, n + 1),
        f0_next,
        _zeta_lower(p, 2, n + 1),
        f0_next,
    )
    monotone = all(b <= c for b, c in zip(bounds, nxt))
    return ZetaThetaBounds(p, q, n, *bounds, monotone)
