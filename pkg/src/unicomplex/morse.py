"""Hasse diagrams, greedy pivot matchings, acyclicity, critical cells.

A matching is built inductively over an ordered pivot schedule: in step k,
every still-unmatched simplex sigma to which pivot_k can be added (the
flavor decides what "addable" means) is paired with sigma + {pivot_k},
provided that upper partner is itself still unmatched.  Within a step the
pairing is conflict-free: lower partners never contain the pivot, upper
partners always do, and the upper partner determines the lower one.  The
empty simplex participates in no pair.
"""

from __future__ import annotations

from bisect import insort
from dataclasses import dataclass
from fractions import Fraction

from .errors import AcyclicityError, InputError
from .fplin import FpLine, FpVector, echelon_basis, in_span

VECTOR_FLAVOR = "vector_flavor"  # addable iff pivot is not a member of sigma
LINE_FLAVOR = "line_flavor"  # addable iff pivot's label is outside span(sigma)
FLAVORS = (VECTOR_FLAVOR, LINE_FLAVOR)


@dataclass(frozen=True)
class Matching:
    pairs: tuple  # ((lower, upper), ...) sorted
    pivot_schedule: tuple
    critical: tuple  # sorted unmatched simplices
    flavor: str

    def partner_map(self):
        out = {}
        for lo, hi in self.pairs:
            out[lo] = hi
            out[hi] = lo
        return out


@dataclass(frozen=True)
class MorseSummary:
    flavor: str
    pivot_schedule: tuple
    n_pairs: int
    acyclic: bool
    critical_by_dim: dict
    euler: int
    euler_consistent: bool  # only meaningful when middle_critical is False
    middle_critical: bool


def hasse_edges(K):
    """Directed covering edges sigma -> tau with tau a codimension-1 face."""
    for d in range(1, K.dim + 1):
        for s in K.sorted_simplices(d):
            for i in range(len(s)):
                yield s, s[:i] + s[i + 1:]


def _label_coords(label):
    if isinstance(label, FpLine):
        return label.generator.coords
    if isinstance(label, FpVector):
        return label.coords
    coords = getattr(label, "coords", None)
    if coords is None:
        gen = getattr(label, "generator", None)
        coords = getattr(gen, "coords", None)
    if coords is None:
        raise InputError(
            f"line_flavor needs vector-like labels with coordinates, got {label!r}"
        )
    return coords


def _rank_q(rows):
    a = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    ncols = len(a[0]) if a else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = 1 / a[rank][c]
        a[rank] = [x * inv for x in a[rank]]
        for i in range(len(a)):
            if i != rank and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank


def _make_span_test(K):
    """Return addable(sigma, pivot) for line_flavor: pivot outside span(sigma).

    Over F_p (p from the complex meta) spans are echelon bases mod p; over Z
    (or anything else with integer coordinates) spans are rational."""
    p = K.meta.get("p")
    ring = K.meta.get("ring")
    coords = {v: _label_coords(lab) for v, lab in K.labels.items()}
    if ring == "fp" or p is not None:
        cache = {}

        def outside(simplex, pivot):
            basis = cache.get(simplex)
            if basis is None:
                basis = echelon_basis((coords[v] for v in simplex), p)
                cache[simplex] = basis
            return not in_span(basis, coords[pivot], p)

    else:

        def outside(simplex, pivot):
            rows = [coords[v] for v in simplex]
            base = _rank_q(rows) if rows else 0
            return _rank_q(rows + [coords[pivot]]) > base

    return outside


def greedy_matching(K, pivots, flavor):
    """Run the inductive pivot schedule and return the resulting matching."""
    if flavor not in FLAVORS:
        raise InputError(f"unknown flavor {flavor!r}")
    vertex_set = set(K.labels)
    for pv in pivots:
        if pv not in vertex_set:
            raise InputError(f"pivot {pv} is not a vertex of the complex")
    outside = _make_span_test(K) if flavor == LINE_FLAVOR else None

    matched = {}
    pairs = []
    for pivot in pivots:
        for d in range(K.dim + 1):
            for s in K.sorted_simplices(d):
                if s in matched:
                    continue
                if flavor == VECTOR_FLAVOR:
                    if pivot in s:
                        continue
                else:
                    if not outside(s, pivot):
                        continue
                up = list(s)
                insort(up, pivot)
                up = tuple(up)
                if up not in K or up in matched:
                    continue
                matched[s] = up
                matched[up] = s
                pairs.append((s, up))
    critical = tuple(s for s in K.all_simplices() if s not in matched)
    return Matching(tuple(sorted(pairs)), tuple(pivots), critical, flavor)


def matching_from_pairs(K, pairs, flavor="explicit"):
    """Package explicit (lower, upper) pairs as a Matching (for checks)."""
    seen = set()
    for lo, hi in pairs:
        if lo not in K or hi not in K:
            raise InputError(f"pair ({lo}, {hi}) uses simplices outside the complex")
        if len(hi) != len(lo) + 1 or not set(lo).issubset(hi):
            raise InputError(f"pair ({lo}, {hi}) is not a covering pair")
        if lo in seen or hi in seen:
            raise InputError("a simplex occurs in two pairs")
        seen.update((lo, hi))
    critical = tuple(s for s in K.all_simplices() if s not in seen)
    return Matching(tuple(sorted(pairs)), (), critical, flavor)


def validate_matching(K, matching):
    """Every pair is a covering pair in K and no simplex occurs twice."""
    matching_from_pairs(K, matching.pairs)
    return True


def check_acyclic(K, matching):
    """Search the modified Hasse diagram for directed cycles.

    Matched edges are reversed (they point up one dimension); any directed
    cycle must alternate inside a single adjacent-dimension band, so each
    band is searched independently.  Returns (True, None) or (False, cycle).
    """
    validate_matching(K, matching)
    partner = matching.partner_map()
    for d in range(K.dim):
        succ = {}
        for up in K.sorted_simplices(d + 1):
            down = [up[:i] + up[i + 1:] for i in range(len(up))]
            succ[up] = [f for f in down if partner.get(f) != up]
        for lo in K.sorted_simplices(d):
            up = partner.get(lo)
            succ[lo] = [up] if up is not None and len(up) == len(lo) + 1 else []
        color = {}
        for start in succ:
            if color.get(start):
                continue
            stack = [(start, iter(succ[start]))]
            color[start] = 1
            path = [start]
            while stack:
                node, it = stack[-1]
                advanced = False
                for nxt in it:
                    c = color.get(nxt, 0)
                    if c == 1:
                        return False, path[path.index(nxt):]
                    if c == 0:
                        color[nxt] = 1
                        path.append(nxt)
                        stack.append((nxt, iter(succ[nxt])))
                        advanced = True
                        break
                if not advanced:
                    color[node] = 2
                    path.pop()
                    stack.pop()
    return True, None


def critical_cells(matching):
    """Unmatched simplices partitioned by dimension."""
    by_dim = {}
    for s in matching.critical:
        by_dim.setdefault(len(s) - 1, []).append(s)
    return {d: sorted(cells) for d, cells in sorted(by_dim.items())}


def pivot_free_facet_count(K, pivots):
    """Facets containing none of the pivot vertices (the census the matching
    step analysis predicts in prose; recorded next to the operational census,
    the two are not asserted equal)."""
    pv = set(pivots)
    return sum(1 for f in K.facets() if not pv & set(f))


def morse_summary(K, pivots, flavor):
    """Matching + acyclicity + critical census + Euler bookkeeping.

    When the critical cells are exactly one vertex plus top-dimensional
    cells, chi(K) must equal 1 + (-1)^top * (top critical count); any
    critical cell in another dimension is flagged instead."""
    matching = greedy_matching(K, pivots, flavor)
    ok, cycle = check_acyclic(K, matching)
    if not ok:
        raise AcyclicityError(cycle)
    census = {d: len(cells) for d, cells in critical_cells(matching).items()}
    euler = K.f_vector().euler
    top = K.dim
    clean = set(census) <= {0, top} and census.get(0) == 1
    middle = not clean
    morse_euler = sum((-1) ** d * c for d, c in census.items())
    consistent = clean and euler == morse_euler
    if clean and not consistent:
        raise AssertionError(
            f"Euler count mismatch: chi={euler}, census={census}"
        )
    return MorseSummary(
        flavor=flavor,
        pivot_schedule=tuple(pivots),
        n_pairs=len(matching.pairs),
        acyclic=True,
        critical_by_dim=census,
        euler=euler,
        euler_consistent=consistent,
        middle_critical=middle,
    )
