"""Independent oracles for the test suite.

Everything here is deliberately naive: spans are enumerated element by
element, determinants are expanded by cofactors, minimality is exhausted
over windows.  None of it shares code with the library's elimination or
Smith normal form paths, so agreement is evidence, not tautology.
"""

from itertools import combinations, product


def span_size_rank(rows, p):
    """Rank over F_p via |span| = p^rank: enumerate every linear combination."""
    span = set()
    m = len(rows)
    n = len(rows[0]) if rows else 0
    for coeffs in product(range(p), repeat=m):
        vec = tuple(
            sum(c * row[i] for c, row in zip(coeffs, rows)) % p for i in range(n)
        )
        span.add(vec)
    rank = 0
    while p**rank < len(span):
        rank += 1
    return rank


def brute_unimodular_complex(generators, p):
    """All unimodular subsets of the given generators, by filtering the
    power set with the span-size rank.  Returns sets of indices by size."""
    m = len(generators)
    by_size = {}
    for size in range(1, m + 1):
        for idx in combinations(range(m), size):
            rows = [generators[i] for i in idx]
            if span_size_rank(rows, p) == size:
                by_size.setdefault(size, set()).add(idx)
        if size not in by_size:
            break
    return by_size


def det_cofactor(a):
    """Exact determinant by cofactor expansion (small matrices only)."""
    n = len(a)
    if n == 1:
        return a[0][0]
    total = 0
    for j in range(n):
        if a[0][j]:
            minor = [row[:j] + row[j + 1:] for row in a[1:]]
            total += (-1) ** j * a[0][j] * det_cofactor(minor)
    return total


def minor_gcd_unimodular(rows):
    """Unimodularity over Z: some maximal minor nonzero and the gcd of all
    maximal minors is 1."""
    from math import gcd

    m, n = len(rows), len(rows[0])
    if m > n:
        return False
    g = 0
    for cols in combinations(range(n), m):
        sub = [[row[c] for c in cols] for row in rows]
        g = gcd(g, abs(det_cofactor(sub)))
        if g == 1:
            return True
    return False


def p_exponent(x, p):
    e = 0
    while x % p == 0:
        x //= p
        e += 1
    return e


def min_valuation_over_window(chosen, window, p):
    """The smallest p-adic valuation of prod(c - a) over candidates c in the
    window not already chosen."""
    best = None
    for c in window:
        if c in chosen:
            continue
        e = sum(p_exponent(c - a, p) for a in chosen)
        if best is None or e < best:
            best = e
    return best


def scalar_class(coords, p):
    """All nonzero scalar multiples of a vector mod p."""
    return {
        tuple((a * c) % p for c in coords) for a in range(1, p)
    }
