"""Brute-force oracles kept independent of the library code paths they check.

Dimensions are counted by enumerating semistandard tableaux; tensor products
are expanded through explicit polynomial arithmetic on monomial dictionaries.
"""

from collections import Counter
from itertools import combinations_with_replacement


def ssyt_count(lam, n: int) -> int:
    """Number of semistandard tableaux of shape lam with entries in 1..n."""
    lam = tuple(p for p in lam if p)
    if not lam:
        return 1
    count = 0

    def fill(row_idx, rows):
        nonlocal count
        if row_idx == len(lam):
            count += 1
            return
        width = lam[row_idx]
        above = rows[-1] if rows else None
        for values in combinations_with_replacement(range(1, n + 1), width):
            if above is not None and any(values[c] <= above[c] for c in range(width)):
                continue
            fill(row_idx + 1, rows + [values])

    fill(0, [])
    return count


def ssyt_monomials(lam, n: int) -> Counter:
    """The Schur polynomial of shape lam in n variables, as a Counter mapping
    exponent tuples to coefficients."""
    lam = tuple(p for p in lam if p)
    out: Counter = Counter()
    if not lam:
        out[(0,) * n] = 1
        return out

    def fill(row_idx, rows, expo):
        if row_idx == len(lam):
            out[tuple(expo)] += 1
            return
        width = lam[row_idx]
        above = rows[-1] if rows else None
        for values in combinations_with_replacement(range(1, n + 1), width):
            if above is not None and any(values[c] <= above[c] for c in range(width)):
                continue
            for v in values:
                expo[v - 1] += 1
            fill(row_idx + 1, rows + [values], expo)
            for v in values:
                expo[v - 1] -= 1

    fill(0, [], [0] * n)
    return out


def poly_mult(a: Counter, b: Counter) -> Counter:
    out: Counter = Counter()
    for ea, ca in a.items():
        for eb, cb in b.items():
            out[tuple(x + y for x, y in zip(ea, eb))] += ca * cb
    return out


def expand_in_schur_basis(poly: Counter, n: int) -> dict:
    """Write a symmetric polynomial as a sum of Schur polynomials.

    Peels off the lexicographically greatest monomial, whose exponent is a
    partition for symmetric input; unitriangularity makes this terminate.
    """
    work = Counter({e: c for e, c in poly.items() if c})
    out: dict = {}
    while work:
        lead = max(work)
        coeff = work[lead]
        assert all(a >= b for a, b in zip(lead, lead[1:])), "input was not symmetric"
        lam = tuple(p for p in lead if p)
        out[lam] = out.get(lam, 0) + coeff
        for e, c in ssyt_monomials(lam, n).items():
            work[e] -= coeff * c
            if work[e] == 0:
                del work[e]
    return out


def tensor_by_characters(lam, mu, n: int) -> dict:
    """Independent tensor decomposition on an n-dimensional space."""
    prod = poly_mult(ssyt_monomials(lam, n), ssyt_monomials(mu, n))
    return expand_in_schur_basis(prod, n)


def horizontal_strip_additions(lam, q: int, max_rows: int) -> set:
    """Direct enumeration of the shapes reachable by adding a q-box strip."""
    lam = tuple(p for p in lam if p)
    ext = list(lam) + [0] * (max_rows - len(lam))
    results = set()

    def rec(i, rem, prefix):
        if i == max_rows:
            if rem == 0:
                results.add(tuple(p for p in prefix if p))
            return
        lo = ext[i]
        hi = min(ext[i - 1] if i > 0 else lo + rem, lo + rem)
        for v in range(lo, hi + 1):
            rec(i + 1, rem - (v - lo), prefix + [v])

    rec(0, q, [])
    return results
