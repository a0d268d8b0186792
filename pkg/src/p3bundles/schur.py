"""Partition combinatorics: Weyl dimension, Pieri row products, the
Littlewood-Richardson rule, and partition duals.

Partitions are plain tuples of naturals in weakly decreasing order with no
trailing zeros (the canonical form).  Tensor decompositions are returned as
Counters mapping canonical partitions to multiplicities.
"""

from __future__ import annotations

from collections import Counter
from typing import Iterable, Sequence

from .errors import InvalidInputError

Partition = tuple[int, ...]


def canonical(parts: Iterable[int]) -> Partition:
    """Validate a weakly decreasing sequence of naturals and strip trailing zeros."""
    tup = tuple(int(p) for p in parts)
    if any(p < 0 for p in tup):
        raise InvalidInputError(f"partition parts must be nonnegative: {tup}")
    if any(a < b for a, b in zip(tup, tup[1:])):
        raise InvalidInputError(f"partition parts must be weakly decreasing: {tup}")
    while tup and tup[-1] == 0:
        tup = tup[:-1]
    return tup


def weyl_dim(lam: Sequence[int], n: int) -> int:
    """Dimension of the Schur module of shape ``lam`` on an n-dimensional space.

    Computed by the product over index pairs of (lam_i - lam_j + j - i)/(j - i),
    padding with zero parts up to ``n``.  Always a positive integer.
    """
    lam = canonical(lam)
    if len(lam) > n:
        raise InvalidInputError(f"shape {lam} has more than {n} parts")
    full = lam + (0,) * (n - len(lam))
    num = den = 1
    for i in range(n):
        for j in range(i + 1, n):
            num *= full[i] - full[j] + j - i
            den *= j - i
    if num % den:
        raise InvalidInputError(f"non-integral dimension for {lam}, n={n}")
    return num // den


def pieri_row(lam: Sequence[int], q: int, max_rows: int) -> Counter:
    """All shapes obtained from ``lam`` by adding ``q`` boxes, no two in one
    column, keeping at most ``max_rows`` rows.  Each occurs with multiplicity 1.
    """
    lam = canonical(lam)
    if q < 0:
        raise InvalidInputError("cannot add a negative number of boxes")
    if len(lam) > max_rows:
        raise InvalidInputError(f"shape {lam} has more than {max_rows} rows")
    ext = list(lam) + [0] * (max_rows - len(lam))
    out: Counter = Counter()

    def rec(i: int, rem: int, prefix: list[int]) -> None:
        if i == max_rows:
            if rem == 0:
                out[canonical(prefix)] += 1
            return
        lo = ext[i]
        # a horizontal strip puts row i+1 of the result at most at row i of lam
        hi = min(ext[i - 1] if i > 0 else lo + rem, lo + rem)
        for v in range(hi, lo - 1, -1):
            rec(i + 1, rem - (v - lo), prefix + [v])

    rec(0, q, [])
    return out


def _skew_fillings(lam: Partition, nu: Partition, mu: Partition) -> int:
    """Number of Littlewood-Richardson fillings of nu/lam with content mu.

    Cells are filled in reading order (rows top to bottom, right to left
    within a row); the lattice-word condition is enforced incrementally.
    """
    rows = len(nu)
    lam_ext = list(lam) + [0] * (rows - len(lam))
    cells = []
    for r in range(rows):
        for c in range(nu[r] - 1, lam_ext[r] - 1, -1):
            cells.append((r, c))
    k = len(mu)
    remaining = list(mu)
    grid: dict[tuple[int, int], int] = {}
    prefix = [0] * (k + 2)  # prefix[v] = occurrences of v read so far
    count = 0

    def rec(idx: int) -> None:
        nonlocal count
        if idx == len(cells):
            count += 1
            return
        r, c = cells[idx]
        right = grid.get((r, c + 1))
        above = grid.get((r - 1, c))
        for v in range(1, k + 1):
            if remaining[v - 1] == 0:
                continue
            if right is not None and v > right:  # rows weakly increase
                continue
            if above is not None and v <= above:  # columns strictly increase
                continue
            if v >= 2 and prefix[v] + 1 > prefix[v - 1]:  # lattice word
                continue
            grid[(r, c)] = v
            prefix[v] += 1
            remaining[v - 1] -= 1
            rec(idx + 1)
            remaining[v - 1] += 1
            prefix[v] -= 1
            del grid[(r, c)]

    rec(0)
    return count


def lr_tensor(lam: Sequence[int], mu: Sequence[int], max_rows: int) -> Counter:
    """Littlewood-Richardson decomposition of the product of two Schur shapes.

    Returns a Counter of shapes nu with the LR coefficient as multiplicity,
    keeping only shapes with at most ``max_rows`` rows.
    """
    lam = canonical(lam)
    mu = canonical(mu)
    if len(lam) > max_rows or len(mu) > max_rows:
        raise InvalidInputError(f"shapes must have at most {max_rows} rows")
    if not mu:
        return Counter({lam: 1})
    if not lam:
        return Counter({mu: 1})
    out: Counter = Counter()
    lam_ext = list(lam) + [0] * (max_rows - len(lam))
    total_add = sum(mu)

    def rec(i: int, rem: int, prev: int, prefix: list[int]) -> None:
        if i == max_rows:
            if rem == 0:
                nu = canonical(prefix)
                c = _skew_fillings(lam, nu, mu)
                if c:
                    out[nu] += c
            return
        lo = lam_ext[i]
        hi = min(prev, lo + rem)
        for v in range(hi, lo - 1, -1):
            rec(i + 1, rem - (v - lo), v, prefix + [v])

    rec(0, total_add, lam_ext[0] + total_add, [])
    return out


def dual_partition(lam: Sequence[int], n: int) -> Partition:
    """Shape of the dual Schur module on an n-dimensional space.

    For lam padded to n parts, the dual shape is
    (lam_1 - lam_n, lam_1 - lam_{n-1}, ..., lam_1 - lam_2).
    """
    lam = canonical(lam)
    if len(lam) > n:
        raise InvalidInputError(f"shape {lam} has more than {n} parts")
    full = lam + (0,) * (n - len(lam))
    head = full[0]
    return canonical(tuple(head - full[n - 1 - i] for i in range(n - 1)))
