"""The stability decision engine.

Subrepresentation supports of a multiplicity-1 support are exactly its
arrow-closed vertex subsets ("filters"); a bundle is semistable when no
proper nonempty filter has larger slope, and multistable when every such
filter has strictly smaller slope.  Box- and cylinder-shaped supports are
scanned by a compiled kernel over monotone column profiles; arbitrary
supports fall back to a generic ordered enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Union

import numpy as np

from .errors import InternalInconsistencyError, InvalidInputError
from .quiver import (
    DISPLACEMENT,
    Direction,
    QVertex,
    arrow_target,
    c13_vertex,
    rank_vertex,
)
from .support import (
    Box,
    CylinderStaircase,
    Support,
    as_box,
    as_cylinder_staircase,
    fraction_str,
    vertex_to_json,
)

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    _HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(f):
            return f

        return wrap


Filter = frozenset


def macmahon_count(a: int, b: int, c: int) -> int:
    """Number of monotone fillings of an a x b x c box (the classical product
    over the box of (i+j+k-1)/(i+j+k-2)); counts all filters of the box
    support with extents (a-1, b-1, c-1), empty and full included.
    """
    if min(a, b, c) < 1:
        raise InvalidInputError("macmahon_count needs positive side lengths")
    num = den = 1
    for i in range(1, a + 1):
        for j in range(1, b + 1):
            for k in range(1, c + 1):
                num *= i + j + k - 1
                den *= i + j + k - 2
    if num % den:
        raise InternalInconsistencyError("box product formula returned a non-integer")
    return num // den


# ---- generic filter enumeration ---------------------------------------------


def enumerate_filters(s: Support, proper_nonempty: bool = True) -> Iterator[Filter]:
    """All arrow-closed vertex subsets of a multiplicity-1 support.

    Deterministic order: vertices are considered in canonical order (slope
    descending, a linear extension since arrows lower slope), excluding a free
    vertex before including it.  With ``proper_nonempty`` the empty and full
    subsets are skipped.
    """
    if not s.multiplicity_one:
        raise InvalidInputError(
            "multiplicity-not-one: filter enumeration needs all multiplicities equal to 1"
        )
    verts = s.vertices
    n = len(verts)
    index = {v: i for i, v in enumerate(verts)}
    preds: list[list[int]] = [[] for _ in range(n)]
    for (src, d) in s.arrows:
        tgt = arrow_target(src, d)
        preds[index[tgt]].append(index[src])
    chosen = [False] * n

    def rec(i: int) -> Iterator[Filter]:
        if i == n:
            size = sum(chosen)
            if proper_nonempty and size in (0, n):
                return
            yield frozenset(verts[j] for j in range(n) if chosen[j])
            return
        if any(chosen[p] for p in preds[i]):
            chosen[i] = True
            yield from rec(i + 1)
            chosen[i] = False
        else:
            chosen[i] = False
            yield from rec(i + 1)
            chosen[i] = True
            yield from rec(i + 1)
            chosen[i] = False

    yield from rec(0)


# ---- compiled profile scan ---------------------------------------------------


def _scan_profiles_py(ncols, top, left, up, suf_r, suf_c, total_r, s_rank, s_c13):
    """Reference implementation of the profile scan (see _scan_profiles)."""
    h = [0] * ncols
    acc_r = [0] * (ncols + 1)
    acc_c = [0] * (ncols + 1)
    count = n_gt = n_eq = 0
    pos = 0
    h[0] = top + 2
    while pos >= 0:
        h[pos] -= 1
        if h[pos] < 0:
            pos -= 1
            continue
        acc_r[pos + 1] = acc_r[pos] + suf_r[pos][h[pos]]
        acc_c[pos + 1] = acc_c[pos] + suf_c[pos][h[pos]]
        if pos == ncols - 1:
            r = acc_r[pos + 1]
            if r != 0 and r != total_r:
                count += 1
                gap = acc_c[pos + 1] * s_rank - s_c13 * r
                if gap > 0:
                    n_gt += 1
                elif gap == 0:
                    n_eq += 1
        else:
            pos += 1
            lim = top + 1
            if left[pos] >= 0 and h[left[pos]] < lim:
                lim = h[left[pos]]
            if up[pos] >= 0 and h[up[pos]] < lim:
                lim = h[up[pos]]
            h[pos] = lim + 1
    return count, n_gt, n_eq


if _HAVE_NUMBA:

    @njit(cache=True)
    def _scan_profiles_jit(ncols, top, left, up, suf_r, suf_c, total_r, s_rank, s_c13):
        h = np.zeros(ncols, dtype=np.int64)
        acc_r = np.zeros(ncols + 1, dtype=np.int64)
        acc_c = np.zeros(ncols + 1, dtype=np.int64)
        count = np.int64(0)
        n_gt = np.int64(0)
        n_eq = np.int64(0)
        pos = 0
        h[0] = top + 2
        while pos >= 0:
            h[pos] -= 1
            if h[pos] < 0:
                pos -= 1
                continue
            acc_r[pos + 1] = acc_r[pos] + suf_r[pos, h[pos]]
            acc_c[pos + 1] = acc_c[pos] + suf_c[pos, h[pos]]
            if pos == ncols - 1:
                r = acc_r[pos + 1]
                if r != 0 and r != total_r:
                    count += 1
                    gap = acc_c[pos + 1] * s_rank - s_c13 * r
                    if gap > 0:
                        n_gt += 1
                    elif gap == 0:
                        n_eq += 1
            else:
                pos += 1
                lim = top + 1
                if left[pos] >= 0 and h[left[pos]] < lim:
                    lim = h[left[pos]]
                if up[pos] >= 0 and h[up[pos]] < lim:
                    lim = h[up[pos]]
                h[pos] = lim + 1
        return count, n_gt, n_eq


def _scan_profiles(ncols, top, left, up, suf_r, suf_c, total_r, s_rank, s_c13):
    """Walk all monotone column profiles of a cylinder grid.

    Each filter of the grid support is a choice, per column, of a suffix of
    its V0 chain, weakly shrinking along V1 and V2.  Returns the number of
    proper nonempty filters together with how many have slope greater than
    (n_gt) and equal to (n_eq) the slope of the whole support.
    """
    if _HAVE_NUMBA:
        return _scan_profiles_jit(
            ncols, top, left, up, suf_r, suf_c, int(total_r), int(s_rank), int(s_c13)
        )
    return _scan_profiles_py(
        ncols,
        top,
        [int(x) for x in left],
        [int(x) for x in up],
        [[int(x) for x in row] for row in suf_r],
        [[int(x) for x in row] for row in suf_c],
        int(total_r),
        int(s_rank),
        int(s_c13),
    )


def _grid_arrays(shape: Union[Box, CylinderStaircase]):
    """Column-major arrays (neighbors and per-column suffix sums) for the scan."""
    if isinstance(shape, Box):
        host, cols = shape, [
            (i, j) for i in range(shape.d1 + 1) for j in range(shape.d2 + 1)
        ]
    else:
        host, cols = shape.host, shape.columns()
    top = host.d0
    index = {c: ci for ci, c in enumerate(cols)}
    ncols = len(cols)
    left = np.full(ncols, -1, dtype=np.int64)
    up = np.full(ncols, -1, dtype=np.int64)
    suf_r = np.zeros((ncols, top + 2), dtype=np.int64)
    suf_c = np.zeros((ncols, top + 2), dtype=np.int64)
    for ci, (i, j) in enumerate(cols):
        if (i, j - 1) in index:
            left[ci] = index[(i, j - 1)]
        if (i - 1, j) in index:
            up[ci] = index[(i - 1, j)]
        rr = cc = 0
        for k in range(top, -1, -1):
            v = host.vertex_at(i, j, k)
            rr += rank_vertex(v)
            cc += c13_vertex(v)
            suf_r[ci, k] = rr
            suf_c[ci, k] = cc
    return ncols, top, left, up, suf_r, suf_c


def _scan_shape(shape: Union[Box, CylinderStaircase], s_rank: int, s_c13: int):
    ncols, top, left, up, suf_r, suf_c = _grid_arrays(shape)
    total_r = int(suf_r[:, 0].sum())
    return _scan_profiles(ncols, top, left, up, suf_r, suf_c, total_r, s_rank, s_c13)


def destabilizing_counts(s: Support) -> tuple[int, int, int]:
    """(filters, slope-greater, slope-equal) counts over proper nonempty filters."""
    if not s.vertices:
        raise InvalidInputError("empty-support: stability of the empty support is undefined")
    if not s.multiplicity_one:
        raise InvalidInputError(
            "multiplicity-not-one: stability decisions need all multiplicities equal to 1"
        )
    s_rank, s_c13 = s.rank, s.c13
    if s.is_full_arrows:
        shape = as_box(s) or as_cylinder_staircase(s)
        if shape is not None:
            count, n_gt, n_eq = _scan_shape(shape, s_rank, s_c13)
            return int(count), int(n_gt), int(n_eq)
    count = n_gt = n_eq = 0
    for fil in enumerate_filters(s, proper_nonempty=True):
        count += 1
        r = sum(rank_vertex(v) for v in fil)
        c = sum(c13_vertex(v) for v in fil)
        gap = c * s_rank - s_c13 * r
        if gap > 0:
            n_gt += 1
        elif gap == 0:
            n_eq += 1
    return count, n_gt, n_eq


def count_filters(s: Support, proper_nonempty: bool = True) -> int:
    """Number of filters; uses the profile scan on box/staircase supports."""
    if (
        s.multiplicity_one
        and s.is_full_arrows
        and s.vertices
        and (as_box(s) or as_cylinder_staircase(s))
    ):
        count, _, _ = destabilizing_counts(s)
        return count if proper_nonempty else count + 2
    return sum(1 for _ in enumerate_filters(s, proper_nonempty))


def _best_filter(s: Support) -> Optional[Filter]:
    """Max-slope proper nonempty filter; ties broken by smallest vertex count,
    then by enumeration order."""
    best = None
    best_key = None
    s_rank, s_c13 = s.rank, s.c13
    for fil in enumerate_filters(s, proper_nonempty=True):
        r = sum(rank_vertex(v) for v in fil)
        c = sum(c13_vertex(v) for v in fil)
        key = (Fraction(c, r), -len(fil))
        if best_key is None or key > best_key:
            best, best_key = fil, key
    return best


@dataclass(frozen=True)
class Verdict:
    """Stability report for a support."""

    semistable: bool
    multistable: bool
    stable: str  # "yes" | "no" | "unknown"
    witness: Optional[Filter]
    mu: Fraction

    def to_json(self) -> dict:
        doc = {
            "semistable": self.semistable,
            "multistable": self.multistable,
            "stable": self.stable,
            "mu": fraction_str(self.mu),
        }
        if self.witness is not None:
            verts = sorted(self.witness, key=lambda v: (-(v.l1 + v.l2 + 3 * v.t), v.l1, v.l2, v.t))
            doc["witness"] = {"vertices": [dict(vertex_to_json(v), mult=1) for v in verts]}
        else:
            doc["witness"] = None
        return doc


def semistable(s: Support) -> tuple[bool, Optional[Filter]]:
    """Whether every proper nonempty filter has slope <= the support's slope.

    On failure the witness is the maximum-slope filter.
    """
    _, n_gt, _ = destabilizing_counts(s)
    if n_gt == 0:
        return True, None
    return False, _best_filter(s)


def multistable(s: Support) -> tuple[bool, Optional[Filter]]:
    """Whether every proper nonempty filter has slope strictly below the support's.

    On failure the witness is the maximum-slope filter (slope equal to the
    support's when the support is semistable but not multistable).
    """
    _, n_gt, n_eq = destabilizing_counts(s)
    if n_gt == 0 and n_eq == 0:
        return True, None
    return False, _best_filter(s)


def classify(s: Support) -> Verdict:
    """Full verdict: computed semistability/multistability plus the shape-based
    stable yes/no where a structural criterion applies ("unknown" otherwise)."""
    _, n_gt, n_eq = destabilizing_counts(s)
    is_semi = n_gt == 0
    is_multi = is_semi and n_eq == 0
    witness = None if is_multi else _best_filter(s)

    stable = "unknown"
    if s.multiplicity_one and s.is_full_arrows:
        b = as_box(s)
        if b is not None:
            stable = "no" if (b.touches_pi and b.touches_sigma) else "yes"
        else:
            cs = as_cylinder_staircase(s)
            if cs is not None and cs.completely_regular:
                if cs.height >= 1:
                    stable = "yes"
                elif cs.r >= 2:
                    stable = "no"
    if stable == "yes" and not is_multi:
        raise InternalInconsistencyError(
            "shape criterion says stable but a destabilizing filter exists"
        )
    return Verdict(is_semi, is_multi, stable, witness, s.slope)


# ---- hypotenuse rank sums ----------------------------------------------------

_PAIRS = {
    "V1V2": (Direction.V1, Direction.V2),
    "V0V1": (Direction.V0, Direction.V1),
    "V0V2": (Direction.V0, Direction.V2),
}


def _hypotenuse_points(v: QVertex, c: int, pair: str, orientation: str) -> list[QVertex]:
    if pair not in _PAIRS:
        raise InvalidInputError(f"unknown direction pair {pair!r}; one of {sorted(_PAIRS)}")
    if orientation not in ("forward", "backward"):
        raise InvalidInputError('orientation must be "forward" or "backward"')
    if c < 0:
        raise InvalidInputError("the hypotenuse parameter must be nonnegative")
    di, dk = (DISPLACEMENT[d] for d in _PAIRS[pair])
    sign = 1 if orientation == "forward" else -1
    pts = []
    for j in range(c + 1):
        w = QVertex(
            v.l1 + sign * (j * di[0] + (c - j) * dk[0]),
            v.l2 + sign * (j * di[1] + (c - j) * dk[1]),
            v.t + sign * (j * di[2] + (c - j) * dk[2]),
        )
        if not (w.l1 >= w.l2 >= 0):
            raise InvalidInputError(
                f"invalid-hypotenuse: point {w} leaves the lattice "
                f"(v={v}, c={c}, {pair} {orientation})"
            )
        pts.append(w)
    return pts


def hyp_rank_sum_brute(v: QVertex, c: int, pair: str, orientation: str) -> int:
    """Sum of vertex ranks along the hypotenuse joining v + c*Vi to v + c*Vk
    (forward) or v - c*Vi to v - c*Vk (backward)."""
    return sum(rank_vertex(w) for w in _hypotenuse_points(v, c, pair, orientation))


_CLOSED_FORMS = ("forward-V1V2", "backward-V1V2", "forward-V0V1")


def hyp_rank_sum_closed(v: QVertex, c: int, which: str) -> int:
    """Closed-form value of four times the hypotenuse rank sum.

    With x = l1-l2+1 and z = l2+1:
      forward-V1V2:  (c+1)[-c x (x+2z+1) + 2xz(x+z)]
      backward-V1V2: (c+1)[ c x (x+2z-1) + 2zx(z+x)]
      forward-V0V1:  (c+1)[ c (x+z)(x-z+1) + 2xz(x+z)]
    All three equal 4 * hyp_rank_sum_brute on their validity domain.
    """
    if which not in _CLOSED_FORMS:
        raise InvalidInputError(f"no closed form {which!r}; one of {_CLOSED_FORMS}")
    orientation, pair = which.split("-")
    _hypotenuse_points(v, c, pair, orientation)  # enforce the validity domain
    x = v.l1 - v.l2 + 1
    z = v.l2 + 1
    if which == "forward-V1V2":
        return (c + 1) * (-c * x * (x + 2 * z + 1) + 2 * x * z * (x + z))
    if which == "backward-V1V2":
        return (c + 1) * (c * x * (x + 2 * z - 1) + 2 * z * x * (z + x))
    return (c + 1) * (c * (x + z) * (x - z + 1) + 2 * x * z * (x + z))


# ---- rectangle translations --------------------------------------------------

_TRANSLATIONS = (
    "V0-V1", "V0-V2", "V1-V0", "V1-V2", "V2-V0", "V2-V1", "+V0", "+V1", "+V2",
)


def _translation_displacement(token: str) -> tuple[int, int, int]:
    if token.startswith("+"):
        d = DISPLACEMENT[Direction(token[1:])]
        return d
    try:
        a, b = token.split("-")
        da, db = DISPLACEMENT[Direction(a)], DISPLACEMENT[Direction(b)]
    except (ValueError, KeyError) as e:
        raise InvalidInputError(
            f"unknown translation {token!r}; one of {_TRANSLATIONS}"
        ) from e
    return (da[0] - db[0], da[1] - db[1], da[2] - db[2])


@dataclass(frozen=True)
class TranslateComparison:
    mu_before: Fraction
    mu_after: Fraction
    strict_greater: bool
    exception: Optional[str]  # "a" | "b" | "a-dual" | "b-dual" | None

    def to_json(self) -> dict:
        return {
            "mu_before": fraction_str(self.mu_before),
            "mu_after": fraction_str(self.mu_after),
            "strict_greater": self.strict_greater,
            "exception": self.exception,
        }


def _translation_exception(shape: Box, token: str) -> Optional[str]:
    """The configurations where the translated slope is not asserted smaller.

    "a" and "b" are the two flagged cases for rectangles in the (V1, V2)
    plane; "a-dual" and "b-dual" are their images under duality, which lives
    in the (V0, V2) plane.
    """
    d1, d2, d0 = shape.d1, shape.d2, shape.d0
    if d0 == 0:  # shape lies in the <V1,V2> plane
        if token == "V0-V1" and d2 > d1:
            return "a"
        if token == "V0-V2" and d1 > d2:
            return "b"
    if d1 == 0:  # shape lies in the <V0,V2> plane
        if token == "V1-V0" and d2 > d0:
            return "a-dual"
        if token == "V1-V2" and d0 > d2:
            return "b-dual"
    return None


def translate_compare(shape: Box, translation: str) -> TranslateComparison:
    """Exact slope comparison of a segment or planar rectangle with its translate.

    The shape must have at most two nonzero extents.  Raises invalid-translate
    when the translated shape leaves the lattice.
    """
    if sum(1 for d in (shape.d1, shape.d2, shape.d0) if d > 0) > 2:
        raise InvalidInputError("shape must be a segment or a planar rectangle")
    if translation not in _TRANSLATIONS:
        raise InvalidInputError(f"unknown translation {translation!r}; one of {_TRANSLATIONS}")
    disp = _translation_displacement(translation)
    try:
        moved = shape.translate(disp)
    except InvalidInputError as e:
        raise InvalidInputError(f"invalid-translate: {e}") from e
    mu_before = shape.support().slope
    mu_after = moved.support().slope
    return TranslateComparison(
        mu_before,
        mu_after,
        mu_before > mu_after,
        _translation_exception(shape, translation),
    )


# ---- staircase slabs ---------------------------------------------------------


def _coerce_staircase(s: Union[Support, CylinderStaircase]) -> CylinderStaircase:
    if isinstance(s, CylinderStaircase):
        return s
    cs = as_cylinder_staircase(s)
    if cs is None:
        raise InvalidInputError("not-a-cylinder-staircase: slab decomposition undefined")
    return cs


def slab_decomposition(
    s: Union[Support, CylinderStaircase]
) -> tuple[list[Support], list[Support]]:
    """Horizontal and vertical slabs of a cylinder staircase, in step order.

    With steps P_1..P_r and R_i the box of vertices above P_i, the horizontal
    slabs are H_i = R_i - R_{i-1} and the vertical slabs E_i = R_i - R_{i+1};
    both partition the staircase.
    """
    cs = _coerce_staircase(s)
    host = cs.host
    xs = [x for x, _ in cs.steps] + [host.d1 + 1]
    ys = [host.d2 + 1] + [y for _, y in cs.steps]
    hs: list[Support] = []
    es: list[Support] = []
    for i, (x, y) in enumerate(cs.steps):
        h_box = Box(host.vertex_at(x, y, 0), host.d1 - x, ys[i] - 1 - y, host.d0)
        e_box = Box(host.vertex_at(x, y, 0), xs[i + 1] - 1 - x, host.d2 - y, host.d0)
        hs.append(h_box.support())
        es.append(e_box.support())
    return hs, es


def sticking_out_parts(s: Union[Support, CylinderStaircase]) -> list[Support]:
    """The part of the staircase above exactly one step vertex, per step."""
    cs = _coerce_staircase(s)
    host = cs.host
    xs = [x for x, _ in cs.steps] + [host.d1 + 1]
    ys = [host.d2 + 1] + [y for _, y in cs.steps]
    out = []
    for i, (x, y) in enumerate(cs.steps):
        box = Box(host.vertex_at(x, y, 0), xs[i + 1] - 1 - x, ys[i] - 1 - y, host.d0)
        out.append(box.support())
    return out
