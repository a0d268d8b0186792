"""Minimal free resolutions of box and cylinder-staircase bundles.

Every emitted layer consists of free terms S^{shape}V(twist); the rightmost
layer (the one surjecting onto the bundle) comes first.  Exactness is checked
at the graded level: the signed sum of the term supports must reproduce the
resolved support vertex by vertex, along with its rank and first Chern class.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from . import schur
from .errors import InternalInconsistencyError, InvalidInputError
from .quiver import QVertex
from .support import Box, CylinderStaircase, Support, gr_schur


@dataclass(frozen=True)
class FreeTerm:
    """The free module S^{shape}V(twist)^mult, shape with at most three rows."""

    shape: tuple[int, ...]
    twist: int
    mult: int = 1

    def __post_init__(self):
        object.__setattr__(self, "shape", schur.canonical(self.shape))
        if len(self.shape) > 3:
            raise InvalidInputError(f"free term shape {self.shape} has more than 3 rows")
        if self.mult < 1:
            raise InvalidInputError("free term multiplicity must be positive")

    @property
    def padded_shape(self) -> tuple[int, int, int]:
        return self.shape + (0,) * (3 - len(self.shape))

    @property
    def rank_one(self) -> int:
        return schur.weyl_dim(self.shape, 4)

    @property
    def rank(self) -> int:
        return self.mult * self.rank_one

    @property
    def c1(self) -> int:
        return self.rank * self.twist

    def pretty(self) -> str:
        a, b, c = self.padded_shape
        s = f"S^{{{a},{b},{c}}}V({self.twist})"
        return s if self.mult == 1 else f"{s}^{self.mult}"

    def to_json(self) -> dict:
        return {"shape": list(self.padded_shape), "twist": self.twist, "mult": self.mult}

    def gr_box(self) -> Box:
        a, b, c = self.padded_shape
        return gr_schur(a, b, c, self.twist)


@dataclass(frozen=True)
class Resolution:
    """Layers of free terms, rightmost first, plus the structurally nonzero
    map components as (layer, source index, target index) triples (the map of
    layer L goes into layer L-1)."""

    layers: tuple[tuple[FreeTerm, ...], ...]
    components: frozenset[tuple[int, int, int]]

    def __post_init__(self):
        if not self.layers or any(not layer for layer in self.layers):
            raise InvalidInputError("resolution layers must be nonempty")
        if len(self.layers) > 3:
            raise InvalidInputError("resolutions here have at most three layers")
        for a, b in zip(self.layers, self.layers[1:]):
            keys = {(t.shape, t.twist) for t in a} & {(t.shape, t.twist) for t in b}
            if keys:
                raise InternalInconsistencyError(
                    f"repeated term {keys} in adjacent layers breaks minimality"
                )
        for (layer, src, dst) in self.components:
            if not 1 <= layer < len(self.layers):
                raise InvalidInputError(f"component layer {layer} out of range")
            if not 0 <= src < len(self.layers[layer]):
                raise InvalidInputError("component source index out of range")
            if not 0 <= dst < len(self.layers[layer - 1]):
                raise InvalidInputError("component target index out of range")

    def pretty(self) -> str:
        parts = [" + ".join(t.pretty() for t in layer) for layer in self.layers]
        return "0 -> " + " -> ".join(reversed(parts)) + " -> E -> 0"

    def to_json(self) -> dict:
        return {
            "layers": [[t.to_json() for t in layer] for layer in self.layers],
            "nonzero_components": sorted(list(c) for c in self.components),
        }


def gr_alternating_sum(r: Resolution) -> dict[QVertex, int]:
    """Signed vertex multiset of the graded pieces, (+) for the rightmost layer."""
    acc: dict[QVertex, int] = {}
    for li, layer in enumerate(r.layers):
        sign = 1 if li % 2 == 0 else -1
        for term in layer:
            for v in term.gr_box().vertices():
                acc[v] = acc.get(v, 0) + sign * term.mult
                if acc[v] == 0:
                    del acc[v]
    return acc


def euler_check(r: Resolution, s: Support) -> bool:
    """True when the signed graded sum equals the support exactly, and the
    alternating rank and c1 sums match the support's."""
    if gr_alternating_sum(r) != s.mult_map:
        return False
    alt_rank = alt_c1 = 0
    for li, layer in enumerate(r.layers):
        sign = 1 if li % 2 == 0 else -1
        for term in layer:
            alt_rank += sign * term.rank
            alt_c1 += sign * term.c1
    return alt_rank == s.rank and alt_c1 == s.c1


def _both_planes_term(b: Box) -> FreeTerm:
    """The unique free term whose graded box is ``b``; needs both border planes."""
    if not (b.touches_pi and b.touches_sigma):
        raise InternalInconsistencyError(f"box {b} does not touch both border planes")
    a, b_, tau = b.vmax
    return FreeTerm((a + b.d0, b_ + b.d0, b.d0), tau - b.d0)


def resolve_box(b: Box) -> Resolution:
    """Minimal free resolution of a parallelepiped bundle.

    With corner (a,b,tau) and extents (d1,d2,d0), put lam = (a+d0, b+d0, d0),
    t = tau-d0, k = d2+1, l = d1+1.  The four candidate terms are
    S^{lam}V(t), S^{lam1,lam2-k,lam3}V(t-k), S^{lam1-l,lam2,lam3}V(t-l) and
    S^{lam1-l,lam2-k,lam3}V(t-k-l); a term is dropped exactly when its shape
    fails to be a partition, which happens on the touched border planes.
    """
    a, b_, tau = b.vmax
    lam1, lam2, lam3, t = a + b.d0, b_ + b.d0, b.d0, tau - b.d0
    k, l = b.d2 + 1, b.d1 + 1

    def term(shape, twist) -> Optional[FreeTerm]:
        s1, s2, s3 = shape
        if s1 >= s2 >= s3 >= 0:
            return FreeTerm(shape, twist)
        return None

    t00 = term((lam1, lam2, lam3), t)
    t01 = term((lam1, lam2 - k, lam3), t - k)
    t10 = term((lam1 - l, lam2, lam3), t - l)
    t11 = term((lam1 - l, lam2 - k, lam3), t - k - l)

    layers: list[tuple[FreeTerm, ...]] = [(t00,)]
    mid = tuple(x for x in (t01, t10) if x is not None)
    if mid:
        layers.append(mid)
    if t11 is not None:
        layers.append((t11,))
    components = set()
    if mid:
        components.update((1, i, 0) for i in range(len(mid)))
    if t11 is not None:
        components.update((2, 0, i) for i in range(len(mid)))
    res = Resolution(tuple(layers), frozenset(components))
    if not euler_check(res, b.support()):
        raise InternalInconsistencyError(f"box resolution fails the graded check: {b}")
    return res


def resolve_cylinder_staircase(cs: CylinderStaircase) -> Resolution:
    """Minimal free resolution of a cylinder-staircase bundle.

    Each vertical slab is widened to the border plane pi (when the staircase
    does not already touch it) and completed along V1 into a box K_i touching
    both planes; the layers are the K_i, then the leftover pieces K_i minus
    the slab (plus, away from pi, the analogous completion Z of the widening
    strip), and finally the single box forced by graded exactness.
    """
    host = cs.host
    A, B, T = host.vmax
    d0 = host.d0
    r = cs.r
    xs = [x for x, _ in cs.steps] + [host.d1 + 1]

    k_terms: list[FreeTerm] = []
    leftover: list[FreeTerm] = []
    leftover_src: list[int] = []  # which step each leftover term came from
    for i, (x, y) in enumerate(cs.steps):
        vm = host.vertex_at(x, y, 0)
        ext1 = vm.l1 - vm.l2  # complete along V1 until sigma
        k_terms.append(_both_planes_term(Box(vm, ext1, vm.l2, d0)))
        width = xs[i + 1] - x
        if ext1 + 1 - width > 0:
            vm2 = host.vertex_at(xs[i + 1], y, 0)
            leftover.append(_both_planes_term(Box(vm2, ext1 - width, vm2.l2, d0)))
            leftover_src.append(i)

    layers: list[tuple[FreeTerm, ...]] = [tuple(k_terms)]
    components: set[tuple[int, int, int]] = set()
    if cs.touches_pi:
        if leftover:
            layers.append(tuple(leftover))
            for pos, i in enumerate(leftover_src):
                components.add((1, pos, i))
                if i + 1 < r:
                    components.add((1, pos, i + 1))
    else:
        # widen past the host: the strip of columns between the host face and pi
        zvm = QVertex(A, B - host.d2 - 1, T - host.d2 - 1)
        z_term = _both_planes_term(Box(zvm, zvm.l1 - zvm.l2, zvm.l2, d0))
        wvm = QVertex(A - host.d1 - 1, B - host.d2 - 1, T - host.d1 - host.d2 - 2)
        w_term = _both_planes_term(Box(wvm, wvm.l1 - wvm.l2, wvm.l2, d0))
        mid = (z_term,) + tuple(leftover)
        layers.append(mid)
        components.add((1, 0, 0))  # Z hits only the first step's box
        for pos, i in enumerate(leftover_src):
            components.add((1, pos + 1, i))
            if i + 1 < r:
                components.add((1, pos + 1, i + 1))
        layers.append((w_term,))
        components.add((2, 0, 0))  # the last term maps only into Z ...
        if r == 1 and leftover:
            # ... except for a plain box, where every map component is nonzero
            components.add((2, 0, 1))
    res = Resolution(tuple(layers), frozenset(components))
    if not euler_check(res, cs.support()):
        raise InternalInconsistencyError(
            f"staircase resolution fails the graded check: {cs}"
        )
    return res


# ---- template classification -------------------------------------------------


@dataclass(frozen=True)
class ResolutionShape:
    case: str
    params: dict

    def to_json(self) -> dict:
        return {"case": self.case, "params": self.params}


_OTHER = ResolutionShape("other", {})


def _pad3(t: FreeTerm) -> tuple[int, int, int]:
    return t.padded_shape


def _match_box_pi(layers) -> Optional[ResolutionShape]:
    (a,), (b,) = layers
    at, bt = _pad3(a), _pad3(b)
    s = a.twist - b.twist
    if s >= 1 and at == (bt[0] + s, bt[1], bt[2]):
        return ResolutionShape(
            "box-pi", {"lam": list(bt), "t": b.twist, "s": s}
        )
    return None


def _match_box_sigma(layers) -> Optional[ResolutionShape]:
    (a,), (b,), (c,) = layers
    at, bt, ct = _pad3(a), _pad3(b), _pad3(c)
    s = a.twist - b.twist
    if not (s >= 1 and at == (bt[0], bt[1] + s, bt[2])):
        return None
    lam1, lam2, lam3 = bt
    if ct == (lam2 + s - 1, lam2, lam3) and c.twist == b.twist + lam2 + s - 1 - lam1:
        return ResolutionShape("box-sigma", {"lam": list(bt), "t": b.twist, "s": s})
    return None


def _match_box_inner(layers) -> Optional[ResolutionShape]:
    (a,), mids, (d,) = layers
    if len(mids) != 2:
        return None
    lam1, lam2, lam3 = _pad3(a)
    t = a.twist
    for first, second in (mids, mids[::-1]):
        k = t - first.twist
        l = t - second.twist
        if k < 1 or l < 1:
            continue
        if _pad3(first) != (lam1, lam2 - k, lam3):
            continue
        if _pad3(second) != (lam1 - l, lam2, lam3):
            continue
        if _pad3(d) == (lam1 - l, lam2 - k, lam3) and d.twist == t - k - l:
            return ResolutionShape(
                "box-inner", {"lam": [lam1, lam2, lam3], "t": t, "k": k, "l": l}
            )
    return None


def _match_staircase_layers(top, mid) -> Optional[dict]:
    """Match the two staircase layers: top terms S^{lam1+i+1,lam2-i,lam3}V(g+1)
    for i = 1..r, middle terms S^{lam1+i,lam2-i,lam3}V(g) for i = 1+eps..r."""
    rr = len(top)
    if rr < 2 or len(mid) not in (rr, rr - 1):
        return None
    eps = rr - len(mid)
    g1s = {t.twist for t in top}
    g0s = {t.twist for t in mid}
    if len(g1s) != 1 or len(g0s) != 1:
        return None
    g = g0s.pop()
    if g1s.pop() != g + 1:
        return None
    shapes = [_pad3(t) for t in top]
    lam3s = {s[2] for s in shapes} | {_pad3(t)[2] for t in mid}
    if len(lam3s) != 1:
        return None
    lam3 = lam3s.pop()
    if lam3 < 1:
        return None
    qmax = max(s[1] for s in shapes)
    lam2 = qmax + 1
    p_at_qmax = [s[0] for s in shapes if s[1] == qmax]
    if len(p_at_qmax) != 1:
        return None
    lam1 = p_at_qmax[0] - 2  # that shape has i = 1
    want_top = {(lam1 + i + 1, lam2 - i, lam3) for i in range(1, rr + 1)}
    if set(shapes) != want_top or len(set(shapes)) != rr:
        return None
    want_mid = {(lam1 + i, lam2 - i, lam3) for i in range(1 + eps, rr + 1)}
    if {_pad3(t) for t in mid} != want_mid or len({_pad3(t) for t in mid}) != len(mid):
        return None
    return {
        "lam": [lam1, lam2, lam3],
        "r": rr,
        "eps": eps,
        "twist": g,
    }


def _match_staircase_pi(layers) -> Optional[ResolutionShape]:
    top, mid = layers
    m = _match_staircase_layers(top, mid)
    return ResolutionShape("staircase-pi", m) if m else None


def _match_staircase_inner(layers) -> Optional[ResolutionShape]:
    top, mid, last = layers
    if len(last) != 1:
        return None
    for zi in range(len(mid)):
        rest = mid[:zi] + mid[zi + 1 :]
        m = _match_staircase_layers(top, rest)
        if not m:
            continue
        lam1, lam2, lam3 = m["lam"]
        rr, g = m["r"], m["twist"]
        z, w = mid[zi], last[0]
        zt, wt = _pad3(z), _pad3(w)
        if zt[0] != lam1 + rr + 1 or zt[2] != lam3:
            continue
        mm = lam2 - rr - 1 - zt[1]
        if mm < 0 or z.twist != g - mm:
            continue
        if wt[1] != zt[1] or wt[2] != lam3:
            continue
        pp = lam1 + 1 - wt[0]
        if pp < 0 or w.twist != g - pp - mm - rr:
            continue
        params = dict(m)
        params["m"] = mm
        params["p"] = pp
        return ResolutionShape("staircase-inner", params)
    return None


def classify_resolution_shape(r: Resolution) -> ResolutionShape:
    """Match a resolution against the five stable-bundle templates.

    Cases: "box-pi", "box-sigma", "box-inner" for the three parallelepiped
    shapes, "staircase-pi" and "staircase-inner" for cylinder staircases of
    positive height, "other" when no template fits (e.g. a single layer).
    """
    layers = r.layers
    if any(t.mult != 1 for layer in layers for t in layer):
        return _OTHER
    if len(layers) == 2:
        if len(layers[0]) == 1 and len(layers[1]) == 1:
            m = _match_box_pi(layers)
            if m:
                return m
        m = _match_staircase_pi(layers)
        if m:
            return m
        return _OTHER
    if len(layers) == 3:
        sizes = tuple(len(layer) for layer in layers)
        if sizes == (1, 1, 1):
            m = _match_box_sigma(layers)
            if m:
                return m
        if sizes[0] == 1 and sizes[1] == 2 and sizes[2] == 1:
            m = _match_box_inner(layers)
            if m:
                return m
        m = _match_staircase_inner(layers)
        if m:
            return m
    return _OTHER
