"""Quiver supports with multiplicities and their arithmetic.

A Support is a finite multiset of vertices together with the set of arrows
taken to be nonzero (by default, every arrow of the ambient lattice joining
two present vertices).  Boxes and cylinder staircases are the two structured
vertex-set shapes used throughout; tensor decompositions produce general
supports.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Optional, Union

from . import schur
from .errors import InvalidInputError
from .quiver import (
    DISPLACEMENT,
    DUAL_DIRECTION,
    Direction,
    QVertex,
    arrow_target,
    c13_vertex,
    c1_vertex,
    component_class,
    dual_vertex,
    format_vertex,
    is_valid_vertex,
    make_vertex,
    rank_vertex,
    slope_vertex,
)

Arrow = tuple[QVertex, Direction]


def vertex_sort_key(v: QVertex):
    """Canonical vertex order: component, slope descending, then l1, l2, t."""
    return (component_class(v), -(v.l1 + v.l2 + 3 * v.t), v.l1, v.l2, v.t)


def full_arrows(vertices: Iterable[QVertex]) -> frozenset[Arrow]:
    """Every lattice arrow joining two vertices of the given set."""
    vset = set(vertices)
    out = set()
    for v in vset:
        for d in Direction:
            w = arrow_target(v, d)
            if w is not None and w in vset:
                out.add((v, d))
    return frozenset(out)


class Support:
    """Finite multiset of vertices plus the arrows considered nonzero.

    All vertices must lie in a single connected component of the lattice.
    Pass ``arrows="full"`` (the default) for every induced arrow; an explicit
    iterable of (source, direction) pairs models e.g. direct sums.
    """

    __slots__ = ("_mult", "_vertices", "_arrows", "_is_full")

    def __init__(self, mult: Mapping[QVertex, int], arrows: Union[str, Iterable[Arrow]] = "full"):
        clean: dict[QVertex, int] = {}
        for v, m in mult.items():
            if not isinstance(v, QVertex):
                v = make_vertex(*v)
            if not is_valid_vertex(v):
                raise InvalidInputError(f"invalid vertex {v}: requires l1 >= l2 >= 0")
            if m <= 0:
                raise InvalidInputError(f"multiplicity of {v} must be positive, got {m}")
            clean[v] = clean.get(v, 0) + int(m)
        # Vertices from different congruence classes can never be joined by an
        # arrow, so a mixed support is an honest direct sum across components
        # (e.g. O + O(1)); it is accepted, with `component` reporting None.
        self._vertices = tuple(sorted(clean, key=vertex_sort_key))
        self._mult = {v: clean[v] for v in self._vertices}
        induced = full_arrows(self._vertices)
        if isinstance(arrows, str):
            if arrows != "full":
                raise InvalidInputError(f'arrows must be "full" or a list, got {arrows!r}')
            self._arrows = induced
        else:
            aset = set()
            for src, d in arrows:
                if not isinstance(src, QVertex):
                    src = make_vertex(*src)
                if not isinstance(d, Direction):
                    d = Direction(d)
                if src not in self._mult:
                    raise InvalidInputError(f"arrow source {src} not a support vertex")
                tgt = arrow_target(src, d)
                if tgt is None or tgt not in self._mult:
                    raise InvalidInputError(
                        f"arrow {src}--{d}--> leaves the support; both endpoints required"
                    )
                aset.add((src, d))
            self._arrows = frozenset(aset)
        self._is_full = self._arrows == induced

    # ---- basic accessors -------------------------------------------------

    @property
    def vertices(self) -> tuple[QVertex, ...]:
        return self._vertices

    @property
    def mult_map(self) -> dict[QVertex, int]:
        return dict(self._mult)

    def mult(self, v: QVertex) -> int:
        return self._mult.get(v, 0)

    @property
    def arrows(self) -> frozenset[Arrow]:
        return self._arrows

    @property
    def is_full_arrows(self) -> bool:
        return self._is_full

    @property
    def multiplicity_one(self) -> bool:
        return all(m == 1 for m in self._mult.values())

    def __len__(self) -> int:
        return len(self._vertices)

    def __contains__(self, v: QVertex) -> bool:
        return v in self._mult

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Support)
            and self._mult == other._mult
            and self._arrows == other._arrows
        )

    def __hash__(self) -> int:
        return hash((frozenset(self._mult.items()), self._arrows))

    def __repr__(self) -> str:
        inner = ", ".join(
            format_vertex(v) + (f":{m}" if m != 1 else "") for v, m in self._mult.items()
        )
        return f"Support({{{inner}}})"

    # ---- invariants ------------------------------------------------------

    @property
    def rank(self) -> int:
        return sum(m * rank_vertex(v) for v, m in self._mult.items())

    @property
    def c1(self) -> int:
        return sum(m * c1_vertex(v) for v, m in self._mult.items())

    @property
    def c13(self) -> int:
        return sum(m * c13_vertex(v) for v, m in self._mult.items())

    @property
    def slope(self) -> Fraction:
        if not self._mult:
            raise InvalidInputError("slope of the empty support is undefined")
        return Fraction(self.c13, 3 * self.rank)

    @property
    def component(self) -> Optional[int]:
        """The common congruence class, or None when empty or mixed."""
        classes = {component_class(v) for v in self._vertices}
        return classes.pop() if len(classes) == 1 else None

    @property
    def touches_pi(self) -> bool:
        return any(v.l2 == 0 for v in self._vertices)

    @property
    def touches_sigma(self) -> bool:
        return any(v.l1 == v.l2 for v in self._vertices)

    # ---- derived supports --------------------------------------------

    def dual(self) -> Support:
        """Vertex-wise dual with the arrow set reversed (V0 and V1 exchanged)."""
        mult = {dual_vertex(v): m for v, m in self._mult.items()}
        arrows = []
        for src, d in self._arrows:
            tgt = arrow_target(src, d)
            arrows.append((dual_vertex(tgt), DUAL_DIRECTION[d]))
        return Support(mult, arrows)

    def restrict(self, keep: Iterable[QVertex]) -> Support:
        """Sub-support on ``keep`` with the induced subset of this support's arrows."""
        keep = set(keep)
        mult = {v: m for v, m in self._mult.items() if v in keep}
        arrows = [
            (src, d)
            for (src, d) in self._arrows
            if src in keep and arrow_target(src, d) in keep
        ]
        return Support(mult, arrows)


def rank_support(s: Support) -> int:
    return s.rank


def c1_support(s: Support) -> int:
    return s.c1


def slope_support(s: Support) -> Fraction:
    return s.slope


def dual_support(s: Support) -> Support:
    return s.dual()


def merge_supports(a: Support, b: Support) -> Support:
    """Disjoint-union support (full arrows); used for slope/mediant arithmetic."""
    if set(a.vertices) & set(b.vertices):
        raise InvalidInputError("merge requires disjoint vertex sets")
    mult = a.mult_map
    mult.update(b.mult_map)
    return Support(mult)


# ---- boxes ---------------------------------------------------------------


@dataclass(frozen=True)
class Box:
    """A parallelepiped support: max-slope corner plus extents along V1, V2, V0.

    All multiplicities are 1 and all induced arrows are present.
    """

    vmax: QVertex
    d1: int
    d2: int
    d0: int

    def __post_init__(self):
        if not is_valid_vertex(self.vmax):
            raise InvalidInputError(f"invalid-box: corner {self.vmax} is not a vertex")
        if min(self.d1, self.d2, self.d0) < 0:
            raise InvalidInputError("invalid-box: extents must be nonnegative")
        if self.vmax.l1 - self.d1 < self.vmax.l2:
            raise InvalidInputError(
                f"invalid-box: V1 extent {self.d1} exceeds l1-l2 = "
                f"{self.vmax.l1 - self.vmax.l2}"
            )
        if self.vmax.l2 < self.d2:
            raise InvalidInputError(
                f"invalid-box: V2 extent {self.d2} exceeds l2 = {self.vmax.l2}"
            )

    def vertex_at(self, i: int, j: int, k: int) -> QVertex:
        return QVertex(
            self.vmax.l1 - i + k,
            self.vmax.l2 - j + k,
            self.vmax.t - i - j - 2 * k,
        )

    def vertices(self) -> list[QVertex]:
        out = []
        for i in range(self.d1 + 1):
            for j in range(self.d2 + 1):
                for k in range(self.d0 + 1):
                    out.append(self.vertex_at(i, j, k))
        return out

    @property
    def n_vertices(self) -> int:
        return (self.d1 + 1) * (self.d2 + 1) * (self.d0 + 1)

    @property
    def touches_pi(self) -> bool:
        return self.vmax.l2 == self.d2

    @property
    def touches_sigma(self) -> bool:
        return self.vmax.l1 - self.d1 == self.vmax.l2

    @property
    def min_corner(self) -> QVertex:
        return self.vertex_at(self.d1, self.d2, self.d0)

    def support(self) -> Support:
        return Support({v: 1 for v in self.vertices()})

    def translate(self, disp: tuple[int, int, int]) -> Box:
        moved = QVertex(self.vmax.l1 + disp[0], self.vmax.l2 + disp[1], self.vmax.t + disp[2])
        return Box(moved, self.d1, self.d2, self.d0)

    def dual(self) -> Box:
        """The dual of a box is a box with the V1 and V0 extents exchanged."""
        return Box(dual_vertex(self.min_corner), self.d0, self.d2, self.d1)


def box_support(b: Box) -> Support:
    return b.support()


def gr_schur(lam1: int, lam2: int, lam3: int, t: int) -> Box:
    """Box of irreducible summands of the graded bundle of S^{lam1,lam2,lam3}V(t).

    The max-slope corner is S^{lam1-lam3,lam2-lam3}Q(t+lam3); the extents are
    (lam1-lam2, lam2-lam3, lam3).  The box always has an edge on pi and one
    on sigma.
    """
    if not (lam1 >= lam2 >= lam3 >= 0):
        raise InvalidInputError(f"shape must satisfy lam1>=lam2>=lam3>=0: {(lam1, lam2, lam3)}")
    return Box(
        QVertex(lam1 - lam3, lam2 - lam3, t + lam3),
        lam1 - lam2,
        lam2 - lam3,
        lam3,
    )


def as_box(s: Support) -> Optional[Box]:
    """Recognize a multiplicity-1 support whose vertex set fills a box.

    Returns the Box, or None.  The arrow set is not inspected.
    """
    if not s.vertices or not s.multiplicity_one:
        return None
    coords = _grid_coordinates(s.vertices)
    if coords is None:
        return None
    origin, pts = coords
    d1 = max(p[0] for p in pts)
    d2 = max(p[1] for p in pts)
    d0 = max(p[2] for p in pts)
    if (d1 + 1) * (d2 + 1) * (d0 + 1) != len(pts):
        return None
    try:
        return Box(origin, d1, d2, d0)
    except InvalidInputError:
        return None


def _grid_coordinates(vertices) -> Optional[tuple[QVertex, list[tuple[int, int, int]]]]:
    """Express vertices as origin + i*V1 + j*V2 + k*V0 with i,j,k >= 0, min 0.

    Returns (origin, coordinate list) or None when a vertex is off-lattice.
    """
    ref = vertices[0]
    raw = []
    for v in vertices:
        num = (v.l1 - ref.l1) + (v.l2 - ref.l2) + (ref.t - v.t)
        if num % 4:
            return None
        k = num // 4
        i = ref.l1 - v.l1 + k
        j = ref.l2 - v.l2 + k
        raw.append((i, j, k))
    mi = min(p[0] for p in raw)
    mj = min(p[1] for p in raw)
    mk = min(p[2] for p in raw)
    pts = [(p[0] - mi, p[1] - mj, p[2] - mk) for p in raw]
    dl1, dl2, dt = (
        -mi * DISPLACEMENT[Direction.V1][0]
        - mj * DISPLACEMENT[Direction.V2][0]
        - mk * DISPLACEMENT[Direction.V0][0],
        -mi * DISPLACEMENT[Direction.V1][1]
        - mj * DISPLACEMENT[Direction.V2][1]
        - mk * DISPLACEMENT[Direction.V0][1],
        -mi * DISPLACEMENT[Direction.V1][2]
        - mj * DISPLACEMENT[Direction.V2][2]
        - mk * DISPLACEMENT[Direction.V0][2],
    )
    origin = QVertex(ref.l1 + dl1, ref.l2 + dl2, ref.t + dt)
    if not is_valid_vertex(origin):
        # the virtual corner can still be a lattice point below the border
        return None
    return origin, pts


# ---- cylinder staircases ---------------------------------------------------


@dataclass(frozen=True)
class CylinderStaircase:
    """A cylinder along V0 over a staircase region in the (V1, V2) grid.

    ``steps`` are the minimal grid columns (x strictly increasing, y strictly
    decreasing); the vertex set is the union of the boxes from each step down
    to the host's sink corner, with the full V0 extent at every column.
    Stored in canonical form: the host box is the bounding box, so the first
    step has x = 0 and the last step has y = 0.
    """

    host: Box
    steps: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if not self.steps:
            raise InvalidInputError("not-a-cylinder-staircase: needs at least one step")
        xs = [s[0] for s in self.steps]
        ys = [s[1] for s in self.steps]
        if any(a >= b for a, b in zip(xs, xs[1:])) or any(
            a <= b for a, b in zip(ys, ys[1:])
        ):
            raise InvalidInputError(
                "not-a-cylinder-staircase: steps need x strictly increasing and "
                "y strictly decreasing"
            )
        if xs[0] != 0 or ys[-1] != 0:
            raise InvalidInputError(
                "not-a-cylinder-staircase: canonical form needs first step at x=0 "
                "and last step at y=0 (use CylinderStaircase.make)"
            )
        if xs[-1] > self.host.d1 or ys[0] > self.host.d2:
            raise InvalidInputError("not-a-cylinder-staircase: steps leave the host box")

    @classmethod
    def make(cls, host: Box, steps: Iterable[tuple[int, int]]) -> CylinderStaircase:
        """Build a staircase, shrinking the host to the bounding box of the steps."""
        steps = tuple((int(x), int(y)) for x, y in steps)
        if not steps:
            raise InvalidInputError("not-a-cylinder-staircase: needs at least one step")
        x0 = min(s[0] for s in steps)
        y0 = min(s[1] for s in steps)
        if x0 or y0:
            shift = (
                x0 * DISPLACEMENT[Direction.V1][0] + y0 * DISPLACEMENT[Direction.V2][0],
                x0 * DISPLACEMENT[Direction.V1][1] + y0 * DISPLACEMENT[Direction.V2][1],
                x0 * DISPLACEMENT[Direction.V1][2] + y0 * DISPLACEMENT[Direction.V2][2],
            )
            host = Box(
                QVertex(host.vmax.l1 + shift[0], host.vmax.l2 + shift[1], host.vmax.t + shift[2]),
                host.d1 - x0,
                host.d2 - y0,
                host.d0,
            )
            steps = tuple((x - x0, y - y0) for x, y in steps)
        return cls(host, steps)

    @property
    def r(self) -> int:
        return len(self.steps)

    @property
    def height(self) -> int:
        return self.host.d0

    @property
    def completely_regular(self) -> bool:
        """Consecutive steps differ by exactly one step of V1 - V2."""
        return all(
            (x2, y2) == (x1 + 1, y1 - 1)
            for (x1, y1), (x2, y2) in zip(self.steps, self.steps[1:])
        )

    def columns(self) -> list[tuple[int, int]]:
        cols = set()
        for (x, y) in self.steps:
            for i in range(x, self.host.d1 + 1):
                for j in range(y, self.host.d2 + 1):
                    cols.add((i, j))
        return sorted(cols)

    @property
    def n_vertices(self) -> int:
        return len(self.columns()) * (self.host.d0 + 1)

    @property
    def touches_pi(self) -> bool:
        return self.host.touches_pi

    @property
    def touches_sigma(self) -> bool:
        return self.host.touches_sigma

    def vertices(self) -> list[QVertex]:
        out = []
        for (i, j) in self.columns():
            for k in range(self.host.d0 + 1):
                out.append(self.host.vertex_at(i, j, k))
        return out

    def support(self) -> Support:
        return Support({v: 1 for v in self.vertices()})


def as_cylinder_staircase(s: Support) -> Optional[CylinderStaircase]:
    """Recognize a multiplicity-1 support shaped as a cylinder staircase."""
    if not s.vertices or not s.multiplicity_one:
        return None
    coords = _grid_coordinates(s.vertices)
    if coords is None:
        return None
    origin, pts = coords
    if len(set(pts)) != len(pts):
        return None
    d1 = max(p[0] for p in pts)
    d2 = max(p[1] for p in pts)
    d0 = max(p[2] for p in pts)
    cols: dict[tuple[int, int], set[int]] = {}
    for (i, j, k) in pts:
        cols.setdefault((i, j), set()).add(k)
    full = set(range(d0 + 1))
    if any(ks != full for ks in cols.values()):
        return None
    present = set(cols)
    for (i, j) in present:
        if i + 1 <= d1 and (i + 1, j) not in present:
            return None
        if j + 1 <= d2 and (i, j + 1) not in present:
            return None
    minimal = sorted(
        (i, j) for (i, j) in present if (i - 1, j) not in present and (i, j - 1) not in present
    )
    try:
        host = Box(origin, d1, d2, d0)
        return CylinderStaircase.make(host, minimal)
    except InvalidInputError:
        return None


# ---- tensor decompositions -------------------------------------------------


def tensor_gr(v: QVertex, w: QVertex) -> Support:
    """Graded support of the tensor product of two irreducible bundles.

    Two-row shapes are multiplied by the Littlewood-Richardson rule with at
    most three rows; full columns of height three become twists.
    """
    prods = schur.lr_tensor((v.l1, v.l2), (w.l1, w.l2), 3)
    mult: Counter = Counter()
    for nu, c in prods.items():
        full = nu + (0,) * (3 - len(nu))
        vert = make_vertex(full[0] - full[2], full[1] - full[2], v.t + w.t + full[2])
        mult[vert] += c
    return Support(mult)


def tensor_with_rep(v: QVertex, rho, s: int) -> Support:
    """Graded support of an irreducible bundle tensored with S^rho V(s).

    The trivial factor is decomposed into its box of irreducible summands
    first; tensor products with each summand are then accumulated.
    """
    rho = schur.canonical(rho)
    if len(rho) > 4:
        raise InvalidInputError(f"shape {rho} has more than 4 rows")
    full = rho + (0,) * (4 - len(rho))
    red = tuple(x - full[3] for x in full[:3])  # height-4 columns are trivial
    box = gr_schur(red[0], red[1], red[2], s)
    acc: Counter = Counter()
    for u in box.vertices():
        for vert, m in tensor_gr(v, u).mult_map.items():
            acc[vert] += m
    return Support(acc)


# ---- JSON forms -------------------------------------------------------------


def fraction_str(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


def vertex_to_json(v: QVertex) -> dict:
    return {"l1": v.l1, "l2": v.l2, "t": v.t}


def vertex_from_json(doc) -> QVertex:
    if isinstance(doc, dict):
        try:
            return make_vertex(doc["l1"], doc["l2"], doc["t"])
        except KeyError as e:
            raise InvalidInputError(f"vertex object is missing field {e}") from e
    if isinstance(doc, (list, tuple)) and len(doc) == 3:
        return make_vertex(*doc)
    raise InvalidInputError(f"cannot read a vertex from {doc!r}")


def support_to_json(s: Support) -> dict:
    verts = [dict(vertex_to_json(v), mult=m) for v, m in s.mult_map.items()]
    if s.is_full_arrows:
        arrows = "full"
    else:
        index = {v: i for i, v in enumerate(s.vertices)}
        arrows = sorted([index[src], d.value] for (src, d) in s.arrows)
    return {"vertices": verts, "arrows": arrows}


def box_to_json(b: Box) -> dict:
    return {
        "box": {
            "vmax": [b.vmax.l1, b.vmax.l2, b.vmax.t],
            "extents": [b.d1, b.d2, b.d0],
        }
    }


def box_from_json(doc: dict) -> Box:
    try:
        vmax = doc["vmax"]
        extents = doc["extents"]
    except (KeyError, TypeError) as e:
        raise InvalidInputError(f'box object needs "vmax" and "extents": {doc!r}') from e
    if len(vmax) != 3 or len(extents) != 3:
        raise InvalidInputError('box "vmax" and "extents" must have three entries')
    return Box(make_vertex(*vmax), int(extents[0]), int(extents[1]), int(extents[2]))


def staircase_to_json(cs: CylinderStaircase) -> dict:
    return {
        "staircase": {
            "host": box_to_json(cs.host)["box"],
            "steps": [list(s) for s in cs.steps],
        }
    }


def staircase_from_json(doc: dict) -> CylinderStaircase:
    try:
        host = box_from_json(doc["host"])
        steps = doc["steps"]
    except (KeyError, TypeError) as e:
        raise InvalidInputError(f'staircase object needs "host" and "steps": {doc!r}') from e
    return CylinderStaircase.make(host, [tuple(s) for s in steps])


def support_from_json(doc: dict) -> Support:
    """Read a support from its JSON form, a box form, or a staircase form."""
    if not isinstance(doc, dict):
        raise InvalidInputError(f"expected a JSON object, got {type(doc).__name__}")
    if "box" in doc:
        return box_from_json(doc["box"]).support()
    if "staircase" in doc:
        return staircase_from_json(doc["staircase"]).support()
    if "vertices" not in doc:
        raise InvalidInputError('support object needs "vertices", "box" or "staircase"')
    mult: dict[QVertex, int] = {}
    order: list[QVertex] = []
    for entry in doc["vertices"]:
        v = vertex_from_json(entry)
        m = int(entry.get("mult", 1)) if isinstance(entry, dict) else 1
        if v in mult:
            raise InvalidInputError(f"vertex {v} listed twice; use the mult field")
        mult[v] = m
        order.append(v)
    arrows = doc.get("arrows", "full")
    if isinstance(arrows, str):
        return Support(mult, arrows)
    pairs = []
    for item in arrows:
        try:
            src_index, dname = item
        except (TypeError, ValueError) as e:
            raise InvalidInputError(f"arrow entries look like [srcIndex, direction]: {item!r}") from e
        if not 0 <= int(src_index) < len(order):
            raise InvalidInputError(f"arrow source index {src_index} out of range")
        try:
            d = Direction(dname)
        except ValueError as e:
            raise InvalidInputError(f"unknown direction {dname!r}") from e
        pairs.append((order[int(src_index)], d))
    return Support(mult, pairs)
