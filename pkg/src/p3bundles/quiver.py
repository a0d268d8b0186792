"""The arrow lattice of irreducible homogeneous bundles on P^3.

Vertices are the bundles S^{l1,l2}Q(t) for the rank-3 quotient bundle Q,
stored in reduced two-row form.  Each vertex carries exact rank, slope and
first Chern class; arrows step in one of three directions and always lower
the slope by 4/3.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from typing import NamedTuple, Optional

from .errors import InternalInconsistencyError, InvalidInputError


class Direction(enum.Enum):
    V0 = "V0"
    V1 = "V1"
    V2 = "V2"

    def __str__(self) -> str:
        return self.value


# displacement of one arrow step in (l1, l2, t) coordinates
DISPLACEMENT: dict[Direction, tuple[int, int, int]] = {
    Direction.V0: (1, 1, -2),
    Direction.V1: (-1, 0, -1),
    Direction.V2: (0, -1, -1),
}

# duality exchanges the V0 and V1 arrow directions and fixes V2
DUAL_DIRECTION: dict[Direction, Direction] = {
    Direction.V0: Direction.V1,
    Direction.V1: Direction.V0,
    Direction.V2: Direction.V2,
}


class QVertex(NamedTuple):
    """The bundle S^{l1,l2}Q(t), with l1 >= l2 >= 0."""

    l1: int
    l2: int
    t: int

    def __str__(self) -> str:
        return format_vertex(self)


def is_valid_vertex(v: QVertex) -> bool:
    return v.l1 >= v.l2 >= 0


def make_vertex(l1: int, l2: int, t: int) -> QVertex:
    v = QVertex(int(l1), int(l2), int(t))
    if not is_valid_vertex(v):
        raise InvalidInputError(f"vertex requires l1 >= l2 >= 0: ({l1},{l2},{t})")
    return v


def format_vertex(v: QVertex) -> str:
    return f"S^{{{v.l1},{v.l2}}}Q({v.t})"


def arrow_target(v: QVertex, d: Direction) -> Optional[QVertex]:
    """Endpoint of the arrow leaving ``v`` in direction ``d``, or None.

    V0 steps to (l1+1, l2+1, t-2) and is always defined; V1 and V2 lower one
    row by a box and are absent on the border planes sigma and pi.
    """
    dl1, dl2, dt = DISPLACEMENT[d]
    w = QVertex(v.l1 + dl1, v.l2 + dl2, v.t + dt)
    return w if is_valid_vertex(w) else None


def rank_vertex(v: QVertex) -> int:
    """(l1-l2+1)(l2+1)(l1+2)/2, the dimension of the two-row Schur module on C^3."""
    num = (v.l1 - v.l2 + 1) * (v.l2 + 1) * (v.l1 + 2)
    return num // 2


def slope_vertex(v: QVertex) -> Fraction:
    """(l1+l2)/3 + t, exactly."""
    return Fraction(v.l1 + v.l2 + 3 * v.t, 3)


def c13_vertex(v: QVertex) -> int:
    """Three times the first Chern class; always an integer, used in hot loops."""
    return rank_vertex(v) * (v.l1 + v.l2 + 3 * v.t)


def c1_vertex(v: QVertex) -> int:
    """rank * slope, asserted to be an integer."""
    num = c13_vertex(v)
    if num % 3:
        raise InternalInconsistencyError(f"non-integral c1 at {v}")
    return num // 3


def component_class(v: QVertex) -> int:
    """Index of the connected component: (l1 + l2 + 3t) mod 4.

    Equals three times the slope mod 4; constant along arrows.
    """
    return (v.l1 + v.l2 + 3 * v.t) % 4


def on_pi(v: QVertex) -> bool:
    """True on the border plane of one-row bundles (no V2 arrow)."""
    return v.l2 == 0


def on_sigma(v: QVertex) -> bool:
    """True on the border plane of square-shape bundles (no V1 arrow)."""
    return v.l1 == v.l2


def dual_vertex(v: QVertex) -> QVertex:
    """Dual bundle: (l1, l1-l2, -t-l1).  An involution negating the slope."""
    return QVertex(v.l1, v.l1 - v.l2, -v.t - v.l1)
