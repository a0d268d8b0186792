"""Homogeneous bundles on P^3 through their quiver supports: exact slope
stability decisions and minimal free resolutions of boxes and staircases."""

from .errors import InternalInconsistencyError, InvalidInputError
from .quiver import (
    Direction,
    QVertex,
    arrow_target,
    c1_vertex,
    component_class,
    dual_vertex,
    format_vertex,
    make_vertex,
    on_pi,
    on_sigma,
    rank_vertex,
    slope_vertex,
)
from .resolution import (
    FreeTerm,
    Resolution,
    classify_resolution_shape,
    euler_check,
    gr_alternating_sum,
    resolve_box,
    resolve_cylinder_staircase,
)
from .schur import canonical, dual_partition, lr_tensor, pieri_row, weyl_dim
from .stability import (
    Verdict,
    classify,
    count_filters,
    enumerate_filters,
    hyp_rank_sum_brute,
    hyp_rank_sum_closed,
    macmahon_count,
    multistable,
    semistable,
    slab_decomposition,
    sticking_out_parts,
    translate_compare,
)
from .support import (
    Box,
    CylinderStaircase,
    Support,
    as_box,
    as_cylinder_staircase,
    box_support,
    c1_support,
    dual_support,
    gr_schur,
    rank_support,
    slope_support,
    support_from_json,
    support_to_json,
    tensor_gr,
    tensor_with_rep,
)

__version__ = "0.1.0"
