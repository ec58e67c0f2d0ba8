"""Promotion dynamics on increasing labelings of posets, with exact orbit statistics."""

from .errors import *  # noqa: F401,F403
from .poset import (
    Involution,
    OrderIdeal,
    Poset,
    antichain,
    build_fence,
    build_from_covers,
    canonical_involution,
    chain,
    dual_ideal,
    enumerate_order_ideals,
    rowmotion,
    zigzag,
)
from .labeling import (
    ContentWord,
    IncLabeling,
    contains_pattern,
    content,
    count_inc,
    deflate,
    enumerate_inc,
    enumerate_packed,
    inflate,
    is_balanced,
    is_linear_extension,
    is_packed,
    iter_inc,
    random_inc,
    reading_word,
)
from .dynamics import (
    PROMOTION,
    PROMOTION_INVERSE,
    Action,
    Orbit,
    OrbitSizeTable,
    all_orbits,
    compute_orbit,
    deflation_data,
    is_swap_closed,
    orbit_of,
    orbit_size_formula,
    orbit_size_table,
    orbit_size_via_deflation,
    packed_orbit_types,
    promote,
    promote_inverse,
    promotion_order,
    promotion_orbits,
    rowmotion_action,
    dual_ideal_action,
    sliding_layers,
    sliding_subposet,
    swap,
    swap_action,
    swap_image_orbit,
)
from .mesy import (
    CARDINALITY,
    TOTAL_SUM,
    Census,
    Statistic,
    antipodal_sum,
    census,
    classify_z4_orbit,
    covered_orbitmesy_check,
    exterior_sum,
    global_average,
    interior_sum,
    is_homomesic,
    is_orbitmesic,
    orbit_average,
    orbitmesy_certificates,
    z4_exterior_sum_closed_form,
    z4_gap_profile,
    z4_interior_sum_closed_form,
)

__version__ = "0.1.0"
