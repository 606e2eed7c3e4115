"""
Computational kernels.

Includes exact power comparisons, ball and slab geometry, Diophantine
certificates, dual-vector and line attachments, level subdivisions, systoles
and the game referee.
"""

from src.tools.exact import compare_power_terms, compare_with_power, cmp_power, PowerSum
from src.tools.geometry import ball_avoids_nbhd, ball_contains, ball_subset, nbhd_contains
from src.tools.diophantine import (
    bad_certificate,
    best_epsilon,
    delta_contains,
    delta_intersects_ball,
    quality,
    reduce_point,
)
from src.tools.attachments import (
    attach_line,
    attached_hyperplane,
    dual_search,
    height,
    scaled_functional,
)
from src.tools.subdivisions import classify_ball, derive_params, find_Ek, prime_check
from src.tools.lattice import orbit_trace, orbit_verdict, systole
from src.tools.referee import evaluate_win, hag_step, hpg_step, revalidate_trace, step

__all__ = [
    # Exact comparisons
    "PowerSum",
    "cmp_power",
    "compare_power_terms",
    "compare_with_power",
    # Geometry
    "ball_avoids_nbhd",
    "ball_contains",
    "ball_subset",
    "nbhd_contains",
    # Diophantine
    "bad_certificate",
    "best_epsilon",
    "delta_contains",
    "delta_intersects_ball",
    "quality",
    "reduce_point",
    # Attachments
    "attach_line",
    "attached_hyperplane",
    "dual_search",
    "height",
    "scaled_functional",
    # Strategy
    "classify_ball",
    "derive_params",
    "find_Ek",
    "prime_check",
    # Lattice
    "orbit_trace",
    "orbit_verdict",
    "systole",
    # Referee
    "evaluate_win",
    "hag_step",
    "hpg_step",
    "revalidate_trace",
    "step",
]
