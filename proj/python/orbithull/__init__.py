"""Majorization, orbit-hull distances and unitary-mixing synthesis in multi-matrix algebras.

Elements are lists of square complex (or real) numpy arrays, one per block.
"""

from ._core import (
    OrbithullError,
    dixmier_pinch,
    frank_wolfe_distance,
    generate_pair,
    majorize,
    orbit_distance,
    orbit_distance_per_block,
    spectrum,
    submaj_distance,
    submajorize,
    synthesize,
    uniform_probe,
    zero_in_hull,
)

__all__ = [
    "OrbithullError",
    "dixmier_pinch",
    "frank_wolfe_distance",
    "generate_pair",
    "majorize",
    "orbit_distance",
    "orbit_distance_per_block",
    "spectrum",
    "submaj_distance",
    "submajorize",
    "synthesize",
    "uniform_probe",
    "zero_in_hull",
]
