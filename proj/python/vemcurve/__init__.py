"""Polygonal virtual element Poisson solver on curved 2D domains."""

from ._core import (
    Domain,
    Mesh,
    generate_mesh,
    load_mesh,
    make_domain,
    max_boundary_distance,
    run_sweep,
    save_mesh,
    solve_poisson,
)

__all__ = [
    "Domain",
    "Mesh",
    "generate_mesh",
    "load_mesh",
    "make_domain",
    "max_boundary_distance",
    "run_sweep",
    "save_mesh",
    "solve_poisson",
]
