"""Numerical calculus of tangential symmetric tensor fields on spheres."""
from .field import (
    TangentField,
    coordinate_field,
    harmonic_scalar,
    metric_field,
    parallel_circle_field,
    random_tangential,
    tangential_project,
)
from .grid import SphereGrid, circle_grid, sphere_grid
from .identities import (
    eigenvalue_residual,
    identity_check_623,
    second_order_conjecture_residual,
)
from .ops import (
    NablaField,
    apply_ncpoly,
    apply_word_letters,
    divergence,
    gram_matrix,
    inner_d,
    metric_i,
    nabla,
    nabla2,
    nabla_full,
    sphere_inner,
    sphere_integrate,
    trace_j,
)

__all__ = [
    "SphereGrid",
    "circle_grid",
    "sphere_grid",
    "TangentField",
    "tangential_project",
    "coordinate_field",
    "harmonic_scalar",
    "parallel_circle_field",
    "metric_field",
    "random_tangential",
    "NablaField",
    "nabla",
    "nabla2",
    "nabla_full",
    "inner_d",
    "divergence",
    "metric_i",
    "trace_j",
    "sphere_integrate",
    "sphere_inner",
    "apply_ncpoly",
    "apply_word_letters",
    "gram_matrix",
    "identity_check_623",
    "eigenvalue_residual",
    "second_order_conjecture_residual",
]
