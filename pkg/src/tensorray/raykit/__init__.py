"""Discrete ray transform, line-manifold norms, and the isometry checker."""
from .checks import cross_path_check, slice_check, sphere_slice_integral_check
from .deltaxi import delta_xi, delta_xi_powers, xi_adjoint_check, xi_apply
from .fourier import fourier_ray, inverse_fourier_ray
from .lines import LineGrid, RaySample
from .norms import (
    hrst_pairings,
    hst_prefactor,
    norm_hrst_ts,
    norm_hst_ts,
    norm_solenoidal,
    pairing_hst,
    reshetnyak_check,
)
from .transform import monomial_weights, ray_transform
from .volume import (
    VolumeField,
    curl_curl_gaussian,
    curl_gaussian,
    fourier_volume,
    gaussian_scalar,
    inverse_fourier_volume,
    load_volume,
    save_volume,
    solenoidal_project,
    tangential_residual_dual,
)

__all__ = [
    "VolumeField",
    "fourier_volume",
    "inverse_fourier_volume",
    "solenoidal_project",
    "tangential_residual_dual",
    "gaussian_scalar",
    "curl_gaussian",
    "curl_curl_gaussian",
    "save_volume",
    "load_volume",
    "LineGrid",
    "RaySample",
    "ray_transform",
    "monomial_weights",
    "fourier_ray",
    "inverse_fourier_ray",
    "delta_xi",
    "delta_xi_powers",
    "xi_apply",
    "xi_adjoint_check",
    "norm_hst_ts",
    "norm_hrst_ts",
    "hrst_pairings",
    "pairing_hst",
    "hst_prefactor",
    "norm_solenoidal",
    "reshetnyak_check",
    "slice_check",
    "cross_path_check",
    "sphere_slice_integral_check",
]
