"""Eigenvalue bounds for the infinite-mass Dirac operator on planar domains."""
from ._backend import BACKEND
from .bounds import (
    BoundsReport,
    NotApplicable,
    abstract_bound,
    easy_bound,
    easy_bound_audit,
    fc_star,
    functional_fc,
    functional_fs,
    gaier_hardy,
    kovalev_hardy,
    lower_bound,
    functional_bounds,
    verify_chain,
)
from .conformal import ConformalMap, adaptive_map, hardy_norm_fprime, theodorsen_map
from .diskspec import DiskEigenpair, disk_eigenfunction, disk_spectrum, rayleigh_check_disk
from .geometry import DomainSpec, GeometryReport, disk, ellipse, geometry_report, polar_fourier, translate
from .quadrature import mu_disk
from .specfun import bessel_j, bessel_zero, phi, secular_root
from .transplant import TransplantResult, h_monotonicity_check, transplant_quotient

__version__ = "0.1.0"
