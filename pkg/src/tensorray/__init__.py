"""tensorray: sphere-operator derivation and ray-transform isometry checks.

Subpackages:
    symtensor   dense symmetric tensor algebra and the contraction oracle
    opcalc      exact noncommutative operator calculus over Q(n)
    spherecalc  numerical calculus of tangential tensor fields on spheres
    raykit      discrete ray transform, weighted Sobolev norms, isometry checks
"""
from . import symtensor

__version__ = "0.1.0"

__all__ = ["symtensor", "__version__"]
