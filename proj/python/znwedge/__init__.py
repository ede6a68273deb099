"""Z(N)-Ising factorizing S-matrix and weak wedge-locality checks."""

from ._core import Model, ZnwedgeError, antiparticle, fusion_angles, s11

__all__ = ["Model", "ZnwedgeError", "antiparticle", "fusion_angles", "s11"]
