"""Permutation-group models of 2d Rubik's shapes and the 2x2 Rubik's square."""

from .perm import (Permutation, compose, from_cycles, identity, inverse, power,
                   sign, to_cycles)
from .kernels import BACKEND as KERNEL_BACKEND

__all__ = ["Permutation", "compose", "from_cycles", "identity", "inverse", "power",
           "sign", "to_cycles", "KERNEL_BACKEND"]

__version__ = "0.1.0"
