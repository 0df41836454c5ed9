"""Python access to the parafermion library.

Lattices are passed around as JSON text in the same format the CLI saves;
structured results come back as dicts.
"""

import json

from . import _core
from ._core import (
    BudgetExceeded,
    InvalidInput,
    IoError,
    SingularWeight,
    central_charge,
    conformal_spin,
    fz_weights,
    lattice_violations,
    render_svg,
)

__all__ = [
    "BudgetExceeded",
    "InvalidInput",
    "IoError",
    "SingularWeight",
    "build_multigrid",
    "build_square",
    "central_charge",
    "conformal_spin",
    "face_residuals",
    "face_sum",
    "fz_weights",
    "lattice_violations",
    "partition_function",
    "render_svg",
    "solve_weights",
    "star_triangle",
]


def face_residuals(n, m, alpha, weights=None, rotation=0.0, anti=False):
    """Residuals of one canonical rhombus; `weights` are the free couplings x_1..x_{N/2}."""
    return json.loads(_core.face_residuals(n, m, alpha, weights, rotation, anti))


def solve_weights(n, m, alpha, joint=True):
    return json.loads(_core.solve_weights(n, m, alpha, joint))


def star_triangle(n, alphas):
    return json.loads(_core.star_triangle(n, list(alphas)))


def build_square(rows, cols, alpha):
    return _core.build_square(rows, cols, alpha)


def build_multigrid(angles, offsets, extent=1):
    return _core.build_multigrid(list(angles), list(offsets), extent)


def partition_function(lattice, n, threads=1):
    return _core.partition_function(lattice, n, threads)


def face_sum(lattice, n, m, face, spectators=(), perturb=0.0):
    """Contour sum around `face`; spectators are (primal vertex, power) pairs."""
    return json.loads(_core.face_sum(lattice, n, m, face, [tuple(s) for s in spectators], perturb))
