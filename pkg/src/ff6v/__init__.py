"""Exact-arithmetic engine for the free-fermion six-vertex model: symmetric
rational functions with two independent evaluation routes, determinantal
measures on signature sequences with a double-residue correlation kernel, the
equivalent domino-tiling picture, and the inhomogeneous discrete sine kernel
that governs the bulk limit.
"""

from . import asymptotics, fock, linalg, params, process, ratfun, symfun, tiling, vertex

__all__ = [
    "asymptotics",
    "fock",
    "linalg",
    "params",
    "process",
    "ratfun",
    "symfun",
    "tiling",
    "vertex",
]

__version__ = "0.1.0"
