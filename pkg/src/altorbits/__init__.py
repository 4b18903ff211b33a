"""Orbits of the alternative laws on top-split lengths, flips, and an alternative loop.

Submodules:

* :mod:`altorbits.dynsys` - the omega dynamical system and its orbits
* :mod:`altorbits.numtheory` - orders, Legendre symbols, CRT, prime classes
* :mod:`altorbits.freegroupoid` - one-letter words and their equivalence classes
* :mod:`altorbits.flip` - brute-force and number-theoretic flip decisions
* :mod:`altorbits.smithloop` - the infinite alternative loop without two-sided inverses
* :mod:`altorbits.cli` - the ``altorbits`` command
"""
from ._accel import backend_name
from .dynsys import Orbit, OrbitLimitError, Pair, is_complete, omega, orbit, orbit_partition, shape
from .flip import FlipReport, flips_bruteforce, flips_fast, nonflip_window, reduce_to_odd_core

__version__ = "0.1.0"

__all__ = [
    "FlipReport",
    "Orbit",
    "OrbitLimitError",
    "Pair",
    "backend_name",
    "flips_bruteforce",
    "flips_fast",
    "is_complete",
    "nonflip_window",
    "omega",
    "orbit",
    "orbit_partition",
    "reduce_to_odd_core",
    "shape",
]
