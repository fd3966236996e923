"""Full vs rotating-wave treatment of a laser-driven trapped ion.

Closed forms, a truncated-Fock numerical oracle, two-qubit entanglement
measures and a command-line front end for figure data.
"""
__version__ = "0.1.0"

from .closed_forms import FULL, RWA, HamiltonianKind, SystemParams  # noqa: E402

__all__ = ["FULL", "RWA", "HamiltonianKind", "SystemParams", "__version__"]
