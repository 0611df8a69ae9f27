"""tylab: a verification laboratory for T- and Y-system periodicities.

The package realizes restricted T-systems and Y-systems of type B_r (and
of pairs of simply laced diagrams) as coefficient/cluster dynamics of a
quiver mutation sequence, then checks every finitely-computable claim:
periodicity, tropical sign structure, monomial counts, root-orbit
structure, and dilogarithm identities.
"""
from __future__ import annotations

__version__ = "0.1.0"
