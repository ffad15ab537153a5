"""Exact line/plane cover numbers of graph drawings.

Computes how few lines or planes suffice to carry all vertices or all
edges of a straight-line crossing-free drawing of a graph, in the plane
and in 3-space.  Provides exact combinatorial solvers for the matching
graph parameters, certified constructions for several graph families,
and an exact rational verifier for drawings and cover witnesses.
"""

from __future__ import annotations

__version__ = "0.1.0"
