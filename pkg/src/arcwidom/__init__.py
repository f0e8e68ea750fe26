"""Chebyshev-type extremal polynomials on circular arcs.

Subpackages:

* :mod:`arcwidom.conformal` -- closed-form charts and Green's functions,
* :mod:`arcwidom.slitpotential` -- finite-degree machinery on the slit model
  domain (balayage measures, slit half-width, explicit extremal polynomial),
* :mod:`arcwidom.extremal` -- independent semi-infinite LP solver for the
  primal problem,
* :mod:`arcwidom.asymptotics` -- closed-form limit functions, reproducing
  kernel and norm asymptote,
* :mod:`arcwidom.cli` -- command line harness and verification suites.
"""

from .conformal import INF, ArcGeometry, Chart, ChartPoint

__all__ = ["INF", "ArcGeometry", "Chart", "ChartPoint"]
__version__ = "0.1.0"
