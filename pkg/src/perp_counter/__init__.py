"""Perp Counter.

Counts common perpendiculars between divergent geodesics, points and their translates in
arithmetic hyperbolic orbifolds (the modular orbifold and the Bianchi orbifolds), and checks
the counts against exact divisor-sum arithmetic.

Key Features:
- Exact arithmetic in imaginary quadratic rings, 2x2 matrices and boundary points
- Numpy divisor sieves over the integers and over imaginary quadratic rings
- Common perpendiculars, complex lengths and horospherical geometry
- Closed forms for the asymptotic counting constants
- Ambiguous and reciprocal class detection in the modular group
- Fundamental-domain folding and deterministic SVG figures
"""

from __future__ import annotations

import warnings

warnings.simplefilter("ignore", category=DeprecationWarning)


__author__ = "Paul Robello"
__credits__ = ["Paul Robello"]
__maintainer__ = "Paul Robello"
__email__ = "probello@gmail.com"
__version__ = "0.3.0"
__application_title__ = "Perp Counter"
__application_binary__ = "perpc"
__licence__ = "MIT"


__all__: list[str] = [
    "__author__",
    "__credits__",
    "__maintainer__",
    "__email__",
    "__version__",
    "__application_binary__",
    "__licence__",
    "__application_title__",
]
