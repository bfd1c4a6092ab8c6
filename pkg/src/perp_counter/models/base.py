"""Base enums shared by services and the CLI."""

from enum import Enum


class KField(str, Enum):
    """Real division algebra of the hyperbolic space."""

    R = "R"
    C = "C"
    H = "H"

    @property
    def dim(self) -> int:
        """Real dimension of the algebra."""
        return {"R": 1, "C": 2, "H": 4}[self.value]


class PairKind(str, Enum):
    """Pairs of convex sets of the modular orbifold whose common perpendiculars are counted."""

    DD = "dd"
    DD1 = "dd1"
    D1D1 = "d1d1"
    DI = "di"
    D1I = "d1i"


class OutputFormat(str, Enum):
    """Report output formats."""

    JSON = "json"
    CSV = "csv"
    SVG = "svg"


class HeisCase(str, Enum):
    """Horospherical geometry checks available from the CLI."""

    CYGAN = "cygan"
    RAY = "ray"
    XI = "xi"
    SCALING = "scaling"


class FigureKind(str, Enum):
    """Reproducible figure families."""

    DIVERGENT = "divergent"
    PERPENDICULARS = "perpendiculars"
    AMBIGUOUS = "ambiguous"
