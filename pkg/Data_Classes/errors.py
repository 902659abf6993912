"""
Exception hierarchy for the contact-pair curvature engine.

Validators and auditors report mathematical failures as report entries;
the exceptions below are reserved for malformed input, shape problems and
arithmetic that cannot be carried out.
"""

from typing import Optional, Sequence


class CpcError(Exception):
    """Base class for every error raised by the engine."""


# ---------------------------------------------------------------- expressions

class ExprError(CpcError):
    """Base class for expression parsing and evaluation errors."""


class ExprSyntaxError(ExprError):
    """Malformed expression text."""

    def __init__(self, position: int, message: str):
        self.position = position
        self.message = message
        super().__init__(f"syntax error at offset {position}: {message}")


class UnknownSymbolError(ExprError):
    """An identifier that is neither a coordinate, a constant nor a function."""

    def __init__(self, name: str, position: int):
        self.name = name
        self.position = position
        super().__init__(f"unknown symbol '{name}' at offset {position}")


class IndexOutOfRangeError(ExprError):
    """A coordinate variable x{k} with k >= dim."""

    def __init__(self, index: int, dim: int, position: int):
        self.index = index
        self.dim = dim
        self.position = position
        super().__init__(
            f"coordinate x{index} at offset {position} is out of range for dimension {dim}"
        )


class DomainError(ExprError):
    """log/sqrt of a non-positive argument, division by zero, bad power."""

    def __init__(self, subexpression: str, message: str):
        self.subexpression = subexpression
        self.message = message
        super().__init__(f"{message} in '{subexpression}'")


# ------------------------------------------------------------------- geometry

class GeometryError(CpcError):
    """Base class for pointwise geometry errors."""


class NotSPDError(GeometryError):
    """The metric fails the leading-principal-minor test at a point."""

    def __init__(self, point: Sequence[float], minor: int, value: float):
        self.point = tuple(float(c) for c in point)
        self.minor = minor
        self.value = value
        super().__init__(
            f"metric not positive definite at {self.point}: leading minor {minor} = {value:.6g}"
        )


class DegeneratePlaneError(GeometryError):
    """Two vectors that do not span a 2-plane."""

    def __init__(self, gram_determinant: float):
        self.gram_determinant = gram_determinant
        super().__init__(f"vectors do not span a plane (Gram determinant {gram_determinant:.3g})")


class UnknownFieldError(GeometryError):
    """A named field that the manifold does not carry."""

    def __init__(self, kind: str, name: str):
        self.kind = kind
        self.name = name
        super().__init__(f"unknown {kind} field '{name}'")


class DegreeMismatchError(GeometryError):
    """A wedge product whose degree is not the one required."""


class DimensionMismatchError(GeometryError):
    """Structure type (p, q) or tensor input inconsistent with the chart dimension."""


# ------------------------------------------------------------------ structure

class StructureError(CpcError):
    """Base class for contact-pair structure errors."""


class NotDecomposableError(StructureError):
    """The characteristic foliations cannot be split at a point."""


class MissingParamsError(StructureError):
    """The quasi-conformal tensor was requested without (a, b)."""


class PrerequisiteFailed(StructureError):
    """A hypothesis of the Hermitian contact pair construction does not hold."""

    def __init__(self, identity: str, residual: Optional[float]):
        self.identity = identity
        self.residual = residual
        super().__init__(f"prerequisite '{identity}' failed with residual {residual}")


# ------------------------------------------------------------------ zoo / io

class ZooError(CpcError):
    """Base class for built-in manifold errors."""


class UnknownZooEntryError(ZooError):
    """Requested a built-in that does not exist."""

    def __init__(self, name: str, known: Sequence[str]):
        self.name = name
        super().__init__(f"unknown zoo entry '{name}' (known: {', '.join(known)})")


class SpecFileError(CpcError):
    """A manifold spec file that cannot be loaded."""

    def __init__(self, source: str, line: Optional[int], message: str):
        self.source = source
        self.line = line
        self.message = message
        where = f"{source}:{line}" if line is not None else source
        super().__init__(f"{where}: {message}")
