"""
Charted manifolds, contact pair structures and the parameter records passed
between the geometry, validation and audit layers.
"""

from dataclasses import dataclass, field, replace
from typing import Dict, Mapping, Optional, Tuple, Union

import numpy as np

from Expression_Engine.expr_ast import Expr, to_text
from .errors import DimensionMismatchError, UnknownFieldError

VectorExprs = Tuple[Expr, ...]
MatrixExprs = Tuple[Tuple[Expr, ...], ...]


@dataclass(frozen=True)
class ChartedManifold:
    """
    A Riemannian manifold given on a single coordinate chart.

    Endomorphism components are stored row-major as endo[i][j] = F^i_j, so the
    image of a vector X has components sum_j F^i_j X^j.

    Attributes:
        name (str): Identifier used in reports
        dim (int): Chart dimension n
        coord_names (Tuple[str, ...]): Display names of the coordinates
        metric (MatrixExprs): g_ij component expressions, symmetric
        sample_box (Tuple[Tuple[float, float], ...]): Closed interval per coordinate for sampling
        vectors (Mapping[str, VectorExprs]): Named vector fields, components Z^i
        forms (Mapping[str, VectorExprs]): Named 1-forms, components alpha_i
        endos (Mapping[str, MatrixExprs]): Named (1,1)-tensor fields
    """
    name: str
    dim: int
    coord_names: Tuple[str, ...]
    metric: MatrixExprs
    sample_box: Tuple[Tuple[float, float], ...]
    vectors: Mapping[str, VectorExprs] = field(default_factory=dict)
    forms: Mapping[str, VectorExprs] = field(default_factory=dict)
    endos: Mapping[str, MatrixExprs] = field(default_factory=dict)

    def __post_init__(self):
        n = self.dim
        if n < 1:
            raise DimensionMismatchError(f"dimension must be positive, got {n}")
        if len(self.coord_names) != n or len(self.sample_box) != n:
            raise DimensionMismatchError(f"{self.name}: coordinates and box must have {n} entries")
        if len(self.metric) != n or any(len(row) != n for row in self.metric):
            raise DimensionMismatchError(f"{self.name}: metric must be {n}x{n}")
        for i in range(n):
            for j in range(i + 1, n):
                if to_text(self.metric[i][j]) != to_text(self.metric[j][i]):
                    raise DimensionMismatchError(f"{self.name}: metric entries ({i},{j}) and ({j},{i}) differ")
        for low, high in self.sample_box:
            if not low <= high:
                raise DimensionMismatchError(f"{self.name}: empty sample interval [{low}, {high}]")
        for kind, table in (("vector", self.vectors), ("form", self.forms)):
            for name, comps in table.items():
                if len(comps) != n:
                    raise DimensionMismatchError(f"{kind} '{name}' needs {n} components")
        for name, rows in self.endos.items():
            if len(rows) != n or any(len(row) != n for row in rows):
                raise DimensionMismatchError(f"endomorphism '{name}' must be {n}x{n}")

    def vector(self, name: str) -> VectorExprs:
        if name not in self.vectors:
            raise UnknownFieldError("vector", name)
        return self.vectors[name]

    def form(self, name: str) -> VectorExprs:
        if name not in self.forms:
            raise UnknownFieldError("form", name)
        return self.forms[name]

    def endo(self, name: str) -> MatrixExprs:
        if name not in self.endos:
            raise UnknownFieldError("endo", name)
        return self.endos[name]

    def with_fields(
        self,
        vectors: Optional[Mapping[str, VectorExprs]] = None,
        forms: Optional[Mapping[str, VectorExprs]] = None,
        endos: Optional[Mapping[str, MatrixExprs]] = None,
        metric: Optional[MatrixExprs] = None,
        name: Optional[str] = None,
    ) -> "ChartedManifold":
        """Copy with extra (or replaced) named fields."""
        return replace(
            self,
            name=name or self.name,
            metric=metric or self.metric,
            vectors={**self.vectors, **(vectors or {})},
            forms={**self.forms, **(forms or {})},
            endos={**self.endos, **(endos or {})},
        )

    def contains(self, point) -> bool:
        return all(low <= c <= high for c, (low, high) in zip(point, self.sample_box))


@dataclass(frozen=True)
class TensorValue:
    """
    A tensor evaluated at one point.

    Attributes:
        valence (Tuple[int, int]): (contravariant count r, covariant count s)
        components (np.ndarray): Array of shape (n,) * (r + s), contravariant slots first
        base_point (np.ndarray): Chart point of evaluation
    """
    valence: Tuple[int, int]
    components: np.ndarray
    base_point: np.ndarray

    def __post_init__(self):
        n = len(self.base_point)
        expected = (n,) * (self.valence[0] + self.valence[1])
        if self.components.shape != expected:
            raise DimensionMismatchError(
                f"tensor of valence {self.valence} needs shape {expected}, got {self.components.shape}"
            )


@dataclass(frozen=True)
class CurvatureBundle:
    """
    Point-evaluated Levi-Civita curvature data.

    Index layout: gamma[k, i, j] = Gamma^k_ij, riemann_ud[l, i, j, k] is the
    component along d_l of R(d_i, d_j) d_k, riemann_dddd[i, j, k, l] = g(R(d_i, d_j) d_k, d_l).

    Attributes:
        point (np.ndarray): Chart point
        g (np.ndarray): Metric
        g_inv (np.ndarray): Inverse metric
        gamma (np.ndarray): Christoffel symbols of the second kind
        riemann_ud (np.ndarray): (1,3) curvature
        riemann_dddd (np.ndarray): (0,4) curvature
        ricci (np.ndarray): Ricci tensor
        q_operator (np.ndarray): Ricci operator Q^i_j
        scal (float): Scalar curvature
    """
    point: np.ndarray
    g: np.ndarray
    g_inv: np.ndarray
    gamma: np.ndarray
    riemann_ud: np.ndarray
    riemann_dddd: np.ndarray
    ricci: np.ndarray
    q_operator: np.ndarray
    scal: float

    @property
    def dim(self) -> int:
        return len(self.point)


@dataclass(frozen=True)
class ContactPairStructure:
    """
    A contact pair (alpha1, alpha2) with Reeb fields, endomorphism and metric.

    Attributes:
        base (ChartedManifold): Chart carrying every named field
        alpha1 (str): Name of the first 1-form
        alpha2 (str): Name of the second 1-form
        z1 (str): Name of the first Reeb field
        z2 (str): Name of the second Reeb field
        phi (str): Name of the (1,1) field
        p (int): Half-rank of d alpha1
        q (int): Half-rank of d alpha2
    """
    base: ChartedManifold
    alpha1: str
    alpha2: str
    z1: str
    z2: str
    phi: str
    p: int
    q: int

    def __post_init__(self):
        if self.p < 0 or self.q < 0:
            raise DimensionMismatchError(f"type ({self.p}, {self.q}) must be non-negative")
        if 2 * self.p + 2 * self.q + 2 != self.base.dim:
            raise DimensionMismatchError(
                f"type ({self.p}, {self.q}) needs dimension {2 * self.p + 2 * self.q + 2}, "
                f"chart has {self.base.dim}"
            )
        self.base.form(self.alpha1)
        self.base.form(self.alpha2)
        self.base.vector(self.z1)
        self.base.vector(self.z2)
        self.base.endo(self.phi)

    @property
    def horizontal_rank(self) -> int:
        return 2 * self.p + 2 * self.q

    def with_base(self, base: ChartedManifold) -> "ContactPairStructure":
        return replace(self, base=base)


@dataclass(frozen=True)
class Decomposition:
    """
    Splitting X = x1h + x2h + v1 Z1 + v2 Z2 along the characteristic foliations.

    Attributes:
        x1h (np.ndarray): Part in the leaves of ker d alpha1 (dimension 2q)
        x2h (np.ndarray): Part in the leaves of ker d alpha2 (dimension 2p)
        v1 (float): alpha1(X)
        v2 (float): alpha2(X)
    """
    x1h: np.ndarray
    x2h: np.ndarray
    v1: float
    v2: float


@dataclass(frozen=True)
class QuasiConformalParams:
    """Constants (a, b) of the quasi-conformal tensor."""
    a: float
    b: float

    @classmethod
    def default_for(cls, m: float) -> "QuasiConformalParams":
        """(1, -1/m): the choice that reproduces the conformal tensor."""
        return cls(1.0, -1.0 / m)


@dataclass(frozen=True)
class HermitianPairInput:
    """
    Two almost contact structures on a Hermitian manifold.

    Attributes:
        base (ChartedManifold): Chart with metric g
        J (str): Almost complex structure
        phi1 (str): First almost contact endomorphism
        phi2 (str): Second almost contact endomorphism
        eta1 (str): 1-form dual to xi1
        eta2 (str): 1-form dual to xi2
        xi1 (str): First characteristic field
        xi2 (str): Second characteristic field, expected to equal J xi1
    """
    base: ChartedManifold
    J: str
    phi1: str
    phi2: str
    eta1: str
    eta2: str
    xi1: str
    xi2: str


@dataclass(frozen=True)
class ExpectedValue:
    """
    A documented outcome a zoo entry must reproduce.

    Attributes:
        name (str): What is measured
        value (Union[float, str]): Expected number or verdict
        provenance (str): PAPER, TRIVIAL or DERIVED
        anchor (str): Where the number comes from
    """
    name: str
    value: Union[float, str]
    provenance: str
    anchor: str = ""


@dataclass(frozen=True)
class ZooEntry:
    """
    A built-in manifold, optionally carrying a contact pair structure.

    Attributes:
        name (str): Registry key
        manifold (ChartedManifold): Chart and named fields
        structure (Optional[ContactPairStructure]): Contact pair, None for plain manifolds
        expected (Tuple[ExpectedValue, ...]): Documented outcomes with provenance
        summary (str): One-line description
    """
    name: str
    manifold: ChartedManifold
    structure: Optional[ContactPairStructure] = None
    expected: Tuple[ExpectedValue, ...] = ()
    summary: str = ""

    @property
    def type_label(self) -> str:
        if self.structure is None:
            return "plain"
        return f"({self.structure.p},{self.structure.q})"

    def expected_map(self) -> Dict[str, ExpectedValue]:
        return {item.name: item for item in self.expected}


Target = Union[ChartedManifold, ContactPairStructure]


def manifold_of(target: Target) -> ChartedManifold:
    return target.base if isinstance(target, ContactPairStructure) else target


def horizontal_dimension(target: Target) -> int:
    """2p + 2q, or n - 2 for a plain manifold."""
    if isinstance(target, ContactPairStructure):
        return target.horizontal_rank
    return target.dim - 2
