"""
Point evaluation of every field a contact pair structure names.
"""

from dataclasses import dataclass

import numpy as np

from Data_Classes.classes import ContactPairStructure
from Geometry_Core.fields import endo_at, form_at, vector_at
from Geometry_Core.forms import exterior_derivative_matrix
from Geometry_Core.metric import g_orthonormalize, metric_at, orthonormal_frame


@dataclass(frozen=True)
class StructureValues:
    """
    Contact pair data at one point.

    Attributes:
        point (np.ndarray): Chart point
        g (np.ndarray): Metric
        g_inv (np.ndarray): Inverse metric
        frame (np.ndarray): Orthonormal frame, columns
        coframe (np.ndarray): Inverse of frame
        a1 (np.ndarray): alpha1 components
        a2 (np.ndarray): alpha2 components
        W1 (np.ndarray): Coefficient matrix of d alpha1
        W2 (np.ndarray): Coefficient matrix of d alpha2
        z1 (np.ndarray): Z1 components
        z2 (np.ndarray): Z2 components
        phi (np.ndarray): phi^i_j
    """
    point: np.ndarray
    g: np.ndarray
    g_inv: np.ndarray
    frame: np.ndarray
    coframe: np.ndarray
    a1: np.ndarray
    a2: np.ndarray
    W1: np.ndarray
    W2: np.ndarray
    z1: np.ndarray
    z2: np.ndarray
    phi: np.ndarray

    @property
    def z(self) -> np.ndarray:
        return self.z1 + self.z2

    def horizontal(self, v: np.ndarray) -> np.ndarray:
        """Component of v in ker alpha1 ∩ ker alpha2 along the Reeb fields."""
        return v - (self.a1 @ v) * self.z1 - (self.a2 @ v) * self.z2

    def d_alpha(self, which: int, X: np.ndarray, Y: np.ndarray) -> float:
        W = self.W1 if which == 1 else self.W2
        return 0.5 * float(X @ W @ Y)

    def alpha(self, which: int) -> np.ndarray:
        return self.a1 if which == 1 else self.a2

    def J(self) -> np.ndarray:
        """phi - alpha2 ⊗ Z1 + alpha1 ⊗ Z2."""
        return self.phi - np.outer(self.z1, self.a2) + np.outer(self.z2, self.a1)

    def T(self) -> np.ndarray:
        """phi + alpha2 ⊗ Z1 - alpha1 ⊗ Z2."""
        return self.phi + np.outer(self.z1, self.a2) - np.outer(self.z2, self.a1)

    def horizontal_frame(self) -> np.ndarray:
        """g-orthonormal basis of the complement of Z1, Z2; this is ker alpha1 ∩ ker alpha2 for an associated metric."""
        seed = np.column_stack([self.z1, self.z2, np.eye(len(self.g))])
        return g_orthonormalize(seed, self.g)[:, 2:]


def structure_at(S: ContactPairStructure, x) -> StructureValues:
    """Evaluate g, forms, their differentials, Reeb fields and phi at x."""
    M = S.base
    point = np.asarray(x, dtype=float)
    g, g_inv = metric_at(M, point)
    frame, coframe = orthonormal_frame(g)
    return StructureValues(
        point=point,
        g=g,
        g_inv=g_inv,
        frame=frame,
        coframe=coframe,
        a1=form_at(M, S.alpha1, point),
        a2=form_at(M, S.alpha2, point),
        W1=exterior_derivative_matrix(M, S.alpha1, point),
        W2=exterior_derivative_matrix(M, S.alpha2, point),
        z1=vector_at(M, S.z1, point),
        z2=vector_at(M, S.z2, point),
        phi=endo_at(M, S.phi, point),
    )
