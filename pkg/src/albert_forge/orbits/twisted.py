"""Point types for the twisted group over F_{q^2}."""

from __future__ import annotations

import enum

import numpy as np

from .. import linalg
from ..albert import AlbertVector
from ..gf import FieldError
from ..group import gram_matrix
from .subspaces import seventeen_space


class TwoE6PointType(str, enum.Enum):
    EMERALD = "Emerald"
    ISOTROPIC_BRILLIANT = "IsotropicBrilliant"
    NON_ISOTROPIC = "NonIsotropic"


def h1_gram_on(F, S: np.ndarray, variant: str = "H1") -> np.ndarray:
    """G[i, j] = s(S_i, S_j) for the rows of S."""
    G = gram_matrix(F, variant)
    return linalg.matmul(F, linalg.matmul(F, S, G), F.conj_table[S].T)


def h1_radical(v: AlbertVector, variant: str = "H1") -> tuple[np.ndarray, np.ndarray]:
    """(17-space basis, basis of the radical of the form restricted to it)."""
    F = v.spec
    if not F.is_quadratic:
        raise FieldError(f"F_{F.q} is not a quadratic extension")
    S = seventeen_space(v)
    G = h1_gram_on(F, S, variant)
    # t is in the radical iff sum_i t_i s(S_i, S_j) = 0 for all j
    T = linalg.nullspace(F, G.T)
    R = linalg.matmul(F, T, S) if len(T) else np.zeros((0, S.shape[1]), dtype=np.int64)
    return S, R


def twoE6_point_type(v: AlbertVector, variant: str = "H1") -> TwoE6PointType:
    F = v.spec
    S, R = h1_radical(v, variant)
    x = v.array()
    in_radical = linalg.rank(F, np.vstack([R, x[None, :]])) == len(R) if len(R) else False
    if in_radical:
        return TwoE6PointType.EMERALD
    G = gram_matrix(F, variant)
    h = int(linalg.matmul(F, linalg.matmul(F, x, G), F.conj_table[x]))
    return TwoE6PointType.ISOTROPIC_BRILLIANT if h == 0 else TwoE6PointType.NON_ISOTROPIC
