"""Lines through two white points."""

from __future__ import annotations

import enum

import numpy as np

from .. import batch
from ..albert import AlbertVector
from ..gf import FieldSpec
from .points import ProjPoint, canonicalize, point_keys


class LineType(str, enum.Enum):
    ALL_WHITE = "AllWhite"
    TWO_WHITE = "TwoWhite"


class NotWhiteError(ValueError):
    pass


def _vec(p) -> AlbertVector:
    return p.vector() if isinstance(p, ProjPoint) else p


def line_type(W, X) -> LineType:
    """AllWhite iff every point of the line spanned by W and X is white."""
    w, x = _vec(W), _vec(X)
    F = w.spec
    for v in (w, x):
        if v.is_zero() or not batch.white_mask(F, v.array()[None, :])[0]:
            raise NotWhiteError(f"{v!r} is not a white vector")
    pts = canonicalize(F, np.stack([w.array(), x.array()]))
    if point_keys(F, pts[:1])[0] == point_keys(F, pts[1:])[0]:
        raise ValueError("the two points coincide")
    lam = np.arange(1, F.q, dtype=np.int64)
    mids = F.vadd(w.array()[None, :], F.vmul(lam[:, None], x.array()[None, :]))
    return LineType.ALL_WHITE if batch.white_mask(F, mids).all() else LineType.TWO_WHITE


def partner_types(F: FieldSpec, w: np.ndarray, whites: np.ndarray) -> dict[str, int]:
    """Split the white points other than <w> by the type of the line they span with w.

    ``whites`` holds canonical white vectors, one per point.
    """
    w = canonicalize(F, w[None, :])[0]
    others = whites[point_keys(F, whites) != point_keys(F, w[None, :])[0]]
    all_white = np.ones(len(others), dtype=bool)
    for lam in range(1, F.q):
        mids = F.vadd(w[None, :], F.vmul(np.int64(lam), others))
        all_white &= batch.white_mask(F, mids)
    return {"self": 1, "AllWhite": int(all_white.sum()), "TwoWhite": int((~all_white).sum())}
