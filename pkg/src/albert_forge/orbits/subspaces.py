"""Pure-white subspaces, the 17-space of a white vector and the 10-space W10."""

from __future__ import annotations

import numpy as np

from .. import batch, linalg
from ..albert import DIM, AlbertVector, coord, quadratic_form_at
from ..gf import FieldSpec
from ..octonion import _grid
from .bfs import BudgetExceeded
from .lines import NotWhiteError

MAX_SPAN = 1 << 16

# octonion ordinals
E0, E1, EW, EWB, EM0, EM1, EMW, EMWB = range(8)


def _unit(i: int) -> np.ndarray:
    v = np.zeros(DIM, dtype=np.int64)
    v[i] = 1
    return v


def pure_white_subspaces(spec: FieldSpec | None = None) -> dict[str, np.ndarray]:
    """Representatives W1..W6 and W5' as row bases (entries 0/1 in any field)."""
    b = lambda i: _unit(coord("B", i))  # noqa: E731
    W1 = [_unit(0)]
    W2 = W1 + [b(EM1)]
    W3 = W2 + [b(EWB)]
    W4 = W3 + [b(EW)]
    W5 = W4 + [b(E0)]
    W5p = W4 + [b(EM0)]
    W6 = W5p + [_unit(coord("C", EM1))]
    return {name: np.array(rows) for name, rows in
            (("W1", W1), ("W2", W2), ("W3", W3), ("W4", W4), ("W5", W5), ("W5'", W5p), ("W6", W6))}


def span_vectors(F: FieldSpec, basis: np.ndarray) -> np.ndarray:
    """All q^d vectors of the span (the zero vector first)."""
    d = len(basis)
    if F.q**d > MAX_SPAN:
        raise BudgetExceeded(f"span of dimension {d} over F_{F.q} is too large to scan")
    if d == 0:
        return np.zeros((1, DIM), dtype=np.int64)
    return linalg.matmul(F, _grid(F.q, d), np.asarray(basis, dtype=np.int64))


def pure_white(F: FieldSpec, basis: np.ndarray) -> bool:
    V = span_vectors(F, basis)
    return bool(batch.white_mask(F, V).all())


def extensions(F: FieldSpec, basis: np.ndarray, candidates: np.ndarray) -> np.ndarray:
    """Candidates v outside the span for which span(basis, v) is still pure white.

    span(W, v) is pure white iff v + w is white for every w in W, because the
    other vectors are nonzero multiples of these or lie in W.
    """
    S = span_vectors(F, basis)
    r = linalg.rank(F, basis)
    keep = np.ones(len(candidates), dtype=bool)
    for w in S:
        idx = np.nonzero(keep)[0]
        if not len(idx):
            break
        keep[idx] = batch.white_mask(F, F.vadd(candidates[idx], w[None, :]))
    idx = np.nonzero(keep)[0]
    out = [i for i in idx if linalg.rank(F, np.vstack([basis, candidates[i][None, :]])) > r]
    return candidates[out]


def is_maximal(F: FieldSpec, basis: np.ndarray, whites: np.ndarray) -> bool:
    return len(extensions(F, basis, whites)) == 0


def _require_white(v: AlbertVector) -> None:
    if v.is_zero() or not batch.white_mask(v.spec, v.array()[None, :])[0]:
        raise NotWhiteError(f"{v!r} is not a white vector")


def seventeen_space(v: AlbertVector) -> np.ndarray:
    """Radical of the quadratic part of X -> det(v + X), as row basis.

    First the kernel K of the polar form.  In characteristic 2 the quadratic
    form restricted to K is x -> (sum t_j s_j)^2 with s_j = sqrt(Q(k_j)), so
    its zero set inside K is the kernel of one more linear condition.
    """
    _require_white(v)
    F = v.spec
    qf = quadratic_form_at(v)
    K = linalg.nullspace(F, qf.polar)
    if F.p == 2 and len(K):
        s = np.array([F.sqrt_char2(qf.value(k)) for k in K], dtype=np.int64)
        if s.any():
            T = linalg.nullspace(F, s[None, :])
            K = linalg.matmul(F, T, K)
    return linalg.row_space(F, K)


def w10_space(v: AlbertVector) -> np.ndarray:
    """The 10-space {(a,0,c|0,B,0)} (form ac - N(B)) adapted to a diagonal white v.

    v must be a nonzero multiple of one of the diagonal units; the space for
    the unit in slot a or c is {(a,0,c|0,B,0)}, and its cyclic images serve
    the other slots so that v always lies in the returned space.
    """
    _require_white(v)
    nz = [i for i, x in enumerate(v.v) if x]
    if len(nz) != 1 or nz[0] > 2:
        raise ValueError("w10_space is defined for multiples of a diagonal unit")
    base = [_unit(0), _unit(2)] + [_unit(coord("B", i)) for i in range(8)]
    V = np.array(base)
    if nz[0] == 1:
        V = _rotate_coords(V)  # (a,0,c|0,B,0) -> (c,a,0|0,0,B)
    return V


def _rotate_coords(V: np.ndarray) -> np.ndarray:
    a, b, c, A, B, C = batch.split(V)
    return batch.join(c, a, b, C, A, B)


def w10_form(F: FieldSpec, V: np.ndarray) -> np.ndarray:
    """ac - N(B) evaluated on rows of the unrotated W10."""
    return F.vsub(F.vmul(V[:, 0], V[:, 2]), batch.onorm(F, V[:, batch.B_SLICE]))
