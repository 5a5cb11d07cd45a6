"""Gaussian elimination over a FieldSpec on int64 arrays of packed values."""

from __future__ import annotations

import numpy as np

from .gf import FieldSpec


class SingularMatrixError(ArithmeticError):
    pass


def rref(F: FieldSpec, M) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and the pivot columns."""
    A = np.array(M, dtype=np.int64, copy=True)
    if A.ndim != 2:
        raise ValueError("rref needs a 2-d array")
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if not len(nz):
            continue
        pr = r + int(nz[0])
        if pr != r:
            A[[r, pr]] = A[[pr, r]]
        A[r] = F.vmul(np.int64(F.inv(int(A[r, c]))), A[r])
        col = A[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if len(hit):
            A[hit] = F.vsub(A[hit], F.vmul(col[hit, None], A[r][None, :]))
        pivots.append(c)
        r += 1
    return A, pivots


def rank(F: FieldSpec, M) -> int:
    return len(rref(F, M)[1])


def nullspace(F: FieldSpec, M) -> np.ndarray:
    """Basis of {x : M x = 0} as the rows of the returned array."""
    A, pivots = rref(F, M)
    n = A.shape[1]
    free = [c for c in range(n) if c not in set(pivots)]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for r, pc in enumerate(pivots):
            basis[i, pc] = F.neg(int(A[r, f]))
    return basis


def row_space(F: FieldSpec, M) -> np.ndarray:
    """Echelon basis of the span of the rows."""
    A, pivots = rref(F, M)
    return A[: len(pivots)]


def inverse(F: FieldSpec, M) -> np.ndarray:
    A = np.asarray(M, dtype=np.int64)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("inverse needs a square matrix")
    aug = np.concatenate([A, np.eye(n, dtype=np.int64)], axis=1)
    R, pivots = rref(F, aug)
    if pivots[:n] != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    return R[:, n:].copy()


def solve(F: FieldSpec, M, b) -> np.ndarray | None:
    """One solution of M x = b, or None if the system is inconsistent."""
    A = np.asarray(M, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64).reshape(-1, 1)
    R, pivots = rref(F, np.concatenate([A, b], axis=1))
    n = A.shape[1]
    if n in pivots:
        return None
    x = np.zeros(n, dtype=np.int64)
    for r, pc in enumerate(pivots):
        x[pc] = R[r, n]
    return x


def matmul(F: FieldSpec, A, B) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if F.k == 1:
        # entries < p <= 1021 so a 27-term dot product stays far below 2**63
        return (A @ B) % F.p
    out = np.zeros(A.shape[:-1] + B.shape[1:], dtype=np.int64)
    for j in range(A.shape[-1]):
        left = A[..., j, None] if B.ndim > 1 else A[..., j]
        out = F.vadd(out, F.vmul(left, B[j]))
    return out
