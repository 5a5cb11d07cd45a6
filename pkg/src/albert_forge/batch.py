"""Vectorized octonion and Albert-space kernels on int64 arrays.

Octonion arrays have a trailing axis of length 8 (ordinal order), Albert
arrays a trailing axis of length 27 in canonical order
``(a, b, c, A[0..7], B[0..7], C[0..7])``.  All entries are packed field
values; every function takes the FieldSpec first.
"""

from __future__ import annotations

import numpy as np

from .gf import FieldSpec
from .octonion import MZERO, POSITIVE, TERMS_BY_OUTPUT, ZERO

A_SLICE = slice(3, 11)
B_SLICE = slice(11, 19)
C_SLICE = slice(19, 27)


def omul(F: FieldSpec, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    shape = np.broadcast_shapes(X.shape, Y.shape)
    out = np.empty(shape, dtype=np.int64)
    if F.k == 1:
        p = F.p
        for k, terms in enumerate(TERMS_BY_OUTPUT):
            acc = np.zeros(shape[:-1], dtype=np.int64)
            for i, j, s in terms:
                if s > 0:
                    acc += X[..., i] * Y[..., j]
                else:
                    acc -= X[..., i] * Y[..., j]
            out[..., k] = acc % p
        return out
    add, sub, mul = F.add_table, F.sub_table, F.mul_table
    for k, terms in enumerate(TERMS_BY_OUTPUT):
        acc = np.zeros(shape[:-1], dtype=np.int64)
        for i, j, s in terms:
            t = mul[X[..., i], Y[..., j]]
            acc = add[acc, t] if s > 0 else sub[acc, t]
        out[..., k] = acc
    return out


def oconj(F: FieldSpec, X: np.ndarray) -> np.ndarray:
    out = F.vneg(X)
    out[..., ZERO] = X[..., MZERO]
    out[..., MZERO] = X[..., ZERO]
    return out


def onorm(F: FieldSpec, X: np.ndarray) -> np.ndarray:
    acc = np.zeros(X.shape[:-1], dtype=np.int64)
    for i in POSITIVE:
        acc = F.vadd(acc, F.vmul(X[..., i], X[..., i | 4]))
    return acc


def otrace(F: FieldSpec, X: np.ndarray) -> np.ndarray:
    return F.vadd(X[..., ZERO], X[..., MZERO])


def oscalar(F: FieldSpec, lam: np.ndarray) -> np.ndarray:
    lam = np.asarray(lam, dtype=np.int64)
    out = np.zeros(lam.shape + (8,), dtype=np.int64)
    out[..., ZERO] = lam
    out[..., MZERO] = lam
    return out


def oscale(F: FieldSpec, lam, X: np.ndarray) -> np.ndarray:
    lam = np.asarray(lam, dtype=np.int64)
    return F.vmul(lam[..., None], X)


def oprime(F: FieldSpec, X: np.ndarray) -> np.ndarray:
    return F.conj_table[X]


def random_elements(F: FieldSpec, rng: np.random.Generator, shape) -> np.ndarray:
    return rng.integers(0, F.q, size=shape, dtype=np.int64)


# -- Albert space ----------------------------------------------------------
def split(V: np.ndarray):
    return V[..., 0], V[..., 1], V[..., 2], V[..., A_SLICE], V[..., B_SLICE], V[..., C_SLICE]


def join(a, b, c, A, B, C) -> np.ndarray:
    shape = np.broadcast_shapes(np.shape(a), np.shape(b), np.shape(c), A.shape[:-1], B.shape[:-1], C.shape[:-1])
    out = np.empty(shape + (27,), dtype=np.int64)
    out[..., 0], out[..., 1], out[..., 2] = a, b, c
    out[..., A_SLICE], out[..., B_SLICE], out[..., C_SLICE] = A, B, C
    return out


def trace3(F: FieldSpec, X, Y, Z) -> np.ndarray:
    """Tr((XY)Z)."""
    return otrace(F, omul(F, omul(F, X, Y), Z))


def det(F: FieldSpec, V: np.ndarray) -> np.ndarray:
    a, b, c, A, B, C = split(V)
    abc = F.vmul(F.vmul(a, b), c)
    t = F.vsub(abc, F.vmul(a, onorm(F, A)))
    t = F.vsub(t, F.vmul(b, onorm(F, B)))
    t = F.vsub(t, F.vmul(c, onorm(F, C)))
    return F.vadd(t, trace3(F, A, B, C))


def alb_trace(F: FieldSpec, V: np.ndarray) -> np.ndarray:
    return F.vadd(F.vadd(V[..., 0], V[..., 1]), V[..., 2])


def alb_Q(F: FieldSpec, V: np.ndarray) -> np.ndarray:
    a, b, c, A, B, C = split(V)
    t = F.vadd(F.vadd(onorm(F, A), onorm(F, B)), onorm(F, C))
    t = F.vsub(t, F.vmul(a, b))
    t = F.vsub(t, F.vmul(a, c))
    return F.vsub(t, F.vmul(b, c))


def white_mask(F: FieldSpec, V: np.ndarray) -> np.ndarray:
    """The six white equations, evaluated rowwise (the zero vector passes)."""
    a, b, c, A, B, C = split(V)
    ok = F.vmul(b, c) == onorm(F, A)
    ok &= F.vmul(a, c) == onorm(F, B)
    ok &= F.vmul(a, b) == onorm(F, C)
    ok &= (omul(F, B, C) == oscale(F, a, oconj(F, A))).all(axis=-1)
    ok &= (omul(F, C, A) == oscale(F, b, oconj(F, B))).all(axis=-1)
    ok &= (omul(F, A, B) == oscale(F, c, oconj(F, C))).all(axis=-1)
    return ok


WHITE, GREY, BLACK = 0, 1, 2


def colors(F: FieldSpec, V: np.ndarray) -> np.ndarray:
    """0 white, 1 grey, 2 black (rows must be nonzero)."""
    out = np.full(V.shape[:-1], GREY, dtype=np.int8)
    out[det(F, V) != 0] = BLACK
    out[white_mask(F, V)] = WHITE
    return out


def hermitian_matrix(F: FieldSpec, V: np.ndarray):
    """Rows as 3x3 octonion matrices [[a, C, Bb], [Cb, b, A], [B, Ab, c]]."""
    a, b, c, A, B, C = split(V)
    return [
        [oscalar(F, a), C, oconj(F, B)],
        [oconj(F, C), oscalar(F, b), A],
        [B, oconj(F, A), oscalar(F, c)],
    ]


def matmul3(F: FieldSpec, X, Y):
    out = [[None] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            acc = omul(F, X[i][0], Y[0][j])
            for k in (1, 2):
                acc = F.vadd(acc, omul(F, X[i][k], Y[k][j]))
            out[i][j] = acc
    return out


def _require_odd(F: FieldSpec) -> None:
    if F.p == 2:
        raise ValueError("the Jordan product needs odd characteristic")


def jordan_matrix(F: FieldSpec, X: np.ndarray, Y: np.ndarray):
    """(XY + YX)/2 as a 3x3 nested list of octonion arrays."""
    _require_odd(F)
    MX, MY = hermitian_matrix(F, X), hermitian_matrix(F, Y)
    P, R = matmul3(F, MX, MY), matmul3(F, MY, MX)
    half = F.inv(F.from_int(2))
    return [[F.vmul(half, F.vadd(P[i][j], R[i][j])) for j in range(3)] for i in range(3)]


def is_hermitian(F: FieldSpec, S) -> np.ndarray:
    """Rowwise test that a nested 3x3 octonion matrix equals its conjugate transpose."""
    ok = np.ones(S[0][0].shape[:-1], dtype=bool)
    for i in range(3):
        ok &= (S[i][i] == oconj(F, S[i][i])).all(axis=-1)
        for j in range(i + 1, 3):
            ok &= (S[j][i] == oconj(F, S[i][j])).all(axis=-1)
    return ok


def read_hermitian(S) -> np.ndarray:
    """Canonical coordinates of a Hermitian matrix [[a, C, .], [., b, A], [B, ., c]]."""
    return join(S[0][0][..., ZERO], S[1][1][..., ZERO], S[2][2][..., ZERO], S[1][2], S[2][0], S[0][1])


def jordan(F: FieldSpec, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    return read_hermitian(jordan_matrix(F, X, Y))


def cayley_hamilton(F: FieldSpec, X: np.ndarray) -> np.ndarray:
    """X^3 - Tr(X) X^2 - Q(X) X - det(X) I for every row (Jordan powers)."""
    X2 = jordan(F, X, X)
    X3 = jordan(F, X2, X)
    tr = alb_trace(F, X)[..., None]
    out = F.vsub(X3, F.vmul(tr, X2))
    out = F.vsub(out, F.vmul(alb_Q(F, X)[..., None], X))
    d = det(F, X)
    for i in range(3):
        out[..., i] = F.vsub(out[..., i], d)
    return out


def pack_octonions(F: FieldSpec, X: np.ndarray) -> np.ndarray:
    """Base-q integer index of each octonion (coordinate 0 least significant)."""
    w = F.q ** np.arange(8, dtype=np.int64)
    return (X * w).sum(axis=-1)
