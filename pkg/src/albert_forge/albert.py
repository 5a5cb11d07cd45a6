"""The 27-dimensional space of Hermitian 3x3 split-octonion matrices.

A vector ``(a, b, c | A, B, C)`` stands for the matrix

    [[a, C, Bb], [Cb, b, A], [B, Ab, c]]

(``Xb`` is the octonion conjugate) and is stored as 27 packed field values in
the canonical order a, b, c, A[0..7], B[0..7], C[0..7].
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import batch
from .gf import FieldElement, FieldError, FieldSpec, field_make
from .octonion import INDEX_NAMES, MUL_TERMS, MZERO, POSITIVE, ZERO, Octonion, coerce_scalar
from .poly import CubicPoly27

DIM = 27
A_OFF, B_OFF, C_OFF = 3, 11, 19
COORD_NAMES = ("a", "b", "c") + tuple(
    f"{blk}{INDEX_NAMES[i]}" for blk in "ABC" for i in range(8)
)


def coord(block: str, i: int) -> int:
    """Canonical coordinate index of an octonion entry, e.g. ``coord('B', 5)``."""
    return {"A": A_OFF, "B": B_OFF, "C": C_OFF}[block] + i


class Color(str, enum.Enum):
    WHITE = "White"
    GREY = "Grey"
    BLACK = "Black"


_COLOR_CODES = {batch.WHITE: Color.WHITE, batch.GREY: Color.GREY, batch.BLACK: Color.BLACK}


def _scalar(spec: FieldSpec, v) -> int:
    if isinstance(v, FieldElement):
        if v.spec != spec:
            raise FieldError("scalar from a different field")
        return v.value
    return coerce_scalar(spec, v)


def _octonion(spec: FieldSpec, v) -> tuple[int, ...]:
    if v is None or (isinstance(v, int) and v == 0):
        return (0,) * 8
    if isinstance(v, Octonion):
        if v.spec != spec:
            raise FieldError("octonion from a different field")
        return v.c
    vals = tuple(_scalar(spec, x) for x in v)
    if len(vals) != 8:
        raise ValueError("an octonion block needs 8 coefficients")
    return vals


class AlbertVector:
    __slots__ = ("spec", "v")

    def __init__(self, spec: FieldSpec, coords: Sequence[int]):
        v = tuple(int(x) for x in coords)
        if len(v) != DIM:
            raise ValueError("an Albert vector has 27 coordinates")
        if any(not 0 <= x < spec.q for x in v):
            raise FieldError(f"coordinate outside F_{spec.q}")
        self.spec = spec
        self.v = v

    @classmethod
    def make(cls, spec: FieldSpec, a=0, b=0, c=0, A=None, B=None, C=None) -> "AlbertVector":
        return cls(
            spec,
            (_scalar(spec, a), _scalar(spec, b), _scalar(spec, c))
            + _octonion(spec, A)
            + _octonion(spec, B)
            + _octonion(spec, C),
        )

    @classmethod
    def zero(cls, spec: FieldSpec) -> "AlbertVector":
        return cls(spec, (0,) * DIM)

    @classmethod
    def identity(cls, spec: FieldSpec) -> "AlbertVector":
        return cls.make(spec, 1, 1, 1)

    @classmethod
    def unit(cls, spec: FieldSpec, i: int, lam: int = 1) -> "AlbertVector":
        v = [0] * DIM
        v[i] = lam
        return cls(spec, v)

    # -- components -----------------------------------------------------
    @property
    def a(self) -> FieldElement:
        return FieldElement(self.spec, self.v[0])

    @property
    def b(self) -> FieldElement:
        return FieldElement(self.spec, self.v[1])

    @property
    def c(self) -> FieldElement:
        return FieldElement(self.spec, self.v[2])

    @property
    def A(self) -> Octonion:
        return Octonion(self.spec, self.v[A_OFF:B_OFF])

    @property
    def B(self) -> Octonion:
        return Octonion(self.spec, self.v[B_OFF:C_OFF])

    @property
    def C(self) -> Octonion:
        return Octonion(self.spec, self.v[C_OFF:])

    def array(self) -> np.ndarray:
        return np.array(self.v, dtype=np.int64)

    @classmethod
    def from_array(cls, spec: FieldSpec, arr) -> "AlbertVector":
        return cls(spec, [int(x) for x in arr])

    # -- linear structure -------------------------------------------------
    def _check(self, y: "AlbertVector") -> None:
        if y.spec != self.spec:
            raise FieldError("Albert vectors over different fields")

    def __add__(self, y: "AlbertVector") -> "AlbertVector":
        self._check(y)
        add = self.spec._add
        return AlbertVector(self.spec, [add[s][t] for s, t in zip(self.v, y.v)])

    def __sub__(self, y: "AlbertVector") -> "AlbertVector":
        self._check(y)
        sub = self.spec._sub
        return AlbertVector(self.spec, [sub[s][t] for s, t in zip(self.v, y.v)])

    def __neg__(self) -> "AlbertVector":
        neg = self.spec._neg
        return AlbertVector(self.spec, [neg[s] for s in self.v])

    def scale(self, lam: int) -> "AlbertVector":
        mul = self.spec._mul
        return AlbertVector(self.spec, [mul[lam][s] for s in self.v])

    def is_zero(self) -> bool:
        return not any(self.v)

    def __eq__(self, y) -> bool:
        return isinstance(y, AlbertVector) and y.spec == self.spec and y.v == self.v

    def __hash__(self) -> int:
        return hash((self.spec.q, self.v))

    def __repr__(self) -> str:
        def blk(o: Sequence[int]) -> str:
            return repr(Octonion(self.spec, o))[4:-1]

        return (
            f"({self.v[0]},{self.v[1]},{self.v[2]} | "
            f"{blk(self.v[A_OFF:B_OFF])}, {blk(self.v[B_OFF:C_OFF])}, {blk(self.v[C_OFF:])})"
        )

    # -- serialization ----------------------------------------------------
    def to_json(self) -> dict:
        F = self.spec
        out: dict = {"p": F.p, "k": F.k}
        for name, i in (("a", 0), ("b", 1), ("c", 2)):
            out[name] = F.coeffs(self.v[i])
        for name, off in (("A", A_OFF), ("B", B_OFF), ("C", C_OFF)):
            out[name] = [F.coeffs(x) for x in self.v[off : off + 8]]
        return out

    @classmethod
    def from_json(cls, data: dict, spec: FieldSpec | None = None) -> "AlbertVector":
        if spec is None:
            spec = field_make(int(data["p"]), int(data.get("k", 1)))
        return cls.make(
            spec,
            data.get("a", 0),
            data.get("b", 0),
            data.get("c", 0),
            data.get("A"),
            data.get("B"),
            data.get("C"),
        )

    def pack(self) -> bytes:
        return pack_coords(self.spec, self.v)

    @classmethod
    def unpack(cls, spec: FieldSpec, data: bytes) -> "AlbertVector":
        return cls(spec, unpack_coords(spec, data))


def coord_bits(spec: FieldSpec) -> int:
    return max(1, math.ceil(math.log2(spec.q)))


def pack_coords(spec: FieldSpec, coords: Sequence[int]) -> bytes:
    """27 coordinates of ceil(log2 q) bits each, coordinate 0 in the lowest bits."""
    bits = coord_bits(spec)
    acc = 0
    for i, x in enumerate(coords):
        acc |= int(x) << (i * bits)
    return acc.to_bytes((DIM * bits + 7) // 8, "little")


def unpack_coords(spec: FieldSpec, data: bytes) -> tuple[int, ...]:
    bits = coord_bits(spec)
    acc = int.from_bytes(data, "little")
    mask = (1 << bits) - 1
    return tuple((acc >> (i * bits)) & mask for i in range(DIM))


# -- forms --------------------------------------------------------------------
def alb_trace(X: AlbertVector) -> FieldElement:
    F = X.spec
    return FieldElement(F, F.add(F.add(X.v[0], X.v[1]), X.v[2]))


def alb_Q(X: AlbertVector) -> FieldElement:
    F = X.spec
    a, b, c = X.v[:3]
    t = F.add(F.add(X.A.norm(), X.B.norm()), X.C.norm())
    t = F.sub(t, F.add(F.add(F.mul(a, b), F.mul(a, c)), F.mul(b, c)))
    return FieldElement(F, t)


def alb_det(X: AlbertVector) -> FieldElement:
    F = X.spec
    a, b, c = X.v[:3]
    A, B, C = X.A, X.B, X.C
    t = F.mul(F.mul(a, b), c)
    t = F.sub(t, F.mul(a, A.norm()))
    t = F.sub(t, F.mul(b, B.norm()))
    t = F.sub(t, F.mul(c, C.norm()))
    return FieldElement(F, F.add(t, ((A * B) * C).trace()))


def trilinear_det(X: AlbertVector, Y: AlbertVector, Z: AlbertVector) -> FieldElement:
    """Full polarization of det by inclusion-exclusion over nonempty subsets.

    Needs no division, so it is defined in every characteristic; in
    characteristic >= 5 it equals 6 times the symmetric trilinear form whose
    diagonal is det.
    """
    F = X.spec
    acc = 0
    for r, sign in ((3, 1), (2, -1), (1, 1)):
        for combo in itertools.combinations((X, Y, Z), r):
            s = combo[0]
            for t in combo[1:]:
                s = s + t
            d = alb_det(s).value
            acc = F.add(acc, d) if sign > 0 else F.sub(acc, d)
    return FieldElement(F, acc)


@lru_cache(maxsize=None)
def det_poly(spec: FieldSpec) -> CubicPoly27:
    """det as a sparse cubic in the 27 canonical coordinates (45 terms)."""
    F = spec
    one, minus = 1, F.neg(1)
    terms: dict[tuple[int, ...], int] = {(0, 1, 2): one}
    for scalar, off in ((0, A_OFF), (1, B_OFF), (2, C_OFF)):
        for i in POSITIVE:
            terms[(scalar, off + i, off + (i | 4))] = minus
    for (i, j, l), t in basis_trace_triples().items():
        terms[(A_OFF + i, B_OFF + j, C_OFF + l)] = F.from_int(t)
    return CubicPoly27(F, terms)


def basis_trace_triples() -> dict[tuple[int, int, int], int]:
    """Tr((e_i e_j) e_k) over the integers, for every triple where it is nonzero."""
    out = {}
    for i, j, k, s in MUL_TERMS:
        for k2, l, m, s2 in MUL_TERMS:
            if k2 == k and m in (ZERO, MZERO):
                out[(i, j, l)] = out.get((i, j, l), 0) + s * s2
    return {key: v for key, v in out.items() if v}


def linear_form_at(W: AlbertVector) -> np.ndarray:
    """Coefficients of the degree-1 part of X -> det(W + X)."""
    shifted = det_poly(W.spec).shift(W.v)
    out = np.zeros(DIM, dtype=np.int64)
    for m, c in shifted.terms.items():
        if len(m) == 1:
            out[m[0]] = c
    return out


@dataclass(frozen=True)
class QuadraticForm:
    """Degree-2 part of det(W + X).

    ``polar[i, j]`` is the polar bilinear form on basis vectors (so the
    diagonal is 2 Q(e_i)), and ``diag[i]`` is Q(e_i) itself, which in
    characteristic 2 the polar form does not determine.
    """

    spec: FieldSpec
    polar: np.ndarray
    diag: np.ndarray
    poly: CubicPoly27

    def value(self, x: Sequence[int]) -> int:
        return self.poly.evaluate(x)


def quadratic_form_at(W: AlbertVector) -> QuadraticForm:
    F = W.spec
    quad = det_poly(F).shift(W.v).homogeneous(2)
    polar = np.zeros((DIM, DIM), dtype=np.int64)
    diag = np.zeros(DIM, dtype=np.int64)
    for (i, j), c in quad.terms.items():
        if i == j:
            diag[i] = c
            polar[i, i] = F.add(c, c)
        else:
            polar[i, j] = polar[j, i] = c
    return QuadraticForm(F, polar, diag, quad)


def is_white(W: AlbertVector) -> bool:
    """The six white equations (the zero vector satisfies them too)."""
    return bool(batch.white_mask(W.spec, W.array()[None, :])[0])


def classify_color(W: AlbertVector) -> Color:
    if W.is_zero():
        raise ValueError("the zero vector has no color")
    return _COLOR_CODES[int(batch.colors(W.spec, W.array()[None, :])[0])]


# -- Jordan product (odd characteristic) -----------------------------------------
def _require_odd(spec: FieldSpec) -> None:
    if spec.p == 2:
        raise FieldError("the Jordan product needs odd characteristic")


def jordan_mul(X: AlbertVector, Y: AlbertVector) -> AlbertVector:
    """(XY + YX)/2 computed with 3x3 octonion matrix products."""
    X._check(Y)
    F = X.spec
    _require_odd(F)
    S = batch.jordan_matrix(F, X.array()[None, :], Y.array()[None, :])
    if not batch.is_hermitian(F, S).all():
        raise AssertionError("Jordan product is not Hermitian")  # pragma: no cover
    return AlbertVector.from_array(F, batch.read_hermitian(S)[0])


def cayley_hamilton_residual(X: AlbertVector) -> AlbertVector:
    """X^3 - Tr(X) X^2 - Q(X) X - det(X) I, which should vanish."""
    F = X.spec
    _require_odd(F)
    return AlbertVector.from_array(F, batch.cayley_hamilton(F, X.array()[None, :])[0])


# -- Dickson's cubic form -----------------------------------------------------------
# Dickson variables are numbered x1..x6 -> 0..5, y1..y6 -> 6..11 and z_ij
# (i < j) -> 12..26 in lexicographic order of (i, j).
Z_PAIRS = tuple(itertools.combinations(range(1, 7), 2))
_Z_INDEX = {pair: 12 + n for n, pair in enumerate(Z_PAIRS)}
DICKSON_NAMES = tuple(f"x{i}" for i in range(1, 7)) + tuple(f"y{i}" for i in range(1, 7)) + tuple(
    f"z{i}{j}" for i, j in Z_PAIRS
)


def _dvar(name: str) -> tuple[int, int]:
    """(variable index, sign) of a Dickson symbol such as 'x3', '-y1' or 'z63'."""
    sign = 1
    if name.startswith("-"):
        sign, name = -1, name[1:]
    kind = name[0]
    if kind == "x":
        return int(name[1]) - 1, sign
    if kind == "y":
        return 6 + int(name[1]) - 1, sign
    i, j = int(name[1]), int(name[2])
    if i > j:
        i, j, sign = j, i, -sign
    return _Z_INDEX[(i, j)], sign


# coordinate -> Dickson symbol; rows are the suffix i, columns A_i B_i C_i A_-i B_-i C_-i
_TRANSLATION_ROWS = {
    0: ("z25", "z43", "z16", "z46", "z15", "z23"),
    1: ("y3", "y6", "y5", "x1", "x2", "x4"),
    2: ("x3", "x6", "x5", "-y1", "-y2", "-y4"),
    3: ("z56", "z35", "z63", "z42", "z14", "z21"),
}


@lru_cache(maxsize=None)
def translation_table() -> tuple[tuple[int, int, int], ...]:
    """(albert coordinate, dickson variable, sign) for all 27 coordinates."""
    rows = [(0, *_dvar("z13")), (1, *_dvar("z26")), (2, *_dvar("z45"))]
    for i, names in _TRANSLATION_ROWS.items():
        for col, name in enumerate(names):
            off = (A_OFF, B_OFF, C_OFF)[col % 3]
            idx = i if col < 3 else i | 4
            rows.append((off + idx, *_dvar(name)))
    if sorted(r[0] for r in rows) != list(range(DIM)) or sorted(r[1] for r in rows) != list(range(DIM)):
        raise AssertionError("translation table is not a signed bijection")  # pragma: no cover
    return tuple(rows)


@dataclass(frozen=True)
class DicksonVars:
    spec: FieldSpec
    x: tuple[int, ...]
    y: tuple[int, ...]
    z: dict

    @property
    def flat(self) -> list[int]:
        return list(self.x) + list(self.y) + [self.z[pair] for pair in Z_PAIRS]


def dickson_translate(X: AlbertVector) -> DicksonVars:
    """Dickson's x_i, y_j and antisymmetric z_ij (as packed values) for X."""
    F = X.spec
    flat = [0] * DIM
    for albert_i, dick_i, sign in translation_table():
        flat[dick_i] = X.v[albert_i] if sign > 0 else F.neg(X.v[albert_i])
    z = {}
    for i, j in Z_PAIRS:
        z[(i, j)] = flat[_Z_INDEX[(i, j)]]
        z[(j, i)] = F.neg(z[(i, j)])
    return DicksonVars(F, tuple(flat[:6]), tuple(flat[6:12]), z)


@lru_cache(maxsize=None)
def _partition_terms() -> tuple[tuple[int, int, int, int], ...]:
    """(sign, z index, z index, z index) for the 15 pairings of {1..6}."""
    out = []

    def pairings(rest):
        if not rest:
            yield []
            return
        first = rest[0]
        for k in range(1, len(rest)):
            pair = (first, rest[k])
            for tail in pairings(rest[1:k] + rest[k + 1 :]):
                yield [pair] + tail

    for part in pairings(list(range(1, 7))):
        perm = [v for pair in part for v in pair]
        inversions = sum(1 for s in range(6) for t in range(s + 1, 6) if perm[s] > perm[t])
        sign = -1 if inversions % 2 else 1
        out.append((sign, *(_Z_INDEX[pair] for pair in part)))
    return tuple(out)


@lru_cache(maxsize=None)
def dickson_poly(spec: FieldSpec) -> CubicPoly27:
    """Dickson's cubic as a polynomial in the 27 Dickson variables."""
    F = spec
    terms: dict[tuple[int, ...], int] = {}
    for i in range(1, 7):
        for j in range(1, 7):
            if i == j:
                continue
            zi, sign = _dvar(f"z{i}{j}")
            m = tuple(sorted((i - 1, 6 + j - 1, zi)))
            terms[m] = F.add(terms.get(m, 0), F.from_int(sign))
    for sign, *zs in _partition_terms():
        m = tuple(sorted(zs))
        terms[m] = F.add(terms.get(m, 0), F.from_int(sign))
    return CubicPoly27(F, terms)


def dickson_cubic(dv: DicksonVars) -> FieldElement:
    """sum_{i != j} x_i y_j z_ij plus the 15 signed pairing products."""
    F = dv.spec
    acc = 0
    for i in range(1, 7):
        for j in range(1, 7):
            if i != j:
                acc = F.add(acc, F.mul(F.mul(dv.x[i - 1], dv.y[j - 1]), dv.z[(i, j)]))
    flat = dv.flat
    for sign, u, v, w in _partition_terms():
        t = F.mul(F.mul(flat[u], flat[v]), flat[w])
        acc = F.add(acc, t) if sign > 0 else F.sub(acc, t)
    return FieldElement(F, acc)


def translation_matrix(spec: FieldSpec) -> np.ndarray:
    """27x27 matrix T with (Dickson variables) = T (Albert coordinates)."""
    T = np.zeros((DIM, DIM), dtype=np.int64)
    for albert_i, dick_i, sign in translation_table():
        T[dick_i, albert_i] = 1 if sign > 0 else spec.neg(1)
    return T


def dickson_certificate(spec: FieldSpec) -> CubicPoly27:
    """det + (Dickson cubic composed with the translation); zero when they agree."""
    pulled = dickson_poly(spec).substitute(translation_matrix(spec))
    return det_poly(spec) + pulled


# -- the white equations as polynomials -------------------------------------------
@lru_cache(maxsize=None)
def white_equation_polys(spec: FieldSpec) -> tuple[CubicPoly27, ...]:
    """27 quadratics whose common zeros are the white vectors (and 0).

    They are bc - N(A), ac - N(B), ab - N(C) and the 8 coordinates of each
    of BC - a conj(A), CA - b conj(B), AB - c conj(C).
    """
    F = spec
    minus = F.neg(1)
    polys = []
    scal = {"A": 0, "B": 1, "C": 2}
    for blk, (s1, s2) in (("A", (1, 2)), ("B", (0, 2)), ("C", (0, 1))):
        off = coord(blk, 0)
        terms = {(s1, s2): 1}
        for i in POSITIVE:
            terms[(off + i, off + (i | 4))] = minus
        polys.append(CubicPoly27(F, terms))
    for left, right, target in (("B", "C", "A"), ("C", "A", "B"), ("A", "B", "C")):
        lo, ro, to = coord(left, 0), coord(right, 0), coord(target, 0)
        s = scal[target]
        for k in range(8):
            terms: dict[tuple[int, ...], int] = {}
            for i, j, kk, sign in MUL_TERMS:
                if kk == k:
                    m = (lo + i, ro + j)
                    terms[m] = F.add(terms.get(m, 0), F.from_int(sign))
            # conj(T)_k is T_{-0} / T_0 for k = 0 / -0 and -T_k otherwise
            if k in (ZERO, MZERO):
                m, c = (s, to + (k ^ 4)), minus
            else:
                m, c = (s, to + k), 1
            terms[m] = F.add(terms.get(m, 0), c)
            polys.append(CubicPoly27(F, terms))
    return tuple(polys)


@lru_cache(maxsize=None)
def det_gradient_polys(spec: FieldSpec) -> tuple[CubicPoly27, ...]:
    """Partial derivatives of det; at W they give the linear part of det(W + X)."""
    F = spec
    out = []
    for v in range(DIM):
        terms: dict[tuple[int, ...], int] = {}
        for m, c in det_poly(F).terms.items():
            mult = m.count(v)
            if mult:
                rest = list(m)
                rest.remove(v)
                key = tuple(rest)
                terms[key] = F.add(terms.get(key, 0), F.mul(c, F.from_int(mult)))
        out.append(CubicPoly27(F, terms))
    return tuple(out)
