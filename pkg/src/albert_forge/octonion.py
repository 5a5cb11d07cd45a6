"""Split octonions over a finite field.

Basis vectors are indexed by ordinals 0..7 standing for
(+0, +1, +w, +wb, -0, -1, -w, -wb); negation is ``i ^ 4`` on ordinals and
the suffix rotation by w fixes 0 and cycles 1 -> w -> wb -> 1.  The product
table is generated from a few seed relations and frozen at import time.
"""

from __future__ import annotations

from typing import Iterator, Sequence

import numpy as np

from .gf import FieldElement, FieldError, FieldSpec

INDEX_NAMES = ("+0", "+1", "+w", "+wb", "-0", "-1", "-w", "-wb")
POSITIVE = (0, 1, 2, 3)
ZERO, MZERO = 0, 4

_ROT = {0: 0, 1: 2, 2: 3, 3: 1}


def neg_index(i: int) -> int:
    return i ^ 4


def rot_index(i: int) -> int:
    """Multiply the suffix by w, keeping the sign."""
    return _ROT[i & 3] | (i & 4)


def _seed_relations() -> list[tuple[int, int, int, int]]:
    # (i, j, sign, k) meaning e_i e_j = sign * e_k
    p0, p1, pw, pwb, m0, m1, mw, mwb = range(8)
    return [
        (p1, pw, 1, mwb),
        (pw, p1, -1, mwb),
        (p1, p0, 1, p1),
        (m0, p1, 1, p1),
        (m1, p1, -1, p0),
        (p0, p0, 1, p0),
    ]


def generate_table() -> dict[tuple[int, int], tuple[int, int]]:
    """Close the seed relations under suffix negation and rotation by w."""
    table: dict[tuple[int, int], tuple[int, int]] = {}
    todo = list(_seed_relations())
    while todo:
        i, j, s, k = todo.pop()
        key = (i, j)
        if key in table:
            if table[key] != (s, k):
                raise AssertionError(f"inconsistent relation for e{INDEX_NAMES[i]} e{INDEX_NAMES[j]}")
            continue
        table[key] = (s, k)
        todo.append((neg_index(i), neg_index(j), s, neg_index(k)))
        todo.append((rot_index(i), rot_index(j), s, rot_index(k)))
    return table


TABLE = generate_table()
# (i, j, k, sign) for every nonzero basis product
MUL_TERMS: tuple[tuple[int, int, int, int], ...] = tuple(
    sorted((i, j, k, s) for (i, j), (s, k) in TABLE.items())
)
# terms grouped by output ordinal
TERMS_BY_OUTPUT: tuple[tuple[tuple[int, int, int], ...], ...] = tuple(
    tuple((i, j, s) for i, j, k, s in MUL_TERMS if k == out) for out in range(8)
)


def basis_product(i: int, j: int) -> tuple[int, int] | None:
    """(sign, k) with e_i e_j = sign * e_k, or None for a zero product."""
    return TABLE.get((i, j))


def table_rows() -> list[list[str]]:
    """Human-readable 8x8 table: entry [i][j] is e_i e_j."""
    rows = []
    for i in range(8):
        row = []
        for j in range(8):
            entry = TABLE.get((i, j))
            if entry is None:
                row.append("0")
            else:
                s, k = entry
                row.append(("" if s > 0 else "-") + "e" + INDEX_NAMES[k])
        rows.append(row)
    return rows


class Octonion:
    """Element sum(c_i e_i) with packed field coefficients in ordinal order."""

    __slots__ = ("spec", "c")

    def __init__(self, spec: FieldSpec, coeffs: Sequence[int]):
        c = tuple(int(v) for v in coeffs)
        if len(c) != 8:
            raise ValueError("an octonion has 8 coefficients")
        self.spec = spec
        self.c = c

    @classmethod
    def zero(cls, spec: FieldSpec) -> "Octonion":
        return cls(spec, (0,) * 8)

    @classmethod
    def one(cls, spec: FieldSpec) -> "Octonion":
        return cls.scalar(spec, 1)

    @classmethod
    def scalar(cls, spec: FieldSpec, lam: int) -> "Octonion":
        c = [0] * 8
        c[ZERO] = c[MZERO] = lam
        return cls(spec, c)

    @classmethod
    def basis(cls, spec: FieldSpec, i: int, lam: int = 1) -> "Octonion":
        c = [0] * 8
        c[i] = lam
        return cls(spec, c)

    @property
    def coeffs(self) -> list[FieldElement]:
        return [FieldElement(self.spec, v) for v in self.c]

    def _check(self, y: "Octonion") -> None:
        if y.spec != self.spec:
            raise FieldError("octonions over different fields")

    def __add__(self, y: "Octonion") -> "Octonion":
        self._check(y)
        add = self.spec._add
        return Octonion(self.spec, [add[a][b] for a, b in zip(self.c, y.c)])

    def __sub__(self, y: "Octonion") -> "Octonion":
        self._check(y)
        sub = self.spec._sub
        return Octonion(self.spec, [sub[a][b] for a, b in zip(self.c, y.c)])

    def __neg__(self) -> "Octonion":
        neg = self.spec._neg
        return Octonion(self.spec, [neg[a] for a in self.c])

    def scale(self, lam: int) -> "Octonion":
        mul = self.spec._mul
        return Octonion(self.spec, [mul[lam][a] for a in self.c])

    def __mul__(self, y):
        if isinstance(y, Octonion):
            return oct_mul(self, y)
        if isinstance(y, FieldElement):
            return self.scale(y.value)
        if isinstance(y, int):
            return self.scale(self.spec.from_int(y))
        return NotImplemented

    def __rmul__(self, y):
        if isinstance(y, FieldElement):
            return self.scale(y.value)
        if isinstance(y, int):
            return self.scale(self.spec.from_int(y))
        return NotImplemented

    def conj(self) -> "Octonion":
        return oct_conj(self)

    def trace(self) -> int:
        return self.spec.add(self.c[ZERO], self.c[MZERO])

    def norm(self) -> int:
        F = self.spec
        acc = 0
        for i in POSITIVE:
            acc = F._add[acc][F._mul[self.c[i]][self.c[i | 4]]]
        return acc

    def bilinear(self, y: "Octonion") -> int:
        F = self.spec
        return F.sub(F.sub((self + y).norm(), self.norm()), y.norm())

    def prime(self) -> "Octonion":
        return oct_prime(self)

    def star(self) -> "Octonion":
        return oct_star(self)

    def is_zero(self) -> bool:
        return not any(self.c)

    def is_scalar(self) -> bool:
        return self.c[ZERO] == self.c[MZERO] and not any(self.c[i] for i in (1, 2, 3, 5, 6, 7))

    def __eq__(self, y) -> bool:
        return isinstance(y, Octonion) and self.spec == y.spec and self.c == y.c

    def __hash__(self) -> int:
        return hash((self.spec.q, self.c))

    def __repr__(self) -> str:
        terms = []
        for i, v in enumerate(self.c):
            if v:
                coef = "" if v == 1 else f"{FieldElement(self.spec, v)!r}*"
                terms.append(f"{coef}e{INDEX_NAMES[i]}")
        return "Oct(" + (" + ".join(terms) or "0") + ")"

    def to_json(self) -> dict:
        return {"coeffs": [self.spec.coeffs(v) for v in self.c]}

    @classmethod
    def from_json(cls, spec: FieldSpec, data) -> "Octonion":
        raw = data["coeffs"] if isinstance(data, dict) else data
        return cls(spec, [coerce_scalar(spec, v) for v in raw])


def coerce_scalar(spec: FieldSpec, v) -> int:
    """Accept a coefficient list or a packed integer."""
    if isinstance(v, (list, tuple)):
        return spec.from_coeffs(v)
    v = int(v)
    if not 0 <= v < spec.q:
        raise FieldError(f"value {v} outside F_{spec.q}")
    return v


def oct_mul(x: Octonion, y: Octonion) -> Octonion:
    x._check(y)
    F = x.spec
    add, sub, mul = F._add, F._sub, F._mul
    xc, yc = x.c, y.c
    out = [0] * 8
    for i, j, k, s in MUL_TERMS:
        a, b = xc[i], yc[j]
        if a and b:
            t = mul[a][b]
            out[k] = add[out[k]][t] if s > 0 else sub[out[k]][t]
    return Octonion(F, out)


def oct_conj(x: Octonion) -> Octonion:
    neg = x.spec._neg
    c = x.c
    return Octonion(
        x.spec,
        (c[MZERO], neg[c[1]], neg[c[2]], neg[c[3]], c[ZERO], neg[c[5]], neg[c[6]], neg[c[7]]),
    )


def oct_forms(x: Octonion, y: Octonion | None = None) -> dict:
    out = {
        "trace": FieldElement(x.spec, x.trace()),
        "norm": FieldElement(x.spec, x.norm()),
        "bilinear": None,
    }
    if y is not None:
        out["bilinear"] = FieldElement(x.spec, x.bilinear(y))
    return out


def oct_prime(x: Octonion) -> Octonion:
    """Apply lambda -> lambda^q to every coefficient (F must be F_{q^2})."""
    F = x.spec
    if not F.is_quadratic:
        raise FieldError(f"F_{F.q} is not a quadratic extension")
    conj = F.conj_table
    return Octonion(F, [int(conj[v]) for v in x.c])


def oct_star(x: Octonion) -> Octonion:
    return oct_conj(oct_prime(x))


def isotropic_array(spec: FieldSpec) -> np.ndarray:
    """All nonzero octonions of norm 0 as an (n, 8) int64 array.

    The positive half u = (c_0, c_1, c_w, c_wb) is free; the negative half v
    must satisfy u . v = 0, solved for the last pivot of u.
    """
    q = spec.q
    F = spec
    grid4 = _grid(q, 4)
    blocks = []
    # u = 0: v any nonzero vector
    v_any = grid4[1:]
    blocks.append(np.concatenate([np.zeros_like(v_any), v_any], axis=1))
    grid3 = _grid(q, 3)
    for pivot in range(4):
        # u with u[pivot] != 0 and u[pivot+1:] == 0
        lead = grid4[(grid4[:, pivot] != 0) & (grid4[:, pivot + 1 :] == 0).all(axis=1)]
        if not len(lead):
            continue
        free = [i for i in range(4) if i != pivot]
        nu, nf = len(lead), len(grid3)
        U = np.repeat(lead, nf, axis=0)
        V = np.zeros((nu * nf, 4), dtype=np.int64)
        V[:, free] = np.tile(grid3, (nu, 1))
        acc = np.zeros(nu * nf, dtype=np.int64)
        for i in free:
            acc = F.vadd(acc, F.vmul(U[:, i], V[:, i]))
        V[:, pivot] = F.vneg(F.vmul(acc, F.vinv(U[:, pivot])))
        blocks.append(np.concatenate([U, V], axis=1))
    return np.concatenate(blocks, axis=0)


def enumerate_isotropic(spec: FieldSpec) -> Iterator[Octonion]:
    for row in isotropic_array(spec):
        yield Octonion(spec, row.tolist())


def isotropic_count(q: int) -> int:
    return (q**4 - 1) * (q**3 + 1)


def _grid(q: int, n: int) -> np.ndarray:
    """All vectors of F^n as rows (packed values), first coordinate slowest."""
    g = np.indices((q,) * n).reshape(n, -1).T
    return np.ascontiguousarray(g, dtype=np.int64)


def all_octonions(spec: FieldSpec) -> np.ndarray:
    return _grid(spec.q, 8)
