"""Sparse exact polynomials of degree at most 3 over a small finite field.

A monomial is a sorted tuple of variable indices (so ``(0, 0, 5)`` is
``x0^2 x5``); the empty tuple is the constant monomial.  Coefficients are
packed field values and zero coefficients are never stored.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

import numpy as np

from .gf import FieldSpec, field_make

MAX_DEGREE = 3
Monomial = tuple[int, ...]


def graded_lex_key(m: Monomial) -> tuple:
    return (len(m), m)


class CubicPoly27:
    """Polynomial in ``nvars`` variables (27 by default) of total degree <= 3."""

    __slots__ = ("spec", "nvars", "terms")

    def __init__(self, spec: FieldSpec, terms: Mapping[Monomial, int] | None = None, nvars: int = 27):
        self.spec = spec
        self.nvars = nvars
        clean: dict[Monomial, int] = {}
        for m, c in (terms or {}).items():
            m = tuple(sorted(m))
            if len(m) > MAX_DEGREE:
                raise ValueError(f"degree {len(m)} exceeds {MAX_DEGREE}")
            if any(not 0 <= v < nvars for v in m):
                raise ValueError(f"monomial {m} uses a variable outside 0..{nvars - 1}")
            c = spec.add(clean.get(m, 0), int(c))
            if c:
                clean[m] = c
            else:
                clean.pop(m, None)
        self.terms = clean

    # -- constructors ---------------------------------------------------
    @classmethod
    def zero(cls, spec: FieldSpec, nvars: int = 27) -> "CubicPoly27":
        return cls(spec, {}, nvars)

    @classmethod
    def const(cls, spec: FieldSpec, c: int, nvars: int = 27) -> "CubicPoly27":
        return cls(spec, {(): c}, nvars)

    @classmethod
    def var(cls, spec: FieldSpec, i: int, c: int = 1, nvars: int = 27) -> "CubicPoly27":
        return cls(spec, {(i,): c}, nvars)

    @classmethod
    def linear(cls, spec: FieldSpec, coeffs: Sequence[int], nvars: int | None = None) -> "CubicPoly27":
        n = len(coeffs) if nvars is None else nvars
        return cls(spec, {(i,): int(c) for i, c in enumerate(coeffs) if c}, n)

    def _new(self, terms: dict[Monomial, int]) -> "CubicPoly27":
        out = object.__new__(CubicPoly27)
        out.spec, out.nvars, out.terms = self.spec, self.nvars, terms
        return out

    def _check(self, other: "CubicPoly27") -> None:
        if other.spec != self.spec or other.nvars != self.nvars:
            raise ValueError("polynomials over different rings")

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other: "CubicPoly27") -> "CubicPoly27":
        self._check(other)
        add = self.spec._add
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = add[out.get(m, 0)][c]
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return self._new(out)

    def __neg__(self) -> "CubicPoly27":
        neg = self.spec._neg
        return self._new({m: neg[c] for m, c in self.terms.items()})

    def __sub__(self, other: "CubicPoly27") -> "CubicPoly27":
        return self + (-other)

    def scale(self, lam: int) -> "CubicPoly27":
        if not lam:
            return self._new({})
        mul = self.spec._mul
        return self._new({m: mul[lam][c] for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(self.spec.from_int(other))
        self._check(other)
        F = self.spec
        add, mul = F._add, F._mul
        out: dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(sorted(m1 + m2))
                if len(m) > MAX_DEGREE:
                    raise ValueError("product exceeds degree 3")
                v = add[out.get(m, 0)][mul[c1][c2]]
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return self._new(out)

    # -- structure --------------------------------------------------------
    @property
    def degree(self) -> int:
        return max((len(m) for m in self.terms), default=-1)

    def homogeneous(self, d: int) -> "CubicPoly27":
        return self._new({m: c for m, c in self.terms.items() if len(m) == d})

    def __len__(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CubicPoly27)
            and self.spec == other.spec
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.spec.q, self.nvars, frozenset(self.terms.items())))

    def sorted_terms(self) -> list[tuple[Monomial, int]]:
        return sorted(self.terms.items(), key=lambda t: graded_lex_key(t[0]))

    def __repr__(self) -> str:
        parts = []
        for m, c in self.sorted_terms():
            mono = "*".join(f"x{i}" for i in m) or "1"
            parts.append(f"{c}*{mono}" if c != 1 else mono)
        return "CubicPoly27(" + (" + ".join(parts) or "0") + ")"

    # -- evaluation and substitution ------------------------------------
    def evaluate(self, point: Sequence[int]) -> int:
        F = self.spec
        add, mul = F._add, F._mul
        acc = 0
        for m, c in self.terms.items():
            t = c
            for v in m:
                t = mul[t][int(point[v])]
            acc = add[acc][t]
        return acc

    def evaluate_many(self, points: np.ndarray) -> np.ndarray:
        """Evaluate at every row of an (n, nvars) array."""
        F = self.spec
        acc = np.zeros(points.shape[0], dtype=np.int64)
        for m, c in self.terms.items():
            t = np.full(points.shape[0], c, dtype=np.int64)
            for v in m:
                t = F.vmul(t, points[:, v])
            acc = F.vadd(acc, t)
        return acc

    def shift(self, w: Sequence[int]) -> "CubicPoly27":
        """The polynomial X -> f(w + X)."""
        F = self.spec
        add, mul = F._add, F._mul
        out: dict[Monomial, int] = {}
        for m, c in self.terms.items():
            for keep in itertools.product((False, True), repeat=len(m)):
                t = c
                mono = []
                for v, k in zip(m, keep):
                    if k:
                        mono.append(v)
                    else:
                        t = mul[t][int(w[v])]
                if t:
                    key = tuple(mono)
                    out[key] = add[out.get(key, 0)][t]
        return self._new({m: c for m, c in out.items() if c})

    def substitute(self, forms: np.ndarray) -> "CubicPoly27":
        """Compose with the linear map x_i -> sum_j forms[i, j] y_j.

        ``forms`` has shape (nvars, n_new).  Each homogeneous part is expanded
        into a dense coefficient tensor with numpy and then collapsed onto
        sorted monomials, which is exact and much faster than a Python loop.
        """
        F = self.spec
        G = np.asarray(forms, dtype=np.int64) % F.q if F.k == 1 else np.asarray(forms, dtype=np.int64)
        if G.shape[0] != self.nvars:
            raise ValueError("substitution needs one linear form per variable")
        n = G.shape[1]
        out: dict[Monomial, int] = {}
        const = self.terms.get(())
        if const:
            out[()] = const
        for d in (1, 2, 3):
            part = [(m, c) for m, c in self.terms.items() if len(m) == d]
            if not part:
                continue
            tensor = np.zeros((n,) * d, dtype=np.int64)
            for m, c in part:
                t = F.vmul(np.int64(c), G[m[0]])
                for v in m[1:]:
                    t = F.vmul(t[..., None], G[v].reshape((1,) * t.ndim + (n,)))
                tensor = F.vadd(tensor, t)
            out.update(_collapse(F, tensor, d))
        return CubicPoly27(F, out, n)

    # -- serialization ----------------------------------------------------
    def to_json(self) -> dict:
        return {
            "p": self.spec.p,
            "k": self.spec.k,
            "nvars": self.nvars,
            "terms": [[list(m), self.spec.coeffs(c)] for m, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "CubicPoly27":
        spec = field_make(data["p"], data["k"])
        return cls(spec, {tuple(m): spec.from_coeffs(c) for m, c in data["terms"]}, data["nvars"])


@lru_cache(maxsize=None)
def _monomial_index(n: int, d: int) -> tuple[list[Monomial], np.ndarray]:
    """Sorted monomials of degree d and, per monomial, the flat indices of its
    distinct orderings padded with n**d (a sentinel slot holding zero)."""
    monos = list(itertools.combinations_with_replacement(range(n), d))
    width = {1: 1, 2: 2, 3: 6}[d]
    idx = np.full((len(monos), width), n**d, dtype=np.int64)
    strides = [n ** (d - 1 - i) for i in range(d)]
    for r, m in enumerate(monos):
        perms = sorted(set(itertools.permutations(m)))
        for s, perm in enumerate(perms):
            idx[r, s] = sum(a * b for a, b in zip(perm, strides))
    return monos, idx


def _collapse(F: FieldSpec, tensor: np.ndarray, d: int) -> dict[Monomial, int]:
    n = tensor.shape[0]
    monos, idx = _monomial_index(n, d)
    flat = np.concatenate([tensor.reshape(-1), np.zeros(1, dtype=np.int64)])
    g = flat[idx]
    acc = g[:, 0]
    for s in range(1, g.shape[1]):
        acc = F.vadd(acc, g[:, s])
    nz = np.nonzero(acc)[0]
    return {monos[i]: int(acc[i]) for i in nz}


def poly_vars(spec: FieldSpec, nvars: int = 27) -> list[CubicPoly27]:
    return [CubicPoly27.var(spec, i, nvars=nvars) for i in range(nvars)]


def poly_sum(spec: FieldSpec, polys: Iterable[CubicPoly27], nvars: int = 27) -> CubicPoly27:
    acc = CubicPoly27.zero(spec, nvars)
    for p in polys:
        acc = acc + p
    return acc
