"""Exhaustive evaluation of F_2 polynomials on all 2^27 Albert vectors.

Vectors are bit-sliced: one uint64 word holds 64 vectors.  Coordinates 0..5
select the lane inside a word, coordinates 6..21 the word inside a chunk of
2^16 words, and coordinates 22..26 the chunk.  A polynomial over F_2 then
evaluates with AND for products and XOR for sums.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .albert import DIM, det_gradient_polys, det_poly, white_equation_polys
from .gf import field_make
from .poly import CubicPoly27

LANE_BITS = 6
CHUNK_BITS = 16
ALL = np.uint64(0xFFFFFFFFFFFFFFFF)


def _lane_masks() -> list[np.uint64]:
    lanes = np.arange(64, dtype=np.uint64)
    out = []
    for i in range(LANE_BITS):
        bits = (lanes >> np.uint64(i)) & np.uint64(1)
        out.append(np.uint64(int((bits << lanes).sum())))
    return out


def _chunk_vars(chunk: int) -> list:
    """Bit-sliced value of each of the 27 coordinates inside one chunk."""
    idx = np.arange(1 << CHUNK_BITS, dtype=np.uint64)
    vals: list = list(_lane_masks())
    for j in range(CHUNK_BITS):
        vals.append(np.where((idx >> np.uint64(j)) & np.uint64(1), ALL, np.uint64(0)))
    for j in range(DIM - LANE_BITS - CHUNK_BITS):
        vals.append(ALL if (chunk >> j) & 1 else np.uint64(0))
    return vals


def _eval(poly: CubicPoly27, vals: list, n: int) -> np.ndarray:
    acc = np.zeros(n, dtype=np.uint64)
    for m, c in poly.terms.items():
        if not c % 2:
            continue
        if not m:
            acc ^= ALL
            continue
        t = vals[m[0]]
        for v in m[1:]:
            t = t & vals[v]
        acc ^= t
    return acc


def _any_nonzero(polys: Sequence[CubicPoly27], vals: list, n: int) -> np.ndarray:
    acc = np.zeros(n, dtype=np.uint64)
    for p in polys:
        acc |= _eval(p, vals, n)
    return acc


@dataclass
class AgreementReport:
    vectors: int
    white_by_equations: int
    white_by_linear_form: int
    disagreements: int
    black: int

    @property
    def ok(self) -> bool:
        return self.disagreements == 0

    def to_json(self) -> dict:
        return {
            "vectors": self.vectors,
            "white_by_equations": self.white_by_equations,
            "white_by_linear_form": self.white_by_linear_form,
            "disagreements": self.disagreements,
            "black": self.black,
        }


def white_agreement_q2() -> AgreementReport:
    """Compare the six white equations with the vanishing of the linear part of
    det(W + X), for every nonzero W over F_2."""
    F = field_make(2)
    eqs = white_equation_polys(F)
    grads = det_gradient_polys(F)
    det = det_poly(F)
    n = 1 << CHUNK_BITS
    white_eq = white_lin = bad = black = 0
    for chunk in range(1 << (DIM - LANE_BITS - CHUNK_BITS)):
        vals = _chunk_vars(chunk)
        e = ~_any_nonzero(eqs, vals, n)
        g = ~_any_nonzero(grads, vals, n)
        white_eq += int(np.bitwise_count(e).sum())
        white_lin += int(np.bitwise_count(g).sum())
        bad += int(np.bitwise_count(e ^ g).sum())
        black += int(np.bitwise_count(_eval(det, vals, n)).sum())
    # the zero vector satisfies both tests
    return AgreementReport((1 << DIM) - 1, white_eq - 1, white_lin - 1, bad, black)
