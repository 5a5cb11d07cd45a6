"""White/grey/black censuses: exhaustive over F_2 and structured for small q."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

import numpy as np

from .. import batch, linalg
from ..gf import FieldSpec, field_of_order
from ..octonion import _grid, isotropic_array
from .bfs import BudgetExceeded

THREADS_ENV = "ALBERT_FORGE_THREADS"


def default_workers() -> int:
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ValueError(f"{THREADS_ENV} must be an integer, got {env!r}") from None
    return 1


# -- exhaustive census over F_2 ----------------------------------------------------
@lru_cache(maxsize=1)
def _q2_tables():
    """Octonions over F_2 as bytes (bit i = coefficient of e_i) with lookup tables."""
    F = field_of_order(2)
    allo = _grid(2, 8)[:, ::-1]  # row n has bit i of n in column i
    idx = np.arange(256)
    prod = batch.omul(F, allo[:, None, :], allo[None, :, :])
    weights = 1 << np.arange(8)
    mul = (prod * weights).sum(axis=-1).astype(np.uint8)
    norm = batch.onorm(F, allo).astype(np.uint8)
    conj = (batch.oconj(F, allo) * weights).sum(axis=-1).astype(np.uint8)
    trace = batch.otrace(F, allo).astype(np.uint8)
    assert ((allo * weights).sum(axis=-1) == idx).all()
    return mul, norm, conj, trace


def _q2_shard(outer: list[int]) -> tuple[int, int, int, int, int]:
    """Counts (white, grey, black, white trace 1, white trace 0) over the given
    outer indices; an outer index packs (a, b, c, A) as a | b<<1 | c<<2 | A<<3."""
    mul, norm, conj, trace = _q2_tables()
    Bg = np.repeat(np.arange(256, dtype=np.int64), 256)
    Cg = np.tile(np.arange(256, dtype=np.int64), 256)
    NB, NC = norm[Bg], norm[Cg]
    BC = mul[Bg, Cg]
    cB, cC = conj[Bg], conj[Cg]
    white = grey = black = w1 = w0 = 0
    for o in outer:
        a, b, c, A = o & 1, (o >> 1) & 1, (o >> 2) & 1, o >> 3
        NA = int(norm[A])
        AB = mul[A, Bg]
        d = (a & b & c) ^ (a & NA) ^ (b & NB) ^ (c & NC) ^ trace[mul[AB, Cg]]
        n_black = int(d.sum())
        if (b & c) == NA:
            ok = (NB == (a & c)) & (NC == (a & b))
            ok &= BC == (conj[A] if a else 0)
            ok &= mul[Cg, A] == np.where(b, cB, 0)
            ok &= AB == np.where(c, cC, 0)
            n_white = int(ok.sum())
        else:
            n_white = 0
        if o == 0:
            n_white -= 1  # the zero vector
        white += n_white
        black += n_black
        grey += 65536 - n_black - n_white - (1 if o == 0 else 0)
        if (a ^ b ^ c) == 1:
            w1 += n_white
        else:
            w0 += n_white
    return white, grey, black, w1, w0


@dataclass
class CensusReport:
    q: int
    white: int
    grey: int
    black: int
    primitive_idempotents: int
    trace_zero_white: int
    diagonal_white: int
    workers: int

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "white": self.white,
            "grey": self.grey,
            "black": self.black,
            "total_nonzero": self.white + self.grey + self.black,
            "primitive_idempotents": self.primitive_idempotents,
            "trace_zero_white": self.trace_zero_white,
            "diagonal_white": self.diagonal_white,
        }


def diagonal_census(F: FieldSpec) -> int:
    """White count among nonzero (a,b,c|0,0,0)."""
    g = _grid(F.q, 3)[1:]
    V = np.zeros((len(g), 27), dtype=np.int64)
    V[:, :3] = g
    return int(batch.white_mask(F, V).sum())


def brute_force_color_census(q: int = 2, workers: int | None = None, max_vectors: int = 2**27) -> CensusReport:
    """Classify every nonzero vector of the Albert space over F_q."""
    if q**27 > max_vectors:
        raise BudgetExceeded(f"q={q}: {q}^27 vectors exceed the budget of {max_vectors}")
    if q != 2:  # pragma: no cover - only F_2 fits any sensible budget
        raise BudgetExceeded("the exhaustive census is implemented for q=2 only")
    workers = workers or default_workers()
    outer = list(range(2048))
    if workers > 1:
        shards = [outer[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(_q2_shard, shards))
    else:
        parts = [_q2_shard(outer)]
    tot = [sum(p[i] for p in parts) for i in range(5)]
    return CensusReport(2, tot[0], tot[1], tot[2], tot[3], tot[4], diagonal_census(field_of_order(2)), workers)


# -- structured enumeration -----------------------------------------------------------
@dataclass
class CaseResult:
    case: int
    count: int
    by_trace: dict[int, int] = field(default_factory=dict)


def norm_histogram(F: FieldSpec) -> np.ndarray:
    """h[v] = number of octonions of norm v (v a packed field value)."""
    q = F.q
    # N(x) = u . v for the positive half u and negative half v: convolve the
    # 4-dimensional dot-product distribution, computed from F^2 pieces
    g2 = _grid(q, 2)
    pair = F.vadd(F.vmul(g2[:, None, 0], g2[None, :, 0]), F.vmul(g2[:, None, 1], g2[None, :, 1]))
    h2 = np.bincount(pair.reshape(-1), minlength=q).astype(object)
    out = np.zeros(q, dtype=object)
    for s in range(q):
        for t in range(q):
            out[F.add(s, t)] += h2[s] * h2[t]
    return out


def _diag_case(F: FieldSpec, case: int) -> CaseResult:
    """Cases 1-3: vectors c * conj(v)^T v with v = (x, y, 1), c != 0.

    a = c N(x) and b = c N(y); case 1 wants both nonzero, case 2 exactly one
    (a = 0, times the three rotations), case 3 both zero (times three).
    """
    h = norm_histogram(F)
    q = F.q
    by_trace: dict[int, int] = {}
    mult = 1 if case == 1 else 3
    for c in range(1, q):
        for al in range(q):
            for be in range(q):
                nz = (al != 0) + (be != 0)
                if case == 1 and nz != 2:
                    continue
                if case == 2 and not (al == 0 and be != 0):
                    continue
                if case == 3 and nz != 0:
                    continue
                tr = F.mul(c, F.add(F.add(al, be), 1))
                by_trace[tr] = by_trace.get(tr, 0) + mult * int(h[al] * h[be])
    return CaseResult(case, sum(by_trace.values()), by_trace)


def left_mult_matrix(F: FieldSpec, A: np.ndarray) -> np.ndarray:
    """8x8 matrix L with L @ B = A B."""
    return batch.omul(F, A[None, :], np.eye(8, dtype=np.int64)).T


def right_mult_matrix(F: FieldSpec, A: np.ndarray) -> np.ndarray:
    """8x8 matrix R with R @ C = C A."""
    return batch.omul(F, np.eye(8, dtype=np.int64), A[None, :]).T


def _span(F: FieldSpec, basis: np.ndarray) -> np.ndarray:
    if not len(basis):
        return np.zeros((1, 8), dtype=np.int64)
    coeffs = _grid(F.q, len(basis))
    return linalg.matmul(F, coeffs, basis)


def _off_diagonal_counts(F: FieldSpec, max_pairs: int) -> tuple[int, int, int]:
    """(#triples for case 4, #pairs A,B with AB = 0, #isotropic) over nonzero isotropic octonions."""
    iso = isotropic_array(F)
    q = F.q
    if len(iso) * q**8 > max_pairs:
        raise BudgetExceeded(f"q={q}: off-diagonal enumeration needs {len(iso) * q**8} pair checks")
    triples = pairs = 0
    for A in iso:
        KB = _span(F, linalg.nullspace(F, left_mult_matrix(F, A)))
        KB = KB[KB.any(axis=1)]
        KB = KB[batch.onorm(F, KB) == 0]
        pairs += len(KB)
        KC = _span(F, linalg.nullspace(F, right_mult_matrix(F, A)))
        KC = KC[KC.any(axis=1)]
        KC = KC[batch.onorm(F, KC) == 0]
        if not len(KB) or not len(KC):
            continue
        prod = batch.omul(F, KB[:, None, :], KC[None, :, :])
        triples += int((~prod.any(axis=-1)).sum())
    return triples, pairs, len(iso)


def structured_white_enumeration(q: int, case: int | None = None, max_pairs: int = 10**8) -> list[CaseResult]:
    """Exact per-case white-vector counts following the white-vector parametrization.

    Cases 1-3 count rank-one matrices with nonzero diagonal from the octonion
    norm histogram; cases 4-6 enumerate isotropic A, the kernels of left and
    right multiplication by A, and the products inside them.
    """
    if q > 9:
        raise BudgetExceeded("structured enumeration supports q <= 9")
    F = field_of_order(q)
    cases = [case] if case else [1, 2, 3, 4, 5, 6]
    for c in cases:
        if c not in range(1, 7):
            raise ValueError("case must be 1..6")
    out = []
    off = None
    for c in cases:
        if c <= 3:
            out.append(_diag_case(F, c))
            continue
        if off is None:
            off = _off_diagonal_counts(F, max_pairs)
        n = {4: off[0], 5: 3 * off[1], 6: 3 * off[2]}[c]
        out.append(CaseResult(c, n, {0: n}))
    return out


def white_by_trace(results: list[CaseResult]) -> dict[int, int]:
    tot: dict[int, int] = {}
    for r in results:
        for t, n in r.by_trace.items():
            tot[t] = tot.get(t, 0) + n
    return tot


# -- explicit vector streams (small q) -----------------------------------------------
def rank_one_vector(F: FieldSpec, c: int, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Rows c * conj(v)^T v for v = (x, y, 1): (cN(x), cN(y), c | c conj(y), c x, c conj(x) y)."""
    x = np.atleast_2d(x)
    y = np.atleast_2d(y)
    n = max(len(x), len(y))
    cc = np.full(n, c, dtype=np.int64)
    a = F.vmul(cc, batch.onorm(F, x))
    b = F.vmul(cc, batch.onorm(F, y))
    A = batch.oscale(F, cc, batch.oconj(F, y))
    B = batch.oscale(F, cc, x)
    C = batch.oscale(F, cc, batch.omul(F, batch.oconj(F, x), y))
    return batch.join(a, b, cc, A, B, C)


def rotate(V: np.ndarray, times: int = 1) -> np.ndarray:
    """(a,b,c|A,B,C) -> (c,a,b|C,A,B), repeated."""
    out = V
    for _ in range(times % 3):
        a, b, c, A, B, C = batch.split(out)
        out = batch.join(c, a, b, C, A, B)
    return out


def white_vector_stream(q: int, case: int, chunk: int = 65536) -> Iterator[np.ndarray]:
    """Yield every white vector of one case as (n, 27) arrays (small q only)."""
    F = field_of_order(q)
    if case <= 3:
        allo = _grid(q, 8)
        norms = batch.onorm(F, allo)
        xs = allo[norms != 0] if case == 1 else allo[norms == 0]
        ys = allo[norms != 0] if case in (1, 2) else allo[norms == 0]
        reps = 1 if case == 1 else 3
        for c in range(1, q):
            for start in range(0, len(xs), max(1, chunk // len(ys))):
                xb = xs[start : start + max(1, chunk // len(ys))]
                X = np.repeat(xb, len(ys), axis=0)
                Y = np.tile(ys, (len(xb), 1))
                V = rank_one_vector(F, c, X, Y)
                for r in range(reps):
                    yield rotate(V, r)
        return
    iso = isotropic_array(F)
    if case == 6:
        for r in range(3):
            V = np.zeros((len(iso), 27), dtype=np.int64)
            V[:, batch.A_SLICE] = iso
            yield rotate(V, r)
        return
    for A in iso:
        KB = _span(F, linalg.nullspace(F, left_mult_matrix(F, A)))
        KB = KB[KB.any(axis=1) & (batch.onorm(F, KB) == 0)]
        if case == 5:
            V = np.zeros((len(KB), 27), dtype=np.int64)
            V[:, batch.A_SLICE] = A
            V[:, batch.B_SLICE] = KB
            for r in range(3):
                yield rotate(V, r)
            continue
        KC = _span(F, linalg.nullspace(F, right_mult_matrix(F, A)))
        KC = KC[KC.any(axis=1) & (batch.onorm(F, KC) == 0)]
        if not len(KB) or not len(KC):
            continue
        prod = batch.omul(F, KB[:, None, :], KC[None, :, :])
        bi, ci = np.nonzero(~prod.any(axis=-1))
        V = np.zeros((len(bi), 27), dtype=np.int64)
        V[:, batch.A_SLICE] = A
        V[:, batch.B_SLICE] = KB[bi]
        V[:, batch.C_SLICE] = KC[ci]
        yield V


def all_white_vectors(q: int = 2) -> np.ndarray:
    """Every white vector over F_q as rows (q = 2 keeps this at 139503 rows)."""
    if q > 2:
        raise BudgetExceeded("materializing all white vectors is limited to q = 2")
    parts = [V for case in range(1, 7) for V in white_vector_stream(q, case)]
    return np.concatenate(parts)
