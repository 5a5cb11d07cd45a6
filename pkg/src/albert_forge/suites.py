"""Seeded verification suites that back ``albert-forge verify``.

Each suite returns a :class:`SuiteReport` made of named checks.  A check
records how many instances it examined so that exhaustive and random runs
are both visible in the report.  Randomness comes from a generator seeded
with ``(seed, suite index, q)``, so a run is fully determined by its config.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from . import batch, bitslice, group
from .albert import (
    AlbertVector,
    det_gradient_polys,
    det_poly,
    dickson_certificate,
)
from .gf import FieldSpec, field_make, field_of_order, quadratic_extension
from .octonion import Octonion, _grid, isotropic_array
from .orbits.census import rank_one_vector, rotate
from .orbits.twisted import TwoE6PointType, h1_radical, twoE6_point_type

DEFAULT_QS = {
    "field": (2, 3, 4, 5, 7, 8, 9),
    "octonion": (2, 3, 4, 5, 8, 9),
    "albert": (2, 3, 4, 5, 7),
    "generators": (2, 3, 4, 5),
    "twisted": (2, 3),
}
CHUNK = 1 << 18


@dataclass
class Check:
    name: str
    q: int
    passed: bool
    instances: int
    detail: str = ""

    def to_json(self) -> dict:
        out = {"name": self.name, "q": self.q, "passed": self.passed, "instances": self.instances}
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class SuiteReport:
    suite: str
    seed: int
    checks: list[Check] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, q: int, passed, instances: int, detail: str = "") -> None:
        self.checks.append(Check(name, q, bool(np.all(passed)), int(instances), detail))

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_json(self, timings: bool = False) -> dict:
        out = {
            "suite": self.suite,
            "seed": self.seed,
            "ok": self.ok,
            "n_checks": len(self.checks),
            "checks": [c.to_json() for c in self.checks],
        }
        if timings:
            out["elapsed"] = round(self.elapsed, 3)
        return out


def _rng(seed: int, suite: str, q: int) -> np.random.Generator:
    return np.random.default_rng([seed, sorted(DEFAULT_QS).index(suite), q])


def _pairs(n: int, m: int) -> tuple[np.ndarray, np.ndarray]:
    """Index arrays covering all (i, j) with i < n, j < m."""
    return np.repeat(np.arange(n), m), np.tile(np.arange(m), n)


def _all_chunks(X: np.ndarray, Y: np.ndarray, fn: Callable[[np.ndarray, np.ndarray], np.ndarray]) -> tuple[bool, int]:
    """Apply a rowwise predicate to the full product X x Y in chunks."""
    ok = True
    per = max(1, CHUNK // len(Y))
    for s in range(0, len(X), per):
        xs = X[s : s + per]
        i, j = _pairs(len(xs), len(Y))
        ok &= bool(fn(xs[i], Y[j]).all())
        if not ok:
            break
    return ok, len(X) * len(Y)


# -- fields ------------------------------------------------------------------------
def field_suite(qs: Iterable[int], seed: int = 0, n_random: int = 10**5) -> SuiteReport:
    rep = SuiteReport("field", seed)
    for q in qs:
        F = field_of_order(q)
        e = np.arange(q, dtype=np.int64)
        x, y = _pairs(q, q)
        rep.add("add_commutative", q, F.vadd(x, y) == F.vadd(y, x), q * q)
        rep.add("mul_commutative", q, F.vmul(x, y) == F.vmul(y, x), q * q)
        i, j = _pairs(q * q, q)
        a, b, c = x[i], y[i], e[j]
        rep.add("associativity", q, (F.vmul(F.vmul(a, b), c) == F.vmul(a, F.vmul(b, c)))
                & (F.vadd(F.vadd(a, b), c) == F.vadd(a, F.vadd(b, c))), q**3)
        rep.add("distributivity", q, F.vmul(a, F.vadd(b, c)) == F.vadd(F.vmul(a, b), F.vmul(a, c)), q**3)
        nz = e[1:]
        rep.add("inverses", q, (F.vmul(nz, F.vinv(nz)) == 1).all() and (F.vadd(e, F.vneg(e)) == 0).all(), q)
        rep.add("frobenius_fixes_all", q, [F.pow(int(v), q) == int(v) for v in e], q)
        if F.k % 2 == 0:
            conj = F.conj_table[e]
            rep.add("conj_order_two", q, conj[conj] == e, q)
            rep.add("conj_automorphism", q, (F.conj_table[F.vmul(x, y)] == F.vmul(conj[x], conj[y]))
                    & (F.conj_table[F.vadd(x, y)] == F.vadd(conj[x], conj[y])), q * q)
            fixed = int((conj == e).sum())
            r = int(round(q**0.5))
            rep.add("conj_fixed_field_size", q, fixed == r, q, f"{fixed} fixed elements")
    return rep


# -- octonions ---------------------------------------------------------------------
def _oct_identities(F: FieldSpec):
    mul, cj, tr, nm = (lambda u, v: batch.omul(F, u, v)), (lambda u: batch.oconj(F, u)), (
        lambda u: batch.otrace(F, u)), (lambda u: batch.onorm(F, u))
    sc = lambda lam, u: batch.oscale(F, lam, u)  # noqa: E731

    def eq(u, v):
        return (u == v).all(axis=-1)

    ids = {
        "anti_automorphism": (2, lambda x, y: eq(cj(mul(x, y)), mul(cj(y), cj(x)))),
        "norm_multiplicative": (2, lambda x, y: nm(mul(x, y)) == F.vmul(nm(x), nm(y))),
        "trace_associativity": (3, lambda x, y, z: tr(mul(x, mul(y, z))) == tr(mul(mul(x, y), z))),
        "moufang_middle": (3, lambda x, y, z: eq(mul(mul(x, mul(y, z)), x), mul(mul(x, y), mul(z, x)))),
        "moufang_right": (3, lambda x, y, z: eq(mul(x, mul(mul(y, z), y)), mul(mul(mul(x, y), z), y))),
        "moufang_left": (3, lambda x, y, z: eq(mul(mul(mul(x, y), x), z), mul(x, mul(y, mul(x, z))))),
        "flexible": (2, lambda x, y: eq(mul(mul(x, y), x), mul(x, mul(y, x)))),
        "left_alternative": (2, lambda x, y: eq(mul(x, mul(x, y)), mul(mul(x, x), y))),
        "right_alternative": (2, lambda x, y: eq(mul(mul(y, x), x), mul(y, mul(x, x)))),
        "lemma_x_yx": (2, lambda x, y: eq(mul(x, mul(y, x)),
                                           F.vsub(sc(tr(mul(y, x)), x), sc(nm(x), cj(y))))),
        "lemma_trace_xy_zxbar": (3, lambda x, y, z: tr(mul(mul(x, y), mul(z, cj(x))))
                                 == F.vmul(nm(x), tr(mul(y, z)))),
        "trace_is_x_plus_conj": (1, lambda x: eq(F.vadd(x, cj(x)), batch.oscalar(F, tr(x)))),
    }
    iso = {
        "isotropic_x_yx": (2, lambda x, y: eq(mul(x, mul(y, x)), sc(tr(mul(y, x)), x))),
        "isotropic_trace_vanishes": (3, lambda x, y, z: tr(mul(mul(x, y), mul(z, cj(x)))) == 0),
    }
    return ids, iso


def _basis(F: FieldSpec) -> np.ndarray:
    return np.eye(8, dtype=np.int64)


def _check_x_full(F, fn, arity, X, B) -> tuple[bool, int]:
    """x over X, the remaining arguments over basis tuples (each law is linear in them)."""
    if arity == 1:
        return bool(fn(X).all()), len(X)
    if arity == 2:
        return _all_chunks(X, B, fn)
    i, j = _pairs(len(B), len(B))
    YZ = np.concatenate([B[i], B[j]], axis=1)
    return _all_chunks(X, YZ, lambda x, yz: fn(x, yz[:, :8], yz[:, 8:]))


def _trace_lemma_gram(F: FieldSpec, X: np.ndarray, chunk: int = 1 << 14) -> tuple[bool, int]:
    """Tr((xy)(z conj x)) = N(x) Tr(yz) for all x in X and all y, z.

    For fixed x both sides are bilinear in (y, z), so comparing the 8x8 Gram
    matrices on the basis is the same as checking every basis pair.
    """
    E = np.eye(8, dtype=np.int64)
    G = np.array([[int(batch.otrace(F, batch.omul(F, E[a], E[b]))) for b in range(8)] for a in range(8)])
    nzG = list(zip(*np.nonzero(G)))
    for s in range(0, len(X), chunk):
        x = X[s : s + chunk]
        xc = batch.oconj(F, x)
        L = np.stack([batch.omul(F, x, np.broadcast_to(E[i], x.shape)) for i in range(8)], axis=2)
        R = np.stack([batch.omul(F, np.broadcast_to(E[j], x.shape), xc) for j in range(8)], axis=2)
        M = np.zeros((len(x), 8, 8), dtype=np.int64)
        for a, b in nzG:
            M = F.vadd(M, F.vmul(np.int64(G[a, b]), F.vmul(L[:, a, :, None], R[:, b, None, :])))
        rhs = F.vmul(batch.onorm(F, x)[:, None, None], G[None, :, :])
        if not (M == rhs).all():
            return False, len(X) * 64
    return True, len(X) * 64


def _random_isotropic(F: FieldSpec, rng: np.random.Generator, n: int) -> np.ndarray:
    out = []
    while sum(len(o) for o in out) < n:
        X = batch.random_elements(F, rng, (4 * F.q * n // 3 + 16, 8))
        out.append(X[batch.onorm(F, X) == 0])
    return np.concatenate(out)[:n]


def octonion_suite(qs: Iterable[int], seed: int = 0, n_random: int = 10**5) -> SuiteReport:
    rep = SuiteReport("octonion", seed)
    for q in qs:
        F = field_of_order(q)
        rng = _rng(seed, "octonion", q)
        ids, iso = _oct_identities(F)
        B = _basis(F)
        if q in (2, 3):
            X = _grid(q, 8)
            for name, (arity, fn) in ids.items():
                if name in ("anti_automorphism", "norm_multiplicative"):
                    # exhaustive over all pairs at q=2 and, for the norm, also at q=3
                    if q == 2 or name == "norm_multiplicative":
                        ok, n = _all_chunks(X, X, fn)
                        how = "all pairs"
                    else:
                        ok, n = _check_x_full(F, fn, arity, X, B)
                        R = batch.random_elements(F, rng, (2, n_random, 8))
                        ok &= bool(fn(R[0], R[1]).all())
                        n += n_random
                        how = "all x with basis y, plus random pairs"
                elif name == "trace_associativity":
                    ok, n = _check_x_full(F, fn, arity, B, B)
                    how = "basis triples"
                else:
                    ok, n = _check_x_full(F, fn, arity, X, B)
                    how = "all x" + ("" if arity == 1 else " with basis y, z")
                rep.add(name, q, ok, n, how)
            I = isotropic_array(F)
            for name, (arity, fn) in iso.items():
                ok, n = _check_x_full(F, fn, arity, I, B)
                rep.add(name, q, ok, n, "all isotropic x with basis y, z")
            continue
        for name, (arity, fn) in ids.items():
            R = batch.random_elements(F, rng, (arity, n_random, 8))
            ok = bool(fn(*R).all())
            n = n_random
            if name == "trace_associativity":
                ok2, n2 = _check_x_full(F, fn, 3, B, B)
                ok, n = ok and ok2, n + n2
            if name == "lemma_x_yx" and q == 5:
                ok2, n2 = _check_x_full(F, fn, arity, _grid(q, 8), B)
                ok, n = ok and ok2, n + n2
            if name == "lemma_trace_xy_zxbar" and q == 5:
                ok2, n2 = _trace_lemma_gram(F, _grid(q, 8))
                ok, n = ok and ok2, n + n2
            rep.add(name, q, ok, n, "random" + (" + x full" if n > n_random + 512 else ""))
        I = _random_isotropic(F, rng, n_random)
        for name, (arity, fn) in iso.items():
            R = batch.random_elements(F, rng, (arity - 1, n_random, 8))
            rep.add(name, q, fn(I, *R), n_random, "random isotropic x")
    return rep


# -- Albert space ------------------------------------------------------------------
def random_white(F: FieldSpec, rng: np.random.Generator, n: int) -> np.ndarray:
    """White vectors: random rank-one c * conj(v)^T v rotated into all three frames,
    plus vectors supported on a single isotropic off-diagonal octonion."""
    c = rng.integers(1, F.q, n)
    X = batch.random_elements(F, rng, (n, 8))
    Y = batch.random_elements(F, rng, (n, 8))
    V = rank_one_vector(F, 1, X, Y)
    V = F.vmul(c[:, None], V)
    r = rng.integers(0, 3, n)
    for t in (1, 2):
        V[r == t] = rotate(V[r == t], t)
    m = n // 8
    if m:
        iso = _random_isotropic(F, rng, m)
        W = np.zeros((m, 27), dtype=np.int64)
        W[:, batch.A_SLICE] = iso
        V[:m] = rotate(W, int(rng.integers(0, 3)))
    return V


def _jtr3(F, X, Y, Z):
    return batch.alb_trace(F, batch.jordan(F, batch.jordan(F, X, Y), Z))


def _polarize(F, f, X, Y, Z):
    """Inclusion-exclusion polarization of a cubic f evaluated rowwise."""
    out = np.zeros(len(X), dtype=np.int64)
    for S, sign in (((X, Y, Z), 1), ((X, Y), -1), ((X, Z), -1), ((Y, Z), -1), ((X,), 1), ((Y,), 1), ((Z,), 1)):
        acc = S[0]
        for T in S[1:]:
            acc = F.vadd(acc, T)
        v = f(acc)
        out = F.vadd(out, v) if sign > 0 else F.vsub(out, v)
    return out


def albert_suite(qs: Iterable[int], seed: int = 0, n_random: int = 10**5, n_jordan: int = 10**4) -> SuiteReport:
    rep = SuiteReport("albert", seed)
    for q in qs:
        F = field_of_order(q)
        rng = _rng(seed, "albert", q)
        P = det_poly(F)
        rep.add("det_has_45_terms", q, len(P) == 45 and P.degree == 3, 1, f"{len(P)} terms")
        if q == 2:
            ag = bitslice.white_agreement_q2()
            rep.add("white_equations_vs_linear_form", q, ag.disagreements == 0, ag.vectors,
                    f"exhaustive, {ag.white_by_equations} white")
        else:
            n_w = n_random // 2
            V = np.concatenate([random_white(F, rng, n_w),
                                batch.random_elements(F, rng, (n_random - n_w, 27))])
            V = V[V.any(axis=1)]
            grads = det_gradient_polys(F)
            zero = np.ones(len(V), dtype=bool)
            for g in grads:
                zero &= g.evaluate_many(V) == 0
            wm = batch.white_mask(F, V)
            rep.add("white_equations_vs_linear_form", q, wm == zero, len(V), f"random, {int(wm.sum())} white")
        X = batch.random_elements(F, rng, (n_random, 27))
        lam = rng.integers(0, q, n_random)
        rep.add("det_cubic_homogeneity", q,
                batch.det(F, F.vmul(lam[:, None], X)) == F.vmul(F.vmul(F.vmul(lam, lam), lam), batch.det(F, X)),
                n_random)
        vals = P.evaluate_many(X[:1000])
        rep.add("det_poly_matches_det", q, vals == batch.det(F, X[:1000]), 1000)
        if F.k == 1:
            rep.add("dickson_certificate", q, dickson_certificate(F).is_zero(), 1, "exact polynomial identity")
        if F.p >= 5:
            X, Y, Z = batch.random_elements(F, rng, (3, n_jordan, 27))
            ch = batch.cayley_hamilton(F, X)
            rep.add("cayley_hamilton", q, ~ch.any(axis=1), n_jordan)
            X2 = batch.jordan(F, X, X)
            t1 = batch.alb_trace(F, X)
            t2 = batch.alb_trace(F, X2)
            t3 = batch.alb_trace(F, batch.jordan(F, X2, X))
            inv = lambda n: F.inv(F.from_int(n))  # noqa: E731
            rhs = F.vmul(inv(3), t3)
            rhs = F.vsub(rhs, F.vmul(inv(2), F.vmul(t2, t1)))
            rhs = F.vadd(rhs, F.vmul(inv(6), F.vmul(F.vmul(t1, t1), t1)))
            rep.add("det_trace_formula", q, rhs == batch.det(F, X), n_jordan)
            t = _jtr3(F, X, Y, Z)
            rep.add("jordan_trace_associative", q,
                    t == batch.alb_trace(F, batch.jordan(F, X, batch.jordan(F, Y, Z))), n_jordan)
            cube = lambda W: batch.alb_trace(F, batch.jordan(F, batch.jordan(F, W, W), W))  # noqa: E731
            s = F.vadd(F.vadd(cube(F.vadd(F.vadd(X, Y), Z)), cube(F.vsub(F.vsub(X, Y), Z))),
                       F.vadd(cube(F.vsub(F.vsub(Y, X), Z)), cube(F.vsub(F.vsub(Z, X), Y))))
            rep.add("trilinear_24t_formula", q, s == F.vmul(F.from_int(24), t), n_jordan)
            rep.add("trilinear_polarization", q, _polarize(F, cube, X, Y, Z) == F.vmul(F.from_int(6), t), n_jordan)
            # polarizing the trace formula for det term by term
            b = lambda U, W: batch.alb_trace(F, batch.jordan(F, U, W))  # noqa: E731
            tx, ty, tz = batch.alb_trace(F, X), batch.alb_trace(F, Y), batch.alb_trace(F, Z)
            mixed = F.vadd(F.vadd(F.vmul(b(X, Y), tz), F.vmul(b(Y, Z), tx)), F.vmul(b(X, Z), ty))
            pdet = F.vadd(F.vsub(F.vmul(F.from_int(2), t), mixed), F.vmul(F.vmul(tx, ty), tz))
            pol = _polarize(F, lambda W: batch.det(F, W), X, Y, Z)
            rep.add("det_polarization_vs_jordan_trace", q, pol == pdet, n_jordan)
    return rep


def dickson_suite(primes: Iterable[int] = (2, 3, 5, 101)) -> SuiteReport:
    rep = SuiteReport("dickson", 0)
    for p in primes:
        rep.add("dickson_certificate", p, dickson_certificate(field_make(p)).is_zero(), 1, "exact polynomial identity")
    return rep


# -- generators --------------------------------------------------------------------
def long_root_element(F: FieldSpec, lam: int) -> group.LinearOp27:
    one = Octonion.one(F)
    em1 = Octonion.basis(F, 5)
    ewb = Octonion.basis(F, 3, lam)
    us = (one + em1, one - ewb, one - em1 + ewb)
    return group.compose(*(group.make_generator(group.Diagonal(u, 3)) for u in us))


def generators_suite(qs: Iterable[int], seed: int = 0, n_random: int = 64) -> SuiteReport:
    rep = SuiteReport("generators", seed)
    for q in qs:
        F = field_of_order(q)
        rng = _rng(seed, "generators", q)
        for name in ("standard", "stabilizer", "f4"):
            ops = group.generator_set(F, name).ops
            bad = [op.label for op in ops if not group.preserves_det(op)]
            rep.add(f"preserves_det_{name}", q, not bad, len(ops), ", ".join(bad[:3]))
        scal = []
        for lam in range(1, q):
            cube_one = F.pow(lam, 3) == 1
            scal.append(group.preserves_det(group.LinearOp27.scalar(F, lam)) == cube_one)
        rep.add("scalar_iff_cube_root_of_unity", q, scal, q - 1)
        ok, n = True, 0
        for pos in group.POSITIONS:
            for _ in range(max(1, n_random // 6)):
                x = Octonion(F, rng.integers(0, q, 8).tolist())
                y = Octonion(F, rng.integers(0, q, 8).tolist())
                Mx, My, Mxy = (group.make_generator(group.Transvection(pos, z)) for z in (x, y, x + y))
                ok &= group.compose(Mx, My) == Mxy
                n += 1
        rep.add("transvection_additive", q, ok, n)
        fam = [group.make_generator(group.Transvection(pos, Octonion.basis(F, i)))
               for pos in ((1, 2), (1, 3)) for i in range(8)]
        comm = [group.compose(a, b) == group.compose(b, a) for k, a in enumerate(fam) for b in fam[k + 1 :]]
        rep.add("q16_family_commutes", q, comm, len(comm))
        kinds = group.f4_kinds(F)
        f4_ok = [group.fixes_identity(group.make_generator(k)) and group.duality_fixed(k.matrix()) for k in kinds]
        rep.add("f4_fixes_identity_and_duality", q, f4_ok, len(kinds))
        lr = []
        for lam in range(1, q):
            g = long_root_element(F, lam)
            lr.append(not g.is_identity() and group.fixes_identity(g) and group.preserves_det(g))
        rep.add("long_root_product", q, lr, q - 1)
    return rep


# -- twisted group -----------------------------------------------------------------
def emerald_fixture(F: FieldSpec) -> AlbertVector:
    return AlbertVector.make(F, A=Octonion.basis(F, 1))


def _random_word(ops, rng, length: int):
    return [ops[int(i)] for i in rng.integers(0, len(ops), length)]


def twisted_suite(qs: Iterable[int], seed: int = 0, n_vectors: int = 100, n_words: int = 1000,
                  word_length: int = 3) -> SuiteReport:
    rep = SuiteReport("twisted", seed)
    for q in qs:
        F = quadratic_extension(q)
        rng = _rng(seed, "twisted", q)
        kinds = group.twisted_kinds(F)
        unitary = [group.is_twisted_unitary(k.matrix()) for k in kinds]
        rep.add("twisted_unitary", q, unitary, len(kinds))
        ops = [group.make_generator(k) for k in kinds]
        rep.add("twisted_preserve_h1", q, [group.preserves_form(op) for op in ops], len(ops), "all basis pairs")
        rep.add("twisted_preserve_det", q, [group.preserves_det(op) for op in ops], len(ops))
        small = field_of_order(q)
        f4 = [group.make_generator(group.base_extend(k, F)) for k in group.f4_kinds(small)]
        rep.add("f4_preserves_h1", q, [group.preserves_form(op) for op in f4], len(f4))

        gens = group.GeneratorSet("twisted", ops).with_inverses()
        V = random_white(F, rng, n_vectors)
        V = V[V.any(axis=1)]
        types = [twoE6_point_type(AlbertVector(F, v)) for v in V]
        invariant, emeralds = True, [emerald_fixture(F)]
        for w in range(n_words):
            k = w % len(V)
            x = V[k]
            for g in _random_word(gens, rng, word_length):
                x = g.apply(x)
            t = twoE6_point_type(AlbertVector(F, x))
            invariant &= t == types[k]
            if t is TwoE6PointType.EMERALD and len(emeralds) < 8:
                emeralds.append(AlbertVector(F, x))
        emeralds += [AlbertVector(F, v) for v, t in zip(V, types) if t is TwoE6PointType.EMERALD]
        rep.add("point_type_invariant", q, invariant, n_words, f"{len(V)} vectors, words of length {word_length}")
        fixture_type = twoE6_point_type(emerald_fixture(F))
        note = " (char 2: 17-space is the polar kernel cut by sqrt(Q_v))" if F.p == 2 else ""
        rep.add("fixture_type", q, fixture_type is TwoE6PointType.EMERALD, 1,
                f"(0,0,0|e1,0,0) is {fixture_type.value}{note}")
        dims = sorted({len(h1_radical(v)[1]) for v in emeralds})
        rep.add("emerald_radical_is_span_v", q, dims == [1], len(emeralds),
                f"radical dimensions found: {dims}")
        counts = {t.value: sum(1 for s in types if s is t) for t in TwoE6PointType}
        rep.add("sample_type_counts", q, True, len(types), ", ".join(f"{k} {v}" for k, v in counts.items()))
    return rep


SUITES: dict[str, Callable[..., SuiteReport]] = {
    "field": field_suite,
    "octonion": octonion_suite,
    "albert": albert_suite,
    "generators": generators_suite,
    "twisted": twisted_suite,
}


def run_suite(name: str, qs: Iterable[int] | None = None, seed: int = 0, **kw) -> SuiteReport:
    if name == "dickson":
        return dickson_suite(**kw)
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}")
    t0 = time.perf_counter()
    rep = SUITES[name](tuple(qs) if qs else DEFAULT_QS[name], seed=seed, **kw)
    rep.elapsed = time.perf_counter() - t0
    return rep
