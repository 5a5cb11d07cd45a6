from __future__ import annotations

import numpy as np
import pytest

from albert_forge.gf import field_of_order
from albert_forge.poly import CubicPoly27, poly_sum, poly_vars


def _rand_poly(F, rng, nvars=5, terms=12):
    t = {}
    for _ in range(terms):
        d = int(rng.integers(0, 4))
        t[tuple(int(v) for v in rng.integers(0, nvars, d))] = int(rng.integers(0, F.q))
    return CubicPoly27(F, t, nvars)


def test_arithmetic_and_normalization():
    F = field_of_order(3)
    x = poly_vars(F, 3)
    p = x[0] * x[1] + x[1] * x[0]
    assert p.terms == {(0, 1): 2}
    assert (p + p + p).is_zero()
    assert (x[0] - x[0]).is_zero()
    assert (x[0] * x[0] * x[2]).terms == {(0, 0, 2): 1}
    assert p.degree == 2 and CubicPoly27.zero(F, 3).degree == -1


def test_degree_cap():
    F = field_of_order(2)
    x = poly_vars(F, 2)
    with pytest.raises(ValueError):
        (x[0] * x[0]) * (x[1] * x[1])
    with pytest.raises(ValueError):
        CubicPoly27(F, {(0, 0, 0, 0): 1}, 2)
    with pytest.raises(ValueError):
        CubicPoly27(F, {(5,): 1}, 2)


def test_ring_mismatch():
    with pytest.raises(ValueError):
        poly_vars(field_of_order(2), 3)[0] + poly_vars(field_of_order(3), 3)[0]


def test_evaluate_many_matches_evaluate():
    F = field_of_order(4)
    rng = np.random.default_rng(0)
    p = _rand_poly(F, rng)
    pts = rng.integers(0, 4, (40, 5))
    assert p.evaluate_many(pts).tolist() == [p.evaluate(r) for r in pts]


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_substitute_matches_pointwise(q):
    F = field_of_order(q)
    rng = np.random.default_rng(q)
    p = _rand_poly(F, rng, nvars=5, terms=20)
    G = rng.integers(0, q, (5, 4))
    s = p.substitute(G)
    for y in rng.integers(0, q, (30, 4)):
        x = [0] * 5
        for i in range(5):
            acc = 0
            for j in range(4):
                acc = F.add(acc, F.mul(int(G[i, j]), int(y[j])))
            x[i] = acc
        assert s.evaluate(y) == p.evaluate(x)


def test_shift_matches_pointwise():
    F = field_of_order(5)
    rng = np.random.default_rng(1)
    p = _rand_poly(F, rng)
    w = rng.integers(0, 5, 5)
    s = p.shift(w)
    for x in rng.integers(0, 5, (30, 5)):
        assert s.evaluate(x) == p.evaluate(F.vadd(w, x))


def test_homogeneous_parts_and_sum():
    F = field_of_order(7)
    rng = np.random.default_rng(2)
    p = _rand_poly(F, rng)
    assert poly_sum(F, (p.homogeneous(d) for d in range(4)), 5) == p


def test_json_roundtrip_and_order():
    F = field_of_order(9)
    rng = np.random.default_rng(3)
    p = _rand_poly(F, rng)
    assert CubicPoly27.from_json(p.to_json()) == p
    degs = [len(m) for m, _ in p.sorted_terms()]
    assert degs == sorted(degs)
