"""Acceptance criteria 1-11, one or more tests each (see the summary section)."""

from __future__ import annotations

import time

import numpy as np
import pytest

from albert_forge import group, linalg
from albert_forge.albert import AlbertVector, coord
from albert_forge.gf import field_of_order
from albert_forge.group import LinearOp27, generator_set, make_generator, preserves_det
from albert_forge.orbits import canonical_point, formulas, orbit_bfs, order_identities
from albert_forge.orbits.bfs import closure_spot_check
from albert_forge.orbits.census import brute_force_color_census, structured_white_enumeration, white_by_trace
from albert_forge.orbits.subspaces import is_maximal, pure_white, pure_white_subspaces, span_vectors, w10_form, w10_space
from albert_forge import batch
from albert_forge.suites import albert_suite, dickson_suite, generators_suite, octonion_suite, twisted_suite

F2 = field_of_order(2)


def _white_formula(q: int) -> int:
    return (q**9 - 1) * (q**8 + q**4 + 1)


def _check_names(rep, names):
    seen = {c.name for c in rep.checks}
    missing = set(names) - seen
    assert not missing, missing
    assert rep.ok, [(c.name, c.q, c.detail) for c in rep.failures()]


@pytest.mark.criterion(1)
def test_c1_brute_force_census():
    t0 = time.perf_counter()
    rep = brute_force_color_census(2)
    elapsed = time.perf_counter() - t0
    assert rep.white == 139503 == _white_formula(2)
    assert rep.white + rep.grey + rep.black == 2**27 - 1
    assert rep.diagonal_white == 3
    assert elapsed <= 300


@pytest.mark.criterion(2)
def test_c2_structured_q2():
    res = structured_white_enumeration(2)
    assert [r.count for r in res] == [14400, 48960, 55488, 14175, 6075, 405]
    assert sum(r.count for r in res) == 139503


@pytest.mark.criterion(2)
def test_c2_structured_q3():
    t0 = time.perf_counter()
    res = structured_white_enumeration(3)
    assert [r.count for r in res] == [37324800, 58086720, 30132486, 4659200, 537600, 6720]
    assert [r.count for r in res] == formulas.structured_case_counts(3)
    assert sum(r.count for r in res) == 130747526 == _white_formula(3)
    assert time.perf_counter() - t0 <= 600


@pytest.mark.criterion(3)
def test_c3_octonion_identities():
    t0 = time.perf_counter()
    rep = octonion_suite((2, 3, 4, 5, 8, 9), seed=0, n_random=10**5)
    assert time.perf_counter() - t0 <= 120
    _check_names(rep, ["anti_automorphism", "trace_associativity", "norm_multiplicative", "moufang_left",
                       "moufang_middle", "moufang_right", "lemma_x_yx", "lemma_trace_xy_zxbar"])
    for c in rep.checks:
        if c.q in (4, 5, 8, 9) and "random" in c.detail:
            assert c.instances >= 10**5, c
        if c.q in (2, 3):
            # exhaustive: every x (or pair), basis vectors for the multilinear slots
            assert c.detail.startswith(("all ", "basis ")), c


@pytest.mark.criterion(4)
def test_c4_generator_certificates():
    rep = generators_suite((2, 3, 4, 5))
    _check_names(rep, ["preserves_det_standard", "preserves_det_stabilizer", "preserves_det_f4",
                       "scalar_iff_cube_root_of_unity"])


@pytest.mark.criterion(4)
@pytest.mark.parametrize("q2", [4, 9])
def test_c4_twisted_certificates(q2):
    F = field_of_order(q2)
    kinds = group.twisted_kinds(F)
    assert kinds
    assert all(preserves_det(make_generator(k)) for k in kinds)


@pytest.mark.criterion(4)
@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_c4_scalar_iff_cube_root(q):
    F = field_of_order(q)
    for lam in range(1, q):
        cube = F.mul(lam, F.mul(lam, lam))
        assert preserves_det(LinearOp27.scalar(F, lam)) == (cube == 1)


@pytest.mark.criterion(5)
def test_c5_cayley_hamilton_and_trace_formula():
    rep = albert_suite((5, 7), seed=0, n_random=10**3, n_jordan=10**4)
    _check_names(rep, ["cayley_hamilton", "det_trace_formula"])
    for c in rep.checks:
        if c.name in ("cayley_hamilton", "det_trace_formula"):
            assert c.instances == 10**4


@pytest.mark.criterion(6)
def test_c6_dickson_equivalence():
    rep = dickson_suite((2, 3, 5, 101))
    assert [c.q for c in rep.checks] == [2, 3, 5, 101]
    assert rep.ok


@pytest.mark.criterion(7)
def test_c7_orbit_transitivity():
    t0 = time.perf_counter()
    gens = generator_set(F2, "standard").ops
    assert len(gens) == 50
    full = orbit_bfs(gens, canonical_point(AlbertVector.make(F2, 1)), descriptor="standard")
    assert full.size == 139503 and not full.truncated
    assert closure_spot_check(gens, full, 10**4, np.random.default_rng(0))

    stab = generator_set(F2, "stabilizer").ops
    e1 = AlbertVector.make(F2, 1)
    for op in stab:
        assert canonical_point(op.apply(e1)) == canonical_point(e1)
    near = orbit_bfs(stab, canonical_point(AlbertVector.unit(F2, coord("B", 5))), descriptor="stabilizer")
    far = orbit_bfs(stab, canonical_point(AlbertVector.make(F2, 0, 1)), descriptor="stabilizer")
    assert (near.size, far.size) == (4590, 134912)
    assert 1 + near.size + far.size == full.size
    assert time.perf_counter() - t0 <= 180


@pytest.mark.criterion(8)
def test_c8_idempotent_bookkeeping(white_q2):
    tr = white_q2[:, 0] ^ white_q2[:, 1] ^ white_q2[:, 2]
    idem, zero = int((tr == 1).sum()), int((tr == 0).sum())
    q = 2
    assert idem == 69888 == q**8 * (q**8 + q**4 + 1)
    assert zero == 69615 == (q**12 - 1) * (q**4 + 1)
    assert (q - 1) * idem + zero == 139503
    assert white_by_trace(structured_white_enumeration(2)) == {0: zero, 1: idem}


@pytest.mark.criterion(9)
@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_c9_order_identities(q):
    rep = order_identities(q)
    assert rep["ok"], rep["checks"]
    assert sum(formulas.twisted_orbit_lengths(q)) == (q**18 - 1) * (q**16 + q**8 + 1) // (q**2 - 1)


@pytest.mark.criterion(9)
def test_c9_f4_order_q2():
    assert formulas.order_F4(2) == 3311126603366400


@pytest.mark.criterion(10)
def test_c10_pure_white_subspaces(white_q2):
    t0 = time.perf_counter()
    W = pure_white_subspaces()
    dims = {"W1": 1, "W2": 2, "W3": 3, "W4": 4, "W5": 5, "W5'": 5, "W6": 6}
    for name, basis in W.items():
        assert linalg.rank(F2, basis) == dims[name], name
        assert pure_white(F2, basis), name
    assert is_maximal(F2, W["W5"], white_q2)
    assert is_maximal(F2, W["W6"], white_q2)
    for name in ("W1", "W2", "W3", "W4", "W5'"):
        assert not is_maximal(F2, W[name], white_q2), name
    assert time.perf_counter() - t0 <= 300


@pytest.mark.criterion(10)
def test_c10_w10_dichotomy():
    pts = span_vectors(F2, w10_space(AlbertVector.make(F2, 1)))[1:]
    isotropic = w10_form(F2, pts) == 0
    colors = batch.colors(F2, pts)
    white = batch.white_mask(F2, pts)
    assert (white == isotropic).all()
    grey_code = batch.colors(F2, AlbertVector.make(F2, 1, 1).array()[None, :])[0]
    assert (colors[~isotropic] == grey_code).all()


@pytest.fixture(scope="module")
def twisted_report():
    return twisted_suite((2,), seed=0, n_vectors=100, n_words=1000)


@pytest.mark.criterion(11)
def test_c11_twisted_generators_and_invariance(twisted_report):
    by = {c.name: c for c in twisted_report.checks}
    for name in ("twisted_unitary", "twisted_preserve_h1", "twisted_preserve_det", "point_type_invariant",
                 "fixture_type"):
        assert by[name].passed, by[name]
    assert by["point_type_invariant"].instances == 1000


@pytest.mark.criterion(11)
@pytest.mark.xfail(strict=True, reason="ledgered: the H1 radical on the 17-space of an emerald point is 9-dimensional")
def test_c11_emerald_radical_is_span_v(twisted_report):
    by = {c.name: c for c in twisted_report.checks}
    assert by["emerald_radical_is_span_v"].passed, by["emerald_radical_is_span_v"].detail
