from __future__ import annotations

import numpy as np
import pytest

from albert_forge import batch, linalg
from albert_forge.albert import AlbertVector, Color, classify_color, coord
from albert_forge.gf import FieldError, field_of_order
from albert_forge.group import generator_set
from albert_forge.octonion import all_octonions, isotropic_array
from albert_forge.orbits import (
    BudgetExceeded, LineType, TwoE6PointType, canonical_point, closed_form_counts, line_type, orbit_bfs,
    order_identities, pure_white, pure_white_subspaces, seventeen_space, structured_white_enumeration,
    twoE6_point_type, w10_space,
)
from albert_forge.orbits import formulas
from albert_forge.orbits.bfs import closure_spot_check
from albert_forge.orbits.census import brute_force_color_census, diagonal_census, white_by_trace
from albert_forge.orbits.lines import NotWhiteError, partner_types
from albert_forge.orbits.points import canonicalize, keys_to_vectors, point_keys
from albert_forge.orbits.subspaces import extensions, span_vectors, w10_form
from albert_forge.orbits.twisted import h1_radical
from albert_forge.suites import random_white

F2, F3, F4 = field_of_order(2), field_of_order(3), field_of_order(4)


def unit(F, i):
    return AlbertVector.unit(F, i)


# -- closed forms (frozen oracle values, computed by hand from the products) ---------
def test_closed_forms_q2():
    c = closed_form_counts(2)
    assert c["white_vectors"] == 511 * 273 == 139503
    assert c["white_points"] == 139503
    assert c["suborbits"] == [1, 4590, 134912]
    assert c["primitive_idempotents"] == 256 * 273 == 69888
    assert c["trace_zero_white"] == 4095 * 17 == 69615
    assert c["structured_cases"] == [14400, 48960, 55488, 14175, 6075, 405]
    assert c["order_F4"] == 3311126603366400
    assert c["twisted_orbits"] == [23108085, 2666532960, 3059417088]


def test_closed_forms_q3():
    c = closed_form_counts(3)
    assert c["structured_cases"] == [37324800, 58086720, 30132486, 4659200, 537600, 6720]
    assert sum(c["structured_cases"]) == 130747526 == (3**9 - 1) * (3**8 + 3**4 + 1)
    assert c["white_points"] * 2 == c["white_vectors"]


def test_order_se6_q2_literal():
    q = 2
    expect = q**36 * (q**12 - 1) * (q**9 - 1) * (q**8 - 1) * (q**6 - 1) * (q**5 - 1) * (q**2 - 1)
    assert formulas.order_SE6(2) == expect
    # exact big integers: q=3 needs 124 bits, q=4 already exceeds 128
    assert [formulas.order_SE6(q).bit_length() for q in (2, 3, 4)] == [78, 124, 156]


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_order_identities(q):
    rep = order_identities(q)
    assert rep["ok"], rep["checks"]


def test_formula_domain():
    with pytest.raises(ValueError):
        closed_form_counts(1)
    with pytest.raises(ValueError):
        closed_form_counts(6)


# -- census ----------------------------------------------------------------------
def test_diagonal_census():
    assert diagonal_census(F2) == 3


def test_structured_matches_closed_form():
    res = structured_white_enumeration(2)
    assert [r.count for r in res] == closed_form_counts(2)["structured_cases"]
    assert white_by_trace(res) == {0: 69615, 1: 69888}


def test_census_budget():
    with pytest.raises(BudgetExceeded):
        brute_force_color_census(3, max_vectors=10**6)


def test_white_q2_split_by_trace(white_q2):
    assert len(white_q2) == 139503
    tr = white_q2[:, 0] ^ white_q2[:, 1] ^ white_q2[:, 2]
    assert int((tr == 1).sum()) == 69888 and int((tr == 0).sum()) == 69615
    assert batch.white_mask(F2, white_q2).all()


def test_ab_zero_counts_q2():
    iso = isotropic_array(F2)
    iso = iso[iso.any(1)]
    octs = all_octonions(F2)
    octs = octs[octs.any(1)]
    for A in iso[::9]:
        Bs = iso[~batch.omul(F2, np.broadcast_to(A, iso.shape), iso).any(1)]
        assert len(Bs) == 15
        for B in Bs[::5]:
            bc = batch.omul(F2, np.broadcast_to(B, octs.shape), octs).any(1)
            ca = batch.omul(F2, octs, np.broadcast_to(A, octs.shape)).any(1)
            assert int((~bc & ~ca).sum()) == 7


# -- projective points -------------------------------------------------------------
def test_canonical_point():
    p = canonical_point(AlbertVector.make(F3, 0, 2))
    assert p.vector() == AlbertVector.make(F3, 0, 1)
    assert canonical_point(p.vector()) == p
    rng = np.random.default_rng(0)
    w = AlbertVector.from_array(F3, random_white(F3, rng, 1)[0])
    assert canonical_point(w) == canonical_point(w.scale(2))
    assert canonical_point(AlbertVector.make(F3, 0, 1)) == canonical_point(AlbertVector.make(F3, 0, 2))
    with pytest.raises(ValueError):
        canonical_point(AlbertVector.zero(F3))


@pytest.mark.parametrize("q", [2, 4, 5, 9])
def test_point_keys_roundtrip(q):
    F = field_of_order(q)
    V = np.random.default_rng(q).integers(0, q, (50, 27))
    V = V[V.any(1)]
    C = canonicalize(F, V)
    assert (keys_to_vectors(F, point_keys(F, C)) == C).all()
    assert (canonicalize(F, C) == C).all()
    p = canonical_point(AlbertVector.from_array(F, V[0]))
    assert type(p).unpack(F, p.pack()) == p


# -- BFS -------------------------------------------------------------------------------
def test_empty_generators():
    rep = orbit_bfs([], canonical_point(unit(F2, 0)))
    assert rep.size == 1 and not rep.truncated


def test_bfs_truncation_and_closure():
    gens = generator_set(F2, "standard").ops
    rep = orbit_bfs(gens, canonical_point(unit(F2, 0)), limit=500)
    assert rep.truncated and rep.size == 500
    small = orbit_bfs(gens[-2:], canonical_point(unit(F2, 0)))
    assert small.size == 3
    assert closure_spot_check(gens[-2:], small, 50, np.random.default_rng(0))


def test_bfs_deterministic():
    gens = generator_set(F2, "standard").ops
    a = orbit_bfs(gens, canonical_point(unit(F2, 0)), limit=3000)
    b = orbit_bfs(gens, canonical_point(unit(F2, 0)), limit=3000)
    assert a.levels == b.levels and (a.keys == b.keys).all()


# -- lines -----------------------------------------------------------------------------
def test_line_types():
    E1, E2 = unit(F2, 0), unit(F2, 1)
    Bm1 = unit(F2, coord("B", 5))
    assert line_type(E1, Bm1) is LineType.ALL_WHITE
    assert line_type(canonical_point(E1), canonical_point(E2)) is LineType.TWO_WHITE
    with pytest.raises(NotWhiteError):
        line_type(E1, E1 + E2)
    with pytest.raises(ValueError):
        line_type(E1, E1)


def test_partner_types_q2(white_q2):
    assert partner_types(F2, unit(F2, 0).array(), white_q2) == {"self": 1, "AllWhite": 4590, "TwoWhite": 134912}


# -- pure white subspaces -------------------------------------------------------------
def test_pure_white_representatives_q3():
    for name, B in pure_white_subspaces().items():
        assert linalg.rank(F3, B) == len(B) == int(name[1])
        assert pure_white(F3, B), name


def test_span_e1_e2_not_pure_white():
    assert not pure_white(F2, np.array([unit(F2, 0).array(), unit(F2, 1).array()]))
    with pytest.raises(BudgetExceeded):
        span_vectors(F4, np.eye(27, dtype=np.int64)[:9])


def test_extensions_of_w4_q2(white_q2):
    W = pure_white_subspaces()
    assert len(extensions(F2, W["W4"], white_q2)) == 64
    assert len(extensions(F2, W["W5'"], white_q2)) == 32


# -- 17-space, W10 and twisted types ----------------------------------------------------
def test_seventeen_space_of_e1():
    for F in (F2, F3, F4):
        S = seventeen_space(unit(F, 0))
        expected = [0] + list(range(coord("B", 0), 27))
        R = linalg.row_space(F, S)
        assert len(R) == 17
        assert sorted(np.nonzero(R.any(0))[0].tolist()) == expected


@pytest.mark.parametrize("q", [2, 3])
def test_seventeen_space_dimension_sampled(q):
    F = field_of_order(q)
    rng = np.random.default_rng(q)
    for w in random_white(F, rng, 25):
        if w.any():
            v = AlbertVector.from_array(F, w)
            S = seventeen_space(v)
            assert len(S) == 17
            assert linalg.rank(F, np.vstack([S, w[None, :]])) == 17


def test_seventeen_space_rejects_grey():
    with pytest.raises(NotWhiteError):
        seventeen_space(AlbertVector.make(F3, 1, 1))


def test_w10_dichotomy_q2():
    V = w10_space(unit(F2, 0))
    pts = span_vectors(F2, V)[1:]
    form = w10_form(F2, pts)
    col = batch.colors(F2, pts)
    white = batch.white_mask(F2, pts)
    assert (white == (form == 0)).all()
    grey = [classify_color(AlbertVector.from_array(F2, p)) for p in pts[form != 0][:20]]
    assert all(c is Color.GREY for c in grey)
    assert len(np.unique(col[form != 0])) == 1
    assert linalg.rank(F2, np.vstack([V, unit(F2, 0).array()])) == 10


def test_w10_other_slot():
    V = w10_space(unit(F3, 1))
    assert linalg.rank(F3, np.vstack([V, unit(F3, 1).array()])) == 10
    with pytest.raises(ValueError):
        w10_space(unit(F3, coord("B", 5)))


def test_twisted_point_types():
    assert twoE6_point_type(unit(F4, 0)) is TwoE6PointType.NON_ISOTROPIC
    assert twoE6_point_type(unit(F4, coord("A", 1))) is TwoE6PointType.EMERALD
    assert twoE6_point_type(unit(F4, coord("A", 1)), "Aschbacher") in set(TwoE6PointType)
    with pytest.raises(FieldError):
        twoE6_point_type(unit(F3, 0))
    with pytest.raises(NotWhiteError):
        twoE6_point_type(AlbertVector.make(F4, 1, 1))


def test_emerald_radical_contains_v():
    v = unit(F4, coord("A", 1))
    S, R = h1_radical(v)
    assert len(S) == 17
    assert linalg.rank(F4, np.vstack([R, v.array()[None, :]])) == len(R)


@pytest.mark.parametrize("case", [1, 2, 3, 4, 5, 6])
def test_white_vector_stream_q2(case):
    from albert_forge.orbits.census import white_vector_stream

    V = np.concatenate(list(white_vector_stream(2, case)))
    assert len(V) == formulas.structured_case_counts(2)[case - 1]
    assert batch.white_mask(F2, V).all() and V.any(axis=1).all()
    assert len(np.unique(point_keys(F2, V))) == len(V)


def test_structured_budget():
    with pytest.raises(BudgetExceeded):
        structured_white_enumeration(4, case=4)
