from __future__ import annotations

import numpy as np
import pytest

from albert_forge import group
from albert_forge.albert import AlbertVector, alb_det
from albert_forge.gf import FieldError, field_of_order
from albert_forge.group import (
    ConstraintError, Diagonal, F4Rotation, LinearOp27, OctMatrix3, Transvection, TwistedTorus,
    TwistedTransvection, compose, generator_set, make_generator, preserves_det, preserves_form,
)
from albert_forge.octonion import Octonion
from albert_forge.suites import generators_suite, long_root_element


def to_matrix(X: AlbertVector) -> OctMatrix3:
    F = X.spec
    s = lambda v: Octonion.scalar(F, v)  # noqa: E731
    a, b, c = X.v[:3]
    A, B, C = X.A, X.B, X.C
    return OctMatrix3(F, [[s(a), C, B.conj()], [C.conj(), s(b), A], [B, A.conj(), s(c)]])


def from_matrix(M: OctMatrix3) -> AlbertVector:
    F = M.spec
    for i in range(3):
        assert all(v == 0 for v in M[i, i].c[1:4] + M[i, i].c[5:])
        assert M[i, i].c[0] == M[i, i].c[4]
    return AlbertVector.make(F, M[0, 0].c[0], M[1, 1].c[0], M[2, 2].c[0], M[1, 2], M[2, 0], M[0, 1])


def act_oracle(M: OctMatrix3, X: AlbertVector) -> AlbertVector:
    left = (M.conj_transpose() @ to_matrix(X)) @ M
    right = M.conj_transpose() @ (to_matrix(X) @ M)
    assert left == right
    return from_matrix(left)


@pytest.mark.parametrize("q", [2, 3, 4])
def test_action_matches_matrix_product(q):
    F = field_of_order(q)
    rng = np.random.default_rng(q)
    kinds = group.standard_kinds(F) + group.stabilizer_kinds(F)[-19:]
    for kind in kinds[:: max(1, len(kinds) // 20)]:
        op = make_generator(kind)
        for _ in range(3):
            X = AlbertVector(F, rng.integers(0, q, 27).tolist())
            assert op.apply(X) == act_oracle(kind.matrix(), X)


def test_matrix_layout_roundtrip():
    F = field_of_order(3)
    X = AlbertVector(F, np.random.default_rng(0).integers(0, 3, 27).tolist())
    assert from_matrix(to_matrix(X)) == X


@pytest.mark.parametrize("q", [2, 3])
def test_certificate_agrees_with_pointwise_det(q):
    F = field_of_order(q)
    rng = np.random.default_rng(q)
    for op in generator_set(F, "f4").ops[:10]:
        assert preserves_det(op)
        for _ in range(5):
            X = AlbertVector(F, rng.integers(0, q, 27).tolist())
            assert alb_det(op.apply(X)) == alb_det(X)


@pytest.mark.parametrize("q, cubes", [(4, {1, 2, 3}), (7, {1, 2, 4}), (5, {1})])
def test_scalar_preserves_iff_cube_root_of_unity(q, cubes):
    F = field_of_order(q)
    got = {lam for lam in range(1, q) if preserves_det(LinearOp27.scalar(F, lam))}
    assert got == cubes
    assert got == {lam for lam in range(1, q) if F.mul(lam, F.mul(lam, lam)) == 1}


def test_non_preserving_operator_is_rejected():
    F = field_of_order(3)
    m = np.eye(27, dtype=np.int64)
    m[0, 1] = 1
    assert not preserves_det(LinearOp27(F, m))


@pytest.mark.parametrize("q", [3, 4])
def test_transvections_additive(q):
    F = field_of_order(q)
    rng = np.random.default_rng(q)
    for pos in group.POSITIONS:
        x = Octonion(F, rng.integers(0, q, 8).tolist())
        y = Octonion(F, rng.integers(0, q, 8).tolist())
        lhs = compose(make_generator(Transvection(pos, x)), make_generator(Transvection(pos, y)))
        assert lhs == make_generator(Transvection(pos, x + y))
    assert make_generator(Transvection((1, 2), Octonion.zero(F))).is_identity()


def test_compose_order_and_inverse():
    F = field_of_order(3)
    g, h = generator_set(F, "standard").ops[:2]
    X = AlbertVector(F, np.random.default_rng(1).integers(0, 3, 27).tolist())
    assert compose(g, h).apply(X) == h.apply(g.apply(X))
    assert compose(g, g.inverse()).is_identity()
    cyc = make_generator(group.CyclicPerm(F))
    assert cyc.order() == 3
    assert LinearOp27.from_json(g.to_json()) == g


def test_permutations_move_coordinates():
    F = field_of_order(5)
    X = AlbertVector.make(F, 1, 2, 3)
    assert make_generator(group.CyclicPerm(F)).apply(X) in {AlbertVector.make(F, 3, 1, 2), AlbertVector.make(F, 2, 3, 1)}
    assert make_generator(group.SwapPerm(F)).apply(X) == AlbertVector.make(F, 1, 3, 2)


def test_constraints():
    F = field_of_order(3)
    e1 = Octonion.basis(F, 1)
    with pytest.raises(ConstraintError):
        Diagonal(e1, 3).matrix()
    with pytest.raises(ConstraintError):
        F4Rotation((1, 2), Octonion.one(F)).matrix()
    with pytest.raises(ConstraintError):
        Transvection((1, 1), e1).matrix()
    with pytest.raises(ConstraintError):
        TwistedTransvection((1, 2), e1).matrix()
    F4 = field_of_order(4)
    with pytest.raises(ConstraintError):
        TwistedTorus(F4, 1).matrix()
    with pytest.raises(ValueError):
        generator_set(F, "nope")


@pytest.mark.parametrize("q", [2, 3])
def test_f4_fixes_identity_and_duality(q):
    F = field_of_order(q)
    for kind in group.f4_kinds(F):
        M = kind.matrix()
        assert group.fixes_identity(make_generator(kind))
        assert group.duality_fixed(M)
    assert not group.duality_fixed(Transvection((1, 2), Octonion.basis(F, 1)).matrix())


@pytest.mark.parametrize("q2", [4, 9])
def test_twisted_generators(q2):
    F = field_of_order(q2)
    kinds = group.twisted_kinds(F)
    assert any(isinstance(k, TwistedTorus) for k in kinds)
    for kind in kinds:
        M = kind.matrix()
        op = make_generator(kind)
        assert group.is_twisted_unitary(M)
        assert preserves_form(op, "H1")
        assert preserves_det(op)


def test_twisted_needs_quadratic_field():
    with pytest.raises(FieldError):
        group.twisted_kinds(field_of_order(3))
    with pytest.raises(FieldError):
        preserves_form(LinearOp27.identity(field_of_order(5)))


def test_untwisted_transvection_breaks_h1():
    F = field_of_order(4)
    op = make_generator(Transvection((1, 2), Octonion.basis(F, 1)))
    assert preserves_det(op) and not preserves_form(op, "H1")


def test_gram_matrix_hermitian():
    F = field_of_order(9)
    S = group.gram_matrix(F)
    assert (S == S.T).all() and (F.conj_table[S] == S).all()
    assert (group.gram_matrix(F, "Aschbacher") == np.eye(27, dtype=np.int64)).all()


@pytest.mark.parametrize("q", [2, 3, 5])
def test_long_root_element(q):
    F = field_of_order(q)
    for lam in range(1, q):
        op = long_root_element(F, lam)
        assert not op.is_identity()
        assert group.fixes_identity(op) and preserves_det(op)


def test_generators_suite_small():
    rep = generators_suite((2, 3), seed=1)
    assert rep.ok, rep.failures()
