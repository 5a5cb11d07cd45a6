from __future__ import annotations

import numpy as np
import pytest

from albert_forge.gf import (
    FieldElement,
    FieldError,
    conj_q,
    embed,
    field_arith,
    field_make,
    field_of_order,
    least_irreducible,
    quadratic_extension,
)
from albert_forge.suites import field_suite

PRIME_POWERS_TO_64 = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32, 37, 41, 43, 47, 49, 53,
                      59, 61, 64]


def test_field_axioms_exhaustive_up_to_64():
    rep = field_suite(PRIME_POWERS_TO_64)
    assert rep.ok, rep.failures()
    assert {c.q for c in rep.checks} == set(PRIME_POWERS_TO_64)


def test_least_irreducible_moduli():
    # constant term first, compared from the constant term up
    assert least_irreducible(2, 2) == (1, 1, 1)  # x^2 + x + 1
    assert least_irreducible(2, 3) == (1, 0, 1, 1)  # x^3 + x^2 + 1 precedes x^3 + x + 1
    assert least_irreducible(3, 2) == (1, 0, 1)  # x^2 + 1, as -1 is a non-square mod 3
    assert least_irreducible(5, 2) == (1, 1, 1)  # x^2 + 1 splits mod 5, x^2 + x + 1 does not


def test_f4_tables():
    F = field_make(2, 2)
    w = F.from_coeffs([0, 1])
    assert F.mul(w, w) == F.add(w, 1)  # w^2 = w + 1
    assert F.inv(w) == F.add(w, 1)
    assert F.add(w, w) == 0


def test_frobenius_and_conj():
    for q in (4, 9, 16, 25, 49, 64, 81):
        F = field_of_order(q)
        for x in F.elements():
            assert F.pow(x, q) == x
            assert F.conj(F.conj(x)) == x
        assert sum(1 for x in F.elements() if F.conj(x) == x) == round(q**0.5)


def test_conj_requires_even_degree():
    with pytest.raises(FieldError):
        field_of_order(8).conj(3)


def test_sqrt_char2():
    for q in (2, 4, 8, 16):
        F = field_of_order(q)
        for x in F.elements():
            r = F.sqrt_char2(x)
            assert F.mul(r, r) == x


def test_element_json_roundtrip():
    F = field_make(2, 2)
    x = FieldElement.from_coeffs(F, [1, 1])
    assert x.to_json() == {"p": 2, "k": 2, "coeffs": [1, 1]}
    assert FieldElement.from_json(x.to_json()) == x


def test_element_operators():
    F = field_make(3, 2)
    x = FieldElement.from_coeffs(F, [1, 2])
    y = FieldElement.from_coeffs(F, [2, 1])
    assert (x + y) - y == x
    assert (x * y) / y == x
    assert x * x.inverse() == FieldElement(F, 1)
    assert field_arith("mul", x, y) == x * y
    assert conj_q(conj_q(x)) == x
    assert x**3 == conj_q(x)


def test_element_field_mismatch():
    with pytest.raises(FieldError):
        FieldElement(field_make(2, 2), 1) + FieldElement(field_make(3), 1)


def test_division_by_zero():
    F = field_make(5)
    with pytest.raises(ZeroDivisionError):
        F.inv(0)


@pytest.mark.parametrize("bad", [1, 6, 12, 1025, 2048])
def test_bad_orders(bad):
    with pytest.raises(FieldError):
        field_of_order(bad)


def test_bad_prime():
    with pytest.raises(FieldError):
        field_make(4, 1)


def test_embedding_is_homomorphism():
    small, big = field_of_order(4), field_of_order(16)
    img = {x: embed(small, big, x) for x in small.elements()}
    assert len(set(img.values())) == 4
    for x in small.elements():
        for y in small.elements():
            assert img[small.mul(x, y)] == big.mul(img[x], img[y])
            assert img[small.add(x, y)] == big.add(img[x], img[y])


def test_quadratic_extension():
    assert quadratic_extension(2).q == 4
    assert quadratic_extension(3).q == 9
    assert quadratic_extension(4).q == 16


def test_vector_ops_match_scalar():
    F = field_of_order(9)
    x, y = np.meshgrid(np.arange(9), np.arange(9))
    assert (F.vmul(x, y) == np.vectorize(F.mul)(x, y)).all()
    assert (F.vsub(x, y) == np.vectorize(F.sub)(x, y)).all()
