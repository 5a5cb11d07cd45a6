"""Small finite fields F_{p^k} with packed integer elements.

An element is stored as the integer ``sum(c_i * p**i)`` where ``c_0 .. c_{k-1}``
are its coefficients in ``F_p[t]/(modulus)``, constant term first.  Every
field with ``p**k <= 1024`` gets full addition/multiplication tables, so
scalar arithmetic is a list lookup and array arithmetic is a numpy gather.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Sequence

import numpy as np

MAX_ORDER = 1024


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n**0.5) + 1))


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    """Remainder of a by the monic polynomial m (coefficient lists, low first)."""
    a = list(a)
    dm = len(m) - 1
    while len(a) - 1 >= dm and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        lead = a[-1]
        shift = len(a) - 1 - dm
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - lead * c) % p
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def _is_irreducible(coeffs: Sequence[int], p: int) -> bool:
    k = len(coeffs) - 1
    for d in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _poly_mod(list(coeffs), list(low) + [1], p):
                return False
    return True


def least_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible of degree k (low-degree-first order)."""
    # (c0, ..., c_{k-1}) with c0 the most significant key
    for low in itertools.product(range(p), repeat=k):
        poly = low + (1,)
        if _is_irreducible(poly, p):
            return poly
    raise FieldError(f"no irreducible polynomial of degree {k} over F_{p}")  # pragma: no cover


class FieldSpec:
    """The field F_{p^k} with a fixed modulus; build through :func:`field_make`."""

    def __init__(self, p: int, k: int, modulus: tuple[int, ...]):
        self.p = p
        self.k = k
        self.modulus = modulus
        self.q = p**k
        self._build_tables()

    # -- construction ---------------------------------------------------
    def _build_tables(self) -> None:
        p, k, q = self.p, self.k, self.q
        digits = np.array([self.coeffs(x) for x in range(q)], dtype=np.int64).reshape(q, k)
        weights = p ** np.arange(k, dtype=np.int64)
        summed = (digits[:, None, :] + digits[None, :, :]) % p
        self.add_table = (summed * weights).sum(axis=2)
        self.neg_table = ((-digits) % p * weights).sum(axis=1)
        self.sub_table = self.add_table[:, self.neg_table]

        # multiplication through a primitive element's log table
        gen = self._find_generator()
        exp = [1] * (q - 1)
        for i in range(1, q - 1):
            exp[i] = self._mul_slow(exp[i - 1], gen)
        log = [0] * q
        for i, e in enumerate(exp):
            log[e] = i
        exp_arr = np.array(exp + exp, dtype=np.int64)
        log_arr = np.array(log, dtype=np.int64)
        mul = exp_arr[(log_arr[:, None] + log_arr[None, :]) % (q - 1)]
        mul[0, :] = 0
        mul[:, 0] = 0
        self.mul_table = mul
        inv = np.zeros(q, dtype=np.int64)
        inv[1:] = exp_arr[(-log_arr[1:]) % (q - 1)]
        self.inv_table = inv
        self._exp = exp
        self._log = log

        self._add = self.add_table.tolist()
        self._sub = self.sub_table.tolist()
        self._mul = self.mul_table.tolist()
        self._neg = self.neg_table.tolist()
        self._inv = self.inv_table.tolist()

    def _mul_slow(self, x: int, y: int) -> int:
        p = self.p
        a, b = self.coeffs(x), self.coeffs(y)
        prod = [0] * (2 * self.k - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] = (prod[i + j] + ai * bj) % p
        return self.from_coeffs(_poly_mod(prod, list(self.modulus), p))

    def _find_generator(self) -> int:
        q = self.q
        if q == 2:
            return 1
        order = q - 1
        primes = [d for d in range(2, order + 1) if order % d == 0 and is_prime(d)]
        for g in range(2, q):
            if all(self._pow_slow(g, order // r) != 1 for r in primes):
                return g
        raise FieldError("no primitive element")  # pragma: no cover

    def _pow_slow(self, x: int, n: int) -> int:
        r = 1
        while n:
            if n & 1:
                r = self._mul_slow(r, x)
            x = self._mul_slow(x, x)
            n >>= 1
        return r

    # -- encoding -------------------------------------------------------
    def coeffs(self, x: int) -> list[int]:
        out = []
        for _ in range(self.k):
            out.append(x % self.p)
            x //= self.p
        return out

    def from_coeffs(self, coeffs: Sequence[int]) -> int:
        coeffs = list(coeffs)
        if len(coeffs) > self.k:
            raise FieldError(f"too many coefficients for F_{self.q}: {coeffs}")
        val = 0
        for c in reversed(coeffs):
            if not 0 <= c < self.p:
                raise FieldError(f"coefficient {c} out of range mod {self.p}")
            val = val * self.p + c
        return val

    def from_int(self, n: int) -> int:
        """Image of the integer n under Z -> F_p -> F."""
        return n % self.p

    def element(self, value: int) -> "FieldElement":
        return FieldElement(self, value)

    # -- scalar arithmetic on packed ints -------------------------------
    def add(self, x: int, y: int) -> int:
        return self._add[x][y]

    def sub(self, x: int, y: int) -> int:
        return self._sub[x][y]

    def mul(self, x: int, y: int) -> int:
        return self._mul[x][y]

    def neg(self, x: int) -> int:
        return self._neg[x]

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self._inv[x]

    def div(self, x: int, y: int) -> int:
        return self._mul[x][self.inv(y)]

    def pow(self, x: int, n: int) -> int:
        if n < 0:
            return self.pow(self.inv(x), -n)
        r = 1
        while n:
            if n & 1:
                r = self._mul[r][x]
            x = self._mul[x][x]
            n >>= 1
        return r

    def frobenius(self, x: int) -> int:
        return self.pow(x, self.p)

    def sqrt_char2(self, x: int) -> int:
        """Unique square root in characteristic 2 (squaring is bijective)."""
        if self.p != 2:
            raise FieldError("sqrt_char2 needs characteristic 2")
        return self.pow(x, self.q // 2)

    def elements(self) -> range:
        return range(self.q)

    # -- quadratic extension structure ---------------------------------
    @property
    def is_quadratic(self) -> bool:
        return self.k % 2 == 0

    @property
    def subfield_order(self) -> int:
        if not self.is_quadratic:
            raise FieldError(f"F_{self.q} is not a quadratic extension")
        return self.p ** (self.k // 2)

    def conj(self, x: int) -> int:
        return self.pow(x, self.subfield_order)

    @property
    def conj_table(self) -> np.ndarray:
        if not hasattr(self, "_conj_table"):
            self._conj_table = np.array([self.conj(x) for x in range(self.q)], dtype=np.int64)
        return self._conj_table

    # -- vectorized arithmetic on int64 arrays ---------------------------
    def vadd(self, x, y):
        if self.k == 1:
            return (x + y) % self.p
        return self.add_table[x, y]

    def vsub(self, x, y):
        if self.k == 1:
            return (x - y) % self.p
        return self.sub_table[x, y]

    def vmul(self, x, y):
        if self.k == 1:
            return (x * y) % self.p
        return self.mul_table[x, y]

    def vneg(self, x):
        if self.k == 1:
            return (-x) % self.p
        return self.neg_table[x]

    def vinv(self, x):
        return self.inv_table[x]

    def __repr__(self) -> str:
        return f"FieldSpec(p={self.p}, k={self.k}, modulus={list(self.modulus)})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FieldSpec) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self) -> int:
        return hash((self.p, self.k))

    def __reduce__(self):
        return (field_make, (self.p, self.k))

    def to_json(self) -> dict:
        return {"p": self.p, "k": self.k}


@lru_cache(maxsize=None)
def field_make(p: int, k: int = 1) -> FieldSpec:
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if k < 1 or p**k > MAX_ORDER:
        raise FieldError(f"p^k = {p}^{k} outside the supported range 2..{MAX_ORDER}")
    return FieldSpec(p, k, least_irreducible(p, k))


def field_of_order(q: int) -> FieldSpec:
    for p in range(2, q + 1):
        if is_prime(p):
            k, r = 0, q
            while r % p == 0:
                r //= p
                k += 1
            if r == 1 and k:
                return field_make(p, k)
            if q % p == 0:
                break
    raise FieldError(f"{q} is not a prime power")


def quadratic_extension(q: int) -> FieldSpec:
    """F_{q^2} for a prime power q."""
    base = field_of_order(q)
    return field_make(base.p, 2 * base.k)


def embed(small: FieldSpec, big: FieldSpec, x: int) -> int:
    """Image of x under the (deterministic) embedding small -> big."""
    if small.p != big.p or big.k % small.k:
        raise FieldError(f"F_{small.q} does not embed in F_{big.q}")
    if small.k == 1:
        return x
    root = _embedding_root(small, big)
    out, power = 0, 1
    for c in small.coeffs(x):
        out = big.add(out, big.mul(big.from_int(c), power))
        power = big.mul(power, root)
    return out


@lru_cache(maxsize=None)
def _embedding_root(small: FieldSpec, big: FieldSpec) -> int:
    for r in big.elements():
        acc, power = 0, 1
        for c in small.modulus:
            acc = big.add(acc, big.mul(big.from_int(c), power))
            power = big.mul(power, r)
        if acc == 0:
            return r
    raise FieldError("modulus has no root in the larger field")  # pragma: no cover


class FieldElement:
    """Immutable field element with operator overloading."""

    __slots__ = ("spec", "value")

    def __init__(self, spec: FieldSpec, value: int):
        if not 0 <= value < spec.q:
            raise FieldError(f"value {value} outside F_{spec.q}")
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    @classmethod
    def from_coeffs(cls, spec: FieldSpec, coeffs: Sequence[int]) -> "FieldElement":
        return cls(spec, spec.from_coeffs(coeffs))

    @property
    def coeffs(self) -> list[int]:
        return self.spec.coeffs(self.value)

    def _other(self, y) -> int:
        if isinstance(y, FieldElement):
            if y.spec != self.spec:
                raise FieldError("operands live in different fields")
            return y.value
        if isinstance(y, (int, np.integer)):
            return self.spec.from_int(int(y))
        return NotImplemented

    def __add__(self, y):
        v = self._other(y)
        return NotImplemented if v is NotImplemented else FieldElement(self.spec, self.spec.add(self.value, v))

    __radd__ = __add__

    def __sub__(self, y):
        v = self._other(y)
        return NotImplemented if v is NotImplemented else FieldElement(self.spec, self.spec.sub(self.value, v))

    def __rsub__(self, y):
        v = self._other(y)
        return NotImplemented if v is NotImplemented else FieldElement(self.spec, self.spec.sub(v, self.value))

    def __mul__(self, y):
        v = self._other(y)
        return NotImplemented if v is NotImplemented else FieldElement(self.spec, self.spec.mul(self.value, v))

    __rmul__ = __mul__

    def __truediv__(self, y):
        v = self._other(y)
        return NotImplemented if v is NotImplemented else FieldElement(self.spec, self.spec.div(self.value, v))

    def __neg__(self):
        return FieldElement(self.spec, self.spec.neg(self.value))

    def __pow__(self, n: int):
        return FieldElement(self.spec, self.spec.pow(self.value, n))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.spec, self.spec.inv(self.value))

    def conj_q(self) -> "FieldElement":
        return conj_q(self)

    def __eq__(self, y) -> bool:
        if isinstance(y, FieldElement):
            return self.spec == y.spec and self.value == y.value
        if isinstance(y, (int, np.integer)):
            return self.value == self.spec.from_int(int(y))
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.spec.p, self.spec.k, self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        if self.spec.k == 1:
            return f"F{self.spec.q}({self.value})"
        return f"F{self.spec.q}({self.coeffs})"

    def to_json(self) -> dict:
        return {"p": self.spec.p, "k": self.spec.k, "coeffs": self.coeffs}

    @classmethod
    def from_json(cls, data: dict) -> "FieldElement":
        spec = field_make(data["p"], data["k"])
        return cls.from_coeffs(spec, data["coeffs"])


def field_arith(op: str, x: FieldElement, y=None) -> FieldElement:
    """Dispatch form of the element operators: add, sub, mul, inv, pow, neg."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "neg":
        return -x
    if op == "inv":
        return x.inverse()
    if op == "pow":
        if not isinstance(y, int) or y < 0:
            raise FieldError("pow needs a nonnegative integer exponent")
        return x**y
    raise FieldError(f"unknown field operation {op!r}")


def conj_q(x: FieldElement) -> FieldElement:
    return FieldElement(x.spec, x.spec.conj(x.value))
