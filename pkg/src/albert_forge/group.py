"""Group elements as 27x27 linear operators on the Albert space.

A 3x3 octonion matrix M acts by X -> conj(M)^T X M.  Because octonion
multiplication is not associative this is only well defined (and only
composes like a matrix product) when every entry of M lies in one
two-dimensional subalgebra F.1 + F.w; :func:`op_from_matrix` enforces that
and returns the action as an explicit :class:`LinearOp27`.  All further
composition happens on the 27x27 matrices.

Order convention: ``compose(first, second)`` is "apply first, then second",
so its matrix is ``second.mat @ first.mat``.  With this convention the
operator of the product matrix MN equals ``compose(op(M), op(N))``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import batch, linalg
from .albert import DIM, AlbertVector, det_poly
from .gf import FieldError, FieldSpec, field_make
from .octonion import MZERO, ZERO, Octonion

POSITIONS = ((1, 2), (1, 3), (2, 1), (2, 3), (3, 1), (3, 2))
PAIRS = ((1, 2), (2, 3), (1, 3))


class ConstraintError(ValueError):
    """A generator parameter violates its defining constraint."""


# -- 3x3 octonion matrices ------------------------------------------------------
class OctMatrix3:
    __slots__ = ("spec", "rows")

    def __init__(self, spec: FieldSpec, rows: Sequence[Sequence[Octonion]]):
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ValueError("need a 3x3 matrix")
        for r in rows:
            for x in r:
                if x.spec != spec:
                    raise FieldError("matrix entries over different fields")
        self.spec = spec
        self.rows = tuple(tuple(r) for r in rows)

    @classmethod
    def identity(cls, spec: FieldSpec) -> "OctMatrix3":
        one, zero = Octonion.one(spec), Octonion.zero(spec)
        return cls(spec, [[one if i == j else zero for j in range(3)] for i in range(3)])

    @classmethod
    def from_entries(cls, spec: FieldSpec, entries: dict[tuple[int, int], Octonion], diag=None) -> "OctMatrix3":
        """Identity (or ``diag``) plus the given 1-based (row, col) entries."""
        rows = [list(r) for r in cls.identity(spec).rows]
        if diag is not None:
            for i, d in enumerate(diag):
                rows[i][i] = d
        for (i, j), x in entries.items():
            rows[i - 1][j - 1] = x
        return cls(spec, rows)

    def __getitem__(self, ij: tuple[int, int]) -> Octonion:
        return self.rows[ij[0]][ij[1]]

    def entries(self) -> list[Octonion]:
        return [x for r in self.rows for x in r]

    def conj_transpose(self) -> "OctMatrix3":
        return OctMatrix3(self.spec, [[self.rows[j][i].conj() for j in range(3)] for i in range(3)])

    def prime(self) -> "OctMatrix3":
        return OctMatrix3(self.spec, [[x.prime() for x in r] for r in self.rows])

    def dagger(self) -> "OctMatrix3":
        """conj_q applied to every coefficient of conj(M)^T."""
        return self.conj_transpose().prime()

    def __matmul__(self, other: "OctMatrix3") -> "OctMatrix3":
        out = []
        for i in range(3):
            row = []
            for j in range(3):
                acc = self.rows[i][0] * other.rows[0][j]
                for k in (1, 2):
                    acc = acc + self.rows[i][k] * other.rows[k][j]
                row.append(acc)
            out.append(row)
        return OctMatrix3(self.spec, out)

    def __eq__(self, other) -> bool:
        return isinstance(other, OctMatrix3) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return "OctMatrix3(" + "; ".join(", ".join(map(repr, r)) for r in self.rows) + ")"

    def is_identity(self) -> bool:
        return self == OctMatrix3.identity(self.spec)


def subalgebra_generator(M: OctMatrix3) -> Octonion | None:
    """An octonion w with every entry of M in F.1 + F.w.

    Returns None when no such w exists.  When all entries are scalars the
    returned w is the identity.
    """
    F = M.spec
    one = Octonion.one(F)
    rows = np.array([one.c] + [x.c for x in M.entries()], dtype=np.int64)
    basis = linalg.row_space(F, rows)
    if len(basis) > 2:
        return None
    if len(basis) == 1:
        return one
    for row in basis:
        w = Octonion(F, row.tolist())
        if linalg.rank(F, np.array([one.c, w.c])) == 2:
            return w
    return None  # pragma: no cover


def _entry_arrays(M: OctMatrix3) -> list[list[np.ndarray]]:
    return [[np.array(x.c, dtype=np.int64) for x in r] for r in M.rows]


def action_matrix(M: OctMatrix3) -> np.ndarray:
    """27x27 matrix of X -> conj(M)^T X M, column j the image of basis vector j."""
    F = M.spec
    if subalgebra_generator(M) is None:
        raise ConstraintError("matrix entries do not lie in a common 2-dimensional subalgebra")
    E = np.eye(DIM, dtype=np.int64)
    X = batch.hermitian_matrix(F, E)
    Mt = _entry_arrays(M.conj_transpose())
    Ma = _entry_arrays(M)
    Y = batch.matmul3(F, Mt, batch.matmul3(F, X, Ma))
    Y = [[np.broadcast_to(Y[i][j], (DIM, 8)) for j in range(3)] for i in range(3)]
    if not batch.is_hermitian(F, Y).all():
        raise AssertionError("action did not return a Hermitian matrix")  # pragma: no cover
    return np.ascontiguousarray(batch.read_hermitian(Y).T)


# -- linear operators -------------------------------------------------------------
class LinearOp27:
    """An invertible 27x27 matrix over the field, acting on column vectors."""

    __slots__ = ("spec", "mat", "_inv", "label")

    def __init__(self, spec: FieldSpec, mat, label: str = "", check: bool = True):
        m = np.array(mat, dtype=np.int64)
        if m.shape != (DIM, DIM):
            raise ValueError("a LinearOp27 needs a 27x27 matrix")
        if check and linalg.rank(spec, m) != DIM:
            raise linalg.SingularMatrixError("operator is not invertible")
        m.setflags(write=False)
        self.spec = spec
        self.mat = m
        self._inv = None
        self.label = label

    @classmethod
    def identity(cls, spec: FieldSpec) -> "LinearOp27":
        return cls(spec, np.eye(DIM, dtype=np.int64), "id", check=False)

    @classmethod
    def scalar(cls, spec: FieldSpec, lam: int) -> "LinearOp27":
        if lam == 0:
            raise linalg.SingularMatrixError("zero scalar")
        return cls(spec, np.eye(DIM, dtype=np.int64) * lam, f"scalar({lam})", check=False)

    def apply(self, X):
        """Apply to an AlbertVector, or to the rows of an (n, 27) array."""
        if isinstance(X, AlbertVector):
            if X.spec != self.spec:
                raise FieldError("vector over a different field")
            return AlbertVector(self.spec, linalg.matmul(self.spec, self.mat, X.array()).tolist())
        arr = np.asarray(X, dtype=np.int64)
        return linalg.matmul(self.spec, arr, self.mat.T)

    def then(self, other: "LinearOp27") -> "LinearOp27":
        return compose(self, other)

    def inverse(self) -> "LinearOp27":
        if self._inv is None:
            self._inv = LinearOp27(self.spec, linalg.inverse(self.spec, self.mat), f"inv({self.label})", check=False)
        return self._inv

    def is_identity(self) -> bool:
        return bool((self.mat == np.eye(DIM, dtype=np.int64)).all())

    def order(self, limit: int = 100000) -> int:
        P = self
        for n in range(1, limit + 1):
            if P.is_identity():
                return n
            P = compose(P, self)
        raise RuntimeError("order exceeds the search limit")

    def __eq__(self, other) -> bool:
        return isinstance(other, LinearOp27) and self.spec == other.spec and bool((self.mat == other.mat).all())

    def __hash__(self) -> int:
        return hash((self.spec.q, self.mat.tobytes()))

    def __repr__(self) -> str:
        return f"LinearOp27({self.label or '?'}, q={self.spec.q})"

    def to_json(self) -> dict:
        F = self.spec
        return {
            "p": F.p,
            "k": F.k,
            "label": self.label,
            "rows": [[F.coeffs(int(x)) for x in row] for row in self.mat],
        }

    @classmethod
    def from_json(cls, data: dict) -> "LinearOp27":
        F = field_make(data["p"], data["k"])
        mat = [[F.from_coeffs(c) for c in row] for row in data["rows"]]
        return cls(F, mat, data.get("label", ""))


def compose(*ops: LinearOp27) -> LinearOp27:
    """Apply ``ops[0]`` first, then ``ops[1]``, and so on."""
    if not ops:
        raise ValueError("compose needs at least one operator")
    F = ops[0].spec
    mat = ops[0].mat
    for op in ops[1:]:
        if op.spec != F:
            raise FieldError("operators over different fields")
        mat = linalg.matmul(F, op.mat, mat)
    label = " ; ".join(op.label for op in ops)
    return LinearOp27(F, mat, label, check=False)


def invert(op: LinearOp27) -> LinearOp27:
    return op.inverse()


def apply(op: LinearOp27, X):
    return op.apply(X)


def op_algebra(name: str, *args):
    if name == "compose":
        return compose(*args)
    if name == "invert":
        return invert(*args)
    if name == "apply":
        return apply(*args)
    raise ValueError(f"unknown operation {name!r}")


def op_from_matrix(M: OctMatrix3, label: str = "") -> LinearOp27:
    return LinearOp27(M.spec, action_matrix(M), label or "matrix")


# -- generator kinds ----------------------------------------------------------------
def _fmt(x: Octonion) -> str:
    return repr(x)[4:-1]


@dataclass(frozen=True)
class Transvection:
    """Identity plus x in the off-diagonal slot ``position`` (1-based)."""

    position: tuple[int, int]
    x: Octonion

    def matrix(self) -> OctMatrix3:
        if self.position not in POSITIONS:
            raise ConstraintError(f"{self.position} is not an off-diagonal position")
        return OctMatrix3.from_entries(self.x.spec, {self.position: self.x})

    def label(self) -> str:
        return f"M{self.position[0]}{self.position[1]}[{_fmt(self.x)}]"


@dataclass(frozen=True)
class CyclicPerm:
    """(a,b,c|A,B,C) -> (c,a,b|C,A,B)."""

    spec: FieldSpec

    def matrix(self) -> OctMatrix3:
        one, zero = Octonion.one(self.spec), Octonion.zero(self.spec)
        return OctMatrix3(self.spec, [[zero, one, zero], [zero, zero, one], [one, zero, zero]])

    def label(self) -> str:
        return "cyc"


@dataclass(frozen=True)
class SwapPerm:
    """(a,b,c|A,B,C) -> (a,c,b|conj A,conj C,conj B)."""

    spec: FieldSpec

    def matrix(self) -> OctMatrix3:
        one, zero = Octonion.one(self.spec), Octonion.zero(self.spec)
        return OctMatrix3(self.spec, [[one, zero, zero], [zero, zero, one], [zero, one, zero]])

    def label(self) -> str:
        return "swap"


# slot s places (u, conj u) on the two diagonal entries other than s
_DIAG_SLOTS = {3: (0, 1), 1: (1, 2), 2: (2, 0)}


@dataclass(frozen=True)
class Diagonal:
    """diag(u, conj u, 1) for slot 3, and its cyclic shifts for slots 1 and 2."""

    u: Octonion
    slot: int = 3

    def matrix(self) -> OctMatrix3:
        F = self.u.spec
        if self.slot not in _DIAG_SLOTS:
            raise ConstraintError("slot must be 1, 2 or 3")
        if self.u.norm() != 1:
            raise ConstraintError("Diagonal needs N(u) = 1")
        d = [Octonion.one(F)] * 3
        i, j = _DIAG_SLOTS[self.slot]
        d[i], d[j] = self.u, self.u.conj()
        return OctMatrix3.from_entries(F, {}, diag=d)

    def label(self) -> str:
        return f"D{self.slot}[{_fmt(self.u)}]"


@dataclass(frozen=True)
class F4Rotation:
    """(1 x 0; -conj x 1 0; 0 0 1) on the given pair of indices, N(x) = 0."""

    pair: tuple[int, int]
    x: Octonion

    def matrix(self) -> OctMatrix3:
        if self.pair not in PAIRS:
            raise ConstraintError(f"pair must be one of {PAIRS}")
        if self.x.norm() != 0:
            raise ConstraintError("F4Rotation needs N(x) = 0")
        i, j = self.pair
        return OctMatrix3.from_entries(self.x.spec, {(i, j): self.x, (j, i): -self.x.conj()})

    def label(self) -> str:
        return f"R{self.pair[0]}{self.pair[1]}[{_fmt(self.x)}]"


@dataclass(frozen=True)
class TwistedTransvection:
    """(1 x 0; -conj(x') 1 0; 0 0 1) over F_{q^2} with x = lambda e_i.

    With x = lambda e_0 the lower entry is -lambda^q e_-0, and for i != +-0 it
    is +lambda^q e_i, so both extra root shapes are instances of this kind.
    """

    pair: tuple[int, int]
    x: Octonion

    def matrix(self) -> OctMatrix3:
        F = self.x.spec
        if not F.is_quadratic:
            raise ConstraintError("twisted generators need a field F_{q^2}")
        if self.pair not in PAIRS:
            raise ConstraintError(f"pair must be one of {PAIRS}")
        if sum(1 for v in self.x.c if v) > 1:
            raise ConstraintError("x must be a multiple of one basis vector")
        i, j = self.pair
        return OctMatrix3.from_entries(F, {(i, j): self.x, (j, i): -self.x.star()})

    def label(self) -> str:
        return f"N{self.pair[0]}{self.pair[1]}[{_fmt(self.x)}]"


@dataclass(frozen=True)
class TwistedTorus:
    """diag(a, a^q, 1) with a^(1+q) = 1 (scalars over F_{q^2})."""

    spec: FieldSpec
    a: int

    def matrix(self) -> OctMatrix3:
        F = self.spec
        if not F.is_quadratic:
            raise ConstraintError("twisted generators need a field F_{q^2}")
        if F.mul(self.a, F.conj(self.a)) != 1:
            raise ConstraintError("need a^(1+q) = 1")
        if F.conj(self.a) == self.a:
            raise ConstraintError("a must lie outside the subfield F_q")
        d = [Octonion.scalar(F, self.a), Octonion.scalar(F, F.conj(self.a)), Octonion.one(F)]
        return OctMatrix3.from_entries(F, {}, diag=d)

    def label(self) -> str:
        return f"T[{self.a}]"


@dataclass(frozen=True)
class TwistedBlock:
    """The scalar block (a b; -b^q a^q) with a^(1+q) + b^(1+q) = 1."""

    spec: FieldSpec
    a: int
    b: int

    def matrix(self) -> OctMatrix3:
        F = self.spec
        if not F.is_quadratic:
            raise ConstraintError("twisted generators need a field F_{q^2}")
        na = F.mul(self.a, F.conj(self.a))
        nb = F.mul(self.b, F.conj(self.b))
        if F.add(na, nb) != 1:
            raise ConstraintError("need a^(1+q) + b^(1+q) = 1")
        s = lambda v: Octonion.scalar(F, v)  # noqa: E731
        return OctMatrix3.from_entries(
            F, {(1, 2): s(self.b), (2, 1): s(F.neg(F.conj(self.b)))}, diag=[s(self.a), s(F.conj(self.a)), s(1)]
        )

    def label(self) -> str:
        return f"TB[{self.a},{self.b}]"


GeneratorKind = Transvection | CyclicPerm | SwapPerm | Diagonal | F4Rotation | TwistedTransvection | TwistedTorus | TwistedBlock


def make_generator(kind) -> LinearOp27:
    return op_from_matrix(kind.matrix(), kind.label())


# -- certificates -------------------------------------------------------------------
def pulled_back_det(op: LinearOp27):
    """det(op X) as a polynomial in the coordinates of X."""
    return det_poly(op.spec).substitute(op.mat)


def preserves_det(op: LinearOp27) -> bool:
    """Exact check that det(op X) and det(X) are the same polynomial."""
    return pulled_back_det(op) == det_poly(op.spec)


def fixes_identity(op: LinearOp27) -> bool:
    I = AlbertVector.identity(op.spec)
    return op.apply(I) == I


def _oct_inverse(d: Octonion) -> Octonion:
    n = d.norm()
    if n == 0:
        raise linalg.SingularMatrixError("element of norm zero is not invertible")
    return d.conj().scale(d.spec.inv(n))


def matrix_inverse(M: OctMatrix3) -> OctMatrix3:
    """Inverse over the commutative subalgebra containing the entries (adjugate formula)."""
    if subalgebra_generator(M) is None:
        raise ConstraintError("matrix entries do not lie in a common 2-dimensional subalgebra")
    m = M.rows

    def cof(i, j):
        r = [x for x in range(3) if x != i]
        c = [y for y in range(3) if y != j]
        t = m[r[0]][c[0]] * m[r[1]][c[1]] - m[r[0]][c[1]] * m[r[1]][c[0]]
        return t if (i + j) % 2 == 0 else -t

    cofs = [[cof(i, j) for j in range(3)] for i in range(3)]
    d = m[0][0] * cofs[0][0] + m[0][1] * cofs[0][1] + m[0][2] * cofs[0][2]
    dinv = _oct_inverse(d)
    return OctMatrix3(M.spec, [[cofs[j][i] * dinv for j in range(3)] for i in range(3)])


def dual_op(M: OctMatrix3) -> LinearOp27:
    """The dual action, i.e. the action of (conj(M)^T)^-1."""
    return op_from_matrix(matrix_inverse(M.conj_transpose()), "dual")


def duality_fixed(M: OctMatrix3) -> bool:
    return op_from_matrix(M) == dual_op(M)


def is_duality_orthogonal(M: OctMatrix3) -> bool:
    """conj(M)^T M = I."""
    return (M.conj_transpose() @ M).is_identity()


def is_twisted_unitary(M: OctMatrix3) -> bool:
    """M^dagger M = I, where dagger is conj_q applied to conj(M)^T."""
    if subalgebra_generator(M) is None:
        raise ConstraintError("matrix entries do not lie in a common 2-dimensional subalgebra")
    return (M.dagger() @ M).is_identity()


# -- Hermitian forms over F_{q^2} -----------------------------------------------------
def gram_matrix(spec: FieldSpec, variant: str = "H1") -> np.ndarray:
    """S with s(X, Y) = sum_ij X_i S_ij conj_q(Y_j)."""
    if variant == "Aschbacher":
        return np.eye(DIM, dtype=np.int64)
    if variant != "H1":
        raise ValueError(f"unknown form variant {variant!r}")
    S = np.zeros((DIM, DIM), dtype=np.int64)
    for i in range(3):
        S[i, i] = 1
    for off in (3, 11, 19):
        for i in range(8):
            S[off + i, off + (i ^ 4)] = 1
    return S


def _require_quadratic(spec: FieldSpec) -> None:
    if not spec.is_quadratic:
        raise FieldError(f"F_{spec.q} is not a quadratic extension")


def sesquilinear(X: AlbertVector, Y: AlbertVector, variant: str = "H1") -> int:
    F = X.spec
    _require_quadratic(F)
    S = gram_matrix(F, variant)
    y = F.conj_table[Y.array()]
    return int(linalg.matmul(F, linalg.matmul(F, X.array(), S), y))


def hermitian_forms(X: AlbertVector, variant: str = "H1") -> int:
    return sesquilinear(X, X, variant)


def preserves_form(op: LinearOp27, variant: str = "H1") -> bool:
    """G^T S G^(q) = S, i.e. s(GX, GY) = s(X, Y) on every pair of basis vectors."""
    F = op.spec
    _require_quadratic(F)
    S = gram_matrix(F, variant)
    G = op.mat
    lhs = linalg.matmul(F, linalg.matmul(F, G.T, S), F.conj_table[G])
    return bool((lhs == S).all())


# -- generator sets ----------------------------------------------------------------
def _unit_norm_directions(spec: FieldSpec) -> list[Octonion]:
    return [Octonion.one(spec) + Octonion.basis(spec, i) for i in (1, 2, 3, 5, 6, 7)]


def standard_kinds(spec: FieldSpec) -> list:
    kinds: list = [Transvection(pos, Octonion.basis(spec, i)) for pos in POSITIONS for i in range(8)]
    kinds += [CyclicPerm(spec), SwapPerm(spec)]
    return kinds


def stabilizer_kinds(spec: FieldSpec) -> list:
    """Generators fixing the white point spanned by (1,0,0|0,0,0)."""
    kinds: list = [Transvection(pos, Octonion.basis(spec, i)) for pos in ((2, 1), (3, 1), (2, 3), (3, 2)) for i in range(8)]
    kinds += [Diagonal(u, slot) for slot in (1, 2, 3) for u in _unit_norm_directions(spec)]
    kinds.append(SwapPerm(spec))
    return kinds


def f4_kinds(spec: FieldSpec) -> list:
    kinds: list = [Diagonal(u, slot) for slot in (1, 2, 3) for u in _unit_norm_directions(spec)]
    kinds += [F4Rotation(pair, Octonion.basis(spec, i)) for pair in PAIRS for i in range(8)]
    kinds += [CyclicPerm(spec), SwapPerm(spec)]
    return kinds


def twisted_kinds(spec: FieldSpec) -> list:
    """Root elements N_x plus torus elements over F_{q^2}."""
    _require_quadratic(spec)
    F = spec
    kinds: list = []
    lams = sorted({1, _primitive(F)})
    for pair in PAIRS:
        for i in range(8):
            for lam in lams:
                kinds.append(TwistedTransvection(pair, Octonion.basis(F, i, lam)))
    unit = [a for a in F.elements() if a and F.mul(a, F.conj(a)) == 1]
    kinds += [TwistedTorus(F, a) for a in unit if F.conj(a) != a][:2]
    for a in F.elements():
        b_opts = [b for b in F.elements() if b and F.add(F.mul(a, F.conj(a)), F.mul(b, F.conj(b))) == 1]
        if b_opts:
            kinds.append(TwistedBlock(F, a, b_opts[0]))
            break
    return kinds


def _primitive(F: FieldSpec) -> int:
    for g in F.elements():
        if g and _order(F, g) == F.q - 1:
            return g
    return 1  # pragma: no cover


def _order(F: FieldSpec, g: int) -> int:
    x, n = g, 1
    while x != 1:
        x, n = F.mul(x, g), n + 1
    return n


def base_extend(kind, big: FieldSpec):
    """Re-express a generator defined over F_q with coefficients in F_{q^2}."""
    from .gf import embed

    def ext(x: Octonion) -> Octonion:
        return Octonion(big, [embed(x.spec, big, v) for v in x.c])

    if isinstance(kind, Transvection):
        return Transvection(kind.position, ext(kind.x))
    if isinstance(kind, Diagonal):
        return Diagonal(ext(kind.u), kind.slot)
    if isinstance(kind, F4Rotation):
        return F4Rotation(kind.pair, ext(kind.x))
    if isinstance(kind, CyclicPerm):
        return CyclicPerm(big)
    if isinstance(kind, SwapPerm):
        return SwapPerm(big)
    raise TypeError(f"cannot base-extend {kind!r}")


@dataclass
class GeneratorSet:
    name: str
    ops: list[LinearOp27] = field(default_factory=list)

    def with_inverses(self) -> list[LinearOp27]:
        out, seen = [], set()
        for op in self.ops:
            for g in (op, op.inverse()):
                key = g.mat.tobytes()
                if key not in seen:
                    seen.add(key)
                    out.append(g)
        return out


def generator_set(spec: FieldSpec, name: str) -> GeneratorSet:
    table = {
        "standard": standard_kinds,
        "stabilizer": stabilizer_kinds,
        "f4": f4_kinds,
        "twisted": twisted_kinds,
    }
    if name == "empty":
        return GeneratorSet(name, [])
    if name not in table:
        raise ValueError(f"unknown generator set {name!r}")
    return GeneratorSet(name, [make_generator(k) for k in table[name](spec)])


def all_preserve_det(ops: Iterable[LinearOp27]) -> bool:
    return all(preserves_det(op) for op in ops)
