"""Canonical projective points and compact integer keys for them."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..albert import DIM, AlbertVector, coord_bits, pack_coords, unpack_coords
from ..gf import FieldSpec


def canonicalize(F: FieldSpec, V: np.ndarray) -> np.ndarray:
    """Scale every nonzero row so its first nonzero coordinate is 1."""
    V = np.asarray(V, dtype=np.int64)
    nz = V != 0
    if not nz.any(axis=-1).all():
        raise ValueError("the zero vector does not span a point")
    if F.q == 2:
        return V.copy()
    lead_idx = nz.argmax(axis=-1)
    lead = np.take_along_axis(V, lead_idx[..., None], axis=-1)
    return F.vmul(F.inv_table[lead], V)


def keys_fit_int64(F: FieldSpec) -> bool:
    return F.q**DIM < 2**63


def point_keys(F: FieldSpec, V: np.ndarray) -> np.ndarray:
    """Injective keys for rows: base-q integers when they fit, else byte strings."""
    V = np.asarray(V, dtype=np.int64)
    if keys_fit_int64(F):
        w = F.q ** np.arange(DIM, dtype=np.int64)
        return V @ w
    raw = np.ascontiguousarray(V.astype(np.uint16 if F.q > 256 else np.uint8))
    return raw.view(np.dtype((np.void, raw.dtype.itemsize * DIM))).reshape(-1)


def keys_to_vectors(F: FieldSpec, keys: np.ndarray) -> np.ndarray:
    if keys.dtype.kind == "V":
        dt = np.uint16 if F.q > 256 else np.uint8
        return np.frombuffer(keys.tobytes(), dtype=dt).reshape(-1, DIM).astype(np.int64)
    out = np.empty((len(keys), DIM), dtype=np.int64)
    k = keys.copy()
    for i in range(DIM):
        out[:, i] = k % F.q
        k //= F.q
    return out


@dataclass(frozen=True)
class ProjPoint:
    """A 1-dimensional subspace, stored as its canonical spanning vector."""

    spec: FieldSpec
    coords: tuple[int, ...]

    def vector(self) -> AlbertVector:
        return AlbertVector(self.spec, self.coords)

    def pack(self) -> bytes:
        return pack_coords(self.spec, self.coords)

    @classmethod
    def unpack(cls, spec: FieldSpec, data: bytes) -> "ProjPoint":
        return cls(spec, unpack_coords(spec, data))

    @property
    def bits(self) -> int:
        return DIM * coord_bits(self.spec)

    def key(self):
        return point_keys(self.spec, np.array([self.coords]))[0]

    def to_json(self) -> dict:
        return self.vector().to_json()


def canonical_point(v: AlbertVector) -> ProjPoint:
    if v.is_zero():
        raise ValueError("the zero vector does not span a point")
    row = canonicalize(v.spec, v.array()[None, :])[0]
    return ProjPoint(v.spec, tuple(int(x) for x in row))
