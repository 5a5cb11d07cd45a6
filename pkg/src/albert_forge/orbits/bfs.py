"""Breadth-first orbit search on projective points, one frontier level at a time."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ..group import LinearOp27
from .. import linalg
from .points import ProjPoint, canonicalize, keys_to_vectors, point_keys


class BudgetExceeded(RuntimeError):
    """Raised by callers that treat a truncated search as an error."""


@dataclass
class OrbitReport:
    size: int
    generators: str
    n_generators: int
    levels: list[int]
    truncated: bool
    elapsed: float = 0.0
    keys: np.ndarray | None = field(default=None, repr=False)

    def to_json(self, timings: bool = False) -> dict:
        out = {
            "orbit_size": self.size,
            "generators": self.generators,
            "n_generators": self.n_generators,
            "levels": self.levels,
            "truncated": self.truncated,
        }
        if timings:
            out["elapsed_s"] = round(self.elapsed, 3)
        return out


def _images(op: LinearOp27, V: np.ndarray) -> np.ndarray:
    return linalg.matmul(op.spec, V, op.mat.T)


def orbit_bfs(
    generators: Sequence[LinearOp27],
    start: ProjPoint,
    limit: int | None = None,
    descriptor: str = "custom",
    include_inverses: bool = True,
    keep_keys: bool = True,
) -> OrbitReport:
    """Orbit of ``start`` under the group generated by ``generators``.

    ``limit`` caps the number of distinct points; when it is hit the report
    has ``truncated=True`` and a partial size.
    """
    t0 = time.perf_counter()
    F = start.spec
    gens: list[LinearOp27] = []
    seen_mats = set()
    for g in generators:
        for h in ((g, g.inverse()) if include_inverses else (g,)):
            key = h.mat.tobytes()
            if key not in seen_mats:
                seen_mats.add(key)
                gens.append(h)
    frontier = np.array([start.coords], dtype=np.int64)
    visited = point_keys(F, frontier)
    levels = [1]
    truncated = False
    while len(frontier):
        batch_keys = []
        for g in gens:
            img = canonicalize(F, _images(g, frontier))
            batch_keys.append(point_keys(F, img))
        if not batch_keys:
            break
        cand = np.unique(np.concatenate(batch_keys))
        new = np.setdiff1d(cand, visited, assume_unique=True)
        if limit is not None and len(visited) + len(new) > limit:
            new = new[: max(0, limit - len(visited))]
            truncated = True
        if not len(new):
            break
        visited = np.union1d(visited, new)
        levels.append(int(len(new)))
        if truncated:
            break
        frontier = keys_to_vectors(F, new)
    return OrbitReport(
        size=int(len(visited)),
        generators=descriptor,
        n_generators=len(gens),
        levels=levels,
        truncated=truncated,
        elapsed=time.perf_counter() - t0,
        keys=visited if keep_keys else None,
    )


def closure_spot_check(
    generators: Sequence[LinearOp27], report: OrbitReport, samples: int, rng: np.random.Generator
) -> bool:
    """Apply random generators to random visited points and test membership."""
    if report.keys is None or not generators:
        return True
    F = generators[0].spec
    keys = report.keys
    pick = rng.integers(0, len(keys), size=samples)
    gsel = rng.integers(0, len(generators), size=samples)
    pts = keys_to_vectors(F, keys[pick])
    ok = True
    for gi in np.unique(gsel):
        rows = pts[gsel == gi]
        img = canonicalize(F, _images(generators[gi], rows))
        ok &= bool(np.isin(point_keys(F, img), keys).all())
    return ok
