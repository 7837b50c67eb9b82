"""Seeded generators for random rational vectors and index sets."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .core import SparseVector
from .spaces import SpaceSpec

# Small grid: plenty of ties and sign patterns, exact arithmetic throughout.
DEFAULT_GRID = tuple(
    sorted({Fraction(n, d) for d in (1, 2, 3, 4) for n in range(1, 2 * d + 1)})
)


def random_vector(
    rng: random.Random,
    indices: Sequence[int],
    max_support: int,
    grid: Sequence[Fraction] = DEFAULT_GRID,
    min_support: int = 0,
    signed: bool = True,
) -> SparseVector:
    """Random vector with support drawn from ``indices`` and values from ``±grid``."""
    k = rng.randint(min_support, min(max_support, len(indices)))
    supp = rng.sample(list(indices), k)
    vals = []
    for _ in supp:
        v = rng.choice(grid)
        if signed and rng.random() < 0.5:
            v = -v
        vals.append(v)
    return SparseVector(zip(supp, vals))


def index_window(spec: SpaceSpec) -> Sequence[int]:
    """A window of indices that exercises the space's structure at desk scale."""
    if spec.kind == "xpg":
        g = spec.params.g
        # levels 1-3: blocks after a1 g_j and the excluded windows at g_{j+1}
        top = min(900, g[3] + 60 if len(g) > 3 else 900)
        return range(1, top + 1)
    if spec.kind == "xw":
        return range(1, 65)
    if spec.kind == "xiso":
        return range(1, 9)
    return range(1, 40)


def structured_indices(rng: random.Random, spec: SpaceSpec, k: int) -> list:
    """Support points biased toward the places where a space's norm changes regime."""
    if spec.kind == "xpg":
        p = spec.params
        hot = []
        for j in range(1, min(len(p.g) - 1, 3) + 1):
            gj = p.g[j - 1]
            lo, hi = p.excluded(j)
            base = int(p.a1 * gj)
            hot.extend(range(max(1, base - 2), base + 12))
            hot.extend(range(max(1, lo - 3), hi + 4))
        pool = sorted(set(n for n in hot if n <= 900))
    elif spec.kind == "xs":
        pool = [n for s in range(1, 7) for n in range(s * s - 1, s * s + 3) if n >= 1]
        pool = sorted(set(pool))
    else:
        pool = list(index_window(spec))
    return rng.sample(pool, min(k, len(pool)))


def random_structured_vector(
    rng: random.Random, spec: SpaceSpec, max_support: int, grid: Sequence[Fraction] = DEFAULT_GRID
) -> SparseVector:
    k = rng.randint(0, max_support)
    supp = structured_indices(rng, spec, k)
    vals = [rng.choice(grid) * rng.choice((1, -1)) for _ in supp]
    return SparseVector(zip(supp, vals))
