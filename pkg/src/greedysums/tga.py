"""Thresholding greedy algorithm: greedy sets, residuals, partial sums, truncation."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import List, Tuple

from .core import IndexSet, Scalar, SparseVector, as_scalar, project
from .errors import DomainError, TieExplosionError

DEFAULT_TIE_CAP = 64
FLOAT_TIE_RTOL = 1e-12


@dataclass(frozen=True)
class GreedyOutcome:
    """All greedy sets of one order.

    ``forced`` are the indices strictly above the threshold (in every set),
    ``tied`` the indices whose modulus equals the threshold, of which
    ``slots`` are picked per set.
    """

    sets: Tuple[IndexSet, ...]
    threshold: Scalar
    forced: IndexSet
    tied: IndexSet
    slots: int

    def __iter__(self):
        return iter(self.sets)

    def __len__(self):
        return len(self.sets)


def _tied(a: Scalar, b: Scalar) -> bool:
    if isinstance(a, float) or isinstance(b, float):
        return math.isclose(a, b, rel_tol=FLOAT_TIE_RTOL, abs_tol=0.0)
    return a == b


def greedy_sets(x: SparseVector, m: int, cap: int = DEFAULT_TIE_CAP) -> GreedyOutcome:
    """Enumerate every greedy set of ``x`` of order ``m``.

    A set of order m is greedy when every modulus inside is >= every modulus
    outside. Orders beyond the support would need zero padding; those are
    refused, and callers should treat them as an exhausted support.
    """
    if m < 0:
        raise DomainError("order must be nonnegative")
    if m > len(x):
        raise DomainError(
            f"order {m} exceeds support size {len(x)}; the residual after selecting the full support is 0"
        )
    if m == 0:
        return GreedyOutcome(((),), 0, (), (), 0)
    ranked = sorted(x.items(), key=lambda item: (-abs(item[1]), item[0]))
    threshold = abs(ranked[m - 1][1])
    forced = tuple(sorted(n for n, c in ranked if abs(c) > threshold and not _tied(abs(c), threshold)))
    tied = tuple(sorted(n for n, c in ranked if _tied(abs(c), threshold)))
    slots = m - len(forced)
    count = math.comb(len(tied), slots)
    if count > cap:
        raise TieExplosionError(f"{count} greedy sets of order {m} (cap {cap})")
    sets = tuple(tuple(sorted(forced + pick)) for pick in combinations(tied, slots))
    return GreedyOutcome(sets, threshold, forced, tied, slots)


def is_greedy_set(x: SparseVector, A) -> bool:
    A = set(A)
    inside = [abs(c) for n, c in x.items() if n in A]
    outside = [abs(c) for n, c in x.items() if n not in A]
    # indices of A outside the support carry modulus 0
    if len(inside) < len(A):
        inside.append(0)
    if not inside or not outside:
        return True
    return min(inside) >= max(outside) or _tied(min(inside), max(outside))


def lambda_order(lam, m: int) -> int:
    """ceil(lambda * m), computed exactly."""
    lam = as_scalar(lam)
    if isinstance(lam, float):
        lam = Fraction(lam)
    if lam < 1:
        raise DomainError(f"lambda must be >= 1, got {lam}")
    if m < 0:
        raise DomainError("m must be nonnegative")
    return math.ceil(lam * m)


def residual(x: SparseVector, A) -> SparseVector:
    """x - P_A(x)."""
    A = set(A)
    return SparseVector._trusted((n, c) for n, c in x.items() if n not in A)


def partial_sum(x: SparseVector, n: int) -> SparseVector:
    if n < 0:
        raise DomainError("n must be nonnegative")
    return SparseVector._trusted((k, c) for k, c in x.items() if k <= n)


def _truncate_scalar(b: Scalar, a: Scalar) -> Scalar:
    if abs(b) > a:
        return a if b > 0 else -a
    return b


def truncate(x: SparseVector, a) -> SparseVector:
    """Cap every modulus at ``a``, keeping signs."""
    a = as_scalar(a)
    if not a > 0:
        raise DomainError(f"truncation level must be positive, got {a}")
    return SparseVector((n, _truncate_scalar(c, a)) for n, c in x.items())


def greedy_approximant(x: SparseVector, A) -> SparseVector:
    """G_m(x) for the greedy set A; an alias of the projection."""
    return project(x, A)


def all_greedy_sets(x: SparseVector, orders, cap: int = DEFAULT_TIE_CAP) -> List[Tuple[int, IndexSet]]:
    out = []
    for m in orders:
        out.extend((m, A) for A in greedy_sets(x, m, cap).sets)
    return out
