"""Norms of the four constructed sequence spaces, plus a brute-force oracle.

Spaces
------
``xpg``   the space built from a parameter tuple (lambda1, lambda2, a1..a4, p, g)
          whose unit basis separates lambda2-PG from lambda1-PG;
``xw``    the two-weight permutation space (weights 1/sqrt(k) on dyadic
          indices, 1/k elsewhere), non-democratic yet lambda-AG2;
``xiso``  the two-coordinate space, depending on lambda, used for the
          isometric threshold at lambda = 2;
``xs``    the Schreier-type space sup { sum_{i in F} |x_i| : sqrt(min F) >= |F| }.

Every structured evaluator returns an exact ``Fraction`` on rational input,
except ``norm_xw`` which needs irrational weights and falls back to floats
as soon as a non-square rank carries a dyadic coordinate.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from .core import Scalar, SparseVector, sup_norm
from .errors import ConstraintError, DomainError, InsufficientLevelsError, OracleBudgetError

ORACLE_MAX_SUPPORT = 12
ORACLE_MAX_INDEX = 10**4
# Xw oracle enumerates permutations per weight class.
ORACLE_MAX_PERMUTED = 8


def _q(value) -> Fraction:
    if isinstance(value, float):
        return Fraction(value).limit_denominator(10**12)
    return Fraction(value)


def _exact_sum(terms) -> Scalar:
    """Exact sum over one common denominator; fsum once a float shows up."""
    terms = list(terms)
    for t in terms:
        if isinstance(t, float):
            return math.fsum(float(t) for t in terms)
    if not terms:
        return Fraction(0)
    den = math.lcm(*(t.denominator for t in terms))
    return Fraction(sum(t.numerator * (den // t.denominator) for t in terms), den)


def _abs_sum(values) -> Scalar:
    """Exact sum of moduli without materializing abs() of each Fraction."""
    values = list(values)
    for t in values:
        if isinstance(t, float):
            return math.fsum(abs(float(t)) for t in values)
    if not values:
        return Fraction(0)
    den = math.lcm(*(t.denominator for t in values))
    return Fraction(sum(abs(t.numerator) * (den // t.denominator) for t in values), den)


def _max(a: Scalar, b: Scalar) -> Scalar:
    return a if a >= b else b


# ---------------------------------------------------------------------------
# X_{lambda1, lambda2}


@dataclass(frozen=True)
class XpgParams:
    lambda1: Fraction
    lambda2: Fraction
    a1: Fraction
    a2: Fraction
    a3: Fraction
    a4: Fraction
    p: Fraction
    g: Tuple[int, ...]

    def __post_init__(self):
        for name in ("lambda1", "lambda2", "a1", "a2", "a3", "a4", "p"):
            object.__setattr__(self, name, _q(getattr(self, name)))
        object.__setattr__(self, "g", tuple(int(v) for v in self.g))
        self.validate()

    def validate(self) -> None:
        l1, l2 = self.lambda1, self.lambda2
        if not 1 <= l1 < l2:
            raise DomainError(f"need 1 <= lambda1 < lambda2, got {l1}, {l2}")
        if not self.a1 > 1:
            raise ConstraintError("a1 > 1", f"a1 = {self.a1}")
        if not 0 < self.a3 < 1:
            raise ConstraintError("0 < a3 < 1", f"a3 = {self.a3}")
        if not 0 < self.a4 < 1:
            raise ConstraintError("0 < a4 < 1", f"a4 = {self.a4}")
        lo, hi = a2_window(l1, l2, self.a1, self.a3, self.a4)
        if not lo < self.a2:
            raise ConstraintError("a3 + (lambda1-1)(a1+a3) < a2", f"{lo} >= {self.a2}")
        if not self.a2 < hi:
            raise ConstraintError("a2 < lambda2 - 1 - a4", f"{self.a2} >= {hi}")
        bound = p_bound(self.a1, self.a2, self.a3, self.a4)
        if not self.p > bound:
            raise ConstraintError("p > max{a2/(a1-1), (a2+1)/a4, a1+a3}", f"p = {self.p} <= {bound}")
        if not self.g:
            raise ConstraintError("g nonempty")
        if self.g[0] != 1:
            raise ConstraintError("g_1 = 1", f"g_1 = {self.g[0]}")
        for n in range(1, len(self.g)):
            if not self.g[n] > (self.p + n) * self.g[n - 1]:
                raise ConstraintError(
                    "g_{n+1} > (p+n) g_n", f"n = {n}: {self.g[n]} <= {(self.p + n) * self.g[n - 1]}"
                )

    @property
    def levels(self) -> int:
        return len(self.g)

    def excluded(self, j: int) -> Tuple[int, int]:
        """Integer window [g_{j+1}, floor(g_{j+1} + a2 g_j)] skipped at level j (1-based)."""
        if j >= len(self.g):
            raise InsufficientLevelsError(
                f"level {j} needs g_{j + 1}; extend the g sequence (have {len(self.g)} terms)"
            )
        gj, gnext = self.g[j - 1], self.g[j]
        return gnext, math.floor(gnext + self.a2 * gj)

    def max_conservative_constant(self) -> Fraction:
        """The constant assembled in the lambda2-max-conservative argument."""
        if len(self.g) < 2:
            raise InsufficientLevelsError("need g_2")
        tail = min(Fraction(1), self.lambda2 - 1 - self.a2 - self.a4)
        return max(Fraction(1), 2 / self.a4 - 2, Fraction(self.g[1] - 1), 2 / self.a4, 1 / tail)


def a2_window(lambda1, lambda2, a1, a3, a4) -> Tuple[Fraction, Fraction]:
    """Open interval of admissible a2 values."""
    lambda1, lambda2, a1, a3, a4 = map(_q, (lambda1, lambda2, a1, a3, a4))
    return a3 + (lambda1 - 1) * (a1 + a3), lambda2 - 1 - a4


def p_bound(a1, a2, a3, a4) -> Fraction:
    a1, a2, a3, a4 = map(_q, (a1, a2, a3, a4))
    return max(a2 / (a1 - 1), (a2 + 1) / a4, a1 + a3)


def gen_g_sequence(p, levels: int) -> Tuple[int, ...]:
    """Minimal integer sequence with g_1 = 1 and g_{n+1} > (p+n) g_n."""
    if levels < 1:
        raise DomainError("levels must be >= 1")
    p = _q(p)
    g = [1]
    for n in range(1, levels):
        g.append(math.floor((p + n) * g[-1]) + 1)
    return tuple(g)


def make_xpg_params(lambda1, lambda2, levels: int = 5, **overrides) -> XpgParams:
    """Build a valid parameter tuple for given 1 <= lambda1 < lambda2.

    Any of ``a1, a2, a3, a4, p, g`` may be passed as an override; the result
    is validated either way, so infeasible overrides raise ``ConstraintError``.
    """
    unknown = set(overrides) - {"a1", "a2", "a3", "a4", "p", "g"}
    if unknown:
        raise TypeError(f"unknown overrides {sorted(unknown)}")
    l1, l2 = _q(lambda1), _q(lambda2)
    if not 1 <= l1 < l2:
        raise DomainError(f"need 1 <= lambda1 < lambda2, got {l1}, {l2}")
    gap = l2 - l1
    # a1 - 1 and a3 = a4 are sized so that 2 a3 + (l1 - 1)(a1 - 1 + a3) <= gap / 2,
    # which leaves a nonempty a2 window.
    if l1 == 1:
        a1 = Fraction(2)
    else:
        a1 = 1 + min(Fraction(1), gap / (4 * (l1 - 1)))
    small = min(Fraction(1, 4), gap / (8 * l1))
    a1 = _q(overrides.get("a1", a1))
    a3 = _q(overrides.get("a3", small))
    a4 = _q(overrides.get("a4", small))
    lo, hi = a2_window(l1, l2, a1, a3, a4)
    a2 = _q(overrides.get("a2", (lo + hi) / 2))
    if "p" in overrides:
        p = _q(overrides["p"])
    else:
        p = Fraction(math.floor(p_bound(a1, a2, a3, a4)) + 1)
    g = overrides.get("g")
    if g is None:
        g = gen_g_sequence(p, levels)
    return XpgParams(l1, l2, a1, a2, a3, a4, p, tuple(g))


PRESET_XPG = dict(lambda1=1, lambda2=2, a1=2, a2=Fraction(1, 2), a3=Fraction(1, 4), a4=Fraction(1, 4), p=7)


def preset_xpg_params(levels: int = 5) -> XpgParams:
    """(lambda1, lambda2) = (1, 2), a = (2, 1/2, 1/4, 1/4), p = 7; g = (1, 9, 82, 821, 9032, ...)."""
    kw = dict(PRESET_XPG)
    return make_xpg_params(kw.pop("lambda1"), kw.pop("lambda2"), levels=levels, **kw)


def _xpg_levels(x: SparseVector, params: XpgParams):
    """Yield (j, g_j, excluded window) for the levels that can contribute.

    Level j contributes only through indices above a1 g_j, so iteration stops
    at the first j with a1 g_j >= max supp(x).
    """
    top = x.support[-1]
    for j, gj in enumerate(params.g, start=1):
        if params.a1 * gj >= top:
            return
        yield j, gj, params.excluded(j)


def norm_xpg(x: SparseVector, params: XpgParams) -> Scalar:
    if not x:
        return 0
    best = sup_norm(x)
    a1 = params.a1
    for _, gj, (lo, hi) in _xpg_levels(x, params):
        vals = sorted(
            (abs(c) for n, c in x.items() if n > a1 * gj and not lo <= n <= hi),
            reverse=True,
        )
        best = _max(best, _exact_sum(vals[: gj - 1]))
    return best


# ---------------------------------------------------------------------------
# X_w


def in_dyadic(n: int) -> bool:
    """n in D = {2, 4, 8, ...}."""
    return n >= 2 and n & (n - 1) == 0


def xw_weight_dyadic(k: int) -> Scalar:
    r = math.isqrt(k)
    return Fraction(1, r) if r * r == k else 1 / math.sqrt(k)


def xw_weight_other(k: int) -> Fraction:
    return Fraction(1, k)


def norm_xw(x: SparseVector) -> Scalar:
    # Decreasing weights matched to decreasing moduli maximize the pairing.
    dyadic = sorted((abs(c) for n, c in x.items() if in_dyadic(n)), reverse=True)
    other = sorted((abs(c) for n, c in x.items() if not in_dyadic(n)), reverse=True)
    terms = [xw_weight_dyadic(k) * v for k, v in enumerate(dyadic, start=1)]
    terms += [xw_weight_other(k) * v for k, v in enumerate(other, start=1)]
    return _exact_sum(terms)


def xw_indicator_norm(n_dyadic: int, n_other: int) -> float:
    """||1_A|| in X_w for any A with the given counts, via the weight ranks."""
    return math.fsum(1 / math.sqrt(k) for k in range(1, n_dyadic + 1)) + math.fsum(
        1 / k for k in range(1, n_other + 1)
    )


# ---------------------------------------------------------------------------
# isometric counterexample space


def norm_xiso(x: SparseVector, lam) -> Scalar:
    lam = _q(lam)
    x1, x2 = x[1], x[2]
    return max(abs(x1 / lam + x2), abs(x1 + x2 / lam), _abs_sum(x.values()) / lam)


# ---------------------------------------------------------------------------
# X_S


def norm_xs(x: SparseVector) -> Scalar:
    if not x:
        return 0
    items = x.items()
    best = 0
    k = 1
    # Sets of size k live on [k^2, oo); pad with zeros when fewer are available.
    while k * k <= items[-1][0]:
        vals = sorted((abs(c) for n, c in items if n >= k * k), reverse=True)
        best = _max(best, _exact_sum(vals[:k]))
        k += 1
    return best


# ---------------------------------------------------------------------------
# dispatch


@dataclass(frozen=True)
class SpaceSpec:
    kind: str
    params: Optional[XpgParams] = None
    lam: Optional[Fraction] = None

    KINDS = ("xpg", "xw", "xiso", "xs")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise DomainError(f"unknown space kind {self.kind!r}; expected one of {self.KINDS}")
        if self.kind == "xpg" and not isinstance(self.params, XpgParams):
            raise DomainError("xpg needs XpgParams")
        if self.kind == "xiso":
            if self.lam is None:
                raise DomainError("xiso needs lambda")
            object.__setattr__(self, "lam", _q(self.lam))
            if self.lam < 1:
                raise DomainError("xiso needs lambda >= 1")

    @classmethod
    def xpg(cls, params: Optional[XpgParams] = None) -> "SpaceSpec":
        return cls("xpg", params=params or preset_xpg_params())

    @classmethod
    def xw(cls) -> "SpaceSpec":
        return cls("xw")

    @classmethod
    def xiso(cls, lam) -> "SpaceSpec":
        return cls("xiso", lam=lam)

    @classmethod
    def xs(cls) -> "SpaceSpec":
        return cls("xs")

    @property
    def unconditional(self) -> bool:
        """Whether the unit basis is 1-unconditional (true for all but xiso)."""
        return self.kind != "xiso"

    def label(self) -> str:
        if self.kind == "xiso":
            return f"xiso(lambda={self.lam})"
        if self.kind == "xpg":
            p = self.params
            return f"xpg(lambda1={p.lambda1},lambda2={p.lambda2})"
        return self.kind

    def norm(self, x: SparseVector) -> Scalar:
        return norm(x, self)


def norm(x: SparseVector, spec: SpaceSpec) -> Scalar:
    if spec.kind == "xpg":
        return norm_xpg(x, spec.params)
    if spec.kind == "xw":
        return norm_xw(x)
    if spec.kind == "xiso":
        return norm_xiso(x, spec.lam)
    return norm_xs(x)


# ---------------------------------------------------------------------------
# brute-force oracle


def _check_budget(x: SparseVector) -> None:
    if len(x) > ORACLE_MAX_SUPPORT:
        raise OracleBudgetError(f"support size {len(x)} > {ORACLE_MAX_SUPPORT}")
    if x and x.support[-1] > ORACLE_MAX_INDEX:
        raise OracleBudgetError(f"max index {x.support[-1]} > {ORACLE_MAX_INDEX}")


def _subsets(seq: Sequence, max_size: int):
    for r in range(0, min(max_size, len(seq)) + 1):
        yield from itertools.combinations(seq, r)


def _oracle_xpg(x: SparseVector, params: XpgParams) -> Scalar:
    best = max(abs(c) for c in x.values())
    top = x.support[-1]
    a1 = params.a1
    for j, gj in enumerate(params.g, start=1):
        # F has min F = g_j, so every other member of F exceeds g_j.
        if gj >= top:
            break
        if j == len(params.g) and a1 * gj >= top:
            # nothing above a1 g_j, so the unknown window is irrelevant
            continue
        lo, hi = params.excluded(j)
        cands = [(n, abs(c)) for n, c in x.items() if n > gj]
        # F = {g_j} + S + unused filler indices, |S| <= g_j - 1.
        for S in _subsets(cands, gj - 1):
            total = sum((v for n, v in S if n > a1 * gj and not (lo <= n <= hi)), Fraction(0))
            if total > best:
                best = total
    return best


def _best_assignment(values, weight) -> float:
    # Any weight ranked beyond len(values) can be swapped for an unused
    # larger one, so the top len(values) ranks suffice.
    k = len(values)
    if k > ORACLE_MAX_PERMUTED:
        raise OracleBudgetError(f"{k} points in one weight class > {ORACLE_MAX_PERMUTED}")
    best = 0.0
    for perm in itertools.permutations(range(1, k + 1)):
        s = math.fsum(float(weight(r)) * float(v) for r, v in zip(perm, values))
        best = max(best, s)
    return best


def _oracle_xw(x: SparseVector) -> float:
    dyadic = [abs(c) for n, c in x.items() if in_dyadic(n)]
    other = [abs(c) for n, c in x.items() if not in_dyadic(n)]
    return _best_assignment(dyadic, xw_weight_dyadic) + _best_assignment(other, xw_weight_other)


def _oracle_xiso(x: SparseVector, lam: Fraction) -> Scalar:
    x1, x2 = x[1], x[2]
    best = max(abs(x1 / lam + x2), abs(x1 + x2 / lam))
    # l1 part as the sup of signed sums.
    coeffs = x.values()
    for signs in itertools.product((1, -1), repeat=len(coeffs)):
        s = sum((e * c for e, c in zip(signs, coeffs)), Fraction(0)) / lam
        if s > best:
            best = s
    return best


def _oracle_xs(x: SparseVector) -> Scalar:
    best = 0
    items = x.items()
    for S in _subsets(items, len(items)):
        if S and S[0][0] >= len(S) ** 2:
            total = sum((abs(c) for _, c in S), Fraction(0))
            if total > best:
                best = total
    return best


def norm_oracle(x: SparseVector, spec: SpaceSpec) -> Scalar:
    """Evaluate the norm by literal enumeration of the defining family."""
    _check_budget(x)
    if not x:
        return 0
    if spec.kind == "xpg":
        return _oracle_xpg(x, spec.params)
    if spec.kind == "xw":
        return _oracle_xw(x)
    if spec.kind == "xiso":
        return _oracle_xiso(x, spec.lam)
    return _oracle_xs(x)
