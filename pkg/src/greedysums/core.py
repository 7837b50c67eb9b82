"""Finitely supported vectors, index sets and the small notational helpers.

Coefficients are either exact rationals (``int``/``Fraction``) or floats.
Rational input stays rational through every operation here, so norms built
on top of these helpers can compare values exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Mapping, Tuple, Union

Scalar = Union[int, Fraction, float]
IndexSet = Tuple[int, ...]


def as_scalar(value) -> Scalar:
    """Coerce user input to a scalar, keeping rationals exact.

    Strings are parsed as rationals ("3", "-4/5", "0.25") unless they only
    parse as floats ("1e-3" is read exactly too, since Fraction accepts it).
    """
    if type(value) is Fraction or type(value) is float:
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, Rational):
        return Fraction(value)
    if isinstance(value, float):
        return value
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"unsupported scalar {value!r}")


def index_set(elements: Iterable[int] = ()) -> IndexSet:
    """Sorted, duplicate-free tuple of positive integers."""
    out = tuple(sorted(set(int(n) for n in elements)))
    if out and out[0] < 1:
        raise ValueError(f"indices must be >= 1, got {out[0]}")
    return out


class SparseVector:
    """An element of c00: a finite map from 1-based indices to nonzero scalars.

    Instances are immutable and hashable. Zero coefficients are dropped on
    construction, so ``support`` is exactly the set of stored indices.
    """

    __slots__ = ("_items", "_hash")

    def __init__(self, entries: Union[Mapping[int, Scalar], Iterable[Tuple[int, Scalar]]] = ()):
        if isinstance(entries, Mapping):
            entries = entries.items()
        acc = {}
        for n, c in entries:
            n = int(n)
            if n < 1:
                raise ValueError(f"indices must be >= 1, got {n}")
            if n in acc:
                raise ValueError(f"duplicate index {n}")
            acc[n] = as_scalar(c)
        self._items = tuple(sorted((n, c) for n, c in acc.items() if c != 0))
        self._hash = None

    @classmethod
    def _trusted(cls, items) -> "SparseVector":
        # items: sorted (index, nonzero scalar) pairs that are already validated
        self = object.__new__(cls)
        self._items = tuple(items)
        self._hash = None
        return self

    @classmethod
    def from_dense(cls, values: Iterable[Scalar], start: int = 1) -> "SparseVector":
        return cls((start + k, v) for k, v in enumerate(values))

    @classmethod
    def indicator(cls, indices: Iterable[int], signs: Mapping[int, int] | None = None) -> "SparseVector":
        """``1_A`` or, with signs, ``1_{eps A}``."""
        if signs is None:
            return cls((n, 1) for n in index_set(indices))
        return cls((n, signs[n]) for n in index_set(indices))

    # mapping-like access
    def __getitem__(self, n: int) -> Scalar:
        for k, c in self._items:
            if k == n:
                return c
        return 0

    def get(self, n: int) -> Scalar:
        return self[n]

    def items(self) -> Tuple[Tuple[int, Scalar], ...]:
        return self._items

    def values(self) -> Tuple[Scalar, ...]:
        return tuple(c for _, c in self._items)

    @property
    def support(self) -> IndexSet:
        return tuple(n for n, _ in self._items)

    def __len__(self) -> int:
        return len(self._items)

    def __iter__(self) -> Iterator[int]:
        return iter(self.support)

    def __bool__(self) -> bool:
        return bool(self._items)

    @property
    def is_exact(self) -> bool:
        return all(not isinstance(c, float) for _, c in self._items)

    def to_dict(self) -> dict:
        return dict(self._items)

    # arithmetic
    def __add__(self, other: "SparseVector") -> "SparseVector":
        if not isinstance(other, SparseVector):
            return NotImplemented
        acc = dict(self._items)
        for n, c in other._items:
            acc[n] = acc.get(n, 0) + c
        return SparseVector(acc)

    def __neg__(self) -> "SparseVector":
        return SparseVector((n, -c) for n, c in self._items)

    def __sub__(self, other: "SparseVector") -> "SparseVector":
        if not isinstance(other, SparseVector):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar) -> "SparseVector":
        scalar = as_scalar(scalar)
        return SparseVector((n, scalar * c) for n, c in self._items)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseVector):
            return NotImplemented
        return self._items == other._items

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._items)
        return self._hash

    def __repr__(self) -> str:
        return f"SparseVector({format_vector(self)!r})"


ZERO = SparseVector()


@dataclass(frozen=True)
class Interval:
    """Finite interval [lo, hi] of positive integers; ``Interval()`` is empty."""

    lo: int = 0
    hi: int = -1

    def __post_init__(self):
        if not self.is_empty and self.lo < 1:
            raise ValueError("interval endpoints must be >= 1")
        if self.lo > self.hi and (self.lo, self.hi) != (0, -1):
            raise ValueError(f"invalid interval [{self.lo}, {self.hi}]")

    @property
    def is_empty(self) -> bool:
        return self.lo > self.hi

    def __len__(self) -> int:
        return 0 if self.is_empty else self.hi - self.lo + 1

    def __contains__(self, n: int) -> bool:
        return self.lo <= n <= self.hi

    def indices(self) -> IndexSet:
        return tuple(range(self.lo, self.hi + 1))

    def __str__(self) -> str:
        return "[]" if self.is_empty else f"[{self.lo},{self.hi}]"


EMPTY_INTERVAL = Interval()


def sign_pattern(signs: Mapping[int, int]) -> dict:
    """Validate a +/-1 sign map and return it as a plain dict."""
    out = {}
    for n, s in signs.items():
        if s not in (1, -1):
            raise ValueError(f"sign at {n} must be +1 or -1, got {s!r}")
        out[int(n)] = int(s)
    return out


def spread(A: Iterable[int]) -> int:
    A = tuple(A)
    if not A:
        return 0
    return max(A) - min(A) + 1


def surrounds(B: Iterable[int], A: Iterable[int]) -> bool:
    """True iff ``A`` is empty or ``B`` misses the hull [min A, max A]."""
    A = tuple(A)
    if not A:
        return True
    lo, hi = min(A), max(A)
    return not any(lo <= b <= hi for b in B)


def project(x: SparseVector, A: Iterable[int]) -> SparseVector:
    A = set(A)
    return SparseVector._trusted((n, c) for n, c in x.items() if n in A)


def sup_norm(x: SparseVector) -> Scalar:
    return max((abs(c) for c in x.values()), default=0)


def parse_vector(text: str) -> SparseVector:
    """Parse the literal syntax ``"index:value,index:value"``.

    Values may be integers, decimals or ``num/den``. An empty string is the
    zero vector.
    """
    text = text.strip()
    if not text:
        return ZERO
    entries = []
    for chunk in text.split(","):
        if not chunk.strip():
            continue
        try:
            idx, val = chunk.split(":")
            entries.append((int(idx), Fraction(val.strip())))
        except ValueError as exc:
            raise ValueError(f"bad vector entry {chunk!r}: expected index:value") from exc
    return SparseVector(entries)


def format_scalar(c: Scalar) -> str:
    if isinstance(c, float):
        return repr(c)
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_vector(x: SparseVector) -> str:
    return ",".join(f"{n}:{format_scalar(c)}" for n, c in x.items())


def format_index_set(A: Iterable[int]) -> str:
    return "{" + ",".join(str(n) for n in A) + "}"
