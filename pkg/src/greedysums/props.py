"""Instance-level checks for the greedy-type properties.

Every check returns a :class:`PropertyReport`. A report certifies a lower
bound on the best constant of a property (the witness is exact); it never
certifies that the property holds, only that no worse instance was found in
the family that was searched.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import combinations
from numbers import Rational
from typing import Iterable, List, Mapping, Optional, Sequence, Tuple

from .core import (
    IndexSet,
    Scalar,
    SparseVector,
    format_index_set,
    format_scalar,
    format_vector,
    index_set,
    sign_pattern,
    spread,
    sup_norm,
    surrounds,
)
from .errors import ConstraintError, DomainError
from .spaces import SpaceSpec, norm
from .tga import DEFAULT_TIE_CAP, greedy_sets, lambda_order, residual, truncate

FAMILIES = ("AG", "AG2", "PG", "PG2", "RPG2")
FLAVORS = ("democratic", "max_conservative", "democratic_t2")
INF = math.inf


def ratio(num: Scalar, den: Scalar) -> Scalar:
    """num / den with 0/0 = 0 and x/0 = inf; exact when both are rational."""
    if num == 0:
        return 0
    if den == 0:
        return INF
    if isinstance(num, Rational) and isinstance(den, Rational):
        return Fraction(num) / Fraction(den)
    return float(num) / float(den)


def _q(lam) -> Fraction:
    return lam if isinstance(lam, Fraction) else Fraction(lam)


@dataclass
class PropertyReport:
    property: str
    lam: Fraction
    worst_ratio: Scalar
    witness: dict
    exhaustive: bool
    instances_checked: int
    space: Optional[SpaceSpec] = None
    seed: Optional[int] = None
    extra: dict = field(default_factory=dict)

    def violates(self, bound: Scalar) -> bool:
        return self.worst_ratio > bound

    def to_row(self) -> dict:
        return {
            "property": self.property,
            "lambda": format_scalar(self.lam),
            "ratio": _fmt_ratio(self.worst_ratio),
            "witness": json.dumps(_plain(self.witness), sort_keys=True),
            "exhaustive": str(self.exhaustive).lower(),
            "seed": "" if self.seed is None else str(self.seed),
        }

    def to_json(self) -> dict:
        out = {
            "property": self.property,
            "lambda": format_scalar(self.lam),
            "space": self.space.label() if self.space else None,
            "worst_ratio": _fmt_ratio(self.worst_ratio),
            "worst_ratio_float": None if self.worst_ratio == INF else float(self.worst_ratio),
            "witness": _plain(self.witness),
            "exhaustive": self.exhaustive,
            "instances_checked": self.instances_checked,
            "seed": self.seed,
        }
        if self.extra:
            out["extra"] = _plain(self.extra)
        return out


CSV_COLUMNS = ("property", "lambda", "ratio", "witness", "exhaustive", "seed")


def reports_to_csv(reports: Iterable[PropertyReport]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for r in reports:
        writer.writerow(r.to_row())
    return buf.getvalue()


def _fmt_ratio(r: Scalar) -> str:
    return "inf" if r == INF else format_scalar(r)


def _plain(obj):
    if isinstance(obj, SparseVector):
        return format_vector(obj)
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, Fraction):
        return obj.numerator if obj.denominator == 1 else format_scalar(obj)
    if isinstance(obj, float):
        return "inf" if obj == INF else obj
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    return obj


def merge_reports(reports: Sequence[PropertyReport]) -> PropertyReport:
    """Max-ratio reduction; the first report attaining the max keeps its witness."""
    if not reports:
        raise DomainError("nothing to merge")
    best = reports[0]
    for r in reports[1:]:
        if r.worst_ratio > best.worst_ratio:
            best = r
    return replace(
        best,
        exhaustive=all(r.exhaustive for r in reports),
        instances_checked=sum(r.instances_checked for r in reports),
    )


# ---------------------------------------------------------------------------
# competitor families


def _runs(support: IndexSet, max_len: int):
    """Support-aligned runs [s_a, s_b] of length <= max_len.

    ||x - P_I x|| depends only on I cap supp(x), and the tight interval
    [s_a, s_b] is the shortest interval cutting out that run.
    """
    for a in range(len(support)):
        for b in range(a, len(support)):
            if support[b] - support[a] + 1 > max_len:
                break
            yield support[a : b + 1]


def competitor_sets(x: SparseVector, m: int, family: str, greedy_set: IndexSet = ()) -> List[IndexSet]:
    """Finite canonical family of sets whose residuals realize the infimum.

    For PG2/RPG2 the side condition Lambda >= min I (resp. Lambda <= max I)
    is checked on the tight interval. That loses nothing: Lambda lies in
    supp(x), so a looser interval meeting the condition would contain a
    support point outside the run.
    """
    if family not in FAMILIES:
        raise DomainError(f"unknown family {family!r}")
    supp = x.support
    if family == "AG":
        # |A| = m with zero padding is the same as |A| <= m inside the support
        return [c for r in range(0, min(m, len(supp)) + 1) for c in combinations(supp, r)]
    if family == "PG":
        seen, out = set(), []
        for n in range(0, m + 1):
            head = tuple(k for k in supp if k <= n)
            if head not in seen:
                seen.add(head)
                out.append(head)
        return out
    out = [()]
    for run in _runs(supp, m):
        if family == "PG2" and greedy_set and not min(greedy_set) >= run[0]:
            continue
        if family == "RPG2" and greedy_set and not max(greedy_set) <= run[-1]:
            continue
        out.append(run)
    return out


def competitor_inf(
    spec: SpaceSpec, x: SparseVector, m: int, family: str, greedy_set: IndexSet = ()
) -> Tuple[Scalar, IndexSet]:
    best, arg = None, ()
    for S in competitor_sets(x, m, family, greedy_set):
        v = norm(residual(x, S), spec)
        if best is None or v < best:
            best, arg = v, S
    return best, arg


def residual_ratio(
    spec: SpaceSpec,
    x: SparseVector,
    m: int,
    lam,
    family: str,
    cap: int = DEFAULT_TIE_CAP,
) -> PropertyReport:
    """Worst ||x - P_Lambda x|| / inf_competitor ||x - P_I x|| over greedy sets of order ceil(lam m)."""
    lam = _q(lam)
    if m < 1:
        raise DomainError("m must be >= 1")
    if family not in FAMILIES:
        raise DomainError(f"unknown family {family!r}")
    name = f"{family}-residual"
    order = lambda_order(lam, m)
    if order >= len(x):
        w = {"kind": "trivial", "x": x, "m": m, "order": order, "family": family}
        return PropertyReport(name, lam, 0, w, True, 1, spec)
    outcome = greedy_sets(x, order, cap)
    worst, witness = None, None
    for L in outcome.sets:
        num = norm(residual(x, L), spec)
        den, comp = competitor_inf(spec, x, m, family, L)
        r = ratio(num, den)
        if worst is None or r > worst:
            worst = r
            witness = {
                "kind": "residual",
                "x": x,
                "m": m,
                "order": order,
                "family": family,
                "greedy_set": L,
                "competitor": comp,
                "residual_norm": num,
                "competitor_norm": den,
            }
    return PropertyReport(name, lam, worst, witness, True, len(outcome.sets), spec)


# ---------------------------------------------------------------------------
# set-pair (democracy-type) conditions


def pair_condition(A: IndexSet, B: IndexSet, lam: Fraction, flavor: str) -> Optional[str]:
    """Name of the first violated side condition, or None."""
    if flavor == "democratic":
        return None if len(A) <= len(B) else "|A| <= |B|"
    if flavor == "max_conservative":
        if A and B and not max(A) < min(B):
            return "A < B"
        max_a = max(A) if A else 0
        return None if (lam - 1) * max_a + len(A) <= len(B) else "(lambda-1) max A + |A| <= |B|"
    if flavor == "democratic_t2":
        if not (lam - 1) * spread(A) + len(A) <= len(B):
            return "(lambda-1) s(A) + |A| <= |B|"
        return None if surrounds(B, A) else "B surrounds A"
    raise DomainError(f"unknown flavor {flavor!r}")


def set_pair_ratio(spec: SpaceSpec, A, B, lam, flavor: str) -> PropertyReport:
    A, B, lam = index_set(A), index_set(B), _q(lam)
    failed = pair_condition(A, B, lam, flavor)
    if failed:
        raise ConstraintError(failed, f"A = {format_index_set(A)}, B = {format_index_set(B)}")
    na = norm(SparseVector.indicator(A), spec)
    nb = norm(SparseVector.indicator(B), spec)
    w = {"kind": "set_pair", "flavor": flavor, "A": A, "B": B, "norm_A": na, "norm_B": nb}
    return PropertyReport(flavor, lam, ratio(na, nb), w, True, 1, spec)


def _mask_set(mask: int) -> IndexSet:
    out, n = [], 1
    while mask:
        if mask & 1:
            out.append(n)
        mask >>= 1
        n += 1
    return tuple(out)


def set_pair_sweep(spec: SpaceSpec, lam, flavor: str, N: int) -> PropertyReport:
    """Exhaustive max of ||1_A|| / ||1_B|| over all admissible A, B inside [1..N].

    For each A only the smallest ||1_B|| among admissible B matters, so the
    sweep tabulates minimum norms by the shape of the constraint instead of
    visiting every pair. ``instances_checked`` still counts every pair.
    """
    lam = _q(lam)
    if flavor not in FLAVORS:
        raise DomainError(f"unknown flavor {flavor!r}")
    if N > 16:
        raise DomainError("exhaustive sweeps are limited to N <= 16")
    full = 1 << N
    norms = [norm(SparseVector.indicator(_mask_set(mk)), spec) for mk in range(full)]
    sizes = [bin(mk).count("1") for mk in range(full)]

    def min_by_size(masks):
        # best[k] = (min norm, mask) over masks with size >= k; cnt[k] = #masks with size >= k
        best = [None] * (N + 2)
        cnt = [0] * (N + 2)
        for mk in masks:
            k = sizes[mk]
            cnt[k] += 1
            if best[k] is None or norms[mk] < norms[best[k]]:
                best[k] = mk
        for k in range(N - 1, -1, -1):
            cnt[k] += cnt[k + 1]
            if best[k] is None or (best[k + 1] is not None and norms[best[k + 1]] < norms[best[k]]):
                best[k] = best[k + 1]
        return best, cnt

    tables = {}

    def table(key, masks_fn):
        if key not in tables:
            tables[key] = min_by_size(masks_fn())
        return tables[key]

    worst, witness, checked = 0, None, 0
    for amask in range(1, full):
        A = _mask_set(amask)
        if flavor == "democratic":
            need = len(A)
            best, cnt = table("all", lambda: range(full))
        elif flavor == "max_conservative":
            need = math.ceil((lam - 1) * A[-1] + len(A))
            lo_bit = A[-1]
            best, cnt = table(("above", lo_bit), lambda: (mk for mk in range(full) if mk >> lo_bit << lo_bit == mk))
        else:
            need = math.ceil((lam - 1) * spread(A) + len(A))
            hull = ((1 << A[-1]) - 1) ^ ((1 << (A[0] - 1)) - 1)
            best, cnt = table(("avoid", hull), lambda: (mk for mk in range(full) if not mk & hull))
        if need > N:
            continue
        checked += cnt[need]
        bmask = best[need]
        if bmask is None:
            continue
        r = ratio(norms[amask], norms[bmask])
        if r > worst:
            worst = r
            witness = {
                "kind": "set_pair",
                "flavor": flavor,
                "A": A,
                "B": _mask_set(bmask),
                "norm_A": norms[amask],
                "norm_B": norms[bmask],
            }
    return PropertyReport(f"{flavor}-sweep", lam, worst, witness or {"kind": "none"}, True, checked, spec, extra={"N": N})


# ---------------------------------------------------------------------------
# SLC2


def slc2_condition(x: SparseVector, A: IndexSet, B: IndexSet, lam: Fraction) -> Optional[str]:
    if sup_norm(x) > 1:
        return "||x||_inf <= 1"
    if not (lam - 1) * spread(A) + len(A) <= len(B):
        return "(lambda-1) s(A) + |A| <= |B|"
    if set(B) & set(x.support):
        return "B cap supp(x) = empty"
    if not surrounds(B, A):
        return "B surrounds A"
    if not surrounds(x.support, A):
        return "x surrounds A"
    return None


def slc2_instance(
    spec: SpaceSpec,
    x: SparseVector,
    A,
    B,
    eps: Optional[Mapping[int, int]] = None,
    delta: Optional[Mapping[int, int]] = None,
    lam=1,
) -> PropertyReport:
    """||x + 1_{eps A}|| / ||x + 1_{delta B}|| under the type-2 side conditions."""
    A, B, lam = index_set(A), index_set(B), _q(lam)
    eps = sign_pattern(eps if eps is not None else {n: 1 for n in A})
    delta = sign_pattern(delta if delta is not None else {n: 1 for n in B})
    failed = slc2_condition(x, A, B, lam)
    if failed:
        raise ConstraintError(failed)
    num = norm(x + SparseVector.indicator(A, eps), spec)
    den = norm(x + SparseVector.indicator(B, delta), spec)
    w = {"kind": "slc2", "x": x, "A": A, "B": B, "eps": eps, "delta": delta, "num": num, "den": den}
    return PropertyReport("SLC2", lam, ratio(num, den), w, True, 1, spec)


# ---------------------------------------------------------------------------
# quasi-greedy, truncation, UL


def qg_constants(spec: SpaceSpec, corpus: Sequence[SparseVector], cap: int = DEFAULT_TIE_CAP):
    """Lower bounds for the quasi-greedy and suppression quasi-greedy constants.

    Returns ``(quasi_greedy_report, suppression_report)``. Orders run over
    0 <= m <= |supp(x)|; order 0 pins the suppression bound at >= 1.
    """
    if not corpus:
        raise DomainError("corpus must be nonempty")
    qg_worst, qg_w, sq_worst, sq_w, count = 0, None, 0, None, 0
    for x in corpus:
        nx = norm(x, spec)
        for m in range(0, len(x) + 1):
            for L in greedy_sets(x, m, cap).sets:
                count += 1
                kept = SparseVector((n, c) for n, c in x.items() if n in set(L))
                rq = ratio(norm(kept, spec), nx)
                rs = ratio(norm(residual(x, L), spec), nx)
                if qg_w is None or rq > qg_worst:
                    qg_worst, qg_w = rq, {"kind": "qg", "x": x, "greedy_set": L}
                if sq_w is None or rs > sq_worst:
                    sq_worst, sq_w = rs, {"kind": "sqg", "x": x, "greedy_set": L}
    return (
        PropertyReport("quasi-greedy", Fraction(1), qg_worst, qg_w, False, count, spec),
        PropertyReport("suppression-quasi-greedy", Fraction(1), sq_worst, sq_w, False, count, spec),
    )


def truncation_check(spec: SpaceSpec, corpus: Sequence[SparseVector], a_grid: Sequence) -> PropertyReport:
    """max ||T_a x|| / ||x|| over corpus x a_grid."""
    worst, w, count = 0, {"kind": "none"}, 0
    for x in corpus:
        nx = norm(x, spec)
        for a in a_grid:
            count += 1
            r = ratio(norm(truncate(x, a), spec), nx)
            if r > worst:
                worst, w = r, {"kind": "truncation", "x": x, "a": a}
    return PropertyReport("truncation", Fraction(1), worst, w, False, count, spec)


def ul_check(spec: SpaceSpec, A, coeffs: Sequence, C_qg) -> PropertyReport:
    """Check (1/2C) min|a| ||1_A|| <= ||sum a_n e_n|| <= 2C max|a| ||1_A||.

    ``extra`` holds ``lower_slack = middle / lower_bound`` (>= 1 when the left
    inequality holds) and ``upper_slack = middle / upper_bound`` (<= 1 when
    the right one holds). ``worst_ratio`` is the larger of
    lower_bound / middle and middle / upper_bound, so > 1 means a violation.
    """
    A = index_set(A)
    if not A:
        raise DomainError("A must be nonempty")
    if len(coeffs) != len(A):
        raise DomainError("one coefficient per element of A")
    x = SparseVector(zip(A, coeffs))
    if len(x) != len(A):
        raise DomainError("coefficients must be nonzero")
    C = C_qg if isinstance(C_qg, float) else Fraction(C_qg)
    mags = [abs(c) for c in x.values()]
    ind = norm(SparseVector.indicator(A), spec)
    mid = norm(x, spec)
    lower = min(mags) * ind / (2 * C)
    upper = 2 * C * max(mags) * ind
    lower_slack, upper_slack = ratio(mid, lower), ratio(mid, upper)
    worst = max(ratio(lower, mid), upper_slack)
    w = {"kind": "ul", "A": A, "coeffs": list(x.values()), "C": C, "lower": lower, "middle": mid, "upper": upper}
    return PropertyReport(
        "UL", Fraction(1), worst, w, True, 1, spec, extra={"lower_slack": lower_slack, "upper_slack": upper_slack}
    )


# ---------------------------------------------------------------------------
# replay


def replay(report: PropertyReport, spec: Optional[SpaceSpec] = None) -> Scalar:
    """Recompute the ratio from the witness alone."""
    spec = spec or report.space
    w = report.witness
    kind = w.get("kind")
    if kind in ("trivial", "none"):
        return 0
    if kind == "residual":
        x = w["x"]
        return ratio(norm(residual(x, w["greedy_set"]), spec), norm(residual(x, w["competitor"]), spec))
    if kind == "set_pair":
        return ratio(norm(SparseVector.indicator(w["A"]), spec), norm(SparseVector.indicator(w["B"]), spec))
    if kind == "slc2":
        x = w["x"]
        return ratio(
            norm(x + SparseVector.indicator(w["A"], w["eps"]), spec),
            norm(x + SparseVector.indicator(w["B"], w["delta"]), spec),
        )
    if kind == "qg":
        x = w["x"]
        kept = SparseVector((n, c) for n, c in x.items() if n in set(w["greedy_set"]))
        return ratio(norm(kept, spec), norm(x, spec))
    if kind == "sqg":
        x = w["x"]
        return ratio(norm(residual(x, w["greedy_set"]), spec), norm(x, spec))
    if kind == "truncation":
        x = w["x"]
        return ratio(norm(truncate(x, w["a"]), spec), norm(x, spec))
    if kind == "ul":
        x = SparseVector(zip(w["A"], w["coeffs"]))
        ind = norm(SparseVector.indicator(w["A"]), spec)
        mid = norm(x, spec)
        mags = [abs(c) for c in w["coeffs"]]
        C = w["C"]
        return max(ratio(min(mags) * ind / (2 * C), mid), ratio(mid, 2 * C * max(mags) * ind))
    raise DomainError(f"cannot replay witness kind {kind!r}")


def sweep_residual_ratio(
    spec: SpaceSpec, instances: Iterable[Tuple[SparseVector, int]], lam, family: str, seed: Optional[int] = None
) -> PropertyReport:
    """Merge residual_ratio over sampled (x, m) instances."""
    reports = [residual_ratio(spec, x, m, lam, family) for x, m in instances]
    out = merge_reports(reports)
    out.exhaustive = False
    out.seed = seed
    return out
