"""Desk-scale reproductions of the separations between greedy-type properties.

Each ``run_*`` function returns an :class:`ExperimentResult` whose rows are
reproducible from its arguments and seed alone, and whose ``verdict`` is the
experiment's own acceptance predicate. Rows with ``witness = true`` mark a
failed assertion.
"""

from __future__ import annotations

import csv
import io
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence

from .core import SparseVector, format_index_set, format_scalar, format_vector, spread, surrounds
from .errors import InsufficientLevelsError, TieExplosionError
from .props import (
    INF,
    competitor_inf,
    qg_constants,
    residual_ratio,
    set_pair_ratio,
    set_pair_sweep,
)
from .sampling import DEFAULT_GRID, random_structured_vector, random_vector
from .spaces import (
    SpaceSpec,
    XpgParams,
    norm,
    norm_oracle,
    norm_xiso,
    norm_xw,
    xw_indicator_norm,
)
from .tga import DEFAULT_TIE_CAP, greedy_sets, lambda_order, residual

FLOAT_RTOL = 1e-9
ORACLE_RTOL = 1e-12


@dataclass
class ExperimentResult:
    name: str
    rows: List[dict]
    verdict: bool
    seed: Optional[int] = None
    summary: dict = field(default_factory=dict)

    @property
    def failures(self) -> List[dict]:
        return [r for r in self.rows if r.get("witness")]

    def to_csv(self) -> str:
        cols: List[str] = []
        for row in self.rows:
            cols.extend(k for k in row if k not in cols)
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        writer.writeheader()
        for row in self.rows:
            writer.writerow({k: _cell(row.get(k, "")) for k in cols})
        return buf.getvalue()

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "verdict": "pass" if self.verdict else "fail",
            "seed": self.seed,
            "rows": len(self.rows),
            "witness_rows": len(self.failures),
            "summary": {k: _cell(v) for k, v in self.summary.items()},
        }


def _cell(v):
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, (Fraction, int)):
        return format_scalar(v)
    if isinstance(v, float):
        return "inf" if v == INF else repr(v)
    if isinstance(v, SparseVector):
        return format_vector(v)
    if isinstance(v, tuple):
        return format_index_set(v)
    return v


def _strictly_increasing(values: Sequence, exact: bool) -> bool:
    if exact:
        return all(b > a for a, b in zip(values, values[1:]))
    return all(b - a > FLOAT_RTOL * abs(a) for a, b in zip(values, values[1:]))


def _run(lo: int, hi: int) -> str:
    return f"{lo}..{hi}"


# ---------------------------------------------------------------------------


def separation_sets(params: XpgParams, j: int):
    """The witness pair at level j: a block just above a1 g_j, and a longer block at g_{j+1}."""
    g = params.g
    if j + 1 > len(g):
        raise InsufficientLevelsError(f"level {j} needs g_{j + 1}")
    gj = g[j - 1]
    base = math.floor(params.a1 * gj)
    size = math.floor(params.a3 * gj)
    A = tuple(range(base + 1, base + size + 1))
    extra = math.floor((params.lambda1 - 1) * (base + size))
    B = tuple(range(g[j], g[j] + size + extra + 1))
    return A, B


def run_pg_separation(params: XpgParams, j_range: Iterable[int], sweep_n: int = 14) -> ExperimentResult:
    """Norm blow-up of the lambda1-max-conservative witnesses, plus a lambda2 sweep."""
    rows, ratios = [], []
    ok = True
    for j in j_range:
        if j < 2:
            raise ValueError("levels start at j = 2 (the bound uses g_{j-1})")
        A, B = separation_sets(params, j)
        spec = SpaceSpec.xpg(params)
        rep = set_pair_ratio(spec, A, B, params.lambda1, "max_conservative")
        na, nb = rep.witness["norm_A"], rep.witness["norm_B"]
        bound_a = math.floor(params.a3 * params.g[j - 1])
        bound_b = params.g[j - 2]
        good = na >= bound_a and nb <= bound_b
        ok &= good
        ratios.append(rep.worst_ratio)
        rows.append(
            {
                "j": j,
                "A": _run(A[0], A[-1]),
                "B": _run(B[0], B[-1]),
                "size_A": len(A),
                "size_B": len(B),
                "norm_A": na,
                "norm_B": nb,
                "ratio": rep.worst_ratio,
                "lower_bound_A": bound_a,
                "upper_bound_B": bound_b,
                "witness": not good,
            }
        )
    increasing = _strictly_increasing(ratios, exact=True)
    summary = {"ratios_increasing": increasing}
    if sweep_n:
        sweep = set_pair_sweep(SpaceSpec.xpg(params), params.lambda2, "max_conservative", sweep_n)
        constant = params.max_conservative_constant()
        summary.update(
            sweep_n=sweep_n,
            sweep_max_ratio=sweep.worst_ratio,
            sweep_pairs=sweep.instances_checked,
            conservative_constant=constant,
        )
        if sweep.worst_ratio > constant:
            ok = False
            rows.append({"j": "sweep", "ratio": sweep.worst_ratio, "witness": True})
    if not increasing:
        ok = False
    return ExperimentResult("pg-separation", rows, ok, None, summary)


# ---------------------------------------------------------------------------


def xw_witness_sets(N: int):
    """A_N = {2, 4, ..., 2^N} inside D and B_N = {3^{N+1}, ..., 3^{2N}} outside it."""
    return tuple(2**k for k in range(1, N + 1)), tuple(3**k for k in range(N + 1, 2 * N + 1))


def run_xw_divergence(Ns: Sequence[int], literal_max: int = 12) -> ExperimentResult:
    rows, ratios, ok = [], [], True
    for N in Ns:
        na = xw_indicator_norm(N, 0)
        nb = xw_indicator_norm(0, N)
        r = na / nb
        literal = ""
        good = True
        if N <= literal_max:
            A, B = xw_witness_sets(N)
            la = float(norm_xw(SparseVector.indicator(A)))
            lb = float(norm_xw(SparseVector.indicator(B)))
            literal = math.isclose(la, na, rel_tol=ORACLE_RTOL) and math.isclose(lb, nb, rel_tol=ORACLE_RTOL)
            good = literal
        ok &= good
        ratios.append(r)
        rows.append({"N": N, "norm_A": na, "norm_B": nb, "ratio": r, "literal_check": literal, "witness": not good})
    increasing = _strictly_increasing(ratios, exact=False)
    return ExperimentResult("xw-divergence", rows, ok and increasing, None, {"ratios_increasing": increasing})


# ---------------------------------------------------------------------------


def iso_witness_interval(lam) -> tuple:
    """(lo, 1) with lo = max{1/(lam-1), lam/(lam+1)}; lo = inf when lam = 1."""
    lam = Fraction(lam)
    lo = lam / (lam + 1)
    lo = max(lo, 1 / (lam - 1)) if lam > 1 else math.inf
    return lo, Fraction(1)


def simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """Fraction with the smallest denominator strictly inside (lo, hi)."""
    if not lo < hi:
        raise ValueError("empty interval")
    d = 1
    while True:
        n = math.floor(lo * d) + 1
        if Fraction(n, d) < hi:
            return Fraction(n, d)
        d += 1


def _iso_instance(rng: random.Random, lam: Fraction, m_max: int, grid, cap: int):
    """A nontrivial (x, m): support larger than ceil(lam m), often hitting e1 and e2."""
    while True:
        m = rng.randint(1, m_max)
        order = lambda_order(lam, m)
        k = order + rng.randint(1, 4)
        window = list(range(3, k + 6))
        supp = rng.sample(window, k)
        if rng.random() < 0.8:
            supp[0] = 1
        if rng.random() < 0.8:
            supp[-1] = 2
        supp = list(dict.fromkeys(supp))
        while len(supp) < k:
            n = rng.choice(window)
            if n not in supp:
                supp.append(n)
        x = SparseVector((n, rng.choice(grid) * rng.choice((1, -1))) for n in supp)
        try:
            greedy_sets(x, order, cap)
        except TieExplosionError:
            continue
        return x, m


ISO_GRID = tuple(sorted({Fraction(n, d) for d in range(1, 6) for n in range(1, 2 * d + 1)}))


def run_iso_threshold(
    lambda_grid: Sequence, trials: int, seed: int, m_max: int = 3, cap: int = DEFAULT_TIE_CAP
) -> ExperimentResult:
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rows, ok = [], True
    for lam in lambda_grid:
        lam = Fraction(lam)
        lo, hi = iso_witness_interval(lam)
        empty = not lo < hi
        row = {"lambda": lam, "interval_lo": lo if lo != math.inf else "inf", "interval_empty": empty}
        if lam <= 2:
            good = empty
            row["witness"] = not good
        else:
            spec = SpaceSpec.xiso(lam)
            s = simplest_between(lo, hi)
            x = SparseVector({1: -s, 2: 1})
            y = SparseVector({1: -s})
            nx, ny = norm_xiso(x, lam), norm_xiso(y, lam)
            _, sqg = qg_constants(spec, [x])
            rng = random.Random(f"{seed}:{lam}")
            worst, worst_w = 0, None
            for _ in range(trials):
                v, m = _iso_instance(rng, lam, m_max, ISO_GRID, cap)
                rep = residual_ratio(spec, v, m, lam, "AG2", cap)
                if rep.worst_ratio > worst:
                    worst, worst_w = rep.worst_ratio, rep.witness
            good = (not empty) and nx < ny and worst <= 1
            row.update(
                s=s,
                norm_x=nx,
                norm_y=ny,
                suppression_lower_bound=sqg.worst_ratio,
                trials=trials,
                max_ag2_ratio=worst,
                worst_instance=format_vector(worst_w["x"]) if worst_w else "",
                witness=not good,
            )
        ok &= good
        rows.append(row)
    return ExperimentResult("iso-threshold", rows, ok, seed)


# ---------------------------------------------------------------------------


def xs_witness_sets(N: int):
    return tuple(range(N * N, N * N + N)), tuple(range(1, 2 * N + 1))


def run_xs_hierarchy(Ns: Sequence[int], trials: int, seed: int, m_max: int = 3) -> ExperimentResult:
    spec = SpaceSpec.xs()
    lam = Fraction(2)
    rows, ratios, ok = [], [], True
    for N in Ns:
        A, B = xs_witness_sets(N)
        cond = (lam - 1) * spread(A) + len(A) <= len(B)
        surr = surrounds(B, A)
        row = {"N": N, "side_condition": cond, "surrounds": surr}
        if not (cond and surr):
            row.update(skipped="B does not surround A" if cond else "size condition fails", witness=False)
            rows.append(row)
            continue
        rep = set_pair_ratio(spec, A, B, lam, "democratic_t2")
        na, nb = rep.witness["norm_A"], rep.witness["norm_B"]
        r = Fraction(nb) / Fraction(na)
        ratios.append(r)
        row.update(norm_A=na, norm_B=nb, ratio=r, witness=False)
        rows.append(row)
    decreasing = all(b < a for a, b in zip(ratios, ratios[1:]))
    ok &= decreasing
    rng = random.Random(seed)
    worst, count = 0, 0
    for _ in range(trials):
        x = random_vector(rng, range(1, 40), 8, DEFAULT_GRID, min_support=1)
        m = rng.randint(1, m_max)
        rep = residual_ratio(spec, x, m, lam, "PG2")
        count += 1
        worst = max(worst, rep.worst_ratio)
    bounded = worst < INF
    ok &= bounded
    summary = {"ratios_decreasing": decreasing, "pg2_trials": count, "pg2_max_ratio": worst}
    return ExperimentResult("xs-hierarchy", rows, ok, seed, summary)


# ---------------------------------------------------------------------------

HIERARCHY_LAMBDAS = (Fraction(1), Fraction(3, 2), Fraction(2), Fraction(5, 2), Fraction(3))


def hierarchy_infs(spec: SpaceSpec, x: SparseVector, m: int, lam, cap: int = DEFAULT_TIE_CAP):
    """Per greedy set of order ceil(lam m): the four competitor infima and the residual norm."""
    order = lambda_order(lam, m)
    if order >= len(x):
        return []
    inf_ag, _ = competitor_inf(spec, x, m, "AG")
    inf_ag2, _ = competitor_inf(spec, x, m, "AG2")
    out = []
    for L in greedy_sets(x, order, cap).sets:
        out.append(
            {
                "greedy_set": L,
                "residual": norm(residual(x, L), spec),
                "AG": inf_ag,
                "AG2": inf_ag2,
                "PG2": competitor_inf(spec, x, m, "PG2", L)[0],
                "RPG2": competitor_inf(spec, x, m, "RPG2", L)[0],
            }
        )
    return out


def ordering_holds(infs: dict) -> bool:
    return infs["AG"] <= infs["AG2"] <= infs["PG2"] and infs["AG2"] <= infs["RPG2"]


def _sample_for(rng: random.Random, spec: SpaceSpec, max_support: int) -> SparseVector:
    if spec.kind in ("xpg", "xs"):
        return random_structured_vector(rng, spec, max_support)
    window = range(1, 9) if spec.kind == "xiso" else range(1, 33)
    return random_vector(rng, window, max_support, DEFAULT_GRID)


def run_hierarchy_ordering(
    spec: SpaceSpec, trials: int, seed: int, max_support: int = 8, m_max: int = 3
) -> ExperimentResult:
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = random.Random(seed)
    stats = {lam: {"instances": 0, "trivial": 0, "violations": 0} for lam in HIERARCHY_LAMBDAS}
    witness_rows = []
    for t in range(trials):
        lam = rng.choice(HIERARCHY_LAMBDAS)
        m = rng.randint(1, m_max)
        x = _sample_for(rng, spec, max_support)
        st = stats[lam]
        st["instances"] += 1
        try:
            per_set = hierarchy_infs(spec, x, m, lam)
        except TieExplosionError as exc:  # recorded, never silently dropped
            witness_rows.append({"trial": t, "lambda": lam, "m": m, "x": x, "error": type(exc).__name__, "witness": True})
            continue
        if not per_set:
            st["trivial"] += 1
        for infs in per_set:
            if not ordering_holds(infs):
                st["violations"] += 1
                witness_rows.append(
                    {"trial": t, "lambda": lam, "m": m, "x": x, "greedy_set": infs["greedy_set"],
                     "AG": infs["AG"], "AG2": infs["AG2"], "PG2": infs["PG2"], "RPG2": infs["RPG2"], "witness": True}
                )
    rows = [{"lambda": lam, **st, "witness": False} for lam, st in stats.items()]
    rows += witness_rows
    total = sum(st["violations"] for st in stats.values())
    return ExperimentResult(
        "hierarchy-ordering", rows, not witness_rows, seed, {"space": spec.label(), "trials": trials, "violations": total}
    )


# ---------------------------------------------------------------------------


def _oracle_match(a, b) -> bool:
    if isinstance(a, float) or isinstance(b, float):
        return math.isclose(float(a), float(b), rel_tol=ORACLE_RTOL, abs_tol=0.0)
    return a == b


def run_oracle_fuzz(specs: Sequence[SpaceSpec], trials: int, seed: int, max_support: int = 8) -> ExperimentResult:
    rows, ok = [], True
    for spec in specs:
        rng = random.Random(f"{seed}:{spec.label()}")
        cap = min(max_support, 6) if spec.kind == "xw" else max_support
        mismatches, first = 0, None
        for _ in range(trials):
            x = _sample_for(rng, spec, cap)
            a, b = norm(x, spec), norm_oracle(x, spec)
            if not _oracle_match(a, b):
                mismatches += 1
                if first is None:
                    first = (x, a, b)
        zero_ok = norm(SparseVector(), spec) == 0 == norm_oracle(SparseVector(), spec)
        good = mismatches == 0 and zero_ok
        ok &= good
        row = {"space": spec.label(), "trials": trials, "max_support": cap, "mismatches": mismatches, "zero_vector_ok": zero_ok}
        if first:
            row.update(x=first[0], structured=first[1], oracle=first[2])
        row["witness"] = not good
        rows.append(row)
    return ExperimentResult("oracle-fuzz", rows, ok, seed)


EXPERIMENTS = {
    "pg-separation": run_pg_separation,
    "xw-divergence": run_xw_divergence,
    "iso-threshold": run_iso_threshold,
    "xs-hierarchy": run_xs_hierarchy,
    "hierarchy-ordering": run_hierarchy_ordering,
    "oracle-fuzz": run_oracle_fuzz,
}
