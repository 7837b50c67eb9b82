"""Acceptance criteria, one test each; every test prints a PASS/FAIL line."""

import math
import random
import time
from fractions import Fraction as F

import mpmath
import pytest

from greedysums.core import SparseVector, sup_norm
from greedysums.experiments import (
    iso_witness_interval,
    run_hierarchy_ordering,
    run_iso_threshold,
    run_oracle_fuzz,
    run_pg_separation,
    run_xs_hierarchy,
    run_xw_divergence,
)
from greedysums.props import FAMILIES, replay, residual_ratio, set_pair_sweep
from greedysums.sampling import DEFAULT_GRID, random_vector
from greedysums.spaces import SpaceSpec, norm, preset_xpg_params
from greedysums.tga import greedy_sets, truncate

XW_QUOTED = {4: 1.3365, 100: 3.5836, 10**4: 20.286}
XW_RTOL = 1e-9
# the quoted 20.286 is mis-rounded (exact value 20.28531...), so quoted figures
# are compared as approximations; the 1e-9 tolerance is applied to the
# independent high-precision value
XW_QUOTED_RTOL = 5e-5


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, detail, elapsed):
        with capsys.disabled():
            status = "PASS" if ok else "FAIL"
            print(f"\n[criterion {number}] {status} {title}: {detail} ({elapsed:.1f}s)")

    return emit


def test_criterion_1_oracle_equivalence(report):
    t0 = time.perf_counter()
    specs = [SpaceSpec.xpg(), SpaceSpec.xw(), SpaceSpec.xiso(3), SpaceSpec.xs()]
    res = run_oracle_fuzz(specs, 10**4, seed=1)
    elapsed = time.perf_counter() - t0
    mismatches = {r["space"]: r["mismatches"] for r in res.rows}
    ok = res.verdict and sum(mismatches.values()) == 0 and elapsed < 120
    report(1, "oracle equivalence", ok, f"10^4 vectors per space, mismatches {mismatches}", elapsed)
    assert ok


def test_criterion_2_pg_separation(report):
    t0 = time.perf_counter()
    params = preset_xpg_params()
    assert params.g == (1, 9, 82, 821, 9032)
    res = run_pg_separation(params, [2, 3, 4], sweep_n=14)
    norms = [(r["norm_A"], r["norm_B"]) for r in res.rows]
    ratios = [r["ratio"] for r in res.rows]
    bounds = all(r["norm_A"] >= r["lower_bound_A"] and r["norm_B"] <= r["upper_bound_B"] for r in res.rows)
    sweep = res.summary["sweep_max_ratio"]
    elapsed = time.perf_counter() - t0
    ok = (
        res.verdict
        and norms == [(2, 1), (20, 8), (205, 81)]
        and all(b > a for a, b in zip(ratios, ratios[1:]))
        and bounds
        and sweep <= 8
        and elapsed < 60
    )
    shown = [f"({a}, {b})" for a, b in norms]
    report(2, "PG separation", ok, f"norms {', '.join(shown)}, ratios {[str(r) for r in ratios]}, sweep max {sweep} <= 8", elapsed)
    assert ok


def _xw_ratio_mp(N):
    with mpmath.workdps(40):
        a = mpmath.fsum(1 / mpmath.sqrt(k) for k in range(1, N + 1))
        b = mpmath.harmonic(N)
        return a / b


def test_criterion_3_xw_non_democracy(report):
    t0 = time.perf_counter()
    Ns = [4, 8, 12, 100, 1000, 10**4]
    res = run_xw_divergence(Ns)
    got = {r["N"]: r["ratio"] for r in res.rows}
    ok = res.verdict
    for N in Ns:
        ok &= math.isclose(got[N], float(_xw_ratio_mp(N)), rel_tol=XW_RTOL)
    for N, quoted in XW_QUOTED.items():
        ok &= math.isclose(got[N], quoted, rel_tol=XW_QUOTED_RTOL)
    ok &= all(got[b] > got[a] for a, b in zip(Ns, Ns[1:]))
    elapsed = time.perf_counter() - t0
    detail = ", ".join(f"N={N}: {got[N]:.10f} (quoted {XW_QUOTED[N]})" for N in XW_QUOTED)
    detail += "; all N agree with 40-digit sums to 1e-9 relative"
    report(3, "Xw non-democracy", ok, detail, elapsed)
    assert ok


def test_criterion_4_isometric_threshold(report):
    t0 = time.perf_counter()
    res = run_iso_threshold([F(3, 2), F(2), F(3)], trials=10**5, seed=1)
    rows = {r["lambda"]: r for r in res.rows}
    r3 = rows[F(3)]
    empties = [not iso_witness_interval(lam)[0] < 1 for lam in (F(3, 2), F(2))]
    elapsed = time.perf_counter() - t0
    ok = (
        res.verdict
        and r3["s"] == F(4, 5)
        and r3["norm_x"] == F(11, 15)
        and r3["norm_y"] == F(4, 5)
        and r3["norm_x"] < r3["norm_y"]
        and r3["suppression_lower_bound"] == F(12, 11)
        and r3["trials"] == 10**5
        and r3["max_ag2_ratio"] <= 1
        and all(empties)
        and rows[F(3, 2)]["interval_empty"]
        and rows[F(2)]["interval_empty"]
        and elapsed < 300
    )
    detail = (
        f"||(-4/5,1)|| = {r3['norm_x']} < {r3['norm_y']}, suppression bound {r3['suppression_lower_bound']}, "
        f"max AG2 ratio over 10^5 = {r3['max_ag2_ratio']}, empty intervals at 3/2 and 2: {all(empties)}"
    )
    report(4, "isometric threshold", ok, detail, elapsed)
    assert ok


def test_criterion_5_xs_hierarchy(report):
    t0 = time.perf_counter()
    res = run_xs_hierarchy([1, 2, 3, 4, 8, 16, 64], trials=200, seed=1)
    rows = {r["N"]: r for r in res.rows}
    pairs = {N: (rows[N]["norm_A"], rows[N]["norm_B"]) for N in (4, 64)}
    ratios = [r["ratio"] for r in res.rows if "ratio" in r]
    order = run_hierarchy_ordering(SpaceSpec.xs(), 10**4, seed=1)
    elapsed = time.perf_counter() - t0
    ok = (
        res.verdict
        and pairs == {4: (4, 2), 64: (64, 10)}
        and all(b < a for a, b in zip(ratios, ratios[1:]))
        and order.verdict
        and order.summary["violations"] == 0
        and elapsed < 120
    )
    shown = ", ".join(f"N={N}: ({a}, {b})" for N, (a, b) in pairs.items())
    detail = f"norms {shown}, ratios {[str(r) for r in ratios]}, ordering violations {order.summary['violations']}/10^4"
    report(5, "Xs hierarchy", ok, detail, elapsed)
    assert ok


# -- criterion 6 ------------------------------------------------------------------

SPACES = {"xpg": SpaceSpec.xpg(), "xw": SpaceSpec.xw(), "xiso": SpaceSpec.xiso(3), "xs": SpaceSpec.xs()}
PAIRS = 10**4


def _window(kind):
    return range(1, 300) if kind in ("xpg", "xs") else range(1, 40)


def _close(a, b):
    if isinstance(a, F) and isinstance(b, F):
        return a == b
    return math.isclose(float(a), float(b), rel_tol=1e-12, abs_tol=1e-15)


def _invariant_failures(rng):
    fails = {}

    def bump(name):
        fails[name] = fails.get(name, 0) + 1

    for kind, spec in SPACES.items():
        win = _window(kind)
        for _ in range(PAIRS):
            x = random_vector(rng, win, 8, DEFAULT_GRID)
            y = random_vector(rng, win, 8, DEFAULT_GRID)
            nx, ny = norm(x, spec), norm(y, spec)
            if norm(x + y, spec) > nx + ny + 1e-12:
                bump(f"triangle/{kind}")
            c = rng.choice(DEFAULT_GRID) * rng.choice((1, -1))
            lhs, rhs = norm(x * c, spec), abs(c) * nx
            if not (lhs == rhs if kind != "xw" else _close(lhs, rhs)):
                bump(f"homogeneity/{kind}")
            if kind != "xiso":
                shrunk = SparseVector((n, v * rng.choice((0, F(1, 3), F(1, 2), 1, -1))) for n, v in x.items())
                if norm(shrunk, spec) > nx + 1e-12:
                    bump(f"unconditional/{kind}")

    # Xw stays exact when every dyadic coordinate sits at a square weight rank
    x = SparseVector({3: 2, 5: F(1, 3), 4: 1})
    if norm(x * F(-7, 3), SPACES["xw"]) != F(7, 3) * norm(x, SPACES["xw"]):
        bump("homogeneity/xw-exact")

    for _ in range(PAIRS):
        x = random_vector(rng, range(1, 60), 10, DEFAULT_GRID)
        a = rng.choice(DEFAULT_GRID)
        t = truncate(x, a)
        if sup_norm(t) > a or truncate(t, a) != t:
            bump("truncation")
        if x:
            m = rng.randint(0, len(x))
            for L in greedy_sets(x, m, cap=10**4).sets:
                inside = [abs(x[n]) for n in L]
                outside = [abs(v) for n, v in x.items() if n not in set(L)]
                if len(L) != m or (inside and outside and min(inside) < max(outside)):
                    bump("greedy-threshold")

    for kind, spec in SPACES.items():
        win = _window(kind) if kind != "xiso" else range(1, 10)
        for _ in range(250):
            x = random_vector(rng, win, 7, DEFAULT_GRID, min_support=1)
            rep = residual_ratio(spec, x, rng.randint(1, 3), rng.choice((1, F(3, 2), 2)), rng.choice(FAMILIES), cap=10**4)
            if not _close(replay(rep), rep.worst_ratio) and replay(rep) != rep.worst_ratio:
                bump(f"replay/{kind}")
        for flavor, lam in (("democratic", 1), ("max_conservative", 2), ("democratic_t2", F(3, 2))):
            rep = set_pair_sweep(spec, lam, flavor, 9)
            if not _close(replay(rep), rep.worst_ratio) and replay(rep) != rep.worst_ratio:
                bump(f"replay-sweep/{kind}")
    return fails


def test_criterion_6_invariant_suites(report):
    t0 = time.perf_counter()
    fails = _invariant_failures(random.Random(6))
    elapsed = time.perf_counter() - t0
    ok = not fails and elapsed < 120
    detail = "homogeneity, triangle, unconditionality on 10^4 pairs per space; truncation, greedy threshold, replay"
    report(6, "invariant suites", ok, f"{detail}; failures {fails or 'none'}", elapsed)
    assert ok
