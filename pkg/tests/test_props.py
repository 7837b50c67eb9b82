import json
import math
from fractions import Fraction as F
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from greedysums.core import SparseVector
from greedysums.errors import ConstraintError, DomainError
from greedysums.props import (
    FAMILIES,
    PropertyReport,
    merge_reports,
    qg_constants,
    ratio,
    replay,
    reports_to_csv,
    residual_ratio,
    set_pair_ratio,
    set_pair_sweep,
    slc2_instance,
    truncation_check,
    ul_check,
)
from greedysums.spaces import SpaceSpec, norm
from greedysums.tga import lambda_order, residual

from .conftest import ALL_SPACES, ind, vectors

XW = SpaceSpec.xw()
XS = SpaceSpec.xs()
ISO3 = SpaceSpec.xiso(3)
XW_FOUR = 1 + 1 / math.sqrt(2) + 1 / math.sqrt(3) + 0.5


# -- literal brute force for residual ratios -----------------------------------


def literal_greedy_sets(x, k):
    supp = x.support
    for L in combinations(supp, k):
        rest = [abs(x[n]) for n in supp if n not in L]
        if not rest or min(abs(x[n]) for n in L) >= max(rest):
            yield L


def literal_competitors(x, m, family, L):
    top = x.support[-1] + m
    if family == "AG":
        for A in combinations(range(1, top + 1), m):
            yield A
        return
    if family == "PG":
        for n in range(0, m + 1):
            yield tuple(range(1, n + 1))
        return
    yield ()
    for a in range(1, top + 1):
        for b in range(a, min(a + m - 1, top) + 1):
            if family == "PG2" and not min(L) >= a:
                continue
            if family == "RPG2" and not max(L) <= b:
                continue
            yield tuple(range(a, b + 1))


def literal_ratio(spec, x, m, lam, family):
    k = lambda_order(lam, m)
    if k >= len(x):
        return 0
    worst = 0
    for L in literal_greedy_sets(x, k):
        num = norm(residual(x, L), spec)
        den = min(norm(residual(x, I), spec) for I in literal_competitors(x, m, family, L))
        worst = max(worst, ratio(num, den))
    return worst


small = st.sampled_from([F(1), F(-1), F(1, 2), F(-3, 4), F(2), F(5, 4)])


@settings(max_examples=150, deadline=None)
@given(
    st.sampled_from(["xw", "xiso3", "xs"]),
    vectors(max_index=8, max_size=6, values=small),
    st.integers(min_value=1, max_value=2),
    st.sampled_from([F(1), F(3, 2), F(2)]),
    st.sampled_from(FAMILIES),
)
def test_residual_ratio_matches_literal_enumeration(name, x, m, lam, family):
    spec = ALL_SPACES[name]
    got = residual_ratio(spec, x, m, lam, family, cap=10**4).worst_ratio
    want = literal_ratio(spec, x, m, lam, family)
    if isinstance(got, F) and isinstance(want, F):
        assert got == want
    else:
        assert math.isclose(got, want, rel_tol=1e-12)


def test_residual_ratio_examples():
    r = residual_ratio(XS, ind(1, 2, 3, 4), 1, 2, "AG2")
    assert r.worst_ratio == 1
    assert literal_ratio(XS, ind(1, 2, 3, 4), 1, F(2), "AG2") == 1
    r = residual_ratio(ISO3, SparseVector({1: 1, 2: 1}), 1, 2, "AG")
    assert r.worst_ratio == 0 and r.witness["kind"] == "trivial"


def test_residual_ratio_errors():
    with pytest.raises(DomainError):
        residual_ratio(XS, ind(1, 2), 0, 1, "AG")
    with pytest.raises(DomainError):
        residual_ratio(XS, ind(1, 2), 1, 1, "XX")


# -- set pairs -----------------------------------------------------------------


def test_set_pair_examples(xpg):
    r = set_pair_ratio(XW, (2, 4, 8, 16), (3, 5, 6, 7), 1, "democratic")
    assert math.isclose(r.worst_ratio, XW_FOUR / (25 / 12), rel_tol=1e-12)
    assert set_pair_ratio(xpg, (19, 20), (82, 83, 84), 1, "max_conservative").worst_ratio == 2
    assert set_pair_ratio(XS, range(16, 20), range(1, 9), 2, "democratic_t2").worst_ratio == 2


@pytest.mark.parametrize(
    "A, B, flavor, lam, failed",
    [
        ((1, 2), (3,), "democratic", 1, r"\|A\| <= \|B\|"),
        ((5,), (3, 4), "max_conservative", 1, "A < B"),
        ((3,), (4, 5), "max_conservative", 2, r"max A"),
        ((2, 3), (1, 4, 5), "democratic_t2", 2, r"s\(A\)"),
        ((2, 4), (1, 3, 5, 6), "democratic_t2", 1, "surrounds"),
    ],
)
def test_set_pair_side_conditions(A, B, flavor, lam, failed):
    with pytest.raises(ConstraintError, match=failed):
        set_pair_ratio(XS, A, B, lam, flavor)


def test_max_conservative_sweep_bound(xpg):
    r = set_pair_sweep(xpg, 2, "max_conservative", 12)
    assert r.exhaustive and r.worst_ratio <= 8
    assert replay(r) == r.worst_ratio


def brute_sweep(spec, lam, flavor, N):
    sets = [c for k in range(0, N + 1) for c in combinations(range(1, N + 1), k)]
    worst = 0
    for A in sets:
        if not A:
            continue
        for B in sets:
            try:
                r = set_pair_ratio(spec, A, B, lam, flavor).worst_ratio
            except ConstraintError:
                continue
            worst = max(worst, r)
    return worst


@pytest.mark.parametrize("name", ["xs", "xiso3", "xpg"])
@pytest.mark.parametrize("flavor, lam", [("democratic", 1), ("max_conservative", 2), ("democratic_t2", F(3, 2))])
def test_sweep_matches_pairwise_brute_force(name, flavor, lam):
    spec = ALL_SPACES[name]
    assert set_pair_sweep(spec, lam, flavor, 7).worst_ratio == brute_sweep(spec, lam, flavor, 7)


def test_sweep_limits():
    with pytest.raises(DomainError):
        set_pair_sweep(XS, 1, "democratic", 17)


# -- SLC2 ------------------------------------------------------------------------


def test_slc2_examples():
    r = slc2_instance(ISO3, SparseVector({1: F(-4, 5)}), (), (2,), None, {2: 1}, 3)
    assert r.worst_ratio == F(12, 11)
    assert slc2_instance(XS, SparseVector(), (), (7,), lam=1).worst_ratio == 0
    r = slc2_instance(XW, SparseVector(), (5,), (2, 4), lam=1)
    assert math.isclose(r.worst_ratio, 1 / (1 + 1 / math.sqrt(2)), rel_tol=1e-12)


@pytest.mark.parametrize(
    "x, A, B, failed",
    [
        ({1: 2}, (), (3,), "inf"),
        ({}, (1, 2), (3,), r"s\(A\)"),
        ({3: 1}, (), (3,), "cap supp"),
        ({}, (2, 4), (3, 5), "B surrounds"),
        ({3: 1}, (2, 4), (1, 6), "x surrounds"),
    ],
)
def test_slc2_side_conditions(x, A, B, failed):
    with pytest.raises(ConstraintError, match=failed):
        slc2_instance(XS, SparseVector(x), A, B, lam=1)


# -- quasi-greedy, truncation, UL ------------------------------------------------


def test_qg_constants(xpg):
    corpus = [SparseVector({1: 3, 2: -1, 5: F(1, 2)}), ind(2, 3, 4)]
    _, sqg = qg_constants(XW, corpus)
    assert sqg.worst_ratio == 1
    _, sqg = qg_constants(xpg, corpus + [ind(19, 20, 21)])
    assert sqg.worst_ratio == 1
    _, sqg = qg_constants(ISO3, [SparseVector({1: F(-4, 5), 2: 1})])
    assert sqg.worst_ratio >= F(12, 11)
    assert replay(sqg) == sqg.worst_ratio
    with pytest.raises(DomainError):
        qg_constants(XW, [])


def test_truncation_examples():
    r = truncation_check(XW, [SparseVector({3: 2, 5: 1})], [1])
    assert r.worst_ratio == F(3, 5)
    x = SparseVector({1: 3, 2: -1})
    assert truncation_check(XS, [x], [3, 10]).worst_ratio == 1
    corpus = [SparseVector({1: F(-4, 5), 2: 1})]
    _, sqg = qg_constants(ISO3, corpus)
    assert truncation_check(ISO3, corpus, [F(1, 2), F(4, 5), 1]).worst_ratio <= sqg.worst_ratio


def test_ul_examples(xpg):
    r = ul_check(XW, (3, 5), (1, 1), 1)
    assert r.witness["middle"] == F(3, 2)
    assert r.worst_ratio <= 1
    assert r.extra == {"lower_slack": 2, "upper_slack": F(1, 2)}
    r = ul_check(xpg, (19, 20, 21), (1, 2, 1), 1)
    assert r.witness["middle"] == 4
    assert r.witness["lower"] == F(3, 2) and r.witness["upper"] == 12
    with pytest.raises(DomainError):
        ul_check(XW, (), (), 1)


@settings(max_examples=100)
@given(st.sampled_from(["xpg", "xw", "xs"]), st.frozensets(st.integers(1, 60), min_size=1, max_size=6),
       st.fractions(min_value=F(1, 10), max_value=5, max_denominator=10))
def test_ul_constant_coefficients(name, A, c):
    r = ul_check(ALL_SPACES[name], A, [c] * len(A), 1)
    assert r.extra["lower_slack"] == 2 and r.extra["upper_slack"] == F(1, 2)


# -- reports ---------------------------------------------------------------------


@settings(max_examples=100, deadline=None)
@given(
    st.sampled_from(sorted(ALL_SPACES)),
    vectors(max_index=30, max_size=6),
    st.integers(min_value=1, max_value=3),
    st.sampled_from(FAMILIES),
)
def test_residual_witness_replays(name, x, m, family):
    spec = ALL_SPACES[name]
    r = residual_ratio(spec, x, m, F(3, 2), family, cap=10**4)
    got = replay(r)
    if isinstance(got, F):
        assert got == r.worst_ratio
    else:
        assert math.isclose(got, r.worst_ratio, rel_tol=1e-12) or got == r.worst_ratio


def test_ratio_conventions():
    assert ratio(0, 0) == 0
    assert ratio(1, 0) == math.inf
    assert ratio(F(1, 2), 3) == F(1, 6)


def test_merge_and_csv():
    a = PropertyReport("p", F(2), F(1, 2), {"kind": "none"}, True, 3)
    b = PropertyReport("p", F(2), F(3, 2), {"kind": "none"}, True, 4, seed=9)
    m = merge_reports([a, b])
    assert m.worst_ratio == F(3, 2) and m.instances_checked == 7
    text = reports_to_csv([m])
    assert text.splitlines()[0] == "property,lambda,ratio,witness,exhaustive,seed"
    assert text.splitlines()[1].startswith("p,2,3/2,")


def test_json_witness_keeps_integers():
    r = slc2_instance(ISO3, SparseVector({1: F(-4, 5)}), (), (2,), lam=3)
    payload = json.loads(json.dumps(r.to_json()))
    assert payload["witness"]["B"] == [2]
    assert payload["worst_ratio"] == "12/11"
