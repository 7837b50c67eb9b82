"""
Checking greedy-type properties instance by instance
====================================================

A report carries the worst ratio found and the instance attaining it, and
``replay`` recomputes that ratio from the witness alone.
"""

from fractions import Fraction

from greedysums.core import SparseVector
from greedysums.props import (
    qg_constants,
    replay,
    reports_to_csv,
    residual_ratio,
    set_pair_ratio,
    set_pair_sweep,
    slc2_instance,
)
from greedysums.spaces import SpaceSpec

xs = SpaceSpec.xs()
rep = residual_ratio(xs, SparseVector.indicator((1, 2, 3, 4)), m=1, lam=2, family="AG2")
print("AG2 ratio:", rep.worst_ratio, "greedy set", rep.witness["greedy_set"], "best interval", rep.witness["competitor"])

# democracy of type 2 fails in Xs: a late block is long in norm, an early one is short
print(reports_to_csv([set_pair_ratio(xs, range(16, 20), range(1, 9), 2, "democratic_t2")]))

# an exhaustive sweep over all pairs inside [1..12]
xpg = SpaceSpec.xpg()
sweep = set_pair_sweep(xpg, 2, "max_conservative", 12)
print("max conservative sweep:", sweep.worst_ratio, "over", sweep.instances_checked, "pairs")

# the isometric space: suppressing a coordinate can increase the norm
iso = SpaceSpec.xiso(3)
_, sqg = qg_constants(iso, [SparseVector({1: Fraction(-4, 5), 2: 1})])
print("suppression ratio:", sqg.worst_ratio, "replayed:", replay(sqg))
slc = slc2_instance(iso, SparseVector({1: Fraction(-4, 5)}), (), (2,), lam=3)
print("SLC2 ratio:", slc.worst_ratio)
