"""
Evaluating the four sequence-space norms
========================================

Each norm has a fast structured evaluator and a brute-force oracle that
enumerates the defining family literally. On small inputs they agree.
"""

from fractions import Fraction

from greedysums.core import SparseVector
from greedysums.spaces import SpaceSpec, norm, norm_oracle, preset_xpg_params

# the preset parameters and their level sequence
params = preset_xpg_params()
print("g =", params.g, "excluded window at level 2:", params.excluded(2))

xpg = SpaceSpec.xpg(params)
for idx in [(5,), (19, 20, 21), (82, 83, 84)]:
    x = SparseVector.indicator(idx)
    print("Xpg", idx, "->", norm(x, xpg), "oracle", norm_oracle(x, xpg))

# dyadic coordinates carry 1/sqrt(k) weights, the rest 1/k
xw = SpaceSpec.xw()
print("Xw  1_{2,4,8,16} ->", norm(SparseVector.indicator((2, 4, 8, 16)), xw))
print("Xw  1_{3,5,6,7}  ->", norm(SparseVector.indicator((3, 5, 6, 7)), xw))

# the two-dimensional perturbation of l1
iso = SpaceSpec.xiso(3)
print("Xiso(3) (-4/5, 1) ->", norm(SparseVector({1: Fraction(-4, 5), 2: 1}), iso))
print("Xiso(3) (-4/5, 0) ->", norm(SparseVector({1: Fraction(-4, 5)}), iso))

# sets of size k only count when they start at k^2 or later
xs = SpaceSpec.xs()
print("Xs  1_{16..19} ->", norm(SparseVector.indicator(range(16, 20)), xs))
print("Xs  1_{1..8}   ->", norm(SparseVector.indicator(range(1, 9)), xs))
