"""
Greedy sets, ties and truncation
================================
"""

from fractions import Fraction

from greedysums.core import SparseVector
from greedysums.tga import greedy_sets, lambda_order, partial_sum, residual, truncate

x = SparseVector.from_dense([3, 1, 2])
print("greedy sets of order 2:", greedy_sets(x, 2).sets)

# ties at the threshold produce every admissible choice
tied = SparseVector.from_dense([2, 1, 1, 1])
outcome = greedy_sets(tied, 2)
print("with ties:", outcome.sets, "tied indices", outcome.tied, "free slots", outcome.slots)

# the scaled order is an exact ceiling
print("order for lambda = 3/2, m = 2:", lambda_order(Fraction(3, 2), 2))

y = SparseVector.from_dense([5, 4, 3])
print("residual after {1}:", residual(y, {1}))
print("partial sum S_2:", partial_sum(y, 2))
print("T_1 (3, -2, 1/2):", truncate(SparseVector.from_dense([3, -2, Fraction(1, 2)]), 1))
