"""
Reproducing the separations
===========================

Small versions of the named experiments. The command-line tool runs the full
sizes, e.g. ``greedysums experiment iso-threshold --lambda 3 --trials 100000``.
"""

from greedysums.experiments import (
    run_hierarchy_ordering,
    run_iso_threshold,
    run_pg_separation,
    run_xs_hierarchy,
    run_xw_divergence,
)
from greedysums.spaces import SpaceSpec, preset_xpg_params

res = run_pg_separation(preset_xpg_params(), [2, 3, 4], sweep_n=10)
print(res.to_csv())
print(res.summary)

print(run_xw_divergence([4, 100, 10**4]).to_csv())

res = run_iso_threshold([2, 3], trials=500, seed=1)
print(res.to_csv())

print(run_xs_hierarchy([2, 4, 64], trials=100, seed=1).to_csv())

res = run_hierarchy_ordering(SpaceSpec.xw(), trials=300, seed=1)
print(res.summary)
