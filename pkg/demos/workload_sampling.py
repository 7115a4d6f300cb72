"""Demand distributions: what clients ask for shapes what multicast saves.

Shows the three preferred-view distributions, their rank-to-view
mapping, and how demand concentration reduces the number of distinct
views a server must consider.
"""

import numpy as np

from mmds.workload import (DemandDistribution, sample_demand, zipf_pmf,
                           zipf_rank_to_view)

K = 12
terminals = [f"t{i}" for i in range(1000)]

zipf = DemandDistribution("zipf", K, exponent=2)
print("zipf(s=2) pmf over ranks:", np.round(zipf_pmf(zipf), 4))
print("rank -> view (popular views sit mid-range):", zipf_rank_to_view(zipf))

for dist in (DemandDistribution("uniform", K),
             DemandDistribution("gaussian", K, variance=4),
             DemandDistribution("gaussian", K, variance=16),
             zipf):
    demand = sample_demand(dist, terminals, seed=5)
    views = np.array(sorted(demand.demand.values()))
    counts = np.bincount(views, minlength=K + 1)[1:]
    label = dist.kind + (f" var={dist.variance}" if dist.variance else
                         f" s={dist.exponent}" if dist.exponent else "")
    print(f"\n{label:16s} distinct views: {len(set(views))}")
    for v in range(1, K + 1):
        print(f"  view {v:2d} {'#' * int(40 * counts[v - 1] / counts.max())}")
