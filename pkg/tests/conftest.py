"""Shared helpers: random instance generation and independent oracles."""

import random
from collections import deque

import pytest

from mmds import DemandMap, ShortestPathTree


def random_tree_instance(rng: random.Random, max_nodes=18, max_terminals=8,
                         max_views=10):
    """Random rooted tree with random terminals and demand; node 0 is the
    root.  Non-terminal dead branches are dropped, as build_spt would."""
    n = rng.randint(3, max_nodes)
    parents = {i: rng.randrange(i) for i in range(1, n)}
    n_terms = rng.randint(1, min(max_terminals, n - 1))
    terms = rng.sample(range(1, n), n_terms)
    keep = set()
    for t in terms:
        x = t
        while x != 0 and x not in keep:
            keep.add(x)
            x = parents[x]
    tree = ShortestPathTree(0, {c: p for c, p in parents.items() if c in keep},
                            terms)
    K = rng.randint(1, max_views)
    demand = DemandMap({t: rng.randint(1, K) for t in terms}, K, tree.terminals)
    return tree, demand


def bfs_distances(adjacency, source):
    """Plain breadth-first distances, independent of build_spt."""
    dist = {source: 0}
    queue = deque([source])
    while queue:
        node = queue.popleft()
        for nb in adjacency[node]:
            if nb not in dist:
                dist[nb] = dist[node] + 1
                queue.append(nb)
    return dist


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
