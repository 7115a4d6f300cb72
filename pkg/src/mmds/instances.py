"""Bundled sample instance: a 15-node delivery tree with eight clients
whose optimal selections are known for a range of quality constraints.

Clients u1..u8 desire views 2, 3, 7, 8, 6, 7, 8 and 4.  Direct delivery
of all desired views costs 45; with a quality constraint of 4 the
optimum drops to 32 by transmitting only views 2, 4 and 8.  Some clients
sit on interior nodes of the tree, so their traffic shares arcs with the
subtrees below them.

The server is named "gw" so that it sorts before every other node and
file round-trips through parse_topology keep it as the root.
"""

from __future__ import annotations

from .graphs import DemandMap, NetworkGraph, ShortestPathTree, build_spt

DEMO_PARENTS = {
    "r1": "gw", "r2": "r1", "u5": "r2", "r3": "u5", "r4": "r3",
    "r5": "r4", "u1": "r5", "u2": "r5",
    "u7": "r4", "u8": "u7", "u6": "u7",
    "r6": "u2", "u3": "r6", "u4": "r6",
}

DEMO_DEMAND = {"u1": 2, "u2": 3, "u3": 7, "u4": 8,
               "u5": 6, "u6": 7, "u7": 8, "u8": 4}

DEMO_VIEW_COUNT = 8


def demo_graph() -> NetworkGraph:
    nodes = set(DEMO_PARENTS) | {"gw"}
    edges = [(p, c) for c, p in DEMO_PARENTS.items()]
    return NetworkGraph(nodes, edges, "gw")


def demo_instance() -> tuple[ShortestPathTree, DemandMap]:
    tree = build_spt(demo_graph(), DEMO_DEMAND.keys())
    demand = DemandMap(DEMO_DEMAND, DEMO_VIEW_COUNT, tree.terminals)
    return tree, demand
