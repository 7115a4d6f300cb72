"""Core domain types: network graphs, rooted shortest-path trees, demand
maps, view-selection functions, segmentation and validity checking.

Views are plain positive integers 1..K.  A view-selection function is a
plain dict mapping each desired view v to an ordered pair (left, right);
(v, v) means v is transmitted directly, left < right means v is
synthesized from the two transmitted source views.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field


class NetworkGraph:
    """Undirected unit-length graph with a designated server node.

    Self-loops are rejected; parallel edges collapse to one.
    """

    def __init__(self, nodes, edges, server, labels=None):
        self.nodes = frozenset(nodes)
        es = set()
        for a, b in edges:
            if a == b:
                raise ValueError(f"self-loop on node {a!r}")
            if a not in self.nodes or b not in self.nodes:
                raise ValueError(f"edge ({a!r}, {b!r}) references unknown node")
            es.add(frozenset((a, b)))
        self.edges = frozenset(es)
        if server not in self.nodes:
            raise ValueError(f"server {server!r} is not a node")
        self.server = server
        self.labels = dict(labels or {})
        self._adj = {n: set() for n in self.nodes}
        for e in self.edges:
            a, b = tuple(e)
            self._adj[a].add(b)
            self._adj[b].add(a)

    def neighbors(self, n):
        return self._adj[n]

    @property
    def node_count(self):
        return len(self.nodes)

    @property
    def edge_count(self):
        return len(self.edges)

    def is_connected(self):
        seen = {self.server}
        q = deque([self.server])
        while q:
            n = q.popleft()
            for m in self._adj[n]:
                if m not in seen:
                    seen.add(m)
                    q.append(m)
        return len(seen) == len(self.nodes)

    def largest_component(self):
        """Subgraph induced by the component containing the server."""
        seen = {self.server}
        q = deque([self.server])
        while q:
            n = q.popleft()
            for m in self._adj[n]:
                if m not in seen:
                    seen.add(m)
                    q.append(m)
        edges = [tuple(e) for e in self.edges if e <= seen]
        labels = {n: l for n, l in self.labels.items() if n in seen}
        return NetworkGraph(seen, edges, self.server, labels)

    def __eq__(self, other):
        return (isinstance(other, NetworkGraph)
                and self.nodes == other.nodes
                and self.edges == other.edges
                and self.server == other.server)

    def __hash__(self):
        return hash((self.nodes, self.edges, self.server))


class ShortestPathTree:
    """Rooted directed tree spanning the root and a set of terminal nodes.

    Arcs point away from the root.  Every non-root node has exactly one
    parent and every terminal is reachable from the root; per-terminal
    root paths are precomputed and immutable.
    """

    def __init__(self, root, parents, terminals):
        self.root = root
        self.parents = dict(parents)
        self.terminals = frozenset(terminals)
        if root in self.parents:
            raise ValueError("root must not have a parent")
        self.path_arcs = {}
        self.depth = {}
        for t in self.terminals:
            arcs = []
            n = t
            seen = {t}
            while n != root:
                if n not in self.parents:
                    raise ValueError(f"terminal {t!r} is not reachable from root {root!r}")
                p = self.parents[n]
                if p in seen:
                    raise ValueError(f"cycle through node {p!r}")
                arcs.append((p, n))
                seen.add(p)
                n = p
            self.path_arcs[t] = frozenset(arcs)
            self.depth[t] = len(arcs)
        self.arcs = frozenset().union(*self.path_arcs.values()) if self.terminals else frozenset()
        self._children = {}
        for p, c in self.arcs:
            self._children.setdefault(p, set()).add(c)

    def children(self, n):
        return self._children.get(n, set())

    @property
    def tree_nodes(self):
        ns = {self.root}
        for p, c in self.arcs:
            ns.add(p)
            ns.add(c)
        return ns

    def __eq__(self, other):
        return (isinstance(other, ShortestPathTree)
                and self.root == other.root
                and self.arcs == other.arcs
                and self.terminals == other.terminals)

    def __hash__(self):
        return hash((self.root, self.arcs, self.terminals))


def build_spt(graph: NetworkGraph, terminals) -> ShortestPathTree:
    """Breadth-first shortest-path tree from the server to the terminals.

    Equal-distance parent candidates are broken by smallest node
    identifier, so identical inputs always produce identical trees.
    Branches that lead to no terminal are pruned.
    """
    terminals = set(terminals)
    missing = terminals - graph.nodes
    if missing:
        raise ValueError(f"terminals not in graph: {sorted(missing, key=repr)}")
    dist = {graph.server: 0}
    frontier = [graph.server]
    while frontier:
        nxt = set()
        for n in frontier:
            for m in graph.neighbors(n):
                if m not in dist:
                    nxt.add(m)
        for m in nxt:
            dist[m] = dist[frontier[0]] + 1
        frontier = sorted(nxt)
    for t in sorted(terminals, key=repr):
        if t not in dist:
            raise ValueError(f"terminal {t!r} is unreachable from server {graph.server!r}")
    parents = {}
    for n, d in dist.items():
        if n == graph.server:
            continue
        parents[n] = min(m for m in graph.neighbors(n) if dist.get(m) == d - 1)
    # keep only arcs on some root->terminal path
    keep = set()
    for t in terminals:
        n = t
        while n != graph.server and n not in keep:
            keep.add(n)
            n = parents[n]
    pruned = {n: p for n, p in parents.items() if n in keep}
    return ShortestPathTree(graph.server, pruned, terminals)


class DemandMap:
    """Assignment of one desired view to every terminal."""

    def __init__(self, demand, universe_size, terminals=None):
        self.universe_size = int(universe_size)
        if self.universe_size < 1:
            raise ValueError("universe_size must be >= 1")
        self.demand = dict(demand)
        for t, v in self.demand.items():
            if not (1 <= v <= self.universe_size):
                raise ValueError(f"view {v} for terminal {t!r} outside 1..{self.universe_size}")
        if terminals is not None:
            extra = set(self.demand) - set(terminals)
            if extra:
                raise ValueError(f"demand keys are not terminals: {sorted(extra, key=repr)}")
        self.desired_views = tuple(sorted(set(self.demand.values())))

    def subscribers(self, view):
        return [t for t, v in self.demand.items() if v == view]

    def __eq__(self, other):
        return (isinstance(other, DemandMap)
                and self.demand == other.demand
                and self.universe_size == other.universe_size)

    def __len__(self):
        return len(self.demand)


@dataclass(frozen=True)
class Segment:
    """Maximal run of desired views whose consecutive gaps are <= D."""
    lo: int
    hi: int
    members: tuple = field(default=())

    def __contains__(self, view):
        return view in self.members

    @property
    def width(self):
        return self.hi - self.lo


def segment_views(demand: DemandMap, D: int) -> list[Segment]:
    """Split the desired views into maximal segments with gap <= D."""
    check_quality(D)
    views = demand.desired_views
    if not views:
        raise ValueError("no desired views")
    segs = []
    run = [views[0]]
    for v in views[1:]:
        if v - run[-1] <= D:
            run.append(v)
        else:
            segs.append(Segment(run[0], run[-1], tuple(run)))
            run = [v]
    segs.append(Segment(run[0], run[-1], tuple(run)))
    return segs


def check_quality(D):
    if not isinstance(D, int) or D < 2:
        raise ValueError(f"quality constraint D must be an integer >= 2, got {D!r}")
    return D


def transmitted_views(theta) -> tuple:
    """All source views actually sent from the server (sorted)."""
    out = set()
    for l, r in theta.values():
        out.add(l)
        out.add(r)
    return tuple(sorted(out))


def identity_selection(demand: DemandMap) -> dict:
    return {v: (v, v) for v in demand.desired_views}


def validate_selection(theta, demand: DemandMap, D: int,
                       crossing_allowed: bool = False) -> list[str]:
    """Check a view selection against the demand; returns all violations.

    An empty list means the selection is valid.  With crossing_allowed
    the non-crossing condition is skipped (the relaxed problem); the
    width, ordering and source-transmitted-directly conditions always
    apply.
    """
    check_quality(D)
    issues = []
    desired = set(demand.desired_views)
    for v in sorted(desired):
        if v not in theta:
            issues.append(f"desired view {v} has no selection")
    for v in sorted(theta):
        if v not in desired:
            issues.append(f"selection given for non-desired view {v}")
    for v, (l, r) in sorted(theta.items()):
        if l == r and l != v:
            issues.append(f"view {v}: pair ({l},{r}) is direct but not the view itself")
        if not (l <= v <= r):
            issues.append(f"view {v}: pair ({l},{r}) does not enclose the view")
        if not (0 <= r - l <= D):
            issues.append(f"view {v}: pair width {r - l} violates 0 <= width <= {D}")
        if r > l:
            for src in (l, r):
                if src in desired and src in theta and theta[src] != (src, src):
                    issues.append(
                        f"view {v}: source {src} is itself synthesized as {theta[src]}")
    if not crossing_allowed:
        sent = set(transmitted_views(theta))
        for v, (l, r) in sorted(theta.items()):
            if r > l:
                inside = sorted(w for w in sent if l < w < r)
                if inside:
                    issues.append(
                        f"view {v}: transmitted views {inside} lie strictly "
                        f"inside the synthesis interval ({l},{r})")
    return issues
