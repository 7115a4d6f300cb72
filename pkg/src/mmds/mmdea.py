"""Exact solver for the multicast view-selection problem.

Per maximal segment of the desired views, a dynamic program sweeps the
integer view columns m..M.  A column variant d records how view v_k is
used: d = 0 means v_k serves only its own subscribers; d >= 2 means v_k
and the anchor view v_{k-d} are both transmitted and every desired view
strictly between them is synthesized from that pair.  Backtracking over
the stored argmin choices recovers the optimal selection.

Three ways of pricing a synthesis step are supported:

* ``exact``    - the marginal number of new (arc, view) units, measured
                 against the arcs already carrying the anchor view in the
                 predecessor variant.  Sums telescope to the true cost of
                 the reconstructed selection.
* ``literal``  - the closed-form expansion cost against the sources' own
                 subscriber trees only.  May overcharge when the anchor
                 already reaches synthesis clients of an earlier step.
* ``per_view`` - like ``literal`` but summed per intermediate view,
                 double-counting arcs shared between their trees.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cost import INFEASIBLE, evaluate_cost, view_trees
from .graphs import (DemandMap, Segment, ShortestPathTree, check_quality,
                     segment_views, transmitted_views, validate_selection)

PHI_MODES = ("literal", "exact", "per_view")


class SolverError(RuntimeError):
    """Internal inconsistency: a solver produced a selection it cannot
    defend (validation failure or cost mismatch)."""


@dataclass
class Variant:
    value: float
    d: int
    choice: tuple | None      # ("jump", column) or ("anchor", j)
    anchor_tree: frozenset    # arcs carrying this column's view so far


@dataclass
class CostTable:
    """DP lattice of one segment: columns[k][d] holds variant d at column k."""
    segment: Segment
    desired: frozenset
    columns: dict = field(default_factory=dict)

    def minimum(self, k):
        return min(v.value for v in self.columns[k].values())

    def best(self, k):
        choices = sorted(self.columns[k].items())
        d, var = min(choices, key=lambda kv: (kv[1].value, kv[0]))
        return d, var


@dataclass
class SolveResult:
    total: int
    theta: dict
    transmitted: tuple
    per_segment: list
    evaluated: int
    solver: str
    phi_mode: str | None = None


def two_view_fraction(result: SolveResult, demand: DemandMap) -> float:
    """Fraction of terminals that receive two distinct views."""
    if not demand.demand:
        return 0.0
    two = sum(1 for v in demand.demand.values()
              if result.theta[v][0] != result.theta[v][1])
    return two / len(demand.demand)


def _check_mode(mode):
    if mode not in PHI_MODES:
        raise ValueError(f"phi mode must be one of {PHI_MODES}, got {mode!r}")
    return mode


def _phi(mode, trees, between_desired, joint_tree, anchor_view, k_view, anchor_tree):
    """Price of pushing the anchor view and v_k to the clients of the
    desired views between them (joint_tree is their path union)."""
    if not between_desired:
        return 0
    t_anchor = trees.get(anchor_view, frozenset())
    t_k = trees.get(k_view, frozenset())
    if mode == "literal":
        return len(joint_tree - t_anchor) + len(joint_tree - t_k)
    if mode == "per_view":
        total = 0
        for v in between_desired:
            tv = trees[v]
            total += len(tv - t_anchor) + len(tv - t_k)
        return total
    return len(joint_tree - anchor_tree) + len(joint_tree - t_k)


def solve_segment(tree: ShortestPathTree, demand: DemandMap, seg: Segment,
                  D: int, mode: str = "exact", trees=None) -> tuple:
    """Fill the DP table for one segment; returns (cost, theta, table)."""
    _check_mode(mode)
    if trees is None:
        trees = view_trees(tree, demand)
    desired = frozenset(seg.members)
    m, M = seg.lo, seg.hi
    prev_desired = {}
    last = None
    for k in range(m, M + 1):
        prev_desired[k] = last
        if k in desired:
            last = k
    table = CostTable(seg, desired)

    for k in range(m, M + 1):
        col = {}
        if k == m:
            t = trees.get(m, frozenset())
            col[0] = Variant(len(t), 0, None, t)
            table.columns[k] = col
            continue
        # variant 0: v_k extends a shorter prefix without synthesizing
        if k in desired:
            lo = max(m, prev_desired[k])
            best_val, best_col = INFEASIBLE, None
            for kp in range(k - 1, lo - 1, -1):  # nearest predecessor wins ties
                val = table.minimum(kp)
                if val < best_val:
                    best_val, best_col = val, kp
            tk = trees[k]
            if best_col is None:
                col[0] = Variant(INFEASIBLE, 0, None, tk)
            else:
                col[0] = Variant(best_val + len(tk), 0, ("jump", best_col), tk)
        else:
            col[0] = Variant(INFEASIBLE, 0, None, frozenset())
        # variants d >= 2: anchor pair (v_{k-d}, v_k) synthesizes E_d
        for d in range(2, min(D, k - m) + 1):
            a = k - d
            between = [v for v in range(a + 1, k) if v in desired]
            if not between and k not in desired:
                col[d] = Variant(INFEASIBLE, d, None, frozenset())
                continue
            joint = frozenset().union(*(trees[v] for v in between)) if between else frozenset()
            ck = len(trees[k]) if k in desired else 0
            best = None
            for j, var in sorted(table.columns[a].items()):
                if var.value == INFEASIBLE:
                    continue
                cand = var.value + ck + _phi(mode, trees, between, joint,
                                             a, k, var.anchor_tree)
                if best is None or cand < best[0]:
                    best = (cand, j)
            if best is None:
                col[d] = Variant(INFEASIBLE, d, None, frozenset())
            else:
                new_tree = trees.get(k, frozenset()) | joint
                col[d] = Variant(best[0], d, ("anchor", best[1]), new_tree)
        table.columns[k] = col

    value = table.minimum(M)
    if value == INFEASIBLE:
        raise SolverError(f"segment {seg.lo}..{seg.hi} came out infeasible; "
                          "direct delivery is always feasible, so the table is corrupt")
    theta = backtrack(table)
    return value, theta, table


def backtrack(table: CostTable) -> dict:
    """Recover the optimal selection from the stored argmin choices."""
    seg = table.segment
    theta = {}
    k = seg.hi
    d, var = table.best(k)
    while True:
        if var.choice is None:
            if k != seg.lo:
                raise SolverError(f"dangling choice pointer at column {k}")
            theta[seg.lo] = (seg.lo, seg.lo)
            break
        if var.d == 0:
            if k in table.desired:
                theta[k] = (k, k)
            _, kp = var.choice
            k = kp
            d, var = table.best(k)
        else:
            a = k - var.d
            if k in table.desired:
                theta[k] = (k, k)
            for v in range(a + 1, k):
                if v in table.desired:
                    theta[v] = (a, k)
            _, j = var.choice
            if j not in table.columns[a]:
                raise SolverError(f"dangling variant pointer ({a}, {j})")
            k, d = a, j
            var = table.columns[a][j]
    return theta


def solve_general(tree: ShortestPathTree, demand: DemandMap, D: int,
                  mode: str = "exact") -> SolveResult:
    """Optimal non-crossing view selection over all segments."""
    check_quality(D)
    _check_mode(mode)
    trees = view_trees(tree, demand)
    total = 0
    theta = {}
    per_segment = []
    for seg in segment_views(demand, D):
        value, th, _ = solve_segment(tree, demand, seg, D, mode, trees)
        total += value
        theta.update(th)
        per_segment.append((seg, value))
    issues = validate_selection(theta, demand, D)
    if issues:
        raise SolverError("backtracked selection is invalid: " + "; ".join(issues))
    evaluated = evaluate_cost(tree, demand, theta)
    if mode == "exact" and evaluated != total:
        raise SolverError(f"exact-mode cost {total} != re-evaluated cost {evaluated}")
    if evaluated > total:
        # literal/per_view only ever overcharge a step, never undercharge
        raise SolverError(f"{mode} DP value {total} below true cost {evaluated}")
    return SolveResult(total, theta, transmitted_views(theta), per_segment,
                       evaluated, "mmdea", mode)


def _specialized(tree, demand, seg, D, mode, anchor_depths):
    """Shared body of the D=2 / D=3 recurrences (variants by anchor depth)."""
    trees = view_trees(tree, demand)
    desired = frozenset(seg.members)
    m, M = seg.lo, seg.hi
    prev_desired = {}
    last = None
    for k in range(m, M + 1):
        prev_desired[k] = last
        if k in desired:
            last = k
    table = CostTable(seg, desired)
    for k in range(m, M + 1):
        col = {}
        if k == m:
            t = trees.get(m, frozenset())
            col[0] = Variant(len(t), 0, None, t)
        else:
            if k in desired:
                lo = max(m, prev_desired[k])
                best_val, best_col = INFEASIBLE, None
                for kp in range(k - 1, lo - 1, -1):
                    if table.minimum(kp) < best_val:
                        best_val, best_col = table.minimum(kp), kp
                if best_col is None:
                    col[0] = Variant(INFEASIBLE, 0, None, trees[k])
                else:
                    col[0] = Variant(best_val + len(trees[k]), 0,
                                     ("jump", best_col), trees[k])
            else:
                col[0] = Variant(INFEASIBLE, 0, None, frozenset())
            for d in anchor_depths:
                if k - d < m:
                    continue
                a = k - d
                between = [v for v in range(a + 1, k) if v in desired]
                if not between and k not in desired:
                    col[d] = Variant(INFEASIBLE, d, None, frozenset())
                    continue
                joint = frozenset().union(*(trees[v] for v in between)) if between else frozenset()
                ck = len(trees[k]) if k in desired else 0
                best = None
                for j, var in sorted(table.columns[a].items()):
                    if var.value == INFEASIBLE:
                        continue
                    cand = var.value + ck + _phi(mode, trees, between, joint,
                                                 a, k, var.anchor_tree)
                    if best is None or cand < best[0]:
                        best = (cand, j)
                if best is None:
                    col[d] = Variant(INFEASIBLE, d, None, frozenset())
                else:
                    col[d] = Variant(best[0], d, ("anchor", best[1]),
                                     trees.get(k, frozenset()) | joint)
        table.columns[k] = col
    value = table.minimum(M)
    if value == INFEASIBLE:
        raise SolverError("specialized table infeasible")
    return value, backtrack(table)


def solve_d2(seg: Segment, tree: ShortestPathTree, demand: DemandMap,
             mode: str = "exact") -> tuple:
    """Two-variant recurrence for D = 2: v_k is unused for synthesis, or
    synthesizes v_{k-1} jointly with v_{k-2}."""
    _check_mode(mode)
    return _specialized(tree, demand, seg, 2, mode, (2,))


def solve_d3(seg: Segment, tree: ShortestPathTree, demand: DemandMap,
             mode: str = "exact") -> tuple:
    """Three-variant recurrence for D = 3: the anchor sits one or two
    views below v_k; the two-view middle set is priced jointly."""
    _check_mode(mode)
    return _specialized(tree, demand, seg, 3, mode, (2, 3))
