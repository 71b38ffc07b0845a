"""Maximum-weight matching by primal cutting planes.

The solver keeps an integral matching at all times.  Each round solves the
linear relaxation of the degree system plus all cuts collected so far; a
fractional optimum is first attacked with the column separator, which only
produces cuts tight at the current matching, and when no such cut exists
the matching itself is improved by toggling an alternating path or cycle.
Odd-set inequalities generate the matching polytope, so one of the two
moves is always available until an optimal matching is certified.

Certification happens in two ways: the relaxation value drops to the
weight of the current matching (every cut is valid for all matchings, so
the relaxation value is an upper bound), or the relaxation optimum itself
is integral, hence a matching of maximum weight.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .core import (
    Cut,
    IlpInstance,
    InternalConsistencyError,
    Point,
    ZeroHalfError,
    box_rows,
    compute_context,
    is_integral,
)
from .colsep import primal_separate_col
from .simplex import LpStatus, lp_solve


@dataclass(frozen=True)
class WeightedGraph:
    """Simple undirected graph; edges are (endpoint, endpoint, weight)."""

    node_count: int
    edges: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        if self.node_count < 0:
            raise ZeroHalfError("negative node count")
        object.__setattr__(
            self, "edges", tuple(tuple(int(x) for x in e) for e in self.edges)
        )
        seen = set()
        for u, v, _ in self.edges:
            if not (0 <= u < self.node_count and 0 <= v < self.node_count):
                raise ZeroHalfError(f"edge endpoint out of range: {(u, v)}")
            if u == v:
                raise ZeroHalfError(f"loop at node {u}")
            key = frozenset((u, v))
            if key in seen:
                raise ZeroHalfError(f"duplicate edge {(u, v)}")
            seen.add(key)


@dataclass
class MatchingCounters:
    """Work done by one solver run."""

    lp_solves: int = 0
    cuts_added: int = 0
    augmentations: int = 0
    mincut_calls: list[int] = field(default_factory=list)

    @property
    def separation_rounds(self) -> int:
        return len(self.mincut_calls)

    @property
    def max_calls_per_separation(self) -> int:
        return max(self.mincut_calls, default=0)

    @property
    def total_mincut_calls(self) -> int:
        return sum(self.mincut_calls)


@dataclass(frozen=True)
class MatchingResult:
    matching: tuple[int, ...]
    weight: int
    counters: MatchingCounters
    cuts: tuple[Cut, ...]


def incidence_instance(
    graph: WeightedGraph, weights: Sequence[int] | None = None
) -> IlpInstance:
    """Degree system of the graph: one row x(edges at v) <= 1 per node.

    Every edge variable gets the full [0, 1] box.  The objective is the
    edge weight vector.  Graphs without edges have no columns and are
    rejected by the instance type itself.
    """
    if weights is None:
        weights = tuple(w for _, _, w in graph.edges)
    if len(weights) != len(graph.edges):
        raise ZeroHalfError("one weight per edge required")
    n = len(graph.edges)
    rows = []
    for v in range(graph.node_count):
        rows.append(tuple(1 if v in (e[0], e[1]) else 0 for e in graph.edges))
    return IlpInstance(
        A=tuple(rows),
        b=(1,) * graph.node_count,
        lower_present=(True,) * n,
        upper_present=(True,) * n,
        objective=tuple(int(w) for w in weights),
    )


def _toggle_gain(weights, matched: frozenset[int], s) -> int:
    return sum(-weights[e] if e in matched else weights[e] for e in s)


def _best_toggle(
    graph: WeightedGraph,
    weights: Sequence[int],
    matched: frozenset[int],
    allowed: frozenset[int],
) -> frozenset[int] | None:
    """Best positive-gain alternating path or cycle toggle, or None.

    A toggle set flips edge membership in the matching; it keeps the
    matching property exactly when it is a simple path or even cycle whose
    edges alternate between unmatched and matched, with an extra condition
    at path ends: an end landing on an unmatched edge must sit at an
    uncovered node.  All such structures inside the allowed edge set are
    enumerated outright; ties prefer the lexicographically smallest sorted
    index tuple.
    """
    covered = {}
    for e in matched:
        u, v, _ = graph.edges[e]
        covered[u] = e
        covered[v] = e
    adj: list[list[tuple[int, int]]] = [[] for _ in range(graph.node_count)]
    for e in sorted(allowed):
        u, v, _ = graph.edges[e]
        adj[u].append((e, v))
        adj[v].append((e, u))
    best: tuple[int, tuple[int, ...]] | None = None

    def record(seq: list[int], start: int, end: int) -> None:
        nonlocal best
        if seq[0] not in matched and start in covered:
            return
        if seq[-1] not in matched and end in covered:
            return
        gain = _toggle_gain(weights, matched, seq)
        if gain <= 0:
            return
        key = (-gain, tuple(sorted(seq)))
        if best is None or key < best:
            best = key

    def record_cycle(cyc: list[int]) -> None:
        nonlocal best
        gain = _toggle_gain(weights, matched, cyc)
        if gain > 0:
            key = (-gain, tuple(sorted(cyc)))
            if best is None or key < best:
                best = key

    def extend(start: int, at: int, seq: list[int], seen_nodes: set[int]) -> None:
        record(seq, start, at)
        last_matched = seq[-1] in matched
        for e, w in adj[at]:
            if e in seq or (e in matched) == last_matched:
                continue
            if w == start:
                # closing edge: also alternate against the first edge
                if (e in matched) != (seq[0] in matched):
                    record_cycle(seq + [e])
                continue
            if w in seen_nodes:
                continue
            seq.append(e)
            seen_nodes.add(w)
            extend(start, w, seq, seen_nodes)
            seen_nodes.remove(w)
            seq.pop()

    for v0 in range(graph.node_count):
        for e, w in adj[v0]:
            extend(v0, w, [e], {v0, w})
    if best is None:
        return None
    return frozenset(best[1])


def solve_matching(
    graph: WeightedGraph, weights: Sequence[int] | None = None
) -> MatchingResult:
    """Maximum-weight matching; weights default to the graph's own."""
    if weights is None:
        weights = tuple(w for _, _, w in graph.edges)
    weights = tuple(int(w) for w in weights)
    if len(weights) != len(graph.edges):
        raise ZeroHalfError("one weight per edge required")
    if any(w < 0 for w in weights):
        raise ZeroHalfError("negative edge weight")
    counters = MatchingCounters()
    if not graph.edges:
        return MatchingResult((), 0, counters, ())
    inst = incidence_instance(graph, weights)
    n = inst.n
    base_rows = [list(r) for r in inst.A]
    base_rhs = list(inst.b)
    brows, brhs = box_rows(inst)
    base_rows += brows
    base_rhs += brhs
    xhat: tuple[Fraction, ...] = (Fraction(0),) * n
    cuts: list[Cut] = []
    while True:
        rows = base_rows + [list(c.coeffs) for c in cuts]
        rhs = base_rhs + [c.rhs for c in cuts]
        res = lp_solve(rows, rhs, list(weights), nonneg=True)
        counters.lp_solves += 1
        if res.status is not LpStatus.OPTIMAL:
            raise InternalConsistencyError(
                f"degree relaxation reported {res.status.name}"
            )
        current = sum(w * x for w, x in zip(weights, xhat))
        if res.value == current:
            return _finish(graph, weights, xhat, counters, cuts)
        if is_integral(res.point):
            return _finish(graph, weights, res.point, counters, cuts)
        ctx = compute_context(inst, xhat, res.point)
        sep = primal_separate_col(ctx)
        counters.mincut_calls.append(sep.calls)
        if sep.cut is not None:
            cuts.append(sep.cut)
            counters.cuts_added += 1
            continue
        matched = frozenset(e for e in range(n) if xhat[e] == 1)
        support = frozenset(e for e in range(n) if res.point[e] != xhat[e])
        toggle = _best_toggle(graph, weights, matched, support)
        if toggle is None:
            toggle = _best_toggle(graph, weights, matched, frozenset(range(n)))
        if toggle is None:
            raise InternalConsistencyError(
                "no cut and no improving alternating toggle; the solver is stuck"
            )
        xhat = tuple(
            Fraction(1) - x if e in toggle else x for e, x in enumerate(xhat)
        )
        counters.augmentations += 1


def _finish(
    graph: WeightedGraph,
    weights: Sequence[int],
    xvec: Point,
    counters: MatchingCounters,
    cuts: list[Cut],
) -> MatchingResult:
    picked = tuple(e for e, x in enumerate(xvec) if x == 1)
    used = set()
    for e in picked:
        u, v, _ = graph.edges[e]
        if u in used or v in used:
            raise InternalConsistencyError("selected edges share a node")
        used.update((u, v))
    weight = sum(weights[e] for e in picked)
    return MatchingResult(picked, weight, counters, tuple(cuts))
