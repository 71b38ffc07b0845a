"""Primal separation through minimum cuts.

Applicable when every column of A has at most two odd entries.  A cut that
is tight and nontrivial at the integral point carries exactly one unit of
doubled slack, and that unit sits either on one non-tight row (multiplier
1/2 on a row whose slack at xhat is exactly 1) or on one non-tight bound
row of a single coordinate.  Each of those placements becomes a candidate;
for a fixed candidate the remaining freedom is which tight rows join the
row multiplier support, and the cheapest choice at xstar is a minimum cut.

The graph for a candidate has one node per committed row (merged where
contraction forces rows together) plus a sink.  Edges:

* a slack edge row -> sink with capacity slack_star of the row, paid
  whenever the row is selected;
* a parity edge per coordinate whose column is odd in exactly two
  committed rows, joining them, with capacity equal to the cost of the
  bound-row repair at that coordinate (the side tight at xhat), paid when
  exactly one endpoint is selected;
* the same per single-odd column, running to the sink.

Where the repair side is absent the coordinate cannot be fixed, so its odd
rows are contracted (onto each other, or onto the sink for a single odd
row); a candidate whose mandatory source row lands in the sink component
is infeasible and skipped without a minimum-cut call.  Selected rows are
the source side of the cut; doubled extended slack at xstar equals the
candidate's fixed cost plus the cut value, so a candidate yields a
violated cut exactly when that total stays below 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import (
    Cut,
    InternalConsistencyError,
    MethodNotApplicableError,
    Multipliers,
    SeparationContext,
    SeparationResult,
    derive_cut,
    is_tight_nontrivial,
    parity_profile,
    slack_bound_cost,
    tight_bound_cost,
    violation,
)
from .graphs import CapacitatedGraph, FlowEdge, min_cut

HALF = Fraction(1, 2)

_SINK = -1  # sentinel union-find element; real rows are >= 0


@dataclass(frozen=True)
class ColCandidate:
    """One possible carrier of the single unit of slack at xhat.

    kind "row": source_row is the slack-1 row, coord is None.
    kind "box": coord's non-tight bound row carries the slack and
    source_row is a tight row with odd entry in that column, forced into
    the multiplier support to make the bound multiplier integral.
    """

    kind: str
    source_row: int
    coord: int | None
    fixed_cost: Fraction


@dataclass
class CutGraphInfo:
    """Built graph for one candidate, or the fact that it collapsed."""

    candidate: ColCandidate
    collapsed: bool
    graph: CapacitatedGraph | None
    source: int | None
    sink: int | None
    fixed_cost: Fraction
    members: dict[int, tuple[int, ...]]


def enumerate_col_candidates(ctx: SeparationContext) -> list[ColCandidate]:
    out = []
    for j in sorted(ctx.slack_one_rows):
        out.append(ColCandidate("row", j, None, Fraction(0)))
    tight = sorted(ctx.tight_rows)
    for i in range(ctx.instance.n):
        fixed = slack_bound_cost(ctx, i)
        if fixed is None:
            continue
        for v in tight:
            if ctx.instance.A[v][i] % 2:
                out.append(ColCandidate("box", v, i, fixed))
    return out


class _UnionFind:
    def __init__(self, elems):
        self.parent = {e: e for e in elems}

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # keep the smaller id as root so the sink sentinel survives
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def build_cut_graph(ctx: SeparationContext, cand: ColCandidate) -> CutGraphInfo:
    inst = ctx.instance
    committed = set(ctx.tight_rows)
    if cand.kind == "row":
        committed.add(cand.source_row)
    committed = sorted(committed)

    def odd_rows(i: int) -> list[int]:
        return [v for v in committed if inst.A[v][i] % 2]

    partner = None
    if cand.coord is not None:
        others = [v for v in odd_rows(cand.coord) if v != cand.source_row]
        if others:
            partner = others[0]

    uf = _UnionFind(committed + [_SINK])
    for i in range(inst.n):
        if tight_bound_cost(ctx, i) is not None:
            continue
        if i == cand.coord:
            # the source is fixed by the slack bound row; a second odd row
            # would break its parity and cannot be repaired, so pin it down
            if partner is not None:
                uf.union(partner, _SINK)
            continue
        odd = odd_rows(i)
        if len(odd) == 2:
            uf.union(odd[0], odd[1])
        elif len(odd) == 1:
            uf.union(odd[0], _SINK)

    sink = uf.find(_SINK)
    source = uf.find(cand.source_row)
    if source == sink:
        return CutGraphInfo(cand, True, None, None, None, cand.fixed_cost, {})

    edges = []
    for v in committed:
        root = uf.find(v)
        if root != sink:
            edges.append(FlowEdge(root, sink, ctx.slack_star[v], ("slack", v)))
    for i in range(inst.n):
        cap = tight_bound_cost(ctx, i)
        if cap is None:
            continue
        if i == cand.coord:
            # selecting the partner row as well would make the column even
            # again; price that at the repair cost, which together with the
            # fixed cost reaches 1 and can never be part of an accepted cut
            if partner is not None and uf.find(partner) != sink:
                edges.append(FlowEdge(uf.find(partner), sink, cap, ("partner", i)))
            continue
        odd = odd_rows(i)
        if len(odd) == 2:
            a, b = uf.find(odd[0]), uf.find(odd[1])
            if a != b:
                edges.append(FlowEdge(a, b, cap, ("col", i)))
        elif len(odd) == 1:
            a = uf.find(odd[0])
            if a != sink:
                edges.append(FlowEdge(a, sink, cap, ("col", i)))

    members: dict[int, list[int]] = {}
    for v in committed:
        members.setdefault(uf.find(v), []).append(v)
    nodes = sorted(members) + ([sink] if sink not in members else [])
    graph = CapacitatedGraph(tuple(nodes), tuple(edges))
    return CutGraphInfo(
        cand,
        False,
        graph,
        source,
        sink,
        cand.fixed_cost,
        {node: tuple(rows) for node, rows in members.items()},
    )


def extract_multipliers(
    ctx: SeparationContext, info: CutGraphInfo, source_side
) -> Multipliers:
    """Multipliers for a selected row set, bound rows chosen by parity."""
    inst = ctx.instance
    rows = sorted(
        r for node in source_side if node in info.members for r in info.members[node]
    )
    lam = [Fraction(0)] * inst.m
    for r in rows:
        lam[r] = HALF
    down = [Fraction(0)] * inst.n
    up = [Fraction(0)] * inst.n
    cand = info.candidate
    for i in range(inst.n):
        odd = sum(inst.A[r][i] for r in rows) % 2
        if i == cand.coord:
            if not odd:
                raise InternalConsistencyError(
                    "slack bound coordinate lost its odd row"
                )
            # the bound row with slack 1 at xhat, opposite the tight side
            if ctx.xhat[i] == 0:
                up[i] = HALF
            else:
                down[i] = HALF
            continue
        if odd:
            if tight_bound_cost(ctx, i) is None:
                raise InternalConsistencyError(
                    f"odd coordinate {i} has no bound row to repair it"
                )
            if ctx.xhat[i] == 0:
                down[i] = HALF
            else:
                up[i] = HALF
    return Multipliers(tuple(lam), tuple(down), tuple(up))


def primal_separate_col(ctx: SeparationContext) -> SeparationResult:
    """Most violated cut that is tight and nontrivial at xhat, if any.

    Runs at most one minimum cut per candidate, hence at most m + 2n in
    total.  Ties on the violation keep the earliest candidate (slack rows
    in index order, then bound candidates by coordinate and source row).
    """
    if not parity_profile(ctx.instance).column_method_ok:
        raise MethodNotApplicableError(
            "a column of A has more than two odd entries"
        )
    best: tuple[Fraction, Cut] | None = None
    calls = 0
    for cand in enumerate_col_candidates(ctx):
        info = build_cut_graph(ctx, cand)
        if info.collapsed:
            continue
        res = min_cut(info.graph, info.source, info.sink)
        calls += 1
        total = info.fixed_cost + res.value
        if total >= 1:
            continue
        if best is not None and total >= best[0]:
            continue
        mult = extract_multipliers(ctx, info, res.source_side)
        cut = derive_cut(ctx.instance, mult)
        if not is_tight_nontrivial(ctx, mult):
            raise InternalConsistencyError("accepted cut is not tight at xhat")
        if violation(cut, ctx.xstar) != (1 - total) / 2:
            raise InternalConsistencyError("cut value does not match violation")
        best = (total, cut)
    limit = ctx.instance.m + 2 * ctx.instance.n
    if calls > limit:
        raise InternalConsistencyError("minimum-cut budget exceeded")
    if best is None:
        return SeparationResult(None, None, calls)
    return SeparationResult(best[1], (1 - best[0]) / 2, calls)
