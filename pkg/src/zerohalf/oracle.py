"""Brute-force reference implementations.

Everything here works by enumerating multiplier vectors outright, deriving
the resulting cuts, and filtering or optimizing over them.  The point is to
be obviously correct and completely independent of the graph constructions,
so the fast separators can be tested against these functions on small
instances.  Enumeration cost is kept tolerable with plain integer
arithmetic: a multiplier vector with modulus q is handled as its vector of
numerators, and cut data stays in integers until a winner is materialized.

Candidate counts are capped by a hard budget (default 2**20); blowing the
budget raises BudgetExceededError rather than silently truncating.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Iterator, Sequence

from .core import (
    BudgetExceededError,
    Cut,
    IlpInstance,
    LpInfeasibleError,
    LpUnboundedError,
    Multipliers,
    Point,
    SeparationContext,
    ZeroHalfError,
    as_point,
    box_rows,
    derive_cut,
)
from .simplex import LpStatus, lp_solve

DEFAULT_BUDGET = 1 << 20


def _iter_raw_multipliers(
    instance: IlpInstance,
    modulus: int,
    support_bound: Fraction | None,
    budget: int,
    rows_only: bool = False,
) -> Iterator[tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]]:
    """Yield numerator triplets (lam, mu_down, mu_up) of every valid choice.

    Valid means: entries on the 1/q grid, weighted coefficients all
    integral, bound rows only used where present, never both bound rows of
    one coordinate.  With rows_only the bound rows are off limits, so only
    lambda vectors with integral weighted coefficients survive.  The budget
    counts examined lambda vectors plus yielded combinations.
    """
    q = modulus
    m, n = instance.m, instance.n
    cols = list(zip(*instance.A))  # column views for the residue pass
    max_num_sum = None
    if support_bound is not None:
        cap = Fraction(support_bound) * q
        max_num_sum = cap.numerator // cap.denominator  # floor, sum of numerators
    spent = 0
    for lam in itertools.product(range(q), repeat=m):
        spent += 1
        if spent > budget:
            raise BudgetExceededError(f"more than {budget} multiplier candidates")
        if max_num_sum is not None and sum(lam) > max_num_sum:
            continue
        support = [j for j, p in enumerate(lam) if p]
        choices: list[list[tuple[int, int]]] = []
        dead = False
        for i in range(n):
            r = sum(lam[j] * cols[i][j] for j in support) % q
            if r == 0:
                choices.append([(0, 0)])
                continue
            opts = []
            if not rows_only:
                if instance.lower_present[i]:
                    opts.append((r, 0))
                if instance.upper_present[i]:
                    opts.append((0, q - r))
            if not opts:
                dead = True
                break
            choices.append(opts)
        if dead:
            continue
        for combo in itertools.product(*choices):
            spent += 1
            if spent > budget:
                raise BudgetExceededError(f"more than {budget} multiplier candidates")
            down = tuple(c[0] for c in combo)
            up = tuple(c[1] for c in combo)
            yield lam, down, up


def _materialize(nums, modulus: int) -> Multipliers:
    lam, down, up = nums
    q = modulus
    return Multipliers(
        tuple(Fraction(p, q) for p in lam),
        tuple(Fraction(d, q) for d in down),
        tuple(Fraction(u, q) for u in up),
        modulus=q,
    )


def enumerate_valid_multipliers(
    instance: IlpInstance,
    modulus: int = 2,
    support_bound: Fraction | None = None,
    budget: int = DEFAULT_BUDGET,
) -> Iterator[Multipliers]:
    """All multiplier vectors that derive to an integral cut, in grid order."""
    for nums in _iter_raw_multipliers(instance, modulus, support_bound, budget):
        yield _materialize(nums, modulus)


def _cut_nums(instance: IlpInstance, nums, q: int) -> tuple[tuple[int, ...], int]:
    """Integer coefficients and floored right-hand side for numerators."""
    lam, down, up = nums
    coeffs = []
    for i in range(instance.n):
        total = sum(lam[j] * instance.A[j][i] for j in range(instance.m) if lam[j])
        coeffs.append((total - down[i] + up[i]) // q)
    rhs_num = sum(lam[j] * instance.b[j] for j in range(instance.m) if lam[j]) + sum(up)
    return tuple(coeffs), rhs_num // q


def _point_numerators(point: Point) -> tuple[list[int], int]:
    denom = math.lcm(*(v.denominator for v in point)) if point else 1
    return [int(v * denom) for v in point], denom


def _tie_key(nums):
    lam, down, up = nums
    support = tuple(j for j, p in enumerate(lam) if p)
    return (support, lam, down, up)


def brute_standard_separate(
    instance: IlpInstance,
    xstar: Sequence,
    modulus: int = 2,
    budget: int = DEFAULT_BUDGET,
) -> Cut | None:
    """Most violated cut at xstar over the full enumeration, if any.

    Ties on the violation are broken by lexicographically smallest lambda
    support, then by the numerator vectors themselves.
    """
    xstar = as_point(xstar)
    if len(xstar) != instance.n:
        raise ZeroHalfError("xstar dimension mismatch")
    xnum, denom = _point_numerators(xstar)
    best = None  # ((neg violation, tie key), nums)
    for nums in _iter_raw_multipliers(instance, modulus, None, budget):
        coeffs, rhs = _cut_nums(instance, nums, modulus)
        viol_num = sum(c * xv for c, xv in zip(coeffs, xnum)) - rhs * denom
        if viol_num <= 0:
            continue
        key = (-viol_num, _tie_key(nums))
        if best is None or key < best[0]:
            best = (key, nums)
    if best is None:
        return None
    return derive_cut(instance, _materialize(best[1], modulus))


def brute_primal_separate(
    ctx: SeparationContext,
    budget: int = DEFAULT_BUDGET,
) -> Cut | None:
    """Most violated cut among those tight and nontrivial at xhat.

    Modulus-2 enumeration; tightness is the weighted-slack-1/2 test.
    """
    inst = ctx.instance
    xhat = [int(v) for v in ctx.xhat]
    xnum, denom = _point_numerators(ctx.xstar)
    best = None
    for nums in _iter_raw_multipliers(inst, 2, None, budget):
        lam, down, up = nums
        # weighted slack at xhat, doubled: must equal exactly 1
        slack2 = (
            sum(lam[j] * ctx.slack_hat[j] for j in range(inst.m) if lam[j])
            + sum(d * x for d, x in zip(down, xhat) if d)
            + sum(u * (1 - x) for u, x in zip(up, xhat) if u)
        )
        if slack2 != 1:
            continue
        coeffs, rhs = _cut_nums(inst, nums, 2)
        viol_num = sum(c * xv for c, xv in zip(coeffs, xnum)) - rhs * denom
        if viol_num <= 0:
            continue
        key = (-viol_num, _tie_key(nums))
        if best is None or key < best[0]:
            best = (key, nums)
    if best is None:
        return None
    return derive_cut(inst, _materialize(best[1], 2))


def enumerate_cut_rows(
    instance: IlpInstance,
    modulus: int = 2,
    support_bound: Fraction | None = None,
    budget: int = DEFAULT_BUDGET,
    rows_only: bool = False,
) -> list[Cut]:
    """Deduplicated cut list: per coefficient vector only the tightest rhs.

    Among multiplier vectors deriving the same inequality the first one in
    enumeration order is kept as provenance.  rows_only restricts to cuts
    taken from the rows of A alone, without bound-row rounding.
    """
    seen: dict[tuple[int, ...], tuple[int, tuple]] = {}
    order: list[tuple[int, ...]] = []
    for nums in _iter_raw_multipliers(instance, modulus, support_bound, budget, rows_only):
        coeffs, rhs = _cut_nums(instance, nums, modulus)
        old = seen.get(coeffs)
        if old is None:
            seen[coeffs] = (rhs, nums)
            order.append(coeffs)
        elif rhs < old[0]:
            seen[coeffs] = (rhs, nums)
    out = []
    for coeffs in order:
        rhs, nums = seen[coeffs]
        cut = derive_cut(instance, _materialize(nums, modulus))
        if cut.coeffs != coeffs or cut.rhs != rhs:
            raise ZeroHalfError("enumeration bookkeeping out of sync")
        out.append(cut)
    return out


def brute_closure_optimize(
    instance: IlpInstance,
    objective: Sequence[int] | None = None,
    modulus: int = 2,
    budget: int = DEFAULT_BUDGET,
) -> tuple[Fraction, Point]:
    """Exact optimum of the objective over the full cut closure.

    The closure intersects the feasible set with every cut derived from the
    rows of A by row multipliers alone; bound rows take part in the linear
    program but not in cut derivation, which is reserved for the rounding
    step of the separation routines.  Materializes every such cut, appends
    it to the system and solves one LP.  Raises LpInfeasibleError or
    LpUnboundedError when the relaxation has no optimum.
    """
    if objective is None:
        objective = instance.objective
    if objective is None:
        raise ZeroHalfError("no objective given and none stored on the instance")
    rows = [list(r) for r in instance.A]
    rhs = list(instance.b)
    brows, brhs = box_rows(instance)
    rows += brows
    rhs += brhs
    for cut in enumerate_cut_rows(instance, modulus, None, budget, rows_only=True):
        rows.append(list(cut.coeffs))
        rhs.append(cut.rhs)
    res = lp_solve(rows, rhs, list(objective))
    if res.status is LpStatus.INFEASIBLE:
        raise LpInfeasibleError("closure is empty")
    if res.status is LpStatus.UNBOUNDED:
        raise LpUnboundedError("closure optimum is unbounded")
    return res.value, res.point


def brute_max_matching(graph, weights: Sequence[int] | None = None) -> tuple[int, tuple[int, ...]]:
    """Maximum-weight matching by exhaustive search over the edge list.

    Returns (weight, edge index tuple); ties prefer the lexicographically
    smallest index tuple.  The state space is (position, covered vertex
    set), memoized, so graphs need few nodes; more than 24 edges or 16
    nodes raise BudgetExceededError.
    """
    edges = [(e[0], e[1]) for e in graph.edges]
    if weights is None:
        weights = [e[2] for e in graph.edges]
    if any(w < 0 for w in weights):
        raise ZeroHalfError("negative edge weight")
    nodes = sorted({v for e in edges for v in e})
    if len(edges) > 24 or len(nodes) > 16:
        raise BudgetExceededError("graph too large for exhaustive matching")
    bit = {v: 1 << k for k, v in enumerate(nodes)}

    cache: dict[tuple[int, int], tuple[int, tuple[int, ...]]] = {}

    def rec(k: int, used: int) -> tuple[int, tuple[int, ...]]:
        if k == len(edges):
            return 0, ()
        state = (k, used)
        hit = cache.get(state)
        if hit is not None:
            return hit
        skip_w, skip_pick = rec(k + 1, used)
        best = (skip_w, skip_pick)
        mask = bit[edges[k][0]] | bit[edges[k][1]]
        if not used & mask:
            take_w, take_pick = rec(k + 1, used | mask)
            take_w += weights[k]
            # on equal weight the take branch starts with the smaller index
            if take_w >= skip_w:
                best = (take_w, (k,) + take_pick)
        cache[state] = best
        return best

    weight, picked = rec(0, 0)
    return weight, picked
