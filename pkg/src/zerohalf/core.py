"""Core model for zero-half cut machinery.

An integer linear system is stored as ``Ax <= b`` with integer data, plus
optional per-variable bound rows ``0 <= x_i`` and ``x_i <= 1`` that are kept
as presence flags instead of explicit matrix rows.  A zero-half cut is
obtained from a multiplier vector with entries in {0, 1/2} (more generally
{0, 1/q, ..., (q-1)/q}): weigh the rows, add bound rows to make every
coefficient integral, and round the right-hand side down.

Conventions used throughout the package:

* ``mu_down[i]`` multiplies the lower bound row ``-x_i <= 0`` and therefore
  lowers the i-th cut coefficient; ``mu_up[i]`` multiplies ``x_i <= 1`` and
  raises it.  Both may only be nonzero where the bound exists, and never
  simultaneously at the same coordinate (using both only weakens the cut).
* All arithmetic is exact.  Points are tuples of ``fractions.Fraction``;
  there is no tolerance anywhere in this package, comparisons are literal.
* Rows and coordinates are 0-indexed in code.  The text formats accepted by
  the command line interface are 1-indexed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction

#: A point is simply a tuple of rationals; helpers below build and check them.
Point = tuple[Fraction, ...]


class ZeroHalfError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatchError(ZeroHalfError):
    pass


class NonIntegralPointError(ZeroHalfError):
    pass


class InfeasiblePointError(ZeroHalfError):
    """A point violates a row or a present bound.  ``role`` names which
    argument was bad ("xhat" or "xstar")."""

    def __init__(self, role: str, detail: str):
        super().__init__(f"{role} infeasible: {detail}")
        self.role = role


class MultiplierError(ZeroHalfError):
    """Multiplier vector outside the allowed grid, or bound usage that the
    instance does not permit."""


class NonIntegralCutError(ZeroHalfError):
    """The weighted row sum has a fractional coefficient left over."""


class MethodNotApplicableError(ZeroHalfError):
    """Parity precondition of a separator is not met."""


class BudgetExceededError(ZeroHalfError):
    """An enumeration grew past its configured candidate budget."""


class LpInfeasibleError(ZeroHalfError):
    pass


class LpUnboundedError(ZeroHalfError):
    pass


class PresolveError(ZeroHalfError):
    pass


class InternalConsistencyError(ZeroHalfError):
    """A structural invariant failed.  Indicates a bug, not bad input."""


def as_point(values: Iterable[int | str | Fraction]) -> Point:
    """Coerce a sequence of ints / 'p/q' strings / Fractions into a Point."""
    return tuple(Fraction(v) for v in values)


def is_integral(point: Sequence[Fraction]) -> bool:
    return all(Fraction(v).denominator == 1 for v in point)


@dataclass(frozen=True)
class IlpInstance:
    """An integer system ``Ax <= b`` with optional 0/1 bound rows.

    ``lower_present[i]`` / ``upper_present[i]`` record whether ``0 <= x_i``
    resp. ``x_i <= 1`` is part of the system.  ``objective`` is an optional
    integer maximization objective used by the optimization front ends.
    """

    A: tuple[tuple[int, ...], ...]
    b: tuple[int, ...]
    lower_present: tuple[bool, ...]
    upper_present: tuple[bool, ...]
    objective: tuple[int, ...] | None = None

    def __post_init__(self):
        A = tuple(tuple(int(a) for a in row) for row in self.A)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", tuple(int(v) for v in self.b))
        object.__setattr__(self, "lower_present", tuple(bool(v) for v in self.lower_present))
        object.__setattr__(self, "upper_present", tuple(bool(v) for v in self.upper_present))
        if self.objective is not None:
            object.__setattr__(self, "objective", tuple(int(v) for v in self.objective))
        if not A or not A[0]:
            raise DimensionMismatchError("instance needs at least one row and one column")
        n = len(A[0])
        if any(len(row) != n for row in A):
            raise DimensionMismatchError("ragged coefficient matrix")
        if len(self.b) != len(A):
            raise DimensionMismatchError(f"b has {len(self.b)} entries for {len(A)} rows")
        for name in ("lower_present", "upper_present"):
            if len(getattr(self, name)) != n:
                raise DimensionMismatchError(f"{name} has wrong length")
        if self.objective is not None and len(self.objective) != n:
            raise DimensionMismatchError("objective has wrong length")

    @property
    def m(self) -> int:
        return len(self.A)

    @property
    def n(self) -> int:
        return len(self.A[0])

    def row_value(self, j: int, x: Sequence[Fraction]) -> Fraction:
        return sum((a * xv for a, xv in zip(self.A[j], x)), Fraction(0))

    def slacks(self, x: Sequence[Fraction]) -> tuple[Fraction, ...]:
        return tuple(self.b[j] - self.row_value(j, x) for j in range(self.m))

    def feasibility_failure(self, x: Sequence[Fraction]) -> str | None:
        """Return a description of the first violated constraint, or None."""
        if len(x) != self.n:
            raise DimensionMismatchError(f"point has {len(x)} coordinates, instance has {self.n}")
        for j in range(self.m):
            if self.row_value(j, x) > self.b[j]:
                return f"row {j} violated"
        for i in range(self.n):
            if self.lower_present[i] and x[i] < 0:
                return f"lower bound at coordinate {i} violated"
            if self.upper_present[i] and x[i] > 1:
                return f"upper bound at coordinate {i} violated"
        return None


def _grid_check(values: tuple[Fraction, ...], q: int, what: str) -> None:
    for v in values:
        if v < 0 or v >= 1 or (v * q).denominator != 1:
            raise MultiplierError(f"{what} entry {v} not in {{0, 1/{q}, ..., {q - 1}/{q}}}")


@dataclass(frozen=True)
class Multipliers:
    """Row multipliers ``lam`` plus bound-row multipliers ``mu_down``/``mu_up``.

    Entries live on the grid {0, 1/q, ..., (q-1)/q} for ``modulus`` q.  At
    most one of ``mu_down[i]``, ``mu_up[i]`` may be nonzero; whether a bound
    row may be used at all depends on the instance and is checked when a cut
    is derived.
    """

    lam: tuple[Fraction, ...]
    mu_down: tuple[Fraction, ...]
    mu_up: tuple[Fraction, ...]
    modulus: int = 2

    def __post_init__(self):
        object.__setattr__(self, "lam", tuple(Fraction(v) for v in self.lam))
        object.__setattr__(self, "mu_down", tuple(Fraction(v) for v in self.mu_down))
        object.__setattr__(self, "mu_up", tuple(Fraction(v) for v in self.mu_up))
        if self.modulus < 2:
            raise MultiplierError(f"modulus {self.modulus} out of range")
        if len(self.mu_down) != len(self.mu_up):
            raise DimensionMismatchError("mu_down and mu_up lengths differ")
        _grid_check(self.lam, self.modulus, "lam")
        _grid_check(self.mu_down, self.modulus, "mu_down")
        _grid_check(self.mu_up, self.modulus, "mu_up")
        for i, (d, u) in enumerate(zip(self.mu_down, self.mu_up)):
            if d and u:
                raise MultiplierError(f"mu_down and mu_up both nonzero at coordinate {i}")

    @classmethod
    def from_support(
        cls,
        m: int,
        n: int,
        lam_rows: Iterable[int] = (),
        down_coords: Iterable[int] = (),
        up_coords: Iterable[int] = (),
        modulus: int = 2,
    ) -> "Multipliers":
        """Build 1/q multipliers from index sets (the common q = 2 shape)."""
        w = Fraction(1, modulus)
        lam = [Fraction(0)] * m
        down = [Fraction(0)] * n
        up = [Fraction(0)] * n
        for j in lam_rows:
            lam[j] = w
        for i in down_coords:
            down[i] = w
        for i in up_coords:
            up[i] = w
        return cls(tuple(lam), tuple(down), tuple(up), modulus)

    def support(self) -> tuple[int, ...]:
        return tuple(j for j, v in enumerate(self.lam) if v)


@dataclass(frozen=True)
class Cut:
    """A derived inequality ``coeffs . x <= rhs`` with its multipliers."""

    coeffs: tuple[int, ...]
    rhs: int
    provenance: Multipliers

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        object.__setattr__(self, "rhs", int(self.rhs))


@dataclass(frozen=True)
class SeparationContext:
    """Everything the primal separators need about the pair (xhat, xstar).

    ``slack_one_rows`` holds the rows with slack exactly 1 at xhat (the only
    rows that can serve as the single non-tight inequality of a cut tight at
    xhat) and ``tight_rows`` the rows with slack 0.  Rows with slack >= 2 can
    never participate in such a cut and appear in neither set.
    """

    instance: IlpInstance
    xhat: Point
    xstar: Point
    slack_hat: tuple[int, ...]
    slack_star: tuple[Fraction, ...]
    slack_one_rows: frozenset[int]
    tight_rows: frozenset[int]


def compute_context(instance: IlpInstance, xhat: Sequence, xstar: Sequence) -> SeparationContext:
    """Validate the point pair and classify rows by their slack at xhat."""
    xhat = as_point(xhat)
    xstar = as_point(xstar)
    if len(xhat) != instance.n or len(xstar) != instance.n:
        raise DimensionMismatchError(
            f"points have {len(xhat)}/{len(xstar)} coordinates, instance has {instance.n}"
        )
    if not is_integral(xhat):
        raise NonIntegralPointError(f"xhat {xhat} is not integral")
    bad = instance.feasibility_failure(xhat)
    if bad is not None:
        raise InfeasiblePointError("xhat", bad)
    bad = instance.feasibility_failure(xstar)
    if bad is not None:
        raise InfeasiblePointError("xstar", bad)
    slack_hat = tuple(int(s) for s in instance.slacks(xhat))
    slack_star = instance.slacks(xstar)
    ones = frozenset(j for j, s in enumerate(slack_hat) if s == 1)
    tight = frozenset(j for j, s in enumerate(slack_hat) if s == 0)
    return SeparationContext(instance, xhat, xstar, slack_hat, slack_star, ones, tight)


def _check_bound_usage(instance: IlpInstance, mult: Multipliers) -> None:
    if len(mult.lam) != instance.m:
        raise DimensionMismatchError(f"lam has {len(mult.lam)} entries for {instance.m} rows")
    if len(mult.mu_down) != instance.n:
        raise DimensionMismatchError(f"mu vectors have {len(mult.mu_down)} entries for {instance.n} columns")
    for i in range(instance.n):
        if mult.mu_down[i] and not instance.lower_present[i]:
            raise MultiplierError(f"mu_down[{i}] used but the lower bound is absent")
        if mult.mu_up[i] and not instance.upper_present[i]:
            raise MultiplierError(f"mu_up[{i}] used but the upper bound is absent")


def unfloored_rhs(instance: IlpInstance, mult: Multipliers) -> Fraction:
    """Weighted right-hand side before rounding: lam.b + mu_up.1."""
    total = sum((l * bv for l, bv in zip(mult.lam, instance.b)), Fraction(0))
    return total + sum(mult.mu_up, Fraction(0))


def derive_cut(instance: IlpInstance, mult: Multipliers) -> Cut:
    """Combine rows and bound rows, then round the right-hand side down.

    The i-th coefficient is ``lam.A_i - mu_down[i] + mu_up[i]`` and must come
    out integral, otherwise NonIntegralCutError is raised.
    """
    _check_bound_usage(instance, mult)
    coeffs = []
    for i in range(instance.n):
        c = sum((mult.lam[j] * instance.A[j][i] for j in range(instance.m)), Fraction(0))
        c = c - mult.mu_down[i] + mult.mu_up[i]
        if c.denominator != 1:
            raise NonIntegralCutError(f"coefficient {c} at coordinate {i} is not integral")
        coeffs.append(int(c))
    rhs_exact = unfloored_rhs(instance, mult)
    rhs = rhs_exact.numerator // rhs_exact.denominator  # floor
    return Cut(tuple(coeffs), rhs, mult)


def extended_slack(instance: IlpInstance, mult: Multipliers, point: Sequence[Fraction]) -> Fraction:
    """Weighted slack of all selected rows (bound rows included) at a point."""
    s = instance.slacks(point)
    total = sum((l * sv for l, sv in zip(mult.lam, s)), Fraction(0))
    total += sum((d * xv for d, xv in zip(mult.mu_down, point)), Fraction(0))
    total += sum((u * (1 - xv) for u, xv in zip(mult.mu_up, point)), Fraction(0))
    return total


def tight_bound_cost(ctx: SeparationContext, i: int) -> Fraction | None:
    """Cost at xstar of the bound row tight at xhat in coordinate i.

    Selecting that row with multiplier 1/2 flips the parity of coordinate
    i without adding slack at xhat; the doubled cost at xstar is the
    distance of xstar from xhat in the coordinate.  None when the side of
    the box that xhat sits on is not part of the instance (also when xhat
    is not at 0 or 1 there, since then no bound row is tight at all).
    """
    if ctx.xhat[i] == 0 and ctx.instance.lower_present[i]:
        return ctx.xstar[i]
    if ctx.xhat[i] == 1 and ctx.instance.upper_present[i]:
        return 1 - ctx.xstar[i]
    return None


def slack_bound_cost(ctx: SeparationContext, i: int) -> Fraction | None:
    """Cost at xstar of the bound row with slack exactly 1 at xhat.

    That row can carry the single unit of slack a tight nontrivial cut
    owns; the doubled cost at xstar is the distance of xstar from the far
    side of the box.  None when the far side is absent or xhat is not at
    0 or 1 in the coordinate.
    """
    if ctx.xhat[i] == 0 and ctx.instance.upper_present[i]:
        return 1 - ctx.xstar[i]
    if ctx.xhat[i] == 1 and ctx.instance.lower_present[i]:
        return ctx.xstar[i]
    return None


def is_tight_nontrivial(ctx: SeparationContext, mult: Multipliers) -> bool:
    """True iff the weighted slack at xhat is exactly 1/2.

    For modulus 2 this is equivalent to: the derived cut is satisfied with
    equality at xhat and the rounding step actually lost something (the
    unfloored right-hand side is not integral).
    """
    derive_cut(ctx.instance, mult)  # raises if the multipliers are unusable
    return extended_slack(ctx.instance, mult, ctx.xhat) == Fraction(1, 2)


def violation(cut: Cut, xstar: Sequence[Fraction]) -> Fraction:
    """coeffs . xstar - rhs; positive iff xstar violates the cut."""
    if len(xstar) != len(cut.coeffs):
        raise DimensionMismatchError("point dimension does not match the cut")
    lhs = sum((c * Fraction(v) for c, v in zip(cut.coeffs, xstar)), Fraction(0))
    return lhs - cut.rhs


@dataclass(frozen=True)
class ParityProfile:
    """Odd-entry counts of A, used to pick an applicable separator."""

    column_odd_counts: tuple[int, ...]
    row_odd_counts: tuple[int, ...]

    @property
    def column_method_ok(self) -> bool:
        return max(self.column_odd_counts) <= 2

    @property
    def row_method_ok(self) -> bool:
        return max(self.row_odd_counts) <= 2


def parity_profile(instance: IlpInstance) -> ParityProfile:
    cols = [0] * instance.n
    rows = [0] * instance.m
    for j in range(instance.m):
        for i, a in enumerate(instance.A[j]):
            if a % 2:
                cols[i] += 1
                rows[j] += 1
    return ParityProfile(tuple(cols), tuple(rows))


def box_rows(instance: IlpInstance) -> tuple[list[list[int]], list[int]]:
    """The instance's bound rows as explicit inequality rows.

    Lower bounds become ``-x_i <= 0`` and upper bounds ``x_i <= 1``, in
    coordinate order with the lower row first.  Used wherever the bound
    rows have to enter a linear program alongside A.
    """
    rows: list[list[int]] = []
    rhs: list[int] = []
    for i in range(instance.n):
        if instance.lower_present[i]:
            row = [0] * instance.n
            row[i] = -1
            rows.append(row)
            rhs.append(0)
        if instance.upper_present[i]:
            row = [0] * instance.n
            row[i] = 1
            rows.append(row)
            rhs.append(1)
    return rows, rhs


@dataclass(frozen=True)
class SeparationResult:
    """Outcome of one separation attempt.

    calls counts invocations of the graph subroutine (minimum cuts for the
    column method, shortest paths for the row method); candidates that were
    ruled out without touching a graph do not count.
    """

    cut: Cut | None
    violation: Fraction | None
    calls: int
