"""Command-line front end.

Exit codes: 0 on success, 1 for usage or file-format problems, 2 when an
input violates a mathematical precondition (infeasible point, method not
applicable, nonpositive right-hand sides for approx, and so on).  Reports
go to standard output and are deterministic for fixed inputs and seeds;
diagnostics go to standard error.
"""

from __future__ import annotations

import argparse
import random
import sys
from fractions import Fraction
from typing import Sequence

from .closure import ApproxParams, approx_optimize, k_of_epsilon, monotone_presolve
from .colsep import primal_separate_col
from .core import (
    IlpInstance,
    MethodNotApplicableError,
    Multipliers,
    Point,
    SeparationResult,
    ZeroHalfError,
    as_point,
    box_rows,
    compute_context,
    derive_cut,
    extended_slack,
    is_integral,
    parity_profile,
    unfloored_rhs,
    violation,
)
from .generate import PROFILES, gen_primal_case
from .matching import WeightedGraph, solve_matching
from .oracle import brute_closure_optimize, brute_primal_separate
from .rowsep import primal_separate_row
from .simplex import LpStatus, lp_solve


class FileFormatError(ZeroHalfError):
    """Malformed input file; rendered with line and column."""


class _UsageError(Exception):
    pass


def fmt_frac(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _fmt_vec(values) -> str:
    return " ".join(fmt_frac(v) for v in values)


# ------------------------------------------------------------- file formats


class _Tokens:
    """Whitespace-separated tokens with positions; # starts a comment."""

    def __init__(self, text: str, source: str):
        self.source = source
        self.items: list[tuple[str, int, int]] = []
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0]
            col = 0
            for tok in line.split():
                col = line.index(tok, col)
                self.items.append((tok, lineno, col + 1))
                col += len(tok)
        self.pos = 0

    def _fail(self, message: str, at: tuple[str, int, int] | None) -> FileFormatError:
        if at is None:
            return FileFormatError(f"{self.source}: {message} at end of file")
        tok, line, col = at
        return FileFormatError(f"{self.source}: line {line} column {col}: {message}, found {tok!r}")

    def take(self, what: str) -> tuple[str, int, int]:
        if self.pos >= len(self.items):
            raise self._fail(f"expected {what}", None)
        item = self.items[self.pos]
        self.pos += 1
        return item

    def keyword(self, word: str) -> None:
        item = self.take(word)
        if item[0] != word:
            raise self._fail(f"expected {word}", item)

    def integer(self, what: str) -> int:
        item = self.take(what)
        try:
            return int(item[0])
        except ValueError:
            raise self._fail(f"expected {what} (an integer)", item) from None

    def fraction(self, what: str) -> Fraction:
        item = self.take(what)
        try:
            return Fraction(item[0])
        except (ValueError, ZeroDivisionError):
            raise self._fail(f"expected {what} (integer or p/q)", item) from None

    def flag(self, what: str) -> bool:
        item = self.take(what)
        if item[0] not in ("0", "1"):
            raise self._fail(f"expected {what} (0 or 1)", item)
        return item[0] == "1"

    def finish(self) -> None:
        if self.pos < len(self.items):
            raise self._fail("expected end of file", self.items[self.pos])


def parse_instance(text: str, source: str = "instance") -> IlpInstance:
    t = _Tokens(text, source)
    t.keyword("ROWS")
    m = t.integer("row count")
    t.keyword("COLS")
    n = t.integer("column count")
    t.keyword("A")
    A = tuple(
        tuple(t.integer(f"A[{j + 1}][{i + 1}]") for i in range(n)) for j in range(m)
    )
    t.keyword("B")
    b = tuple(t.integer(f"B[{j + 1}]") for j in range(m))
    t.keyword("LOWER")
    lower = tuple(t.flag(f"LOWER[{i + 1}]") for i in range(n))
    t.keyword("UPPER")
    upper = tuple(t.flag(f"UPPER[{i + 1}]") for i in range(n))
    objective = None
    item = t.take("OBJ or END")
    if item[0] == "OBJ":
        objective = tuple(t.integer(f"OBJ[{i + 1}]") for i in range(n))
        item = t.take("END")
    if item[0] != "END":
        raise t._fail("expected END", item)
    t.finish()
    return IlpInstance(A, b, lower, upper, objective)


def parse_point(text: str, n: int, source: str = "point") -> Point:
    t = _Tokens(text, source)
    pt = tuple(t.fraction(f"coordinate {i + 1}") for i in range(n))
    t.finish()
    return pt


def parse_graph(text: str, source: str = "graph") -> WeightedGraph:
    t = _Tokens(text, source)
    t.keyword("NODES")
    k = t.integer("node count")
    t.keyword("EDGES")
    m = t.integer("edge count")
    edges = []
    for e in range(m):
        u = t.integer(f"edge {e + 1} endpoint")
        v = t.integer(f"edge {e + 1} endpoint")
        w = t.integer(f"edge {e + 1} weight")
        if not (1 <= u <= k and 1 <= v <= k):
            raise FileFormatError(
                f"{source}: edge {e + 1}: endpoints are 1..{k}, got {u} {v}"
            )
        edges.append((u - 1, v - 1, w))
    t.finish()
    try:
        return WeightedGraph(k, tuple(edges))
    except ZeroHalfError as exc:
        raise FileFormatError(f"{source}: {exc}") from None


def format_instance(instance: IlpInstance) -> str:
    lines = [f"ROWS {instance.m}", f"COLS {instance.n}", "A"]
    lines += [" ".join(str(a) for a in row) for row in instance.A]
    lines.append("B")
    lines.append(" ".join(str(v) for v in instance.b))
    lines.append("LOWER")
    lines.append(" ".join("1" if f else "0" for f in instance.lower_present))
    lines.append("UPPER")
    lines.append(" ".join("1" if f else "0" for f in instance.upper_present))
    if instance.objective is not None:
        lines.append("OBJ")
        lines.append(" ".join(str(c) for c in instance.objective))
    lines.append("END")
    return "\n".join(lines) + "\n"


def format_point(point) -> str:
    return _fmt_vec(as_point(point)) + "\n"


def format_graph(graph: WeightedGraph) -> str:
    lines = [f"NODES {graph.node_count}", f"EDGES {len(graph.edges)}"]
    lines += [f"{u + 1} {v + 1} {w}" for u, v, w in graph.edges]
    return "\n".join(lines) + "\n"


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


# -------------------------------------------------------------- subcommands


def _cmd_separate(ns) -> int:
    inst = parse_instance(_read(ns.instance), ns.instance)
    xhat = parse_point(_read(ns.xhat), inst.n, ns.xhat)
    xstar = parse_point(_read(ns.xstar), inst.n, ns.xstar)
    if ns.modulus != 2:
        raise MethodNotApplicableError(
            f"separate works on the halves grid only, not modulus {ns.modulus}"
        )
    ctx = compute_context(inst, xhat, xstar)
    if ns.method == "col":
        result = primal_separate_col(ctx)
    elif ns.method == "row":
        result = primal_separate_row(ctx)
    elif ns.method == "oracle":
        result = _oracle_separation(ctx)
    else:
        profile = parity_profile(inst)
        if profile.column_method_ok:
            result = primal_separate_col(ctx)
        elif profile.row_method_ok:
            result = primal_separate_row(ctx)
        else:
            try:
                result = _oracle_separation(ctx)
            except ZeroHalfError as exc:
                print(f"error: {exc}", file=sys.stderr)
                print(
                    "PARITY_COLUMN_ODD " + " ".join(map(str, profile.column_odd_counts)),
                    file=sys.stderr,
                )
                print(
                    "PARITY_ROW_ODD " + " ".join(map(str, profile.row_odd_counts)),
                    file=sys.stderr,
                )
                return 2
    if result.cut is None:
        print("NONE")
        return 0
    cut = result.cut
    print(f"CUT {_fmt_vec(cut.coeffs)} <= {fmt_frac(cut.rhs)}")
    print(f"LAMBDA {_fmt_vec(cut.provenance.lam)}")
    print(f"MU_DOWN {_fmt_vec(cut.provenance.mu_down)}")
    print(f"MU_UP {_fmt_vec(cut.provenance.mu_up)}")
    print(f"VIOLATION {fmt_frac(result.violation)}")
    print(f"CALLS {result.calls}")
    return 0


def _oracle_separation(ctx) -> SeparationResult:
    cut = brute_primal_separate(ctx)
    if cut is None:
        return SeparationResult(None, None, 0)
    return SeparationResult(cut, violation(cut, ctx.xstar), 0)


def _cmd_approx(ns) -> int:
    inst = parse_instance(_read(ns.instance), ns.instance)
    params = ApproxParams(epsilon=Fraction(ns.epsilon), modulus=ns.modulus)
    lift = None
    if ns.presolve_monotone:
        reduced, report = monotone_presolve(inst)
        if reduced is None:
            return _approx_after_total_presolve(inst, params, report)
        inst, lift = reduced, report.lift
    res = approx_optimize(inst, None, params)
    argmax = lift(res.argmax) if lift else res.argmax
    print(f"K {params.k}")
    print(f"CUTS {res.cut_count}")
    print(f"ALPHA {fmt_frac(res.alpha)}")
    print(f"ARGMAX {_fmt_vec(argmax)}")
    return 0


def _approx_after_total_presolve(inst, params, report) -> int:
    """Presolve removed every row; only box constraints remain."""
    if inst.objective is None:
        raise ZeroHalfError("no objective given and none stored on the instance")
    if not report.kept_coords:
        alpha, argmax = Fraction(0), report.lift(())
    else:
        keep = report.kept_coords
        sub = IlpInstance(
            A=((0,) * len(keep),),
            b=(0,),
            lower_present=tuple(inst.lower_present[i] for i in keep),
            upper_present=tuple(inst.upper_present[i] for i in keep),
        )
        rows, rhs = box_rows(sub)
        res = lp_solve(rows, rhs, [inst.objective[i] for i in keep])
        if res.status is LpStatus.UNBOUNDED:
            raise ZeroHalfError("objective unbounded over the surviving box")
        alpha, argmax = res.value, report.lift(res.point)
    print(f"K {params.k}")
    print("CUTS 0")
    print(f"ALPHA {fmt_frac(alpha)}")
    print(f"ARGMAX {_fmt_vec(argmax)}")
    return 0


def _cmd_match(ns) -> int:
    graph = parse_graph(_read(ns.graph), ns.graph)
    res = solve_matching(graph)
    print(("MATCHING " + " ".join(str(e + 1) for e in res.matching)).rstrip())
    print(f"WEIGHT {res.weight}")
    if ns.stats:
        print(f"MINCUT_CALLS_PER_SEP {res.counters.max_calls_per_separation}")
        print(f"TOTAL_MINCUTS {res.counters.total_mincut_calls}")
    return 0


def _cmd_oracle_opt(ns) -> int:
    inst = parse_instance(_read(ns.instance), ns.instance)
    if ns.modulus < 2:
        raise ZeroHalfError(f"modulus must be at least 2, got {ns.modulus}")
    value, point = brute_closure_optimize(inst, None, ns.modulus)
    print(f"VALUE {fmt_frac(value)}")
    print(f"ARGMAX {_fmt_vec(point)}")
    return 0


def _cmd_check(ns) -> int:
    inst = parse_instance(_read(ns.instance), ns.instance)
    xhat = parse_point(_read(ns.xhat), inst.n, ns.xhat)
    if not is_integral(xhat):
        raise ZeroHalfError(f"xhat {tuple(map(fmt_frac, xhat))} is not integral")
    bad = inst.feasibility_failure(xhat)
    if bad is not None:
        raise ZeroHalfError(f"xhat is infeasible: {bad}")
    lam = tuple(Fraction(v) for v in ns.lam)
    down = tuple(Fraction(v) for v in ns.mu_down) if ns.mu_down else (Fraction(0),) * inst.n
    up = tuple(Fraction(v) for v in ns.mu_up) if ns.mu_up else (Fraction(0),) * inst.n
    try:
        mult = Multipliers(lam, down, up)
        cut = derive_cut(inst, mult)
    except ZeroHalfError as exc:
        print("VALID no")
        print(f"REASON {exc}")
        return 0
    tight = violation(cut, xhat) == 0
    before = unfloored_rhs(inst, mult)
    nontrivial = before.denominator != 1
    verdict = extended_slack(inst, mult, xhat) == Fraction(1, 2)
    print("VALID yes")
    print(f"CUT {_fmt_vec(cut.coeffs)} <= {fmt_frac(cut.rhs)}")
    print(f"TIGHT {'yes' if tight else 'no'}")
    print(f"UNFLOORED_RHS {fmt_frac(before)}")
    print(f"NONTRIVIAL {'yes' if nontrivial else 'no'}")
    print(f"VERDICT {'tight-nontrivial' if verdict else 'not-tight-nontrivial'}")
    return 0


def _cmd_gen(ns) -> int:
    rng = random.Random(ns.seed)
    case = gen_primal_case(rng, ns.rows, ns.cols, ns.profile)
    files = (
        (f"{ns.out}.inst", format_instance(case.instance)),
        (f"{ns.out}.xhat", format_point(case.xhat)),
        (f"{ns.out}.xstar", format_point(case.xstar)),
    )
    for path, payload in files:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(payload)
        print(f"WROTE {path}")
    return 0


# -------------------------------------------------------------------- wiring


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def build_parser() -> _Parser:
    parser = _Parser(prog="zerohalf", description=__doc__)
    parser.add_argument("--jobs", type=int, default=1, metavar="N",
                        help="worker-count hint; the current build runs sequentially")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("separate", help="primal separation at an integral point")
    p.add_argument("--instance", required=True)
    p.add_argument("--xhat", required=True)
    p.add_argument("--xstar", required=True)
    p.add_argument("--method", choices=("col", "row", "auto", "oracle"), default="auto")
    p.add_argument("--modulus", type=int, default=2)
    p.set_defaults(func=_cmd_separate)

    p = sub.add_parser("approx", help="bounded-support closure optimum")
    p.add_argument("--instance", required=True)
    p.add_argument("--epsilon", required=True, metavar="P/Q")
    p.add_argument("--modulus", type=int, default=2)
    p.add_argument("--presolve-monotone", action="store_true")
    p.set_defaults(func=_cmd_approx)

    p = sub.add_parser("match", help="maximum-weight matching by primal cuts")
    p.add_argument("--graph", required=True)
    p.add_argument("--stats", action="store_true")
    p.set_defaults(func=_cmd_match)

    p = sub.add_parser("oracle-opt", help="exact closure optimum by enumeration")
    p.add_argument("--instance", required=True)
    p.add_argument("--modulus", type=int, default=2)
    p.set_defaults(func=_cmd_oracle_opt)

    p = sub.add_parser("check", help="classify one multiplier vector at xhat")
    p.add_argument("--instance", required=True)
    p.add_argument("--xhat", required=True)
    p.add_argument("--lambda", dest="lam", required=True, nargs="+", metavar="P/Q")
    p.add_argument("--mu-down", nargs="+", metavar="P/Q")
    p.add_argument("--mu-up", nargs="+", metavar="P/Q")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("gen", help="write a random instance with xhat and xstar")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--rows", type=int)
    p.add_argument("--cols", type=int)
    p.add_argument("--profile", choices=PROFILES, default="mixed")
    p.add_argument("--out", default="case", metavar="PREFIX")
    p.set_defaults(func=_cmd_gen)
    return parser


def run_command(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help and friends
        return int(exc.code or 0)
    try:
        return ns.func(ns)
    except FileFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, ZeroDivisionError) as exc:
        # malformed fractions on the command line
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except ZeroHalfError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
