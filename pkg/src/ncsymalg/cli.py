"""Command-line front end: run verification commands on an instance file.

Usage::

    ncsym --spec split22.spec --command dims --span 6
    ncsym --spec onefour.spec --command exactness --format jsonl

Exit status: 0 when every check passes, 1 when a check fails, 2 on usage or
parse errors, 3 when an enumeration budget was exceeded.
"""
from __future__ import annotations

import argparse
import itertools
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from . import symmetry
from .bimodule import decompose, is_isomorphic, left_dual, right_dual
from .curve import ar_audit, dimform_audit
from .errors import BudgetExceeded, NcsymError, ParseError, ValidationError
from .instance import InstanceSpec, fixture_path, load_spec
from .ncsym import (
    ZAlgebra,
    check_domain,
    check_left_exactness,
    check_shift,
    double_dual_isomorphic,
    predicted_dim,
)

COMMANDS = ("dims", "exactness", "domain", "shift", "curve-audit", "stab", "aut-order", "orbit-case", "decompose", "iso")
DEFAULT_SPANS = {"exactness": 5, "domain": 3, "shift": 4, "curve-audit": 3}
DEFAULT_IRANGE = (-2, 4)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


@dataclass
class Options:
    span: int | None = None
    indices: tuple | None = None
    irange: tuple = DEFAULT_IRANGE
    budget: int | None = None
    jobs: int = 1
    timings: bool = False


@dataclass
class Report:
    instance: dict
    command: str
    records: list = field(default_factory=list)

    @property
    def summary(self) -> dict:
        passed = sum(1 for r in self.records if r["pass"])
        return {
            "pass_count": passed,
            "fail_count": len(self.records) - passed,
            "records": len(self.records),
            "budget_exceeded": any(r.get("budget_exceeded") for r in self.records),
        }

    @property
    def exit_code(self) -> int:
        s = self.summary
        if s["budget_exceeded"]:
            return EXIT_BUDGET
        return EXIT_FAIL if s["fail_count"] else EXIT_OK


def record(check, parameters, expected, provenance, computed, passed=None, **extra) -> dict:
    rec = {
        "check": check,
        "parameters": parameters,
        "expected": expected,
        "provenance": provenance,
        "computed": computed,
        "pass": bool(expected == computed) if passed is None else bool(passed),
    }
    rec.update(extra)
    return rec


def _failure(check, parameters, exc) -> dict:
    return record(
        check, parameters, None, "error", None, False,
        reason=f"{type(exc).__name__}: {exc}", budget_exceeded=isinstance(exc, BudgetExceeded),
    )


# --- tasks ------------------------------------------------------------------
# Every command expands into a list of (check name, parameters, thunk); the
# thunk returns a list of records.


def _cells(opts: Options, span: int):
    if opts.indices:
        i, j = opts.indices[:2]
        return [(i, j)]
    lo, hi = opts.irange
    return [(i, i + s) for i in range(lo, hi + 1) for s in range(span + 1)]


def _dims_tasks(spec, Z, opts):
    span = opts.span if opts.span is not None else spec.max_span
    try:
        predicted_dim(spec.dims, 0, 0)
        flavor = spec.dims
    except NcsymError:
        flavor = None

    def cell(i, j):
        c = Z.component(i, j)
        divisible = c.dim_k % c.right_field.degree == 0
        if flavor is None:
            return [record("right_dim", {"i": i, "j": j}, None, "derived:divisibility by [F_j:k]", c.right_dim, divisible)]
        want = predicted_dim(flavor, i, j)
        return [record("right_dim", {"i": i, "j": j}, want, "formula:right-dimension count", c.right_dim,
                       divisible and want == c.right_dim)]

    return [("right_dim", {"i": i, "j": j}, (lambda i=i, j=j: cell(i, j))) for i, j in _cells(opts, span)]


def _exactness_tasks(spec, Z, opts):
    span = opts.span if opts.span is not None else DEFAULT_SPANS["exactness"]

    def cell(i, j):
        r = check_left_exactness(Z, i, j)
        return [record("left_exactness", {"i": i, "j": j}, True, "derived:subspace equality in T_i,j+1",
                       r.equal, detail={"lhs_dim": r.lhs_dim, "rhs_dim": r.rhs_dim})]

    return [("left_exactness", {"i": i, "j": j}, (lambda i=i, j=j: cell(i, j))) for i, j in _cells(opts, span)]


def _domain_tasks(spec, Z, opts):
    budget = opts.budget if opts.budget is not None else spec.enumeration_budget
    if opts.indices:
        if len(opts.indices) != 3:
            raise ValidationError("--indices needs i,j,l for the domain command")
        triples = [tuple(opts.indices)]
    else:
        top = opts.span if opts.span is not None else DEFAULT_SPANS["domain"]
        triples = [t for t in itertools.product(range(top + 1), repeat=3) if t[0] <= t[1] <= t[2]]

    def cell(i, j, l):
        r = check_domain(Z, i, j, l, budget)
        return [record("domain", {"i": i, "j": j, "l": l}, r.expected_rank, "derived:exhaustive enumeration of A_ij",
                       r.min_rank, detail={"nonzero_elements": r.checked})]

    return [("domain", dict(zip("ijl", t)), (lambda t=t: cell(*t))) for t in triples]


def _shift_tasks(spec, Z, opts):
    span = opts.span if opts.span is not None else DEFAULT_SPANS["shift"]

    def cell(i, j):
        r = check_shift(Z, i, j)
        return [record("shift_dim", {"i": i, "j": j}, r.dim, "derived:dim_k A_ij", r.shifted_dim)]

    def double_dual():
        ok = double_dual_isomorphic(spec.bimodule, spec.factor_hints)
        return [record("double_dual_iso", {}, True, "derived:isomorphism test N^2* vs N", ok)]

    tasks = [("shift_dim", {"i": i, "j": j}, (lambda i=i, j=j: cell(i, j))) for i, j in _cells(opts, span)]
    return tasks + [("double_dual_iso", {}, double_dual)]


def _curve_tasks(spec, Z, opts):
    max_i = opts.span if opts.span is not None else DEFAULT_SPANS["curve-audit"]

    def rows():
        return [record("hom_dim", {"row": r.row, "i": r.i}, r.expected, "formula:hom-dimension table", r.computed)
                for r in dimform_audit(Z, max_i)]

    def ar():
        return [record("ar_multiplicity", {"row": r.row, "power": r.i}, r.expected, "formula:AR multiplicity table", r.computed)
                for r in ar_audit(Z)]

    return [("hom_dim", {"max_i": max_i}, rows), ("ar_multiplicity", {}, ar)]


def _pairs(pairs):
    return sorted(str(p) for p in pairs)


def _stab_tasks(spec, Z, opts):
    M = spec.bimodule

    def run():
        brute = symmetry.stab(M)
        return [record("stabiliser", {}, _pairs(symmetry.predicted_stab(M)),
                       "formula:multiset rule {d^-1 s g} = {s}", _pairs(brute))]

    return [("stabiliser", {}, run)]


def _aut_tasks(spec, Z, opts):
    M = spec.bimodule
    budget = opts.budget if opts.budget is not None else spec.enumeration_budget

    def run():
        r = symmetry.aut_order(M, budget)
        out = []
        if r.formula is None:
            out.append(record("aut_order", {}, None, "derived:orbit count only", r.brute, True,
                              detail={"automorphisms": r.automorphisms, "scalar_maps": r.scalar_maps}))
        else:
            out.append(record("aut_order", {}, r.formula, "formula:|K* x K*| / |{(a s(b), a e(b))}|", r.brute,
                              detail={"automorphisms": r.automorphisms, "scalar_maps": r.scalar_maps}))
        for pair in symmetry.stab(M):
            twisted = symmetry.twist_triple(pair.delta, M, pair.epsilon)
            out.append(record("aut_order_twist_invariance", {"pair": str(pair)}, r.brute, "derived:orbit count on M",
                              symmetry.aut_order(twisted, budget).brute))
        return out

    return [("aut_order", {}, run)]


def _orbit_tasks(spec, Z, opts):
    M = spec.bimodule

    def run():
        case = symmetry.orbit_case(M)
        expected = symmetry.predicted_orbit_case(M)
        out = [record("orbit_case", {}, expected, "derived:twist multiset of M and *M", case.value,
                      detail={"witness": str(case.witness) if case.witness else None})]
        out.append(record("orbit_case_witness", {}, True, "derived:re-test of the witness",
                          symmetry.verify_witness(M, case)))
        if case.value != "I":
            G = symmetry.galois_group(M.left_field)
            for d, e in itertools.product(G.elements, repeat=2):
                twisted = symmetry.twist_triple(d, M, e)
                out.append(record("orbit_case_twist_invariance", {"pair": str(symmetry.TwistPair(d, e))},
                                  case.value, "derived:orbit case of M", symmetry.orbit_case(twisted).value))
        return out

    return [("orbit_case", {}, run)]


def _decompose_tasks(spec, Z, opts):
    N = spec.bimodule

    def run():
        mv = decompose(N, spec.factor_hints)
        total = sum(m * d for m, d in zip(mv.multiplicities, mv.degrees))
        return [record("decompose", {}, N.dim, "derived:sum of multiplicity x factor degree", total,
                       detail={"factors": list(mv.factor_fields), "degrees": list(mv.degrees),
                               "multiplicities": list(mv.multiplicities)})]

    return [("decompose", {}, run)]


def _iso_tasks(spec, Z, opts):
    N, hints = spec.bimodule, spec.factor_hints

    def run():
        return [
            record("iso_left_of_right_dual", {}, True, "derived:isomorphism test", is_isomorphic(left_dual(right_dual(N)), N, hints)),
            record("iso_right_of_left_dual", {}, True, "derived:isomorphism test", is_isomorphic(right_dual(left_dual(N)), N, hints)),
            record("iso_double_dual", {}, True, "derived:isomorphism test", double_dual_isomorphic(N, hints)),
        ]

    return [("iso", {}, run)]


TASKS = {
    "dims": _dims_tasks,
    "exactness": _exactness_tasks,
    "domain": _domain_tasks,
    "shift": _shift_tasks,
    "curve-audit": _curve_tasks,
    "stab": _stab_tasks,
    "aut-order": _aut_tasks,
    "orbit-case": _orbit_tasks,
    "decompose": _decompose_tasks,
    "iso": _iso_tasks,
}


def run_command(spec: InstanceSpec, command: str, opts: Options | None = None, algebra: ZAlgebra | None = None) -> Report:
    if command not in TASKS:
        raise ValidationError(f"unknown command {command!r}; expected one of {', '.join(COMMANDS)}")
    opts = opts or Options()
    Z = algebra or ZAlgebra(spec.bimodule)
    report = Report(spec.echo(), command)
    tasks = TASKS[command](spec, Z, opts)

    def execute(task):
        name, params, thunk = task
        start = time.perf_counter()
        try:
            recs = thunk()
        except NcsymError as exc:
            recs = [_failure(name, params, exc)]
        if opts.timings:
            elapsed = round(time.perf_counter() - start, 4)
            for r in recs:
                r["seconds"] = elapsed
        return recs

    if opts.jobs > 1:
        with ThreadPoolExecutor(max_workers=opts.jobs) as pool:
            results = list(pool.map(execute, tasks))
    else:
        results = [execute(t) for t in tasks]
    for recs in results:
        report.records.extend(recs)
    return report


# --- rendering ----------------------------------------------------------------


def _fmt(value) -> str:
    if isinstance(value, dict):
        return " ".join(f"{k}={_fmt(v)}" for k, v in value.items())
    if isinstance(value, list):
        return "[" + ", ".join(_fmt(v) for v in value) + "]"
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def emit(report: Report, fmt: str = "table") -> str:
    if fmt == "jsonl":
        lines = [json.dumps({"instance": report.instance, "command": report.command}, ensure_ascii=False)]
        lines += [json.dumps(r, ensure_ascii=False) for r in report.records]
        lines.append(json.dumps({"summary": report.summary}))
        return "\n".join(lines) + "\n"
    if fmt != "table":
        raise ValidationError(f"unknown format {fmt!r}")
    inst = report.instance
    head = f"# {inst.get('label')} over {inst.get('base')}, dims {tuple(inst.get('dims', ()))}, command {report.command}"
    cols = ("check", "parameters", "expected", "computed", "provenance", "status")
    rows = []
    for r in report.records:
        status = "ok" if r["pass"] else "FAIL"
        if "reason" in r:
            status += f" ({r['reason']})"
        rows.append((r["check"], _fmt(r["parameters"]), _fmt(r["expected"]), _fmt(r["computed"]), r["provenance"], status))
    widths = [max([len(c)] + [len(row[n]) for row in rows]) for n, c in enumerate(cols)]
    out = [head, "  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip()]
    out += ["  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() for row in rows]
    s = report.summary
    out.append(f"# pass {s['pass_count']}  fail {s['fail_count']}  total {s['records']}")
    return "\n".join(out) + "\n"


# --- entry point ------------------------------------------------------------------


def _int_tuple(text: str) -> tuple:
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ncsym", description="Verify structure of noncommutative symmetric algebras.")
    ap.add_argument("--spec", required=True, help="instance file, or the name of a shipped fixture")
    ap.add_argument("--command", required=True, choices=COMMANDS)
    ap.add_argument("--span", type=int, help="maximal j - i (dims, exactness, shift), top index (domain) or max i (curve-audit)")
    ap.add_argument("--indices", type=_int_tuple, help="restrict to one cell i,j or triple i,j,l")
    ap.add_argument("--irange", type=_int_tuple, default=DEFAULT_IRANGE, help="first and last row index i (default -2,4)")
    ap.add_argument("--format", choices=("table", "jsonl"), default="table")
    ap.add_argument("--budget", type=int, help="enumeration cap for exhaustive searches")
    ap.add_argument("--jobs", type=int, default=1, help="worker threads for independent cells")
    ap.add_argument("--timings", action="store_true", help="add wall-clock seconds to every record")
    return ap


def _join_negative_values(argv: list) -> list:
    """Turn ``--irange -2,4`` into ``--irange=-2,4`` so argparse does not read -2,4 as a flag."""
    out = []
    it = iter(argv)
    for tok in it:
        if tok in ("--irange", "--indices"):
            nxt = next(it, None)
            if nxt is not None and nxt.startswith("-") and nxt[1:2].isdigit():
                out.append(f"{tok}={nxt}")
                continue
            out.append(tok)
            if nxt is not None:
                out.append(nxt)
            continue
        out.append(tok)
    return out


def main(argv=None) -> int:
    ap = build_parser()
    argv = _join_negative_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.irange is not None and len(args.irange) != 2:
        print("ncsym: --irange needs two integers", file=sys.stderr)
        return EXIT_USAGE
    if args.indices is not None and len(args.indices) not in (2, 3):
        print("ncsym: --indices needs i,j or i,j,l", file=sys.stderr)
        return EXIT_USAGE
    path = args.spec
    try:
        try:
            spec = load_spec(path)
        except ParseError:
            if "/" in path:
                raise
            spec = load_spec(fixture_path(path))
        opts = Options(args.span, args.indices, tuple(args.irange), args.budget, max(1, args.jobs), args.timings)
        report = run_command(spec, args.command, opts)
    except (ParseError, ValidationError) as exc:
        print(f"ncsym: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(emit(report, args.format))
    return report.exit_code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
