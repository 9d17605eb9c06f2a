"""Command-line front end.

Subcommands: identities, sumset, thm4, experiment.  Every run is fully
determined by its arguments (plus the SUMSETLAB_BUDGET environment
variable when --budget is absent); structured output is canonical JSON.

Exit codes:
  0  everything verified / nothing to disagree with
  1  usage error or malformed input
  2  mathematical disagreement or soundness violation
  3  budget exceeded
"""

import argparse
import itertools
import json
import os
import sys

from .ffield import NotPrime, OutOfRange
from .identities import (
    AomotoParams,
    DegreeInfeasible,
    InterpolationMismatch,
    ParameterOutOfRange,
    aomoto_closed_form,
    aomoto_constant_term,
    aomoto_inverted_closed_form,
    dyson_closed_form,
    dyson_constant_term,
    key_coefficient,
    key_coefficient_closed_form,
    leading_coefficient_check,
    zeilberger_coefficient,
)
from .sumsets import (
    BUDGET_ENV_VAR,
    BudgetExceeded,
    CannotSatisfyHypothesis,
    DEFAULT_BUDGET,
    HYPOTHESIS_CHOICES,
    InstanceFormatError,
    _soundness_violations,
    certificate_check,
    certificate_check_literal,
    compute_bounds,
    coverage_sweep,
    enumerate_restricted_sumset,
    load_instance,
    run_experiment,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DISAGREEMENT = 2
EXIT_BUDGET = 3

# enumeration covers Z/pZ only; the identity suite over the integers is
# what stands in for characteristic 0
_CHAR0_NOTE = ("characteristic 0: identity-level verification only "
               "(enumeration runs over Z/pZ)")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _int_list(text):
    try:
        values = [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("expected at least one integer")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="sumsetlab",
        description="Exact verification of restricted-sumset bounds over Z/pZ "
                    "and the constant-term identities behind them.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "doc"), default="table",
                        help="human table or structured JSON document (default: table)")
    common.add_argument("--out", metavar="PATH", default=None,
                        help="write the report to PATH instead of stdout")
    common.add_argument("--budget", type=int, default=None, metavar="N",
                        help=f"enumeration budget (default: ${BUDGET_ENV_VAR} "
                             f"or {DEFAULT_BUDGET})")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_id = sub.add_parser(
        "identities", parents=[common],
        help="brute-force vs closed-form sweeps of the constant-term identities",
    )
    p_id.add_argument("scope", choices=("dyson", "zeilberger", "aomoto", "lemma22", "prop21"),
                      help="which identity family to sweep")
    p_id.add_argument("--max-vars", type=int, default=None, metavar="N",
                      help="dyson/zeilberger: largest variable count (default 4, cap 6)")
    p_id.add_argument("--max-entry", type=int, default=None, metavar="N",
                      help="dyson/zeilberger: largest exponent entry (default 2, cap 4)")
    p_id.add_argument("--max-n", type=int, default=None, metavar="N",
                      help="aomoto/prop21: largest n (default 3, cap 4)")
    p_id.add_argument("--min-n", type=int, default=None, metavar="N",
                      help="prop21: smallest n (default 2)")
    p_id.add_argument("--max-a", type=int, default=None, metavar="N",
                      help="aomoto: largest a (default 2, cap 3)")
    p_id.add_argument("--max-b", type=int, default=None, metavar="N",
                      help="aomoto/lemma22: largest b (default 2, cap 3)")
    p_id.add_argument("--max-m", type=int, default=None, metavar="N",
                      help="largest symmetric exponent m (defaults: aomoto/lemma22 1, "
                           "prop21 2; cap 3)")
    p_id.add_argument("--max-s", type=int, default=None, metavar="N",
                      help="lemma22: largest shift count s (default 2)")
    p_id.add_argument("--fix-n", type=int, default=None, metavar="N",
                      help="lemma22: the fixed n (default 2, cap 4)")
    p_id.add_argument("--k-span", type=int, default=None, metavar="N",
                      help="prop21: k sweeps m(n-1)+1 .. m(n-1)+k-span (default 4, cap 6)")
    p_id.add_argument("--slack", type=int, default=None, metavar="N",
                      help="lemma22: extra interpolation samples (default 2, cap 4)")
    p_id.add_argument("--chi-side", choices=("a", "b"), default="a",
                      help="aomoto: which product orientation the closed form is "
                           "paired with (default a; 'b' is a deliberate negative control)")

    p_sum = sub.add_parser(
        "sumset", parents=[common],
        help="enumerate one instance file and report bounds and certificate",
    )
    p_sum.add_argument("instance", metavar="FILE",
                       help="JSON instance document (fields p, sets, forbidden)")

    p_t4 = sub.add_parser(
        "thm4", parents=[common],
        help="coverage sweep: do restricted n-fold sums of threshold-size sets "
             "hit every residue",
    )
    p_t4.add_argument("--p", type=int, required=True, help="prime modulus")
    p_t4.add_argument("--m", type=int, required=True, help="forbidden-set size")
    p_t4.add_argument("--mode", choices=("exhaustive", "sample"), default="exhaustive")
    p_t4.add_argument("--count", type=int, default=50,
                      help="sample mode: number of seeded subsets (default 50)")
    p_t4.add_argument("--seed", type=int, default=0, help="sample mode seed")
    p_t4.add_argument("--size", type=int, default=None,
                      help="subset size to test (default: the coverage threshold)")
    p_t4.add_argument("--forbidden", type=_int_list, default=None, metavar="LIST",
                      help="comma-separated forbidden differences "
                           "(default: 0,..,m-1)")

    p_exp = sub.add_parser(
        "experiment", parents=[common],
        help="seeded random soundness sweep over instances",
    )
    p_exp.add_argument("--seed", type=int, default=0)
    p_exp.add_argument("--trials", type=int, default=100)
    p_exp.add_argument("--p-set", type=_int_list, default=[5, 7, 11, 13], metavar="LIST")
    p_exp.add_argument("--n-set", type=_int_list, default=[2, 3], metavar="LIST")
    p_exp.add_argument("--m-set", type=_int_list, default=[0, 1], metavar="LIST")
    p_exp.add_argument("--k-max", type=int, default=6)
    p_exp.add_argument("--enforce", choices=HYPOTHESIS_CHOICES, default="none",
                       help="resample parameter tuples until this bound's "
                            "hypothesis holds")
    return parser


def _default(value, fallback):
    return fallback if value is None else value


def _require(condition, message):
    if not condition:
        raise _UsageError(message)


# ----------------------------------------------------------------------
# identities
# ----------------------------------------------------------------------

def _cmd_identities(args, budget):
    scope = args.scope
    rows = []
    config = {"scope": scope}

    if scope in ("dyson", "zeilberger"):
        max_vars = _default(args.max_vars, 4)
        max_entry = _default(args.max_entry, 2)
        _require(2 <= max_vars <= 6, "--max-vars must lie in [2, 6]")
        _require(0 <= max_entry <= 4, "--max-entry must lie in [0, 4]")
        config.update(max_vars=max_vars, max_entry=max_entry)
        for nv in range(2, max_vars + 1):
            for avec in itertools.product(range(max_entry + 1), repeat=nv):
                ct = dyson_constant_term(avec)
                closed = dyson_closed_form(avec)
                row = {"avec": list(avec), "constant_term": ct, "closed_form": closed}
                if scope == "zeilberger":
                    coeff = zeilberger_coefficient(avec)
                    row["coefficient_form"] = coeff
                    row["agree"] = ct == closed == coeff
                else:
                    row["agree"] = ct == closed
                rows.append(row)

    elif scope == "aomoto":
        max_n = _default(args.max_n, 3)
        max_a = _default(args.max_a, 2)
        max_b = _default(args.max_b, 2)
        max_m = _default(args.max_m, 1)
        _require(1 <= max_n <= 4, "--max-n must lie in [1, 4]")
        _require(0 <= max_a <= 3, "--max-a must lie in [0, 3]")
        _require(0 <= max_b <= 3, "--max-b must lie in [0, 3]")
        _require(0 <= max_m <= 2, "--max-m must lie in [0, 2]")
        other = "b" if args.chi_side == "a" else "a"
        config.update(max_n=max_n, max_a=max_a, max_b=max_b, max_m=max_m,
                      chi_side=args.chi_side)
        for n in range(1, max_n + 1):
            for s in range(n + 1):
                for a in range(max_a + 1):
                    for b in range(max_b + 1):
                        for m in range(max_m + 1):
                            params = AomotoParams(n=n, s=s, a=a, b=b, m=m)
                            ct = {side: aomoto_constant_term(params, side)
                                  for side in ("a", "b")}
                            closed = aomoto_closed_form(params)
                            inverted = aomoto_inverted_closed_form(a, b, s, m, n)
                            agree = (closed == ct[args.chi_side]
                                     and inverted == ct[other])
                            rows.append({
                                "n": n, "s": s, "a": a, "b": b, "m": m,
                                "ct_chi_a": ct["a"], "ct_chi_b": ct["b"],
                                "closed_form": closed, "inverted_form": inverted,
                                "agree": agree,
                            })

    elif scope == "lemma22":
        n = _default(args.fix_n, 2)
        max_b = _default(args.max_b, 2)
        max_s = _default(args.max_s, 2)
        max_m = _default(args.max_m, 1)
        slack = _default(args.slack, 2)
        _require(1 <= n <= 4, "--fix-n must lie in [1, 4]")
        _require(0 <= max_b <= 3, "--max-b must lie in [0, 3]")
        _require(0 <= max_s, "--max-s must be >= 0")
        _require(0 <= max_m <= 2, "--max-m must lie in [0, 2]")
        _require(0 <= slack <= 4, "--slack must lie in [0, 4]")
        config.update(n=n, max_b=max_b, max_s=max_s, max_m=max_m, slack=slack)
        for b in range(max_b + 1):
            for s in range(min(max_s, n) + 1):
                for m in range(max_m + 1):
                    base = {"n": n, "s": s, "b": b, "m": m}
                    try:
                        rep = leading_coefficient_check(n, s, b, m, slack)
                    except InterpolationMismatch as exc:
                        rows.append({**base, "agree": False, "error": str(exc)})
                        continue
                    rows.append({
                        **base,
                        "degree": rep.degree,
                        "leading_coefficient": str(rep.leading_coefficient),
                        "expected_leading": str(rep.expected_leading),
                        "agree": rep.agree,
                    })

    elif scope == "prop21":
        min_n = _default(args.min_n, 2)
        max_n = _default(args.max_n, 3)
        max_m = _default(args.max_m, 2)
        k_span = _default(args.k_span, 4)
        _require(1 <= min_n <= max_n <= 4, "--min-n/--max-n must satisfy 1 <= min <= max <= 4")
        _require(1 <= max_m <= 3, "--max-m must lie in [1, 3]")
        _require(1 <= k_span <= 6, "--k-span must lie in [1, 6]")
        config.update(min_n=min_n, max_n=max_n, max_m=max_m, k_span=k_span)
        for n in range(min_n, max_n + 1):
            for m in range(1, max_m + 1):
                for k in range(m * (n - 1) + 1, m * (n - 1) + k_span + 1):
                    for s in range(n + 1):
                        closed = key_coefficient_closed_form(n, m, k, s)
                        sizes = (k + 1,) * s + (k,) * (n - s)
                        brute = key_coefficient(sizes, m)
                        rows.append({
                            "n": n, "m": m, "k": k, "s": s,
                            "closed_form": closed, "expansion": brute,
                            "agree": closed == brute and closed > 0,
                        })

    all_agree = all(row["agree"] for row in rows)
    first_failure = next((row for row in rows if not row["agree"]), None)
    report = {
        "command": "identities",
        "config": config,
        "rows": rows,
        "all_agree": all_agree,
        "first_failure": first_failure,
    }
    if scope == "aomoto":
        other = "b" if args.chi_side == "a" else "a"
        report["orientation"] = {
            "closed_form": "chi shift on the a-side factorials",
            "inverted_form": "chi shift on the b-side factorials",
            "closed_form_paired_with": f"ct_chi_{args.chi_side}",
            "inverted_form_paired_with": f"ct_chi_{other}",
        }
    return (EXIT_OK if all_agree else EXIT_DISAGREEMENT), report


# ----------------------------------------------------------------------
# sumset
# ----------------------------------------------------------------------

def _bound_entry_dict(entry):
    return {
        "formula": entry.formula,
        "value": entry.value,
        "hypothesis_met": entry.hypothesis_met,
        "reason": entry.reason,
    }


def _bounds_dict(report):
    return {entry.name: _bound_entry_dict(entry) for entry in report.entries()}


def _certificate_dict(cert):
    return {
        "method": cert.method,
        "coefficient": cert.coefficient_integer,
        "coefficient_mod_p": cert.coefficient_mod_p.value,
        "claimed_bound": cert.claimed_bound,
        "valid": cert.certificate_valid,
    }


def _cmd_sumset(args, budget):
    inst = load_instance(args.instance)
    sumset = sorted(enumerate_restricted_sumset(inst, budget))
    bounds = compute_bounds(inst, len(sumset))
    certificate = None
    skip_reason = None
    if inst.uniform_m is not None:
        try:
            certificate = certificate_check(inst)
        except DegreeInfeasible as exc:
            skip_reason = f"degree-infeasible: {exc}"
    else:
        try:
            certificate = certificate_check_literal(inst, budget)
        except DegreeInfeasible as exc:
            skip_reason = f"degree-infeasible: {exc}"
        except BudgetExceeded as exc:
            skip_reason = f"budget: {exc}"
    violations = _soundness_violations(len(sumset), bounds, certificate)
    report = {
        "command": "sumset",
        "instance": {
            "p": inst.p,
            "sets": [list(A) for A in inst.sets],
            "forbidden": {f"{i + 1},{j + 1}": sorted(S)
                          for (i, j), S in sorted(inst.forbidden.items()) if S},
        },
        "sumset": sumset,
        "cardinality": len(sumset),
        "bounds": _bounds_dict(bounds),
        "certificate": _certificate_dict(certificate) if certificate else None,
        "certificate_skip_reason": skip_reason,
        "violations": list(violations),
        "notes": [_CHAR0_NOTE],
    }
    return (EXIT_DISAGREEMENT if violations else EXIT_OK), report


# ----------------------------------------------------------------------
# thm4
# ----------------------------------------------------------------------

def _cmd_thm4(args, budget):
    sweep = coverage_sweep(
        args.p, args.m, mode=args.mode, count=args.count, seed=args.seed,
        size=args.size, s_set=args.forbidden, budget=budget,
    )
    rows = [
        {
            "subset": list(row.subset),
            "n": row.n,
            "hypothesis_met": row.hypothesis_met,
            "covered": row.covered,
            "missing": list(row.missing),
        }
        for row in sweep.rows
    ]
    failures = sweep.failures()
    report = {
        "command": "thm4",
        "config": {
            "p": sweep.p, "m": sweep.m, "forbidden": list(sweep.s_set),
            "subset_size": sweep.subset_size, "threshold": sweep.threshold,
            "mode": sweep.mode, "count": args.count, "seed": args.seed,
        },
        "rows": rows,
        "subsets_tested": len(rows),
        "failures": len(failures),
    }
    return (EXIT_DISAGREEMENT if failures else EXIT_OK), report


# ----------------------------------------------------------------------
# experiment
# ----------------------------------------------------------------------

def _cmd_experiment(args, budget):
    trials = run_experiment(
        args.seed, args.trials, args.p_set, args.n_set, args.m_set,
        args.k_max, enforce=args.enforce, budget=budget,
    )
    rows = []
    for t in trials:
        rows.append({
            "trial": t.index,
            "p": t.p, "n": t.n, "k": t.k, "m": t.m,
            "cardinality": t.cardinality,
            "bounds": _bounds_dict(t.bounds),
            "certificate": _certificate_dict(t.certificate) if t.certificate else None,
            "certificate_skip_reason": t.certificate_skip_reason,
            "violations": list(t.violations),
        })
    total = sum(len(t.violations) for t in trials)
    report = {
        "command": "experiment",
        "config": {
            "seed": args.seed, "trials": args.trials,
            "p_set": sorted(set(args.p_set)), "n_set": sorted(set(args.n_set)),
            "m_set": sorted(set(args.m_set)), "k_max": args.k_max,
            "enforce": args.enforce, "budget": budget,
        },
        "rows": rows,
        "violations_total": total,
        "notes": [_CHAR0_NOTE],
    }
    return (EXIT_DISAGREEMENT if total else EXIT_OK), report


# ----------------------------------------------------------------------
# rendering
# ----------------------------------------------------------------------

def _format_table(headers, rows):
    table = [headers] + [[str(c) for c in row] for row in rows]
    widths = [max(len(r[i]) for r in table) for i in range(len(headers))]
    lines = []
    for idx, row in enumerate(table):
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
        if idx == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _render_bounds(bounds_dict):
    rows = []
    for name in ("thm1", "thm2", "thm3", "old"):
        entry = bounds_dict[name]
        value = "n/a" if entry["value"] is None else entry["value"]
        rows.append([name, value, entry["hypothesis_met"], entry["reason"]])
    return _format_table(["bound", "value", "hypothesis", "reason"], rows)


def _render(report):
    command = report["command"]
    lines = []
    if command == "identities":
        rows = report["rows"]
        if rows:
            headers = [k for k in rows[0] if k != "agree"] + ["agree"]
            lines.append(_format_table(
                headers, [[row.get(h, "") for h in headers] for row in rows]
            ))
        lines.append(f"points checked: {len(rows)}   all agree: {report['all_agree']}")
        if report["first_failure"] is not None:
            lines.append(f"FIRST FAILURE: {report['first_failure']}")
    elif command == "sumset":
        inst = report["instance"]
        lines.append(f"p = {inst['p']}")
        for idx, A in enumerate(inst["sets"]):
            lines.append(f"A_{idx + 1} = {A}")
        for key, S in inst["forbidden"].items():
            lines.append(f"S_{key} = {S}")
        lines.append(f"sumset ({report['cardinality']} residues): {report['sumset']}")
        lines.append(_render_bounds(report["bounds"]))
        cert = report["certificate"]
        if cert:
            lines.append(
                f"certificate [{cert['method']}]: coefficient {cert['coefficient']} "
                f"= {cert['coefficient_mod_p']} mod p, claimed bound "
                f"{cert['claimed_bound']}, valid: {cert['valid']}"
            )
        else:
            lines.append(f"certificate: skipped ({report['certificate_skip_reason']})")
        if report["violations"]:
            lines.append(f"VIOLATIONS: {report['violations']}")
    elif command == "thm4":
        cfg = report["config"]
        lines.append(
            f"p = {cfg['p']}, m = {cfg['m']}, S = {cfg['forbidden']}, "
            f"subset size {cfg['subset_size']} (threshold {cfg['threshold']}), "
            f"mode {cfg['mode']}"
        )
        lines.append(_format_table(
            ["subset", "n", "hypothesis", "covered", "missing"],
            [[row["subset"], row["n"], row["hypothesis_met"], row["covered"],
              row["missing"]] for row in report["rows"]],
        ))
        lines.append(
            f"subsets tested: {report['subsets_tested']}   "
            f"failures: {report['failures']}"
        )
    elif command == "experiment":
        rows = []
        for row in report["rows"]:
            cert = row["certificate"]
            cert_state = "skipped" if cert is None else (
                "valid" if cert["valid"] else "vanishes"
            )
            bounds = row["bounds"]
            rows.append([
                row["trial"], row["p"], row["n"], row["k"], row["m"],
                row["cardinality"],
                *(("n/a" if bounds[b]["value"] is None else bounds[b]["value"])
                  for b in ("thm1", "thm2", "thm3", "old")),
                cert_state,
                ";".join(row["violations"]) or "-",
            ])
        lines.append(_format_table(
            ["trial", "p", "n", "k", "m", "|C|", "thm1", "thm2", "thm3", "old",
             "certificate", "violations"],
            rows,
        ))
        lines.append(f"violations total: {report['violations_total']}")
    return "\n".join(lines) + "\n"


def _emit(report, args):
    if args.format == "doc":
        text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    else:
        text = _render(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


_HANDLERS = {
    "identities": _cmd_identities,
    "sumset": _cmd_sumset,
    "thm4": _cmd_thm4,
    "experiment": _cmd_experiment,
}


def _resolve_budget(args) -> int:
    if args.budget is not None:
        budget = args.budget
    elif os.environ.get(BUDGET_ENV_VAR):
        try:
            budget = int(os.environ[BUDGET_ENV_VAR])
        except ValueError:
            raise _UsageError(
                f"${BUDGET_ENV_VAR}={os.environ[BUDGET_ENV_VAR]!r} is not an integer"
            )
    else:
        budget = DEFAULT_BUDGET
    if budget < 1:
        raise _UsageError(f"budget must be >= 1, got {budget}")
    return budget


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse help exits 0; usage errors exit 1
        return int(exc.code or 0)
    try:
        budget = _resolve_budget(args)
        code, report = _HANDLERS[args.command](args, budget)
    except _UsageError as exc:
        sys.stderr.write(f"sumsetlab: error: {exc}\n")
        return EXIT_USAGE
    except BudgetExceeded as exc:
        sys.stderr.write(f"sumsetlab: budget exceeded: {exc}\n")
        return EXIT_BUDGET
    except (InstanceFormatError, NotPrime, OutOfRange, ParameterOutOfRange,
            CannotSatisfyHypothesis, OSError) as exc:
        sys.stderr.write(f"sumsetlab: error: {exc}\n")
        return EXIT_USAGE
    _emit(report, args)
    return code


if __name__ == "__main__":
    sys.exit(main())
