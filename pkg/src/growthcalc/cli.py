"""Command-line front end for the growth-function calculus.

Subcommands cover sequence generation and condition checking, growth
function evaluation and classification, the Legendre-type transforms
(ell, theta, dual, L, L#), equivalence testing, the named verification
suites, and the finite-dimensional embedding model.

Reports go to stdout as JSON (one object, sorted keys — byte-identical
for the same argv and seed), CSV (grid reports flattened to
x,lhs,rhs,slack rows), or indented text.  Exit codes: 0 success/pass,
1 verdict failure, counterexample, or numeric no-certificate, 2 usage
or input error.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import math
import os
import sys
from typing import Optional

from . import __version__
from .growthfn import (
    GrowthFunction,
    check_increasing,
    classify_convexity,
    load_registry,
    make_growth_function,
    membership,
)
from .holo import (
    BoundParams,
    ChaosPolynomial,
    coeff_bound_check,
    dyadic_scale,
    embedding_check_51,
    embedding_check_52,
    norm_g,
    pointwise_bound_check,
    random_chaos,
    series_chain_check,
)
from .legendre import (
    dual,
    ell,
    ell_profile,
    function_equivalent,
    inverse_legendre,
    l_function,
    l_sharp,
    suite_tags,
    verify_suite,
)
from .numerics import (
    LOG_ZERO,
    NoDecayCertificate,
    NotBracketable,
    PreconditionViolated,
)
from .sequences import (
    CONDITIONS,
    PositiveSequence,
    check_condition,
    from_legendre,
    gen_bell,
    gen_power_factorial,
    seq_equivalent,
)

_KERNEL_ERRORS = (NoDecayCertificate, NotBracketable, PreconditionViolated)

_EXP_CAP = 700.0


class _UsageError(Exception):
    """Input problem attributable to a specific flag; exits with 2."""


class _Result:
    def __init__(self, report: dict, exit_code: int = 0, rows=None):
        self.report = report
        self.exit_code = exit_code
        self.rows = rows or []


# ---------------------------------------------------------------------------
# function construction from flags


def _build_function(args, prefix: str = "") -> GrowthFunction:
    get = lambda name: getattr(args, prefix + name, None)
    registry = getattr(args, "registry", None)
    name = get("name")
    if name is not None:
        if registry is None:
            raise _UsageError(f"--{prefix.replace('_', '-')}name needs --registry")
        try:
            table = load_registry(registry)
        except (OSError, ValueError, KeyError) as exc:
            raise _UsageError(f"--registry: {exc}") from exc
        if name not in table:
            known = ", ".join(sorted(table))
            raise _UsageError(
                f"--{prefix.replace('_', '-')}name: {name!r} not in registry"
                f" (has: {known})"
            )
        return table[name]
    family = get("family")
    if family is None:
        raise _UsageError(f"--{prefix.replace('_', '-')}family is required")
    params = {}
    for key, flag in (("beta", "beta"), ("a", "a"), ("k", "k"), ("p", "power"),
                      ("file", "file")):
        val = get(flag)
        if val is not None:
            params[key] = val
    try:
        return make_growth_function(family, params)
    except (ValueError, OSError) as exc:
        raise _UsageError(f"--{prefix.replace('_', '-')}family: {exc}") from exc


def _add_function_flags(parser, prefix: str = "", required: bool = True):
    dash = prefix.replace("_", "-")
    parser.add_argument(
        f"--{dash}family",
        help="growth-function family: exp, ks, power-exp, expk, gaussian,"
        " bump, log-square, polynomial, series",
    )
    parser.add_argument(f"--{dash}beta", type=float, help="ks family shape")
    parser.add_argument(f"--{dash}a", type=float, help="power-exp exponent scale")
    parser.add_argument(f"--{dash}k", type=int, help="expk iteration count")
    parser.add_argument(f"--{dash}power", type=float, help="polynomial degree")
    parser.add_argument(f"--{dash}file", help="series family: stored sequence file")
    parser.add_argument(
        f"--{dash}name", help="registry entry name (with --registry)"
    )


def _build_sequence(args, prefix: str = "") -> PositiveSequence:
    get = lambda name: getattr(args, prefix + name, None)
    path = get("file")
    if path is not None:
        try:
            return PositiveSequence.load(path)
        except (OSError, ValueError, KeyError) as exc:
            raise _UsageError(f"--{prefix.replace('_', '-')}file: {exc}") from exc
    family = get("family")
    n_max = get("n") if get("n") is not None else 25
    dash = prefix.replace("_", "-")
    try:
        if family == "bell":
            order = get("order") if get("order") is not None else 2
            return gen_bell(order, n_max)
        if family == "power-factorial":
            beta = get("beta") if get("beta") is not None else 0.0
            return gen_power_factorial(beta, n_max)
        if family == "legendre":
            u = _build_function(args, prefix + "fn_" if prefix else "fn_")
            return from_legendre(u, n_max)
    except ValueError as exc:
        raise _UsageError(f"--{dash}family: {exc}") from exc
    raise _UsageError(
        f"--{dash}family must be bell, power-factorial, or legendre"
        f" (got {family!r})"
    )


def _add_sequence_flags(parser, prefix: str = ""):
    dash = prefix.replace("_", "-")
    parser.add_argument(
        f"--{dash}family", help="sequence family: bell, power-factorial, legendre"
    )
    parser.add_argument(f"--{dash}order", type=int, help="bell order k")
    parser.add_argument(f"--{dash}beta", type=float, help="power-factorial exponent")
    parser.add_argument(f"--{dash}n", type=int, help="largest index to generate")
    parser.add_argument(f"--{dash}file", help="load a stored sequence instead")
    _add_function_flags(parser, prefix + "fn_" if prefix else "fn_")


def _seq_report(seq: PositiveSequence) -> dict:
    report = seq.to_json_dict()
    if seq.exact is not None and all(f.denominator == 1 for f in seq.exact):
        report["values"] = [int(f) for f in seq.exact]
    return report


# ---------------------------------------------------------------------------
# subcommand handlers


def _cmd_seq_gen(args) -> _Result:
    seq = _build_sequence(args)
    if args.out:
        seq.save(args.out)
    report = _seq_report(seq)
    rows = [
        {"x": n, "lhs": la, "rhs": "", "slack": ""}
        for n, la in enumerate(report["log_alpha"])
    ]
    return _Result(report, 0, rows)


def _cmd_seq_check(args) -> _Result:
    seq = _build_sequence(args)
    verdict = check_condition(seq, args.condition, search_cap=args.search_cap)
    report = {
        "condition": verdict.condition,
        "status": verdict.status,
        "n_checked": verdict.n_checked,
        "witness": verdict.witness,
        "detail": verdict.detail,
    }
    return _Result(report, 0 if verdict.holds else 1)


def _cmd_seq_equiv(args) -> _Result:
    a = _build_sequence(args, "a_")
    b = _build_sequence(args, "b_")
    res = seq_equivalent(a, b)
    if hasattr(res, "K1"):
        report = {
            "equivalent": True,
            "K1": res.K1,
            "c1": res.c1,
            "K2": res.K2,
            "c2": res.c2,
            "n_checked": res.n_checked,
        }
        return _Result(report, 0)
    report = {
        "equivalent": False,
        "index": res.index,
        "log_ratio": res.log_ratio,
        "drift": res.drift,
        "detail": res.detail,
    }
    return _Result(report, 1)


def _cmd_fn_eval(args) -> _Result:
    u = _build_function(args)
    r = args.r
    if r < 0:
        raise _UsageError("--r must be nonnegative")
    log_u = u.log_at(r)
    report = {
        "name": u.name,
        "family": u.family,
        "r": r,
        "log_u": log_u,
        "u": math.exp(log_u) if log_u < _EXP_CAP else None,
    }
    return _Result(report, 0, [{"x": r, "lhs": log_u, "rhs": "", "slack": ""}])


def _cmd_fn_classify(args) -> _Result:
    u = _build_function(args)
    if args.kind is not None:
        if args.kind == "increasing":
            v = check_increasing(u)
            report = {"name": u.name, "kind": "increasing", "status": v.status,
                      "witness": v.witness}
            code = 0 if v.status == "increasing" else 1
        elif args.kind in ("c-plus-log", "c-plus-j"):
            v = membership(u, args.kind, j=args.j)
            report = {"name": u.name, "kind": args.kind, "status": v.status,
                      "witness": v.witness}
            code = 0 if v.status == "holds-up-to-range" else 1
        else:
            v = classify_convexity(u, args.kind, k=args.xk)
            report = {
                "name": u.name,
                "kind": v.kind,
                "status": v.status,
                "fail_point": v.fail_point,
                "checked_triples": v.checked_triples,
                "margin": v.margin,
            }
            code = 0 if v.passes else 1
        return _Result(report, code)
    inc = check_increasing(u)
    lec = classify_convexity(u, "log-exp-convex")
    lx2 = classify_convexity(u, "log-xk-convex", k=2)
    mem = membership(u, "c-plus-log")
    report = {
        "name": u.name,
        "family": u.family,
        "increasing": inc.status,
        "log_exp_convex": lec.status,
        "log_x2_convex": lx2.status,
        "c_plus_log": mem.status,
        "declared": {
            "increasing": u.increasing,
            "log_exp_convex": u.log_exp_convex,
            "log_x2_convex": u.log_x2_convex,
            "in_c_plus_log": u.in_c_plus_log,
        },
    }
    return _Result(report, 0)


def _cmd_ell(args) -> _Result:
    u = _build_function(args)
    if args.t < 0:
        raise _UsageError("--t must be nonnegative")
    point = ell(u, args.t)
    report = {"log_ell": point.log_ell.log, "rho": point.rho}
    if point.boundary is not None:
        report["boundary"] = point.boundary
    rows = [{"x": args.t, "lhs": report["log_ell"], "rhs": "", "slack": ""}]
    return _Result(report, 0, rows)


def _cmd_dual(args) -> _Result:
    u = _build_function(args)
    if args.r < 0:
        raise _UsageError("--r must be nonnegative")
    value = dual(u, args.r)
    report = {
        "r": args.r,
        "log_dual": value.log,
        "dual": math.exp(value.log) if value.log < _EXP_CAP else None,
    }
    return _Result(report, 0, [{"x": args.r, "lhs": value.log, "rhs": "", "slack": ""}])


def _cmd_lfn(args) -> _Result:
    u = _build_function(args)
    if args.r < 0:
        raise _UsageError("--r must be nonnegative")
    log_r = math.log(args.r) if args.r > 0 else LOG_ZERO
    value = l_function(u, log_r, rel_tol=args.rel_tol)
    report = {"r": args.r, "log_l": value.log}
    return _Result(report, 0, [{"x": args.r, "lhs": value.log, "rhs": "", "slack": ""}])


def _cmd_lsharp(args) -> _Result:
    u = _build_function(args)
    if args.r < 0:
        raise _UsageError("--r must be nonnegative")
    log_r = math.log(args.r) if args.r > 0 else LOG_ZERO
    value = l_sharp(u, log_r, rel_tol=args.rel_tol)
    report = {"r": args.r, "log_lsharp": value.log}
    return _Result(report, 0, [{"x": args.r, "lhs": value.log, "rhs": "", "slack": ""}])


def _cmd_theta(args) -> _Result:
    u = _build_function(args)
    if args.r < 0:
        raise _UsageError("--r must be nonnegative")
    profile = ell_profile(u)
    log_theta = inverse_legendre(profile, args.r).log
    log_u = u.log_at(args.r)
    report = {
        "r": args.r,
        "log_theta": log_theta,
        "log_u": log_u,
        "residual": log_theta - log_u,
    }
    rows = [{"x": args.r, "lhs": log_theta, "rhs": log_u,
             "slack": -abs(log_theta - log_u)}]
    return _Result(report, 0, rows)


def _cmd_equiv(args) -> _Result:
    u = _build_function(args, "a_")
    v = _build_function(args, "b_")
    res = function_equivalent(u, v, (args.r_min, args.r_max), points=args.points)
    if res.ok:
        report = {
            "equivalent": True,
            "c1": res.c1,
            "a1": res.a1,
            "c2": res.c2,
            "a2": res.a2,
            "max_residual": res.max_residual,
        }
        return _Result(report, 0)
    report = {
        "equivalent": False,
        "r": res.r,
        "spread": res.spread,
        "detail": res.detail,
    }
    return _Result(report, 1)


_VERIFY_PARAM_FLAGS = (
    ("nmax", "n_max"),
    ("tmax", "t_max"),
    ("family", "family"),
    ("beta", "beta"),
    ("k", "k"),
    ("a", "a"),
    ("order", "order"),
    ("rmin", "r_min"),
    ("rmax", "r_max"),
    ("points", "points"),
)


def _cmd_verify(args) -> _Result:
    params = {}
    for flag, key in _VERIFY_PARAM_FLAGS:
        val = getattr(args, flag, None)
        if val is not None:
            params[key] = val
    if args.tol is not None:
        params["tol"] = args.tol
    try:
        report = verify_suite(args.suite, params)
    except ValueError as exc:
        raise _UsageError(f"--suite: {exc}") from exc
    return _Result(report.to_json_dict(), 0 if report.passed else 1,
                   list(report.rows))


def _cmd_holo_check(args) -> _Result:
    u = _build_function(args) if args.family or args.name else make_growth_function("exp")
    scale = dyadic_scale(args.dim)
    p, q = args.p, args.q
    if q >= p:
        raise _UsageError("--q must be below --p")
    if args.chaos_file:
        try:
            polys = [(args.chaos_file, ChaosPolynomial.load(args.chaos_file))]
        except (OSError, ValueError, KeyError) as exc:
            raise _UsageError(f"--chaos-file: {exc}") from exc
    else:
        polys = [
            (args.seed + i, random_chaos(args.dim, args.degree, seed=args.seed + i))
            for i in range(args.count)
        ]
    checks = {}
    rows = []
    all_pass = True
    for label, F in polys:
        seed = label if isinstance(label, int) else args.seed
        g = norm_g(F, u, scale, p, seed=seed).lower_bound
        r51 = embedding_check_51(F, u, scale, p, q, seed=seed, g_value=g)
        r52 = embedding_check_52(F, u, scale, max(1, p - 1), seed=seed)
        cb = coeff_bound_check(
            F, u, scale, BoundParams(K=1.05 * g, a=1.0, p=p, q=q)
        )
        pw = pointwise_bound_check(F, u, scale, p, n_samples=args.samples, seed=seed)
        for tag, rep in (
            ("embedding-51", r51),
            ("embedding-52", r52),
        ):
            rows.append({"x": f"{label}/{tag}", "lhs": rep.lhs, "rhs": rep.rhs,
                         "slack": rep.slack})
            entry = checks.setdefault(tag, {"passed": True, "min_slack": math.inf})
            entry["passed"] = entry["passed"] and rep.passed
            entry["min_slack"] = min(entry["min_slack"], rep.slack)
            all_pass = all_pass and rep.passed
        cb_entry = checks.setdefault("coeff-bound", {"passed": True})
        cb_entry["passed"] = cb_entry["passed"] and cb.passed
        pw_entry = checks.setdefault(
            "pointwise", {"passed": True, "worst_slack": -math.inf}
        )
        pw_entry["passed"] = pw_entry["passed"] and pw.passed
        pw_entry["worst_slack"] = max(
            pw_entry["worst_slack"], pw.worst_slack_u, pw.worst_slack_series
        )
        all_pass = all_pass and cb.passed and pw.passed
    chain = series_chain_check(u, scale, max(1, p - 1), seed=args.seed)
    checks["series-chain"] = {
        "passed": chain["passed"],
        "worst_slack": max(chain["worst_slack_shift"], chain["worst_slack_u"]),
    }
    all_pass = all_pass and chain["passed"]
    report = {
        "model": {
            "dim": args.dim,
            "eigenvalues": list(scale.eigenvalues),
            "rho": scale.rho,
            "degree": args.degree,
        },
        "u": u.name,
        "count": len(polys),
        "levels": {"p": p, "q": q},
        "seed": args.seed,
        "samples": args.samples,
        "checks": checks,
        "passed": all_pass,
    }
    return _Result(report, 0 if all_pass else 1, rows)


# ---------------------------------------------------------------------------
# rendering, caching, dispatch


def _render(result: _Result, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(result.report, sort_keys=True) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["x", "lhs", "rhs", "slack"])
        if result.rows:
            for row in result.rows:
                writer.writerow([row["x"], row["lhs"], row["rhs"], row["slack"]])
        else:
            for key in sorted(result.report):
                writer.writerow([key, json.dumps(result.report[key],
                                                 sort_keys=True), "", ""])
        return buf.getvalue()
    lines = []
    for key in sorted(result.report):
        val = result.report[key]
        if isinstance(val, (dict, list)):
            val = json.dumps(val, sort_keys=True)
        lines.append(f"{key}: {val}")
    return "\n".join(lines) + "\n"


def _cache_key(args) -> str:
    payload = {
        k: v
        for k, v in sorted(vars(args).items())
        if k not in ("func", "cache_dir") and v is not None
    }
    payload["version"] = __version__
    blob = json.dumps(payload, sort_keys=True, default=str)
    return hashlib.sha256(blob.encode()).hexdigest()


def _run_with_cache(args) -> tuple[str, int]:
    cache_dir = getattr(args, "cache_dir", None)
    use_cache = cache_dir is not None and not getattr(args, "out", None)
    if use_cache:
        os.makedirs(cache_dir, exist_ok=True)
        path = os.path.join(cache_dir, _cache_key(args) + ".json")
        if os.path.exists(path):
            with open(path) as fh:
                stored = json.load(fh)
            return stored["output"], stored["exit"]
    result = args.func(args)
    output = _render(result, args.format)
    if use_cache:
        with open(path, "w") as fh:
            json.dump({"output": output, "exit": result.exit_code}, fh)
    return output, result.exit_code


def _common(parser):
    parser.add_argument(
        "--format", choices=("json", "csv", "pretty"), default="json",
        help="report rendering (default json)",
    )
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for any randomized search or sampling")
    parser.add_argument(
        "--tol", type=float,
        default=float(os.environ["GROWTHCALC_TOL"])
        if "GROWTHCALC_TOL" in os.environ else None,
        help="tolerance override for verdicts (env GROWTHCALC_TOL)",
    )
    parser.add_argument("--registry", help="function registry file (JSON)")
    parser.add_argument("--cache-dir",
                        help="reuse reports when inputs hash-match")


def _sub(group, name: str, text: str):
    """Subparser whose one-line listing and own help page say the same
    thing: the object the subcommand computes."""
    return group.add_parser(name, help=text, description=text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="growthcalc",
        description="Calculus of growth functions: Legendre-type transforms,"
        " duality, series functions, convexity classification, and"
        " verification suites.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    seq = _sub(sub, "seq", "positive sequences alpha(n)")
    seq_sub = seq.add_subparsers(dest="subcommand", required=True)

    p = _sub(
        seq_sub, "gen",
        "generate a sequence: Bell numbers of order k, n!^beta, or"
        " Legendre transform weights 1/(n! ell_u(n))",
    )
    _add_sequence_flags(p)
    p.add_argument("--out", help="also save to this file")
    _common(p)
    p.set_defaults(func=_cmd_seq_gen)

    p = _sub(seq_sub, "check",
             "test a growth/regularity condition on a sequence")
    p.add_argument("--condition", required=True, choices=CONDITIONS,
                   help="condition name")
    p.add_argument("--search-cap", type=int, help="constant-search budget")
    _add_sequence_flags(p)
    _common(p)
    p.set_defaults(func=_cmd_seq_check)

    p = _sub(seq_sub, "equiv",
             "decide K1 c1^n <= b(n)/a(n) <= K2 c2^n equivalence")
    _add_sequence_flags(p, "a_")
    _add_sequence_flags(p, "b_")
    _common(p)
    p.set_defaults(func=_cmd_seq_equiv)

    fn = _sub(sub, "fn", "growth functions u(r)")
    fn_sub = fn.add_subparsers(dest="subcommand", required=True)

    p = _sub(fn_sub, "eval", "evaluate u(r) in log scale")
    _add_function_flags(p)
    p.add_argument("--r", type=float, required=True)
    _common(p)
    p.set_defaults(func=_cmd_fn_eval)

    p = _sub(
        fn_sub, "classify",
        "convexity/monotonicity panel: increasing, (log,exp)-convex,"
        " (log,x^k)-convex, growth-class membership",
    )
    _add_function_flags(p)
    p.add_argument(
        "--kind",
        choices=("increasing", "log-exp-convex", "log-xk-convex",
                 "c-plus-log", "c-plus-j"),
        help="check one property (exit 1 on failure) instead of the panel",
    )
    p.add_argument("--xk", type=int, default=2,
                   help="k for log-xk-convex")
    p.add_argument("--j", type=float, default=1.0, help="j for c-plus-j")
    _common(p)
    p.set_defaults(func=_cmd_fn_classify)

    p = _sub(
        sub, "ell",
        "Legendre transform ell_u(t) = inf_r u(r)/r^t with its minimizer"
        " rho(t)",
    )
    _add_function_flags(p)
    p.add_argument("--t", type=float, required=True)
    _common(p)
    p.set_defaults(func=_cmd_ell)

    p = _sub(sub, "dual", "dual function u*(r) = sup_s exp(2 sqrt(rs))/u(s)")
    _add_function_flags(p)
    p.add_argument("--r", type=float, required=True)
    _common(p)
    p.set_defaults(func=_cmd_dual)

    p = _sub(sub, "lfn", "L-function L_u(r) = sum_n ell_u(n) r^n")
    _add_function_flags(p)
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--rel-tol", type=float, help="series tail tolerance")
    _common(p)
    p.set_defaults(func=_cmd_lfn)

    p = _sub(sub, "lsharp", "L#-function: sum_n r^n/(ell_u(n) (n!)^2)")
    _add_function_flags(p)
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--rel-tol", type=float, help="series tail tolerance")
    _common(p)
    p.set_defaults(func=_cmd_lsharp)

    p = _sub(
        sub, "theta",
        "inverse transform theta at the transform of u: sup_t ell_u(t) r^t,"
        " which recovers u(r)",
    )
    _add_function_flags(p)
    p.add_argument("--r", type=float, required=True)
    _common(p)
    p.set_defaults(func=_cmd_theta)

    p = _sub(
        sub, "equiv",
        "decide c1 u(a1 r) <= v(r) <= c2 u(a2 r) equivalence of two growth"
        " functions",
    )
    _add_function_flags(p, "a_")
    _add_function_flags(p, "b_")
    p.add_argument("--r-min", type=float, default=0.0)
    p.add_argument("--r-max", type=float, default=10.0)
    p.add_argument("--points", type=int, default=96)
    _common(p)
    p.set_defaults(func=_cmd_equiv)

    p = _sub(
        sub, "verify",
        "named verification suites over inequalities and identities of the"
        " transform calculus",
    )
    p.add_argument("--suite", required=True,
                   help="suite tag: " + ", ".join(suite_tags()))
    p.add_argument("--nmax", type=int, help="largest index")
    p.add_argument("--tmax", type=int, help="largest transform argument")
    p.add_argument("--family", help="growth-function family override")
    p.add_argument("--beta", type=float)
    p.add_argument("--k", type=float)
    p.add_argument("--a", type=float)
    p.add_argument("--order", type=int)
    p.add_argument("--rmin", type=float)
    p.add_argument("--rmax", type=float)
    p.add_argument("--points", type=int)
    _common(p)
    p.set_defaults(func=_cmd_verify)

    holo = _sub(
        sub, "holo",
        "finite-dimensional embedding model for chaos polynomials",
    )
    holo_sub = holo.add_subparsers(dest="subcommand", required=True)
    p = _sub(
        holo_sub, "check",
        "norm-embedding, coefficient-decay, and pointwise growth checks on"
        " seeded random chaos polynomials",
    )
    _add_function_flags(p)
    p.add_argument("--dim", type=int, default=2, help="model dimension")
    p.add_argument("--degree", type=int, default=4, help="chaos truncation")
    p.add_argument("--count", type=int, default=20, help="population size")
    p.add_argument("--p", type=int, default=2, help="upper norm level")
    p.add_argument("--q", type=int, default=0, help="lower norm level")
    p.add_argument("--samples", type=int, default=1000,
                   help="pointwise sample count")
    p.add_argument("--chaos-file", help="check one saved chaos polynomial")
    _common(p)
    p.set_defaults(func=_cmd_holo_check)

    return parser


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "tol", None) is not None and args.tol <= 0:
            raise _UsageError("--tol must be positive")
        output, code = _run_with_cache(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except _KERNEL_ERRORS as exc:
        report = {"error": type(exc).__name__, "detail": str(exc)}
        print(json.dumps(report, sort_keys=True))
        return 1
    sys.stdout.write(output)
    return code


if __name__ == "__main__":
    sys.exit(main())
