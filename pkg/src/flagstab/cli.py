"""Command-line front end.

Exit codes: 0 computed, 1 an internal identity failed (a bug), 2 bad input.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from importlib import resources
from pathlib import Path
from typing import Callable

from .chern import ch_schur_giambelli, ch_schur_roots, conjecture_check, extract_G, resolve_a2_variant
from .combinat import appendix_f, appendix_g, appendix_general, f_closed, g_closed
from .errors import ConfigurationError, DomainError, FlagstabError, IdentityViolation
from .futaki import TestConfig, futaki_curve, futaki_twisted, weight_check
from .geometry import CurveModel, parse_model
from .partitions import Partition, enumerate_partitions, lr_coefficients, lr_decompose, partitions_of, schur_rank

TASKS = ("conjecture", "futaki-curve", "futaki-twisted", "schur-ch", "lr", "appendix", "weight-check")


class UsageError(FlagstabError):
    pass


def load_schema(name: str) -> dict:
    """Shipped JSON schema by stem, e.g. ``"df_report"``."""
    return json.loads(resources.files("flagstab").joinpath("schemas", f"{name}.schema.json").read_text())


def parse_range(text: str) -> range:
    """``"3..5"`` -> range(3, 6); ``"4"`` -> range(4, 5)."""
    lo, sep, hi = str(text).partition("..")
    try:
        a = int(lo)
        b = int(hi) if sep else a
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed range {text!r}") from None
    if a > b:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return range(a, b + 1)


def _partition_arg(text: str) -> Partition:
    try:
        return Partition.parse(text)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _load_json(source: str):
    text = source if source.lstrip().startswith("{") else Path(source).read_text()
    return json.loads(text)


def _range_param(params: dict, key: str, default: str) -> range:
    value = params.get(key, default)
    if isinstance(value, list) and len(value) == 2 and all(isinstance(x, int) for x in value):
        value = f"{value[0]}..{value[1]}"
    try:
        return parse_range(value)
    except argparse.ArgumentTypeError as exc:
        raise ConfigurationError(str(exc)) from None


# case runners (top level so they pickle) ---------------------------------------


def _run_conjecture(case: dict) -> dict:
    lam, e = Partition(case["lambda"]), case["rank"]
    if len(lam) > e:
        return {"key": [e, list(lam)], "status": "skipped",
                "report": {"lambda": list(lam), "rank": e, "skipped": "Schur power vanishes"}}
    rec = conjecture_check(lam, e)
    status = "pass" if rec.passed else ("fail" if len(lam) <= 3 else "finding")
    return {"key": [e, list(lam)], "status": status, "report": rec.to_json()}


def _run_futaki(case: dict) -> dict:
    model = parse_model(case["model"])
    cfg = _config_from(case)
    if case.get("twisted") or not isinstance(model, CurveModel):
        rep = futaki_twisted(model, cfg, case.get("alphas", (1, 2, 3)))
    else:
        rep = futaki_curve(model, cfg, case.get("alphas", (1, 2, 3)))
    return {"key": case["key"], "status": rep.verdict, "report": rep.to_json()}


def _config_from(case: dict) -> TestConfig:
    alpha = int(case.get("alpha", 1))
    if case.get("lambda") is not None:
        return TestConfig(Partition(case["lambda"]), alpha)
    return TestConfig.from_flag(case["flag"], case.get("nu"), alpha)


def _run_schur(case: dict) -> dict:
    lam, e, d = Partition(case["lambda"]), case["rank"], case.get("degree", 2)
    gi = ch_schur_giambelli(lam, e, d)
    ro = ch_schur_roots(lam, e, d)
    report = {"lambda": list(lam), "rank": e, "degree": d, "schur_rank": schur_rank(lam, e),
              "giambelli": str(gi), "roots": str(ro), "match": gi.poly == ro.poly}
    if report["schur_rank"] and e >= 2:
        g1, g2 = extract_G(lam, e)
        report.update(G1=str(g1), G2=str(g2))
    return {"key": [e, list(lam)], "status": "pass" if report["match"] else "fail", "report": report}


def _run_lr(case: dict) -> dict:
    lam, f, g = Partition(case["lambda"]), case["f_rank"], case["g_rank"]
    terms = lr_decompose(lam, f, g)
    lhs = schur_rank(lam, f + g)
    rhs = sum(n * schur_rank(nu, f) * schur_rank(mu, g) for nu, mu, n in terms)
    report = {"lambda": list(lam), "f_rank": f, "g_rank": g,
              "terms": [{"nu": list(nu), "mu": list(mu), "N": n} for nu, mu, n in terms],
              "rank": lhs, "rank_from_terms": rhs, "match": lhs == rhs}
    return {"key": [f, g, list(lam)], "status": "pass" if lhs == rhs else "fail", "report": report}


def _run_appendix(case: dict) -> dict:
    """One grid point: both identities plus both Pascal recurrences."""
    k, n = case["k"], case["n"]
    f, g = appendix_f(k, n), appendix_g(k, n)
    report = {"k": k, "n": n, "f_brute": f.brute, "f_closed": f.closed, "f_match": f.match,
              "g_brute": g.brute, "g_closed": g.closed, "g_match": g.match}
    ok = f.match and g.match
    if k >= 2:
        pascal = (f_closed(k, n) == f_closed(k - 1, n) + f_closed(k, n - 1)
                  and g_closed(k, n) == g_closed(k - 1, n) + g_closed(k, n - 1))
        report["pascal"] = pascal
        ok = ok and pascal
    return {"key": [k, n], "status": "pass" if ok else "fail", "report": report}


def _run_weight(case: dict) -> dict:
    model = parse_model(case["model"])
    if not isinstance(model, CurveModel):
        raise ConfigurationError("weight checks need a curve model")
    wc = weight_check(model, Partition(case["lambda"]), case["alpha"], case["beta"])
    return {"key": case["key"], "status": "pass" if wc.match else "fail", "report": wc.to_json()}


RUNNERS: dict[str, Callable[[dict], dict]] = {
    "conjecture": _run_conjecture,
    "futaki-curve": _run_futaki,
    "futaki-twisted": _run_futaki,
    "schur-ch": _run_schur,
    "lr": _run_lr,
    "appendix": _run_appendix,
    "weight-check": _run_weight,
}


def _dispatch(args: tuple[str, dict]) -> dict:
    task, case = args
    try:
        return RUNNERS[task](case)
    except (DomainError, ConfigurationError) as exc:
        key = case.get("key") or [case.get(k) for k in ("rank", "f_rank", "k", "n", "lambda") if k in case]
        return {"key": key, "status": "invalid", "report": {"error": str(exc)}}


# sweep construction -------------------------------------------------------------


def build_cases(task: str, params: dict) -> list[dict]:
    if task == "conjecture":
        ranks = _range_param(params, "rank", "2..8")
        lengths = _range_param(params, "length", "1..3")
        parts = int(params.get("parts", 6))
        return [{"lambda": list(lam), "rank": e} for e in ranks
                for lam in enumerate_partitions(max(lengths), parts) if lam and len(lam) in lengths]
    if task in ("futaki-curve", "futaki-twisted"):
        cases = []
        models = params.get("models", [])
        shapes = [{"flag": f} for f in params.get("flags", [])] + [{"lambda": l} for l in params.get("lambdas", [])]
        for mi, model in enumerate(models):
            for si, shape in enumerate(shapes):
                case = {"key": [mi, si], "model": model, "alpha": params.get("alpha", 1),
                        "twisted": task == "futaki-twisted", **shape}
                if "nu" in params and "flag" in shape:
                    case["nu"] = params["nu"]
                cases.append(case)
        return cases
    if task == "schur-ch":
        ranks = _range_param(params, "rank", "1..4")
        size = int(params.get("size", 4))
        return [{"lambda": list(lam), "rank": e, "degree": int(params.get("degree", 2))}
                for e in ranks for n in range(size + 1) for lam in partitions_of(n)]
    if task == "lr":
        size = int(params.get("size", 4))
        f, g = int(params.get("f_rank", 2)), int(params.get("g_rank", 2))
        return [{"lambda": list(lam), "f_rank": f, "g_rank": g} for n in range(size + 1) for lam in partitions_of(n)]
    if task == "appendix":
        ks = _range_param(params, "k", "2..40")
        ns = _range_param(params, "n", "2..40")
        return [{"k": k, "n": n} for k in ks for n in ns]
    if task == "weight-check":
        size = int(params.get("size", 4))
        cases = []
        for mi, model in enumerate(params.get("models", [])):
            for n in range(size + 1):
                for lam in partitions_of(n):
                    cases.append({"key": [mi, list(lam)], "model": model, "lambda": list(lam),
                                  "alpha": int(params.get("alpha", 1)), "beta": int(params.get("beta", 0))})
        return cases
    raise ConfigurationError(f"unknown task {task!r}; expected one of {', '.join(TASKS)}")


def run_cases(task: str, cases: list[dict], jobs: int = 1) -> list[dict]:
    work = [(task, c) for c in cases]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_dispatch, work, chunksize=max(1, len(work) // (4 * jobs))))
    else:
        results = [_dispatch(w) for w in work]
    return sorted(results, key=lambda r: json.dumps(r["key"]))


def summarize(task: str, results: list[dict]) -> tuple[dict, str]:
    counts: dict[str, int] = {}
    for r in results:
        counts[r["status"]] = counts.get(r["status"], 0) + 1
    summary = {"task": task, "cases": len(results), "counts": dict(sorted(counts.items()))}
    if not results:
        return summary, "0 cases"
    if task == "appendix":
        total = len(results)
        failed = sum(r["status"] == "fail" for r in results)
        line = f"all {total} identities match" if not failed else f"{failed} of {total} identities fail"
        return summary, line
    parts = ", ".join(f"{v} {k}" for k, v in summary["counts"].items())
    return summary, f"{len(results)} cases: {parts}"


def _exit_code(task: str, results: list[dict]) -> int:
    return 1 if any(r["status"] == "fail" for r in results) else 0


# output --------------------------------------------------------------------------


def _flatten(report: dict) -> dict:
    return {k: (json.dumps(v, separators=(",", ":")) if isinstance(v, (list, dict)) else v) for k, v in report.items()}


def render_output(payload, fmt: str, rows: list[dict] | None = None) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2) + "\n"
    rows = rows if rows is not None else [payload]
    fields: list[str] = []
    flat = [_flatten(r) for r in rows]
    for r in flat:
        for k in r:
            if k not in fields:
                fields.append(k)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    writer.writerows(flat)
    return buf.getvalue()


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _sweep_output(task: str, results: list[dict], fmt: str, out: str | None) -> int:
    summary, line = summarize(task, results)
    summary["line"] = line
    payload = {"task": task, "a2_variant": resolve_a2_variant(),
               "cases": [{"key": r["key"], "status": r["status"], "report": r["report"]} for r in results],
               "summary": summary}
    rows = [dict(status=r["status"], **r["report"]) for r in results]
    _emit(render_output(payload, fmt, rows), out)
    print(line, file=sys.stderr)
    return _exit_code(task, results)


# subcommands ---------------------------------------------------------------------


def cmd_conjecture(args) -> int:
    params = {"rank": f"{args.rank.start}..{args.rank.stop - 1}",
              "length": f"{args.length.start}..{args.length.stop - 1}", "parts": args.parts}
    cases = build_cases("conjecture", params)
    return _sweep_output("conjecture", run_cases("conjecture", cases, args.jobs), args.format, args.out)


def cmd_futaki(args) -> int:
    model = parse_model(_load_json(args.model))
    if args.flag is not None:
        nu = list(args.nu) if args.nu is not None else None
        cfg = TestConfig.from_flag(args.flag, nu, args.alpha)
    elif args.lam is not None:
        cfg = TestConfig(args.lam, args.alpha)
    else:
        raise UsageError("one of --flag or --lambda is required")
    if args.twisted or not isinstance(model, CurveModel):
        report = futaki_twisted(model, cfg)
    else:
        report = futaki_curve(model, cfg)
    _emit(render_output(report.to_json(), args.format), args.out)
    return 0


def cmd_schur_ch(args) -> int:
    res = _run_schur({"lambda": list(args.lam), "rank": args.rank, "degree": args.degree})
    _emit(render_output(res["report"], args.format), args.out)
    return 0 if res["status"] == "pass" else 1


def cmd_lr(args) -> int:
    if args.nu is not None and args.mu is not None:
        report = {"nu": list(args.nu), "mu": list(args.mu), "lambda": list(args.lam),
                  "N": lr_coefficients(args.nu, args.mu, args.lam)}
        _emit(render_output(report, args.format), args.out)
        return 0
    if args.ranks is None:
        raise UsageError("give either --nu and --mu, or --ranks F,G")
    f, g = args.ranks
    res = _run_lr({"lambda": list(args.lam), "f_rank": f, "g_rank": g})
    _emit(render_output(res["report"], args.format), args.out)
    return 0 if res["status"] == "pass" else 1


def cmd_appendix(args) -> int:
    fmt = args.format or "csv"
    if args.J is not None:
        rows = [{"k": k, "n": n, "J": list(args.J), "value": appendix_general(k, n, args.J)}
                for k in args.k for n in args.n]
        _emit(render_output({"rows": rows}, fmt, rows), args.out)
        return 0
    rows, failed = [], 0
    for k in args.k:
        for n in args.n:
            checks = [("f", appendix_f(k, n))] + ([("g", appendix_g(k, n))] if n >= 3 else [])
            for name, c in checks:
                rows.append({"identity": name, "k": k, "n": n, "brute": c.brute, "closed": c.closed, "match": c.match})
                failed += not c.match
    line = f"all {len(rows)} identities match" if not failed else f"{failed} of {len(rows)} identities fail"
    _emit(render_output({"rows": rows, "summary": line}, fmt, rows), args.out)
    print(line, file=sys.stderr)
    return 1 if failed else 0


def cmd_weight_check(args) -> int:
    model = parse_model(_load_json(args.model))
    if not isinstance(model, CurveModel):
        raise ConfigurationError("weight checks need a curve model")
    wc = weight_check(model, args.lam, args.alpha, args.beta)
    _emit(render_output(wc.to_json(), args.format), args.out)
    return 0 if wc.match else 1


def cmd_batch(args) -> int:
    try:
        config = _load_json(args.config)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigurationError(f"cannot read config: {exc}") from None
    if not isinstance(config, dict) or "task" not in config:
        raise ConfigurationError("config must be a JSON object with a 'task' field")
    task = config["task"]
    if task not in TASKS:
        raise ConfigurationError(f"unknown task {task!r}")
    fmt = args.format or config.get("format", "json")
    if fmt not in ("json", "csv"):
        raise ConfigurationError(f"unknown format {fmt!r}")
    out = args.out or config.get("output")
    jobs = args.jobs if args.jobs_given else int(config.get("jobs", args.jobs))
    cases = build_cases(task, config.get("params", {}))
    return _sweep_output(task, run_cases(task, cases, jobs), fmt, out)


# parser ------------------------------------------------------------------------------


def _default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("FLAGSTAB_JOBS", "1")))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default=None)
    common.add_argument("--out", metavar="PATH")
    common.add_argument("--jobs", type=int, default=None, metavar="N")

    parser = argparse.ArgumentParser(prog="flagstab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("conjecture", parents=[common], help="verify the G1/G2 formulas over a grid")
    p.add_argument("--rank", type=parse_range, default=parse_range("2..8"))
    p.add_argument("--length", type=parse_range, default=parse_range("1..3"))
    p.add_argument("--parts", type=int, default=6)
    p.set_defaults(func=cmd_conjecture)

    p = sub.add_parser("futaki", parents=[common], help="Donaldson-Futaki invariant for one model")
    p.add_argument("--model", required=True, help="JSON file or inline JSON object")
    p.add_argument("--flag", type=_partition_arg)
    p.add_argument("--nu", type=_partition_arg)
    p.add_argument("--lambda", dest="lam", type=_partition_arg)
    p.add_argument("--alpha", type=int, default=1)
    p.add_argument("--twisted", action="store_true")
    p.set_defaults(func=cmd_futaki)

    p = sub.add_parser("schur-ch", parents=[common], help="Chern character of a Schur power, both methods")
    p.add_argument("--lambda", dest="lam", type=_partition_arg, required=True)
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--degree", type=int, default=2)
    p.set_defaults(func=cmd_schur_ch)

    p = sub.add_parser("lr", parents=[common], help="Littlewood-Richardson coefficients")
    p.add_argument("--lambda", dest="lam", type=_partition_arg, required=True)
    p.add_argument("--nu", type=_partition_arg)
    p.add_argument("--mu", type=_partition_arg)
    p.add_argument("--ranks", type=lambda s: tuple(int(x) for x in s.split(",")))
    p.set_defaults(func=cmd_lr)

    p = sub.add_parser("appendix", parents=[common], help="binomial-sum identities as a table")
    p.add_argument("--k", type=parse_range, default=parse_range("1..40"))
    p.add_argument("--n", type=parse_range, default=parse_range("2..40"))
    p.add_argument("--J", type=lambda s: tuple(int(x) for x in s.split(",")))
    p.set_defaults(func=cmd_appendix)

    p = sub.add_parser("weight-check", parents=[common], help="total-weight identity for one split bundle")
    p.add_argument("--model", required=True)
    p.add_argument("--lambda", dest="lam", type=_partition_arg, required=True)
    p.add_argument("--alpha", type=int, default=1)
    p.add_argument("--beta", type=int, default=0)
    p.set_defaults(func=cmd_weight_check)

    p = sub.add_parser("batch", parents=[common], help="run a sweep described by a JSON config")
    p.add_argument("config")
    p.set_defaults(func=cmd_batch)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.jobs_given = args.jobs is not None
    if args.jobs is None:
        args.jobs = _default_jobs()
    if args.func is not cmd_appendix and args.format is None and args.func is not cmd_batch:
        args.format = "json"
    try:
        return args.func(args)
    except IdentityViolation as exc:
        print(f"flagstab: internal identity violated: {exc}", file=sys.stderr)
        return 1
    except (FlagstabError, ValueError, KeyError, TypeError, OSError, json.JSONDecodeError) as exc:
        print(f"flagstab: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
