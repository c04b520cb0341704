"""Command-line runner: scenarios, the full claim suite, axiom checks, corpus.

Exit codes: 0 all pass, 1 some scenario failed, 2 invalid input,
3 cap exceeded or otherwise inconclusive.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor

from .rings import RingConstructionError, check_ring_axioms, from_descriptor
from .scenarios import (
    PAPER_SUITE,
    REPORT_VERSION,
    SCENARIOS,
    Caps,
    ScenarioParamError,
    resolve_claim,
    run_corpus_properties,
    run_scenario,
)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INVALID = 2
EXIT_INCONCLUSIVE = 3


def _add_common(p):
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1, help="worker pool size")
    p.add_argument("--max-ring-size", type=int, default=Caps.max_ring_size)
    p.add_argument("--max-steps", type=int, default=Caps.max_steps)


def _caps(args, file_caps=None):
    caps = {
        "max_ring_size": args.max_ring_size,
        "max_steps": args.max_steps,
        "ideal_exhaustive": Caps.ideal_exhaustive,
    }
    for key, value in (file_caps or {}).items():
        if key in ("max_ring_size", "max_steps"):
            caps[key] = int(value)
        elif key in ("search_caps", "ideal_exhaustive"):
            caps["ideal_exhaustive"] = int(value)
        else:
            raise ScenarioParamError(f"unknown cap {key!r}")
    return Caps(**caps)


def _parse_inline_params(extras):
    """Turn leftover '--name value' pairs into a params dict (JSON values)."""
    params = {}
    i = 0
    while i < len(extras):
        tok = extras[i]
        if not tok.startswith("--") or i + 1 >= len(extras):
            raise ScenarioParamError(f"expected --name value pairs, got {extras[i:]!r}")
        raw = extras[i + 1]
        try:
            params[tok[2:].replace("-", "_")] = json.loads(raw)
        except json.JSONDecodeError:
            params[tok[2:].replace("-", "_")] = raw
        i += 2
    return params


def _execute(items, caps, seed, jobs):
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(run_scenario, c, p, caps, seed) for c, p in items]
            return [f.result() for f in futures]  # original order regardless of completion
    return [run_scenario(c, p, caps, seed) for c, p in items]


def _exit_code(reports):
    statuses = {r.status for r in reports}
    if "fail" in statuses:
        return EXIT_FAIL
    if statuses - {"pass"}:
        return EXIT_INCONCLUSIVE
    return EXIT_PASS


def _print_table(reports, out):
    width = max((len(r.claim_id) for r in reports), default=10) + 2
    for r in reports:
        counts = {}
        for c in r.checks:
            counts[c.verdict] = counts.get(c.verdict, 0) + 1
        summary = ", ".join(f"{v} {k}" for k, v in sorted(counts.items()))
        params = json.dumps(r.params, sort_keys=True)
        print(
            f"{r.claim_id:<{width}} {r.status:<13} {r.elapsed_ms:9.1f} ms  {params}  [{summary}]",
            file=out,
        )
        if r.status != "pass":
            for c in r.checks:
                if c.verdict != "pass":
                    print(f"{'':<{width}}   {c.verdict}: {c.name}  {c.detail}", file=out)


def _emit(reports, fmt, out):
    if fmt == "json":
        payload = {
            "version": REPORT_VERSION,
            "reports": [r.to_dict() for r in reports],
            "summary": {
                "total": len(reports),
                "pass": sum(r.status == "pass" for r in reports),
                "fail": sum(r.status == "fail" for r in reports),
            },
        }
        json.dump(payload, out, indent=2)
        out.write("\n")
    else:
        _print_table(reports, out)


def _cmd_run(args, extras):
    if args.file:
        if extras:
            raise ScenarioParamError("inline parameters cannot be combined with --file")
        with open(args.file, encoding="utf-8") as fh:
            spec = json.load(fh)
        if not isinstance(spec, dict) or "scenarios" not in spec:
            raise ScenarioParamError("scenario file needs a 'scenarios' list")
        items = [(s["claim_id"], s.get("params", {})) for s in spec["scenarios"]]
        for claim, _ in items:
            resolve_claim(claim)
        caps = _caps(args, spec.get("caps"))
        seed = int(spec.get("seed", args.seed))
    elif args.claim:
        items = [(args.claim, _parse_inline_params(extras))]
        caps = _caps(args)
        seed = args.seed
    else:
        raise ScenarioParamError("give a claim id or --file")
    reports = _execute(items, caps, seed, args.jobs)
    _emit(reports, args.format, sys.stdout)
    return _exit_code(reports)


def _cmd_paper_suite(args, extras):
    if extras:
        raise ScenarioParamError(f"unexpected arguments {extras!r}")
    fmt = "json" if args.json else args.format
    items = list(PAPER_SUITE)
    if args.only:
        needle = args.only.lower()

        def matches(claim):
            d = SCENARIOS[resolve_claim(claim)]
            hay = [d.claim_id, *d.aliases, *d.tags]
            return any(needle in h.lower() for h in hay)

        items = [(c, p) for c, p in items if matches(c)]
        if not items:
            raise ScenarioParamError(f"--only {args.only!r} matches nothing")
    reports = _execute(items, _caps(args), args.seed, args.jobs)
    if fmt == "table":
        print(f"{'claim':<22} {'status':<13} {'elapsed':>9}     params", file=sys.stdout)
        print("-" * 78, file=sys.stdout)
    _emit(reports, fmt, sys.stdout)
    if fmt == "table":
        total = len(reports)
        passed = sum(r.status == "pass" for r in reports)
        print("-" * 78, file=sys.stdout)
        print(f"{passed}/{total} scenarios passed", file=sys.stdout)
        print("\nclaims:", file=sys.stdout)
        for key in dict.fromkeys(resolve_claim(c) for c, _ in items):
            d = SCENARIOS[key]
            alias = f" (= {', '.join(d.aliases)})" if d.aliases else ""
            print(f"  {key}{alias}: {d.description}", file=sys.stdout)
    return _exit_code(reports)


def _cmd_axioms(args, extras):
    if extras:
        raise ScenarioParamError(f"unexpected arguments {extras!r}")
    try:
        desc = json.loads(args.ring)
    except json.JSONDecodeError as exc:
        raise ScenarioParamError(f"--ring must be a JSON descriptor: {exc}") from exc
    ring = from_descriptor(desc)
    if ring.size > args.max_ring_size:
        print(f"ring {ring.label} exceeds --max-ring-size", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    report = check_ring_axioms(ring, seed=args.seed)
    payload = {
        "version": REPORT_VERSION,
        "ring": ring.label,
        "size": report.size,
        "characteristic": report.characteristic,
        "associative": report.associative,
        "left_distributive": report.left_distributive,
        "right_distributive": report.right_distributive,
        "commutative": report.commutative,
        "unital": report.unital,
        "left_s_unital": report.left_s_unital,
        "right_s_unital": report.right_s_unital,
        "pair_mode": report.pair_mode,
        "triple_mode": report.triple_mode,
        "failures": report.failures,
    }
    if args.format == "json":
        json.dump(payload, sys.stdout, indent=2)
        print()
    else:
        for key, value in payload.items():
            print(f"{key}: {value}")
    return EXIT_PASS if report.ok else EXIT_FAIL


def _cmd_corpus(args, extras):
    if extras:
        raise ScenarioParamError(f"unexpected arguments {extras!r}")
    report = run_corpus_properties(seed=args.seed, budget=args.budget, caps=_caps(args))
    _emit([report], args.format, sys.stdout)
    return _exit_code([report])


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="stepring",
        description="Run step-generation scenarios over tabulated finite rings.",
        allow_abbrev=False,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one scenario (or a scenario file)", allow_abbrev=False)
    p_run.add_argument("claim", nargs="?", help="claim id, e.g. lemma-7.1 or z2-steps")
    p_run.add_argument("--file", help="JSON scenario file")
    _add_common(p_run)

    p_suite = sub.add_parser("paper-suite", help="run the full claim matrix")
    p_suite.add_argument("--only", help="filter by claim id, alias, or tag substring")
    p_suite.add_argument("--json", action="store_true", help="shorthand for --format json")
    _add_common(p_suite)

    p_ax = sub.add_parser("axioms", help="check the ring axioms of a descriptor")
    p_ax.add_argument("--ring", required=True, help='e.g. \'{"kind":"zq_power","q":2,"n":4}\'')
    _add_common(p_ax)

    p_corpus = sub.add_parser("corpus", help="run the randomized property corpus")
    p_corpus.add_argument("--budget", type=int, default=100, help="instances per property")
    _add_common(p_corpus)

    args, extras = parser.parse_known_args(argv)
    handler = {
        "run": _cmd_run,
        "paper-suite": _cmd_paper_suite,
        "axioms": _cmd_axioms,
        "corpus": _cmd_corpus,
    }[args.command]
    try:
        return handler(args, extras)
    except (ScenarioParamError, RingConstructionError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
