"""Command-line entry point.

Two subcommands: ``analyze`` runs every lattice checker on one group's
topology lattice; ``verify`` runs one named verification suite over the
corpus.  All output is deterministic; JSON goes to stdout (and to --json
when given), progress notes go to stderr.

Exit codes: 0 all checks passed, 1 a verification failed (witnesses are in
the JSON), 2 usage error, 3 a resource cap refused the computation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from .config import DEFAULT_CAPS, Caps, caps_from_env
from .corpus import CorpusEntry, default_corpus, load_corpus, parse_group_spec
from .duality import comfort_ross_map
from .errors import InvalidArgumentError, ResourceLimitError, ToplatticeError
from .pontryagin import verify_pontryagin_roundtrip
from .settop import verify_classical_facts
from .topologies import (
    analyze,
    prodanov_lattice,
    topology_lattice,
    topology_lattice_dot,
    verify_cover_transfer,
    verify_meet_basis,
    verify_merzon,
    verify_product_decomposition,
    verify_quotient_meet,
    verify_restriction_join,
    verify_saturation_join,
    verify_semimodular_transfer,
)

SUITES = (
    "merzon",
    "oct11",
    "cover-transfer",
    "meet-basis",
    "semimod-transfer",
    "th0-product",
    "comfort-ross",
    "pontryagin-roundtrip",
    "toplattice-classical",
    "prodanov",
)

_SUITE_MAX_ORDER = {
    "merzon": 16,
    "oct11": 16,
    "cover-transfer": 16,
    "meet-basis": 16,
    "semimod-transfer": 24,
    "comfort-ross": 32,
    "pontryagin-roundtrip": 24,
}

_FIXED_CORPUS = {
    "th0-product": ("Z 3 x Q8", "Z^k 3 2 x D 4", "Z 5 x Q8", "Z 3 x Heis 2"),
    "prodanov": ("Z^k 2 2", "Z^k 3 2", "Z 4", "Z 9", "Z 6"),
}


def _suite_reports_for_entry(suite: str, name: str, spec: str, max_order: int) -> list[dict]:
    caps = DEFAULT_CAPS.with_max_order(max_order)
    g = parse_group_spec(spec, caps=caps)
    if suite == "merzon":
        reps = [verify_merzon(g, caps=caps, label=name)]
    elif suite == "oct11":
        reps = [verify_restriction_join(g, caps=caps, label=name),
                verify_quotient_meet(g, caps=caps, label=name),
                verify_saturation_join(g, caps=caps, label=name)]
    elif suite == "cover-transfer":
        reps = [verify_cover_transfer(g, caps=caps, label=name)]
    elif suite == "meet-basis":
        reps = [verify_meet_basis(g, caps=caps, label=name)]
    elif suite == "semimod-transfer":
        reps = [verify_semimodular_transfer(g, caps=caps, label=name)]
    elif suite == "th0-product":
        reps = [verify_product_decomposition(g, caps=caps, label=name)]
    elif suite == "comfort-ross":
        reps = [comfort_ross_map(g, caps=caps, label=name)]
    elif suite == "pontryagin-roundtrip":
        reps = [verify_pontryagin_roundtrip(g, caps=caps, label=name)]
    elif suite == "prodanov":
        reps = [prodanov_lattice(g, caps=caps, label=name)]
    else:  # pragma: no cover - guarded by argparse choices
        raise InvalidArgumentError(f"unknown suite {suite!r}")
    return [r.to_dict() for r in reps]


def _run_suite(suite: str, entries: list[CorpusEntry], max_order: int,
               workers: int) -> dict:
    abelian_only = suite == "comfort-ross"
    jobs: list[CorpusEntry] = []
    for e in entries:
        g = e.build(caps=DEFAULT_CAPS.with_max_order(512))
        if g.order > max_order:
            continue
        if abelian_only and not g.abelian:
            continue
        jobs.append(e)
    results: list[list[dict]] = []
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_suite_reports_for_entry, suite, e.name, e.spec, max_order)
                       for e in jobs]
            results = [f.result() for f in futures]
    else:
        results = [_suite_reports_for_entry(suite, e.name, e.spec, max_order) for e in jobs]
    reports = [r for group in results for r in group]
    return {
        "suite": suite,
        "max_order": max_order,
        "groups": [e.name for e in jobs],
        "reports": reports,
        "passed": all(r["passed"] for r in reports),
    }


def _emit(payload: dict, json_path: str | None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True)
    print(text)
    if json_path:
        with open(json_path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="toplat",
        description="Exhaustive checks on lattices of group topologies over finite groups.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", help="run every lattice checker on one group")
    pa.add_argument("--group", required=True, help='group spec, e.g. "Z 6", "Q8", "Z 3 x Q8"')
    pa.add_argument("--json", help="also write the JSON report to this path")
    pa.add_argument("--dot", help="write the Hasse diagram of the topology lattice to this path")
    pa.add_argument("--max-order", type=int, help="subgroup enumeration cap override")
    pa.add_argument("--workers", type=int, default=None, help="worker pool size")
    pa.add_argument("--seed-less", action="store_true",
                    help="assert fully deterministic mode (always on; no randomness is used)")

    pv = sub.add_parser("verify", help="run one verification suite over the corpus")
    pv.add_argument("suite", choices=SUITES)
    pv.add_argument("--corpus", help="corpus JSON file (default: built-in corpus)")
    pv.add_argument("--max-order", type=int, help="corpus order cap override")
    pv.add_argument("--n", type=int, default=3, help="point count for toplattice-classical")
    pv.add_argument("--json", help="also write the JSON report to this path")
    pv.add_argument("--workers", type=int, default=None, help="worker pool size")
    pv.add_argument("--seed-less", action="store_true",
                    help="assert fully deterministic mode (always on; no randomness is used)")
    return parser


def _resolve_caps(max_order: int | None) -> Caps:
    caps = caps_from_env(DEFAULT_CAPS)
    if max_order is not None:
        caps = caps.with_max_order(max_order)
    return caps


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    workers = args.workers if args.workers is not None else (os.cpu_count() or 1)
    if workers < 1:
        print("workers must be at least 1", file=sys.stderr)
        return 2

    try:
        if args.command == "analyze":
            caps = _resolve_caps(args.max_order)
            g = parse_group_spec(args.group, caps=caps)
            tl = topology_lattice(g, caps=caps)
            report = analyze(g, caps=caps, label=args.group, prebuilt=tl)
            if args.dot:
                with open(args.dot, "w", encoding="utf-8") as fh:
                    fh.write(topology_lattice_dot(tl))
            _emit(report.to_dict(), args.json)
            return 0 if report.passed else 1

        if args.command == "verify":
            caps = _resolve_caps(args.max_order)
            if args.suite == "toplattice-classical":
                rep = verify_classical_facts(args.n, caps=caps)
                payload = {"suite": args.suite, "reports": [rep.to_dict()],
                           "passed": rep.passed}
                _emit(payload, args.json)
                return 0 if rep.passed else 1
            if args.suite in _FIXED_CORPUS:
                entries = [CorpusEntry(s.replace(" ", ""), s) for s in _FIXED_CORPUS[args.suite]]
                default_order = 128
            else:
                spec = load_corpus(args.corpus) if args.corpus else default_corpus()
                entries = list(spec.entries)
                default_order = (spec.max_order if spec.max_order is not None
                                 else _SUITE_MAX_ORDER.get(args.suite, 24))
            max_order = args.max_order if args.max_order is not None else default_order
            caps.with_max_order(max_order)  # validates against the hard limit
            payload = _run_suite(args.suite, entries, max_order, workers)
            _emit(payload, args.json)
            return 0 if payload["passed"] else 1

    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 3
    except InvalidArgumentError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except ToplatticeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 2  # pragma: no cover - unreachable


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
