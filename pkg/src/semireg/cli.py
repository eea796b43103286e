"""Command-line interface.

Subcommands: construct, quotient, cover, dense, triangle, find, verify,
corpus, report. Exit codes: 0 success (including a definitive
exhausted-none answer), 1 failed verification, 2 usage, 3 parse error,
4 precondition violation, 5 inconclusive (a bound stopped the search).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import __version__
from .engine import (
    EngineConfig,
    InconclusiveError,
    find_semiregular,
    proof_invariant_report,
    verify_certificate,
)
from .families import (
    CorpusConfig,
    corpus_generate,
    k12_m11,
    praeger_xu,
    praeger_xu_group,
    psl2_coset_instance,
)
from .formats import (
    ParseError,
    certificate_to_document,
    document_to_certificate,
    document_to_json,
    format_generators,
    parse_certificate_document,
    parse_generators,
    parse_permutation,
    read_graph_auto,
    write_graph6,
)
from .group import BoundExceededError, PermGroup, PreconditionError

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_PRECONDITION = 4
EXIT_INCONCLUSIVE = 5


def _load_graph(path: str):
    return read_graph_auto(Path(path).read_bytes())


def _load_group(path: str) -> PermGroup:
    return parse_generators(Path(path).read_text())


def _parse_params(text: str) -> dict:
    out = {}
    if not text:
        return out
    for piece in text.split(","):
        if "=" not in piece:
            raise ParseError(f"bad --params entry {piece!r}, expected key=value")
        key, val = piece.split("=", 1)
        out[key.strip()] = int(val.strip())
    return out


def _cmd_construct(args) -> int:
    params = _parse_params(args.params or "")
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    extra: dict = {}
    if args.family == "px":
        p, r, s = params["p"], params["r"], params.get("s", 1)
        graph, rotation = praeger_xu(p, r, s)
        group = praeger_xu_group(p, r, s)
        name = args.id or f"px-p{p}-r{r}-s{s}"
        extra["rotation"] = rotation.cycle_string(one_based=True)
    elif args.family == "lemma33":
        p, s = params["p"], params["s"]
        bundle = psl2_coset_instance(p, s)
        graph, group = bundle.graph, bundle.acting_group
        name = args.id or f"psl2-coset-p{p}-s{s}"
        extra["subgroup_order"] = bundle.subgroup_order
        extra["normalizer_order"] = bundle.normalizer_order
    elif args.family == "k12m11":
        graph, group = k12_m11()
        name = args.id or "k12-m11"
    elif args.family == "coset":
        if not (args.group and args.subgroup and args.element):
            raise PreconditionError(
                "--family coset needs --group, --subgroup and --element"
            )
        from .graphs import coset_graph

        big = _load_group(args.group)
        sub = _load_group(args.subgroup)
        elem = parse_permutation(args.element, big.degree)
        bundle = coset_graph(big, sub, elem)
        graph, group = bundle.graph, bundle.acting_group
        name = args.id or f"coset-n{graph.n}"
        extra["subgroup_order"] = bundle.subgroup_order
        extra["normalizer_order"] = bundle.normalizer_order
        extra["generates"] = bundle.generates
    else:
        raise PreconditionError(f"unknown family {args.family!r}")

    (outdir / f"{name}.g6").write_bytes(write_graph6(graph) + b"\n")
    (outdir / f"{name}.gens").write_text(format_generators(group))
    manifest = {
        "id": name,
        "family": args.family,
        "params": params,
        "n": graph.n,
        "valency": graph.valency(),
        "group_order": str(group.order()),
        "seed": args.seed,
        **extra,
    }
    (outdir / f"{name}.json").write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n"
    )
    print(f"wrote {name}.g6, {name}.gens, {name}.json in {outdir}")
    return EXIT_OK


def _cmd_quotient(args) -> int:
    from .graphs import quotient_graph

    graph = _load_graph(args.graph)
    nsub = _load_group(args.partition_from_group)
    if nsub.degree != graph.n:
        raise PreconditionError("group degree does not match the graph")
    partition = nsub.orbit_partition()
    sys.stdout.buffer.write(write_graph6(quotient_graph(graph, partition)) + b"\n")
    return EXIT_OK


def _cmd_cover(args) -> int:
    from .graphs import standard_double_cover

    graph = _load_graph(args.graph)
    sys.stdout.buffer.write(write_graph6(standard_double_cover(graph)) + b"\n")
    return EXIT_OK


def _cmd_dense(args) -> int:
    from .graphs import density_closure

    graph = _load_graph(args.graph)
    try:
        seed_set = [int(tok) for tok in args.seed_set.replace(",", " ").split()]
    except ValueError:
        raise ParseError(f"bad --seed-set {args.seed_set!r}") from None
    closure, dense = density_closure(graph, seed_set)
    print("dense:", "true" if dense else "false")
    print("closure:", " ".join(str(v) for v in sorted(closure)))
    return EXIT_OK


def _cmd_triangle(args) -> int:
    from .graphs import has_triangle

    graph = _load_graph(args.graph)
    witness = has_triangle(graph)
    if witness is None:
        print("none")
    else:
        print(" ".join(str(v) for v in witness))
    return EXIT_OK


def _cmd_find(args) -> int:
    graph = _load_graph(args.graph)
    group = _load_group(args.group)
    config = EngineConfig(
        routes=tuple(args.routes.split(",")) if args.routes else EngineConfig.routes,
        enum_bound=args.bound,
        seed=args.seed,
        graph_id=args.id or Path(args.graph).stem,
    )
    cert = find_semiregular(graph, group, config)
    ok, _reason = verify_certificate(graph, group, cert, bound=args.bound)
    doc = certificate_to_document(
        cert, graph, group, verified=ok, seed=args.seed
    )
    sys.stdout.write(document_to_json(doc))
    return EXIT_OK


def _cmd_verify(args) -> int:
    graph = _load_graph(args.graph)
    group = _load_group(args.group)
    doc = parse_certificate_document(Path(args.certificate).read_text())
    cert = document_to_certificate(doc)
    ok, reason = verify_certificate(graph, group, cert)
    if ok:
        print("valid")
        return EXIT_OK
    print(f"invalid: {reason}", file=sys.stderr)
    return EXIT_INVALID


def _corpus_worker(payload):
    inst, seed, bound = payload
    config = EngineConfig(seed=seed, enum_bound=bound, graph_id=inst.id)
    cert = find_semiregular(inst.graph, inst.group, config)
    ok, _ = verify_certificate(inst.graph, inst.group, cert, bound=bound)
    doc = certificate_to_document(
        cert, inst.graph, inst.group, verified=ok, seed=seed
    )
    return inst.manifest_row(seed), doc


def _cmd_corpus(args) -> int:
    cfg = CorpusConfig()
    if args.config:
        raw = json.loads(Path(args.config).read_text())
        grid = raw.pop("px_grid", None)
        if grid is not None:
            raw["px_grid"] = {
                int(p): (range(lo, hi + 1), smax)
                for p, (lo, hi, smax) in grid.items()
            }
        if "primes" in raw:
            raw["primes"] = tuple(raw["primes"])
        cfg = CorpusConfig(**raw)
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    instances = corpus_generate(cfg)
    payloads = [(inst, args.seed, args.bound) for inst in instances]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_corpus_worker, payloads))
    else:
        results = [_corpus_worker(p) for p in payloads]
    manifest_path = outdir / "manifest.jsonl"
    with manifest_path.open("w") as fh:
        for row, doc in results:
            fh.write(json.dumps(row, sort_keys=True) + "\n")
            (outdir / f"{row['id']}.cert.json").write_text(document_to_json(doc))
    n_ok = sum(1 for _, doc in results if doc["verified"])
    print(f"{len(results)} instances, {n_ok} verified certificates -> {outdir}")
    return EXIT_OK if n_ok == len(results) else EXIT_INVALID


def _cmd_report(args) -> int:
    graph = _load_graph(args.graph)
    group = _load_group(args.group)
    report = proof_invariant_report(graph, group, seed=args.seed)
    sys.stdout.write(json.dumps(report.as_dict(), indent=2, sort_keys=True) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="semireg",
        description="Find and verify nontrivial semiregular automorphisms "
        "of arc-transitive graphs.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a named family instance")
    p.add_argument("--family", required=True, choices=["px", "coset", "lemma33", "k12m11"])
    p.add_argument("--params", default="", help="comma-separated key=value")
    p.add_argument("--group", help="group generator file (family=coset)")
    p.add_argument("--subgroup", help="subgroup generator file (family=coset)")
    p.add_argument("--element", help="connecting element, cycle notation (family=coset)")
    p.add_argument("--out", default=".")
    p.add_argument("--id", default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("quotient", help="quotient by the orbits of a group")
    p.add_argument("--graph", required=True)
    p.add_argument("--partition-from-group", required=True)
    p.set_defaults(func=_cmd_quotient)

    p = sub.add_parser("cover", help="standard double cover")
    p.add_argument("--graph", required=True)
    p.set_defaults(func=_cmd_cover)

    p = sub.add_parser("dense", help="density closure from a seed set")
    p.add_argument("--graph", required=True)
    p.add_argument("--seed-set", required=True, help="comma-separated vertices")
    p.set_defaults(func=_cmd_dense)

    p = sub.add_parser("triangle", help="triangle witness or 'none'")
    p.add_argument("--graph", required=True)
    p.set_defaults(func=_cmd_triangle)

    p = sub.add_parser("find", help="search for a semiregular automorphism")
    p.add_argument("--graph", required=True)
    p.add_argument("--group", required=True)
    p.add_argument("--routes", default=None, help="comma-separated route names")
    p.add_argument("--bound", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--id", default=None)
    p.set_defaults(func=_cmd_find)

    p = sub.add_parser("verify", help="verify a certificate document")
    p.add_argument("--graph", required=True)
    p.add_argument("--group", required=True)
    p.add_argument("--certificate", required=True)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("corpus", help="generate the corpus and certify it")
    p.add_argument("--config", default=None, help="JSON config file")
    p.add_argument("--out", default="corpus-out")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--bound", type=int, default=100_000)
    p.set_defaults(func=_cmd_corpus)

    p = sub.add_parser("report", help="structural diagnostics for an instance")
    p.add_argument("--graph", required=True)
    p.add_argument("--group", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_report)

    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, stream=sys.stderr)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_USAGE
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (PreconditionError, FileNotFoundError) as exc:
        print(f"precondition error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (BoundExceededError, InconclusiveError) as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE


if __name__ == "__main__":
    sys.exit(main())
