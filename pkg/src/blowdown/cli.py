"""Command line front end.

Every subcommand can emit either human-readable text or a deterministic
JSON envelope (``--json``) carrying the tool version and a sha256 digest of
the input, so runs are reproducible and diffable.  Exit codes: 0 for
success (including verification that only finds recorded errata), 1 for a
mathematical failure (a verification check fails, a chain does not
contract), 2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from math import gcd
from typing import Sequence, Union

from . import __version__
from .contraction import (
    ChainEmbedding,
    ContractionError,
    chain_discrepancies,
    nef_values,
    pullback_canonical,
    validate_embedding,
)
from .constructions import (
    available_constructions,
    build_model,
    load_construction,
    pullback_expansion,
    verify,
)
from .lattice import ExpectationError
from .tchains import (
    classify_chain,
    general_params,
    generate_class_t,
    hj_expand,
    wahl_params,
)
from .topology import (
    blowdown_invariants,
    load_graph,
    meridian_powers,
    pi1_closure,
    rationality_exclusion,
)

__all__ = ["main"]


def _digest_args(payload) -> str:
    canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def _emit_json(command: str, input_sha256: Union[str, None], result) -> None:
    envelope = {
        "tool": "blowdown",
        "version": __version__,
        "command": command,
        "input_sha256": input_sha256,
        "result": result,
    }
    print(json.dumps(envelope, sort_keys=True, indent=2, default=str))


def _resolve_source(args) -> Union[str, None]:
    """Pick the dataset source from the positional name or ``--dataset``.

    Prints a usage error and returns ``None`` when the two conflict or when
    neither is present.
    """
    dataset = getattr(args, "dataset", None)
    positional = getattr(args, "construction", None)
    if dataset and positional:
        print(
            "error: give either a construction name or --dataset, not both",
            file=sys.stderr,
        )
        return None
    source = dataset or positional
    if not source:
        print(
            "error: name a construction or pass --dataset <path>",
            file=sys.stderr,
        )
        return None
    return source


def _cmd_cpq(args) -> int:
    p, q = args.p, args.q
    if not 0 < q < p or gcd(p, q) != 1:
        print(
            f"error: need coprime integers 0 < q < p, got p={p}, q={q}",
            file=sys.stderr,
        )
        return 2
    try:
        chain = hj_expand(p * p, p * q - 1)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    ds = chain_discrepancies(chain)
    powers = meridian_powers(chain)
    if args.json:
        _emit_json(
            "cpq",
            _digest_args({"p": p, "q": q}),
            {
                "p": p,
                "q": q,
                "chain": list(chain),
                "length": len(chain),
                "determinant": p * p,
                "discrepancies": [str(d) for d in ds],
                "meridian_powers": list(powers),
            },
        )
        return 0
    print(f"C({p},{q}): " + " ".join(str(b) for b in chain))
    print(
        f"continued fraction {p * p}/{p * q - 1}, length {len(chain)}, "
        f"lens order {p * p}"
    )
    print("discrepancies: " + ", ".join(str(d) for d in ds))
    print("meridian powers: " + ", ".join(str(w) for w in powers))
    return 0


def _chain_record(chain: tuple[int, ...]) -> dict:
    d, n, a = general_params(chain)
    record: dict = {
        "chain": list(chain),
        "d": d,
        "n": n,
        "a": a,
    }
    if d == 1:
        p, q = wahl_params(chain)
        record["p"] = p
        record["q"] = q
    return record


def _cmd_tchain_gen(args) -> int:
    if args.max_len < 1:
        print("error: --max-len must be at least 1", file=sys.stderr)
        return 2
    chains = generate_class_t(args.max_len)
    records = [_chain_record(chain) for chain in chains]
    if args.json:
        _emit_json(
            "tchain gen",
            _digest_args({"max_len": args.max_len}),
            {"max_len": args.max_len, "count": len(records), "chains": records},
        )
        return 0
    for record in records:
        tail = f"d={record['d']} n={record['n']} a={record['a']}"
        if "p" in record:
            tail += f" (Wahl p={record['p']} q={record['q']})"
        print(f"{record['chain']}  {tail}")
    print(f"{len(records)} chains of length <= {args.max_len}")
    return 0


def _cmd_tchain_check(args) -> int:
    try:
        result = classify_chain(tuple(args.entries))
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    payload: dict = {
        "chain": list(result.chain),
        "kind": result.kind,
        "class_t": result.is_class_t,
    }
    if result.is_class_t:
        payload["base"] = list(result.base or ())
        payload["moves"] = list(result.moves)
        payload.update(
            {k: v for k, v in _chain_record(result.chain).items() if k != "chain"}
        )
    if args.json:
        _emit_json("tchain check", _digest_args({"entries": args.entries}), payload)
        return 0
    if result.is_class_t:
        print(f"{list(result.chain)}: class T ({result.kind})")
        print(f"base {list(result.base or ())}, moves {list(result.moves)}")
        d, n, a = payload["d"], payload["n"], payload["a"]
        line = f"d={d} n={n} a={a}"
        if "p" in payload:
            line += f" (Wahl p={payload['p']} q={payload['q']})"
        print(line)
    else:
        print(f"{list(result.chain)}: {result.kind}")
    return 0


def _cmd_contract(args) -> int:
    source = _resolve_source(args)
    if source is None:
        return 2
    try:
        construction = load_construction(source)
    except (FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    model = build_model(construction)
    try:
        chains = []
        for emb in construction.chains:
            bs = validate_embedding(model, emb)
            ds = chain_discrepancies(bs)
            chains.append((emb, bs, ds))
        pullback = pullback_canonical(model, construction.chains)
        nef = nef_values(
            model, construction.chains, construction.nef_test_curves
        )
    except ContractionError as exc:
        print(f"contraction fails: {exc}", file=sys.stderr)
        return 1
    k2 = pullback.dot(pullback)
    k2_res = model.canonical_self_intersection()
    expansion: Union[dict, None]
    try:
        expansion = {
            name: value
            for name, value in pullback_expansion(construction, model).items()
            if value
        }
    except (ValueError, ContractionError):
        expansion = None
    if args.json or args.report == "json":
        result = {
            "construction": construction.name,
            "chains": [
                {
                    "label": emb.label,
                    "p": emb.p,
                    "q": emb.q,
                    "curves": list(emb.curves),
                    "shape": list(bs),
                    "discrepancies": [str(d) for d in ds],
                }
                for emb, bs, ds in chains
            ],
            "k_squared_resolution": str(k2_res),
            "k_squared": str(k2),
            "expansion": (
                {name: str(v) for name, v in sorted(expansion.items())}
                if expansion is not None
                else None
            ),
            "nef_values": {name: str(value) for name, value in nef},
        }
        _emit_json("contract", construction.sha256, result)
        return 0
    print(f"{construction.name}: {len(chains)} chains contract")
    for emb, bs, ds in chains:
        print(f"  {emb.label}: {list(bs)} on {list(emb.curves)}")
        print("    discrepancies: " + ", ".join(str(d) for d in ds))
    print(f"K^2: {k2_res} -> {k2}")
    if expansion is not None:
        print("pullback canonical class over curve classes:")
        for name, value in sorted(expansion.items()):
            print(f"  {value} {name}")
    if nef:
        print("nef pairings:")
        for name, value in nef:
            print(f"  pullback . {name} = {value}")
    return 0


def _cmd_invariants(args) -> int:
    source = _resolve_source(args)
    if source is None:
        return 2
    try:
        construction = load_construction(source)
    except (FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    model = build_model(construction)
    try:
        summary = blowdown_invariants(
            model,
            construction.chains,
            graph=construction.graph,
            parity_override=construction.parity_override,
        )
    except (ContractionError, ValueError) as exc:
        print(f"invariants unavailable: {exc}", file=sys.stderr)
        return 1
    excluded, plurigenus = rationality_exclusion(summary.k_squared, summary.chi)
    if args.json:
        _emit_json(
            "invariants",
            construction.sha256,
            {
                "construction": construction.name,
                "k_squared": str(summary.k_squared),
                "euler": summary.euler,
                "signature": summary.signature,
                "b2_plus": summary.b2_plus,
                "b2_minus": summary.b2_minus,
                "chi": summary.chi,
                "noether_ok": summary.noether_ok,
                "parity": summary.parity,
                "parity_reason": summary.parity_reason,
                "pi1_trivial": summary.pi1_trivial,
                "fingerprint": summary.fingerprint,
                "second_plurigenus": str(plurigenus),
                "rational": not excluded,
            },
        )
        return 0
    print(f"{construction.name}:")
    print(f"  K^2 = {summary.k_squared}, e = {summary.euler}, "
          f"signature = {summary.signature}")
    print(f"  b2+ = {summary.b2_plus}, b2- = {summary.b2_minus}, "
          f"chi = {summary.chi}")
    print(f"  Noether: {'holds' if summary.noether_ok else 'FAILS'}")
    print(f"  parity: {summary.parity} ({summary.parity_reason})")
    if summary.pi1_trivial is not None:
        print(f"  pi1 trivial: {summary.pi1_trivial}")
    if summary.fingerprint:
        print(f"  homeomorphism type: {summary.fingerprint}")
    print(f"  second plurigenus chi + K^2 = {plurigenus}"
          + (" (not rational)" if excluded else ""))
    return 0


def _cmd_pi1(args) -> int:
    if args.dataset and args.graph:
        print(
            "error: give either a graph source or --dataset, not both",
            file=sys.stderr,
        )
        return 2
    source = args.dataset or args.graph
    if not source:
        print(
            "error: name a graph file, a construction, or pass --dataset <path>",
            file=sys.stderr,
        )
        return 2
    graph = None
    digest: Union[str, None] = None
    try:
        if source.endswith(".json"):
            with open(source, "rb") as handle:
                raw = handle.read()
            digest = hashlib.sha256(raw).hexdigest()
            data = json.loads(raw.decode("utf-8"))
            if "nodes" in data:
                from .topology import parse_graph

                graph = parse_graph(data)
            else:
                from .constructions import parse_construction

                construction = parse_construction(
                    data, source_path=source, sha256=digest
                )
                graph = construction.graph
        else:
            construction = load_construction(source)
            digest = construction.sha256
            graph = construction.graph
    except (FileNotFoundError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if graph is None:
        print("error: no connection graph in this dataset", file=sys.stderr)
        return 2
    result = pi1_closure(graph)
    if args.json:
        _emit_json(
            "pi1",
            digest,
            {
                "trivial": result.trivial,
                "orders": {name: order for name, order in result.orders},
                "steps": [step.describe() for step in result.steps],
                "reconstructed": graph.reconstructed,
            },
        )
        return 0
    for line in result.describe():
        print(line)
    return 0


def _cmd_verify(args) -> int:
    source = _resolve_source(args)
    if source is None:
        return 2
    try:
        construction = load_construction(source)
    except (FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report = verify(construction)
    if args.json:
        _emit_json("verify", construction.sha256, report.as_dict())
        return 0 if report.ok else 1
    print(f"verify {construction.name} (sha256 {construction.sha256[:12]})")
    for check in report.checks:
        tag = {"pass": "PASS", "erratum": "ERRATUM", "fail": "FAIL"}[check.status]
        print(f"[{tag}] {check.name}")
        for line in check.details:
            print(f"    {line}")
    if report.ok and report.errata_found:
        print("result: OK (recorded errata confirmed)")
    elif report.ok:
        print("result: OK")
    else:
        print("result: FAIL")
    return 0 if report.ok else 1


def _cmd_list(args) -> int:
    names = available_constructions()
    entries = []
    for name in names:
        try:
            construction = load_construction(name)
            entries.append((name, construction.title))
        except (FileNotFoundError, ValueError):
            entries.append((name, "(unreadable)"))
    if args.json:
        _emit_json(
            "list",
            None,
            {"constructions": [{"name": n, "title": t} for n, t in entries]},
        )
        return 0
    if not entries:
        print("no constructions found")
        return 0
    for name, title in entries:
        print(f"{name}: {title}" if title else name)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="blowdown",
        description="Exact bookkeeping for rational blow-down constructions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    cpq = sub.add_parser(
        "cpq", help="chain, discrepancies and meridian data for C(p,q)"
    )
    cpq.add_argument("p", type=int)
    cpq.add_argument("q", type=int)
    cpq.add_argument("--json", action="store_true")
    cpq.set_defaults(handler=_cmd_cpq)

    tchain = sub.add_parser("tchain", help="class T chain utilities")
    tchain_sub = tchain.add_subparsers(dest="tchain_command", required=True)
    gen = tchain_sub.add_parser("gen", help="generate all chains up to a length")
    gen.add_argument("--max-len", type=int, required=True)
    gen.add_argument("--json", action="store_true")
    gen.set_defaults(handler=_cmd_tchain_gen)
    check = tchain_sub.add_parser("check", help="classify one chain")
    check.add_argument("entries", type=int, nargs="+")
    check.add_argument("--json", action="store_true")
    check.set_defaults(handler=_cmd_tchain_check)

    contract = sub.add_parser(
        "contract", help="contract the chains of a construction"
    )
    contract.add_argument("construction", nargs="?")
    contract.add_argument("--dataset", help="path to a construction JSON file")
    contract.add_argument(
        "--report", choices=("text", "json"), default="text"
    )
    contract.add_argument("--json", action="store_true")
    contract.set_defaults(handler=_cmd_contract)

    invariants = sub.add_parser(
        "invariants", help="invariants of the blown-down surface"
    )
    invariants.add_argument("construction", nargs="?")
    invariants.add_argument("--dataset", help="path to a construction JSON file")
    invariants.add_argument("--json", action="store_true")
    invariants.set_defaults(handler=_cmd_invariants)

    pi1 = sub.add_parser(
        "pi1", help="run the fundamental group closure on a connection graph"
    )
    pi1.add_argument(
        "graph", nargs="?", help="graph JSON file or construction name"
    )
    pi1.add_argument(
        "--dataset", help="path to a graph or construction JSON file"
    )
    pi1.add_argument("--json", action="store_true")
    pi1.set_defaults(handler=_cmd_pi1)

    verify_cmd = sub.add_parser(
        "verify", help="replay a construction and grade every recorded value"
    )
    verify_cmd.add_argument("construction", nargs="?")
    verify_cmd.add_argument("--dataset", help="path to a construction JSON file")
    verify_cmd.add_argument("--json", action="store_true")
    verify_cmd.set_defaults(handler=_cmd_verify)

    list_cmd = sub.add_parser("list", help="list available constructions")
    list_cmd.add_argument("--json", action="store_true")
    list_cmd.set_defaults(handler=_cmd_list)

    return parser


def main(argv: Union[Sequence[str], None] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except ExpectationError as exc:
        print(f"expectation failed: {exc}", file=sys.stderr)
        return 1
    except json.JSONDecodeError as exc:
        print(f"malformed JSON input: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
