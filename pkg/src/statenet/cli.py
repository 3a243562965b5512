"""Operator command line: hashing, validation, composing, fetching, serving.

Exit codes:
  0  success
  1  statement or content validation failure (incl. non-canonical input)
  2  usage error
  3  file or store I/O error
  4  network, transport, or rate-limit failure
  5  content hash mismatch
  6  requested object not found
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import content as typed
from .config import NodeSettings, load_settings
from .errors import (
    FetchError,
    HashMismatch,
    ProtocolError,
    StatementFormatError,
    NonCanonicalInput,
)
from .format import (
    hash_statement,
    parse_statement,
    parse_timestamp,
    split_statement_file,
)
from .node import Node
from .sim import run_simulation
from .store import SqliteStore
from .views import SCHEMA_VERSION, assessment_json, tally_json

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_NETWORK = 4
EXIT_HASH_MISMATCH = 5
EXIT_NOT_FOUND = 6

# CLI type slug -> (content kind, {cli dest -> field name})
NEW_TYPES = {
    "plain": ("plain", {"text": "text"}),
    "org-verification": (
        typed.OrganisationVerification.TYPE_LABEL,
        {
            "name": "name", "country": "country", "legal_form": "legal_form",
            "domain_owned": "domain_owned", "confidence": "confidence",
        },
    ),
    "person-verification": (
        typed.PersonVerification.TYPE_LABEL,
        {
            "name": "name", "birth_date": "birth_date", "birth_city": "birth_city",
            "birth_country": "birth_country", "domain_owned": "domain_owned",
            "confidence": "confidence",
        },
    ),
    "sign-pdf": (
        typed.SignPdf.TYPE_LABEL,
        {"description": "description", "pdf_hash": "pdf_hash"},
    ),
    "poll": (
        typed.Poll.TYPE_LABEL,
        {
            "deadline": "voting_deadline", "question": "question",
            "option": "options", "eligible": "eligibility_description",
        },
    ),
    "vote": (typed.Vote.TYPE_LABEL, {"poll_hash": "poll_hash", "option": "option"}),
    "response": (
        typed.Response.TYPE_LABEL,
        {"statement_hash": "statement_hash", "response": "response_text"},
    ),
    "bounty": (
        typed.Bounty.TYPE_LABEL,
        {"action": "action_description", "reward": "reward_description", "judge": "judge"},
    ),
    "boycott": (
        typed.Boycott.TYPE_LABEL,
        {"subject": "subject", "description": "description"},
    ),
    "dispute-authenticity": (
        typed.DisputeAuthenticity.TYPE_LABEL,
        {"statement_hash": "statement_hash"},
    ),
    "dispute-content": (
        typed.DisputeContent.TYPE_LABEL,
        {"statement_hash": "statement_hash", "description": "description"},
    ),
    "rating": (
        typed.Rating.TYPE_LABEL,
        {
            "name": "subject_name", "domain_rated": "subject_domain",
            "quality": "quality", "stars": "stars", "comment": "comment",
        },
    ),
}


def _fail(message: str, code: int) -> int:
    print(message, file=sys.stderr)
    return code


def _exit_code_for(exc: Exception) -> int:
    if isinstance(exc, HashMismatch):
        return EXIT_HASH_MISMATCH
    if isinstance(exc, FetchError):
        return EXIT_NETWORK
    if isinstance(exc, (StatementFormatError, NonCanonicalInput, ProtocolError)):
        return EXIT_INVALID
    if isinstance(exc, OSError):
        return EXIT_IO
    return EXIT_INVALID


def _make_fetcher(args) -> "StatementFetcher":
    from .fetch import StatementFetcher

    return StatementFetcher(
        min_poll_interval=0.0,
        ca_bundle=getattr(args, "ca_bundle", None),
        https_port=getattr(args, "https_port", None),
    )


def cmd_hash(args) -> int:
    try:
        data = Path(args.file).read_bytes()
    except OSError as exc:
        return _fail(f"cannot read {args.file}: {exc}", EXIT_IO)
    try:
        text = data.decode("utf-8")
        print(hash_statement(text))
    except Exception as exc:  # noqa: BLE001
        return _fail(f"not canonical statement text: {exc}", EXIT_INVALID)
    return EXIT_OK


def _validate_texts(texts: list[str]) -> dict:
    statements = []
    all_valid = True
    for index, text in enumerate(texts):
        entry: dict = {"index": index, "valid": True, "errors": []}
        try:
            statement = parse_statement(text)
            decoded = typed.parse_content(statement.content)
            entry["hash"] = hash_statement(text)
            entry["domain"] = statement.publishing_domain
            entry["kind"] = typed.content_kind(decoded)
        except ProtocolError as exc:
            entry["valid"] = False
            entry["errors"].append(f"{type(exc).__name__}: {exc}")
            all_valid = False
        statements.append(entry)
    return {
        "schema_version": SCHEMA_VERSION,
        "valid": all_valid,
        "statement_count": len(texts),
        "statements": statements,
        "errors": [],
    }


def cmd_validate(args) -> int:
    source = args.source
    report: dict
    try:
        if source == "-":
            report = _validate_texts(list(split_statement_file(sys.stdin.buffer.read())))
        elif Path(source).is_file():
            texts = list(split_statement_file(Path(source).read_bytes()))
            report = _validate_texts(texts)
        else:
            domain = source
            if source.startswith("https://"):
                from urllib.parse import urlsplit

                parts = urlsplit(source)
                if parts.path not in ("", "/", "/.well-known/statements.txt"):
                    return _fail(
                        "only https://<domain>/.well-known/statements.txt URLs are supported",
                        EXIT_USAGE,
                    )
                domain = parts.hostname or ""
            with _make_fetcher(args) as fetcher:
                statements, _meta = fetcher.fetch_statement_file(domain)
            report = _validate_texts(list(statements))
    except ValueError as exc:
        return _fail(f"{source!r} is not a file, https URL, or domain: {exc}", EXIT_USAGE)
    except ProtocolError as exc:
        report = {
            "schema_version": SCHEMA_VERSION,
            "valid": False,
            "statement_count": 0,
            "statements": [],
            "errors": [f"{type(exc).__name__}: {exc}"],
        }
    except OSError as exc:
        return _fail(f"cannot read {source}: {exc}", EXIT_IO)

    if args.json:
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        for error in report["errors"]:
            print(f"error: {error}")
        for entry in report["statements"]:
            if entry["valid"]:
                print(f"ok {entry['hash']} {entry['domain']} {entry['kind']}")
            else:
                print(f"invalid statement #{entry['index']}: {'; '.join(entry['errors'])}")
        print(f"{report['statement_count']} statements, valid={report['valid']}")
    return EXIT_OK if report["valid"] else EXIT_INVALID


def cmd_new(args) -> int:
    label, mapping = NEW_TYPES[args.type]
    fields = {}
    for dest, field_name in mapping.items():
        value = getattr(args, dest, None)
        if value is None:
            continue
        fields[field_name] = value
    if label == typed.Vote.TYPE_LABEL and isinstance(fields.get("option"), list):
        options = fields["option"]
        if len(options) != 1:
            return _fail("vote takes exactly one --option", EXIT_USAGE)
        fields["option"] = options[0]
    try:
        moment = parse_timestamp(args.time) if args.time else None
        text = typed.build_statement(
            domain=args.domain,
            author=args.author,
            content=typed.content_from_fields(label, fields),
            time=moment,
            tags=tuple(args.tag or ()),
            representative=args.representative,
            superseded=args.superseded,
        )
    except ProtocolError as exc:
        return _fail(f"cannot compose statement: {exc}", EXIT_INVALID)
    print(text)
    return EXIT_OK


def cmd_fetch(args) -> int:
    try:
        with _make_fetcher(args) as fetcher:
            statements, meta = fetcher.fetch_statement_file(args.domain)
    except ProtocolError as exc:
        return _fail(f"{type(exc).__name__}: {exc}", _exit_code_for(exc))
    entries = []
    for text in statements:
        try:
            statement_hash = hash_statement(text)
        except NonCanonicalInput:
            statement_hash = None
        entries.append({"hash": statement_hash, "text": text})
    if args.json:
        print(json.dumps(
            {"schema_version": SCHEMA_VERSION, "url": meta.url, "statements": entries},
            indent=2, sort_keys=True,
        ))
    else:
        for entry in entries:
            print(f"# {entry['hash'] or 'NON-CANONICAL'}")
            print(entry["text"])
            print()
        print(f"fetched {len(entries)} statements from {meta.url}")
    return EXIT_OK


def _open_store(path: str) -> SqliteStore:
    if not Path(path).exists():
        raise FileNotFoundError(f"store not found: {path}")
    return SqliteStore(path)


def cmd_tally(args) -> int:
    try:
        store = _open_store(args.store)
    except FileNotFoundError as exc:
        return _fail(str(exc), EXIT_IO)
    node = Node(store, own_domain="localhost")
    eligible = set(args.eligible_domain or [])
    predicate = (lambda d: d in eligible) if eligible else None
    try:
        tally = node.poll_tally(args.poll_hash, predicate)
    except KeyError:
        return _fail(f"poll {args.poll_hash} not in store", EXIT_NOT_FOUND)
    except ProtocolError as exc:
        return _fail(f"{type(exc).__name__}: {exc}", EXIT_INVALID)
    finally:
        store.close()
    print(json.dumps(tally_json(tally), indent=2, sort_keys=True))
    return EXIT_OK


def cmd_trust(args) -> int:
    try:
        store = _open_store(args.store)
    except FileNotFoundError as exc:
        return _fail(str(exc), EXIT_IO)
    node = Node(store, own_domain="localhost")
    assessment = node.trust_assessment(args.domain)
    store.close()
    print(json.dumps(assessment_json(assessment), indent=2, sort_keys=True))
    return EXIT_OK


def cmd_sim(args) -> int:
    report = run_simulation(
        nodes=args.nodes,
        statements=args.statements,
        max_rounds=args.rounds,
        seed=args.seed,
        fanout=args.fanout,
    )
    if args.json:
        print(json.dumps(
            {
                "schema_version": SCHEMA_VERSION,
                "nodes": report.nodes,
                "statements": report.statements,
                "seed": report.seed,
                "fanout": report.fanout,
                "edges": [list(edge) for edge in report.edges],
                "converged_round": report.converged_round,
                "rounds": [
                    {
                        "round": snapshot.round_number,
                        "store_sizes": snapshot.store_sizes,
                        "converged": snapshot.converged,
                    }
                    for snapshot in report.rounds
                ],
            },
            indent=2, sort_keys=True,
        ))
    else:
        for snapshot in report.rounds:
            sizes = ",".join(str(s) for s in snapshot.store_sizes)
            print(f"round {snapshot.round_number}: sizes=[{sizes}]")
        if report.converged:
            print(f"converged in {report.converged_round} rounds")
        else:
            print(f"did not converge within {args.rounds} rounds")
    return EXIT_OK if report.converged else EXIT_INVALID


def cmd_serve(args) -> int:
    import os

    import uvicorn

    from .serve import build_runtime

    settings = load_settings(args.config) if args.config else NodeSettings()
    if os.environ.get("STATENET_TOKEN"):
        settings.operator_token = os.environ["STATENET_TOKEN"]
    for name in ("host", "port", "store_path", "own_domain", "operator_token", "ui_dir"):
        value = getattr(args, name, None)
        if value is not None:
            setattr(settings, name, value)
    runtime = build_runtime(settings)
    try:
        uvicorn.run(runtime.app, host=settings.host, port=settings.port, log_level="info")
    finally:
        runtime.stop()
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="statenet",
        description="Canonical statement tooling: hash, validate, compose, fetch, serve.",
    )
    parser.add_argument("--version", action="version", version="statenet 0.1.0")
    sub = parser.add_subparsers(dest="command", required=True)

    p_hash = sub.add_parser("hash", help="print the content hash of a canonical statement file")
    p_hash.add_argument("file")
    p_hash.set_defaults(func=cmd_hash)

    p_validate = sub.add_parser("validate", help="validate a statement file, URL, or domain")
    p_validate.add_argument("source")
    p_validate.add_argument("--json", action="store_true")
    p_validate.add_argument("--ca-bundle", dest="ca_bundle")
    p_validate.add_argument("--https-port", dest="https_port", type=int)
    p_validate.set_defaults(func=cmd_validate)

    p_new = sub.add_parser("new", help="compose a canonical statement")
    p_new.add_argument("type", choices=sorted(NEW_TYPES))
    p_new.add_argument("--domain", required=True)
    p_new.add_argument("--author", required=True)
    p_new.add_argument("--time", help="UTC timestamp YYYY-MM-DDTHH:MM:SSZ (default: now)")
    p_new.add_argument("--tag", action="append")
    p_new.add_argument("--representative")
    p_new.add_argument("--superseded", help="hash of the statement this one supersedes")
    p_new.add_argument("--text")
    p_new.add_argument("--name")
    p_new.add_argument("--country")
    p_new.add_argument("--legal-form", dest="legal_form")
    p_new.add_argument("--domain-owned", dest="domain_owned")
    p_new.add_argument("--confidence")
    p_new.add_argument("--birth-date", dest="birth_date")
    p_new.add_argument("--birth-city", dest="birth_city")
    p_new.add_argument("--birth-country", dest="birth_country")
    p_new.add_argument("--description")
    p_new.add_argument("--pdf-hash", dest="pdf_hash")
    p_new.add_argument("--deadline")
    p_new.add_argument("--question")
    p_new.add_argument("--option", action="append")
    p_new.add_argument("--eligible")
    p_new.add_argument("--poll-hash", dest="poll_hash")
    p_new.add_argument("--statement-hash", dest="statement_hash")
    p_new.add_argument("--response")
    p_new.add_argument("--action")
    p_new.add_argument("--reward")
    p_new.add_argument("--judge")
    p_new.add_argument("--subject")
    p_new.add_argument("--domain-rated", dest="domain_rated")
    p_new.add_argument("--quality")
    p_new.add_argument("--stars")
    p_new.add_argument("--comment")
    p_new.set_defaults(func=cmd_new)

    p_fetch = sub.add_parser("fetch", help="fetch and print a domain's statements")
    p_fetch.add_argument("domain")
    p_fetch.add_argument("--json", action="store_true")
    p_fetch.add_argument("--ca-bundle", dest="ca_bundle")
    p_fetch.add_argument("--https-port", dest="https_port", type=int)
    p_fetch.set_defaults(func=cmd_fetch)

    p_tally = sub.add_parser("tally", help="tally a poll from a node store")
    p_tally.add_argument("poll_hash")
    p_tally.add_argument("--store", required=True)
    p_tally.add_argument("--eligible-domain", dest="eligible_domain", action="append")
    p_tally.set_defaults(func=cmd_tally)

    p_trust = sub.add_parser("trust", help="trust assessment for a domain from a node store")
    p_trust.add_argument("domain")
    p_trust.add_argument("--store", required=True)
    p_trust.set_defaults(func=cmd_trust)

    p_serve = sub.add_parser("serve", help="run an aggregator node")
    p_serve.add_argument("--config")
    p_serve.add_argument("--host")
    p_serve.add_argument("--port", type=int)
    p_serve.add_argument("--store-path", dest="store_path")
    p_serve.add_argument("--own-domain", dest="own_domain")
    p_serve.add_argument("--operator-token", dest="operator_token")
    p_serve.add_argument("--ui-dir", dest="ui_dir")
    p_serve.set_defaults(func=cmd_serve)

    p_sim = sub.add_parser("sim", help="run the gossip convergence simulation")
    p_sim.add_argument("--nodes", type=int, default=8)
    p_sim.add_argument("--rounds", type=int, default=50)
    p_sim.add_argument("--seed", type=int, default=0)
    p_sim.add_argument("--statements", type=int, default=100)
    p_sim.add_argument("--fanout", type=int, default=3)
    p_sim.add_argument("--json", action="store_true")
    p_sim.set_defaults(func=cmd_sim)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
