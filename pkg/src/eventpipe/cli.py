"""Command-line interface: annotate text, score annotation files, serve HTTP.

Exit codes: 0 success, 2 usage error (argparse), 1 pipeline/runtime error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .evaluate import score_corpus
from .pipeline import AnnotateOptions, PipelineError, annotate
from .registry import default_registry, registry_from_config
from .serialize import events_to_tsv, graph_to_dot, result_from_dict, to_json


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eventpipe",
        description="Temporal event annotation: triggers, arguments, durations, "
        "negation flags, and a vague-pruned relation graph.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "--config",
        default=os.environ.get("EVENTPIPE_CONFIG"),
        help="JSON config file overriding per-domain backends (env: EVENTPIPE_CONFIG)",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    cmd = commands.add_parser("annotate", help="annotate text or a file")
    source = cmd.add_mutually_exclusive_group(required=True)
    source.add_argument("--text", help="text to annotate")
    source.add_argument("--file", help="path of a UTF-8 text file to annotate")
    cmd.add_argument("--domain", default="news", help="registered domain (default: news)")
    cmd.add_argument("--format", choices=("json", "dot", "tsv"), default="json")
    cmd.add_argument("--threshold", type=float, default=0.5, help="trigger threshold")
    cmd.add_argument(
        "--max-sentence-gap",
        type=int,
        default=None,
        help="skip relation pairs further apart than this many sentences",
    )
    cmd.add_argument("--decoder", choices=("greedy", "viterbi"), default="greedy")

    cmd = commands.add_parser("score", help="score predicted against gold annotations")
    cmd.add_argument("--pred", required=True, help="predicted annotation JSON file")
    cmd.add_argument("--gold", required=True, help="gold annotation JSON file")
    cmd.add_argument("--format", choices=("json", "tsv"), default="json")

    cmd = commands.add_parser("serve", help="run the HTTP annotation service")
    cmd.add_argument("--host", default="127.0.0.1")
    cmd.add_argument("--port", type=int, default=None, help="default 8000 (env: EVENTPIPE_PORT)")
    cmd.add_argument("--max-chars", type=int, default=20_000)

    return parser


def _load_registry(args):
    if args.config:
        return registry_from_config(args.config)
    return default_registry()


def _load_results(path: str):
    raw = json.loads(Path(path).read_text(encoding="utf-8"))
    entries = raw if isinstance(raw, list) else [raw]
    return [result_from_dict(entry) for entry in entries]


def _run_annotate(args, parser) -> int:
    registry = _load_registry(args)
    if args.domain not in registry.domains():
        parser.error(
            f"unknown domain {args.domain!r}; registered domains: "
            + ", ".join(registry.domains())
        )
    if args.file is not None:
        text = Path(args.file).read_text(encoding="utf-8")
    else:
        text = args.text
    options = AnnotateOptions(
        trigger_threshold=args.threshold,
        max_sentence_gap=args.max_sentence_gap,
        decoder=args.decoder,
    )
    result = annotate(text, args.domain, registry, options)
    if args.format == "json":
        print(to_json(result))
    elif args.format == "dot":
        sys.stdout.write(graph_to_dot(result.graph))
    else:
        sys.stdout.write(events_to_tsv(result))
    return 0


def _run_score(args) -> int:
    predicted = _load_results(args.pred)
    gold = _load_results(args.gold)
    if len(predicted) != len(gold):
        raise ValueError(
            f"{args.pred} has {len(predicted)} annotations, {args.gold} has {len(gold)}"
        )
    scores = score_corpus(zip(predicted, gold))
    if args.format == "json":
        print(json.dumps(scores.to_dict(), sort_keys=True, indent=2))
    else:
        print("criterion\tprecision\trecall\tf1")
        for name, prf in scores.to_dict().items():
            print(f"{name}\t{prf['precision']:.4f}\t{prf['recall']:.4f}\t{prf['f1']:.4f}")
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "annotate":
            return _run_annotate(args, parser)
        if args.command == "score":
            return _run_score(args)
        if args.command == "serve":
            from .service import serve

            serve(
                registry=_load_registry(args),
                host=args.host,
                port=args.port,
                max_text_chars=args.max_chars,
            )
            return 0
    except PipelineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
