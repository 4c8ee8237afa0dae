"""Command-line entry point: export a corpus to CPEB embeddings."""

import argparse
import sys

from .corpus import CorpusFormatError
from .exporter import ExportConfig, ExportError, export


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cpeb-export",
        description="Export per-word-piece LM hidden states for a JSON-lines corpus.")
    parser.add_argument("--model", default="bert-base-multilingual-cased",
                        help="model identifier or local model directory")
    parser.add_argument("--layer", type=int, default=8,
                        help="hidden-state layer (0 = embedding output)")
    parser.add_argument("--corpus", required=True, help="JSON-lines corpus path")
    parser.add_argument("--out", required=True, help="output CPEB path")
    parser.add_argument("--batch-size", type=int, default=16)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = ExportConfig(model=args.model, layer=args.layer, corpus=args.corpus,
                       out=args.out, batch_size=args.batch_size)
    try:
        path = export(cfg)
    except (ExportError, CorpusFormatError, OSError) as exc:
        print(f"cpeb-export: error: {exc}", file=sys.stderr)
        return 1
    print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
