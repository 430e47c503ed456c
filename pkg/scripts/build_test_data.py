#!/usr/bin/env python3
"""Rebuild the committed test data under tests/data from scratch.

Produces:
  tests/data/fixture_catalog/   demo catalog, seed pinned below
  tests/data/queries/demo_a.txt the description the seed records answer
  tests/data/golden/composite_tuned.pgm
                                tuned composite of the lowest-id matches

The golden file is the regression reference for end-to-end composition;
rebuild only when a deliberate behavior change invalidates it, and say so in
the commit message.
"""
from __future__ import annotations

import hashlib
import shutil
import sys
from pathlib import Path

from fasy.cli import main as fasy_main
from fasy.fixtures import DEMO_QUERY_A, generate_catalog
from fasy.schema import format_face_query_text

SEED = 42
PER_KIND = 3

REPO = Path(__file__).resolve().parent.parent
DATA = REPO / "tests" / "data"


def run() -> int:
    catalog_dir = DATA / "fixture_catalog"
    if catalog_dir.exists():
        shutil.rmtree(catalog_dir)
    generate_catalog(catalog_dir, SEED, PER_KIND)

    queries = DATA / "queries"
    queries.mkdir(parents=True, exist_ok=True)
    query_file = queries / "demo_a.txt"
    query_file.write_text(format_face_query_text(DEMO_QUERY_A))

    golden = DATA / "golden"
    golden.mkdir(parents=True, exist_ok=True)
    out = golden / "composite_tuned.pgm"
    rc = fasy_main([
        "compose",
        "--catalog", str(catalog_dir),
        "--query-file", str(query_file),
        "--mode", "tuned",
        "--output", str(out),
    ])
    if rc != 0:
        print("compose failed", file=sys.stderr)
        return rc

    digest = hashlib.sha256(out.read_bytes()).hexdigest()
    print(f"golden sha256 {digest}")
    return 0


if __name__ == "__main__":
    sys.exit(run())
