#!/usr/bin/env python3
"""Drive a live service through one full composing session.

Usage: replay_session.py [BASE_URL] [QUERY_FILE]

Defaults to http://127.0.0.1:8765 and an all-wildcard query (every kind's
lowest-id record gets selected).  Walks query -> select x7 -> preview ->
two nudges -> finalize and prints the finalized face id, mirroring what an
operator does in the browser client.
"""
from __future__ import annotations

import sys
from pathlib import Path

import httpx

from fasy.schema import parse_face_query_text


def run(base_url: str, query_file: str | None) -> int:
    query: dict[str, dict[str, str]] = {}
    if query_file:
        parsed = parse_face_query_text(Path(query_file).read_text())
        query = {kind.value: attrs for kind, attrs in parsed.items()}

    with httpx.Client(base_url=base_url, timeout=30) as client:
        sid = client.post("/v1/sessions").json()["session_id"]
        reply = client.post(f"/v1/sessions/{sid}/query", json=query)
        reply.raise_for_status()
        candidates = reply.json()["candidates"]
        for kind, records in candidates.items():
            if not records:
                print(f"no candidates for {kind}", file=sys.stderr)
                return 1
            client.post(f"/v1/sessions/{sid}/select",
                        json={"kind": kind, "record_id": records[0]["id"]}
                        ).raise_for_status()
        client.post(f"/v1/sessions/{sid}/preview",
                    json={"mode": "tuned"}).raise_for_status()
        client.post(f"/v1/sessions/{sid}/adjust",
                    json={"lip": {"drow": 2, "dcol": 0}}).raise_for_status()
        client.post(f"/v1/sessions/{sid}/adjust",
                    json={"nose": {"drow": 0, "dcol": -1}}).raise_for_status()
        final = client.post(f"/v1/sessions/{sid}/finalize")
        final.raise_for_status()
        face_id = final.json()["face_id"]
        image = client.get(f"/v1/faces/{face_id}/image")
        image.raise_for_status()
        print(face_id)
        return 0


if __name__ == "__main__":
    base = sys.argv[1] if len(sys.argv) > 1 else "http://127.0.0.1:8765"
    qfile = sys.argv[2] if len(sys.argv) > 2 else None
    sys.exit(run(base, qfile))
