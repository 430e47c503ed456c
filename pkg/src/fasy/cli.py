"""Command-line entry point: ingest, query, compose, gen-fixtures, serve.

Exit codes are a stable scripting contract: 0 success, 2 caller error
(bad arguments, schema violations, unknown records, broken catalog paths),
1 internal error.  Standard output carries machine-readable results only;
diagnostics go to standard error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .assembly import DEFAULT_CONSTANTS, Layout, LayoutConstants, LayoutOverride, ZERO_OVERRIDE
from .blending import PlacementMode
from .catalog import Catalog, open_catalog
from .compose import SLOT_KINDS, compose_face
from .errors import FasyError, InvalidRequest, SchemaViolation
from .imaging import write_pgm
from .schema import ComponentKind, parse_face_query_text, parse_kind
from .fixtures import generate_catalog

#: compose accepts one id flag per kind; flag names double as documentation.
_ID_FLAGS: dict[str, ComponentKind] = {
    "cutting": ComponentKind.FACE_CUTTING,
    "right_eyebrow": ComponentKind.RIGHT_EYEBROW,
    "right_eye": ComponentKind.RIGHT_EYE,
    "left_eyebrow": ComponentKind.LEFT_EYEBROW,
    "left_eye": ComponentKind.LEFT_EYE,
    "nose": ComponentKind.NOSE,
    "lip": ComponentKind.LIP,
}


def _parse_attr_flags(pairs: list[str]) -> dict[str, str]:
    attrs: dict[str, str] = {}
    for pair in pairs:
        name, sep, value = pair.partition("=")
        if not sep or not name or not value:
            raise InvalidRequest(f"--attr expects NAME=VALUE, got {pair!r}")
        if name in attrs:
            raise SchemaViolation(f"attribute {name!r} given twice", attribute=name)
        attrs[name] = value
    return attrs


def _print_layout(layout: Layout) -> None:
    print(f"anchor {layout.anchor.row} {layout.anchor.col}")
    for slot, pos in layout.positions().items():
        print(f"{slot.value} {pos.row} {pos.col}")


def cmd_ingest(args: argparse.Namespace) -> int:
    catalog = open_catalog(args.catalog)
    kind = parse_kind(args.kind)
    attrs = _parse_attr_flags(args.attr)
    data = Path(args.image).read_bytes()
    record_id = catalog.ingest(data, kind, attrs)
    print(record_id)
    return 0


def cmd_query(args: argparse.Namespace) -> int:
    catalog = open_catalog(args.catalog)
    kind = parse_kind(args.kind)
    attrs = _parse_attr_flags(args.attr)
    for record in catalog.match_components(kind, attrs):
        fields = " ".join(f"{name}={record.attributes[name]}"
                          for name in sorted(record.attributes))
        print(f"{record.id}\t{record.kind.value}\t{fields}")
    return 0


def _selections_from_args(catalog: Catalog,
                          args: argparse.Namespace) -> dict[ComponentKind, int]:
    flag_ids = {kind: getattr(args, flag)
                for flag, kind in _ID_FLAGS.items() if getattr(args, flag) is not None}
    if args.query_file and flag_ids:
        raise InvalidRequest("give either --query-file or the seven id flags, not both")
    if args.query_file:
        query = parse_face_query_text(Path(args.query_file).read_text())
        selections: dict[ComponentKind, int] = {}
        for kind in ComponentKind:
            matches = catalog.match_components(kind, query.get(kind, {}))
            if not matches:
                raise InvalidRequest(
                    f"no catalog match for {kind.value}", attribute=kind.value)
            selections[kind] = matches[0].id  # lowest id: deterministic pick
        return selections
    missing = [flag for flag in _ID_FLAGS if getattr(args, flag) is None]
    if missing:
        flags = ", ".join("--" + flag.replace("_", "-") for flag in missing)
        raise InvalidRequest(f"missing component ids: {flags}")
    return flag_ids


def cmd_compose(args: argparse.Namespace) -> int:
    catalog = open_catalog(args.catalog)
    selections = _selections_from_args(catalog, args)
    for kind, record_id in selections.items():
        record = catalog.component(record_id)
        if record.kind != kind:
            raise InvalidRequest(
                f"record {record_id} is a {record.kind.value}, not {kind.value}")
    mode = PlacementMode(args.mode)
    overrides = ZERO_OVERRIDE
    if args.overrides:
        overrides = LayoutOverride.from_text(Path(args.overrides).read_text())
    constants = DEFAULT_CONSTANTS
    if args.constants:
        constants = LayoutConstants.from_text(Path(args.constants).read_text())
    cutting = catalog.image(selections[ComponentKind.FACE_CUTTING])
    components = {slot: catalog.image(selections[kind])
                  for slot, kind in SLOT_KINDS.items()}
    image, layout = compose_face(cutting, components, mode, overrides, constants)
    Path(args.output).write_bytes(write_pgm(image))
    _print_layout(layout)
    return 0


def cmd_gen_fixtures(args: argparse.Namespace) -> int:
    catalog = generate_catalog(args.output, args.seed, args.per_kind)
    print(len(catalog))
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(args.catalog)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fasy",
        description="Compose face sketches from cataloged components.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_catalog(p: argparse.ArgumentParser) -> None:
        p.add_argument("--catalog", required=True, help="catalog root directory")

    def add_attrs(p: argparse.ArgumentParser) -> None:
        p.add_argument("--attr", action="append", default=[], metavar="NAME=VALUE",
                       help="attribute assignment; repeatable")

    p = sub.add_parser("ingest", help="add a component image to the catalog")
    add_catalog(p)
    p.add_argument("--kind", required=True, help="component kind, e.g. Nose")
    add_attrs(p)
    p.add_argument("image", help="PGM file to ingest")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("query", help="list records matching attribute flags")
    add_catalog(p)
    p.add_argument("--kind", required=True)
    add_attrs(p)
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("compose", help="compose a face and write the PGM")
    add_catalog(p)
    for flag in _ID_FLAGS:
        p.add_argument("--" + flag.replace("_", "-"), type=int, default=None,
                       metavar="ID", help=f"record id for the {flag.replace('_', ' ')}")
    p.add_argument("--query-file", default=None,
                   help="description file; lowest-id match fills each kind")
    p.add_argument("--mode", choices=[m.value for m in PlacementMode],
                   default=PlacementMode.TUNED.value)
    p.add_argument("--overrides", default=None, help="placement override file")
    p.add_argument("--constants", default=None, help="layout constants file")
    p.add_argument("--output", required=True, help="output PGM path")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("gen-fixtures", help="generate a synthetic demo catalog")
    p.add_argument("--output", required=True, help="catalog directory to create")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--per-kind", type=int, default=3,
                   help="records per component kind")
    p.set_defaults(func=cmd_gen_fixtures)

    p = sub.add_parser("serve", help="run the HTTP composition service")
    add_catalog(p)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8765)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FasyError as exc:
        detail = exc.detail()
        where = "".join(f" ({k}: {v})" for k, v in detail.items() if v)
        print(f"error[{exc.code}]: {exc}{where}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error[io]: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - the 0/2/1 contract needs a catch-all
        print(f"internal error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
