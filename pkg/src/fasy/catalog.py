"""Attribute-indexed component store with a human-readable manifest.

Directory layout::

    <root>/
      manifest.txt          # text-grammar blocks, one per record
      face_cutting/00000.pgm
      right_eyebrow/00001.pgm
      ...                   # one subdirectory per component kind
      generated/00007.pgm   # finalized composites

A component block reads::

    record 3
    kind Nose
    image nose/00003.pgm
    attr Sharpness Normal
    attr Nostrils Small
    ...

A generated-face block uses ``face <id>``, dotted per-kind attributes
(``attr Nose.Sharpness Normal``) and carries its provenance: the selected
component ids, the layout that was used and the placement mode.

Ids are monotonically increasing integers shared by both record classes and
stable across reloads.  Writes are serialized and atomic (the manifest is
replaced via write-then-rename), so readers never observe partial state.
"""
from __future__ import annotations

import os
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping

from . import textfmt
from .assembly import ComponentDims, Layout, Position, Slot
from .errors import (
    CorruptManifest,
    DuplicateId,
    FasyError,
    MalformedImage,
    MissingImage,
    SchemaViolation,
    UnknownRecord,
)
from .imaging import GrayImage, read_pgm, write_pgm
from .schema import (
    ComponentKind,
    FaceQuery,
    matches,
    parse_kind,
    validate_query_attributes,
    validate_record_attributes,
)

MANIFEST_NAME = "manifest.txt"
CATALOG_VERSION = "1"

KIND_DIRS: Mapping[ComponentKind, str] = {
    ComponentKind.FACE_CUTTING: "face_cutting",
    ComponentKind.RIGHT_EYEBROW: "right_eyebrow",
    ComponentKind.RIGHT_EYE: "right_eye",
    ComponentKind.LEFT_EYEBROW: "left_eyebrow",
    ComponentKind.LEFT_EYE: "left_eye",
    ComponentKind.NOSE: "nose",
    ComponentKind.LIP: "lip",
}
GENERATED_DIR = "generated"


@dataclass(frozen=True)
class ComponentRecord:
    id: int
    kind: ComponentKind
    attributes: Mapping[str, str]
    image_path: str  # relative to the catalog root
    dims: ComponentDims


@dataclass(frozen=True)
class GeneratedFaceRecord:
    id: int
    description: Mapping[ComponentKind, Mapping[str, str]]
    components: Mapping[ComponentKind, int]
    layout: Layout
    mode: str
    image_path: str
    dims: ComponentDims


def match_records(
    records: Iterable[ComponentRecord],
    kind: ComponentKind,
    query_attributes: Mapping[str, str],
) -> list[ComponentRecord]:
    """Records of the kind matching the query, ordered by ascending id."""
    validate_query_attributes(kind, query_attributes)
    hits = [
        record for record in records
        if record.kind == kind and matches(kind, query_attributes, record.attributes)
    ]
    return sorted(hits, key=lambda record: record.id)


def _layout_fields(layout: Layout) -> list[tuple[str, str]]:
    fields = [("layout", f"anchor {layout.anchor.row} {layout.anchor.col}")]
    for slot in Slot:
        pos = layout.position(slot)
        fields.append(("layout", f"{slot.value} {pos.row} {pos.col}"))
    return fields


def _parse_layout(values: list[str]) -> Layout:
    parts: dict[str, Position] = {}
    for value in values:
        try:
            name, row, col = value.split()
            parts[name] = Position(int(row), int(col))
        except ValueError:
            raise CorruptManifest(f"bad layout line {value!r}")
    needed = {"anchor"} | {slot.value for slot in Slot}
    if set(parts) != needed:
        raise CorruptManifest(f"layout needs exactly {sorted(needed)}, got {sorted(parts)}")
    return Layout(**parts)


class Catalog:
    """Handle over a catalog directory; see the module docstring for layout."""

    def __init__(self, root: Path):
        self.root = Path(root)
        self._records: dict[int, ComponentRecord] = {}
        self._faces: dict[int, GeneratedFaceRecord] = {}
        self._image_bytes: dict[int, bytes] = {}
        self._images: dict[int, GrayImage] = {}
        self._write_lock = threading.Lock()

    # loading

    @classmethod
    def open(cls, root: str | Path) -> "Catalog":
        """Validate and load a catalog; an empty/missing root is initialized fresh."""
        root = Path(root)
        catalog = cls(root)
        manifest = root / MANIFEST_NAME
        if not root.exists():
            root.mkdir(parents=True)
        elif not root.is_dir():
            raise CorruptManifest(f"catalog root {root} is not a directory")
        if not manifest.exists():
            if any(root.iterdir()):
                raise CorruptManifest(f"{root} is non-empty but has no {MANIFEST_NAME}")
            catalog._write_manifest()
            return catalog
        catalog._load(manifest)
        return catalog

    def _load(self, manifest: Path) -> None:
        blocks = textfmt.parse_blocks(manifest.read_text(encoding="utf-8"))
        if not blocks or textfmt.block_type(blocks[0]) != "catalog":
            raise CorruptManifest("manifest must start with a 'catalog' block")
        if textfmt.single(blocks[0], "catalog") != CATALOG_VERSION:
            raise CorruptManifest(
                f"unsupported catalog version {textfmt.single(blocks[0], 'catalog')!r}"
            )
        for block in blocks[1:]:
            kind_of_block = textfmt.block_type(block)
            if kind_of_block == "record":
                self._load_component(block)
            elif kind_of_block == "face":
                self._load_face(block)
            else:
                raise CorruptManifest(f"unknown block type {kind_of_block!r}")

    def _take_id(self, block: textfmt.Block) -> int:
        try:
            record_id = int(block[0][1])
        except ValueError:
            raise CorruptManifest(f"non-integer record id {block[0][1]!r}")
        if record_id in self._records or record_id in self._faces:
            raise CorruptManifest(f"duplicate record id {record_id}")
        return record_id

    def _load_image(self, record_id: int, rel_path: str) -> GrayImage:
        path = self.root / rel_path
        if not path.is_file():
            raise MissingImage(f"record {record_id} references missing file {rel_path}")
        data = path.read_bytes()
        try:
            image = read_pgm(data)
        except FasyError as exc:
            raise MalformedImage(f"record {record_id} image {rel_path}: {exc.message}")
        self._image_bytes[record_id] = data
        self._images[record_id] = image
        return image

    def _load_component(self, block: textfmt.Block) -> None:
        record_id = self._take_id(block)
        try:
            kind = parse_kind(textfmt.single(block, "kind"))
            rel_path = textfmt.single(block, "image")
        except KeyError as exc:
            raise CorruptManifest(f"record {record_id} missing field {exc.args[0]}")
        attributes: dict[str, str] = {}
        for value in textfmt.values(block, "attr"):
            name, _, attr_value = value.partition(" ")
            attributes[name] = attr_value.strip()
        validate_record_attributes(kind, attributes)
        image = self._load_image(record_id, rel_path)
        self._records[record_id] = ComponentRecord(
            id=record_id, kind=kind, attributes=attributes,
            image_path=rel_path, dims=ComponentDims.of(image),
        )

    def _load_face(self, block: textfmt.Block) -> None:
        record_id = self._take_id(block)
        try:
            rel_path = textfmt.single(block, "image")
            mode = textfmt.single(block, "mode")
        except KeyError as exc:
            raise CorruptManifest(f"face {record_id} missing field {exc.args[0]}")
        description: dict[ComponentKind, dict[str, str]] = {k: {} for k in ComponentKind}
        for value in textfmt.values(block, "attr"):
            dotted, _, attr_value = value.partition(" ")
            kind_name, _, attr_name = dotted.partition(".")
            if not attr_name:
                raise CorruptManifest(f"face attr needs Kind.Name, got {dotted!r}")
            description[parse_kind(kind_name)][attr_name] = attr_value.strip()
        for kind in ComponentKind:
            validate_record_attributes(kind, description[kind])
        components: dict[ComponentKind, int] = {}
        for value in textfmt.values(block, "component"):
            kind_name, _, id_text = value.partition(" ")
            try:
                components[parse_kind(kind_name)] = int(id_text)
            except ValueError:
                raise CorruptManifest(f"bad component line {value!r}")
        if set(components) != set(ComponentKind):
            raise CorruptManifest(f"face {record_id} provenance must cover all seven kinds")
        layout = _parse_layout(textfmt.values(block, "layout"))
        image = self._load_image(record_id, rel_path)
        self._faces[record_id] = GeneratedFaceRecord(
            id=record_id, description=description, components=components,
            layout=layout, mode=mode, image_path=rel_path, dims=ComponentDims.of(image),
        )

    # persistence

    def _next_id(self) -> int:
        taken = set(self._records) | set(self._faces)
        return max(taken) + 1 if taken else 0

    def _write_manifest(self) -> None:
        blocks: list[textfmt.Block] = [[("catalog", CATALOG_VERSION)]]
        for record_id in sorted(set(self._records) | set(self._faces)):
            if record_id in self._records:
                record = self._records[record_id]
                block = [("record", str(record.id)),
                         ("kind", record.kind.value),
                         ("image", record.image_path)]
                block += [("attr", f"{name} {value}")
                          for name, value in record.attributes.items()]
            else:
                face = self._faces[record_id]
                block = [("face", str(face.id)), ("image", face.image_path)]
                for kind in ComponentKind:
                    block += [("attr", f"{kind.value}.{name} {value}")
                              for name, value in face.description[kind].items()]
                block += [("component", f"{kind.value} {face.components[kind]}")
                          for kind in ComponentKind]
                block += _layout_fields(face.layout)
                block.append(("mode", face.mode))
            blocks.append(block)
        text = textfmt.format_blocks(blocks)
        tmp = self.root / (MANIFEST_NAME + ".tmp")
        tmp.write_text(text, encoding="utf-8")
        os.replace(tmp, self.root / MANIFEST_NAME)

    def _store_image(self, record_id: int, rel_dir: str, data: bytes) -> str:
        directory = self.root / rel_dir
        directory.mkdir(parents=True, exist_ok=True)
        rel_path = f"{rel_dir}/{record_id:05d}.pgm"
        (self.root / rel_path).write_bytes(data)
        return rel_path

    # operations

    def ingest(self, image_data: bytes, kind: ComponentKind,
               attributes: Mapping[str, str]) -> int:
        """Persist one component; returns its new id."""
        validate_record_attributes(kind, dict(attributes))
        try:
            image = read_pgm(image_data)
        except FasyError as exc:
            raise MalformedImage(f"component image does not parse: {exc.message}")
        with self._write_lock:
            record_id = self._next_id()
            if record_id in self._records or record_id in self._faces:
                raise DuplicateId(f"id {record_id} already assigned")  # unreachable
            rel_path = self._store_image(record_id, KIND_DIRS[kind], bytes(image_data))
            self._records[record_id] = ComponentRecord(
                id=record_id, kind=kind, attributes=dict(attributes),
                image_path=rel_path, dims=ComponentDims.of(image),
            )
            self._image_bytes[record_id] = bytes(image_data)
            self._images[record_id] = image
            self._write_manifest()
            return record_id

    def save_generated_face(
        self,
        image: GrayImage,
        description: Mapping[ComponentKind, Mapping[str, str]],
        components: Mapping[ComponentKind, int],
        layout: Layout,
        mode: str,
    ) -> int:
        """Store a finalized composite with its description and provenance."""
        for kind in ComponentKind:
            if kind not in description:
                raise SchemaViolation(
                    f"description missing kind {kind.value}", attribute=kind.value
                )
            validate_record_attributes(kind, dict(description[kind]))
        for kind in ComponentKind:
            if kind not in components:
                raise SchemaViolation(
                    f"provenance missing kind {kind.value}", attribute=kind.value
                )
        with self._write_lock:
            for kind, component_id in components.items():
                record = self._records.get(component_id)
                if record is None or record.kind != kind:
                    raise UnknownRecord(
                        f"provenance cites unknown {kind.value} record {component_id}"
                    )
            record_id = self._next_id()
            data = write_pgm(image)
            rel_path = self._store_image(record_id, GENERATED_DIR, data)
            self._faces[record_id] = GeneratedFaceRecord(
                id=record_id,
                description={k: dict(v) for k, v in description.items()},
                components=dict(components),
                layout=layout, mode=mode, image_path=rel_path,
                dims=ComponentDims.of(image),
            )
            self._image_bytes[record_id] = data
            self._images[record_id] = image
            self._write_manifest()
            return record_id

    def match_components(self, kind: ComponentKind,
                         query_attributes: Mapping[str, str]) -> list[ComponentRecord]:
        return match_records(self._records.values(), kind, query_attributes)

    def match_faces(self, query: FaceQuery) -> list[GeneratedFaceRecord]:
        """Generated faces whose stored description matches the query."""
        hits = []
        for face in self._faces.values():
            if all(
                matches(kind, query.get(kind, {}), face.description[kind])
                for kind in ComponentKind
            ):
                hits.append(face)
        return sorted(hits, key=lambda face: face.id)

    # accessors

    def component(self, record_id: int) -> ComponentRecord:
        record = self._records.get(record_id)
        if record is None:
            raise UnknownRecord(f"no component record {record_id}")
        return record

    def face(self, record_id: int) -> GeneratedFaceRecord:
        face = self._faces.get(record_id)
        if face is None:
            raise UnknownRecord(f"no generated face {record_id}")
        return face

    def image(self, record_id: int) -> GrayImage:
        if record_id not in self._images:
            raise UnknownRecord(f"no record {record_id}")
        return self._images[record_id]

    def image_bytes(self, record_id: int) -> bytes:
        if record_id not in self._image_bytes:
            raise UnknownRecord(f"no record {record_id}")
        return self._image_bytes[record_id]

    def component_records(self) -> list[ComponentRecord]:
        return [self._records[i] for i in sorted(self._records)]

    def generated_faces(self) -> list[GeneratedFaceRecord]:
        return [self._faces[i] for i in sorted(self._faces)]

    def __len__(self) -> int:
        return len(self._records) + len(self._faces)


def open_catalog(root: str | Path) -> Catalog:
    return Catalog.open(root)
