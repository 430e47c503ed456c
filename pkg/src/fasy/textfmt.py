"""The line-oriented text grammar shared by every fasy text file.

One grammar covers the catalog manifest, query files, layout-override files
and layout-constants files:

- the file is UTF-8 text; lines whose first non-blank character is ``#``
  are comments and are ignored;
- blank lines separate *blocks*;
- every other line is a *field*: the first whitespace-delimited word is the
  key, the rest of the line (stripped) is the value.  Values may contain
  spaces ("Highly Dense", "Above 70"); keys may not;
- the key of a block's first field names the block type (``record``,
  ``face``, ``query``, ``override``, ``constants``, ...), and each file kind
  documents its own block vocabulary.

Round trip: ``parse_blocks(format_blocks(b)) == b``.
"""
from __future__ import annotations

Field = tuple[str, str]
Block = list[Field]


def parse_blocks(text: str) -> list[Block]:
    blocks: list[Block] = []
    current: Block = []
    for raw in text.splitlines():
        line = raw.strip()
        if line.startswith("#"):
            continue
        if not line:
            if current:
                blocks.append(current)
                current = []
            continue
        parts = line.split(None, 1)
        key = parts[0]
        value = parts[1].strip() if len(parts) == 2 else ""
        current.append((key, value))
    if current:
        blocks.append(current)
    return blocks


def format_blocks(blocks: list[Block]) -> str:
    chunks = []
    for block in blocks:
        lines = [f"{key} {value}".rstrip() for key, value in block]
        chunks.append("\n".join(lines))
    return "\n\n".join(chunks) + "\n"


def block_type(block: Block) -> str:
    return block[0][0]


def values(block: Block, key: str) -> list[str]:
    """All values for a repeated key, in file order."""
    return [v for k, v in block if k == key]


def single(block: Block, key: str, *, missing: str | None = None) -> str:
    """The value of a key expected at most once; ``missing`` when absent."""
    found = values(block, key)
    if not found:
        if missing is None:
            raise KeyError(key)
        return missing
    if len(found) > 1:
        raise ValueError(f"field {key!r} given {len(found)} times")
    return found[0]
