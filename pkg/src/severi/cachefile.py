"""Line-oriented persistent format for the engine's memo table.

Layout (UTF-8 text, one model per file)::

    severi-cache v1 <kind> <n>
    <D.a> <D.b> <g> <alpha> <beta> <variant> <value>
    ...
    checksum sha256:<hex>

Sequences use the seqcomb wire form with ``-`` standing in for the empty
string.  The checksum covers every preceding line, so a tampered value fails
loudly instead of corrupting downstream computations.  Loading a cache can
only ever make the engine faster, never change a value: conflicting entries
are rejected.
"""

from __future__ import annotations

import hashlib
from pathlib import Path

from .engine import SeveriEngine, SeveriKey, VARIANTS
from .seqcomb import TangencySeq
from .surface import DivClass, SurfaceModel

FORMAT_NAME = "severi-cache"
FORMAT_VERSION = "v1"


class CacheError(Exception):
    """Base class for cache-file problems."""


class CacheVersionError(CacheError):
    """The file is not a cache file of a version this code reads."""


class CacheFormatError(CacheError):
    """A structurally malformed line."""


class CacheChecksumError(CacheError):
    """The trailing checksum does not match the file body."""


def _seq_field(s: TangencySeq) -> str:
    return s.text() or "-"


def _checksum(body: str) -> str:
    return hashlib.sha256(body.encode("utf-8")).hexdigest()


def dump_text(model: SurfaceModel, entries: dict[SeveriKey, int]) -> str:
    """Serialize the entries belonging to `model`, deterministically ordered."""
    lines = [f"{FORMAT_NAME} {FORMAT_VERSION} {model.kind} {model.n}"]
    rows = []
    for key, value in entries.items():
        if key.model != model:
            continue
        rows.append((key.d.a, key.d.b, key.g, key.alpha.sort_key(),
                     key.beta.sort_key(), key.variant, key, value))
    rows.sort(key=lambda r: r[:6])
    for *_, key, value in rows:
        lines.append(
            f"{key.d.a} {key.d.b} {key.g} {_seq_field(key.alpha)} "
            f"{_seq_field(key.beta)} {key.variant} {value}"
        )
    body = "\n".join(lines) + "\n"
    return body + f"checksum sha256:{_checksum(body)}\n"


def parse_text(text: str) -> tuple[SurfaceModel, dict[SeveriKey, int]]:
    """Parse and verify a cache file; raises a distinct error per failure mode."""
    lines = text.splitlines()
    if not lines:
        raise CacheVersionError("empty file is not a cache file")
    head = lines[0].split()
    if len(head) != 4 or head[0] != FORMAT_NAME:
        raise CacheVersionError(f"not a {FORMAT_NAME} file: {lines[0]!r}")
    if head[1] != FORMAT_VERSION:
        raise CacheVersionError(f"unsupported cache version {head[1]!r}")
    try:
        model = SurfaceModel(head[2], int(head[3]))
    except ValueError as exc:
        raise CacheFormatError(f"bad model in header: {lines[0]!r}") from exc

    if not lines[-1].startswith("checksum "):
        raise CacheChecksumError("missing checksum line")
    stated = lines[-1].split(" ", 1)[1].strip()
    body = "\n".join(lines[:-1]) + "\n"
    if stated != f"sha256:{_checksum(body)}":
        raise CacheChecksumError("checksum mismatch: file was modified or truncated")

    entries: dict[SeveriKey, int] = {}
    for lineno, line in enumerate(lines[1:-1], start=2):
        fields = line.split()
        if len(fields) != 7:
            raise CacheFormatError(f"line {lineno}: expected 7 fields, got {len(fields)}")
        try:
            d = DivClass(int(fields[0]), int(fields[1]))
            g = int(fields[2])
            alpha = TangencySeq.parse(fields[3])
            beta = TangencySeq.parse(fields[4])
            variant = fields[5]
            if variant not in VARIANTS:
                raise ValueError(f"unknown variant {variant!r}")
            value = int(fields[6])
            if value < 0:
                raise ValueError("negative count")
        except ValueError as exc:
            raise CacheFormatError(f"line {lineno}: {exc}") from exc
        entries[SeveriKey(model, d, g, alpha, beta, variant)] = value
    return model, entries


def export_cache(engine: SeveriEngine, model: SurfaceModel) -> str:
    return dump_text(model, dict(engine.memo_items()))


def import_cache(engine: SeveriEngine, text: str) -> tuple[SurfaceModel, int]:
    model, entries = parse_text(text)
    try:
        return model, engine.merge(entries)
    except ValueError as exc:
        # the file is well-formed but disagrees with computed values
        raise CacheFormatError(str(exc)) from exc


def save_cache(engine: SeveriEngine, path: str | Path, model: SurfaceModel) -> None:
    Path(path).write_text(export_cache(engine, model), encoding="utf-8")


def load_cache(engine: SeveriEngine, path: str | Path) -> tuple[SurfaceModel, int]:
    return import_cache(engine, Path(path).read_text(encoding="utf-8"))
