"""Catalog persistence: bit-exact text files of Carmichael numbers.

Format: UTF-8 text.  Header lines start with '#' and carry `key: value`
provenance pairs (generator version, limit, factor-count range, completion
mode, count).  Each record line is the decimal value of N, a space, then
its ascending prime factors separated by single spaces.  Records are
sorted ascending, one per line, no trailing whitespace.  The writer emits
no timestamps, so identical inputs produce byte-identical files.  Files
ending in .gz are transparently decompressed on read.
"""

from __future__ import annotations

import gzip
import io
from dataclasses import dataclass, field
from pathlib import Path

from .korselt import CarmichaelEntry

__all__ = ["Catalog", "CatalogFormatError", "write_catalog", "read_catalog", "merge"]


class CatalogFormatError(Exception):
    pass


@dataclass
class Catalog:
    """Ascending, deduplicated Carmichael entries plus provenance."""

    entries: list[CarmichaelEntry] = field(default_factory=list)
    provenance: dict[str, str] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    @property
    def limit(self) -> int | None:
        """Bound below which this catalog is complete, when recorded."""
        raw = self.provenance.get("limit")
        return int(raw) if raw is not None else None

    def values(self) -> list[int]:
        return [e.value for e in self.entries]


def write_catalog(cat: Catalog, destination: str | Path) -> None:
    path = Path(destination)
    lines = ["# carmichael catalog"]
    lines += [f"# {k}: {v}" for k, v in cat.provenance.items()]
    lines += [str(e) for e in cat.entries]
    data = "\n".join(lines) + "\n"
    if path.suffix == ".gz":
        # mtime zero and no embedded name: identical catalogs compress to
        # byte-identical files wherever they are written
        with open(path, "wb") as raw:
            with gzip.GzipFile(
                filename="", fileobj=raw, mode="wb", mtime=0
            ) as fh:
                fh.write(data.encode("utf-8"))
    else:
        path.write_text(data, encoding="utf-8")


def _open_text(source: str | Path) -> io.TextIOBase:
    path = Path(source)
    if path.suffix == ".gz":
        return gzip.open(path, "rt", encoding="utf-8")
    return open(path, encoding="utf-8")


def read_catalog(source: str | Path, validate: bool = False) -> Catalog:
    """Parse a catalog file; optionally re-verify every entry.

    With validate=True each record is checked against the full entry
    invariants (ascending prime factors, correct product, the Korselt
    divisibility conditions), which makes corrupted records loud.
    """
    entries: list[CarmichaelEntry] = []
    provenance: dict[str, str] = {}
    last = 0
    with _open_text(source) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line:
                continue
            if line.startswith("#"):
                body = line.lstrip("#").strip()
                if ":" in body:
                    key, _, value = body.partition(":")
                    provenance[key.strip()] = value.strip()
                continue
            try:
                numbers = [int(tok) for tok in line.split()]
            except ValueError as exc:
                raise CatalogFormatError(f"line {lineno}: {exc}") from None
            if len(numbers) < 2:
                raise CatalogFormatError(
                    f"line {lineno}: expected a value and its factors"
                )
            entry = CarmichaelEntry(numbers[0], tuple(numbers[1:]))
            if entry.value <= last:
                raise CatalogFormatError(
                    f"line {lineno}: records not strictly ascending"
                )
            last = entry.value
            if validate:
                try:
                    entry.validate()
                except ValueError as exc:
                    raise CatalogFormatError(f"line {lineno}: {exc}") from None
            entries.append(entry)
    return Catalog(entries, provenance)


def merge(catalogs: list[Catalog]) -> Catalog:
    """Sorted union; conflicting factorizations for one N are an error."""
    combined = sorted(
        (e for cat in catalogs for e in cat.entries), key=lambda e: e.value
    )
    entries: list[CarmichaelEntry] = []
    for entry in combined:
        if entries and entries[-1].value == entry.value:
            if entries[-1].factors != entry.factors:
                raise CatalogFormatError(
                    f"conflicting factorizations for {entry.value}"
                )
            continue
        entries.append(entry)
    limits = [c.limit for c in catalogs if c.limit is not None]
    provenance: dict[str, str] = {"mode": "merged"}
    if limits and len(limits) == len(catalogs):
        provenance["limit"] = str(min(limits))
    provenance["count"] = str(len(entries))
    return Catalog(entries, provenance)
