"""FASTA parsing."""

import gzip
import io
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, List, TextIO, Union

from ..errors import ParseError


@dataclass(frozen=True)
class SequenceRecord:
    """One FASTA entry: accession, free-text description, upper-cased residues."""
    id: str
    description: str
    residues: str


def parse_fasta(stream: Union[str, TextIO, Iterable[str]]) -> List[SequenceRecord]:
    """Parse FASTA text into records in file order.

    Args:
        stream: FASTA text, or any iterable of lines (open file, list)

    Returns:
        One record per '>' header with whitespace stripped and letters upper-cased

    Raises:
        ParseError: Empty input, sequence data before the first header,
            or a header without an id or without residues
    """
    if isinstance(stream, str):
        stream = io.StringIO(stream)

    records: List[SequenceRecord] = []
    header = None
    chunks: List[str] = []

    def flush() -> None:
        ident, _, description = header.partition(" ")
        residues = "".join(chunks).upper()
        if not ident:
            raise ParseError("FASTA header without an identifier")
        if not residues:
            raise ParseError(f"FASTA record {ident!r} has no residues")
        records.append(SequenceRecord(ident, description.strip(), residues))

    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith(";"):
            continue
        if line.startswith(">"):
            if header is not None:
                flush()
            header = line[1:].strip()
            chunks = []
        else:
            if header is None:
                raise ParseError(f"Line {lineno}: sequence data before the first '>' header")
            chunks.append("".join(line.split()))

    if header is None:
        raise ParseError("FASTA input is empty")
    flush()
    return records


def read_fasta(path: Union[str, Path]) -> List[SequenceRecord]:
    """Read a FASTA file; names ending in .gz are decompressed on the fly."""
    path = Path(path)
    if path.suffix == ".gz":
        with gzip.open(path, "rt", encoding="utf-8") as f:
            return parse_fasta(f)
    with open(path, "r", encoding="utf-8") as f:
        return parse_fasta(f)


def write_fasta(records: Iterable[SequenceRecord], path: Union[str, Path], width: int = 60) -> None:
    """Write records as FASTA with fixed line width."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        for rec in records:
            title = f"{rec.id} {rec.description}".rstrip()
            f.write(f">{title}\n")
            for i in range(0, len(rec.residues), width):
                f.write(rec.residues[i:i + width] + "\n")
