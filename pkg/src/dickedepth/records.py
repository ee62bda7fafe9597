"""Shot-count records from number-population experiments.

Two on-disk layouts are supported. CSV::

    # N=100 shots=1000
    r,count
    50,510
    49,210

JSON lines: a metadata object ``{"N": 100, "shots": 1000}`` followed by
one ``{"r": ..., "count": ...}`` object per bin.
"""

from __future__ import annotations

import csv
import io
import json
import re
from dataclasses import dataclass, field
from types import MappingProxyType

from .errors import ParseError, ValidationError

__all__ = ["MeasurementRecord", "parse_record", "dump_record", "FORMATS"]

FORMATS = ("csv", "jsonl")

_HEADER = re.compile(r"^#\s*(.*)$")
_KEYVAL = re.compile(r"(\w+)\s*=\s*(\S+)")


@dataclass(frozen=True)
class MeasurementRecord:
    N: int
    shots: int
    counts: MappingProxyType = field(default_factory=dict)

    def __post_init__(self):
        counts = {int(r): int(c) for r, c in dict(self.counts).items()}
        if self.N < 1:
            raise ValidationError(f"N must be positive, got {self.N}")
        if self.shots < 0:
            raise ValidationError(f"shots must be non-negative, got {self.shots}")
        for r, c in counts.items():
            if not 0 <= r <= self.N:
                raise ValidationError(f"excitation r={r} outside [0, {self.N}]")
            if c < 0:
                raise ValidationError(f"negative count {c} for r={r}")
        if sum(counts.values()) > self.shots:
            raise ValidationError(f"counts total {sum(counts.values())} exceeds shots={self.shots}")
        object.__setattr__(self, "counts", MappingProxyType(dict(sorted(counts.items()))))

    def total(self, target) -> int:
        """Summed count over an excitation number or a collection of them."""
        rs = (target,) if isinstance(target, int) else target
        return sum(self.counts.get(r, 0) for r in rs)

    def __eq__(self, other):
        if not isinstance(other, MeasurementRecord):
            return NotImplemented
        return (self.N, self.shots, dict(self.counts)) == (other.N, other.shots, dict(other.counts))

    def __hash__(self):
        return hash((self.N, self.shots, tuple(self.counts.items())))


def _int_field(text, line, column):
    if isinstance(text, int) and not isinstance(text, bool):
        return text
    try:
        return int(text.strip())
    except (ValueError, AttributeError, TypeError):
        raise ParseError(f"expected an integer, got {text!r}", line, column) from None


def _add_bin(N, counts, r, c, line):
    if not 0 <= r <= N:
        raise ParseError(f"row r={r} is outside [0, {N}]", line, "r")
    if c < 0:
        raise ParseError(f"negative count {c}", line, "count")
    if r in counts:
        raise ParseError(f"duplicate row for r={r}", line, "r")
    counts[r] = c


def _parse_csv(lines):
    meta = None
    counts: dict[int, int] = {}
    header_allowed = True
    for lineno, raw in enumerate(lines, start=1):
        text = raw.strip()
        if not text:
            continue
        if meta is None:
            m = _HEADER.match(text)
            if not m:
                raise ParseError("expected header '# N=<int> shots=<int>'", lineno)
            fields = dict(_KEYVAL.findall(m.group(1)))
            missing = {"N", "shots"} - set(fields)
            if missing:
                raise ParseError(f"header lacks {', '.join(sorted(missing))}", lineno)
            meta = (_int_field(fields["N"], lineno, "N"), _int_field(fields["shots"], lineno, "shots"))
            continue
        if text.startswith("#"):
            continue
        row = next(csv.reader([text]))
        if header_allowed and [c.strip().lower() for c in row] == ["r", "count"]:
            header_allowed = False
            continue
        header_allowed = False
        if len(row) != 2:
            raise ParseError(f"expected 2 fields 'r,count', got {len(row)}", lineno)
        _add_bin(meta[0], counts, _int_field(row[0], lineno, "r"), _int_field(row[1], lineno, "count"), lineno)
    if meta is None:
        raise ParseError("empty input: missing '# N=<int> shots=<int>' header", 1)
    return meta, counts


def _parse_jsonl(lines):
    meta = None
    counts: dict[int, int] = {}
    for lineno, raw in enumerate(lines, start=1):
        text = raw.strip()
        if not text:
            continue
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", lineno, exc.colno) from None
        if not isinstance(obj, dict):
            raise ParseError("each line must be a JSON object", lineno)
        if meta is None:
            missing = {"N", "shots"} - set(obj)
            if missing:
                raise ParseError(f"metadata object lacks {', '.join(sorted(missing))}", lineno)
            meta = (_int_field(obj["N"], lineno, "N"), _int_field(obj["shots"], lineno, "shots"))
            continue
        missing = {"r", "count"} - set(obj)
        if missing:
            raise ParseError(f"bin object lacks {', '.join(sorted(missing))}", lineno)
        for key in ("r", "count"):
            if isinstance(obj[key], bool) or not isinstance(obj[key], int):
                raise ParseError(f"expected an integer, got {obj[key]!r}", lineno, key)
        _add_bin(meta[0], counts, obj["r"], obj["count"], lineno)
    if meta is None:
        raise ParseError("empty input: missing metadata object", 1)
    return meta, counts


def parse_record(stream, format: str = "csv") -> MeasurementRecord:
    """Read and validate a record from a text stream or string."""
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    if format not in FORMATS:
        raise ValueError(f"unknown record format {format!r}; expected one of {FORMATS}")
    parser = _parse_csv if format == "csv" else _parse_jsonl
    (N, shots), counts = parser(stream)
    return MeasurementRecord(N, shots, counts)


def dump_record(record: MeasurementRecord, stream=None, format: str = "csv"):
    """Write ``record`` in the requested layout; returns the text if no stream."""
    out = io.StringIO() if stream is None else stream
    if format == "csv":
        out.write(f"# N={record.N} shots={record.shots}\n")
        out.write("r,count\n")
        for r, c in record.counts.items():
            out.write(f"{r},{c}\n")
    elif format == "jsonl":
        out.write(json.dumps({"N": record.N, "shots": record.shots}) + "\n")
        for r, c in record.counts.items():
            out.write(json.dumps({"r": r, "count": c}) + "\n")
    else:
        raise ValueError(f"unknown record format {format!r}; expected one of {FORMATS}")
    if stream is None:
        return out.getvalue()
    return None
