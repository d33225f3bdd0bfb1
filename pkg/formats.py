#!/usr/bin/env python3
"""
Text formats for magmas and switching functions
Loaders report the line and column of the first violation; serializers produce
the canonical text that input digests are computed over.

Magma file:
    elements: a b c d
    a a a a
    ...            (one row per element, header order)

Function file:
    vars: 2
    00 -> d
    01 -> a        (bit position 1 = variable 1)
"""

import hashlib
import logging
import os
import re
from typing import Any, Iterator, List, Optional, Tuple

from algebra import FiniteMagma
from errors import CarrierError, ParseError
from gsf import MAX_VARS, TruthTable, assignment_index, index_assignment

logger = logging.getLogger(__name__)

# Input files are small text tables; anything larger is a mistake
MAX_FILE_SIZE = 4 * 1024 * 1024

ROW_PATTERN = re.compile(r"^(?P<bits>\S+)\s*->\s*(?P<value>.*?)\s*$")
TOKEN = re.compile(r"\S+")


def _content_lines(text: str) -> Iterator[Tuple[int, str]]:
    """Yield (1-based line number, line) for lines that are neither blank nor comments"""
    for number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if stripped and not stripped.startswith("#"):
            yield number, line


def _tokens(line: str) -> List[Tuple[int, str]]:
    return [(m.start() + 1, m.group()) for m in TOKEN.finditer(line)]


def _header(lines: List[Tuple[int, str]], key: str, source: str) -> Tuple[int, str, int]:
    """Split off the `key:` header; returns (line number, rest, column of rest)"""
    if not lines:
        raise ParseError(f"Missing '{key}:' header", 1, 1, source)
    number, line = lines[0]
    indent = len(line) - len(line.lstrip())
    body = line.strip()
    if not body.startswith(f"{key}:"):
        raise ParseError(f"Expected '{key}:' header, got {body[:20]!r}", number, indent + 1, source)
    offset = indent + len(key) + 1
    return number, line[offset:], offset


def parse_magma(text: str, name: Optional[str] = None, source: str = "<input>") -> FiniteMagma:
    """
    Parse a magma file

    Args:
        text: File contents
        name: Magma name; defaults to the source stem
        source: Label used in error messages

    Returns:
        FiniteMagma with the header labels

    Raises:
        ParseError: unknown labels, duplicate labels, ragged rows, wrong row count
    """
    lines = list(_content_lines(text))
    number, rest, offset = _header(lines, "elements", source)
    labels = [(offset + col, tok) for col, tok in _tokens(rest)]
    if not labels:
        raise ParseError("Header lists no elements", number, offset + 1, source)
    index = {}
    for col, label in labels:
        if label in index:
            raise ParseError(f"Duplicate element label {label!r}", number, col, source)
        index[label] = len(index)
    size = len(labels)

    rows = lines[1:]
    if len(rows) > size:
        extra_line, extra = rows[size]
        raise ParseError(f"Unexpected row {size + 1}; the table has {size} elements",
                         extra_line, len(extra) - len(extra.lstrip()) + 1, source)
    table = []
    for number, line in rows:
        tokens = _tokens(line)
        if len(tokens) > size:
            raise ParseError(f"Row has {len(tokens)} entries, expected {size}", number, tokens[size][0], source)
        if len(tokens) < size:
            raise ParseError(f"Row has {len(tokens)} entries, expected {size}", number, len(line.rstrip()) + 1, source)
        row = []
        for col, tok in tokens:
            if tok not in index:
                raise ParseError(f"Unknown element {tok!r}", number, col, source)
            row.append(index[tok])
        table.append(row)
    if len(table) < size:
        last = lines[-1][0]
        raise ParseError(f"Expected {size} rows, got {len(table)}", last + 1, 1, source)

    if name is None:
        name = os.path.splitext(os.path.basename(source))[0] if source != "<input>" else "magma"
    return FiniteMagma(name, table, [label for _, label in labels])


def serialize_magma(m: FiniteMagma) -> str:
    lines = ["elements: " + " ".join(m.labels)]
    for row in m.table.tolist():
        lines.append(" ".join(m.labels[v] for v in row))
    return "\n".join(lines) + "\n"


def parse_function(text: str, op: Any, source: str = "<input>") -> TruthTable:
    """
    Parse a function file, reading each value through op.parse_value

    Raises:
        ParseError: bad header, malformed or duplicate rows, wrong bit width,
            values outside the carrier, missing rows
    """
    lines = list(_content_lines(text))
    number, rest, offset = _header(lines, "vars", source)
    try:
        n = int(rest.strip())
    except ValueError:
        raise ParseError(f"Variable count {rest.strip()!r} is not an integer", number, offset + 1, source)
    if not 1 <= n <= MAX_VARS:
        raise ParseError(f"Variable count must be in 1..{MAX_VARS}, got {n}", number, offset + 1, source)

    values: List[Any] = [None] * (2 ** n)
    seen = [False] * (2 ** n)
    for number, line in lines[1:]:
        match = ROW_PATTERN.match(line.strip())
        indent = len(line) - len(line.lstrip())
        if match is None:
            raise ParseError("Expected '<bits> -> <value>'", number, indent + 1, source)
        bits = match.group("bits")
        if len(bits) != n or set(bits) - {"0", "1"}:
            raise ParseError(f"Assignment {bits!r} is not {n} binary digits", number, indent + 1, source)
        k = assignment_index([int(b) for b in bits])
        if seen[k]:
            raise ParseError(f"Duplicate row for {bits}", number, indent + 1, source)
        value_col = indent + match.start("value") + 1
        if not match.group("value"):
            raise ParseError(f"Missing value for {bits}", number, value_col, source)
        try:
            values[k] = op.parse_value(match.group("value"))
        except CarrierError as e:
            raise ParseError(str(e), number, value_col, source)
        seen[k] = True

    missing = [k for k in range(2 ** n) if not seen[k]]
    if missing:
        absent = "".join(str(b) for b in index_assignment(missing[0], n))
        last = lines[-1][0]
        raise ParseError(f"Missing row for {absent} ({len(missing)} rows missing)", last + 1, 1, source)
    return TruthTable(n, values)


def serialize_function(f: TruthTable, op: Any) -> str:
    lines = [f"vars: {f.n}"]
    for k in range(2 ** f.n):
        bits = "".join(str(b) for b in index_assignment(k, f.n))
        lines.append(f"{bits} -> {op.format_value(f[k])}")
    return "\n".join(lines) + "\n"


def digest(text: str) -> str:
    return "sha256:" + hashlib.sha256(text.encode("utf-8")).hexdigest()


def operation_digest(op: Any) -> str:
    """Digest of a finite table's canonical text, or of a builtin's name"""
    if isinstance(op, FiniteMagma):
        return digest(serialize_magma(op))
    return digest(f"builtin: {op.name}\n")


def _read_text(path: str) -> str:
    if not os.path.exists(path):
        raise ParseError("File does not exist", 1, 1, path)
    size = os.path.getsize(path)
    if size > MAX_FILE_SIZE:
        raise ParseError(f"File too large: {size / (1024 * 1024):.1f}MB (max: {MAX_FILE_SIZE // (1024 * 1024)}MB)",
                         1, 1, path)
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except UnicodeDecodeError as e:
        raise ParseError(f"Not UTF-8 text: {e.reason}", 1, 1, path)


def load_magma(path: str, name: Optional[str] = None) -> FiniteMagma:
    m = parse_magma(_read_text(path), name=name, source=path)
    logger.info(f"Loaded magma {m.name} of size {m.size} from {path}")
    return m


def load_function(path: str, op: Any) -> TruthTable:
    f = parse_function(_read_text(path), op, source=path)
    logger.info(f"Loaded function of {f.n} variables from {path}")
    return f
