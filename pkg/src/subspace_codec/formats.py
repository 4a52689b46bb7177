"""Text formats: field literals, matrix files and code files.

Field literal::

    gf(16)                   default modulus
    gf(2,4,poly=0b10011)     modulus as an integer whose base-p digits are its
                             coefficients, little-endian in x

Matrix file: a header ``gf=<literal> rows=<r> cols=<c>`` and then one row
per line, entries as integer encodings separated by spaces.

Code file: a header ``N=<N> q=<q> count=<count>`` (optionally followed by
``l=``, ``logq=`` and ``D=``), then each codeword's RREF basis as a matrix
block.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import IO, Iterator

import numpy as np

from .errors import FormatError
from .finite_field import FieldSpec, field_create, galois_field
from .gabidulin import CodeType, SubspaceCode
from .gf_linalg import MatrixGF
from .subspace import subspace_from_rows

_GF_RE = re.compile(r"^gf\(\s*(\d+)\s*(?:,\s*(\d+)\s*(?:,\s*poly\s*=\s*(0[bx][0-9a-fA-F]+|\d+)\s*)?)?\)$")


def parse_field(text: str) -> FieldSpec:
    m = _GF_RE.match(text.strip().lower())
    if not m:
        raise FormatError(f"bad field literal {text!r}")
    a, e, poly = m.groups()
    if e is None:
        return galois_field(int(a))
    return field_create(int(a), int(e), None if poly is None else int(poly, 0))


def field_literal(field: FieldSpec) -> str:
    if field.base is None:
        return f"gf({field.p})"
    if field.base.base is not None:
        raise FormatError(f"no literal for tower field {field!r}")
    if field == galois_field(field.order):
        return f"gf({field.order})"
    poly = 0
    for c in reversed(field.modulus):
        poly = poly * field.p + c
    return f"gf({field.p},{field.e},poly={bin(poly) if field.p == 2 else poly})"


def _header(line: str) -> dict[str, str]:
    out = {}
    for tok in line.split():
        if "=" not in tok:
            raise FormatError(f"bad header token {tok!r}")
        k, v = tok.split("=", 1)
        out[k] = v
    return out


def format_matrix(M: MatrixGF) -> str:
    lines = [f"gf={field_literal(M.field)} rows={M.rows} cols={M.cols}"]
    lines += [" ".join(str(x) for x in row) for row in M.tolist()]
    return "\n".join(lines) + "\n"


def _read_matrix(lines: Iterator[str], default_field: FieldSpec | None) -> MatrixGF:
    try:
        head = _header(next(lines))
    except StopIteration:
        raise FormatError("missing matrix header") from None
    try:
        r, c = int(head["rows"]), int(head["cols"])
    except (KeyError, ValueError):
        raise FormatError("matrix header needs rows= and cols=") from None
    if "gf" in head:
        field = parse_field(head["gf"])
    elif default_field is not None:
        field = default_field
    else:
        raise FormatError("matrix header has no gf= and no default field was given")
    data = []
    for _ in range(r):
        try:
            row = [int(x) for x in next(lines).split()]
        except StopIteration:
            raise FormatError(f"expected {r} rows") from None
        except ValueError as exc:
            raise FormatError(str(exc)) from None
        if len(row) != c:
            raise FormatError(f"row of length {len(row)}, expected {c}")
        data.append(row)
    return MatrixGF(field, np.array(data, dtype=np.int64).reshape(r, c))


def _content_lines(text: str) -> Iterator[str]:
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            yield line


def parse_matrix(text: str, default_field: FieldSpec | None = None) -> MatrixGF:
    return _read_matrix(_content_lines(text), default_field)


def read_matrix(path, default_field: FieldSpec | None = None) -> MatrixGF:
    with open(path, encoding="utf-8") as fh:
        return parse_matrix(fh.read(), default_field)


def write_matrix(M: MatrixGF, fh: IO[str]) -> None:
    fh.write(format_matrix(M))


def format_code(code: SubspaceCode) -> str:
    t = code.declared_type
    head = f"N={code.ambient_dim} q={code.field.order} count={len(code)}"
    head += f" l={t.l} logq={t.logq_size}"
    if t.D is not None:
        head += f" D={t.D}"
    return head + "\n" + "".join(format_matrix(c.basis) for c in code.codewords)


def parse_code(text: str) -> SubspaceCode:
    lines = _content_lines(text)
    try:
        head = _header(next(lines))
        N, q, count = int(head["N"]), int(head["q"]), int(head["count"])
    except (StopIteration, KeyError, ValueError):
        raise FormatError("code header needs N=, q= and count=") from None
    field = galois_field(q)
    words = []
    for _ in range(count):
        M = _read_matrix(lines, field)
        if M.cols != N:
            raise FormatError(f"codeword with {M.cols} columns in a code with N={N}")
        field = M.field
        words.append(subspace_from_rows(M))
    declared = None
    if "l" in head and "logq" in head:
        try:
            logq = Fraction(head["logq"])
        except ValueError:
            logq = float(head["logq"])
        D = int(head["D"]) if "D" in head else None
        declared = CodeType(N, int(head["l"]), logq, D)
    return SubspaceCode(N, field, tuple(words), declared)


def read_code(path) -> SubspaceCode:
    with open(path, encoding="utf-8") as fh:
        return parse_code(fh.read())
