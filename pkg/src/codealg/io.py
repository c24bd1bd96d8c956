"""Text formats for codes and structure parameters."""

from __future__ import annotations

import re
from pathlib import Path

from .algebra import StructureParams, check_param_domain, constant_params
from .codes import LinearCode, code_from_generators, parse_word
from .errors import CodeAlgebraError
from .scalar import is_squarefree, parse_scalar


class ParseError(CodeAlgebraError, ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def _strip(line: str) -> str:
    return line.split("#", 1)[0].rstrip()


def parse_code_text(text: str) -> LinearCode:
    """``n k`` on the first line, then ``k`` rows of ``0``/``1`` of length ``n``."""
    header = None
    rows: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if not line.strip():
            continue
        col = len(line) - len(line.lstrip()) + 1
        body = line.strip()
        if header is None:
            m = re.fullmatch(r"(\d+)\s+(\d+)", body)
            if not m:
                raise ParseError("expected header 'n k'", lineno, col)
            header = (int(m.group(1)), int(m.group(2)))
            if header[0] < 1:
                raise ParseError("length must be positive", lineno, col)
            continue
        for off, ch in enumerate(body):
            if ch not in "01":
                raise ParseError(f"unexpected character {ch!r}", lineno, col + off)
        if len(body) != header[0]:
            raise ParseError(f"row has length {len(body)}, expected {header[0]}", lineno, col)
        if len(rows) == header[1]:
            raise ParseError(f"more than k = {header[1]} rows", lineno, col)
        rows.append(body)
    if header is None:
        raise ParseError("empty code file", 1)
    if len(rows) != header[1]:
        raise ParseError(f"expected {header[1]} rows, found {len(rows)}", len(text.splitlines()) or 1)
    if not rows:
        return code_from_generators([], n=header[0])
    return code_from_generators(rows)


def read_code(path) -> LinearCode:
    return parse_code_text(Path(path).read_text())


_BASE = re.compile(r"^(?P<key>[abcd])\s*=\s*(?P<val>.+)$")
_OVERRIDE = re.compile(r"^(?P<key>[abc])\[\s*(?P<x>[^,\]]+?)\s*,\s*(?P<y>[^\]]+?)\s*\]\s*=\s*(?P<val>.+)$")


def parse_params_text(text: str, code: LinearCode):
    """Returns ``(StructureParams, disc)``; overrides use 1-based coordinates."""
    base: dict = {}
    disc = 1
    overrides = {"a": {}, "b": {}, "c": {}}
    n = code.n
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw).strip()
        if not line:
            continue
        m = _BASE.match(line)
        o = _OVERRIDE.match(line) if m is None else None
        if m is None and o is None:
            raise ParseError(f"cannot read {line!r}", lineno)
        val_text = (m or o).group("val")
        col = raw.find(val_text) + 1
        if m is not None and m.group("key") == "d":
            try:
                disc = int(val_text)
            except ValueError:
                raise ParseError("d must be an integer", lineno, col) from None
            if disc != 1 and not is_squarefree(disc):
                raise ParseError("d must be squarefree", lineno, col)
            continue
        try:
            val = parse_scalar(val_text)
        except ValueError as exc:
            raise ParseError(str(exc), lineno, col) from None
        if m is not None:
            base[m.group("key")] = val
            continue
        key, x, y = o.group("key"), o.group("x"), o.group("y")
        try:
            if key == "b":
                k = (parse_word(x, n), parse_word(y, n))
            else:
                i = int(x)
                if not 1 <= i <= n:
                    raise ValueError(f"coordinate {i} out of range 1..{n}")
                k = (i - 1, parse_word(y, n))
        except (ValueError, CodeAlgebraError) as exc:
            raise ParseError(str(exc), lineno, raw.find("[") + 2) from None
        overrides[key][k] = val
    missing = [k for k in "abc" if k not in base]
    if missing:
        raise ParseError(f"missing base value for {', '.join(missing)}", 1)
    params = constant_params(code, base["a"], base["b"], base["c"]).with_overrides(**overrides)
    check_param_domain(code, params)
    return params, disc


def read_params(path, code: LinearCode):
    return parse_params_text(Path(path).read_text(), code)


def format_code(code: LinearCode) -> str:
    lines = [f"{code.n} {code.k}"] + [code.bits(g) for g in code.basis]
    return "\n".join(lines) + "\n"
