"""The ``.qcirc`` line format and an ASCII circuit renderer.

Format (LF-terminated lines, single-space separated fields)::

    qcirc 1
    wires <N>
    init <wire> <0|1>
    gate <H|X|Y|Z|S|T> <target> [ctrl <wire>:<0|1> ...]
    unitary <k> <wire,...> <hex> [ctrl <wire>:<0|1> ...]
    measure <wire,...>
    discard <wire,...>
    comment <quoted>
    label <wire> <quoted>
    output <wire,...>

``<hex>`` is the row-major matrix as little-endian float64 (re, im) pairs,
so floats round-trip bit for bit. ``<quoted>`` is a JSON string literal.
"""
from __future__ import annotations

import json
from typing import Sequence

import numpy as np

from .circuit import (GATE_NAMES, Circuit, Comment, Control, CustomUnitary, Discard, InitQubit,
                      Label, Measure, NamedGate, op_wires, validate)
from .linalg import MAX_UNITARY_WIRES, SWAP, SquareUnitary

VERSION = 1


class ParseError(ValueError):
    def __init__(self, line: int, col: int, message: str, kind: str = "syntax"):
        self.line, self.col, self.kind = line, col, kind
        super().__init__(f"line {line}, col {col}: {kind} error: {message}")


# -- writer -------------------------------------------------------------------

def _wire_list(wires: Sequence[int]) -> str:
    return ",".join(str(w) for w in wires)


def _ctrl(controls: Sequence[Control]) -> str:
    return "".join(f" ctrl {c.wire}:{c.desired}" for c in controls)


def _quote(text: str) -> str:
    return json.dumps(text, ensure_ascii=False)


def _op_line(op) -> str:
    if isinstance(op, InitQubit):
        return f"init {op.wire} {op.value}"
    if isinstance(op, NamedGate):
        return f"gate {op.name} {op.target}{_ctrl(op.controls)}"
    if isinstance(op, CustomUnitary):
        data = np.ascontiguousarray(op.unitary.matrix, dtype="<c16").tobytes().hex()
        return f"unitary {op.unitary.k} {_wire_list(op.wires)} {data}{_ctrl(op.controls)}"
    if isinstance(op, Measure):
        return f"measure {_wire_list(op.wires)}"
    if isinstance(op, Discard):
        return f"discard {_wire_list(op.wires)}"
    if isinstance(op, Comment):
        return f"comment {_quote(op.text)}"
    if isinstance(op, Label):
        return f"label {op.wire} {_quote(op.text)}"
    raise TypeError(f"unknown op {op!r}")


def write_lines(c: Circuit) -> str:
    lines = [f"qcirc {VERSION}", f"wires {c.wire_count}"]
    lines.extend(_op_line(op) for op in c.ops)
    out = _wire_list(c.output)
    lines.append(f"output {out}" if out else "output")
    return "\n".join(lines) + "\n"


# -- parser -------------------------------------------------------------------

class _Line:
    """Tokenizer for one line that remembers 1-based column offsets."""

    def __init__(self, text: str, lineno: int):
        self.text, self.lineno = text, lineno
        self.tokens: list[tuple[str, int]] = []
        col = 1
        for part in text.split(" "):
            self.tokens.append((part, col))
            col += len(part) + 1

    def fail(self, col: int, msg: str) -> ParseError:
        return ParseError(self.lineno, col, msg)

    def check_fields(self) -> None:
        for tok, col in self.tokens:
            if tok == "":
                raise self.fail(col, "empty field (fields are separated by exactly one space)")

    def rest_after(self, count: int) -> tuple[str, int]:
        """Raw text after the first ``count`` fields, and its column."""
        col = self.tokens[count][1] if count < len(self.tokens) else len(self.text) + 1
        return self.text[col - 1:], col


def _int(line: _Line, tok: str, col: int, what: str) -> int:
    if not tok.isdigit() or not tok.isascii():
        raise line.fail(col, f"expected {what}, got {tok!r}")
    return int(tok)


def _bit(line: _Line, tok: str, col: int) -> int:
    if tok not in ("0", "1"):
        raise line.fail(col, f"expected 0 or 1, got {tok!r}")
    return int(tok)


def _wires(line: _Line, tok: str, col: int, allow_empty: bool = False) -> tuple[int, ...]:
    if tok == "":
        if allow_empty:
            return ()
        raise line.fail(col, "expected a wire list")
    out = []
    for part in tok.split(","):
        out.append(_int(line, part, col, "wire index"))
        col += len(part) + 1
    return tuple(out)


def _controls(line: _Line, tokens: list[tuple[str, int]]) -> tuple[Control, ...]:
    out = []
    if len(tokens) % 2:
        raise line.fail(tokens[-1][1], "dangling field after controls")
    for i in range(0, len(tokens), 2):
        (kw, kcol), (spec, scol) = tokens[i], tokens[i + 1]
        if kw != "ctrl":
            raise line.fail(kcol, f"expected 'ctrl', got {kw!r}")
        wire, sep, bit = spec.partition(":")
        if not sep:
            raise line.fail(scol, f"expected <wire>:<0|1>, got {spec!r}")
        out.append(Control(_int(line, wire, scol, "wire index"), _bit(line, bit, scol + len(wire) + 1)))
    return tuple(out)


def _quoted(line: _Line, text: str, col: int) -> str:
    try:
        value = json.loads(text)
    except json.JSONDecodeError as exc:
        raise line.fail(col + exc.pos, f"bad quoted string: {exc.msg}") from None
    if not isinstance(value, str) or not text.startswith('"'):
        raise line.fail(col, "expected a quoted string")
    return value


def _matrix(line: _Line, k: int, tok: str, col: int) -> SquareUnitary:
    dim = 1 << k
    if len(tok) != 32 * dim * dim:
        raise line.fail(col, f"expected {32 * dim * dim} hex digits for a {dim}x{dim} matrix, got {len(tok)}")
    try:
        raw = bytes.fromhex(tok)
    except ValueError:
        bad = next(i for i, ch in enumerate(tok) if ch not in "0123456789abcdefABCDEF")
        raise line.fail(col + bad, "malformed hex float data") from None
    m = np.frombuffer(raw, dtype="<c16").reshape(dim, dim)
    if not np.all(np.isfinite(m)):
        raise line.fail(col, "matrix entries must be finite")
    try:
        return SquareUnitary(m)
    except ValueError as exc:
        raise ParseError(line.lineno, col, str(exc), "semantic") from None


def _parse_op(line: _Line):
    toks = line.tokens
    head, _ = toks[0]
    nargs = len(toks) - 1

    def need(count: int):
        if nargs < count:
            raise line.fail(len(line.text) + 1, f"'{head}' needs {count} field(s)")

    if head in ("comment", "label"):
        if head == "comment":
            text, col = line.rest_after(1)
            return Comment(_quoted(line, text, col))
        need(2)
        wire = _int(line, *toks[1], "wire index")
        text, col = line.rest_after(2)
        return Label(wire, _quoted(line, text, col))

    line.check_fields()
    if head == "init":
        need(2)
        if nargs > 2:
            raise line.fail(toks[3][1], "unexpected field")
        return InitQubit(_int(line, *toks[1], "wire index"), _bit(line, *toks[2]))
    if head == "gate":
        need(2)
        name, ncol = toks[1]
        if name not in GATE_NAMES:
            raise line.fail(ncol, f"unknown gate {name!r}; expected one of {', '.join(GATE_NAMES)}")
        return NamedGate(name, _int(line, *toks[2], "wire index"), _controls(line, toks[3:]))
    if head == "unitary":
        need(3)
        k = _int(line, *toks[1], "wire count")
        if not 1 <= k <= MAX_UNITARY_WIRES:
            raise line.fail(toks[1][1], f"unitary size {k} outside 1..{MAX_UNITARY_WIRES}")
        wires = _wires(line, *toks[2])
        if len(wires) != k:
            raise line.fail(toks[2][1], f"{k}-wire unitary given {len(wires)} wires")
        u = _matrix(line, k, *toks[3])
        return CustomUnitary(u, wires, _controls(line, toks[4:]))
    if head in ("measure", "discard"):
        need(1)
        if nargs > 1:
            raise line.fail(toks[2][1], "unexpected field")
        wires = _wires(line, *toks[1])
        return Measure(wires) if head == "measure" else Discard(wires)
    raise line.fail(1, f"unknown directive {head!r}")


def parse_lines(text: str) -> Circuit:
    """Parse ``.qcirc`` text; raises ParseError with line and column.

    A file with no content at all is the empty circuit.
    """
    if text == "":
        return Circuit()
    if text.endswith("\n"):
        text = text[:-1]
    raw = text.split("\n")
    lines = [_Line(t, i + 1) for i, t in enumerate(raw)]

    first = lines[0]
    first.check_fields()
    if first.tokens[0][0] != "qcirc" or len(first.tokens) != 2:
        raise first.fail(1, "expected header 'qcirc <version>'")
    version = _int(first, *first.tokens[1], "version")
    if version != VERSION:
        raise first.fail(first.tokens[1][1], f"unsupported version {version}")
    if len(lines) < 3:
        raise ParseError(len(lines) + 1, 1, "missing 'wires' header or 'output' footer")

    second = lines[1]
    second.check_fields()
    if second.tokens[0][0] != "wires" or len(second.tokens) != 2:
        raise second.fail(1, "expected header 'wires <count>'")
    n = _int(second, *second.tokens[1], "wire count")

    last = lines[-1]
    if last.tokens[0][0] != "output":
        raise last.fail(1, "expected footer 'output <wire,...>'")
    if len(last.tokens) > 2:
        raise last.fail(last.tokens[2][1], "unexpected field")
    output = _wires(last, last.tokens[1][0], last.tokens[1][1], allow_empty=True) \
        if len(last.tokens) == 2 else ()

    ops, op_lines = [], []
    for line in lines[2:-1]:
        if line.tokens[0][0] == "output":
            raise line.fail(1, "'output' must be the last line")
        ops.append(_parse_op(line))
        op_lines.append(line.lineno)

    c = Circuit.from_ops(n, ops, output)
    errs = validate(c)
    if errs:
        e = errs[0]
        lineno = op_lines[e.op_index] if e.op_index >= 0 else last.lineno
        raise ParseError(lineno, 1, e.message, "semantic")
    return c


# -- ASCII rendering ----------------------------------------------------------

_FILL = {"uninit": " ", "quantum": "─", "measured": "═", "gone": " "}


def _op_cells(op) -> tuple[dict[int, str], dict[int, str]]:
    """Cells for the wires an op touches, and the state each wire moves to."""
    cells: dict[int, str] = {}
    moves: dict[int, str] = {}
    if isinstance(op, InitQubit):
        cells[op.wire] = f"|{op.value}⟩"
        moves[op.wire] = "quantum"
    elif isinstance(op, NamedGate):
        cells[op.target] = f"[{op.name}]"
    elif isinstance(op, CustomUnitary):
        mark = "×" if op.unitary == SWAP and not op.controls else "[U]"
        for w in op.wires:
            cells[w] = mark
    elif isinstance(op, Measure):
        for w in op.wires:
            cells[w] = "[M]"
            moves[w] = "measured"
    elif isinstance(op, Discard):
        for w in op.wires:
            cells[w] = "⏚"
            moves[w] = "gone"
    elif isinstance(op, Label):
        cells[op.wire] = f"«{op.text}»"
    if isinstance(op, (NamedGate, CustomUnitary)):
        for c in op.controls:
            cells[c.wire] = "●" if c.desired else "○"
    return cells, moves


def _layout(c: Circuit) -> list[dict]:
    """Greedily pack ops into columns; an op joins the last column when its
    vertical span is disjoint from everything already there."""
    n = c.wire_count
    columns: list[dict] = []
    for op in c.ops:
        cells, moves = _op_cells(op)
        involved = op_wires(op)
        if isinstance(op, Comment):
            cells = {w: "┆" for w in range(n)}
            span = set(range(n))
            links: set[int] = set()
        elif len(involved) > 1:
            span = set(range(min(involved), max(involved) + 1))
            links = span - set(involved)
        else:
            span, links = set(involved), set()
        last = columns[-1] if columns else None
        if last is not None and not last["blocked"] and not isinstance(op, Comment) \
                and not span & last["span"]:
            last["cells"].update(cells)
            last["moves"].update(moves)
            last["links"] |= links
            last["span"] |= span
        else:
            columns.append({"cells": dict(cells), "moves": dict(moves), "links": set(links),
                            "span": set(span), "blocked": isinstance(op, Comment)})
    return columns


def render_ascii(c: Circuit) -> str:
    """One text row per wire, time flowing left to right.

    Ops on disjoint wire spans may share a column; each op gets at least one.
    """
    n = c.wire_count
    state = ["uninit"] * n
    rows = [""] * n
    columns = _layout(c)
    for index, col in enumerate(columns):
        cells, moves, links = col["cells"], col["moves"], col["links"]
        width = max([len(s) for s in cells.values()] + [1])
        for w in range(n):
            before = _FILL[state[w]]
            after_state = moves.get(w, state[w])
            after = _FILL[after_state]
            if w in cells:
                cell = cells[w]
                left = (width - len(cell)) // 2
                text = before * left + cell + after * (width - len(cell) - left)
            elif w in links:
                left = (width - 1) // 2
                text = before * left + "│" + before * (width - 1 - left)
            else:
                text = before * width
            sep = "" if index == 0 else before
            rows[w] += sep + text
            state[w] = after_state
    if columns:
        rows = [r + _FILL[s] for r, s in zip(rows, state)]
    return "\n".join(r.rstrip() for r in rows)
