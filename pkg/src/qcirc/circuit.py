"""Circuit intermediate representation and builder.

A circuit is an append-only list of operations over integer wire ids. Wires
move through ``QUANTUM -> MEASURED -> DISCARDED``; there is no classical
feedback, so any measured wire is never touched by a later quantum op.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence, Union

from .linalg import GATES, SquareUnitary

GATE_NAMES = tuple(GATES)


class Control(NamedTuple):
    wire: int
    desired: int = 1


ControlLike = Union[int, Control, tuple]


class CircuitError(ValueError):
    """Builder misuse: lifecycle violation, bad wire, bad gate."""


@dataclass(frozen=True)
class InitQubit:
    wire: int
    value: int


@dataclass(frozen=True)
class NamedGate:
    name: str
    target: int
    controls: tuple[Control, ...] = ()


@dataclass(frozen=True)
class CustomUnitary:
    unitary: SquareUnitary
    wires: tuple[int, ...]
    controls: tuple[Control, ...] = ()


@dataclass(frozen=True)
class Measure:
    wires: tuple[int, ...]


@dataclass(frozen=True)
class Discard:
    wires: tuple[int, ...]


@dataclass(frozen=True)
class Comment:
    text: str


@dataclass(frozen=True)
class Label:
    wire: int
    text: str


Op = Union[InitQubit, NamedGate, CustomUnitary, Measure, Discard, Comment, Label]
QUANTUM_OPS = (NamedGate, CustomUnitary)


class WireState(enum.Enum):
    UNINIT = "uninitialized"
    QUANTUM = "quantum"
    MEASURED = "measured"
    DISCARDED = "discarded"


@dataclass(frozen=True)
class Violation:
    op_index: int  # -1 for whole-circuit problems such as the output list
    message: str

    def __str__(self):
        where = "output" if self.op_index < 0 else f"op {self.op_index}"
        return f"{where}: {self.message}"


def _norm_controls(controls) -> tuple[Control, ...]:
    if controls is None:
        return ()
    if isinstance(controls, (int, Control)):
        controls = [controls]
    out = []
    for c in controls:
        if isinstance(c, int):
            out.append(Control(c, 1))
        else:
            wire, desired = c
            out.append(Control(int(wire), int(desired)))
    return tuple(out)


def controls_from_mask(wires: Sequence[int], bits: Sequence[int]) -> tuple[Control, ...]:
    """Controls matching ``wires`` against ``bits``, e.g. a ``[1, 0]`` mask."""
    if len(wires) != len(bits):
        raise CircuitError("mask length does not match the wire list")
    return tuple(Control(w, b) for w, b in zip(wires, bits))


def op_wires(op: Op) -> tuple[int, ...]:
    """Every wire an op touches, targets first then controls."""
    if isinstance(op, InitQubit):
        return (op.wire,)
    if isinstance(op, NamedGate):
        return (op.target,) + tuple(c.wire for c in op.controls)
    if isinstance(op, CustomUnitary):
        return op.wires + tuple(c.wire for c in op.controls)
    if isinstance(op, (Measure, Discard)):
        return op.wires
    if isinstance(op, Label):
        return (op.wire,)
    return ()


def _step(states: list[WireState], op: Op, index: int) -> list[Violation]:
    """Check one op against the wire states and advance them."""
    errs = []
    n = len(states)
    wires = op_wires(op)
    bad = [w for w in wires if not 0 <= w < n]
    if bad:
        return [Violation(index, f"wire {bad[0]} does not exist ({n} wires)")]
    if len(set(wires)) != len(wires):
        return [Violation(index, f"repeated wire in {list(wires)}")]

    if isinstance(op, InitQubit):
        if op.value not in (0, 1):
            errs.append(Violation(index, f"init value {op.value!r} is not a bit"))
        if states[op.wire] is not WireState.UNINIT:
            errs.append(Violation(index, f"wire {op.wire} already initialized"))
        states[op.wire] = WireState.QUANTUM
    elif isinstance(op, QUANTUM_OPS):
        if isinstance(op, NamedGate) and op.name not in GATES:
            errs.append(Violation(index, f"unknown gate {op.name!r}"))
        if isinstance(op, CustomUnitary) and op.unitary.k != len(op.wires):
            errs.append(Violation(index, f"{op.unitary.k}-wire unitary on {len(op.wires)} wires"))
        for c in op.controls:
            if c.desired not in (0, 1):
                errs.append(Violation(index, f"control value {c.desired!r} is not a bit"))
        for w in wires:
            if states[w] is not WireState.QUANTUM:
                errs.append(Violation(index, f"quantum op on {states[w].value} wire {w}"))
    elif isinstance(op, Measure):
        for w in wires:
            if states[w] is not WireState.QUANTUM:
                errs.append(Violation(index, f"measure of {states[w].value} wire {w}"))
            states[w] = WireState.MEASURED
    elif isinstance(op, Discard):
        for w in wires:
            if states[w] is not WireState.MEASURED:
                errs.append(Violation(index, f"discard of {states[w].value} wire {w}"))
            states[w] = WireState.DISCARDED
    elif isinstance(op, Label):
        if states[op.wire] is WireState.UNINIT:
            errs.append(Violation(index, f"label on uninitialized wire {op.wire}"))
    return errs


def _check_output(states: list[WireState], output: Sequence[int]) -> list[Violation]:
    errs = []
    if len(set(output)) != len(output):
        errs.append(Violation(-1, f"repeated wire in output {list(output)}"))
    for w in output:
        if not 0 <= w < len(states):
            errs.append(Violation(-1, f"output wire {w} does not exist"))
        elif states[w] is not WireState.MEASURED:
            errs.append(Violation(-1, f"output wire {w} is {states[w].value}, not measured"))
    return errs


class Circuit:
    """Append-only circuit builder.

    Builder methods check the wire lifecycle eagerly and raise CircuitError.
    ``Circuit.from_ops`` skips those checks so that ``validate`` can report
    on arbitrary (e.g. parsed) op lists.

    >>> c = Circuit()
    >>> q = c.qinit(1)
    >>> c.gate("H", q)
    >>> c.measure([q]); c.set_output([q])
    """

    def __init__(self, wire_count: int = 0):
        self._ops: list[Op] = []
        self._n = wire_count
        # None marks a read-only circuit whose ops were never checked
        self._states: list[WireState] | None = [WireState.UNINIT] * wire_count
        self._output: tuple[int, ...] = ()

    @classmethod
    def from_ops(cls, wire_count: int, ops: Iterable[Op], output: Sequence[int] = ()) -> "Circuit":
        c = cls(wire_count)
        c._ops = list(ops)
        c._output = tuple(output)
        c._states = None
        return c

    @property
    def wire_count(self) -> int:
        return self._n

    @property
    def ops(self) -> tuple[Op, ...]:
        return tuple(self._ops)

    @property
    def output(self) -> tuple[int, ...]:
        return self._output

    def __len__(self):
        return len(self._ops)

    def __eq__(self, other):
        if not isinstance(other, Circuit):
            return NotImplemented
        return (self.wire_count == other.wire_count and self._ops == other._ops
                and self._output == other._output)

    def __repr__(self):
        return f"Circuit(wires={self.wire_count}, ops={len(self._ops)}, output={list(self._output)})"

    # -- builder ---------------------------------------------------------

    def _append(self, op: Op) -> None:
        if self._states is None:
            raise CircuitError("circuits built with from_ops are read-only")
        states = list(self._states)
        errs = _step(states, op, len(self._ops))
        if errs:
            raise CircuitError("; ".join(e.message for e in errs))
        self._states = states
        self._ops.append(op)

    def new_wire(self) -> int:
        """Declare a wire without initializing it (it must be qinit-ed before use)."""
        if self._states is None:
            raise CircuitError("circuits built with from_ops are read-only")
        self._states.append(WireState.UNINIT)
        self._n += 1
        return self._n - 1

    def qinit(self, value: int = 0) -> int:
        w = self.new_wire()
        self._append(InitQubit(w, int(value)))
        return w

    def qinit_many(self, values: Iterable[int]) -> list[int]:
        return [self.qinit(v) for v in values]

    def gate(self, name: str, target: int, controls: ControlLike | Iterable[ControlLike] | None = None) -> None:
        if name not in GATES:
            raise CircuitError(f"unknown gate {name!r}; expected one of {', '.join(GATE_NAMES)}")
        self._append(NamedGate(name, int(target), _norm_controls(controls)))

    def hadamard(self, *wires: int) -> None:
        for w in wires:
            self.gate("H", w)

    def qnot(self, target: int, controls=None) -> None:
        self.gate("X", target, controls)

    def custom_unitary(self, u, wires: Sequence[int], controls=None) -> None:
        if not isinstance(u, SquareUnitary):
            try:
                u = SquareUnitary(u)
            except ValueError as exc:
                raise CircuitError(str(exc)) from exc
        self._append(CustomUnitary(u, tuple(int(w) for w in wires), _norm_controls(controls)))

    def measure(self, wires: Sequence[int]) -> None:
        if not wires:
            raise CircuitError("measure needs at least one wire")
        self._append(Measure(tuple(int(w) for w in wires)))

    def discard(self, wires: Sequence[int]) -> None:
        if not wires:
            raise CircuitError("discard needs at least one wire")
        self._append(Discard(tuple(int(w) for w in wires)))

    cdiscard = discard

    def comment(self, text: str) -> None:
        self._append(Comment(str(text)))

    def label(self, wire: int, text: str) -> None:
        self._append(Label(int(wire), str(text)))

    def set_output(self, wires: Sequence[int]) -> None:
        if self._states is None:
            raise CircuitError("circuits built with from_ops are read-only")
        wires = tuple(int(w) for w in wires)
        errs = _check_output(self._states, wires)
        if errs:
            raise CircuitError("; ".join(e.message for e in errs))
        self._output = wires

    def wire_state(self, wire: int) -> WireState:
        return self._states[wire]

    # -- checking --------------------------------------------------------

    def validate(self) -> list[Violation]:
        return validate(self)


def validate(c: Circuit) -> list[Violation]:
    """Every invariant violation in ``c``, in op order; empty means valid."""
    states = [WireState.UNINIT] * c.wire_count
    errs: list[Violation] = []
    for i, op in enumerate(c.ops):
        errs.extend(_step(states, op, i))
    errs.extend(_check_output(states, c.output))
    return errs
