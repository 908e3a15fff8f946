"""Deutsch's algorithm: one oracle query decides whether f: {0,1} -> {0,1} is balanced."""
from __future__ import annotations

import enum

from ..circuit import Circuit
from ..oracles import OracleSpec
from ..sim import RngLike, run


class Verdict(str, enum.Enum):
    BALANCED = "Balanced"
    CONSTANT = "Constant"

    def __str__(self):
        return self.value


def _check_shape(oracle: OracleSpec, top: int | None, bottom: int) -> None:
    if (top is not None and oracle.top != top) or oracle.bottom != bottom:
        raise ValueError(f"oracle {oracle.name} has shape ({oracle.top}, {oracle.bottom})")


def deutsch_circuit(oracle: OracleSpec, annotate: bool = True) -> Circuit:
    """top |0>, bottom |1>, H on both, oracle, H on top, measure; output = top."""
    _check_shape(oracle, 1, 1)
    c = Circuit()
    top = c.qinit(0)
    bottom = c.qinit(1)
    if annotate:
        c.label(top, "|0⟩")
        c.label(bottom, "|1⟩")
    c.hadamard(top)
    c.hadamard(bottom)
    if annotate:
        c.comment("before oracle")
    oracle.apply(c, [top], [bottom])
    if annotate:
        c.comment("after oracle")
    c.hadamard(top)
    c.measure([top, bottom])
    c.discard([bottom])
    c.set_output([top])
    return c


def deutsch(oracle: OracleSpec, rng: RngLike = None) -> Verdict:
    """Balanced iff the measured top bit is 1; the outcome is deterministic."""
    bit = run(deutsch_circuit(oracle), rng).bits
    return Verdict.BALANCED if bit == "1" else Verdict.CONSTANT
