"""Deutsch-Jozsa: constant vs balanced for f: {0,1}^n -> {0,1} in one query."""
from __future__ import annotations

from ..circuit import Circuit
from ..oracles import OracleSpec
from ..sim import RngLike, run
from .deutsch import Verdict, _check_shape


def deutsch_jozsa_circuit(oracle: OracleSpec, annotate: bool = True) -> Circuit:
    _check_shape(oracle, None, 1)
    c = Circuit()
    top = c.qinit_many([0] * oracle.top)
    bottom = c.qinit(1)
    if annotate:
        for w in top:
            c.label(w, "|0⟩")
        c.label(bottom, "|1⟩")
    c.hadamard(*top)
    c.hadamard(bottom)
    if annotate:
        c.comment("before oracle")
    oracle.apply(c, top, [bottom])
    if annotate:
        c.comment("after oracle")
    c.hadamard(*top)
    c.measure(top + [bottom])
    c.discard([bottom])
    c.set_output(top)
    return c


def classify(bits: str) -> Verdict:
    return Verdict.CONSTANT if set(bits) <= {"0"} else Verdict.BALANCED


def deutsch_jozsa(oracle: OracleSpec, rng: RngLike = None) -> Verdict:
    """Constant iff the measured top string is all zeros."""
    return classify(run(deutsch_jozsa_circuit(oracle), rng).bits)
