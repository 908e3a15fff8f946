"""The circuits this package ships, keyed by a short name.

Used by the round-trip and invariant tests, and handy for poking around
in a REPL.
"""
from __future__ import annotations

from . import oracles
from .algorithms.deutsch import deutsch_circuit
from .algorithms.deutsch_jozsa import deutsch_jozsa_circuit
from .algorithms.grover import grover_circuit
from .algorithms.shor import order_finding_circuit
from .algorithms.simon import simon_circuit
from .circuit import Circuit


def shipped_circuits() -> dict[str, Circuit]:
    out: dict[str, Circuit] = {}
    for name in oracles.DEUTSCH_ORACLES:
        out[f"deutsch/{name}"] = deutsch_circuit(oracles.deutsch_oracle(name))
    for n in range(1, 9):
        for name in oracles.DJ_ORACLES:
            out[f"dj/{name}/{n}"] = deutsch_jozsa_circuit(oracles.dj_oracle(name, n))
    out["simon/table1"] = simon_circuit(oracles.simon_table1())
    out["simon/hidden:101"] = simon_circuit(oracles.simon_oracle("hidden:101", 1)[0])
    out["grover/2/2/k1"] = grover_circuit(oracles.grover_marked(2, 2), 1)
    out["grover/3/5/k2"] = grover_circuit(oracles.grover_marked(3, 5), 2)
    out["shor/15/7/t3"] = order_finding_circuit(oracles.modexp_permutation(7, 15, 3))
    for name, build in oracles.SHOR_ORACLES.items():
        out[f"shor/{name}"] = order_finding_circuit(build())
    return out
