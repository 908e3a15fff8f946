"""Grover search for a single marked item."""
from __future__ import annotations

import math
from typing import Sequence, Union

from ..circuit import Circuit
from ..oracles import OracleSpec
from ..sim import RngLike, run

Strategy = Union[str, int]


def grover_iterations(n: int, strategy: Strategy = "optimal") -> int:
    """Iteration count for an n-wire search space.

    ``"paper"``: floor(sqrt(2^n)). ``"optimal"``: the k nearest to
    pi / (4 theta) - 1/2 with theta = asin(2^(-n/2)), at least 1. An int is
    used as given.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if isinstance(strategy, int) and not isinstance(strategy, bool):
        if strategy < 0:
            raise ValueError("iteration count must be non-negative")
        return strategy
    if strategy == "paper":
        return math.isqrt(1 << n)
    if strategy in ("optimal", "auto"):
        theta = math.asin(2 ** (-n / 2))
        ideal = math.pi / (4 * theta) - 0.5
        # round half up; builtin round() would round 0.5 to 0
        return max(1, math.floor(ideal + 0.5))
    raise ValueError(f"unknown strategy {strategy!r}")


def success_probability(n: int, k: int) -> float:
    """sin^2((2k+1) theta): chance of reading the marked item after k iterations."""
    theta = math.asin(2 ** (-n / 2))
    return math.sin((2 * k + 1) * theta) ** 2


def append_phase_inversion(c: Circuit, oracle: OracleSpec, top: Sequence[int], bottom: int,
                           annotate: bool = True) -> None:
    if annotate:
        c.comment("start phase inversion")
    oracle.apply(c, top, [bottom])
    if annotate:
        c.comment("end phase inversion")


def append_inversion_about_mean(c: Circuit, top: Sequence[int], annotate: bool = True) -> None:
    """2|psi><psi| - I on the top register, up to global phase.

    H^n X^n (H MCX H on the last wire) X^n H^n; the middle three gates form a
    Z on the last wire controlled by all the others.
    """
    top = list(top)
    *controls, target = top
    if annotate:
        c.comment("start inversion about mean")
    c.hadamard(*top)
    for w in top:
        c.qnot(w)
    c.hadamard(target)
    c.qnot(target, controls=controls)
    c.hadamard(target)
    for w in top:
        c.qnot(w)
    c.hadamard(*top)
    if annotate:
        c.comment("end inversion about mean")


def grover_circuit(oracle: OracleSpec, iterations: int, annotate: bool = True) -> Circuit:
    if oracle.bottom != 1:
        raise ValueError(f"Grover oracle needs one bottom wire, got {oracle.bottom}")
    c = Circuit()
    if annotate:
        c.comment("Grover search")
    top = c.qinit_many([0] * oracle.top)
    bottom = c.qinit(1)
    if annotate:
        c.label(top[0], "|0⟩")
        c.label(bottom, "|1⟩")
    c.hadamard(*top)
    c.hadamard(bottom)
    for _ in range(iterations):
        if annotate:
            c.comment("start grover iteration")
        append_phase_inversion(c, oracle, top, bottom, annotate)
        append_inversion_about_mean(c, top, annotate)
        if annotate:
            c.comment("after grover iteration")
    c.hadamard(bottom)
    c.measure(top + [bottom])
    c.discard([bottom])
    c.set_output(top)
    return c


def grover(oracle: OracleSpec, strategy: Strategy = "optimal", rng: RngLike = None) -> str:
    """Measured candidate for the marked item, as a bit string (wire 0 first)."""
    k = grover_iterations(oracle.top, strategy)
    return run(grover_circuit(oracle, k), rng).bits
