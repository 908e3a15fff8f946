"""Simon's algorithm: quantum sampling of y with y.s = 0, then GF(2) elimination."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ..circuit import Circuit
from ..oracles import OracleSpec, register_bits
from ..sim import RngLike, make_rng, run


class BudgetExhausted(RuntimeError):
    """A randomized driver ran out of rounds; retry with another seed."""


@dataclass(frozen=True)
class SimonResult:
    hidden: str
    rounds_used: int
    samples: tuple[str, ...] = field(default=())


def simon_circuit(oracle: OracleSpec, annotate: bool = True) -> Circuit:
    """Top and bottom start in |0...0>; Hadamards on the top register only."""
    if oracle.top != oracle.bottom:
        raise ValueError(f"Simon oracle needs equal registers, got ({oracle.top}, {oracle.bottom})")
    n = oracle.top
    c = Circuit()
    top = c.qinit_many([0] * n)
    bottom = c.qinit_many([0] * n)
    if annotate:
        c.label(top[0], "top |0⟩")
        c.label(bottom[0], "bottom |0⟩")
    c.hadamard(*top)
    oracle.apply(c, top, bottom)
    c.hadamard(*top)
    c.measure(top + bottom)
    c.discard(bottom)
    c.set_output(top)
    return c


def simon_sample(oracle: OracleSpec, rng: RngLike = None) -> str:
    return run(simon_circuit(oracle, annotate=False), rng).bits


def _rref(rows: Sequence[str], n: int) -> tuple[list[int], list[int]]:
    """Reduced row echelon form over GF(2); returns (nonzero rows, pivot columns)."""
    mat = [int(r, 2) for r in rows if r]
    for r in rows:
        if len(r) != n:
            raise ValueError(f"row {r!r} does not have length {n}")
    pivots: list[int] = []
    rank = 0
    for col in range(n):
        bit = 1 << (n - 1 - col)
        piv = next((i for i in range(rank, len(mat)) if mat[i] & bit), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        for i in range(len(mat)):
            if i != rank and mat[i] & bit:
                mat[i] ^= mat[rank]
        pivots.append(col)
        rank += 1
    return mat[:rank], pivots


def gf2_rank(rows: Sequence[str], n: int) -> int:
    return len(_rref(rows, n)[1])


def gf2_nullspace(rows: Sequence[str], n: int) -> list[str]:
    """Basis of {s : row . s = 0 (mod 2) for every row}, as bit strings."""
    reduced, pivots = _rref(rows, n)
    basis = []
    for free in (col for col in range(n) if col not in pivots):
        fbit = 1 << (n - 1 - free)
        v = fbit
        for row, pc in zip(reduced, pivots):
            if row & fbit:
                v |= 1 << (n - 1 - pc)
        basis.append(format(v, f"0{n}b"))
    return basis


def evaluate_oracle(oracle: OracleSpec, x: int, rng: RngLike = None) -> str:
    """Classical query: run the oracle on |x>|0> and read the bottom register."""
    c = Circuit()
    top = c.qinit_many(register_bits(x, oracle.top))
    bottom = c.qinit_many([0] * oracle.bottom)
    oracle.apply(c, top, bottom)
    c.measure(top + bottom)
    c.set_output(bottom)
    return run(c, rng).bits


def simon_recover(oracle: OracleSpec, rng: RngLike = None, max_rounds: int = 20) -> SimonResult:
    """Sample until n-1 independent equations, then solve for s.

    The single nonzero nullspace vector is confirmed with classical queries
    f(0) == f(s); if that fails f is one-to-one and s = 0^n.
    """
    gen = make_rng(rng)
    n = oracle.top
    samples: list[str] = []
    while gf2_rank(samples, n) < n - 1:
        if len(samples) >= max_rounds:
            raise BudgetExhausted(f"only rank {gf2_rank(samples, n)} of {n - 1} after {max_rounds} rounds")
        samples.append(simon_sample(oracle, gen))
    candidate = gf2_nullspace(samples, n)[0]
    same = evaluate_oracle(oracle, 0, gen) == evaluate_oracle(oracle, int(candidate, 2), gen)
    hidden = candidate if same else "0" * n
    return SimonResult(hidden, len(samples), tuple(samples))
