"""Gate-level quantum Fourier transform, big-endian (``wires[0]`` is the MSB)."""
from __future__ import annotations

import cmath
from functools import lru_cache
from typing import Sequence

from .circuit import Circuit, CircuitError
from .linalg import SWAP, SquareUnitary


@lru_cache(maxsize=None)
def rotation(k: int, inverse: bool = False) -> SquareUnitary:
    """R_k = diag(1, exp(+-2 pi i / 2^k))."""
    sign = -1 if inverse else 1
    return SquareUnitary([[1, 0], [0, cmath.exp(sign * 2j * cmath.pi / (1 << k))]])


def _qft_ops(wires: Sequence[int], inverse: bool) -> list[tuple]:
    t = len(wires)
    ops: list[tuple] = []
    for i in range(t):
        ops.append(("H", wires[i]))
        for j in range(i + 1, t):
            ops.append(("R", j - i + 1, wires[i], wires[j]))
    for i in range(t // 2):
        ops.append(("SWAP", wires[i], wires[t - 1 - i]))
    return ops[::-1] if inverse else ops


def _emit(c: Circuit, wires: Sequence[int], inverse: bool) -> None:
    wires = list(wires)
    if not wires:
        raise CircuitError("QFT needs at least one wire")
    if len(set(wires)) != len(wires):
        raise CircuitError(f"repeated wire in {wires}")
    for op in _qft_ops(wires, inverse):
        if op[0] == "H":
            c.gate("H", op[1])
        elif op[0] == "R":
            _, k, target, control = op
            c.custom_unitary(rotation(k, inverse), [target], controls=[(control, 1)])
        else:
            c.custom_unitary(SWAP, [op[1], op[2]])


def append_qft_big_endian(c: Circuit, wires: Sequence[int]) -> None:
    """Append |x> -> 2^(-t/2) sum_y exp(2 pi i x y / 2^t) |y>.

    Emits t Hadamards, t(t-1)/2 controlled rotations and floor(t/2) swaps.
    """
    _emit(c, wires, inverse=False)


def append_inverse_qft_big_endian(c: Circuit, wires: Sequence[int]) -> None:
    """Adjoint of :func:`append_qft_big_endian`: reversed order, conjugated rotations."""
    _emit(c, wires, inverse=True)
