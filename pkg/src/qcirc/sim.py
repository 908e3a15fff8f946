"""Statevector execution of circuits.

``run``/``sample`` simulate measurement by the Born rule, collapsing the
state as each measured wire is read. ``exact_distribution`` instead defers
every measurement to the end, which is exact because the IR has no
classically controlled operations.

Randomness comes from numpy's PCG64 generator. A seed fixes the outcome
sequence for this implementation only.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterator, Union

import numpy as np

from .circuit import (Circuit, CustomUnitary, Discard, InitQubit, Measure, NamedGate,
                      validate)
from .linalg import GATES, ResourceLimitError, StateVector, apply_matrix

MAX_SIM_WIRES = 22
NORM_DRIFT_TOL = 1e-9

RngLike = Union[int, np.random.Generator, None]


class NumericalError(RuntimeError):
    pass


class InvalidCircuit(ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


def make_rng(rng: RngLike = None) -> np.random.Generator:
    """A PCG64 generator; ints are seeds, generators pass through, None means seed 1."""
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.Generator(np.random.PCG64(1 if rng is None else int(rng)))


@dataclass(frozen=True)
class MeasurementRecord:
    bits: str  # output wires in output order
    by_wire: dict

    def __len__(self):
        return len(self.bits)


class OutcomeDistribution:
    """Exact probabilities of output bit strings.

    Keys are bit strings in the circuit's output order. Stored densely, so
    ``dist["01"]`` is defined for every string of the right width.
    """

    def __init__(self, width: int, probs: np.ndarray):
        self.width = width
        self._p = np.asarray(probs, dtype=float)
        self._p.setflags(write=False)

    @property
    def probs(self) -> np.ndarray:
        return self._p

    def __getitem__(self, bits: str) -> float:
        if len(bits) != self.width:
            raise KeyError(bits)
        return float(self._p[int(bits, 2)]) if bits else float(self._p[0])

    def key(self, index: int) -> str:
        return format(index, f"0{self.width}b") if self.width else ""

    def items(self, cutoff: float = 1e-14) -> list[tuple[str, float]]:
        """(bits, p) pairs above ``cutoff``, sorted by bit string."""
        return [(self.key(i), float(p)) for i, p in enumerate(self._p) if p > cutoff]

    def support(self, cutoff: float = 1e-14) -> set[str]:
        return {b for b, _ in self.items(cutoff)}

    def total(self) -> float:
        return float(self._p.sum())

    def __repr__(self):
        body = ", ".join(f"{b}: {p:.6g}" for b, p in self.items(1e-12))
        return f"OutcomeDistribution({{{body}}})"


def _require_valid(c: Circuit) -> None:
    errs = validate(c)
    if errs:
        raise InvalidCircuit(errs)
    if c.wire_count > MAX_SIM_WIRES:
        raise ResourceLimitError(f"{c.wire_count} wires exceeds simulator limit {MAX_SIM_WIRES}")


def _apply_op(psi: np.ndarray, n: int, op) -> None:
    if isinstance(op, InitQubit):
        # the wire is untouched and still |0>, so init to 1 is a plain flip
        if op.value:
            apply_matrix(psi, n, GATES["X"].matrix, [op.wire])
    elif isinstance(op, NamedGate):
        apply_matrix(psi, n, GATES[op.name].matrix, [op.target], op.controls)
    elif isinstance(op, CustomUnitary):
        apply_matrix(psi, n, op.unitary.matrix, op.wires, op.controls)


def _zero_state(n: int, batch: int = 1) -> np.ndarray:
    psi = np.zeros((batch, 1 << n), dtype=np.complex128)
    psi[:, 0] = 1.0
    return psi


def _measure_wire(psi: np.ndarray, n: int, wire: int, u: np.ndarray) -> np.ndarray:
    """Collapse ``wire`` in every batch row using uniforms ``u``; return outcomes."""
    batch = psi.shape[0]
    t = psi.reshape((batch,) + (2,) * n)
    axis = wire + 1
    p0 = np.sum(np.abs(np.take(t, 0, axis=axis).reshape(batch, -1)) ** 2, axis=1)
    p1 = np.sum(np.abs(np.take(t, 1, axis=axis).reshape(batch, -1)) ** 2, axis=1)
    # scale by p0 + p1 so roundoff never selects a zero-probability branch
    outcome = ((u * (p0 + p1) >= p0) & (p1 > 0)).astype(np.int8)
    keep = np.where(outcome == 1, p1, p0)
    for bit in (0, 1):
        idx = [slice(None)] * (n + 1)
        idx[axis] = bit
        sel = outcome != bit
        idx[0] = sel
        t[tuple(idx)] = 0.0
    t /= np.sqrt(keep).reshape((batch,) + (1,) * n)
    return outcome


def _check_norm(psi: np.ndarray) -> None:
    norms = np.sum(np.abs(psi) ** 2, axis=1)
    drift = float(np.max(np.abs(norms - 1.0)))
    if drift > NORM_DRIFT_TOL:
        raise NumericalError(f"state norm drifted by {drift:.3g}")


def sample(c: Circuit, shots: int, rng: RngLike = None) -> list[str]:
    """Run ``c`` ``shots`` times; return the output bit string of each run.

    Runs are simulated together as a batch of independent statevectors.
    Each Measure reads its wires in listed order, each by inverse CDF on the
    marginal given earlier collapses, drawing one uniform per run per wire.
    """
    _require_valid(c)
    gen = make_rng(rng)
    n = c.wire_count
    psi = _zero_state(n, shots)
    results: dict[int, np.ndarray] = {}
    for op in c.ops:
        if isinstance(op, Measure):
            _check_norm(psi)
            for w in op.wires:
                results[w] = _measure_wire(psi, n, w, gen.random(shots))
        elif not isinstance(op, Discard):
            _apply_op(psi, n, op)
    _check_norm(psi)
    if not c.output:
        return [""] * shots
    cols = np.stack([results[w] for w in c.output], axis=1)
    return ["".join("1" if b else "0" for b in row) for row in cols]


def run(c: Circuit, rng: RngLike = None) -> MeasurementRecord:
    """One seeded execution of ``c``."""
    _require_valid(c)
    gen = make_rng(rng)
    n = c.wire_count
    psi = _zero_state(n)
    by_wire: dict[int, int] = {}
    for op in c.ops:
        if isinstance(op, Measure):
            _check_norm(psi)
            for w in op.wires:
                by_wire[w] = int(_measure_wire(psi, n, w, gen.random(1))[0])
        elif not isinstance(op, Discard):
            _apply_op(psi, n, op)
    _check_norm(psi)
    bits = "".join(str(by_wire[w]) for w in c.output)
    return MeasurementRecord(bits, by_wire)


def counts(c: Circuit, shots: int, rng: RngLike = None) -> Counter:
    return Counter(sample(c, shots, rng))


def iter_states(c: Circuit) -> Iterator[tuple[int, StateVector]]:
    """Yield ``(op_index, state)`` after every op, measurements deferred.

    Measure and Discard leave the state untouched here.
    """
    _require_valid(c)
    n = c.wire_count
    psi = _zero_state(n)
    for i, op in enumerate(c.ops):
        _apply_op(psi, n, op)
        yield i, StateVector(psi[0].copy(), tol=NORM_DRIFT_TOL)


def _deferred_state(c: Circuit) -> np.ndarray:
    _require_valid(c)
    n = c.wire_count
    psi = _zero_state(n)
    for op in c.ops:
        _apply_op(psi, n, op)
    _check_norm(psi)
    return psi[0]


def exact_distribution(c: Circuit) -> OutcomeDistribution:
    """Exact joint distribution of the output bits."""
    amps = _deferred_state(c)
    n = c.wire_count
    probs = (np.abs(amps) ** 2).reshape((2,) * n) if n else np.abs(amps) ** 2
    out = list(c.output)
    others = tuple(w for w in range(n) if w not in out)
    marg = probs.sum(axis=others) if others else probs
    # remaining axes are the output wires in ascending order; reorder them
    asc = sorted(out)
    marg = np.transpose(marg, [asc.index(w) for w in out]) if out else marg
    return OutcomeDistribution(len(out), np.asarray(marg).reshape(-1))


def final_state(c: Circuit) -> StateVector:
    """The state after every op of a measurement-free circuit."""
    if any(isinstance(op, (Measure, Discard)) for op in c.ops):
        raise ValueError("final_state needs a circuit without measurement")
    return StateVector(_deferred_state(c))
