"""Dense complex linear algebra for small unitaries and statevectors.

Index convention is big-endian throughout: wire 0 carries the most
significant bit of a basis index, both for full statevectors and for the
local index of a k-wire unitary (``wires[0]`` is its MSB).
"""
from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

UNITARY_TOL = 1e-10
NORM_TOL = 1e-12

# Largest unitary (in wires) the builder accepts. Simon oracles on n <= 5
# need 2n = 10.
MAX_UNITARY_WIRES = 10
# Largest dense matrix kron() will produce.
MAX_KRON_WIRES = 12


class ResourceLimitError(ValueError):
    """A requested object would exceed the configured size limits."""


class MalformedMatrixError(ValueError):
    pass


def _wires_for_dim(dim: int) -> int:
    if dim < 1 or dim & (dim - 1):
        raise MalformedMatrixError(f"dimension {dim} is not a power of two")
    return dim.bit_length() - 1


def check_unitary(m, tol: float = UNITARY_TOL) -> bool:
    """Return True iff ``max|m^dagger m - I| <= tol``.

    Raises MalformedMatrixError for non-square or non power-of-two input.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise MalformedMatrixError(f"matrix of shape {m.shape} is not square")
    _wires_for_dim(m.shape[0])
    if not np.all(np.isfinite(m)):
        return False
    err = np.abs(m.conj().T @ m - np.eye(m.shape[0]))
    return bool(err.max() <= tol)


class SquareUnitary:
    """An immutable 2^k x 2^k unitary matrix.

    Equality is bitwise on the entries, which is what round-trip tests need.
    """

    __slots__ = ("_m", "k")

    def __init__(self, matrix, *, tol: float = UNITARY_TOL, max_wires: int = MAX_UNITARY_WIRES):
        m = np.array(matrix, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise MalformedMatrixError(f"matrix of shape {m.shape} is not square")
        k = _wires_for_dim(m.shape[0])
        if k > max_wires:
            raise ResourceLimitError(f"{k}-wire unitary exceeds limit of {max_wires}")
        if not check_unitary(m, tol):
            raise MalformedMatrixError("matrix is not unitary")
        m.setflags(write=False)
        self._m = m
        self.k = k

    @classmethod
    def from_rows(cls, *rows: Sequence[complex], **kwargs) -> "SquareUnitary":
        """Build from 2^k rows, e.g. ``from_rows((1, 0), (0, 1))``.

        Generalises fixed-size constructors like a 4x4 or 16x16 builder.
        """
        return cls(np.array(rows, dtype=np.complex128), **kwargs)

    @classmethod
    def permutation(cls, mapping: Sequence[int], **kwargs) -> "SquareUnitary":
        """Permutation matrix sending basis state ``i`` to ``mapping[i]``."""
        dim = len(mapping)
        if sorted(mapping) != list(range(dim)):
            raise MalformedMatrixError("mapping is not a bijection")
        m = np.zeros((dim, dim), dtype=np.complex128)
        m[list(mapping), np.arange(dim)] = 1.0
        return cls(m, **kwargs)

    @property
    def matrix(self) -> np.ndarray:
        return self._m

    @property
    def dim(self) -> int:
        return self._m.shape[0]

    def dagger(self) -> "SquareUnitary":
        return SquareUnitary(self._m.conj().T)

    def __eq__(self, other):
        if not isinstance(other, SquareUnitary):
            return NotImplemented
        return self._m.shape == other._m.shape and self._m.tobytes() == other._m.tobytes()

    def __hash__(self):
        return hash(self._m.tobytes())

    def __repr__(self):
        return f"SquareUnitary(k={self.k})"


def kron(a, b):
    """Kronecker product; ``kron(a, b)[i*db + j, k*db + l] = a[i,k] * b[j,l]``.

    Returns a SquareUnitary when both arguments are SquareUnitary, otherwise a
    plain ndarray.
    """
    am = a.matrix if isinstance(a, SquareUnitary) else np.asarray(a, dtype=complex)
    bm = b.matrix if isinstance(b, SquareUnitary) else np.asarray(b, dtype=complex)
    dim = am.shape[0] * bm.shape[0]
    if dim > 1 << MAX_KRON_WIRES:
        raise ResourceLimitError(f"kron result of dimension {dim} exceeds 2^{MAX_KRON_WIRES}")
    out = np.kron(am, bm)
    if isinstance(a, SquareUnitary) and isinstance(b, SquareUnitary):
        return SquareUnitary(out, max_wires=MAX_KRON_WIRES)
    return out


_S2 = 1 / np.sqrt(2)
GATES = {
    "H": SquareUnitary([[_S2, _S2], [_S2, -_S2]]),
    "X": SquareUnitary([[0, 1], [1, 0]]),
    "Y": SquareUnitary([[0, -1j], [1j, 0]]),
    "Z": SquareUnitary([[1, 0], [0, -1]]),
    "S": SquareUnitary([[1, 0], [0, 1j]]),
    "T": SquareUnitary([[1, 0], [0, np.exp(1j * np.pi / 4)]]),
}
SWAP = SquareUnitary.from_rows((1, 0, 0, 0), (0, 0, 1, 0), (0, 1, 0, 0), (0, 0, 0, 1))


class StateVector:
    """Unit-norm vector of 2^n amplitudes, wire 0 = most significant bit."""

    __slots__ = ("n", "_amps")

    def __init__(self, amps, *, tol: float = NORM_TOL):
        a = np.array(amps, dtype=np.complex128).reshape(-1)
        n = _wires_for_dim(a.size)
        if not np.all(np.isfinite(a)):
            raise ValueError("amplitudes must be finite")
        norm = float(np.vdot(a, a).real)
        if abs(norm - 1.0) > tol:
            raise ValueError(f"state norm {norm!r} is not 1")
        a.setflags(write=False)
        self.n = n
        self._amps = a

    @classmethod
    def basis(cls, n: int, index: int = 0) -> "StateVector":
        a = np.zeros(1 << n, dtype=np.complex128)
        a[index] = 1.0
        return cls(a)

    @property
    def amps(self) -> np.ndarray:
        return self._amps

    def norm(self) -> float:
        return float(np.sqrt(np.vdot(self._amps, self._amps).real))

    def probabilities(self) -> np.ndarray:
        return np.abs(self._amps) ** 2

    def __repr__(self):
        return f"StateVector(n={self.n})"


def _check_wires(n: int, wires: Sequence[int], controls: Sequence[tuple[int, int]] = ()):
    used = list(wires) + [w for w, _ in controls]
    if len(set(used)) != len(used):
        raise ValueError(f"duplicate wires in {used}")
    for w in used:
        if not 0 <= w < n:
            raise ValueError(f"wire {w} out of range for {n} wires")


def apply_matrix(psi: np.ndarray, n: int, matrix: np.ndarray, wires: Sequence[int],
                 controls: Iterable[tuple[int, int]] = ()) -> None:
    """Apply ``matrix`` in place to a batch of statevectors.

    ``psi`` has shape ``(batch, 2**n)`` and must be C-contiguous. Control
    pairs ``(wire, bit)`` restrict the action to amplitudes whose control
    wires equal ``bit``. No argument checking; callers validate.
    """
    batch = psi.shape[0]
    tensor = psi.reshape((batch,) + (2,) * n)
    index: list = [slice(None)] * (n + 1)
    fixed = set()
    for w, bit in controls:
        index[w + 1] = bit
        fixed.add(w)
    sub = tensor[tuple(index)]
    # sub keeps the batch axis plus every non-control wire, in wire order
    free = [w for w in range(n) if w not in fixed]
    pos = [1 + free.index(w) for w in wires]
    k = len(wires)
    front = list(range(1, k + 1))
    moved = np.moveaxis(sub, pos, front)
    shape = moved.shape
    flat = moved.reshape(batch, 1 << k, -1)
    out = np.matmul(matrix, flat).reshape(shape)
    sub[...] = np.moveaxis(out, front, pos)


def apply_unitary(s: StateVector, u: SquareUnitary, wires: Sequence[int],
                  controls: Sequence[tuple[int, int]] = ()) -> StateVector:
    """Return ``s`` with ``u`` applied to ``wires`` (``wires[0]`` = MSB of u)."""
    wires = list(wires)
    if len(wires) != u.k:
        raise ValueError(f"{u.k}-wire unitary given {len(wires)} wires")
    _check_wires(s.n, wires, controls)
    psi = np.array(s.amps, dtype=np.complex128).reshape(1, -1)
    apply_matrix(psi, s.n, u.matrix, wires, controls)
    return StateVector(psi[0])
