"""Independent dense-matrix oracles used to cross-check the simulator."""
from functools import reduce

import numpy as np

from qcirc.circuit import CustomUnitary, NamedGate
from qcirc.linalg import GATES

I2 = np.eye(2, dtype=complex)
P = (np.diag([1.0, 0.0]).astype(complex), np.diag([0.0, 1.0]).astype(complex))


def kron_all(factors):
    return reduce(np.kron, factors, np.eye(1, dtype=complex))


def dense_controlled_single(n, u, target, controls):
    """Full 2^n matrix of a single-target gate as a sum of kron products.

    I - P_c + P_c (x) U, with P_c the projector onto the control pattern.
    """
    proj = [I2] * n
    with_u = [I2] * n
    for w, bit in controls:
        proj[w] = P[bit]
        with_u[w] = P[bit]
    with_u[target] = u
    full_id = np.eye(1 << n, dtype=complex)
    if not controls:
        return kron_all(with_u)
    return full_id - kron_all(proj) + kron_all(with_u)


def dense_by_enumeration(n, u, wires, controls):
    """Full matrix by walking every basis column (any number of target wires)."""
    dim = 1 << n
    k = len(wires)
    out = np.zeros((dim, dim), dtype=complex)
    for col in range(dim):
        bits = [(col >> (n - 1 - w)) & 1 for w in range(n)]
        if any(bits[w] != b for w, b in controls):
            out[col, col] = 1
            continue
        local = sum(bits[w] << (k - 1 - i) for i, w in enumerate(wires))
        for new_local in range(1 << k):
            amp = u[new_local, local]
            if amp == 0:
                continue
            nb = list(bits)
            for i, w in enumerate(wires):
                nb[w] = (new_local >> (k - 1 - i)) & 1
            row = sum(b << (n - 1 - w) for w, b in enumerate(nb))
            out[row, col] += amp
    return out


def dense_circuit_matrix(c):
    """Product of the dense matrices of every gate in ``c`` (inits and annotations skipped)."""
    n = c.wire_count
    total = np.eye(1 << n, dtype=complex)
    for op in c.ops:
        if isinstance(op, NamedGate):
            m = dense_controlled_single(n, GATES[op.name].matrix, op.target, list(op.controls))
        elif isinstance(op, CustomUnitary):
            m = dense_by_enumeration(n, op.unitary.matrix, op.wires, list(op.controls))
        else:
            continue
        total = m @ total
    return total


def dft_matrix(t):
    dim = 1 << t
    j, k = np.meshgrid(np.arange(dim), np.arange(dim), indexing="ij")
    return np.exp(2j * np.pi * j * k / dim) / np.sqrt(dim)


def random_gate_sequence(gen, n, length):
    """Tuples (name, target, wires, controls); SWAP entries use ``wires``."""
    names = sorted(GATES)
    seq = []
    for _ in range(length):
        kind = int(gen.integers(3)) if n > 1 else 0
        if kind == 0:
            seq.append((names[gen.integers(len(names))], int(gen.integers(n)), None, []))
        else:
            a, b = (int(w) for w in gen.choice(n, 2, replace=False))
            if kind == 1:
                seq.append((names[gen.integers(len(names))], b, None, [(a, int(gen.integers(2)))]))
            else:
                seq.append(("SWAP", None, [a, b], []))
    return seq


def random_unitary(gen, k):
    dim = 1 << k
    z = gen.normal(size=(dim, dim)) + 1j * gen.normal(size=(dim, dim))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))
