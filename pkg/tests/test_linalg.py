import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcirc.linalg import (GATES, MAX_KRON_WIRES, SWAP, MalformedMatrixError, ResourceLimitError,
                          SquareUnitary, StateVector, apply_unitary, check_unitary, kron)
from qcirc.oracles import SIMON_S11_UNITARY

from helpers import dense_by_enumeration, random_unitary

I2 = SquareUnitary(np.eye(2))
H = GATES["H"]
X = GATES["X"]


def test_kron_identity():
    assert kron(I2, I2) == SquareUnitary(np.eye(4))


def test_kron_x_identity_swaps_high_bit():
    m = kron(X, I2).matrix
    perm = np.zeros((4, 4))
    for src, dst in {0: 2, 1: 3, 2: 0, 3: 1}.items():
        perm[dst, src] = 1
    assert np.array_equal(m, perm)


def test_kron_hh_signs():
    m = kron(H, H).matrix
    for i in range(4):
        for k in range(4):
            sign = -1 if bin(i & k).count("1") % 2 else 1
            assert m[i, k] == pytest.approx(sign / 2)


def test_kron_index_formula():
    gen = np.random.default_rng(0)
    a = SquareUnitary(random_unitary(gen, 1))
    b = SquareUnitary(random_unitary(gen, 2))
    m = kron(a, b).matrix
    db = 4
    for i, k in np.ndindex(2, 2):
        for j, l in np.ndindex(db, db):
            assert abs(m[i * db + j, k * db + l] - a.matrix[i, k] * b.matrix[j, l]) <= 1e-15


def test_kron_resource_limit():
    big = SquareUnitary(np.eye(1 << 8), max_wires=8)
    with pytest.raises(ResourceLimitError):
        kron(big, SquareUnitary(np.eye(1 << (MAX_KRON_WIRES - 7)), max_wires=MAX_KRON_WIRES))


def test_check_unitary_examples():
    assert check_unitary(H.matrix)
    assert check_unitary(SIMON_S11_UNITARY.matrix)
    dup = np.eye(4)
    dup[1] = dup[0]
    assert not check_unitary(dup)


@pytest.mark.parametrize("bad", [np.ones((2, 3)), np.eye(3), np.ones(4)])
def test_check_unitary_malformed(bad):
    with pytest.raises(MalformedMatrixError):
        check_unitary(bad)


def test_square_unitary_rejects_non_unitary():
    with pytest.raises(ValueError):
        SquareUnitary.from_rows((1, 1), (0, 1))


def test_apply_x_to_wire0():
    out = apply_unitary(StateVector.basis(2, 0), X, [0])
    assert np.array_equal(out.amps, StateVector.basis(2, 0b10).amps)


def test_apply_cnot_matrix():
    cnot = SquareUnitary.from_rows((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 0, 1), (0, 0, 1, 0))
    out = apply_unitary(StateVector.basis(2, 0b10), cnot, [0, 1])
    assert np.array_equal(out.amps, StateVector.basis(2, 0b11).amps)
    # reversing the wire list makes wire 1 the control
    out = apply_unitary(StateVector.basis(2, 0b10), cnot, [1, 0])
    assert np.array_equal(out.amps, StateVector.basis(2, 0b10).amps)


def test_apply_h():
    out = apply_unitary(StateVector.basis(1, 0), H, [0])
    assert np.allclose(out.amps, [2 ** -0.5, 2 ** -0.5], atol=1e-15)


@pytest.mark.parametrize("wires", [[0, 0], [2], [-1]])
def test_apply_bad_wires(wires):
    u = SWAP if len(wires) == 2 else X
    with pytest.raises(ValueError):
        apply_unitary(StateVector.basis(2, 0), u, wires)


def test_statevector_norm_check():
    with pytest.raises(ValueError):
        StateVector([1, 1])
    with pytest.raises(ValueError):
        StateVector([1, 0, 0])
    with pytest.raises(ValueError):
        StateVector([np.nan, 1])


def test_amps_are_read_only():
    s = StateVector.basis(1)
    with pytest.raises(ValueError):
        s.amps[0] = 0


def test_dagger():
    s = SquareUnitary(GATES["S"].matrix)
    assert np.allclose(s.dagger().matrix @ s.matrix, np.eye(2))


def test_permutation_constructor():
    u = SquareUnitary.permutation([1, 0, 3, 2])
    assert np.array_equal(u.matrix, kron(I2, X).matrix)
    with pytest.raises(ValueError):
        SquareUnitary.permutation([0, 0, 1, 2])


def _random_state(gen, n):
    v = gen.normal(size=1 << n) + 1j * gen.normal(size=1 << n)
    return StateVector(v / np.linalg.norm(v))


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 5), k=st.integers(1, 3))
def test_norm_and_inverse(seed, n, k):
    k = min(k, n)
    gen = np.random.default_rng(seed)
    u = SquareUnitary(random_unitary(gen, k))
    wires = [int(w) for w in gen.permutation(n)[:k]]
    s = _random_state(gen, n)
    out = apply_unitary(s, u, wires)
    assert abs(out.norm() - 1) <= 1e-12
    back = apply_unitary(out, u.dagger(), wires)
    assert np.max(np.abs(back.amps - s.amps)) <= 1e-10


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(2, 4))
def test_matches_dense_enumeration(seed, n):
    gen = np.random.default_rng(seed)
    k = int(gen.integers(1, n))
    perm = [int(w) for w in gen.permutation(n)]
    wires, rest = perm[:k], perm[k:]
    controls = [(w, int(gen.integers(2))) for w in rest[:int(gen.integers(0, len(rest) + 1))]]
    u = random_unitary(gen, k)
    s = _random_state(gen, n)
    out = apply_unitary(s, SquareUnitary(u), wires, controls)
    want = dense_by_enumeration(n, u, wires, controls) @ s.amps
    assert np.max(np.abs(out.amps - want)) <= 1e-12


def test_hash_and_equality():
    a = SquareUnitary.from_rows((0, 1), (1, 0))
    assert a == X and hash(a) == hash(X)
    assert a != H
