import numpy as np
import pytest

from qcirc import oracles
from qcirc.algorithms.deutsch import Verdict, deutsch
from qcirc.algorithms.deutsch_jozsa import classify, deutsch_jozsa, deutsch_jozsa_circuit
from qcirc.algorithms.grover import grover, grover_circuit, grover_iterations, success_probability
from qcirc.algorithms.shor import (PrimePowerInput, convergents, find_order_quantum, gcd,
                                   is_prime_or_prime_power, minimal_order, modpow,
                                   multiplicative_order, order_candidates, shor_factor)
from qcirc.algorithms.simon import (BudgetExhausted, gf2_nullspace, gf2_rank, simon_circuit,
                                    simon_recover, simon_sample)
from qcirc.sim import exact_distribution


def dot2(a, b):
    return sum(int(x) & int(y) for x, y in zip(a, b)) % 2


# -- Deutsch and Deutsch-Jozsa ------------------------------------------------

def test_deutsch_examples():
    assert deutsch(oracles.deutsch_balanced_identity()) is Verdict.BALANCED
    assert deutsch(oracles.deutsch_constant()) is Verdict.CONSTANT
    assert deutsch(oracles.deutsch_constant_one()) is Verdict.CONSTANT


def test_deutsch_rejects_wrong_shape():
    with pytest.raises(ValueError):
        deutsch(oracles.dj_parity(2))


def test_dj_examples():
    assert deutsch_jozsa(oracles.dj_constant(2)) is Verdict.CONSTANT
    assert deutsch_jozsa(oracles.dj_parity(2)) is Verdict.BALANCED
    copy_bit = oracles.dj_from_truth_table([x >> 2 for x in range(8)])
    assert deutsch_jozsa(copy_bit) is Verdict.BALANCED
    assert exact_distribution(deutsch_jozsa_circuit(copy_bit))["000"] <= 1e-12


def test_classify():
    assert classify("000") is Verdict.CONSTANT
    assert classify("010") is Verdict.BALANCED


def _random_promise_table(gen, n):
    if gen.integers(2):
        return [int(gen.integers(2))] * (1 << n)
    table = [0] * (1 << (n - 1)) + [1] * (1 << (n - 1))
    return [int(v) for v in gen.permutation(table)]


@pytest.mark.parametrize("n", range(1, 6))
def test_dj_random_promise_oracles_are_point_masses(n):
    gen = np.random.default_rng(n)
    for _ in range(10):
        table = _random_promise_table(gen, n)
        dist = exact_distribution(deutsch_jozsa_circuit(oracles.dj_from_truth_table(table)))
        p0 = dist["0" * n]
        constant = len(set(table)) == 1
        assert abs(p0 - (1.0 if constant else 0.0)) <= 1e-12


# -- Simon ------------------------------------------------------------------------

def test_gf2_nullspace_examples():
    assert gf2_nullspace(["11"], 2) == ["11"]
    assert sorted(gf2_nullspace([], 2)) == ["01", "10"]
    assert gf2_nullspace(["100", "010"], 3) == ["001"]


def test_gf2_nullspace_random():
    gen = np.random.default_rng(5)
    for _ in range(200):
        n = int(gen.integers(1, 7))
        rows = ["".join(str(int(b)) for b in gen.integers(0, 2, n)) for _ in range(int(gen.integers(0, n + 2)))]
        basis = gf2_nullspace(rows, n)
        assert len(basis) == n - gf2_rank(rows, n)
        assert gf2_rank(basis, n) == len(basis)
        for v in basis:
            assert all(dot2(r, v) == 0 for r in rows)


def test_gf2_rank_rejects_bad_length():
    with pytest.raises(ValueError):
        gf2_rank(["101"], 2)


def test_simon_zero_string_uniform():
    o = oracles.simon_from_hidden_string("00", 2)
    dist = exact_distribution(simon_circuit(o))
    assert np.allclose(dist.probs, 0.25, atol=1e-12)


def test_simon_n1_constant():
    o = oracles.simon_from_hidden_string("1", 0)
    assert exact_distribution(simon_circuit(o))["0"] == pytest.approx(1.0, abs=1e-12)
    assert all(simon_sample(o, s) == "0" for s in range(10))


def test_simon_recover_examples():
    assert simon_recover(oracles.simon_table1(), 3).hidden == "11"
    assert simon_recover(oracles.simon_from_hidden_string("101", 9), 2).hidden == "101"
    one_to_one = oracles.simon_from_function([0, 1, 2, 3])
    assert simon_recover(one_to_one, 1).hidden == "00"


def test_simon_samples_orthogonal_to_s():
    gen = np.random.default_rng(77)
    for seed in range(100):
        n = int(gen.integers(1, 6))
        s = "".join(str(int(b)) for b in gen.integers(0, 2, n))
        o = oracles.simon_from_hidden_string(s, seed)
        y = simon_sample(o, seed)
        assert dot2(y, s) == 0


def test_simon_budget():
    with pytest.raises(BudgetExhausted):
        simon_recover(oracles.simon_from_hidden_string("10110", 1), 1, max_rounds=1)


# -- Grover -------------------------------------------------------------------

def test_grover_iterations():
    assert grover_iterations(2, "paper") == 2
    assert grover_iterations(2, "optimal") == 1
    assert grover_iterations(3, "optimal") == 2
    assert grover_iterations(4, 7) == 7
    with pytest.raises(ValueError):
        grover_iterations(0)
    with pytest.raises(ValueError):
        grover_iterations(3, "fastest")


def test_grover_examples():
    assert exact_distribution(grover_circuit(oracles.grover_marked(2, 2), 1))["10"] == pytest.approx(1.0, abs=1e-12)
    assert exact_distribution(grover_circuit(oracles.grover_marked(3, 5), 2))["101"] == pytest.approx(
        success_probability(3, 2), abs=1e-9)
    assert exact_distribution(grover_circuit(oracles.grover_marked(2, 2), 2))["10"] == pytest.approx(0.25, abs=1e-12)
    assert grover(oracles.grover_marked(2, 2)) == "10"


# -- Shor ---------------------------------------------------------------------

def test_number_theory_examples():
    assert gcd(48, 15) == 3
    assert modpow(7, 4, 15) == 1
    assert is_prime_or_prime_power(27) == (3, 3)
    assert is_prime_or_prime_power(15) is None
    assert is_prime_or_prime_power(13) == (13, 1)


def test_convergents_of_six_eighths():
    assert [(f.numerator, f.denominator) for f in convergents(6, 8)] == [(0, 1), (1, 1), (3, 4)]
    assert order_candidates(6, 3, 15) == [4]
    assert order_candidates(0, 3, 15) == []


def test_minimal_order():
    assert minimal_order(7, 15, 8) == 4
    assert minimal_order(2, 21, 12) == 6


def test_shor_examples():
    res = shor_factor(15, 1, forced_a=7)
    assert res.order == 4 and res.factor in (3, 5)
    res = shor_factor(21, 1, forced_a=2)
    assert res.order == 6 and res.factor in (3, 7)
    res = shor_factor(21, 1, forced_a=20)
    assert res.rejected[0] == (20, 2)


def test_shor_prime_inputs_declared():
    with pytest.raises(PrimePowerInput) as info:
        shor_factor(13)
    assert info.value.exponent == 1
    with pytest.raises(PrimePowerInput) as info:
        shor_factor(49)
    assert (info.value.base, info.value.exponent) == (7, 2)
    with pytest.raises(ValueError):
        shor_factor(3)


SMALL_COMPOSITES = [n for n in range(6, 65) if is_prime_or_prime_power(n) is None]


@pytest.mark.parametrize("n_value", SMALL_COMPOSITES)
def test_shor_factor_divides(n_value):
    res = shor_factor(n_value, n_value)
    assert 1 < res.factor < n_value and n_value % res.factor == 0
    if res.order is not None:
        assert res.order == multiplicative_order(res.a_used, n_value)


@pytest.mark.parametrize("n_value", [15, 21, 33, 35])
def test_find_order_matches_brute_force(n_value):
    for a in range(2, n_value):
        if gcd(a, n_value) == 1:
            assert find_order_quantum(a, n_value, rng=a) == multiplicative_order(a, n_value)


def test_find_order_rejects_shared_factor():
    with pytest.raises(ValueError):
        find_order_quantum(5, 15)
