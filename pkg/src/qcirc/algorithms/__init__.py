"""Drivers for the Deutsch, Deutsch-Jozsa, Simon, Grover and Shor algorithms."""
from ..oracles import OracleSpec
from .deutsch import Verdict, deutsch, deutsch_circuit
from .deutsch_jozsa import deutsch_jozsa, deutsch_jozsa_circuit
from .grover import grover, grover_circuit, grover_iterations, success_probability
from .shor import (PrimePowerInput, ShorResult, find_order_quantum, gcd, is_prime_or_prime_power,
                   modpow, multiplicative_order, order_finding_circuit, shor_factor)
from .simon import (BudgetExhausted, SimonResult, gf2_nullspace, gf2_rank, simon_circuit,
                    simon_recover, simon_sample)

__all__ = [
    "OracleSpec", "Verdict", "deutsch", "deutsch_circuit", "deutsch_jozsa", "deutsch_jozsa_circuit",
    "grover", "grover_circuit", "grover_iterations", "success_probability",
    "PrimePowerInput", "ShorResult", "find_order_quantum", "gcd", "is_prime_or_prime_power",
    "modpow", "multiplicative_order", "order_finding_circuit", "shor_factor",
    "BudgetExhausted", "SimonResult", "gf2_nullspace", "gf2_rank", "simon_circuit",
    "simon_recover", "simon_sample",
]
