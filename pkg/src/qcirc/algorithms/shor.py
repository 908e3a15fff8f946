"""Shor factoring: classical reduction to order finding plus the quantum subroutine."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterator

from ..circuit import Circuit
from ..linalg import ResourceLimitError
from ..oracles import OracleSpec, modexp_permutation, register_bits
from ..qft import append_inverse_qft_big_endian
from ..sim import MAX_SIM_WIRES, RngLike, make_rng, run
from .simon import BudgetExhausted

MAX_COMBINED = 4


def gcd(a: int, b: int) -> int:
    return math.gcd(a, b)


def modpow(a: int, e: int, m: int) -> int:
    return pow(a, e, m)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % d for d in range(3, math.isqrt(n) + 1, 2))


def integer_root(n: int, k: int) -> int | None:
    """The integer r with r**k == n, if there is one."""
    guess = round(n ** (1.0 / k))
    for r in (guess - 1, guess, guess + 1):
        if r >= 0 and r ** k == n:
            return r
    return None


def is_prime_or_prime_power(n: int) -> tuple[int, int] | None:
    """``(p, k)`` with n = p^k for prime p, or None when n has two distinct prime factors."""
    if is_prime(n):
        return n, 1
    for k in range(2, n.bit_length() + 1):
        r = integer_root(n, k)
        if r is not None and is_prime(r):
            return r, k
    return None


def convergents(num: int, den: int) -> Iterator[Fraction]:
    """Successive continued-fraction convergents of num/den."""
    h0, h1 = 0, 1
    k0, k1 = 1, 0
    while den:
        q, rem = divmod(num, den)
        h0, h1 = h1, q * h1 + h0
        k0, k1 = k1, q * k1 + k0
        yield Fraction(h1, k1)
        num, den = den, rem


def order_candidates(y: int, t: int, n_value: int) -> list[int]:
    """Distinct convergent denominators of y / 2^t below N, smallest first."""
    if y == 0:
        return []
    dens = {f.denominator for f in convergents(y, 1 << t) if 1 < f.denominator < n_value}
    return sorted(dens)


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def minimal_order(a: int, n_value: int, r: int) -> int:
    """Reduce a known r with a^r = 1 (mod N) to the true multiplicative order."""
    for p in _prime_factors(r):
        while r % p == 0 and modpow(a, r // p, n_value) == 1:
            r //= p
    return r


def multiplicative_order(a: int, n_value: int) -> int:
    """Brute-force order of a mod N (used as a cross-check)."""
    if gcd(a, n_value) != 1:
        raise ValueError(f"{a} is not invertible mod {n_value}")
    x, r = a % n_value, 1
    while x != 1 % n_value:
        x = x * a % n_value
        r += 1
    return r


def default_top_size(n_value: int) -> int:
    return 2 * max(1, (n_value - 1).bit_length())


def order_finding_circuit(oracle: OracleSpec, annotate: bool = True) -> Circuit:
    """H on the top register, oracle, measure bottom, inverse QFT, measure top.

    The bottom register starts at ``oracle.bottom_init``; the output lists
    the top wires most significant bit first, so the bit string reads as y.
    """
    c = Circuit()
    if annotate:
        c.comment("Shor algorithm")
    top = c.qinit_many([0] * oracle.top)
    bottom = c.qinit_many([0] * oracle.bottom)
    if annotate:
        c.label(top[0], "top_qubit")
        c.label(bottom[0], "bottom_qubit")
    for w, bit in zip(bottom, register_bits(oracle.bottom_init, oracle.bottom, oracle.bottom_endian)):
        if bit:
            c.qnot(w)
    c.hadamard(*top)
    if annotate:
        c.comment("applying oracle")
    oracle.apply(c, top, bottom)
    if annotate:
        c.comment("after oracle")
    c.measure(bottom)
    c.discard(bottom)
    msb_first = top if oracle.top_endian == "big" else top[::-1]
    append_inverse_qft_big_endian(c, msb_first)
    c.measure(top)
    c.set_output(msb_first)
    return c


def find_order_quantum(a: int, n_value: int, t: int | None = None, rng: RngLike = None,
                       max_samples: int = 20) -> int:
    """Order of a mod N from sampled phase estimates.

    Each sample y is expanded as a continued fraction of y / 2^t. A
    denominator q with a^q = 1 is accepted; otherwise the lcm of up to four
    collected denominators is tried. The accepted value is reduced to the
    minimal order before returning.
    """
    if gcd(a, n_value) != 1:
        raise ValueError(f"a = {a} shares a factor with N = {n_value}")
    b = max(1, (n_value - 1).bit_length())
    t = default_top_size(n_value) if t is None else t
    if t + b > MAX_SIM_WIRES:
        raise ResourceLimitError(f"{t} + {b} wires exceeds simulator limit {MAX_SIM_WIRES}")
    gen = make_rng(rng)
    circuit = order_finding_circuit(modexp_permutation(a, n_value, t, b), annotate=False)
    pool: list[int] = []
    for _ in range(max_samples):
        y = int(run(circuit, gen).bits, 2)
        for q in order_candidates(y, t, n_value):
            if modpow(a, q, n_value) == 1:
                return minimal_order(a, n_value, q)
            if q not in pool:
                pool.append(q)
        recent = pool[-MAX_COMBINED:]
        for size in range(2, len(recent) + 1):
            for combo in combinations(recent, size):
                lcm = math.lcm(*combo)
                if modpow(a, lcm, n_value) == 1:
                    return minimal_order(a, n_value, lcm)
    raise BudgetExhausted(f"no order for a = {a} mod {n_value} after {max_samples} samples")


class PrimePowerInput(ValueError):
    """N is a prime or a prime power, so there is nothing for the quantum step to do."""

    def __init__(self, n_value: int, base: int, exponent: int):
        self.n_value, self.base, self.exponent = n_value, base, exponent
        kind = "prime" if exponent == 1 else f"{base}^{exponent}"
        super().__init__(f"{n_value} is {kind}")


@dataclass(frozen=True)
class ShorResult:
    n_value: int
    factor: int
    a_used: int
    order: int | None  # None when gcd(a, N) already gave the factor
    attempts: int
    rejected: tuple[tuple[int, int | None], ...] = field(default=())


def shor_factor(n_value: int, rng: RngLike = None, forced_a: int | None = None,
                t: int | None = None, max_attempts: int = 10) -> ShorResult:
    """Find a nontrivial factor of N.

    Raises PrimePowerInput for prime or prime-power N. ``forced_a`` is used
    for the first attempt only; rejected bases are recorded with their order.
    """
    if n_value < 4:
        raise ValueError("N must be at least 4")
    pp = is_prime_or_prime_power(n_value)
    if pp is not None:
        raise PrimePowerInput(n_value, *pp)
    if forced_a is not None and not 1 < forced_a < n_value:
        raise ValueError(f"a must satisfy 1 < a < N, got {forced_a}")
    gen = make_rng(rng)
    rejected: list[tuple[int, int | None]] = []
    a = forced_a
    for attempt in range(1, max_attempts + 1):
        if a is None:
            a = int(gen.integers(2, n_value))
        g = gcd(a, n_value)
        if g != 1:
            return ShorResult(n_value, g, a, None, attempt, tuple(rejected))
        try:
            r = find_order_quantum(a, n_value, t, gen)
        except BudgetExhausted:
            rejected.append((a, None))
            a = None
            continue
        half = modpow(a, r // 2, n_value)
        if r % 2 == 0 and half != n_value - 1:
            for f in (gcd(half - 1, n_value), gcd(half + 1, n_value)):
                if 1 < f < n_value:
                    return ShorResult(n_value, f, a, r, attempt, tuple(rejected))
        rejected.append((a, r))
        a = None
    raise BudgetExhausted(f"no factor of {n_value} after {max_attempts} attempts")
