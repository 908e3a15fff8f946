"""Oracle circuit fragments.

Every oracle is an :class:`OracleSpec`: a name, register sizes, and a
builder that appends gates to a circuit given the top and bottom wires.
Hand-written oracles reproduce the classic textbook/tutorial gate lists
gate for gate; the generators exist for property testing.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .circuit import Circuit, controls_from_mask
from .linalg import ResourceLimitError, SquareUnitary

Builder = Callable[[Circuit, Sequence[int], Sequence[int]], None]


@dataclass(frozen=True)
class OracleSpec:
    """A named oracle acting on ``top`` + ``bottom`` wires.

    ``top_endian``/``bottom_endian`` say which end of each wire list holds
    the most significant bit of the register value; ``bottom_init`` is the
    register value the oracle expects as input. Both only matter to callers
    that translate between integers and wires (the order-finding driver).
    """

    name: str
    top: int
    bottom: int
    builder: Builder = field(repr=False, compare=False)
    top_endian: str = "big"
    bottom_endian: str = "big"
    bottom_init: int = 0

    def apply(self, c: Circuit, top: Sequence[int], bottom: Sequence[int]) -> None:
        if len(top) != self.top or len(bottom) != self.bottom:
            raise ValueError(f"oracle {self.name} expects ({self.top}, {self.bottom}) wires, "
                             f"got ({len(top)}, {len(bottom)})")
        self.builder(c, list(top), list(bottom))


def register_bits(value: int, width: int, endian: str = "big") -> list[int]:
    bits = [(value >> (width - 1 - i)) & 1 for i in range(width)]
    return bits if endian == "big" else bits[::-1]


def register_value(bits: Sequence[int], endian: str = "big") -> int:
    bits = list(bits) if endian == "big" else list(bits)[::-1]
    return int("".join(map(str, bits)) or "0", 2)


# -- Deutsch ------------------------------------------------------------------

def _no_gates(c, top, bottom):
    pass


def deutsch_constant() -> OracleSpec:
    """f(x) = 0: the qubits are left unchanged."""
    return OracleSpec("deutsch_constant", 1, 1, _no_gates)


def deutsch_constant_one() -> OracleSpec:
    def build(c, top, bottom):
        c.qnot(bottom[0])
    return OracleSpec("deutsch_constant_one", 1, 1, build)


def deutsch_balanced_identity() -> OracleSpec:
    """f(x) = x: one CNOT from x onto y."""
    def build(c, top, bottom):
        c.qnot(bottom[0], controls=top[0])
    return OracleSpec("deutsch_balanced_identity", 1, 1, build)


def deutsch_balanced_not() -> OracleSpec:
    """f(x) = not x: CNOT with a negative control."""
    def build(c, top, bottom):
        c.qnot(bottom[0], controls=[(top[0], 0)])
    return OracleSpec("deutsch_balanced_not", 1, 1, build)


# -- Deutsch-Jozsa ------------------------------------------------------------

def dj_constant(n: int) -> OracleSpec:
    if n < 1:
        raise ValueError("n must be positive")
    return OracleSpec(f"dj_constant({n})", n, 1, _no_gates)


def dj_parity(n: int) -> OracleSpec:
    """f(x) = parity of x; one CNOT per input wire. Balanced for every n >= 1."""
    if n < 1:
        raise ValueError("n must be positive")

    def build(c, top, bottom):
        for w in top:
            c.qnot(bottom[0], controls=w)
    return OracleSpec(f"dj_parity({n})", n, 1, build)


def dj_from_truth_table(table: Sequence[int]) -> OracleSpec:
    """XOR oracle for an arbitrary f given as ``table[x]``; one MCX per x with f(x)=1."""
    n = int(math.log2(len(table)))
    if 1 << n != len(table) or n < 1:
        raise ValueError("truth table length must be a power of two >= 2")

    def build(c, top, bottom):
        for x, fx in enumerate(table):
            if fx:
                c.qnot(bottom[0], controls=controls_from_mask(top, register_bits(x, n)))
    return OracleSpec(f"dj_table({''.join(map(str, table))})", n, 1, build)


# -- Simon --------------------------------------------------------------------

# Rows exactly as listed for the two-qubit s = 11 example.
SIMON_S11_ROWS = (
    (0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0),
    (1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0),
    (0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0),
    (0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0),
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0),
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0),
)
SIMON_S11_UNITARY = SquareUnitary.from_rows(*SIMON_S11_ROWS)


def xor_oracle_unitary(f: Sequence[int], n: int, m: int) -> SquareUnitary:
    """Permutation |x>|y> -> |x>|y xor f(x)> on n + m wires, x the high bits."""
    mapping = [(x << m) | (y ^ f[x]) for x in range(1 << n) for y in range(1 << m)]
    return SquareUnitary.permutation(mapping)


def _dense_oracle(name: str, u: SquareUnitary, n: int) -> OracleSpec:
    def build(c, top, bottom):
        c.custom_unitary(u, list(top) + list(bottom))
    return OracleSpec(name, n, n, build)


def simon_table1() -> OracleSpec:
    """The n = 2, s = 11 oracle: f(00)=01, f(01)=10, f(10)=10, f(11)=01."""
    return _dense_oracle("simon_table1", SIMON_S11_UNITARY, 2)


MAX_SIMON_BITS = 5


def simon_function(s: str, rng=None) -> list[int]:
    """A random f on n = len(s) bits with f(x) = f(y) iff y in {x, x xor s}.

    Cosets {x, x ^ s} are taken in order of their smaller element and given
    the leading entries of a random permutation of all n-bit values.
    """
    from .sim import make_rng

    n = len(s)
    sv = int(s, 2) if n else 0
    gen = make_rng(rng)
    images = gen.permutation(1 << n)
    f = [-1] * (1 << n)
    nxt = 0
    for x in range(1 << n):
        if f[x] < 0:
            f[x] = f[x ^ sv] = int(images[nxt])
            nxt += 1
    return f


def simon_from_hidden_string(s: str, rng=None) -> OracleSpec:
    n = len(s)
    if n < 1 or set(s) - {"0", "1"}:
        raise ValueError(f"hidden string {s!r} must be a non-empty bit string")
    if n > MAX_SIMON_BITS:
        raise ResourceLimitError(f"Simon oracles are dense; n = {n} exceeds {MAX_SIMON_BITS}")
    return simon_from_function(simon_function(s, rng), name=f"simon_hidden({s})")


def simon_from_function(f: Sequence[int], name: str = "simon_f") -> OracleSpec:
    """Dense XOR oracle for a given f on n bits, ``len(f) == 2**n``."""
    n = (len(f) - 1).bit_length()
    if len(f) != 1 << n or not 1 <= n <= MAX_SIMON_BITS:
        raise ValueError(f"truth table of length {len(f)} is not 2^n with 1 <= n <= {MAX_SIMON_BITS}")
    return _dense_oracle(name, xor_oracle_unitary(f, n, n), n)


# -- Grover -------------------------------------------------------------------

def grover_marked(n: int, x0: int) -> OracleSpec:
    """Flip the bottom wire iff the top register equals ``x0`` (wire 0 = MSB)."""
    if not 0 <= x0 < 1 << n:
        raise ValueError(f"target {x0} out of range for {n} bits")
    mask = register_bits(x0, n)

    def build(c, top, bottom):
        c.qnot(bottom[0], controls=controls_from_mask(top, mask))
    return OracleSpec(f"grover_marked({n},{x0})", n, 1, build)


# -- Shor ---------------------------------------------------------------------

def mod15_base7() -> OracleSpec:
    """Compiled f(x) = 7^x mod 15 on 3 + 4 wires.

    Top and bottom are big-endian and the bottom must start at 1; ``top[0]``
    is unused because 7^4 = 1 (mod 15).
    """
    def build(c, top, bottom):
        x1, x2 = top[1], top[2]
        y0, y1, y2, y3 = bottom
        c.qnot(y1, controls=x2)
        c.qnot(y2, controls=x2)
        c.qnot(y2, controls=y0)
        c.qnot(y0, controls=[x1, y2])
        c.qnot(y2, controls=y0)
        c.qnot(y1, controls=y3)
        c.qnot(y3, controls=[x1, y1])
        c.qnot(y1, controls=y3)
    return OracleSpec("mod15_base7", 3, 4, build, top_endian="big", bottom_endian="big", bottom_init=1)


def mod21_base20() -> OracleSpec:
    """Compiled f(x) = 20^x mod 21 on 3 + 5 wires.

    Only the head wire (the exponent's least significant bit) is read, since
    20^2 = 1 (mod 21). The result is written into a zeroed bottom register
    whose head is its least significant bit.
    """
    def build(c, top, bottom):
        ctrl = top[0]
        y0, y2, y4 = bottom[0], bottom[2], bottom[4]
        c.qnot(y4, controls=ctrl)
        c.qnot(y2, controls=ctrl)
        c.qnot(y0, controls=[(ctrl, 0)])
    return OracleSpec("mod21_base20", 3, 5, build, top_endian="little", bottom_endian="little",
                      bottom_init=0)


def multiply_mod_permutation(m: int, n_value: int, b: int) -> list[int]:
    """y -> m*y mod N for y < N, identity for N <= y < 2^b."""
    mapping = [(m * y) % n_value if y < n_value else y for y in range(1 << b)]
    if sorted(mapping) != list(range(1 << b)):
        raise ValueError(f"multiplication by {m} is not a bijection mod {n_value}")
    return mapping


def modexp_permutation(a: int, n_value: int, t: int, b: int | None = None) -> OracleSpec:
    """|x>|y> -> |x>|y * a^x mod N> for y < N (identity on y >= N).

    Built as one controlled b-wire multiplier per top wire: top wire i (of
    weight 2^(t-1-i)) controls multiplication by a^(2^(t-1-i)) mod N. The
    product of those permutations is the full modular-exponentiation
    permutation, and no matrix grows beyond 2^b x 2^b.
    """
    if math.gcd(a, n_value) != 1:
        raise ValueError(f"a = {a} is not coprime to N = {n_value}")
    need = max(1, (n_value - 1).bit_length())
    b = need if b is None else b
    if b < need:
        raise ValueError(f"bottom register of {b} wires cannot hold values below {n_value}")
    multipliers = []
    for i in range(t):
        m = pow(a, 1 << (t - 1 - i), n_value)
        multipliers.append(None if m == 1 else
                           SquareUnitary.permutation(multiply_mod_permutation(m, n_value, b)))

    def build(c, top, bottom):
        for w, u in zip(top, multipliers):
            if u is not None:
                c.custom_unitary(u, bottom, controls=w)
    return OracleSpec(f"modexp({a},{n_value})", t, b, build, bottom_init=1)


# -- registry -----------------------------------------------------------------

DEUTSCH_ORACLES = {
    "constant": deutsch_constant,
    "constant_one": deutsch_constant_one,
    "balanced_identity": deutsch_balanced_identity,
    "balanced_not": deutsch_balanced_not,
}
DJ_ORACLES = {"constant": dj_constant, "parity": dj_parity}
SHOR_ORACLES = {"mod15_base7": mod15_base7, "mod21_base20": mod21_base20}


def deutsch_oracle(name: str) -> OracleSpec:
    key = name[len("deutsch_"):] if name.startswith("deutsch_") else name
    try:
        return DEUTSCH_ORACLES[key]()
    except KeyError:
        raise KeyError(f"unknown Deutsch oracle {name!r}; expected one of "
                       f"{', '.join(DEUTSCH_ORACLES)}") from None


def dj_oracle(name: str, n: int) -> OracleSpec:
    key = name[len("dj_"):] if name.startswith("dj_") else name
    try:
        return DJ_ORACLES[key](n)
    except KeyError:
        raise KeyError(f"unknown Deutsch-Jozsa oracle {name!r}; expected one of "
                       f"{', '.join(DJ_ORACLES)}") from None


def simon_oracle(name: str, rng=None) -> tuple[OracleSpec, str]:
    """Resolve ``table1`` or ``hidden:<bits>``; returns the oracle and its hidden string."""
    if name in ("table1", "simon_table1"):
        return simon_table1(), "11"
    if name.startswith("hidden:"):
        s = name[len("hidden:"):]
        return simon_from_hidden_string(s, rng), s
    raise KeyError(f"unknown Simon oracle {name!r}; expected table1 or hidden:<bits>")


def induced_function(oracle: OracleSpec) -> list[int]:
    """Tabulate the bottom-register value the oracle writes for every top value.

    Each top value is prepared as a basis state (in the oracle's top
    endianness), the bottom register at ``bottom_init``; the oracle must send
    basis states to basis states.
    """
    from .sim import final_state

    out = []
    for x in range(1 << oracle.top):
        c = Circuit()
        top = c.qinit_many(register_bits(x, oracle.top, oracle.top_endian))
        bottom = c.qinit_many(register_bits(oracle.bottom_init, oracle.bottom, oracle.bottom_endian))
        oracle.apply(c, top, bottom)
        amps = final_state(c).amps
        idx = int(np.argmax(np.abs(amps)))
        if abs(abs(amps[idx]) - 1) > 1e-9:
            raise ValueError(f"oracle {oracle.name} does not map basis states to basis states")
        bits = [(idx >> (c.wire_count - 1 - w)) & 1 for w in bottom]
        out.append(register_value(bits, oracle.bottom_endian))
    return out
