"""Classical half of compiled order finding: phases, orders and factors."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

MAX_MODULUS = 2**31


class Classification(str, enum.Enum):
    SUCCESS = "success"
    TRIVIAL_OR_INVALID_ORDER = "trivial_or_invalid_order"
    INHERENT_FAILURE = "inherent_failure"


def gcd(u: int, v: int) -> int:
    """Euclid's algorithm."""
    if u < 0 or v < 0:
        raise ValueError("gcd is defined here for non-negative integers only")
    if u == 0 and v == 0:
        raise ValueError("gcd(0, 0) is undefined")
    while v:
        u, v = v, u % v
    return u


def modexp(a: int, z: int, N: int) -> int:
    """``a**z mod N`` by right-to-left square-and-multiply."""
    if N < 2:
        raise ValueError(f"modulus must be >= 2, got {N}")
    if z < 0:
        raise ValueError(f"exponent must be >= 0, got {z}")
    result = 1
    base = a % N
    while z:
        if z & 1:
            result = result * base % N
        base = base * base % N
        z >>= 1
    return result


@dataclass(frozen=True)
class FactoringInstance:
    N: int
    a: int
    argument_bits: int

    def __post_init__(self) -> None:
        if self.N > MAX_MODULUS:
            raise OverflowError(f"N = {self.N} exceeds the supported bound 2**31")
        if not 1 < self.a < self.N:
            raise ValueError(f"need 1 < a < N, got a={self.a}, N={self.N}")
        if gcd(self.a, self.N) != 1:
            raise ValueError(f"a={self.a} and N={self.N} are not coprime")
        if self.argument_bits < 1:
            raise ValueError("argument register needs at least one bit")


def shor15_instance() -> FactoringInstance:
    return FactoringInstance(N=15, a=2, argument_bits=3)


def find_order_bruteforce(inst: FactoringInstance) -> int:
    """Least r >= 1 with a**r = 1 (mod N), by direct iteration."""
    value = inst.a % inst.N
    r = 1
    while value != 1:
        value = value * inst.a % inst.N
        r += 1
    return r


def invert_bit_order(raw: str) -> str:
    return raw[::-1]


def convergents(numerator: int, denominator: int) -> list[tuple[int, int]]:
    """Continued-fraction convergents ``(p, q)`` of ``numerator/denominator``."""
    out = []
    p_prev, p = 0, 1
    q_prev, q = 1, 0
    n, d = numerator, denominator
    while d:
        t = n // d
        n, d = d, n - t * d
        p_prev, p = p, t * p + p_prev
        q_prev, q = q, t * q + q_prev
        out.append((p, q))
    return out


def order_candidate(k: int, m: int, N: Optional[int] = None) -> Optional[int]:
    """Order suggested by the phase ``k / 2**m``.

    Returns the denominator of the last continued-fraction convergent whose
    denominator stays below ``N`` (no bound when ``N`` is None), or None for
    ``k == 0``.
    """
    if not 0 <= k < 2**m:
        raise ValueError(f"k={k} outside [0, 2**{m})")
    if k == 0:
        return None
    best = None
    for _, q in convergents(k, 2**m):
        if N is not None and q >= N:
            break
        best = q
    return best


@dataclass(frozen=True)
class ShorRunResult:
    raw_outcome: str
    phase_numerator: int
    candidate_order: Optional[int]
    classification: Classification
    factors: Optional[tuple[int, int]]

    def to_dict(self) -> dict:
        return {
            "raw_outcome": self.raw_outcome,
            "phase_numerator": self.phase_numerator,
            "candidate_order": self.candidate_order,
            "classification": self.classification.value,
            "factors": list(self.factors) if self.factors else None,
        }


def register_value(bits: str) -> int:
    """Integer held by a register string listed least significant bit first."""
    return sum(1 << i for i, b in enumerate(bits) if b == "1")


def classify_and_factor(inst: FactoringInstance, raw_outcome: str) -> ShorRunResult:
    """Turn one readout of the argument register into an order and factors.

    ``raw_outcome`` is written most significant bit first (``x2 x1 x0`` for
    the 3-bit register). It is reversed into register order and read as the
    phase numerator ``k``.
    """
    if len(raw_outcome) != inst.argument_bits or set(raw_outcome) - {"0", "1"}:
        raise ValueError(
            f"outcome {raw_outcome!r} is not a {inst.argument_bits}-bit string"
        )
    k = register_value(invert_bit_order(raw_outcome))
    r = order_candidate(k, inst.argument_bits, inst.N)

    def result(cls: Classification, factors=None) -> ShorRunResult:
        return ShorRunResult(raw_outcome, k, r, cls, factors)

    if r is None:
        return result(Classification.INHERENT_FAILURE)
    if r % 2 or modexp(inst.a, r, inst.N) != 1:
        return result(Classification.TRIVIAL_OR_INVALID_ORDER)
    half = modexp(inst.a, r // 2, inst.N)
    if half == inst.N - 1:
        return result(Classification.TRIVIAL_OR_INVALID_ORDER)
    # gcd(N, a^(r/2) + 1) is the cofactor when N has two prime factors; the
    # cofactor division keeps the product equal to N for any composite N.
    p = gcd(inst.N, half - 1)
    if p in (1, inst.N):
        return result(Classification.TRIVIAL_OR_INVALID_ORDER)
    return result(Classification.SUCCESS, tuple(sorted((p, inst.N // p))))


def repeat_success_rate(n: int, single_run_success: float) -> float:
    """Chance that at least one of ``n`` independent runs succeeds."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not 0.0 <= single_run_success <= 1.0:
        raise ValueError(f"single_run_success must lie in [0, 1], got {single_run_success}")
    return 1.0 - (1.0 - single_run_success) ** n
