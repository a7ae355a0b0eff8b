"""Exact integer arithmetic for the classical half of order-finding runs."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum


def gcd(a: int, b: int) -> int:
    """Greatest common divisor of two nonnegative integers."""
    if a < 0 or b < 0:
        raise ValueError("gcd arguments must be nonnegative")
    if a == 0 and b == 0:
        raise ValueError("gcd(0, 0) is undefined")
    return math.gcd(a, b)


def mod_pow(a: int, x: int, n: int) -> int:
    """a**x mod n by square-and-multiply; the full power a**x is never formed."""
    if n < 2:
        raise ValueError("modulus must be at least 2")
    if x < 0:
        raise ValueError("exponent must be nonnegative")
    result = 1
    base = a % n
    while x:
        if x & 1:
            result = result * base % n
        base = base * base % n
        x >>= 1
    return result


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def multiplicative_order(a: int, n: int) -> int:
    """Smallest r >= 1 with a**r = 1 (mod n); requires gcd(a, n) = 1."""
    if not 1 < a < n:
        raise ValueError("need 1 < a < n")
    if math.gcd(a, n) != 1:
        raise ValueError(f"a={a} is not coprime to n={n}")
    v = a % n
    r = 1
    while v != 1:
        v = v * a % n
        r += 1
    return r


@dataclass(frozen=True)
class Semiprime:
    """Product of two distinct odd primes."""

    n: int
    p: int
    q: int

    def __post_init__(self) -> None:
        if self.p == self.q:
            raise ValueError("prime factors must be distinct")
        for f in (self.p, self.q):
            if f == 2 or not is_prime(f):
                raise ValueError(f"{f} is not an odd prime")
        if self.p * self.q != self.n:
            raise ValueError(f"{self.p} * {self.q} != {self.n}")


def factor_semiprime(n: int) -> Semiprime:
    """Split n into two distinct odd primes, or raise ValueError."""
    if n < 15 or n % 2 == 0:
        raise ValueError(f"{n} is not an odd semiprime with distinct factors")
    f = 3
    while f * f < n:
        if n % f == 0:
            return Semiprime(n, f, n // f)
        f += 2
    raise ValueError(f"{n} is not an odd semiprime with distinct factors")


def carmichael(p: int, q: int) -> int:
    """lcm(p - 1, q - 1) for distinct odd primes p and q."""
    Semiprime(p * q, p, q)  # validates the inputs
    return math.lcm(p - 1, q - 1)


def allowed_periods(p: int, q: int) -> list[int]:
    """Divisors greater than 1 of carmichael(p, q), ascending.

    Every multiplicative order mod p*q divides carmichael(p, q), so this
    is the complete list of periods an exponentiation map can have.
    """
    lam = carmichael(p, q)
    return [d for d in range(2, lam + 1) if lam % d == 0]


@dataclass(frozen=True)
class OrderRecord:
    a: int
    r: int


def coprime_order_table(n: int) -> list[OrderRecord]:
    """Multiplicative order of every a in (1, n) coprime to n."""
    if n < 3:
        raise ValueError("modulus too small")
    return [
        OrderRecord(a, multiplicative_order(a, n))
        for a in range(2, n)
        if math.gcd(a, n) == 1
    ]


def _int_kth_root(n: int, k: int) -> int | None:
    """Exact integer k-th root of n, or None."""
    if k == 1:
        return n
    if k == 2:
        r = math.isqrt(n)
        return r if r * r == n else None
    r = round(n ** (1.0 / k))
    for cand in (r - 1, r, r + 1):
        if cand >= 1 and cand**k == n:
            return cand
    return None


def is_prime_power(n: int) -> tuple[int, int] | None:
    """Return (p, k) with p prime and p**k = n, else None; k = 1 allowed."""
    if n < 2:
        return None
    for k in range(1, n.bit_length() + 1):
        root = _int_kth_root(n, k)
        if root is not None and is_prime(root):
            return (root, k)
    return None


class PostProcessStatus(Enum):
    FACTORS = "factors"
    ODD_ORDER_NO_SQUARE_ROOT = "odd-order-no-square-root"
    MINUS_ONE_CONGRUENCE = "minus-one-congruence"


@dataclass(frozen=True)
class PostProcessOutcome:
    status: PostProcessStatus
    factors: tuple[int, int] | None = None


class TrivialFactorError(ValueError):
    """gcd(s +- 1, n) came out 1 or n, which yields no factor."""


def shor_postprocess(n: int, a: int, r: int) -> PostProcessOutcome:
    """Classical factor extraction from a verified multiplicative order.

    For even r, s = a**(r/2). For odd r the base must be a perfect square
    so that s = sqrt(a)**r plays the same role. s = -1 (mod n) is reported
    as MINUS_ONE_CONGRUENCE; otherwise gcd(s + 1, n) and gcd(s - 1, n) are
    the factors. A trivial gcd raises rather than returning silently.
    """
    if math.gcd(a, n) != 1:
        raise ValueError("base must be coprime to the modulus")
    if r != multiplicative_order(a, n):
        raise ValueError(f"r={r} is not the multiplicative order of {a} mod {n}")
    if r % 2 == 0:
        s = mod_pow(a, r // 2, n)
    else:
        root = math.isqrt(a)
        if root * root != a:
            return PostProcessOutcome(PostProcessStatus.ODD_ORDER_NO_SQUARE_ROOT)
        s = mod_pow(root, r, n)
    if s == n - 1:
        return PostProcessOutcome(PostProcessStatus.MINUS_ONE_CONGRUENCE)
    f1 = math.gcd(s + 1, n)
    f2 = math.gcd(s - 1, n)
    if f1 in (1, n) or f2 in (1, n):
        raise TrivialFactorError(f"gcd pair ({f1}, {f2}) is trivial for n={n}")
    lo, hi = sorted((f1, f2))
    return PostProcessOutcome(PostProcessStatus.FACTORS, (lo, hi))


def continued_fraction_order(k: int, m: int, n: int) -> int | None:
    """Best period candidate from a measured value k out of m = 2**bits.

    Expands k/m as a continued fraction and returns the largest convergent
    denominator d with 1 < d < n. Returns None when no convergent qualifies;
    in particular k = 0 carries no period information.
    """
    if m < 2 or m & (m - 1):
        raise ValueError("m must be a power of two, at least 2")
    if not 0 <= k < m:
        raise ValueError("need 0 <= k < m")
    if k == 0:
        return None
    best = None
    # Convergent denominators q_i = a_i * q_{i-1} + q_{i-2} for k/m = [0; a_1, a_2, ...].
    q_prev, q_cur = 0, 1
    num, den = m, k
    while den:
        a = num // den
        num, den = den, num % den
        q_prev, q_cur = q_cur, a * q_cur + q_prev
        if 1 < q_cur < n:
            best = q_cur
        if q_cur >= n:
            break
    return best
