"""Exact integer arithmetic used throughout the package.

Everything here is a pure function of small integers: factorization by trial
division, a deterministic Miller-Rabin test, multiplicative orders, the
split ``m = w * t`` with ``t`` the largest divisor of ``m`` coprime to ``k``,
and the two-generator Frobenius bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

# Deterministic for every n < 3.3 * 10**24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

FACTOR_LIMIT = 2**64


class DomainError(ValueError):
    """An argument lies outside the domain where an operation is defined."""


@dataclass(frozen=True)
class Factorization:
    n: int
    factors: tuple[tuple[int, int], ...]

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def value(self) -> int:
        out = 1
        for p, e in self.factors:
            out *= p**e
        return out


@dataclass(frozen=True)
class TDecomposition:
    """``m = w * t`` where ``t`` is the largest divisor of ``m`` coprime to ``k``."""

    m: int
    k: int
    t: int
    w: int


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int) -> Factorization:
    """Factor ``n`` by trial division; the leftover cofactor is checked for primality.

    Intended for the desk-scale moduli used here (well below 2**40); larger
    inputs up to ``FACTOR_LIMIT`` work but may be slow if they have two large
    prime factors.
    """
    if n < 2:
        raise DomainError(f"factorize needs n >= 2, got {n}")
    if n >= FACTOR_LIMIT:
        raise DomainError(f"factorize is limited to n < 2**64, got {n}")
    factors = []
    rest = n
    for p in (2, 3):
        e = 0
        while rest % p == 0:
            rest //= p
            e += 1
        if e:
            factors.append((p, e))
    f = 5
    step = 2
    cofactor_prime = rest > 1 and is_prime(rest)
    while f * f <= rest and not cofactor_prime:
        e = 0
        while rest % f == 0:
            rest //= f
            e += 1
        if e:
            factors.append((f, e))
            cofactor_prime = rest > 1 and is_prime(rest)
        f += step
        step = 6 - step
    if rest > 1:
        factors.append((rest, 1))
    return Factorization(n, tuple(factors))


def prime_support(n: int) -> set[int]:
    if n == 1:
        return set()
    return set(factorize(n).primes)


def multiplicative_order(a: int, p: int) -> int:
    """Smallest ``e >= 1`` with ``a**e == 1 (mod p)`` for prime ``p``.

    Computed from the factorization of ``p - 1`` by stripping prime factors
    off the group order while the power stays 1.
    """
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    a %= p
    if a == 0:
        raise DomainError(f"order of 0 mod {p} is undefined")
    order = p - 1
    if order == 1:
        return 1
    for q, _ in factorize(order).factors:
        while order % q == 0 and pow(a, order // q, p) == 1:
            order //= q
    return order


def t_decomposition(m: int, k: int) -> TDecomposition:
    if m < 1:
        raise DomainError(f"m must be positive, got {m}")
    if k < 2:
        raise DomainError(f"k must be at least 2, got {k}")
    # Strip from m every prime shared with k; what is left is t.
    t = m
    g = gcd(t, k)
    while g > 1:
        t //= g
        g = gcd(t, g)
    return TDecomposition(m=m, k=k, t=t, w=m // t)


def literal_support_condition(p: int, k: int) -> bool:
    """Every odd prime dividing ``p - 1`` also divides ``k``.

    This is the bare factor-shape condition ``p - 1 = 2^b0 * q1^b1 ...`` with
    the ``q_i`` the primes of ``k``.  For odd ``k`` it is too weak to pin down
    the component count when ``4 | p - 1`` (e.g. ``p = 5, k = 5``); use
    :func:`support_condition` for predictions.
    """
    if p < 3 or not is_prime(p):
        raise DomainError(f"{p} is not an odd prime")
    return prime_support(p - 1) - {2} <= prime_support(k)


def support_condition(p: int, k: int) -> bool:
    """True when ``G_p^k`` has the minimum possible number of cycle vertices.

    Equivalent to ``t <= 2`` in the split ``p - 1 = w * t``.  For even ``k``
    this is exactly "every odd prime of ``p - 1`` divides ``k``".  For odd
    ``k`` it additionally requires ``p = 3 (mod 4)``, since the full power of
    2 in ``p - 1`` stays in ``t``.
    """
    if p < 3 or not is_prime(p):
        raise DomainError(f"{p} is not an odd prime")
    if k < 2:
        raise DomainError(f"k must be at least 2, got {k}")
    return t_decomposition(p - 1, k).t <= 2


def frobenius_bound(i: int, j: int) -> int:
    """Least ``n0`` such that every multiple of ``gcd(i, j)`` above ``n0`` is ``u*i + v*j``.

    Returns ``-gcd(i, j)`` when every nonnegative multiple is representable
    (one of the reduced generators is 1), so ``(1, j)`` gives -1.
    """
    if i <= 0 or j <= 0:
        raise DomainError(f"generators must be positive, got ({i}, {j})")
    g = gcd(i, j)
    a, b = i // g, j // g
    if a == 1 or b == 1:
        return -g
    return g * (a * b - a - b)


def is_fermat_prime(p: int) -> bool:
    return p >= 3 and (p - 1) & (p - 2) == 0 and is_prime(p)


def primes_up_to(limit: int) -> list[int]:
    if limit < 2:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for q in range(2, int(limit**0.5) + 1):
        if sieve[q]:
            sieve[q * q :: q] = bytearray(len(range(q * q, limit + 1, q)))
    return [q for q in range(limit + 1) if sieve[q]]


def smallest_prime_factor(n: int) -> int:
    return factorize(n).factors[0][0]
