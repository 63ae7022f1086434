"""Big-integer primality and factoring primitives.

Deterministic Miller-Rabin below 2^64 (fixed witness set known to be
exhaustive there); above 2^64 a fixed, documented witness schedule gives
reproducible ProbablePrime verdicts.  Pollard rho (Brent variant) and
Pollard p-1 run under operation-count budgets, never wall-clock, so runs
are deterministic and CI-reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

# Witnesses proving primality for all n < 3.3e24 > 2^64 (Sorenson-Webster).
_DETERMINISTIC_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
# Fixed schedule above 2^64: the first 24 primes.  Deterministic, documented.
_PROBABLE_WITNESSES = (
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47,
    53, 59, 61, 67, 71, 73, 79, 83, 89,
)

TRIAL_LIMIT = 10**6


@lru_cache(maxsize=1)
def small_primes(limit: int = TRIAL_LIMIT) -> tuple[int, ...]:
    """Primes <= limit by a plain sieve of Eratosthenes."""
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return tuple(i for i, v in enumerate(sieve) if v)


def _miller_rabin(n: int, witnesses) -> bool:
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in witnesses:
        a %= n
        if a in (0, 1, n - 1):
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_probable_prime(n: int) -> bool:
    """Deterministic for n < 2^64; fixed-schedule probable-prime above."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    if n < 2**64:
        return _miller_rabin(n, _DETERMINISTIC_WITNESSES)
    return _miller_rabin(n, _PROBABLE_WITNESSES)


def is_proven_prime_range(n: int) -> bool:
    """True iff the primality verdict for n is deterministic (n < 2^64)."""
    return n < 2**64


@dataclass
class Budget:
    """Operation-count budget shared across factoring attempts."""

    operations: int = 2_000_000
    used: int = 0

    def spend(self, ops: int) -> bool:
        """Consume ops; return False once the budget is exhausted."""
        self.used += ops
        return self.used <= self.operations

    @property
    def exhausted(self) -> bool:
        return self.used > self.operations


def _pollard_brent(n: int, budget: Budget, seed: int = 1) -> int | None:
    """Brent-cycle Pollard rho.  Returns a nontrivial factor or None.
    Deterministic: the constants and starting values walk a fixed schedule."""
    if n % 2 == 0:
        return 2
    for c in range(seed, seed + 20):
        y, r, q = 2, 1, 1
        d = 1
        while d == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            if not budget.spend(r):
                return None
            k = 0
            while k < r and d == 1:
                ys = y
                block = min(128, r - k)
                for _ in range(block):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                if not budget.spend(block):
                    return None
                d = math.gcd(q, n)
                k += block
            r *= 2
        if d == n:
            # product gcd overshot; redo the last block one step at a time
            d = 1
            while d == 1:
                ys = (ys * ys + c) % n
                d = math.gcd(abs(x - ys), n)
                if not budget.spend(1):
                    return None
        if 1 < d < n:
            return d
        if budget.exhausted:
            return None
    return None


def _pollard_pm1(n: int, budget: Budget, bound: int = 10_000) -> int | None:
    a = 2
    for p in small_primes():
        if p > bound:
            break
        e = int(math.log(bound) / math.log(p))
        a = pow(a, p**e, n)
        if not budget.spend(e):
            return None
        d = math.gcd(a - 1, n)
        if 1 < d < n:
            return d
        if d == n:
            return None
    return None


@dataclass
class PartialFactorization:
    """Factors found so far plus the unfactored cofactor."""

    factors: dict[int, int] = field(default_factory=dict)
    cofactor: int = 1
    cofactor_is_composite: bool = False

    def add(self, p: int, e: int = 1) -> None:
        self.factors[p] = self.factors.get(p, 0) + e

    @property
    def complete(self) -> bool:
        return self.cofactor == 1


def factor(n: int, budget: Budget | None = None, trial_limit: int = TRIAL_LIMIT) -> PartialFactorization:
    """Factor n >= 1: trial division, then probable-prime test, then bounded
    rho / p-1 rounds.  May leave a composite cofactor when the budget runs
    out; never wrong, possibly incomplete."""
    if n < 1:
        raise ValueError("factor() expects a positive integer")
    if budget is None:
        budget = Budget()
    out = PartialFactorization()
    for p in small_primes(trial_limit):
        if p * p > n:
            break
        while n % p == 0:
            out.add(p)
            n //= p
    if n == 1:
        return out
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_probable_prime(m):
            out.add(m)
            continue
        d = _pollard_brent(m, budget)
        if d is None:
            d = _pollard_pm1(m, budget)
        if d is None or d in (1, m):
            out.cofactor *= m
            out.cofactor_is_composite = True
            continue
        stack.append(d)
        stack.append(m // d)
    return out


def factor_completely(n: int, budget_ops: int = 50_000_000) -> dict[int, int]:
    """Full factorization or a hard error.  Used where completeness is a
    precondition (e.g. the bad primes of a discriminant)."""
    sign_note = n
    if sign_note < 0:
        n = -n
    if n == 0:
        raise ValueError("cannot factor 0")
    pf = factor(n, Budget(budget_ops))
    if not pf.complete:
        raise ArithmeticError(f"could not fully factor {sign_note}")
    return dict(sorted(pf.factors.items()))


def valuation(n: int, p: int) -> int:
    """ord_p(n) for n != 0."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v
