"""Sieve the terms B_{nP'} / B_{n sigma(P')} for indices with at most one
prime factor outside a base set, and emit the associated Thue instances.

The division polynomial psi_sigma need not itself have rational
coefficients (its square does), so a Thue instance carries the squared
form: with psi_sq of degree deg(sigma)-1 in x, the integer

    V(A, B) := B^(2(deg-1)) * psi_sq(A / B^2)

equals (B^(deg-1) psi_sigma(P))^2 at P = (A/B^2, *).  The emitted equation
is V(A, B) = d(n)^2 for a divisor d(n) of deg(sigma)^2 Delta_dom^r with
|d(n)| <= deg(sigma) exp((3/2) deg(sigma) h(E_dom)); both signs of d are
enumerated.

All factoring is budgeted by operation counts, never wall clock, and an
exhausted budget degrades verdicts to Unknown instead of aborting.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import gmpy2

from .bigfloat import precision
from .curve_core import Point, on_curve, point_mul
from .division_polynomials import Isogeny, isogeny_apply
from .eds import sequence
from .errors import FirstAlternative, PointNotOnCurve
from .intfactor import Budget, factor, is_probable_prime


@dataclass(frozen=True)
class FactorClassification:
    B: int
    known_factors: tuple[tuple[int, int], ...]
    cofactor: int
    cofactor_status: str  # One | ProbablePrime | Composite | Unknown

    @property
    def known_primes(self) -> set[int]:
        return {p for p, _ in self.known_factors}

    @property
    def complete(self) -> bool:
        return self.cofactor_status in ("One", "ProbablePrime")

    @property
    def all_primes(self) -> set[int]:
        out = self.known_primes
        if self.cofactor_status == "ProbablePrime":
            out = out | {self.cofactor}
        return out


@dataclass(frozen=True)
class SieveRecord:
    n: int
    classification: FactorClassification       # of the image term B_{n sigma(P')}
    base_classification: FactorClassification  # of B_{nP'}
    all_base_primes_in_S: bool | None          # every prime of B_{nP'} in S(P')
    new_prime_count: str                       # "0" | "1" | ">=2" | "Unknown"
    in_I: bool | None


@dataclass(frozen=True)
class ThueInstance:
    poly: object            # psi_sq as XPolynomial in x; V(A,B) = B^(2(deg-1)) poly(A/B^2)
    degree: int             # deg(sigma)
    rhs: int                # the divisor d(n); equation V(A,B) = rhs^2
    rhs_bound: object       # mpfr cap on |d(n)|
    matches_actual: bool    # whether (A_{nP'}, B_{nP'}) satisfies this instance


def classify(B: int, base_primes: set[int] | frozenset[int], budget: Budget | None = None) -> FactorClassification:
    """Pull out base primes, then run the budgeted factoring pipeline."""
    if B < 1:
        raise ValueError("classify expects a positive integer")
    known: dict[int, int] = {}
    rest = B
    for p in sorted(base_primes):
        while rest % p == 0:
            known[p] = known.get(p, 0) + 1
            rest //= p
    pf = factor(rest, budget)
    for p, e in pf.factors.items():
        known[p] = known.get(p, 0) + e
    if pf.cofactor == 1:
        status, cof = "One", 1
    elif is_probable_prime(pf.cofactor):
        status, cof = "ProbablePrime", pf.cofactor
    else:
        status, cof = "Unknown", pf.cofactor
    return FactorClassification(B, tuple(sorted(known.items())), cof, status)


def _b_of(P: Point) -> int:
    return 1 if P.is_infinity else P.triple[1]


def _count_new(cls: FactorClassification, base: set[int]) -> str:
    known_new = len(cls.all_primes - base)
    if cls.cofactor_status in ("One", "ProbablePrime"):
        return str(known_new) if known_new < 2 else ">=2"
    # composite unresolved cofactor: it contributes at least one new prime
    if known_new >= 1:
        return ">=2"
    return "Unknown"


def sieve_magnified(
    sigma: Isogeny,
    P_prime: Point,
    n_max: int,
    budget_ops: int = 2_000_000,
    threads: int = 1,
) -> list[SieveRecord]:
    """For each n <= n_max, classify B_{nP'} against S(P') and
    B_{n sigma(P')} against primes(B_{nP'}) together with S(sigma(P'))."""
    if not on_curve(sigma.domain, P_prime):
        raise PointNotOnCurve(f"{P_prime} not on {sigma.domain}")
    Q = isogeny_apply(sigma, P_prime)
    seq_dom = sequence(sigma.domain, P_prime, n_max)
    seq_img = sequence(sigma.codomain, Q, n_max)
    S_base = frozenset(classify(_b_of_term(seq_dom[0]), frozenset()).all_primes)
    S_img = frozenset(classify(_b_of_term(seq_img[0]), frozenset()).all_primes)

    def one(n: int) -> SieveRecord:
        b1 = _b_of_term(seq_dom[n - 1])
        b2 = _b_of_term(seq_img[n - 1])
        c1 = classify(b1, S_base, Budget(budget_ops))
        c2 = classify(b2, c1.all_primes | S_img, Budget(budget_ops))
        new1 = c1.all_primes - S_base
        if new1:
            cond_i = False
        elif c1.complete:
            cond_i = True
        else:
            cond_i = None
        count = _count_new(c2, c1.all_primes | S_img)
        in_i = None if count == "Unknown" else count in ("0", "1")
        return SieveRecord(n, c2, c1, cond_i, count, in_i)

    ns = range(1, n_max + 1)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(one, ns))
    return [one(n) for n in ns]


def _b_of_term(t) -> int:
    return 1 if t.is_infinity else t.B_n


def rhs_bound(sigma: Isogeny, bits: int | None = None):
    """deg(sigma) * exp((3/2) deg(sigma) h(E_domain))."""
    from .heights import curve_height

    with precision(bits):
        d = sigma.degree
        return d * gmpy2.exp(Fraction(3, 2) * d * curve_height(sigma.domain, bits))


def form_value(sigma_psi_sq, degree: int, A: int, B: int) -> int:
    """V(A, B) = B^(2(deg-1)) psi_sq(A/B^2), an integer for integral psi_sq."""
    val = sigma_psi_sq.eval_fraction(Fraction(A, B * B)) * Fraction(B) ** (
        2 * (degree - 1)
    )
    assert val.denominator == 1
    return int(val)


def emit_thue(
    sigma: Isogeny,
    n: int,
    P_prime: Point,
    r_max: int = 3,
    bits: int | None = None,
) -> list[ThueInstance]:
    """All Thue instances for index n, flagging the one (if any) satisfied by
    the actual (A_{nP'}, B_{nP'}).  Raises FirstAlternative when every prime
    of B_{nP'} already divides B_{P'}."""
    if not on_curve(sigma.domain, P_prime):
        raise PointNotOnCurve(f"{P_prime} not on {sigma.domain}")
    S = set(classify(_b_of(P_prime), frozenset()).all_primes)
    nP = point_mul(sigma.domain, n, P_prime)
    A_n, B_n, _ = nP.triple
    c = classify(B_n, S)
    if not (c.all_primes - S):
        raise FirstAlternative(
            f"every prime of B_{{{n}P'}} divides B_P'; index {n} is an S-integer point"
        )
    d = sigma.degree
    cap = rhs_bound(sigma, bits)
    cap_int = int(gmpy2.floor(cap))
    disc = abs(sigma.domain.disc)
    from .intfactor import factor_completely

    fac: dict[int, int] = {}
    for p, e in factor_completely(d * d).items():
        fac[p] = fac.get(p, 0) + e
    for p, e in factor_completely(disc).items():
        fac[p] = fac.get(p, 0) + e * r_max
    divisors = _divisors_up_to(fac, cap_int)
    actual = form_value(sigma.psi_sq, d, A_n, B_n)
    out = []
    for dv in divisors:
        # the underlying equation determines d(n) only up to the sign of the
        # square root; both signed instances share the squared form
        for signed in (dv, -dv):
            out.append(
                ThueInstance(
                    poly=sigma.psi_sq,
                    degree=d,
                    rhs=signed,
                    rhs_bound=cap,
                    matches_actual=(abs(actual) == signed * signed),
                )
            )
    return out


def _divisors_up_to(fac: dict[int, int], cap: int) -> list[int]:
    """Positive divisors <= cap of the integer with factorization fac."""
    out = [1]
    for p, e in fac.items():
        cur = list(out)
        pe = 1
        for _ in range(e):
            pe *= p
            if pe > cap:
                break
            out.extend(v * pe for v in cur if v * pe <= cap)
    return sorted(set(out))


def brute_force_thue(inst: ThueInstance, box: int) -> list[tuple[int, int]]:
    """All (A, B) with |A| <= box, 1 <= B <= box satisfying the instance."""
    target = inst.rhs * inst.rhs
    sols = []
    for B in range(1, box + 1):
        for A in range(-box, box + 1):
            if math.gcd(A, B) != 1:
                continue
            if abs(form_value(inst.poly, inst.degree, A, B)) == target:
                sols.append((A, B))
    return sols
