"""Explicit numeric bounds on indices of prime-power terms in elliptic
divisibility sequences, as pure formula evaluators over height inputs.

Every function here just evaluates a closed-form expression; the heights
feeding them are measured elsewhere.  Hard-coded decimal constants are
collected in CONSTANTS so they can be audited in one place.  Where a bound
is stated as a disjunction ("n exceeds A or n exceeds B"), evaluators
return both branches and the caller-facing value is the max, which is the
safe single cutoff for a sieve.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import gmpy2

from .bigfloat import precision
from .errors import HypothesisViolated, PreconditionViolated

# One audit point for every literal constant used by the bound formulas.
CONSTANTS = {
    "arch_vs_naive_slack": "1.07",         # h_inf comparison constant
    "david_c1": "5.9e43",                  # linear-forms-in-ell-logs leading factor
    "david_c2_offset": "2.81",             # david bound additive offset (plus h(E))
    "isogenous_height_offset": "15.8",     # naive height comparison of isogenous curves
    "gap_caseA_offset": "24.42",
    "gap_caseB_offset": "23.42",
    "gap_caseA_hE_coeff": 52,
    "gap_caseB_hE_coeff": 26,
    "nonuniform_1": "2.1e30",
    "nonuniform_2": "4.3e27",
    "nonuniform_3": "8.7e23",
    "nonuniform_4": "2e27",
    "nonuniform_second_1": "4.2e30",
    "nonuniform_second_3": "1.7e24",
    "nonuniform_second_4": "4e27",
    "szpiro_power_base": 20,
    "szpiro_power_exp": 8,
    "szpiro_exp_base": 4,
    "composite_log_factor": 18,
    "composite_log_inner": 70,
    "composite_linear": 490000,
    "n3_factor": 77,
    "bounded_component_linear": 288,
    "bounded_component_hE_coeff": 128,
    "bounded_component_offset": 135,
    "magnified_siegel_hE_coeff": 7,
    "magnified_siegel_offset": 8,
    "lll_threshold_floor": 8,
}


def _c(name):
    v = CONSTANTS[name]
    return gmpy2.mpfr(v) if isinstance(v, str) else gmpy2.mpfr(v)


@dataclass(frozen=True)
class BoundInputs:
    """Measured heights and parameters feeding the bound formulas.

    h_P, h_sigmaP: canonical heights of P' and sigma(P'); hE, hEprime:
    curve heights of codomain and domain; d: isogeny degree; eps, M,
    Mprime: the archimedean-domination parameters; S_sigma, C_sigma: the
    Szpiro-ratio quantities."""

    h_P: object = None
    h_sigmaP: object = None
    hE: object = None
    hEprime: object = None
    d: int = 1
    eps: object = 0
    M: object = 0
    Mprime: object = 0
    S_sigma: object = None
    C_sigma: object = None


class BoundMeaning(enum.Enum):
    IndexExceedingImpliesNewPrime = "IndexExceedingImpliesNewPrime"
    IndexExceedingImpliesTwoNewPrimes = "IndexExceedingImpliesTwoNewPrimes"
    UpperBoundOnIndex = "UpperBoundOnIndex"


@dataclass(frozen=True)
class BoundReport:
    name: str
    inputs: BoundInputs
    value: object
    meaning: BoundMeaning


def solve_n2_log(a, b, d: int, A, bits: int | None = None):
    """Largest n compatible with n^2 <= a (log n + 1)^d + b, bounded by
    max{A (2d log 2d + 2 log A)^d, a/A + sqrt(b)} for any A >= 1."""
    with precision(bits):
        a, b, A = gmpy2.mpfr(a), gmpy2.mpfr(b), gmpy2.mpfr(A)
        first = A * (2 * d * gmpy2.log(gmpy2.mpfr(2 * d)) + 2 * gmpy2.log(A)) ** d
        second = a / A + gmpy2.sqrt(b)
        return max(first, second)


def siegel_bounds(inp: BoundInputs, bits: int | None = None):
    """Past bound1 a new prime enters B_{nP'}; past bound2 one enters
    B_{n sigma(P')}."""
    with precision(bits):
        h_P = gmpy2.mpfr(inp.h_P)
        eps = gmpy2.mpfr(inp.eps)
        d = inp.d
        denom2 = (d - d * eps - 1) * h_P
        if d * (1 - eps) <= 1:
            raise HypothesisViolated("need d(1 - eps) > 1")
        denom1 = (1 - eps) * h_P
        bound1 = 2 / denom1 + gmpy2.sqrt(
            (gmpy2.mpfr(inp.Mprime) + gmpy2.mpfr(inp.hEprime) + h_P) / denom1
        )
        bound2 = 2 / denom2 + gmpy2.sqrt(
            (gmpy2.mpfr(inp.M) + gmpy2.mpfr(inp.hE) + d * h_P + gmpy2.log(gmpy2.mpfr(d)))
            / denom2
        )
        return bound1, bound2


def david_arch_bound(hE, hP_hat, n: int, bits: int | None = None):
    """Upper bound on the archimedean canonical height of nP coming from
    lower bounds on linear forms in elliptic logarithms."""
    if n <= 1:
        raise PreconditionViolated("need n > 1")
    with precision(bits):
        hE = gmpy2.mpfr(hE)
        e = gmpy2.exp(gmpy2.mpfr(1))
        b_n = max(
            gmpy2.log(gmpy2.mpfr(2 * n)),
            2 * gmpy2.mpfr(hP_hat),
            12 * e * hE + 5 * e * gmpy2.log(gmpy2.mpfr(6)),
        )
        c1 = _c("david_c1")
        c2 = hE + _c("david_c2_offset")
        return c1 * (b_n + gmpy2.log(gmpy2.mpfr(3)) + 1) ** 6 + c2


def nonuniform_bounds(inp: BoundInputs, bits: int | None = None):
    """(N_first, N_second): absolute index cutoffs past which B_{nP'} resp.
    B_{n sigma(P')} gains a new prime, from the David-route epsilon/M."""
    with precision(bits):
        h_P = gmpy2.mpfr(inp.h_P)
        n_first = max(
            _c("nonuniform_1"),
            _c("nonuniform_2") / h_P,
            _c("nonuniform_3") * h_P ** gmpy2.mpfr("2.5"),
            _c("nonuniform_4") * gmpy2.mpfr(inp.hEprime) ** gmpy2.mpfr("3.5") / h_P,
        )
        h_sP = gmpy2.mpfr(inp.h_sigmaP)
        n_second = max(
            _c("nonuniform_second_1"),
            _c("nonuniform_2") / h_P,
            _c("nonuniform_second_3") * h_sP ** gmpy2.mpfr("2.5"),
            _c("nonuniform_second_4") * gmpy2.mpfr(inp.hE) ** gmpy2.mpfr("3.5") / h_sP,
        )
        return n_first, n_second


def szpiro_constant(S, bits: int | None = None):
    """C = max{1, (20 S)^8 10^(4S)} for a Szpiro-ratio bound S >= 1."""
    with precision(bits):
        S = gmpy2.mpfr(S)
        return max(
            gmpy2.mpfr(1),
            (_c("szpiro_power_base") * S) ** CONSTANTS["szpiro_power_exp"]
            * gmpy2.mpfr(10) ** (_c("szpiro_exp_base") * S),
        )


def theorem12_bounds(C, h_sigmaP, bits: int | None = None):
    """(composite_bound, N1_bound, N3_bound) as functions of the Szpiro
    constant C: past composite_bound every term B_{n sigma(P')} with n odd
    coprime-structured is composite; N1/N3 bound the prime-power indices."""
    with precision(bits):
        C = gmpy2.mpfr(C)
        composite = max(
            _c("composite_log_factor")
            * C
            * gmpy2.log(_c("composite_log_inner") * C) ** 2,
            _c("composite_linear") * C,
        )
        n1 = max(
            _c("nonuniform_second_1") * C,
            _c("nonuniform_second_4")
            * C ** gmpy2.mpfr("3.5")
            * gmpy2.mpfr(h_sigmaP) ** gmpy2.mpfr("2.5"),
        )
        n3 = _c("n3_factor") * C
        return composite, n1, n3


def bounded_component_bounds(h_P, hEprime, bits: int | None = None):
    """Index cutoff for two new primes when sigma has odd degree and P' sits
    on the compact real component."""
    with precision(bits):
        h = gmpy2.mpfr(h_P)
        rt = gmpy2.sqrt(h)
        first = (4 / rt) * gmpy2.log(2 / rt)
        second = _c("bounded_component_linear") / rt + 4 * gmpy2.sqrt(
            1
            + (_c("bounded_component_hE_coeff") * gmpy2.mpfr(hEprime)
               + _c("bounded_component_offset"))
            / h
        )
        return max(first, second)


def doubly_magnified_degree_bounds(h_P, hE0, bits: int | None = None):
    """Degree threshold for a doubly magnified point: the branch max,
    squared (the branches bound sqrt(deg)), floored at 1."""
    with precision(bits):
        h = gmpy2.mpfr(h_P)
        rt = gmpy2.sqrt(h)
        first = (2 / rt) * gmpy2.log(2 / rt)
        second = 144 / rt + 2 * gmpy2.sqrt(
            1
            + (_c("bounded_component_hE_coeff") * gmpy2.mpfr(hE0)
               + _c("bounded_component_offset"))
            / h
        )
        return max(max(first, second) ** 2, gmpy2.mpfr(1))


def magnified_siegel_bound(hEprime, deg_st: int, bits: int | None = None):
    """Archimedean height cap 7 h(E') + 8 + log(deg) under the all-new-primes
    -divide hypothesis; usable as the Mprime input of siegel_bounds."""
    if deg_st < 1:
        raise PreconditionViolated("need deg >= 1")
    with precision(bits):
        return (
            _c("magnified_siegel_hE_coeff") * gmpy2.mpfr(hEprime)
            + _c("magnified_siegel_offset")
            + gmpy2.log(gmpy2.mpfr(deg_st))
        )


def lll_gap_threshold(inp: BoundInputs, bits: int | None = None):
    """Index floor above which the elliptic-log nondegeneracy applies."""
    with precision(bits):
        h_P = gmpy2.mpfr(inp.h_P)
        ratio = max(
            5 * gmpy2.mpfr(inp.hEprime) / h_P,
            9 * gmpy2.mpfr(inp.hE) / gmpy2.mpfr(inp.h_P),
        )
        val = 2 / h_P + gmpy2.sqrt(3 + ratio + 7 / h_P)
        return max(_c("lll_threshold_floor"), val)


def gap_principle(n1: int, n2: int, n3: int, inp: BoundInputs, bits: int | None = None):
    """(bound_caseA, bound_caseB, hypotheses_ok) for three candidate indices.

    Hypotheses: n3 > n2 > n1 > 8, pairwise coprime, each above the
    lll threshold; violations are reported through hypotheses_ok rather
    than raised, so a sieve can still log the would-be bounds.  Case B is
    evaluated with the largest index (i = 3), the conservative choice."""
    from math import gcd

    if inp.h_P is None or inp.h_P <= 0 or inp.h_sigmaP is None or inp.h_sigmaP <= 0:
        raise PreconditionViolated("gap principle needs positive h_P and h_sigmaP")
    detail = None
    if not (n3 > n2 > n1 > 8):
        detail = f"need n3 > n2 > n1 > 8, got {n1}, {n2}, {n3}"
    elif gcd(n1, n2) != 1 or gcd(n1, n3) != 1 or gcd(n2, n3) != 1:
        detail = f"indices not pairwise coprime: {n1}, {n2}, {n3}"
    with precision(bits):
        if detail is None:
            thr = lll_gap_threshold(inp, bits)
            if not all(n > thr for n in (n1, n2, n3)):
                detail = f"some index below the gap threshold {thr}"
        h_P = gmpy2.mpfr(inp.h_P)
        h_sP = gmpy2.mpfr(inp.h_sigmaP)
        case_a = 2 / h_P + gmpy2.sqrt(
            2
            + (2 * gmpy2.log(gmpy2.mpfr(n3)) + CONSTANTS["gap_caseA_hE_coeff"] * gmpy2.mpfr(inp.hE))
            / h_sP
            + _c("gap_caseA_offset") / h_P
        )
        case_b = 2 / h_P + gmpy2.sqrt(
            1
            + (
                gmpy2.log(gmpy2.mpfr(n3))
                + CONSTANTS["gap_caseB_hE_coeff"] * gmpy2.mpfr(inp.hEprime)
                + _c("gap_caseB_offset")
            )
            / h_P
        )
    return case_a, case_b, detail is None


def report(name: str, inputs: BoundInputs, value, meaning: BoundMeaning) -> BoundReport:
    if not (gmpy2.is_finite(gmpy2.mpfr(value)) and value >= 0):
        raise ValueError(f"bound {name} must be finite and nonnegative")
    return BoundReport(name, inputs, value, meaning)
