"""Nonarchimedean height series without factoring the resultant.

The sum of the local height contributions over all finite places equals
sum_{i<N} log(g_i)/d^(i+1), where g_i is the gcd of the i-th exact image
pair with R = |Res(F, G)|.  The key point is that the g_i survive reduction:
running the orbit modulo R^(N-i) and dividing each step's gcd out of the
reduced pair recovers exactly the g_i of the exact orbit, while keeping
every working integer below R^N.  R is never factored.

When some coprime splitting of R is known anyway (say, small prime powers
from trial division), the same loop runs once per part on much smaller
moduli, and the per-part gcds multiply back into the g_i.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath as mp

from .forms import MapLift, ProjectivePoint, evaluate, evaluate_mod
from .numerics import default_precision_bits, log_int

__all__ = [
    "NonArchResult",
    "PartialFactorization",
    "exact_log_gcd",
    "nonarch_height",
    "nonarch_height_factored",
    "trial_division",
]


@dataclass(frozen=True)
class NonArchResult:
    """Truncated nonarchimedean series together with its per-step gcds.

    value: sum_{i<terms} log(gcd_sequence[i]) / d^(i+1).
    gcd_sequence: the extracted gcds; every entry divides |Res(F, G)|.
    tail_bound: log|Res| / ((d-1) d^terms), bounding the discarded tail.
    modulus_bits: bit length of the largest modulus the loop worked with.
    precision_bits: working precision of the logarithms in `value`.
    """

    value: mp.mpf
    gcd_sequence: tuple[int, ...]
    tail_bound: mp.mpf
    terms: int
    modulus_bits: int
    precision_bits: int


@dataclass(frozen=True)
class PartialFactorization:
    """Pairwise-coprime parts, each > 1, of some positive modulus.

    provenance[i] records how part i was obtained: "prime-power" (trial
    division), "cofactor" (the unfactored remainder), or "user".
    """

    coprime_parts: tuple[int, ...]
    provenance: tuple[str, ...]

    def __post_init__(self) -> None:
        parts = tuple(int(p) for p in self.coprime_parts)
        prov = tuple(str(t) for t in self.provenance)
        if len(parts) != len(prov):
            raise ValueError("need exactly one provenance tag per part")
        if any(p <= 1 for p in parts):
            raise ValueError("every part must exceed 1")
        object.__setattr__(self, "coprime_parts", parts)
        object.__setattr__(self, "provenance", prov)

    def validate_for(self, modulus: int) -> None:
        """Raise ValueError unless the parts are pairwise coprime with product `modulus`."""
        prod = 1
        for i, p in enumerate(self.coprime_parts):
            for q in self.coprime_parts[i + 1 :]:
                if math.gcd(p, q) != 1:
                    raise ValueError(f"parts {p} and {q} are not coprime")
            prod *= p
        if prod != modulus:
            raise ValueError("the product of the parts must equal the modulus")


_SIEVE_CAP = 10_000_000


@lru_cache(maxsize=8)
def _primes_upto(bound: int) -> tuple[int, ...]:
    sieve = bytearray([1]) * (bound + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(bound) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(range(p * p, bound + 1, p)))
    return tuple(i for i in range(bound + 1) if sieve[i])


def trial_division(R: int, bound: int = 100_000) -> PartialFactorization:
    """Split R into prime powers p^e for p <= bound plus one unfactored cofactor.

    The parts are pairwise coprime and multiply to R.  If the remainder
    after stripping small primes is 1 there is no cofactor part.
    """
    if R < 2:
        raise ValueError("trial division needs an integer >= 2")
    if bound < 2:
        raise ValueError("bound must be at least 2")
    if bound > _SIEVE_CAP:
        raise ValueError(f"bound above {_SIEVE_CAP} is not supported")
    parts: list[int] = []
    prov: list[str] = []
    rest = R
    for p in _primes_upto(bound):
        if rest == 1 or p * p > rest:
            break
        if rest % p == 0:
            q = p
            rest //= p
            while rest % p == 0:
                q *= p
                rest //= p
            parts.append(q)
            prov.append("prime-power")
    if rest > 1:
        if rest <= bound:
            # survived division by every prime up to its square root, so prime
            parts.append(rest)
            prov.append("prime-power")
        else:
            parts.append(rest)
            prov.append("cofactor")
    return PartialFactorization(tuple(parts), tuple(prov))


def exact_log_gcd(lift: MapLift, Q: ProjectivePoint, precision_bits: int | None = None) -> mp.mpf:
    """log gcd(F(Q), G(Q)) from the two full-size exact evaluations.

    Oracle-grade only: along an orbit the evaluations grow like d^n digits,
    so this is for tests and single steps; use nonarch_height for series.
    """
    g = math.gcd(evaluate(lift.F, Q.x, Q.y), evaluate(lift.G, Q.x, Q.y))
    bits = precision_bits or default_precision_bits(lift.degree, 1, lift.coeff_norm)
    with mp.workprec(bits):
        return log_int(g)


def _check_terms(terms: int) -> None:
    if not isinstance(terms, int) or terms < 1:
        raise ValueError("terms must be a positive integer")


def _gcd_loop(lift: MapLift, P: ProjectivePoint, modulus: int, top_power: int, terms: int) -> list[int]:
    """Reduced-orbit gcd extraction against one modulus.

    Step i works modulo modulus^(terms-i); the shrinking powers come from
    exact division of the precomputed top power, so only one big power is
    ever held.  gcd(0, 0, m) = m is correct here: the true orbit gcd always
    divides the modulus, so a doubly-vanishing residue pair means the gcd
    is the whole current part.
    """
    F, G = lift.F, lift.G
    live = top_power
    x, y = P.x % live, P.y % live
    out: list[int] = []
    for _ in range(terms):
        fx = evaluate_mod(F, x, y, live)
        gy = evaluate_mod(G, x, y, live)
        g = math.gcd(fx, gy, modulus)
        out.append(g)
        live //= modulus
        if live > 1:
            x, y = (fx // g) % live, (gy // g) % live
    return out


def _assemble(
    lift: MapLift,
    gs: list[int],
    terms: int,
    modulus_bits: int,
    precision_bits: int,
) -> NonArchResult:
    d = lift.degree
    R = abs(lift.resultant)
    with mp.workprec(precision_bits):
        total = mp.mpf(0)
        denom = d
        for g in gs:
            if g > 1:
                total += log_int(g) / denom
            denom *= d
        tail = log_int(R) / ((d - 1) * d**terms)
    return NonArchResult(
        value=total,
        gcd_sequence=tuple(gs),
        tail_bound=tail,
        terms=terms,
        modulus_bits=modulus_bits,
        precision_bits=precision_bits,
    )


def nonarch_height(
    lift: MapLift,
    P: ProjectivePoint,
    terms: int,
    precision_bits: int | None = None,
) -> NonArchResult:
    """Truncated nonarchimedean series at P via the single-modulus gcd loop.

    The full infinite sum differs from the returned value by at most
    tail_bound.  A unit resultant short-circuits: every orbit gcd is 1 and
    the series vanishes identically, with zero tail.
    """
    _check_terms(terms)
    bits = precision_bits or default_precision_bits(lift.degree, terms, lift.coeff_norm)
    R = abs(lift.resultant)
    if R == 1:
        zero = mp.mpf(0)
        return NonArchResult(zero, (1,) * terms, zero, terms, 1, bits)
    top = R**terms
    gs = _gcd_loop(lift, P, R, top, terms)
    return _assemble(lift, gs, terms, top.bit_length(), bits)


def nonarch_height_factored(
    lift: MapLift,
    P: ProjectivePoint,
    terms: int,
    parts: PartialFactorization,
    precision_bits: int | None = None,
) -> NonArchResult:
    """Same series as nonarch_height, computed per coprime part of |Res|.

    Each part runs the gcd loop against its own (much smaller) modulus
    powers; coprimality makes gcds multiplicative, so the per-part gcds
    multiply back into exactly the g-sequence of the single-modulus run.
    modulus_bits reports the largest per-part working modulus.
    """
    _check_terms(terms)
    bits = precision_bits or default_precision_bits(lift.degree, terms, lift.coeff_norm)
    R = abs(lift.resultant)
    parts.validate_for(R)
    if R == 1:
        zero = mp.mpf(0)
        return NonArchResult(zero, (1,) * terms, zero, terms, 1, bits)
    gs = [1] * terms
    max_bits = 0
    for part in parts.coprime_parts:
        top = part**terms
        max_bits = max(max_bits, top.bit_length())
        for i, g in enumerate(_gcd_loop(lift, P, part, top, terms)):
            gs[i] *= g
    return _assemble(lift, gs, terms, max_bits, bits)
