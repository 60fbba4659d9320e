"""Canonical height assembly, the limit-definition oracle, and self-checks.

The canonical height of P under the map is

    canonical = h(P) - (archimedean series) - (nonarchimedean series)

where h is the naive logarithmic height on coprime integer coordinates.
Both series are truncated with rigorous tail bounds, so the result comes
with a symmetric error bound.  Canonical heights are non-negative and
vanish exactly on preperiodic points; a computed value below -error_bound
is treated as a bug and raised.

The oracle in this module takes the slow road instead: it iterates the map
on exact normalized integer pairs and returns d^(-n) h(of the n-th iterate),
whose limit is the same canonical height.  Coordinates grow like d^n digits,
so the oracle is for cross-checking at small n only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath as mp

from .arch import ArchResult, arch_height, arch_step
from .forms import MapLift, ProjectivePoint, normalize_point
from .nonarch import (
    NonArchResult,
    PartialFactorization,
    nonarch_height,
    nonarch_height_factored,
    trial_division,
)
from .numerics import default_precision_bits, log_int

__all__ = [
    "BudgetExceededError",
    "HeightBreakdown",
    "canonical_height",
    "canonical_height_oracle",
    "height_identity_check",
    "naive_height",
]

ORACLE_DIGIT_BUDGET = 10_000_000


class BudgetExceededError(RuntimeError):
    """An exact-orbit computation would exceed its digit budget."""


@dataclass(frozen=True)
class HeightBreakdown:
    """Canonical height with the naive height and both series it came from.

    canonical = naive - arch.value - nonarch.value at the working precision;
    error_bound = nonarch.tail_bound + arch.tail_bound.
    """

    naive: mp.mpf
    nonarch: NonArchResult
    arch: ArchResult
    canonical: mp.mpf
    error_bound: mp.mpf

    @property
    def precision_bits(self) -> int:
        return self.arch.precision_bits


def naive_height(P: ProjectivePoint, precision_bits: int = 256) -> mp.mpf:
    """Naive logarithmic height log max(|x|, |y|) of a normalized point."""
    with mp.workprec(precision_bits):
        return log_int(max(abs(P.x), abs(P.y)))


def canonical_height(
    lift: MapLift,
    P: ProjectivePoint,
    terms: int = 50,
    precision_bits: int | None = None,
    factoring: PartialFactorization | int | None = None,
    *,
    nonarch_terms: int | None = None,
    arch_terms: int | None = None,
) -> HeightBreakdown:
    """Canonical height of P under the lifted map, with a rigorous error bound.

    Both series run `terms` steps by default (override individually with
    nonarch_terms / arch_terms).  `factoring` picks the nonarchimedean
    driver: None runs the plain single-modulus loop; a PartialFactorization
    runs the per-part loops; an integer B first builds parts by trial
    division of |Res| up to B.  Results agree to within the error bound
    whichever driver runs.
    """
    n_terms = nonarch_terms if nonarch_terms is not None else terms
    a_terms = arch_terms if arch_terms is not None else terms
    bits = precision_bits or default_precision_bits(
        lift.degree, max(n_terms, a_terms), lift.coeff_norm
    )
    R = abs(lift.resultant)
    if factoring is None or R == 1:
        na = nonarch_height(lift, P, n_terms, precision_bits=bits)
    elif isinstance(factoring, PartialFactorization):
        na = nonarch_height_factored(lift, P, n_terms, factoring, precision_bits=bits)
    else:
        parts = trial_division(R, int(factoring))
        na = nonarch_height_factored(lift, P, n_terms, parts, precision_bits=bits)
    ar = arch_height(lift, P, a_terms, precision_bits=bits)
    with mp.workprec(bits):
        naive = log_int(max(abs(P.x), abs(P.y)))
        canonical = naive - ar.value - na.value
        err = na.tail_bound + ar.tail_bound
        if canonical < -err:
            raise RuntimeError(
                "computed canonical height is negative beyond its error bound; "
                "this indicates a bug, not a property of the input"
            )
    return HeightBreakdown(
        naive=naive,
        nonarch=na,
        arch=ar,
        canonical=canonical,
        error_bound=err,
    )


def _decimal_digits(n: int) -> int:
    return abs(n).bit_length() * 30103 // 100000 + 1


def canonical_height_oracle(
    lift: MapLift,
    P: ProjectivePoint,
    n_max: int,
    digit_budget: int = ORACLE_DIGIT_BUDGET,
    precision_bits: int = 256,
) -> list[mp.mpf]:
    """Exact-orbit height sequence [d^(-n) h(n-th normalized iterate)], n = 0..n_max.

    Successive entries converge to the canonical height; this is the
    definition made executable, entirely independent of the series route.
    Iterate coordinates are exact integers divided by their gcd each step,
    so they grow like d^n digits; the digit budget aborts runs that would
    not fit in memory.
    """
    if not isinstance(n_max, int) or n_max < 1:
        raise ValueError("n_max must be a positive integer")
    d = lift.degree
    x, y = P.x, P.y
    out = []
    with mp.workprec(precision_bits):
        out.append(log_int(max(abs(x), abs(y))))
    denom = 1
    for n in range(1, n_max + 1):
        cur = max(_decimal_digits(x), _decimal_digits(y))
        projected = d * cur + _decimal_digits(lift.coeff_norm) + len(str(d + 1))
        if projected > digit_budget:
            raise BudgetExceededError(
                f"iterate {n} needs about {projected} decimal digits per "
                f"coordinate, over the budget of {digit_budget}"
            )
        fx, gy = lift.apply(x, y)
        g = math.gcd(fx, gy)
        x, y = fx // g, gy // g
        denom *= d
        with mp.workprec(precision_bits):
            out.append(log_int(max(abs(x), abs(y))) / denom)
    return out


def height_identity_check(
    lift: MapLift,
    P: ProjectivePoint,
    precision_bits: int = 128,
) -> mp.mpf:
    """Residual of the one-step height identity at P; zero up to rounding.

    h(image of P) - d*h(P) must equal -(step + log g), where step is the
    archimedean step value at P scaled to unit sup norm and g is the exact
    gcd of the two evaluations.  The left side goes through exact integer
    normalization, the right through high-precision reals, so a nonzero
    residual beyond rounding pinpoints an inconsistency between the routes.
    """
    fx, gy = lift.apply(P.x, P.y)
    g = math.gcd(fx, gy)
    image = normalize_point(fx, gy)
    d = lift.degree
    with mp.workprec(precision_bits):
        h_image = log_int(max(abs(image.x), abs(image.y)))
        h_p = log_int(max(abs(P.x), abs(P.y)))
        scale = mp.mpf(max(abs(P.x), abs(P.y)))
        u = (mp.mpf(P.x) / scale, mp.mpf(P.y) / scale)
        step = arch_step(lift, u)
        return abs(h_image - d * h_p + step + log_int(g))
