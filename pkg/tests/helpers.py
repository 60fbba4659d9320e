"""Shared brute-force oracles for the test suite.

Everything here recomputes quantities by a route deliberately different
from the implementation under test: determinants by cofactor expansion
instead of elimination, gcd sequences from full-size exact orbits instead
of reduced ones, polynomial identities by coefficient convolution.
"""

from __future__ import annotations

import math
import warnings

from p1height.forms import BinaryForm, MapLift, ProjectivePoint, evaluate, normalize_point


def brute_det(m: list[list[int]]) -> int:
    """Determinant by cofactor expansion along the first row; fine up to 8x8."""
    n = len(m)
    if n == 1:
        return m[0][0]
    total = 0
    for j, c in enumerate(m[0]):
        if c == 0:
            continue
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        total += (-1) ** j * c * brute_det(minor)
    return total


def sylvester_rows(F: BinaryForm, G: BinaryForm) -> list[list[int]]:
    """The 2d x 2d Sylvester matrix, rebuilt independently of the package."""
    d = F.degree
    n = 2 * d
    rows = []
    for coeffs in (F.coefficients, G.coefficients):
        for k in range(d):
            row = [0] * n
            row[k : k + d + 1] = list(coeffs)
            rows.append(row)
    return rows


def convolve(a, b):
    """Coefficient list of the product of two forms (descending X order)."""
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def add_lists(a, b):
    return [x + y for x, y in zip(a, b)]


def cofactor_identities_hold(F: BinaryForm, G: BinaryForm, ident) -> bool:
    """Expand a1*F + b1*G and a2*F + b2*G and compare against the exact targets."""
    d = F.degree
    lhs1 = add_lists(
        convolve(ident.a1.coefficients, F.coefficients),
        convolve(ident.b1.coefficients, G.coefficients),
    )
    lhs2 = add_lists(
        convolve(ident.a2.coefficients, F.coefficients),
        convolve(ident.b2.coefficients, G.coefficients),
    )
    want1 = [ident.resultant] + [0] * (2 * d - 1)
    want2 = [0] * (2 * d - 1) + [ident.resultant]
    return lhs1 == want1 and lhs2 == want2


def random_form(rng, degree: int, lo: int = -20, hi: int = 20) -> BinaryForm:
    return BinaryForm(tuple(rng.randint(lo, hi) for _ in range(degree + 1)))


def random_lift(rng, degree: int, lo: int = -20, hi: int = 20) -> MapLift:
    """A random morphism lift; retries until the resultant is nonzero."""
    from p1height.forms import NotAMorphismError

    while True:
        F = random_form(rng, degree, lo, hi)
        G = random_form(rng, degree, lo, hi)
        if F.is_zero() or G.is_zero():
            continue
        try:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")  # random pairs may carry content
                return MapLift.from_forms(F, G)
        except NotAMorphismError:
            continue


def random_point(rng, bound: int = 50) -> ProjectivePoint:
    while True:
        x = rng.randint(-bound, bound)
        y = rng.randint(-bound, bound)
        if x or y:
            return normalize_point(x, y)


def exact_gcd_sequence(lift: MapLift, P: ProjectivePoint, n: int) -> list[int]:
    """The per-step gcds along the exact normalized orbit (full-size integers)."""
    x, y = P.x, P.y
    out = []
    for _ in range(n):
        a = evaluate(lift.F, x, y)
        b = evaluate(lift.G, x, y)
        g = math.gcd(a, b)
        out.append(g)
        x, y = a // g, b // g
    return out
