"""Exact-arithmetic layer: forms, points, resultants, cofactors, parsing."""

import math
import random
import warnings

import pytest

from p1height.forms import (
    BinaryForm,
    MapLift,
    NotAMorphismError,
    ParseError,
    ProjectivePoint,
    cofactors,
    evaluate,
    evaluate_mod,
    normalize_point,
    parse_map,
    parse_point,
    resultant,
)

from helpers import (
    brute_det,
    cofactor_identities_hold,
    convolve,
    random_form,
    random_lift,
    sylvester_rows,
)


# ---------------------------------------------------------------------------
# BinaryForm and evaluation


def test_form_basic_properties():
    f = BinaryForm((3, 0, -2))
    assert f.degree == 2
    assert f.norm == 3
    assert not f.is_zero()
    assert BinaryForm((0, 0)).is_zero()
    assert BinaryForm((7,)).degree == 0


def test_form_rejects_bad_coefficients():
    with pytest.raises(ValueError):
        BinaryForm(())
    with pytest.raises(ValueError):
        BinaryForm((1, 2.5))
    with pytest.raises(ValueError):
        BinaryForm((1, "2"))


def test_evaluate_examples():
    f = BinaryForm((1, 1, 1))  # X^2 + XY + Y^2
    assert evaluate(f, 1, 1) == 3
    for a in (2, 7, 10**40):
        g = BinaryForm((a, 0, 1))  # aX^2 + Y^2
        assert evaluate(g, a, 1) == a**3 + 1
    for d in (1, 2, 5):
        h = BinaryForm(tuple(range(1, d + 2)))
        assert evaluate(h, 0, 0) == 0


def test_evaluate_homogeneity():
    rng = random.Random(101)
    for _ in range(200):
        d = rng.randint(1, 5)
        f = random_form(rng, d, -30, 30)
        x, y, c = rng.randint(-20, 20), rng.randint(-20, 20), rng.randint(-9, 9)
        assert evaluate(f, c * x, c * y) == c**d * evaluate(f, x, y)


def test_evaluate_mod_examples():
    f = BinaryForm((1, 1, 1))
    assert evaluate_mod(f, 1, 1, 5) == 3
    for a in (2, 5, 11, 10**30 + 7):
        g = BinaryForm((a, 0, 1))
        assert evaluate_mod(g, a, 1, a * a) == 1  # a^3 + 1 mod a^2
    assert evaluate_mod(f, 12345, -678, 1) == 0
    with pytest.raises(ValueError):
        evaluate_mod(f, 1, 1, 0)


def test_evaluate_mod_matches_evaluate():
    rng = random.Random(202)
    for _ in range(1000):
        d = rng.randint(1, 4)
        f = random_form(rng, d, -50, 50)
        x, y = rng.randint(-10**6, 10**6), rng.randint(-10**6, 10**6)
        m = rng.randint(1, 10**12)
        assert evaluate_mod(f, x, y, m) == evaluate(f, x, y) % m


# ---------------------------------------------------------------------------
# point normalization


def test_normalize_point_examples():
    from fractions import Fraction

    assert normalize_point(-5, 1) == ProjectivePoint(-5, 1)
    assert normalize_point(Fraction(4, 6), Fraction(2, 3)) == ProjectivePoint(1, 1)
    assert normalize_point(3, 0) == ProjectivePoint(1, 0)
    assert normalize_point(0, 7) == ProjectivePoint(0, 1)
    assert normalize_point(4, 6) == ProjectivePoint(2, 3)
    assert normalize_point(-4, -6) == ProjectivePoint(2, 3)
    assert normalize_point(5, -1) == ProjectivePoint(-5, 1)
    assert normalize_point("1/2", "3/4") == ProjectivePoint(2, 3)
    assert normalize_point(-3, 0) == ProjectivePoint(1, 0)


def test_normalize_point_rejects():
    with pytest.raises(ValueError):
        normalize_point(0, 0)
    with pytest.raises(TypeError):
        normalize_point(0.5, 1)
    with pytest.raises(ValueError):
        normalize_point("x", 1)


def test_projective_point_invariants():
    with pytest.raises(ValueError):
        ProjectivePoint(2, 4)
    with pytest.raises(ValueError):
        ProjectivePoint(1, -1)
    with pytest.raises(ValueError):
        ProjectivePoint(-1, 0)
    with pytest.raises(ValueError):
        ProjectivePoint(0, 0)


# ---------------------------------------------------------------------------
# resultants


def test_resultant_matches_bruteforce_determinant():
    rng = random.Random(303)
    for _ in range(60):
        d = rng.randint(1, 4)
        F = random_form(rng, d, -50, 50)
        G = random_form(rng, d, -50, 50)
        expected = brute_det(sylvester_rows(F, G))
        assert resultant(F, G) == expected
        # size bound: |Res| <= (2d)! * norm^(2d)
        norm = max(F.norm, G.norm)
        if norm:
            assert abs(expected) <= math.factorial(2 * d) * norm ** (2 * d)


def test_resultant_sign_convention():
    # monic root products: F = X(X - Y), G = (X - 2Y)(X - 3Y);
    # prod over root pairs of (r_i - s_j) = (-2)(-3)(-1)(-2) = 12
    assert resultant(BinaryForm((1, -1, 0)), BinaryForm((1, -5, 6))) == 12
    for a in (2, 6, 13, 10**25 + 9):
        assert resultant(BinaryForm((a, 0, 1)), BinaryForm((0, 1, 0))) == a


def test_resultant_closed_forms():
    for a in (0, 1, 7, -4, 10**50 + 3):
        F = BinaryForm((1, 1, 1))
        G = BinaryForm((1, a, 2))
        assert resultant(F, G) == a * a - 3 * a + 3
    for d in (1, 2, 3, 4):
        Xd = BinaryForm((1,) + (0,) * d)
        Yd = BinaryForm((0,) * d + (1,))
        assert resultant(Xd, Yd) == 1


def test_resultant_zero_iff_common_root():
    rng = random.Random(404)
    for _ in range(40):
        k = rng.randint(-8, 8)
        shared = (1, -k)  # X - kY
        a = (rng.randint(-9, 9), rng.randint(-9, 9))
        b = (rng.randint(-9, 9), rng.randint(-9, 9))
        F = BinaryForm(tuple(convolve(shared, a)))
        G = BinaryForm(tuple(convolve(shared, b)))
        if F.is_zero() or G.is_zero():
            continue
        assert resultant(F, G) == 0
    assert resultant(BinaryForm((1, 0, 0)), BinaryForm((1, 0, 0))) == 0


def test_resultant_validations():
    with pytest.raises(ValueError):
        resultant(BinaryForm((1, 0)), BinaryForm((1, 0, 0)))
    with pytest.raises(ValueError):
        resultant(BinaryForm((1,)), BinaryForm((2,)))


# ---------------------------------------------------------------------------
# cofactors


def test_cofactor_identities_random():
    rng = random.Random(505)
    done = 0
    while done < 100:
        d = rng.choice((2, 3, 4))
        F = random_form(rng, d, -20, 20)
        G = random_form(rng, d, -20, 20)
        if resultant(F, G) == 0:
            continue
        ident = cofactors(F, G)
        assert ident.resultant == resultant(F, G)
        assert ident.a1.degree == d - 1
        assert ident.b1.degree == d - 1
        assert cofactor_identities_hold(F, G, ident)
        done += 1


def test_cofactor_identity_pointwise():
    rng = random.Random(606)
    for _ in range(5):
        lift = random_lift(rng, rng.choice((2, 3)))
        ident = lift.cofactor_identity
        d = lift.degree
        for _ in range(20):
            x, y = rng.randint(-30, 30), rng.randint(-30, 30)
            fa, ga = evaluate(lift.F, x, y), evaluate(lift.G, x, y)
            lhs1 = evaluate(ident.a1, x, y) * fa + evaluate(ident.b1, x, y) * ga
            lhs2 = evaluate(ident.a2, x, y) * fa + evaluate(ident.b2, x, y) * ga
            assert lhs1 == ident.resultant * x ** (2 * d - 1)
            assert lhs2 == ident.resultant * y ** (2 * d - 1)


def test_cofactors_power_map():
    ident = cofactors(BinaryForm((1, 0, 0)), BinaryForm((0, 0, 1)))
    assert ident.resultant == 1
    assert ident.a1.coefficients == (1, 0)
    assert ident.b1.is_zero()
    assert ident.a2.is_zero()
    assert ident.b2.coefficients == (0, 1)


def test_cofactors_rsa_shape():
    for a in (5, 10**20 + 39):
        ident = cofactors(BinaryForm((a, 0, 1)), BinaryForm((0, 1, 0)))
        assert cofactor_identities_hold(BinaryForm((a, 0, 1)), BinaryForm((0, 1, 0)), ident)


def test_cofactors_zero_resultant_rejected():
    with pytest.raises(NotAMorphismError):
        cofactors(BinaryForm((1, 0, 0)), BinaryForm((1, 0, 0)))


# ---------------------------------------------------------------------------
# MapLift


def test_map_lift_from_forms():
    lift = MapLift.from_forms(BinaryForm((1, 0, 1)), BinaryForm((0, 1, 0)))
    assert lift.degree == 2
    assert lift.resultant == 1
    assert lift.coeff_norm == 1
    assert lift.apply(2, 1) == (5, 2)


def test_map_lift_validations():
    with pytest.raises(ValueError):
        MapLift.from_forms(BinaryForm((1, 0)), BinaryForm((0, 1)))  # degree 1
    with pytest.raises(ValueError):
        MapLift.from_forms(BinaryForm((1, 0, 0)), BinaryForm((1, 0)))
    with pytest.raises(NotAMorphismError):
        MapLift.from_forms(BinaryForm((1, 0, 0)), BinaryForm((1, 0, 0)))


def test_map_lift_content_warning():
    with pytest.warns(UserWarning, match="content"):
        MapLift.from_forms(BinaryForm((2, 0, 0)), BinaryForm((0, 0, 2)))
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        MapLift.from_forms(BinaryForm((1, 0, 0)), BinaryForm((0, 0, 1)))


def test_cofactor_identity_cached_and_consistent():
    rng = random.Random(707)
    lift = random_lift(rng, 3)
    assert lift.cofactor_identity is lift.cofactor_identity
    assert lift.cofactor_identity.resultant == lift.resultant


# ---------------------------------------------------------------------------
# parsing: maps


def test_parse_map_pair_form():
    lift = parse_map("F = X^2 + X*Y + Y^2; G = X^2 + 7*X*Y + 2*Y^2")
    assert lift.F.coefficients == (1, 1, 1)
    assert lift.G.coefficients == (1, 7, 2)
    assert lift.resultant == 7 * 7 - 21 + 3


def test_parse_map_syntax_variants():
    reference = parse_map("F = 3*X^2 + 2*X*Y + Y^2; G = X*Y").F.coefficients
    assert parse_map("F = 3X^2 + 2XY + Y^2; G = XY").F.coefficients == reference
    assert parse_map("f = 3 X**2 + 2 X Y + Y**2; g = X Y").F.coefficients == reference
    assert parse_map("F = Y^2 + 2XY + 3X^2; G = XY").F.coefficients == reference
    assert parse_map("F = 4X^2 - (X^2 + Y^2) + 2XY + 2Y^2; G = XY").F.coefficients == reference


def test_parse_map_large_coefficients():
    big = 10**120 + 7
    lift = parse_map(f"F = {big}*X^3 + Y^3; G = X^2*Y - 5*Y^3")
    assert lift.F.coefficients[0] == big
    assert lift.G.coefficients == (0, 1, 0, -5)


def test_parse_map_phi_form():
    lift = parse_map("phi(z) = (7*z^2 + 1) / z")
    assert lift.F.coefficients == (7, 0, 1)
    assert lift.G.coefficients == (0, 1, 0)
    lift2 = parse_map("phi(z) = z^2 - 1")
    assert lift2.F.coefficients == (1, 0, -1)
    assert lift2.G.coefficients == (0, 0, 1)
    lift3 = parse_map("phi(w) = (w^3 + 2) / (3w^2 - w)")
    assert lift3.F.coefficients == (1, 0, 0, 2)
    assert lift3.G.coefficients == (0, 3, -1, 0)


def test_parse_map_errors():
    bad = [
        "F = X^2 + Y; G = Y^2",  # not homogeneous
        "phi(z) = z",  # degree 1
        "F = X; G = Y",  # degree 1
        "nonsense",
        "F = X^2 + a*X*Y; G = Y^2",  # unknown variable
        "F = X^2/2; G = Y^2",  # non-integer coefficient
        "F = X^2",  # missing G
        "F = X^2; F = Y^2",  # duplicate
        "F = X^2; G = Y^2; F = X*Y",  # three statements
        "phi(z) = (z^2 + 1) / 0",  # zero denominator
        "phi(z) = (z^2 + 1) / (z - z)",
        "F = X^2 + ; G = Y^2",  # dangling operator
        "F = 0; G = Y^2",  # zero form
        "P = [1, 2]",
    ]
    for text in bad:
        with pytest.raises(ParseError):
            parse_map(text)
    with pytest.raises(NotAMorphismError):
        parse_map("F = X^2; G = X^2")
    with pytest.raises(NotAMorphismError):
        parse_map("phi(z) = (z^2 + z) / (z + 1)")  # common root z = -1


def test_parse_map_roundtrip_str():
    rng = random.Random(808)
    for _ in range(10):
        lift = random_lift(rng, rng.choice((2, 3)))
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            again = parse_map(f"F = {lift.F}; G = {lift.G}")
        assert again.F.coefficients == lift.F.coefficients
        assert again.G.coefficients == lift.G.coefficients


# ---------------------------------------------------------------------------
# parsing: points


def test_parse_point_forms():
    assert parse_point("P = [-5, 1]") == ProjectivePoint(-5, 1)
    assert parse_point("[-5, 1]") == ProjectivePoint(-5, 1)
    assert parse_point("[4, 6]") == ProjectivePoint(2, 3)
    assert parse_point("P = 2/3") == ProjectivePoint(2, 3)
    assert parse_point("-7") == ProjectivePoint(-7, 1)
    assert parse_point("[1/2, 3/4]") == ProjectivePoint(2, 3)
    assert parse_point("[3, 0]") == ProjectivePoint(1, 0)
    assert parse_point("p = [ -2 , 4 ]") == ProjectivePoint(-1, 2)


def test_parse_point_errors():
    for text in ["", "[1]", "[1, 2, 3]", "[0, 0]", "[1, x]", "1.5", "2/0", "[1, 2"]:
        with pytest.raises(ParseError):
            parse_point(text)
