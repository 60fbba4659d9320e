"""Exact arithmetic on integer binary forms and lifts of self-maps of P^1.

A degree-d self-map of the projective line over Q is represented here by a
pair of homogeneous degree-d integer forms (F, G) with no common projective
root, equivalently with nonzero resultant.  This module supplies the exact
building blocks the height computations rest on:

* parsing of map and point descriptions (homogeneous pair or rational
  function in one variable),
* form evaluation, full-size and modular,
* point normalization to coprime integer coordinates,
* Sylvester resultants by fraction-free (Bareiss) elimination,
* the degree-(d-1) cofactor forms a1, b1, a2, b2 with

      a1*F + b1*G = Res(F, G) * X^(2d-1)
      a2*F + b2*G = Res(F, G) * Y^(2d-1)

  as exact polynomial identities.  These witness that every orbit gcd
  divides the resultant and give the lower bound used for the archimedean
  step estimates.

All coefficients are unbounded Python ints; nothing in this module rounds.
"""

from __future__ import annotations

import math
import re
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

__all__ = [
    "BinaryForm",
    "CofactorIdentity",
    "MapLift",
    "NotAMorphismError",
    "ParseError",
    "ProjectivePoint",
    "cofactors",
    "evaluate",
    "evaluate_mod",
    "normalize_point",
    "parse_map",
    "parse_point",
    "resultant",
]


class ParseError(ValueError):
    """A map or point description does not match the input grammar."""


class NotAMorphismError(ValueError):
    """The two forms share a projective root, so they do not define a map of P^1."""


@dataclass(frozen=True)
class BinaryForm:
    """Homogeneous integer form in X and Y.

    ``coefficients[i]`` multiplies X^(d-i) * Y^i, so the tuple reads in
    descending powers of X.  The degree is formal: trailing or leading
    zero coefficients are kept, and the all-zero tuple is the zero form
    of its formal degree (legal here because cofactor forms can vanish).
    """

    coefficients: tuple[int, ...]

    def __post_init__(self) -> None:
        coeffs = tuple(self.coefficients)
        if not coeffs:
            raise ValueError("a binary form needs at least one coefficient")
        for c in coeffs:
            if not isinstance(c, int):
                raise ValueError(f"coefficients must be ints, got {type(c).__name__}")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def norm(self) -> int:
        """Sup norm: the largest coefficient in absolute value."""
        return max(abs(c) for c in self.coefficients)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coefficients)

    def __call__(self, x: int, y: int) -> int:
        return evaluate(self, x, y)

    def __str__(self) -> str:
        d = self.degree
        parts: list[str] = []
        for i, c in enumerate(self.coefficients):
            if c == 0:
                continue
            mono = "*".join(
                ([] if d - i == 0 else [f"X^{d - i}" if d - i > 1 else "X"])
                + ([] if i == 0 else [f"Y^{i}" if i > 1 else "Y"])
            )
            if not mono:
                term = str(abs(c))
            elif abs(c) == 1:
                term = mono
            else:
                term = f"{abs(c)}*{mono}"
            parts.append(("- " if c < 0 else "+ ") + term)
        if not parts:
            return "0"
        out = " ".join(parts)
        return "-" + out[2:] if out.startswith("- ") else out[2:]


@dataclass(frozen=True)
class ProjectivePoint:
    """Point of P^1(Q) in lowest terms: gcd(x, y) = 1, and y > 0 or (y = 0, x > 0).

    Construct via :func:`normalize_point` from arbitrary rationals; the
    constructor itself insists on already-normalized coordinates so that
    equal points compare equal.
    """

    x: int
    y: int

    def __post_init__(self) -> None:
        if not (isinstance(self.x, int) and isinstance(self.y, int)):
            raise ValueError("coordinates must be ints; use normalize_point for rationals")
        if self.x == 0 and self.y == 0:
            raise ValueError("(0, 0) does not name a point of P^1")
        if math.gcd(self.x, self.y) != 1:
            raise ValueError("coordinates must be coprime; use normalize_point")
        if self.y < 0 or (self.y == 0 and self.x < 0):
            raise ValueError("sign convention is y > 0, or y = 0 and x > 0; use normalize_point")

    def __str__(self) -> str:
        return f"[{self.x}, {self.y}]"


@dataclass(frozen=True)
class CofactorIdentity:
    """Exact witnesses a1*F + b1*G = resultant * X^(2d-1), a2*F + b2*G = resultant * Y^(2d-1)."""

    a1: BinaryForm
    b1: BinaryForm
    a2: BinaryForm
    b2: BinaryForm
    resultant: int

    @property
    def coeff_norm(self) -> int:
        """Largest cofactor coefficient in absolute value (at least 1)."""
        return max(1, self.a1.norm, self.b1.norm, self.a2.norm, self.b2.norm)


def evaluate(f: BinaryForm, x: int, y: int) -> int:
    """Exact value of f at integer (x, y), by a Horner walk in x.

    Powers of y are accumulated alongside, so the work is 2d multiplications
    and d additions on integers no larger than the final result.
    """
    coeffs = f.coefficients
    acc = coeffs[0]
    yp = 1
    for c in coeffs[1:]:
        yp *= y
        acc = acc * x + c * yp
    return acc


def evaluate_mod(f: BinaryForm, x: int, y: int, m: int) -> int:
    """Value of f at (x, y) reduced into [0, m).

    Every intermediate product is reduced mod m, so the working integers
    stay below m^2 regardless of how large the true value would be.
    """
    if m < 1:
        raise ValueError("modulus must be at least 1")
    if m == 1:
        return 0
    x %= m
    y %= m
    coeffs = f.coefficients
    acc = coeffs[0] % m
    yp = 1
    for c in coeffs[1:]:
        yp = yp * y % m
        acc = (acc * x + c * yp) % m
    return acc


def normalize_point(x, y) -> ProjectivePoint:
    """Normalize rational coordinates to the canonical coprime-integer form.

    Accepts ints, Fractions, or strings such as "3/4".  Clears denominators,
    divides out the gcd, and flips signs so that y > 0, or y = 0 and x > 0.
    """
    fx, fy = _as_fraction(x), _as_fraction(y)
    if fx == 0 and fy == 0:
        raise ValueError("(0, 0) does not name a point of P^1")
    den = math.lcm(fx.denominator, fy.denominator)
    a, b = int(fx * den), int(fy * den)
    g = math.gcd(a, b)
    a, b = a // g, b // g
    if b < 0 or (b == 0 and a < 0):
        a, b = -a, -b
    return ProjectivePoint(a, b)


def _as_fraction(v) -> Fraction:
    if isinstance(v, float):
        raise TypeError("float coordinates are ambiguous; pass int, Fraction, or string")
    try:
        return Fraction(v)
    except (ValueError, TypeError) as exc:
        raise ValueError(f"not a rational number: {v!r}") from exc


def _sylvester(F: BinaryForm, G: BinaryForm) -> list[list[int]]:
    """2d x 2d Sylvester matrix; row k of each block shifts the form by k columns."""
    d = F.degree
    n = 2 * d
    rows = []
    for block in (F.coefficients, G.coefficients):
        for k in range(d):
            row = [0] * n
            row[k : k + d + 1] = block
            rows.append(row)
    return rows


def _bareiss_det(m: list[list[int]]) -> int:
    """Exact determinant by fraction-free elimination; mutates m."""
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        row_k = m[k]
        for i in range(k + 1, n):
            row_i = m[i]
            factor = row_i[k]
            for j in range(k + 1, n):
                # exact division: Bareiss guarantees prev divides the 2x2 minor
                row_i[j] = (pivot * row_i[j] - factor * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def resultant(F: BinaryForm, G: BinaryForm) -> int:
    """Exact Sylvester resultant of two degree-d forms, d >= 1.

    Fraction-free elimination keeps every intermediate value an integer;
    a zero return means the forms share a projective root.  The sign is
    whatever the Sylvester determinant gives (F rows above G rows); callers
    that need a modulus or a bound should take abs().
    """
    if F.degree != G.degree:
        raise ValueError("resultant needs forms of equal degree")
    if F.degree < 1:
        raise ValueError("resultant needs degree at least 1")
    return _bareiss_det(_sylvester(F, G))


def cofactors(F: BinaryForm, G: BinaryForm) -> CofactorIdentity:
    """Integer cofactor forms of degree d-1 for the two resultant identities.

    Solves the transposed Sylvester system exactly: fraction-free forward
    elimination with the two unit right-hand sides carried along, then
    rational back-substitution scaled by the determinant.  The scaled
    solutions are columns of the adjugate, hence integral.
    """
    if F.degree != G.degree or F.degree < 1:
        raise ValueError("cofactors need two forms of equal degree at least 1")
    d = F.degree
    n = 2 * d
    syl = _sylvester(F, G)
    # rows of the transpose, augmented with e_0 and e_{n-1}
    m = [[syl[j][i] for j in range(n)] + [0, 0] for i in range(n)]
    m[0][n] = 1
    m[n - 1][n + 1] = 1

    width = n + 2
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                raise NotAMorphismError("zero resultant: F and G share a projective root")
        pivot = m[k][k]
        row_k = m[k]
        for i in range(k + 1, n):
            row_i = m[i]
            factor = row_i[k]
            for j in range(k + 1, width):
                row_i[j] = (pivot * row_i[j] - factor * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    if m[n - 1][n - 1] == 0:
        raise NotAMorphismError("zero resultant: F and G share a projective root")
    det = sign * m[n - 1][n - 1]

    def solve(col: int) -> list[int]:
        sol = [Fraction(0)] * n
        for i in range(n - 1, -1, -1):
            s = Fraction(m[i][col])
            for j in range(i + 1, n):
                s -= m[i][j] * sol[j]
            sol[i] = s / m[i][i]
        out = []
        for v in sol:
            scaled = v * det
            assert scaled.denominator == 1, "adjugate column must be integral"
            out.append(int(scaled))
        return out

    v1 = solve(n)
    v2 = solve(n + 1)
    return CofactorIdentity(
        a1=BinaryForm(tuple(v1[:d])),
        b1=BinaryForm(tuple(v1[d:])),
        a2=BinaryForm(tuple(v2[:d])),
        b2=BinaryForm(tuple(v2[d:])),
        resultant=det,
    )


@dataclass(frozen=True)
class MapLift:
    """Integer lift Phi = [F, G] of a degree-d self-map of P^1, with cached invariants.

    ``resultant`` is the exact Sylvester resultant (nonzero by construction
    when built through :meth:`from_forms` or :func:`parse_map`) and
    ``coeff_norm`` the sup norm over both forms' coefficients.
    """

    F: BinaryForm
    G: BinaryForm
    degree: int
    resultant: int
    coeff_norm: int

    def __post_init__(self) -> None:
        if self.F.degree != self.degree or self.G.degree != self.degree:
            raise ValueError("form degrees disagree with the lift degree")
        if self.degree < 2:
            raise ValueError("a self-map of P^1 needs degree at least 2")
        if self.resultant == 0:
            raise NotAMorphismError("zero resultant: F and G share a projective root")

    @classmethod
    def from_forms(cls, F: BinaryForm, G: BinaryForm) -> "MapLift":
        """Validate a pair of forms and cache its resultant and coefficient norm."""
        if F.degree != G.degree:
            raise ValueError("F and G must have the same degree")
        if F.degree < 2:
            raise ValueError("a self-map of P^1 needs degree at least 2")
        res = resultant(F, G)
        if res == 0:
            raise NotAMorphismError("zero resultant: F and G share a projective root")
        content = math.gcd(*F.coefficients, *G.coefficients)
        if content > 1:
            # content is deliberately not divided out: it is part of the lift
            # and scales the resultant and every orbit gcd
            warnings.warn(
                f"lift has content {content}; the resultant and the gcd terms "
                f"are inflated accordingly",
                stacklevel=2,
            )
        return cls(
            F=F,
            G=G,
            degree=F.degree,
            resultant=res,
            coeff_norm=max(F.norm, G.norm),
        )

    @cached_property
    def cofactor_identity(self) -> CofactorIdentity:
        ident = cofactors(self.F, self.G)
        assert ident.resultant == self.resultant
        return ident

    def apply(self, x: int, y: int) -> tuple[int, int]:
        """Exact image pair (F(x, y), G(x, y))."""
        return evaluate(self.F, x, y), evaluate(self.G, x, y)

    def __str__(self) -> str:
        return f"[{self.F}, {self.G}]"


# ---------------------------------------------------------------------------
# parsing

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>\*\*|[-+*^()/=;\[\],]))"
)

_MAX_EXPONENT = 4096


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            raise ParseError(f"unexpected character {text[pos:].strip()[0]!r} at position {pos}")
        pos = m.end()
        if m.group("int") is not None:
            tokens.append(("int", m.group("int")))
        elif m.group("name") is not None:
            tokens.append(("name", m.group("name")))
        else:
            op = m.group("op")
            tokens.append(("op", "^" if op == "**" else op))
    return tokens


class _PolyParser:
    """Recursive-descent parser for polynomial expressions over named variables.

    Produces a dict mapping exponent tuples (one slot per variable) to
    integer coefficients.  '*' between factors is optional; '^' and '**'
    both exponentiate; only '+', '-', '*', '^', parentheses, integers, and
    the allowed variable names may appear.
    """

    def __init__(self, tokens: list[tuple[str, str]], variables: tuple[str, ...]):
        # A bare run of single-letter variables ("XY", "xxy") splits into
        # separate factors, so XY^2 binds as X*(Y^2).
        single = {v.upper() for v in variables if len(v) == 1}
        self.tokens: list[tuple[str, str]] = []
        for kind, val in tokens:
            if kind == "name" and len(val) > 1 and all(ch.upper() in single for ch in val):
                self.tokens.extend(("name", ch) for ch in val)
            else:
                self.tokens.append((kind, val))
        self.pos = 0
        self.variables = variables

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def next(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def parse(self) -> dict[tuple[int, ...], int]:
        poly = self.expr()
        kind, val = self.peek()
        if kind is not None:
            raise ParseError(f"unexpected {val!r} after a complete expression")
        return poly

    def expr(self):
        poly = self.term()
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                rhs = self.term()
                poly = _padd(poly, rhs if val == "+" else _pneg(rhs))
            else:
                return poly

    def term(self):
        poly = self.factor()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.next()
                poly = _pmul(poly, self.factor())
            elif kind in ("int", "name") or (kind == "op" and val == "("):
                # implicit multiplication, as in 3X^2Y
                poly = _pmul(poly, self.factor())
            elif kind == "op" and val == "/":
                raise ParseError(
                    "'/' inside a polynomial is not supported; coefficients must be "
                    "integers, and only the phi(z) form takes one top-level '/'"
                )
            else:
                return poly

    def factor(self):
        sign = 1
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                if val == "-":
                    sign = -sign
            else:
                break
        poly = self.base()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.next()
            kind, val = self.next()
            if kind != "int":
                raise ParseError("exponent must be a nonnegative integer literal")
            e = int(val)
            if e > _MAX_EXPONENT:
                raise ParseError(f"exponent {e} exceeds the supported maximum {_MAX_EXPONENT}")
            poly = _ppow(poly, e, len(self.variables))
        return poly if sign == 1 else _pneg(poly)

    def base(self):
        kind, val = self.next()
        if kind == "int":
            return {(0,) * len(self.variables): int(val)} if int(val) else {}
        if kind == "name":
            for i, var in enumerate(self.variables):
                if val == var or (len(val) == 1 == len(var) and val.upper() == var.upper()):
                    expo = [0] * len(self.variables)
                    expo[i] = 1
                    return {tuple(expo): 1}
            allowed = ", ".join(self.variables)
            raise ParseError(f"unknown variable {val!r}; expected one of: {allowed}")
        if kind == "op" and val == "(":
            poly = self.expr()
            kind, val = self.next()
            if (kind, val) != ("op", ")"):
                raise ParseError("missing closing parenthesis")
            return poly
        if kind == "op" and val == "/":
            raise ParseError("'/' is not allowed here; only integer coefficients are supported")
        if kind is None:
            raise ParseError("expression ended unexpectedly")
        raise ParseError(f"unexpected {val!r} in expression")


def _padd(p, q):
    out = dict(p)
    for k, v in q.items():
        s = out.get(k, 0) + v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def _pneg(p):
    return {k: -v for k, v in p.items()}


def _pmul(p, q):
    out: dict = {}
    for k1, v1 in p.items():
        for k2, v2 in q.items():
            k = tuple(a + b for a, b in zip(k1, k2))
            s = out.get(k, 0) + v1 * v2
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return out


def _ppow(p, e, nvars):
    acc = {(0,) * nvars: 1}
    base = p
    while e:
        if e & 1:
            acc = _pmul(acc, base)
        e >>= 1
        if e:
            base = _pmul(base, base)
    return acc


def _form_from_xy_poly(poly: dict[tuple[int, ...], int], label: str) -> BinaryForm:
    if not poly:
        raise ParseError(f"{label} must not be the zero polynomial")
    degrees = {i + j for (i, j) in poly}
    if len(degrees) != 1:
        lo, hi = min(degrees), max(degrees)
        raise ParseError(
            f"{label} is not homogeneous: it mixes total degrees {lo} and {hi}"
        )
    d = degrees.pop()
    coeffs = [0] * (d + 1)
    for (i, j), c in poly.items():
        coeffs[j] = c
    return BinaryForm(tuple(coeffs))


def _split_toplevel_slash(text: str) -> tuple[str, str | None]:
    # split at the first '/' outside parentheses; any further '/' is left in
    # the denominator text for the polynomial parser to reject
    depth = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "/" and depth == 0:
            return text[:i], text[i + 1 :]
    return text, None


_PHI_RE = re.compile(r"^\s*phi\s*\(\s*([A-Za-z_][A-Za-z_0-9]*)\s*\)\s*=\s*(.+)$", re.DOTALL)


def parse_map(text: str) -> MapLift:
    """Parse a map description into a validated :class:`MapLift`.

    Two input shapes are accepted:

    * a homogeneous pair, ``F = <poly in X, Y>; G = <poly in X, Y>``, where
      both polynomials must be homogeneous of one common degree d >= 2;
    * a rational function, ``phi(z) = (<poly in z>) / (<poly in z>)``, whose
      numerator and denominator are homogenized to the larger of their
      degrees (the denominator ``1`` may be omitted).

    Integer literals may be arbitrarily large; ``*`` between a coefficient
    and a monomial is optional; ``^`` and ``**`` both exponentiate.
    """
    if ";" in text:
        pieces = [p for p in text.split(";") if p.strip()]
        if len(pieces) != 2:
            raise ParseError("expected exactly two statements: F = ...; G = ...")
        forms: dict[str, BinaryForm] = {}
        for piece in pieces:
            lhs, eq, rhs = piece.partition("=")
            name = lhs.strip().upper()
            if eq != "=" or name not in ("F", "G"):
                raise ParseError("each statement must assign to F or G, as in F = X^2 + Y^2")
            if name in forms:
                raise ParseError(f"{name} is assigned twice")
            poly = _PolyParser(_tokenize(rhs), ("X", "Y")).parse()
            forms[name] = _form_from_xy_poly(poly, name)
        if set(forms) != {"F", "G"}:
            raise ParseError("both F and G must be assigned")
        F, G = forms["F"], forms["G"]
        if F.degree != G.degree:
            raise ParseError(
                f"F and G must have the same degree (got {F.degree} and {G.degree})"
            )
        if F.degree < 2:
            raise ParseError("the map must have degree at least 2")
        return MapLift.from_forms(F, G)

    m = _PHI_RE.match(text)
    if m is None:
        raise ParseError(
            "could not recognize the map; write 'F = ...; G = ...' in X and Y, "
            "or 'phi(z) = (...)/(...)'"
        )
    var, rhs = m.group(1), m.group(2)
    num_text, den_text = _split_toplevel_slash(rhs)
    num = _PolyParser(_tokenize(num_text), (var,)).parse()
    den = (
        _PolyParser(_tokenize(den_text), (var,)).parse()
        if den_text is not None
        else {(0,): 1}
    )
    if not num:
        raise ParseError("the numerator must not be the zero polynomial")
    if not den:
        raise ParseError("the denominator must not be the zero polynomial")
    d = max(max(k[0] for k in num), max(k[0] for k in den))
    if d < 2:
        raise ParseError("the map must have degree at least 2")
    f_coeffs = tuple(num.get((d - i,), 0) for i in range(d + 1))
    g_coeffs = tuple(den.get((d - i,), 0) for i in range(d + 1))
    return MapLift.from_forms(BinaryForm(f_coeffs), BinaryForm(g_coeffs))


_RATIONAL_RE = re.compile(r"([+-]?\d+)(?:\s*/\s*([+-]?\d+))?$")


def _parse_rational(text: str) -> Fraction:
    m = _RATIONAL_RE.match(text.strip())
    if m is None:
        raise ParseError(f"not a rational number: {text.strip()!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ParseError("zero denominator in a rational number")
    return Fraction(num, den)


def parse_point(text: str) -> ProjectivePoint:
    """Parse a point description and normalize it.

    Accepted shapes, each with an optional ``P =`` prefix: a bracketed
    coordinate pair ``[x, y]`` of rationals, or a single rational ``x``
    meaning the affine point [x, 1].
    """
    s = re.sub(r"^\s*[Pp]\s*=\s*", "", text.strip())
    if s.startswith("["):
        if not s.endswith("]"):
            raise ParseError("missing closing ']' in point")
        inner = s[1:-1]
        parts = inner.split(",")
        if len(parts) != 2:
            raise ParseError("a point needs exactly two comma-separated coordinates")
        fx, fy = _parse_rational(parts[0]), _parse_rational(parts[1])
    else:
        fx, fy = _parse_rational(s), Fraction(1)
    try:
        return normalize_point(fx, fy)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
