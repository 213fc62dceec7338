"""Exact Laurent polynomials with half-integer exponents, and the
Kauffman-bracket route to the Jones polynomial.

Exponents are stored as integer counts of half-steps (stored key k means
exponent k/2), so t^(1/2) is exact and no rational arithmetic is needed.
Coefficients are arbitrary-precision integers.
"""

from __future__ import annotations

import re
import warnings
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping

from .diagram import (
    Diagram,
    crossing_signs,
    a_state_circles,
    b_state_circles,
    is_positive,
    smoothing_pairs,
)
from .errors import (
    MalformedPolynomial,
    MixedParity,
    NotDivisible,
    NotPositiveDiagram,
    ZeroPolynomial,
)

HalfInt = Fraction  # exponents are integers or half-integers


def _to_halves(exponent) -> int:
    f = Fraction(exponent)
    if f.denominator == 1:
        return 2 * f.numerator
    if f.denominator == 2:
        return f.numerator
    raise MalformedPolynomial(f"exponent {exponent} is not a half-integer")


class LaurentPoly:
    """Immutable Laurent polynomial over Z in one variable.

    The variable is anonymous; choose its display name when formatting.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping = ()):  # exponent -> coefficient
        data: dict[int, int] = {}
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        for exp, c in items:
            c = int(c)
            if c:
                key = _to_halves(exp)
                data[key] = data.get(key, 0) + c
        object.__setattr__(self, "_coeffs", {k: v for k, v in data.items() if v})

    @classmethod
    def _raw(cls, halves: dict[int, int]) -> "LaurentPoly":
        p = object.__new__(cls)
        object.__setattr__(p, "_coeffs", {k: v for k, v in halves.items() if v})
        return p

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls._raw({})

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls._raw({0: 1})

    @classmethod
    def term(cls, coeff: int, exponent) -> "LaurentPoly":
        return cls._raw({_to_halves(exponent): int(coeff)} if coeff else {})

    # -- interrogation ----------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    def coeff(self, exponent) -> int:
        return self._coeffs.get(_to_halves(exponent), 0)

    def min_deg(self) -> Fraction:
        if not self._coeffs:
            raise ZeroPolynomial("the zero polynomial has no degrees")
        return Fraction(min(self._coeffs), 2)

    def max_deg(self) -> Fraction:
        if not self._coeffs:
            raise ZeroPolynomial("the zero polynomial has no degrees")
        return Fraction(max(self._coeffs), 2)

    def lead_coeff(self) -> int:
        if not self._coeffs:
            raise ZeroPolynomial("the zero polynomial has no leading coefficient")
        return self._coeffs[max(self._coeffs)]

    def terms(self) -> Iterator[tuple[Fraction, int]]:
        """(exponent, coefficient) pairs in ascending exponent order."""
        for k in sorted(self._coeffs):
            yield Fraction(k, 2), self._coeffs[k]

    def exponent_parities(self) -> set[int]:
        """Half-step parities present: 0 = integer, 1 = half-odd-integer."""
        return {k & 1 for k in self._coeffs}

    def evaluate_at_one(self) -> int:
        return sum(self._coeffs.values())

    # -- arithmetic --------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self._coeffs.items()))

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({k: -v for k, v in self._coeffs.items()})

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self._coeffs)
        for k, v in other._coeffs.items():
            out[k] = out.get(k, 0) + v
        return LaurentPoly._raw(out)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly._raw({k: v * other for k, v in self._coeffs.items()})
        out: dict[int, int] = {}
        for k1, v1 in self._coeffs.items():
            for k2, v2 in other._coeffs.items():
                k = k1 + k2
                out[k] = out.get(k, 0) + v1 * v2
        return LaurentPoly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative powers are not defined for polynomials")
        result = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shifted(self, exponent) -> "LaurentPoly":
        """Multiply by a single power of the variable."""
        h = _to_halves(exponent)
        return LaurentPoly._raw({k + h: v for k, v in self._coeffs.items()})

    def substitute_inverse(self) -> "LaurentPoly":
        """x -> x^-1."""
        return LaurentPoly._raw({-k: v for k, v in self._coeffs.items()})

    def __repr__(self) -> str:
        return f"LaurentPoly({format_poly(self, 'x')!r})"


# --------------------------------------------------------------------------
# text form: signed monomial list, ascending exponents


def format_poly(p: LaurentPoly, var: str = "t") -> str:
    if p.is_zero:
        return "0"
    pieces = []
    for exp, c in p.terms():
        mag = abs(c)
        if exp == 0:
            body = str(mag)
        else:
            if exp == 1:
                power = var
            elif exp.denominator == 1:
                power = f"{var}^{exp.numerator}"
            else:
                power = f"{var}^({exp.numerator}/2)"
            body = power if mag == 1 else f"{mag}{power}"
        if not pieces:
            pieces.append(body if c > 0 else f"-{body}")
        else:
            pieces.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(pieces)


_TERM_RE = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?P<coeff>\d+)?\s*\*?\s*
        (?:(?P<var>[A-Za-z]+)
           (?:\s*\^\s*(?P<exp>[({\[]?\s*-?\d+(?:\s*/\s*2)?\s*[)}\]]?))?
        )?\s*""",
    re.X,
)


def parse_poly(text: str, var: str = "t") -> LaurentPoly:
    """Inverse of :func:`format_poly`; also accepts unnormalized input
    (repeated exponents accumulate, '*' and parentheses are optional)."""
    s = text.strip()
    if s == "0":
        return LaurentPoly.zero()
    if not s:
        raise MalformedPolynomial("empty polynomial text")
    out: dict[int, int] = {}
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos:
            raise MalformedPolynomial(f"cannot parse {s[pos:]!r}")
        sign, coeff, name, exp = m.group("sign", "coeff", "var", "exp")
        if coeff is None and name is None:
            raise MalformedPolynomial(f"cannot parse {s[pos:]!r}")
        if not first and sign is None:
            raise MalformedPolynomial(f"missing sign before {s[pos:]!r}")
        value = int(coeff) if coeff is not None else 1
        if sign == "-":
            value = -value
        if name is not None:
            if name != var:
                raise MalformedPolynomial(f"expected variable {var!r}, got {name!r}")
            key = _parse_exponent(exp) if exp is not None else 2
        else:
            if exp is not None:
                raise MalformedPolynomial("exponent without a variable")
            key = 0
        out[key] = out.get(key, 0) + value
        pos = m.end()
        first = False
    return LaurentPoly._raw(out)


def _parse_exponent(token: str) -> int:
    inner = token.strip().strip("({[)}]").strip()
    if "/" in inner:
        num, den = inner.split("/")
        if den.strip() != "2":
            raise MalformedPolynomial(f"exponent {token!r} is not a half-integer")
        return int(num)
    return 2 * int(inner)


# --------------------------------------------------------------------------
# Kauffman bracket and the Jones polynomial


def kauffman_bracket(d: Diagram, *, cap: int = 20) -> LaurentPoly:
    """State sum over all smoothings, in the variable A.

    Sum of A^(#A - #B) * delta^(circles - 1) with delta = -A^2 - A^-2,
    normalized so a single crossing-free circle has bracket 1.  Cost is
    2^c states; above ``cap`` crossings a warning is emitted (never an
    error) since runtime grows quickly.
    """
    c = d.crossing_count
    if c > cap:
        warnings.warn(
            f"Kauffman bracket on {c} crossings enumerates 2^{c} states",
            RuntimeWarning,
            stacklevel=2,
        )
    if c == 0:
        if d.free_circles == 0:
            return LaurentPoly.one()
        return _delta_power(d.free_circles - 1)

    joins_a = [smoothing_pairs(t, "A") for t in d.crossings]
    joins_b = [smoothing_pairs(t, "B") for t in d.crossings]
    arc_count = d.arc_count
    profile: Counter[tuple[int, int]] = Counter()  # (#B, circles) -> states
    parent = list(range(arc_count + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for mask in range(1 << c):
        for i in range(arc_count + 1):
            parent[i] = i
        for e in range(c):
            pairs = joins_b[e] if (mask >> e) & 1 else joins_a[e]
            for x, y in pairs:
                rx, ry = find(x), find(y)
                if rx != ry:
                    parent[ry] = rx
        circles = sum(1 for i in range(1, arc_count + 1) if find(i) == i)
        profile[(mask.bit_count(), circles)] += 1

    result = LaurentPoly.zero()
    for (b_count, circles), n in profile.items():
        term = LaurentPoly.term(n, c - 2 * b_count) * _delta_power(
            circles + d.free_circles - 1
        )
        result = result + term
    return result


def _delta_power(n: int) -> LaurentPoly:
    delta = LaurentPoly({2: -1, -2: -1})
    return delta**n


def jones_V(d: Diagram, *, cap: int = 20) -> LaurentPoly:
    """Jones polynomial V in t, normalized so the unknot maps to 1.

    Computed as (-A)^(-3w) <D> followed by A^-4 -> t.  Exponents are
    integers exactly when the component count is odd, half-odd-integers
    otherwise.
    """
    bracket = kauffman_bracket(d, cap=cap)
    w = crossing_signs(d).writhe
    out: dict[int, int] = {}
    sign = -1 if w % 2 else 1
    for key, coeff in bracket._coeffs.items():
        shifted = key - 6 * w  # A-exponent in half-steps after (-A)^(-3w)
        if shifted % 4:
            raise AssertionError("bracket exponent not divisible by 4 after writhe shift")
        out[-shifted // 4] = sign * coeff
    return LaurentPoly._raw(out)


def v_to_unnormalized(v: LaurentPoly) -> LaurentPoly:
    """(q + q^-1) * V with t^(1/2) -> -q; output has integer exponents."""
    parities = v.exponent_parities()
    if len(parities) > 1:
        raise MixedParity("Jones exponents mix integers and half-odd-integers")
    substituted: dict[int, int] = {}
    for key, coeff in v._coeffs.items():
        # t^(k/2) = (t^(1/2))^k -> (-q)^k
        substituted[2 * key] = coeff if key % 2 == 0 else -coeff
    hook = LaurentPoly._raw({2: 1, -2: 1})  # q + q^-1
    return LaurentPoly._raw(substituted) * hook


def unnormalized_to_v(j: LaurentPoly) -> LaurentPoly:
    """Divide by (q + q^-1), then q -> -t^(1/2).

    Raises NotDivisible when the quotient is inexact, which signals
    inconsistent homology input rather than a computation error here.
    """
    if j.is_zero:
        return LaurentPoly.zero()
    if j.exponent_parities() != {0}:
        raise MixedParity("unnormalized Jones polynomials have integer exponents")
    work = dict(j._coeffs)
    low = min(work)
    quotient: dict[int, int] = {}
    while work:
        m = max(work)
        if m < low + 4:
            # quotient support lives in [low+2, high-2]
            raise NotDivisible("polynomial is not divisible by (q + q^-1)")
        c = work.pop(m)
        quotient[m - 2] = c
        k = m - 4
        rem = work.get(k, 0) - c
        if rem:
            work[k] = rem
        else:
            work.pop(k, None)
    out: dict[int, int] = {}
    for key, coeff in quotient.items():
        exp = key // 2  # integer exponent of q
        out[key // 2] = coeff if exp % 2 == 0 else -coeff
    return LaurentPoly._raw(out)


# --------------------------------------------------------------------------
# summaries and degree bounds


@dataclass(frozen=True)
class JonesSummary:
    """Degree data of a Jones polynomial; p1 is |second coefficient|."""

    min_deg: Fraction
    max_deg: Fraction
    second_coeff: int
    p1: int

    def __post_init__(self) -> None:
        if self.min_deg > self.max_deg:
            raise ValueError("min_deg must not exceed max_deg")
        if self.p1 != abs(self.second_coeff):
            raise ValueError("p1 must equal |second_coeff|")


def jones_summary(v: LaurentPoly) -> JonesSummary:
    """Extract degrees and the coefficient one step above the minimum.

    The second coefficient is 0 when the t^(min+1) term is absent.
    """
    if v.is_zero:
        raise ZeroPolynomial("cannot summarize the zero polynomial")
    lo, hi = v.min_deg(), v.max_deg()
    second = v.coeff(lo + 1)
    return JonesSummary(lo, hi, second, abs(second))


def lickorish_bounds(d: Diagram) -> tuple[Fraction, Fraction]:
    """Degree window of V for a positive diagram.

    Returns ((c - |s_A| + 1)/2, (2c + |s_B| - 1)/2); the first equals
    min deg V exactly, the second only bounds max deg V from above.
    """
    if not is_positive(d):
        raise NotPositiveDiagram("degree bounds require an all-positive diagram")
    c = d.crossing_count
    return (
        Fraction(c - a_state_circles(d) + 1, 2),
        Fraction(2 * c + b_state_circles(d) - 1, 2),
    )
