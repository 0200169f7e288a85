"""Continued fractions, approximation exponents, and field constructors.

All convergent arithmetic is exact (Python ints / fractions).  A float input
is first rationalized through its exact binary value, so deep coefficients
describe the double, not the ideal real; tests and callers should stay within
the first few dozen coefficients where the two agree.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

TWO_PI = 2.0 * math.pi


@dataclass
class ContinuedFraction:
    """Coefficients and exact convergents of a number in [0, 1).

    ``convergents[k] = (p_k, q_k)`` with q_{k+1} = c_{k+1} q_k + q_{k-1};
    ``terminated`` is set when the expansion is finite (rational input).
    """

    coefficients: list[int]
    convergents: list[tuple[int, int]]
    value: Fraction
    terminated: bool

    def denominators(self) -> list[int]:
        return [q for _, q in self.convergents]


def cf_expand(x, depth: int) -> ContinuedFraction:
    """Continued fraction [0; c1, c2, ...] of x in (0, 1) to `depth` terms.

    Accepts a float or an exact Fraction.  A rational input terminates early;
    this is reported through ``terminated``, not an error.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    frac = Fraction(x)
    if not 0 < frac < 1:
        raise ValueError("x must lie strictly inside (0, 1)")
    coeffs: list[int] = []
    convergents: list[tuple[int, int]] = []
    p_prev, q_prev = 1, 0
    p_cur, q_cur = 0, 1
    num, den = frac.denominator, frac.numerator  # start at 1/x
    terminated = False
    for _ in range(depth):
        c = num // den
        coeffs.append(int(c))
        p_cur, p_prev = c * p_cur + p_prev, p_cur
        q_cur, q_prev = c * q_cur + q_prev, q_cur
        convergents.append((p_cur, q_cur))
        num, den = den, num - c * den
        if den == 0:
            terminated = True
            break
    return ContinuedFraction(coeffs, convergents, frac, terminated)


def beta_exponent(cf: ContinuedFraction) -> float:
    """Finite-depth proxy for limsup_k log(q_{k+1}) / q_k.

    Takes the maximum of log(q_{k+1})/q_k over the deeper half of the
    available convergents (a plain max would be dominated by the first few
    k where log(q_{k+1})/q_k is O(1) for every number).  The proxy carries
    no limsup claim; report it together with the depth.
    """
    if cf.terminated:
        raise ValueError("rational number: expansion terminates, no exponent")
    qs = cf.denominators()
    if len(qs) < 5:
        raise ValueError("need at least 5 convergents")
    ratios = [math.log(qs[k + 1]) / qs[k] for k in range(len(qs) - 1)]
    start = len(ratios) // 2
    return max(ratios[start:])


@dataclass
class DiophantineReport:
    ok: bool
    worst_k: int
    worst_value: float  # ||k x|| * |k|^A, minimized over k
    c: float
    exponent: float
    kmax: int


def diophantine_check(field_angle: float, c: float = 0.1, exponent: float = 2.0,
                      kmax: int = 10000) -> DiophantineReport:
    """Scan ||k field/(2 pi)|| > c |k|^{-A} for 0 < k < kmax.

    ``field_angle`` is the field in radians; the check runs on its rotation
    number x = field/(2 pi).  Returns the minimizing k so callers can report
    the worst offender.
    """
    if c <= 0:
        raise ValueError("c must be positive")
    if kmax < 1:
        raise ValueError("kmax must be >= 1")
    x = (field_angle / TWO_PI) % 1.0
    worst_k, worst_val = 0, math.inf
    ok = True
    for k in range(1, kmax):
        dist = abs(k * x - round(k * x))
        scaled = dist * k**exponent
        if scaled < worst_val:
            worst_val, worst_k = scaled, k
        if dist <= c / k**exponent:
            ok = False
    return DiophantineReport(ok, worst_k, worst_val, c, exponent, kmax)


@dataclass(frozen=True)
class FieldClass:
    """A field angle together with what is known about its arithmetic type.

    ``value`` is the rotation number field/(2 pi) in [0, 1); ``tag`` is one of
    'rational', 'diophantine-estimate', 'liouville-construct', 'unknown'.
    """

    tag: str
    value: float
    p: int | None = None
    q: int | None = None
    exact: Fraction | None = None
    cf: ContinuedFraction | None = field(default=None, compare=False)

    @property
    def angle(self) -> float:
        """The field in radians."""
        return TWO_PI * self.value


def rational_field(p: int, q: int) -> FieldClass:
    if q <= 0 or not 0 <= p < q:
        raise ValueError("need 0 <= p < q")
    g = math.gcd(p, q) or 1
    p, q = p // g, q // g
    return FieldClass("rational", p / q, p=p, q=q, exact=Fraction(p, q))


def golden_field() -> FieldClass:
    """field/(2 pi) = (sqrt 5 - 1)/2, the classic badly approximable number."""
    value = (math.sqrt(5.0) - 1.0) / 2.0
    return FieldClass("diophantine-estimate", value, cf=cf_expand(value, 30))


def explicit_field(value: float) -> FieldClass:
    value = value % 1.0
    if value == 0.0:
        return rational_field(0, 1)
    return FieldClass("unknown", value, cf=cf_expand(value, 30))


def _cf_from_coefficients(coeffs: list[int]) -> ContinuedFraction:
    convergents = []
    p_prev, q_prev = 1, 0
    p_cur, q_cur = 0, 1
    for c in coeffs:
        p_cur, p_prev = c * p_cur + p_prev, p_cur
        q_cur, q_prev = c * q_cur + q_prev, q_cur
        convergents.append((p_cur, q_cur))
    value = Fraction(p_cur, q_cur)
    # terminated=False: the coefficients come from a growth rule that keeps
    # producing terms, so the represented number is irrational by construction
    return ContinuedFraction(list(coeffs), convergents, value, False)


def make_liouville(schedule: list[int] | None = None, depth: int = 4,
                   growth: str = "standard", exponent_cap: int = 24) -> FieldClass:
    """A number built from rapidly growing continued fraction coefficients.

    Without an explicit ``schedule``, coefficients follow a growth rule:

    * ``standard``: c_{k+1} = 2^{min(q_k, exponent_cap)} -- the approximation
      exponent log(q_{k+1})/q_k settles near log 2;
    * ``steep``: c_{k+1} = 2^{k q_k} (depth capped at 4; the integers explode
      beyond that) -- the exponent grows with depth.

    The exact convergents are retained; the float value is the deepest
    convergent rounded to double, which agrees with the ideal number to well
    below double precision.
    """
    if schedule is None:
        coeffs = [1]
        q_prev, q_cur = 0, 1  # q_0, q_1 for [0; 1, ...]
        if growth == "standard":
            for _ in range(depth - 1):
                coeffs.append(2 ** min(q_cur, exponent_cap))
                q_prev, q_cur = q_cur, coeffs[-1] * q_cur + q_prev
        elif growth == "steep":
            if depth > 4:
                raise ValueError("steep growth supports depth <= 4")
            for k in range(1, depth):
                coeffs.append(2 ** (k * q_cur))
                q_prev, q_cur = q_cur, coeffs[-1] * q_cur + q_prev
        else:
            raise ValueError(f"unknown growth rule {growth!r}")
        schedule = coeffs
    schedule = [int(c) for c in schedule]
    if len(schedule) < 2:
        raise ValueError("schedule too short, need at least 2 coefficients")
    if any(c < 1 for c in schedule):
        raise ValueError("coefficients must be positive integers")
    if any(schedule[k + 1] < 2 ** min(schedule[k], exponent_cap)
           for k in range(len(schedule) - 1)):
        warnings.warn("schedule grows slower than c_{k+1} >= 2^{c_k}; the "
                      "result may not be Liouville-like", stacklevel=2)
    cf = _cf_from_coefficients(schedule)
    return FieldClass("liouville-construct", float(cf.value), exact=cf.value, cf=cf)
