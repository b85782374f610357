"""Exact arithmetic kernels.

Everything downstream runs on the types in this module: arbitrary-precision
rationals (``fractions.Fraction``), elements ``a + b*sqrt(p)`` of the ramified
quadratic extension, half-integer valuations with a point at infinity, prime
field and quadratic-extension residues, and truncated p-adic units.  No
floating point is used anywhere, and every value is immutable.

Valuations are normalized so that v(p) = 1 and v(sqrt(p)) = 1/2.  Since the
rational part of ``a + b*sqrt(p)`` has integer valuation and the surd part has
strictly half-odd valuation, the two parts can never cancel and

    v(a + b*sqrt(p)) = min(v(a), v(b) + 1/2)

holds exactly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering


class NegativeValuation(ArithmeticError):
    """Residue requested of an element with negative valuation."""


class Unreducible(NegativeValuation):
    """The rational part alone carries p in its denominator; no sqrt(p)-part
    can compensate because rational and surd valuations never tie."""


class ParseError(ValueError):
    """Text did not match the L-value grammar."""


#: scalar rationals throughout the package
Rational = Fraction


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _require_odd_prime(p: int) -> None:
    if p < 5 or not is_prime(p):
        raise ValueError(f"p must be a prime >= 5, got {p}")


# --------------------------------------------------------------------------
# half-integers with +infinity


@total_ordering
class HalfInt:
    """An element of (1/2)Z, or +infinity.  Stores twice the value."""

    __slots__ = ("twice",)

    def __init__(self, twice: int | None):
        if twice is not None and not isinstance(twice, int):
            raise TypeError("HalfInt stores twice the value as an int")
        object.__setattr__(self, "twice", twice)

    def __setattr__(self, *a):  # immutability
        raise AttributeError("HalfInt is immutable")

    @classmethod
    def whole(cls, n: int) -> "HalfInt":
        return cls(2 * n)

    @classmethod
    def infinity(cls) -> "HalfInt":
        return cls(None)

    @classmethod
    def coerce(cls, x) -> "HalfInt":
        if isinstance(x, HalfInt):
            return x
        if isinstance(x, int):
            return cls(2 * x)
        if isinstance(x, Fraction):
            if x.denominator in (1, 2):
                return cls(int(2 * x))
            raise ValueError(f"{x} is not a half-integer")
        raise TypeError(f"cannot coerce {x!r} to HalfInt")

    @property
    def is_infinite(self) -> bool:
        return self.twice is None

    @property
    def is_integer(self) -> bool:
        return self.twice is not None and self.twice % 2 == 0

    def as_fraction(self) -> Fraction:
        if self.is_infinite:
            raise ValueError("infinite valuation has no rational value")
        return Fraction(self.twice, 2)

    def __add__(self, other) -> "HalfInt":
        other = HalfInt.coerce(other)
        if self.is_infinite or other.is_infinite:
            return HalfInt(None)
        return HalfInt(self.twice + other.twice)

    __radd__ = __add__

    def __sub__(self, other) -> "HalfInt":
        other = HalfInt.coerce(other)
        if other.is_infinite:
            raise ValueError("cannot subtract infinity")
        if self.is_infinite:
            return HalfInt(None)
        return HalfInt(self.twice - other.twice)

    def __eq__(self, other) -> bool:
        try:
            other = HalfInt.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.twice == other.twice

    def __lt__(self, other) -> bool:
        other = HalfInt.coerce(other)
        if self.is_infinite:
            return False
        if other.is_infinite:
            return True
        return self.twice < other.twice

    def __hash__(self):
        return hash(("HalfInt", self.twice))

    def __repr__(self):
        return f"HalfInt({self})"

    def __str__(self):
        if self.is_infinite:
            return "inf"
        if self.twice % 2 == 0:
            return str(self.twice // 2)
        return f"{self.twice}/2"


# --------------------------------------------------------------------------
# valuations


def vp_rational(x, p: int) -> HalfInt:
    """v_p of a rational number; v_p(0) = +infinity.

    >>> vp_rational(Fraction(50, 3), 5)
    HalfInt(2)
    """
    _require_odd_prime(p)
    x = Fraction(x)
    if x == 0:
        return HalfInt(None)
    v = 0
    num = x.numerator
    den = x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return HalfInt.whole(v)


# --------------------------------------------------------------------------
# quadratic surd elements a + b*sqrt(p)


_RAT = r"-?\d+(?:/\d+)?"
_QUAD_RE = re.compile(rf"^({_RAT})(?:([+-])({_RAT})\*sqrt\((\d+)\))?$")


@dataclass(frozen=True)
class QuadElt:
    """Element a + b*sqrt(p) of Q(sqrt(p)), exact."""

    p: int
    a: Fraction
    b: Fraction

    def __post_init__(self):
        _require_odd_prime(self.p)
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    @classmethod
    def rational(cls, p: int, a) -> "QuadElt":
        return cls(p, Fraction(a), Fraction(0))

    def _check(self, other: "QuadElt"):
        if self.p != other.p:
            raise ValueError("mixed base primes")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QuadElt.rational(self.p, other)
        self._check(other)
        return QuadElt(self.p, self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return QuadElt(self.p, -self.a, -self.b)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QuadElt.rational(self.p, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QuadElt(self.p, self.a * other, self.b * other)
        self._check(other)
        return QuadElt(
            self.p,
            self.a * other.a + self.p * self.b * other.b,
            self.a * other.b + self.b * other.a,
        )

    __rmul__ = __mul__

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        sign = "+" if self.b >= 0 else "-"
        return f"{self.a}{sign}{abs(self.b)}*sqrt({self.p})"


def sqrtp_power(p: int, twice_exponent: int) -> QuadElt:
    """sqrt(p)^twice_exponent = p^(twice_exponent/2) as an exact QuadElt."""
    _require_odd_prime(p)
    if twice_exponent % 2 == 0:
        return QuadElt(p, Fraction(p) ** (twice_exponent // 2), Fraction(0))
    return QuadElt(p, Fraction(0), Fraction(p) ** ((twice_exponent - 1) // 2))


def vp_quad(x: QuadElt) -> HalfInt:
    """v_p(a + b*sqrt(p)) = min(v(a), v(b) + 1/2); the minimum is never a tie."""
    va = vp_rational(x.a, x.p)
    vb = vp_rational(x.b, x.p) + HalfInt(1)
    return va if va < vb else vb


def parse_quad(text: str, p: int) -> QuadElt:
    """Parse ``RAT`` or ``RAT (+|-) RAT*sqrt(p)``, whitespace-insensitive.

    The surd base must equal the working prime p; anything else is rejected.
    """
    _require_odd_prime(p)
    compact = re.sub(r"\s+", "", text)
    m = _QUAD_RE.match(compact)
    if not m:
        raise ParseError(f"cannot parse L-value {text!r}")
    a = Fraction(m.group(1))
    if m.group(2) is None:
        return QuadElt(p, a, Fraction(0))
    b = Fraction(m.group(3))
    if m.group(2) == "-":
        b = -b
    q = int(m.group(4))
    if q != p:
        raise ParseError(f"sqrt({q}) does not live in the working field Q(sqrt({p}))")
    return QuadElt(p, a, b)


# --------------------------------------------------------------------------
# prime-field elements


@dataclass(frozen=True)
class FpElt:
    """An element of F_p, stored as the representative in [0, p)."""

    p: int
    value: int

    def __post_init__(self):
        _require_odd_prime(self.p)
        object.__setattr__(self, "value", self.value % self.p)

    @classmethod
    def from_rational(cls, x, p: int) -> "FpElt":
        x = Fraction(x)
        if x.denominator % p == 0:
            raise Unreducible(f"{x} has p = {p} in its denominator")
        return cls(p, x.numerator * pow(x.denominator, -1, p))

    def _check(self, other):
        if not isinstance(other, FpElt):
            other = FpElt(self.p, other)
        elif self.p != other.p:
            raise ValueError("mixed primes")
        return other

    def __add__(self, other):
        other = self._check(other)
        return FpElt(self.p, self.value + other.value)

    __radd__ = __add__

    def __neg__(self):
        return FpElt(self.p, -self.value)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        return FpElt(self.p, self.value * other.value)

    __rmul__ = __mul__

    def inverse(self) -> "FpElt":
        if self.value == 0:
            raise ZeroDivisionError("inverse of 0 in F_p")
        return FpElt(self.p, pow(self.value, -1, self.p))

    def __pow__(self, n: int) -> "FpElt":
        if n < 0:
            return self.inverse() ** (-n)
        return FpElt(self.p, pow(self.value, n, self.p))

    def __bool__(self):
        return self.value != 0

    def __str__(self):
        return f"{self.value} (mod {self.p})"


def smallest_nonresidue(p: int) -> int:
    """The smallest positive quadratic non-residue mod p."""
    _require_odd_prime(p)
    for d in range(2, p):
        if pow(d, (p - 1) // 2, p) == p - 1:
            return d
    raise AssertionError("no non-residue found (p not an odd prime?)")


def _sqrt_mod(a: int, p: int) -> int | None:
    """Smallest square root of a mod p, or None.  p is small; scan exactly."""
    a %= p
    for x in range((p + 1) // 2 + 1):
        if x * x % p == a:
            return x
    return None


@dataclass(frozen=True)
class Fp2Elt:
    """Element c0 + c1*theta of F_{p^2}, theta^2 = d with d the smallest
    positive non-residue mod p."""

    p: int
    c0: int
    c1: int
    d: int

    def __post_init__(self):
        object.__setattr__(self, "c0", self.c0 % self.p)
        object.__setattr__(self, "c1", self.c1 % self.p)

    @classmethod
    def from_fp(cls, x: FpElt) -> "Fp2Elt":
        return cls(x.p, x.value, 0, smallest_nonresidue(x.p))

    @property
    def in_prime_field(self) -> bool:
        return self.c1 == 0

    def _check(self, other):
        if isinstance(other, int):
            other = Fp2Elt(self.p, other, 0, self.d)
        if self.p != other.p or self.d != other.d:
            raise ValueError("mixed quadratic extensions")
        return other

    def __add__(self, other):
        other = self._check(other)
        return Fp2Elt(self.p, self.c0 + other.c0, self.c1 + other.c1, self.d)

    def __neg__(self):
        return Fp2Elt(self.p, -self.c0, -self.c1, self.d)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __mul__(self, other):
        other = self._check(other)
        return Fp2Elt(
            self.p,
            self.c0 * other.c0 + self.d * self.c1 * other.c1,
            self.c0 * other.c1 + self.c1 * other.c0,
            self.d,
        )

    __rmul__ = __mul__

    def inverse(self) -> "Fp2Elt":
        nrm = (self.c0 * self.c0 - self.d * self.c1 * self.c1) % self.p
        if nrm == 0:
            raise ZeroDivisionError("inverse of 0 in F_{p^2}")
        ninv = pow(nrm, -1, self.p)
        return Fp2Elt(self.p, self.c0 * ninv, -self.c1 * ninv, self.d)

    def __str__(self):
        if self.c1 == 0:
            return f"{self.c0} (mod {self.p})"
        return f"{self.c0}+{self.c1}*theta (theta^2={self.d}, mod {self.p})"


def fp2_solve_monic_quadratic(c: FpElt) -> tuple[Fp2Elt, Fp2Elt]:
    """Both roots of X^2 - c*X + 1 over F_{p^2}, in deterministic order.

    The roots multiply to 1 and sum to c; they lie in F_p exactly when
    c^2 - 4 is a square mod p, and coincide (at +-1) exactly when c = +-2.
    """
    p = c.p
    d = smallest_nonresidue(p)
    disc = (c.value * c.value - 4) % p
    half = pow(2, -1, p)
    s = _sqrt_mod(disc, p)
    if s is not None:
        roots = sorted(
            {((c.value + s) * half % p, 0), ((c.value - s) * half % p, 0)}
        )
        if len(roots) == 1:  # repeated root (c = +-2)
            roots = roots * 2
    else:
        w = _sqrt_mod(disc * pow(d, -1, p) % p, p)
        roots = sorted(
            {(c.value * half % p, w * half % p), (c.value * half % p, -w * half % p)}
        )
    (a0, b0), (a1, b1) = roots
    return Fp2Elt(p, a0, b0, d), Fp2Elt(p, a1, b1, d)


def residue_mod_pi(x: QuadElt) -> FpElt:
    """Reduction modulo the maximal ideal (pi = sqrt(p)) of the valuation ring.

    Requires v(x) >= 0.  The surd part b*sqrt(p) always reduces to 0, so the
    residue is a mod p.  Raises Unreducible when the rational part itself has
    p in its denominator, NegativeValuation when only the surd part sinks
    below zero.
    """
    if vp_rational(x.a, x.p) < HalfInt.whole(0):
        raise Unreducible(f"rational part {x.a} has {x.p} in its denominator")
    if vp_quad(x) < HalfInt.whole(0):
        raise NegativeValuation(f"v({x}) < 0")
    return FpElt.from_rational(x.a, x.p)


# --------------------------------------------------------------------------
# truncated p-adic units


@dataclass(frozen=True)
class PadicTrunc:
    """A p-adic number known to ``precision`` digits of its unit part:
    p^valuation * unit_digits with unit_digits taken mod p^precision.

    ``is_zero`` flags an exact zero (then valuation and digits are 0).
    """

    p: int
    valuation: int
    unit_digits: int
    precision: int = 64
    is_zero: bool = False

    def __post_init__(self):
        _require_odd_prime(self.p)
        if self.is_zero:
            object.__setattr__(self, "valuation", 0)
            object.__setattr__(self, "unit_digits", 0)
        else:
            modulus = self.p**self.precision
            object.__setattr__(self, "unit_digits", self.unit_digits % modulus)
            if self.unit_digits % self.p == 0:
                raise ValueError("unit part must be a p-adic unit")

    @property
    def modulus(self) -> int:
        return self.p**self.precision

    def __str__(self):
        if self.is_zero:
            return "0"
        return f"{self.unit_digits} * {self.p}^{self.valuation} (mod {self.p}^{self.precision} on the unit)"


def teichmuller(a: int, p: int, precision: int = 64) -> PadicTrunc:
    """The Teichmuller representative of a mod p, to the given precision.

    It is the unique fixed point of x -> x^p congruent to a mod p; iterating
    the p-power map from a converges since each step agrees one digit deeper.

    >>> teichmuller(2, 5, 2).unit_digits
    7
    """
    _require_odd_prime(p)
    if precision < 1:
        raise ValueError("precision must be >= 1")
    if a % p == 0:
        return PadicTrunc(p, 0, 0, precision, is_zero=True)
    modulus = p**precision
    x = a % modulus
    while True:
        nxt = pow(x, p, modulus)
        if nxt == x:
            return PadicTrunc(p, 0, x, precision)
        x = nxt
