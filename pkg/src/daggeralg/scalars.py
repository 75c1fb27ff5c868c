"""Exact scalar arithmetic: rationals, absolute values, certified intervals.

Every norm in this package is a ``NormValue``: a closed interval of
non-negative rationals known to contain the real number being certified.
No floating point is used anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import NonElement

Q = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def as_fraction(x) -> Fraction:
    """Coerce ints, strings like "3/4" and Fractions to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


@dataclass(frozen=True)
class NormValue:
    """Certified two-sided bound on a norm: lo <= value <= hi.

    hi = None encodes an unbounded upper estimate (+infinity).
    """

    lo: Fraction
    hi: Optional[Fraction]

    def __post_init__(self):
        object.__setattr__(self, "lo", as_fraction(self.lo))
        if self.hi is not None:
            object.__setattr__(self, "hi", as_fraction(self.hi))
        if self.lo < 0:
            raise ValueError("norm lower bound must be non-negative")
        if self.hi is not None and self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @staticmethod
    def exact(x) -> "NormValue":
        x = as_fraction(x)
        return NormValue(x, x)

    @staticmethod
    def zero() -> "NormValue":
        return NormValue(ZERO, ZERO)

    @property
    def is_exact(self) -> bool:
        return self.hi is not None and self.lo == self.hi

    def __add__(self, other: "NormValue") -> "NormValue":
        hi = None if self.hi is None or other.hi is None else self.hi + other.hi
        return NormValue(self.lo + other.lo, hi)

    def __mul__(self, other: "NormValue") -> "NormValue":
        # both endpoints non-negative, so the product interval is endpointwise
        hi = None if self.hi is None or other.hi is None else self.hi * other.hi
        return NormValue(self.lo * other.lo, hi)

    def scale(self, c) -> "NormValue":
        c = as_fraction(c)
        if c < 0:
            raise ValueError("scale factor must be non-negative")
        return NormValue(self.lo * c, None if self.hi is None else self.hi * c)

    def join_max(self, other: "NormValue") -> "NormValue":
        """Interval enclosing max(self, other)."""
        hi = None if self.hi is None or other.hi is None else max(self.hi, other.hi)
        return NormValue(max(self.lo, other.lo), hi)

    def pow_int(self, k: int) -> "NormValue":
        if k < 0:
            raise ValueError("negative powers not supported")
        hi = None if self.hi is None else self.hi**k
        return NormValue(self.lo**k, hi)

    def width(self) -> Optional[Fraction]:
        return None if self.hi is None else self.hi - self.lo

    def contains(self, x) -> bool:
        x = as_fraction(x)
        return self.lo <= x and (self.hi is None or x <= self.hi)

    def to_json(self):
        return {
            "lo": str(self.lo),
            "hi": "inf" if self.hi is None else str(self.hi),
        }

    @staticmethod
    def from_json(obj) -> "NormValue":
        hi = obj["hi"]
        return NormValue(Fraction(obj["lo"]), None if hi == "inf" else Fraction(hi))

    def __repr__(self):
        hi = "inf" if self.hi is None else str(self.hi)
        return f"[{self.lo}, {hi}]"


def norm_max(values) -> NormValue:
    out = NormValue.zero()
    for v in values:
        out = out.join_max(v)
    return out


def norm_sum(values) -> NormValue:
    out = NormValue.zero()
    for v in values:
        out = out + v
    return out


# ---------------------------------------------------------------------------
# base rings


KIND_Z_ARCH = "IntegersArchimedean"
KIND_Z_TRIVIAL = "IntegersTrivial"
KIND_Q_PADIC = "Rationals_pAdic"
KIND_Q_ARCH = "RationalsArchimedean"

_KINDS = (KIND_Z_ARCH, KIND_Z_TRIVIAL, KIND_Q_PADIC, KIND_Q_ARCH)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class BanachRing:
    """Descriptor of a base Banach ring: carrier + absolute value.

    mul_constant is the C in |ab| <= C|a||b|; 1 for all built-in kinds
    (their absolute values are multiplicative) but kept as a field so
    re-scaled user rings can be described.
    """

    kind: str
    p: Optional[int] = None
    mul_constant: Fraction = ONE

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown ring kind {self.kind}")
        object.__setattr__(self, "mul_constant", as_fraction(self.mul_constant))
        if self.mul_constant <= 0:
            raise ValueError("mul_constant must be positive")
        if self.kind == KIND_Q_PADIC:
            if self.p is None or not _is_prime(self.p):
                raise ValueError("p-adic ring needs a prime p")
        elif self.p is not None:
            raise ValueError("p only meaningful for the p-adic kind")

    @property
    def non_archimedean(self) -> bool:
        return self.kind in (KIND_Z_TRIVIAL, KIND_Q_PADIC)

    @property
    def integral(self) -> bool:
        """True when the carrier is the integers (a lattice)."""
        return self.kind in (KIND_Z_ARCH, KIND_Z_TRIVIAL)

    def check_element(self, x) -> Fraction:
        x = as_fraction(x)
        if self.integral and x.denominator != 1:
            raise NonElement(f"{x} is not an integer")
        return x

    def to_json(self):
        obj = {"kind": self.kind}
        if self.p is not None:
            obj["p"] = self.p
        if self.mul_constant != 1:
            obj["mul_constant"] = str(self.mul_constant)
        return obj

    @staticmethod
    def from_json(obj) -> "BanachRing":
        return BanachRing(
            obj["kind"],
            p=obj.get("p"),
            mul_constant=as_fraction(obj.get("mul_constant", 1)),
        )


def integers_archimedean() -> BanachRing:
    return BanachRing(KIND_Z_ARCH)


def integers_trivial() -> BanachRing:
    return BanachRing(KIND_Z_TRIVIAL)


def rationals_padic(p: int) -> BanachRing:
    return BanachRing(KIND_Q_PADIC, p=p)


def rationals_archimedean() -> BanachRing:
    return BanachRing(KIND_Q_ARCH)


def padic_valuation(x: Fraction, p: int) -> int:
    """v_p(x) for nonzero rational x."""
    if x == 0:
        raise ValueError("valuation of zero is +infinity")
    v = 0
    num = x.numerator
    den = x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def abs_value(ring: BanachRing, x) -> NormValue:
    """Exact absolute value of x in the given ring, as a width-0 interval."""
    x = ring.check_element(x)
    if x == 0:
        return NormValue.zero()
    if ring.kind in (KIND_Z_ARCH, KIND_Q_ARCH):
        return NormValue.exact(abs(x))
    if ring.kind == KIND_Z_TRIVIAL:
        return NormValue.exact(1)
    v = padic_valuation(x, ring.p)
    if v >= 0:
        return NormValue.exact(Fraction(1, ring.p**v))
    return NormValue.exact(Fraction(ring.p ** (-v)))


# ---------------------------------------------------------------------------
# certified roots


def _integer_nth_root(m: int, n: int) -> int:
    """floor(m ** (1/n)) for m >= 0, n >= 1, by Newton iteration."""
    if m < 0:
        raise ValueError("negative radicand")
    if m == 0:
        return 0
    if n == 1:
        return m
    x = 1 << ((m.bit_length() + n - 1) // n + 1)
    while True:
        y = ((n - 1) * x + m // x ** (n - 1)) // n
        if y >= x:
            break
        x = y
    while x**n > m:
        x -= 1
    return x


def rational_root_bounds(a: Fraction, n: int, precision: Fraction):
    """Return (lo, hi) rationals with lo <= a**(1/n) <= hi, hi-lo <= precision."""
    a = as_fraction(a)
    precision = as_fraction(precision)
    if a < 0:
        raise ValueError("radicand must be non-negative")
    if n < 1:
        raise ValueError("root index must be >= 1")
    if precision <= 0:
        raise ValueError("precision must be positive")
    if a == 0:
        return ZERO, ZERO
    # exact perfect-power shortcut
    rn = _integer_nth_root(a.numerator, n)
    rd = _integer_nth_root(a.denominator, n)
    if rn**n == a.numerator and rd**n == a.denominator:
        r = Fraction(rn, rd)
        return r, r
    s = -((-precision.denominator) // precision.numerator)  # ceil(1/precision)
    # (a * s^n) has integer floor m; r = floor-root satisfies r/s <= a^(1/n) < (r+1)/s
    m = (a.numerator * s**n) // a.denominator
    r = _integer_nth_root(m, n)
    return Fraction(r, s), Fraction(r + 1, s)


def nth_root_interval(x: NormValue, n: int, precision) -> NormValue:
    """Interval containing [x.lo**(1/n), x.hi**(1/n)] of width <= precision
    beyond the width inherited from x."""
    precision = as_fraction(precision)
    lo, _ = rational_root_bounds(x.lo, n, precision)
    if x.hi is None:
        return NormValue(lo, None)
    _, hi = rational_root_bounds(x.hi, n, precision)
    return NormValue(min(lo, hi), hi)


def pow_interval(x: NormValue, e: Fraction, precision=Fraction(1, 10**6)) -> NormValue:
    """x ** e for a positive rational exponent e, certified."""
    e = as_fraction(e)
    if e < 0:
        raise ValueError("exponent must be non-negative")
    if e == 0:
        return NormValue.exact(1)
    powered = x.pow_int(e.numerator)
    if e.denominator == 1:
        return powered
    return nth_root_interval(powered, e.denominator, precision)
