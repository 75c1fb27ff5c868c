"""Multiplicative seminorms on the integers and spectral estimates.

The point set over the integers is the classical Ostrowski list: the
trivial absolute value, powers of the usual one, and powers of the p-adic
ones.  On top of it: fiberwise evaluation seminorms, polydisk sup norms
per place, a global spectral estimate, its power-iteration refinement,
and the check that the usual absolute value dominates every other fiber
at radii >= 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import CoordinateOutOfDisk, DimensionMismatch
from .scalars import (
    BanachRing,
    NormValue,
    as_fraction,
    norm_max,
    nth_root_interval,
    padic_valuation,
    pow_interval,
)
from .series import PolyRadius, TruncatedSeries, multiply, norm_S, norm_T

TRIVIAL = "Trivial"
ARCHIMEDEAN = "Archimedean"
PADIC = "Padic"

ROOT_PRECISION = Fraction(1, 10**9)


@dataclass(frozen=True)
class Place:
    kind: str
    eps: Fraction = Fraction(1)
    p: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "eps", as_fraction(self.eps))
        if self.kind == TRIVIAL:
            return
        if self.kind == ARCHIMEDEAN:
            if not 0 < self.eps <= 1:
                raise ValueError("Archimedean exponent must lie in (0, 1]")
        elif self.kind == PADIC:
            if self.p is None or self.eps <= 0:
                raise ValueError("p-adic place needs a prime and eps > 0")
        else:
            raise ValueError(f"unknown place kind {self.kind}")

    def abs_value(self, x) -> NormValue:
        """|x|^eps at this place, as a certified interval."""
        x = as_fraction(x)
        if x == 0:
            return NormValue.zero()
        if self.kind == TRIVIAL:
            return NormValue.exact(1)
        if self.kind == ARCHIMEDEAN:
            return pow_interval(NormValue.exact(abs(x)), self.eps,
                                ROOT_PRECISION)
        v = padic_valuation(x, self.p)
        base = Fraction(1, self.p**v) if v >= 0 else Fraction(self.p ** (-v))
        return pow_interval(NormValue.exact(base), self.eps, ROOT_PRECISION)

    def label(self) -> str:
        if self.kind == TRIVIAL:
            return "trivial"
        if self.kind == ARCHIMEDEAN:
            return f"arch^{self.eps}"
        return f"{self.p}-adic^{self.eps}"

    def to_json(self):
        obj = {"kind": self.kind, "eps": str(self.eps)}
        if self.p is not None:
            obj["p"] = self.p
        return obj

    @staticmethod
    def from_json(obj):
        return Place(obj["kind"], Fraction(obj["eps"]), obj.get("p"))


def _primes_up_to(bound: int) -> List[int]:
    sieve = [True] * (bound + 1)
    out = []
    for q in range(2, bound + 1):
        if sieve[q]:
            out.append(q)
            for m in range(q * q, bound + 1, q):
                sieve[m] = False
    return out


def enumerate_places(prime_bound: int, eps_grid_size: int) -> List[Place]:
    """Deterministic list: trivial place, then Archimedean powers on the
    grid k/grid_size, then each prime up to the bound on the same grid."""
    if prime_bound < 2:
        raise ValueError("prime bound must be at least 2")
    grid = [Fraction(k, eps_grid_size) for k in range(1, eps_grid_size + 1)]
    places = [Place(TRIVIAL)]
    for e in grid:
        places.append(Place(ARCHIMEDEAN, e))
    for q in _primes_up_to(prime_bound):
        for e in grid:
            places.append(Place(PADIC, e, q))
    return places


@dataclass(frozen=True)
class SpectrumPoint:
    place: Place
    coords: Tuple[Fraction, ...]
    rho: PolyRadius

    def __post_init__(self):
        coords = tuple(as_fraction(c) for c in self.coords)
        object.__setattr__(self, "coords", coords)
        if len(coords) != len(self.rho):
            raise DimensionMismatch("one coordinate per variable")
        for c, r in zip(coords, self.rho):
            if c == 0:
                continue
            if self.place.kind == PADIC:
                v = padic_valuation(c, self.place.p)
                size = Fraction(1, self.place.p**v) if v >= 0 \
                    else Fraction(self.place.p ** (-v))
            elif self.place.kind == TRIVIAL:
                size = Fraction(1)
            else:
                size = abs(c)
            if size > r:
                raise CoordinateOutOfDisk(
                    f"coordinate {c} has size {size} > radius {r}"
                )


def evaluate_seminorm(f: TruncatedSeries, pt: SpectrumPoint) -> NormValue:
    """|f(c)|^eps at the point's place, certified."""
    if f.n != len(pt.coords):
        raise DimensionMismatch("arity mismatch")
    value = Fraction(0)
    for I, a in f.coeffs.items():
        term = a
        for c, e in zip(pt.coords, I):
            term *= c**e
        value += term
    return pt.place.abs_value(value)


def fiber_sup(f: TruncatedSeries, place: Place, rho: PolyRadius) -> NormValue:
    """Sup of the place seminorm of f over the polydisk of radius rho.

    p-adic place: the exact maximum of |a_I|_p^eps * rho^I over the
    support.  Trivial place: the indicator maximum of rho^I.  Archimedean
    place: the sup-norm bracket raised to the exponent.
    """
    if len(rho) != f.n:
        raise DimensionMismatch("polyradius arity mismatch")
    if not f.coeffs:
        return NormValue.zero()
    if place.kind == PADIC:
        out = NormValue.zero()
        for I, a in f.coeffs.items():
            out = out.join_max(place.abs_value(a).scale(rho.power(I)))
        return out
    if place.kind == TRIVIAL:
        best = max(rho.power(I) for I in f.coeffs)
        return NormValue.exact(best)
    sup = norm_T(f.with_ring(_q_arch()), rho)
    return pow_interval(sup, place.eps, ROOT_PRECISION)


def _q_arch() -> BanachRing:
    from .scalars import rationals_archimedean

    return rationals_archimedean()


@dataclass(frozen=True)
class GlobalSupReport:
    value: NormValue
    per_place: Tuple[Tuple[str, NormValue], ...]
    unlisted_primes_bounded_by: Fraction


def global_sup_report(f: TruncatedSeries, rho: PolyRadius, prime_bound: int,
                      eps_grid_size: int) -> GlobalSupReport:
    table = []
    total = NormValue.zero()
    for place in enumerate_places(prime_bound, eps_grid_size):
        v = fiber_sup(f, place, rho)
        table.append((place.label(), v))
        total = total.join_max(v)
    # integer coefficients have p-adic size <= 1 at every prime, so each
    # prime beyond the enumeration bound contributes at most max rho^I
    unlisted = max((rho.power(I) for I in f.coeffs), default=Fraction(0))
    return GlobalSupReport(total, tuple(table), unlisted)


def global_sup(f: TruncatedSeries, rho: PolyRadius, prime_bound: int = 50,
               eps_grid_size: int = 2) -> NormValue:
    return global_sup_report(f, rho, prime_bound, eps_grid_size).value


def spectral_via_powers(f: TruncatedSeries, rho: PolyRadius,
                        n_max: int) -> List[NormValue]:
    """Upper estimates (norm of the n-th power) ** (1/n) for n up to
    n_max; each term bounds the global sup from above."""
    if n_max < 1:
        raise ValueError("need at least one power")
    out = []
    power = f
    for n in range(1, n_max + 1):
        hi = norm_S(power, rho).hi
        out.append(nth_root_interval(NormValue.exact(hi), n, ROOT_PRECISION))
        if n < n_max:
            power = multiply(power, f)
    return out


@dataclass(frozen=True)
class ShilovVerdict:
    confirmed: bool
    archimedean_sup: NormValue
    max_other: NormValue
    monomial_floor: Fraction  # max rho^I, dominated by the Archimedean fiber


def shilov_check(f: TruncatedSeries, rho: PolyRadius,
                 prime_bound: int = 50) -> ShilovVerdict:
    """At radii >= 1 the Archimedean fiber dominates every other fiber
    for integer coefficients: each p-adic or trivial fiber sup is at most
    max rho^I, while the Archimedean lower bound is at least max
    |a_I| rho^I >= max rho^I."""
    if any(r < 1 for r in rho):
        raise ValueError("dominance check requires all radii >= 1")
    if not f.coeffs:
        raise ValueError("dominance check requires a nonzero series")
    for a in f.coeffs.values():
        if a.denominator != 1:
            raise DimensionMismatch("integer coefficients required")
    arch = fiber_sup(f, Place(ARCHIMEDEAN, 1), rho)
    other = NormValue.zero()
    for place in enumerate_places(prime_bound, 1):
        if place.kind == ARCHIMEDEAN:
            continue
        other = other.join_max(fiber_sup(f, place, rho))
    floor = max(rho.power(I) for I in f.coeffs)
    confirmed = other.hi is not None and other.hi <= arch.lo and floor <= arch.lo
    return ShilovVerdict(confirmed, arch, other, floor)
