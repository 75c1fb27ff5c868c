"""Truncated overconvergent power series over a Banach ring.

A series is a finite coefficient table supported in total degree <= D,
optionally carrying a geometric tail majorant (C, sigma) asserting
|a_I| <= C * sigma^(-I) for |I| > D.  The majorant is what certifies that
a truncation represents an overconvergent germ: every norm evaluated at a
polyradius strictly inside sigma gets a finite certified tail bound.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple

from .errors import DimensionMismatch, NotStrictlySmaller, TailDiverges
from .scalars import (
    BanachRing,
    NormValue,
    abs_value,
    as_fraction,
    integers_archimedean,
    nth_root_interval,
)

Index = Tuple[int, ...]

# radius assumed for tail majorants synthesised out of discarded exact
# terms when no input majorant supplies one
DEFAULT_DISCARD_SIGMA = Fraction(2)


@dataclass(frozen=True)
class PolyRadius:
    components: Tuple[Fraction, ...]

    def __post_init__(self):
        comps = tuple(as_fraction(c) for c in self.components)
        object.__setattr__(self, "components", comps)
        if any(c <= 0 for c in comps):
            raise ValueError("polyradius components must be positive")

    def __len__(self):
        return len(self.components)

    def __getitem__(self, i):
        return self.components[i]

    def __iter__(self):
        return iter(self.components)

    def power(self, I: Index) -> Fraction:
        out = Fraction(1)
        for c, e in zip(self.components, I):
            out *= c**e
        return out

    def strictly_less(self, other: "PolyRadius") -> bool:
        if len(self) != len(other):
            raise DimensionMismatch("polyradius length mismatch")
        return all(a < b for a, b in zip(self, other))

    def to_json(self):
        return [str(c) for c in self.components]

    @staticmethod
    def from_json(obj):
        return PolyRadius(tuple(Fraction(c) for c in obj))


def polyradius(*cs) -> PolyRadius:
    return PolyRadius(tuple(as_fraction(c) for c in cs))


@dataclass(frozen=True)
class Tail:
    C: Fraction
    sigma: PolyRadius

    def __post_init__(self):
        object.__setattr__(self, "C", as_fraction(self.C))
        if self.C < 0:
            raise ValueError("tail constant must be non-negative")

    def majorizes(self, I: Index, value: Fraction) -> bool:
        return value <= self.C / self.sigma.power(I)


@dataclass(frozen=True)
class TruncatedSeries:
    ring: BanachRing
    n: int
    coeffs: Dict[Index, Fraction]
    degree_bound: int
    tail: Optional[Tail] = None

    def __post_init__(self):
        clean = {}
        for I, a in self.coeffs.items():
            I = tuple(int(e) for e in I)
            if len(I) != self.n or any(e < 0 for e in I):
                raise DimensionMismatch(f"bad multi-index {I}")
            if sum(I) > self.degree_bound:
                raise ValueError(f"coefficient at {I} beyond degree bound")
            a = self.ring.check_element(a)
            if a != 0:
                clean[I] = a
        object.__setattr__(self, "coeffs", clean)
        if self.tail is not None and len(self.tail.sigma) != self.n:
            raise DimensionMismatch("tail polyradius length mismatch")

    # -- constructors -----------------------------------------------------

    @staticmethod
    def constant(ring: BanachRing, c, n: int = 1,
                 degree_bound: int = 0) -> "TruncatedSeries":
        return TruncatedSeries(ring, n, {(0,) * n: as_fraction(c)}, degree_bound)

    @staticmethod
    def monomial(ring: BanachRing, I: Index, c=1, degree_bound=None,
                 n=None) -> "TruncatedSeries":
        I = tuple(I)
        n = len(I) if n is None else n
        D = sum(I) if degree_bound is None else degree_bound
        return TruncatedSeries(ring, n, {I: as_fraction(c)}, D)

    @staticmethod
    def from_univariate(ring: BanachRing, coeff_list,
                        degree_bound=None) -> "TruncatedSeries":
        D = len(coeff_list) - 1 if degree_bound is None else degree_bound
        return TruncatedSeries(
            ring, 1, {(i,): as_fraction(c) for i, c in enumerate(coeff_list)}, D
        )

    # -- basic algebra ----------------------------------------------------

    def coefficient(self, I: Index) -> Fraction:
        return self.coeffs.get(tuple(I), Fraction(0))

    def is_zero(self) -> bool:
        return not self.coeffs and (self.tail is None or self.tail.C == 0)

    def support_degree(self) -> int:
        return max((sum(I) for I in self.coeffs), default=0)

    def add(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check_compatible(other)
        D = min(self.degree_bound, other.degree_bound) \
            if (self.tail or other.tail) else max(self.degree_bound,
                                                  other.degree_bound)
        coeffs = dict(self.coeffs)
        for I, a in other.coeffs.items():
            coeffs[I] = coeffs.get(I, Fraction(0)) + a
        coeffs = {I: a for I, a in coeffs.items() if sum(I) <= D and a != 0}
        tail = _combine_tails_add(self, other, D)
        return TruncatedSeries(self.ring, self.n, coeffs, D, tail)

    def scale(self, c) -> "TruncatedSeries":
        c = as_fraction(c)
        tail = self.tail
        if tail is not None:
            bound = abs_value(integers_archimedean() if c.denominator == 1
                              else _q_arch(), c).hi
            tail = Tail(tail.C * max(bound, Fraction(1)), tail.sigma)
        return TruncatedSeries(
            self.ring,
            self.n,
            {I: c * a for I, a in self.coeffs.items()},
            self.degree_bound,
            tail,
        )

    def negate(self) -> "TruncatedSeries":
        return self.scale(Fraction(-1))

    def sub(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self.add(other.negate())

    def embed(self, n: int, offset: int = 0) -> "TruncatedSeries":
        """View in a larger variable set; original variable i becomes
        variable offset + i."""
        if offset + self.n > n:
            raise DimensionMismatch("embedding does not fit")
        coeffs = {}
        for I, a in self.coeffs.items():
            J = [0] * n
            for i, e in enumerate(I):
                J[offset + i] = e
            coeffs[tuple(J)] = a
        tail = None
        if self.tail is not None:
            # unconstrained new variables get the discard radius
            sigma = [DEFAULT_DISCARD_SIGMA] * n
            for i, s in enumerate(self.tail.sigma):
                sigma[offset + i] = s
            tail = Tail(self.tail.C, PolyRadius(tuple(sigma)))
        return TruncatedSeries(self.ring, n, coeffs, self.degree_bound, tail)

    def with_ring(self, ring: BanachRing) -> "TruncatedSeries":
        return TruncatedSeries(ring, self.n, dict(self.coeffs),
                               self.degree_bound, self.tail)

    def _check_compatible(self, other: "TruncatedSeries"):
        if self.ring != other.ring or self.n != other.n:
            raise DimensionMismatch("series over different rings or arities")

    def to_json(self):
        obj = {
            "n": self.n,
            "D": self.degree_bound,
            "coeffs": [[list(I), str(a)] for I, a in sorted(self.coeffs.items())],
        }
        if self.tail is not None:
            obj["tail"] = {"C": str(self.tail.C),
                           "sigma": self.tail.sigma.to_json()}
        return obj

    @staticmethod
    def from_json(obj, ring: BanachRing) -> "TruncatedSeries":
        tail = None
        if obj.get("tail"):
            tail = Tail(Fraction(obj["tail"]["C"]),
                        PolyRadius.from_json(obj["tail"]["sigma"]))
        return TruncatedSeries(
            ring,
            obj["n"],
            {tuple(I): Fraction(a) for I, a in obj["coeffs"]},
            obj["D"],
            tail,
        )


def _q_arch():
    from .scalars import rationals_archimedean

    return rationals_archimedean()


def _combine_tails_add(f: TruncatedSeries, g: TruncatedSeries, D: int):
    if f.tail is None and g.tail is None:
        return None
    tails = [t for t in (f.tail, g.tail) if t is not None]
    sigma = tuple(
        min(t.sigma[i] for t in tails) for i in range(f.n)
    )
    C = sum(t.C for t in tails)
    return Tail(C, PolyRadius(sigma))


# ---------------------------------------------------------------------------
# norms


def _check_tail_radius(f: TruncatedSeries, rho: PolyRadius):
    if f.tail is not None:
        if not all(r < s for r, s in zip(rho, f.tail.sigma)):
            raise TailDiverges(
                f"tail radius {f.tail.sigma.components} does not dominate "
                f"evaluation radius {rho.components}"
            )


def _tail_sum_bound(f: TruncatedSeries, rho: PolyRadius) -> Fraction:
    """Upper bound on sum over |I| > D of |a_I| rho^I under the majorant:
    C * (prod 1/(1 - rho_i/sigma_i) - partial sum over |I| <= D)."""
    if f.tail is None or f.tail.C == 0:
        return Fraction(0)
    ratios = [r / s for r, s in zip(rho, f.tail.sigma)]
    full = Fraction(1)
    for q in ratios:
        full /= 1 - q
    partial = Fraction(0)
    D = f.degree_bound
    for I in _indices_up_to(f.n, D):
        term = Fraction(1)
        for q, e in zip(ratios, I):
            term *= q**e
        partial += term
    return f.tail.C * (full - partial)


def _tail_max_bound(f: TruncatedSeries, rho: PolyRadius) -> Fraction:
    """Upper bound on max over |I| > D of |a_I| rho^I under the majorant."""
    if f.tail is None or f.tail.C == 0:
        return Fraction(0)
    r = max(x / s for x, s in zip(rho, f.tail.sigma))
    return f.tail.C * r ** (f.degree_bound + 1)


def _indices_up_to(n: int, D: int):
    for total in range(D + 1):
        for I in _indices_of_degree(n, total):
            yield I


def _indices_of_degree(n: int, total: int):
    if n == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _indices_of_degree(n - 1, total - first):
            yield (first,) + rest


def norm_S(f: TruncatedSeries, rho: PolyRadius) -> NormValue:
    """Coefficient-sum norm: sum |a_I| rho^I, tail bounded above."""
    if len(rho) != f.n:
        raise DimensionMismatch("polyradius arity mismatch")
    _check_tail_radius(f, rho)
    poly = Fraction(0)
    for I, a in f.coeffs.items():
        poly += abs_value(f.ring, a).hi * rho.power(I)
    return NormValue(poly, poly + _tail_sum_bound(f, rho))


# rational points on the unit circle via the tangent half-angle map
def _unit_circle_points(count: int):
    pts = [(Fraction(1), Fraction(0))]
    k = 1
    denom = max(count // 8, 1)
    while len(pts) < max(count // 8, 2):
        t = Fraction(k, denom + k)
        c = (1 - t * t) / (1 + t * t)
        s = 2 * t / (1 + t * t)
        pts.append((c, s))
        k += 1
    out = []
    for c, s in pts:
        for cc, ss in ((c, s), (-c, s), (c, -s), (-c, -s),
                       (s, c), (-s, c), (s, -c), (-s, -c)):
            out.append((cc, ss))
    seen = []
    for p in out:
        if p not in seen:
            seen.append(p)
    return seen


def evaluate_complex(f: TruncatedSeries, points):
    """Evaluate at z_i = (re_i, im_i) exactly; returns (re, im)."""
    re_total, im_total = Fraction(0), Fraction(0)
    for I, a in f.coeffs.items():
        re, im = Fraction(1), Fraction(0)
        for (zr, zi), e in zip(points, I):
            for _ in range(e):
                re, im = re * zr - im * zi, re * zi + im * zr
        re_total += a * re
        im_total += a * im
    return re_total, im_total


def _torus_lower_bound(f: TruncatedSeries, rho: PolyRadius,
                       points_per_var: Optional[int] = None) -> Fraction:
    """Certified lower bound for sup |f(z)| on the torus |z_i| = rho_i:
    max of exactly evaluated sample values and the Cauchy coefficient
    bound max |a_I| rho^I."""
    best_sq = Fraction(0)
    if points_per_var is None:
        points_per_var = 8 * (f.degree_bound + 1) if f.n <= 2 else 8
    circle = _unit_circle_points(points_per_var)
    for combo in itertools.product(circle, repeat=f.n):
        z = [(r * c, r * s) for r, (c, s) in zip(rho, combo)]
        re, im = evaluate_complex(f, z)
        best_sq = max(best_sq, re * re + im * im)
    lo = nth_root_interval(NormValue.exact(best_sq), 2, Fraction(1, 10**9)).lo
    for I, a in f.coeffs.items():
        lo = max(lo, abs(a) * rho.power(I))
    return lo


def norm_T(f: TruncatedSeries, rho: PolyRadius) -> NormValue:
    """Spectral/sup norm on the polydisk.

    Non-Archimedean ring: the Gauss norm max |a_I| rho^I, exact up to the
    tail bound.  Archimedean ring: bracketed between exact torus samples
    (plus the Cauchy coefficient bound) and the coefficient sum.
    """
    if len(rho) != f.n:
        raise DimensionMismatch("polyradius arity mismatch")
    _check_tail_radius(f, rho)
    if f.ring.non_archimedean:
        poly = Fraction(0)
        for I, a in f.coeffs.items():
            poly = max(poly, abs_value(f.ring, a).hi * rho.power(I))
        return NormValue(poly, max(poly, _tail_max_bound(f, rho)))
    hi = norm_S(f, rho).hi
    lo = _torus_lower_bound(f, rho)
    return NormValue(min(lo, hi), hi)


# ---------------------------------------------------------------------------
# multiplication


def _poly_growth_constant(n: int, mu: Fraction) -> Fraction:
    """max over m >= 0 of (m+1)^n * mu^m, exact (the sequence is unimodal)."""
    best = Fraction(1)
    term = Fraction(1)
    m = 0
    while True:
        nxt = Fraction((m + 2) ** n) * mu ** (m + 1)
        cur = Fraction((m + 1) ** n) * mu**m
        best = max(best, cur)
        if nxt < cur and (m + 2) * mu.numerator < (m + 1) * mu.denominator:
            # ratio (1+1/(m+1))^n * mu < 1 from here on once also m >= 4n
            if m >= 4 * n + 4:
                break
        m += 1
    return best


def multiply(f: TruncatedSeries, g: TruncatedSeries,
             D: Optional[int] = None) -> TruncatedSeries:
    """Coefficient convolution truncated at D with a combined tail majorant.

    Known coefficients below the bound are exact; anything discarded or
    unknown is folded into a geometric tail with radius shrunk by 3/4 to
    absorb the polynomial count of convolution cross terms.
    """
    f._check_compatible(g)
    if D is None:
        D = f.degree_bound + g.degree_bound
    conv: Dict[Index, Fraction] = {}
    for I, a in f.coeffs.items():
        for J, b in g.coeffs.items():
            K = tuple(i + j for i, j in zip(I, J))
            conv[K] = conv.get(K, Fraction(0)) + a * b
    kept = {K: c for K, c in conv.items() if sum(K) <= D and c != 0}
    discarded = {K: c for K, c in conv.items() if sum(K) > D and c != 0}

    tail = None
    if f.tail is not None or g.tail is not None:
        sigma_min = tuple(
            min(
                f.tail.sigma[i] if f.tail else DEFAULT_DISCARD_SIGMA,
                g.tail.sigma[i] if g.tail else DEFAULT_DISCARD_SIGMA,
            )
            for i in range(f.n)
        )
        Cf = _global_majorant_constant(f, sigma_min)
        Cg = _global_majorant_constant(g, sigma_min)
        mu = Fraction(3, 4)
        K = _poly_growth_constant(f.n, mu)
        sigma = PolyRadius(tuple(s * mu for s in sigma_min))
        C = Cf * Cg * K
        for I, c in discarded.items():
            C = max(C, abs(c) * sigma.power(I))
        tail = Tail(C, sigma)
    elif discarded:
        sigma = PolyRadius((DEFAULT_DISCARD_SIGMA,) * f.n)
        C = max(abs(c) * sigma.power(I) for I, c in discarded.items())
        tail = Tail(C, sigma)
    return TruncatedSeries(f.ring, f.n, kept, D, tail)


def _global_majorant_constant(f: TruncatedSeries, sigma) -> Fraction:
    """Smallest C with |a_I| <= C * sigma^(-I) for all I (known and tail)."""
    sp = PolyRadius(tuple(sigma))
    C = f.tail.C if f.tail is not None else Fraction(0)
    for I, a in f.coeffs.items():
        C = max(C, abs_value(f.ring, a).hi * sp.power(I))
    return C


# ---------------------------------------------------------------------------
# cofinality of the S- and T-systems


def cofinality_constant(rho: PolyRadius, rho_prime: PolyRadius) -> Fraction:
    """Bound constant for restriction from the sup norm at rho' to the sum
    norm at rho: max over i of rho'_i / (rho'_i - rho_i)."""
    if not rho.strictly_less(rho_prime):
        raise NotStrictlySmaller("need rho < rho' componentwise")
    return max(rp / (rp - r) for r, rp in zip(rho, rho_prime))


@dataclass(frozen=True)
class RestrictionCertificate:
    constant: Fraction
    lhs: Fraction  # sum norm at the smaller radius (upper bound)
    rhs: Fraction  # constant * sup norm at the larger radius (upper bound)
    holds: bool


def restrict_T_to_S(f: TruncatedSeries, rho_prime: PolyRadius,
                    rho: PolyRadius):
    """Non-Archimedean comparison: |f|_{S,rho} <= K * |f|_{T,rho'}."""
    if not f.ring.non_archimedean:
        raise DimensionMismatch("restrict_T_to_S needs a non-Archimedean ring")
    K = cofinality_constant(rho, rho_prime)
    lhs = norm_S(f, rho).hi
    rhs = K * norm_T(f, rho_prime).hi
    return f, RestrictionCertificate(K, lhs, rhs, lhs <= rhs)


def restrict_arch(f: TruncatedSeries, rho_prime: PolyRadius,
                  rho: PolyRadius) -> RestrictionCertificate:
    """Archimedean comparison via Cauchy coefficient estimates:
    |f|_{S,rho} <= prod 1/(1 - rho_i/rho'_i) * |f|_{T,rho'}."""
    if f.ring.non_archimedean:
        raise DimensionMismatch("restrict_arch needs an Archimedean ring")
    if not rho.strictly_less(rho_prime):
        raise NotStrictlySmaller("need rho < rho' componentwise")
    K = Fraction(1)
    for r, rp in zip(rho, rho_prime):
        K /= 1 - r / rp
    lhs = norm_S(f, rho).hi
    rhs = K * norm_T(f, rho_prime).hi
    return RestrictionCertificate(K, lhs, rhs, lhs <= rhs)


def base_change(f: TruncatedSeries, target: BanachRing) -> TruncatedSeries:
    """Termwise coefficient transport from the Archimedean integers."""
    if f.ring.kind != "IntegersArchimedean":
        raise DimensionMismatch("base change starts from the integer ring")
    return f.with_ring(target)


# ---------------------------------------------------------------------------
# dagger-algebra presentations


@dataclass(frozen=True)
class DaggerPresentation:
    """Quotient presentation of an overconvergent polydisk algebra:
    n variables at the given polyradius, modulo the listed relations."""

    ring: BanachRing
    n: int
    rho: PolyRadius
    relations: Tuple[TruncatedSeries, ...] = ()

    def __post_init__(self):
        if len(self.rho) != self.n:
            raise DimensionMismatch("polyradius arity mismatch")
        for rel in self.relations:
            if rel.ring != self.ring or rel.n != self.n:
                raise DimensionMismatch("relation in the wrong algebra")

    def to_json(self):
        return {
            "ring": self.ring.to_json(),
            "n": self.n,
            "rho": self.rho.to_json(),
            "relations": [r.to_json() for r in self.relations],
        }

    @staticmethod
    def from_json(obj):
        ring = BanachRing.from_json(obj["ring"])
        return DaggerPresentation(
            ring,
            obj["n"],
            PolyRadius.from_json(obj["rho"]),
            tuple(TruncatedSeries.from_json(r, ring) for r in obj["relations"]),
        )


def unit_polydisk(ring: BanachRing, n: int = 1) -> DaggerPresentation:
    return DaggerPresentation(ring, n, PolyRadius((Fraction(1),) * n))
