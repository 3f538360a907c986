"""Periodic orbit measures, twin pairs, and the exponent-gap constants.

Every admissible periodic itinerary with a transversal diagonal crossing
carries exactly two ergodic lifts: the uniform measures on the orbits of
the repelling point p+ (expanding) and of the contracting point p-.
Their Wasserstein distance reduces to the difference of fiber-coordinate
means because the monotone same-time coupling is optimal; an exact
transport solver double-checks that identity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from concaveskew.errors import CouplingHypothesisViolated, NotHyperbolicPair
from concaveskew.maps import FiberPair, _codes, orbit_points
from concaveskew.orbits import DEFAULT_TAU_PARAB, PeriodicOrbit, fixed_points
from concaveskew import transport

DEFAULT_TAU_MEAS = 1e-9


@dataclass(frozen=True)
class OrbitMeasure:
    """Uniform measure on the orbit of a periodic point, weight 1/n each."""

    word: str
    points: tuple

    @property
    def period(self) -> int:
        return len(self.points)

    @property
    def x_integral(self) -> float:
        return sum(self.points) / len(self.points)

    @property
    def freq0(self) -> Fraction:
        return Fraction(self.word.count("0"), len(self.word))

    @property
    def freq1(self) -> Fraction:
        return Fraction(self.word.count("1"), len(self.word))


def orbit_measure(pair: FiberPair, orbit: PeriodicOrbit) -> OrbitMeasure:
    return OrbitMeasure(orbit.word, orbit_points(pair, orbit.word, orbit.point))


@dataclass(frozen=True)
class TwinReport:
    word: str
    mu_plus: OrbitMeasure
    mu_minus: OrbitMeasure
    D: float
    chi_plus: float
    chi_minus: float
    kappa1: float
    kappa2: float
    bounds_ok: bool


def _c1(a: float, modulus: float) -> float:
    u = a / modulus
    return math.log(u / -math.expm1(-u))


def _c2(a: float, modulus: float) -> float:
    u = a * modulus
    return math.log(u / -math.expm1(-u))


def kappa(D: float, modulus: float) -> tuple:
    """The exponent-gap constants (kappa1, kappa2) at distance D.

    kappa1(D) = D/3 * C1(D/3) and kappa2(D) = D/3 * C2(D/3), with
    C1(a) = log(a M^-1 / (1 - e^{ -a M^-1})) and C2 the same with M in
    place of M^-1.  Both are continuous, increasing, and vanish as D->0;
    D = 0 returns (0, 0) by continuous extension.
    """
    if D < 0.0:
        raise ValueError("D must be nonnegative")
    if modulus <= 0.0:
        raise ValueError("modulus must be positive")
    if D == 0.0:
        return 0.0, 0.0
    a = D / 3.0
    return a * _c1(a, modulus), a * _c2(a, modulus)


def twin_measures(pair: FiberPair, word,
                  tau_parab: float = DEFAULT_TAU_PARAB,
                  tau_meas: float = DEFAULT_TAU_MEAS) -> TwinReport:
    """Build both orbit measures of a hyperbolic pair and test the gap chain.

    D is the integral difference (equivalently the Wasserstein distance,
    by the monotone-coupling identity); bounds_ok records whether

        -kappa2(D) <= chi- <= -kappa1(D) < 0 < kappa1(D) <= chi+ <= kappa2(D)

    holds with slack tau_meas, using the pair's modulus.  Raises
    NotHyperbolicPair on parabolic or fixed-point-free words.
    """
    fp = fixed_points(pair, word, tau_parab)
    if fp.variant != "pair":
        raise NotHyperbolicPair(f"word {word!r} has no hyperbolic pair "
                                f"(variant {fp.variant})")
    mu_plus = orbit_measure(pair, fp.plus)
    mu_minus = orbit_measure(pair, fp.minus)
    D = mu_minus.x_integral - mu_plus.x_integral
    chi_plus = fp.plus.exponent
    chi_minus = fp.minus.exponent
    k1, k2 = kappa(D, pair.modulus)
    t = tau_meas
    bounds_ok = (k1 > 0.0
                 and -k2 - t <= chi_minus <= -k1 + t
                 and k1 - t <= chi_plus <= k2 + t)
    return TwinReport(mu_plus.word, mu_plus, mu_minus, D,
                      chi_plus, chi_minus, k1, k2, bounds_ok)


def exponent_gap_inner_ok(report: TwinReport, modulus: float,
                          tau_meas: float = DEFAULT_TAU_MEAS) -> bool:
    """The provable part of the exponent-gap chain for a twin report.

    Inner bounds kappa1(D) <= chi+ and chi- <= -kappa1(D), outer
    envelope |chi| <= M*D, and the two-sided sandwich
    D/M <= chi+ - chi- <= M*D.
    """
    t = tau_meas
    k1 = report.kappa1
    d = report.D
    gap = report.chi_plus - report.chi_minus
    return (report.chi_plus >= k1 - t
            and report.chi_minus <= -k1 + t
            and report.chi_plus <= modulus * d + t
            and report.chi_minus >= -modulus * d - t
            and d / modulus - t <= gap <= modulus * d + t)


def wasserstein_periodic(mu1: OrbitMeasure, mu2: OrbitMeasure) -> tuple:
    """(formula_value, oracle_value) for twin measures over one word.

    The formula is the difference of fiber means, valid because the
    same-time coupling (shared itinerary, ordered fiber points) realizes
    the optimum.  The oracle solves the transport problem exactly on the
    finite supports: exhaustive search up to period 8, assignment solver
    beyond.  Raises CouplingHypothesisViolated unless mu1 sits pointwise
    below mu2.
    """
    if mu1.word != mu2.word:
        raise CouplingHypothesisViolated("measures live over different words")
    if not all(x <= y for x, y in zip(mu1.points, mu2.points)):
        raise CouplingHypothesisViolated("fiber points are not ordered")
    formula = mu2.x_integral - mu1.x_integral
    oracle = transport.wasserstein_orbits(mu1.word, mu1.points,
                                          mu2.word, mu2.points)
    return formula, oracle


def measure_distance(mu1: OrbitMeasure, mu2: OrbitMeasure) -> float:
    """W1 between two orbit measures over possibly different words."""
    return transport.wasserstein_orbits(mu1.word, mu1.points,
                                        mu2.word, mu2.points)


def frequency_bound(pair: FiberPair, word) -> tuple:
    """(lhs, ok) for the symbol-frequency obstruction.

    lhs = freq0 * log f0'(1) + freq1 * log f1'(1).  Every itinerary
    carrying an invariant measure must have lhs <= 0: a positive value
    would force every lift's exponent positive, contradicting the
    existence of a lift with nonpositive exponent.
    """
    codes = _codes(word)
    n = len(codes)
    n1 = codes.count(b"1")
    freq0 = (n - n1) / n
    freq1 = n1 / n
    lhs = freq0 * math.log(pair.f0.deriv(1.0)) + freq1 * math.log(pair.f1.deriv(1.0))
    return lhs, lhs <= DEFAULT_TAU_MEAS
