"""Exact k-th derivatives of ln[(-1)^n P(x)] on the negative axis.

The k-th derivative is kept as ``N_k(x) / P(x)**k`` with an integer
polynomial ``N_k``:  ``N_1 = P'`` and ``N_{k+1} = N_k' P - k N_k P'``.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Sequence

from chromagraph import polyarith as pa
from chromagraph.chromatic import ChromPoly, chromatic_polynomial
from chromagraph.graph import Graph, GraphError

THEOREM_CONSTANT = Fraction(333, 50)


def _coeffs(p) -> tuple[int, ...]:
    return p.coeffs if isinstance(p, ChromPoly) else pa.trim(p)


@lru_cache(maxsize=4096)
def _numerators(coeffs: tuple[int, ...], k: int) -> tuple[tuple[int, ...], ...]:
    if k == 1:
        return (pa.derivative(coeffs),)
    prev = _numerators(coeffs, k - 1)
    nk = prev[-1]
    nxt = pa.sub(pa.mul(pa.derivative(nk), coeffs), pa.scale(pa.mul(nk, pa.derivative(coeffs)), k - 1))
    return prev + (nxt,)


@dataclass(frozen=True)
class LogDerivRational:
    k: int
    numerator: tuple[int, ...]
    poly: tuple[int, ...]

    def value(self, x: Fraction) -> Fraction:
        x = Fraction(x)
        return Fraction(pa.evaluate(self.numerator, x)) / Fraction(pa.evaluate(self.poly, x)) ** self.k


def log_deriv_rational(p: ChromPoly | Sequence[int], k: int) -> LogDerivRational:
    if k < 1:
        raise ValueError(f"derivative order must be at least 1, got {k}")
    coeffs = _coeffs(p)
    return LogDerivRational(k, _numerators(coeffs, k)[-1], coeffs)


@dataclass(frozen=True)
class SignReport:
    x: Fraction
    k: int
    sign: int
    exact: bool = True


def _check_negative(x) -> Fraction:
    x = Fraction(x)
    if x >= 0:
        raise ValueError(f"x must be negative, got {x}")
    return x


def eval_sign_exact(ld: LogDerivRational, x: Fraction) -> SignReport:
    """Sign of ``N_k(x) / P(x)**k`` from integer arithmetic only."""
    x = _check_negative(x)
    s_num = pa.sign_at(ld.numerator, x)
    s_p = pa.sign_at(ld.poly, x)
    if s_p == 0:
        raise ArithmeticError(f"P vanishes at {x}")
    return SignReport(x, ld.k, s_num * s_p**ld.k)


# -- decomposition against ln(P / x^n) --------------------------------------


def _rational_derivative(num: tuple, den: tuple) -> tuple[tuple, tuple]:
    return pa.sub(pa.mul(pa.derivative(num), den), pa.mul(num, pa.derivative(den))), pa.mul(den, den)


def log_ratio_derivative(p: ChromPoly | Sequence[int], k: int, x: Fraction) -> Fraction:
    """k-th derivative of ``ln(P(x) / x**n)`` by repeated quotient rule.

    Starts from ``(x P' - n P) / (x P)`` and never touches the ``N_k``
    recurrence, so it is an independent route to the same quantity.
    """
    coeffs = _coeffs(p)
    n = len(coeffs) - 1
    num = pa.sub(pa.shift_up(pa.derivative(coeffs), 1), pa.scale(coeffs, n))
    den = pa.shift_up(coeffs, 1)
    for _ in range(k - 1):
        num, den = _rational_derivative(num, den)
    x = Fraction(x)
    return Fraction(pa.evaluate(num, x)) / pa.evaluate(den, x)


@dataclass(frozen=True)
class Lemma2Check:
    k: int
    x: Fraction
    left: Fraction
    right: Fraction

    @property
    def holds(self) -> bool:
        return self.left == self.right


def lemma2_identity_check(p: ChromPoly | Sequence[int], k: int, x: Fraction) -> Lemma2Check:
    """Split the log-derivative into the ``ln(P/x^n)`` part plus ``n``-dependent pole.

    Left side: ``N_k(x) / P(x)**k``. Right side:
    ``(ln P/x^n)^(k) + (k-1)! (-1)**(k-1) n / x**k``.
    """
    x = _check_negative(x)
    coeffs = _coeffs(p)
    n = len(coeffs) - 1
    left = log_deriv_rational(coeffs, k).value(x)
    pole = Fraction(factorial(k - 1) * (-1) ** (k - 1) * n) / x**k
    return Lemma2Check(k, x, left, log_ratio_derivative(coeffs, k, x) + pole)


# -- theorem region and scans -----------------------------------------------


def theorem_boundary(max_degree: int, k: int, c: Fraction = THEOREM_CONSTANT) -> Fraction:
    """``-c Δ k``; for a single vertex (Δ = 0) Δ is taken as 1 so the point is negative."""
    return -Fraction(c) * max(max_degree, 1) * k


def default_region_points(x0: Fraction) -> list[Fraction]:
    return [x0, x0 - 1, 2 * x0, 10 * x0]


def verify_theorem_region(
    g: Graph,
    k: int,
    extra_points: Iterable[Fraction] = (),
    poly: ChromPoly | None = None,
) -> list[SignReport]:
    """Exact signs at the theorem boundary and below it; a pass is all -1."""
    if not g.is_connected():
        raise GraphError("theorem region check requires a connected graph")
    if k < 2:
        raise ValueError(f"theorem covers k >= 2, got {k}")
    x0 = theorem_boundary(g.max_degree(), k)
    points = default_region_points(x0)
    for x in extra_points:
        x = Fraction(x)
        if x > x0:
            raise ValueError(f"extra point {x} lies above the theorem boundary {x0}")
        points.append(x)
    ld = log_deriv_rational(poly if poly is not None else chromatic_polynomial(g), k)
    return [eval_sign_exact(ld, x) for x in points]


@dataclass
class ScanResult:
    k: int
    x_min: Fraction
    step: Fraction
    boundary: Fraction
    points: list[tuple[Fraction, int]] = field(default_factory=list)

    @property
    def violations(self) -> list[Fraction]:
        return [x for x, s in self.points if s >= 0]

    @property
    def theorem_violations(self) -> list[Fraction]:
        return [x for x in self.violations if x <= self.boundary]

    @property
    def findings(self) -> list[Fraction]:
        """Non-negative signs in the open region between the boundary and 0."""
        return [x for x in self.violations if x > self.boundary]

    @property
    def empirical_threshold(self) -> Fraction | None:
        """Largest grid point below which (inclusive) every sign is negative."""
        best = None
        for x, s in self.points:
            if s >= 0:
                break
            best = x
        return best


def threshold_scan(
    g_or_poly: Graph | ChromPoly,
    k: int,
    x_min: Fraction,
    step: Fraction,
    max_degree: int | None = None,
) -> ScanResult:
    """Exact signs on the rational grid ``x_min, x_min + step, ...`` below 0."""
    x_min, step = Fraction(x_min), Fraction(step)
    if not (x_min < 0 < step):
        raise ValueError("need x_min < 0 < step")
    if isinstance(g_or_poly, Graph):
        if not g_or_poly.is_connected():
            raise GraphError("scan requires a connected graph")
        poly = chromatic_polynomial(g_or_poly)
        max_degree = g_or_poly.max_degree()
    else:
        poly = g_or_poly
        if max_degree is None:
            raise ValueError("max_degree is required when scanning a bare polynomial")
    ld = log_deriv_rational(poly, k)
    res = ScanResult(k, x_min, step, theorem_boundary(max_degree, k))
    x = x_min
    while x < 0:
        res.points.append((x, eval_sign_exact(ld, x).sign))
        x += step
    return res


def scans_to_csv(scans: Iterable[tuple[str, ScanResult]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["graph", "x", "k", "sign"])
    for gid, scan in scans:
        for x, s in scan.points:
            w.writerow([gid, str(x), scan.k, s])
    return buf.getvalue()
