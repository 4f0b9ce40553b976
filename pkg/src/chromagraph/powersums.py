"""Power sums of chromatic roots, the large-|x| log series, and the mean size ε(G)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from mpmath import iv, libmp

from chromagraph import polyarith as pa
from chromagraph.chromatic import ChromPoly, chromatic_polynomial, whitney_from_poly
from chromagraph.graph import Graph, stats

DEFAULT_K = Fraction(17, 4)
MIN_LOG_PRECISION = 128
MAX_LOG_PRECISION = 4096


def _coeffs(p) -> tuple[int, ...]:
    return p.coeffs if isinstance(p, ChromPoly) else tuple(p)


@dataclass(frozen=True)
class PowerSums:
    """``c[i-1] = -(1/i) * sum_j alpha_j**i`` over the roots of a monic polynomial."""

    c: tuple[Fraction, ...]
    power: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.c)

    def __getitem__(self, i: int) -> Fraction:
        return self.c[i - 1]

    def bound_holds(self, n: int, max_degree: int, K: Fraction = DEFAULT_K) -> bool:
        """``|c_i| <= (n/i) (K Δ)**i`` for every stored i, exactly."""
        r = Fraction(K) * max_degree
        return all(abs(ci) <= Fraction(n, i) * r**i for i, ci in enumerate(self.c, 1))


def power_sums(p: ChromPoly | Sequence[int], m: int) -> PowerSums:
    """Exact power sums from the coefficients by Newton's identities."""
    if m < 1:
        raise ValueError("m must be at least 1")
    coeffs = _coeffs(p)
    n = len(coeffs) - 1
    lead = coeffs[n]
    if lead != 1:
        raise ValueError("power sums need a monic polynomial")
    # a[i] is the coefficient of x^(n-i)
    a = [coeffs[n - i] if i <= n else 0 for i in range(m + 1)]
    s = [0] * (m + 1)
    for k in range(1, m + 1):
        s[k] = -(k * a[k] + sum(a[i] * s[k - i] for i in range(1, k)))
    return PowerSums(tuple(Fraction(-s[k], k) for k in range(1, m + 1)), tuple(s[1:]))


@dataclass(frozen=True)
class C1C2Report:
    c1: Fraction
    c2: Fraction
    expected_c1: Fraction
    expected_c2: Fraction

    @property
    def c1_ok(self) -> bool:
        return self.c1 == self.expected_c1

    @property
    def c2_ok(self) -> bool:
        return self.c2 == self.expected_c2

    @property
    def ok(self) -> bool:
        return self.c1_ok and self.c2_ok


def check_c1_c2(g: Graph, poly: ChromPoly | None = None) -> C1C2Report:
    """Compare c_1 with -|E| and c_2 with -|T| - |E|/2."""
    p = poly if poly is not None else chromatic_polynomial(g)
    ps = power_sums(p, 2)
    st = stats(g)
    return C1C2Report(ps[1], ps[2], Fraction(-st.m), -st.triangles - Fraction(st.m, 2))


# -- series ln(P(x)/x^n) = sum c_i x^-i --------------------------------------


class SeriesDomainError(ValueError):
    pass


@dataclass(frozen=True)
class SeriesEval:
    x: Fraction
    m: int
    partial_sum: Fraction
    tail_bound: Fraction

    def encloses(self, lo: Fraction, hi: Fraction) -> bool:
        """True if ``[lo, hi]`` lies within partial_sum ± tail_bound."""
        return self.partial_sum - self.tail_bound <= lo and hi <= self.partial_sum + self.tail_bound


def series_log_eval(
    ps: PowerSums,
    x: Fraction,
    m: int,
    n: int,
    max_degree: int,
    K: Fraction = DEFAULT_K,
) -> SeriesEval:
    """Truncate the large-|x| expansion at order ``m`` with a rigorous tail bound.

    The partial sum is an exact rational. The tail satisfies
    ``|sum_{i>m} c_i x^-i| <= (n/(m+1)) r**(m+1) / (1-r)`` with
    ``r = K Δ / |x|``, using ``|c_i| <= (n/i) (K Δ)**i``.
    """
    x = Fraction(x)
    K = Fraction(K)
    if x >= 0 or -x <= K * max_degree:
        raise SeriesDomainError(f"need x < -K*Δ = {-K * max_degree}, got {x}")
    if m > ps.m:
        raise ValueError(f"only {ps.m} power sums available, asked for {m}")
    partial = sum((ps[i] / x**i for i in range(1, m + 1)), Fraction(0))
    r = K * max_degree / -x
    tail = Fraction(n, m + 1) * r ** (m + 1) / (1 - r)
    return SeriesEval(x, m, partial, tail)


def direct_log_ratio(
    p: ChromPoly | Sequence[int], x: Fraction, prec: int = MIN_LOG_PRECISION
) -> tuple[Fraction, Fraction]:
    """Rigorous rational enclosure ``[lo, hi]`` of ``ln(P(x) / x**n)``.

    Computed with mpmath interval arithmetic at ``prec`` bits.
    """
    coeffs = _coeffs(p)
    n = len(coeffs) - 1
    x = Fraction(x)
    ratio = Fraction(pa.evaluate(coeffs, x)) / x**n
    if ratio <= 0:
        raise SeriesDomainError("P(x)/x^n must be positive")
    saved = iv.prec
    iv.prec = prec
    try:
        enc = iv.log(iv.mpf(ratio.numerator) / ratio.denominator)
    finally:
        iv.prec = saved
    lo, hi = (Fraction(*map(int, libmp.to_rational(e))) for e in enc._mpi_)
    return lo, hi


def series_agrees(
    p: ChromPoly,
    x: Fraction,
    m: int,
    max_degree: int,
    K: Fraction = DEFAULT_K,
) -> tuple[bool, SeriesEval]:
    """Check the direct logarithm against the truncated series.

    Precision starts at 128 bits and doubles while the comparison is
    undecided.
    """
    se = series_log_eval(power_sums(p, m), x, m, p.n, max_degree, K)
    prec = MIN_LOG_PRECISION
    while True:
        lo, hi = direct_log_ratio(p, x, prec)
        if se.encloses(lo, hi):
            return True, se
        if hi < se.partial_sum - se.tail_bound or lo > se.partial_sum + se.tail_bound:
            return False, se
        if prec >= MAX_LOG_PRECISION:
            return False, se
        prec *= 2


# -- mean size of a broken-cycle-free spanning subgraph ----------------------


@dataclass(frozen=True)
class EpsilonReport:
    epsilon: Fraction
    epsilon_at_minus_one: Fraction
    n: int

    @property
    def identity_holds(self) -> bool:
        return self.epsilon == self.n + self.epsilon_at_minus_one


def epsilon_ratio(p: ChromPoly | Sequence[int], x: Fraction) -> Fraction:
    """``P'(x) / P(x)`` exactly, for ``x < 0``."""
    x = Fraction(x)
    if x >= 0:
        raise ValueError(f"epsilon ratio is only defined here for x < 0, got {x}")
    coeffs = _coeffs(p)
    return Fraction(pa.evaluate(pa.derivative(coeffs), x)) / pa.evaluate(coeffs, x)


def mean_size_epsilon(g: Graph, poly: ChromPoly | None = None) -> EpsilonReport:
    p = poly if poly is not None else chromatic_polynomial(g)
    a = whitney_from_poly(p)
    n = g.n
    eps = Fraction(sum((n - i) * a[i] for i in range(1, n + 1)), sum(a.a))
    return EpsilonReport(eps, epsilon_ratio(p, Fraction(-1)), n)
